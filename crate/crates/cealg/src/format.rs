//! Line-oriented text formats: algebra files (`cealg v1`), certificate
//! files (`cealg-cert v1`) and search reports (`cealg-report v1`).
//! Scalars are written as exact strings, so rational fixtures stay exact
//! and files diff cleanly. Writing an algebra always emits the canonical
//! echelon basis, which makes write-then-read the identity on canonical
//! subspaces.

use crate::algebra::{AlgebraError, MatAlgebra};
use crate::ce::SosCertificate;
use crate::explore::SearchReport;
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::mat::Mat;
use thiserror::Error;

pub const ALGEBRA_HEADER: &str = "cealg v1";
pub const CERTIFICATE_HEADER: &str = "cealg-cert v1";
pub const REPORT_HEADER: &str = "cealg-report v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported header {0:?}")]
    Version(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("basis does not span a multiplication-closed space")]
    NotClosed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// An algebra read back from text, with any loader warnings.
#[derive(Debug)]
pub struct LoadedAlgebra {
    pub algebra: MatAlgebra,
    pub warnings: Vec<String>,
}

pub fn write_algebra(algebra: &MatAlgebra) -> String {
    let n = algebra.ambient_n();
    let mut out = String::new();
    out.push_str(ALGEBRA_HEADER);
    out.push('\n');
    out.push_str(&format!("field {}\n", algebra.field()));
    out.push_str(&format!("n {n}\n"));
    out.push_str(&format!("unital {}\n", algebra.is_unital()));
    out.push_str(&format!("basis {}\n", algebra.dim()));
    for mat in algebra.basis() {
        out.push_str("mat\n");
        push_matrix(&mut out, mat, "");
    }
    out
}

fn push_matrix(out: &mut String, mat: &Mat, indent: &str) {
    let n = mat.n();
    for i in 0..n {
        out.push_str(indent);
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&mat.get(i, j).to_string());
        }
        out.push('\n');
    }
}

/// Cursor over non-empty lines that remembers line numbers for errors.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.next().ok_or_else(|| parse_err(0, format!("unexpected end of file, expected {what}")))
    }

    fn expect_key(&mut self, key: &str) -> Result<(usize, &'a str), FormatError> {
        let (no, line) = self.expect(key)?;
        let rest = line
            .strip_prefix(key)
            .ok_or_else(|| parse_err(no, format!("expected {key:?}, found {line:?}")))?;
        Ok((no, rest.trim()))
    }
}

fn parse_matrix(
    lines: &mut Lines<'_>,
    n: usize,
    field: FieldSpec,
) -> Result<Mat, FormatError> {
    let mut mat = Mat::zero(n, field);
    for i in 0..n {
        let (no, line) = lines.expect("matrix row")?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(parse_err(no, format!("expected {n} entries, found {}", cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            let value = field.parse_scalar(cell)?;
            mat.set(i, j, value);
        }
    }
    Ok(mat)
}

/// Reads an algebra file. The basis must span a multiplication-closed
/// space; with `auto_close` the loader closes it instead and records a
/// warning. The unital flag in the file is a hint and is checked against
/// the loaded basis.
pub fn read_algebra(text: &str, auto_close: bool) -> Result<LoadedAlgebra, FormatError> {
    let mut lines = Lines::new(text);
    let (_, header) = lines.expect("header")?;
    if header != ALGEBRA_HEADER {
        return Err(FormatError::Version(header.to_owned()));
    }
    let (_, field_text) = lines.expect_key("field")?;
    let field: FieldSpec = field_text.parse()?;
    let (no, n_text) = lines.expect_key("n")?;
    let n: usize = n_text.parse().map_err(|_| parse_err(no, "bad matrix size"))?;
    if n == 0 {
        return Err(parse_err(no, "matrix size must be at least 1"));
    }
    let (no, unital_text) = lines.expect_key("unital")?;
    let unital_hint: bool =
        unital_text.parse().map_err(|_| parse_err(no, "unital must be true or false"))?;
    let (no, count_text) = lines.expect_key("basis")?;
    let count: usize = count_text.parse().map_err(|_| parse_err(no, "bad basis count"))?;

    let mut mats = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, line) = lines.expect("mat marker")?;
        if line != "mat" {
            return Err(parse_err(no, format!("expected \"mat\", found {line:?}")));
        }
        mats.push(parse_matrix(&mut lines, n, field)?);
    }
    if let Some((no, line)) = lines.next() {
        return Err(parse_err(no, format!("trailing content {line:?}")));
    }

    let mut warnings = Vec::new();
    let algebra = if mats.is_empty() {
        MatAlgebra::zero(n, field)
    } else {
        match MatAlgebra::from_closed_span(&mats) {
            Ok(algebra) => algebra,
            Err(AlgebraError::ClosureViolation { .. }) if auto_close => {
                let closed = MatAlgebra::closure_of(&mats)?;
                warnings.push(format!(
                    "basis was not closed under multiplication; closed it, dimension {} -> {}",
                    mats.len(),
                    closed.dim()
                ));
                closed
            }
            Err(AlgebraError::ClosureViolation { .. }) => return Err(FormatError::NotClosed),
            Err(other) => return Err(other.into()),
        }
    };
    if algebra.is_unital() != unital_hint {
        warnings.push(format!(
            "unital flag says {unital_hint} but the loaded algebra says {}",
            algebra.is_unital()
        ));
    }
    Ok(LoadedAlgebra { algebra, warnings })
}

pub fn write_certificate(cert: &SosCertificate, field: FieldSpec) -> String {
    let d = cert.phi.len();
    let n = cert.target.n();
    let mut out = String::new();
    out.push_str(CERTIFICATE_HEADER);
    out.push('\n');
    out.push_str(&format!("id {}\n", cert.id));
    out.push_str(&format!("field {field}\n"));
    out.push_str(&format!("n {n}\n"));
    out.push_str(&format!("dim {d}\n"));
    out.push_str(&format!("forms {}\n", cert.forms.len()));
    for form in &cert.forms {
        out.push_str("form");
        for c in form {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out.push_str("phi\n");
    for row in &cert.phi {
        let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str("target\n");
    push_matrix(&mut out, &cert.target, "");
    out
}

pub fn read_certificate(text: &str) -> Result<SosCertificate, FormatError> {
    let mut lines = Lines::new(text);
    let (_, header) = lines.expect("header")?;
    if header != CERTIFICATE_HEADER {
        return Err(FormatError::Version(header.to_owned()));
    }
    let (_, id) = lines.expect_key("id")?;
    let (_, field_text) = lines.expect_key("field")?;
    let field: FieldSpec = field_text.parse()?;
    let (no, n_text) = lines.expect_key("n")?;
    let n: usize = n_text.parse().map_err(|_| parse_err(no, "bad matrix size"))?;
    let (no, d_text) = lines.expect_key("dim")?;
    let d: usize = d_text.parse().map_err(|_| parse_err(no, "bad dimension"))?;
    let (no, forms_text) = lines.expect_key("forms")?;
    let form_count: usize = forms_text.parse().map_err(|_| parse_err(no, "bad form count"))?;

    let mut forms = Vec::with_capacity(form_count);
    for _ in 0..form_count {
        let (no, rest) = lines.expect_key("form")?;
        let cells: Vec<&str> = rest.split_whitespace().collect();
        if cells.len() != d {
            return Err(parse_err(no, format!("expected {d} coefficients")));
        }
        let row: Result<Vec<Scalar>, FieldError> =
            cells.iter().map(|c| field.parse_scalar(c)).collect();
        forms.push(row?);
    }
    let (no, marker) = lines.expect("phi marker")?;
    if marker != "phi" {
        return Err(parse_err(no, "expected \"phi\""));
    }
    let mut phi = Vec::with_capacity(d);
    for _ in 0..d {
        let (no, line) = lines.expect("phi row")?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != d {
            return Err(parse_err(no, format!("expected {d} coefficients")));
        }
        let row: Result<Vec<Scalar>, FieldError> =
            cells.iter().map(|c| field.parse_scalar(c)).collect();
        phi.push(row?);
    }
    let (no, marker) = lines.expect("target marker")?;
    if marker != "target" {
        return Err(parse_err(no, "expected \"target\""));
    }
    let target = parse_matrix(&mut lines, n, field)?;
    if let Some((no, line)) = lines.next() {
        return Err(parse_err(no, format!("trailing content {line:?}")));
    }
    Ok(SosCertificate { id: id.to_owned(), phi, forms, target })
}

/// Report serialization; hit algebras are embedded as indented blocks.
pub fn write_search_report(report: &SearchReport) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    out.push_str(&format!("ambient-n {}\n", report.ambient_n));
    out.push_str(&format!("field {}\n", report.field));
    out.push_str(&format!("trials {}\n", report.trials));
    out.push_str(&format!("seed {}\n", report.seed));
    out.push_str(&format!("budget {}\n", report.budget));
    out.push_str(&format!("ce {}\n", report.ce_count));
    out.push_str(&format!("commutative {}\n", report.commutative_count));
    out.push_str(&format!("skipped {}\n", report.skipped));
    out.push_str(&format!("index2-noncommutative {}\n", report.index2_noncommutative));
    out.push_str(&format!(
        "reduced-center-violations {}\n",
        report.reduced_center_violations
    ));
    out.push_str(&format!("hits {}\n", report.hits.len()));
    for hit in &report.hits {
        out.push_str(&format!(
            "hit trial={} dim={} power-index={} reverified={}\n",
            hit.trial,
            hit.dim,
            hit.power_index.map_or_else(|| "none".to_owned(), |i| i.to_string()),
            hit.reverified
        ));
        for line in hit.serialized.lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}
