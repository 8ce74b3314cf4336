//! Deciding the centrally essential property.
//!
//! An algebra is centrally essential when it is commutative or every
//! non-central element a admits nonzero central x, y with ax = y. The
//! per-element test is linear: W_a = {x in Z : ax in Z} is a kernel, and
//! a passes exactly when a is central or a·W_a is not zero (ax nonzero
//! forces x nonzero). Over a finite field the property is decided by
//! enumerating every element; over the rationals a randomized search can
//! only refute, and a sum-of-squares certificate can prove.

use crate::algebra::{AlgebraError, MatAlgebra};
use crate::field::{FieldSpec, Scalar};
use crate::mat::{LinMap, Mat};
use crate::subspace::{solve_kernel, Echelon, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element does not belong to the algebra")]
    ElementNotInAlgebra,
    #[error("certificate rejected at {obligation}: {detail}")]
    CertificateRejected { obligation: Obligation, detail: String },
    #[error("certificate shape does not match the algebra: {0}")]
    CertificateShape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CeStatus {
    CentrallyEssential,
    NotCentrallyEssential,
    Unknown,
}

impl std::fmt::Display for CeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CeStatus::CentrallyEssential => write!(f, "centrally essential"),
            CeStatus::NotCentrallyEssential => write!(f, "not centrally essential"),
            CeStatus::Unknown => write!(f, "unknown"),
        }
    }
}

/// Outcome of a decision run. A NotCE verdict always carries a witness:
/// a non-central element a with a·W_a = 0.
#[derive(Clone, Debug)]
pub struct CeVerdict {
    pub status: CeStatus,
    pub witness: Option<Mat>,
    /// Certificate id when the verdict was established by one.
    pub certificate: Option<String>,
    /// Elements enumerated or sampled.
    pub examined: u64,
    pub elapsed: Duration,
}

/// Result of the linear per-element test.
#[derive(Clone, Debug)]
pub struct ElementTest {
    pub passes: bool,
    pub central: bool,
    /// W_a = {x in Z : ax in Z}.
    pub w_a: Subspace,
    /// The span a·W_a; nonzero exactly when some central x works.
    pub image: Subspace,
}

/// Linear test for a single element. The candidate space W_a is the
/// kernel of x -> (residual of ax modulo Z) restricted to Z.
pub fn ce_element_test(a: &Mat, algebra: &MatAlgebra) -> Result<ElementTest, CeError> {
    if !algebra.contains(a) {
        return Err(CeError::ElementNotInAlgebra);
    }
    let center = algebra.center();
    Ok(element_test_against(a, center))
}

/// The same test against an explicitly supplied center, so callers can
/// reuse a cached or fresh center computation.
pub fn element_test_against(a: &Mat, center: &Subspace) -> ElementTest {
    let n = a.n();
    let field = a.field();
    let central = center.contains(a);
    let dz = center.dim();
    let w_a = if dz == 0 {
        Subspace::zero(n, field)
    } else {
        // Coordinates c over the center basis z_i; the condition is that
        // sum c_i (a z_i) reduces to zero against the center.
        let mut map = LinMap::zero(n * n, dz, field);
        for (i, z) in center.basis().iter().enumerate() {
            let mut residual = a.mul(z).to_coords();
            center.echelon().reduce(&mut residual);
            for (idx, val) in residual.into_iter().enumerate() {
                if !val.is_zero() {
                    map.set(idx, i, val);
                }
            }
        }
        let kernel = solve_kernel(&map);
        let mut echelon = Echelon::new(n * n, field);
        for coeffs in kernel.rows() {
            let x = Mat::linear_combination(center.basis(), coeffs)
                .unwrap_or_else(|| Mat::zero(n, field));
            echelon.insert(x.to_coords());
        }
        Subspace::from_echelon(n, echelon)
    };
    let mut image_echelon = Echelon::new(n * n, field);
    for x in w_a.basis() {
        image_echelon.insert(a.mul(x).to_coords());
    }
    let image = Subspace::from_echelon(n, image_echelon);
    ElementTest { passes: central || image.dim() > 0, central, w_a, image }
}

/// Decides the property over a finite field by enumerating every element
/// in deterministic odometer order. Commutative algebras short-circuit
/// without enumeration, so the budget only applies past that point.
pub fn ce_exhaustive(algebra: &MatAlgebra, budget: u64) -> Result<CeVerdict, CeError> {
    let start = Instant::now();
    if algebra.is_commutative() {
        return Ok(CeVerdict {
            status: CeStatus::CentrallyEssential,
            witness: None,
            certificate: None,
            examined: 0,
            elapsed: start.elapsed(),
        });
    }
    let center = algebra.center();
    let mut examined = 0;
    for elem in algebra.elements_within(budget)? {
        examined += 1;
        if center.contains(&elem) {
            continue;
        }
        let test = element_test_against(&elem, center);
        if !test.passes {
            return Ok(CeVerdict {
                status: CeStatus::NotCentrallyEssential,
                witness: Some(elem),
                certificate: None,
                examined,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(CeVerdict {
        status: CeStatus::CentrallyEssential,
        witness: None,
        certificate: None,
        examined,
        elapsed: start.elapsed(),
    })
}

/// Randomized counterexample search. Non-central samples are drawn with
/// rejection; a failing sample refutes the property, exhausting the
/// sample budget leaves it Unknown. Never concludes CE for
/// non-commutative input.
pub fn ce_random_search(algebra: &MatAlgebra, samples: u64, seed: u64) -> CeVerdict {
    let start = Instant::now();
    if algebra.is_commutative() {
        return CeVerdict {
            status: CeStatus::CentrallyEssential,
            witness: None,
            certificate: None,
            examined: 0,
            elapsed: start.elapsed(),
        };
    }
    let center = algebra.center();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut examined = 0;
    let mut attempts: u64 = 0;
    while examined < samples {
        attempts += 1;
        if attempts > samples.saturating_mul(100).max(1000) {
            break; // central rejection is not converging; stop at Unknown
        }
        let elem = algebra.random_element(&mut rng);
        if center.contains(&elem) {
            continue;
        }
        examined += 1;
        let test = element_test_against(&elem, center);
        if !test.passes {
            return CeVerdict {
                status: CeStatus::NotCentrallyEssential,
                witness: Some(elem),
                certificate: None,
                examined,
                elapsed: start.elapsed(),
            };
        }
    }
    CeVerdict {
        status: CeStatus::Unknown,
        witness: None,
        certificate: None,
        examined,
        elapsed: start.elapsed(),
    }
}

/// Independent re-verification of a NotCE witness. Over a finite field
/// the center is enumerated element by element (no kernel machinery); the
/// witness stands when no central x makes ax central and nonzero. Over
/// the rationals the linear test is re-run against a fresh center.
pub fn reverify_not_ce_witness(
    basis: &[Mat],
    witness: &Mat,
    budget: u64,
) -> Result<bool, CeError> {
    let algebra = MatAlgebra::from_closed_span(basis)?;
    let center = algebra.center_fresh();
    if !algebra.contains(witness) || center.contains(witness) {
        return Ok(false);
    }
    match algebra.field() {
        FieldSpec::Prime(p) => {
            let needed = p.checked_pow(center.dim() as u32);
            if needed.is_none_or(|c| c > budget) {
                return Err(AlgebraError::BudgetExceeded { needed, budget }.into());
            }
            for coords in coordinate_tuples(p, center.dim()) {
                let x = center.element_from_coords(&to_scalars(&coords, algebra.field()));
                let ax = witness.mul(&x);
                if !ax.is_zero() && center.contains(&ax) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FieldSpec::Rationals => {
            let test = element_test_against(witness, &center);
            Ok(!test.passes)
        }
    }
}

/// All residue tuples of the given length, odometer order.
pub(crate) fn coordinate_tuples(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut digits = vec![0u64; len];
    let mut done = false;
    let mut started = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        if !started {
            started = true;
            return Some(digits.clone());
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                done = true;
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
        Some(digits.clone())
    })
}

pub(crate) fn to_scalars(coords: &[u64], field: FieldSpec) -> Vec<Scalar> {
    coords.iter().map(|&c| field.integer(c as i64)).collect()
}

/// The obligations of certificate verification, in the order checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obligation {
    /// C5: the ground field is the rationals.
    RationalField,
    /// C1: the witness map sends every basis element into the center.
    WitnessInCenter,
    /// C3: the target is central and nonzero.
    TargetCentralNonzero,
    /// C4: common zeroes of the linear forms lie in the center.
    FormKernelCentral,
    /// C2: a·phi(a) = (sum of squared forms)·target, via polarization.
    QuadraticIdentity,
}

impl std::fmt::Display for Obligation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obligation::RationalField => write!(f, "C5 (rational ground field)"),
            Obligation::WitnessInCenter => write!(f, "C1 (witness map lands in the center)"),
            Obligation::TargetCentralNonzero => write!(f, "C3 (target central and nonzero)"),
            Obligation::FormKernelCentral => write!(f, "C4 (form kernel inside the center)"),
            Obligation::QuadraticIdentity => write!(f, "C2 (sum-of-squares identity)"),
        }
    }
}

/// A sum-of-squares certificate: a linear witness selector phi on algebra
/// coordinates, linear forms whose common kernel sits inside the center,
/// and a central target E with a·phi(a) = (sum_j l_j(a)^2)·E. Over the
/// rationals a vanishing sum of squares forces every form to vanish, so
/// acceptance proves the algebra centrally essential: for non-central a
/// some form is nonzero, the sum of squares is positive, and
/// x = phi(a), y = a·phi(a) are the required nonzero central pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosCertificate {
    pub id: String,
    /// Column j holds the coordinates of phi(basis element j).
    pub phi: Vec<Vec<Scalar>>,
    /// Each form is a row of coefficients over algebra coordinates.
    pub forms: Vec<Vec<Scalar>>,
    /// The central target matrix E.
    pub target: Mat,
}

impl SosCertificate {
    fn dim(&self) -> usize {
        self.phi.len()
    }

    fn apply_phi(&self, coords: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![field.zero(); d];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let x = &self.phi[i][j];
                if !x.is_zero() {
                    *slot = slot.add(&c.mul(x));
                }
            }
        }
        out
    }
}

fn reject(obligation: Obligation, detail: impl Into<String>) -> CeError {
    CeError::CertificateRejected { obligation, detail: detail.into() }
}

/// Verifies every certificate obligation, reporting the first failure.
pub fn ce_certificate_verify(algebra: &MatAlgebra, cert: &SosCertificate) -> Result<(), CeError> {
    let d = algebra.dim();
    let n = algebra.ambient_n();
    let field = algebra.field();

    // C5 first: nothing else is sound over another field.
    if field != FieldSpec::Rationals {
        return Err(reject(Obligation::RationalField, format!("ground field is {field}")));
    }
    if cert.dim() != d
        || cert.phi.iter().any(|row| row.len() != d)
        || cert.forms.iter().any(|f| f.len() != d)
    {
        return Err(CeError::CertificateShape(format!(
            "certificate is over {} coordinates, algebra has dimension {d}",
            cert.dim()
        )));
    }
    if cert.target.n() != n || cert.target.field() != field {
        return Err(CeError::CertificateShape("target matrix has the wrong shape".into()));
    }

    let center = algebra.center();
    let basis = algebra.basis();
    let phi_images: Vec<Mat> = (0..d)
        .map(|j| {
            let mut coords = vec![field.zero(); d];
            coords[j] = field.one();
            let image_coords = cert.apply_phi(&coords, field);
            Mat::linear_combination(basis, &image_coords).unwrap_or_else(|| Mat::zero(n, field))
        })
        .collect();

    // C1: phi of every basis element lands in the center.
    for (j, image) in phi_images.iter().enumerate() {
        if !center.contains(image) {
            return Err(reject(
                Obligation::WitnessInCenter,
                format!("phi of basis element {j} is not central"),
            ));
        }
    }

    // C3: the target is central and nonzero.
    if cert.target.is_zero() {
        return Err(reject(Obligation::TargetCentralNonzero, "target is zero"));
    }
    if !center.contains(&cert.target) {
        return Err(reject(Obligation::TargetCentralNonzero, "target is not central"));
    }

    // C4: the common kernel of the forms must sit inside the center.
    if !cert.forms.is_empty() {
        let form_map = LinMap::from_rows(field, cert.forms.clone());
        let kernel = solve_kernel(&form_map);
        for coeffs in kernel.rows() {
            let m = Mat::linear_combination(basis, coeffs).unwrap_or_else(|| Mat::zero(n, field));
            if !center.contains(&m) {
                return Err(reject(
                    Obligation::FormKernelCentral,
                    "a common zero of the forms is a non-central element",
                ));
            }
        }
    } else if d > 0 {
        // No forms at all: the kernel is everything, so the whole algebra
        // must be central.
        if center.dim() != d {
            return Err(reject(
                Obligation::FormKernelCentral,
                "empty form list over a non-commutative algebra",
            ));
        }
    }

    // C2: polarized identity on all basis pairs. With e_i the i-th
    // coordinate vector: B_i phi(B_j) + B_j phi(B_i) =
    // 2 (sum_t l_t(e_i) l_t(e_j)) E.
    let two = field.integer(2);
    for i in 0..d {
        for j in i..d {
            let left = basis[i].mul(&phi_images[j]).add(&basis[j].mul(&phi_images[i]));
            let mut coeff = field.zero();
            for form in &cert.forms {
                coeff = coeff.add(&form[i].mul(&form[j]));
            }
            let right = cert.target.scale(&two.mul(&coeff));
            if left != right {
                return Err(reject(
                    Obligation::QuadraticIdentity,
                    format!("polarization fails on basis pair ({i}, {j})"),
                ));
            }
        }
    }
    Ok(())
}

/// Verify a certificate and wrap the outcome as a verdict.
pub fn ce_certificate_verdict(algebra: &MatAlgebra, cert: &SosCertificate) -> CeVerdict {
    let start = Instant::now();
    match ce_certificate_verify(algebra, cert) {
        Ok(()) => CeVerdict {
            status: CeStatus::CentrallyEssential,
            witness: None,
            certificate: Some(cert.id.clone()),
            examined: 0,
            elapsed: start.elapsed(),
        },
        Err(_) => CeVerdict {
            status: CeStatus::Unknown,
            witness: None,
            certificate: None,
            examined: 0,
            elapsed: start.elapsed(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn strictly_upper(n: usize, field: FieldSpec) -> MatAlgebra {
        let mut mats = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                mats.push(Mat::unit(n, field, i, j));
            }
        }
        MatAlgebra::from_closed_span(&mats).unwrap()
    }

    #[test]
    fn element_test_fails_in_strictly_upper_three() {
        let a = strictly_upper(3, f3());
        let e12 = Mat::unit(3, f3(), 0, 1);
        let test = ce_element_test(&e12, &a).unwrap();
        assert!(!test.central);
        // W_a is the whole center span{E_02} but a annihilates it.
        assert_eq!(test.w_a, Subspace::span(&[Mat::unit(3, f3(), 0, 2)]).unwrap());
        assert_eq!(test.image.dim(), 0);
        assert!(!test.passes);
    }

    #[test]
    fn central_elements_pass_vacuously() {
        let a = strictly_upper(3, f3());
        let e13 = Mat::unit(3, f3(), 0, 2);
        let test = ce_element_test(&e13, &a).unwrap();
        assert!(test.central);
        assert!(test.passes);
    }

    #[test]
    fn element_outside_algebra_is_rejected() {
        let a = strictly_upper(3, f3());
        let e21 = Mat::unit(3, f3(), 1, 0);
        assert!(matches!(ce_element_test(&e21, &a), Err(CeError::ElementNotInAlgebra)));
    }

    #[test]
    fn exhaustive_refutes_strictly_upper() {
        let a = strictly_upper(3, f3());
        let verdict = ce_exhaustive(&a, 1 << 20).unwrap();
        assert_eq!(verdict.status, CeStatus::NotCentrallyEssential);
        let witness = verdict.witness.expect("witness");
        assert!(reverify_not_ce_witness(a.basis(), &witness, 1 << 20).unwrap());
    }

    #[test]
    fn exhaustive_accepts_commutative_without_enumeration() {
        let mats = [Mat::unit(4, f3(), 0, 2), Mat::unit(4, f3(), 0, 3)];
        let a = MatAlgebra::from_closed_span(&mats).unwrap();
        let verdict = ce_exhaustive(&a, 10).unwrap();
        assert_eq!(verdict.status, CeStatus::CentrallyEssential);
        assert_eq!(verdict.examined, 0);
    }

    #[test]
    fn exhaustive_respects_budget() {
        let a = strictly_upper(4, f3());
        assert!(matches!(
            ce_exhaustive(&a, 10),
            Err(CeError::Algebra(AlgebraError::BudgetExceeded { .. }))
        ));
    }

    #[test]
    fn random_search_finds_witness_over_rationals() {
        let a = strictly_upper(4, FieldSpec::Rationals);
        let verdict = ce_random_search(&a, 100, 7);
        assert_eq!(verdict.status, CeStatus::NotCentrallyEssential);
        let witness = verdict.witness.expect("witness");
        assert!(reverify_not_ce_witness(a.basis(), &witness, 1 << 20).unwrap());
    }

    #[test]
    fn random_search_is_deterministic() {
        let a = strictly_upper(4, FieldSpec::Rationals);
        let v1 = ce_random_search(&a, 25, 99);
        let v2 = ce_random_search(&a, 25, 99);
        assert_eq!(v1.status, v2.status);
        assert_eq!(v1.witness, v2.witness);
        assert_eq!(v1.examined, v2.examined);
    }
}
