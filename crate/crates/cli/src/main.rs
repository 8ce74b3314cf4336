//! Command-line front end: construct the named algebra families, decide
//! the centrally essential property on algebra files, inspect centers,
//! Jordan forms and nil-indices, run randomized subalgebra searches, and
//! re-derive the bundled claim table.

use cealg::algebra::{AlgebraError, MatAlgebra, NilIndexStrategy};
use cealg::ce::{
    ce_certificate_verdict, ce_certificate_verify, ce_exhaustive, ce_random_search, CeError,
    CeStatus, CeVerdict,
};
use cealg::claims::{ClaimConfig, ClaimRunner, ClaimStatus};
use cealg::construct::Family;
use cealg::explore::{run_search, SearchConfig};
use cealg::field::FieldSpec;
use cealg::format;
use cealg::jordan::nilpotent_jordan;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

// Exit codes are a stable contract: 0 confirmed, 1 refuted, 2 unknown,
// 64 parse or usage error, 65 budget exceeded, 70 internal failure.
const EXIT_CE: u8 = 0;
const EXIT_NOT_CE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BUDGET: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "cealg", version, about = "Exact workbench for centrally essential matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an algebra file is centrally essential.
    Check(CheckArgs),
    /// Build a named algebra family and write it as an algebra file.
    Construct(ConstructArgs),
    /// Print the center of an algebra file.
    Center(CenterArgs),
    /// Jordan form of a nilpotent basis element of an algebra file.
    Jordan(JordanArgs),
    /// Nil-index of an algebra file (maximal element nilpotence index).
    Nilindex(NilindexArgs),
    /// Randomized search for centrally essential non-commutative
    /// subalgebras of a strictly upper ambient algebra.
    Search(SearchArgs),
    /// Run the bundled claim table and print a pass/fail report.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Exhaustive,
    Random,
    Certificate,
}

#[derive(Args)]
struct CheckArgs {
    /// Algebra file to decide.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: CheckMode,
    /// Enumeration budget for exhaustive mode.
    #[arg(long, default_value_t = cealg::DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    /// Samples for random mode.
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_SEED)]
    seed: u64,
    /// Certificate file for certificate mode.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Close a non-closed basis instead of rejecting the file.
    #[arg(long)]
    auto_close: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// All n-by-n matrices.
    Full,
    /// Upper triangular matrices.
    Upper,
    /// Strictly upper triangular matrices.
    StrictUpper,
    /// The centrally essential non-commutative family in sizes 7 and up.
    Witness,
    /// The hand-labelled 7x7 witness instance.
    Witness7,
    /// The 4x4 pattern space commuting with the two-step shift.
    CentralizerPattern,
    /// The center of the 4x4 pattern space.
    CenterPattern,
    /// Left regular representation of an exterior algebra (--dim-v).
    Exterior,
    /// Regular representation of the quaternion group.
    Q8,
    /// Algebra generated by the single-block nilpotent Jordan matrix.
    Jordan,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Matrix size for the sized families.
    #[arg(long)]
    n: Option<usize>,
    /// Space dimension for the exterior family.
    #[arg(long)]
    dim_v: Option<usize>,
    /// Ground field: Q or F<p>.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    out: PathBuf,
    /// Also write the sum-of-squares certificate (witness family over Q).
    #[arg(long)]
    cert_out: Option<PathBuf>,
}

#[derive(Args)]
struct CenterArgs {
    file: PathBuf,
    #[arg(long)]
    auto_close: bool,
}

#[derive(Args)]
struct JordanArgs {
    file: PathBuf,
    /// Which basis element to decompose.
    #[arg(long, default_value_t = 0)]
    basis_index: usize,
    #[arg(long)]
    auto_close: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NilStrategy {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct NilindexArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    strategy: NilStrategy,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    #[arg(long)]
    auto_close: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Ambient size: the strictly upper n-by-n algebra.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "F3")]
    field: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Smallest generator count per trial.
    #[arg(long)]
    gen_min: Option<usize>,
    /// Largest generator count per trial.
    #[arg(long)]
    gen_max: Option<usize>,
    /// Directory for the report and the hit algebra files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = cealg::DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = cealg::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for the randomized campaigns.
    #[arg(long)]
    jobs: Option<usize>,
    /// Machine-readable one-line-per-claim output.
    #[arg(long)]
    porcelain: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Construct(args) => cmd_construct(&args),
        Command::Center(args) => cmd_center(&args),
        Command::Jordan(args) => cmd_jordan(&args),
        Command::Nilindex(args) => cmd_nilindex(&args),
        Command::Search(args) => cmd_search(&args),
        Command::VerifyPaper(args) => cmd_verify(&args),
    };
    ExitCode::from(code)
}

fn fail(code: u8, message: impl std::fmt::Display) -> u8 {
    eprintln!("cealg: {message}");
    code
}

fn parse_field(text: &str) -> Result<FieldSpec, u8> {
    text.parse::<FieldSpec>()
        .map_err(|e| fail(EXIT_USAGE, format!("bad field {text:?}: {e}")))
}

fn load_algebra(path: &Path, auto_close: bool) -> Result<MatAlgebra, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let loaded = format::read_algebra(&text, auto_close)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    for warning in &loaded.warnings {
        eprintln!("cealg: warning: {warning}");
    }
    Ok(loaded.algebra)
}

fn describe_algebra(algebra: &MatAlgebra) {
    println!(
        "algebra: {}x{} over {}, dimension {}, unital: {}",
        algebra.ambient_n(),
        algebra.ambient_n(),
        algebra.field(),
        algebra.dim(),
        if algebra.is_unital() { "yes" } else { "no" }
    );
    println!("commutative: {}", if algebra.is_commutative() { "yes" } else { "no" });
    match algebra.power_chain().nilpotence_index {
        Some(k) => println!("nilpotence index: {k}"),
        None => println!("nilpotence index: none (algebra is not nilpotent)"),
    }
    println!("center dimension: {}", algebra.center().dim());
}

fn print_verdict(verdict: &CeVerdict) {
    println!(
        "verdict: {} ({} elements examined, {:.3}s)",
        verdict.status,
        verdict.examined,
        verdict.elapsed.as_secs_f64()
    );
    if let Some(id) = &verdict.certificate {
        println!("established by certificate {id}");
    }
    if let Some(witness) = &verdict.witness {
        println!("witness (non-central, annihilates its central candidates):");
        print!("{witness}");
    }
}

fn verdict_exit(status: CeStatus) -> u8 {
    match status {
        CeStatus::CentrallyEssential => EXIT_CE,
        CeStatus::NotCentrallyEssential => EXIT_NOT_CE,
        CeStatus::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_check(args: &CheckArgs) -> u8 {
    let algebra = match load_algebra(&args.file, args.auto_close) {
        Ok(a) => a,
        Err(code) => return code,
    };
    describe_algebra(&algebra);
    let verdict = match args.mode {
        CheckMode::Exhaustive => match ce_exhaustive(&algebra, args.budget) {
            Ok(v) => v,
            Err(CeError::Algebra(AlgebraError::BudgetExceeded { needed, budget })) => {
                return fail(
                    EXIT_BUDGET,
                    format!("enumeration needs {needed:?} elements, budget is {budget}"),
                )
            }
            Err(CeError::Algebra(AlgebraError::InfiniteField)) => {
                return fail(
                    EXIT_USAGE,
                    "exhaustive mode needs a finite field; use --mode random or --mode certificate",
                )
            }
            Err(e) => return fail(EXIT_INTERNAL, e),
        },
        CheckMode::Random => ce_random_search(&algebra, args.samples, args.seed),
        CheckMode::Certificate => {
            let Some(cert_path) = &args.certificate else {
                return fail(EXIT_USAGE, "--mode certificate needs --certificate <path>");
            };
            let text = match std::fs::read_to_string(cert_path) {
                Ok(t) => t,
                Err(e) => {
                    return fail(EXIT_USAGE, format!("cannot read {}: {e}", cert_path.display()))
                }
            };
            let cert = match format::read_certificate(&text) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", cert_path.display())),
            };
            if let Err(e) = ce_certificate_verify(&algebra, &cert) {
                println!("certificate not accepted: {e}");
            }
            ce_certificate_verdict(&algebra, &cert)
        }
    };
    print_verdict(&verdict);
    verdict_exit(verdict.status)
}

fn cmd_construct(args: &ConstructArgs) -> u8 {
    let field = match parse_field(&args.field) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let need_n = |what: &str| -> Result<usize, u8> {
        args.n.ok_or_else(|| fail(EXIT_USAGE, format!("--family {what} needs --n")))
    };
    let family = match args.family {
        FamilyKind::Full => Family::Full { n: match need_n("full") { Ok(n) => n, Err(c) => return c } },
        FamilyKind::Upper => Family::Upper { n: match need_n("upper") { Ok(n) => n, Err(c) => return c } },
        FamilyKind::StrictUpper => {
            Family::StrictUpper { n: match need_n("strict-upper") { Ok(n) => n, Err(c) => return c } }
        }
        FamilyKind::Witness => Family::Witness { n: match need_n("witness") { Ok(n) => n, Err(c) => return c } },
        FamilyKind::Witness7 => Family::Witness7,
        FamilyKind::CentralizerPattern => Family::CentralizerPattern4,
        FamilyKind::CenterPattern => Family::CenterPattern4,
        FamilyKind::Exterior => {
            let Some(dim_v) = args.dim_v else {
                return fail(EXIT_USAGE, "--family exterior needs --dim-v");
            };
            Family::Exterior { dim_v }
        }
        FamilyKind::Q8 => Family::QuaternionGroup,
        FamilyKind::Jordan => Family::JordanBlock { n: match need_n("jordan") { Ok(n) => n, Err(c) => return c } },
    };
    let algebra = match family.build(field) {
        Ok(a) => a,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let text = format::write_algebra(&algebra);
    if let Err(e) = std::fs::write(&args.out, &text) {
        return fail(EXIT_INTERNAL, format!("cannot write {}: {e}", args.out.display()));
    }
    // the written file must round-trip to the same canonical subspace
    match format::read_algebra(&text, false) {
        Ok(loaded) if loaded.algebra.space() == algebra.space() => {}
        _ => return fail(EXIT_INTERNAL, "written file failed to round-trip"),
    }
    println!(
        "wrote {} ({}x{} over {}, dimension {})",
        args.out.display(),
        algebra.ambient_n(),
        algebra.ambient_n(),
        field,
        algebra.dim()
    );
    if let Some(cert_out) = &args.cert_out {
        if args.family != FamilyKind::Witness {
            return fail(EXIT_USAGE, "--cert-out applies to --family witness only");
        }
        if field != FieldSpec::Rationals {
            return fail(EXIT_USAGE, "--cert-out needs --field Q");
        }
        let n = args.n.expect("witness family already required --n");
        let (_, cert) = match cealg::construct::witness_certificate(n) {
            Ok(pair) => pair,
            Err(e) => return fail(EXIT_USAGE, e),
        };
        let cert_text = format::write_certificate(&cert, field);
        if let Err(e) = std::fs::write(cert_out, cert_text) {
            return fail(EXIT_INTERNAL, format!("cannot write {}: {e}", cert_out.display()));
        }
        println!("wrote certificate {}", cert_out.display());
    }
    0
}

fn cmd_center(args: &CenterArgs) -> u8 {
    let algebra = match load_algebra(&args.file, args.auto_close) {
        Ok(a) => a,
        Err(code) => return code,
    };
    describe_algebra(&algebra);
    let center = algebra.center();
    println!("center basis ({} matrices):", center.dim());
    for (i, mat) in center.basis().iter().enumerate() {
        println!("z{i}:");
        print!("{mat}");
    }
    0
}

fn cmd_jordan(args: &JordanArgs) -> u8 {
    let algebra = match load_algebra(&args.file, args.auto_close) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let Some(mat) = algebra.basis().get(args.basis_index) else {
        return fail(
            EXIT_USAGE,
            format!("basis index {} out of range (dimension {})", args.basis_index, algebra.dim()),
        );
    };
    match nilpotent_jordan(mat) {
        Ok(data) => {
            println!("partition: {:?}", data.partition);
            println!("change of basis P:");
            print!("{}", data.p);
            println!("jordan form P^-1 A P:");
            print!("{}", data.j);
            0
        }
        Err(e) => fail(EXIT_INTERNAL, format!("basis element {}: {e}", args.basis_index)),
    }
}

fn cmd_nilindex(args: &NilindexArgs) -> u8 {
    let algebra = match load_algebra(&args.file, args.auto_close) {
        Ok(a) => a,
        Err(code) => return code,
    };
    describe_algebra(&algebra);
    let strategy = match args.strategy {
        NilStrategy::Exhaustive => NilIndexStrategy::Exhaustive,
        NilStrategy::Randomized => {
            NilIndexStrategy::Randomized { samples: args.samples, seed: args.seed }
        }
    };
    match algebra.nil_index(strategy, args.budget) {
        Ok(report) => {
            println!(
                "nil-index: {} ({})",
                report.value,
                if report.certain { "exact, exhaustive" } else { "lower bound, sampled" }
            );
            0
        }
        Err(AlgebraError::BudgetExceeded { needed, budget }) => fail(
            EXIT_BUDGET,
            format!("enumeration needs {needed:?} elements, budget is {budget}"),
        ),
        Err(e) => fail(EXIT_INTERNAL, e),
    }
}

fn cmd_search(args: &SearchArgs) -> u8 {
    let field = match parse_field(&args.field) {
        Ok(f) => f,
        Err(code) => return code,
    };
    if !field.is_finite() {
        return fail(EXIT_USAGE, "search needs a finite field");
    }
    if args.n < 2 {
        return fail(EXIT_USAGE, "--n must be at least 2");
    }
    let ambient = cealg::construct::strictly_upper(args.n, field);
    let generator_counts = match (args.gen_min, args.gen_max) {
        (None, None) => None,
        (lo, hi) => {
            let lo = lo.unwrap_or(1);
            let hi = hi.unwrap_or_else(|| ambient.dim().max(1));
            if lo > hi || lo == 0 {
                return fail(EXIT_USAGE, "generator range must satisfy 1 <= min <= max");
            }
            Some((lo, hi))
        }
    };
    let cfg = SearchConfig {
        trials: args.trials,
        seed: args.seed,
        budget: args.budget,
        generator_counts,
        jobs: args.jobs.max(1),
    };
    let report = match run_search(&ambient, &[], &cfg) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_INTERNAL, e),
    };
    println!(
        "searched {} trials in the strictly upper {}x{} algebra over {} (seed {})",
        report.trials, args.n, args.n, field, report.seed
    );
    println!(
        "centrally essential: {}, commutative: {}, skipped for budget: {}",
        report.ce_count, report.commutative_count, report.skipped
    );
    println!(
        "consistency counters: index-2 non-commutative {}, reduced-center violations {}",
        report.index2_noncommutative, report.reduced_center_violations
    );
    if report.hits.is_empty() {
        println!(
            "no centrally essential non-commutative subalgebra found in {} trials",
            report.trials
        );
    } else {
        for hit in &report.hits {
            println!(
                "hit: trial {} dim {} power-index {:?} reverified {}",
                hit.trial, hit.dim, hit.power_index, hit.reverified
            );
        }
    }
    if let Some(dir) = &args.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return fail(EXIT_INTERNAL, format!("cannot create {}: {e}", dir.display()));
        }
        let report_path = dir.join("report.txt");
        if let Err(e) = std::fs::write(&report_path, format::write_search_report(&report)) {
            return fail(EXIT_INTERNAL, format!("cannot write {}: {e}", report_path.display()));
        }
        for hit in &report.hits {
            let hit_path = dir.join(format!("hit_{}.alg", hit.trial));
            if let Err(e) = std::fs::write(&hit_path, &hit.serialized) {
                return fail(EXIT_INTERNAL, format!("cannot write {}: {e}", hit_path.display()));
            }
        }
        println!("report written to {}", report_path.display());
    }
    0
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let mut cfg = ClaimConfig { budget: args.budget, seed: args.seed, ..ClaimConfig::default() };
    if let Some(jobs) = args.jobs {
        cfg.jobs = jobs.max(1);
    }
    let runner = ClaimRunner::new(cfg);
    let results = runner.run_all();
    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut total = std::time::Duration::ZERO;
    if !args.porcelain {
        println!("{:<28} {:<8} {:>9}  detail", "claim", "status", "time");
    }
    for result in &results {
        total += result.elapsed;
        match result.status {
            ClaimStatus::Pass => passed += 1,
            ClaimStatus::Fail(_) => failed += 1,
            ClaimStatus::Skipped(_) => skipped += 1,
        }
        if args.porcelain {
            println!(
                "CLAIM {} {} {} {}",
                result.id,
                result.status.label(),
                result.elapsed.as_millis(),
                result.detail
            );
        } else {
            println!(
                "{:<28} {:<8} {:>8.2}s  {}",
                result.id,
                result.status.label(),
                result.elapsed.as_secs_f64(),
                result.detail
            );
        }
    }
    println!(
        "{} claims: {passed} passed, {failed} failed, {skipped} skipped (total {:.1}s)",
        results.len(),
        total.as_secs_f64()
    );
    if failed == 0 && skipped == 0 {
        0
    } else {
        1
    }
}
