//! Randomized campaigns over subalgebras of a finite ambient algebra.
//!
//! Every trial draws generators, closes them, and decides the centrally
//! essential property exhaustively. A hit is a trial that is centrally
//! essential and non-commutative; hits are serialized and re-verified
//! from their own serialization through a fresh decision run. Reports are
//! deterministic for a fixed seed: trial i uses the master seed with
//! stream i, so worker count never changes the outcome.

use crate::algebra::{AlgebraError, MatAlgebra};
use crate::ce::{ce_exhaustive, CeError, CeStatus, CeVerdict};
use crate::field::FieldSpec;
use crate::format;
use crate::mat::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExploreError {
    #[error(transparent)]
    Ce(#[from] CeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("searches need a finite ground field")]
    InfiniteField,
    #[error("the commutativity campaign runs in the strictly upper algebras of size 3 or 4")]
    CampaignAmbient,
    #[error("the commutativity campaign needs an odd-characteristic prime field")]
    OddPrimeRequired,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub trials: u64,
    pub seed: u64,
    /// Enumeration cap per trial; oversized trials are skipped and counted.
    pub budget: u64,
    /// Inclusive generator count range; defaults to 1..=dim(ambient).
    pub generator_counts: Option<(usize, usize)>,
    /// Worker threads; the report does not depend on this.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            trials: 1000,
            seed: crate::claims::DEFAULT_SEED,
            budget: crate::algebra::DEFAULT_ENUMERATION_BUDGET,
            generator_counts: None,
            jobs: 1,
        }
    }
}

/// A centrally essential non-commutative subalgebra found by a search.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub trial: u64,
    pub dim: usize,
    pub power_index: Option<usize>,
    /// The algebra in file form; re-verification parses exactly this.
    pub serialized: String,
    pub reverified: bool,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub ambient_n: usize,
    pub field: FieldSpec,
    pub trials: u64,
    pub seed: u64,
    pub budget: u64,
    pub ce_count: u64,
    pub commutative_count: u64,
    pub skipped: u64,
    /// Trials of nilpotence index 2 that failed to be commutative; such
    /// an algebra cannot exist, so anything nonzero is a bug.
    pub index2_noncommutative: u64,
    /// Centrally essential trials with a reduced center that failed to
    /// be commutative; also impossible.
    pub reduced_center_violations: u64,
    pub hits: Vec<SearchHit>,
}

/// Closure of k uniform random elements of the ambient algebra.
pub fn random_subalgebra<R: Rng + ?Sized>(
    ambient: &MatAlgebra,
    k: usize,
    rng: &mut R,
) -> MatAlgebra {
    if k == 0 {
        return MatAlgebra::zero(ambient.ambient_n(), ambient.field());
    }
    let gens: Vec<Mat> = (0..k).map(|_| ambient.random_element(rng)).collect();
    MatAlgebra::closure_of(&gens).expect("generators share the ambient field")
}

struct TrialOutcome {
    index: u64,
    skipped: bool,
    ce: bool,
    commutative: bool,
    index2_violation: bool,
    reduced_violation: bool,
    hit: Option<SearchHit>,
}

/// True when no nonzero central element squares to zero; None when the
/// center is too large to enumerate within the budget.
fn center_is_reduced(algebra: &MatAlgebra, budget: u64) -> Option<bool> {
    let p = algebra.field().order()?;
    let center = algebra.center();
    let count = p.checked_pow(center.dim() as u32)?;
    if count > budget {
        return None;
    }
    for coords in crate::ce::coordinate_tuples(p, center.dim()) {
        let z = center.element_from_coords(&crate::ce::to_scalars(&coords, algebra.field()));
        if !z.is_zero() && z.mul(&z).is_zero() {
            return Some(false);
        }
    }
    Some(true)
}

fn reverify_hit(serialized: &str, budget: u64) -> bool {
    let Ok(loaded) = format::read_algebra(serialized, false) else {
        return false;
    };
    let Ok(verdict) = ce_exhaustive(&loaded.algebra, budget) else {
        return false;
    };
    verdict.status == CeStatus::CentrallyEssential && !loaded.algebra.is_commutative()
}

fn evaluate_trial(algebra: &MatAlgebra, index: u64, budget: u64) -> TrialOutcome {
    let commutative = algebra.is_commutative();
    let power_index = algebra.power_chain().nilpotence_index;
    let verdict: Result<CeVerdict, CeError> = ce_exhaustive(algebra, budget);
    match verdict {
        Err(CeError::Algebra(AlgebraError::BudgetExceeded { .. })) => TrialOutcome {
            index,
            skipped: true,
            ce: false,
            commutative,
            index2_violation: power_index == Some(2) && !commutative,
            reduced_violation: false,
            hit: None,
        },
        Err(other) => panic!("unexpected decision failure on a trial: {other}"),
        Ok(verdict) => {
            let ce = verdict.status == CeStatus::CentrallyEssential;
            let index2_violation = power_index == Some(2) && !commutative;
            let reduced_violation = ce
                && !commutative
                && center_is_reduced(algebra, budget) == Some(true);
            let hit = (ce && !commutative).then(|| {
                let serialized = format::write_algebra(algebra);
                let reverified = reverify_hit(&serialized, budget);
                SearchHit {
                    trial: index,
                    dim: algebra.dim(),
                    power_index,
                    serialized,
                    reverified,
                }
            });
            TrialOutcome {
                index,
                skipped: false,
                ce,
                commutative,
                index2_violation,
                reduced_violation,
                hit,
            }
        }
    }
}

fn run_random_trial(ambient: &MatAlgebra, index: u64, cfg: &SearchConfig) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index + 1);
    let (lo, hi) = cfg
        .generator_counts
        .unwrap_or((1, ambient.dim().max(1)));
    let k = rng.gen_range(lo..=hi);
    let algebra = random_subalgebra(ambient, k, &mut rng);
    evaluate_trial(&algebra, index, cfg.budget)
}

/// Runs `cfg.trials` random closed subalgebras of the ambient algebra,
/// preceded by any injected algebras (used by harness self-tests). The
/// report is identical for identical config and seed.
pub fn run_search(
    ambient: &MatAlgebra,
    injected: &[MatAlgebra],
    cfg: &SearchConfig,
) -> Result<SearchReport, ExploreError> {
    if !ambient.field().is_finite() {
        return Err(ExploreError::InfiniteField);
    }
    let injected_count = injected.len() as u64;
    let mut outcomes: Vec<TrialOutcome> = injected
        .iter()
        .enumerate()
        .map(|(i, algebra)| evaluate_trial(algebra, i as u64, cfg.budget))
        .collect();

    let first = injected_count;
    let end = injected_count + cfg.trials;
    if cfg.jobs <= 1 {
        for index in first..end {
            outcomes.push(run_random_trial(ambient, index, cfg));
        }
    } else {
        let jobs = cfg.jobs as u64;
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        let mut index = first + w;
                        while index < end {
                            out.push(run_random_trial(ambient, index, cfg));
                            index += jobs;
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("trial worker panicked"))
                .collect::<Vec<_>>()
        });
        outcomes.extend(results);
    }
    outcomes.sort_by_key(|o| o.index);

    let mut report = SearchReport {
        ambient_n: ambient.ambient_n(),
        field: ambient.field(),
        trials: injected_count + cfg.trials,
        seed: cfg.seed,
        budget: cfg.budget,
        ce_count: 0,
        commutative_count: 0,
        skipped: 0,
        index2_noncommutative: 0,
        reduced_center_violations: 0,
        hits: Vec::new(),
    };
    for outcome in outcomes {
        if outcome.skipped {
            report.skipped += 1;
            continue;
        }
        if outcome.ce {
            report.ce_count += 1;
        }
        if outcome.commutative {
            report.commutative_count += 1;
        }
        if outcome.index2_violation {
            report.index2_noncommutative += 1;
        }
        if outcome.reduced_violation {
            report.reduced_center_violations += 1;
        }
        if let Some(hit) = outcome.hit {
            report.hits.push(hit);
        }
    }
    Ok(report)
}

/// The commutativity campaign: random subalgebras of the strictly upper
/// 3-by-3 or 4-by-4 algebra over an odd prime field. Any hit would be a
/// centrally essential non-commutative subalgebra, which cannot exist at
/// these sizes, so callers treat a nonempty hit list as a failure.
pub fn small_n_campaign(
    n: usize,
    field: FieldSpec,
    cfg: &SearchConfig,
) -> Result<SearchReport, ExploreError> {
    if n != 3 && n != 4 {
        return Err(ExploreError::CampaignAmbient);
    }
    match field {
        FieldSpec::Prime(p) if p % 2 == 1 => {}
        _ => return Err(ExploreError::OddPrimeRequired),
    }
    let ambient = crate::construct::strictly_upper(n, field);
    run_search(&ambient, &[], cfg)
}

#[derive(Clone, Debug)]
pub struct RadicalEquivalenceCase {
    pub dim: usize,
    pub nilpotent_status: CeStatus,
    pub unital_status: CeStatus,
}

impl RadicalEquivalenceCase {
    pub fn agree(&self) -> bool {
        self.nilpotent_status == self.unital_status
    }
}

/// For each nilpotent algebra N, decides N and the unital algebra
/// obtained by adjoining the identity, recording both verdicts. The two
/// always agree: a local algebra is centrally essential exactly when its
/// radical is.
pub fn radical_equivalence(
    cases: &[MatAlgebra],
    budget: u64,
) -> Result<Vec<RadicalEquivalenceCase>, ExploreError> {
    let mut out = Vec::with_capacity(cases.len());
    for algebra in cases {
        let unital = algebra.adjoin_identity()?;
        let nilpotent_status = ce_exhaustive(algebra, budget)?.status;
        let unital_status = ce_exhaustive(&unital, budget)?.status;
        out.push(RadicalEquivalenceCase {
            dim: algebra.dim(),
            nilpotent_status,
            unital_status,
        });
    }
    Ok(out)
}
