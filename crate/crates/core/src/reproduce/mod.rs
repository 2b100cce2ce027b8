//! The acceptance suite: eleven seeded checks of the theory, each with a
//! pass/fail verdict, a short summary and a SHA-256 digest of everything
//! it computed. The report is byte-identical across runs and thread counts;
//! run times are kept beside it, not in it.

mod criteria;

use std::time::{Duration, Instant};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::rings::{MPoly, OracleRing};

pub use criteria::sdet_without_column_signs;

/// The symmetric determinant used by the oracle-equivalence check, so that a
/// broken implementation can be substituted.
pub type OracleSdet = fn(&OracleRing, &Matrix<MPoly>) -> Result<MPoly>;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "transitivity laws"),
    (2, "Hadamard automorphism"),
    (3, "oracle equivalence"),
    (4, "preadjoint minor identity"),
    (5, "preadjoint closure"),
    (6, "fixed-ring determinants"),
    (7, "Cayley-Hamilton"),
    (8, "ring embedding"),
    (9, "integrality certificates"),
    (10, "entry shapes"),
    (11, "determinism"),
];

#[derive(Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub oracle_sdet: OracleSdet,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: DEFAULT_SEED,
            oracle_sdet: crate::dets::sdet::<OracleRing>,
        }
    }
}

/// Accumulates encoded results in order.
#[derive(Default)]
pub struct Transcript(Sha256);

impl Transcript {
    pub fn absorb(&mut self, v: &Value) {
        self.0.update(v.to_string().as_bytes());
        self.0.update(b"\n");
    }

    fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub digest: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary
        )
    }

    fn to_json(&self) -> Value {
        json!({"id": self.id, "name": self.name, "passed": self.passed, "summary": self.summary, "digest": self.digest})
    }
}

pub struct Outcome {
    pub passed: bool,
    pub summary: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub results: Vec<CriterionResult>,
    /// Wall-clock time per criterion, in the order of `results`.
    pub runtimes: Vec<Duration>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    /// The canonical report; contains no timing information.
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "criteria": self.results.iter().map(CriterionResult::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }

    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }

    pub fn runtimes_json(&self) -> Value {
        let rows: Vec<Value> = self
            .results
            .iter()
            .zip(&self.runtimes)
            .map(|(r, t)| json!({"id": r.id, "seconds": t.as_secs_f64()}))
            .collect();
        json!(rows)
    }
}

fn name_of(id: u8) -> Result<&'static str> {
    CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .ok_or_else(|| Error::InvalidParameter(format!("no criterion {id}; expected 1..=11")))
}

/// Runs criterion `id`. An error inside a check counts as a failure.
pub fn run_criterion(id: u8, opts: &Options) -> Result<(CriterionResult, Duration)> {
    let name = name_of(id)?;
    let start = Instant::now();
    let mut transcript = Transcript::default();
    let outcome = match id {
        11 => determinism(opts, &mut transcript),
        _ => criteria::run(id, opts, &mut transcript),
    };
    let elapsed = start.elapsed();
    let (passed, summary) = match outcome {
        Ok(o) => (o.passed, o.summary),
        Err(e) => (false, format!("error: {e}")),
    };
    Ok((
        CriterionResult {
            id,
            name,
            passed,
            summary,
            digest: transcript.finish(),
        },
        elapsed,
    ))
}

/// Runs the listed criteria in order.
pub fn run_criteria(ids: &[u8], opts: &Options) -> Result<Report> {
    let mut results = Vec::with_capacity(ids.len());
    let mut runtimes = Vec::with_capacity(ids.len());
    for &id in ids {
        let (r, t) = run_criterion(id, opts)?;
        results.push(r);
        runtimes.push(t);
    }
    Ok(Report {
        seed: opts.seed,
        results,
        runtimes,
    })
}

pub fn reproduce_all(opts: &Options) -> Result<Report> {
    let ids: Vec<u8> = CRITERIA.iter().map(|(i, _)| *i).collect();
    run_criteria(&ids, opts)
}

/// Criteria 1 to 10 on one thread, twice on four threads, compared byte for
/// byte.
fn determinism(opts: &Options, transcript: &mut Transcript) -> Result<Outcome> {
    let ids: Vec<u8> = (1..=10).collect();
    let mut texts = Vec::new();
    for threads in [1, 4, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        texts.push(pool.install(|| run_criteria(&ids, opts))?.to_canonical_string());
    }
    let digest = hex::encode(Sha256::digest(texts[0].as_bytes()));
    transcript.absorb(&json!(digest));
    let same = texts.windows(2).all(|w| w[0] == w[1]);
    Ok(Outcome {
        passed: same,
        summary: if same {
            format!(
                "criteria 1-10 byte-identical on 1 and 4 threads and across repeated runs (sha256 {})",
                &digest[..16]
            )
        } else {
            "reports differ between runs".into()
        },
    })
}
