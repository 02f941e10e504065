//! Randomized cross-check of the outer-product solver against Gaussian
//! elimination, on both backends.
//!
//! Generator contract (stable across releases, so a seed always reproduces
//! the same run):
//!
//! * the stream is `ChaCha8Rng::seed_from_u64(seed)`;
//! * trial `t` (0-based) has size `n = 2 + t mod (dim_max - 1)`;
//! * each trial draws, in order and row-major, the `n x n` entries of `A`,
//!   the `n` entries of `b`, then the `n x (n+1)` entries of a homogeneous
//!   system, every entry as `gen_range(-9..=9)` on `i64`.
//!
//! Fixed 2x2 fixtures (one per classification) run before the random trials.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::matrix::{norm2_f64, sub_vec, Matrix};
use crate::oracle::gauss_solve;
use crate::scalar::{Rational, Scalar};
use crate::solver::{normalized_null_residual, solve_axb, solve_homogeneous, Classification};

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_DIM_MAX: usize = 6;
/// Entries are drawn from `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 9;
/// Float solutions against exact ones, relative 2-norm.
pub const FLOAT_SOLUTION_TOL: f64 = 1e-9;
/// Float normalized null-space residual.
pub const FLOAT_NULL_TOL: f64 = 1e-10;

const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub dim_max: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: DEFAULT_TRIALS,
            dim_max: DEFAULT_DIM_MAX,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub config: VerifyConfig,
    pub checks: BTreeMap<&'static str, CheckCount>,
    pub classifications: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn total_failed(&self) -> usize {
        self.checks.values().map(|c| c.failed).sum()
    }

    pub fn total_passed(&self) -> usize {
        self.checks.values().map(|c| c.passed).sum()
    }

    pub fn ok(&self) -> bool {
        self.total_failed() == 0
    }

    fn record(&mut self, check: &'static str, ok: bool, context: impl FnOnce() -> String) {
        let c = self.checks.entry(check).or_default();
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(format!("{check}: {}", context()));
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|(k, c)| {
                (
                    k.to_string(),
                    json!({"passed": c.passed, "failed": c.failed}),
                )
            })
            .collect();
        json!({
            "seed": self.config.seed,
            "trials": self.config.trials,
            "dim_max": self.config.dim_max,
            "passed": self.total_passed(),
            "failed": self.total_failed(),
            "checks": checks,
            "classifications": self.classifications,
            "failures": self.failures,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "seed {} trials {} dim-max {}\n",
            self.config.seed, self.config.trials, self.config.dim_max
        );
        for (k, c) in &self.checks {
            out += &format!("{k:<38} passed {:>6} failed {:>4}\n", c.passed, c.failed);
        }
        for (k, n) in &self.classifications {
            out += &format!("classification {k:<23} {n:>6}\n");
        }
        for f in &self.failures {
            out += &format!("FAIL {f}\n");
        }
        out += &format!(
            "{}: {} checks passed, {} failed\n",
            if self.ok() { "ok" } else { "FAILED" },
            self.total_passed(),
            self.total_failed()
        );
        out
    }
}

fn to_exact(rows: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect(),
    )
    .expect("rectangular")
}

fn to_float(rows: &[Vec<i64>]) -> Matrix<f64> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect(),
    )
    .expect("rectangular")
}

fn draw(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))
                .collect()
        })
        .collect()
}

fn relative_error(approx: &[f64], exact: &[f64]) -> f64 {
    let diff = norm2_f64(&sub_vec(approx, exact));
    let scale = norm2_f64(exact);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Checks one `Ax = b` instance on both backends.
fn check_axb(
    summary: &mut VerifySummary,
    a: &[Vec<i64>],
    b: &[i64],
    label: &str,
) -> Classification {
    let ae = to_exact(a);
    let be: Vec<Rational> = b.iter().map(|&v| Rational::from_i64(v)).collect();
    let sol = solve_axb(&ae, &be).expect("square system");
    let class = sol.classification();
    *summary.classifications.entry(class.as_str()).or_default() += 1;

    let d = ae
        .augment(&be.iter().map(|v| -v.clone()).collect::<Vec<_>>())
        .expect("shape");
    let dxi = d.mul_vec(sol.xi()).expect("shape");
    summary.record(
        "exact: D xi = 0",
        dxi.iter().all(|v| v == &Rational::from_i64(0)),
        || label.into(),
    );

    let det = Rational::determinant(&ae).value;
    summary.record(
        "exact: det(A) = (-1)^n xi_w",
        sol.det_value() == &det,
        || format!("{label}: {} vs {det}", sol.det_value()),
    );

    let oracle = gauss_solve(&ae, &be);
    match &oracle {
        Some(x) => {
            let same = sol.solution().as_ref() == Some(x);
            summary.record("exact: solution = oracle", same, || {
                format!("{label}: {:?}", sol.xi())
            });
            summary.record("exact: residual = 0", sol.residual_norm() == 0.0, || {
                format!("{label}: {}", sol.residual_norm())
            });
        }
        None => {
            summary.record(
                "exact: singular => not unique",
                class != Classification::Unique,
                || label.into(),
            );
        }
    }

    let fsol = solve_axb(
        &to_float(a),
        &b.iter().map(|&v| v as f64).collect::<Vec<_>>(),
    )
    .expect("square system");
    summary.record(
        "float: classification agrees",
        fsol.classification() == class,
        || format!("{label}: float {} exact {class}", fsol.classification()),
    );
    if let (Some(xf), Some(xe)) = (fsol.solution(), &oracle) {
        let xe: Vec<f64> = xe.iter().map(Scalar::to_f64).collect();
        let err = relative_error(&xf, &xe);
        summary.record(
            "float: relative error <= 1e-9",
            err <= FLOAT_SOLUTION_TOL,
            || format!("{label}: {err:e}"),
        );
    }
    class
}

fn check_homogeneous(summary: &mut VerifySummary, a: &[Vec<i64>], label: &str) {
    let ae = to_exact(a);
    let sol = solve_homogeneous(&ae).expect("n x (n+1)");
    let r = normalized_null_residual(&ae, sol.xi());
    summary.record("exact: homogeneous residual = 0", r == 0.0, || {
        format!("{label}: {r:e}")
    });

    let af = to_float(a);
    let fsol = solve_homogeneous(&af).expect("n x (n+1)");
    let rf = normalized_null_residual(&af, fsol.xi());
    summary.record(
        "float: homogeneous residual <= 1e-10",
        rf <= FLOAT_NULL_TOL,
        || format!("{label}: {rf:e}"),
    );
}

type Fixture = (&'static [&'static [i64]], &'static [i64], Classification);

fn run_fixtures(summary: &mut VerifySummary) {
    let cases: [Fixture; 3] = [
        (&[&[2, 0], &[0, 4]], &[2, 4], Classification::Unique),
        (&[&[1, 1], &[1, 1]], &[1, 2], Classification::AtInfinity),
        (&[&[1, 1], &[1, 1]], &[1, 1], Classification::RankDeficient),
    ];
    for (i, (a, b, expected)) in cases.into_iter().enumerate() {
        let rows: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
        let label = format!("fixture {i}");
        let class = check_axb(summary, &rows, b, &label);
        summary.record("fixture classification", class == expected, || {
            format!("{label}: {class}")
        });
    }
    check_homogeneous(
        summary,
        &[vec![1, 2, 3], vec![4, 5, 6]],
        "fixture homogeneous",
    );
}

/// Runs the fixtures and `config.trials` random trials.
pub fn run_verify(config: VerifyConfig) -> VerifySummary {
    let mut summary = VerifySummary {
        config,
        checks: BTreeMap::new(),
        classifications: BTreeMap::new(),
        failures: Vec::new(),
    };
    run_fixtures(&mut summary);
    let span = config.dim_max.max(2) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for t in 0..config.trials {
        let n = 2 + t % span;
        let a = draw(&mut rng, n, n);
        let b = draw(&mut rng, 1, n).remove(0);
        let h = draw(&mut rng, n, n + 1);
        check_axb(&mut summary, &a, &b, &format!("trial {t} (n = {n}) Ax=b"));
        check_homogeneous(&mut summary, &h, &format!("trial {t} (n = {n}) Ax=0"));
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let s = run_verify(VerifyConfig {
            trials: 60,
            dim_max: 4,
            seed: 7,
        });
        assert!(s.ok(), "{}", s.to_text());
        assert!(s.checks["fixture classification"].passed == 3);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let cfg = VerifyConfig {
            trials: 10,
            dim_max: 6,
            seed: 42,
        };
        assert_eq!(run_verify(cfg).to_json(), run_verify(cfg).to_json());
    }

    #[test]
    fn stream_contract() {
        // first draws of the documented stream for seed 42
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = draw(&mut rng, 2, 2);
        let mut again = ChaCha8Rng::seed_from_u64(42);
        let flat: Vec<i64> = (0..4).map(|_| again.gen_range(-9..=9)).collect();
        assert_eq!(a.concat(), flat);
    }
}
