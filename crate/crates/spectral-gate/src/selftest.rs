//! A fast built-in invariant suite, run by `spectral-gate selftest`.

use std::f64::consts::PI;

use spectral_gate_core::connectivity::{edge_connectivity, g_class_membership, min_cut_oracle};
use spectral_gate_core::packing::{tau, tau_partition_oracle};
use spectral_gate_core::spectra::{build_matrix, MatrixKind};
use spectral_gate_core::theorems::{find_condition, lemma_arith_check, threshold, ArithLemma};
use spectral_gate_core::{Rational, SpectralSummary};

use crate::corpus::{CorpusSpec, Source};
use crate::formats::{encode, parse_graph6};
use crate::generate::{self, enumerate_connected};
use crate::sweep::{run, Mode};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> CheckResult {
    match f() {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn max_error(got: &[f64], want: &mut [f64]) -> f64 {
    want.sort_by(|a, b| b.total_cmp(a));
    got.iter().zip(want.iter()).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max)
}

/// Runs every check; `threads` is passed to the sweep check.
pub fn run_all(threads: usize) -> Vec<CheckResult> {
    vec![
        check("pappus witness", || {
            let g = generate::pappus();
            let s = SpectralSummary::of(&g).map_err(|e| e.to_string())?;
            let (l3, q3) = (s.lambda(3).unwrap(), s.q(3).unwrap());
            ensure((l3 - 3f64.sqrt()).abs() < 1e-6, format!("lambda_3 = {l3}"))?;
            ensure((q3 - 3.0 - 3f64.sqrt()).abs() < 1e-6, format!("q_3 = {q3}"))?;
            let kappa = edge_connectivity(&g).map_err(|e| e.to_string())?.value;
            ensure(kappa == 3, format!("kappa = {kappa}"))?;
            let member = g_class_membership(&g).map_err(|e| e.to_string())?.is_member();
            ensure(member, "not in class")?;
            Ok(format!("lambda_3 = {l3:.7}, q_3 = {q3:.7}, kappa' = 3"))
        }),
        check("worked thresholds", || {
            let t = |id: &str, d: u64, dd: u64| threshold(find_condition(id).unwrap(), d, dd, 2, 0).map_err(|e| e.to_string());
            ensure(t("THM-3.1", 3, 3)? == Rational::from_integer(2), "THM-3.1 at (3,3,2)")?;
            ensure(t("THM-3.3", 3, 3)? == Rational::from_integer(5), "THM-3.3 at (3,3,2)")?;
            ensure(t("THM-3.1", 3, 4)? == Rational::from_integer(1), "THM-3.1 at (3,4,2)")?;
            Ok("2, 5, 1".into())
        }),
        check("arithmetic lemmas", || {
            for k in 1..=100 {
                for b in 3..=100 {
                    ensure(lemma_arith_check(ArithLemma::Lemma211, b, k) == Ok(true), format!("b={b} k={k}"))?;
                }
                for b in 2..=100 {
                    ensure(lemma_arith_check(ArithLemma::Lemma212, b, k) == Ok(true), format!("b'={b} k={k}"))?;
                }
            }
            Ok("b, b' <= 100, k <= 100".into())
        }),
        check("eigensolver closed forms", || {
            let mut worst = 0f64;
            for n in 2..=30 {
                let a = build_matrix(&generate::complete(n).unwrap(), MatrixKind::Adjacency);
                let mut want = vec![-1.0; n];
                want[0] = n as f64 - 1.0;
                worst = worst.max(max_error(&a.eigenvalues().map_err(|e| e.to_string())?, &mut want));
                let star = build_matrix(&generate::star(n).unwrap(), MatrixKind::Adjacency);
                let r = ((n - 1) as f64).sqrt();
                let mut want = vec![0.0; n];
                want[0] = r;
                want[n - 1] = -r;
                worst = worst.max(max_error(&star.eigenvalues().map_err(|e| e.to_string())?, &mut want));
                if n >= 3 {
                    let c = build_matrix(&generate::cycle(n).unwrap(), MatrixKind::Adjacency);
                    let mut want: Vec<f64> = (0..n).map(|j| 2.0 * (2.0 * PI * j as f64 / n as f64).cos()).collect();
                    worst = worst.max(max_error(&c.eigenvalues().map_err(|e| e.to_string())?, &mut want));
                }
            }
            ensure(worst < 1e-9, format!("max error {worst:e}"))?;
            Ok(format!("max error {worst:.1e}"))
        }),
        check("oracle equivalences n <= 6", || {
            let mut count = 0;
            for n in 2..=6 {
                for g in enumerate_connected(n).unwrap() {
                    let sw = edge_connectivity(&g).unwrap().value;
                    ensure(sw == min_cut_oracle(&g).unwrap(), format!("kappa on {}", encode(&g)))?;
                    let t = tau(&g).unwrap();
                    ensure(t.verify(&g).is_ok(), format!("certificate on {}", encode(&g)))?;
                    ensure(t.tau == tau_partition_oracle(&g).unwrap().0, format!("tau on {}", encode(&g)))?;
                    count += 1;
                }
            }
            Ok(format!("{count} graphs"))
        }),
        check("format round trip", || {
            let mut rng = generate::rng(1);
            for i in 0..2000 {
                let n = 1 + i % 40;
                let g = if i % 2 == 0 {
                    generate::gnp(n, 0.3, &mut rng).unwrap()
                } else {
                    generate::random_multigraph(n, 3, 1.0, &mut rng).unwrap()
                };
                let s = encode(&g);
                ensure(parse_graph6(&s).as_ref() == Ok(&g), format!("round trip of {s}"))?;
            }
            Ok("2000 graphs".into())
        }),
        check("consistency sweep n <= 5", || {
            let spec = CorpusSpec {
                sources: vec![Source::Enumerate { n_max: 5, n_min: 2 }],
                emit_records: false,
                ..CorpusSpec::default()
            };
            let r = run(&spec, Mode::Sweep, threads).map_err(|e| e.to_string())?;
            ensure(r.passed(), format!("{:?}", r.summary))?;
            Ok(format!("{} graphs, 0 counterexamples", r.summary.graphs_evaluated))
        }),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn selftest_passes() {
        for r in super::run_all(1) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
