//! Full-scale acceptance gate: every verification group at its production
//! tolerances, one pass/fail line per criterion.  Criteria with a pinned
//! runtime budget fail when they exceed it, even if all gates hold.
//!
//! Runs without the libtest harness so the per-criterion lines always print;
//! the process exits nonzero if any criterion fails.

use std::time::Instant;

use symspace::error::Result;
use symspace::verify::{
    bessel_special_cases, bulk_universality, closed_form_small_cases, continuation_continuity,
    edge_density_vs_mc, global_density_gates, hard_edge_universality, kernel_identities,
    measure_agreement, qdet_layer, specfun_suite, weyl_proportionality, Suite, VerifyEntry,
};

const SEED: u64 = 0;

struct Criterion {
    label: &'static str,
    budget_s: Option<f64>,
    run: fn() -> Result<Vec<VerifyEntry>>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        label: "matrix-model eigenangle laws match Metropolis references",
        budget_s: Some(600.0),
        run: || measure_agreement(Suite::Full, SEED),
    },
    Criterion {
        label: "rank-one ensembles follow their closed-form laws",
        budget_s: Some(90.0),
        run: || closed_form_small_cases(Suite::Full, SEED),
    },
    Criterion {
        label: "global density: projector diagonal and pooled-angle flatness",
        budget_s: None,
        run: || global_density_gates(Suite::Full, SEED),
    },
    Criterion {
        label: "bulk rescaling converges to the sine kernels",
        budget_s: None,
        run: || bulk_universality(Suite::Full),
    },
    Criterion {
        label: "hard-edge rescaling converges to the Bessel kernels",
        budget_s: None,
        run: || hard_edge_universality(Suite::Full),
    },
    Criterion {
        label: "half-integer Bessel kernels reduce to sinc combinations",
        budget_s: Some(1.0),
        run: bessel_special_cases,
    },
    Criterion {
        label: "Bessel-kernel index-shift and primitive identities",
        budget_s: Some(10.0),
        run: kernel_identities,
    },
    Criterion {
        label: "quaternion determinant layer: Pfaffian and sandwich identities",
        budget_s: Some(5.0),
        run: || qdet_layer(SEED),
    },
    Criterion {
        label: "eigenangle densities are proportional to the root-system weight",
        budget_s: Some(10.0),
        run: || weyl_proportionality(SEED),
    },
    Criterion {
        label: "hard-edge densities match direct matrix sampling",
        budget_s: Some(900.0),
        run: || edge_density_vs_mc(Suite::Full, SEED),
    },
    Criterion {
        label: "analytic continuation is continuous across parameter boundaries",
        budget_s: Some(30.0),
        run: continuation_continuity,
    },
    Criterion {
        label: "special-function layer invariants",
        budget_s: Some(120.0),
        run: specfun_suite,
    },
];

fn main() {
    let overall = Instant::now();
    let mut failed = 0usize;
    for (idx, criterion) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (criterion.run)();
        let elapsed = start.elapsed().as_secs_f64();
        let number = idx + 1;
        match outcome {
            Ok(entries) => {
                let bad: Vec<&VerifyEntry> = entries.iter().filter(|e| !e.pass).collect();
                let over_budget = criterion
                    .budget_s
                    .is_some_and(|budget| elapsed > budget);
                let worst = entries
                    .iter()
                    .map(|e| e.value / e.tolerance)
                    .fold(f64::NEG_INFINITY, f64::max);
                if bad.is_empty() && !over_budget {
                    println!(
                        "[PASS] criterion {number:2}/12: {} ({} gates, worst margin {:.3} of tolerance, {:.1} s)",
                        criterion.label,
                        entries.len(),
                        worst,
                        elapsed
                    );
                } else {
                    failed += 1;
                    println!(
                        "[FAIL] criterion {number:2}/12: {} ({} of {} gates failed{}, {:.1} s)",
                        criterion.label,
                        bad.len(),
                        entries.len(),
                        if over_budget {
                            format!(
                                ", exceeded {:.0} s budget",
                                criterion.budget_s.unwrap_or(0.0)
                            )
                        } else {
                            String::new()
                        },
                        elapsed
                    );
                    for entry in bad {
                        println!(
                            "         {}: {} = {:.6} (tolerance {:.6})",
                            entry.test_name, entry.metric, entry.value, entry.tolerance
                        );
                    }
                }
            }
            Err(err) => {
                failed += 1;
                println!(
                    "[FAIL] criterion {number:2}/12: {} (error: {err}, {:.1} s)",
                    criterion.label, elapsed
                );
            }
        }
    }
    println!(
        "acceptance: {}/12 criteria passed in {:.1} s",
        CRITERIA.len() - failed,
        overall.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
