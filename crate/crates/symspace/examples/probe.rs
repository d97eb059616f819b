use std::time::Instant;

use symspace::verify::{self, Suite};

fn show(label: &str, entries: &[verify::VerifyEntry], t: Instant) {
    println!("== {label} ({:.1} s)", t.elapsed().as_secs_f64());
    for e in entries {
        println!(
            "  [{}] {} :: {} = {:.6} (tol {})",
            if e.pass { "ok" } else { "FAIL" },
            e.test_name,
            e.metric,
            e.value,
            e.tolerance
        );
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "fast".into());
    match which.as_str() {
        "fast" => {
            let t = Instant::now();
            let e = verify::bulk_universality(Suite::Full).unwrap();
            show("bulk full", &e, t);
            let t = Instant::now();
            let e = verify::hard_edge_universality(Suite::Full).unwrap();
            show("edge full", &e, t);
            let t = Instant::now();
            let e = verify::global_density_gates(Suite::Full, 0).unwrap();
            show("global full", &e, t);
            let t = Instant::now();
            let e = verify::closed_form_small_cases(Suite::Full, 0).unwrap();
            show("small full", &e, t);
        }
        "measure" => {
            let t = Instant::now();
            let e = verify::measure_agreement(Suite::Full, 0).unwrap();
            show("measure full", &e, t);
        }
        "edgemc" => {
            let t = Instant::now();
            let e = verify::edge_density_vs_mc(Suite::Full, 0).unwrap();
            show("edge mc full", &e, t);
        }
        "smoke" => {
            let t = Instant::now();
            let e = verify::run_suite(Suite::Smoke, 0).unwrap();
            show("smoke suite", &e, t);
        }
        other => eprintln!("unknown probe {other}"),
    }
}
