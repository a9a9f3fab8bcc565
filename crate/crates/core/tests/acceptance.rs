//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;
use std::time::Instant;

use artin_bd::suites::{run_suite, Suite, SuiteConfig, VerifyReport};

fn config(n: Option<usize>, len: Option<usize>) -> SuiteConfig {
    SuiteConfig {
        n,
        len,
        ..SuiteConfig::default()
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Vec<(Suite, SuiteConfig)>)> = vec![
        (
            "well-definedness of the braid actions",
            vec![(Suite::BraidRelations, config(None, None))],
        ),
        (
            "phi and psi are mutually inverse isomorphisms",
            vec![(Suite::PhiPsi, config(None, None))],
        ),
        (
            "zeta acts by inner automorphisms",
            vec![(Suite::ZetaInner, config(None, None))],
        ),
        (
            "central elements",
            vec![(Suite::Center, config(None, None))],
        ),
        (
            "braid-invariant K-words, n=3, length 8",
            vec![(Suite::DeltaKey, config(Some(3), Some(8)))],
        ),
        (
            "braid-invariant free words, n=3, length 6",
            vec![(Suite::DyerGrossman, config(Some(3), Some(6)))],
        ),
        (
            "kernels of rhoD and rhoB agree, n=4, length 6",
            vec![(Suite::Faithfulness, config(Some(4), Some(6)))],
        ),
        (
            "x0 is fixed by rhoD",
            vec![(Suite::X0Fixed, config(None, None))],
        ),
        (
            "beta0 realization, n=4",
            vec![(Suite::Beta0, config(None, None))],
        ),
        (
            "w(x,xy) w(y,xy) is nontrivial, length 6",
            vec![(Suite::LemmaFourth, config(None, Some(6)))],
        ),
        (
            "rank-2 normal forms and automorphisms",
            vec![
                (Suite::Rank2Closure, config(None, Some(6))),
                (Suite::Rank2Out, config(None, None)),
            ],
        ),
        (
            "eps_n and tau_n",
            vec![(Suite::SpecialAutos, config(None, None))],
        ),
    ];
    let mut all_pass = true;
    for (i, (title, runs)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let reports: Vec<Result<VerifyReport, String>> = runs
            .iter()
            .map(|(suite, cfg)| run_suite(*suite, cfg).map_err(|e| format!("{suite}: {e}")))
            .collect();
        let pass = reports.iter().all(|r| r.as_ref().is_ok_and(|r| r.pass));
        let checked: u64 = reports.iter().flatten().map(|r| r.checked).sum();
        all_pass &= pass;
        println!(
            "criterion {:>2} {}: {title} ({checked} checks, {:.1}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for r in &reports {
            match r {
                Ok(r) if !r.pass => {
                    for f in r.failures.iter().take(10) {
                        println!("    {}: {f}", r.suite);
                    }
                }
                Err(e) => println!("    error: {e}"),
                _ => {}
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
