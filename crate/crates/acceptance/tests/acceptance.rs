//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any
//! criterion fails. Each criterion also checks that its corpus has the
//! frozen size, so a generator that silently shrinks is caught.

use std::process::ExitCode;
use std::time::Instant;

use scenario_games::oracle::{self, SuiteReport, DEFAULT_SAMPLES, DEFAULT_SEED};

/// Game limit for the monotonicity sweep: the largest vertex ground among
/// graphs with five edges.
const SWEEP_LIMIT: usize = 10;

struct Verdict {
    pass: bool,
    detail: String,
}

fn judge(reports: &[(&SuiteReport, usize)]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, frozen) in reports {
        let ok = r.passed() && r.checked == *frozen;
        pass &= ok;
        let mut part = format!("{}: {} checked, {} failed", r.name, r.checked, r.failures.len());
        if r.checked != *frozen {
            part.push_str(&format!(" (expected {frozen} cases)"));
        }
        if let Some(f) = r.failures.first() {
            part.push_str(&format!("; first: {} ({})", f.message, f.origin));
        }
        parts.push(part);
    }
    Verdict {
        pass,
        detail: parts.join(" | "),
    }
}

fn criterion(n: usize, title: &str, run: impl FnOnce() -> scenario_games::Result<Verdict>) -> bool {
    let start = Instant::now();
    let v = run().unwrap_or_else(|e| Verdict {
        pass: false,
        detail: format!("error: {e}"),
    });
    println!(
        "criterion {n} {}: {title}: {} [{:.1}s]",
        if v.pass { "PASS" } else { "FAIL" },
        v.detail,
        start.elapsed().as_secs_f64()
    );
    v.pass
}

fn main() -> ExitCode {
    let corpus = match oracle::corpus(5, DEFAULT_SAMPLES, DEFAULT_SEED) {
        Ok(c) => c,
        Err(e) => {
            println!("corpus generation failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all = true;

    all &= criterion(1, "five-way equivalence", || {
        Ok(judge(&[(&oracle::equivalence_suite(&corpus), 15_739)]))
    });
    all &= criterion(2, "monotone and general games agree", || {
        Ok(judge(&[(
            &oracle::monotonicity_suite(&corpus, 5, SWEEP_LIMIT)?,
            16_812,
        )]))
    });
    all &= criterion(3, "width values and the factor-three sandwich", || {
        Ok(judge(&[(&oracle::widths_suite(5)?, 183)]))
    });
    all &= criterion(4, "mtw = VF-tw = tw on connected graphs", || {
        Ok(judge(&[(&oracle::matroid_tw_suite(5)?, 22)]))
    });
    all &= criterion(5, "make-exact rewriting", || {
        let cases = oracle::make_exact_cases(&corpus, 2, DEFAULT_SEED)?;
        let (validity, potential) = oracle::make_exact_suites(&cases);
        Ok(judge(&[(&validity, 42_347), (&potential, 42_347)]))
    });
    all &= criterion(6, "decomposition conversions", || {
        Ok(judge(&[(&oracle::conversions_suite(&corpus), 15_778)]))
    });
    all &= criterion(7, "connectivity and scenario axioms", || {
        Ok(judge(&[(&oracle::props_suite(6, DEFAULT_SEED)?, 2_474)]))
    });

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
