//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact (rational or integer equality); there are no
//! tolerances to tune.

use std::process::ExitCode;
use std::time::Instant;

use panehr::verify::{run_campaign, worked_traces, Campaign, SweepReport};

struct Criterion {
    id: u8,
    title: &'static str,
    campaign: Campaign,
    /// Extra checks on top of "every row passed".
    extra: fn(&SweepReport) -> Result<(), String>,
}

fn no_extra(_: &SweepReport) -> Result<(), String> {
    Ok(())
}

fn traces_reproduce(_: &SweepReport) -> Result<(), String> {
    match worked_traces().into_iter().find(|t| !t.matches()) {
        None => Ok(()),
        Some(t) => Err(format!("trace {} differs:\n{}", t.name, t.actual)),
    }
}

fn nonnegative_expressions(report: &SweepReport) -> Result<(), String> {
    let negative = report.rows.iter().find(|r| r.cells[6].starts_with('-'));
    match negative {
        None => Ok(()),
        Some(r) => Err(format!("negative value: {}", report.describe(r))),
    }
}

fn both_families(report: &SweepReport) -> Result<(), String> {
    for family in ["dcf", "dcf1"] {
        if !report.rows.iter().any(|r| r.cells[0] == family) {
            return Err(format!("no rows for family {family}"));
        }
    }
    Ok(())
}

fn all_bound_kinds(report: &SweepReport) -> Result<(), String> {
    for kind in ["sandwich", "paving", "oracle", "explicit"] {
        if !report.rows.iter().any(|r| r.cells[0] == kind) {
            return Err(format!("no rows of kind {kind}"));
        }
    }
    Ok(())
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "refined CF counts equal the alternating sum (s<=7, q<=6)",
        campaign: Campaign::IdentityMain,
        extra: no_extra,
    },
    Criterion {
        id: 2,
        title: "CF counts by block number and the marginal over m (s<=7, q<=6)",
        campaign: Campaign::IdentityLah,
        extra: no_extra,
    },
    Criterion {
        id: 3,
        title: "CF1 counts equal the nonnegative upper expression (s<=6, q<=4)",
        campaign: Campaign::IdentityUpper,
        extra: nonnegative_expressions,
    },
    Criterion {
        id: 4,
        title: "signed sums with |A|=i equal the closed-form terms (s<=5, q<=4)",
        campaign: Campaign::PerTerm,
        extra: both_families,
    },
    Criterion {
        id: 5,
        title: "phi injective and inverted, image test exact, invariants hold, traces match (s<=6, q<=4)",
        campaign: Campaign::Phi,
        extra: traces_reproduce,
    },
    Criterion {
        id: 6,
        title: "f maps negative terms onto the non-fixed positive terms (s<=6, q<=4)",
        campaign: Campaign::Involution,
        extra: no_extra,
    },
    Criterion {
        id: 7,
        title: "panhandle Ehrhart polynomial equals interpolated counts (n<=8)",
        campaign: Campaign::EhrhartOracle,
        extra: no_extra,
    },
    Criterion {
        id: 8,
        title: "phi, psi nonnegative and Ehrhart coefficients positive (n<=9)",
        campaign: Campaign::Positivity,
        extra: no_extra,
    },
    Criterion {
        id: 9,
        title: "product <= panhandle <= hypersimplex (n<=8), paving bounds (n<=7, <=3 hyperplanes), explicit r=2 n=4",
        campaign: Campaign::Bounds,
        extra: all_bound_kinds,
    },
];

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for c in &CRITERIA {
        let report = run_campaign(c.campaign, c.campaign.default_bounds());
        let verdict = match report.first_failure() {
            Some(row) => Err(report.describe(row)),
            None if report.rows.is_empty() => Err("no rows produced".to_string()),
            None => (c.extra)(&report),
        };
        let secs = report.elapsed.as_secs_f64();
        match verdict {
            Ok(()) => println!(
                "[PASS] criterion {}: {} ({} rows, {secs:.1}s)",
                c.id,
                c.title,
                report.rows.len()
            ),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {} ({secs:.1}s)", c.id, c.title);
                println!("       first failure: {why}");
            }
        }
    }
    println!(
        "{}/{} criteria passed in {:.1}s",
        CRITERIA.len() - failed,
        CRITERIA.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
