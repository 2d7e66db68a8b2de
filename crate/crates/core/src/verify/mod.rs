//! Sweep campaigns that compare every closed form against an independent
//! count, and every map against its stated properties.
//!
//! Each campaign produces a [`SweepReport`] with one row per parameter tuple
//! in a fixed column layout. Tuples are processed in parallel and the rows
//! are sorted by key afterwards, so reports are deterministic.

mod identities;
mod maps;
mod polytopes;
mod traces;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub use traces::{worked_traces, TraceCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Campaign {
    IdentityMain,
    IdentityLah,
    IdentityUpper,
    PerTerm,
    Phi,
    Involution,
    EhrhartOracle,
    Bounds,
    Positivity,
}

impl Campaign {
    pub const ALL: [Campaign; 9] = [
        Campaign::IdentityMain,
        Campaign::IdentityLah,
        Campaign::IdentityUpper,
        Campaign::PerTerm,
        Campaign::Phi,
        Campaign::Involution,
        Campaign::EhrhartOracle,
        Campaign::Bounds,
        Campaign::Positivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::IdentityMain => "identity-main",
            Campaign::IdentityLah => "identity-lah",
            Campaign::IdentityUpper => "identity-upper",
            Campaign::PerTerm => "per-term",
            Campaign::Phi => "phi",
            Campaign::Involution => "involution",
            Campaign::EhrhartOracle => "ehrhart-oracle",
            Campaign::Bounds => "bounds",
            Campaign::Positivity => "positivity",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Campaign::IdentityMain => "|CF(q,s,k,l,m)| by enumeration against the refined alternating sum",
            Campaign::IdentityLah => "|CF(q,s,k)| against its alternating sum, and the sum over m of the refined counts",
            Campaign::IdentityUpper => "|CF1(q+1,s+1,k+1,l,m+1)| against the upper expression, which must be nonnegative",
            Campaign::PerTerm => "signed sums over DCF and DCF1 with |A| fixed against the closed-form terms",
            Campaign::Phi => "phi: injectivity, inverse, image description, per-step invariants, worked traces",
            Campaign::Involution => "sign-reversing map: injective from negative to positive terms, full cancellation",
            Campaign::EhrhartOracle => "panhandle Ehrhart polynomial against interpolated lattice-point counts",
            Campaign::Bounds => "product <= panhandle <= hypersimplex, paving <= hypersimplex, paving oracle",
            Campaign::Positivity => "nonnegative coefficients of phi, psi and the relaxation term; positive Ehrhart coefficients",
        }
    }

    /// CSV columns, excluding the trailing `pass` and `detail` columns.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Campaign::IdentityMain => &["q", "s", "k", "ell", "m", "enumerated", "formula"],
            Campaign::IdentityLah => &["q", "s", "k", "enumerated", "formula", "marginal"],
            Campaign::IdentityUpper => &["q", "s", "k", "ell", "m", "enumerated", "expression"],
            Campaign::PerTerm => &[
                "family",
                "q",
                "s",
                "k",
                "ell",
                "m",
                "i",
                "signed_sum",
                "term",
            ],
            Campaign::Phi => &[
                "kind",
                "q",
                "s",
                "objects",
                "images",
                "accepted",
                "roundtrip_failures",
                "invariant_failures",
                "shape_failures",
            ],
            Campaign::Involution => &[
                "q",
                "s",
                "k",
                "ell",
                "m",
                "negative",
                "positive",
                "f_images",
                "fixed",
                "cf",
                "signed_total",
            ],
            Campaign::EhrhartOracle => &["r", "s", "n", "formula", "oracle", "uniform", "at_one"],
            Campaign::Bounds => &["kind", "r", "n", "shape", "result"],
            Campaign::Positivity => &["r", "s", "n", "phi", "psi", "relaxation", "ehrhart"],
        }
    }

    /// Default grid: the bounds of the acceptance suite.
    pub fn default_bounds(self) -> Bounds {
        let b = Bounds {
            max_s: 0,
            max_q: 0,
            max_n: 0,
            max_hyperplanes: 0,
        };
        match self {
            Campaign::IdentityMain | Campaign::IdentityLah => Bounds {
                max_s: 7,
                max_q: 6,
                ..b
            },
            Campaign::IdentityUpper => Bounds {
                max_s: 6,
                max_q: 4,
                ..b
            },
            Campaign::PerTerm => Bounds {
                max_s: 5,
                max_q: 4,
                ..b
            },
            Campaign::Phi | Campaign::Involution => Bounds {
                max_s: 6,
                max_q: 4,
                ..b
            },
            Campaign::EhrhartOracle => Bounds { max_n: 8, ..b },
            Campaign::Bounds => Bounds {
                max_n: 8,
                max_hyperplanes: 3,
                ..b
            },
            Campaign::Positivity => Bounds { max_n: 9, ..b },
        }
    }

    /// Bounds above which a campaign becomes impractically slow.
    pub fn desk_limits(self) -> Bounds {
        let b = self.default_bounds();
        match self {
            Campaign::IdentityMain | Campaign::IdentityLah => Bounds {
                max_s: 8,
                max_q: 10,
                ..b
            },
            Campaign::IdentityUpper => Bounds {
                max_s: 7,
                max_q: 8,
                ..b
            },
            Campaign::PerTerm => Bounds {
                max_s: 6,
                max_q: 5,
                ..b
            },
            Campaign::Phi | Campaign::Involution => Bounds {
                max_s: 6,
                max_q: 5,
                ..b
            },
            Campaign::EhrhartOracle => Bounds { max_n: 10, ..b },
            Campaign::Bounds => Bounds {
                max_n: 9,
                max_hyperplanes: 3,
                ..b
            },
            Campaign::Positivity => Bounds { max_n: 14, ..b },
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::params(format!("unknown campaign {s:?}")))
    }
}

/// Grid bounds. Each campaign reads only the fields it needs: forest
/// campaigns use `max_s`/`max_q`, polytope campaigns `max_n`, and the bounds
/// campaign also `max_hyperplanes` (its paving part stops at `n = max_n - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub max_s: usize,
    pub max_q: usize,
    pub max_n: usize,
    pub max_hyperplanes: usize,
}

impl Bounds {
    /// Every field is within `limit`.
    pub fn within(&self, limit: &Bounds) -> bool {
        self.max_s <= limit.max_s
            && self.max_q <= limit.max_q
            && self.max_n <= limit.max_n
            && self.max_hyperplanes <= limit.max_hyperplanes
    }
}

/// One parameter tuple: sort key, cells in column order, verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub key: Vec<i64>,
    pub cells: Vec<String>,
    pub pass: bool,
    pub detail: String,
}

impl Row {
    pub fn new(key: Vec<i64>, cells: Vec<String>, pass: bool, detail: impl Into<String>) -> Self {
        Row {
            key,
            cells,
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub campaign: Campaign,
    pub bounds: Bounds,
    pub rows: Vec<Row>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn first_failure(&self) -> Option<&Row> {
        self.failures().next()
    }

    pub fn csv_header(&self) -> String {
        let mut cols: Vec<&str> = self.campaign.columns().to_vec();
        cols.extend(["pass", "detail"]);
        cols.join(",")
    }

    /// Header and one line per row; cells containing commas are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for row in &self.rows {
            let mut cells: Vec<String> = row.cells.iter().map(|c| csv_cell(c)).collect();
            cells.push(row.pass.to_string());
            cells.push(csv_cell(&row.detail));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `campaign: N/M tuples passed`.
    pub fn summary(&self) -> String {
        let ok = self.rows.iter().filter(|r| r.pass).count();
        format!("{}: {ok}/{} tuples passed", self.campaign, self.rows.len())
    }

    /// The row rendered as `column=value` pairs.
    pub fn describe(&self, row: &Row) -> String {
        let mut parts: Vec<String> = self
            .campaign
            .columns()
            .iter()
            .zip(&row.cells)
            .map(|(c, v)| format!("{c}={v}"))
            .collect();
        if !row.detail.is_empty() {
            parts.push(format!("detail={}", row.detail));
        }
        parts.join(" ")
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Run one campaign over the given grid.
pub fn run_campaign(campaign: Campaign, bounds: Bounds) -> SweepReport {
    let start = Instant::now();
    let mut rows = match campaign {
        Campaign::IdentityMain => identities::identity_main(&bounds),
        Campaign::IdentityLah => identities::identity_lah(&bounds),
        Campaign::IdentityUpper => identities::identity_upper(&bounds),
        Campaign::PerTerm => identities::per_term(&bounds),
        Campaign::Phi => maps::phi_campaign(&bounds),
        Campaign::Involution => maps::involution_campaign(&bounds),
        Campaign::EhrhartOracle => polytopes::ehrhart_oracle(&bounds),
        Campaign::Bounds => polytopes::bounds(&bounds),
        Campaign::Positivity => polytopes::positivity(&bounds),
    };
    rows.sort_by(|a, b| a.key.cmp(&b.key));
    SweepReport {
        campaign,
        bounds,
        rows,
        elapsed: start.elapsed(),
    }
}

pub(crate) fn yes_no(ok: bool) -> String {
    if ok { "ok" } else { "FAIL" }.to_string()
}
