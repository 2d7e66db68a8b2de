use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{Bounds, Row};
use crate::ehrhart::upper_expression;
use crate::forests::{
    cf_count_formula, cf_refined_formula, cf_refined_term, enumerate_dcf_all, in_dcf1, upper_term,
    Cf1Census, CfCensus,
};

fn key(xs: &[usize]) -> Vec<i64> {
    xs.iter().map(|&x| x as i64).collect()
}

fn cells(xs: &[usize]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub(super) fn identity_main(b: &Bounds) -> Vec<Row> {
    (1..=b.max_s)
        .into_par_iter()
        .flat_map_iter(|s| {
            let census = CfCensus::new(s);
            let mut rows = Vec::new();
            for q in 0..=b.max_q {
                for k in 1..=s {
                    for m in 1..=k {
                        for ell in 0..s {
                            let count = census.count_refined(q, k, ell, m);
                            let formula = cf_refined_formula(q, s, k, ell, m);
                            let mut c = cells(&[q, s, k, ell, m]);
                            c.extend([count.to_string(), formula.to_string()]);
                            rows.push(Row::new(
                                key(&[q, s, k, ell, m]),
                                c,
                                BigInt::from(count) == formula,
                                "",
                            ));
                        }
                    }
                }
            }
            rows
        })
        .collect()
}

pub(super) fn identity_lah(b: &Bounds) -> Vec<Row> {
    (1..=b.max_s)
        .into_par_iter()
        .flat_map_iter(|s| {
            let census = CfCensus::new(s);
            let mut rows = Vec::new();
            for q in 0..=b.max_q {
                for k in 1..=s {
                    let count = census.count(q, k);
                    let formula = cf_count_formula(q, s, k);
                    let bad_ell = (0..s).find(|&ell| {
                        (1..=k)
                            .map(|m| census.count_refined(q, k, ell, m))
                            .sum::<u64>()
                            != count
                    });
                    let marginal = match bad_ell {
                        None => "ok".to_string(),
                        Some(ell) => format!("FAIL at ell={ell}"),
                    };
                    let pass = BigInt::from(count) == formula && bad_ell.is_none();
                    let mut c = cells(&[q, s, k]);
                    c.extend([count.to_string(), formula.to_string(), marginal]);
                    rows.push(Row::new(key(&[q, s, k]), c, pass, ""));
                }
            }
            rows
        })
        .collect()
}

pub(super) fn identity_upper(b: &Bounds) -> Vec<Row> {
    (1..=b.max_s)
        .into_par_iter()
        .flat_map_iter(|s| {
            let census = Cf1Census::new(s + 1);
            let mut rows = Vec::new();
            for q in 0..=b.max_q {
                for k in 1..=s {
                    for m in 1..=k {
                        for ell in 0..s {
                            let count = census.count(q + 1, k + 1, ell, m + 1);
                            let expr = upper_expression(q, s, k, ell, m);
                            let pass = BigInt::from(count) == expr && !expr.is_negative();
                            let mut c = cells(&[q, s, k, ell, m]);
                            c.extend([count.to_string(), expr.to_string()]);
                            rows.push(Row::new(key(&[q, s, k, ell, m]), c, pass, ""));
                        }
                    }
                }
            }
            rows
        })
        .collect()
}

type SignTable = HashMap<(usize, usize, usize, usize), BigInt>;

/// Signed sums over `DCF(q, s)` bucketed by `(k, ℓ, γ(ℓ), |A|)`.
fn dcf_table(q: usize, s: usize) -> SignTable {
    let mut table = SignTable::new();
    for d in enumerate_dcf_all(q, s) {
        let i = d.distinguished().len();
        for ell in 0..s {
            *table
                .entry((d.num_blocks(), ell, d.gamma(ell), i))
                .or_default() += d.sign();
        }
    }
    table
}

/// Signed sums over `DCF¹(q+1, s+1)` with sign `(-1)^{|B_A|-1}`, bucketed by
/// the shifted-down `(k, ℓ, m, i)`, for `ℓ <= s-1`.
fn dcf1_table(q: usize, s: usize) -> SignTable {
    let mut table = SignTable::new();
    for d in enumerate_dcf_all(q + 1, s + 1) {
        let (k1, i1) = (d.num_blocks(), d.distinguished().len());
        if i1 == 0 {
            continue;
        }
        for ell in 0..s {
            let m1 = d.gamma(ell);
            if m1 >= 2 && in_dcf1(&d, k1, ell, m1) {
                *table.entry((k1 - 1, ell, m1 - 1, i1 - 1)).or_default() -= d.sign();
            }
        }
    }
    table
}

pub(super) fn per_term(b: &Bounds) -> Vec<Row> {
    let tasks: Vec<(usize, usize, usize)> = (0..2)
        .flat_map(|family| {
            (1..=b.max_s).flat_map(move |s| (0..=b.max_q).map(move |q| (family, q, s)))
        })
        .collect();
    tasks
        .into_par_iter()
        .flat_map_iter(|(family, q, s)| {
            let table = if family == 0 {
                dcf_table(q, s)
            } else {
                dcf1_table(q, s)
            };
            let name = if family == 0 { "dcf" } else { "dcf1" };
            let mut rows = Vec::new();
            for k in 1..=s {
                for m in 1..=k {
                    for ell in 0..s {
                        for i in 0..=q {
                            let sum = table
                                .get(&(k, ell, m, i))
                                .cloned()
                                .unwrap_or_else(BigInt::zero);
                            let term = if family == 0 {
                                cf_refined_term(q, s, k, ell, m, i)
                            } else {
                                upper_term(q, s, k, ell, m, i)
                            };
                            let mut c = vec![name.to_string()];
                            c.extend(cells(&[q, s, k, ell, m, i]));
                            c.extend([sum.to_string(), term.to_string()]);
                            rows.push(Row::new(
                                key(&[family, q, s, k, ell, m, i]),
                                c,
                                sum == term,
                                "",
                            ));
                        }
                    }
                }
            }
            rows
        })
        .collect()
}
