use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::{yes_no, Bounds, Row};
use crate::ehrhart::{
    check_relaxation_positivity, ehr_hypersimplex, ehr_panhandle, ehr_paving, ehr_product_simplex,
    phi_poly, psi_poly, relaxation_correction, PanhandleParams, PavingProfile,
};
use crate::exactmath::poly_leq;
use crate::oracle::{
    count_points_paving, interpolate_panhandle, interpolate_paving, ExplicitPavingPolytope,
};

fn triple_key(kind: i64, p: &PanhandleParams) -> Vec<i64> {
    vec![kind, p.n() as i64, p.s() as i64, p.r() as i64]
}

fn triple_cells(p: &PanhandleParams) -> Vec<String> {
    vec![p.r().to_string(), p.s().to_string(), p.n().to_string()]
}

pub(super) fn ehrhart_oracle(b: &Bounds) -> Vec<Row> {
    PanhandleParams::all_up_to(b.max_n)
        .into_par_iter()
        .map(|p| {
            let formula = ehr_panhandle(&p);
            let mut c = triple_cells(&p);
            let (oracle_ok, oracle_cell, detail) = match interpolate_panhandle(&p) {
                Ok(o) => (o == formula, o.to_json(), String::new()),
                Err(e) => (false, String::new(), e.to_string()),
            };
            // s = n-1 relaxes nothing: the panhandle is the whole hypersimplex
            let uniform_ok =
                p.s() + 1 != p.n() || ehr_hypersimplex(p.r(), p.n()).is_ok_and(|h| h == formula);
            let uniform = if p.s() + 1 == p.n() {
                yes_no(uniform_ok)
            } else {
                "-".to_string()
            };
            let at_one = formula.eval_int(1) == BigRational::from_integer(p.basis_count());
            c.extend([formula.to_json(), oracle_cell, uniform, yes_no(at_one)]);
            Row::new(
                triple_key(0, &p),
                c,
                oracle_ok && uniform_ok && at_one,
                detail,
            )
        })
        .collect()
}

pub(super) fn positivity(b: &Bounds) -> Vec<Row> {
    PanhandleParams::all_up_to(b.max_n)
        .into_par_iter()
        .map(|p| {
            let phi = phi_poly(&p).is_nonnegative();
            let psi = psi_poly(&p).is_nonnegative();
            let relaxation = check_relaxation_positivity(&p);
            let e = ehr_panhandle(&p);
            let ehrhart = e.is_positive()
                && e.degree() == Some(p.n() - 1)
                && e.coeff(0) == BigRational::one();
            let mut c = triple_cells(&p);
            c.extend([
                yes_no(phi),
                yes_no(psi),
                yes_no(relaxation),
                yes_no(ehrhart),
            ]);
            Row::new(
                triple_key(0, &p),
                c,
                phi && psi && relaxation && ehrhart,
                "",
            )
        })
        .collect()
}

fn bounds_row(
    kind: &str,
    key: Vec<i64>,
    r: usize,
    n: usize,
    shape: String,
    pass: bool,
    detail: String,
) -> Row {
    let c = vec![
        kind.to_string(),
        r.to_string(),
        n.to_string(),
        shape,
        yes_no(pass),
    ];
    Row::new(key, c, pass, detail)
}

fn sandwich(p: &PanhandleParams) -> Row {
    let pan = ehr_panhandle(p);
    let product = ehr_product_simplex(p);
    let detail: String;
    let pass = match ehr_hypersimplex(p.r(), p.n()) {
        Ok(hyp) => {
            let lower = poly_leq(&product, &pan);
            let upper = poly_leq(&pan, &hyp);
            let correction = relaxation_correction(p) == &pan - &product;
            detail = [
                (lower, "product exceeds panhandle"),
                (upper, "panhandle exceeds hypersimplex"),
                (correction, "correction is not panhandle minus product"),
            ]
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, msg)| *msg)
            .collect::<Vec<_>>()
            .join("; ");
            lower && upper && correction
        }
        Err(e) => {
            detail = e.to_string();
            false
        }
    };
    let mut key = vec![0];
    key.extend(triple_key(0, p).into_iter().skip(1));
    bounds_row(
        "sandwich",
        key,
        p.r(),
        p.n(),
        format!("s={}", p.s()),
        pass,
        detail,
    )
}

/// Multisets of at most `max_len` sizes drawn from `lo..=hi`, ascending.
fn size_multisets(lo: usize, hi: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().copied().unwrap_or(lo);
            for h in start..=hi {
                let mut m2 = m.clone();
                m2.push(h);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn render_sizes(sizes: &[usize]) -> String {
    let parts: Vec<String> = sizes.iter().map(ToString::to_string).collect();
    format!("sizes=[{}]", parts.join(","))
}

fn paving_row(prof: &PavingProfile, idx: usize) -> Row {
    let (r, n) = (prof.r(), prof.n());
    let shape = render_sizes(prof.hyperplane_sizes());
    let key = vec![1, n as i64, r as i64, idx as i64];
    let (pass, detail) = match (ehr_paving(prof), ehr_hypersimplex(r, n)) {
        (Ok(e), Ok(hyp)) => {
            let below = poly_leq(&e, &hyp);
            let one = e.coeff(0) == BigRational::one();
            let detail = if !below {
                format!("{} is not below the hypersimplex", e.to_json())
            } else if !one {
                format!("constant term of {} is not 1", e.to_json())
            } else {
                String::new()
            };
            (below && one, detail)
        }
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    };
    bounds_row("paving", key, r, n, shape, pass, detail)
}

fn k_subsets(n: usize, k: usize) -> Vec<BTreeSet<u32>> {
    crate::forests::subsets(n, k)
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect()
}

/// The lexicographically first family of subsets of `[n]` with the given
/// sizes (in order) whose pairwise intersections have at most `r-2`
/// elements, if one exists.
fn first_family(r: usize, n: usize, sizes: &[usize]) -> Option<Vec<BTreeSet<u32>>> {
    fn go(r: usize, n: usize, sizes: &[usize], chosen: &mut Vec<BTreeSet<u32>>) -> bool {
        let Some(&h) = sizes.get(chosen.len()) else {
            return true;
        };
        for cand in k_subsets(n, h) {
            let fits = chosen
                .iter()
                .all(|c| c.intersection(&cand).count() + 2 <= r && *c != cand);
            if fits {
                chosen.push(cand);
                if go(r, n, sizes, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(r, n, sizes, &mut chosen).then_some(chosen)
}

fn render_family(family: &[BTreeSet<u32>]) -> String {
    let parts: Vec<String> = family
        .iter()
        .map(|h| {
            format!(
                "{{{}}}",
                h.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("H={}", parts.join(" "))
}

fn oracle_row(prof: &PavingProfile, idx: usize) -> Row {
    let (r, n) = (prof.r(), prof.n());
    let key = vec![2, n as i64, r as i64, idx as i64];
    let Some(family) = first_family(r, n, prof.hyperplane_sizes()) else {
        let shape = render_sizes(prof.hyperplane_sizes());
        return bounds_row(
            "oracle",
            key,
            r,
            n,
            shape,
            true,
            "no family with these sizes".into(),
        );
    };
    let shape = render_family(&family);
    let result = ExplicitPavingPolytope::new(r, n, family)
        .and_then(|poly| Ok((interpolate_paving(&poly)?, ehr_paving(prof)?)));
    let (pass, detail) = match result {
        Ok((counted, formula)) if counted == formula => (true, String::new()),
        Ok((counted, formula)) => (
            false,
            format!(
                "counted {} but formula gives {}",
                counted.to_json(),
                formula.to_json()
            ),
        ),
        Err(e) => (false, e.to_string()),
    };
    bounds_row("oracle", key, r, n, shape, pass, detail)
}

/// `r = 2`, `n = 4`, one hyperplane `{1,2}`, counted at `t = 0..=4`.
fn explicit_row() -> Row {
    let family = vec![BTreeSet::from([1u32, 2])];
    let shape = render_family(&family);
    let poly = ExplicitPavingPolytope::new(2, 4, family).expect("valid family");
    let formula = ehr_paving(&PavingProfile::new(2, 4, vec![2]).expect("valid profile"))
        .expect("valid profile");
    let bad: Vec<String> = (0..=4u64)
        .filter_map(|t| {
            let counted = count_points_paving(&poly, t);
            let expected = formula.eval_int(t as i64);
            (BigRational::from_integer(counted.clone()) != expected)
                .then(|| format!("t={t}: {counted} vs {expected}"))
        })
        .collect();
    bounds_row(
        "explicit",
        vec![3],
        2,
        4,
        shape,
        bad.is_empty(),
        bad.join("; "),
    )
}

pub(super) fn bounds(b: &Bounds) -> Vec<Row> {
    let mut rows: Vec<Row> = PanhandleParams::all_up_to(b.max_n)
        .par_iter()
        .map(sandwich)
        .collect();
    let mut profiles = Vec::new();
    for n in 2..b.max_n {
        for r in 1..n {
            for sizes in size_multisets(r, n - 1, b.max_hyperplanes) {
                profiles.push(PavingProfile::new(r, n, sizes).expect("sizes in range"));
            }
        }
    }
    let indexed: Vec<(usize, &PavingProfile)> = profiles.iter().enumerate().collect();
    rows.par_extend(indexed.par_iter().map(|&(i, p)| paving_row(p, i)));
    rows.par_extend(indexed.par_iter().map(|&(i, p)| oracle_row(p, i)));
    rows.push(explicit_row());
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_of_sizes() {
        assert_eq!(
            size_multisets(2, 3, 2),
            vec![vec![], vec![2], vec![3], vec![2, 2], vec![2, 3], vec![3, 3]]
        );
    }

    #[test]
    fn families_respect_intersections() {
        assert_eq!(
            first_family(2, 4, &[2, 2]),
            Some(vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4])])
        );
        assert_eq!(first_family(2, 4, &[2, 3]), None);
        assert_eq!(first_family(1, 3, &[1]), Some(vec![BTreeSet::from([1])]));
    }

    #[test]
    fn explicit_example_passes() {
        let row = explicit_row();
        assert!(row.pass, "{}", row.detail);
    }
}
