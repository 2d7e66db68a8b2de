use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::{worked_traces, Bounds, Row};
use crate::forests::{
    compositions, enumerate_dcf_all, ordered_forests, subsets, weight_zero_forests, Block,
    CfCensus, DistinguishedForest, Element,
};
use crate::processing::{
    check_invariants, image_check, involution_f, phi, phi_inverse, phi_with_trace,
};

fn lengths(d: &DistinguishedForest) -> Vec<usize> {
    d.blocks().iter().map(Block::len).collect()
}

/// Every candidate lying in the image-test universe for budget `q`: the
/// distinguished blocks decreasing by leader and led by their minima, the
/// remaining blocks an arbitrary ordered forest, values summing to at most
/// `q - |A|`.
fn candidates(q: usize, s: usize, mut visit: impl FnMut(DistinguishedForest)) {
    for i in 0..=q.min(s) {
        for a in subsets(s, i) {
            let a_set: BTreeSet<Element> = a.iter().copied().collect();
            let rest: Vec<Element> = (1..=s as Element).filter(|x| !a_set.contains(x)).collect();
            let inside = weight_zero_forests(&a);
            let outside = ordered_forests(&rest);
            for c_part in &inside {
                for b_part in &outside {
                    let mut blocks = b_part.clone();
                    blocks.extend(c_part.iter().rev().cloned());
                    for total in 0..=(q - i) as u32 {
                        for values in compositions(total, blocks.len()) {
                            visit(DistinguishedForest::from_parts(
                                blocks.clone(),
                                values,
                                a_set.clone(),
                            ));
                        }
                    }
                }
            }
        }
    }
}

#[derive(Default)]
struct PhiTally {
    images: HashSet<DistinguishedForest>,
    roundtrip: usize,
    invariants: usize,
    shape: usize,
    first_problem: Option<String>,
}

impl PhiTally {
    fn note(&mut self, msg: impl FnOnce() -> String) {
        if self.first_problem.is_none() {
            self.first_problem = Some(msg());
        }
    }
}

fn phi_row(q: usize, s: usize) -> Row {
    let domain = enumerate_dcf_all(q, s);
    let mut t = PhiTally::default();
    for d in &domain {
        let (image, states) = match phi_with_trace(d) {
            Ok(x) => x,
            Err(e) => {
                t.shape += 1;
                t.note(|| format!("phi({d}) failed: {e}"));
                continue;
            }
        };
        if let Err(e) = check_invariants(&states) {
            t.invariants += 1;
            t.note(|| format!("run of {d}: {e}"));
        }
        let r = d.split_index().unwrap_or(0);
        let same_shape = lengths(&image) == lengths(d)
            && image.distinguished() == d.distinguished()
            && image.blocks()[r..] == d.blocks()[r..]
            && image.values()[r..] == d.values()[r..];
        if !same_shape {
            t.shape += 1;
            t.note(|| {
                format!("phi({d}) = {image} changes the block shape or the distinguished part")
            });
        }
        match phi_inverse(&image, q as u64) {
            Ok(back) if back == *d => {}
            Ok(back) => {
                t.roundtrip += 1;
                t.note(|| format!("phi^-1(phi({d})) = {back}"));
            }
            Err(e) => {
                t.roundtrip += 1;
                t.note(|| format!("phi^-1({image}) failed: {e}"));
            }
        }
        t.images.insert(image);
    }
    let mut accepted = 0usize;
    let mut unhit: Option<String> = None;
    candidates(q, s, |c| {
        if image_check(&c, q as u64).is_ok() {
            accepted += 1;
            if unhit.is_none() && !t.images.contains(&c) {
                unhit = Some(format!("{c} passes the image test but is not an image"));
            }
        }
    });
    let pass = t.images.len() == domain.len()
        && accepted == t.images.len()
        && unhit.is_none()
        && t.roundtrip == 0
        && t.invariants == 0
        && t.shape == 0;
    let detail = t.first_problem.or(unhit).unwrap_or_default();
    let c = vec![
        "sweep".to_string(),
        q.to_string(),
        s.to_string(),
        domain.len().to_string(),
        t.images.len().to_string(),
        accepted.to_string(),
        t.roundtrip.to_string(),
        t.invariants.to_string(),
        t.shape.to_string(),
    ];
    Row::new(vec![0, q as i64, s as i64], c, pass, detail)
}

pub(super) fn phi_campaign(b: &Bounds) -> Vec<Row> {
    let tasks: Vec<(usize, usize)> = (1..=b.max_s)
        .flat_map(|s| (0..=b.max_q).map(move |q| (q, s)))
        .collect();
    let mut rows: Vec<Row> = tasks.into_par_iter().map(|(q, s)| phi_row(q, s)).collect();
    for (idx, tr) in worked_traces().into_iter().enumerate() {
        let mut c = vec![format!("trace:{}", tr.name)];
        c.extend(std::iter::repeat_n(String::new(), 8));
        let detail = if tr.matches() {
            String::new()
        } else {
            format!("got {:?}", tr.actual)
        };
        rows.push(Row::new(vec![1, idx as i64], c, tr.matches(), detail));
    }
    rows
}

#[derive(Default, Clone)]
struct Bucket {
    negative: usize,
    positive: usize,
    fixed: usize,
    mapped: usize,
    signed: i64,
    errors: usize,
}

/// `A = ∅` and no block of `φ(d)` is fully processed.
fn is_fixed(d: &DistinguishedForest, q: u64) -> bool {
    d.distinguished().is_empty()
        && phi(d)
            .ok()
            .and_then(|img| image_check(&img, q).ok())
            .map(|w| w.j)
            == Some(0)
}

fn involution_rows(q: usize, s: usize, census: &CfCensus) -> Vec<Row> {
    let mut buckets: HashMap<(usize, usize, usize), Bucket> = HashMap::new();
    let mut first_problem: Option<String> = None;
    let mut note = |msg: String| {
        if first_problem.is_none() {
            first_problem = Some(msg);
        }
    };
    let q64 = q as u64;
    let mut f_images: HashSet<DistinguishedForest> = HashSet::new();
    let mut collisions = 0usize;
    for d in enumerate_dcf_all(q, s) {
        let sign = d.sign();
        let fd = if sign < 0 {
            match involution_f(&d, q64) {
                Ok(fd) => {
                    let ok = fd.is_a_distinguished()
                        && fd.budget() == q64
                        && fd.sign() > 0
                        && lengths(&fd) == lengths(&d)
                        && !is_fixed(&fd, q64);
                    if !ok {
                        note(format!(
                            "f({d}) = {fd} is not a positive term with the same shape"
                        ));
                    }
                    Some((fd, ok))
                }
                Err(e) => {
                    note(format!("f({d}) failed: {e}"));
                    None
                }
            }
        } else {
            None
        };
        if let Some((fd, true)) = &fd {
            if !f_images.insert(fd.clone()) {
                collisions += 1;
                note(format!("f is not injective: {fd} is hit twice"));
            }
        }
        let fixed = sign > 0 && is_fixed(&d, q64);
        for ell in 0..s {
            let bucket = buckets
                .entry((d.num_blocks(), ell, d.gamma(ell)))
                .or_default();
            bucket.signed += sign as i64;
            if sign < 0 {
                bucket.negative += 1;
                match &fd {
                    Some((_, true)) => bucket.mapped += 1,
                    _ => bucket.errors += 1,
                }
            } else if fixed {
                bucket.fixed += 1;
            } else {
                bucket.positive += 1;
            }
        }
    }
    let mut rows = Vec::new();
    for k in 1..=s {
        for m in 1..=k {
            for ell in 0..s {
                let b = buckets.get(&(k, ell, m)).cloned().unwrap_or_default();
                let cf = census.count_refined(q, k, ell, m);
                // f keeps the block lengths, so injectivity overall gives it per bucket
                let pass = b.errors == 0
                    && collisions == 0
                    && b.mapped == b.negative
                    && b.mapped == b.positive
                    && b.fixed as u64 == cf
                    && b.signed == cf as i64;
                let c: Vec<String> = [q, s, k, ell, m, b.negative, b.positive, b.mapped, b.fixed]
                    .iter()
                    .map(ToString::to_string)
                    .chain([cf.to_string(), b.signed.to_string()])
                    .collect();
                let detail = if pass {
                    String::new()
                } else {
                    first_problem.clone().unwrap_or_default()
                };
                rows.push(Row::new(
                    [q, s, k, ell, m].iter().map(|&x| x as i64).collect(),
                    c,
                    pass,
                    detail,
                ));
            }
        }
    }
    rows
}

pub(super) fn involution_campaign(b: &Bounds) -> Vec<Row> {
    let tasks: Vec<(usize, usize)> = (1..=b.max_s)
        .flat_map(|s| (0..=b.max_q).map(move |q| (q, s)))
        .collect();
    let censuses: HashMap<usize, CfCensus> = (1..=b.max_s)
        .into_par_iter()
        .map(|s| (s, CfCensus::new(s)))
        .collect();
    tasks
        .into_par_iter()
        .flat_map_iter(|(q, s)| involution_rows(q, s, &censuses[&s]))
        .collect()
}
