//! Exhaustive enumerators. Every enumerator returns its objects in the
//! canonical order (flattened sequence, block lengths, values, then `A`).

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use super::{
    gamma_of, leader_positions, Block, DistinguishedForest, Element, ForestQuery,
    OrderedChainForest,
};
use crate::error::{Error, Result};

/// All sets of nonempty lists partitioning `elems`, built by inserting each
/// element into every slot of every existing list, or into a new list.
fn sets_of_lists(elems: &[Element], leader_is_min: bool) -> Vec<Vec<Vec<Element>>> {
    let mut acc: Vec<Vec<Vec<Element>>> = vec![Vec::new()];
    for &x in elems {
        let mut next = Vec::new();
        for partial in &acc {
            for (bi, list) in partial.iter().enumerate() {
                let first_slot = usize::from(leader_is_min);
                for pos in first_slot..=list.len() {
                    let mut p = partial.clone();
                    p[bi].insert(pos, x);
                    next.push(p);
                }
            }
            let mut p = partial.clone();
            p.push(vec![x]);
            next.push(p);
        }
        acc = next;
    }
    acc
}

fn into_natural_blocks(lists: Vec<Vec<Element>>) -> Vec<Block> {
    let mut blocks: Vec<Block> = lists.into_iter().map(Block::from_vec).collect();
    blocks.sort_by_key(Block::leader);
    blocks
}

/// Every naturally ordered chain forest of `[s]`, in canonical order.
pub fn chain_forests(s: usize) -> Vec<OrderedChainForest> {
    let elems: Vec<Element> = (1..=s as Element).collect();
    let mut out: Vec<OrderedChainForest> = sets_of_lists(&elems, false)
        .into_iter()
        .map(|lists| OrderedChainForest::from_blocks(into_natural_blocks(lists)))
        .collect();
    out.sort_by_cached_key(OrderedChainForest::canonical_key);
    out
}

/// Naturally ordered forests on `elems` whose blocks all have weight zero.
/// Increasing insertion keeps each leader minimal and the leaders increasing.
pub fn weight_zero_forests(elems: &[Element]) -> Vec<Vec<Block>> {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    sets_of_lists(&sorted, true)
        .into_iter()
        .map(|lists| lists.into_iter().map(Block::from_vec).collect())
        .collect()
}

/// `CF(q, s, k)`: naturally ordered chain forests of `[s]` with `k` blocks and weight `q`.
pub fn enumerate_cf(q: usize, s: usize, k: usize) -> Result<Vec<OrderedChainForest>> {
    ForestQuery::new(q, s, k).validate()?;
    Ok(chain_forests(s)
        .into_iter()
        .filter(|f| f.num_blocks() == k && f.weight() == q)
        .collect())
}

pub fn count_cf(q: usize, s: usize, k: usize) -> Result<u64> {
    Ok(enumerate_cf(q, s, k)?.len() as u64)
}

/// `|CF(q, s, k, ℓ, m)|` by filtering `CF(q, s, k)` on `γ(ℱ, ℓ) = m`.
pub fn count_cf_refined(q: usize, s: usize, k: usize, ell: usize, m: usize) -> Result<u64> {
    ForestQuery::refined(q, s, k, ell, m).validate()?;
    Ok(enumerate_cf(q, s, k)?
        .iter()
        .filter(|f| gamma_of(f.blocks(), ell) == m)
        .count() as u64)
}

/// Counts of naturally ordered chain forests of `[s]` tabulated by weight,
/// block count and every `(ℓ, γ(ℱ, ℓ))`, for sweeping many queries at once.
#[derive(Debug, Clone)]
pub struct CfCensus {
    s: usize,
    totals: HashMap<(usize, usize), u64>,
    refined: HashMap<(usize, usize, usize, usize), u64>,
}

impl CfCensus {
    pub fn new(s: usize) -> Self {
        let mut totals = HashMap::new();
        let mut refined = HashMap::new();
        for f in chain_forests(s) {
            let (w, k) = (f.weight(), f.num_blocks());
            *totals.entry((w, k)).or_insert(0) += 1;
            for ell in 0..s {
                *refined
                    .entry((w, k, ell, gamma_of(f.blocks(), ell)))
                    .or_insert(0) += 1;
            }
        }
        CfCensus { s, totals, refined }
    }

    pub fn ground_size(&self) -> usize {
        self.s
    }

    pub fn count(&self, q: usize, k: usize) -> u64 {
        self.totals.get(&(q, k)).copied().unwrap_or(0)
    }

    pub fn count_refined(&self, q: usize, k: usize, ell: usize, m: usize) -> u64 {
        self.refined.get(&(q, k, ell, m)).copied().unwrap_or(0)
    }
}

/// Weak compositions of `total` into `parts` nonnegative parts, lexicographic.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    fn rec(idx: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == current.len() {
            current[idx] = left;
            out.push(current.clone());
            return;
        }
        for x in 0..=left {
            current[idx] = x;
            rec(idx + 1, left - x, current, out);
        }
    }
    rec(0, total, &mut current, &mut out);
    out
}

fn subsets_of_size(s: usize, i: usize) -> Vec<Vec<Element>> {
    fn rec(
        start: Element,
        s: Element,
        left: usize,
        cur: &mut Vec<Element>,
        out: &mut Vec<Vec<Element>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=s {
            if (s - x + 1) as usize >= left {
                cur.push(x);
                rec(x + 1, s, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, s as Element, i, &mut Vec::new(), &mut out);
    out
}

/// `DCF(q, s)`: every valued A-distinguished ordered chain forest of `[s]`
/// with `|A| + Σ v = q`.
pub fn enumerate_dcf_all(q: usize, s: usize) -> Vec<DistinguishedForest> {
    let mut out = Vec::new();
    for i in 0..=q.min(s) {
        for a in subsets_of_size(s, i) {
            let a_set: BTreeSet<Element> = a.iter().copied().collect();
            let rest: Vec<Element> = (1..=s as Element).filter(|x| !a_set.contains(x)).collect();
            let outside = weight_zero_forests(&rest);
            let inside = weight_zero_forests(&a);
            for b_part in &outside {
                for c_part in &inside {
                    let mut blocks = b_part.clone();
                    blocks.extend(c_part.iter().rev().cloned());
                    for values in compositions((q - i) as u32, blocks.len()) {
                        out.push(DistinguishedForest::from_parts(
                            blocks.clone(),
                            values,
                            a_set.clone(),
                        ));
                    }
                }
            }
        }
    }
    out.sort_by_cached_key(DistinguishedForest::canonical_key);
    out
}

fn matches_query(d: &DistinguishedForest, query: &ForestQuery) -> bool {
    d.num_blocks() == query.k
        && query.i.is_none_or(|i| d.distinguished().len() == i)
        && match (query.ell, query.m) {
            (Some(ell), Some(m)) => d.gamma(ell) == m,
            _ => true,
        }
}

/// `DCF(q, s, k, ℓ, m)`, optionally restricted to `|A| = i`.
/// When `ℓ` and `m` are absent there is no `γ` filter.
pub fn enumerate_dcf(query: &ForestQuery) -> Result<Vec<DistinguishedForest>> {
    query.validate()?;
    Ok(enumerate_dcf_all(query.q, query.s)
        .into_iter()
        .filter(|d| matches_query(d, query))
        .collect())
}

/// `Σ_{A ∈ C([s], i)} Σ_{(ℱ,v,A) ∈ DCF(q,s,k,ℓ,m)} (-1)^{|B_A(ℱ)|}`.
pub fn dcf_signed_sum(
    q: usize,
    s: usize,
    k: usize,
    ell: usize,
    m: usize,
    i: usize,
) -> Result<BigInt> {
    let query = ForestQuery::refined(q, s, k, ell, m).with_subset_size(i);
    Ok(enumerate_dcf(&query)?
        .iter()
        .map(|d| BigInt::from(d.sign()))
        .sum())
}

/// The leader of the `(k-m+2)`-th block sits at position `ℓ+2`.
pub(crate) fn upper_position_condition(
    leader_pos: &[usize],
    k: usize,
    ell: usize,
    m: usize,
) -> bool {
    if m < 2 || m > k {
        return false;
    }
    leader_pos.get(k - m + 1) == Some(&(ell + 2))
}

fn validate_upper(q: usize, s: usize, k: usize, ell: usize, m: usize) -> Result<()> {
    ForestQuery::refined(q, s, k, ell, m).validate()
}

/// Forests `𝖡_1⋯𝖡_{k-1}𝖢_1` of `[s]`: `1` leads the last block and the other
/// blocks are naturally ordered. Paired with `Σ wt(𝖡_i) + |𝖢_1|`.
fn cf1_universe(s: usize) -> Vec<(Vec<Block>, usize)> {
    let elems: Vec<Element> = (1..=s as Element).collect();
    sets_of_lists(&elems, false)
        .into_iter()
        .filter_map(|mut lists| {
            let one = lists.iter().position(|l| l.contains(&1))?;
            if lists[one][0] != 1 {
                return None;
            }
            let last = Block::from_vec(lists.swap_remove(one));
            let mut blocks = into_natural_blocks(lists);
            let weight = blocks.iter().map(Block::weight).sum::<usize>() + last.len();
            blocks.push(last);
            Some((blocks, weight))
        })
        .collect()
}

fn cf1_member(blocks: &[Block], ell: usize, m: usize) -> bool {
    gamma_of(blocks, ell) == m
        && upper_position_condition(&leader_positions(blocks), blocks.len(), ell, m)
}

/// `CF¹(q, s, k, ℓ, m)`: forests `𝖡_1⋯𝖡_{k-1}𝖢_1` of `[s]` with `1` leading
/// the last block, the other blocks naturally ordered, `Σ wt(𝖡_i) + |𝖢_1| = q`,
/// `γ(ℱ, ℓ) = m`, and the leader of block `k-m+2` at position `ℓ+2`.
pub fn enumerate_cf1(
    q: usize,
    s: usize,
    k: usize,
    ell: usize,
    m: usize,
) -> Result<Vec<OrderedChainForest>> {
    validate_upper(q, s, k, ell, m)?;
    if m < 2 {
        return Err(Error::params(format!("CF¹ needs m >= 2, got m={m}")));
    }
    let mut out: Vec<OrderedChainForest> = cf1_universe(s)
        .into_iter()
        .filter(|(blocks, w)| *w == q && blocks.len() == k && cf1_member(blocks, ell, m))
        .map(|(blocks, _)| OrderedChainForest::from_blocks(blocks))
        .collect();
    out.sort_by_cached_key(OrderedChainForest::canonical_key);
    Ok(out)
}

/// `|CF¹(q, s, k, ℓ, m)|` for every `(q, k, ℓ, m)` at once.
#[derive(Debug, Clone)]
pub struct Cf1Census {
    s: usize,
    counts: HashMap<(usize, usize, usize, usize), u64>,
}

impl Cf1Census {
    pub fn new(s: usize) -> Self {
        let mut counts = HashMap::new();
        for (blocks, w) in cf1_universe(s) {
            for ell in 0..s {
                let m = gamma_of(&blocks, ell);
                if cf1_member(&blocks, ell, m) {
                    *counts.entry((w, blocks.len(), ell, m)).or_insert(0) += 1;
                }
            }
        }
        Cf1Census { s, counts }
    }

    pub fn ground_size(&self) -> usize {
        self.s
    }

    pub fn count(&self, q: usize, k: usize, ell: usize, m: usize) -> u64 {
        self.counts.get(&(q, k, ell, m)).copied().unwrap_or(0)
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for idx in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(idx);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Every ordered chain forest on `elems`, in any block order.
pub fn ordered_forests(elems: &[Element]) -> Vec<Vec<Block>> {
    sets_of_lists(elems, false)
        .into_iter()
        .flat_map(|lists| {
            let blocks: Vec<Block> = lists.into_iter().map(Block::from_vec).collect();
            permutations(&blocks)
        })
        .collect()
}

/// The `i`-element subsets of `[s]` in lexicographic order.
pub fn subsets(s: usize, i: usize) -> Vec<Vec<Element>> {
    subsets_of_size(s, i)
}

pub fn count_cf1(q: usize, s: usize, k: usize, ell: usize, m: usize) -> Result<u64> {
    Ok(enumerate_cf1(q, s, k, ell, m)?.len() as u64)
}

/// Membership of an element of `DCF(q, s, k, ℓ, m)` in `DCF¹(q, s, k, ℓ, m)`.
pub(crate) fn in_dcf1(d: &DistinguishedForest, k: usize, ell: usize, m: usize) -> bool {
    if !d.distinguished().contains(&1) {
        return false;
    }
    if !upper_position_condition(&d.leader_positions(), k, ell, m) {
        return false;
    }
    d.blocks()
        .iter()
        .zip(d.values())
        .find(|(b, _)| b.contains(1))
        .is_some_and(|(_, &v)| v == 0)
}

/// `DCF¹(q, s, k, ℓ, m)`: elements of `DCF(q, s, k, ℓ, m)` with `1 ∈ A`, the
/// leader of block `k-m+2` at position `ℓ+2`, and value 0 on the block holding 1.
pub fn enumerate_dcf1(
    q: usize,
    s: usize,
    k: usize,
    ell: usize,
    m: usize,
) -> Result<Vec<DistinguishedForest>> {
    let query = ForestQuery::refined(q, s, k, ell, m);
    Ok(enumerate_dcf(&query)?
        .into_iter()
        .filter(|d| in_dcf1(d, k, ell, m))
        .collect())
}

/// `Σ_{A ∋ 1, |A| = i} Σ_{(ℱ,v,A) ∈ DCF¹(q,s,k,ℓ,m)} (-1)^{|B_A(ℱ)| - 1}`.
pub fn dcf1_signed_sum(
    q: usize,
    s: usize,
    k: usize,
    ell: usize,
    m: usize,
    i: usize,
) -> Result<BigInt> {
    Ok(enumerate_dcf1(q, s, k, ell, m)?
        .iter()
        .filter(|d| d.distinguished().len() == i)
        .map(|d| BigInt::from(-d.sign()))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(s: &str) -> OrderedChainForest {
        s.parse().unwrap()
    }

    #[test]
    fn block_and_forest_weights() {
        let f = forest("[1,3][5,2,4][7,6][8]");
        let weights: Vec<usize> = f.blocks().iter().map(Block::weight).collect();
        assert_eq!(weights, [0, 2, 1, 0]);
        assert_eq!(f.weight(), 3);
        assert_eq!(forest("[1][2][3]").weight(), 0);
        assert_eq!(forest("[2,1]").weight(), 1);
    }

    #[test]
    fn gamma_examples() {
        let f = forest("[1,3][4,2][5]");
        let gammas: Vec<usize> = (0..5).map(|l| f.gamma(l).unwrap()).collect();
        assert_eq!(gammas, [3, 3, 2, 2, 1]);
        assert!(f.gamma(5).is_err());
    }

    #[test]
    fn cf_examples() {
        assert_eq!(enumerate_cf(0, 1, 1).unwrap(), vec![forest("[1]")]);
        assert_eq!(enumerate_cf(1, 2, 1).unwrap(), vec![forest("[2,1]")]);
        assert_eq!(count_cf(0, 3, 2).unwrap(), 3);
        assert!(enumerate_cf(0, 2, 3).is_err());
    }

    #[test]
    fn cf_refined_examples() {
        assert_eq!(count_cf_refined(0, 2, 2, 1, 1).unwrap(), 1);
        assert_eq!(count_cf_refined(0, 2, 2, 0, 2).unwrap(), 1);
        assert_eq!(count_cf_refined(5, 2, 1, 0, 1).unwrap(), 0);
    }

    #[test]
    fn lah_totals() {
        // number of sets of lists of [s] (A000262)
        let totals: Vec<usize> = (1..=6).map(|s| chain_forests(s).len()).collect();
        assert_eq!(totals, [1, 3, 13, 73, 501, 4051]);
    }

    #[test]
    fn weight_zero_forest_count_is_factorial() {
        let counts: Vec<usize> = (0..=5u32)
            .map(|n| weight_zero_forests(&(1..=n).collect::<Vec<_>>()).len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 6, 24, 120]);
    }

    #[test]
    fn dcf_examples() {
        let q = ForestQuery::refined(0, 2, 2, 0, 2);
        let all = enumerate_dcf(&q).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_string(), "[1][2]|A={}");

        let q = ForestQuery::refined(1, 1, 1, 0, 1).with_subset_size(1);
        let all = enumerate_dcf(&q).unwrap();
        assert_eq!(
            all.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["[1]|A={1}"]
        );

        let q = ForestQuery::refined(1, 3, 2, 0, 2).with_subset_size(2);
        assert!(enumerate_dcf(&q).unwrap().is_empty());
    }

    #[test]
    fn dcf_objects_are_distinguished_and_budgeted() {
        for s in 1..=4 {
            for q in 0..=3 {
                for d in enumerate_dcf_all(q, s) {
                    assert!(d.is_a_distinguished(), "{d}");
                    assert_eq!(d.budget(), q as u64);
                }
            }
        }
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(dcf_signed_sum(0, 2, 2, 0, 2, 0).unwrap(), 1.into());
        // all signs are +1 when A is empty
        let q = ForestQuery::refined(2, 3, 2, 1, 1).with_subset_size(0);
        let n = enumerate_dcf(&q).unwrap().len();
        assert_eq!(dcf_signed_sum(2, 3, 2, 1, 1, 0).unwrap(), BigInt::from(n));
        assert_eq!(dcf_signed_sum(1, 2, 2, 0, 2, 1).unwrap(), (-2).into());
    }

    #[test]
    fn cf1_examples() {
        assert_eq!(count_cf1(0, 2, 2, 0, 2).unwrap(), 0);
        assert_eq!(
            enumerate_cf1(1, 2, 2, 0, 2).unwrap(),
            vec![forest("[2][1]")]
        );
        assert!(enumerate_cf1(1, 2, 2, 0, 1).is_err());
    }

    #[test]
    fn dcf1_examples() {
        for d in enumerate_dcf1(2, 3, 2, 0, 2).unwrap() {
            assert!(d.distinguished().contains(&1));
        }
        // ℓ + 2 beyond the ground set leaves no candidate
        assert!(enumerate_dcf1(2, 3, 3, 2, 2).unwrap().is_empty());
        assert!(enumerate_dcf1(2, 3, 2, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert!(compositions(1, 0).is_empty());
    }
}
