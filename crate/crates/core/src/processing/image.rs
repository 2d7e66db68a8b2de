//! Membership tests for the image of φ.
//!
//! Rejections name the failing condition by number. For the plain test:
//! (1) the distinguished part, (2) the last `j` blocks, (3) the first
//! `r - j` blocks, (4) the budget equation, (5) block count and γ. The upper
//! test inserts (2) for the block containing 1, shifting the split conditions
//! to (3)-(5), then (6) block count and γ and (7) the leader position.

use crate::error::{Error, Result};
use crate::forests::{Block, DistinguishedForest, ValuedForest};

/// Split index found while accepting an element of the image: the last `j`
/// of the `r` non-distinguished blocks consist of processed elements only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ImageWitness {
    pub j: usize,
    pub r: usize,
}

/// The unique `j` with
/// `Σ_{u ≤ r-j} wt(B_u) + Σ_{u > r-j} |B_u| + Σ_u β_u = q1`, if any.
/// The left side strictly increases with `j` since `|B| > wt(B)`.
pub fn budget_split(forest: &ValuedForest, q1: u64) -> Option<usize> {
    let base = forest.total_value();
    split_by(
        forest.blocks(),
        |idx| base + head_cost(forest.blocks(), idx),
        q1,
    )
}

/// `Σ_{u < cut} wt(B_u) + Σ_{u ≥ cut} |B_u|`.
fn head_cost(blocks: &[Block], cut: usize) -> u64 {
    blocks
        .iter()
        .enumerate()
        .map(|(u, b)| if u < cut { b.weight() } else { b.len() } as u64)
        .sum()
}

fn split_by(blocks: &[Block], total_for_cut: impl Fn(usize) -> u64, target: u64) -> Option<usize> {
    let r = blocks.len();
    (0..=r).find(|&j| total_for_cut(r - j) == target)
}

fn reject(condition: u8, reason: impl Into<String>) -> Error {
    Error::NotInImage {
        condition,
        reason: reason.into(),
    }
}

fn naturally_ordered(blocks: &[Block]) -> bool {
    blocks.windows(2).all(|w| w[0].leader() < w[1].leader())
}

#[derive(Clone, Copy)]
struct Numbering {
    last_j: u8,
    first: u8,
    equation: u8,
}

const PLAIN: Numbering = Numbering {
    last_j: 2,
    first: 3,
    equation: 4,
};
const UPPER: Numbering = Numbering {
    last_j: 3,
    first: 4,
    equation: 5,
};

/// Distinguished blocks inside `A`, strictly after the others, decreasing by
/// leader and led by their minimum. Returns `r`.
fn check_distinguished_part(d: &DistinguishedForest) -> Result<usize> {
    let r = d.split_index().ok_or_else(|| {
        reject(
            1,
            "blocks do not split into blocks outside A followed by blocks inside A",
        )
    })?;
    let c = &d.blocks()[r..];
    if !c.windows(2).all(|w| w[0].leader() > w[1].leader()) {
        return Err(reject(1, "blocks inside A are not decreasing by leader"));
    }
    if let Some(b) = c.iter().find(|b| !b.leader_is_min()) {
        return Err(reject(
            1,
            format!("block {b} inside A is not led by its minimum"),
        ));
    }
    Ok(r)
}

/// The split conditions shared by both characterizations.
fn check_split(d: &DistinguishedForest, r: usize, q: u64, num: Numbering) -> Result<ImageWitness> {
    let blocks = &d.blocks()[..r];
    let values = &d.values()[..r];
    let fixed = d.distinguished().len() as u64 + d.distinguished_value();
    let total = |cut: usize| {
        fixed + head_cost(blocks, cut) + values[cut..].iter().map(|&v| v as u64).sum::<u64>()
    };
    let j = split_by(blocks, total, q).ok_or_else(|| {
        reject(
            num.equation,
            format!("no split index balances the budget {q}"),
        )
    })?;
    let last = &blocks[r - j..];
    if !naturally_ordered(last) || !last.iter().all(Block::leader_is_min) {
        return Err(reject(
            num.last_j,
            format!("the last {j} blocks are not naturally ordered and led by their minima"),
        ));
    }
    let first = &blocks[..r - j];
    if !naturally_ordered(first) {
        return Err(reject(
            num.first,
            format!("the first {} blocks are not naturally ordered", r - j),
        ));
    }
    if values[..r - j].iter().any(|&v| v != 0) {
        return Err(reject(
            num.first,
            format!("the first {} blocks carry nonzero values", r - j),
        ));
    }
    Ok(ImageWitness { j, r })
}

fn check_shape(
    d: &DistinguishedForest,
    k: usize,
    ell: usize,
    m: usize,
    condition: u8,
) -> Result<()> {
    if d.num_blocks() != k {
        return Err(reject(
            condition,
            format!("{} blocks, expected {k}", d.num_blocks()),
        ));
    }
    let g = d.gamma(ell);
    if g != m {
        return Err(reject(
            condition,
            format!("gamma at {ell} is {g}, expected {m}"),
        ));
    }
    Ok(())
}

/// Is `d` in `φ(DCF(q, s))`? Accepts with the split index or names the
/// first failing condition.
pub fn image_check(d: &DistinguishedForest, q: u64) -> Result<ImageWitness> {
    let r = check_distinguished_part(d)?;
    check_split(d, r, q, PLAIN)
}

/// Is `d` in `φ(DCF(q, s, k, ℓ, m))`?
pub fn image_check_in(
    d: &DistinguishedForest,
    q: u64,
    k: usize,
    ell: usize,
    m: usize,
) -> Result<ImageWitness> {
    let w = image_check(d, q)?;
    check_shape(d, k, ell, m, 5)?;
    Ok(w)
}

/// Is `d` in `φ(DCF¹(q, s, k, ℓ, m))`? On top of the plain conditions, `1`
/// lies in the last block, that block has value zero, and the leader of block
/// `k-m+2` sits at position `ℓ+2`.
pub fn image_check_upper(
    d: &DistinguishedForest,
    q: u64,
    k: usize,
    ell: usize,
    m: usize,
) -> Result<ImageWitness> {
    let r = check_distinguished_part(d)?;
    let last = d.blocks().len().checked_sub(1).filter(|&p| p >= r);
    match last {
        Some(p) if d.blocks()[p].contains(1) => {
            if d.values()[p] != 0 {
                return Err(reject(2, "the block containing 1 has a nonzero value"));
            }
        }
        _ => return Err(reject(2, "1 is not in the last distinguished block")),
    }
    let w = check_split(d, r, q, UPPER)?;
    check_shape(d, k, ell, m, 6)?;
    if !crate::forests::upper_position_condition(&d.leader_positions(), k, ell, m) {
        return Err(reject(
            7,
            format!(
                "the leader of block {} is not at position {}",
                k as i64 - m as i64 + 2,
                ell + 2
            ),
        ));
    }
    Ok(w)
}
