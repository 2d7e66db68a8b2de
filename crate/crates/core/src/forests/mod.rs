//! Ordered chain forests and their valued and distinguished variants.
//!
//! An ordered chain forest of `[s]` is an ordered sequence of internally
//! ordered blocks partitioning `{1, …, s}`. The first element of a block is
//! its leader, the last its trailer, and its weight is the number of elements
//! smaller than the leader.

mod enumerate;
mod formula;
mod text;

use std::collections::BTreeSet;

pub use enumerate::{
    chain_forests, count_cf, count_cf1, count_cf_refined, dcf1_signed_sum, dcf_signed_sum,
    enumerate_cf, enumerate_cf1, enumerate_dcf, enumerate_dcf1, enumerate_dcf_all, ordered_forests,
    subsets, weight_zero_forests, Cf1Census, CfCensus,
};
pub(crate) use enumerate::{compositions, in_dcf1, upper_position_condition};
pub use formula::{cf_count_formula, cf_refined_formula, cf_refined_term, upper_term};

use crate::error::{Error, Result};

pub type Element = u32;

/// A nonempty sequence of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<Element>);

impl Block {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidBlock("empty block".into()));
        }
        if elements.contains(&0) {
            return Err(Error::InvalidBlock("elements must be positive".into()));
        }
        let distinct: BTreeSet<_> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(Error::InvalidBlock(format!(
                "repeated element in {elements:?}"
            )));
        }
        Ok(Block(elements))
    }

    pub(crate) fn from_vec(elements: Vec<Element>) -> Self {
        debug_assert!(!elements.is_empty());
        Block(elements)
    }

    pub fn elements(&self) -> &[Element] {
        &self.0
    }

    pub fn leader(&self) -> Element {
        self.0[0]
    }

    pub fn trailer(&self) -> Element {
        *self.0.last().expect("blocks are nonempty")
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.0.contains(&x)
    }

    /// Number of elements strictly less than the leader.
    pub fn weight(&self) -> usize {
        let leader = self.leader();
        self.0.iter().filter(|&&x| x < leader).count()
    }

    /// The leader is the block minimum.
    pub fn leader_is_min(&self) -> bool {
        self.weight() == 0
    }

    pub(crate) fn map(&self, f: impl Fn(Element) -> Element) -> Block {
        Block(self.0.iter().map(|&x| f(x)).collect())
    }
}

pub fn block_weight(b: &Block) -> usize {
    b.weight()
}

fn check_disjoint(blocks: &[Block]) -> Result<BTreeSet<Element>> {
    let mut seen = BTreeSet::new();
    for b in blocks {
        for &x in b.elements() {
            if !seen.insert(x) {
                return Err(Error::InvalidForest(format!("element {x} appears twice")));
            }
        }
    }
    Ok(seen)
}

fn check_partition(blocks: &[Block]) -> Result<usize> {
    let seen = check_disjoint(blocks)?;
    let s = seen.len();
    if seen.iter().copied().ne(1..=s as Element) {
        return Err(Error::InvalidForest(format!(
            "blocks do not partition [1..{s}]: {seen:?}"
        )));
    }
    Ok(s)
}

/// Block-end positions, i.e. running sums of block lengths.
fn block_ends(blocks: &[Block]) -> impl Iterator<Item = usize> + '_ {
    blocks.iter().scan(0, |acc, b| {
        *acc += b.len();
        Some(*acc)
    })
}

/// `γ(ℱ, ℓ)`: number of blocks ending strictly after position `ℓ`.
pub(crate) fn gamma_of(blocks: &[Block], ell: usize) -> usize {
    block_ends(blocks).filter(|&end| end > ell).count()
}

/// 1-based position of each block's leader.
pub(crate) fn leader_positions(blocks: &[Block]) -> Vec<usize> {
    let mut pos = 1;
    blocks
        .iter()
        .map(|b| {
            let p = pos;
            pos += b.len();
            p
        })
        .collect()
}

pub(crate) fn naturally_ordered(blocks: &[Block]) -> bool {
    blocks.windows(2).all(|w| w[0].leader() < w[1].leader())
}

/// An ordered partition of `[s]` into internally ordered blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedChainForest {
    blocks: Vec<Block>,
}

impl OrderedChainForest {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        check_partition(&blocks)?;
        Ok(OrderedChainForest { blocks })
    }

    pub(crate) fn from_blocks(blocks: Vec<Block>) -> Self {
        debug_assert!(check_partition(&blocks).is_ok());
        OrderedChainForest { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(Block::weight).sum()
    }

    pub fn is_naturally_ordered(&self) -> bool {
        naturally_ordered(&self.blocks)
    }

    /// `γ(ℱ, ℓ)` for `0 <= ℓ <= s - 1`.
    pub fn gamma(&self, ell: usize) -> Result<usize> {
        let s = self.ground_size();
        if ell >= s {
            return Err(Error::params(format!(
                "ell = {ell} outside 0..={}",
                s.saturating_sub(1)
            )));
        }
        Ok(gamma_of(&self.blocks, ell))
    }

    pub fn flattened(&self) -> Vec<Element> {
        self.blocks
            .iter()
            .flat_map(|b| b.elements().iter().copied())
            .collect()
    }

    pub fn leader_positions(&self) -> Vec<usize> {
        leader_positions(&self.blocks)
    }

    /// Key of the canonical enumeration order: flattened sequence, then block lengths.
    pub fn canonical_key(&self) -> (Vec<Element>, Vec<usize>) {
        (
            self.flattened(),
            self.blocks.iter().map(Block::len).collect(),
        )
    }
}

pub fn forest_weight(f: &OrderedChainForest) -> usize {
    f.weight()
}

pub fn gamma(f: &OrderedChainForest, ell: usize) -> Result<usize> {
    f.gamma(ell)
}

/// Blocks with nonnegative values. The blocks need not cover an initial segment,
/// which lets this type carry the non-distinguished part of a forest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuedForest {
    blocks: Vec<Block>,
    values: Vec<u32>,
}

impl ValuedForest {
    pub fn new(blocks: Vec<Block>, values: Vec<u32>) -> Result<Self> {
        if blocks.len() != values.len() {
            return Err(Error::InvalidForest(format!(
                "{} blocks but {} values",
                blocks.len(),
                values.len()
            )));
        }
        check_disjoint(&blocks)?;
        Ok(ValuedForest { blocks, values })
    }

    pub(crate) fn from_parts(blocks: Vec<Block>, values: Vec<u32>) -> Self {
        debug_assert_eq!(blocks.len(), values.len());
        ValuedForest { blocks, values }
    }

    pub fn unvalued(forest: OrderedChainForest) -> Self {
        let k = forest.num_blocks();
        ValuedForest {
            blocks: forest.blocks,
            values: vec![0; k],
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_parts(self) -> (Vec<Block>, Vec<u32>) {
        (self.blocks, self.values)
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn total_value(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// Sum of block weights plus sum of values.
    pub fn weight(&self) -> u64 {
        self.blocks.iter().map(|b| b.weight() as u64).sum::<u64>() + self.total_value()
    }

    pub fn elements(&self) -> BTreeSet<Element> {
        self.blocks
            .iter()
            .flat_map(|b| b.elements().iter().copied())
            .collect()
    }
}

/// A valued forest of `[s]` together with a distinguished subset `A ⊆ [s]`.
///
/// Construction only checks that the blocks partition `[s]` and that
/// `A ⊆ [s]`; the A-distinguished structure (non-A blocks leader-increasing,
/// then A blocks leader-decreasing, all of weight zero) is checked by
/// [`DistinguishedForest::is_a_distinguished`], because images of the
/// processing map keep the split but not the weight-zero property.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinguishedForest {
    blocks: Vec<Block>,
    values: Vec<u32>,
    distinguished: BTreeSet<Element>,
}

impl DistinguishedForest {
    pub fn new(
        blocks: Vec<Block>,
        values: Vec<u32>,
        distinguished: BTreeSet<Element>,
    ) -> Result<Self> {
        if blocks.len() != values.len() {
            return Err(Error::InvalidForest(format!(
                "{} blocks but {} values",
                blocks.len(),
                values.len()
            )));
        }
        let s = check_partition(&blocks)?;
        if let Some(&x) = distinguished.iter().find(|&&x| x == 0 || x as usize > s) {
            return Err(Error::InvalidForest(format!(
                "distinguished element {x} outside [1..{s}]"
            )));
        }
        Ok(DistinguishedForest {
            blocks,
            values,
            distinguished,
        })
    }

    pub(crate) fn from_parts(
        blocks: Vec<Block>,
        values: Vec<u32>,
        distinguished: BTreeSet<Element>,
    ) -> Self {
        debug_assert!(Self::new(blocks.clone(), values.clone(), distinguished.clone()).is_ok());
        DistinguishedForest {
            blocks,
            values,
            distinguished,
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn distinguished(&self) -> &BTreeSet<Element> {
        &self.distinguished
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn forest(&self) -> OrderedChainForest {
        OrderedChainForest::from_blocks(self.blocks.clone())
    }

    pub fn gamma(&self, ell: usize) -> usize {
        gamma_of(&self.blocks, ell)
    }

    pub fn leader_positions(&self) -> Vec<usize> {
        leader_positions(&self.blocks)
    }

    fn block_in_a(&self, b: &Block) -> bool {
        b.elements().iter().all(|x| self.distinguished.contains(x))
    }

    fn block_outside_a(&self, b: &Block) -> bool {
        b.elements().iter().all(|x| !self.distinguished.contains(x))
    }

    /// `|B_A(ℱ)|`: number of blocks made only of elements of `A`.
    pub fn distinguished_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| self.block_in_a(b)).count()
    }

    /// `(-1)^{|B_A(ℱ)|}`.
    pub fn sign(&self) -> i32 {
        if self.distinguished_block_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number `r` of leading non-A blocks when the blocks split as
    /// `B_1⋯B_r C_1⋯C_p` with every `B_i` disjoint from `A` and every `C_i`
    /// inside `A`; `None` when the forest does not split that way.
    pub fn split_index(&self) -> Option<usize> {
        let r = self
            .blocks
            .iter()
            .take_while(|b| self.block_outside_a(b))
            .count();
        self.blocks[r..]
            .iter()
            .all(|b| self.block_in_a(b))
            .then_some(r)
    }

    /// The valued blocks `B_1⋯B_r` (the non-distinguished part).
    pub fn non_distinguished_part(&self) -> Option<ValuedForest> {
        let r = self.split_index()?;
        Some(ValuedForest::from_parts(
            self.blocks[..r].to_vec(),
            self.values[..r].to_vec(),
        ))
    }

    /// Sum of values on the distinguished blocks.
    pub fn distinguished_value(&self) -> u64 {
        self.blocks
            .iter()
            .zip(&self.values)
            .filter(|(b, _)| self.block_in_a(b))
            .map(|(_, &v)| v as u64)
            .sum()
    }

    pub fn total_value(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// `|A| + Σ v(𝖡)`.
    pub fn budget(&self) -> u64 {
        self.distinguished.len() as u64 + self.total_value()
    }

    /// The full A-distinguished structure: split into non-A then A blocks,
    /// every block of weight zero, non-A blocks increasing by leader and A
    /// blocks decreasing by leader.
    pub fn is_a_distinguished(&self) -> bool {
        let Some(r) = self.split_index() else {
            return false;
        };
        self.blocks.iter().all(Block::leader_is_min)
            && naturally_ordered(&self.blocks[..r])
            && self.blocks[r..]
                .windows(2)
                .all(|w| w[0].leader() > w[1].leader())
    }

    /// Canonical enumeration key: flattened sequence, block lengths, values, `A`.
    pub fn canonical_key(&self) -> (Vec<Element>, Vec<usize>, Vec<u32>, Vec<Element>) {
        (
            self.blocks
                .iter()
                .flat_map(|b| b.elements().iter().copied())
                .collect(),
            self.blocks.iter().map(Block::len).collect(),
            self.values.clone(),
            self.distinguished.iter().copied().collect(),
        )
    }

    /// Replace the first `r` blocks and their values, keeping the rest and `A`.
    pub(crate) fn with_prefix(&self, prefix: ValuedForest) -> Self {
        let r = prefix.num_blocks();
        let (mut blocks, mut values) = prefix.into_parts();
        blocks.extend_from_slice(&self.blocks[r..]);
        values.extend_from_slice(&self.values[r..]);
        DistinguishedForest {
            blocks,
            values,
            distinguished: self.distinguished.clone(),
        }
    }

    pub(crate) fn with_distinguished(&self, distinguished: BTreeSet<Element>) -> Self {
        DistinguishedForest {
            blocks: self.blocks.clone(),
            values: self.values.clone(),
            distinguished,
        }
    }
}

/// Parameters of the forest families. `ell`, `m` and `i` are optional filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ForestQuery {
    pub q: usize,
    pub s: usize,
    pub k: usize,
    pub ell: Option<usize>,
    pub m: Option<usize>,
    pub i: Option<usize>,
}

impl ForestQuery {
    pub fn new(q: usize, s: usize, k: usize) -> Self {
        ForestQuery {
            q,
            s,
            k,
            ell: None,
            m: None,
            i: None,
        }
    }

    pub fn refined(q: usize, s: usize, k: usize, ell: usize, m: usize) -> Self {
        ForestQuery {
            q,
            s,
            k,
            ell: Some(ell),
            m: Some(m),
            i: None,
        }
    }

    pub fn with_subset_size(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.k > self.s {
            return Err(Error::params(format!(
                "need 1 <= k <= s, got k={} s={}",
                self.k, self.s
            )));
        }
        if self.ell.is_some() != self.m.is_some() {
            return Err(Error::params("ell and m must be given together"));
        }
        if let Some(ell) = self.ell {
            if ell >= self.s {
                return Err(Error::params(format!(
                    "need 0 <= ell <= s-1, got ell={ell} s={}",
                    self.s
                )));
            }
        }
        if let Some(m) = self.m {
            if m < 1 || m > self.k {
                return Err(Error::params(format!(
                    "need 1 <= m <= k, got m={m} k={}",
                    self.k
                )));
            }
        }
        Ok(())
    }
}
