//! The processing map φ on valued distinguished forests, its step-by-step
//! inverse, the description of its image and the sign-reversing map built
//! on top of it.
//!
//! φ only touches the non-distinguished blocks. Each iteration turns one unit
//! of block value into one unit of block weight by cyclically shifting the
//! elements of a suffix of the forest along the current order `L`.

mod image;
mod involution;
mod invariants;

use std::collections::BTreeSet;
use std::fmt;

pub use image::{budget_split, image_check, image_check_in, image_check_upper, ImageWitness};
pub use involution::{involution_f, sign_reversing_map, FCase};
pub use invariants::{check_conservation, check_invariants, check_state_invariants};

use crate::error::{Error, Result};
use crate::forests::{Block, DistinguishedForest, Element, ValuedForest};

/// One snapshot of the processing algorithm: the current non-distinguished
/// blocks with their values, the processed set `P` and the order `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgorithmState {
    forest: ValuedForest,
    processed: BTreeSet<Element>,
    order: Vec<Element>,
}

impl AlgorithmState {
    /// Starting state: nothing processed, `L` the natural order.
    pub fn initial(forest: ValuedForest) -> Self {
        let order = forest.elements().into_iter().collect();
        AlgorithmState {
            forest,
            processed: BTreeSet::new(),
            order,
        }
    }

    pub fn new(
        forest: ValuedForest,
        processed: BTreeSet<Element>,
        order: Vec<Element>,
    ) -> Result<Self> {
        let elems = forest.elements();
        if !processed.is_subset(&elems) {
            return Err(Error::InvalidForest(
                "processed set is not a subset of the forest".into(),
            ));
        }
        let as_set: BTreeSet<Element> = order.iter().copied().collect();
        if as_set != elems || order.len() != elems.len() {
            return Err(Error::InvalidForest(
                "order is not a permutation of the forest's elements".into(),
            ));
        }
        Ok(AlgorithmState {
            forest,
            processed,
            order,
        })
    }

    /// The state determined by the forest alone: `P` as prescribed for the
    /// reverse iteration with budget `q1`, and `L` the unprocessed elements in
    /// increasing order followed by the processed ones in increasing order.
    pub fn reconstruct(forest: ValuedForest, q1: u64) -> Result<Self> {
        let j = budget_split(&forest, q1).ok_or(Error::NoValidSplit { q1: q1 as i64 })?;
        let processed = processed_for_split(&forest, j);
        let order = natural_order_with(&forest, &processed);
        Ok(AlgorithmState {
            forest,
            processed,
            order,
        })
    }

    pub fn forest(&self) -> &ValuedForest {
        &self.forest
    }

    pub fn processed(&self) -> &BTreeSet<Element> {
        &self.processed
    }

    pub fn order(&self) -> &[Element] {
        &self.order
    }

    pub fn into_forest(self) -> ValuedForest {
        self.forest
    }

    /// Index of the block the next iteration works on, if any.
    pub fn next_block(&self) -> Option<usize> {
        self.forest
            .blocks()
            .iter()
            .zip(self.forest.values())
            .position(|(b, &v)| v > 0 && b.elements().iter().any(|x| !self.processed.contains(x)))
    }

    pub fn is_terminal(&self) -> bool {
        self.next_block().is_none()
    }

    /// Position of every element in `L`, indexed by element.
    fn positions(&self) -> Vec<usize> {
        positions_of(&self.order)
    }
}

impl fmt::Display for AlgorithmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | P={{", self.forest)?;
        for (idx, x) in self.processed.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("} | L=[")?;
        for (idx, x) in self.order.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

fn positions_of(order: &[Element]) -> Vec<usize> {
    let max = order.iter().copied().max().unwrap_or(0) as usize;
    let mut pos = vec![usize::MAX; max + 1];
    for (idx, &x) in order.iter().enumerate() {
        pos[x as usize] = idx;
    }
    pos
}

fn natural_order_with(forest: &ValuedForest, processed: &BTreeSet<Element>) -> Vec<Element> {
    let elems = forest.elements();
    let (done, todo): (Vec<Element>, Vec<Element>) =
        elems.into_iter().partition(|x| processed.contains(x));
    todo.into_iter().chain(done).collect()
}

/// Elements below their leader, plus everything in the last `j` blocks.
fn processed_for_split(forest: &ValuedForest, j: usize) -> BTreeSet<Element> {
    let blocks = forest.blocks();
    let r = blocks.len();
    let mut p = BTreeSet::new();
    for (idx, b) in blocks.iter().enumerate() {
        if idx >= r - j {
            p.extend(b.elements().iter().copied());
        } else {
            p.extend(b.elements().iter().copied().filter(|&x| x < b.leader()));
        }
    }
    p
}

/// Apply `x ↦ perm(x)` to every block from `start` on.
fn remap_tail(blocks: &[Block], start: usize, image: &[Element]) -> Vec<Block> {
    let mut out = blocks[..start].to_vec();
    out.extend(blocks[start..].iter().map(|b| b.map(|x| image[x as usize])));
    out
}

/// The tail elements of `blocks[start..]` sorted by their position in `L`.
fn sorted_tail(blocks: &[Block], start: usize, pos: &[usize]) -> Vec<Element> {
    let mut tail: Vec<Element> = blocks[start..]
        .iter()
        .flat_map(|b| b.elements().iter().copied())
        .collect();
    tail.sort_unstable_by_key(|&x| pos[x as usize]);
    tail
}

/// One iteration of the processing algorithm, or `None` once no block has
/// both an unprocessed element and a positive value.
pub fn process_step(state: &AlgorithmState) -> Option<AlgorithmState> {
    let bi = state.next_block()?;
    let blocks = state.forest.blocks();
    let a = blocks[bi].leader();
    let tail = sorted_tail(blocks, bi, &state.positions());
    let mut image: Vec<Element> = (0..=*tail.iter().max()?).collect();
    for (idx, &x) in tail.iter().enumerate() {
        image[x as usize] = tail[(idx + 1) % tail.len()];
    }
    let new_blocks = remap_tail(blocks, bi, &image);
    let mut values = state.forest.values().to_vec();
    values[bi] -= 1;
    let mut order: Vec<Element> = state.order.iter().copied().filter(|&x| x != a).collect();
    order.push(a);
    let mut processed = state.processed.clone();
    processed.insert(a);
    Some(AlgorithmState {
        forest: ValuedForest::from_parts(new_blocks, values),
        processed,
        order,
    })
}

/// Every snapshot from the initial state to termination.
pub fn run(forest: ValuedForest) -> Vec<AlgorithmState> {
    let mut states = vec![AlgorithmState::initial(forest)];
    while let Some(next) = process_step(states.last().expect("nonempty")) {
        states.push(next);
    }
    states
}

/// One trace line per snapshot, newline-terminated.
pub fn format_trace(states: &[AlgorithmState]) -> String {
    states.iter().map(|s| format!("{s}\n")).collect()
}

fn require_distinguished(d: &DistinguishedForest) -> Result<ValuedForest> {
    if !d.is_a_distinguished() {
        return Err(Error::InvalidForest(format!(
            "{d} is not a valued A-distinguished forest"
        )));
    }
    Ok(d.non_distinguished_part()
        .expect("A-distinguished forests split"))
}

/// φ together with the run on the non-distinguished part.
pub fn phi_with_trace(
    d: &DistinguishedForest,
) -> Result<(DistinguishedForest, Vec<AlgorithmState>)> {
    let states = run(require_distinguished(d)?);
    let out = d.with_prefix(states.last().expect("nonempty").forest.clone());
    Ok((out, states))
}

/// φ: run the processing algorithm on the non-distinguished part and keep
/// the distinguished blocks and `A` as they are.
pub fn phi(d: &DistinguishedForest) -> Result<DistinguishedForest> {
    let nd = require_distinguished(d)?;
    let mut state = AlgorithmState::initial(nd);
    while let Some(next) = process_step(&state) {
        state = next;
    }
    Ok(d.with_prefix(state.forest))
}

/// Undo one iteration on a snapshot of a run whose initial values summed to `q1`.
pub fn reverse_step(forest: &ValuedForest, q1: u64) -> Result<AlgorithmState> {
    let state = AlgorithmState::reconstruct(forest.clone(), q1)?;
    let p = *state
        .processed
        .iter()
        .next_back()
        .ok_or(Error::NothingToReverse)?;
    let blocks = forest.blocks();
    let v = blocks
        .iter()
        .position(|b| {
            let l = b.leader();
            let done = state.processed.contains(&l);
            (l > p && !done) || (l <= p && done)
        })
        .ok_or_else(|| Error::ReverseFailed(format!("no block qualifies for p={p} in {forest}")))?;
    let tail = sorted_tail(blocks, v, &state.positions());
    if tail.last() != Some(&p) {
        return Err(Error::ReverseFailed(format!(
            "{p} is not L-last in the tail of {forest}"
        )));
    }
    let mut image: Vec<Element> = (0..=p.max(*tail.iter().max().expect("nonempty"))).collect();
    for (idx, &x) in tail.iter().enumerate() {
        image[x as usize] = tail[(idx + tail.len() - 1) % tail.len()];
    }
    let new_blocks = remap_tail(blocks, v, &image);
    let mut values = forest.values().to_vec();
    values[v] += 1;
    let forest = ValuedForest::from_parts(new_blocks, values);
    let mut processed = state.processed;
    processed.remove(&p);
    let order = natural_order_with(&forest, &processed);
    Ok(AlgorithmState {
        forest,
        processed,
        order,
    })
}

/// Snapshots from `forest` back to the initial input of the run.
pub fn reverse_trace(forest: &ValuedForest, q1: u64) -> Result<Vec<AlgorithmState>> {
    let mut states = vec![AlgorithmState::reconstruct(forest.clone(), q1)?];
    loop {
        let last = states.last().expect("nonempty");
        if last.processed.is_empty() {
            return Ok(states);
        }
        let prev = reverse_step(&last.forest, q1)?;
        states.push(prev);
    }
}

/// Budget of the non-distinguished part: `q - |A| - Σ v(distinguished blocks)`.
pub(crate) fn non_distinguished_budget(d: &DistinguishedForest, q: u64) -> Option<u64> {
    q.checked_sub(d.distinguished().len() as u64)?
        .checked_sub(d.distinguished_value())
}

/// φ⁻¹ on `φ(DCF(q, s))`, by repeated reverse steps.
pub fn phi_inverse(d: &DistinguishedForest, q: u64) -> Result<DistinguishedForest> {
    image_check(d, q)?;
    phi_inverse_unchecked(d, q)
}

pub(crate) fn phi_inverse_unchecked(
    d: &DistinguishedForest,
    q: u64,
) -> Result<DistinguishedForest> {
    let nd = d.non_distinguished_part().ok_or(Error::NotInImage {
        condition: 1,
        reason: "blocks do not split into non-A then A blocks".into(),
    })?;
    let q1 = non_distinguished_budget(d, q).ok_or(Error::NoValidSplit { q1: -1 })?;
    let mut forest = nd;
    loop {
        match reverse_step(&forest, q1) {
            Ok(prev) => forest = prev.forest,
            Err(Error::NothingToReverse) => return Ok(d.with_prefix(forest)),
            Err(e) => return Err(e),
        }
    }
}
