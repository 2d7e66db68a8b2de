//! Per-iteration invariants of the processing algorithm, checked on traces.

use crate::error::{Error, Result};

use super::AlgorithmState;

fn violated(step: usize, detail: String) -> Error {
    Error::InvariantViolated { step, detail }
}

/// Invariants of a single snapshot:
/// blocks increase by leader in `L` and each leader is `L`-minimal in its
/// block; every element below its leader is processed; every processed
/// element lies below its leader or in a block of processed elements only.
pub fn check_state_invariants(state: &AlgorithmState, step: usize) -> Result<()> {
    let pos = state.positions();
    let p = state.processed();
    let blocks = state.forest().blocks();
    let at = |x: u32| pos[x as usize];
    if !blocks
        .windows(2)
        .all(|w| at(w[0].leader()) < at(w[1].leader()))
    {
        return Err(violated(
            step,
            format!("blocks not increasing by leader in L: {state}"),
        ));
    }
    for b in blocks {
        let l = b.leader();
        if b.elements().iter().any(|&x| at(x) < at(l)) {
            return Err(violated(
                step,
                format!("leader of {b} is not L-minimal: {state}"),
            ));
        }
        let all_done = b.elements().iter().all(|x| p.contains(x));
        for &x in b.elements() {
            let contributes = x < l;
            if contributes && !p.contains(&x) {
                return Err(violated(
                    step,
                    format!("{x} contributes weight to {b} but is unprocessed"),
                ));
            }
            if p.contains(&x) && !contributes && !all_done {
                return Err(violated(
                    step,
                    format!(
                        "processed {x} neither contributes weight nor sits in a processed block"
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// `|P| + Σ v` is the same at every snapshot.
pub fn check_conservation(states: &[AlgorithmState]) -> Result<()> {
    let amount = |s: &AlgorithmState| s.processed().len() as u64 + s.forest().total_value();
    let Some(first) = states.first() else {
        return Ok(());
    };
    let expected = amount(first);
    match states.iter().position(|s| amount(s) != expected) {
        Some(step) => Err(violated(
            step,
            format!("|P| + sum of values changed from {expected}"),
        )),
        None => Ok(()),
    }
}

/// All per-iteration invariants along a run, plus the processed elements
/// being added in increasing order.
pub fn check_invariants(states: &[AlgorithmState]) -> Result<()> {
    for (step, s) in states.iter().enumerate() {
        check_state_invariants(s, step)?;
    }
    for (step, w) in states.windows(2).enumerate() {
        let added: Vec<_> = w[1]
            .processed()
            .difference(w[0].processed())
            .copied()
            .collect();
        let [a] = added[..] else {
            return Err(violated(
                step + 1,
                format!("expected one newly processed element, got {added:?}"),
            ));
        };
        if w[0]
            .processed()
            .iter()
            .next_back()
            .is_some_and(|&prev| prev >= a)
        {
            return Err(violated(
                step + 1,
                format!("{a} processed after a larger element"),
            ));
        }
    }
    check_conservation(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processing::run;

    #[test]
    fn worked_runs_satisfy_invariants() {
        for src in ["[1,6,2]^2[3,7,5]^1[4]", "[1,5,3]^2[2]^2[4,7]^1"] {
            check_invariants(&run(src.parse().unwrap())).unwrap();
        }
    }

    #[test]
    fn broken_state_is_reported() {
        let state =
            AlgorithmState::new("[2,1]".parse().unwrap(), Default::default(), vec![1, 2]).unwrap();
        assert!(check_state_invariants(&state, 0).is_err());
    }
}
