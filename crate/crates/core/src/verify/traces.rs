//! Hand-worked runs of the processing algorithm, compared line by line.

use crate::forests::{DistinguishedForest, ValuedForest};
use crate::processing::{format_trace, phi_with_trace, reverse_trace};

const FORWARD_EMPTY_A: &str = "\
[1,6,2]^2[3,7,5]^1[4] | P={} | L=[1,2,3,4,5,6,7]
[2,7,3]^1[4,1,6]^1[5] | P={1} | L=[2,3,4,5,6,7,1]
[3,1,4][5,2,7]^1[6] | P={1,2} | L=[3,4,5,6,7,1,2]
[3,1,4][6,5,2][7] | P={1,2,5} | L=[3,4,6,7,1,2,5]
";

const FORWARD_WITH_A: &str = "\
[1,5,3]^2[2]^2[4,7]^1 | P={} | L=[1,2,3,4,5,7]
[2,7,4]^1[3]^2[5,1]^1 | P={1} | L=[2,3,4,5,7,1]
[3,1,5][4]^2[7,2]^1 | P={1,2} | L=[3,4,5,7,1,2]
[3,1,5][7]^1[2,4]^1 | P={1,2,4} | L=[3,5,7,1,2,4]
[3,1,5][2][4,7]^1 | P={1,2,4,7} | L=[3,5,1,2,4,7]
";

const REVERSE: &str = "\
[3,1,4][5,2,6][7][8]^1 | P={1,2,7,8} | L=[3,4,5,6,1,2,7,8]
[3,1,4][5,2,6][8]^1[7]^1 | P={1,2,7} | L=[3,4,5,6,8,1,2,7]
[3,1,4][5,2,6][7]^2[8]^1 | P={1,2} | L=[3,4,5,6,7,8,1,2]
[2,8,3]^1[4,1,5][6]^2[7]^1 | P={1} | L=[2,3,4,5,6,7,8,1]
[1,7,2]^2[3,8,4][5]^2[6]^1 | P={} | L=[1,2,3,4,5,6,7,8]
";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheck {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl TraceCheck {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

fn forward(input: &str) -> String {
    let d: DistinguishedForest = input.parse().expect("valid input");
    match phi_with_trace(&d) {
        Ok((_, states)) => format_trace(&states),
        Err(e) => format!("error: {e}\n"),
    }
}

fn backward(input: &str, q1: u64) -> String {
    let f: ValuedForest = input.parse().expect("valid input");
    match reverse_trace(&f, q1) {
        Ok(states) => format_trace(&states),
        Err(e) => format!("error: {e}\n"),
    }
}

/// The three worked runs: two forward runs and one reversal.
pub fn worked_traces() -> Vec<TraceCheck> {
    vec![
        TraceCheck {
            name: "forward-empty-a",
            expected: FORWARD_EMPTY_A.into(),
            actual: forward("[1,6,2]^2[3,7,5]^1[4]"),
        },
        TraceCheck {
            name: "forward-a-6-8",
            expected: FORWARD_WITH_A.into(),
            actual: forward("[1,5,3]^2[2]^2[4,7]^1[8][6]^1|A={6,8}"),
        },
        TraceCheck {
            name: "reverse-budget-5",
            expected: REVERSE.into(),
            actual: backward("[3,1,4][5,2,6][7][8]^1", 5),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_traces_match() {
        for t in worked_traces() {
            assert_eq!(t.actual, t.expected, "{}", t.name);
        }
    }
}
