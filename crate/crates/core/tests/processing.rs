mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use panehr::forests::{
    enumerate_dcf, enumerate_dcf1, enumerate_dcf_all, Block, DistinguishedForest, ForestQuery,
};
use panehr::processing::{
    check_invariants, image_check_in, image_check_upper, involution_f, phi, phi_inverse, reverse_step,
    run, sign_reversing_map, AlgorithmState, FCase,
};
use panehr::Error;

fn df(s: &str) -> DistinguishedForest {
    s.parse().unwrap()
}

/// Every distinguished forest on `[s]` with `|A| + Σ v <= q`, without any
/// structural filter.
fn all_candidates(q: usize, s: usize) -> Vec<DistinguishedForest> {
    let mut out = Vec::new();
    for f in common::ordered_forests(s) {
        let blocks: Vec<Block> = f.iter().map(|b| Block::new(b.clone()).unwrap()).collect();
        for a in common::subsets(s) {
            if a.len() > q {
                continue;
            }
            let a: BTreeSet<u32> = a.into_iter().collect();
            for total in 0..=(q - a.len()) as u32 {
                for values in common::value_vectors(total, blocks.len()) {
                    out.push(DistinguishedForest::new(blocks.clone(), values, a.clone()).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn worked_phi_images() {
    assert_eq!(
        phi(&df("[1,6,2]^2[3,7,5]^1[4]")).unwrap().to_string(),
        "[3,1,4][6,5,2][7]|A={}"
    );
    let d = df("[1,5,3]^2[2]^2[4,7]^1[8][6]^1|A={6,8}");
    let image = phi(&d).unwrap();
    assert_eq!(image.to_string(), "[3,1,5][2][4,7]^1[8][6]^1|A={6,8}");
    assert_eq!(phi_inverse(&image, 8).unwrap(), d);
}

#[test]
fn reverse_steps_undo_process_steps() {
    for s in 1..=6 {
        for q in 0..=4 {
            for d in enumerate_dcf_all(q, s) {
                let nd = d.non_distinguished_part().unwrap();
                let q1 = nd.total_value();
                let states = run(nd);
                check_invariants(&states).unwrap();
                for w in states.windows(2) {
                    assert_eq!(reverse_step(w[1].forest(), q1).unwrap(), w[0], "{d}");
                }
                assert!(matches!(
                    reverse_step(states[0].forest(), q1),
                    Err(Error::NothingToReverse)
                ));
            }
        }
    }
}

#[test]
fn states_reconstruct_from_forest_and_budget() {
    for d in enumerate_dcf_all(3, 5) {
        let nd = d.non_distinguished_part().unwrap();
        let q1 = nd.total_value();
        for state in run(nd) {
            assert_eq!(
                AlgorithmState::reconstruct(state.forest().clone(), q1).unwrap(),
                state
            );
        }
    }
}

#[test]
fn refined_image_test_is_exact() {
    for s in 1..=4 {
        for q in 0..=3 {
            let candidates = all_candidates(q, s);
            for k in 1..=s {
                for ell in 0..s {
                    for m in 1..=k {
                        let query = ForestQuery::refined(q, s, k, ell, m);
                        let images: HashSet<DistinguishedForest> = enumerate_dcf(&query)
                            .unwrap()
                            .iter()
                            .map(|d| phi(d).unwrap())
                            .collect();
                        let accepted: HashSet<DistinguishedForest> = candidates
                            .iter()
                            .filter(|c| image_check_in(c, q as u64, k, ell, m).is_ok())
                            .cloned()
                            .collect();
                        assert_eq!(images, accepted, "q={q} s={s} k={k} ell={ell} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn upper_image_test_is_exact() {
    for s in 2..=4 {
        for q in 1..=3 {
            let candidates = all_candidates(q, s);
            for k in 2..=s {
                for ell in 0..s {
                    for m in 2..=k {
                        let images: HashSet<DistinguishedForest> = enumerate_dcf1(q, s, k, ell, m)
                            .unwrap()
                            .iter()
                            .map(|d| phi(d).unwrap())
                            .collect();
                        let accepted: HashSet<DistinguishedForest> = candidates
                            .iter()
                            .filter(|c| image_check_upper(c, q as u64, k, ell, m).is_ok())
                            .cloned()
                            .collect();
                        assert_eq!(images, accepted, "q={q} s={s} k={k} ell={ell} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn f_moves_exactly_one_block() {
    for s in 1..=5 {
        for q in 0..=3 {
            for d in enumerate_dcf_all(q, s) {
                if d.sign() > 0 {
                    assert!(involution_f(&d, q as u64).is_err());
                    continue;
                }
                let fd = involution_f(&d, q as u64).unwrap();
                let diff =
                    fd.distinguished_block_count() as i64 - d.distinguished_block_count() as i64;
                assert_eq!(diff.abs(), 1, "{d} -> {fd}");
                assert_eq!(fd.sign(), 1);
            }
        }
    }
}

#[test]
fn f_cases_on_small_examples() {
    let (fd, case) = sign_reversing_map(&df("[1][2]|A={2}"), 1).unwrap();
    assert_eq!(case, FCase::Release);
    assert_eq!(fd.to_string(), "[1][2]^1|A={}");
    // A empty and j >= 1 falls in the absorbing case
    let (back, case) = sign_reversing_map(&df("[1]^1"), 1).unwrap();
    assert_eq!(case, FCase::Absorb);
    assert_eq!(back.to_string(), "[1]|A={1}");
    assert!(matches!(
        sign_reversing_map(&df("[1][2]"), 0),
        Err(Error::NotInDomain(_))
    ));
}

proptest! {
    #[test]
    fn phi_preserves_shape(s in 1usize..=6, q in 0usize..=4, pick in any::<prop::sample::Index>()) {
        let all = enumerate_dcf_all(q, s);
        let d = pick.get(&all);
        let image = phi(d).unwrap();
        let lens = |x: &DistinguishedForest| x.blocks().iter().map(Block::len).collect::<Vec<_>>();
        prop_assert_eq!(lens(&image), lens(d));
        prop_assert_eq!(image.distinguished(), d.distinguished());
        for ell in 0..s {
            prop_assert_eq!(image.gamma(ell), d.gamma(ell));
        }
        prop_assert_eq!(&phi_inverse(&image, q as u64).unwrap(), d);
    }
}
