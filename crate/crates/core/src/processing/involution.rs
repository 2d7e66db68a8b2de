//! The sign-reversing map that pairs off the negative terms of the
//! alternating sum against positive ones.

use crate::error::{Error, Result};
use crate::forests::DistinguishedForest;

use super::{image_check, phi, phi_inverse};

/// Which way the map moves a block across the distinguished boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FCase {
    /// The first distinguished block `C_1` leaves `A`.
    Release,
    /// The last non-distinguished block `B'_r` of the image joins `A`.
    Absorb,
}

/// Apply φ, move one block across the distinguished boundary and pull back
/// with φ⁻¹. `C_1` leaves `A` when no block of the image is fully processed
/// (`j = 0`) or when its leader exceeds the leader of `B'_r`; otherwise
/// `B'_r` joins `A`. Defined on every element of `DCF(q, s)` except those
/// with `A = ∅` and `j = 0`.
pub fn sign_reversing_map(d: &DistinguishedForest, q: u64) -> Result<(DistinguishedForest, FCase)> {
    if !d.is_a_distinguished() || d.budget() != q {
        return Err(Error::NotInDomain(format!("{d} is not in DCF({q}, s)")));
    }
    let image = phi(d)?;
    let w = image_check(&image, q)?;
    let blocks = image.blocks();
    let c1 = blocks.get(w.r);
    let release = match c1 {
        Some(c1) => w.j == 0 || c1.leader() > blocks[w.r - 1].leader(),
        None => false,
    };
    let mut a = image.distinguished().clone();
    let case = if release {
        for x in c1.expect("release needs C_1").elements() {
            a.remove(x);
        }
        FCase::Release
    } else if w.j >= 1 {
        a.extend(blocks[w.r - 1].elements().iter().copied());
        FCase::Absorb
    } else {
        return Err(Error::NotInDomain(format!(
            "{d} has A empty and no fully processed block"
        )));
    };
    Ok((phi_inverse(&image.with_distinguished(a), q)?, case))
}

/// The map restricted to elements with an odd number of distinguished blocks.
pub fn involution_f(d: &DistinguishedForest, q: u64) -> Result<DistinguishedForest> {
    if d.sign() != -1 {
        return Err(Error::NotInDomain(format!(
            "{d} has an even number of distinguished blocks"
        )));
    }
    Ok(sign_reversing_map(d, q)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn df(s: &str) -> DistinguishedForest {
        s.parse().unwrap()
    }

    #[test]
    fn release_single_distinguished_block() {
        // φ fixes [1][2]|A={2}; C_1=[2] has no processed block before it
        let (out, case) = sign_reversing_map(&df("[1][2]|A={2}"), 1).unwrap();
        assert_eq!(case, FCase::Release);
        assert_eq!(out.distinguished().len(), 0);
        assert_eq!(out.sign(), 1);
        assert_eq!(out.distinguished_block_count(), 0);
    }

    #[test]
    fn empty_a_with_processed_block_absorbs() {
        let d = df("[1]^1");
        let (out, case) = sign_reversing_map(&d, 1).unwrap();
        assert_eq!(case, FCase::Absorb);
        assert_eq!(out.to_string(), "[1]|A={1}");
        assert_eq!(involution_f(&out, 1).unwrap(), d);
    }

    #[test]
    fn fixed_points_are_outside_domain() {
        assert!(matches!(
            sign_reversing_map(&df("[1][2]"), 0),
            Err(Error::NotInDomain(_))
        ));
        assert!(matches!(
            involution_f(&df("[1]^1"), 1),
            Err(Error::NotInDomain(_))
        ));
    }

    #[test]
    fn changes_distinguished_block_count_by_one() {
        let d = df("[1,5,3]^2[2]^2[4,7]^1[8][6]^1|A={6,8}");
        let (out, _) = sign_reversing_map(&d, 8).unwrap();
        let delta = out.distinguished_block_count() as i64 - d.distinguished_block_count() as i64;
        assert_eq!(delta.abs(), 1);
    }
}
