//! Direct lattice-point counts in dilated matroid polytopes and exact
//! interpolation, independent of the closed forms.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ehrhart::PanhandleParams;
use crate::error::{Error, Result};
use crate::exactmath::Polynomial;

/// `|tP ∩ Z^n|` at one dilation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DilationCount {
    pub t: u64,
    pub count: BigInt,
}

/// A paving matroid polytope given by explicit stressed hyperplanes:
/// `tΔ_{r,n}` cut by `Σ_{i∈H} x_i <= (r-1)t` for every `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitPavingPolytope {
    r: usize,
    n: usize,
    hyperplanes: Vec<BTreeSet<u32>>,
}

impl ExplicitPavingPolytope {
    pub fn new(r: usize, n: usize, hyperplanes: Vec<BTreeSet<u32>>) -> Result<Self> {
        if r < 1 || n <= r {
            return Err(Error::params(format!("need 1 <= r < n, got r={r} n={n}")));
        }
        for h in &hyperplanes {
            if h.iter().any(|&x| x == 0 || x as usize > n) {
                return Err(Error::params(format!(
                    "hyperplane {h:?} is not a subset of [1..{n}]"
                )));
            }
            if h.len() < r || h.len() >= n {
                return Err(Error::params(format!(
                    "hyperplane {h:?} must have size in [{r}, {}]",
                    n - 1
                )));
            }
        }
        Ok(ExplicitPavingPolytope { r, n, hyperplanes })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplanes(&self) -> &[BTreeSet<u32>] {
        &self.hyperplanes
    }

    pub fn hyperplane_sizes(&self) -> Vec<usize> {
        self.hyperplanes.iter().map(BTreeSet::len).collect()
    }
}

/// `counts[u]` = number of points of `[0,t]^k` with coordinate sum `u`,
/// by repeated convolution with `1 + x + … + x^t`.
fn box_sums(k: usize, t: u64) -> Vec<BigInt> {
    let mut counts = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); counts.len() + t as usize];
        for (u, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for x in 0..=t as usize {
                next[u + x] += c;
            }
        }
        counts = next;
    }
    counts
}

fn at(v: &[BigInt], idx: u64) -> BigInt {
    v.get(idx as usize).cloned().unwrap_or_default()
}

/// Points of `[0,t]^n` with `Σ x = rt` and `Σ_{i>s} x_i <= t`.
pub fn count_points_panhandle(p: &PanhandleParams, t: u64) -> BigInt {
    let head = box_sums(p.s(), t);
    let tail = box_sums(p.n() - p.s(), t);
    let rt = p.r() as u64 * t;
    (0..=t.min(rt))
        .map(|u| at(&tail, u) * at(&head, rt - u))
        .sum()
}

/// Points of `tΔ_{r,n}`.
pub fn count_points_hypersimplex(r: usize, n: usize, t: u64) -> BigInt {
    at(&box_sums(n, t), r as u64 * t)
}

/// Points of the dilated paving polytope, by a coordinate-by-coordinate scan
/// over states (running total, running sum on each hyperplane).
pub fn count_points_paving(p: &ExplicitPavingPolytope, t: u64) -> BigInt {
    let rt = p.r as u64 * t;
    let cap = (p.r as u64 - 1) * t;
    let mut states: HashMap<(u64, Vec<u64>), BigInt> = HashMap::new();
    states.insert((0, vec![0; p.hyperplanes.len()]), BigInt::one());
    for coord in 1..=p.n as u32 {
        let member: Vec<bool> = p.hyperplanes.iter().map(|h| h.contains(&coord)).collect();
        let mut next: HashMap<(u64, Vec<u64>), BigInt> = HashMap::new();
        for ((total, sums), c) in &states {
            for x in 0..=t.min(rt - total) {
                let new_sums: Vec<u64> = sums
                    .iter()
                    .zip(&member)
                    .map(|(&h, &inside)| if inside { h + x } else { h })
                    .collect();
                if new_sums.iter().any(|&h| h > cap) {
                    continue;
                }
                *next.entry((total + x, new_sums)).or_default() += c;
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|((total, _), _)| *total == rt)
        .map(|(_, c)| c)
        .sum()
}

/// Unique polynomial of degree at most `degree` through the samples; samples
/// beyond the first `degree + 1` distinct `t` values must lie on it.
pub fn interpolate(counts: &[DilationCount], degree: usize) -> Result<Polynomial> {
    let mut by_t: Vec<&DilationCount> = counts.iter().collect();
    by_t.sort_by_key(|c| c.t);
    let mut points: Vec<(BigRational, BigRational)> = Vec::new();
    for c in by_t {
        let y = BigRational::from(c.count.clone());
        match points.last() {
            Some((t, prev)) if *t == BigRational::from(BigInt::from(c.t)) => {
                if *prev != y {
                    return Err(Error::NotPolynomial {
                        degree,
                        reason: format!("two different counts at t={}", c.t),
                    });
                }
            }
            _ => points.push((BigRational::from(BigInt::from(c.t)), y)),
        }
    }
    if points.len() < degree + 1 {
        return Err(Error::NotPolynomial {
            degree,
            reason: format!("{} distinct samples, need {}", points.len(), degree + 1),
        });
    }
    let (fit, extra) = points.split_at(degree + 1);
    let poly = newton(fit);
    for (t, y) in extra {
        if poly.eval(t) != *y {
            return Err(Error::NotPolynomial {
                degree,
                reason: format!("sample at t={t} is off the fit"),
            });
        }
    }
    Ok(poly)
}

/// Newton divided differences, expanded into the monomial basis.
fn newton(points: &[(BigRational, BigRational)]) -> Polynomial {
    let n = points.len();
    let mut coef: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for idx in (level..n).rev() {
            let num = &coef[idx] - &coef[idx - 1];
            let den = &points[idx].0 - &points[idx - level].0;
            coef[idx] = num / den;
        }
    }
    let mut out = Polynomial::zero();
    for idx in (0..n).rev() {
        let shift = Polynomial::from_coeffs(vec![-points[idx].0.clone(), BigRational::one()]);
        out = out * shift + Polynomial::constant(coef[idx].clone());
    }
    out
}

/// Counts at `t = 0..=degree+1`: enough for interpolation plus one guard.
pub fn sample(degree: usize, count: impl Fn(u64) -> BigInt) -> Vec<DilationCount> {
    (0..=degree as u64 + 1)
        .map(|t| DilationCount { t, count: count(t) })
        .collect()
}

/// Ehrhart polynomial of the panhandle polytope from direct counts.
pub fn interpolate_panhandle(p: &PanhandleParams) -> Result<Polynomial> {
    let degree = p.n() - 1;
    interpolate(&sample(degree, |t| count_points_panhandle(p, t)), degree)
}

/// Ehrhart polynomial of an explicit paving polytope from direct counts.
pub fn interpolate_paving(p: &ExplicitPavingPolytope) -> Result<Polynomial> {
    let degree = p.n - 1;
    interpolate(&sample(degree, |t| count_points_paving(p, t)), degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(r: usize, s: usize, n: usize) -> PanhandleParams {
        PanhandleParams::new(r, s, n).unwrap()
    }

    fn dc(t: u64, c: i64) -> DilationCount {
        DilationCount { t, count: c.into() }
    }

    #[test]
    fn panhandle_counts() {
        assert_eq!(count_points_panhandle(&pp(2, 3, 5), 0), BigInt::one());
        assert_eq!(count_points_panhandle(&pp(1, 1, 2), 2), BigInt::from(3));
        for p in PanhandleParams::all_up_to(7) {
            assert_eq!(count_points_panhandle(&p, 1), p.basis_count(), "{p:?}");
        }
    }

    #[test]
    fn full_panhandle_is_hypersimplex() {
        for n in 2..=6 {
            for r in 1..n {
                for t in 0..4 {
                    assert_eq!(
                        count_points_panhandle(&pp(r, n - 1, n), t),
                        count_points_hypersimplex(r, n, t)
                    );
                }
            }
        }
    }

    #[test]
    fn paving_counts() {
        let one_cut = ExplicitPavingPolytope::new(2, 4, vec![[1, 2].into()]).unwrap();
        assert_eq!(count_points_paving(&one_cut, 1), BigInt::from(5));
        let none = ExplicitPavingPolytope::new(2, 4, vec![]).unwrap();
        for t in 0..5 {
            assert_eq!(
                count_points_paving(&none, t),
                count_points_hypersimplex(2, 4, t)
            );
            assert!(count_points_paving(&one_cut, t) <= count_points_paving(&none, t));
        }
    }

    #[test]
    fn paving_validation() {
        assert!(ExplicitPavingPolytope::new(2, 4, vec![[1].into()]).is_err());
        assert!(ExplicitPavingPolytope::new(2, 4, vec![[1, 2, 3, 4].into()]).is_err());
        assert!(ExplicitPavingPolytope::new(2, 4, vec![[1, 5].into()]).is_err());
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(
            interpolate(&[dc(0, 1), dc(1, 2)], 1).unwrap(),
            Polynomial::from_ints([1, 1])
        );
        assert!(matches!(
            interpolate(&[dc(0, 1), dc(1, 2), dc(2, 4)], 1),
            Err(Error::NotPolynomial { degree: 1, .. })
        ));
        assert!(interpolate(&[dc(0, 1)], 1).is_err());
        assert!(interpolate(&[dc(0, 1), dc(0, 2), dc(1, 3)], 1).is_err());
        assert_eq!(
            interpolate_panhandle(&pp(1, 1, 2)).unwrap(),
            Polynomial::from_ints([1, 1])
        );
    }

    #[test]
    fn interpolation_of_unsorted_samples() {
        // 2t^2 - t at t = 3, 0, 1
        let p = interpolate(&[dc(3, 15), dc(0, 0), dc(1, 1)], 2).unwrap();
        assert_eq!(p, Polynomial::from_ints([0, -1, 2]));
    }
}
