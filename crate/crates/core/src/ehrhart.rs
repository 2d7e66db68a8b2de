//! Ehrhart polynomials of panhandle, uniform, product and paving matroid
//! polytopes from their closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{binom_poly, binomial, factorial, poly_leq, Polynomial};
use crate::forests::upper_term;

/// `1 <= r <= s <= n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PanhandleParams {
    r: usize,
    s: usize,
    n: usize,
}

impl PanhandleParams {
    pub fn new(r: usize, s: usize, n: usize) -> Result<Self> {
        if r < 1 || r > s || s + 1 > n {
            return Err(Error::params(format!(
                "need 1 <= r <= s <= n-1, got r={r} s={s} n={n}"
            )));
        }
        Ok(PanhandleParams { r, s, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Every valid triple with `n <= max_n`, ordered by `(n, s, r)`.
    pub fn all_up_to(max_n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 2..=max_n {
            for s in 1..n {
                for r in 1..=s {
                    out.push(PanhandleParams { r, s, n });
                }
            }
        }
        out
    }

    /// Number of bases: r-subsets of `[n]` meeting `[s]` in at least `r-1` elements.
    pub fn basis_count(&self) -> BigInt {
        let (r, s, n) = (self.r as i64, self.s as i64, self.n as i64);
        binomial(s, r) + BigInt::from(n - s) * binomial(s, r - 1)
    }
}

/// Rank, ground-set size and the sizes of the relaxed stressed hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PavingProfile {
    r: usize,
    n: usize,
    hyperplane_sizes: Vec<usize>,
}

impl PavingProfile {
    pub fn new(r: usize, n: usize, mut hyperplane_sizes: Vec<usize>) -> Result<Self> {
        if r < 1 || n <= r {
            return Err(Error::params(format!("need 1 <= r < n, got r={r} n={n}")));
        }
        if let Some(&bad) = hyperplane_sizes.iter().find(|&&h| h < r || h >= n) {
            return Err(Error::params(format!(
                "hyperplane size {bad} outside [{r}, {}]",
                n - 1
            )));
        }
        hyperplane_sizes.sort_unstable();
        Ok(PavingProfile {
            r,
            n,
            hyperplane_sizes,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted ascending.
    pub fn hyperplane_sizes(&self) -> &[usize] {
        &self.hyperplane_sizes
    }
}

/// `(n-s)/(n-1)!` as an exact rational.
fn prefactor(p: &PanhandleParams) -> BigRational {
    BigRational::new(BigInt::from(p.n - p.s), factorial(p.n as u64 - 1))
}

fn coeff_sum(p: &PanhandleParams, shift: i64) -> Polynomial {
    let (r, s, n) = (p.r as i64, p.s as i64, p.n as i64);
    let mut total = Polynomial::zero();
    for i in 0..=(s - r) {
        let outer = Polynomial::from_int(if i % 2 == 0 {
            binomial(s, i)
        } else {
            -binomial(s, i)
        });
        let mut inner = Polynomial::zero();
        for ell in 0..s {
            let c = factorial((n - 2 - ell) as u64) * factorial(ell as u64);
            let f1 =
                binom_poly(s - r - i + 1, s - 1 - ell - i + shift, s - 1 - ell).expect("d >= 0");
            let f2 = binom_poly(s - r - i, s - 1 - i, ell).expect("d >= 0");
            inner = inner + Polynomial::from_int(c) * f1 * f2;
        }
        total = total + outer * inner;
    }
    total
}

/// `φ_{r,s,n}(t) = Σ_{i=0}^{s-r} (-1)^i C(s,i) Σ_{ℓ=0}^{s-1} (n-2-ℓ)! ℓ!
///   C(s-1-ℓ-i + t(s-r-i+1), s-1-ℓ) C(s-1-i + t(s-r-i), ℓ)`.
pub fn phi_poly(p: &PanhandleParams) -> Polynomial {
    coeff_sum(p, 0)
}

/// Same double sum as [`phi_poly`] with the first binomial's top lowered by one.
pub fn psi_poly(p: &PanhandleParams) -> Polynomial {
    coeff_sum(p, -1)
}

/// `(n-s)/(n-1)! · C(t+n-s, n-s) · φ_{r,s,n}(t)`.
pub fn ehr_panhandle(p: &PanhandleParams) -> Polynomial {
    let k = (p.n - p.s) as i64;
    binom_poly(1, k, k).expect("d >= 0").scale(&prefactor(p)) * phi_poly(p)
}

/// Lattice points of `tΔ_{r,n}`: points of `[0,t]^n` on `Σ x = rt`, by
/// inclusion-exclusion on the coordinates exceeding `t`. `r = 0` and `r = n`
/// give a point.
pub fn ehr_hypersimplex(r: usize, n: usize) -> Result<Polynomial> {
    if r > n || n == 0 {
        return Err(Error::params(format!(
            "need 0 <= r <= n, n >= 1, got r={r} n={n}"
        )));
    }
    if r == 0 || r == n {
        return Ok(Polynomial::one());
    }
    let (r, n) = (r as i64, n as i64);
    Ok((0..r)
        .map(|j| {
            let c = if j % 2 == 0 {
                binomial(n, j)
            } else {
                -binomial(n, j)
            };
            Polynomial::from_int(c) * binom_poly(r - j, n - 1 - j, n - 1).expect("d >= 0")
        })
        .sum())
}

/// `ehr(Δ_{r-1,s}) · ehr(Δ_{1,n-s})`; for `r = 1` the first factor is a point.
pub fn ehr_product_simplex(p: &PanhandleParams) -> Polynomial {
    let first = ehr_hypersimplex(p.r - 1, p.s).expect("r-1 <= s");
    let second = ehr_hypersimplex(1, p.n - p.s).expect("1 <= n-s");
    first * second
}

/// `(n-s)/(n-1)! · C(t-1+n-s, n-s) · ψ_{r,s,n}(t)`: the increase of the Ehrhart
/// polynomial when a stressed hyperplane of size `s` is relaxed.
pub fn relaxation_correction(p: &PanhandleParams) -> Polynomial {
    let k = (p.n - p.s) as i64;
    binom_poly(1, k - 1, k)
        .expect("d >= 0")
        .scale(&prefactor(p))
        * psi_poly(p)
}

/// The uniform polynomial minus one relaxation correction per hyperplane.
pub fn ehr_paving(p: &PavingProfile) -> Result<Polynomial> {
    let mut out = ehr_hypersimplex(p.r, p.n)?;
    for &s in &p.hyperplane_sizes {
        out = out - relaxation_correction(&PanhandleParams::new(p.r, s, p.n)?);
    }
    Ok(out)
}

/// `Σ_{i=0}^{q} (-1)^i C(s,i) Π^{s-ℓ-m}_{-i,s-ℓ-2-i} Π^{ℓ-(k-m)}_{s-ℓ-i,s-1-i} C(k-1+q-i, k-1)`.
pub fn upper_expression(q: usize, s: usize, k: usize, ell: usize, m: usize) -> BigInt {
    (0..=q).fold(BigInt::zero(), |acc, i| {
        acc + upper_term(q, s, k, ell, m, i)
    })
}

/// `C(t-1+n-s, n-s) · ψ_{r,s,n}(t)` has no negative coefficient.
pub fn check_relaxation_positivity(p: &PanhandleParams) -> bool {
    let k = (p.n - p.s) as i64;
    let poly = binom_poly(1, k - 1, k).expect("d >= 0") * psi_poly(p);
    poly_leq(&Polynomial::zero(), &poly)
}
