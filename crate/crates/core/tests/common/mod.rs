//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library's enumerators and counters.

#![allow(dead_code)]

use num_bigint::BigInt;

pub type Lists = Vec<Vec<u32>>;

pub fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (idx, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(idx);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every ordered sequence of nonempty lists partitioning `elems`: a word
/// on `elems` cut at any subset of its gaps.
pub fn ordered_forests_of(elems: &[u32]) -> Vec<Lists> {
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for word in permutations(elems) {
        let gaps = word.len() - 1;
        for mask in 0u32..(1 << gaps) {
            let mut blocks = vec![vec![word[0]]];
            for (g, &x) in word[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    blocks.push(vec![x]);
                } else {
                    blocks.last_mut().unwrap().push(x);
                }
            }
            out.push(blocks);
        }
    }
    out
}

pub fn ordered_forests(s: usize) -> Vec<Lists> {
    let elems: Vec<u32> = (1..=s as u32).collect();
    ordered_forests_of(&elems)
}

pub fn weight(block: &[u32]) -> usize {
    block.iter().filter(|&&x| x < block[0]).count()
}

pub fn natural(blocks: &[Vec<u32>]) -> bool {
    blocks.windows(2).all(|w| w[0][0] < w[1][0])
}

/// Trailers strictly after position `ell` (positions counted from 1).
pub fn gamma(blocks: &[Vec<u32>], ell: usize) -> usize {
    let mut pos = 0;
    let mut count = 0;
    for b in blocks {
        pos += b.len();
        if pos > ell {
            count += 1;
        }
    }
    count
}

/// 1-based position of the leader of the 1-based block `idx`.
pub fn leader_position(blocks: &[Vec<u32>], idx: usize) -> Option<usize> {
    if idx == 0 || idx > blocks.len() {
        return None;
    }
    Some(blocks[..idx - 1].iter().map(Vec::len).sum::<usize>() + 1)
}

pub fn cf_refined(q: usize, s: usize, k: usize, ell: usize, m: usize) -> u64 {
    ordered_forests(s)
        .iter()
        .filter(|f| {
            f.len() == k
                && natural(f)
                && f.iter().map(|b| weight(b)).sum::<usize>() == q
                && gamma(f, ell) == m
        })
        .count() as u64
}

pub fn cf(q: usize, s: usize, k: usize) -> u64 {
    ordered_forests(s)
        .iter()
        .filter(|f| f.len() == k && natural(f) && f.iter().map(|b| weight(b)).sum::<usize>() == q)
        .count() as u64
}

/// Upper family: `1` leads the last block, the others are naturally ordered,
/// weight is the others' weights plus the size of the last block.
pub fn cf1(q: usize, s: usize, k: usize, ell: usize, m: usize) -> u64 {
    if m < 2 {
        return 0;
    }
    ordered_forests(s)
        .iter()
        .filter(|f| {
            let Some((last, rest)) = f.split_last() else {
                return false;
            };
            f.len() == k
                && last[0] == 1
                && natural(rest)
                && rest.iter().map(|b| weight(b)).sum::<usize>() + last.len() == q
                && gamma(f, ell) == m
                && k + 2 > m
                && leader_position(f, k - m + 2) == Some(ell + 2)
        })
        .count() as u64
}

/// One distinguished forest in a comparable form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dcf {
    pub blocks: Lists,
    pub values: Vec<u32>,
    pub a: Vec<u32>,
}

impl Dcf {
    /// `(-1)^{number of blocks inside A}`.
    pub fn sign(&self) -> i64 {
        let inside = self
            .blocks
            .iter()
            .filter(|b| self.a.contains(&b[0]))
            .count();
        if inside % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Same text form the library prints.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (b, &v) in self.blocks.iter().zip(&self.values) {
            let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
            out.push_str(&format!("[{}]", inner.join(",")));
            if v > 0 {
                out.push_str(&format!("^{v}"));
            }
        }
        let inner: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        out.push_str(&format!("|A={{{}}}", inner.join(",")));
        out
    }
}

pub fn value_vectors(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in value_vectors(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn subsets(s: usize) -> Vec<Vec<u32>> {
    (0u32..(1 << s))
        .map(|mask| {
            (1..=s as u32)
                .filter(|x| mask >> (x - 1) & 1 == 1)
                .collect()
        })
        .collect()
}

/// Every `(ℱ, v, A)` on `[s]` with `|A| + Σ v = q`, all blocks of weight
/// zero and each inside or outside `A`, blocks outside `A` first and
/// increasing by leader, blocks inside `A` last and decreasing by leader.
pub fn dcf_all(q: usize, s: usize) -> Vec<Dcf> {
    let forests = ordered_forests(s);
    let mut out = Vec::new();
    for a in subsets(s) {
        if a.len() > q {
            continue;
        }
        for f in &forests {
            if f.iter().any(|b| weight(b) != 0) {
                continue;
            }
            let inside: Vec<bool> = f.iter().map(|b| a.contains(&b[0])).collect();
            if f.iter()
                .zip(&inside)
                .any(|(b, &i)| b.iter().any(|x| a.contains(x) != i))
            {
                continue;
            }
            let r = inside.iter().filter(|&&i| !i).count();
            if inside[..r].iter().any(|&i| i) {
                continue;
            }
            if !natural(&f[..r]) || !f[r..].windows(2).all(|w| w[0][0] > w[1][0]) {
                continue;
            }
            for values in value_vectors((q - a.len()) as u32, f.len()) {
                out.push(Dcf {
                    blocks: f.clone(),
                    values,
                    a: a.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// `Σ` over all `n`-subsets of `a..=b` of the product of their elements.
pub fn pi_by_subsets(a: i64, b: i64, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::from(0);
    }
    let range: Vec<i64> = if b < a { Vec::new() } else { (a..=b).collect() };
    let mut total = BigInt::from(0);
    for mask in 0u64..(1 << range.len()) {
        if mask.count_ones() as i64 != n {
            continue;
        }
        let mut prod = BigInt::from(1);
        for (i, &x) in range.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod *= x;
            }
        }
        total += prod;
    }
    total
}

/// `C(x, d)` by the falling factorial, for any integer `x`.
pub fn binomial_of_integer(x: i64, d: i64) -> num_rational::BigRational {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..d {
        num *= x - j;
        den *= j + 1;
    }
    num_rational::BigRational::new(num, den)
}

/// Calls `visit` on every point of `{0..=t}^n`.
pub fn each_point(n: usize, t: u64, mut visit: impl FnMut(&[u64])) {
    let mut x = vec![0u64; n];
    loop {
        visit(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < t {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Raw count of `x ∈ {0..=t}^n` with `Σx = rt` and `Σ_{i>s} x_i <= t`.
pub fn raw_panhandle(r: usize, s: usize, n: usize, t: u64) -> u64 {
    let mut c = 0;
    each_point(n, t, |x| {
        if x.iter().sum::<u64>() == r as u64 * t && x[s..].iter().sum::<u64>() <= t {
            c += 1;
        }
    });
    c
}

/// Raw count of `x ∈ {0..=t}^n` with `Σx = rt` and `Σ_{i∈H} x_i <= (r-1)t`
/// for every `H` (elements numbered from 1).
pub fn raw_paving(r: usize, n: usize, hyperplanes: &[Vec<u32>], t: u64) -> u64 {
    let mut c = 0;
    each_point(n, t, |x| {
        if x.iter().sum::<u64>() != r as u64 * t {
            return;
        }
        let ok = hyperplanes
            .iter()
            .all(|h| h.iter().map(|&i| x[i as usize - 1]).sum::<u64>() <= (r as u64 - 1) * t);
        if ok {
            c += 1;
        }
    });
    c
}
