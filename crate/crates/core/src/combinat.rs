//! Binomial coefficients and colexicographic ranking of fixed-size subsets.
//!
//! Colex order compares two `t`-subsets by their largest differing element.
//! The rank of `S = {s_0 < s_1 < ... < s_{t-1}}` is `sum_i C(s_i, i+1)`, which
//! does not depend on the size of the ground set.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(n, r)` for `n >= 0`; zero whenever `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> Result<BigUint> {
    if n < 0 {
        return Err(Error::invalid(format!("binomial with negative n = {n}")));
    }
    if r < 0 || r > n {
        return Ok(BigUint::zero());
    }
    Ok(choose(n as u64, r as u64))
}

/// `C(n, r)` over big integers, zero when `r > n`.
pub fn choose(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, r)` with the out-of-range convention extended to negative `n` and `r`.
pub(crate) fn choose_i(n: i64, r: i64) -> BigUint {
    if n < 0 || r < 0 || r > n {
        BigUint::zero()
    } else {
        choose(n as u64, r as u64)
    }
}

/// `C(n, r)` as a machine word, `None` on overflow.
pub fn choose_usize(n: usize, r: usize) -> Option<usize> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > usize::MAX as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// Position of a subset in colex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetRank(pub BigUint);

impl SubsetRank {
    pub fn to_usize(&self) -> Option<usize> {
        self.0.to_usize()
    }
}

impl From<usize> for SubsetRank {
    fn from(r: usize) -> Self {
        SubsetRank(BigUint::from(r))
    }
}

impl fmt::Display for SubsetRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_ascending(s: &[usize], t: usize) -> Result<()> {
    if s.len() != t {
        return Err(Error::invalid(format!(
            "subset {s:?} has size {}, expected {t}",
            s.len()
        )));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!("subset {s:?} is not strictly ascending")));
    }
    Ok(())
}

pub fn rank_colex(s: &[usize], t: usize) -> Result<SubsetRank> {
    check_ascending(s, t)?;
    let rank = s.iter().enumerate().map(|(i, &x)| choose(x as u64, i as u64 + 1)).sum();
    Ok(SubsetRank(rank))
}

/// Word-sized colex rank of an ascending subset. The caller guarantees the
/// subset is ascending and that the rank fits, which holds for every subset of
/// a ground set whose `C(v, t)` has already been checked against a cap.
pub(crate) fn colex_index(s: &[usize]) -> usize {
    s.iter()
        .enumerate()
        .map(|(i, &x)| choose_usize(x, i + 1).expect("colex rank overflow"))
        .sum()
}

/// Inverse of [`rank_colex`]: the greedy combinatorial-number-system decomposition.
pub fn unrank_colex(r: &SubsetRank, t: usize) -> Vec<usize> {
    let mut rest = r.0.clone();
    let mut out = vec![0; t];
    for i in (1..=t).rev() {
        // Largest c with C(c, i) <= rest; C(i-1, i) = 0 always qualifies.
        let mut lo = (i - 1) as u64;
        let mut hi = lo.max(1) * 2;
        while choose(hi, i as u64) <= rest {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if choose(mid, i as u64) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= choose(lo, i as u64);
        out[i - 1] = lo as usize;
    }
    out
}

pub(crate) fn unrank_index(r: usize, t: usize) -> Vec<usize> {
    unrank_colex(&SubsetRank::from(r), t)
}

/// All `t`-subsets of `{0..v-1}` in colex order.
pub fn iter_subsets(v: usize, t: usize) -> Subsets {
    Subsets {
        v,
        current: if t <= v { Some((0..t).collect()) } else { None },
    }
}

#[derive(Clone, Debug)]
pub struct Subsets {
    v: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let t = next.len();
        // Bump the lowest position that can move up without colliding.
        let pos = (0..t).find(|&i| {
            let limit = if i + 1 < t { next[i + 1] } else { self.v };
            next[i] + 1 < limit
        });
        if let Some(i) = pos {
            next[i] += 1;
            for (j, slot) in next.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Maps each item of `items` (ascending) through the index subsets of size `t`.
pub(crate) fn sub_subsets<'a>(items: &'a [usize], t: usize) -> impl Iterator<Item = Vec<usize>> + 'a {
    iter_subsets(items.len(), t).map(move |idx| idx.into_iter().map(|i| items[i]).collect())
}
