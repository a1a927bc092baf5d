//! Perturbation quantities for a concrete graph: the exact infinity norm of
//! `Mhat - M|_G`, its leading-order estimate, and the codegree counts that
//! feed that estimate.
//!
//! The `o(.)` corrections in the asymptotic estimates are not computable at a
//! finite `v`; everything labelled "leading order" drops them and is reported
//! for comparison only.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::choose_i;
use crate::decomp::{build_mhat, epsilon_threshold, CoverageMatrix};
use crate::error::{Error, Result};
use crate::hypergraph::TGraph;
use crate::johnson::JohnsonParams;
use crate::rational::to_fraction_string;

fn binom(n: usize, r: usize) -> BigInt {
    BigInt::from(choose_i(n as i64, r as i64))
}

fn difference_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| !b.contains(x)).count()
}

/// Max row sum of `M|_G - Mhat` for an already built coverage matrix.
/// Fails if some entry of `Mhat` exceeds the matching entry of `M`.
pub fn delta_norm_of(mhat: &CoverageMatrix, params: &JohnsonParams) -> Result<BigInt> {
    let xi: Vec<BigInt> = (0..=params.t).map(|i| params.xi(i)).collect::<Result<_>>()?;
    let mut best = BigInt::zero();
    for (i, row_edge) in mhat.edges.iter().enumerate() {
        let mut sum = BigInt::zero();
        for (j, col_edge) in mhat.edges.iter().enumerate() {
            let full = &xi[difference_size(row_edge, col_edge)];
            let restricted = mhat.entry(i, j);
            if restricted > full {
                return Err(Error::Internal(format!(
                    "coverage entry ({row_edge:?}, {col_edge:?}) = {restricted} exceeds {full}"
                )));
            }
            sum += full - restricted;
        }
        if sum > best {
            best = sum;
        }
    }
    Ok(best)
}

pub fn delta_norm(g: &TGraph, k: usize) -> Result<BigInt> {
    let params = JohnsonParams::new(g.t(), k, g.v())?;
    delta_norm_of(&build_mhat(g, k)?, &params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub t: usize,
    pub k: usize,
    pub v: usize,
    pub eps: BigRational,
    pub delta_norm: BigInt,
    /// `C(v-t, k-t) C(k,t)^2 eps`, leading order.
    pub leading_bound: BigRational,
    pub theta_t: BigInt,
    pub threshold: BigRational,
    /// `delta_norm < theta_t / 2`.
    pub norm_below_half_theta_t: bool,
    /// `eps < threshold`.
    pub eps_below_threshold: bool,
}

pub fn bound_report(g: &TGraph, k: usize) -> Result<BoundReport> {
    let (t, v) = (g.t(), g.v());
    let params = JohnsonParams::new(t, k, v)?;
    let mhat = build_mhat(g, k)?;
    let delta_norm = delta_norm_of(&mhat, &params)?;
    let eps = g.density_epsilon().epsilon;
    let ckt = binom(k, t);
    let leading_bound = BigRational::from_integer(binom(v - t, k - t) * &ckt * &ckt) * &eps;
    let theta_t = params.theta(t)?;
    let threshold = epsilon_threshold(t, k)?;
    let norm_below_half_theta_t = BigInt::from(2) * &delta_norm < theta_t;
    let eps_below_threshold = eps < threshold;
    Ok(BoundReport {
        t,
        k,
        v,
        eps,
        delta_norm,
        leading_bound,
        theta_t,
        threshold,
        norm_below_half_theta_t,
        eps_below_threshold,
    })
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t": self.t,
            "k": self.k,
            "v": self.v,
            "eps": to_fraction_string(&self.eps),
            "delta_norm": self.delta_norm.to_string(),
            "leading_bound": to_fraction_string(&self.leading_bound),
            "theta_t": self.theta_t.to_string(),
            "threshold": to_fraction_string(&self.threshold),
            "flags": {
                "norm_below_half_theta_t": self.norm_below_half_theta_t,
                "eps_below_threshold": self.eps_below_threshold,
            },
        })
    }

    pub fn to_table(&self) -> String {
        let half = BigRational::new(self.theta_t.clone(), BigInt::from(2));
        let rows = [
            ("t k v", format!("{} {} {}", self.t, self.k, self.v)),
            ("eps", to_fraction_string(&self.eps)),
            ("||dM||_inf", self.delta_norm.to_string()),
            ("leading-order bound", to_fraction_string(&self.leading_bound)),
            ("theta_t", self.theta_t.to_string()),
            ("theta_t/2", to_fraction_string(&half)),
            ("eps threshold", to_fraction_string(&self.threshold)),
            ("||dM||_inf < theta_t/2", self.norm_below_half_theta_t.to_string()),
            ("eps < threshold", self.eps_below_threshold.to_string()),
        ];
        let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<w$}  {v}");
        }
        out
    }
}

/// Exact counts around one edge `T` for a fixed `i`, next to their
/// leading-order lower estimates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeNeighbourhoodCounts {
    /// Edges `U` with `|T \ U| = i` and `T ∪ U` a clique.
    pub count_a: usize,
    /// Fewest k-cliques through `T ∪ U` over those `U`; `None` if there are none.
    pub min_b: Option<BigInt>,
    /// `C(t,i) C(v,i) [1 - C(t+i,i) eps]`.
    pub estimate_a: BigRational,
    /// `C(v-t-i, k-t-i) [1 - (C(k,t) - C(t+i,i)) eps]`.
    pub estimate_b: BigRational,
}

pub fn edge_neighbourhood_counts(g: &TGraph, edge: &[usize], i: usize, k: usize) -> Result<EdgeNeighbourhoodCounts> {
    let (t, v) = (g.t(), g.v());
    if i > t {
        return Err(Error::invalid(format!("i = {i} exceeds t = {t}")));
    }
    if !g.has_edge(edge) {
        return Err(Error::invalid(format!("{edge:?} is not an edge")));
    }
    let mut count_a = 0;
    let mut min_b: Option<BigInt> = None;
    for u in g.edges() {
        if difference_size(edge, &u) != i {
            continue;
        }
        let mut w: Vec<usize> = edge.iter().chain(&u).copied().collect();
        w.sort_unstable();
        w.dedup();
        if !g.is_clique(&w)? {
            continue;
        }
        count_a += 1;
        let b = if w.len() > k {
            BigInt::zero()
        } else {
            BigInt::from(g.count_cliques_containing(&w, k)?)
        };
        if min_b.as_ref().is_none_or(|m| b < *m) {
            min_b = Some(b);
        }
    }
    let eps = g.density_epsilon().epsilon;
    let one = BigRational::one();
    let cti = BigRational::from_integer(binom(t + i, i));
    let estimate_a = BigRational::from_integer(binom(t, i) * binom(v, i)) * (&one - &cti * &eps);
    let b_lead = if k >= t + i {
        BigRational::from_integer(binom(v - t - i, k - t - i))
    } else {
        BigRational::zero()
    };
    let estimate_b = b_lead * (&one - (BigRational::from_integer(binom(k, t)) - cti) * &eps);
    Ok(EdgeNeighbourhoodCounts {
        count_a,
        min_b,
        estimate_a,
        estimate_b,
    })
}
