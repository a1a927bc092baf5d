//! The coverage system over the edges of a graph, its exact solution, and the
//! weighted clique certificates built from it.
//!
//! For edges `T, U` of `G`, `Mhat(T, U)` counts the k-subsets that contain
//! `T ∪ U` and induce a clique in `G`. Taking every such family of cliques
//! through `U` with weight `x(U)` covers `T` exactly `(Mhat x)(T)` times, so a
//! nonnegative solution of `Mhat x = 1` is a fractional clique decomposition.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinat::{choose, choose_usize};
use crate::error::{Error, Result};
use crate::exactla::{solve_int, IntMatrix};
use crate::hypergraph::TGraph;
use crate::rational::{parse_fraction, to_fraction_string};
use crate::EDGE_CAP;

/// Upper limit on labelled placements enumerated by [`trivial_complete_decomposition`].
pub const LABELING_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMatrix {
    pub k: usize,
    /// Edges of the graph in colex order; row and column `i` belong to `edges[i]`.
    pub edges: Vec<Vec<usize>>,
    pub entries: IntMatrix,
}

impl CoverageMatrix {
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.entries.get(i, j)
    }
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn build_mhat(g: &TGraph, k: usize) -> Result<CoverageMatrix> {
    if k < g.t() {
        return Err(Error::invalid(format!("clique size k = {k} is below t = {}", g.t())));
    }
    if g.edge_count() > EDGE_CAP {
        return Err(Error::cap("edge count", g.edge_count(), EDGE_CAP));
    }
    let edges = g.edges();
    let n = edges.len();
    let upper: Vec<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let w = union_sorted(&edges[i], &edges[j]);
                    if w.len() > k || !g.is_clique(&w).unwrap_or(false) {
                        return Ok(BigInt::zero());
                    }
                    g.count_cliques_containing(&w, k).map(BigInt::from)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let entries = IntMatrix::from_fn(n, |i, j| {
        if j >= i {
            upper[i][j - i].clone()
        } else {
            upper[j][i - j].clone()
        }
    });
    Ok(CoverageMatrix { k, edges, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// Every coordinate of `x` is strictly positive.
    Positive,
    /// `x >= 0` with at least one zero; still expands to a valid certificate.
    PositiveWithZeros,
    HasNegative,
    Singular,
    /// Some edge lies in no k-clique.
    NoCover,
}

impl SolveStatus {
    pub fn is_success(self) -> bool {
        matches!(self, SolveStatus::Positive | SolveStatus::PositiveWithZeros)
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Positive => "positive",
            SolveStatus::PositiveWithZeros => "positive_with_zeros",
            SolveStatus::HasNegative => "has_negative",
            SolveStatus::Singular => "singular",
            SolveStatus::NoCover => "no_cover",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Solution of `Mhat x = 1`, indexed like `edges`, when the system was solved.
    pub x: Option<Vec<BigRational>>,
    /// Negative, zero or uncovered edge, depending on `status`.
    pub witness: Option<Vec<usize>>,
    pub edges: Vec<Vec<usize>>,
}

impl SolveOutcome {
    /// SHA-256 over the coordinates of `x` written as `p/q\n` in edge order.
    pub fn x_hash(&self) -> Option<String> {
        let x = self.x.as_ref()?;
        let mut h = Sha256::new();
        for xi in x {
            h.update(to_fraction_string(xi).as_bytes());
            h.update(b"\n");
        }
        Some(hex::encode(h.finalize()))
    }
}

pub fn solve_decomposition(g: &TGraph, k: usize) -> Result<SolveOutcome> {
    let mhat = build_mhat(g, k)?;
    solve_coverage(&mhat)
}

/// Solves `Mhat x = 1` for an already built coverage matrix.
pub fn solve_coverage(mhat: &CoverageMatrix) -> Result<SolveOutcome> {
    let n = mhat.n();
    let edges = mhat.edges.clone();
    if let Some(i) = (0..n).find(|&i| mhat.entry(i, i).is_zero()) {
        return Ok(SolveOutcome {
            status: SolveStatus::NoCover,
            x: None,
            witness: Some(edges[i].clone()),
            edges,
        });
    }
    let ones = vec![BigRational::one(); n];
    let x = match solve_int(&mhat.entries, &ones) {
        Ok(x) => x,
        Err(Error::Singular) => {
            return Ok(SolveOutcome {
                status: SolveStatus::Singular,
                x: None,
                witness: None,
                edges,
            })
        }
        Err(e) => return Err(e),
    };
    let (status, witness) = if let Some(i) = x.iter().position(Signed::is_negative) {
        (SolveStatus::HasNegative, Some(edges[i].clone()))
    } else if let Some(i) = x.iter().position(Zero::is_zero) {
        (SolveStatus::PositiveWithZeros, Some(edges[i].clone()))
    } else {
        (SolveStatus::Positive, None)
    };
    Ok(SolveOutcome {
        status,
        x: Some(x),
        witness,
        edges,
    })
}

/// One weighted copy inside a certificate. `edges` is `None` for a clique on
/// `kset`; otherwise it lists the copy's edges explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertItem {
    pub kset: Vec<usize>,
    pub edges: Option<Vec<Vec<usize>>>,
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub t: usize,
    pub k: usize,
    pub v: usize,
    pub items: Vec<CertItem>,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    t: usize,
    k: usize,
    v: usize,
    items: Vec<RawItem>,
}

#[derive(Serialize, Deserialize)]
struct RawItem {
    kset: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<Vec<usize>>>,
    weight: String,
}

impl DecompositionCertificate {
    pub fn total_weight(&self) -> BigRational {
        self.items.iter().map(|i| &i.weight).sum()
    }

    pub fn to_json(&self) -> String {
        let raw = RawCertificate {
            t: self.t,
            k: self.k,
            v: self.v,
            items: self
                .items
                .iter()
                .map(|i| RawItem {
                    kset: i.kset.clone(),
                    edges: i.edges.clone(),
                    weight: to_fraction_string(&i.weight),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCertificate = serde_json::from_str(text)?;
        let items = raw
            .items
            .into_iter()
            .map(|i| {
                Ok(CertItem {
                    kset: i.kset,
                    edges: i.edges,
                    weight: parse_fraction(&i.weight)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(DecompositionCertificate {
            t: raw.t,
            k: raw.k,
            v: raw.v,
            items,
        })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

fn colex_key(s: &[usize]) -> Vec<usize> {
    s.iter().rev().copied().collect()
}

/// Gives each k-clique `K` the weight `sum of x(U)` over edges `U` inside `K`;
/// cliques with zero weight are omitted.
pub fn expand_certificate(g: &TGraph, k: usize, x: &[BigRational]) -> Result<DecompositionCertificate> {
    if x.len() != g.edge_count() {
        return Err(Error::invalid(format!(
            "solution has {} entries for {} edges",
            x.len(),
            g.edge_count()
        )));
    }
    if x.iter().any(Signed::is_negative) {
        return Err(Error::invalid("cannot expand a solution with negative entries"));
    }
    let mut weights: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for (u, xu) in g.edges().iter().zip(x) {
        if xu.is_zero() {
            continue;
        }
        g.for_each_clique_containing(u, k, |c| {
            *weights.entry(colex_key(c)).or_insert_with(BigRational::zero) += xu;
        })?;
    }
    let items = weights
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(key, weight)| CertItem {
            kset: key.into_iter().rev().collect(),
            edges: None,
            weight,
        })
        .collect();
    Ok(DecompositionCertificate {
        t: g.t(),
        k,
        v: g.v(),
        items,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    ParameterMismatch(String),
    MalformedItem {
        kset: Vec<usize>,
        reason: String,
    },
    NonPositiveWeight {
        kset: Vec<usize>,
    },
    NotAClique {
        kset: Vec<usize>,
        missing: Vec<usize>,
    },
    EdgeNotInGraph {
        kset: Vec<usize>,
        edge: Vec<usize>,
    },
    Miscovered {
        tset: Vec<usize>,
        coverage: BigRational,
        is_edge: bool,
    },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::ParameterMismatch(s) => write!(f, "parameter mismatch: {s}"),
            VerifyFailure::MalformedItem { kset, reason } => write!(f, "malformed item {kset:?}: {reason}"),
            VerifyFailure::NonPositiveWeight { kset } => write!(f, "item {kset:?} has a non-positive weight"),
            VerifyFailure::NotAClique { kset, missing } => {
                write!(f, "{kset:?} is not a clique: {missing:?} is not an edge")
            }
            VerifyFailure::EdgeNotInGraph { kset, edge } => {
                write!(f, "copy on {kset:?} uses {edge:?}, which is not an edge")
            }
            VerifyFailure::Miscovered {
                tset,
                coverage,
                is_edge,
            } => write!(
                f,
                "{} {tset:?} is covered {} times, expected {}",
                if *is_edge { "edge" } else { "non-edge" },
                to_fraction_string(coverage),
                if *is_edge { 1 } else { 0 }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(VerifyFailure),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Plain recursive enumeration of the `r`-subsets of `items`; kept separate
/// from the colex machinery so the verifier shares no code with the solver.
fn subsets_of(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, r, 0, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Checks a certificate against `g` from scratch: each copy lies in `g`,
/// weights are positive, every edge is covered exactly once and every
/// non-edge not at all.
pub fn verify_certificate(g: &TGraph, cert: &DecompositionCertificate) -> Verification {
    use Verification::Invalid;
    let t = g.t();
    if cert.t != t || cert.v != g.v() {
        return Invalid(VerifyFailure::ParameterMismatch(format!(
            "certificate is for t={}, v={} but the graph has t={}, v={}",
            cert.t,
            cert.v,
            t,
            g.v()
        )));
    }
    let mut coverage: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for item in &cert.items {
        let kset = &item.kset;
        let malformed = |reason: &str| {
            Invalid(VerifyFailure::MalformedItem {
                kset: kset.clone(),
                reason: reason.to_string(),
            })
        };
        if kset.len() != cert.k {
            return malformed("wrong number of vertices");
        }
        if kset.windows(2).any(|w| w[0] >= w[1]) {
            return malformed("vertices not strictly ascending");
        }
        if kset.iter().any(|&x| x >= g.v()) {
            return malformed("vertex out of range");
        }
        if !item.weight.is_positive() {
            return Invalid(VerifyFailure::NonPositiveWeight { kset: kset.clone() });
        }
        let copy_edges = match &item.edges {
            None => subsets_of(kset, t),
            Some(list) => list.clone(),
        };
        let mut seen = std::collections::BTreeSet::new();
        for e in &copy_edges {
            if e.len() != t || e.windows(2).any(|w| w[0] >= w[1]) || e.iter().any(|x| !kset.contains(x)) {
                return malformed("listed edge is not an ascending t-subset of the copy");
            }
            if !seen.insert(e.clone()) {
                return malformed("listed edge repeated");
            }
            if !g.has_edge(e) {
                return Invalid(match item.edges {
                    None => VerifyFailure::NotAClique {
                        kset: kset.clone(),
                        missing: e.clone(),
                    },
                    Some(_) => VerifyFailure::EdgeNotInGraph {
                        kset: kset.clone(),
                        edge: e.clone(),
                    },
                });
            }
            *coverage.entry(e.clone()).or_insert_with(BigRational::zero) += &item.weight;
        }
    }
    let one = BigRational::one();
    for e in g.edges() {
        let c = coverage.remove(&e).unwrap_or_else(BigRational::zero);
        if c != one {
            return Invalid(VerifyFailure::Miscovered {
                tset: e,
                coverage: c,
                is_edge: true,
            });
        }
    }
    if let Some((tset, c)) = coverage.into_iter().find(|(_, c)| !c.is_zero()) {
        return Invalid(VerifyFailure::Miscovered {
            tset,
            coverage: c,
            is_edge: false,
        });
    }
    Verification::Valid
}

/// Decomposes `K_v^t` into copies of `h` (on `p` vertices with `q` edges) by
/// giving every labelled placement the weight `C(v,t) / (q p! C(v,p))` and
/// merging placements with the same image.
pub fn trivial_complete_decomposition(p: usize, q: usize, h: &TGraph, v: usize) -> Result<DecompositionCertificate> {
    if q == 0 {
        return Err(Error::invalid("the pattern graph has no edges"));
    }
    if h.v() != p || h.edge_count() != q {
        return Err(Error::invalid(format!(
            "pattern graph has {} vertices and {} edges, expected {p} and {q}",
            h.v(),
            h.edge_count()
        )));
    }
    if p > v {
        return Err(Error::invalid(format!("pattern has {p} vertices but v = {v}")));
    }
    let placements = (v - p + 1..=v).try_fold(1usize, |acc, x| acc.checked_mul(x));
    match placements {
        Some(c) if c <= LABELING_CAP => {}
        _ => {
            return Err(Error::cap(
                "labelled placements",
                (v - p + 1..=v).map(|x| x as u64).product::<u64>(),
                LABELING_CAP,
            ))
        }
    }
    let t = h.t();
    let p_fact: BigInt = (1..=p as u64).map(BigInt::from).product();
    let weight = BigRational::new(
        BigInt::from(choose(v as u64, t as u64)),
        BigInt::from(q) * p_fact * BigInt::from(choose(v as u64, p as u64)),
    );
    let pattern = h.edges();
    let is_clique = choose_usize(p, t) == Some(q);

    let mut groups: BTreeMap<(Vec<usize>, Vec<Vec<usize>>), BigRational> = BTreeMap::new();
    let mut image = Vec::with_capacity(p);
    let mut used = vec![false; v];
    place(&mut image, &mut used, p, &mut |img| {
        let mut vertices = img.to_vec();
        vertices.sort_unstable();
        let mut edges: Vec<Vec<usize>> = pattern
            .iter()
            .map(|e| {
                let mut m: Vec<usize> = e.iter().map(|&x| img[x]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        edges.sort_by_key(|e| colex_key(e));
        *groups
            .entry((colex_key(&vertices), edges))
            .or_insert_with(BigRational::zero) += &weight;
    });
    let items = groups
        .into_iter()
        .map(|((key, edges), weight)| CertItem {
            kset: key.into_iter().rev().collect(),
            edges: (!is_clique).then_some(edges),
            weight,
        })
        .collect();
    Ok(DecompositionCertificate { t, k: p, v, items })
}

fn place(image: &mut Vec<usize>, used: &mut [bool], p: usize, f: &mut impl FnMut(&[usize])) {
    if image.len() == p {
        f(image);
        return;
    }
    for x in 0..used.len() {
        if used[x] {
            continue;
        }
        used[x] = true;
        image.push(x);
        place(image, used, p, f);
        image.pop();
        used[x] = false;
    }
}

/// `1 / (2 C(k,t)^2)`, the density deficit below which positivity is guaranteed asymptotically.
pub fn epsilon_threshold(t: usize, k: usize) -> Result<BigRational> {
    if !(2 <= t && t <= k) {
        return Err(Error::invalid(format!("need k >= t >= 2, got t={t}, k={k}")));
    }
    let c = BigInt::from(choose(k as u64, t as u64));
    Ok(BigRational::new(BigInt::one(), BigInt::from(2) * &c * &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::JohnsonParams;
    use crate::rational::{int, ratio};

    fn k5_minus_34() -> TGraph {
        TGraph::complete(5, 2).unwrap().without_edges([[3, 4]]).unwrap()
    }

    #[test]
    fn mhat_of_complete_graph_is_m() {
        for (t, k, v) in [(2, 3, 7), (2, 4, 8), (3, 4, 7), (3, 5, 8)] {
            let g = TGraph::complete(v, t).unwrap();
            let mhat = build_mhat(&g, k).unwrap();
            let m = JohnsonParams::new(t, k, v).unwrap().build_m().unwrap();
            assert_eq!(mhat.entries, m);
        }
    }

    #[test]
    fn mhat_examples() {
        let c5 = TGraph::cycle(5).unwrap();
        assert!(build_mhat(&c5, 3).unwrap().entries.is_zero());

        let g = k5_minus_34();
        let mhat = build_mhat(&g, 3).unwrap();
        assert!(mhat.entries.is_symmetric());
        assert_eq!(mhat.edges[0], vec![0, 1]);
        // Triangles through {0,1} listed by hand: 012, 013, 014.
        assert_eq!(mhat.entry(0, 0), &BigInt::from(3));
        assert!(build_mhat(&g, 1).is_err());
    }

    #[test]
    fn complete_graph_solution_is_uniform() {
        let g = TGraph::complete(9, 2).unwrap();
        let out = solve_decomposition(&g, 3).unwrap();
        assert_eq!(out.status, SolveStatus::Positive);
        assert!(out.x.as_ref().unwrap().iter().all(|x| *x == ratio(1, 21)));

        let cert = expand_certificate(&g, 3, out.x.as_ref().unwrap()).unwrap();
        assert_eq!(cert.items.len(), 84);
        assert!(cert.items.iter().all(|i| i.weight == ratio(1, 7)));
        assert_eq!(verify_certificate(&g, &cert), Verification::Valid);

        let g3 = TGraph::complete(8, 3).unwrap();
        let out = solve_decomposition(&g3, 5).unwrap();
        let th0 = JohnsonParams::new(3, 5, 8).unwrap().theta(0).unwrap();
        assert!(out
            .x
            .unwrap()
            .iter()
            .all(|x| *x == BigRational::new(BigInt::one(), th0.clone())));
    }

    #[test]
    fn cycle_has_no_cover() {
        let out = solve_decomposition(&TGraph::cycle(5).unwrap(), 3).unwrap();
        assert_eq!(out.status, SolveStatus::NoCover);
        let w = out.witness.unwrap();
        assert!(TGraph::cycle(5).unwrap().has_edge(&w));
        assert!(out.x.is_none());
    }

    #[test]
    fn k_equals_t_is_identity() {
        let g = TGraph::gen_dense_random(7, 2, &ratio(1, 3), 5).unwrap();
        let mhat = build_mhat(&g, 2).unwrap();
        assert_eq!(mhat.entries, IntMatrix::identity(g.edge_count()));
        let out = solve_coverage(&mhat).unwrap();
        assert!(out.x.as_ref().unwrap().iter().all(|x| *x == int(1)));
        let cert = expand_certificate(&g, 2, out.x.as_ref().unwrap()).unwrap();
        assert_eq!(cert.items.len(), g.edge_count());
        assert!(verify_certificate(&g, &cert).is_valid());
    }

    #[test]
    fn singular_outcomes_are_reported() {
        // Two triangles sharing edge 01: that edge needs twice the weight the
        // others allow, so the system is inconsistent.
        let g = TGraph::from_edges(4, 2, [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3]]).unwrap();
        let out = solve_decomposition(&g, 3).unwrap();
        assert_eq!(out.status, SolveStatus::Singular);
        assert!(out.x.is_none());
        // Two triangles sharing a vertex: each block of Mhat is all ones.
        let bowtie = TGraph::from_edges(5, 2, [[0, 1], [0, 2], [1, 2], [2, 3], [2, 4], [3, 4]]).unwrap();
        assert_eq!(solve_decomposition(&bowtie, 3).unwrap().status, SolveStatus::Singular);
    }

    #[test]
    fn sparse_random_graphs_exercise_every_status() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..60 {
            let g = TGraph::gen_dense_random(9, 2, &ratio(1, 4), seed).unwrap();
            let out = solve_decomposition(&g, 3).unwrap();
            seen.insert(out.status.to_string());
            match out.status {
                SolveStatus::HasNegative => {
                    let x = out.x.as_ref().unwrap();
                    let w = out.edges.iter().position(|e| Some(e) == out.witness.as_ref()).unwrap();
                    assert!(x[w].is_negative());
                    assert!(x[..w].iter().all(|v| !v.is_negative()));
                }
                SolveStatus::Positive | SolveStatus::PositiveWithZeros => {
                    let cert = expand_certificate(&g, 3, out.x.as_ref().unwrap()).unwrap();
                    assert!(verify_certificate(&g, &cert).is_valid());
                }
                _ => {}
            }
        }
        assert!(seen.contains("has_negative"), "{seen:?}");
        assert!(seen.contains("positive"), "{seen:?}");
        assert!(seen.contains("singular"), "{seen:?}");
    }

    #[test]
    fn expansion_matches_mhat_times_x() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let g = TGraph::gen_dense_random(8, 2, &ratio(2, 7), 1).unwrap();
        let mhat = build_mhat(&g, 3).unwrap();
        for _ in 0..5 {
            let x: Vec<BigRational> = (0..g.edge_count())
                .map(|_| ratio(rng.gen_range(0..5), rng.gen_range(1..4)))
                .collect();
            let cert = expand_certificate(&g, 3, &x).unwrap();
            // Independent recount: sum of weights over listed triangles through each edge.
            let mhx = mhat.entries.mul_vec(&x);
            for (i, e) in g.edges().iter().enumerate() {
                let cov: BigRational = cert
                    .items
                    .iter()
                    .filter(|it| e.iter().all(|v| it.kset.contains(v)))
                    .map(|it| it.weight.clone())
                    .sum();
                assert_eq!(cov, mhx[i]);
            }
        }
        let zero = vec![int(0); g.edge_count()];
        assert!(expand_certificate(&g, 3, &zero).unwrap().items.is_empty());
        let mut neg = zero.clone();
        neg[0] = int(-1);
        assert!(expand_certificate(&g, 3, &neg).is_err());
        assert!(expand_certificate(&g, 3, &zero[1..]).is_err());
    }

    #[test]
    fn verifier_rejects_tampering() {
        let g = TGraph::complete(9, 2).unwrap();
        let x = solve_decomposition(&g, 3).unwrap().x.unwrap();
        let cert = expand_certificate(&g, 3, &x).unwrap();

        let mut bumped = cert.clone();
        bumped.items[0].weight += ratio(1, 1000);
        match verify_certificate(&g, &bumped) {
            Verification::Invalid(VerifyFailure::Miscovered {
                tset, is_edge: true, ..
            }) => {
                assert!(tset.iter().all(|v| bumped.items[0].kset.contains(v)));
            }
            other => panic!("unexpected {other:?}"),
        }

        let g2 = g.without_edges([[0, 1]]).unwrap();
        match verify_certificate(&g2, &cert) {
            Verification::Invalid(VerifyFailure::NotAClique { missing, .. }) => assert_eq!(missing, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }

        let mut zero = cert.clone();
        zero.items[3].weight = int(0);
        assert!(matches!(
            verify_certificate(&g, &zero),
            Verification::Invalid(VerifyFailure::NonPositiveWeight { .. })
        ));

        let mut wrong_size = cert.clone();
        wrong_size.items[0].kset.push(8);
        assert!(matches!(
            verify_certificate(&g, &wrong_size),
            Verification::Invalid(VerifyFailure::MalformedItem { .. })
        ));

        let other = TGraph::complete(8, 2).unwrap();
        assert!(matches!(
            verify_certificate(&other, &cert),
            Verification::Invalid(VerifyFailure::ParameterMismatch(_))
        ));

        let mut dropped = cert.clone();
        dropped.items.pop();
        assert!(!verify_certificate(&g, &dropped).is_valid());
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = TGraph::complete(6, 2).unwrap();
        let x = solve_decomposition(&g, 4).unwrap().x.unwrap();
        let cert = expand_certificate(&g, 4, &x).unwrap();
        let text = cert.to_json();
        assert!(text.contains("\"weight\": \"1/6\""));
        assert_eq!(DecompositionCertificate::from_json(&text).unwrap(), cert);
        assert!(DecompositionCertificate::from_json("{\"t\":2}").is_err());
        let bad = text.replace("1/6", "0.16");
        assert!(DecompositionCertificate::from_json(&bad).is_err());
    }

    #[test]
    fn trivial_decompositions() {
        let k3 = TGraph::complete(3, 2).unwrap();
        let cert = trivial_complete_decomposition(3, 3, &k3, 5).unwrap();
        assert_eq!(cert.items.len(), 10);
        assert!(cert.items.iter().all(|i| i.weight == ratio(1, 3) && i.edges.is_none()));
        assert!(verify_certificate(&TGraph::complete(5, 2).unwrap(), &cert).is_valid());

        let edge = TGraph::complete(2, 2).unwrap();
        let cert = trivial_complete_decomposition(2, 1, &edge, 6).unwrap();
        assert_eq!(cert.items.len(), 15);
        assert!(cert.items.iter().all(|i| i.weight == int(1)));

        let path = TGraph::from_edges(3, 2, [[0, 1], [1, 2]]).unwrap();
        let cert = trivial_complete_decomposition(3, 2, &path, 5).unwrap();
        assert_eq!(cert.items.len(), 30);
        assert!(verify_certificate(&TGraph::complete(5, 2).unwrap(), &cert).is_valid());

        let tri3 = TGraph::from_edges(4, 3, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let cert = trivial_complete_decomposition(4, 2, &tri3, 6).unwrap();
        assert!(verify_certificate(&TGraph::complete(6, 3).unwrap(), &cert).is_valid());

        assert!(trivial_complete_decomposition(3, 0, &TGraph::empty(3, 2).unwrap(), 5).is_err());
        assert!(trivial_complete_decomposition(3, 3, &k3, 2).is_err());
        assert!(trivial_complete_decomposition(3, 2, &k3, 5).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(epsilon_threshold(2, 3).unwrap(), ratio(1, 18));
        assert_eq!(epsilon_threshold(2, 4).unwrap(), ratio(1, 72));
        assert_eq!(epsilon_threshold(3, 4).unwrap(), ratio(1, 32));
        assert!(epsilon_threshold(3, 2).is_err());
    }

    #[test]
    fn no_cover_iff_zero_diagonal() {
        for seed in 0..10 {
            let g = TGraph::gen_dense_random(9, 2, &ratio(1, 2), seed).unwrap();
            let mhat = build_mhat(&g, 4).unwrap();
            let zero_diag = (0..mhat.n()).any(|i| mhat.entry(i, i).is_zero());
            let out = solve_coverage(&mhat).unwrap();
            assert_eq!(out.status == SolveStatus::NoCover, zero_diag);
        }
    }
}
