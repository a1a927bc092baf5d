//! Simple t-uniform hypergraphs with edges keyed by colex rank.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinat::{choose, choose_usize, colex_index, sub_subsets, unrank_index};
use crate::error::{Error, Result};

/// Largest `C(v, t)` for which an edge membership table is allocated.
pub const UNIVERSE_CAP: usize = 1 << 26;

/// A simple t-graph on vertices `0..v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TGraph {
    t: usize,
    v: usize,
    present: Vec<bool>,
    edge_count: usize,
}

/// Minimum codegree of the (t-1)-subsets and the matching density deficit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityMeasure {
    pub delta: usize,
    pub epsilon: BigRational,
}

impl TGraph {
    pub fn empty(v: usize, t: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::invalid("uniformity t must be at least 1"));
        }
        if v < t {
            return Err(Error::invalid(format!("v = {v} is smaller than t = {t}")));
        }
        let n = match choose_usize(v, t) {
            Some(n) if n <= UNIVERSE_CAP => n,
            _ => {
                return Err(Error::cap(
                    "t-subset universe",
                    choose(v as u64, t as u64),
                    UNIVERSE_CAP,
                ))
            }
        };
        Ok(TGraph {
            t,
            v,
            present: vec![false; n],
            edge_count: 0,
        })
    }

    pub fn complete(v: usize, t: usize) -> Result<Self> {
        let mut g = Self::empty(v, t)?;
        g.present.iter_mut().for_each(|p| *p = true);
        g.edge_count = g.present.len();
        Ok(g)
    }

    /// Builds a graph from explicit edges. Duplicate edges are rejected.
    pub fn from_edges<I, E>(v: usize, t: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut g = Self::empty(v, t)?;
        for e in edges {
            let e = e.as_ref();
            let r = g.checked_index(e)?;
            if g.present[r] {
                return Err(Error::invalid(format!("duplicate edge {e:?}")));
            }
            g.present[r] = true;
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// `K_v` (t = 2) with the pairs `{2i, 2i+1}` removed; `v` must be even.
    pub fn complete_minus_perfect_matching(v: usize) -> Result<Self> {
        if !v.is_multiple_of(2) {
            return Err(Error::invalid("a perfect matching needs an even vertex count"));
        }
        let matching: Vec<[usize; 2]> = (0..v / 2).map(|i| [2 * i, 2 * i + 1]).collect();
        Self::complete(v, 2)?.without_edges(matching)
    }

    /// The cycle `0-1-...-(v-1)-0` as a 2-graph.
    pub fn cycle(v: usize) -> Result<Self> {
        if v < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        let edges = (0..v).map(|i| {
            let (a, b) = (i, (i + 1) % v);
            [a.min(b), a.max(b)]
        });
        Self::from_edges(v, 2, edges)
    }

    pub fn with_edges<I, E>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut g = self.clone();
        for e in edges {
            let r = g.checked_index(e.as_ref())?;
            if !g.present[r] {
                g.present[r] = true;
                g.edge_count += 1;
            }
        }
        Ok(g)
    }

    pub fn without_edges<I, E>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut g = self.clone();
        for e in edges {
            let r = g.checked_index(e.as_ref())?;
            if g.present[r] {
                g.present[r] = false;
                g.edge_count -= 1;
            }
        }
        Ok(g)
    }

    fn checked_index(&self, e: &[usize]) -> Result<usize> {
        if e.len() != self.t {
            return Err(Error::invalid(format!("edge {e:?} does not have {} vertices", self.t)));
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("edge {e:?} is not strictly ascending")));
        }
        if e.last().is_some_and(|&x| x >= self.v) {
            return Err(Error::invalid(format!(
                "edge {e:?} uses a vertex outside 0..{}",
                self.v
            )));
        }
        Ok(colex_index(e))
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.present.len()
    }

    /// Membership test for an ascending t-subset; anything malformed is absent.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        self.checked_index(e).is_ok_and(|r| self.present[r])
    }

    pub fn has_edge_rank(&self, r: usize) -> bool {
        self.present.get(r).copied().unwrap_or(false)
    }

    /// Colex ranks of the edges, ascending.
    pub fn edge_ranks(&self) -> Vec<usize> {
        self.present
            .iter()
            .enumerate()
            .filter_map(|(r, &p)| p.then_some(r))
            .collect()
    }

    /// Edges as ascending vertex lists, in colex order.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.edge_ranks().into_iter().map(|r| unrank_index(r, self.t)).collect()
    }

    /// Number of edges containing the ascending vertex set `s`.
    pub fn degree(&self, s: &[usize]) -> Result<usize> {
        if s.len() > self.t {
            return Err(Error::invalid(format!(
                "degree of a {}-set in a {}-graph",
                s.len(),
                self.t
            )));
        }
        if s.windows(2).any(|w| w[0] >= w[1]) || s.last().is_some_and(|&x| x >= self.v) {
            return Err(Error::invalid(format!(
                "{s:?} is not an ascending subset of the vertices"
            )));
        }
        let rest: Vec<usize> = (0..self.v).filter(|x| !s.contains(x)).collect();
        Ok(sub_subsets(&rest, self.t - s.len())
            .filter(|extra| {
                let mut e: Vec<usize> = s.iter().chain(extra).copied().collect();
                e.sort_unstable();
                self.present[colex_index(&e)]
            })
            .count())
    }

    /// Minimum over all (t-1)-subsets of the number of edges through them.
    pub fn min_codegree(&self) -> usize {
        self.codegrees().into_iter().min().unwrap_or(0)
    }

    /// Codegree of every (t-1)-subset, indexed by colex rank.
    fn codegrees(&self) -> Vec<usize> {
        let len = choose_usize(self.v, self.t - 1).unwrap_or(0);
        let mut deg = vec![0usize; len];
        for (r, &p) in self.present.iter().enumerate() {
            if !p {
                continue;
            }
            let e = unrank_index(r, self.t);
            for skip in 0..self.t {
                let face: Vec<usize> = e
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &x)| (i != skip).then_some(x))
                    .collect();
                deg[colex_index(&face)] += 1;
            }
        }
        deg
    }

    /// Smallest `eps` for which the graph is `(1 - eps)`-dense.
    pub fn density_epsilon(&self) -> DensityMeasure {
        let delta = self.min_codegree();
        let span = BigInt::from(self.v - self.t + 1);
        let epsilon = BigRational::one() - BigRational::new(BigInt::from(delta), span);
        DensityMeasure { delta, epsilon }
    }

    /// Whether every t-subset of `k` is an edge.
    pub fn is_clique(&self, k: &[usize]) -> Result<bool> {
        if k.len() < self.t {
            return Err(Error::invalid(format!(
                "clique test on {} vertices in a {}-graph",
                k.len(),
                self.t
            )));
        }
        if k.windows(2).any(|w| w[0] >= w[1]) || k.last().is_some_and(|&x| x >= self.v) {
            return Err(Error::invalid(format!(
                "{k:?} is not an ascending subset of the vertices"
            )));
        }
        Ok(sub_subsets(k, self.t).all(|e| self.present[colex_index(&e)]))
    }

    /// Whether `x` can join the clique `base` (ascending, `x` not in it):
    /// every t-subset of `base + x` that uses `x` must be an edge.
    fn extends(&self, base: &[usize], x: usize) -> bool {
        if base.len() + 1 < self.t {
            return true;
        }
        sub_subsets(base, self.t - 1).all(|mut face| {
            let pos = face.partition_point(|&y| y < x);
            face.insert(pos, x);
            self.present[colex_index(&face)]
        })
    }

    /// Calls `f` on each k-clique containing `w`, in colex order of the added
    /// vertices. `w` must be an ascending clique (or shorter than `t`).
    pub fn for_each_clique_containing<F>(&self, w: &[usize], k: usize, mut f: F) -> Result<()>
    where
        F: FnMut(&[usize]),
    {
        if w.len() > k {
            return Err(Error::invalid(format!("{w:?} has more than k = {k} vertices")));
        }
        if w.windows(2).any(|p| p[0] >= p[1]) || w.last().is_some_and(|&x| x >= self.v) {
            return Err(Error::invalid(format!(
                "{w:?} is not an ascending subset of the vertices"
            )));
        }
        if w.len() >= self.t && !self.is_clique(w)? {
            return Err(Error::invalid(format!("{w:?} does not induce a clique")));
        }
        let candidates: Vec<usize> = (0..self.v)
            .filter(|x| w.binary_search(x).is_err() && self.extends(w, *x))
            .collect();
        let mut current = w.to_vec();
        self.extend_clique(&mut current, &candidates, k - w.len(), &mut f);
        Ok(())
    }

    fn extend_clique<F>(&self, current: &mut Vec<usize>, candidates: &[usize], need: usize, f: &mut F)
    where
        F: FnMut(&[usize]),
    {
        if need == 0 {
            f(current);
            return;
        }
        if candidates.len() < need {
            return;
        }
        // Largest added vertex chosen first and ascending, which is colex order.
        for idx in need - 1..candidates.len() {
            let x = candidates[idx];
            if !self.extends(current, x) {
                continue;
            }
            let pos = current.partition_point(|&y| y < x);
            current.insert(pos, x);
            self.extend_clique(current, &candidates[..idx], need - 1, f);
            current.remove(pos);
        }
    }

    pub fn cliques_containing(&self, w: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.for_each_clique_containing(w, k, |c| out.push(c.to_vec()))?;
        Ok(out)
    }

    pub fn count_cliques_containing(&self, w: &[usize], k: usize) -> Result<usize> {
        let mut n = 0;
        self.for_each_clique_containing(w, k, |_| n += 1)?;
        Ok(n)
    }

    /// Removes edges of `K_v^t` in a seeded random order, skipping any removal
    /// that would push the density deficit above `target_eps`.
    pub fn gen_dense_random(v: usize, t: usize, target_eps: &BigRational, seed: u64) -> Result<Self> {
        let zero = BigRational::from_integer(0.into());
        if *target_eps < zero || *target_eps >= BigRational::one() {
            return Err(Error::invalid(format!("target epsilon {target_eps} is outside [0, 1)")));
        }
        let mut g = Self::complete(v, t)?;
        // Required codegree: ceil((1 - eps)(v - t + 1)).
        let span = BigRational::from_integer(BigInt::from(v - t + 1));
        let need = ((BigRational::one() - target_eps) * span).ceil().to_integer();
        let need: usize = need
            .try_into()
            .map_err(|_| Error::Internal("codegree overflow".into()))?;
        let mut deg = g.codegrees();
        let mut order: Vec<usize> = (0..g.present.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        for r in order {
            let e = unrank_index(r, t);
            let faces: Vec<usize> = (0..t)
                .map(|skip| {
                    let face: Vec<usize> = e
                        .iter()
                        .enumerate()
                        .filter_map(|(i, &x)| (i != skip).then_some(x))
                        .collect();
                    colex_index(&face)
                })
                .collect();
            if faces.iter().all(|&f| deg[f] > need) {
                faces.iter().for_each(|&f| deg[f] -= 1);
                g.present[r] = false;
                g.edge_count -= 1;
            }
        }
        Ok(g)
    }

    /// Serializes in the `.tg` text format, edges in colex order.
    pub fn to_tg(&self) -> String {
        let mut out = format!("{} {} {}\n", self.t, self.v, self.edge_count);
        for e in self.edges() {
            let line: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the `.tg` format: `#` comments, a `t v m` header, then `m` edge lines.
    pub fn parse_tg(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_nums = |line: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("'{tok}' is not a nonnegative integer"),
                    })
                })
                .collect()
        };
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing 't v m' header".into(),
        })?;
        let h = parse_nums(hline, header)?;
        let [t, v, m] = h[..] else {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header must have 3 fields, found {}", h.len()),
            });
        };
        if t < 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "t must be at least 2".into(),
            });
        }
        let mut g = Self::empty(v, t).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Parse { line: hline, msg },
            other => other,
        })?;
        let mut seen = 0;
        for (line, l) in lines {
            let e = parse_nums(line, l)?;
            let r = g.checked_index(&e).map_err(|err| Error::Parse {
                line,
                msg: err.to_string(),
            })?;
            if g.present[r] {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate edge {e:?}"),
                });
            }
            g.present[r] = true;
            g.edge_count += 1;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header announces {m} edges but {seen} were given"),
            });
        }
        Ok(g)
    }
}
