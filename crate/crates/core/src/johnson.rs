//! Spectral data of the coverage matrix `M` on the Johnson scheme `J(t, v)`.
//!
//! `M(T, U) = xi_{|T \ U|}` with `xi_i = C(v-t-i, k-t-i)` is a member of the
//! Bose-Mesner algebra, so its eigenvalues are `theta_j = sum_i xi_i P_ij`
//! with multiplicities `C(v, j) - C(v, j-1)`, where `P` is the first
//! eigenmatrix. Replacing the first column of `M` by the constant `theta_0`
//! gives `M1`, whose spectrum is that of `M` except for `t + 1` eigenvalues:
//! the roots of the polynomial `R(x) = psi(x) * prod_j (x - theta_j)` with
//!
//! ```text
//! psi(x) = 1 + theta_0 m_0 / (theta_0 - x) - (1/n) sum_j theta_j m_j / (theta_j - x)
//! ```
//!
//! All characteristic polynomials here are monic, `det(xI - A)`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{choose_i, choose_usize, iter_subsets};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::poly::Poly;
use crate::rational::{sign, to_fraction_string};
use crate::MATRIX_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JohnsonParams {
    pub t: usize,
    pub k: usize,
    pub v: usize,
}

fn binom(n: i64, r: i64) -> BigInt {
    BigInt::from(choose_i(n, r))
}

impl JohnsonParams {
    pub fn new(t: usize, k: usize, v: usize) -> Result<Self> {
        if !(2 <= t && t <= k && k <= v) {
            return Err(Error::invalid(format!(
                "need 2 <= t <= k <= v, got t={t}, k={k}, v={v}"
            )));
        }
        Ok(JohnsonParams { t, k, v })
    }

    /// `n = C(v, t)`, the number of t-subsets.
    pub fn n(&self) -> BigInt {
        binom(self.v as i64, self.t as i64)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.t {
            return Err(Error::invalid(format!("index {i} is outside 0..={}", self.t)));
        }
        Ok(())
    }

    /// Number of k-subsets containing a fixed `(t+i)`-set.
    pub fn xi(&self, i: usize) -> Result<BigInt> {
        self.check_index(i)?;
        Ok(self.xi_at(i))
    }

    fn xi_at(&self, i: usize) -> BigInt {
        let (t, k, v, i) = (self.t as i64, self.k as i64, self.v as i64, i as i64);
        binom(v - t - i, k - t - i)
    }

    /// `P_ij = sum_{s=0..i} (-1)^{i-s} C(t-s, i-s) C(t-j, s) C(v-t+s-j, s)`.
    pub fn eigenmatrix_entry(&self, i: usize, j: usize) -> BigInt {
        let (t, v) = (self.t as i64, self.v as i64);
        let (i, j) = (i as i64, j as i64);
        (0..=i)
            .map(|s| {
                let term = binom(t - s, i - s) * binom(t - j, s) * binom(v - t + s - j, s);
                if (i - s) % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    /// The `(t+1) x (t+1)` first eigenmatrix.
    pub fn eigenmatrix(&self) -> Vec<Vec<BigInt>> {
        (0..=self.t)
            .map(|i| (0..=self.t).map(|j| self.eigenmatrix_entry(i, j)).collect())
            .collect()
    }

    pub fn theta(&self, j: usize) -> Result<BigInt> {
        self.check_index(j)?;
        Ok((0..=self.t).map(|i| self.xi_at(i) * self.eigenmatrix_entry(i, j)).sum())
    }

    pub fn thetas(&self) -> Vec<BigInt> {
        (0..=self.t).map(|j| self.theta(j).expect("index in range")).collect()
    }

    /// `m_j = C(v, j) - C(v, j-1)`.
    pub fn multiplicity(&self, j: usize) -> Result<BigInt> {
        self.check_index(j)?;
        let (v, j) = (self.v as i64, j as i64);
        Ok(binom(v, j) - binom(v, j - 1))
    }

    pub fn multiplicities(&self) -> Vec<BigInt> {
        (0..=self.t)
            .map(|j| self.multiplicity(j).expect("index in range"))
            .collect()
    }

    /// Leading coefficient of `theta_j` as a polynomial in `v`: `C(k-j, t-j) / (k-t)!`.
    pub fn theta_leading_coefficient(&self, j: usize) -> BigRational {
        let fact: BigInt = (1..=(self.k - self.t) as u64).map(BigInt::from).product();
        BigRational::new(binom((self.k - j) as i64, (self.t - j) as i64), fact)
    }

    pub fn spectrum(&self) -> SpectrumTable {
        SpectrumTable {
            params: *self,
            p: self.eigenmatrix(),
            theta: self.thetas(),
            mult: self.multiplicities(),
            xi: (0..=self.t).map(|i| self.xi_at(i)).collect(),
        }
    }

    /// `theta_t < theta_{t-1} < ... < theta_0`.
    pub fn theta_order_holds(&self) -> bool {
        let th = self.thetas();
        th.windows(2).all(|w| w[1] < w[0])
    }

    fn tsets(&self) -> Result<Vec<Vec<usize>>> {
        match choose_usize(self.v, self.t) {
            Some(n) if n <= MATRIX_CAP => Ok(iter_subsets(self.v, self.t).collect()),
            _ => Err(Error::cap(
                "C(v,t)",
                crate::combinat::choose(self.v as u64, self.t as u64),
                MATRIX_CAP,
            )),
        }
    }

    /// `M(T, U) = xi_{|T \ U|}` over all t-subsets in colex order.
    pub fn build_m(&self) -> Result<IntMatrix> {
        let sets = self.tsets()?;
        let xi: Vec<BigInt> = (0..=self.t).map(|i| self.xi_at(i)).collect();
        let rows: Vec<Vec<BigInt>> = sets
            .par_iter()
            .map(|a| sets.iter().map(|b| xi[set_difference_size(a, b)].clone()).collect())
            .collect();
        IntMatrix::from_rows(rows)
    }

    /// `M` with the column of the colex-least t-subset replaced by `theta_0`.
    pub fn build_m1(&self) -> Result<IntMatrix> {
        let mut m = self.build_m()?;
        let theta0 = self.theta(0)?;
        for i in 0..m.n() {
            m.set(i, 0, theta0.clone());
        }
        Ok(m)
    }

    pub fn psi(&self, x: &BigRational) -> Result<BigRational> {
        let th: Vec<BigRational> = self.thetas().into_iter().map(BigRational::from_integer).collect();
        let m: Vec<BigRational> = self
            .multiplicities()
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        if th.iter().any(|t| t == x) {
            return Err(Error::Pole(to_fraction_string(x)));
        }
        let n = BigRational::from_integer(self.n());
        let head = BigRational::one() + &th[0] * &m[0] / (&th[0] - x);
        let tail: BigRational = th.iter().zip(&m).map(|(t, mj)| t * mj / (t - x)).sum();
        Ok(head - tail / n)
    }

    /// Monic polynomial whose roots are the `t + 1` eigenvalues of `M1` that are
    /// not inherited from `M`.
    pub fn charpoly_r(&self) -> Result<Poly> {
        let th: Vec<BigRational> = self.thetas().into_iter().map(BigRational::from_integer).collect();
        let distinct = th.iter().enumerate().all(|(i, a)| th[i + 1..].iter().all(|b| a != b));
        if !distinct {
            return Err(self.degenerate());
        }
        let m: Vec<BigRational> = self
            .multiplicities()
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let n = BigRational::from_integer(self.n());
        let all_but = |skip: usize| Poly::from_roots(th.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r));
        let mut r = Poly::from_roots(&th);
        r = &r - &all_but(0).scale(&(&th[0] * &m[0]));
        for j in 0..th.len() {
            let c = &th[j] * &m[j] / &n;
            r = &r + &all_but(j).scale(&c);
        }
        Ok(r)
    }

    fn degenerate(&self) -> Error {
        Error::Degenerate {
            t: self.t,
            k: self.k,
            v: self.v,
        }
    }

    /// Whether the closed-form root analysis applies: strictly ordered
    /// eigenvalues, `theta_t > 0` and every multiplicity positive.
    pub fn isolation_applies(&self) -> bool {
        self.theta_order_holds()
            && self.thetas().last().is_some_and(Signed::is_positive)
            && self.multiplicities().iter().all(Signed::is_positive)
    }

    /// Signs of `R` at `theta_t / 2, theta_t, ..., theta_0` followed by its sign
    /// at `+inf`. `None` when [`Self::isolation_applies`] is false.
    pub fn r_sign_pattern(&self) -> Option<Vec<i8>> {
        if !self.isolation_applies() {
            return None;
        }
        let r = self.charpoly_r().ok()?;
        let mut out: Vec<i8> = self.anchor_points().iter().map(|x| sign(&r.eval(x))).collect();
        out.push(sign(&r.leading()));
        Some(out)
    }

    /// `theta_t / 2` followed by `theta_t, theta_{t-1}, ..., theta_0`.
    fn anchor_points(&self) -> Vec<BigRational> {
        let th = self.thetas();
        let mut pts = vec![BigRational::new(th[self.t].clone(), BigInt::from(2))];
        pts.extend(th.into_iter().rev().map(BigRational::from_integer));
        pts
    }

    /// Brackets the `t + 1` roots of `R` by exact sign changes over the anchor
    /// points `theta_t/2, theta_t, ..., theta_0` and a root bound beyond
    /// `theta_0`, then bisects each bracket to width at most `theta_t / 1000`.
    pub fn isolate_r_roots(&self) -> RootIsolation {
        let degenerate = RootIsolation {
            intervals: Vec::new(),
            status: IsolationStatus::Degenerate,
            all_above_half_theta_t: false,
        };
        if !self.isolation_applies() {
            return degenerate;
        }
        let Ok(r) = self.charpoly_r() else {
            return degenerate;
        };
        let th = self.thetas();
        let theta0 = BigRational::from_integer(th[0].clone());
        let bound = r.root_bound();
        let upper = if bound > theta0 {
            bound
        } else {
            theta0 + BigRational::one()
        };
        let lower = -upper.clone();
        let half = BigRational::new(th[self.t].clone(), BigInt::from(2));
        let width = BigRational::new(th[self.t].clone(), BigInt::from(1000));

        let mut pts = vec![lower];
        pts.extend(self.anchor_points());
        pts.push(upper);
        let vals: Vec<BigRational> = pts.iter().map(|x| r.eval(x)).collect();

        let mut intervals = Vec::new();
        let mut status = IsolationStatus::Ordered;
        if vals.iter().any(Zero::is_zero) {
            status = IsolationStatus::Incomplete;
        }
        for w in 0..pts.len() - 1 {
            let (sa, sb) = (sign(&vals[w]), sign(&vals[w + 1]));
            if sa * sb < 0 {
                intervals.push(bisect(&r, pts[w].clone(), pts[w + 1].clone(), sa, &width));
            }
        }
        if intervals.len() != self.t + 1 {
            status = IsolationStatus::Incomplete;
        }
        let all_above = status == IsolationStatus::Ordered && intervals.iter().all(|(a, _)| *a >= half);
        RootIsolation {
            intervals,
            status,
            all_above_half_theta_t: all_above,
        }
    }
}

fn bisect(
    r: &Poly,
    mut lo: BigRational,
    mut hi: BigRational,
    sign_lo: i8,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match sign(&r.eval(&mid)) {
            0 => return (mid.clone(), mid),
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

fn set_difference_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() - common
}

/// Smallest `v` in `vs` for which the eigenvalues are strictly ordered.
pub fn min_ordered_v(t: usize, k: usize, vs: impl IntoIterator<Item = usize>) -> Option<usize> {
    vs.into_iter()
        .find(|&v| JohnsonParams::new(t, k, v).is_ok_and(|p| p.theta_order_holds()))
}

/// Smallest `v` in `vs` where the ordering holds, `theta_t > 0`, `psi(theta_t/2) > 0`
/// and every isolated root of `R` exceeds `theta_t / 2`.
pub fn min_conforming_v(t: usize, k: usize, vs: impl IntoIterator<Item = usize>) -> Option<usize> {
    vs.into_iter().find(|&v| {
        JohnsonParams::new(t, k, v).is_ok_and(|p| {
            let iso = p.isolate_r_roots();
            let half = BigRational::new(p.thetas()[t].clone(), BigInt::from(2));
            iso.all_above_half_theta_t && p.psi(&half).is_ok_and(|x| x.is_positive())
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolationStatus {
    Ordered,
    Degenerate,
    /// Ordering holds but fewer than `t + 1` sign changes were found.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    pub intervals: Vec<(BigRational, BigRational)>,
    pub status: IsolationStatus,
    pub all_above_half_theta_t: bool,
}

/// Eigenmatrix, eigenvalues, multiplicities and the `xi` weights for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub params: JohnsonParams,
    pub p: Vec<Vec<BigInt>>,
    pub theta: Vec<BigInt>,
    pub mult: Vec<BigInt>,
    pub xi: Vec<BigInt>,
}

impl SpectrumTable {
    /// Columns `j`, `theta_j`, `m_j` as decimal integers.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 3]> = (0..self.theta.len())
            .map(|j| [j.to_string(), self.theta[j].to_string(), self.mult[j].to_string()])
            .collect();
        let widths: Vec<usize> = (0..3)
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(["j", "theta_j", "m_j"][c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>w0$}  {:>w1$}  {:>w2$}",
            "j",
            "theta_j",
            "m_j",
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
        for r in rows {
            let _ = writeln!(
                out,
                "{:>w0$}  {:>w1$}  {:>w2$}",
                r[0],
                r[1],
                r[2],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2]
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "t": self.params.t,
            "k": self.params.k,
            "v": self.params.v,
            "theta": s(&self.theta),
            "mult": s(&self.mult),
            "xi": s(&self.xi),
            "P": self.p.iter().map(|r| s(r)).collect::<Vec<_>>(),
        })
    }
}
