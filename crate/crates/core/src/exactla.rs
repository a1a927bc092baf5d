//! Exact dense linear algebra over big integers and big rationals.
//!
//! Integer systems go through fraction-free (Bareiss) elimination; rational
//! input is row-scaled to integers first. Characteristic polynomials use a
//! similarity reduction to upper Hessenberg form followed by the standard
//! determinant recurrence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::EXACT_CAP;

/// Square matrix of big integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| BigInt::from((i == j) as u8))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must all have length n"));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] -= c;
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            data: self.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

/// Square matrix of big rationals in canonical form, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| BigRational::from_integer(BigInt::from((i == j) as u8)))
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must all have length n"));
        }
        Ok(RationalMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigRational) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self::from_fn(self.n, |i, j| (0..self.n).map(|l| self.get(i, l) * rhs.get(l, j)).sum())
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Scales each row (and the matching entry of `b`) by the lcm of its
    /// denominators. Returns the integer rows and the scale factors.
    fn integer_rows(&self, b: Option<&[BigRational]>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.n);
        let mut scales = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let extra = b.map(|b| &b[i]);
            let lcm = self
                .row(i)
                .iter()
                .chain(extra)
                .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut row: Vec<BigInt> = self
                .row(i)
                .iter()
                .chain(extra)
                .map(|x| (x * &lcm).to_integer())
                .collect();
            row.shrink_to_fit();
            rows.push(row);
            scales.push(lcm);
        }
        (rows, scales)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

/// Upper-triangular result of fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    swaps_odd: bool,
}

/// Bareiss elimination on the first `n` columns. `None` when a column has no
/// usable pivot (the leading `n x n` block is singular). Each division is
/// checked to be exact.
fn bareiss(mut rows: Vec<Vec<BigInt>>, n: usize) -> Result<Option<Echelon>> {
    let mut prev = BigInt::one();
    let mut swaps_odd = false;
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !rows[i][k].is_zero())
            .max_by(|&a, &b| rows[a][k].abs().cmp(&rows[b][k].abs()).then(b.cmp(&a)));
        let Some(p) = pivot else {
            return Ok(None);
        };
        if p != k {
            rows.swap(p, k);
            swaps_odd = !swaps_odd;
        }
        let (top, bottom) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..row.len() {
                let num = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::Internal(format!("fraction-free step {k} left a remainder")));
                }
                row[j] = q;
            }
        }
        prev = pivot_row[k].clone();
    }
    Ok(Some(Echelon { rows, swaps_odd }))
}

/// Solves `a x = b` from an integer augmented system; `rows[i][n]` is `b_i`.
fn solve_augmented(rows: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<BigRational>> {
    let ech = bareiss(rows, n)?.ok_or(Error::Singular)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let u = &ech.rows;
    // With D the last pivot, y = D x is integral (Cramer numerators).
    let d = u[n - 1][n - 1].clone();
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &d * &u[i][n];
        for j in i + 1..n {
            if !u[i][j].is_zero() {
                acc -= &u[i][j] * &y[j];
            }
        }
        let (q, r) = acc.div_rem(&u[i][i]);
        if !r.is_zero() {
            return Err(Error::Internal("back substitution was not exact".into()));
        }
        y[i] = q;
    }
    Ok(y.into_iter().map(|yi| BigRational::new(yi, d.clone())).collect())
}

/// Exact solution of `a x = b` for an integer matrix. The result is checked by
/// multiplying back before it is returned.
pub fn solve_int(a: &IntMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    if b.len() != a.n {
        return Err(Error::invalid("right-hand side length does not match the matrix"));
    }
    let mut rows = a.rows();
    for (row, bi) in rows.iter_mut().zip(b) {
        let den = bi.denom().clone();
        if !den.is_one() {
            row.iter_mut().for_each(|x| *x *= &den);
        }
        row.push(bi.numer().clone());
    }
    let x = solve_augmented(rows, a.n)?;
    if a.mul_vec(&x) != b {
        return Err(Error::Internal("solution failed the multiplication check".into()));
    }
    Ok(x)
}

/// Exact solution of `a x = b` over the rationals, checked by multiplying back.
pub fn solve_exact(a: &RationalMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    if b.len() != a.n {
        return Err(Error::invalid("right-hand side length does not match the matrix"));
    }
    let (rows, _) = a.integer_rows(Some(b));
    let x = solve_augmented(rows, a.n)?;
    if a.mul_vec(&x) != b {
        return Err(Error::Internal("solution failed the multiplication check".into()));
    }
    Ok(x)
}

pub fn determinant_int(a: &IntMatrix) -> Result<BigInt> {
    if a.n > EXACT_CAP {
        return Err(Error::cap("determinant dimension", a.n, EXACT_CAP));
    }
    if a.n == 0 {
        return Ok(BigInt::one());
    }
    Ok(match bareiss(a.rows(), a.n)? {
        None => BigInt::zero(),
        Some(e) => {
            let d = e.rows[a.n - 1][a.n - 1].clone();
            if e.swaps_odd {
                -d
            } else {
                d
            }
        }
    })
}

pub fn determinant(a: &RationalMatrix) -> Result<BigRational> {
    if a.n > EXACT_CAP {
        return Err(Error::cap("determinant dimension", a.n, EXACT_CAP));
    }
    let (rows, scales) = a.integer_rows(None);
    let int = IntMatrix::from_rows(rows)?;
    let scale: BigInt = scales.iter().product();
    Ok(BigRational::new(determinant_int(&int)?, scale))
}

/// Monic `det(xI - a)`.
pub fn charpoly(a: &RationalMatrix) -> Result<Poly> {
    let n = a.n;
    if n > EXACT_CAP {
        return Err(Error::cap("characteristic polynomial dimension", n, EXACT_CAP));
    }
    let mut h: Vec<Vec<BigRational>> = (0..n).map(|i| a.row(i).to_vec()).collect();

    // Similarity reduction to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &pivot;
            let (upper, lower) = h.split_at_mut(i);
            for (dst, src) in lower[0].iter_mut().zip(&upper[m]) {
                if !src.is_zero() {
                    *dst -= &u * src;
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let add = &u * &row[i];
                    row[m] += add;
                }
            }
        }
    }

    // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_i
    let mut polys: Vec<Poly> = Vec::with_capacity(n + 1);
    polys.push(Poly::one());
    for m in 0..n {
        let mut next = &Poly::linear(&h[m][m]) * &polys[m];
        let mut sub = BigRational::one();
        for i in (0..m).rev() {
            sub *= &h[i + 1][i];
            if sub.is_zero() {
                break;
            }
            let c = &h[i][m] * &sub;
            if !c.is_zero() {
                next = &next - &polys[i].scale(&c);
            }
        }
        polys.push(next);
    }
    Ok(polys.pop().unwrap_or_else(Poly::one))
}
