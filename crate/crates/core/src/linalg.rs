//! Dense exact linear algebra.
//!
//! Pivoting is deterministic: the first nonzero entry in column order is
//! chosen, so results do not depend on anything but the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, ctx: &F::Ctx) -> Self {
        Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data: vec![F::zero(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m[(i, i)] = F::one(ctx);
        }
        m
    }

    /// Row-major entries; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, ctx: &F::Ctx, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize, ctx: &F::Ctx) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidArgument("ragged rows".into()));
            }
            data.extend(r);
        }
        Self::from_vec(n, cols, ctx, data)
    }

    pub fn from_i64(rows: usize, cols: usize, ctx: &F::Ctx, vals: &[i64]) -> Result<Self> {
        let data = vals.iter().map(|&v| F::from_i64(v, ctx)).collect();
        Self::from_vec(rows, cols, ctx, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn push_row(&mut self, row: Vec<F>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::ArityMismatch(row.len(), self.cols));
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch(v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(&self.ctx), |acc, (a, b)| {
                        acc + a.clone() * b.clone()
                    })
            })
            .collect())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let piv = F::row_reduce(&mut m);
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, itself in reduced row echelon form (each
    /// vector's first nonzero entry is 1).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, piv) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(&self.ctx); self.cols];
            v[free] = F::one(&self.ctx);
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let n = basis.len();
        let b = Matrix::from_rows(basis, self.cols, &self.ctx).expect("rectangular");
        let (reduced, _) = b.rref();
        (0..n).map(|i| reduced.row(i).to_vec()).collect()
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::ArityMismatch(b.len(), self.rows));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(&self.ctx); self.cols];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(F::zero(&self.ctx));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= pivot.clone();
            let pinv = pivot.inv()?;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * pinv.clone();
                for j in c..n {
                    let t = m[(c, j)].clone() * f.clone();
                    m[(i, j)] -= t;
                }
            }
        }
        Ok(det)
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Plain Gauss-Jordan elimination to RREF.
pub fn gauss_jordan<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m[(r, c)].inv().expect("pivot is nonzero");
        for j in c..cols {
            let t = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = t;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let t = m[(r, j)].clone() * f.clone();
                m[(i, j)] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// RREF over the rationals via fraction-free (Bareiss) forward elimination
/// on integer-scaled rows, followed by exact back substitution. Scaling a
/// row does not change the row space, so the result is the same RREF that
/// [`gauss_jordan`] produces.
pub fn bareiss_rref(m: &mut Matrix<Rational>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let mut out: Vec<Vec<Rational>> = a
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|n| Rational(num_rational::BigRational::from_integer(n)))
                .collect()
        })
        .collect();
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = out[i][c].inv().expect("pivot is nonzero");
        for x in &mut out[i][c..cols] {
            *x = x.clone() * inv.clone();
        }
        for k in 0..i {
            if out[k][c].is_zero() {
                continue;
            }
            let f = out[k][c].clone();
            for j in c..cols {
                let t = out[i][j].clone() * f.clone();
                out[k][j] -= t;
            }
        }
    }
    for (i, row) in out.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    pivots
}

/// Kernel basis; see [`Matrix::nullspace`].
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.nullspace()
}
