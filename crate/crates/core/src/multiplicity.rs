//! Local intersection multiplicity of three surfaces at a point.
//!
//! `mult_z(f1, f2, f3) = dim K[x]/(I + m_z^N)` once this stabilizes in `N`,
//! which happens exactly when `z` is isolated in the common zero set.

use serde::Serialize;

use crate::curves::Point3;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::{monomials_up_to, MPoly, MonomialIndex};

pub const DEFAULT_N_MAX: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultResult {
    pub value: usize,
    /// The `N` at which `d_N = d_(N+1)` was first observed.
    pub truncation_level: u32,
}

/// `d_N = dim K[y]_(<N) / span{ trunc_(<N)(y^b f_i(z+y)) : |b| < N }`.
pub fn quotient_dim<F: Field>(shifted: &[MPoly<F>], n: u32) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    let arity = shifted[0].arity();
    let index = MonomialIndex::up_to(arity, n - 1);
    let ctx = shifted[0].ctx().clone();
    let mut m = Matrix::zeros(0, index.len(), &ctx);
    for f in shifted {
        let ord = f.order().unwrap_or(u32::MAX);
        if ord >= n {
            continue;
        }
        for mono in monomials_up_to(arity, n - 1 - ord) {
            let row = f.mul_term(&mono, &F::one(&ctx))?.truncate(n - 1);
            m.push_row(index.dense(&row)?)?;
        }
    }
    Ok(index.len() - m.rank())
}

fn shifted_all<F: Field>(fs: &[MPoly<F>], z: &[F]) -> Result<Vec<MPoly<F>>> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("no polynomials".into()));
    }
    fs.iter().map(|f| f.shift(z)).collect()
}

/// The sequence `d_1, ..., d_(n_max)`.
pub fn quotient_dims<F: Field>(fs: &[MPoly<F>], z: &[F], n_max: u32) -> Result<Vec<usize>> {
    let shifted = shifted_all(fs, z)?;
    (1..=n_max).map(|n| quotient_dim(&shifted, n)).collect()
}

/// Local multiplicity of `Z(f1) ∩ Z(f2) ∩ Z(f3)` at `z`.
pub fn local_mult<F: Field>(fs: &[MPoly<F>; 3], z: &Point3<F>, n_max: u32) -> Result<MultResult> {
    let mut common = true;
    for f in fs {
        common &= f.eval(z)?.is_zero();
    }
    if !common {
        return Ok(MultResult {
            value: 0,
            truncation_level: 0,
        });
    }
    let shifted = shifted_all(fs, z)?;
    let mut prev = quotient_dim(&shifted, 1)?;
    for n in 1..n_max {
        let next = quotient_dim(&shifted, n + 1)?;
        if next == prev {
            return Ok(MultResult {
                value: prev,
                truncation_level: n,
            });
        }
        prev = next;
    }
    Err(Error::NotIsolated(n_max as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutAudit {
    pub multiplicities: Vec<usize>,
    pub sum: usize,
    pub bound: u64,
    pub equality: bool,
}

/// Sums local multiplicities over candidate common zeros and checks the
/// sum against `deg f1 · deg f2 · deg f3`.
pub fn bezout_sum_audit<F: Field>(
    fs: &[MPoly<F>; 3],
    points: &[Point3<F>],
    n_max: u32,
) -> Result<BezoutAudit> {
    let mut multiplicities = Vec::with_capacity(points.len());
    for z in points {
        let r = local_mult(fs, z, n_max)?;
        if r.value == 0 {
            return Err(Error::NotACommonZero);
        }
        multiplicities.push(r.value);
    }
    let sum: usize = multiplicities.iter().sum();
    let bound: u64 = fs.iter().map(|f| f.degree().unwrap_or(0) as u64).product();
    if sum as u64 > bound {
        return Err(Error::TheoremViolation(format!(
            "multiplicity sum {sum} exceeds {bound}"
        )));
    }
    Ok(BezoutAudit {
        multiplicities,
        sum,
        bound,
        equality: sum as u64 == bound,
    })
}
