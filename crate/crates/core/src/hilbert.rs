//! Affine Hilbert functions, Hilbert polynomials and the `ℓ`-tuple order,
//! plus an explorer for stabilization of ascending chains of ideals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{factorial, Field, Rational};
use crate::groebner::{groebner, GroebnerBasis, IdealBasis};
use crate::linalg::Matrix;
use crate::mpoly::{monomials_up_to, Monomial};

/// Bound on the start of the stable range searched by [`hilbert_poly`].
pub const MAX_STABLE_START: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `H_I(t)` for `t = 0..values.len()`.
    pub values: Vec<u64>,
    /// Coefficients of `HP_I` in ascending powers of `t`.
    pub hp_coeffs: Vec<Rational>,
    /// `ℓ_j = j! · coeff(HP_I, j)`.
    pub ell: Vec<Rational>,
    /// First `t` of the verified agreement window.
    pub stable_from: u32,
}

/// Number of monomials of degree at most `t` outside the monomial ideal
/// generated by `leads`.
pub fn standard_monomial_count(leads: &[Monomial], arity: usize, t: u32) -> u64 {
    monomials_up_to(arity, t)
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as u64
}

pub fn hilbert_function_of<F: Field>(gb: &GroebnerBasis<F>, t: u32) -> u64 {
    standard_monomial_count(&gb.leading_monomials(), gb.arity(), t)
}

/// `H_I(t) = dim K[x]_(<=t) / I_(<=t)`.
pub fn hilbert_function<F: Field>(ideal: &IdealBasis<F>, t: u32) -> Result<u64> {
    Ok(hilbert_function_of(&groebner(ideal)?, t))
}

/// Exact interpolation of a degree `<= n` polynomial through
/// `(t0 + i, values[i])`, `i = 0..=n`.
fn fit(t0: u32, values: &[u64]) -> Result<Vec<Rational>> {
    let n = values.len();
    let mut m = Matrix::zeros(n, n, &());
    for (i, _) in values.iter().enumerate() {
        let t = Rational::from_integer((t0 as usize + i) as i64);
        for j in 0..n {
            m[(i, j)] = t.pow(j as u64);
        }
    }
    let b: Vec<Rational> = values
        .iter()
        .map(|&v| Rational::from_bigint(&BigInt::from(v), &()))
        .collect();
    m.solve(&b)?
        .ok_or_else(|| Error::InvalidArgument("singular interpolation".into()))
}

fn eval_rational(coeffs: &[Rational], t: u64) -> Rational {
    let t = Rational::from_bigint(&BigInt::from(t), &());
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(&()), |acc, c| acc * t.clone() + c.clone())
}

pub fn hilbert_poly<F: Field>(ideal: &IdealBasis<F>) -> Result<HilbertData> {
    hilbert_poly_of(&groebner(ideal)?)
}

/// Fits a degree-`<= N` polynomial on `N+1` values starting at `t0` and
/// accepts it once it reproduces the next `N+1` values; `t0` starts at the
/// largest leading-monomial degree and increases until that happens.
pub fn hilbert_poly_of<F: Field>(gb: &GroebnerBasis<F>) -> Result<HilbertData> {
    let n = gb.arity();
    let leads = gb.leading_monomials();
    let start = leads.iter().map(|m| m.degree()).max().unwrap_or(0);
    let window = 2 * (n as u32 + 1);
    for t0 in start..=MAX_STABLE_START {
        let vals: Vec<u64> = (t0..t0 + window)
            .map(|t| standard_monomial_count(&leads, n, t))
            .collect();
        let coeffs = fit(t0, &vals[..n + 1])?;
        let agrees = vals[n + 1..].iter().enumerate().all(|(i, &v)| {
            eval_rational(&coeffs, (t0 as usize + n + 1 + i) as u64)
                == Rational::from_integer(v as i64)
        });
        if agrees {
            let values = (0..t0 + window)
                .map(|t| standard_monomial_count(&leads, n, t))
                .collect();
            let ell = coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.clone() * factorial::<Rational>(j as u64, &()))
                .collect();
            return Ok(HilbertData {
                values,
                hp_coeffs: coeffs,
                ell,
                stable_from: t0,
            });
        }
    }
    Err(Error::WorkLimit(format!(
        "Hilbert function not polynomial by t = {MAX_STABLE_START}"
    )))
}

/// The order on `ℓ`-tuples: compare from the highest index down.
pub fn ell_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    let n = a.len().max(b.len());
    let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(|| Rational::zero(&()));
    for i in (0..n).rev() {
        match get(a, i).cmp(&get(b, i)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccReport {
    /// Smallest (1-based) `r0 >= 2` with `I_r0 ⊂ I_1 + ... + I_(r0-1)`.
    pub r0: Option<usize>,
    /// `ℓ` of the partial sums `I_1 + ... + I_j`, for `j = 1..=r0` (or the
    /// whole sequence when no `r0` was found).
    pub ell_tuples: Vec<Vec<Rational>>,
}

pub fn acc_explore<F: Field>(ideals: &[IdealBasis<F>]) -> Result<AccReport> {
    let Some(first) = ideals.first() else {
        return Ok(AccReport {
            r0: None,
            ell_tuples: vec![],
        });
    };
    let mut partial = first.clone();
    let mut gb = groebner(&partial)?;
    let mut ell_tuples = vec![hilbert_poly_of(&gb)?.ell];
    for (k, next) in ideals.iter().enumerate().skip(1) {
        if next.arity() != partial.arity() {
            return Err(Error::ArityMismatch(next.arity(), partial.arity()));
        }
        let mut contained = true;
        for g in next.generators() {
            if !gb.contains(g)? {
                contained = false;
                break;
            }
        }
        partial = partial.sum(next)?;
        if !contained {
            gb = groebner(&partial)?;
        }
        ell_tuples.push(hilbert_poly_of(&gb)?.ell);
        if contained {
            return Ok(AccReport {
                r0: Some(k + 1),
                ell_tuples,
            });
        }
    }
    Ok(AccReport {
        r0: None,
        ell_tuples,
    })
}
