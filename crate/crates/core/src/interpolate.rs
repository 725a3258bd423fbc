//! Minimal-degree polynomials vanishing on finite point sets and on
//! finite families of curves.

use crate::curves::{Point3, RatCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::{MPoly, MonomialIndex};

fn binom3(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Rows: points; columns: monomials of the index.
pub fn evaluation_matrix<F: Field>(
    points: &[Point3<F>],
    index: &MonomialIndex,
    ctx: &F::Ctx,
) -> Matrix<F> {
    let mut m = Matrix::zeros(points.len(), index.len(), ctx);
    let d = index
        .monomials()
        .iter()
        .map(|m| m.degree())
        .max()
        .unwrap_or(0) as usize;
    for (r, z) in points.iter().enumerate() {
        let pows: Vec<Vec<F>> = z
            .iter()
            .map(|zi| {
                let mut v = vec![F::one(ctx)];
                for k in 1..=d {
                    v.push(v[k - 1].clone() * zi.clone());
                }
                v
            })
            .collect();
        for (c, mono) in index.monomials().iter().enumerate() {
            m[(r, c)] = (0..3).fold(F::one(ctx), |acc, i| {
                acc * pows[i][mono.exp(i) as usize].clone()
            });
        }
    }
    m
}

/// A nonzero polynomial of degree `<= d` vanishing on `points`, if one
/// exists: the first kernel basis vector, scaled monic.
pub fn kernel_poly<F: Field>(points: &[Point3<F>], d: u32, ctx: &F::Ctx) -> Option<MPoly<F>> {
    let index = MonomialIndex::up_to(3, d);
    let m = evaluation_matrix(points, &index, ctx);
    let kernel = m.nullspace();
    kernel.first().map(|v| index.sparse(v, 3, ctx).monic())
}

/// Smallest `d` with `C(d+3, 3) > n`.
pub fn counting_degree(n: usize) -> u32 {
    (0..).find(|&d| binom3(d) > n).unwrap()
}

/// A polynomial of minimal degree vanishing on every point.
pub fn min_vanishing_poly<F: Field>(points: &[Point3<F>]) -> Result<MPoly<F>> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidArgument("no points".into()));
    };
    let ctx = first[0].ctx();
    for d in 1..=counting_degree(points.len()) {
        if let Some(p) = kernel_poly(points, d, &ctx) {
            return Ok(p);
        }
    }
    unreachable!("a kernel exists at the counting degree")
}

/// Sample counts `d·deg γ + 1` force containment by Bézout.
fn samples_needed<F: Field>(curves: &[RatCurve<F>], d: u32) -> usize {
    curves.iter().map(|c| (d * c.degree() + 1) as usize).sum()
}

/// Smallest `d` for which the dimension count alone guarantees a nonzero
/// polynomial of degree `d` vanishing on the curves.
pub fn counting_degree_for_curves<F: Field>(curves: &[RatCurve<F>]) -> u32 {
    (1..)
        .find(|&d| binom3(d) > samples_needed(curves, d))
        .unwrap()
}

/// A polynomial of degree exactly `<= d` containing every curve, if one
/// exists. Each curve contributes `d·deg γ + 1` sample points.
pub fn vanishing_poly_of_degree<F: Field>(
    curves: &[RatCurve<F>],
    d: u32,
) -> Result<Option<MPoly<F>>> {
    let Some(first) = curves.first() else {
        return Err(Error::InvalidArgument("no curves".into()));
    };
    let ctx = first.ctx();
    let mut points = Vec::with_capacity(samples_needed(curves, d));
    for c in curves {
        points.extend(c.sample_points((d * c.degree() + 1) as usize)?);
    }
    let Some(p) = kernel_poly(&points, d, &ctx) else {
        return Ok(None);
    };
    for c in curves {
        if !c.lies_in(&p)? {
            return Err(Error::TheoremViolation(
                "interpolant misses a curve it vanishes on".into(),
            ));
        }
    }
    Ok(Some(p))
}

/// A polynomial of minimal degree whose zero set contains every curve.
/// The search stops at the counting degree, where existence is certain.
pub fn vanishing_poly_on_curves<F: Field>(curves: &[RatCurve<F>]) -> Result<MPoly<F>> {
    let top = counting_degree_for_curves(curves);
    for d in 1..=top {
        if let Some(p) = vanishing_poly_of_degree(curves, d)? {
            return Ok(p);
        }
    }
    Err(Error::TheoremViolation(format!(
        "no interpolant at the counting degree {top}"
    )))
}
