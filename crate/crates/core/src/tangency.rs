//! Tangency order of a curve against a surface `Z(T)` at a regular point.
//!
//! Three independent routes are provided:
//!
//! * [`order_via_d`] iterates the derivation `D f = (grad P x grad Q) . grad f`
//!   along the curve and finds the first non-vanishing iterate at `z`;
//! * [`order_via_ideal`] tests `T ∈ (P, Q) + m_z^(r+1)` by linear algebra in
//!   the space of jets at `z`;
//! * [`order_via_restriction`] reads the vanishing order of `T` pulled back
//!   along the parametrization.
//!
//! At regular points all three agree below the cutoff.

use serde::Serialize;

use crate::curves::{is_zero3, CIPair, Point3, RatCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::{dot, monomials_up_to, MPoly, MonomialIndex};

/// Tangency order: an exact value below the cutoff (`-1` when `T(z) != 0`)
/// or "at least the cutoff".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TangencyOrder {
    Exact(i64),
    AtLeast(u32),
}

impl TangencyOrder {
    pub fn is_at_least(&self, r: i64) -> bool {
        match *self {
            TangencyOrder::Exact(v) => v >= r,
            TangencyOrder::AtLeast(c) => c as i64 >= r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangencyReport {
    pub order_via_d: TangencyOrder,
    pub order_via_ideal: TangencyOrder,
    pub order_via_restriction: TangencyOrder,
    pub cutoff: u32,
}

impl TangencyReport {
    pub fn consistent(&self) -> bool {
        self.order_via_d == self.order_via_ideal
            && self.order_via_ideal == self.order_via_restriction
    }
}

/// `(grad P x grad Q) . grad f`.
pub fn d_alpha<F: Field>(f: &MPoly<F>, alpha: &CIPair<F>) -> Result<MPoly<F>> {
    dot(&alpha.tangent_field()?, &f.gradient()?)
}

fn check_regular<F: Field>(alpha: &CIPair<F>, z: &Point3<F>) -> Result<()> {
    if is_zero3(&alpha.tangent_at(z)?) {
        return Err(Error::IrregularPoint);
    }
    Ok(())
}

/// `D²·deg T + 1` where `D` bounds the degrees of the curve's pair.
pub fn default_cutoff<F: Field>(curve: &RatCurve<F>, t: &MPoly<F>) -> u32 {
    let d = curve.ci().degree_bound;
    d * d * t.degree().unwrap_or(0) + 1
}

/// Largest `r < cutoff` with `D^j T(z) = 0` for `j = 0..=r`.
pub fn order_via_d<F: Field>(
    t: &MPoly<F>,
    alpha: &CIPair<F>,
    z: &Point3<F>,
    cutoff: u32,
) -> Result<TangencyOrder> {
    F::check_order(t.ctx(), cutoff as u64)?;
    check_regular(alpha, z)?;
    let field = alpha.tangent_field()?;
    let mut f = t.clone();
    for j in 0..=cutoff {
        if !f.eval(z)?.is_zero() {
            return Ok(TangencyOrder::Exact(j as i64 - 1));
        }
        if f.is_zero() {
            break;
        }
        f = dot(&field, &f.gradient()?)?;
    }
    Ok(TangencyOrder::AtLeast(cutoff))
}

/// Row-reduced span of the truncated multiples `y^b P`, `y^b Q`, `|b| <= r`.
fn truncated_ideal_span<F: Field>(
    gens: &[MPoly<F>],
    r: u32,
    index: &MonomialIndex,
) -> Result<(Matrix<F>, Vec<usize>)> {
    let ctx = gens[0].ctx().clone();
    let mut m = Matrix::zeros(0, index.len(), &ctx);
    for g in gens {
        for mono in monomials_up_to(3, r) {
            let prod = g.mul_term(&mono, &F::one(&ctx))?.truncate(r);
            if !prod.is_zero() {
                m.push_row(index.dense(&prod)?)?;
            }
        }
    }
    Ok(m.rref())
}

fn in_row_space<F: Field>(rref: &Matrix<F>, pivots: &[usize], v: &[F]) -> bool {
    let mut v = v.to_vec();
    for (i, &c) in pivots.iter().enumerate() {
        if v[c].is_zero() {
            continue;
        }
        let f = v[c].clone();
        for (j, x) in v.iter_mut().enumerate().skip(c) {
            *x -= rref[(i, j)].clone() * f.clone();
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// Largest `r < cutoff` with `T ∈ (P, Q) + m_z^(r+1)`.
pub fn order_via_ideal<F: Field>(
    t: &MPoly<F>,
    curve: &RatCurve<F>,
    z: &Point3<F>,
    cutoff: u32,
) -> Result<TangencyOrder> {
    F::check_order(t.ctx(), cutoff as u64)?;
    if !curve.contains(z)? {
        return Err(Error::PointNotOnCurve);
    }
    check_regular(curve.ci(), z)?;
    let ty = t.shift(z)?;
    let gens = [curve.ci().p.shift(z)?, curve.ci().q.shift(z)?];
    for r in 0..=cutoff {
        let index = MonomialIndex::up_to(3, r);
        let (rref, piv) = truncated_ideal_span(&gens, r, &index)?;
        if !in_row_space(&rref, &piv, &index.dense(&ty.truncate(r))?) {
            return Ok(TangencyOrder::Exact(r as i64 - 1));
        }
    }
    Ok(TangencyOrder::AtLeast(cutoff))
}

/// Vanishing order of `T` along the parametrization at `z`, minus one.
pub fn order_via_restriction<F: Field>(
    t: &MPoly<F>,
    curve: &RatCurve<F>,
    z: &Point3<F>,
    cutoff: u32,
) -> Result<TangencyOrder> {
    F::check_order(t.ctx(), cutoff as u64)?;
    let (num, den, s0) = curve.local_param(z)?;
    // velocity of num/den at s0, up to the nonzero factor den(s0)^2
    let dd = den.derivative();
    let velocity: Point3<F> = std::array::from_fn(|i| {
        num[i].derivative().eval(&s0) * den.eval(&s0) - num[i].eval(&s0) * dd.eval(&s0)
    });
    if is_zero3(&velocity) {
        return Err(Error::Ramified);
    }
    let g = t.compose_param_homog(&num, &den)?;
    let Some(v) = g.vanishing_order_at(&s0) else {
        return Ok(TangencyOrder::AtLeast(cutoff));
    };
    let order = v as i64 - 1;
    if order >= cutoff as i64 {
        Ok(TangencyOrder::AtLeast(cutoff))
    } else {
        Ok(TangencyOrder::Exact(order))
    }
}

pub fn tangency_report<F: Field>(
    t: &MPoly<F>,
    curve: &RatCurve<F>,
    z: &Point3<F>,
    cutoff: u32,
) -> Result<TangencyReport> {
    Ok(TangencyReport {
        order_via_d: order_via_d(t, curve.ci(), z, cutoff)?,
        order_via_ideal: order_via_ideal(t, curve, z, cutoff)?,
        order_via_restriction: order_via_restriction(t, curve, z, cutoff)?,
        cutoff,
    })
}

/// If the curve is tangent to `Z(T)` at `z` to order at least `D²·deg T`,
/// it must lie in `Z(T)`; returns whether that conclusion was reached.
/// A tangent but uncontained curve is reported as a theorem violation.
pub fn trapped_test<F: Field>(t: &MPoly<F>, curve: &RatCurve<F>, z: &Point3<F>) -> Result<bool> {
    let d = curve.ci().degree_bound;
    let threshold = d * d * t.degree().unwrap_or(0);
    F::check_order(t.ctx(), threshold as u64)?;
    if !curve.contains(z)? {
        return Err(Error::PointNotOnCurve);
    }
    let order = order_via_d(t, curve.ci(), z, threshold)?;
    if !order.is_at_least(threshold as i64) {
        return Ok(false);
    }
    if !curve.lies_in(t)? {
        return Err(Error::TheoremViolation(format!(
            "tangent to order >= {threshold} but not contained"
        )));
    }
    Ok(true)
}
