//! Lines and irreducible plane conics in three-space.
//!
//! Every curve carries both a rational parametrization `s -> num(s)/den(s)`
//! and a complete-intersection pair `(P, Q)` whose common zero set is the
//! curve. Lines are cut out by two planes; conics by their plane and a
//! quadric.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mpoly::{cross, MPoly, Monomial};
use crate::unipoly::{RootFinding, UniPoly};

pub type Point3<F> = [F; 3];

/// Pair `(P, Q)` of degree at most `degree_bound` each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIPair<F: Field> {
    pub p: MPoly<F>,
    pub q: MPoly<F>,
    pub degree_bound: u32,
}

impl<F: Field> CIPair<F> {
    pub fn new(p: MPoly<F>, q: MPoly<F>) -> Result<Self> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::InvalidArgument(
                "complete-intersection pair with a zero member".into(),
            ));
        }
        if p.arity() != 3 || q.arity() != 3 {
            return Err(Error::ArityMismatch(p.arity().max(q.arity()), 3));
        }
        let degree_bound = p.degree().unwrap().max(q.degree().unwrap());
        Ok(CIPair { p, q, degree_bound })
    }

    /// `grad P x grad Q`, the tangent field of the curve.
    pub fn tangent_field(&self) -> Result<[MPoly<F>; 3]> {
        cross(&self.p.gradient()?, &self.q.gradient()?)
    }

    pub fn tangent_at(&self, z: &Point3<F>) -> Result<Point3<F>> {
        let t = self.tangent_field()?;
        Ok([t[0].eval(z)?, t[1].eval(z)?, t[2].eval(z)?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Line,
    Conic,
}

/// Parameter of a curve point: a finite `s`, or the limit `s -> infinity`
/// (the one affine point of a conic not reached by finite parameters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue<F> {
    Finite(F),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ConicFrame<F: Field> {
    seed: Point3<F>,
    u: Point3<F>,
    w: Point3<F>,
    // restricted quadric Q(seed + a u + b w) = l1 a + l2 b + b11 a^2 + b12 a b + b22 b^2
    l: [F; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatCurve<F: Field> {
    kind: CurveKind,
    num: [UniPoly<F>; 3],
    den: UniPoly<F>,
    ci: CIPair<F>,
    frame: Option<ConicFrame<F>>,
}

fn sub3<F: Field>(a: &Point3<F>, b: &Point3<F>) -> Point3<F> {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

pub fn is_zero3<F: Field>(v: &Point3<F>) -> bool {
    v.iter().all(|c| c.is_zero())
}

impl<F: Field> RatCurve<F> {
    /// Line `point + s * dir`.
    pub fn line(point: Point3<F>, dir: Point3<F>) -> Result<Self> {
        let ctx = point[0].ctx();
        let Some(k) = dir.iter().position(|c| !c.is_zero()) else {
            return Err(Error::DegenerateLine);
        };
        let x = |i| MPoly::var(i, 3, &ctx);
        let c = |v: &F| MPoly::constant(v.clone(), 3);
        let mut planes = Vec::new();
        for j in (0..3).filter(|&j| j != k) {
            // dir_j (x_k - a_k) - dir_k (x_j - a_j)
            let pl =
                (&(&x(k) - &c(&point[k])).scale(&dir[j])) - &(&x(j) - &c(&point[j])).scale(&dir[k]);
            planes.push(pl.monic());
        }
        let q = planes.pop().unwrap();
        let p = planes.pop().unwrap();
        let num = std::array::from_fn(|i| UniPoly::linear(point[i].clone(), dir[i].clone()));
        Ok(RatCurve {
            kind: CurveKind::Line,
            num,
            den: UniPoly::constant(F::one(&ctx)),
            ci: CIPair::new(p, q)?,
            frame: None,
        })
    }

    /// Line through two distinct points, parametrized `a + s (b - a)`.
    pub fn line_through(a: &Point3<F>, b: &Point3<F>) -> Result<Self> {
        let d = sub3(b, a);
        if is_zero3(&d) {
            return Err(Error::DegenerateLine);
        }
        Self::line(a.clone(), d)
    }

    /// Conic `plane ∩ quadric`, parametrized by the pencil of lines through
    /// `seed` inside the plane.
    pub fn conic_from(plane: &MPoly<F>, quadric: &MPoly<F>, seed: &Point3<F>) -> Result<Self> {
        if plane.arity() != 3 || quadric.arity() != 3 {
            return Err(Error::ArityMismatch(plane.arity().max(quadric.arity()), 3));
        }
        if plane.degree() != Some(1) || quadric.degree() != Some(2) {
            return Err(Error::InvalidArgument(
                "conic needs a degree-1 plane and a degree-2 quadric".into(),
            ));
        }
        let ctx = plane.ctx().clone();
        if F::characteristic(&ctx) == 2 {
            return Err(Error::Unsupported("conics in characteristic 2".into()));
        }
        if !plane.eval(seed)?.is_zero() || !quadric.eval(seed)?.is_zero() {
            return Err(Error::SeedNotOnCurve);
        }
        let normal: Vec<F> = (0..3).map(|i| plane.coeff(&Monomial::var(i))).collect();
        let basis = Matrix::from_rows(vec![normal], 3, &ctx)?.nullspace();
        let u: Point3<F> = basis[0].clone().try_into().unwrap();
        let w: Point3<F> = basis[1].clone().try_into().unwrap();

        // restrict the quadric to seed + a u + b w
        let subs: Vec<MPoly<F>> = (0..3)
            .map(|i| {
                MPoly::from_terms(
                    2,
                    &ctx,
                    [
                        (Monomial::one(), seed[i].clone()),
                        (Monomial::var(0), u[i].clone()),
                        (Monomial::var(1), w[i].clone()),
                    ],
                )
            })
            .collect();
        let r = quadric.substitute(&subs)?;
        let co = |e: &[u16]| r.coeff(&Monomial::from_exps(e));
        let (l1, l2) = (co(&[1, 0]), co(&[0, 1]));
        let (b11, b12, b22) = (co(&[2, 0]), co(&[1, 1]), co(&[0, 2]));
        debug_assert!(co(&[0, 0]).is_zero());
        if b11.is_zero() && b12.is_zero() && b22.is_zero() {
            return Err(Error::ReducibleConic);
        }
        let two = F::from_i64(2, &ctx);
        let z = F::zero(&ctx);
        let m = Matrix::from_rows(
            vec![
                vec![two.clone() * b11.clone(), b12.clone(), l1.clone()],
                vec![b12.clone(), two * b22.clone(), l2.clone()],
                vec![l1.clone(), l2.clone(), z],
            ],
            3,
            &ctx,
        )?;
        if m.determinant()?.is_zero() {
            return Err(Error::ReducibleConic);
        }

        // direction v(s) = w - s u, i.e. (a, b) = (-s, 1)
        let lv = UniPoly::linear(l2.clone(), -l1.clone());
        let den = UniPoly::new(vec![b22, -b12, b11], &ctx);
        let num = std::array::from_fn(|i| {
            let vi = UniPoly::linear(w[i].clone(), -u[i].clone());
            den.scale(&seed[i]).sub(&lv.mul(&vi))
        });
        let curve = RatCurve {
            kind: CurveKind::Conic,
            num,
            den,
            ci: CIPair::new(plane.clone(), quadric.clone())?,
            frame: Some(ConicFrame {
                seed: seed.clone(),
                u,
                w,
                l: [l1, l2],
            }),
        };
        debug_assert!(curve.lies_in(plane)? && curve.lies_in(quadric)?);
        Ok(curve)
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            CurveKind::Line => 1,
            CurveKind::Conic => 2,
        }
    }

    pub fn ci(&self) -> &CIPair<F> {
        &self.ci
    }

    pub fn num(&self) -> &[UniPoly<F>; 3] {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn ctx(&self) -> F::Ctx {
        self.den.ctx().clone()
    }

    /// Point for a finite parameter, `None` where the denominator vanishes.
    pub fn point_at(&self, s: &F) -> Option<Point3<F>> {
        let d = self.den.eval(s);
        let dinv = d.inv().ok()?;
        Some(std::array::from_fn(|i| self.num[i].eval(s) * dinv.clone()))
    }

    /// The affine point reached as `s -> infinity`, if any.
    pub fn point_at_infinity(&self) -> Option<Point3<F>> {
        match self.kind {
            CurveKind::Line => None,
            CurveKind::Conic => {
                let d2 = self.den.coeff(2);
                let inv = d2.inv().ok()?;
                Some(std::array::from_fn(|i| self.num[i].coeff(2) * inv.clone()))
            }
        }
    }

    pub fn point(&self, s: &ParamValue<F>) -> Option<Point3<F>> {
        match s {
            ParamValue::Finite(s) => self.point_at(s),
            ParamValue::Infinity => self.point_at_infinity(),
        }
    }

    /// Zero-set membership: `P(z) = Q(z) = 0`.
    pub fn contains(&self, z: &Point3<F>) -> Result<bool> {
        Ok(self.ci.p.eval(z)?.is_zero() && self.ci.q.eval(z)?.is_zero())
    }

    /// Parameter of a point on the curve.
    pub fn locate(&self, z: &Point3<F>) -> Result<ParamValue<F>> {
        if !self.contains(z)? {
            return Err(Error::PointNotOnCurve);
        }
        let found = match &self.frame {
            None => {
                let k = (0..3).find(|&i| !self.num[i].coeff(1).is_zero()).unwrap();
                let s = (z[k].clone() - self.num[k].coeff(0)).div(&self.num[k].coeff(1))?;
                ParamValue::Finite(s)
            }
            Some(fr) => {
                // z - seed = alpha u + beta w, and the direction w - s u
                let d = sub3(z, &fr.seed);
                let ctx = self.ctx();
                let m = Matrix::from_rows(
                    (0..3)
                        .map(|i| vec![fr.u[i].clone(), fr.w[i].clone()])
                        .collect(),
                    2,
                    &ctx,
                )?;
                let ab = m.solve(&d)?.ok_or(Error::PointNotOnCurve)?;
                let (alpha, beta) = (&ab[0], &ab[1]);
                if !beta.is_zero() {
                    ParamValue::Finite(-alpha.div(beta)?)
                } else if !alpha.is_zero() {
                    ParamValue::Infinity
                } else if !fr.l[0].is_zero() {
                    // seed: the tangent direction, L(w - s u) = 0
                    ParamValue::Finite(fr.l[1].div(&fr.l[0])?)
                } else {
                    ParamValue::Infinity
                }
            }
        };
        match self.point(&found) {
            Some(p) if &p == z => Ok(found),
            _ => Err(Error::PointNotParametrized),
        }
    }

    /// Parametrization re-centred so that `z` sits at parameter 0. For the
    /// point at infinity the parameter is inverted first.
    pub fn local_param(&self, z: &Point3<F>) -> Result<([UniPoly<F>; 3], UniPoly<F>, F)> {
        let ctx = self.ctx();
        match self.locate(z)? {
            ParamValue::Finite(s0) => Ok((self.num.clone(), self.den.clone(), s0)),
            ParamValue::Infinity => Ok((
                std::array::from_fn(|i| self.num[i].reversed(2)),
                self.den.reversed(2),
                F::zero(&ctx),
            )),
        }
    }

    /// `T` restricted to the curve with the denominator cleared.
    pub fn restrict(&self, t: &MPoly<F>) -> Result<UniPoly<F>> {
        t.compose_param_homog(&self.num, &self.den)
    }

    /// Whether the curve lies in `Z(t)`.
    pub fn lies_in(&self, t: &MPoly<F>) -> Result<bool> {
        Ok(self.restrict(t)?.is_zero())
    }

    /// Equality as point sets.
    pub fn same_curve(&self, o: &Self) -> Result<bool> {
        Ok(self.lies_in(&o.ci.p)?
            && self.lies_in(&o.ci.q)?
            && o.lies_in(&self.ci.p)?
            && o.lies_in(&self.ci.q)?)
    }

    /// `count` distinct points, at parameters 0, 1, 2, ... skipping poles.
    pub fn sample_points(&self, count: usize) -> Result<Vec<Point3<F>>> {
        let ctx = self.ctx();
        let p = F::characteristic(&ctx);
        let mut out = Vec::with_capacity(count);
        let mut s: u64 = 0;
        while out.len() < count {
            if p != 0 && s >= p {
                return Err(Error::FieldTooSmall(format!(
                    "need {count} distinct points on a curve over F_{p}"
                )));
            }
            if let Some(pt) = self.point_at(&F::from_i64(s as i64, &ctx)) {
                out.push(pt);
            }
            s += 1;
        }
        Ok(out)
    }

    /// Regularity test: `grad P(z) x grad Q(z) != 0`.
    pub fn is_regular_at(&self, z: &Point3<F>) -> Result<bool> {
        if !self.contains(z)? {
            return Err(Error::PointNotOnCurve);
        }
        Ok(!is_zero3(&self.ci.tangent_at(z)?))
    }

    pub fn to_spec(&self) -> CurveSpec {
        let txt = |v: &F| ScalarText::Text(v.to_string());
        match &self.frame {
            None => CurveSpec::Line {
                point: self.num.iter().map(|n| txt(&n.coeff(0))).collect(),
                dir: self.num.iter().map(|n| txt(&n.coeff(1))).collect(),
            },
            Some(fr) => CurveSpec::Conic {
                plane: self.ci.p.to_string(),
                quadric: self.ci.q.to_string(),
                seed: fr.seed.iter().map(txt).collect(),
            },
        }
    }
}

impl<F: Field> Serialize for RatCurve<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

/// Whether `γ ⊂ Z(T)`.
pub fn curve_in_surface<F: Field>(curve: &RatCurve<F>, t: &MPoly<F>) -> Result<bool> {
    curve.lies_in(t)
}

/// All affine intersection points of two distinct curves, sorted.
pub fn intersect_curves<F: RootFinding>(
    a: &RatCurve<F>,
    b: &RatCurve<F>,
) -> Result<Vec<Point3<F>>> {
    let gp = a.restrict(&b.ci.p)?;
    let gq = a.restrict(&b.ci.q)?;
    let g = gp.gcd(&gq);
    if g.is_zero() {
        return Err(Error::InfiniteIntersection);
    }
    let mut pts = Vec::new();
    if g.degree().unwrap() > 0 {
        for s in F::roots(&g, 0)? {
            if let Some(pt) = a.point_at(&s) {
                pts.push(pt);
            }
        }
    }
    if let Some(pt) = a.point_at_infinity() {
        if b.contains(&pt)? {
            pts.push(pt);
        }
    }
    for pt in &pts {
        if !(a.contains(pt)? && b.contains(pt)?) {
            return Err(Error::TheoremViolation(
                "intersection point off a curve".into(),
            ));
        }
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Scalar in the curve JSON schema: a JSON integer or a string such as
/// `"-3/5"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn to_field<F: Field>(&self, ctx: &F::Ctx) -> Result<F> {
        match self {
            ScalarText::Int(n) => Ok(F::from_i64(*n, ctx)),
            ScalarText::Text(s) => F::parse(s, ctx),
        }
    }
}

/// JSON form of a curve:
/// `{"kind":"line","point":[..],"dir":[..]}` or
/// `{"kind":"conic","plane":"..","quadric":"..","seed":[..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveSpec {
    Line {
        point: Vec<ScalarText>,
        dir: Vec<ScalarText>,
    },
    Conic {
        plane: String,
        quadric: String,
        seed: Vec<ScalarText>,
    },
}

pub fn point_from_text<F: Field>(v: &[ScalarText], ctx: &F::Ctx) -> Result<Point3<F>> {
    if v.len() != 3 {
        return Err(Error::ArityMismatch(v.len(), 3));
    }
    Ok([
        v[0].to_field(ctx)?,
        v[1].to_field(ctx)?,
        v[2].to_field(ctx)?,
    ])
}

impl CurveSpec {
    pub fn build<F: Field>(&self, ctx: &F::Ctx) -> Result<RatCurve<F>> {
        match self {
            CurveSpec::Line { point, dir } => {
                RatCurve::line(point_from_text(point, ctx)?, point_from_text(dir, ctx)?)
            }
            CurveSpec::Conic {
                plane,
                quadric,
                seed,
            } => RatCurve::conic_from(
                &MPoly::parse(plane, 3, ctx)?,
                &MPoly::parse(quadric, 3, ctx)?,
                &point_from_text(seed, ctx)?,
            ),
        }
    }
}
