//! Flecnodal points: points of `Z(T)` through which some line meets the
//! surface to order at least `r`.
//!
//! Pointwise questions are answered by exact enumeration of the directions
//! `v` with `c_1(v) = ... = c_r(v) = 0`, where `T(z + s v) = Σ c_j(v) s^j / j!`.
//! The classical `r = 3` locus is cut out symbolically by Salmon's flecnode
//! polynomial, computed here as a Macaulay resultant of `(c_1, c_2, c_3)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{Point3, RatCurve};
use crate::error::{Error, Result};
use crate::field::{factorial, Field};
use crate::linalg::Matrix;
use crate::mpoly::{monomials_of_degree, MPoly, Monomial};
use crate::tangency::order_via_restriction;
use crate::unipoly::{RootFinding, UniPoly};

/// Largest characteristic for which whole-plane slicing is attempted.
pub const SLICE_LIMIT: u64 = 1 << 20;
/// Largest number of directions materialized as a list.
pub const LIST_LIMIT: u128 = 1 << 20;
/// Largest characteristic accepted by the literal scan.
pub const SCAN_LIMIT: u64 = 1 << 11;

/// `c_j(v) = j! · [s^j] T(z + s v)` for `j = 1..=r`, as forms in `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionalForms<F: Field> {
    pub z: Point3<F>,
    pub forms: Vec<MPoly<F>>,
}

pub fn directional_forms<F: Field>(
    t: &MPoly<F>,
    z: &Point3<F>,
    r: u32,
) -> Result<DirectionalForms<F>> {
    F::check_order(t.ctx(), r as u64)?;
    let local = t.shift(z)?;
    let forms = (1..=r)
        .map(|j| {
            local
                .homogeneous_part(j)
                .scale(&factorial(j as u64, t.ctx()))
        })
        .collect();
    Ok(DirectionalForms {
        z: z.clone(),
        forms,
    })
}

impl<F: Field> DirectionalForms<F> {
    fn all_vanish(&self, v: &Point3<F>) -> Result<bool> {
        for c in &self.forms {
            if !c.eval(v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize_direction<F: Field>(v: &Point3<F>) -> Option<Point3<F>> {
    let lead = v.iter().find(|c| !c.is_zero())?.inv().ok()?;
    Some(v.clone().map(|c| c * lead.clone()))
}

/// Solutions of the forms in projective direction space, in pieces:
/// isolated points and affine lines `{base + b·dir}`.
struct DirectionSet<F: Field> {
    points: Vec<Point3<F>>,
    lines: Vec<(Point3<F>, Point3<F>)>,
}

impl<F: Field> DirectionSet<F> {
    /// `u128::MAX` stands for infinitely many (characteristic zero).
    fn count(&self, p: u64) -> u128 {
        if !self.lines.is_empty() && p == 0 {
            return u128::MAX;
        }
        self.points.len() as u128 + self.lines.len() as u128 * p as u128
    }

    fn list(&self, ctx: &F::Ctx) -> Result<Vec<Point3<F>>> {
        let p = F::characteristic(ctx);
        if self.count(p) > LIST_LIMIT {
            return Err(Error::WorkLimit(format!(
                "more than {LIST_LIMIT} directions"
            )));
        }
        let mut out: Vec<Point3<F>> = self.points.iter().filter_map(normalize_direction).collect();
        for (base, dir) in &self.lines {
            for b in 0..p {
                let b = F::from_i64(b as i64, ctx);
                let v: Point3<F> =
                    std::array::from_fn(|i| base[i].clone() + b.clone() * dir[i].clone());
                out.extend(normalize_direction(&v));
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Parameters `b` with all forms vanishing at `base + b·dir`; `None` when
/// every `b` works.
fn solve_on_line<F: RootFinding>(
    forms: &[MPoly<F>],
    base: &Point3<F>,
    dir: &Point3<F>,
) -> Result<Option<Vec<F>>> {
    let phi: Vec<UniPoly<F>> = (0..3)
        .map(|i| UniPoly::linear(base[i].clone(), dir[i].clone()))
        .collect();
    let mut g: Option<UniPoly<F>> = None;
    for c in forms {
        let h = c.compose_param(&phi)?;
        if h.is_zero() {
            continue;
        }
        g = Some(match g {
            None => h,
            Some(g) => g.gcd(&h),
        });
    }
    match g {
        None => Ok(None),
        Some(g) => Ok(Some(F::roots(&g, 0)?)),
    }
}

fn enumerate_directions<F: RootFinding>(df: &DirectionalForms<F>) -> Result<DirectionSet<F>> {
    let ctx = df.z[0].ctx();
    let zero = F::zero(&ctx);
    let one = F::one(&ctx);
    let mut set = DirectionSet {
        points: vec![],
        lines: vec![],
    };
    if let Some(c1) = df.forms.first().filter(|c| !c.is_zero()) {
        // c1 = a·v; its zero set is the projective line through u and w
        let a: Vec<F> = (0..3).map(|i| c1.coeff(&Monomial::var(i))).collect();
        let kernel = Matrix::from_rows(vec![a], 3, &ctx)?.nullspace();
        let u: Point3<F> = kernel[0].clone().try_into().unwrap();
        let w: Point3<F> = kernel[1].clone().try_into().unwrap();
        match solve_on_line(&df.forms[1..], &u, &w)? {
            None => set.lines.push((u, w.clone())),
            Some(ts) => {
                for t in ts {
                    set.points.push(std::array::from_fn(|i| {
                        u[i].clone() + t.clone() * w[i].clone()
                    }));
                }
            }
        }
        if df.all_vanish(&w)? {
            set.points.push(w);
        }
        return Ok(set);
    }
    // no linear condition: slice the direction plane by v1 = 1, then v1 = 0
    let forms = &df.forms;
    let p = F::characteristic(&ctx);
    if p == 0 || p > SLICE_LIMIT {
        return Err(Error::WorkLimit(
            "direction enumeration at a singular point needs a small prime".into(),
        ));
    }
    let e3 = [zero.clone(), zero.clone(), one.clone()];
    let mut bases: Vec<Point3<F>> = (0..p)
        .map(|a| [one.clone(), F::from_i64(a as i64, &ctx), zero.clone()])
        .collect();
    bases.push([zero.clone(), one.clone(), zero.clone()]);
    for base in bases {
        match solve_on_line(forms, &base, &e3)? {
            None => set.lines.push((base, e3.clone())),
            Some(bs) => {
                for b in bs {
                    set.points.push(std::array::from_fn(|i| {
                        base[i].clone() + b.clone() * e3[i].clone()
                    }));
                }
            }
        }
    }
    if df.all_vanish(&e3)? {
        set.points.push(e3);
    }
    Ok(set)
}

fn surface_forms<F: Field>(t: &MPoly<F>, z: &Point3<F>, r: u32) -> Result<DirectionalForms<F>> {
    if !t.eval(z)?.is_zero() {
        return Err(Error::InvalidArgument("point is not on the surface".into()));
    }
    directional_forms(t, z, r)
}

/// All projective directions `v` (first nonzero coordinate 1, sorted) with
/// `c_1(v) = ... = c_r(v) = 0`: the lines through `z` tangent to `Z(T)` to
/// order at least `r`.
pub fn flecnodal_directions<F: RootFinding>(
    t: &MPoly<F>,
    z: &Point3<F>,
    r: u32,
) -> Result<Vec<Point3<F>>> {
    let df = surface_forms(t, z, r)?;
    enumerate_directions(&df)?.list(t.ctx())
}

/// Number of such directions; `u128::MAX` for infinitely many.
pub fn count_flecnodal_directions<F: RootFinding>(
    t: &MPoly<F>,
    z: &Point3<F>,
    r: u32,
) -> Result<u128> {
    let df = surface_forms(t, z, r)?;
    Ok(enumerate_directions(&df)?.count(F::characteristic(t.ctx())))
}

/// Literal scan of the `p² + p + 1` projective directions.
pub fn flecnodal_directions_scan<F: Field>(
    t: &MPoly<F>,
    z: &Point3<F>,
    r: u32,
) -> Result<Vec<Point3<F>>> {
    let df = surface_forms(t, z, r)?;
    let ctx = t.ctx();
    let p = F::characteristic(ctx);
    if p == 0 || p > SCAN_LIMIT {
        return Err(Error::WorkLimit(format!(
            "direction scan needs 0 < p <= {SCAN_LIMIT}"
        )));
    }
    let e = |n: u64| F::from_i64(n as i64, ctx);
    let mut reps = vec![[e(0), e(0), e(1)]];
    for b in 0..p {
        reps.push([e(0), e(1), e(b)]);
        for a in 0..p {
            reps.push([e(1), e(a), e(b)]);
        }
    }
    let mut out = Vec::new();
    for v in reps {
        if df.all_vanish(&v)? {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlecReport<F: Field> {
    pub point: Point3<F>,
    pub r: u32,
    pub directions: Vec<Point3<F>>,
    pub count_distinct: usize,
}

pub fn flec_report<F: RootFinding>(t: &MPoly<F>, z: &Point3<F>, r: u32) -> Result<FlecReport<F>> {
    let directions = flecnodal_directions(t, z, r)?;
    Ok(FlecReport {
        point: z.clone(),
        r,
        count_distinct: directions.len(),
        directions,
    })
}

/// Whether at least `count` distinct lines through `z` are tangent to
/// `Z(T)` to order at least `r`.
pub fn is_flecnodal<F: RootFinding>(
    t: &MPoly<F>,
    z: &Point3<F>,
    count: u32,
    r: u32,
) -> Result<bool> {
    Ok(count_flecnodal_directions(t, z, r)? >= count as u128)
}

/// The same question over an explicit family: at least `count` distinct
/// members pass through `z` and are tangent there to order at least `r`.
pub fn is_flecnodal_among<F: Field>(
    t: &MPoly<F>,
    z: &Point3<F>,
    count: u32,
    r: u32,
    curves: &[RatCurve<F>],
) -> Result<bool> {
    if !t.eval(z)?.is_zero() {
        return Err(Error::InvalidArgument("point is not on the surface".into()));
    }
    let mut witnesses: Vec<&RatCurve<F>> = Vec::new();
    for c in curves {
        if !c.contains(z)? {
            continue;
        }
        if !order_via_restriction(t, c, z, r)?.is_at_least(r as i64) {
            continue;
        }
        let mut fresh = true;
        for w in &witnesses {
            if w.same_curve(c)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            witnesses.push(c);
        }
    }
    Ok(witnesses.len() >= count as usize)
}

/// Decides flecnodality through the `r`-jet of `T` at `z` and through `T`
/// itself; the two verdicts must agree.
pub fn jet_determines<F: RootFinding>(
    t: &MPoly<F>,
    z: &Point3<F>,
    count: u32,
    r: u32,
) -> Result<bool> {
    let jet = t.jet(z, r)?.poly;
    let via_jet = is_flecnodal(&jet, z, count, r)?;
    let direct = is_flecnodal(t, z, count, r)?;
    if via_jet != direct {
        return Err(Error::TheoremViolation(
            "jet and polynomial disagree on flecnodality".into(),
        ));
    }
    Ok(direct)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SalmonResult<F: Field> {
    /// Vanishes at every flecnodal point of `Z(T)`.
    pub poly: MPoly<F>,
    /// `deg T < 3`: the cubic form vanishes and so does the resultant.
    pub degenerate: bool,
    /// Degree of the affine resultant before reduction modulo `T`.
    pub resultant_degree: Option<u32>,
    pub degree: Option<u32>,
    /// The resultant was brought to degree `<= 11 deg T - 24` modulo `T`.
    pub reduced: bool,
    pub grid_size: usize,
    /// Nodes where `∂T/∂x1 = 0` forced a permutation of direction variables.
    pub permuted_nodes: usize,
    /// Nodes with `∇T = 0`, where the resultant is zero.
    pub singular_nodes: usize,
}

/// Coefficients, as polynomials in `x`, of `c_j(v) = Σ (j!/I!) ∂^I T v^I`.
type SymbolicForm<F> = Vec<(Monomial, MPoly<F>)>;

fn symbolic_forms<F: Field>(t: &MPoly<F>) -> Result<Vec<SymbolicForm<F>>> {
    let ctx = t.ctx();
    let mut out = Vec::new();
    for j in 1..=3u32 {
        let mut form = Vec::new();
        for m in monomials_of_degree(3, j) {
            let mut d = t.clone();
            let mut denom = F::one(ctx);
            for i in 0..3 {
                for _ in 0..m.exp(i) {
                    d = d.partial(i);
                }
                denom *= factorial(m.exp(i) as u64, ctx);
            }
            form.push((m, d.scale(&factorial::<F>(j as u64, ctx).div(&denom)?)));
        }
        out.push(form);
    }
    Ok(out)
}

/// Macaulay resultant of forms of degrees 1, 2, 3 in `(v1, v2, v3)`,
/// given by coefficient maps. The 15×15 matrix lives on degree-4
/// monomials; with `c1 = a·v` the extraneous minor is `a1^4`.
fn resultant_123<F: Field>(c: &[Vec<(Monomial, F)>], ctx: &F::Ctx) -> Result<F> {
    let cols = monomials_of_degree(3, 4);
    let mut m = Matrix::zeros(cols.len(), cols.len(), ctx);
    for (row, mono) in cols.iter().enumerate() {
        let (j, shift) = if mono.exp(0) >= 1 {
            (0, Monomial::var(0))
        } else if mono.exp(1) >= 2 {
            (1, Monomial::from_exps(&[0, 2, 0]))
        } else {
            (2, Monomial::from_exps(&[0, 0, 3]))
        };
        let q = shift.quotient_of(mono);
        for (vm, coeff) in &c[j] {
            let col = cols
                .iter()
                .position(|x| *x == q.checked_mul(vm).unwrap())
                .unwrap();
            m[(row, col)] = coeff.clone();
        }
    }
    let a1 = c[0]
        .iter()
        .find(|(vm, _)| *vm == Monomial::var(0))
        .unwrap()
        .1
        .clone();
    m.determinant()?.div(&a1.pow(4))
}

fn permute_form<F: Field>(form: &[(Monomial, F)], swap: usize) -> Vec<(Monomial, F)> {
    form.iter()
        .map(|(m, c)| {
            let mut e = [m.exp(0), m.exp(1), m.exp(2)];
            e.swap(0, swap);
            (Monomial::from_exps(&e), c.clone())
        })
        .collect()
}

enum NodeKind {
    Plain,
    Permuted,
    Singular,
}

fn resultant_at<F: Field>(
    forms: &[Vec<(Monomial, MPoly<F>)>],
    x: &Point3<F>,
) -> Result<(F, NodeKind)> {
    let ctx = x[0].ctx();
    let mut c: Vec<Vec<(Monomial, F)>> = Vec::with_capacity(3);
    for f in forms {
        c.push(
            f.iter()
                .map(|(m, p)| Ok((*m, p.eval(x)?)))
                .collect::<Result<_>>()?,
        );
    }
    let a: Vec<F> = (0..3)
        .map(|i| {
            c[0].iter()
                .find(|(m, _)| *m == Monomial::var(i))
                .unwrap()
                .1
                .clone()
        })
        .collect();
    let Some(k) = a.iter().position(|v| !v.is_zero()) else {
        return Ok((F::zero(&ctx), NodeKind::Singular));
    };
    if k == 0 {
        return Ok((resultant_123(&c, &ctx)?, NodeKind::Plain));
    }
    // a transposition has determinant -1, and (-1)^(1·2·3) = 1
    let c: Vec<_> = c.iter().map(|f| permute_form(f, k)).collect();
    Ok((resultant_123(&c, &ctx)?, NodeKind::Permuted))
}

/// Coefficients (ascending) of the polynomial through `(xs[i], ys[i])`.
fn interp_1d<F: Field>(xs: &[F], ys: &[F], ctx: &F::Ctx) -> Result<Vec<F>> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] =
                (dd[i].clone() - dd[i - 1].clone()).div(&(xs[i].clone() - xs[i - k].clone()))?;
        }
    }
    let mut poly = UniPoly::zero(ctx);
    for k in (0..n).rev() {
        poly = poly
            .mul(&UniPoly::linear(-xs[k].clone(), F::one(ctx)))
            .add(&UniPoly::constant(dd[k].clone()));
    }
    Ok((0..n).map(|i| poly.coeff(i)).collect())
}

/// Exact quotient of `a` by `b`, or `None` if `b` does not divide `a`.
fn exact_div<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> Result<Option<MPoly<F>>> {
    let (lb, cb) = b.leading_term().expect("nonzero divisor");
    let (lb, cb) = (*lb, cb.clone());
    let mut rest = a.clone();
    let mut q = MPoly::zero(a.arity(), a.ctx());
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (*m, c.clone())) {
        if !lb.divides(&m) {
            return Ok(None);
        }
        let k = c.div(&cb)?;
        let mono = lb.quotient_of(&m);
        rest.add_mul_term(&-k.clone(), &mono, b)?;
        q.add_mul_term(&k, &mono, &MPoly::one(a.arity(), a.ctx()))?;
    }
    Ok(Some(q))
}

/// Subtracts a multiple `T·G` from `res` so that the difference has degree
/// at most `target`, working down through homogeneous parts: at degree `k`
/// the part of `res - T·G` must be divisible by the top form of `T`.
fn reduce_mod_surface<F: Field>(
    res: &MPoly<F>,
    t: &MPoly<F>,
    target: u32,
) -> Result<Option<MPoly<F>>> {
    let d = t.degree().unwrap();
    let top = t.homogeneous_part(d);
    let mut cur = res.clone();
    while let Some(k) = cur.degree().filter(|&k| k > target) {
        let Some(g) = exact_div(&cur.homogeneous_part(k), &top)? else {
            return Ok(None);
        };
        cur = cur.try_sub(&t.try_mul(&g)?)?;
        debug_assert!(cur.degree().is_none_or(|e| e < k));
    }
    Ok(Some(cur))
}

/// Salmon's flecnode polynomial of a surface of degree `d >= 3`.
///
/// The affine Macaulay resultant of `(c_1, c_2, c_3)` has degree at most
/// `6(d-1) + 3(d-2) + 2(d-3) = 11d - 18` in `x`; it is interpolated on a
/// product grid and then reduced modulo `T` to degree `11d - 24` (after
/// homogenizing, the resultant is `x0^6 · Flec` modulo `T`).
pub fn salmon_flecnode<F: Field>(t: &MPoly<F>) -> Result<SalmonResult<F>> {
    if t.arity() != 3 {
        return Err(Error::ArityMismatch(t.arity(), 3));
    }
    let ctx = t.ctx().clone();
    let d = t.degree().unwrap_or(0);
    if d < 3 {
        return Ok(SalmonResult {
            poly: MPoly::zero(3, &ctx),
            degenerate: true,
            resultant_degree: None,
            degree: None,
            reduced: true,
            grid_size: 0,
            permuted_nodes: 0,
            singular_nodes: 0,
        });
    }
    F::check_order(&ctx, 3)?;
    let res_deg = 11 * d - 18;
    let n = res_deg as usize + 1;
    let p = F::characteristic(&ctx);
    if p != 0 && (p as u128) <= n as u128 {
        return Err(Error::FieldTooSmall(format!(
            "need more than {n} field elements"
        )));
    }
    let forms = symbolic_forms(t)?;
    let half = (n / 2) as i64;
    let xs: Vec<F> = (0..n as i64).map(|k| F::from_i64(k - half, &ctx)).collect();

    let nodes: Vec<(F, NodeKind)> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            resultant_at(&forms, &[xs[i].clone(), xs[j].clone(), xs[k].clone()])
        })
        .collect::<Result<_>>()?;
    let permuted_nodes = nodes
        .iter()
        .filter(|(_, k)| matches!(k, NodeKind::Permuted))
        .count();
    let singular_nodes = nodes
        .iter()
        .filter(|(_, k)| matches!(k, NodeKind::Singular))
        .count();

    // tensor interpolation: along x3, then x2, then x1
    let mut vals: Vec<F> = nodes.into_iter().map(|(v, _)| v).collect();
    let at = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for axis in (0..3).rev() {
        let mut next = vals.clone();
        for a in 0..n {
            for b in 0..n {
                let idx = |c: usize| match axis {
                    2 => at(a, b, c),
                    1 => at(a, c, b),
                    _ => at(c, a, b),
                };
                let ys: Vec<F> = (0..n).map(|c| vals[idx(c)].clone()).collect();
                for (c, coef) in interp_1d(&xs, &ys, &ctx)?.into_iter().enumerate() {
                    next[idx(c)] = coef;
                }
            }
        }
        vals = next;
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = vals[at(i, j, k)].clone();
                if !c.is_zero() {
                    if i + j + k > res_deg as usize {
                        return Err(Error::TheoremViolation(
                            "resultant exceeds its degree bound".into(),
                        ));
                    }
                    terms.push((Monomial::from_exps(&[i as u16, j as u16, k as u16]), c));
                }
            }
        }
    }
    let res = MPoly::from_terms(3, &ctx, terms);
    let reduced = reduce_mod_surface(&res, t, 11 * d - 24)?;
    let (poly, ok) = match reduced {
        Some(f) => (f, true),
        None => (res.clone(), false),
    };
    Ok(SalmonResult {
        degree: poly.degree(),
        poly,
        degenerate: false,
        resultant_degree: res.degree(),
        reduced: ok,
        grid_size: n * n * n,
        permuted_nodes,
        singular_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational, ALGEBRA_PRIME};

    fn q(s: &str) -> MPoly<Rational> {
        MPoly::parse(s, 3, &()).unwrap()
    }

    fn fpoly(s: &str, p: u64) -> MPoly<Fp> {
        MPoly::parse(s, 3, &p).unwrap()
    }

    fn fpt(v: [i64; 3], p: u64) -> Point3<Fp> {
        v.map(|x| Fp::from_i64_mod(x, p))
    }

    #[test]
    fn forms_of_saddle() {
        let z = [2, 3, 6].map(Rational::from_integer);
        let df = directional_forms(&q("x1*x2-x3"), &z, 3).unwrap();
        assert_eq!(df.forms[0], q("3*x1+2*x2-x3"));
        assert_eq!(df.forms[1], q("2*x1*x2"));
        assert!(df.forms[2].is_zero());
        let df = directional_forms(&q("4*x1-x2+7"), &z, 4).unwrap();
        assert!(df.forms[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn forms_reproduce_the_expansion() {
        let t = q("x1^3-2*x1*x2*x3+x3^2*x2+5*x1-1");
        let z = [1, -2, 3].map(Rational::from_integer);
        let df = directional_forms(&t, &z, 3).unwrap();
        // c_1 is the gradient pairing
        let g = t.gradient().unwrap();
        let lin = MPoly::from_terms(
            3,
            &(),
            (0..3).map(|i| (Monomial::var(i), g[i].eval(&z).unwrap())),
        );
        assert_eq!(df.forms[0], lin);
        // T(z + v) = T(z) + Σ c_j(v)/j!
        let mut sum = MPoly::constant(t.eval(&z).unwrap(), 3);
        for (j, c) in df.forms.iter().enumerate() {
            sum = sum + c.scale(&factorial::<Rational>(j as u64 + 1, &()).inv().unwrap());
        }
        assert_eq!(sum, t.shift(&z).unwrap());
    }

    #[test]
    fn saddle_rulings() {
        let p = 101;
        let t = fpoly("x1*x2-x3", p);
        let dirs = flecnodal_directions(&t, &fpt([0, 0, 0], p), 3).unwrap();
        assert_eq!(dirs, vec![fpt([0, 1, 0], p), fpt([1, 0, 0], p)]);
        assert_eq!(
            flecnodal_directions_scan(&t, &fpt([0, 0, 0], p), 3).unwrap(),
            dirs
        );
        assert!(is_flecnodal(&t, &fpt([3, 5, 15], p), 2, 3).unwrap());
        assert!(!is_flecnodal(&t, &fpt([3, 5, 15], p), 3, 3).unwrap());
    }

    #[test]
    fn plane_has_a_pencil() {
        let p = 31;
        let t = fpoly("x3", p);
        let dirs = flecnodal_directions(&t, &fpt([0, 0, 0], p), 5).unwrap();
        assert_eq!(dirs.len() as u64, p + 1);
        assert_eq!(
            flecnodal_directions_scan(&t, &fpt([0, 0, 0], p), 5).unwrap(),
            dirs
        );
        let big = fpoly("x3", ALGEBRA_PRIME);
        assert!(is_flecnodal(&big, &fpt([4, 4, 0], ALGEBRA_PRIME), 1, 3).unwrap());
        assert!(flecnodal_directions(&big, &fpt([4, 4, 0], ALGEBRA_PRIME), 3).is_err());
    }

    #[test]
    fn paraboloid_matches_scan() {
        for p in [7u64, 11, 13, 101] {
            let t = fpoly("x3-x1^2-x2^2", p);
            let z = fpt([0, 0, 0], p);
            let scan = flecnodal_directions_scan(&t, &z, 3).unwrap();
            assert_eq!(flecnodal_directions(&t, &z, 3).unwrap(), scan);
            // -1 a square iff isotropic directions exist in v3 = 0
            let iso = (0..p).any(|a| (a * a + 1) % p == 0);
            assert_eq!(is_flecnodal(&t, &z, 1, 3).unwrap(), iso);
        }
    }

    #[test]
    fn singular_point_slicing() {
        let p = 13;
        // cone x1^2 + x2^2 - x3^2 at its vertex: every ruling stays inside
        let t = fpoly("x1^2+x2^2-x3^2", p);
        let z = fpt([0, 0, 0], p);
        assert_eq!(
            flecnodal_directions(&t, &z, 4).unwrap(),
            flecnodal_directions_scan(&t, &z, 4).unwrap()
        );
        let t = fpoly("x1^3+x2^2*x3-x3^3+x1*x2*x3", p);
        assert_eq!(
            flecnodal_directions(&t, &z, 3).unwrap(),
            flecnodal_directions_scan(&t, &z, 3).unwrap()
        );
    }

    #[test]
    fn off_surface_is_an_error() {
        let p = 7;
        assert!(flecnodal_directions(&fpoly("x3-1", p), &fpt([0, 0, 0], p), 3).is_err());
    }

    #[test]
    fn explicit_family() {
        let t = q("x1*x2-x3");
        let z = [0, 0, 0].map(Rational::from_integer);
        let o = z.clone();
        let mk = |d: [i64; 3]| RatCurve::line(o.clone(), d.map(Rational::from_integer)).unwrap();
        let fam = vec![mk([1, 0, 0]), mk([2, 0, 0]), mk([0, 1, 0]), mk([1, 1, 1])];
        assert!(is_flecnodal_among(&t, &z, 2, 3, &fam).unwrap());
        assert!(!is_flecnodal_among(&t, &z, 3, 3, &fam).unwrap());
    }

    #[test]
    fn jets_agree() {
        let p = 101;
        let t = fpoly("x1*x2-x3+x1^4*x3-7*x2^5", p);
        let z = fpt([0, 0, 0], p);
        assert!(jet_determines(&t, &z, 2, 3).unwrap());
        let t = fpoly("x3-x1^2-x2^2+3*x1^3*x2", p);
        jet_determines(&t, &z, 1, 3).unwrap();
    }

    #[test]
    fn salmon_degenerate_cases() {
        for s in ["x1*x2-x3", "x3", "x1^2+x2^2+x3^2-1"] {
            let r = salmon_flecnode(&q(s)).unwrap();
            assert!(r.degenerate && r.poly.is_zero());
        }
    }

    #[test]
    fn macaulay_resultant_vanishing_and_symmetry() {
        let p = 1009;
        let e = |v: i64| Fp::from_i64_mod(v, p);
        let m = |a: [u16; 3]| Monomial::from_exps(&a);
        // v1, v2^2, v3^3 share only the trivial zero
        let c = vec![
            vec![(m([1, 0, 0]), e(1))],
            vec![(m([0, 2, 0]), e(1))],
            vec![(m([0, 0, 3]), e(1))],
        ];
        assert!(!resultant_123(&c, &p).unwrap().is_zero());
        // (1, 1, 0) is a common zero of v1 - v2, v1 v3, v3^3 + v1^2 v3
        let c = vec![
            vec![(m([1, 0, 0]), e(1)), (m([0, 1, 0]), e(-1))],
            vec![(m([1, 0, 1]), e(1))],
            vec![(m([0, 0, 3]), e(1)), (m([2, 0, 1]), e(1))],
        ];
        assert!(resultant_123(&c, &p).unwrap().is_zero());
        // swapping v1 and v2 leaves the resultant unchanged
        let c = vec![
            vec![
                (m([1, 0, 0]), e(3)),
                (m([0, 1, 0]), e(5)),
                (m([0, 0, 1]), e(-2)),
            ],
            vec![
                (m([2, 0, 0]), e(1)),
                (m([1, 1, 0]), e(4)),
                (m([0, 1, 1]), e(-7)),
                (m([0, 0, 2]), e(2)),
            ],
            vec![
                (m([3, 0, 0]), e(2)),
                (m([1, 1, 1]), e(9)),
                (m([0, 2, 1]), e(-1)),
                (m([0, 0, 3]), e(6)),
            ],
        ];
        let swapped: Vec<_> = c.iter().map(|f| permute_form(f, 1)).collect();
        let r = resultant_123(&c, &p).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r, resultant_123(&swapped, &p).unwrap());
    }

    #[test]
    fn interpolation_round_trip() {
        let p = 10007;
        let xs: Vec<Fp> = (0..6).map(|k| Fp::from_i64_mod(k - 3, p)).collect();
        let f = UniPoly::from_i64(&[4, 0, -1, 3, 0, 2], &p);
        let ys: Vec<Fp> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interp_1d(&xs, &ys, &p).unwrap(), f.coeffs().to_vec());
    }
}
