#![allow(dead_code)]

use curvelab_core::curves::{Point3, RatCurve};
use curvelab_core::mpoly::{monomials_up_to, MPoly};
use curvelab_core::unipoly::{uni_roots, RootFinding, UniPoly};
use curvelab_core::{Field, Fp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fp(v: [i64; 3], p: u64) -> Point3<Fp> {
    v.map(|x| Fp::from_i64_mod(x, p))
}

/// Every monomial of degree `<= deg` with a random coefficient.
pub fn dense_poly<F: Field>(rng: &mut ChaCha8Rng, ctx: &F::Ctx, deg: u32) -> MPoly<F> {
    MPoly::from_terms(
        3,
        ctx,
        monomials_up_to(3, deg)
            .into_iter()
            .map(|m| (m, F::random(ctx, rng))),
    )
}

pub fn sparse_poly<F: Field>(
    rng: &mut ChaCha8Rng,
    ctx: &F::Ctx,
    deg: u32,
    terms: usize,
) -> MPoly<F> {
    let monos = monomials_up_to(3, deg);
    MPoly::from_terms(
        3,
        ctx,
        (0..terms).map(|_| (monos[rng.gen_range(0..monos.len())], F::random(ctx, rng))),
    )
}

pub fn random_point<F: Field>(rng: &mut ChaCha8Rng, ctx: &F::Ctx) -> Point3<F> {
    std::array::from_fn(|_| F::random(ctx, rng))
}

pub fn random_line<F: Field>(rng: &mut ChaCha8Rng, ctx: &F::Ctx) -> RatCurve<F> {
    loop {
        let dir: Point3<F> = random_point(rng, ctx);
        if dir.iter().any(|c| !c.is_zero()) {
            return RatCurve::line(random_point(rng, ctx), dir).unwrap();
        }
    }
}

/// A random surface of degree `d` containing a random line:
/// `T = P·A + Q·B` for the line's two planes `P, Q`.
pub fn surface_with_line<F: Field>(
    rng: &mut ChaCha8Rng,
    ctx: &F::Ctx,
    d: u32,
) -> (MPoly<F>, RatCurve<F>) {
    let line = random_line(rng, ctx);
    let a = dense_poly(rng, ctx, d - 1);
    let b = dense_poly(rng, ctx, d - 1);
    let t = &(&line.ci().p * &a) + &(&line.ci().q * &b);
    (t, line)
}

/// Points of `Z(T)` found by solving for `x3` over random `(x1, x2)`.
pub fn surface_points<F: RootFinding>(
    rng: &mut ChaCha8Rng,
    t: &MPoly<F>,
    count: usize,
) -> Vec<Point3<F>> {
    let ctx = t.ctx().clone();
    let mut out = Vec::new();
    while out.len() < count {
        let (a, b) = (F::random(&ctx, rng), F::random(&ctx, rng));
        let phi = [
            UniPoly::constant(a.clone()),
            UniPoly::constant(b.clone()),
            UniPoly::x(&ctx),
        ];
        let g = t.compose_param(&phi).unwrap();
        if g.is_zero() || g.degree() == Some(0) {
            continue;
        }
        if let Some(c) = uni_roots(&g).unwrap().into_iter().next() {
            out.push([a, b, c]);
        }
    }
    out
}

/// A linear form vanishing at `z` and not at `z + dir`.
pub fn transversal_form<F: Field>(
    rng: &mut ChaCha8Rng,
    z: &Point3<F>,
    dir: &Point3<F>,
) -> MPoly<F> {
    let ctx = z[0].ctx();
    loop {
        let g: Point3<F> = random_point(rng, &ctx);
        let along = (0..3).fold(F::zero(&ctx), |acc, i| acc + g[i].clone() * dir[i].clone());
        if along.is_zero() {
            continue;
        }
        let mut l = MPoly::zero(3, &ctx);
        for i in 0..3 {
            let xi = &MPoly::var(i, 3, &ctx) - &MPoly::constant(z[i].clone(), 3);
            l = &l + &xi.scale(&g[i]);
        }
        return l;
    }
}

/// What a constructed tangency case should report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Contained,
    Order(i64),
}

/// `T = P·A + Q·B + ℓ^k` for the pair `(P, Q)` of `curve`: tangency order
/// `k - 1` at `z` when `ℓ` meets the curve simply there; `k = 0` gives a
/// constant offset and order `-1`; no offset gives a contained curve.
pub fn tangency_surface<F: Field>(
    rng: &mut ChaCha8Rng,
    curve: &RatCurve<F>,
    z: &Point3<F>,
    deg_t: u32,
    k: Option<u32>,
) -> MPoly<F> {
    let ctx = z[0].ctx();
    let pair = curve.ci();
    let dp = pair.p.degree().unwrap();
    let dq = pair.q.degree().unwrap();
    let a = dense_poly(rng, &ctx, deg_t - dp);
    let b = dense_poly(rng, &ctx, deg_t - dq);
    let base = &(&pair.p * &a) + &(&pair.q * &b);
    match k {
        None => base,
        Some(0) => {
            let mut c = F::random(&ctx, rng);
            while c.is_zero() {
                c = F::random(&ctx, rng);
            }
            &base + &MPoly::constant(c, 3)
        }
        Some(k) => {
            let tangent = pair.tangent_at(z).unwrap();
            let l = transversal_form(rng, z, &tangent);
            &base + &l.try_pow(k).unwrap()
        }
    }
}

/// A random line, a point on it, and a surface of degree `deg_t` with a
/// prescribed relation to the line at that point.
pub fn line_case<F: Field>(
    rng: &mut ChaCha8Rng,
    ctx: &F::Ctx,
    deg_t: u32,
) -> (MPoly<F>, RatCurve<F>, Point3<F>, Expect) {
    let line = random_line(rng, ctx);
    let z = line.point_at(&F::random(ctx, rng)).unwrap();
    let k = rng.gen_range(0..=deg_t + 1);
    let (k, expect) = if k == deg_t + 1 {
        (None, Expect::Contained)
    } else {
        (Some(k), Expect::Order(k as i64 - 1))
    };
    let t = tangency_surface(rng, &line, &z, deg_t, k);
    (t, line, z, expect)
}

/// A random conic through a random point, regular there.
pub fn random_conic<F: Field>(rng: &mut ChaCha8Rng, ctx: &F::Ctx) -> (RatCurve<F>, Point3<F>) {
    loop {
        let z: Point3<F> = random_point(rng, ctx);
        let normal_probe: Point3<F> = random_point(rng, ctx);
        let plane = transversal_form(rng, &z, &normal_probe);
        let q = dense_poly(rng, ctx, 2);
        let q = &q - &MPoly::constant(q.eval(&z).unwrap(), 3);
        if q.degree() != Some(2) {
            continue;
        }
        let Ok(c) = RatCurve::conic_from(&plane, &q, &z) else {
            continue;
        };
        if c.is_regular_at(&z).unwrap() {
            return (c, z);
        }
    }
}
