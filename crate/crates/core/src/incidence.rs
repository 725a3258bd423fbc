//! Curve configurations, rich-point censuses, low-degree surface fits,
//! doubly-ruled audits, flecnodal contagion checks and the rich-point
//! versus surface dichotomy.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{intersect_curves, CurveSpec, Point3, RatCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flecnode::{
    count_flecnodal_directions, flecnodal_directions, is_flecnodal, normalize_direction,
};
use crate::interpolate::vanishing_poly_of_degree;
use crate::linalg::Matrix;
use crate::mpoly::{MPoly, Monomial};
use crate::reduce::{degree_reduce, ReductionConfig};
use crate::unipoly::RootFinding;

/// Retries allowed when a randomized generator hits a coincidence.
const GENERATOR_RETRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `m` generic lines in the plane `x3 = 0`.
    CoplanarLines {
        m: usize,
    },
    /// `m` lines through the origin with directions `(1, i, i²)`.
    ConcurrentLines {
        m: usize,
    },
    /// `m` lines from each ruling of `x1 x2 = x3`.
    RegulusRulings {
        m: usize,
    },
    RandomLines {
        m: usize,
    },
    /// The `m²` vertical lines through `(i, j, 0)`.
    GridLines {
        m: usize,
    },
    /// Circles `(x1 - i)² + x2² = m²` in the plane `x3 = 0`.
    CircleFamily {
        m: usize,
    },
    /// `m` generic lines in `x3 = 0` and `m` in `x1 + x2 + x3 = 1`.
    TwoPlanes {
        m: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub generator: Option<GeneratorSpec>,
    pub seed: Option<u64>,
    /// Rich-point count known by construction.
    pub expected_rich_points: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<F: Field> {
    pub name: String,
    pub modulus: u64,
    pub curves: Vec<RatCurve<F>>,
    pub provenance: Provenance,
}

impl<F: Field> Configuration<F> {
    pub fn from_curves(name: &str, curves: Vec<RatCurve<F>>, ctx: &F::Ctx) -> Self {
        Configuration {
            name: name.to_string(),
            modulus: F::characteristic(ctx),
            curves,
            provenance: Provenance {
                generator: None,
                seed: None,
                expected_rich_points: None,
            },
        }
    }

    pub fn specs(&self) -> Vec<CurveSpec> {
        self.curves.iter().map(|c| c.to_spec()).collect()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

fn pt<F: Field>(v: [i64; 3], ctx: &F::Ctx) -> Point3<F> {
    v.map(|x| F::from_i64(x, ctx))
}

fn need_field<F: Field>(ctx: &F::Ctx, needed: u64, what: &str) -> Result<()> {
    let p = F::characteristic(ctx);
    if p != 0 && p < needed {
        return Err(Error::FieldTooSmall(format!(
            "{what} needs p >= {needed}, got {p}"
        )));
    }
    Ok(())
}

/// `m` lines `y = a x + b` in a plane with coordinates given by `embed`,
/// with distinct slopes and pairwise distinct intersection points.
fn generic_planar_lines<F: Field>(
    m: usize,
    ctx: &F::Ctx,
    rng: &mut ChaCha8Rng,
    embed: impl Fn(&F, &F) -> Point3<F>,
) -> Result<Vec<RatCurve<F>>> {
    'retry: for _ in 0..GENERATOR_RETRIES {
        let mut slopes: Vec<F> = Vec::new();
        let mut offsets: Vec<F> = Vec::new();
        while slopes.len() < m {
            let a = F::random(ctx, rng);
            if slopes.contains(&a) {
                continue;
            }
            slopes.push(a);
            offsets.push(F::random(ctx, rng));
        }
        let mut seen = HashSet::new();
        for i in 0..m {
            for j in i + 1..m {
                let x = (offsets[j].clone() - offsets[i].clone())
                    .div(&(slopes[i].clone() - slopes[j].clone()))?;
                let y = slopes[i].clone() * x.clone() + offsets[i].clone();
                if !seen.insert((x, y)) {
                    continue 'retry;
                }
            }
        }
        let one = F::one(ctx);
        let zero = F::zero(ctx);
        return slopes
            .iter()
            .zip(&offsets)
            .map(|(a, b)| {
                let p0 = embed(&zero, b);
                let p1 = embed(&one, &(a.clone() + b.clone()));
                RatCurve::line_through(&p0, &p1)
            })
            .collect();
    }
    Err(Error::FieldTooSmall(format!(
        "no generic arrangement of {m} lines found"
    )))
}

pub fn generate<F: Field>(
    spec: GeneratorSpec,
    ctx: &F::Ctx,
    seed: u64,
) -> Result<Configuration<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, curves, expected, seeded) = match spec {
        GeneratorSpec::CoplanarLines { m } => {
            need_field::<F>(ctx, (m * m) as u64, "coplanar_lines")?;
            let ls = generic_planar_lines(m, ctx, &mut rng, |x: &F, y: &F| {
                [x.clone(), y.clone(), F::zero(ctx)]
            })?;
            (
                "coplanar_lines",
                ls,
                Some(m * m.saturating_sub(1) / 2),
                true,
            )
        }
        GeneratorSpec::ConcurrentLines { m } => {
            need_field::<F>(ctx, m as u64, "concurrent_lines")?;
            let ls = (0..m as i64)
                .map(|i| RatCurve::line(pt([0, 0, 0], ctx), pt([1, i, i * i], ctx)))
                .collect::<Result<Vec<_>>>()?;
            ("concurrent_lines", ls, Some(usize::from(m >= 2)), false)
        }
        GeneratorSpec::RegulusRulings { m } => {
            need_field::<F>(ctx, m as u64 + 1, "regulus_rulings")?;
            let mut ls = Vec::with_capacity(2 * m);
            for c in 1..=m as i64 {
                // (s, c, c s)
                ls.push(RatCurve::line(pt([0, c, 0], ctx), pt([1, 0, c], ctx))?);
            }
            for c in 1..=m as i64 {
                // (c, s, c s)
                ls.push(RatCurve::line(pt([c, 0, 0], ctx), pt([0, 1, c], ctx))?);
            }
            ("regulus_rulings", ls, Some(m * m), false)
        }
        GeneratorSpec::RandomLines { m } => {
            let mut ls: Vec<RatCurve<F>> = Vec::with_capacity(m);
            let mut tries = 0;
            while ls.len() < m {
                tries += 1;
                if tries > m * GENERATOR_RETRIES {
                    return Err(Error::FieldTooSmall(format!(
                        "could not draw {m} distinct lines"
                    )));
                }
                let a: Point3<F> = std::array::from_fn(|_| F::random(ctx, &mut rng));
                let d: Point3<F> = std::array::from_fn(|_| F::random(ctx, &mut rng));
                let Ok(l) = RatCurve::line(a, d) else {
                    continue;
                };
                let mut fresh = true;
                for o in &ls {
                    if o.same_curve(&l)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    ls.push(l);
                }
            }
            ("random_lines", ls, None, true)
        }
        GeneratorSpec::GridLines { m } => {
            need_field::<F>(ctx, m as u64, "grid_lines")?;
            let mut ls = Vec::with_capacity(m * m);
            for i in 0..m as i64 {
                for j in 0..m as i64 {
                    ls.push(RatCurve::line(pt([i, j, 0], ctx), pt([0, 0, 1], ctx))?);
                }
            }
            ("grid_lines", ls, Some(0), false)
        }
        GeneratorSpec::CircleFamily { m } => {
            need_field::<F>(ctx, 2 * m as u64 + 1, "circle_family")?;
            let plane = MPoly::var(2, 3, ctx);
            let mut ls = Vec::with_capacity(m);
            for i in 0..m as i64 {
                let q = MPoly::parse(
                    &format!("x1^2+x2^2-{}*x1+{}", 2 * i, i * i - (m * m) as i64),
                    3,
                    ctx,
                )?;
                ls.push(RatCurve::conic_from(
                    &plane,
                    &q,
                    &pt([i + m as i64, 0, 0], ctx),
                )?);
            }
            ("circle_family", ls, None, false)
        }
        GeneratorSpec::TwoPlanes { m } => {
            need_field::<F>(ctx, (m * m) as u64, "two_planes")?;
            let mut ls = generic_planar_lines(m, ctx, &mut rng, |x: &F, y: &F| {
                [x.clone(), y.clone(), F::zero(ctx)]
            })?;
            let one = F::one(ctx);
            ls.extend(generic_planar_lines(m, ctx, &mut rng, |x: &F, y: &F| {
                [x.clone(), y.clone(), one.clone() - x.clone() - y.clone()]
            })?);
            ("two_planes", ls, None, true)
        }
    };
    Ok(Configuration {
        name: name.to_string(),
        modulus: F::characteristic(ctx),
        curves,
        provenance: Provenance {
            generator: Some(spec),
            seed: seeded.then_some(seed),
            expected_rich_points: expected,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichPoint<F: Field> {
    pub point: Point3<F>,
    /// Indices of the incident curves, ascending.
    pub curves: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdVerdict {
    pub a: f64,
    pub c: f64,
    /// `c · A · n`.
    pub bound: f64,
    pub exceeds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport<F: Field> {
    pub n: usize,
    pub rich_points: Vec<RichPoint<F>>,
    pub rich_count: usize,
    /// Incidence count `k` ↦ number of points on exactly `k` curves.
    pub histogram: BTreeMap<usize, usize>,
    /// Number of rich points on each curve.
    pub per_curve: Vec<usize>,
    pub threshold: Option<ThresholdVerdict>,
}

/// Constant in the rich-point hypothesis `|P2| > c·A·n`.
pub const RICH_CONSTANT: f64 = 100.0;

/// Exact set of points lying on at least two curves, from all pairwise
/// intersections.
pub fn census<F: RootFinding>(curves: &[RatCurve<F>], a: Option<f64>) -> Result<CensusReport<F>> {
    let n = curves.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let hits: Vec<(usize, usize, Vec<Point3<F>>)> = pairs
        .par_iter()
        .map(|&(i, j)| match intersect_curves(&curves[i], &curves[j]) {
            Ok(pts) => Ok((i, j, pts)),
            Err(Error::InfiniteIntersection) => Err(Error::DuplicateCurves(i, j)),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let mut incidence: BTreeMap<Point3<F>, BTreeSet<usize>> = BTreeMap::new();
    for (i, j, pts) in hits {
        for z in pts {
            let e = incidence.entry(z).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let mut histogram = BTreeMap::new();
    let mut per_curve = vec![0; n];
    let rich_points: Vec<RichPoint<F>> = incidence
        .into_iter()
        .map(|(point, set)| {
            *histogram.entry(set.len()).or_insert(0) += 1;
            for &i in &set {
                per_curve[i] += 1;
            }
            RichPoint {
                point,
                curves: set.into_iter().collect(),
            }
        })
        .collect();
    let rich_count = rich_points.len();
    let threshold = a.map(|a| {
        let bound = RICH_CONSTANT * a * n as f64;
        ThresholdVerdict {
            a,
            c: RICH_CONSTANT,
            bound,
            exceeds: rich_count as f64 > bound,
        }
    });
    Ok(CensusReport {
        n,
        rich_points,
        rich_count,
        histogram,
        per_curve,
        threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceFit<F: Field> {
    pub poly: MPoly<F>,
    pub degree: u32,
    /// Every curve of the configuration lying in `Z(poly)`.
    pub contained: Vec<usize>,
    /// Planes always; quadrics when the associated 4x4 form has rank >= 3.
    pub irreducible: bool,
}

/// Rank of the symmetric 4x4 matrix of the homogenized quadric.
pub fn quadric_rank<F: Field>(q: &MPoly<F>) -> Result<usize> {
    let ctx = q.ctx().clone();
    let half = F::from_i64(2, &ctx)
        .inv()
        .map_err(|_| Error::FieldTooSmall("quadric rank in characteristic 2".into()))?;
    let mut m: Matrix<F> = Matrix::zeros(4, 4, &ctx);
    // variable 3 stands for the homogenizing coordinate
    for (mono, c) in q.terms() {
        let mut idx: Vec<usize> = Vec::new();
        for i in 0..3 {
            for _ in 0..mono.exp(i) {
                idx.push(i);
            }
        }
        while idx.len() < 2 {
            idx.push(3);
        }
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[(i, i)] += c.clone();
        } else {
            m[(i, j)] += c.clone() * half.clone();
            m[(j, i)] += c.clone() * half.clone();
        }
    }
    Ok(m.rank())
}

/// Fits a surface of degree at most `d` (1 or 2) through the curves of
/// `subset`, then lists every curve of `curves` it contains.
pub fn fit_low_degree_surface<F: Field>(
    curves: &[RatCurve<F>],
    subset: &[usize],
    d: u32,
) -> Result<Option<SurfaceFit<F>>> {
    if !(1..=2).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "surface degree {d} outside 1..=2"
        )));
    }
    let chosen: Vec<RatCurve<F>> = subset
        .iter()
        .map(|&i| {
            curves
                .get(i)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no curve {i}")))
        })
        .collect::<Result<_>>()?;
    let Some(poly) = vanishing_poly_of_degree(&chosen, d)? else {
        return Ok(None);
    };
    let inside: Vec<bool> = curves
        .par_iter()
        .map(|c| c.lies_in(&poly))
        .collect::<Result<_>>()?;
    let contained = inside
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect();
    let degree = poly.degree().unwrap_or(0);
    let irreducible = match degree {
        1 => true,
        2 => quadric_rank(&poly)? >= 3,
        _ => false,
    };
    Ok(Some(SurfaceFit {
        poly,
        degree,
        contained,
        irreducible,
    }))
}

/// Up to `count` points of `Z(T)` cut out by random lines.
pub fn sample_surface<F: RootFinding>(
    t: &MPoly<F>,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Point3<F>>> {
    let ctx = t.ctx().clone();
    let mut out: Vec<Point3<F>> = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 64 * (count + 1) {
            return Err(Error::WorkLimit(format!(
                "found only {} of {count} surface points",
                out.len()
            )));
        }
        let a: Point3<F> = std::array::from_fn(|_| F::random(&ctx, rng));
        let d: Point3<F> = std::array::from_fn(|_| F::random(&ctx, rng));
        let Ok(line) = RatCurve::line(a, d) else {
            continue;
        };
        let g = line.restrict(t)?;
        if g.is_zero() || g.degree() == Some(0) {
            continue;
        }
        if let Some(s) = F::roots(&g, tries as u64)?.into_iter().next() {
            let z = line.point_at(&s).expect("lines have no poles");
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    Ok(out)
}

fn is_regular_point<F: Field>(t: &MPoly<F>, z: &Point3<F>) -> Result<bool> {
    for g in t.gradient()? {
        if !g.eval(z)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointWitness<F: Field> {
    pub point: Point3<F>,
    pub regular: bool,
    /// Lines through the point inside `Z(T)`; `u128::MAX` for infinitely
    /// many.
    pub lines: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RulingFamilies<F: Field> {
    pub size: usize,
    pub first: Vec<CurveSpec>,
    pub second: Vec<CurveSpec>,
    /// Every member of the first family meets every member of the second.
    pub all_pairs_intersect: bool,
    /// Distinct members of one family never meet.
    pub families_disjoint: bool,
    #[serde(skip)]
    pub curves: (Vec<RatCurve<F>>, Vec<RatCurve<F>>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublyRuledReport<F: Field> {
    pub degree: u32,
    pub samples: Vec<PointWitness<F>>,
    pub regular_samples: usize,
    /// Fraction of sampled points with at least two witness lines.
    pub doubly_ruled_fraction: f64,
    /// Every regular sample has exactly two witness lines.
    pub exactly_two_at_regular: bool,
    pub families: Option<RulingFamilies<F>>,
    pub families_note: Option<String>,
}

/// Direction at `w` of the line in `Z(T)` other than `v`, when exactly two
/// lines pass through `w`.
fn other_ruling<F: RootFinding>(
    t: &MPoly<F>,
    w: &Point3<F>,
    v: &Point3<F>,
) -> Result<Option<Point3<F>>> {
    let dirs = flecnodal_directions(t, w, 2)?;
    if dirs.len() != 2 {
        return Ok(None);
    }
    let v = normalize_direction(v).expect("nonzero direction");
    Ok(dirs.into_iter().find(|d| *d != v))
}

fn ruling_family<F: RootFinding>(
    t: &MPoly<F>,
    z: &Point3<F>,
    along: &Point3<F>,
    size: usize,
) -> Result<Option<Vec<RatCurve<F>>>> {
    let ctx = t.ctx().clone();
    let mut fam = Vec::with_capacity(size);
    for k in 0..size {
        let s = F::from_i64(k as i64, &ctx);
        let w: Point3<F> = std::array::from_fn(|i| z[i].clone() + s.clone() * along[i].clone());
        let Some(dir) = other_ruling(t, &w, along)? else {
            return Ok(None);
        };
        fam.push(RatCurve::line(w, dir)?);
    }
    Ok(Some(fam))
}

fn lines_meet<F: RootFinding>(a: &RatCurve<F>, b: &RatCurve<F>) -> Result<bool> {
    Ok(!intersect_curves(a, b)?.is_empty())
}

/// Samples `Z(T)` for `deg T <= 2`, counts the lines of `Z(T)` through
/// each sample exactly, and for quadrics extracts two ruling families of
/// `family_size` lines and checks that they cross-intersect.
pub fn doubly_ruled_audit<F: RootFinding>(
    t: &MPoly<F>,
    samples: usize,
    family_size: usize,
    seed: u64,
) -> Result<DoublyRuledReport<F>> {
    let degree = t.degree().unwrap_or(0);
    if !(1..=2).contains(&degree) {
        return Err(Error::Unsupported(format!(
            "doubly-ruled audit needs degree 1 or 2, got {degree}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_surface(t, samples, &mut rng)?;
    let mut witnesses = Vec::with_capacity(points.len());
    for z in points {
        let regular = is_regular_point(t, &z)?;
        let lines = count_flecnodal_directions(t, &z, degree)?;
        witnesses.push(PointWitness {
            point: z,
            regular,
            lines,
        });
    }
    let regular_samples = witnesses.iter().filter(|w| w.regular).count();
    let doubly = witnesses.iter().filter(|w| w.lines >= 2).count();
    let doubly_ruled_fraction = if witnesses.is_empty() {
        0.0
    } else {
        doubly as f64 / witnesses.len() as f64
    };
    let exactly_two_at_regular = witnesses.iter().filter(|w| w.regular).all(|w| w.lines == 2);

    let mut families = None;
    let mut families_note = None;
    if degree == 1 {
        families_note = Some("planes: every pair of non-parallel lines meets".into());
    } else if let Some(w0) = witnesses.iter().find(|w| w.regular && w.lines == 2) {
        let dirs = flecnodal_directions(t, &w0.point, 2)?;
        let (va, vb) = (&dirs[0], &dirs[1]);
        // members of the ruling of `va` pass through points of the `vb` line
        let fa = ruling_family(t, &w0.point, vb, family_size)?;
        let fb = ruling_family(t, &w0.point, va, family_size)?;
        match (fa, fb) {
            (Some(fa), Some(fb)) => {
                let mut all_pairs_intersect = true;
                for a in &fa {
                    for b in &fb {
                        all_pairs_intersect &= lines_meet(a, b)?;
                    }
                }
                let mut families_disjoint = true;
                for fam in [&fa, &fb] {
                    for i in 0..fam.len() {
                        for j in i + 1..fam.len() {
                            match intersect_curves(&fam[i], &fam[j]) {
                                Ok(pts) => families_disjoint &= pts.is_empty(),
                                Err(Error::InfiniteIntersection) => families_disjoint = false,
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
                families = Some(RulingFamilies {
                    size: family_size,
                    first: fa.iter().map(|c| c.to_spec()).collect(),
                    second: fb.iter().map(|c| c.to_spec()).collect(),
                    all_pairs_intersect,
                    families_disjoint,
                    curves: (fa, fb),
                });
            }
            _ => {
                families_note =
                    Some("a point along a ruling line carries fewer than two lines".into())
            }
        }
    } else {
        families_note = Some("no regular sample with exactly two lines".into());
    }
    Ok(DoublyRuledReport {
        degree,
        samples: witnesses,
        regular_samples,
        doubly_ruled_fraction,
        exactly_two_at_regular,
        families,
        families_note,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveContagion {
    pub curve: usize,
    /// Points checked first: enough that a condition of degree
    /// `11·deg T` holding at all of them holds on the whole curve.
    pub forcing_points: usize,
    pub forcing_held: usize,
    pub further_points: usize,
    pub further_held: usize,
    pub contagion_achieved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContagionReport {
    pub count: u32,
    pub r: u32,
    pub curves: Vec<CurveContagion>,
    pub global_samples: usize,
    pub global_flecnodal: usize,
    pub global_fraction: f64,
}

/// Checks the condition "at least `count` lines through the point are
/// tangent to `Z(T)` to order `r`" along each curve and on random points
/// of `Z(T)`.
pub fn contagion_demo<F: RootFinding>(
    t: &MPoly<F>,
    curves: &[RatCurve<F>],
    count: u32,
    r: u32,
    global_samples: usize,
    seed: u64,
) -> Result<ContagionReport> {
    let deg_t = t.degree().unwrap_or(0);
    for (i, c) in curves.iter().enumerate() {
        if !c.lies_in(t)? {
            return Err(Error::InvalidArgument(format!(
                "curve {i} is not contained in the surface"
            )));
        }
    }
    let mut per_curve = Vec::with_capacity(curves.len());
    for (i, c) in curves.iter().enumerate() {
        let forcing = (11 * deg_t * c.degree() + 1) as usize;
        let pts = c.sample_points(2 * forcing)?;
        let held = |zs: &[Point3<F>]| -> Result<usize> {
            let mut k = 0;
            for z in zs {
                k += usize::from(is_flecnodal(t, z, count, r)?);
            }
            Ok(k)
        };
        let forcing_held = held(&pts[..forcing])?;
        let further_held = held(&pts[forcing..])?;
        per_curve.push(CurveContagion {
            curve: i,
            forcing_points: forcing,
            forcing_held,
            further_points: forcing,
            further_held,
            contagion_achieved: forcing_held == forcing && further_held == forcing,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = sample_surface(t, global_samples, &mut rng)?;
    let mut global_flecnodal = 0;
    for z in &pts {
        global_flecnodal += usize::from(is_flecnodal(t, z, count, r)?);
    }
    Ok(ContagionReport {
        count,
        r,
        curves: per_curve,
        global_samples: pts.len(),
        global_flecnodal,
        global_fraction: if pts.is_empty() {
            0.0
        } else {
            global_flecnodal as f64 / pts.len() as f64
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyConfig {
    /// Constant in `|P2| > C2·A·n`.
    pub c2: f64,
    pub reduction: ReductionConfig,
    /// How many of the richest curves seed a cluster search.
    pub max_seeds: usize,
}

impl Default for DichotomyConfig {
    fn default() -> Self {
        DichotomyConfig {
            c2: RICH_CONSTANT,
            reduction: ReductionConfig::default(),
            max_seeds: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SurfaceFound,
    FewRichPoints,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionSummary {
    pub degree: Option<u32>,
    pub conforming: Option<bool>,
    pub restarts_used: Option<u32>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport<F: Field> {
    pub verdict: Verdict,
    pub n: usize,
    pub a: f64,
    pub rich_count: usize,
    /// `C2·A·n`.
    pub bound: f64,
    pub many_rich_points: bool,
    pub reduction: Option<ReductionSummary>,
    pub surface: Option<SurfaceFit<F>>,
    pub note: String,
}

/// Curves meeting `S` in at least `need(γ)` distinct rich points join `S`,
/// until nothing changes.
fn grow_cluster<F: Field>(
    start: BTreeSet<usize>,
    curves: &[RatCurve<F>],
    on_curve: &[BTreeSet<usize>],
    rich: &[RichPoint<F>],
    d: u32,
) -> BTreeSet<usize> {
    let mut s = start;
    loop {
        let mut added = false;
        for (g, pts) in on_curve.iter().enumerate() {
            if s.contains(&g) {
                continue;
            }
            let shared = pts
                .iter()
                .filter(|&&k| rich[k].curves.iter().any(|c| s.contains(c)))
                .count();
            if shared >= (d * curves[g].degree() + 1) as usize {
                s.insert(g);
                added = true;
            }
        }
        if !added {
            return s;
        }
    }
}

/// Rich-point census, degree reduction when the census is large, and a
/// cluster-then-fit search for a plane or irreducible quadric containing
/// at least `A` curves.
pub fn dichotomy_demo<F: RootFinding>(
    curves: &[RatCurve<F>],
    a: f64,
    cfg: &DichotomyConfig,
) -> Result<DichotomyReport<F>> {
    if curves.is_empty() || a.is_nan() || a <= 0.0 {
        return Err(Error::InvalidArgument("need curves and A > 0".into()));
    }
    let n = curves.len();
    let cen = census(curves, Some(a))?;
    let bound = cfg.c2 * a * n as f64;
    let many_rich_points = cen.rich_count as f64 > bound;

    let reduction = many_rich_points.then(|| match degree_reduce(curves, a, &cfg.reduction) {
        Ok(r) => ReductionSummary {
            degree: Some(r.degree),
            conforming: Some(r.conforming),
            restarts_used: Some(r.restarts_used),
            error: None,
        },
        Err(e) => ReductionSummary {
            degree: None,
            conforming: None,
            restarts_used: None,
            error: Some(e.to_string()),
        },
    });

    let mut on_curve = vec![BTreeSet::new(); n];
    let mut neighbours = vec![BTreeSet::new(); n];
    for (k, rp) in cen.rich_points.iter().enumerate() {
        for &i in &rp.curves {
            on_curve[i].insert(k);
            neighbours[i].extend(rp.curves.iter().copied().filter(|&j| j != i));
        }
    }
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&i| std::cmp::Reverse(on_curve[i].len()));
    seeds.truncate(cfg.max_seeds.max(1));

    let mut surface = None;
    'search: for d in 1..=2u32 {
        for &seed in &seeds {
            let mut star: BTreeSet<usize> = neighbours[seed].clone();
            star.insert(seed);
            let grown = grow_cluster(star.clone(), curves, &on_curve, &cen.rich_points, d);
            let mut candidates = vec![grown];
            if candidates[0] != star {
                candidates.push(star);
            }
            if d == 1 {
                for &nb in neighbours[seed].iter().take(4) {
                    candidates.push(BTreeSet::from([seed, nb]));
                }
            }
            for cl in candidates {
                let subset: Vec<usize> = cl.into_iter().collect();
                if let Some(fit) = fit_low_degree_surface(curves, &subset, d)? {
                    if fit.irreducible && fit.contained.len() as f64 >= a {
                        surface = Some(fit);
                        break 'search;
                    }
                }
            }
        }
    }

    let (verdict, note) = match (&surface, many_rich_points) {
        (Some(s), _) => (
            Verdict::SurfaceFound,
            format!(
                "degree-{} surface contains {} curves",
                s.degree,
                s.contained.len()
            ),
        ),
        (None, false) => (
            Verdict::FewRichPoints,
            format!("{} rich points, at most {bound}", cen.rich_count),
        ),
        (None, true) => (
            Verdict::Failure,
            "many rich points but no plane or quadric cluster contains A curves".to_string(),
        ),
    };
    Ok(DichotomyReport {
        verdict,
        n,
        a,
        rich_count: cen.rich_count,
        bound,
        many_rich_points,
        reduction,
        surface,
        note,
    })
}

/// `x1 x2 - x3`, the quadric swept by [`GeneratorSpec::RegulusRulings`].
pub fn regulus_quadric<F: Field>(ctx: &F::Ctx) -> MPoly<F> {
    let x1x2 = MPoly::from_terms(3, ctx, [(Monomial::from_exps(&[1, 1, 0]), F::one(ctx))]);
    &x1x2 - &MPoly::var(2, 3, ctx)
}
