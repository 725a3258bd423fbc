//! Acceptance suite: one PASS/FAIL line per criterion. Exact criteria
//! tolerate zero mismatches; the pinned thresholds are the constants
//! below.

mod common;

use std::cmp::Ordering;
use std::time::Instant;

use common::*;
use curvelab_core::curves::{CIPair, Point3, RatCurve};
use curvelab_core::field::factorial;
use curvelab_core::flecnode::{is_flecnodal, salmon_flecnode};
use curvelab_core::groebner::IdealBasis;
use curvelab_core::hilbert::{acc_explore, ell_cmp, hilbert_function, hilbert_poly};
use curvelab_core::incidence::{
    census, dichotomy_demo, doubly_ruled_audit, generate, regulus_quadric, DichotomyConfig,
    GeneratorSpec, Verdict,
};
use curvelab_core::mpoly::{MPoly, Monomial};
use curvelab_core::multiplicity::{bezout_sum_audit, local_mult, DEFAULT_N_MAX};
use curvelab_core::reduce::{degree_reduce, ReductionConfig};
use curvelab_core::tangency::{d_alpha, tangency_report, trapped_test, TangencyOrder};
use curvelab_core::{Field, Fp, Rational, ALGEBRA_PRIME};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEARCH_P: u64 = 65537;
const TANGENCY_LINE_CASES: usize = 200;
const TANGENCY_CONIC_CASES: usize = 50;
const TANGENCY_CUTOFF: u32 = 8;
const LEIBNIZ_PAIRS: usize = 100;
const SIGMA_MAX_POWER: u32 = 6;
const MULT_MAX_K: u16 = 8;
const LEMMA_MULT_CASES: usize = 100;
const TRAPPED_TRIALS: usize = 100;
const RULING_D_ITERATES: usize = 10;
const SALMON_CUBICS: usize = 10;
const SALMON_POINTS: usize = 50;
const JET_TRIALS: usize = 100;
const HILBERT_T_MAX: u32 = 12;
const MONOMIAL_CHAINS: usize = 20;
const TWO_PLANE_LINES: usize = 30;
const TWO_PLANE_A: f64 = 29.0;
const REDUCTION_SEEDS: u64 = 5;
const REDUCTION_MIN_EXACT: usize = 4;
/// Forces the randomized levels instead of one direct interpolation.
const REDUCTION_BASE_CASE: usize = 10;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expected_order(e: Expect, cutoff: u32) -> TangencyOrder {
    match e {
        Expect::Contained => TangencyOrder::AtLeast(cutoff),
        Expect::Order(r) => TangencyOrder::Exact(r),
    }
}

fn tangency_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = SEARCH_P;
    let mut positive = 0;
    for i in 0..TANGENCY_LINE_CASES {
        let deg = rng.gen_range(1..=4);
        let (t, line, z, expect) = line_case::<Fp>(&mut rng, &p, deg);
        let rep = tangency_report(&t, &line, &z, TANGENCY_CUTOFF).map_err(err)?;
        ensure!(rep.consistent(), "line case {i}: routes disagree {rep:?}");
        ensure!(
            rep.order_via_d == expected_order(expect, TANGENCY_CUTOFF),
            "line case {i}: {rep:?} vs {expect:?}"
        );
        positive += usize::from(rep.order_via_d.is_at_least(1));
    }
    for i in 0..TANGENCY_CONIC_CASES {
        let (conic, z) = random_conic::<Fp>(&mut rng, &p);
        let k = rng.gen_range(0..=4u32);
        let (k, expect) = if k == 4 {
            (None, Expect::Contained)
        } else {
            (Some(k), Expect::Order(k as i64 - 1))
        };
        let t = tangency_surface(&mut rng, &conic, &z, 4, k);
        let rep = tangency_report(&t, &conic, &z, TANGENCY_CUTOFF).map_err(err)?;
        ensure!(rep.consistent(), "conic case {i}: routes disagree {rep:?}");
        ensure!(
            rep.order_via_d == expected_order(expect, TANGENCY_CUTOFF),
            "conic case {i}: {rep:?} vs {expect:?}"
        );
    }
    Ok(format!(
        "{TANGENCY_LINE_CASES} line + {TANGENCY_CONIC_CASES} conic cases agree with each other and the construction ({positive} line cases of order >= 1)"
    ))
}

fn random_pair(rng: &mut ChaCha8Rng, p: u64, z: &Point3<Fp>) -> CIPair<Fp> {
    loop {
        let mk = |rng: &mut ChaCha8Rng| {
            let f = dense_poly::<Fp>(rng, &p, 2);
            &f - &MPoly::constant(f.eval(z).unwrap(), 3)
        };
        let (a, b) = (mk(rng), mk(rng));
        if let Ok(pair) = CIPair::new(a, b) {
            if pair.tangent_at(z).unwrap().iter().any(|c| !c.is_zero()) {
                return pair;
            }
        }
    }
}

fn leibniz_and_sigma() -> Outcome {
    let p = SEARCH_P;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..LEIBNIZ_PAIRS {
        let z: Point3<Fp> = random_point(&mut rng, &p);
        let alpha = random_pair(&mut rng, p, &z);
        let f = sparse_poly::<Fp>(&mut rng, &p, 4, 6);
        let g = sparse_poly::<Fp>(&mut rng, &p, 4, 6);
        let lhs = d_alpha(&(&f * &g), &alpha).map_err(err)?;
        let rhs = &(&d_alpha(&f, &alpha).map_err(err)? * &g)
            + &(&f * &d_alpha(&g, &alpha).map_err(err)?);
        ensure!(lhs == rhs, "pair {i}: product rule fails");
    }
    let mut checked = 0;
    for trial in 0..10 {
        let z: Point3<Fp> = random_point(&mut rng, &p);
        let alpha = random_pair(&mut rng, p, &z);
        let tangent = alpha.tangent_at(&z).map_err(err)?;
        let k = tangent.iter().position(|c| !c.is_zero()).unwrap();
        let c = tangent[k];
        let sigma = &MPoly::var(k, 3, &p) - &MPoly::constant(z[k], 3);
        for j in 0..=SIGMA_MAX_POWER {
            let mut f = sigma.try_pow(j).map_err(err)?;
            for i in 0..=j {
                let v = f.eval(&z).map_err(err)?;
                if i < j {
                    ensure!(v.is_zero(), "trial {trial}: D^{i} sigma^{j}(z) = {v}");
                } else {
                    let want = c.pow(j as u64) * factorial::<Fp>(j as u64, &p);
                    ensure!(
                        v == want,
                        "trial {trial}: D^{j} sigma^{j}(z) = {v}, want {want}"
                    );
                }
                checked += 1;
                f = d_alpha(&f, &alpha).map_err(err)?;
            }
        }
    }
    Ok(format!(
        "{LEIBNIZ_PAIRS} product-rule pairs, {checked} sigma-power values exact"
    ))
}

fn multiplicity() -> Outcome {
    let q = |s: &str| MPoly::<Rational>::parse(s, 3, &()).unwrap();
    let origin = [0, 0, 0].map(Rational::from_integer);
    for k in 1..=MULT_MAX_K {
        let fs = [q("x1"), q("x2"), q(&format!("x3^{k}"))];
        let m = local_mult(&fs, &origin, DEFAULT_N_MAX).map_err(err)?;
        ensure!(
            m.value == k as usize,
            "mult of (x1, x2, x3^{k}) is {}",
            m.value
        );
    }
    let mut grids = 0;
    for d1 in 1..=3i64 {
        for d2 in 1..=3i64 {
            for d3 in 1..=3i64 {
                let ds = [d1, d2, d3];
                let fs: [MPoly<Rational>; 3] = std::array::from_fn(|i| {
                    (0..ds[i]).fold(q("1"), |acc, a| &acc * &q(&format!("x{}-{a}", i + 1)))
                });
                let mut pts = Vec::new();
                for a in 0..d1 {
                    for b in 0..d2 {
                        for c in 0..d3 {
                            pts.push([a, b, c].map(Rational::from_integer));
                        }
                    }
                }
                let audit = bezout_sum_audit(&fs, &pts, DEFAULT_N_MAX).map_err(err)?;
                ensure!(
                    audit.equality && audit.sum as i64 == d1 * d2 * d3,
                    "grid {ds:?}: {audit:?}"
                );
                grids += 1;
            }
        }
    }
    let p = SEARCH_P;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < LEMMA_MULT_CASES {
        let deg = rng.gen_range(1..=4);
        let (t, line, z, expect) = line_case::<Fp>(&mut rng, &p, deg);
        let Expect::Order(r) = expect else { continue };
        if r < 0 {
            continue;
        }
        let fs = [line.ci().p.clone(), line.ci().q.clone(), t];
        let m = local_mult(&fs, &z, DEFAULT_N_MAX).map_err(err)?;
        ensure!(m.value as i64 > r, "order {r} but multiplicity {}", m.value);
        done += 1;
    }
    Ok(format!(
        "k <= {MULT_MAX_K} exact, Bezout equality on {grids} grids, {LEMMA_MULT_CASES} order-r cases have mult >= r+1"
    ))
}

fn trapped() -> Outcome {
    let p = SEARCH_P;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut contained = 0;
    for i in 0..TRAPPED_TRIALS {
        let deg = rng.gen_range(2..=3);
        let (t, line, z, expect) = line_case::<Fp>(&mut rng, &p, deg);
        let verdict = trapped_test(&t, &line, &z).map_err(|e| format!("trial {i}: {e}"))?;
        ensure!(
            verdict == (expect == Expect::Contained),
            "trial {i}: verdict {verdict} for {expect:?}"
        );
        ensure!(
            verdict == line.lies_in(&t).map_err(err)?,
            "trial {i}: verdict disagrees with containment"
        );
        contained += usize::from(verdict);
    }
    let t = regulus_quadric::<Rational>(&());
    let mut rulings = 0;
    for c in -3..=3i64 {
        let lines = [
            RatCurve::line(
                [0, c, 0].map(Rational::from_integer),
                [1, 0, c].map(Rational::from_integer),
            ),
            RatCurve::line(
                [c, 0, 0].map(Rational::from_integer),
                [0, 1, c].map(Rational::from_integer),
            ),
        ];
        for line in lines {
            let line = line.map_err(err)?;
            let mut f = t.clone();
            for j in 0..=RULING_D_ITERATES {
                ensure!(
                    line.lies_in(&f).map_err(err)?,
                    "ruling c={c}: D^{j} T does not vanish on the line"
                );
                f = d_alpha(&f, line.ci()).map_err(err)?;
            }
            rulings += 1;
        }
    }
    Ok(format!(
        "{TRAPPED_TRIALS} trials ({contained} contained) never violate the trapped criterion; D^j T = 0 for j <= {RULING_D_ITERATES} on {rulings} rulings"
    ))
}

fn salmon() -> Outcome {
    let p = ALGEBRA_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut witnessed = 0;
    let mut slowest = 0.0f64;
    let mut degrees = Vec::new();
    for i in 0..SALMON_CUBICS {
        let (t, line) = surface_with_line::<Fp>(&mut rng, &p, 3);
        let start = Instant::now();
        let s = salmon_flecnode(&t).map_err(err)?;
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let deg = s.degree.unwrap_or(0);
        ensure!(
            !s.degenerate && s.reduced && deg <= 11 * 3 - 24,
            "cubic {i}: degree {:?}, reduced {}",
            s.degree,
            s.reduced
        );
        degrees.push(deg);
        let mut pts = line.sample_points(SALMON_POINTS / 5).map_err(err)?;
        pts.extend(surface_points(&mut rng, &t, SALMON_POINTS - pts.len()));
        for z in &pts {
            if is_flecnodal(&t, z, 1, 3).map_err(err)? {
                witnessed += 1;
                ensure!(
                    s.poly.eval(z).map_err(err)?.is_zero(),
                    "cubic {i}: witnessed flecnodal point off Flec T"
                );
            }
        }
    }
    let mut quadrics = 0;
    for _ in 0..3 {
        let t = dense_poly::<Fp>(&mut rng, &p, 2);
        let s = salmon_flecnode(&t).map_err(err)?;
        ensure!(
            s.degenerate && s.poly.is_zero(),
            "quadric not flagged degenerate"
        );
        quadrics += 1;
    }
    Ok(format!(
        "{SALMON_CUBICS} cubics, degrees {degrees:?} <= 9, {witnessed} witnessed points all on Flec T, {quadrics} quadrics degenerate, slowest {slowest:.2}s"
    ))
}

fn jet_determinism() -> Outcome {
    let p = SEARCH_P;
    let r = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut flecnodal = 0;
    for i in 0..JET_TRIALS {
        let (t, z) = if i % 2 == 0 {
            let (t, line) = surface_with_line::<Fp>(&mut rng, &p, 3);
            let z = line.point_at(&Fp::random(&p, &mut rng)).unwrap();
            (t, z)
        } else {
            let t = dense_poly::<Fp>(&mut rng, &p, 3);
            let z = surface_points(&mut rng, &t, 1).pop().unwrap();
            (t, z)
        };
        let base = is_flecnodal(&t, &z, 1, r).map_err(err)?;
        let jet = t.jet(&z, r).map_err(err)?.poly;
        ensure!(
            is_flecnodal(&jet, &z, 1, r).map_err(err)? == base,
            "trial {i}: jet verdict differs"
        );
        // a perturbation vanishing to order r+1 at z
        let mut bump = MPoly::constant(Fp::random(&p, &mut rng), 3);
        for _ in 0..=r {
            let probe: Point3<Fp> = random_point(&mut rng, &p);
            bump = &bump * &transversal_form(&mut rng, &z, &probe);
        }
        let moved = &t + &bump;
        ensure!(
            is_flecnodal(&moved, &z, 1, r).map_err(err)? == base,
            "trial {i}: perturbed verdict differs"
        );
        flecnodal += usize::from(base);
    }
    Ok(format!("{JET_TRIALS} trials ({flecnodal} flecnodal) invariant under jets and order-{} perturbations", r + 1))
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> IdealBasis<Rational> {
    let gens = (0..rng.gen_range(1..=2))
        .map(|_| {
            let e: [u16; 3] = std::array::from_fn(|_| rng.gen_range(0..=2));
            MPoly::from_terms(
                3,
                &(),
                [(Monomial::from_exps(&e), Rational::from_integer(1))],
            )
        })
        .collect();
    IdealBasis::new(3, &(), gens).unwrap()
}

fn hilbert_acc() -> Outcome {
    let plane = IdealBasis::<Rational>::parse(&["x1"], 3, &()).map_err(err)?;
    for t in 0..=HILBERT_T_MAX {
        let h = hilbert_function(&plane, t).map_err(err)?;
        ensure!(h == binom(t as u64 + 2, 2), "H(x1)({t}) = {h}");
    }
    let hp = hilbert_poly(&plane).map_err(err)?;
    let want = vec![
        Rational::from_integer(1),
        Rational::new(3, 2).unwrap(),
        Rational::new(1, 2).unwrap(),
    ];
    let got: Vec<Rational> = hp.hp_coeffs.iter().take(3).cloned().collect();
    ensure!(
        got == want && hp.hp_coeffs[3..].iter().all(|c| c.is_zero()),
        "HP(x1) = {:?}",
        hp.hp_coeffs
    );
    let uni = |s: &str| IdealBasis::<Rational>::parse(&[s], 1, &()).unwrap();
    let rep = acc_explore(&[uni("x^3+x"), uni("x^2+1"), uni("x*(x^2+1)")]).map_err(err)?;
    ensure!(rep.r0 == Some(3), "r0 = {:?}", rep.r0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut steps = 0;
    for c in 0..MONOMIAL_CHAINS {
        let chain: Vec<_> = (0..5).map(|_| random_monomial_ideal(&mut rng)).collect();
        let rep = acc_explore(&chain).map_err(err)?;
        for w in rep.ell_tuples.windows(2) {
            ensure!(
                ell_cmp(&w[1], &w[0]) != Ordering::Greater,
                "chain {c}: ell increased {:?} -> {:?}",
                w[0],
                w[1]
            );
            steps += 1;
        }
    }
    Ok(format!(
        "H exact for t <= {HILBERT_T_MAX}, HP = (t+1)(t+2)/2, r0 = 3, {steps} partial-sum steps weakly decreasing over {MONOMIAL_CHAINS} chains"
    ))
}

fn degree_reduction() -> Outcome {
    let p = SEARCH_P;
    let bound = (8 * 2 * TWO_PLANE_LINES) as f64 / TWO_PLANE_A;
    let mut exact = 0;
    let mut degrees = Vec::new();
    let mut randomized_levels = 0;
    for seed in 0..REDUCTION_SEEDS {
        let cfg = generate::<Fp>(GeneratorSpec::TwoPlanes { m: TWO_PLANE_LINES }, &p, seed)
            .map_err(err)?;
        let rc = ReductionConfig {
            rng_seed: seed,
            base_case_size: REDUCTION_BASE_CASE,
            ..ReductionConfig::default()
        };
        let res = degree_reduce(&cfg.curves, TWO_PLANE_A, &rc).map_err(err)?;
        for c in &cfg.curves {
            ensure!(
                c.lies_in(&res.poly).map_err(err)?,
                "seed {seed}: a curve escapes the surface"
            );
        }
        ensure!(
            (res.degree as f64) <= bound,
            "seed {seed}: degree {} > {bound:.2}",
            res.degree
        );
        exact += usize::from(res.degree == 2);
        randomized_levels += res.log.iter().filter(|l| !l.base_case).count();
        degrees.push(res.degree);
    }
    ensure!(
        exact >= REDUCTION_MIN_EXACT,
        "degree exactly 2 in only {exact} of {REDUCTION_SEEDS} runs: {degrees:?}"
    );
    let reg = generate::<Fp>(GeneratorSpec::RegulusRulings { m: 15 }, &p, 0).map_err(err)?;
    let rc = ReductionConfig {
        base_case_size: REDUCTION_BASE_CASE,
        ..ReductionConfig::default()
    };
    let res = degree_reduce(&reg.curves, 15.0, &rc).map_err(err)?;
    ensure!(
        res.degree == 2,
        "quadric rulings reduce to degree {}",
        res.degree
    );
    for c in &reg.curves {
        ensure!(
            c.lies_in(&res.poly).map_err(err)?,
            "a ruling escapes the surface"
        );
    }
    Ok(format!(
        "two planes: degrees {degrees:?} (bound {bound:.2}, {randomized_levels} randomized levels); quadric rulings: degree 2"
    ))
}

fn census_dichotomy() -> Outcome {
    let p = SEARCH_P;
    let cop = generate::<Fp>(GeneratorSpec::CoplanarLines { m: 5 }, &p, 9).map_err(err)?;
    let n = census(&cop.curves, None).map_err(err)?.rich_count;
    ensure!(n == 10, "coplanar_lines(5): {n} rich points");
    let reg = generate::<Fp>(GeneratorSpec::RegulusRulings { m: 4 }, &p, 0).map_err(err)?;
    let n = census(&reg.curves, None).map_err(err)?.rich_count;
    ensure!(n == 16, "regulus_rulings(4): {n} rich points");
    let dc = DichotomyConfig::default();
    for (name, cfg, a, degree) in [("plane", &cop, 5.0, 1), ("quadric", &reg, 4.0, 2)] {
        let rep = dichotomy_demo(&cfg.curves, a, &dc).map_err(err)?;
        ensure!(
            rep.verdict == Verdict::SurfaceFound,
            "{name}: verdict {:?}",
            rep.verdict
        );
        let s = rep.surface.unwrap();
        ensure!(
            s.degree == degree && s.contained.len() == cfg.len(),
            "{name}: degree {} contains {}",
            s.degree,
            s.contained.len()
        );
    }
    let t = regulus_quadric::<Fp>(&p);
    let audit = doubly_ruled_audit(&t, 40, 5, 11).map_err(err)?;
    ensure!(
        audit.exactly_two_at_regular,
        "a regular point without exactly two lines"
    );
    let fam = audit.families.ok_or("no ruling families extracted")?;
    ensure!(
        fam.size == 5 && fam.all_pairs_intersect,
        "5x5 families do not cross-intersect"
    );
    Ok(format!(
        "census 10 and 16; plane and quadric found; {} regular samples with 2 lines each; 5x5 families intersect",
        audit.regular_samples
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("tangency equivalence", tangency_equivalence),
        ("Leibniz and sigma powers", leibniz_and_sigma),
        ("intersection multiplicity", multiplicity),
        ("trapped curves", trapped),
        ("flecnode polynomial", salmon),
        ("jet determinism", jet_determinism),
        ("Hilbert functions and chains", hilbert_acc),
        ("degree reduction", degree_reduction),
        ("census and dichotomy", census_dichotomy),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} [{secs:.1}s]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} [{secs:.1}s]: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
