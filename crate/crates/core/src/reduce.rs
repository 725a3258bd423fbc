//! Randomized degree reduction: a polynomial of degree `O(n/A)` containing
//! `n` curves when every curve has many rich points.
//!
//! Each level samples curves with probability `p = min(1, C2·n/A²)`,
//! interpolates the sample, keeps the curves that fell into the resulting
//! surface, and recurses on the rest with `A` scaled by `99/100`. A level
//! whose surface swallows fewer than `99/200` of its curves is retried with
//! fresh randomness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::RatCurve;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interpolate::vanishing_poly_on_curves;
use crate::mpoly::MPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionConfig {
    pub c2: f64,
    pub max_restarts: u32,
    pub rng_seed: u64,
    pub degree_slack: f64,
    /// Levels with at most this many curves interpolate directly.
    pub base_case_size: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            c2: 4.0,
            max_restarts: 5,
            rng_seed: 0,
            degree_slack: 2.0,
            base_case_size: 1000,
        }
    }
}

impl ReductionConfig {
    fn validate(&self) -> Result<()> {
        if self.c2.is_nan()
            || self.c2 <= 0.0
            || self.max_restarts == 0
            || self.degree_slack.is_nan()
            || self.degree_slack <= 0.0
        {
            return Err(Error::InvalidArgument(
                "need C2 > 0, restarts >= 1, slack > 0".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelLog {
    pub level: u32,
    pub curves: usize,
    pub a: f64,
    pub p: f64,
    pub attempts: u32,
    pub sampled: usize,
    pub interpolation_degree: u32,
    pub contained: usize,
    pub base_case: bool,
    /// The `99/200` threshold was missed on every attempt.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionResult<F: Field> {
    pub poly: MPoly<F>,
    pub degree: u32,
    pub restarts_used: u32,
    pub conforming: bool,
    /// `degree_slack · C2 · n / A`.
    pub degree_bound: f64,
    pub within_bound: bool,
    pub log: Vec<LevelLog>,
}

struct Run<'a> {
    cfg: &'a ReductionConfig,
    rng: ChaCha8Rng,
    log: Vec<LevelLog>,
    restarts: u32,
    conforming: bool,
}

impl Run<'_> {
    fn level<F: Field>(&mut self, curves: &[RatCurve<F>], a: f64, level: u32) -> Result<MPoly<F>> {
        let n = curves.len();
        let mut entry = LevelLog {
            level,
            curves: n,
            a,
            p: 1.0,
            attempts: 0,
            sampled: n,
            interpolation_degree: 0,
            contained: n,
            base_case: n <= self.cfg.base_case_size,
            fallback: false,
        };
        if entry.base_case {
            let poly = vanishing_poly_on_curves(curves)?;
            entry.interpolation_degree = poly.degree().unwrap_or(0);
            self.log.push(entry);
            return Ok(poly);
        }
        let p = (self.cfg.c2 * n as f64 / (a * a)).min(1.0);
        entry.p = p;
        for attempt in 1..=self.cfg.max_restarts {
            entry.attempts = attempt;
            if attempt > 1 {
                self.restarts += 1;
            }
            let sample: Vec<RatCurve<F>> = curves
                .iter()
                .filter(|_| self.rng.gen_bool(p))
                .cloned()
                .collect();
            if sample.is_empty() {
                continue;
            }
            let p1 = vanishing_poly_on_curves(&sample)?;
            let inside: Vec<bool> = curves
                .par_iter()
                .map(|c| c.lies_in(&p1))
                .collect::<Result<_>>()?;
            let contained = inside.iter().filter(|&&b| b).count();
            entry.sampled = sample.len();
            entry.interpolation_degree = p1.degree().unwrap_or(0);
            entry.contained = contained;
            if 200 * contained >= 99 * n {
                self.log.push(entry);
                let rest: Vec<RatCurve<F>> = curves
                    .iter()
                    .zip(&inside)
                    .filter(|(_, &i)| !i)
                    .map(|(c, _)| c.clone())
                    .collect();
                if rest.is_empty() {
                    return Ok(p1);
                }
                let p2 = self.level(&rest, a * 0.99, level + 1)?;
                return p1.try_mul(&p2);
            }
        }
        self.conforming = false;
        entry.fallback = true;
        let poly = vanishing_poly_on_curves(curves)?;
        entry.sampled = n;
        entry.interpolation_degree = poly.degree().unwrap_or(0);
        entry.contained = n;
        self.log.push(entry);
        Ok(poly)
    }
}

/// Degree reduction for curves each carrying at least `a` rich points.
/// Without per-curve incidence data the richness is divided by `D²`,
/// `D` the largest curve degree.
pub fn degree_reduce<F: Field>(
    curves: &[RatCurve<F>],
    a: f64,
    cfg: &ReductionConfig,
) -> Result<ReductionResult<F>> {
    cfg.validate()?;
    if curves.is_empty() {
        return Err(Error::InvalidArgument("no curves".into()));
    }
    if a.is_nan() || a <= 0.0 {
        return Err(Error::InvalidArgument("A must be positive".into()));
    }
    let d = curves.iter().map(|c| c.degree()).max().unwrap() as f64;
    let a_eff = a / (d * d);
    let mut run = Run {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.rng_seed),
        log: vec![],
        restarts: 0,
        conforming: true,
    };
    let poly = run.level(curves, a_eff, 0)?;
    for c in curves {
        if !c.lies_in(&poly)? {
            return Err(Error::TheoremViolation(
                "reduced polynomial misses an input curve".into(),
            ));
        }
    }
    let degree = poly.degree().unwrap_or(0);
    let degree_bound = cfg.degree_slack * cfg.c2 * curves.len() as f64 / a;
    Ok(ReductionResult {
        poly,
        degree,
        restarts_used: run.restarts,
        conforming: run.conforming,
        degree_bound,
        within_bound: degree as f64 <= degree_bound,
        log: run.log,
    })
}
