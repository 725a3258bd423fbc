use std::path::Path;

use curvelab_core::curves::{point_from_text, CurveSpec, Point3, RatCurve, ScalarText};
use curvelab_core::groebner::IdealBasis;
use curvelab_core::incidence::{generate, Configuration, GeneratorSpec};
use curvelab_core::reduce::ReductionConfig;
use curvelab_core::{Field, MPoly, Result};
use serde::Deserialize;

/// Every subcommand reads the fields it needs and ignores the rest.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: Option<String>,
    pub generator: Option<GeneratorSpec>,
    pub curves: Option<Vec<CurveSpec>>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    /// Surface polynomial `T` in `x1, x2, x3`.
    pub surface: Option<String>,
    pub points: Option<Vec<Vec<ScalarText>>>,
    pub r: Option<u32>,
    /// Number of lines required at a flecnodal point.
    pub count: Option<u32>,
    pub samples: Option<usize>,
    pub family_size: Option<usize>,
    #[serde(default)]
    pub salmon: bool,
    pub ideals: Option<Vec<Vec<String>>>,
    pub arity: Option<usize>,
    pub reduction: Option<ReductionSection>,
    /// Constant in the rich-point threshold of the dichotomy.
    pub c2: Option<f64>,
    pub max_seeds: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSection {
    pub c2: Option<f64>,
    pub max_restarts: Option<u32>,
    pub degree_slack: Option<f64>,
    pub base_case_size: Option<usize>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> std::result::Result<Self, String> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn reduction(&self, seed: u64) -> ReductionConfig {
        let d = ReductionConfig::default();
        let s = self.reduction.clone().unwrap_or_default();
        ReductionConfig {
            c2: s.c2.unwrap_or(d.c2),
            max_restarts: s.max_restarts.unwrap_or(d.max_restarts),
            rng_seed: seed,
            degree_slack: s.degree_slack.unwrap_or(d.degree_slack),
            base_case_size: s.base_case_size.unwrap_or(d.base_case_size),
        }
    }

    /// Explicit curves first, then generated ones.
    pub fn configuration<F: Field>(&self, ctx: &F::Ctx, seed: u64) -> Result<Configuration<F>> {
        let mut cfg = match self.generator {
            Some(spec) => generate(spec, ctx, seed)?,
            None => Configuration::from_curves("explicit", vec![], ctx),
        };
        if let Some(specs) = &self.curves {
            let mut explicit = specs
                .iter()
                .map(|s| s.build(ctx))
                .collect::<Result<Vec<RatCurve<F>>>>()?;
            explicit.append(&mut cfg.curves);
            cfg.curves = explicit;
        }
        if let Some(name) = &self.name {
            cfg.name = name.clone();
        }
        Ok(cfg)
    }

    pub fn surface<F: Field>(&self, ctx: &F::Ctx) -> Result<Option<MPoly<F>>> {
        self.surface
            .as_deref()
            .map(|s| MPoly::parse(s, 3, ctx))
            .transpose()
    }

    pub fn points<F: Field>(&self, ctx: &F::Ctx) -> Result<Vec<Point3<F>>> {
        self.points
            .iter()
            .flatten()
            .map(|p| point_from_text(p, ctx))
            .collect()
    }

    pub fn ideals<F: Field>(&self, ctx: &F::Ctx) -> Result<Vec<IdealBasis<F>>> {
        let arity = self.arity.unwrap_or(3);
        self.ideals
            .iter()
            .flatten()
            .map(|gens| {
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                IdealBasis::parse(&refs, arity, ctx)
            })
            .collect()
    }
}
