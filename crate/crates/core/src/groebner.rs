//! Buchberger's algorithm under graded-lex, ideal membership.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpoly::{MPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkLimits {
    pub max_degree: u32,
    pub max_arity: usize,
    pub max_pairs: usize,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits {
            max_degree: 8,
            max_arity: 4,
            max_pairs: 10_000,
        }
    }
}

/// A finite presentation of an ideal. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis<F: Field> {
    arity: usize,
    ctx: F::Ctx,
    generators: Vec<MPoly<F>>,
}

impl<F: Field> IdealBasis<F> {
    pub fn new(arity: usize, ctx: &F::Ctx, generators: Vec<MPoly<F>>) -> Result<Self> {
        for g in &generators {
            if g.arity() != arity {
                return Err(Error::ArityMismatch(g.arity(), arity));
            }
            if g.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealBasis {
            arity,
            ctx: ctx.clone(),
            generators,
        })
    }

    pub fn parse(gens: &[&str], arity: usize, ctx: &F::Ctx) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| MPoly::parse(s, arity, ctx))
            .collect::<Result<_>>()?;
        Self::new(arity, ctx, gens)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[MPoly<F>] {
        &self.generators
    }

    /// Sum of generator degrees.
    pub fn complexity(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| g.degree().unwrap_or(0))
            .sum()
    }

    /// The sum ideal, presented by concatenated generators.
    pub fn sum(&self, o: &Self) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(o.generators.iter().cloned());
        Self::new(self.arity, &self.ctx, gens)
    }
}

/// Reduced graded-lex Gröbner basis: monic, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    arity: usize,
    ctx: F::Ctx,
    basis: Vec<MPoly<F>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn basis(&self) -> &[MPoly<F>] {
        &self.basis
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| *g.leading_term().unwrap().0)
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, f: &MPoly<F>) -> Result<MPoly<F>> {
        normal_form(f, &self.basis)
    }

    pub fn contains(&self, f: &MPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn as_ideal(&self) -> IdealBasis<F> {
        IdealBasis {
            arity: self.arity,
            ctx: self.ctx.clone(),
            generators: self.basis.clone(),
        }
    }
}

/// Full remainder of `f` on division by `gs` (every term reduced).
pub fn normal_form<F: Field>(f: &MPoly<F>, gs: &[MPoly<F>]) -> Result<MPoly<F>> {
    let leads: Vec<(Monomial, F)> = gs
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("nonzero divisor");
            (*m, c.clone())
        })
        .collect();
    let mut p = f.clone();
    let mut rem = MPoly::zero(f.arity(), f.ctx());
    while let Some((m, c)) = p.pop_leading() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, lc) = &leads[i];
                let q = -c.div(lc)?;
                // the leading term cancels against the popped one
                let mut tail = gs[i].clone();
                tail.pop_leading();
                p.add_mul_term(&q, &lm.quotient_of(&m), &tail)?;
            }
            None => rem.add_mul_term(&c, &m, &MPoly::one(f.arity(), f.ctx()))?,
        }
    }
    Ok(rem)
}

fn s_poly<F: Field>(f: &MPoly<F>, g: &MPoly<F>) -> Result<MPoly<F>> {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let mut s = f.mul_term(&mf.quotient_of(&l), &cf.inv()?)?;
    s.add_mul_term(&-cg.inv()?, &mg.quotient_of(&l), g)?;
    Ok(s)
}

pub fn groebner<F: Field>(ideal: &IdealBasis<F>) -> Result<GroebnerBasis<F>> {
    groebner_with(ideal, &WorkLimits::default()).map(|(g, _)| g)
}

/// Buchberger with the normal selection strategy (smallest lcm first,
/// ties by index pair) and the coprime-leading-monomial criterion.
pub fn groebner_with<F: Field>(
    ideal: &IdealBasis<F>,
    limits: &WorkLimits,
) -> Result<(GroebnerBasis<F>, GroebnerStats)> {
    if ideal.arity > limits.max_arity {
        return Err(Error::WorkLimit(format!(
            "arity {} exceeds {}",
            ideal.arity, limits.max_arity
        )));
    }
    for g in &ideal.generators {
        let d = g.degree().unwrap_or(0);
        if d > limits.max_degree {
            return Err(Error::WorkLimit(format!(
                "generator degree {d} exceeds {}",
                limits.max_degree
            )));
        }
    }
    let mut g: Vec<MPoly<F>> = ideal.generators.iter().map(|f| f.monic()).collect();
    let lm = |p: &MPoly<F>| *p.leading_term().unwrap().0;
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((lm(&g[i]).lcm(&lm(&g[j])), i, j));
        }
    }
    let mut stats = GroebnerStats {
        pairs_processed: 0,
        pairs_skipped: 0,
    };
    while let Some((_, i, j)) = pairs.pop_first() {
        if lm(&g[i]).is_coprime(&lm(&g[j])) {
            stats.pairs_skipped += 1;
            continue;
        }
        stats.pairs_processed += 1;
        if stats.pairs_processed > limits.max_pairs {
            return Err(Error::WorkLimit(format!(
                "more than {} S-pairs",
                limits.max_pairs
            )));
        }
        let r = normal_form(&s_poly(&g[i], &g[j])?, &g)?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let k = g.len();
        for (a, ga) in g.iter().enumerate() {
            pairs.insert((lm(ga).lcm(&lm(&r)), a, k));
        }
        g.push(r);
    }
    Ok((
        GroebnerBasis {
            arity: ideal.arity,
            ctx: ideal.ctx.clone(),
            basis: reduce_basis(g)?,
        },
        stats,
    ))
}

fn reduce_basis<F: Field>(mut g: Vec<MPoly<F>>) -> Result<Vec<MPoly<F>>> {
    g.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    let mut minimal: Vec<MPoly<F>> = Vec::new();
    for f in g {
        let m = *f.leading_term().unwrap().0;
        if !minimal
            .iter()
            .any(|h| h.leading_term().unwrap().0.divides(&m))
        {
            minimal.push(f);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut f = minimal[i].clone();
        let (m, c) = f.pop_leading().unwrap();
        let others: Vec<MPoly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let mut tail = normal_form(&f, &others)?;
        tail.add_mul_term(&c, &m, &MPoly::one(f.arity(), f.ctx()))?;
        out.push(tail.monic());
    }
    Ok(out)
}

pub fn ideal_member<F: Field>(f: &MPoly<F>, ideal: &IdealBasis<F>) -> Result<bool> {
    groebner(ideal)?.contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::linalg::Matrix;
    use crate::mpoly::MonomialIndex;
    use proptest::prelude::*;

    fn q(s: &str, n: usize) -> MPoly<Rational> {
        MPoly::parse(s, n, &()).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> IdealBasis<Rational> {
        IdealBasis::parse(gens, n, &()).unwrap()
    }

    #[test]
    fn examples() {
        let g = groebner(&ideal(&["x1", "x2"], 2)).unwrap();
        assert_eq!(g.basis(), &[q("x2", 2), q("x1", 2)]);
        let g = groebner(&ideal(&["x1-x2^2", "x2-x3"], 3)).unwrap();
        // monic under graded-lex: x3^2 leads
        assert_eq!(g.basis(), &[q("x2-x3", 3), q("x3^2-x1", 3)]);
        let g = groebner(&ideal(&["x^2", "x^3"], 1)).unwrap();
        assert_eq!(g.basis(), &[q("x^2", 1)]);
    }

    #[test]
    fn membership_examples() {
        assert!(ideal_member(&q("x1^2*x2", 2), &ideal(&["x1"], 2)).unwrap());
        assert!(!ideal_member(&q("x3", 3), &ideal(&["x1", "x2"], 3)).unwrap());
        assert!(ideal_member(&q("x*(x^2+1)", 1), &ideal(&["x^3+x"], 1)).unwrap());
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        let cases: [&[&str]; 3] = [
            &["x1^2+x2*x3-1", "x1*x2-x3^2", "x3^3-x1"],
            &["x1*x2-1", "x2^2-x3", "x1+x2+x3"],
            &["x1^3-x2*x3", "x2^2*x1-x3^2+x1"],
        ];
        for gens in cases {
            let g = groebner(&ideal(gens, 3)).unwrap();
            let b = g.basis();
            for i in 0..b.len() {
                for j in 0..i {
                    assert!(g
                        .normal_form(&s_poly(&b[i], &b[j]).unwrap())
                        .unwrap()
                        .is_zero());
                }
                for (j, h) in b.iter().enumerate() {
                    if i != j {
                        assert!(!h
                            .leading_term()
                            .unwrap()
                            .0
                            .divides(b[i].leading_term().unwrap().0));
                    }
                }
            }
            for f in gens {
                assert!(g.contains(&q(f, 3)).unwrap());
            }
            assert_eq!(groebner(&g.as_ideal()).unwrap(), g);
        }
    }

    #[test]
    fn unit_ideal() {
        let g = groebner(&ideal(&["x1*x2-1", "x1"], 2)).unwrap();
        assert!(g.is_unit_ideal());
        assert_eq!(g.basis(), &[q("1", 2)]);
    }

    #[test]
    fn work_limits() {
        let i = ideal(&["x1^9"], 2);
        assert!(matches!(groebner(&i), Err(Error::WorkLimit(_))));
        let tight = WorkLimits {
            max_pairs: 1,
            ..WorkLimits::default()
        };
        let i = ideal(&["x1^2+x2*x3-1", "x1*x2-x3^2", "x3^3-x1"], 3);
        assert!(matches!(
            groebner_with(&i, &tight),
            Err(Error::WorkLimit(_))
        ));
    }

    /// Membership in `(f)` among polynomials of degree <= d by linear algebra.
    fn truncated_member(f: &MPoly<Fp>, gen: &MPoly<Fp>, d: u32, p: u64) -> bool {
        let idx = MonomialIndex::up_to(1, d);
        let dg = gen.degree().unwrap();
        let mut m = Matrix::zeros(0, idx.len(), &p);
        for k in 0..=(d.saturating_sub(dg)) {
            if dg + k <= d {
                m.push_row(
                    idx.dense(
                        &gen.mul_term(&Monomial::from_exps(&[k as u16]), &Fp::new(1, p))
                            .unwrap(),
                    )
                    .unwrap(),
                )
                .unwrap();
            }
        }
        let r = m.rank();
        m.push_row(idx.dense(f).unwrap()).unwrap();
        m.rank() == r
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn univariate_membership_matches_linear_algebra(
            g in proptest::collection::vec(0u64..7, 2..5),
            h in proptest::collection::vec(0u64..7, 1..4),
            noise in proptest::collection::vec(0u64..7, 0..3),
        ) {
            let p = 7;
            let uni = |c: &[u64]| MPoly::from_terms(1, &p, c.iter().enumerate().map(|(i, &v)| (Monomial::from_exps(&[i as u16]), Fp::new(v, p))));
            let gen = uni(&g);
            prop_assume!(!gen.is_zero());
            let f = gen.try_mul(&uni(&h)).unwrap().try_add(&uni(&noise)).unwrap();
            let d = f.degree().unwrap_or(0).max(gen.degree().unwrap());
            let i = IdealBasis::new(1, &p, vec![gen.clone()]).unwrap();
            prop_assert_eq!(ideal_member(&f, &i).unwrap(), truncated_member(&f, &gen, d, p));
        }

        #[test]
        fn monomial_ideal_membership(
            gens in proptest::collection::vec(proptest::array::uniform3(0u16..3), 1..4),
            target in proptest::array::uniform3(0u16..6),
        ) {
            let p = 101;
            let polys: Vec<MPoly<Fp>> = gens.iter().map(|e| MPoly::from_terms(3, &p, [(Monomial::from_exps(e), Fp::new(1, p))])).collect();
            let t = Monomial::from_exps(&target);
            let f = MPoly::from_terms(3, &p, [(t, Fp::new(3, p))]);
            let expected = gens.iter().any(|e| Monomial::from_exps(e).divides(&t));
            let i = IdealBasis::new(3, &p, polys).unwrap();
            prop_assert_eq!(ideal_member(&f, &i).unwrap(), expected);
        }
    }
}
