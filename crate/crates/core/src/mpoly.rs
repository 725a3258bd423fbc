//! Sparse multivariate polynomials in up to four variables.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded lexicographic with `x1 > x2 > x3 > x4`. The map never stores a
//! zero coefficient, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::unipoly::UniPoly;

pub const MAX_ARITY: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_ARITY]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_ARITY])
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_ARITY, "at most {MAX_ARITY} variables");
        let mut e = [0; MAX_ARITY];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_ARITY];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16; MAX_ARITY] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn checked_mul(&self, o: &Monomial) -> Result<Monomial> {
        let mut e = [0; MAX_ARITY];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(o.0[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = [0; MAX_ARITY];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = o.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = [0; MAX_ARITY];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].max(o.0[i]);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials in `arity` variables of total degree at most `d`, in
/// ascending graded-lex order.
pub fn monomials_up_to(arity: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        out.extend(monomials_of_degree(arity, deg));
    }
    out
}

/// Monomials of exactly degree `d`, ascending.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, arity: usize, left: u32, cur: &mut [u16; MAX_ARITY], out: &mut Vec<Monomial>) {
        if i + 1 == arity {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, arity, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, arity, d, &mut [0; MAX_ARITY], &mut out);
    out.sort();
    out
}

/// Dense coordinates for a fixed list of monomials.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monos: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(monos: Vec<Monomial>) -> Self {
        let pos = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialIndex { monos, pos }
    }

    pub fn up_to(arity: usize, d: u32) -> Self {
        Self::new(monomials_up_to(arity, d))
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.pos.get(m).copied()
    }

    /// Coefficient vector of `f`; terms outside the index are an error.
    pub fn dense<F: Field>(&self, f: &MPoly<F>) -> Result<Vec<F>> {
        let mut v = vec![F::zero(f.ctx()); self.len()];
        for (m, c) in f.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| Error::InvalidArgument("term outside the monomial index".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn sparse<F: Field>(&self, v: &[F], arity: usize, ctx: &F::Ctx) -> MPoly<F> {
        MPoly::from_terms(
            arity,
            ctx,
            self.monos.iter().copied().zip(v.iter().cloned()),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<F: Field> {
    arity: usize,
    ctx: F::Ctx,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(arity: usize, ctx: &F::Ctx) -> Self {
        assert!(arity <= MAX_ARITY, "at most {MAX_ARITY} variables");
        MPoly {
            arity,
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, arity: usize) -> Self {
        let ctx = c.ctx();
        Self::from_terms(arity, &ctx, [(Monomial::one(), c)])
    }

    pub fn one(arity: usize, ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx), arity)
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(i: usize, arity: usize, ctx: &F::Ctx) -> Self {
        assert!(i < arity);
        Self::from_terms(arity, ctx, [(Monomial::var(i), F::one(ctx))])
    }

    pub fn from_terms(
        arity: usize,
        ctx: &F::Ctx,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Self {
        let mut p = Self::zero(arity, ctx);
        for (m, c) in terms {
            debug_assert!(m.0[arity..].iter().all(|&e| e == 0));
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    fn check_compat(&self, o: &Self) -> Result<()> {
        if self.arity != o.arity {
            return Err(Error::ArityMismatch(self.arity, o.arity));
        }
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_compat(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_compat(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_compat(o)?;
        let mut out = Self::zero(self.arity, &self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.checked_mul(m2)?, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            arity: self.arity,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity, &self.ctx);
        }
        MPoly {
            arity: self.arity,
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Result<Self> {
        let mut out = Self::zero(self.arity, &self.ctx);
        if c.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            out.terms.insert(m1.checked_mul(m)?, c1.clone() * c.clone());
        }
        Ok(out)
    }

    /// `self += c * m * g`, in place.
    pub fn add_mul_term(&mut self, c: &F, m: &Monomial, g: &Self) -> Result<()> {
        self.check_compat(g)?;
        for (m1, c1) in &g.terms {
            self.add_term(m1.checked_mul(m)?, c1.clone() * c.clone());
        }
        Ok(())
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, F)> {
        self.terms.pop_last()
    }

    pub fn try_pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.arity, &self.ctx);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `i` (zero-based).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.arity, &self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            out.add_term(m2, c.clone() * F::from_i64(e as i64, &self.ctx));
        }
        out
    }

    pub fn gradient(&self) -> Result<[Self; 3]> {
        if self.arity != 3 {
            return Err(Error::ArityMismatch(self.arity, 3));
        }
        Ok([self.partial(0), self.partial(1), self.partial(2)])
    }

    pub fn eval(&self, z: &[F]) -> Result<F> {
        if z.len() != self.arity {
            return Err(Error::ArityMismatch(z.len(), self.arity));
        }
        let mut acc = F::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, zi) in z.iter().enumerate() {
                if m.0[i] > 0 {
                    t *= zi.pow(m.0[i] as u64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Keeps the terms of degree at most `d`.
    pub fn truncate(&self, d: u32) -> Self {
        MPoly {
            arity: self.arity,
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            arity: self.arity,
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Substitutes `x_i <- subs[i]`; the result has the arity of the
    /// substituted polynomials.
    pub fn substitute(&self, subs: &[MPoly<F>]) -> Result<MPoly<F>> {
        if subs.len() != self.arity {
            return Err(Error::ArityMismatch(subs.len(), self.arity));
        }
        let arity = subs.first().map_or(0, |s| s.arity);
        let mut powers: Vec<Vec<MPoly<F>>> = subs
            .iter()
            .map(|s| vec![MPoly::one(s.arity, &self.ctx)])
            .collect();
        let mut out = MPoly::zero(arity, &self.ctx);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone(), arity);
            for i in 0..self.arity {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&subs[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.try_mul(&powers[i][e])?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// `f(z + y)` as a polynomial in `y`.
    pub fn shift(&self, z: &[F]) -> Result<MPoly<F>> {
        if z.len() != self.arity {
            return Err(Error::ArityMismatch(z.len(), self.arity));
        }
        let subs: Vec<MPoly<F>> = (0..self.arity)
            .map(|i| {
                MPoly::var(i, self.arity, &self.ctx)
                    .try_add(&MPoly::constant(z[i].clone(), self.arity))
                    .expect("same arity")
            })
            .collect();
        self.substitute(&subs)
    }

    /// Substitutes `x_i <- phi[i](s)`.
    pub fn compose_param(&self, phi: &[UniPoly<F>]) -> Result<UniPoly<F>> {
        if phi.len() != self.arity {
            return Err(Error::ArityMismatch(phi.len(), self.arity));
        }
        let mut powers: Vec<Vec<UniPoly<F>>> = phi
            .iter()
            .map(|_| vec![UniPoly::constant(F::one(&self.ctx))])
            .collect();
        let mut out = UniPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for i in 0..self.arity {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&phi[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `den^deg(f) * f(num/den)`: composition with a rational
    /// parametrization with the common denominator cleared.
    pub fn compose_param_homog(&self, num: &[UniPoly<F>], den: &UniPoly<F>) -> Result<UniPoly<F>> {
        if num.len() != self.arity {
            return Err(Error::ArityMismatch(num.len(), self.arity));
        }
        let d = self.degree().unwrap_or(0);
        let mut den_pows = vec![UniPoly::constant(F::one(&self.ctx))];
        for _ in 0..d {
            den_pows.push(den_pows.last().unwrap().mul(den));
        }
        let mut powers: Vec<Vec<UniPoly<F>>> = num
            .iter()
            .map(|_| vec![UniPoly::constant(F::one(&self.ctx))])
            .collect();
        let mut out = UniPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for i in 0..self.arity {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&num[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            t = t.mul(&den_pows[(d - m.degree()) as usize]);
            out = out.add(&t);
        }
        Ok(out)
    }

    /// The r-jet at `z`: the unique polynomial of degree at most `r` whose
    /// difference with `self` vanishes to order `r + 1` at `z`.
    pub fn jet(&self, z: &[F], r: u32) -> Result<Jet<F>> {
        F::check_order(&self.ctx, r as u64)?;
        let local = self.shift(z)?.truncate(r);
        let back: Vec<F> = z.iter().map(|c| -c.clone()).collect();
        Ok(Jet {
            base: z.to_vec(),
            order: r,
            poly: local.shift(&back)?,
        })
    }

    pub fn map_ctx<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(self.arity, ctx, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Parses the text form (see [`fmt::Display`]) in the given arity.
    pub fn parse(s: &str, arity: usize, ctx: &F::Ctx) -> Result<Self> {
        let mut p = Parser {
            toks: tokenize(s)?,
            pos: 0,
            arity,
            ctx: ctx.clone(),
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }

    /// Parses with arity equal to the largest variable index used (at
    /// least `min_arity`).
    pub fn parse_auto(s: &str, min_arity: usize, ctx: &F::Ctx) -> Result<Self> {
        let arity = tokenize(s)?
            .iter()
            .filter_map(|t| match t {
                Tok::Var(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
            .max(min_arity);
        Self::parse(s, arity, ctx)
    }
}

/// Formal cross product of two triples.
pub fn cross<F: Field>(u: &[MPoly<F>; 3], v: &[MPoly<F>; 3]) -> Result<[MPoly<F>; 3]> {
    let c = |a: usize, b: usize| -> Result<MPoly<F>> {
        u[a].try_mul(&v[b])?.try_sub(&u[b].try_mul(&v[a])?)
    };
    Ok([c(1, 2)?, c(2, 0)?, c(0, 1)?])
}

pub fn dot<F: Field>(u: &[MPoly<F>; 3], v: &[MPoly<F>; 3]) -> Result<MPoly<F>> {
    u[0].try_mul(&v[0])?
        .try_add(&u[1].try_mul(&v[1])?)?
        .try_add(&u[2].try_mul(&v[2])?)
}

macro_rules! mpoly_op {
    ($tr:ident, $f:ident, $try:ident) => {
        impl<F: Field> std::ops::$tr for &MPoly<F> {
            type Output = MPoly<F>;
            /// Panics on arity/field mismatch or exponent overflow; use the
            /// `try_` form to handle those.
            fn $f(self, rhs: &MPoly<F>) -> MPoly<F> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> std::ops::$tr for MPoly<F> {
            type Output = MPoly<F>;
            fn $f(self, rhs: MPoly<F>) -> MPoly<F> {
                (&self).$f(&rhs)
            }
        }
    };
}

mpoly_op!(Add, add, try_add);
mpoly_op!(Sub, sub, try_sub);
mpoly_op!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        MPoly::neg(&self)
    }
}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

/// Terms in descending graded-lex order as `c*x1^a*x2^b*x3^d`, joined by
/// `+`; signs live in the coefficients.
impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let minus_one = (-c.clone()).is_one();
            let negative = text.starts_with('-') || (minus_one && m.degree() > 0);
            if k > 0 && !negative {
                write!(f, "+")?;
            }
            // unit coefficients are left implicit on non-constant terms
            let mut sep = "*";
            if m.degree() == 0 {
                write!(f, "{text}")?;
            } else if c.is_one() {
                sep = "";
            } else if minus_one {
                write!(f, "-")?;
                sep = "";
            } else {
                write!(f, "{text}")?;
            }
            for i in 0..self.arity {
                match m.0[i] {
                    0 => continue,
                    1 => write!(f, "{sep}x{}", i + 1)?,
                    e => write!(f, "{sep}x{}^{e}", i + 1)?,
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

impl<F: Field> serde::Serialize for MPoly<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Truncated Taylor expansion of a polynomial at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet<F: Field> {
    pub base: Vec<F>,
    pub order: u32,
    pub poly: MPoly<F>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(cs[st..i].iter().collect()));
            }
            'x' => {
                i += 1;
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = if st == i {
                    1
                } else {
                    cs[st..i].iter().collect::<String>().parse().unwrap()
                };
                if idx == 0 || idx > MAX_ARITY {
                    return Err(Error::Parse(format!("variable x{idx} out of range")));
                }
                out.push(Tok::Var(idx - 1));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    arity: usize,
    ctx: F::Ctx,
}

impl<F: Field> Parser<F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{n}`")))
            }
            _ => Err(Error::Parse("expected exponent".into())),
        }
    }

    fn factor(&mut self) -> Result<MPoly<F>> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.factor()
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut text = n;
                if self.eat(&Tok::Slash) {
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(d)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return Err(Error::Parse("expected denominator".into())),
                    }
                }
                let c = F::parse(&text, &self.ctx)?;
                let base = MPoly::constant(c, self.arity);
                let e = self.exponent()?;
                base.try_pow(e)
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                if i >= self.arity {
                    return Err(Error::Parse(format!(
                        "variable x{} exceeds arity {}",
                        i + 1,
                        self.arity
                    )));
                }
                let e = self.exponent()?;
                let e = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                let mut m = Monomial::one();
                m.0[i] = e;
                Ok(MPoly::from_terms(
                    self.arity,
                    &self.ctx,
                    [(m, F::one(&self.ctx))],
                ))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                let e = self.exponent()?;
                inner.try_pow(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
