//! Univariate polynomials and root finding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational, SEARCH_PRIME_MAX};

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F: Field> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F::Ctx) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_i64(coeffs: &[i64], ctx: &F::Ctx) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c, ctx)).collect(), ctx)
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Self::new(Vec::new(), ctx)
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], &ctx)
    }

    /// The polynomial `s`.
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::new(vec![F::zero(ctx), F::one(ctx)], ctx)
    }

    /// `a + b*s`.
    pub fn linear(a: F, b: F) -> Self {
        let ctx = a.ctx();
        Self::new(vec![a, b], &ctx)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, s: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc * s.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            &self.ctx,
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
            &self.ctx,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
            &self.ctx,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.ctx)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = vec![F::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(out, &self.ctx)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(F::one(&self.ctx));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let linv = d.leading().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * linv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q, &self.ctx), Self::new(r, &self.ctx)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64, &self.ctx))
                .collect(),
            &self.ctx,
        )
    }

    /// `self(inner(s))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ctx), |acc, c| {
                acc.mul(inner).add(&Self::constant(c.clone()))
            })
    }

    /// `s^n * self(1/s)`; `n` must be at least the degree.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = vec![F::zero(&self.ctx); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::new(c, &self.ctx)
    }

    /// Multiplicity of `s0` as a root; `None` for the zero polynomial.
    pub fn vanishing_order_at(&self, s0: &F) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.compose(&Self::linear(s0.clone(), F::one(&self.ctx)));
        shifted.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::constant(F::one(&self.ctx)).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{i}")?,
            }
        }
        Ok(())
    }
}

/// Fields in which the roots of a univariate polynomial can be listed.
pub trait RootFinding: Field {
    /// Distinct roots, sorted. `seed` drives any randomized splitting.
    fn roots(f: &UniPoly<Self>, seed: u64) -> Result<Vec<Self>>;
}

/// Distinct roots of a nonzero polynomial, sorted.
pub fn uni_roots<F: RootFinding>(f: &UniPoly<F>) -> Result<Vec<F>> {
    F::roots(f, 0)
}

pub fn uni_roots_seeded<F: RootFinding>(f: &UniPoly<F>, seed: u64) -> Result<Vec<F>> {
    F::roots(f, seed)
}

fn scan_roots(f: &UniPoly<Fp>, p: u64) -> Vec<Fp> {
    (0..p)
        .map(|v| Fp::new(v, p))
        .filter(|a| f.eval(a).is_zero())
        .collect()
}

impl RootFinding for Fp {
    fn roots(f: &UniPoly<Fp>, seed: u64) -> Result<Vec<Fp>> {
        if f.is_zero() {
            return Err(Error::InvalidArgument(
                "roots of the zero polynomial".into(),
            ));
        }
        let p = *f.ctx();
        if p <= 3 {
            return Ok(scan_roots(f, p));
        }
        let f = f.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        // product of the distinct linear factors
        let x = UniPoly::x(&p);
        let xp = x.pow_mod(p, &f)?;
        let g = f.gcd(&xp.sub(&x));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        let mut stack = vec![g];
        while let Some(g) = stack.pop() {
            match g.degree() {
                None | Some(0) => continue,
                Some(1) => {
                    out.push(-g.coeff(0));
                    continue;
                }
                _ => {}
            }
            let mut split = None;
            for _ in 0..256 {
                let a = Fp::random(&p, &mut rng);
                let w = UniPoly::linear(a, Fp::one(&p))
                    .pow_mod((p - 1) / 2, &g)?
                    .sub(&UniPoly::constant(Fp::one(&p)));
                let d = g.gcd(&w);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    split = Some(d);
                    break;
                }
            }
            match split {
                Some(d) => {
                    let (q, _) = g.div_rem(&d)?;
                    stack.push(d);
                    stack.push(q);
                }
                None if p <= SEARCH_PRIME_MAX => out.extend(scan_roots(&g, p)),
                None => return Err(Error::WorkLimit("equal-degree splitting stalled".into())),
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl RootFinding for Rational {
    /// Rational roots by the rational root test. Coefficients of the
    /// integer-normalised polynomial must stay below 10^12 in magnitude.
    fn roots(f: &UniPoly<Rational>, _seed: u64) -> Result<Vec<Rational>> {
        if f.is_zero() {
            return Err(Error::InvalidArgument(
                "roots of the zero polynomial".into(),
            ));
        }
        let lcm = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = f
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
        let mut out = Vec::new();
        if shift > 0 {
            out.push(Rational::from_integer(0));
        }
        let ints = &ints[shift..];
        if ints.len() > 1 {
            let to_u64 = |n: &BigInt| {
                n.abs()
                    .to_u64()
                    .filter(|&v| v <= RATIONAL_ROOT_LIMIT)
                    .ok_or_else(|| {
                        Error::Unsupported("rational root search on large coefficients".into())
                    })
            };
            let a0 = to_u64(&ints[0])?;
            let an = to_u64(ints.last().unwrap())?;
            for q in positive_divisors(an) {
                for num in positive_divisors(a0) {
                    for sign in [1i64, -1] {
                        let cand = Rational(num_rational::BigRational::new(
                            BigInt::from(num) * sign,
                            BigInt::from(q),
                        ));
                        if f.eval(&cand).is_zero() {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}
