//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Field`]. Two
//! implementations ship: prime fields [`Fp`] with a runtime modulus below
//! 2^63, and arbitrary-precision [`Rational`] numbers. Field constants are
//! built from a context value ([`Field::Ctx`]) because the modulus of an
//! `Fp` element is only known at runtime.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{gauss_jordan, Matrix};

/// Smallest prime used for brute-force enumerations.
pub const SEARCH_PRIME_MIN: u64 = 101;
/// Largest prime for which exhaustive scans are attempted.
pub const SEARCH_PRIME_MAX: u64 = 65537;
/// Mersenne prime 2^61 - 1, used where generic position matters.
pub const ALGEBRA_PRIME: u64 = (1 << 61) - 1;

pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Send
    + Sync
    + Serialize
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Data needed to build constants of the field.
    type Ctx: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(n: i64, ctx: &Self::Ctx) -> Self;
    fn from_bigint(n: &BigInt, ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    /// 0 for characteristic zero.
    fn characteristic(ctx: &Self::Ctx) -> u64;
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    /// Parses an integer or a fraction `a/b`.
    fn parse(s: &str, ctx: &Self::Ctx) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad number `{t}`")))
        };
        let n = Self::from_bigint(&parse_int(num)?, ctx);
        match den {
            None => Ok(n),
            Some(d) => n.div(&Self::from_bigint(&parse_int(d)?, ctx)),
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Reduces `m` in place to reduced row echelon form and returns the
    /// pivot columns. Fields may override this with a better-behaved
    /// elimination; the result must be the unique RREF.
    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        gauss_jordan(m)
    }

    /// Checks that `order` is usable as a Taylor or derivative order.
    fn check_order(ctx: &Self::Ctx, order: u64) -> Result<()> {
        let p = Self::characteristic(ctx);
        if p != 0 && order >= p {
            return Err(Error::Characteristic {
                order,
                characteristic: p,
            });
        }
        Ok(())
    }
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    /// `p` must be prime and below 2^63; see [`Fp::checked_modulus`].
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_i64_mod(n: i64, p: u64) -> Self {
        let r = (n as i128).rem_euclid(p as i128) as u64;
        Fp { v: r, p }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    /// Validates a modulus for use with `Fp`.
    pub fn checked_modulus(p: u64) -> Result<u64> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(p)
    }

    /// Representative in (-p/2, p/2].
    pub fn signed(self) -> i128 {
        if self.v > self.p / 2 {
            self.v as i128 - self.p as i128
        } else {
            self.v as i128
        }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Serialize for Fp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: if self.v >= rhs.v {
                self.v - rhs.v
            } else {
                self.v + self.p - rhs.v
            },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_i64(n: i64, p: &u64) -> Self {
        Fp::from_i64_mod(n, *p)
    }
    fn from_bigint(n: &BigInt, p: &u64) -> Self {
        let r = n.mod_floor(&BigInt::from(*p));
        Fp {
            v: r.to_u64().expect("residue fits in u64"),
            p: *p,
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut a, mut b) = (self.v as i128, self.p as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Ok(Fp {
            v: x0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }
    fn characteristic(p: &u64) -> u64 {
        *p
    }
    fn random<R: Rng + ?Sized>(p: &u64, rng: &mut R) -> Self {
        Fp {
            v: rng.gen_range(0..*p),
            p: *p,
        }
    }
}

/// Arbitrary-precision rational number, always stored in lowest terms with
/// a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational(self.0.$f(rhs.0))
            }
        }
        impl $atr for Rational {
            fn $af(&mut self, rhs: Rational) {
                self.0.$af(rhs.0);
            }
        }
    };
}

rational_binop!(Add, add, AddAssign, add_assign);
rational_binop!(Sub, sub, SubAssign, sub_assign);
rational_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(n: i64, _: &()) -> Self {
        Rational::from_integer(n)
    }
    fn from_bigint(n: &BigInt, _: &()) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn random<R: Rng + ?Sized>(_: &(), rng: &mut R) -> Self {
        Rational::from_integer(rng.gen_range(-9..=9))
    }
    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        crate::linalg::bareiss_rref(m)
    }
}

impl Rational {
    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of a field element; fails on zero.
pub fn field_inv<F: Field>(a: &F) -> Result<F> {
    a.inv()
}

/// `n!` in the field.
pub fn factorial<F: Field>(n: u64, ctx: &F::Ctx) -> F {
    (1..=n).fold(F::one(ctx), |acc, k| acc * F::from_i64(k as i64, ctx))
}

/// Converts an exact integer-valued rational into `F`.
pub fn from_rational<F: Field>(q: &Rational, ctx: &F::Ctx) -> Result<F> {
    F::from_bigint(q.numer(), ctx).div(&F::from_bigint(q.denom(), ctx))
}
