// SPDX-License-Identifier: Apache-2.0
//! Exact scalars over the rationals and prime fields, and the dense linear
//! algebra used throughout the crate.
//!
//! Arithmetic operators on [`Scalar`] panic when the operands live in
//! different fields; the `checked_*` methods report [`Error::FieldMismatch`]
//! instead. Every element of a matrix shares the matrix's field.

mod matrix;
mod rational;

pub use matrix::{linear_solve, Echelon, Matrix, Solution};
pub use rational::Rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

/// Largest prime for which exhaustive searches (square roots, isotropy) run.
pub const EXHAUSTIVE_BOUND: u64 = 10_000;

/// The base field: `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// `F_p`, after a trial-division primality check.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// Q, F2, F3, F5, F7.
    pub fn defaults() -> Vec<FieldSpec> {
        vec![
            FieldSpec::Rationals,
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
            FieldSpec::Prime(5),
            FieldSpec::Prime(7),
        ]
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }

    pub fn is_char2(&self) -> bool {
        self.characteristic() == 2
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// The image of an integer.
    pub fn int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(Rational::from_int(n)),
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u32,
                p: *p,
            },
        }
    }

    /// The image of `n/d`; fails when `d` vanishes in the field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        self.int(n).checked_div(&self.int(d))
    }

    /// All elements of a prime field, in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..*p).map(|v| Scalar::Fp { v, p: *p }).collect()),
        }
    }

    /// Uniform element of `F_p`, or an integer in `[-height, height]` over Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.int(rng.gen_range(-height..=height)),
            FieldSpec::Prime(p) => Scalar::Fp {
                v: rng.gen_range(0..*p),
                p: *p,
            },
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        loop {
            let s = self.random(rng, height);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn vec_zero(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit_vec(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.vec_zero(n);
        v[i] = self.one();
        v
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `Fp`-style names such as `F7`, or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t.trim_start_matches(['F', 'f']);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field '{s}'")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Fp { v: u32, p: u32 },
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    fn same_field(&self, o: &Self) -> bool {
        match (self, o) {
            (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) => p == q,
            _ => false,
        }
    }

    fn add_raw(&self, o: &Self) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Fp { v, p }, Scalar::Fp { v: w, p: q }) if p == q => {
                let s = *v as u64 + *w as u64;
                Scalar::Fp {
                    v: (s % *p as u64) as u32,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    fn sub_raw(&self, o: &Self) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.sub(b)),
            (Scalar::Fp { v, p }, Scalar::Fp { v: w, p: q }) if p == q => {
                let s = *v as u64 + *p as u64 - *w as u64;
                Scalar::Fp {
                    v: (s % *p as u64) as u32,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    fn mul_raw(&self, o: &Self) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Fp { v, p }, Scalar::Fp { v: w, p: q }) if p == q => Scalar::Fp {
                v: ((*v as u64 * *w as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Scalar> {
        if !self.same_field(o) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add_raw(o))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Scalar> {
        if !self.same_field(o) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.sub_raw(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Scalar> {
        if !self.same_field(o) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_raw(o))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Scalar> {
        if !self.same_field(o) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_raw(&o.inv()?))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => r.inv().map(Scalar::Rat).ok_or(Error::DivisionByZero),
            Scalar::Fp { v: 0, .. } => Err(Error::DivisionByZero),
            Scalar::Fp { v, p } => Ok(Scalar::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            }),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// A square root when one exists.
    ///
    /// Over `F_p` the search is exhaustive and refuses `p > 10^4`; over Q it
    /// takes integer square roots of numerator and denominator.
    pub fn is_square(&self) -> Result<Option<Scalar>> {
        match self {
            Scalar::Rat(r) => Ok(r.sqrt().map(Scalar::Rat)),
            Scalar::Fp { v, p } => {
                if *p as u64 > EXHAUSTIVE_BOUND {
                    return Err(Error::FieldTooLarge {
                        p: *p as u64,
                        bound: EXHAUSTIVE_BOUND,
                    });
                }
                let (v, p) = (*v as u64, *p as u64);
                Ok((0..p)
                    .find(|r| r * r % p == v)
                    .map(|r| Scalar::Fp {
                        v: r as u32,
                        p: p as u32,
                    }))
            }
        }
    }

    /// Euler's criterion in odd characteristic; always true in `F_2` and
    /// falls back to [`Scalar::is_square`] over Q.
    pub fn is_square_fast(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.sqrt().is_some(),
            Scalar::Fp { v, p } => {
                if *v == 0 || *p == 2 {
                    return true;
                }
                self.pow((*p as u64 - 1) / 2).is_one()
            }
        }
    }

    /// Total order used for canonical tie-breaking: numeric order over Q,
    /// residue order over `F_p`.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { v, .. }, Scalar::Fp { v: w, .. }) => v.cmp(w),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    /// Parses the textual form produced by `Display` in the given field.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let r = Rational::parse(s).ok_or_else(|| Error::Parse(format!("bad scalar '{s}'")))?;
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rat(r)),
            FieldSpec::Prime(p) => {
                let m = num_bigint::BigInt::from(p);
                let reduce = |x: num_bigint::BigInt| -> u32 {
                    let r = ((x % &m) + &m) % &m;
                    u32::try_from(r).expect("residue fits")
                };
                let n = reduce(r.numer());
                let d = reduce(r.denom());
                Scalar::Fp { v: n, p }.checked_div(&Scalar::Fp { v: d, p })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $raw:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$raw(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$raw(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$raw(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$raw(&o)
            }
        }
    };
}

binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("scalar division")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        (&self).div(&o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.neg()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_raw(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_raw(o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_raw(o);
    }
}

/// Dot product of two vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = a.first().map(|s| s.field().zero()).unwrap_or(Scalar::Rat(Rational::zero()));
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `a + c*b`, componentwise.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Renders a vector as `[a, b, c]`.
pub fn fmt_vec(a: &[Scalar]) -> String {
    let parts: Vec<String> = a.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Lexicographic comparison with [`Scalar::canonical_cmp`].
pub fn lex_cmp(a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
