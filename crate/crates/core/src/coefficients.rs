//! Exact scalars: arbitrary-precision rationals and univariate rational
//! functions in the deformation parameter `b` (β).
//!
//! [`RatFunc`] keeps a canonical form: numerator and denominator are integer
//! polynomials with no common factor and no common integer content, and the
//! denominator has a positive leading coefficient. Two equal rational
//! functions are therefore structurally equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoefficientError;

/// Arbitrary-precision rational number.
pub type BigRat = num_rational::BigRational;

/// Dense polynomial in `b` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * b^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest power of `b` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn div_exact_int(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    fn primitive_part(&self) -> Poly {
        let mut c = self.content();
        if c.is_zero() {
            return Poly::zero();
        }
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_exact_int(&c)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    /// Coefficients reversed: `b^deg * p(1/b)`.
    fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Exact quotient in `Z[b]`; panics if `d` does not divide `self`.
    fn div_exact(&self, d: &Poly) -> Poly {
        if d.is_one() {
            return self.clone();
        }
        if d.is_constant() {
            return self.div_exact_int(&d.coeffs[0]);
        }
        let (q, r) = self.div_rem_integral(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Division with remainder, valid when every step divides exactly in `Z`.
    fn div_rem_integral(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.coeffs.len() - 1;
        let lead = &d.coeffs[dd];
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(lead);
            if !rem.is_zero() {
                return (Poly::zero(), self.clone());
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.coeffs.len() - 1;
        let lead = &d.coeffs[dd];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.coeffs[dr].clone();
            let shift = dr - dd;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * lead).collect();
            for (i, dc) in d.coeffs.iter().enumerate() {
                next[shift + i] -= &lr * dc;
            }
            r = Poly::from_coeffs(next);
        }
        r
    }

    /// Greatest common divisor in `Z[b]` with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_sign();
        }
        if other.is_zero() {
            return self.primitive_sign();
        }
        let c = self.content().gcd(&other.content());
        if self.is_constant() || other.is_constant() {
            return Poly::constant(c);
        }
        let vs = self.valuation().unwrap_or(0);
        let vo = other.valuation().unwrap_or(0);
        let shift = vs.min(vo);
        let mut a = self.primitive_part().strip_low(vs);
        let mut b = other.primitive_part().strip_low(vo);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        let g = a.primitive_part();
        let g = if shift > 0 { g.shift_up(shift) } else { g };
        g.scale(&c)
    }

    fn primitive_sign(&self) -> Poly {
        if self.leading().is_some_and(|l| l.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    fn strip_low(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[k..].to_vec())
    }

    fn shift_up(&self, k: usize) -> Poly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(coeffs)
    }

    fn fmt_terms(&self, out: &mut String) {
        if self.is_zero() {
            out.push('0');
            return;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !first {
                out.push('+');
            }
            first = false;
            if k == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push('b');
            if k > 1 {
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Reduced rational function in `b` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Point at which a [`RatFunc`] is evaluated or limited.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalPoint {
    Value(BigRat),
    Zero,
    Infinity,
}

/// Result of a limit computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRat),
    Diverges,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    /// The parameter `b` itself.
    pub fn beta() -> Self {
        RatFunc {
            num: Poly::monomial(BigInt::one(), 1),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    pub fn from_rat(r: &BigRat) -> Self {
        RatFunc {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoefficientError> {
        if den.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    /// `a + c*b` for small integers, a common shape for eigenvalues.
    pub fn linear(a: i64, c: i64) -> Self {
        RatFunc::from_poly(Poly::from_coeffs(vec![BigInt::from(a), BigInt::from(c)]))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `b`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value of a constant function.
    pub fn as_constant(&self) -> Option<BigRat> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs.first().cloned().unwrap_or_default();
        Some(BigRat::new(n, self.den.coeffs[0].clone()))
    }

    pub fn inv(&self) -> Result<RatFunc, CoefficientError> {
        if self.is_zero() {
            return Err(CoefficientError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Ok(RatFunc { num, den })
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, CoefficientError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, k: i64) -> Result<RatFunc, CoefficientError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow(k.unsigned_abs() as u32))
    }

    pub fn eval(&self, x: &BigRat) -> Result<BigRat, CoefficientError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(CoefficientError::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn limit(&self, point: &EvalPoint) -> Result<Limit, CoefficientError> {
        match point {
            EvalPoint::Value(x) => self.eval(x).map(Limit::Finite),
            EvalPoint::Zero => Ok(match self.eval(&BigRat::zero()) {
                Ok(v) => Limit::Finite(v),
                Err(_) => Limit::Diverges,
            }),
            EvalPoint::Infinity => Ok(self.limit_at_infinity()),
        }
    }

    pub fn limit_at_infinity(&self) -> Limit {
        let dn = match self.num.degree() {
            None => return Limit::Finite(BigRat::zero()),
            Some(d) => d,
        };
        let dd = self.den.degree().unwrap_or(0);
        match dn.cmp(&dd) {
            Ordering::Less => Limit::Finite(BigRat::zero()),
            Ordering::Equal => Limit::Finite(BigRat::new(
                self.num.leading().cloned().unwrap_or_default(),
                self.den.leading().cloned().unwrap_or_else(BigInt::one),
            )),
            Ordering::Greater => Limit::Diverges,
        }
    }

    /// Substitutes `b -> 1/b`.
    pub fn at_reciprocal_beta(&self) -> RatFunc {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd > dn {
            num = num.shift_up(dd - dn);
        } else if dn > dd {
            den = den.shift_up(dn - dd);
        }
        RatFunc::reduce(num, den)
    }

    /// Substitutes a rational value for `b`.
    pub fn substitute(&self, x: &BigRat) -> Result<RatFunc, CoefficientError> {
        self.eval(x).map(|v| RatFunc::from_rat(&v))
    }

    /// True when the value is a polynomial in `1/b` with integer coefficients.
    pub fn is_integral_in_inverse_beta(&self) -> bool {
        let inv = self.at_reciprocal_beta();
        inv.den.is_one()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc::reduce(num, rhs.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_exact(&g);
        let c = self.den.div_exact(&g);
        let num = &(&self.num * &a) + &(&rhs.num * &c);
        let den = &self.den * &a;
        RatFunc::reduce(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        if den.leading().is_some_and(|l| l.is_negative()) {
            return RatFunc { num: -&num, den: -&den };
        }
        RatFunc { num, den }
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] to recover.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |acc, x| acc * x)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<BigRat> for RatFunc {
    fn from(r: BigRat) -> Self {
        RatFunc::from_rat(&r)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.den.is_one() {
            self.num.fmt_terms(&mut out);
            return f.write_str(&out);
        }
        let wrap_num = self.num.term_count() > 1;
        if wrap_num {
            out.push('(');
        }
        self.num.fmt_terms(&mut out);
        if wrap_num {
            out.push(')');
        }
        out.push('/');
        let bare_den = self.den.is_constant()
            || (self.den.term_count() == 1 && self.den.leading().is_some_and(|l| l.is_one()));
        if !bare_den {
            out.push('(');
        }
        self.den.fmt_terms(&mut out);
        if !bare_den {
            out.push(')');
        }
        f.write_str(&out)
    }
}

impl FromStr for RatFunc {
    type Err = CoefficientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
            text: s,
        };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> CoefficientError {
        CoefficientError::Parse(format!("{what} at byte {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, CoefficientError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, CoefficientError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc * rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, CoefficientError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, CoefficientError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, CoefficientError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(RatFunc::beta())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("bad integer"))?;
                Ok(RatFunc::from_bigint(n))
            }
            _ => Err(self.error("expected number, 'b' or '('")),
        }
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(x)_n = x(x-1)...(x-n+1)`.
pub fn falling_factorial(x: &RatFunc, n: u32) -> RatFunc {
    (0..n).map(|k| x - &RatFunc::from_int(k as i64)).product()
}

/// `(b)_n`.
pub fn beta_falling_factorial(n: u32) -> RatFunc {
    falling_factorial(&RatFunc::beta(), n)
}

/// `binomial(b+n-1, n) = (b+n-1)_n / n!`.
pub fn beta_binomial(n: u32) -> RatFunc {
    let top = &RatFunc::beta() + &RatFunc::from_int(n as i64 - 1);
    let fact = RatFunc::from_bigint(factorial(n));
    &falling_factorial(&top, n) / &fact
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_and_inverse() {
        let b = RatFunc::beta();
        assert_eq!(&b + &(RatFunc::one() - b.clone()), RatFunc::one());
        assert_eq!(&b * &b.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn division_matches_long_division() {
        let q = rf("b^2-1").checked_div(&rf("b-1")).unwrap();
        assert_eq!(q, rf("b+1"));
        assert!(q.denom().is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(CoefficientError::DivisionByZero)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(rf("(2*b+1)/(b+2)").to_string(), "(2*b+1)/(b+2)");
        assert_eq!(rf("6/4").to_string(), "3/2");
        assert_eq!(rf("-1/8").to_string(), "-1/8");
        assert_eq!(rf("1/b").to_string(), "1/b");
        assert_eq!(rf("1/(2*b)").to_string(), "1/(2*b)");
        assert_eq!(rf("b^2-b").to_string(), "b^2-b");
        assert_eq!(rf("(b+1)/2").to_string(), "(b+1)/2");
        assert_eq!(rf("0").to_string(), "0");
        assert_eq!(rf("(2*b+2)/(4*b)").to_string(), "(b+1)/(2*b)");
    }

    #[test]
    fn denominator_sign_normalized() {
        let a = rf("1/(1-b)");
        assert_eq!(a.to_string(), "-1/(b-1)");
        assert_eq!(a, rf("-1/(b-1)"));
    }

    #[test]
    fn limits() {
        assert_eq!(rf("1/b").limit_at_infinity(), Limit::Finite(rat(0, 1)));
        assert_eq!(rf("(2*b+1)/(b+2)").limit_at_infinity(), Limit::Finite(rat(2, 1)));
        assert_eq!(rf("b^2/(b+1)").limit_at_infinity(), Limit::Diverges);
        assert_eq!(rf("1/b").limit(&EvalPoint::Zero).unwrap(), Limit::Diverges);
        let one_over_beta = RatFunc::one().checked_div(&beta_falling_factorial(1)).unwrap();
        assert_eq!(one_over_beta.eval(&rat(1, 1)).unwrap(), rat(1, 1));
        assert!(matches!(rf("1/(b-2)").eval(&rat(2, 1)), Err(CoefficientError::Pole(_))));
    }

    #[test]
    fn combinatorial_factors() {
        assert_eq!(beta_falling_factorial(0), RatFunc::one());
        assert_eq!(beta_falling_factorial(2), rf("b^2-b"));
        assert_eq!(beta_binomial(2), rf("(b+1)*b/2"));
        assert_eq!(beta_binomial(0), RatFunc::one());
    }

    #[test]
    fn reciprocal_substitution() {
        assert_eq!(rf("(2*b+1)/(b+2)").at_reciprocal_beta(), rf("(b+2)/(2*b+1)"));
        assert_eq!(rf("b^3+1").at_reciprocal_beta(), rf("(1+b^3)/b^3"));
        assert!(rf("(3*b+2)/b^2").is_integral_in_inverse_beta());
        assert!(!rf("1/(2*b)").is_integral_in_inverse_beta());
        assert!(!rf("b").is_integral_in_inverse_beta());
        assert!(!rf("1/(b+1)").is_integral_in_inverse_beta());
    }

    #[test]
    fn gcd_handles_shared_powers_of_beta() {
        let a = rf("(b^3+b^2)/(b^2)");
        assert_eq!(a, rf("b+1"));
    }
}
