//! Exact and certified real scalars.
//!
//! Three layers are provided: arbitrary precision rationals, the quadratic
//! field Q(√3) with exact sign decisions, and rational intervals whose
//! endpoints are rounded outward to 128-bit dyadic significands. [`Real`]
//! combines the exact field with intervals so that a single computation can
//! stay exact for as long as its inputs are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Builds the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim().trim_start_matches(['-', '+']);
        let whole_value = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_value = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = Rational::new(whole_value * &scale + frac_value, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Nearest double to a rational.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// Sign of a rational as an ordering against zero.
pub fn rational_sign(q: &Rational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Exact square root of a nonnegative rational when it is a perfect square.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Element `rational + surd·√3` of the quadratic field Q(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    rational: Rational,
    surd: Rational,
}

impl QSqrt3 {
    /// Builds `rational + surd·√3`.
    pub fn new(rational: Rational, surd: Rational) -> Self {
        Self { rational, surd }
    }

    /// Embeds a rational.
    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero())
    }

    /// Embeds an integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The square root of three.
    pub fn sqrt3() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// The additive identity.
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// The multiplicative identity.
    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational coordinate.
    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Coefficient of √3.
    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The value as a rational, if the √3 coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.surd.is_zero().then_some(&self.rational)
    }

    /// Galois conjugate `rational − surd·√3`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.surd.clone())
    }

    /// Field norm `rational² − 3·surd²`.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - int(3) * &self.surd * &self.surd
    }

    /// Exact sign against zero.
    pub fn signum(&self) -> Ordering {
        let sa = rational_sign(&self.rational);
        let sb = rational_sign(&self.surd);
        match (sa, sb) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (a, b) if a == b => a,
            (a, b) => {
                let lhs = &self.rational * &self.rational;
                let rhs = int(3) * &self.surd * &self.surd;
                if lhs > rhs {
                    a
                } else {
                    b
                }
            }
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.rational / &n, -&self.surd / &n))
    }

    /// Exact square root inside Q(√3), when one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(Self::zero()),
            Ordering::Greater => {}
        }
        if self.surd.is_zero() {
            if let Some(r) = rational_sqrt_exact(&self.rational) {
                return Some(Self::from_rational(r));
            }
            let third = &self.rational / int(3);
            return rational_sqrt_exact(&third).map(|r| Self::new(Rational::zero(), r));
        }
        let s = rational_sqrt_exact(&self.norm())?;
        let half = rat(1, 2);
        for x_sq in [(&self.rational + &s) * &half, (&self.rational - &s) * &half] {
            if x_sq.is_positive() {
                if let Some(x) = rational_sqrt_exact(&x_sq) {
                    let y = &self.surd / (int(2) * &x);
                    let candidate = Self::new(x, y);
                    let root = if candidate.signum() == Ordering::Less {
                        -candidate
                    } else {
                        candidate
                    };
                    if &(&root * &root) == self {
                        return Some(root);
                    }
                }
            }
        }
        None
    }

    /// Certified enclosure.
    pub fn to_interval(&self) -> Interval {
        let r = Interval::point(self.rational.clone());
        if self.surd.is_zero() {
            return r;
        }
        r.add(&Interval::sqrt3().mul(&Interval::point(self.surd.clone())))
    }

    /// Nearest-ish double.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational) + rational_to_f64(&self.surd) * 3f64.sqrt()
    }

    /// Multiplies by a rational.
    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.rational * q, &self.surd * q)
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<Rational> for QSqrt3 {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for QSqrt3 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return f.write_str(&format_rational(&self.rational));
        }
        let sign = if self.surd.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}√3",
            format_rational(&self.rational),
            sign,
            format_rational(&self.surd.abs())
        )
    }
}

impl FromStr for QSqrt3 {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let Some(body) = s.strip_suffix("√3") else {
            return parse_rational(s).map(Self::from_rational);
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .rfind(|&i| !body[..i].ends_with(['/', 'e', 'E']));
        match split {
            Some(i) => {
                let rational = parse_rational(&body[..i])?;
                let surd_text = &body[i..];
                let surd = parse_rational(surd_text.strip_prefix('+').unwrap_or(surd_text))?;
                Ok(Self::new(rational, surd))
            }
            None => Ok(Self::new(Rational::zero(), parse_rational(body)?)),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

impl Add<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3::new(&self.rational + &rhs.rational, &self.surd + &rhs.surd)
    }
}

impl Sub<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3::new(&self.rational - &rhs.rational, &self.surd - &rhs.surd)
    }
}

impl Mul<&QSqrt3> for &QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3::new(
            &self.rational * &rhs.rational + int(3) * &self.surd * &rhs.surd,
            &self.rational * &rhs.surd + &self.surd * &rhs.rational,
        )
    }
}

forward_binop!(QSqrt3, Add, add);
forward_binop!(QSqrt3, Sub, sub);
forward_binop!(QSqrt3, Mul, mul);

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-&self.rational, -&self.surd)
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        -&self
    }
}

/// Significant bits kept in interval endpoints.
pub const INTERVAL_PRECISION: u64 = 128;

/// Working precision in bits of the fixed-point series evaluations.
const WORK_BITS: usize = 224;

/// Error budget, in units of the last fixed-point place, of every series.
const SERIES_SLACK: i64 = 1 << 20;

fn bit_length(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// floor(log2 |q|) for nonzero q.
fn floor_log2(q: &Rational) -> i64 {
    let n = q.numer().abs();
    let d = q.denom();
    let mut e = bit_length(&n) - bit_length(d);
    let below = if e >= 0 {
        n < (d << e as usize)
    } else {
        (n << (-e) as usize) < *d
    };
    if below {
        e -= 1;
    }
    e
}

fn scale_pow2(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        Rational::new(q.numer() << k as usize, q.denom().clone())
    } else {
        Rational::new(q.numer().clone(), q.denom() << (-k) as usize)
    }
}

fn round_dyadic(q: &Rational, up: bool) -> Rational {
    if q.is_zero() {
        return q.clone();
    }
    if bit_length(q.numer()) + bit_length(q.denom()) <= INTERVAL_PRECISION as i64 + 64 {
        return q.clone();
    }
    let k = INTERVAL_PRECISION as i64 - 1 - floor_log2(q);
    let scaled = scale_pow2(q, k);
    let m = if up { scaled.ceil() } else { scaled.floor() };
    scale_pow2(&m, -k)
}

/// Closed interval `[lo, hi]` with rational endpoints, rounded outward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Interval from endpoints; fails unless `lo ≤ hi`.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!(
                "empty interval [{}, {}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Self::rounded(lo, hi))
    }

    fn rounded(lo: Rational, hi: Rational) -> Self {
        Self {
            lo: round_dyadic(&lo, false),
            hi: round_dyadic(&hi, true),
        }
    }

    /// Degenerate interval at a rational.
    pub fn point(q: Rational) -> Self {
        Self::rounded(q.clone(), q)
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// Rational midpoint.
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Half the width.
    pub fn radius(&self) -> Rational {
        (&self.hi - &self.lo) / int(2)
    }

    /// Width `hi − lo`.
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// True when zero lies in the interval.
    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// True when `q` lies in the interval.
    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Sign when the interval decides it; `Equal` only for `[0, 0]`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Interval sum.
    pub fn add(&self, rhs: &Self) -> Self {
        Self::rounded(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    /// Interval difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        Self::rounded(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Interval product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Self::rounded(lo, hi)
    }

    /// Square, tighter than `mul(self, self)` when zero is inside.
    pub fn sqr(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = a.clone().max(b.clone());
        let lo = if self.contains_zero() {
            Rational::zero()
        } else {
            a.min(b)
        };
        Self::rounded(lo, hi)
    }

    /// Reciprocal; fails when zero is inside.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Undecided(format!(
                "reciprocal of an interval containing zero: {self}"
            )));
        }
        Ok(Self::rounded(self.hi.recip(), self.lo.recip()))
    }

    /// Quotient; fails when the divisor contains zero.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Square root; the part below zero is clipped, fully negative input fails.
    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::Domain(format!(
                "square root of negative interval {self}"
            )));
        }
        let lo = if self.lo.is_positive() {
            sqrt_bound(&self.lo, false)
        } else {
            Rational::zero()
        };
        Ok(Self::rounded(lo, sqrt_bound(&self.hi, true)))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, rhs: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(rhs.lo.clone()),
            hi: self.hi.clone().max(rhs.hi.clone()),
        }
    }

    /// Enlarges the interval by `r` on both sides.
    pub fn widen(&self, r: &Rational) -> Self {
        Self::rounded(&self.lo - r, &self.hi + r)
    }

    /// Approximate midpoint as a double.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// Enclosure of π.
    pub fn pi() -> Self {
        static PI: OnceLock<Interval> = OnceLock::new();
        PI.get_or_init(|| {
            let five = atan_inverse_integer(5);
            let big = atan_inverse_integer(239);
            let value = (five << 4usize) - (big << 2usize);
            fixed_to_interval(&value, 20 * SERIES_SLACK)
        })
        .clone()
    }

    /// Enclosure of √3.
    pub fn sqrt3() -> Self {
        static SQRT3: OnceLock<Interval> = OnceLock::new();
        SQRT3
            .get_or_init(|| Interval::point(int(3)).sqrt().expect("three is positive"))
            .clone()
    }

    /// Enclosure of atan of a rational.
    pub fn atan_of(x: &Rational) -> Self {
        if x.is_negative() {
            return Self::atan_of(&-x).neg();
        }
        if x > &int(1) {
            let half_pi = Self::pi().mul(&Self::point(rat(1, 2)));
            return half_pi.sub(&Self::atan_of(&x.recip()));
        }
        if x <= &rat(1, 2) {
            return fixed_to_interval(&atan_series(x), SERIES_SLACK);
        }
        let reduced = (int(2) * x - int(1)) / (int(2) + x);
        let value = atan_series(&rat(1, 2)) + atan_series(&reduced);
        fixed_to_interval(&value, 2 * SERIES_SLACK)
    }

    /// Enclosure of sin of a rational with |x| ≤ 8.
    pub fn sin_of(x: &Rational) -> Result<Self> {
        check_trig_argument(x)?;
        Ok(fixed_to_interval(&sin_cos_series(x, true), SERIES_SLACK))
    }

    /// Enclosure of cos of a rational with |x| ≤ 8.
    pub fn cos_of(x: &Rational) -> Result<Self> {
        check_trig_argument(x)?;
        Ok(fixed_to_interval(&sin_cos_series(x, false), SERIES_SLACK))
    }

    /// Enclosure of atan over the interval, using the Lipschitz bound 1.
    pub fn atan(&self) -> Self {
        Self::atan_of(&self.midpoint()).widen(&self.radius())
    }

    /// Enclosure of sin over the interval, using the Lipschitz bound 1.
    pub fn sin(&self) -> Result<Self> {
        Ok(Self::sin_of(&self.midpoint())?.widen(&self.radius()))
    }

    /// Enclosure of cos over the interval, using the Lipschitz bound 1.
    pub fn cos(&self) -> Result<Self> {
        Ok(Self::cos_of(&self.midpoint())?.widen(&self.radius()))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("not an interval: {text:?}")))?;
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("not an interval: {text:?}")))?;
        Interval::new(parse_rational(lo)?, parse_rational(hi)?)
    }
}

fn check_trig_argument(x: &Rational) -> Result<()> {
    if x.abs() > int(8) {
        return Err(Error::Domain(format!(
            "trigonometric argument {} outside [-8, 8]",
            format_rational(x)
        )));
    }
    Ok(())
}

fn sqrt_bound(q: &Rational, up: bool) -> Rational {
    let shift = 2 * WORK_BITS;
    let scaled = Rational::new(q.numer() << shift, q.denom().clone());
    let m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let mut r = m.sqrt();
    if up && &r * &r < m {
        r += 1;
    }
    Rational::new(r, BigInt::one() << WORK_BITS)
}

fn to_fixed(x: &Rational) -> BigInt {
    let scaled = Rational::new(x.numer() << WORK_BITS, x.denom().clone());
    (scaled + rat(1, 2)).floor().to_integer()
}

fn fixed_to_interval(value: &BigInt, slack: i64) -> Interval {
    let unit = BigInt::one() << WORK_BITS;
    Interval::rounded(
        Rational::new(value - slack, unit.clone()),
        Rational::new(value + slack, unit),
    )
}

fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> WORK_BITS
}

fn atan_inverse_integer(m: i64) -> BigInt {
    let m = BigInt::from(m);
    let m_sq = &m * &m;
    let mut power = (BigInt::one() << WORK_BITS) / &m;
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m_sq;
        k += 1;
    }
    sum
}

fn atan_series(x: &Rational) -> BigInt {
    let xf = to_fixed(x);
    let x_sq = fixed_mul(&xf, &xf);
    let mut power = xf;
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = fixed_mul(&power, &x_sq);
        k += 1;
    }
    sum
}

fn sin_cos_series(x: &Rational, sine: bool) -> BigInt {
    let xf = to_fixed(x);
    let x_sq = fixed_mul(&xf, &xf);
    let mut term = if sine { xf } else { BigInt::one() << WORK_BITS };
    let mut n: i64 = if sine { 1 } else { 0 };
    let mut sum = BigInt::zero();
    loop {
        sum += &term;
        let next = fixed_mul(&term, &x_sq) / BigInt::from((n + 1) * (n + 2));
        if next.is_zero() {
            break;
        }
        term = -next;
        n += 2;
    }
    sum
}

/// A real number that is either an exact element of Q(√3) or an interval.
#[derive(Clone, Debug)]
pub enum Real {
    /// Exact value.
    Exact(QSqrt3),
    /// Certified enclosure.
    Approx(Interval),
}

impl Real {
    /// Exact zero.
    pub fn zero() -> Self {
        Real::Exact(QSqrt3::zero())
    }

    /// Exact one.
    pub fn one() -> Self {
        Real::Exact(QSqrt3::one())
    }

    /// Exact integer.
    pub fn from_int(n: i64) -> Self {
        Real::Exact(QSqrt3::from_int(n))
    }

    /// Exact rational.
    pub fn from_rational(q: Rational) -> Self {
        Real::Exact(QSqrt3::from_rational(q))
    }

    /// Enclosure of π.
    pub fn pi() -> Self {
        Real::Approx(Interval::pi())
    }

    /// True for exact values.
    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    /// The exact value, if any.
    pub fn as_exact(&self) -> Option<&QSqrt3> {
        match self {
            Real::Exact(v) => Some(v),
            Real::Approx(_) => None,
        }
    }

    /// The exact rational value, if any.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.as_exact().and_then(QSqrt3::as_rational)
    }

    /// True only for the exact zero.
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Real::Exact(v) if v.is_zero())
    }

    /// Certified enclosure.
    pub fn to_interval(&self) -> Interval {
        match self {
            Real::Exact(v) => v.to_interval(),
            Real::Approx(i) => i.clone(),
        }
    }

    /// Approximate value as a double.
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(v) => v.to_f64(),
            Real::Approx(i) => i.to_f64(),
        }
    }

    /// Sign against zero; fails when an interval straddles zero.
    pub fn sign(&self) -> Result<Ordering> {
        match self {
            Real::Exact(v) => Ok(v.signum()),
            Real::Approx(i) => i
                .sign()
                .ok_or_else(|| Error::Undecided(format!("sign of {i}"))),
        }
    }

    /// True when the value is certainly zero.
    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.sign()? == Ordering::Equal)
    }

    /// Certified comparison.
    pub fn cmp_real(&self, other: &Real) -> Result<Ordering> {
        (self - other).sign()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Real> {
        match self {
            Real::Exact(v) => v
                .inv()
                .map(Real::Exact)
                .ok_or_else(|| Error::Domain("division by zero".into())),
            Real::Approx(i) => i.recip().map(Real::Approx),
        }
    }

    /// Certified quotient.
    pub fn checked_div(&self, rhs: &Real) -> Result<Real> {
        Ok(self * &rhs.inv()?)
    }

    /// Square root, exact when the radicand has a root in Q(√3).
    pub fn sqrt(&self) -> Result<Real> {
        match self {
            Real::Exact(v) => {
                if v.signum() == Ordering::Less {
                    return Err(Error::Domain(format!("square root of negative {v}")));
                }
                match v.sqrt_exact() {
                    Some(r) => Ok(Real::Exact(r)),
                    None => v.to_interval().sqrt().map(Real::Approx),
                }
            }
            Real::Approx(i) => i.sqrt().map(Real::Approx),
        }
    }

    /// Square.
    pub fn sqr(&self) -> Real {
        match self {
            Real::Exact(v) => Real::Exact(v * v),
            Real::Approx(i) => Real::Approx(i.sqr()),
        }
    }

    /// Absolute value; fails when an interval straddles zero and is not needed exactly.
    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(v) => Real::Exact(v.abs()),
            Real::Approx(i) => match i.sign() {
                Some(Ordering::Less) => Real::Approx(i.neg()),
                Some(_) => Real::Approx(i.clone()),
                None => {
                    let hi = i.lo().abs().max(i.hi().abs());
                    Real::Approx(Interval::rounded(Rational::zero(), hi))
                }
            },
        }
    }

    /// Larger of two values; fails when undecided.
    pub fn max_real(&self, other: &Real) -> Result<Real> {
        Ok(if self.cmp_real(other)? == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        })
    }
}

impl From<QSqrt3> for Real {
    fn from(v: QSqrt3) -> Self {
        Real::Exact(v)
    }
}

impl From<Rational> for Real {
    fn from(q: Rational) -> Self {
        Real::from_rational(q)
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::from_int(n)
    }
}

impl From<Interval> for Real {
    fn from(i: Interval) -> Self {
        Real::Approx(i)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(v) => v.fmt(f),
            Real::Approx(i) => i.fmt(f),
        }
    }
}

impl FromStr for Real {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            text.parse::<Interval>().map(Real::Approx)
        } else {
            text.parse::<QSqrt3>().map(Real::Exact)
        }
    }
}

impl Add<&Real> for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            (a, b) if a.is_exact_zero() => b.clone(),
            (a, b) if b.is_exact_zero() => a.clone(),
            (a, b) => Real::Approx(a.to_interval().add(&b.to_interval())),
        }
    }
}

impl Sub<&Real> for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            (a, b) if b.is_exact_zero() => a.clone(),
            (a, b) => Real::Approx(a.to_interval().sub(&b.to_interval())),
        }
    }
}

impl Mul<&Real> for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            (a, b) if a.is_exact_zero() || b.is_exact_zero() => Real::zero(),
            (Real::Exact(a), b) if a.as_rational().is_some_and(|q| q.is_one()) => b.clone(),
            (a, Real::Exact(b)) if b.as_rational().is_some_and(|q| q.is_one()) => a.clone(),
            (a, b) => Real::Approx(a.to_interval().mul(&b.to_interval())),
        }
    }
}

forward_binop!(Real, Add, add);
forward_binop!(Real, Sub, sub);
forward_binop!(Real, Mul, mul);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(v) => Real::Exact(-v),
            Real::Approx(i) => Real::Approx(i.neg()),
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qsqrt3_sign_decides_mixed_signs() {
        assert_eq!(QSqrt3::new(int(2), int(-1)).signum(), Ordering::Greater);
        assert_eq!(QSqrt3::new(int(1), int(-1)).signum(), Ordering::Less);
        assert_eq!(QSqrt3::new(int(-7), int(4)).signum(), Ordering::Less);
        assert_eq!(QSqrt3::new(int(-6), int(4)).signum(), Ordering::Greater);
    }

    #[test]
    fn qsqrt3_inverse_and_sqrt() {
        let x = QSqrt3::new(int(2), int(1));
        assert_eq!(&x * &x.inv().unwrap(), QSqrt3::one());
        let sq = &x * &x;
        assert_eq!(sq.sqrt_exact(), Some(x));
        assert_eq!(
            QSqrt3::from_rational(rat(3, 4)).sqrt_exact(),
            Some(QSqrt3::new(int(0), rat(1, 2)))
        );
        assert_eq!(QSqrt3::from_int(2).sqrt_exact(), None);
    }

    #[test]
    fn qsqrt3_text_round_trip() {
        for v in [
            QSqrt3::new(rat(-1, 2), rat(3, 4)),
            QSqrt3::new(rat(1, 2), rat(-1, 2)),
            QSqrt3::new(int(0), int(1)),
            QSqrt3::from_rational(rat(-5, 3)),
        ] {
            assert_eq!(v.to_string().parse::<QSqrt3>().unwrap(), v);
        }
        assert_eq!(
            QSqrt3::new(rat(-1, 2), rat(-1, 2)).to_string(),
            "-1/2-1/2√3"
        );
    }

    #[test]
    fn pi_and_sqrt3_enclosures_are_tight_and_correct() {
        let pi = Interval::pi();
        assert!(pi.width() < Rational::new(BigInt::one(), BigInt::one() << 120usize));
        assert!(pi.lo() > &rat(314159, 100000) && pi.hi() < &rat(314160, 100000));
        let s = Interval::sqrt3();
        assert!(s.sqr().contains(&int(3)));
        assert!(s.width() < Rational::new(BigInt::one(), BigInt::one() << 120usize));
    }

    #[test]
    fn atan_matches_known_values() {
        let pi = Interval::pi();
        let quarter = pi.mul(&Interval::point(rat(1, 4)));
        let one = Interval::atan_of(&int(1));
        assert!(one.sub(&quarter).contains_zero());
        let sixth = pi.mul(&Interval::point(rat(1, 6)));
        let third_root = Interval::atan(&Interval::sqrt3().recip().unwrap());
        assert!(third_root.sub(&sixth).contains_zero());
        assert!(Interval::atan_of(&int(-3)).to_f64() + 3f64.atan() < 1e-15);
    }

    #[test]
    fn sin_cos_match_double_precision() {
        for x in [rat(1, 3), rat(-7, 2), rat(5, 1), rat(0, 1)] {
            let xf = rational_to_f64(&x);
            assert!((Interval::sin_of(&x).unwrap().to_f64() - xf.sin()).abs() < 1e-14);
            assert!((Interval::cos_of(&x).unwrap().to_f64() - xf.cos()).abs() < 1e-14);
        }
        let half_pi = Interval::pi().mul(&Interval::point(rat(1, 2)));
        assert!(half_pi
            .sin()
            .unwrap()
            .sub(&Interval::point(int(1)))
            .contains_zero());
    }

    #[test]
    fn real_multiplication_by_exact_zero_stays_exact() {
        let a = Real::Approx(Interval::pi());
        assert!((&a * &Real::zero()).is_exact_zero());
        assert!(Real::from_int(1).cmp_real(&a).unwrap() == Ordering::Less);
        assert!(Real::Approx(Interval::new(int(-1), int(1)).unwrap())
            .sign()
            .is_err());
    }

    #[test]
    fn rational_parsing_accepts_decimals() {
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
    }
}
