//! Complex numbers whose real and imaginary parts are [`Real`] scalars.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{forward_binop, int, rat, QSqrt3, Rational, Real};

/// Complex number `re + i·im`, exact whenever both parts are exact.
#[derive(Clone, Debug)]
pub struct ExactComplex {
    re: Real,
    im: Real,
}

impl ExactComplex {
    /// Builds `re + i·im`.
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    /// Builds an exact value from integer parts.
    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Real::from_int(re), Real::from_int(im))
    }

    /// Builds an exact value from rational parts.
    pub fn from_rationals(re: Rational, im: Rational) -> Self {
        Self::new(Real::from_rational(re), Real::from_rational(im))
    }

    /// Zero.
    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    /// One.
    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// Embeds a real number.
    pub fn from_real(re: Real) -> Self {
        Self::new(re, Real::zero())
    }

    /// `e^{iπk/6}`, exact in Q(√3).
    pub fn unit_root_twelfth(k: i64) -> Self {
        let half = rat(1, 2);
        let zero = QSqrt3::zero();
        let cos_table = [
            QSqrt3::one(),
            QSqrt3::new(int(0), half.clone()),
            QSqrt3::from_rational(half.clone()),
            zero.clone(),
            QSqrt3::from_rational(-half.clone()),
            QSqrt3::new(int(0), -half.clone()),
            QSqrt3::from_int(-1),
        ];
        let idx = k.rem_euclid(12) as usize;
        let cos = if idx <= 6 {
            cos_table[idx].clone()
        } else {
            cos_table[12 - idx].clone()
        };
        let sin_idx = (k - 3).rem_euclid(12) as usize;
        let sin = if sin_idx <= 6 {
            cos_table[sin_idx].clone()
        } else {
            cos_table[12 - sin_idx].clone()
        };
        Self::new(Real::Exact(cos), Real::Exact(sin))
    }

    /// Real part.
    pub fn re(&self) -> &Real {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &Real {
        &self.im
    }

    /// True when both parts are exact.
    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    /// True only when both parts are exactly zero.
    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    /// Certified zero test; fails when an enclosure cannot decide.
    pub fn is_zero(&self) -> Result<bool> {
        if self.is_exact_zero() {
            return Ok(true);
        }
        let re = self.re.sign();
        let im = self.im.sign();
        match (re, im) {
            (Ok(Ordering::Equal), Ok(Ordering::Equal)) => Ok(true),
            (Ok(s), _) if s != Ordering::Equal => Ok(false),
            (_, Ok(s)) if s != Ordering::Equal => Ok(false),
            _ => Err(Error::Undecided(format!("zero test of {self}"))),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, r: &Real) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> Real {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Modulus, exact when the norm has a square root in Q(√3).
    pub fn abs(&self) -> Result<Real> {
        self.norm_sq().sqrt()
    }

    /// `Im(conj(self)·other)`: positive iff `other` is counterclockwise of `self`.
    pub fn cross(&self, other: &Self) -> Real {
        &(&self.re * &other.im) - &(&self.im * &other.re)
    }

    /// `Re(conj(self)·other)`.
    pub fn dot(&self, other: &Self) -> Real {
        &(&self.re * &other.re) + &(&self.im * &other.im)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq().inv()?;
        Ok(self.conj().scale(&n))
    }

    /// Certified quotient.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Approximate value as a pair of doubles.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Certified equality; fails when enclosures cannot decide.
    pub fn eq_certified(&self, other: &Self) -> Result<bool> {
        (self - other).is_zero()
    }

    /// Exact structural equality; false whenever either side is approximate.
    pub fn eq_exact(&self, other: &Self) -> bool {
        match (
            self.re.as_exact(),
            self.im.as_exact(),
            other.re.as_exact(),
            other.im.as_exact(),
        ) {
            (Some(a), Some(b), Some(c), Some(d)) => a == c && b == d,
            _ => false,
        }
    }

    /// True when the value lies in the closed upper half-plane minus `[0, ∞)`,
    /// the target of central charges on heart objects.
    pub fn in_charge_half_plane(&self) -> Result<bool> {
        match self.im.sign()? {
            Ordering::Greater => Ok(true),
            Ordering::Less => Ok(false),
            Ordering::Equal => Ok(self.re.sign()? == Ordering::Less),
        }
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

forward_binop!(ExactComplex, Add, add);
forward_binop!(ExactComplex, Sub, sub);
forward_binop!(ExactComplex, Mul, mul);

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-&self.re, -&self.im)
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        -&self
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.re, self.im)
    }
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Parses `(re; im)` or the shorthand forms `a+bi`, `bi`, `a` with rational parts.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(body) = s.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            let (re, im) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("not a complex literal: {text:?}")))?;
            return Ok(Self::new(re.parse()?, im.parse()?));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(Self::from_real(compact.parse()?));
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with('/'))
            .map(|(i, _)| i)
            .next_back();
        let (re_text, im_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im_text = im_text.strip_prefix('+').unwrap_or(im_text);
        let im_text = match im_text {
            "" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Self::new(re_text.parse()?, im_text.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelfth_roots_are_exact_unit_vectors() {
        for k in -12..=12 {
            let z = ExactComplex::unit_root_twelfth(k);
            assert!(z.is_exact());
            assert!(z.norm_sq().cmp_real(&Real::one()).unwrap() == Ordering::Equal);
            let (re, im) = z.to_f64();
            let angle = std::f64::consts::PI * k as f64 / 6.0;
            assert!((re - angle.cos()).abs() < 1e-12 && (im - angle.sin()).abs() < 1e-12);
        }
        let w = ExactComplex::unit_root_twelfth(1);
        let w2 = &w * &w;
        assert!(w2.eq_exact(&ExactComplex::unit_root_twelfth(2)));
    }

    #[test]
    fn literal_parsing_accepts_shorthand() {
        let z: ExactComplex = "-1+i".parse().unwrap();
        assert!(z.eq_exact(&ExactComplex::from_ints(-1, 1)));
        let w: ExactComplex = "1/2-3/4i".parse().unwrap();
        assert!(w.eq_exact(&ExactComplex::from_rationals(rat(1, 2), rat(-3, 4))));
        let v: ExactComplex = "i".parse().unwrap();
        assert!(v.eq_exact(&ExactComplex::i()));
        let round = ExactComplex::unit_root_twelfth(2);
        assert!(round
            .to_string()
            .parse::<ExactComplex>()
            .unwrap()
            .eq_exact(&round));
    }

    #[test]
    fn addition_is_exactly_invertible() {
        let a = ExactComplex::new(
            Real::Exact(QSqrt3::new(rat(1, 3), rat(-2, 7))),
            Real::from_rational(rat(5, 11)),
        );
        let b = ExactComplex::unit_root_twelfth(5);
        assert!((&(&a + &b) - &b).eq_exact(&a));
    }
}
