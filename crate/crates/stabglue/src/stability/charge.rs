//! Central charges on the Grothendieck group and the phases they induce.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::antype::{DObject, K0Class};
use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::geometry::{arg_principal, Angle};
use crate::scalar::{format_rational, Rational, Real};

/// A group homomorphism `K_0 → ℂ`.
///
/// The charge is stored as an integer change of coordinates followed by a
/// row of complex coefficients. Evaluating through integer coordinates keeps
/// values exact whenever the contributing coefficients are exact, even when
/// other coefficients are only known through enclosures.
#[derive(Clone, Debug)]
pub struct CentralCharge {
    rank: usize,
    transform: Vec<Vec<i64>>,
    coeffs: Vec<ExactComplex>,
}

impl CentralCharge {
    /// The charge with the given values on the standard basis.
    pub fn new(row: Vec<ExactComplex>) -> Self {
        let rank = row.len();
        let transform = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self {
            rank,
            transform,
            coeffs: row,
        }
    }

    /// The charge `c ↦ Σ_k (T c)_k · coeffs_k` for an integer matrix `T`.
    pub fn with_transform(
        rank: usize,
        transform: Vec<Vec<i64>>,
        coeffs: Vec<ExactComplex>,
    ) -> Result<Self> {
        if transform.len() != coeffs.len() || transform.iter().any(|r| r.len() != rank) {
            return Err(Error::Structural(
                "charge transform has the wrong shape".into(),
            ));
        }
        Ok(Self {
            rank,
            transform,
            coeffs,
        })
    }

    /// Rank of the source lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }

    fn coordinates(&self, c: &K0Class) -> Vec<i64> {
        self.transform
            .iter()
            .map(|row| row.iter().zip(c.coords()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Value on a class.
    pub fn eval(&self, c: &K0Class) -> ExactComplex {
        debug_assert_eq!(c.rank(), self.rank);
        let mut acc = ExactComplex::zero();
        for (k, coeff) in self.coordinates(c).into_iter().zip(&self.coeffs) {
            if k != 0 {
                acc = &acc + &coeff.scale(&Real::from_int(k));
            }
        }
        acc
    }

    /// Value on the class of an object.
    pub fn eval_object(&self, e: &DObject) -> ExactComplex {
        self.eval(&e.k0())
    }

    /// Values on the standard basis vectors.
    pub fn row(&self) -> Vec<ExactComplex> {
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.rank];
                v[i] = 1;
                self.eval(&K0Class::new(v))
            })
            .collect()
    }

    /// `Im(conj Z(a) · Z(b))`, computed from integer minors so that it is
    /// exactly zero for proportional classes.
    pub fn cross(&self, a: &K0Class, b: &K0Class) -> Real {
        let ca = self.coordinates(a);
        let cb = self.coordinates(b);
        let mut acc = Real::zero();
        for k in 0..self.coeffs.len() {
            for l in (k + 1)..self.coeffs.len() {
                let minor = ca[k] * cb[l] - ca[l] * cb[k];
                if minor != 0 {
                    acc = &acc + &(&Real::from_int(minor) * &self.coeffs[k].cross(&self.coeffs[l]));
                }
            }
        }
        acc
    }

    /// Sum of two charges on the same lattice.
    pub fn add(&self, other: &Self) -> Self {
        let mut transform = self.transform.clone();
        transform.extend(other.transform.iter().cloned());
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Self {
            rank: self.rank,
            transform,
            coeffs,
        }
    }

    /// Difference of two charges on the same lattice.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ExactComplex::from_ints(-1, 0)))
    }

    /// The charge `w·Z`.
    pub fn scale(&self, w: &ExactComplex) -> Self {
        Self {
            rank: self.rank,
            transform: self.transform.clone(),
            coeffs: self.coeffs.iter().map(|c| c * w).collect(),
        }
    }

    /// The charge `Z ∘ T` for an integer endomorphism-like map `T` given by its rows.
    pub fn precompose(&self, rank: usize, map: &[Vec<i64>]) -> Result<Self> {
        if map.len() != self.rank || map.iter().any(|r| r.len() != rank) {
            return Err(Error::Structural(
                "precomposition map has the wrong shape".into(),
            ));
        }
        let transform = self
            .transform
            .iter()
            .map(|row| {
                (0..rank)
                    .map(|j| row.iter().zip(map).map(|(a, m)| a * m[j]).sum())
                    .collect()
            })
            .collect();
        Ok(Self {
            rank,
            transform,
            coeffs: self.coeffs.clone(),
        })
    }

    /// True when every value on the basis has rational real and imaginary parts.
    pub fn is_rational(&self) -> bool {
        self.row()
            .iter()
            .all(|z| z.re().as_rational().is_some() && z.im().as_rational().is_some())
    }

    /// True when every value on the basis is exact.
    pub fn is_exact(&self) -> bool {
        self.row().iter().all(ExactComplex::is_exact)
    }

    /// Certified equality of the values on the basis.
    pub fn eq_certified(&self, other: &Self) -> Result<bool> {
        if self.rank != other.rank {
            return Ok(false);
        }
        for (a, b) in self.row().iter().zip(other.row()) {
            if !a.eq_certified(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Phase of a heart object of the given class, placed in degree `shift`.
    pub fn phase_of_class(&self, class: &K0Class, shift: i64) -> Phase {
        Phase {
            shift,
            class: class.clone(),
            value: self.eval(class),
        }
    }

    /// True when the class has top phase: charge zero or on the negative real axis.
    pub fn is_top(&self, class: &K0Class) -> Result<bool> {
        let z = self.eval(class);
        if z.im().sign()? != Ordering::Equal {
            return Ok(false);
        }
        Ok(z.re().sign()? != Ordering::Greater)
    }

    /// Certified comparison of two phases under this charge.
    pub fn cmp_phase(&self, a: &Phase, b: &Phase) -> Result<Ordering> {
        if a.shift != b.shift {
            return Ok(a.shift.cmp(&b.shift));
        }
        match (self.is_top(&a.class)?, self.is_top(&b.class)?) {
            (true, true) => Ok(Ordering::Equal),
            (true, false) => Ok(Ordering::Greater),
            (false, true) => Ok(Ordering::Less),
            (false, false) => Ok(self.cross(&a.class, &b.class).sign()?.reverse()),
        }
    }

    /// Certified comparison of a phase with the rational number `cut`.
    pub fn cmp_phase_with(&self, p: &Phase, cut: &Rational) -> Result<Ordering> {
        let whole = Rational::from_integer(cut.floor().to_integer());
        let cut_shift: i64 = whole
            .to_integer()
            .try_into()
            .map_err(|_| Error::Domain("phase cut out of range".into()))?;
        let frac = cut - &whole;
        let (cut_shift, frac) = if frac.is_zero() {
            (cut_shift - 1, Rational::from_integer(1.into()))
        } else {
            (cut_shift, frac)
        };
        if p.shift != cut_shift {
            return Ok(p.shift.cmp(&cut_shift));
        }
        if self.is_top(&p.class)? {
            return Ok(if frac == Rational::from_integer(1.into()) {
                Ordering::Equal
            } else {
                Ordering::Greater
            });
        }
        let u = Angle::from_pi_multiple(frac).unit()?;
        u.cross(&p.value).sign()
    }

    /// Phase value in units of π.
    pub fn phase_value(&self, p: &Phase) -> Result<Real> {
        if self.is_top(&p.class)? {
            return Ok(Real::from_int(p.shift + 1));
        }
        let arg = arg_principal(&p.value)?.in_units_of_pi();
        Ok(&Real::from_int(p.shift) + &arg)
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.row().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FromStr for CentralCharge {
    type Err = Error;

    /// Parses a comma-separated list of complex literals, one per basis vector.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body);
        let row = body
            .split(',')
            .map(|s| s.parse::<ExactComplex>())
            .collect::<Result<Vec<_>>>()?;
        if row.is_empty() {
            return Err(Error::Parse("empty central charge".into()));
        }
        Ok(Self::new(row))
    }
}

/// The phase of a semistable object: the degree of the heart it is shifted
/// from, together with the class and charge of the unshifted heart object.
#[derive(Clone, Debug)]
pub struct Phase {
    shift: i64,
    class: K0Class,
    value: ExactComplex,
}

impl Phase {
    /// Integer part carried by shifts.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Class of the underlying heart object.
    pub fn class(&self) -> &K0Class {
        &self.class
    }

    /// Charge of the underlying heart object.
    pub fn value(&self) -> &ExactComplex {
        &self.value
    }

    /// The phase of `E[k]`.
    pub fn shifted(&self, k: i64) -> Phase {
        Phase {
            shift: self.shift + k,
            ..self.clone()
        }
    }
}

/// Difference `φ_a − φ_b` in units of π of phases measured by two charges,
/// exact when the charges make an angle that is a multiple of π/12.
pub fn phase_gap(za: &CentralCharge, a: &Phase, zb: &CentralCharge, b: &Phase) -> Result<Real> {
    let shifts = Real::from_int(a.shift - b.shift);
    let args = match (za.is_top(&a.class)?, zb.is_top(&b.class)?) {
        (true, true) => Real::zero(),
        (true, false) => &Real::one() - &arg_principal(&b.value)?.in_units_of_pi(),
        (false, true) => &arg_principal(&a.value)?.in_units_of_pi() - &Real::one(),
        (false, false) => arg_principal(&(&a.value * &b.value.conj()))?.in_units_of_pi(),
    };
    Ok(&shifts + &args)
}

/// Renders a phase value, exactly when it is rational.
pub fn format_phase(value: &Real) -> String {
    match value.as_rational() {
        Some(q) => format_rational(q),
        None => format!("{:.12}", value.to_f64()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn standard() -> CentralCharge {
        "-1+i, i".parse().unwrap()
    }

    #[test]
    fn phases_of_simple_classes() {
        let z = standard();
        let s1 = z.phase_of_class(&K0Class::new(vec![1, 0]), 0);
        let s2 = z.phase_of_class(&K0Class::new(vec![0, 1]), 0);
        let p1 = z.phase_of_class(&K0Class::new(vec![1, 1]), 0);
        assert_eq!(z.phase_value(&s1).unwrap().as_rational(), Some(&rat(3, 4)));
        assert_eq!(z.phase_value(&s2).unwrap().as_rational(), Some(&rat(1, 2)));
        assert_eq!(z.cmp_phase(&s1, &p1).unwrap(), Ordering::Greater);
        assert_eq!(z.cmp_phase(&p1, &s2).unwrap(), Ordering::Greater);
        assert_eq!(z.cmp_phase(&s2.shifted(1), &s1).unwrap(), Ordering::Greater);
        assert_eq!(z.cmp_phase_with(&s2, &rat(1, 2)).unwrap(), Ordering::Equal);
        assert_eq!(
            z.cmp_phase_with(&s1, &rat(1, 2)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(z.cmp_phase_with(&s1, &rat(1, 1)).unwrap(), Ordering::Less);
        assert_eq!(
            z.cmp_phase_with(&s1.shifted(-1), &rat(0, 1)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn proportional_classes_compare_equal_under_enclosures() {
        let w = ExactComplex::new(
            Real::from_int(1),
            Real::Approx(crate::scalar::Interval::pi()),
        );
        let z = CentralCharge::new(vec![w, ExactComplex::from_ints(-2, 1)]);
        let a = z.phase_of_class(&K0Class::new(vec![1, 1]), 0);
        let b = z.phase_of_class(&K0Class::new(vec![2, 2]), 0);
        assert_eq!(z.cmp_phase(&a, &b).unwrap(), Ordering::Equal);
    }

    #[test]
    fn transformed_charges_agree_with_rows() {
        let z = CentralCharge::with_transform(
            2,
            vec![vec![0, 1], vec![1, -1]],
            vec![ExactComplex::i(), ExactComplex::from_ints(0, -1)],
        )
        .unwrap();
        let row = z.row();
        assert!(row[0].eq_exact(&ExactComplex::from_ints(0, -1)));
        assert!(row[1].eq_exact(&ExactComplex::from_ints(0, 2)));
        let sum = z.add(&standard());
        assert!(sum
            .eval(&K0Class::new(vec![1, 1]))
            .eq_exact(&ExactComplex::from_ints(-1, 3)));
        assert!(z.sub(&z).eval(&K0Class::new(vec![3, -2])).is_exact_zero());
        assert!(z.is_rational());
    }

    #[test]
    fn literal_round_trip() {
        let z = standard();
        let back: CentralCharge = z.to_string().parse().unwrap();
        assert!(back.eq_certified(&z).unwrap());
    }
}
