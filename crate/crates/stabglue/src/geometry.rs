//! Plane geometry behind the deformation bounds: principal arguments, the
//! angle-sum inequality and the ratio bound it implies, and the two parameter
//! regions of the (β, ω) half-plane.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::scalar::{
    format_rational, int, parse_rational, rat, rational_to_f64, Interval, QSqrt3, Rational, Real,
};

/// An angle in radians, remembered exactly as a rational multiple of π when possible.
#[derive(Clone, Debug)]
pub struct Angle {
    pi_multiple: Option<Rational>,
    enclosure: Interval,
}

impl Angle {
    /// The angle `q·π`.
    pub fn from_pi_multiple(q: Rational) -> Self {
        let enclosure = Interval::pi().mul(&Interval::point(q.clone()));
        Self {
            pi_multiple: Some(q),
            enclosure,
        }
    }

    /// The angle `k·π/6`.
    pub fn from_sixths(k: i64) -> Self {
        Self::from_pi_multiple(rat(k, 6))
    }

    /// An angle known only through an enclosure in radians.
    pub fn from_enclosure(enclosure: Interval) -> Self {
        Self {
            pi_multiple: None,
            enclosure,
        }
    }

    /// The exact multiple of π, if known.
    pub fn pi_multiple(&self) -> Option<&Rational> {
        self.pi_multiple.as_ref()
    }

    /// Enclosure in radians.
    pub fn radians(&self) -> &Interval {
        &self.enclosure
    }

    /// The angle divided by π, exact when the multiple is known.
    pub fn in_units_of_pi(&self) -> Real {
        match &self.pi_multiple {
            Some(q) => Real::from_rational(q.clone()),
            None => Real::Approx(
                self.enclosure
                    .div(&Interval::pi())
                    .expect("the enclosure of pi excludes zero"),
            ),
        }
    }

    /// Approximate radians.
    pub fn to_f64(&self) -> f64 {
        match &self.pi_multiple {
            Some(q) => rational_to_f64(q) * std::f64::consts::PI,
            None => self.enclosure.to_f64(),
        }
    }

    fn twelfth_index(&self) -> Option<i64> {
        let q = self.pi_multiple.as_ref()?;
        let scaled = q * int(6);
        scaled.is_integer().then(|| {
            let n = scaled.to_integer();
            i64::try_from(n.mod_floor(&12.into())).expect("remainder below twelve")
        })
    }

    /// `e^{iθ}`, exact for multiples of π/6.
    pub fn unit(&self) -> Result<ExactComplex> {
        if let Some(k) = self.twelfth_index() {
            return Ok(ExactComplex::unit_root_twelfth(k));
        }
        Ok(ExactComplex::new(
            Real::Approx(self.enclosure.cos()?),
            Real::Approx(self.enclosure.sin()?),
        ))
    }

    /// Cosine, exact for multiples of π/6.
    pub fn cos(&self) -> Result<Real> {
        Ok(self.unit()?.re().clone())
    }

    /// Sine, exact for multiples of π/6.
    pub fn sin(&self) -> Result<Real> {
        Ok(self.unit()?.im().clone())
    }

    /// Certified comparison of two angles as real numbers.
    pub fn cmp_angle(&self, other: &Angle) -> Result<Ordering> {
        if let (Some(a), Some(b)) = (&self.pi_multiple, &other.pi_multiple) {
            return Ok(a.cmp(b));
        }
        Real::Approx(self.enclosure.clone()).cmp_real(&Real::Approx(other.enclosure.clone()))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pi_multiple {
            Some(q) => write!(f, "{}π", format_rational(q)),
            None => write!(f, "{}", self.enclosure),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Parses `qπ` or `qpi` as a multiple of π, or an interval of radians.
    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(q) = s.strip_suffix('π').or_else(|| s.strip_suffix("pi")) {
            let q = q.trim().trim_end_matches('*');
            let q = if q.is_empty() { "1" } else { q };
            return Ok(Self::from_pi_multiple(parse_rational(q)?));
        }
        if s.starts_with('[') {
            return Ok(Self::from_enclosure(s.parse()?));
        }
        Err(Error::Parse(format!(
            "angles are written as a multiple of π such as 2/3π, got {text:?}"
        )))
    }
}

/// An interval of angles with optionally open endpoints.
#[derive(Clone, Debug)]
pub struct AngleInterval {
    lo: Angle,
    hi: Angle,
    lo_open: bool,
    hi_open: bool,
}

impl AngleInterval {
    /// Builds the interval; requires `lo ≤ hi` and width below 2π.
    pub fn new(lo: Angle, hi: Angle, lo_open: bool, hi_open: bool) -> Result<Self> {
        if hi.cmp_angle(&lo)? == Ordering::Less {
            return Err(Error::Domain(format!("angle interval with {lo} > {hi}")));
        }
        let width = Real::Approx(hi.radians().sub(lo.radians()));
        let two_pi = Real::Approx(Interval::pi().mul(&Interval::point(int(2))));
        let too_wide = match (lo.pi_multiple(), hi.pi_multiple()) {
            (Some(a), Some(b)) => b - a >= int(2),
            _ => width.cmp_real(&two_pi)? != Ordering::Less,
        };
        if too_wide {
            return Err(Error::Domain("angle interval of width at least 2π".into()));
        }
        Ok(Self {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    /// The principal-argument range `(−π, π]`.
    pub fn principal() -> Self {
        Self {
            lo: Angle::from_pi_multiple(int(-1)),
            hi: Angle::from_pi_multiple(int(1)),
            lo_open: true,
            hi_open: false,
        }
    }

    /// Certified membership.
    pub fn contains(&self, a: &Angle) -> Result<bool> {
        let lo = a.cmp_angle(&self.lo)?;
        let hi = a.cmp_angle(&self.hi)?;
        let above = lo == Ordering::Greater || (lo == Ordering::Equal && !self.lo_open);
        let below = hi == Ordering::Less || (hi == Ordering::Equal && !self.hi_open);
        Ok(above && below)
    }
}

fn atan2_point(x: &Rational, y: &Rational) -> Interval {
    let pi = Interval::pi();
    if x.is_zero() {
        let half = pi.mul(&Interval::point(rat(1, 2)));
        return if y.is_negative() { half.neg() } else { half };
    }
    let base = Interval::atan_of(&(y / x));
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base.sub(&pi)
    } else {
        base.add(&pi)
    }
}

/// Principal argument in `(−π, π]`.
///
/// Exact when the argument is a multiple of π/12 and the input is exact;
/// otherwise an enclosure. Fails on zero and on enclosures that straddle the
/// negative real axis.
pub fn arg_principal(z: &ExactComplex) -> Result<Angle> {
    if z.is_zero()? {
        return Err(Error::Domain("argument of zero".into()));
    }
    if z.is_exact() {
        for k in -5..=6 {
            let w = z * &ExactComplex::unit_root_twelfth(-k);
            if w.im().is_exact_zero() && w.re().sign()? == Ordering::Greater {
                return Ok(Angle::from_sixths(k));
            }
            if (w.re() - w.im()).is_exact_zero() && w.re().sign()? == Ordering::Greater {
                let mut q = rat(k, 6) + rat(1, 4);
                if q > Rational::one() {
                    q -= int(2);
                }
                return Ok(Angle::from_pi_multiple(q));
            }
        }
    }
    let re = z.re().to_interval();
    let im = z.im().to_interval();
    if im.sign().is_none() && re.sign() != Some(Ordering::Greater) {
        if z.im().is_exact_zero() && re.sign() == Some(Ordering::Less) {
            return Ok(Angle::from_pi_multiple(int(1)));
        }
        return Err(Error::Undecided(format!(
            "argument of {z} near the negative real axis"
        )));
    }
    let mut enclosure: Option<Interval> = None;
    for x in [re.lo(), re.hi()] {
        for y in [im.lo(), im.hi()] {
            let a = atan2_point(x, y);
            enclosure = Some(match enclosure {
                Some(e) => e.hull(&a),
                None => a,
            });
        }
    }
    Ok(Angle::from_enclosure(enclosure.expect("four corners")))
}

fn half_plane_rank(z: &ExactComplex) -> Result<u8> {
    Ok(match z.im().sign()? {
        Ordering::Less => 0,
        Ordering::Greater => 1,
        Ordering::Equal => match z.re().sign()? {
            Ordering::Greater => 1,
            Ordering::Less => 1,
            Ordering::Equal => return Err(Error::Domain("argument of zero".into())),
        },
    })
}

/// Certified comparison of principal arguments of two nonzero numbers.
pub fn cmp_principal_arg(a: &ExactComplex, b: &ExactComplex) -> Result<Ordering> {
    let ra = half_plane_rank(a)?;
    let rb = half_plane_rank(b)?;
    if ra != rb {
        return Ok(ra.cmp(&rb));
    }
    match a.cross(b).sign()? {
        Ordering::Greater => Ok(Ordering::Less),
        Ordering::Less => Ok(Ordering::Greater),
        Ordering::Equal => {
            if a.dot(b).sign()? == Ordering::Greater {
                Ok(Ordering::Equal)
            } else if a.re().sign()? == Ordering::Greater {
                Ok(Ordering::Less)
            } else {
                Ok(Ordering::Greater)
            }
        }
    }
}

fn check_open_angle(theta: &Angle, closure_at_zero: bool) -> Result<()> {
    let zero = Angle::from_pi_multiple(Rational::zero());
    let pi = Angle::from_pi_multiple(Rational::one());
    let low = theta.cmp_angle(&zero)?;
    let low_ok = low == Ordering::Greater || (closure_at_zero && low == Ordering::Equal);
    if !low_ok || theta.cmp_angle(&pi)? != Ordering::Less {
        return Err(Error::Domain(format!("angle {theta} outside (0, π)")));
    }
    Ok(())
}

/// `(2 + 2cos θ)/4`, the square of the angle-sum constant.
pub fn angle_sum_constant_squared(theta: &Angle) -> Result<Real> {
    let c = theta.cos()?;
    Ok(&(&Real::from_int(2) + &(&Real::from_int(2) * &c)) * &Real::from_rational(rat(1, 4)))
}

/// `√(2 + 2cos θ)/2` for θ in `(0, π)`.
pub fn angle_sum_lower_bound(theta: &Angle) -> Result<Real> {
    check_open_angle(theta, false)?;
    angle_sum_constant_squared(theta)?.sqrt()
}

/// The same constant with θ = 0 admitted as a closure point.
pub fn angle_sum_lower_bound_closure(theta: &Angle) -> Result<Real> {
    check_open_angle(theta, true)?;
    angle_sum_constant_squared(theta)?.sqrt()
}

/// `2/√(2 + 2cos θ)` for θ in `(0, π)`.
pub fn ratio_sup_bound(theta: &Angle) -> Result<Real> {
    angle_sum_lower_bound(theta)?.inv()
}

/// The same bound with θ = 0 admitted as a closure point.
pub fn ratio_sup_bound_closure(theta: &Angle) -> Result<Real> {
    angle_sum_lower_bound_closure(theta)?.inv()
}

/// Outcome of one evaluation of the angle-sum inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AngleSumOutcome {
    /// The inputs violate the argument hypothesis; no verdict is given.
    HypothesisNotMet(String),
    /// The inequality holds; `equality` records whether both sides agree.
    Holds {
        /// True when `|z1+z2|² = c²(|z1|+|z2|)²` exactly.
        equality: bool,
    },
    /// The inequality fails.
    Violated,
}

/// Both sides of the squared angle-sum inequality and the verdict.
#[derive(Clone, Debug)]
pub struct AngleSumReport {
    /// Verdict.
    pub outcome: AngleSumOutcome,
    /// `|z1 + z2|²`.
    pub lhs_squared: Real,
    /// `(2 + 2cos θ)/4 · (|z1| + |z2|)²`.
    pub rhs_squared: Real,
}

impl AngleSumReport {
    /// True unless the inequality is violated.
    pub fn is_sound(&self) -> bool {
        !matches!(self.outcome, AngleSumOutcome::Violated)
    }
}

/// Checks `0 ≤ arg z1 − arg z2 ≤ θ` for principal arguments.
pub fn angle_hypothesis(
    z1: &ExactComplex,
    z2: &ExactComplex,
    theta: &Angle,
) -> Result<Option<String>> {
    if z1.is_zero()? || z2.is_zero()? {
        return Ok(Some("both numbers must be nonzero".into()));
    }
    if cmp_principal_arg(z1, z2)? == Ordering::Less {
        return Ok(Some("arg z1 < arg z2".into()));
    }
    let w = z1 * &z2.conj();
    let upper = match w.im().sign()? {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => w.re().sign()? == Ordering::Greater,
    };
    if !upper {
        return Ok(Some("arg z1 − arg z2 ≥ π".into()));
    }
    if w.cross(&theta.unit()?).sign()? == Ordering::Less {
        return Ok(Some("arg z1 − arg z2 > θ".into()));
    }
    Ok(None)
}

/// Sign of `a − b·√d` for `b, d ≥ 0`, exact over Q(√3).
pub fn sign_minus_root(a: &Real, b: &Real, d: &Real) -> Result<Ordering> {
    if let (Some(a), Some(b), Some(d)) = (a.as_exact(), b.as_exact(), d.as_exact()) {
        if b.is_zero() || d.is_zero() {
            return Ok(a.signum());
        }
        if a.signum() != Ordering::Greater {
            return Ok(Ordering::Less);
        }
        let diff: QSqrt3 = a * a - &(b * b) * d;
        return Ok(diff.signum());
    }
    (a - &(b * &d.sqrt()?)).sign()
}

/// Evaluates `|z1+z2| ≥ (√(2+2cos θ)/2)(|z1|+|z2|)` in squared form.
pub fn check_angle_sum_inequality(
    z1: &ExactComplex,
    z2: &ExactComplex,
    theta: &Angle,
) -> Result<AngleSumReport> {
    check_open_angle(theta, false)?;
    let c = angle_sum_constant_squared(theta)?;
    let n1 = z1.norm_sq();
    let n2 = z2.norm_sq();
    let lhs = (z1 + z2).norm_sq();
    let d = &n1 * &n2;
    let root = d.sqrt()?;
    let rhs = &c * &(&(&n1 + &n2) + &(&Real::from_int(2) * &root));
    if let Some(reason) = angle_hypothesis(z1, z2, theta)? {
        return Ok(AngleSumReport {
            outcome: AngleSumOutcome::HypothesisNotMet(reason),
            lhs_squared: lhs,
            rhs_squared: rhs,
        });
    }
    let a = &lhs - &(&c * &(&n1 + &n2));
    let b = &Real::from_int(2) * &c;
    let outcome = match sign_minus_root(&a, &b, &d)? {
        Ordering::Less => AngleSumOutcome::Violated,
        Ordering::Equal => AngleSumOutcome::Holds { equality: true },
        Ordering::Greater => AngleSumOutcome::Holds { equality: false },
    };
    Ok(AngleSumReport {
        outcome,
        lhs_squared: lhs,
        rhs_squared: rhs,
    })
}

/// Supremum of `|z2|/|z1+z2|` found by one-dimensional numerical search.
///
/// For a fixed angle φ between the two numbers the ratio depends on
/// `t = |z1|/|z2|` only; the search maximizes over t by golden-section on a
/// bracketing grid and then maximizes over φ ∈ (0, θ] on a refined grid.
pub fn ratio_sup_oracle(theta: f64) -> f64 {
    let ratio = |phi: f64, t: f64| 1.0 / (1.0 + 2.0 * t * phi.cos() + t * t).sqrt();
    let best_over_t = |phi: f64| {
        let mut best_t = 0.0;
        let mut best = ratio(phi, 0.0);
        let grid: Vec<f64> = (0..=400).map(|k| k as f64 * 0.01).collect();
        for &t in &grid {
            let v = ratio(phi, t);
            if v > best {
                best = v;
                best_t = t;
            }
        }
        let (mut lo, mut hi) = ((best_t - 0.01f64).max(0.0), best_t + 0.01);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let a = hi - g * (hi - lo);
            let b = lo + g * (hi - lo);
            if ratio(phi, a) >= ratio(phi, b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        best.max(ratio(phi, (lo + hi) / 2.0))
    };
    let steps = 2000;
    let mut best = 0.0f64;
    for k in 1..=steps {
        let phi = theta * k as f64 / steps as f64;
        best = best.max(best_over_t(phi));
    }
    best
}

/// Closed form of the supremum: 1 when cos θ ≥ 0, and 1/sin θ otherwise.
pub fn ratio_sup_closed_form(theta: f64) -> f64 {
    if theta.cos() >= 0.0 {
        1.0
    } else {
        1.0 / theta.sin()
    }
}

/// Parameters `(ε₁, ε₂)` of the two regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionParams {
    eps1: Rational,
    eps2: Rational,
}

impl RegionParams {
    /// Requires `0 < ε₁ < 1/2` and `ε₂ < 0`.
    pub fn new(eps1: Rational, eps2: Rational) -> Result<Self> {
        if !(eps1.is_positive() && eps1 < rat(1, 2)) {
            return Err(Error::Domain(format!(
                "eps1 = {} must lie in (0, 1/2)",
                format_rational(&eps1)
            )));
        }
        if !eps2.is_negative() {
            return Err(Error::Domain(format!(
                "eps2 = {} must be negative",
                format_rational(&eps2)
            )));
        }
        Ok(Self { eps1, eps2 })
    }

    /// ε₁.
    pub fn eps1(&self) -> &Rational {
        &self.eps1
    }

    /// ε₂.
    pub fn eps2(&self) -> &Rational {
        &self.eps2
    }
}

/// A point `(β, ω)` of the closed upper half-plane.
#[derive(Clone, Debug)]
pub struct PlanePoint {
    beta: Real,
    omega: Real,
}

impl PlanePoint {
    /// Builds the point; requires `ω ≥ 0`.
    pub fn new(beta: Real, omega: Real) -> Result<Self> {
        if omega.sign()? == Ordering::Less {
            return Err(Error::Domain(format!(
                "omega = {omega} must be nonnegative"
            )));
        }
        Ok(Self { beta, omega })
    }

    /// Builds a rational point.
    pub fn rational(beta: Rational, omega: Rational) -> Result<Self> {
        Self::new(Real::from_rational(beta), Real::from_rational(omega))
    }

    /// β.
    pub fn beta(&self) -> &Real {
        &self.beta
    }

    /// ω.
    pub fn omega(&self) -> &Real {
        &self.omega
    }

    /// True when `ω > 0`.
    pub fn is_interior(&self) -> Result<bool> {
        Ok(self.omega.sign()? == Ordering::Greater)
    }

    /// True when both coordinates are rational.
    pub fn is_rational(&self) -> bool {
        self.beta.as_rational().is_some() && self.omega.as_rational().is_some()
    }

    /// True when both coordinates are exact in Q(√3).
    pub fn is_exact(&self) -> bool {
        self.beta.is_exact() && self.omega.is_exact()
    }

    /// `β − iω`.
    pub fn beta_minus_i_omega(&self) -> ExactComplex {
        ExactComplex::new(self.beta.clone(), -&self.omega)
    }

    /// `β − 1 + iω`, whose modulus measures the distance to the boundary point (1, 0).
    pub fn offset_from_boundary_point(&self) -> ExactComplex {
        ExactComplex::new(&self.beta - &Real::one(), self.omega.clone())
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.beta, self.omega)
    }
}

/// Region membership of a point together with the four defining values.
#[derive(Clone, Debug)]
pub struct RegionMembership {
    /// Both H⁺ inequalities hold strictly.
    pub in_h_plus: bool,
    /// Both H⁻ inequalities hold strictly.
    pub in_h_minus: bool,
    /// True when ω ≤ 0; membership is then reported as false.
    pub boundary: bool,
    /// The two H⁺ expressions followed by the two H⁻ expressions.
    pub values: [Real; 4],
}

impl RegionMembership {
    /// Membership in the intersection of both regions.
    pub fn in_both(&self) -> bool {
        self.in_h_plus && self.in_h_minus
    }
}

/// Evaluates the defining expressions of H⁺(ε₁) and H⁻(ε₂) at a point.
pub fn region_values(p: &PlanePoint, r: &RegionParams) -> [Real; 4] {
    let b = p.beta();
    let w2 = p.omega().sqr();
    let e1 = Real::from_rational(r.eps1.clone());
    let e2 = Real::from_rational(r.eps2.clone());
    let one = Real::one();
    let two = Real::from_int(2);
    let b1 = b + &one;
    let plus_first = &(&w2 + &b1.sqr()) - &(&two * &e1);
    let shifted = &b1 - &(&two * &e1);
    let plus_second =
        &(&w2 + &shifted.sqr()) + &(&(&two * &(&one - &(&two * &e1))) * &(&e1 - &one));
    let minus_first = &(&(&two * b) + &one) - &(&two * &e2);
    let shifted2 = &b1 - &(&two * &e2);
    let minus_second = &(&w2 + &shifted2.sqr()) + &(&(&two * &e2) * &(&one - &(&two * &e2)));
    [plus_first, plus_second, minus_first, minus_second]
}

/// Decides membership in H⁺(ε₁) and H⁻(ε₂); points with ω ≤ 0 are flagged.
pub fn region_membership(p: &PlanePoint, r: &RegionParams) -> Result<RegionMembership> {
    let values = region_values(p, r);
    if !p.is_interior()? {
        return Ok(RegionMembership {
            in_h_plus: false,
            in_h_minus: false,
            boundary: true,
            values,
        });
    }
    let positive = |v: &Real| -> Result<bool> { Ok(v.sign()? == Ordering::Greater) };
    let in_h_plus = positive(&values[0])? && positive(&values[1])?;
    let in_h_minus = positive(&values[2])? && positive(&values[3])?;
    Ok(RegionMembership {
        in_h_plus,
        in_h_minus,
        boundary: false,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_ints(re, im)
    }

    #[test]
    fn principal_argument_conventions() {
        assert_eq!(
            arg_principal(&c(1, 0)).unwrap().pi_multiple(),
            Some(&int(0))
        );
        assert_eq!(
            arg_principal(&c(-1, 0)).unwrap().pi_multiple(),
            Some(&int(1))
        );
        let z = ExactComplex::new(
            Real::from_rational(rat(-1, 2)),
            Real::Exact(QSqrt3::new(int(0), rat(1, 2))),
        );
        assert_eq!(arg_principal(&z).unwrap().pi_multiple(), Some(&rat(2, 3)));
        assert!(arg_principal(&c(0, 0)).is_err());
        let generic = arg_principal(&c(2, 1)).unwrap();
        assert!(generic.pi_multiple().is_none());
        assert!((generic.to_f64() - 0.5f64.atan()).abs() < 1e-15);
        let lower = arg_principal(&c(-3, -1)).unwrap();
        assert!((lower.to_f64() - (-1f64).atan2(-3.0)).abs() < 1e-15);
    }

    #[test]
    fn angle_sum_constants_match_substitution() {
        let at = |k| angle_sum_lower_bound(&Angle::from_sixths(k)).unwrap();
        let half_pi = at(3);
        assert!(half_pi.sqr().to_interval().contains(&rat(1, 2)));
        assert_eq!(
            angle_sum_constant_squared(&Angle::from_sixths(3))
                .unwrap()
                .as_rational(),
            Some(&rat(1, 2))
        );
        assert!((half_pi.to_f64() - 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(at(4).as_rational(), Some(&rat(1, 2)));
        let closure = angle_sum_lower_bound_closure(&Angle::from_sixths(0)).unwrap();
        assert_eq!(closure.as_rational(), Some(&int(1)));
        assert!(angle_sum_lower_bound(&Angle::from_sixths(0)).is_err());
        assert!(angle_sum_lower_bound(&Angle::from_sixths(6)).is_err());
        let bound = ratio_sup_bound(&Angle::from_sixths(3)).unwrap();
        assert!((bound.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            ratio_sup_bound_closure(&Angle::from_sixths(0))
                .unwrap()
                .as_rational(),
            Some(&int(1))
        );
    }

    #[test]
    fn angle_sum_examples() {
        let quarter = Angle::from_sixths(3);
        let eq = check_angle_sum_inequality(&c(0, 1), &c(1, 0), &quarter).unwrap();
        assert_eq!(eq.outcome, AngleSumOutcome::Holds { equality: true });
        let strict = check_angle_sum_inequality(&c(0, 1), &c(2, 0), &quarter).unwrap();
        assert_eq!(strict.outcome, AngleSumOutcome::Holds { equality: false });
        assert_eq!(strict.lhs_squared.as_rational(), Some(&int(5)));
        assert!((strict.rhs_squared.to_f64() - 4.5).abs() < 1e-12);
        let bad = check_angle_sum_inequality(&c(1, 0), &c(0, 1), &quarter).unwrap();
        assert!(matches!(bad.outcome, AngleSumOutcome::HypothesisNotMet(_)));
    }

    #[test]
    fn region_examples() {
        let r = RegionParams::new(rat(1, 3), rat(-1, 2)).unwrap();
        let endpoint = PlanePoint::new(
            Real::from_rational(rat(-1, 2)),
            Real::Exact(QSqrt3::new(int(0), rat(1, 2))),
        )
        .unwrap();
        let m = region_membership(&endpoint, &r).unwrap();
        assert!(m.in_h_plus && m.in_h_minus);
        let expected = [rat(1, 3), rat(1, 3), int(1), int(1)];
        for (v, e) in m.values.iter().zip(expected) {
            assert_eq!(v.as_rational(), Some(&e));
        }
        let mid = PlanePoint::new(
            Real::from_rational(rat(1, 2)),
            Real::Exact(QSqrt3::new(int(0), rat(1, 2))),
        )
        .unwrap();
        assert!(region_membership(&mid, &r).unwrap().in_both());
        let near = PlanePoint::rational(int(-1), rat(1, 1000)).unwrap();
        let r2 = RegionParams::new(rat(2, 5), rat(-1, 2)).unwrap();
        let m2 = region_membership(&near, &r2).unwrap();
        assert!(!m2.in_h_plus);
        assert_eq!(
            m2.values[0].as_rational(),
            Some(&(rat(1, 1_000_000) - rat(4, 5)))
        );
        let boundary = PlanePoint::rational(int(1), int(0)).unwrap();
        let mb = region_membership(&boundary, &r).unwrap();
        assert!(mb.boundary && !mb.in_h_plus && !mb.in_h_minus);
    }

    #[test]
    fn oracle_matches_closed_form() {
        for k in 1..12 {
            let theta = std::f64::consts::PI * k as f64 / 12.0;
            assert!((ratio_sup_oracle(theta) - ratio_sup_closed_form(theta)).abs() < 1e-9);
        }
    }

    #[test]
    fn angle_literals_parse() {
        let a: Angle = "2/3π".parse().unwrap();
        assert_eq!(a.pi_multiple(), Some(&rat(2, 3)));
        let b: Angle = "1/6pi".parse().unwrap();
        assert_eq!(b.pi_multiple(), Some(&rat(1, 6)));
        assert!(AngleInterval::principal()
            .contains(&Angle::from_pi_multiple(int(1)))
            .unwrap());
        assert!(!AngleInterval::principal()
            .contains(&Angle::from_pi_multiple(int(-1)))
            .unwrap());
    }
}
