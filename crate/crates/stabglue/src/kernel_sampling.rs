//! Seeded random verification of the angle-sum inequality and its ratio bound.
//!
//! Samples are pairs of complex numbers with double coordinates, which are
//! exact dyadic rationals. Each sample is first decided by a certified
//! double-interval filter; whenever the filter cannot decide, the exact
//! evaluation of [`check_angle_sum_inequality`] takes over.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::geometry::{
    angle_hypothesis, angle_sum_constant_squared, check_angle_sum_inequality, ratio_sup_bound,
    Angle, AngleSumOutcome,
};
use crate::scalar::{rational_from_f64, rational_to_f64, Real};

/// Double interval with outward rounding after every operation.
#[derive(Clone, Copy, Debug)]
struct Bounds {
    lo: f64,
    hi: f64,
}

impl Bounds {
    fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    fn of_real(r: &Real) -> Self {
        let i = r.to_interval();
        Self {
            lo: rational_to_f64(i.lo()).next_down(),
            hi: rational_to_f64(i.hi()).next_up(),
        }
    }

    fn add(self, o: Self) -> Self {
        Self {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }

    fn sub(self, o: Self) -> Self {
        Self {
            lo: (self.lo - o.hi).next_down(),
            hi: (self.hi - o.lo).next_up(),
        }
    }

    fn mul(self, o: Self) -> Self {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    fn sqrt(self) -> Self {
        Self {
            lo: self.lo.max(0.0).sqrt().next_down().max(0.0),
            hi: self.hi.max(0.0).sqrt().next_up(),
        }
    }

    fn sign(self) -> Option<Ordering> {
        if self.lo > 0.0 {
            Some(Ordering::Greater)
        } else if self.hi < 0.0 {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// Result of a sampling run at one angle.
#[derive(Clone, Debug)]
pub struct KernelSampleReport {
    /// The angle θ.
    pub theta: Angle,
    /// Admissible samples evaluated.
    pub samples: usize,
    /// Drawn pairs discarded because they violate the argument hypothesis.
    pub rejected: usize,
    /// Samples that needed the exact evaluation.
    pub exact_fallbacks: usize,
    /// Counterexamples to the angle-sum inequality, as `(z1, z2)` literals.
    pub violations: Vec<(String, String)>,
    /// Counterexamples to the ratio bound, as `(z1, z2)` literals.
    pub ratio_violations: Vec<(String, String)>,
    /// Exact equality at `z1 = e^{iθ}`, `z2 = 1`; `None` when θ is not exact.
    pub equality_witness: Option<bool>,
    /// Largest observed `|z2|/|z1+z2|`.
    pub empirical_ratio_sup: f64,
    /// The bound `2/√(2+2cos θ)`.
    pub ratio_bound: Real,
}

impl KernelSampleReport {
    /// True when no counterexample was found and the equality case was confirmed.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && self.ratio_violations.is_empty()
            && self.equality_witness != Some(false)
    }
}

fn exact_pair(z: (f64, f64)) -> Result<ExactComplex> {
    Ok(ExactComplex::from_rationals(
        rational_from_f64(z.0)?,
        rational_from_f64(z.1)?,
    ))
}

fn literal(z: (f64, f64)) -> String {
    exact_pair(z)
        .map(|c| c.to_string())
        .unwrap_or_else(|_| format!("({}; {})", z.0, z.1))
}

enum Verdict {
    Yes,
    No,
    Unknown,
}

struct FastContext {
    cos: Bounds,
    sin: Bounds,
    c: Bounds,
}

fn fast_hypothesis(ctx: &FastContext, z1: (f64, f64), z2: (f64, f64)) -> Verdict {
    let rank = |z: (f64, f64)| -> Option<u8> {
        if z.1 < 0.0 {
            Some(0)
        } else if z.1 > 0.0 || z.0 != 0.0 {
            Some(1)
        } else {
            None
        }
    };
    let (Some(r1), Some(r2)) = (rank(z1), rank(z2)) else {
        return Verdict::Unknown;
    };
    if r1 < r2 {
        return Verdict::No;
    }
    let (x1, y1, x2, y2) = (
        Bounds::point(z1.0),
        Bounds::point(z1.1),
        Bounds::point(z2.0),
        Bounds::point(z2.1),
    );
    if r1 == r2 {
        match x1.mul(y2).sub(y1.mul(x2)).sign() {
            Some(Ordering::Greater) => return Verdict::No,
            Some(Ordering::Less) => {}
            _ => return Verdict::Unknown,
        }
    }
    let w_re = x1.mul(x2).add(y1.mul(y2));
    let w_im = y1.mul(x2).sub(x1.mul(y2));
    match w_im.sign() {
        Some(Ordering::Greater) => {}
        Some(Ordering::Less) => return Verdict::No,
        _ => return Verdict::Unknown,
    }
    match w_re.mul(ctx.sin).sub(w_im.mul(ctx.cos)).sign() {
        Some(Ordering::Greater) => Verdict::Yes,
        Some(Ordering::Less) => Verdict::No,
        _ => Verdict::Unknown,
    }
}

fn fast_inequality(ctx: &FastContext, z1: (f64, f64), z2: (f64, f64)) -> Verdict {
    let (x1, y1, x2, y2) = (
        Bounds::point(z1.0),
        Bounds::point(z1.1),
        Bounds::point(z2.0),
        Bounds::point(z2.1),
    );
    let n1 = x1.mul(x1).add(y1.mul(y1));
    let n2 = x2.mul(x2).add(y2.mul(y2));
    let sx = x1.add(x2);
    let sy = y1.add(y2);
    let l = sx.mul(sx).add(sy.mul(sy));
    let a = l.sub(ctx.c.mul(n1.add(n2)));
    let b = Bounds::point(2.0).mul(ctx.c);
    let gap = a.sub(b.mul(n1.mul(n2).sqrt()));
    match gap.sign() {
        Some(Ordering::Greater) => Verdict::Yes,
        _ => Verdict::Unknown,
    }
}

fn fast_ratio(ctx: &FastContext, z1: (f64, f64), z2: (f64, f64)) -> Verdict {
    let (x1, y1, x2, y2) = (
        Bounds::point(z1.0),
        Bounds::point(z1.1),
        Bounds::point(z2.0),
        Bounds::point(z2.1),
    );
    let n2 = x2.mul(x2).add(y2.mul(y2));
    let sx = x1.add(x2);
    let sy = y1.add(y2);
    let l = sx.mul(sx).add(sy.mul(sy));
    let four_c = Bounds::point(4.0).mul(ctx.c);
    match Bounds::point(4.0).mul(l).sub(n2.mul(four_c)).sign() {
        Some(Ordering::Greater) => Verdict::Yes,
        _ => Verdict::Unknown,
    }
}

fn exact_ratio_holds(theta: &Angle, z1: &ExactComplex, z2: &ExactComplex) -> Result<bool> {
    let four_c = &Real::from_int(4) * &angle_sum_constant_squared(theta)?;
    let lhs = &Real::from_int(4) * &(z1 + z2).norm_sq();
    let rhs = &z2.norm_sq() * &four_c;
    Ok(lhs.cmp_real(&rhs)? != Ordering::Less)
}

fn draw_pair(rng: &mut ChaCha8Rng, theta: f64) -> ((f64, f64), (f64, f64)) {
    use std::f64::consts::PI;
    let alpha = rng.gen_range(-PI..PI);
    let (phi, r1, r2) = match rng.gen_range(0..4) {
        0 => (
            rng.gen_range(0.0..=theta),
            rng.gen_range(-4.0f64..4.0).exp(),
            rng.gen_range(-4.0f64..4.0).exp(),
        ),
        1 => {
            let r2 = rng.gen_range(-3.0f64..3.0).exp();
            let phi = theta - rng.gen_range(0.0..1e-6);
            (phi, r2 * (1.0 + rng.gen_range(-1e-3..1e-3)), r2)
        }
        2 => {
            let optimum = if theta.cos() < 0.0 {
                -theta.cos()
            } else {
                1e-12
            };
            let r2 = rng.gen_range(-2.0f64..2.0).exp();
            let phi = theta * (1.0 - rng.gen_range(0.0..1e-9));
            (phi, r2 * optimum * (1.0 + rng.gen_range(-1e-5..1e-5)), r2)
        }
        _ => {
            let phi = if rng.gen_bool(0.5) {
                rng.gen_range(0.0..1e-9)
            } else {
                theta - rng.gen_range(0.0..1e-9)
            };
            (
                phi,
                rng.gen_range(-4.0f64..4.0).exp(),
                rng.gen_range(-4.0f64..4.0).exp(),
            )
        }
    };
    let z2 = (r2 * alpha.cos(), r2 * alpha.sin());
    let z1 = (r1 * (alpha + phi).cos(), r1 * (alpha + phi).sin());
    (z1, z2)
}

/// Draws `samples` admissible pairs at angle θ and checks both inequalities.
pub fn sample_kernel(theta: &Angle, samples: usize, seed: u64) -> Result<KernelSampleReport> {
    let bound = ratio_sup_bound(theta)?;
    let cos = theta.cos()?;
    let ctx = FastContext {
        cos: Bounds::of_real(&cos),
        sin: Bounds::of_real(&theta.sin()?),
        c: Bounds::of_real(&angle_sum_constant_squared(theta)?),
    };
    let theta_f = theta.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ theta_f.to_bits().rotate_left(17));
    let mut report = KernelSampleReport {
        theta: theta.clone(),
        samples: 0,
        rejected: 0,
        exact_fallbacks: 0,
        violations: Vec::new(),
        ratio_violations: Vec::new(),
        equality_witness: None,
        empirical_ratio_sup: 0.0,
        ratio_bound: bound,
    };
    let unit = theta.unit()?;
    if unit.is_exact() {
        let eq = check_angle_sum_inequality(&unit, &ExactComplex::one(), theta)?;
        report.equality_witness = Some(eq.outcome == AngleSumOutcome::Holds { equality: true });
    }
    let max_attempts = samples.saturating_mul(20).max(1000);
    let mut attempts = 0usize;
    while report.samples < samples {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::Validation(format!(
                "only {} admissible samples in {max_attempts} draws",
                report.samples
            )));
        }
        let (z1, z2) = draw_pair(&mut rng, theta_f);
        let admissible = match fast_hypothesis(&ctx, z1, z2) {
            Verdict::Yes => true,
            Verdict::No => false,
            Verdict::Unknown => {
                report.exact_fallbacks += 1;
                angle_hypothesis(&exact_pair(z1)?, &exact_pair(z2)?, theta)?.is_none()
            }
        };
        if !admissible {
            report.rejected += 1;
            continue;
        }
        report.samples += 1;
        if !matches!(fast_inequality(&ctx, z1, z2), Verdict::Yes) {
            report.exact_fallbacks += 1;
            let r = check_angle_sum_inequality(&exact_pair(z1)?, &exact_pair(z2)?, theta)?;
            if !r.is_sound() {
                report.violations.push((literal(z1), literal(z2)));
            }
        }
        if !matches!(fast_ratio(&ctx, z1, z2), Verdict::Yes) {
            report.exact_fallbacks += 1;
            if !exact_ratio_holds(theta, &exact_pair(z1)?, &exact_pair(z2)?)? {
                report.ratio_violations.push((literal(z1), literal(z2)));
            }
        }
        let n2 = z2.0 * z2.0 + z2.1 * z2.1;
        let sum = ((z1.0 + z2.0).powi(2) + (z1.1 + z2.1).powi(2)).sqrt();
        report.empirical_ratio_sup = report.empirical_ratio_sup.max(n2.sqrt() / sum);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio_sup_closed_form;

    #[test]
    fn small_run_is_clean_and_reaches_supremum() {
        let theta = Angle::from_sixths(4);
        let report = sample_kernel(&theta, 4000, 7).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.equality_witness, Some(true));
        let sup = ratio_sup_closed_form(theta.to_f64());
        assert!(report.empirical_ratio_sup <= report.ratio_bound.to_f64());
        assert!(report.empirical_ratio_sup >= sup - 1e-6);
    }

    #[test]
    fn runs_are_deterministic() {
        let theta = Angle::from_sixths(1);
        let a = sample_kernel(&theta, 500, 3).unwrap();
        let b = sample_kernel(&theta, 500, 3).unwrap();
        assert_eq!(
            a.empirical_ratio_sup.to_bits(),
            b.empirical_ratio_sup.to_bits()
        );
        assert_eq!(a.rejected, b.rejected);
    }
}
