//! The slope on a glued heart, its Harder–Narasimhan filtrations, the
//! torsion pair it defines and the tilted family of stability conditions
//! parameterized by a point `(β, ω)` of the upper half-plane.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use crate::antype::{corpus, DObject, Indec, K0Class};
use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::geometry::{arg_principal, region_membership, PlanePoint, RegionParams};
use crate::gluing::{GluedTorsion, GluingContext};
use crate::linalg::Matrix;
use crate::morphism::{from_a2, right_truncation_triangle};
use crate::scalar::{int, Rational, Real};
use crate::stability::heart::{Heart, HeartKind, TiltPair};
use crate::stability::{
    hn_in_heart, support_check_on, CentralCharge, HnCache, StabilityCondition, SupportReport,
};

/// The slope charge `M`: on an object with truncations `E₁, E₂` it is
/// `−Im Z₁(E₁) + ω Re Z₂(E₂) − β Im Z₂(E₂) + i(Im Z₁(E₁) + Im Z₂(E₂))`.
pub fn slope_charge(ctx: &GluingContext, p: &PlanePoint) -> CentralCharge {
    let (z1, z2) = ctx.point_charges();
    let a = z1.im().clone();
    let on_first = ExactComplex::new(-&a, a);
    let re2 = &(p.omega() * z2.re()) - &(p.beta() * z2.im());
    let on_second = ExactComplex::new(re2, z2.im().clone());
    ctx.truncation_charge(on_first, on_second)
}

/// The tilted charge `Z₁(E₁) + (β − iω) Z₂(E₂)`.
pub fn tilted_charge(ctx: &GluingContext, p: &PlanePoint) -> CentralCharge {
    let (z1, z2) = ctx.point_charges();
    ctx.truncation_charge(z1, &p.beta_minus_i_omega() * &z2)
}

/// Recipe of the heart tilted at the slope torsion pair.
pub fn tilted_heart_kind(ctx: &GluingContext, p: &PlanePoint) -> HeartKind {
    HeartKind::Tilted {
        base: Box::new(ctx.glued_heart_kind()),
        pair: Box::new(TiltPair::Slope {
            torsion_charge: ctx.glued_charge(),
            slope_charge: slope_charge(ctx, p),
        }),
    }
}

/// Value of the slope `μ = −Re M / Im M`.
#[derive(Clone, Debug)]
pub enum Mu {
    /// `Im M > 0`.
    Finite(Real),
    /// `Im M = 0` and `M ≠ 0`; larger than every finite slope.
    Infinite,
    /// `M = 0`: the object is zero in the quotient by the kernel of `M`.
    Null,
}

/// The slope charge of an object together with its slope.
#[derive(Clone, Debug)]
pub struct SlopeValue {
    /// `M(E)`.
    pub m: ExactComplex,
    /// `μ(E)`.
    pub mu: Mu,
}

impl SlopeValue {
    /// Slope of a value of `M`.
    pub fn from_charge(m: ExactComplex) -> Result<Self> {
        let mu = match m.im().sign()? {
            Ordering::Greater => Mu::Finite((-m.re()).checked_div(m.im())?),
            Ordering::Equal if m.re().is_zero()? => Mu::Null,
            Ordering::Equal => Mu::Infinite,
            Ordering::Less => {
                return Err(Error::Validation(format!(
                    "slope charge {m} below the real axis"
                )))
            }
        };
        Ok(Self { m, mu })
    }

    /// True for members of the kernel of `M`.
    pub fn is_null(&self) -> bool {
        matches!(self.mu, Mu::Null)
    }

    /// Compares `μ` with a rational number.
    pub fn cmp_rational(&self, c: &Rational) -> Result<Ordering> {
        match &self.mu {
            Mu::Infinite => Ok(Ordering::Greater),
            Mu::Null => Err(Error::Domain("slope of a kernel object".into())),
            Mu::Finite(_) => {
                let d = &(-self.m.re()) - &(self.m.im() * &Real::from_rational(c.clone()));
                d.sign()
            }
        }
    }

    /// Compares two slopes.
    pub fn cmp_slope(&self, other: &SlopeValue) -> Result<Ordering> {
        match (&self.mu, &other.mu) {
            (Mu::Null, _) | (_, Mu::Null) => Err(Error::Domain("slope of a kernel object".into())),
            (Mu::Infinite, Mu::Infinite) => Ok(Ordering::Equal),
            (Mu::Infinite, _) => Ok(Ordering::Greater),
            (_, Mu::Infinite) => Ok(Ordering::Less),
            _ => Ok(self.m.cross(&other.m).sign()?.reverse()),
        }
    }

    /// Approximate value for reports.
    pub fn to_f64(&self) -> f64 {
        match &self.mu {
            Mu::Finite(r) => r.to_f64(),
            Mu::Infinite => f64::INFINITY,
            Mu::Null => f64::NAN,
        }
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mu {
            Mu::Finite(r) => write!(f, "{r}"),
            Mu::Infinite => f.write_str("+inf"),
            Mu::Null => f.write_str("null"),
        }
    }
}

/// One factor of a slope filtration.
#[derive(Clone, Debug)]
pub struct SlopeFactor {
    /// The semistable factor.
    pub object: DObject,
    /// Its slope.
    pub slope: SlopeValue,
}

/// Slope Harder–Narasimhan filtration with kernel members removed.
#[derive(Clone, Debug)]
pub struct SlopeFiltration {
    /// Factors in order of strictly decreasing slope.
    pub factors: Vec<SlopeFactor>,
}

impl SlopeFiltration {
    /// `μ⁺`, absent for kernel objects.
    pub fn max_slope(&self) -> Option<&SlopeValue> {
        self.factors.first().map(|f| &f.slope)
    }

    /// `μ⁻`, absent for kernel objects.
    pub fn min_slope(&self) -> Option<&SlopeValue> {
        self.factors.last().map(|f| &f.slope)
    }
}

/// Position of a glued-heart object relative to the slope torsion pair.
#[derive(Clone, Debug, PartialEq)]
pub enum TiltMembership {
    /// In the torsion class.
    Torsion,
    /// In the free class.
    Free,
    /// Neither; the torsion subobject and the free quotient.
    Mixed {
        /// Torsion subobject.
        torsion: DObject,
        /// Free quotient.
        free: DObject,
    },
}

/// A gluing context together with a point `(β, ω)` with `ω > 0`.
#[derive(Clone, Debug)]
pub struct TiltTag {
    point: PlanePoint,
    ctx: GluingContext,
    glued: StabilityCondition,
    slope_charge: CentralCharge,
    slope_cache: Arc<HnCache>,
    membership_cache: Arc<Mutex<HashMap<Indec, TiltMembership>>>,
}

impl TiltTag {
    /// Requires `ω > 0` and reasonable stability conditions on both factors.
    pub fn new(ctx: &GluingContext, point: &PlanePoint) -> Result<Self> {
        if !point.is_interior()? {
            return Err(Error::Domain(format!("omega must be positive at {point}")));
        }
        Ok(Self {
            point: point.clone(),
            ctx: ctx.clone(),
            glued: ctx.glue_stability()?,
            slope_charge: slope_charge(ctx, point),
            slope_cache: Arc::default(),
            membership_cache: Arc::default(),
        })
    }

    /// The point.
    pub fn point(&self) -> &PlanePoint {
        &self.point
    }

    /// The gluing context.
    pub fn ctx(&self) -> &GluingContext {
        &self.ctx
    }

    /// The glued stability condition.
    pub fn glued(&self) -> &StabilityCondition {
        &self.glued
    }

    /// The slope charge `M`.
    pub fn slope_charge(&self) -> &CentralCharge {
        &self.slope_charge
    }

    fn require_glued(&self, e: &DObject) -> Result<()> {
        if !self.glued.heart().contains(e)? {
            return Err(Error::Domain(format!("{e} is not in the glued heart")));
        }
        Ok(())
    }

    /// Slope of a glued-heart object.
    pub fn slope(&self, e: &DObject) -> Result<SlopeValue> {
        self.require_glued(e)?;
        SlopeValue::from_charge(self.slope_charge.eval_object(e))
    }

    /// Slope filtration of a glued-heart object; factors in the kernel of
    /// `M` are dropped.
    pub fn slope_filtration(&self, e: &DObject) -> Result<SlopeFiltration> {
        for (name, sigma) in [("first", self.ctx.first()), ("second", self.ctx.second())] {
            if !sigma.flags()?.discrete {
                return Err(Error::Refused(format!(
                    "{name} stability condition is not discrete"
                )));
            }
        }
        self.require_glued(e)?;
        let mut factors = Vec::new();
        if e.is_zero() {
            return Ok(SlopeFiltration { factors });
        }
        for f in hn_in_heart(self.glued.heart(), &self.slope_charge, &self.slope_cache, e)? {
            let slope = SlopeValue::from_charge(self.slope_charge.eval_object(&f.object))?;
            if !slope.is_null() {
                factors.push(SlopeFactor {
                    object: f.object,
                    slope,
                });
            }
        }
        for pair in factors.windows(2) {
            if pair[0].slope.cmp_slope(&pair[1].slope)? != Ordering::Greater {
                return Err(Error::Structural(format!(
                    "slope filtration of {e} is not strictly decreasing"
                )));
            }
        }
        Ok(SlopeFiltration { factors })
    }

    /// Free part of a glued-heart object with respect to the glued torsion pair.
    pub fn free_part(&self, e: &DObject) -> Result<DObject> {
        Ok(match self.ctx.torsion_membership(&self.glued, e)? {
            GluedTorsion::Torsion => DObject::zero(2),
            GluedTorsion::Free => e.clone(),
            GluedTorsion::Mixed { free, .. } => free,
        })
    }

    /// True when the object is free for the glued torsion pair.
    pub fn is_glued_free(&self, e: &DObject) -> Result<bool> {
        Ok(self.ctx.torsion_membership(&self.glued, e)? == GluedTorsion::Free)
    }

    /// Position relative to the slope torsion pair.
    pub fn tilt_membership(&self, e: &DObject) -> Result<TiltMembership> {
        self.require_glued(e)?;
        let mut torsion = DObject::zero(2);
        let mut free = DObject::zero(2);
        let (mut any_torsion, mut any_free) = (false, false);
        for x in e.summands() {
            let obj = DObject::indec(2, x);
            match self.indec_membership(&x)? {
                TiltMembership::Torsion => {
                    any_torsion = true;
                    torsion = torsion.direct_sum(&obj);
                }
                TiltMembership::Free => {
                    any_free = true;
                    free = free.direct_sum(&obj);
                }
                TiltMembership::Mixed {
                    torsion: t,
                    free: f,
                } => {
                    any_torsion = true;
                    any_free = true;
                    torsion = torsion.direct_sum(&t);
                    free = free.direct_sum(&f);
                }
            }
        }
        Ok(match (any_torsion, any_free) {
            (_, false) => TiltMembership::Torsion,
            (false, true) => TiltMembership::Free,
            (true, true) => TiltMembership::Mixed { torsion, free },
        })
    }

    fn indec_membership(&self, x: &Indec) -> Result<TiltMembership> {
        if let Some(m) = self.membership_cache.lock().expect("cache").get(x) {
            return Ok(m.clone());
        }
        let obj = DObject::indec(2, *x);
        let free = self.free_part(&obj)?;
        let has_torsion = free != obj;
        let out = if free.is_zero() {
            TiltMembership::Torsion
        } else {
            let hn = self.slope_filtration(&free)?;
            let zero = Rational::zero();
            match (hn.max_slope(), hn.min_slope()) {
                (None, _) | (_, None) => TiltMembership::Torsion,
                (Some(_), Some(low)) if low.cmp_rational(&zero)? == Ordering::Greater => {
                    TiltMembership::Torsion
                }
                (Some(high), Some(_))
                    if !has_torsion && high.cmp_rational(&zero)? != Ordering::Greater =>
                {
                    TiltMembership::Free
                }
                _ => self.split(x)?,
            }
        };
        self.membership_cache
            .lock()
            .expect("cache")
            .insert(*x, out.clone());
        Ok(out)
    }

    fn split(&self, x: &Indec) -> Result<TiltMembership> {
        let mut best: Option<(i64, DObject, DObject)> = None;
        for sub in self.glued.heart().subobjects(x)?.iter() {
            if sub.object.is_zero() || sub.quotient.is_zero() {
                continue;
            }
            let torsion_ok = self.tilt_membership(&sub.object)? == TiltMembership::Torsion;
            if !torsion_ok || self.tilt_membership(&sub.quotient)? != TiltMembership::Free {
                continue;
            }
            let len = self.glued.heart().length(&sub.object);
            if best.as_ref().is_none_or(|b| len > b.0) {
                best = Some((len, sub.object.clone(), sub.quotient.clone()));
            }
        }
        let (_, torsion, free) = best.ok_or_else(|| {
            Error::Structural(format!(
                "{} has no torsion-free decomposition",
                DObject::indec(2, *x)
            ))
        })?;
        Ok(TiltMembership::Mixed { torsion, free })
    }

    /// For a glued-free object with `μ⁺ < 1`, whether the canonical map from
    /// the first truncation to the glued image of the second is a
    /// monomorphism; `None` when the hypothesis fails.
    pub fn truncation_map_is_mono(&self, e: &DObject) -> Result<Option<bool>> {
        if !self.is_glued_free(e)? {
            return Ok(None);
        }
        let hn = self.slope_filtration(e)?;
        match hn.max_slope() {
            Some(top) if top.cmp_rational(&int(1))? == Ordering::Less => {}
            _ => return Ok(None),
        }
        let t = right_truncation_triangle(&from_a2(e)?, self.ctx.side());
        let cokernel = t.right.shift(1);
        Ok(Some(
            cokernel.is_zero() || self.ctx.first().heart().contains(&cokernel)?,
        ))
    }

    /// `M` on the image of the first truncation: `(−1 + i) Im Z₁(E₁)`.
    pub fn first_slope_part(&self, e: &DObject) -> ExactComplex {
        let (t1, _) = self.ctx.truncation_classes(&e.k0());
        let (z1, _) = self.ctx.point_charges();
        let a = &z1.im().clone() * &Real::from_int(t1);
        ExactComplex::new(-&a, a)
    }

    /// `M` on the image of the second truncation.
    pub fn second_slope_part(&self, e: &DObject) -> ExactComplex {
        &self.slope_charge.eval_object(e) - &self.first_slope_part(e)
    }
}

/// Options for [`build_tilted_condition`].
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Region in which non-rational points are covered by continuity.
    pub region: RegionParams,
    /// Build even when the hypotheses fail; the result is flagged.
    pub allow_outside_hypotheses: bool,
    /// Largest total dimension of the validation corpus.
    pub corpus_dim: usize,
    /// Shifts of the validation corpus.
    pub corpus_shifts: std::ops::RangeInclusive<i64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            region: RegionParams::new(
                Rational::new(1.into(), 3.into()),
                Rational::new((-1).into(), 2.into()),
            )
            .expect("valid region"),
            allow_outside_hypotheses: false,
            corpus_dim: 3,
            corpus_shifts: -2..=2,
        }
    }
}

/// Counts of the validation clauses that were evaluated.
#[derive(Clone, Debug, Default)]
pub struct TiltValidation {
    /// Heart indecomposables with charge in the half-plane.
    pub positivity_checked: usize,
    /// Objects with a verified filtration.
    pub hn_checked: usize,
    /// Free objects of real tilted charge on which the positivity bound was evaluated.
    pub bound_witnesses: usize,
    /// Glued-heart indecomposables whose torsion-pair class matched the tilted heart.
    pub tilt_agreement_checked: usize,
}

/// A member of the tilted family.
#[derive(Clone, Debug)]
pub struct TiltedCondition {
    /// The point.
    pub point: PlanePoint,
    /// The stability condition.
    pub sigma: StabilityCondition,
    /// True when built with the hypothesis override.
    pub outside_hypotheses: bool,
    /// True at the boundary point `(1, 0)`, where the glued condition is returned.
    pub specialization: bool,
    /// Validation counts.
    pub validation: TiltValidation,
}

fn is_boundary_point(p: &PlanePoint) -> bool {
    p.beta().as_rational() == Some(&int(1)) && p.omega().is_exact_zero()
}

/// Builds and validates the tilted stability condition at `p`.
pub fn build_tilted_condition(
    ctx: &GluingContext,
    p: &PlanePoint,
    opts: &BuildOptions,
) -> Result<TiltedCondition> {
    if is_boundary_point(p) {
        let sigma = ctx.glue_stability()?;
        return Ok(TiltedCondition {
            point: p.clone(),
            sigma,
            outside_hypotheses: false,
            specialization: true,
            validation: TiltValidation::default(),
        });
    }
    if !p.is_interior()? {
        return Err(Error::Domain(format!("omega must be positive at {p}")));
    }
    let mut reasons = Vec::new();
    if !(ctx.first().charge().is_rational() && ctx.second().charge().is_rational()) {
        reasons.push("the factor charges are not rational".to_string());
    }
    if !p.is_rational() && !region_membership(p, &opts.region)?.in_both() {
        reasons.push(format!(
            "{p} is neither rational nor inside the admissible region"
        ));
    }
    if !reasons.is_empty() && !opts.allow_outside_hypotheses {
        return Err(Error::Refused(reasons.join("; ")));
    }
    let tag = TiltTag::new(ctx, p)?;
    let heart = Heart::build(tilted_heart_kind(ctx, p), 2)?;
    let sigma = StabilityCondition::new(heart, tilted_charge(ctx, p))?;
    let objects = corpus(2, opts.corpus_dim, opts.corpus_shifts.clone());
    let validation = validate(&tag, &sigma, &objects)?;
    Ok(TiltedCondition {
        point: p.clone(),
        sigma,
        outside_hypotheses: !reasons.is_empty(),
        specialization: false,
        validation,
    })
}

fn validate(
    tag: &TiltTag,
    sigma: &StabilityCondition,
    objects: &[DObject],
) -> Result<TiltValidation> {
    let mut out = TiltValidation::default();
    let charge = sigma.charge();
    for x in sigma.heart().catalog() {
        let z = charge.eval_object(&DObject::indec(2, *x));
        if z.is_zero()? || !z.in_charge_half_plane()? {
            return Err(Error::Validation(format!(
                "positivity: charge {z} of heart object {x}"
            )));
        }
        out.positivity_checked += 1;
    }
    for e in objects {
        if e.is_zero() {
            continue;
        }
        let hn = sigma.hn(e)?;
        let total = hn.iter().fold(K0Class::zero(2), |acc, f| {
            K0Class::new(
                acc.coords()
                    .iter()
                    .zip(f.object.k0().coords())
                    .map(|(a, b)| a + b)
                    .collect(),
            )
        });
        if total != e.k0() {
            return Err(Error::Validation(format!(
                "filtration: factors of {e} do not add up to its class"
            )));
        }
        for f in &hn {
            let piece = f.object.shift(-f.phase.shift());
            if !sigma.heart().contains(&piece)? || !sigma.is_semistable(&f.object)? {
                return Err(Error::Validation(format!(
                    "filtration: factor {} of {e} is not semistable",
                    f.object
                )));
            }
        }
        out.hn_checked += 1;
    }
    let tilted = sigma.heart();
    for x in tag.glued().heart().catalog() {
        let obj = DObject::indec(2, *x);
        let in_tilt = tilted.contains(&obj)?;
        let shifted_in_tilt = tilted.contains(&obj.shift(1))?;
        let expected = match tag.tilt_membership(&obj)? {
            TiltMembership::Torsion => (true, false),
            TiltMembership::Free => (false, true),
            TiltMembership::Mixed { .. } => (false, false),
        };
        if (in_tilt, shifted_in_tilt) != expected {
            return Err(Error::Validation(format!(
                "tilt: {obj} has heart membership {:?}, expected {:?}",
                (in_tilt, shifted_in_tilt),
                expected
            )));
        }
        out.tilt_agreement_checked += 1;
        if expected.1 && charge.eval_object(&obj).im().is_zero()? {
            check_free_bound(tag, charge, &obj)?;
            out.bound_witnesses += 1;
        }
    }
    for y in tilted.catalog() {
        let obj = DObject::indec(2, *y);
        let glued = tag.glued().heart();
        if !glued.contains(&obj)? && !glued.contains(&obj.shift(-1))? {
            return Err(Error::Validation(format!(
                "tilt: heart object {obj} is outside the two-term window"
            )));
        }
    }
    Ok(out)
}

fn check_free_bound(tag: &TiltTag, charge: &CentralCharge, e: &DObject) -> Result<()> {
    let (t1, _) = tag.ctx().truncation_classes(&e.k0());
    let (z1, _) = tag.ctx().point_charges();
    let im1 = z1.im() * &Real::from_int(t1);
    let b = tag.point().beta();
    let w = tag.point().omega();
    let b1 = b + &Real::one();
    let coefficient = (&b1.sqr() + &w.sqr()).checked_div(w)?;
    let bound = &coefficient * &im1;
    let re = charge.eval_object(e).re().clone();
    if re.sign()? != Ordering::Greater || re.cmp_real(&bound)? == Ordering::Less {
        return Err(Error::Validation(format!(
            "positivity bound fails on free object {e} of real charge"
        )));
    }
    Ok(())
}

/// The symmetric form with quadratic values `Im Z₁(E₁) · Im Z₂(E₂)`.
pub fn serre_support_form(ctx: &GluingContext) -> Result<Matrix> {
    let (z1, z2) = ctx.point_charges();
    let product = z1.im() * z2.im();
    let a = product
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::Unsupported("support form needs rational imaginary parts".into()))?;
    let rows = ctx.truncation_rows();
    let half = &a / int(2);
    let mut q = Matrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let v = int(rows[0][i] * rows[1][j] + rows[1][i] * rows[0][j]) * &half;
            q.set(i, j, v);
        }
    }
    Ok(q)
}

/// Outcome of the support check for the slope.
#[derive(Clone, Debug)]
pub struct SlopeSupportReport {
    /// Form values and kernel data.
    pub support: SupportReport,
    /// Semistable objects at which the angle bound between the two slope
    /// parts was evaluated.
    pub angle_checked: usize,
    /// Semistable objects violating the angle bound.
    pub angle_failures: Vec<DObject>,
}

impl SlopeSupportReport {
    /// True when every check held.
    pub fn passed(&self) -> bool {
        self.support.passed() && self.angle_failures.is_empty()
    }
}

/// Checks the support form on slope-semistable glued-heart objects.
pub fn slope_support_check(tag: &TiltTag, objects: &[DObject]) -> Result<SlopeSupportReport> {
    let mut semistable = Vec::new();
    let mut angle_checked = 0;
    let mut angle_failures = Vec::new();
    let rotate = ExactComplex::from_ints(1, 1);
    for e in objects {
        if e.is_zero() || !tag.glued().heart().contains(e)? {
            continue;
        }
        let hn = tag.slope_filtration(e)?;
        if hn.factors.len() != 1 {
            continue;
        }
        semistable.push(e.clone());
        let m1 = tag.first_slope_part(e);
        let m2 = tag.second_slope_part(e);
        if m1.is_zero()? || m2.is_zero()? {
            continue;
        }
        angle_checked += 1;
        if (&rotate * &m2).dot(&m1).sign()? != Ordering::Greater {
            angle_failures.push(e.clone());
        }
    }
    let support = support_check_on(
        tag.slope_charge(),
        &serre_support_form(tag.ctx())?,
        &semistable,
    )?;
    Ok(SlopeSupportReport {
        support,
        angle_checked,
        angle_failures,
    })
}

/// Compares `Σ arg a` with `Σ arg b` for principal arguments.
pub fn cmp_arg_sums(a: &[ExactComplex], b: &[ExactComplex]) -> Result<Ordering> {
    let mut diff = Real::zero();
    for z in a {
        diff = &diff + &arg_principal(z)?.in_units_of_pi();
    }
    for z in b {
        diff = &diff - &arg_principal(z)?.in_units_of_pi();
    }
    if let Some(s) = diff.to_interval().sign() {
        return Ok(s);
    }
    let mut w = ExactComplex::one();
    for z in a {
        w = &w * z;
    }
    for z in b {
        w = &w * &z.conj();
    }
    match w.im().sign()? {
        Ordering::Equal if w.re().sign()? == Ordering::Greater => Ok(Ordering::Equal),
        Ordering::Equal => Err(Error::Undecided(
            "argument sums differ by a multiple of π".into(),
        )),
        s => Ok(s),
    }
}

/// The angles bounding tilted charges of free objects whose slopes lie in
/// a window `[lo, hi]`, in units of π.
#[derive(Clone, Debug)]
pub struct WindowConstants {
    /// Lower end of the slope window.
    pub lo: Rational,
    /// Upper end of the slope window.
    pub hi: Rational,
    /// `max(θ₁ − θ₂, θ₃ − θ₂)`.
    pub theta0: Real,
    /// `arg(β + 1 − 2·hi + iω)`.
    pub theta1: Real,
    /// `arg(β + 1 − 2·lo + iω) + arg(β − iω)`.
    pub theta2: Real,
    /// `arg(β − hi + iω) + arg(β − iω)`.
    pub theta3: Real,
}

fn offset_point(p: &PlanePoint, shift: &Rational) -> ExactComplex {
    ExactComplex::new(
        p.beta() + &Real::from_rational(shift.clone()),
        p.omega().clone(),
    )
}

struct WindowInputs {
    first: ExactComplex,
    lower: ExactComplex,
    upper: ExactComplex,
    conj: ExactComplex,
}

fn window_inputs(p: &PlanePoint, lo: &Rational, hi: &Rational) -> WindowInputs {
    WindowInputs {
        first: offset_point(p, &(int(1) - int(2) * hi)),
        lower: offset_point(p, &(int(1) - int(2) * lo)),
        upper: offset_point(p, &-hi.clone()),
        conj: p.beta_minus_i_omega(),
    }
}

/// `ω² + (β + 1 − 2·lo)² + 2(1 − 2·lo)(lo − hi)`, positive exactly when the
/// window constants are defined.
pub fn window_domain_value(p: &PlanePoint, lo: &Rational, hi: &Rational) -> Real {
    let shifted = p.beta() + &Real::from_rational(int(1) - int(2) * lo);
    let extra = Real::from_rational(int(2) * (int(1) - int(2) * lo) * (lo - hi));
    &(&p.omega().sqr() + &shifted.sqr()) + &extra
}

/// Checks the window conditions and computes the constants.
pub fn window_constants(p: &PlanePoint, lo: &Rational, hi: &Rational) -> Result<WindowConstants> {
    if hi.is_negative()
        || hi > &int(1)
        || lo > hi
        || int(1) - int(2) * lo <= int(0)
        || !p.is_interior()?
    {
        return Err(Error::Domain("slope window parameters out of range".into()));
    }
    if window_domain_value(p, lo, hi).sign()? != Ordering::Greater {
        return Err(Error::Domain(format!("window inequality fails at {p}")));
    }
    let w = window_inputs(p, lo, hi);
    let arg = |z: &ExactComplex| -> Result<Real> { Ok(arg_principal(z)?.in_units_of_pi()) };
    let theta1 = arg(&w.first)?;
    let theta2 = &arg(&w.lower)? + &arg(&w.conj)?;
    let theta3 = &arg(&w.upper)? + &arg(&w.conj)?;
    let third_larger = cmp_arg_sums(
        std::slice::from_ref(&w.first),
        &[w.upper.clone(), w.conj.clone()],
    )? == Ordering::Less;
    let top = if third_larger {
        theta3.clone()
    } else {
        theta1.clone()
    };
    let theta0 = &top - &theta2;
    if theta0.sign()? != Ordering::Greater || (&Real::one() - &theta0).sign()? != Ordering::Greater
    {
        return Err(Error::Validation(format!(
            "theta0 = {} is outside (0, 1)",
            theta0.to_f64()
        )));
    }
    Ok(WindowConstants {
        lo: lo.clone(),
        hi: hi.clone(),
        theta0,
        theta1,
        theta2,
        theta3,
    })
}

/// Argument bounds evaluated for one slope window.
#[derive(Clone, Debug)]
pub struct WindowReport {
    /// The constants.
    pub constants: WindowConstants,
    /// Objects tested by the first-truncation bound, the two
    /// second-truncation bounds and the window bound.
    pub checked: [usize; 4],
}

/// Results of the argument bounds for slopes on a family of objects.
#[derive(Clone, Debug)]
pub struct SlopeBoundReport {
    /// One report per slope window `[ε₁, 1]`, `[0, ε₁]`, `[ε₂, 0]`.
    pub windows: Vec<WindowReport>,
    /// Objects whose free part has every slope above one.
    pub steep_checked: usize,
    /// Free objects with every slope at most `ε₂`.
    pub shallow_checked: usize,
    /// Failing objects with the violated bound.
    pub failures: Vec<String>,
}

impl SlopeBoundReport {
    /// True when no bound failed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Total number of bound evaluations.
    pub fn total_checked(&self) -> usize {
        self.steep_checked
            + self.shallow_checked
            + self.windows.iter().flat_map(|w| w.checked).sum::<usize>()
    }
}

/// Evaluates the argument bounds for slopes on every glued-heart object of
/// the list, using the slope windows cut out by the region parameters.
pub fn slope_bound_sweep(
    tag: &TiltTag,
    r: &RegionParams,
    objects: &[DObject],
) -> Result<SlopeBoundReport> {
    let p = tag.point();
    let (e1, e2) = (r.eps1().clone(), r.eps2().clone());
    let bounds = [(e1.clone(), int(1)), (int(0), e1), (e2.clone(), int(0))];
    let mut windows = Vec::new();
    for (lo, hi) in &bounds {
        windows.push(WindowReport {
            constants: window_constants(p, lo, hi)?,
            checked: [0; 4],
        });
    }
    let steep = [offset_point(p, &int(-1)), p.beta_minus_i_omega()];
    let zt = tilted_charge(tag.ctx(), p);
    let (z1, z2) = tag.ctx().point_charges();
    let mut steep_checked = 0;
    let mut shallow_checked = 0;
    let mut failures = Vec::new();
    for e in objects {
        if e.is_zero() || !tag.glued().heart().contains(e)? {
            continue;
        }
        let value = zt.eval_object(e);
        let free = tag.free_part(e)?;
        if !free.is_zero() {
            if let Some(low) = tag.slope_filtration(&free)?.min_slope() {
                if low.cmp_rational(&int(1))? == Ordering::Greater {
                    steep_checked += 1;
                    if cmp_arg_sums(std::slice::from_ref(&value), &steep)? == Ordering::Less {
                        failures.push(format!("steep bound: {e}"));
                    }
                }
            }
        }
        if !tag.is_glued_free(e)? {
            continue;
        }
        let hn = tag.slope_filtration(e)?;
        let Some(top) = hn.max_slope() else { continue };
        if top.cmp_rational(&e2)? != Ordering::Greater {
            shallow_checked += 1;
            let negative = value.im().sign()? == Ordering::Less
                || (value.im().sign()? == Ordering::Equal
                    && value.re().sign()? == Ordering::Greater);
            if !negative
                || cmp_arg_sums(std::slice::from_ref(&value), &[p.beta_minus_i_omega()])?
                    != Ordering::Greater
            {
                failures.push(format!("shallow bound: {e}"));
            }
        }
        if top.cmp_rational(&int(1))? != Ordering::Less {
            continue;
        }
        let mu = tag.slope(e)?;
        let (t1, t2) = tag.ctx().truncation_classes(&e.k0());
        let first = z1.scale(&Real::from_int(t1));
        let second = z2.scale(&Real::from_int(t2));
        for (w, (lo, hi)) in windows.iter_mut().zip(&bounds) {
            let inputs = window_inputs(p, lo, hi);
            let below = top.cmp_rational(hi)? != Ordering::Greater;
            let above = mu.cmp_rational(lo)? != Ordering::Less;
            let label = format!(
                "[{}, {}]",
                crate::scalar::format_rational(lo),
                crate::scalar::format_rational(hi)
            );
            if below && t1 != 0 {
                w.checked[0] += 1;
                if first.is_zero()?
                    || cmp_arg_sums(
                        std::slice::from_ref(&first),
                        std::slice::from_ref(&inputs.first),
                    )? == Ordering::Greater
                {
                    failures.push(format!("first truncation bound {label}: {e}"));
                }
            }
            if below {
                w.checked[1] += 1;
                if second.is_zero()?
                    || cmp_arg_sums(
                        std::slice::from_ref(&second),
                        std::slice::from_ref(&inputs.upper),
                    )? == Ordering::Greater
                {
                    failures.push(format!("second truncation upper bound {label}: {e}"));
                }
            }
            if above {
                w.checked[2] += 1;
                if second.is_zero()?
                    || cmp_arg_sums(
                        std::slice::from_ref(&second),
                        std::slice::from_ref(&inputs.lower),
                    )? == Ordering::Less
                {
                    failures.push(format!("second truncation lower bound {label}: {e}"));
                }
            }
            if below && above {
                w.checked[3] += 1;
                let lower_pair = [inputs.lower.clone(), inputs.conj.clone()];
                let upper_pair = [inputs.upper.clone(), inputs.conj.clone()];
                let inside = cmp_arg_sums(std::slice::from_ref(&value), &lower_pair)?
                    == Ordering::Greater
                    && (cmp_arg_sums(
                        std::slice::from_ref(&value),
                        std::slice::from_ref(&inputs.first),
                    )? != Ordering::Greater
                        || cmp_arg_sums(std::slice::from_ref(&value), &upper_pair)?
                            != Ordering::Greater);
                if !inside {
                    failures.push(format!("window bound {label}: {e}"));
                }
            }
        }
    }
    Ok(SlopeBoundReport {
        windows,
        steep_checked,
        shallow_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::point;
    use crate::morphism::{include_first, target_only, to_a2, SodSide};
    use crate::scalar::{rat, QSqrt3};

    fn ctx(side: SodSide) -> GluingContext {
        GluingContext::from_point_charge(side, ExactComplex::i()).unwrap()
    }

    fn endpoint() -> PlanePoint {
        PlanePoint::new(
            Real::from_rational(rat(-1, 2)),
            Real::Exact(QSqrt3::new(int(0), rat(1, 2))),
        )
        .unwrap()
    }

    #[test]
    fn first_factor_objects_have_slope_one() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let tag =
                TiltTag::new(&c, &PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap()).unwrap();
            let shift = if side == SodSide::Sod0 { 0 } else { 1 };
            let e = to_a2(&include_first(&point(shift), side)).unwrap();
            let s = tag.slope(&e).unwrap();
            assert_eq!(arg_principal(&s.m).unwrap().pi_multiple(), Some(&rat(3, 4)));
            assert_eq!(s.cmp_rational(&int(1)).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn tilted_charge_examples() {
        let c = ctx(SodSide::Sod0);
        let e = to_a2(&target_only(&point(0))).unwrap();
        let p = PlanePoint::rational(rat(2, 7), rat(3, 5)).unwrap();
        let expected = ExactComplex::from_rationals(rat(3, 5), rat(9, 7));
        assert!(tilted_charge(&c, &p).eval_object(&e).eq_exact(&expected));
        let at_end = tilted_charge(&c, &endpoint()).eval_object(&e);
        assert!(at_end.eq_exact(&ExactComplex::unit_root_twelfth(1)));
        let boundary = PlanePoint::rational(int(1), int(0)).unwrap();
        assert!(tilted_charge(&c, &boundary)
            .eq_certified(&c.glued_charge())
            .unwrap());
    }

    #[test]
    fn second_factor_slope_formula() {
        let c = ctx(SodSide::Sod0);
        let p = PlanePoint::rational(rat(1, 3), rat(2, 3)).unwrap();
        let tag = TiltTag::new(&c, &p).unwrap();
        let e = to_a2(&crate::morphism::include_second(&point(-1), SodSide::Sod0)).unwrap();
        let (_, z2) = c.point_charges();
        let z = z2.scale(&Real::from_int(-1));
        let expected = (&(&-p.omega() * z.re()) + &(p.beta() * z.im()))
            .checked_div(z.im())
            .unwrap();
        match tag.slope(&e).unwrap().mu {
            Mu::Finite(v) => assert_eq!(v.as_rational(), expected.as_rational()),
            other => panic!("unexpected slope {other:?}"),
        }
    }

    #[test]
    fn direct_sums_split_by_slope() {
        let c = ctx(SodSide::Sod0);
        let p = PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap();
        let tag = TiltTag::new(&c, &p).unwrap();
        let first = to_a2(&include_first(&point(0), SodSide::Sod0)).unwrap();
        let second = to_a2(&crate::morphism::include_second(&point(-1), SodSide::Sod0)).unwrap();
        assert!(tag.slope(&second).unwrap().cmp_rational(&int(1)).unwrap() == Ordering::Less);
        let hn = tag.slope_filtration(&first.direct_sum(&second)).unwrap();
        assert_eq!(hn.factors.len(), 2);
        assert_eq!(hn.factors[0].object, first);
        assert_eq!(hn.factors[1].object, second);
    }

    #[test]
    fn torsion_pair_matches_tilted_heart() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            for (b, w) in [
                (rat(1, 2), rat(1, 2)),
                (rat(-1, 3), rat(1, 4)),
                (rat(3, 2), rat(1, 5)),
                (int(-2), int(1)),
            ] {
                let p = PlanePoint::rational(b, w).unwrap();
                let s = build_tilted_condition(&c, &p, &BuildOptions::default()).unwrap();
                assert!(s.validation.tilt_agreement_checked > 0);
                assert!(!s.outside_hypotheses);
            }
        }
    }

    #[test]
    fn builder_handles_boundary_and_refusals() {
        let c = ctx(SodSide::Sod0);
        let boundary = PlanePoint::rational(int(1), int(0)).unwrap();
        let s = build_tilted_condition(&c, &boundary, &BuildOptions::default()).unwrap();
        assert!(s.specialization);
        assert!(s.sigma.charge().eq_certified(&c.glued_charge()).unwrap());
        let below = PlanePoint::rational(int(2), int(0)).unwrap();
        assert!(matches!(
            build_tilted_condition(&c, &below, &BuildOptions::default()),
            Err(Error::Domain(_))
        ));
        let far = PlanePoint::new(
            Real::Exact(QSqrt3::new(int(-2), int(1))),
            Real::from_rational(rat(1, 100)),
        )
        .unwrap();
        assert!(matches!(
            build_tilted_condition(&c, &far, &BuildOptions::default()),
            Err(Error::Refused(_))
        ));
        let opts = BuildOptions {
            allow_outside_hypotheses: true,
            ..BuildOptions::default()
        };
        assert!(
            build_tilted_condition(&c, &far, &opts)
                .unwrap()
                .outside_hypotheses
        );
        let end = build_tilted_condition(&c, &endpoint(), &BuildOptions::default()).unwrap();
        assert!(!end.outside_hypotheses);
    }

    #[test]
    fn support_form_is_nonnegative_on_semistables() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let tag =
                TiltTag::new(&c, &PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap()).unwrap();
            let objects = corpus(2, 4, -2..=2);
            let report = slope_support_check(&tag, &objects).unwrap();
            assert!(report.passed(), "{report:?}");
            assert!(report.support.checked > 0);
            let q = serre_support_form(&c).unwrap();
            let shift = if side == SodSide::Sod0 { 0 } else { 1 };
            let first = to_a2(&include_first(&point(shift), side)).unwrap();
            assert!(crate::stability::quadratic_value(&q, &first.k0()).is_zero());
        }
    }

    #[test]
    fn truncation_maps_are_mono() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let tag =
                TiltTag::new(&c, &PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap()).unwrap();
            let mut applicable = 0;
            for e in corpus(2, 4, -2..=2) {
                if e.is_zero() || !tag.glued().heart().contains(&e).unwrap() {
                    continue;
                }
                if let Some(mono) = tag.truncation_map_is_mono(&e).unwrap() {
                    applicable += 1;
                    assert!(mono, "{e}");
                }
            }
            assert!(applicable > 0);
        }
    }

    #[test]
    fn slope_bounds_hold_in_the_region() {
        let r = RegionParams::new(rat(1, 3), rat(-1, 2)).unwrap();
        let points = [
            (rat(1, 2), rat(1, 2)),
            (int(0), int(1)),
            (rat(-1, 4), rat(3, 4)),
            (rat(-1, 2), int(1)),
            (rat(3, 2), rat(1, 5)),
        ];
        let mut window_counts = [0usize; 3];
        let (mut steep, mut shallow) = (0, 0);
        for side in [SodSide::Sod0, SodSide::Sod1] {
            for z in [ExactComplex::i(), ExactComplex::from_ints(-1, 1)] {
                let c = GluingContext::from_point_charge(side, z).unwrap();
                for (b, w) in &points {
                    let p = PlanePoint::rational(b.clone(), w.clone()).unwrap();
                    let tag = TiltTag::new(&c, &p).unwrap();
                    let report = slope_bound_sweep(&tag, &r, &corpus(2, 4, -2..=2)).unwrap();
                    assert!(report.passed(), "{report:?}");
                    for (k, w) in report.windows.iter().enumerate() {
                        let t = w.constants.theta0.to_f64();
                        assert!(t > 0.0 && t < 1.0);
                        window_counts[k] += w.checked[3];
                    }
                    steep += report.steep_checked;
                    shallow += report.shallow_checked;
                }
            }
        }
        assert!(window_counts.iter().all(|&c| c > 0), "{window_counts:?}");
        assert!(steep > 0 && shallow > 0);
    }

    #[test]
    fn irrational_point_charges_are_discrete() {
        let irrational = ExactComplex::new(Real::Exact(QSqrt3::new(int(0), int(1))), Real::one());
        let c = GluingContext::from_point_charge(SodSide::Sod0, irrational).unwrap();
        let tag = TiltTag::new(&c, &PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap()).unwrap();
        let e = to_a2(&include_first(&point(0), SodSide::Sod0)).unwrap();
        assert_eq!(tag.slope_filtration(&e).unwrap().factors.len(), 1);
    }
}
