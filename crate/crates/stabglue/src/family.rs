//! The tilted family over the admissible region: boundedness of truncation
//! ratios, deformation-ball checks between nearby members, the bridge to the
//! glued stability condition at `(1, 0)`, and the path joining the glued
//! conditions of the two decompositions of the morphism category.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::antype::{corpus, hom_dim, DObject, Indec};
use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::geometry::{
    cmp_principal_arg, region_membership, region_values, Angle, PlanePoint, RegionParams,
};
use crate::gluing::GluingContext;
use crate::morphism::SodSide;
use crate::scalar::{format_rational, int, rat, Interval, Rational, Real};
use crate::stability::heart::Heart;
use crate::stability::{
    ball_membership, real_max, BallReport, Estimate, Flags, StabilityCondition,
};
use crate::tilt::{
    build_tilted_condition, tilted_charge, tilted_heart_kind, BuildOptions, TiltMembership, TiltTag,
};

/// Largest shift used when testing vanishing of morphisms between hearts.
const HOM_SHIFT_RANGE: i64 = 6;

/// Readable forms of the four inequalities defining the admissible region.
pub const REGION_INEQUALITIES: [&str; 4] = [
    "omega^2 + (beta+1)^2 - 2*eps1 > 0",
    "omega^2 + (beta+1-2*eps1)^2 + 2*(1-2*eps1)*(eps1-1) > 0",
    "2*beta + 1 - 2*eps2 > 0",
    "omega^2 + (beta+1-2*eps2)^2 + 2*eps2*(1-2*eps2) > 0",
];

/// Succeeds when `p` lies in both regions; otherwise refuses, naming the
/// first failing inequality.
pub fn require_admissible(p: &PlanePoint, r: &RegionParams) -> Result<()> {
    if !p.is_interior()? {
        return Err(Error::Refused(format!(
            "{p} is not in the open upper half-plane"
        )));
    }
    for (value, name) in region_values(p, r).iter().zip(REGION_INEQUALITIES) {
        if value.sign()? != Ordering::Greater {
            return Err(Error::Refused(format!(
                "{p} violates {name} (value {})",
                value.to_f64()
            )));
        }
    }
    Ok(())
}

fn is_boundary_point(p: &PlanePoint) -> bool {
    p.beta().as_rational() == Some(&int(1)) && p.omega().is_exact_zero()
}

/// The boundary point `(1, 0)`.
pub fn boundary_point() -> PlanePoint {
    PlanePoint::rational(int(1), int(0)).expect("valid point")
}

/// Settings shared by the family checks.
#[derive(Clone, Debug)]
pub struct FamilyOptions {
    /// Build options for the tilted conditions.
    pub build: BuildOptions,
    /// Objects used by the estimates in addition to every heart indecomposable.
    pub corpus: Vec<DObject>,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        let build = BuildOptions::default();
        let corpus = corpus(2, build.corpus_dim, build.corpus_shifts.clone());
        Self { build, corpus }
    }
}

/// A member of the family at one point, or the glued condition at `(1, 0)`.
#[derive(Clone, Debug)]
pub struct FamilySample {
    /// The point.
    pub point: PlanePoint,
    /// The stability condition.
    pub sigma: StabilityCondition,
    /// Slope data; absent at `(1, 0)`.
    pub tag: Option<TiltTag>,
    /// Flags of the stability condition.
    pub flags: Flags,
}

impl FamilySample {
    /// Builds the sample; points other than `(1, 0)` must be admissible.
    pub fn new(ctx: &GluingContext, p: &PlanePoint, opts: &FamilyOptions) -> Result<Self> {
        if is_boundary_point(p) {
            let sigma = ctx.glue_stability()?;
            let flags = sigma.flags()?;
            return Ok(Self {
                point: p.clone(),
                sigma,
                tag: None,
                flags,
            });
        }
        require_admissible(p, &opts.build.region)?;
        let built = build_tilted_condition(ctx, p, &opts.build)?;
        let flags = built.sigma.flags()?;
        Ok(Self {
            point: p.clone(),
            sigma: built.sigma,
            tag: Some(TiltTag::new(ctx, p)?),
            flags,
        })
    }

    /// True at the boundary point, where the sample is the glued condition.
    pub fn is_specialization(&self) -> bool {
        self.tag.is_none()
    }

    /// `−β + iω`, the charge direction of torsion objects.
    pub fn torsion_direction(&self) -> ExactComplex {
        ExactComplex::new(-self.point.beta(), self.point.omega().clone())
    }

    fn second_truncation_charge(&self, ctx: &GluingContext, e: &DObject) -> ExactComplex {
        let (_, t2) = ctx.truncation_classes(&e.k0());
        let (_, z2) = ctx.point_charges();
        (&self.point.beta_minus_i_omega() * &z2).scale(&Real::from_int(t2))
    }
}

fn heart_piece(sigma: &StabilityCondition, e: &DObject) -> Result<DObject> {
    Ok(e.shift(-sigma.phase(e)?.shift()))
}

fn probes(sigma: &StabilityCondition, corpus: &[DObject]) -> Vec<DObject> {
    let mut out: Vec<DObject> = sigma
        .heart()
        .catalog()
        .iter()
        .map(|x| DObject::indec(sigma.n(), *x))
        .collect();
    out.extend(corpus.iter().filter(|e| !e.is_zero()).cloned());
    out
}

/// Classes of semistable objects over which truncation ratios are bounded
/// separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioClass {
    /// Phase at most `arg(−β + iω)/π`.
    LowPhase,
    /// Phase above `arg(−β + iω)/π`, torsion for the slope pair.
    HighPhaseTorsion,
    /// Phase above `arg(−β + iω)/π`, shift of a free object.
    HighPhaseShiftedFree,
    /// Every object of phase above `arg(−β + iω)/π`.
    HighPhase,
}

impl RatioClass {
    /// Name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            RatioClass::LowPhase => "low_phase",
            RatioClass::HighPhaseTorsion => "high_phase_torsion",
            RatioClass::HighPhaseShiftedFree => "high_phase_shifted_free",
            RatioClass::HighPhase => "high_phase",
        }
    }
}

/// Largest truncation ratio within one class.
#[derive(Clone, Debug)]
pub struct ClassMax {
    /// The class.
    pub class: RatioClass,
    /// Largest ratio, absent when the class is empty.
    pub value: Option<Real>,
    /// Number of semistable objects in the class.
    pub count: usize,
}

/// Supremum of `|Z̃(τ₂ᴿE)| / |Z̃(E)|` over semistable objects.
#[derive(Clone, Debug)]
pub struct SupRatioReport {
    /// Largest ratio.
    pub value: Estimate,
    /// Per-class maxima.
    pub classes: Vec<ClassMax>,
    /// Semistable objects evaluated.
    pub semistable_checked: usize,
    /// The object attaining the largest ratio.
    pub witness: Option<DObject>,
}

/// Largest truncation ratio over the semistable indecomposables of the heart
/// and the semistable objects of the corpus. Every semistable object is a
/// sum of semistable indecomposables of one phase, on which the ratio is
/// at most the largest ratio of a summand, so the value is exact.
pub fn sup_ratio_estimate(
    ctx: &GluingContext,
    sample: &FamilySample,
    corpus: &[DObject],
) -> Result<SupRatioReport> {
    let charge = sample.sigma.charge();
    let direction = sample.torsion_direction();
    let mut classes: BTreeMap<RatioClass, (Option<Real>, usize)> = BTreeMap::new();
    let mut best: Option<(Real, DObject)> = None;
    let mut checked = 0;
    for e in probes(&sample.sigma, corpus) {
        if !sample.sigma.is_semistable(&e)? {
            continue;
        }
        let a = heart_piece(&sample.sigma, &e)?;
        let total = charge.eval_object(&a);
        let ratio = sample
            .second_truncation_charge(ctx, &a)
            .norm_sq()
            .checked_div(&total.norm_sq())?
            .sqrt()?;
        checked += 1;
        let mut tags = Vec::new();
        if cmp_principal_arg(&total, &direction)? != Ordering::Greater {
            tags.push(RatioClass::LowPhase);
        } else {
            tags.push(RatioClass::HighPhase);
            if let Some(tag) = &sample.tag {
                let glued = tag.glued().heart();
                if glued.contains(&a)? && tag.tilt_membership(&a)? == TiltMembership::Torsion {
                    tags.push(RatioClass::HighPhaseTorsion);
                } else if glued.contains(&a.shift(-1))?
                    && tag.tilt_membership(&a.shift(-1))? == TiltMembership::Free
                {
                    tags.push(RatioClass::HighPhaseShiftedFree);
                }
            }
        }
        for class in tags {
            let entry = classes.entry(class).or_insert((None, 0));
            entry.0 = Some(match entry.0.take() {
                Some(v) => real_max(v, ratio.clone()),
                None => ratio.clone(),
            });
            entry.1 += 1;
        }
        let replace = match &best {
            Some((v, _)) => ratio.cmp_real(v) == Ok(Ordering::Greater),
            None => true,
        };
        if replace {
            best = Some((ratio, a));
        }
    }
    let all = [
        RatioClass::LowPhase,
        RatioClass::HighPhaseTorsion,
        RatioClass::HighPhaseShiftedFree,
        RatioClass::HighPhase,
    ];
    let classes: Vec<ClassMax> = all
        .into_iter()
        .map(|class| {
            let (value, count) = classes.get(&class).cloned().unwrap_or((None, 0));
            ClassMax {
                class,
                value,
                count,
            }
        })
        .collect();
    let mut value = Real::zero();
    for c in &classes {
        if let Some(v) = &c.value {
            value = real_max(value, v.clone());
        }
    }
    Ok(SupRatioReport {
        value: Estimate { value, exact: true },
        classes,
        semistable_checked: checked,
        witness: best.map(|(_, e)| e),
    })
}

/// Outcome of the phase-window test for the slope torsion pair.
#[derive(Clone, Debug, Default)]
pub struct TorsionWindowReport {
    /// Semistable objects of phase at most `arg(−β + iω)/π` tested for torsion.
    pub low_phase_checked: usize,
    /// Shifted free objects whose charge argument was compared with `arg(−β + iω)`.
    pub shifted_free_checked: usize,
    /// Failing objects with the violated statement.
    pub failures: Vec<String>,
}

impl TorsionWindowReport {
    /// True when no object failed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that semistable objects of small phase are torsion and that
/// shifted free objects have charge argument above `arg(−β + iω)`.
pub fn torsion_window_check(
    sample: &FamilySample,
    corpus: &[DObject],
) -> Result<TorsionWindowReport> {
    let mut out = TorsionWindowReport::default();
    let Some(tag) = &sample.tag else {
        return Ok(out);
    };
    let direction = sample.torsion_direction();
    let charge = sample.sigma.charge();
    let glued = tag.glued().heart();
    let mut seen = BTreeSet::new();
    for e in probes(&sample.sigma, corpus) {
        if sample.sigma.is_semistable(&e)? {
            let a = heart_piece(&sample.sigma, &e)?;
            if cmp_principal_arg(&charge.eval_object(&a), &direction)? != Ordering::Greater {
                out.low_phase_checked += 1;
                if !(glued.contains(&a)? && tag.tilt_membership(&a)? == TiltMembership::Torsion) {
                    out.failures
                        .push(format!("low phase object {a} is not torsion"));
                }
            }
        }
        if !sample.sigma.heart().contains(&e)? || !seen.insert(e.to_string()) {
            continue;
        }
        let f = e.shift(-1);
        if glued.contains(&f)? && tag.tilt_membership(&f)? == TiltMembership::Free {
            out.shifted_free_checked += 1;
            if cmp_principal_arg(&charge.eval_object(&e), &direction)? != Ordering::Greater {
                out.failures.push(format!(
                    "shifted free object {e} has argument at most arg(-beta+i omega)"
                ));
            }
        }
    }
    Ok(out)
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() || eps >= &rat(1, 8) {
        return Err(Error::Domain(format!(
            "eps = {} must lie in (0, 1/8)",
            format_rational(eps)
        )));
    }
    Ok(())
}

/// Outcome of a continuity test between two members of the family.
#[derive(Clone, Debug)]
pub struct ContinuityReport {
    /// Deformation-ball data, measured around the first member.
    pub ball: BallReport,
    /// Pairs of heart indecomposables whose shifted morphism spaces were tested.
    pub hom_checked: usize,
    /// Pairs with a nonzero morphism space.
    pub hom_failures: Vec<String>,
}

impl ContinuityReport {
    /// True when the second member is in the ball and the vanishing held.
    pub fn passed(&self) -> bool {
        self.ball.inside && self.hom_failures.is_empty()
    }
}

/// Deformation-ball test between two built samples.
pub fn continuity_between(
    first: &FamilySample,
    second: &FamilySample,
    eps: &Rational,
    corpus: &[DObject],
) -> Result<ContinuityReport> {
    check_eps(eps)?;
    let ball = ball_membership(&first.sigma, &second.sigma, eps, corpus)?;
    let n = first.sigma.n();
    let mut hom_checked = 0;
    let mut hom_failures = Vec::new();
    for x in first.sigma.heart().catalog() {
        for y in second.sigma.heart().catalog() {
            hom_checked += 1;
            let target = DObject::indec(n, *y);
            for p in 2..=HOM_SHIFT_RANGE {
                if hom_dim(&DObject::indec(n, x.shifted(p)), &target) != 0 {
                    hom_failures.push(format!(
                        "Hom({}, {}) is nonzero",
                        DObject::indec(n, x.shifted(p)),
                        target
                    ));
                }
            }
        }
    }
    Ok(ContinuityReport {
        ball,
        hom_checked,
        hom_failures,
    })
}

/// Builds the members at two admissible points and tests whether the second
/// lies in the `eps`-ball of the first.
pub fn continuity_check(
    ctx: &GluingContext,
    p1: &PlanePoint,
    p2: &PlanePoint,
    eps: &Rational,
    opts: &FamilyOptions,
) -> Result<ContinuityReport> {
    check_eps(eps)?;
    let first = FamilySample::new(ctx, p1, opts)?;
    let second = FamilySample::new(ctx, p2, opts)?;
    continuity_between(&first, &second, eps, &opts.corpus)
}

/// Outcome of the comparison with the glued condition near `(1, 0)`.
#[derive(Clone, Debug)]
pub struct SpecializationReport {
    /// `|β − 1 + iω|`.
    pub offset: Real,
    /// `arg(β + iω)/π`.
    pub theta: Real,
    /// Deformation-ball data around the glued condition.
    pub ball: BallReport,
    /// Heart indecomposables whose glued phases were bounded.
    pub heart_checked: usize,
    /// Shifted free objects whose glued phases were bounded by `1 + θ`.
    pub shifted_free_checked: usize,
    /// Objects outside the expected phase windows.
    pub heart_failures: Vec<String>,
}

impl SpecializationReport {
    /// True when the member is in the ball and the phase windows held.
    pub fn passed(&self) -> bool {
        self.ball.inside && self.heart_failures.is_empty()
    }
}

/// Tests that the member at `p` lies in the `eps`-ball of the glued
/// condition, together with the phase windows of its heart.
pub fn specialization_check(
    ctx: &GluingContext,
    p: &PlanePoint,
    eps: &Rational,
    opts: &FamilyOptions,
) -> Result<SpecializationReport> {
    check_eps(eps)?;
    let offset = p.offset_from_boundary_point().abs()?;
    let bound = Angle::from_pi_multiple(eps.clone()).sin()?;
    if offset.cmp_real(&bound)? != Ordering::Less {
        return Err(Error::Refused(format!(
            "|beta - 1 + i omega| = {} is not below sin(pi eps) = {}",
            offset.to_f64(),
            bound.to_f64()
        )));
    }
    if p.beta().sign()? != Ordering::Greater {
        return Err(Error::Refused(format!(
            "{p} has arg(beta + i omega) >= pi/2"
        )));
    }
    let theta =
        crate::geometry::arg_principal(&ExactComplex::new(p.beta().clone(), p.omega().clone()))?
            .in_units_of_pi();
    let top = &Real::from_int(2) - &Real::from_rational(eps.clone());
    if (&(&Real::one() + &theta) - &top).sign()? != Ordering::Less {
        return Err(Error::Refused(format!(
            "1 + theta is not below 2 - eps at {p}"
        )));
    }
    let sample = FamilySample::new(ctx, p, opts)?;
    let tag = sample
        .tag
        .as_ref()
        .ok_or_else(|| Error::Domain("the boundary point is its own specialization".into()))?;
    let glued = tag.glued();
    let ball = ball_membership(glued, &sample.sigma, eps, &opts.corpus)?;
    let mut heart_checked = 0;
    let mut shifted_free_checked = 0;
    let mut heart_failures = Vec::new();
    let one_theta = &Real::one() + &theta;
    for x in sample.sigma.heart().catalog() {
        let e = DObject::indec(2, *x);
        let (high, low) = glued.phase_bounds(&e)?;
        heart_checked += 1;
        if low.sign()? != Ordering::Greater || high.cmp_real(&top)? == Ordering::Greater {
            heart_failures.push(format!("{e} has glued phases outside (0, 2 - eps]"));
        }
        let f = e.shift(-1);
        if glued.heart().contains(&f)? && tag.tilt_membership(&f)? == TiltMembership::Free {
            shifted_free_checked += 1;
            if low.cmp_real(&Real::one())? != Ordering::Greater
                || high.cmp_real(&one_theta)? == Ordering::Greater
            {
                heart_failures.push(format!("{e} has glued phases outside (1, 1 + theta]"));
            }
        }
    }
    Ok(SpecializationReport {
        offset,
        theta,
        ball,
        heart_checked,
        shifted_free_checked,
        heart_failures,
    })
}

/// A sample point `(cos(2πt/3), sin(2πt/3))` of the path.
#[derive(Clone, Debug)]
pub struct PathPoint {
    /// Parameter in `[0, 1]`.
    pub t: Rational,
    /// The point.
    pub point: PlanePoint,
}

impl fmt::Display for PathPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} {}", format_rational(&self.t), self.point)
    }
}

/// The path point at `t`: exact over Q(√3) when `4t` is an integer, an
/// enclosure otherwise.
pub fn path_point(t: &Rational) -> Result<PathPoint> {
    if t.is_negative() || t > &int(1) {
        return Err(Error::Domain(format!(
            "path parameter {} is outside [0, 1]",
            format_rational(t)
        )));
    }
    let quarter = t * int(4);
    let point = if quarter.is_integer() {
        let k: i64 = quarter.to_integer().try_into().expect("small");
        let u = ExactComplex::unit_root_twelfth(k);
        PlanePoint::new(u.re().clone(), u.im().clone())?
    } else {
        let angle = Interval::pi().mul(&Interval::point(t * rat(2, 3)));
        PlanePoint::new(Real::Approx(angle.cos()?), Real::Approx(angle.sin()?))?
    };
    Ok(PathPoint {
        t: t.clone(),
        point,
    })
}

/// The points at `t = k/n`, `k = 0..=n`; every point with `t > 0` is checked
/// to lie in the admissible region.
pub fn path_points(n: usize, region: &RegionParams) -> Result<Vec<PathPoint>> {
    if n < 2 {
        return Err(Error::Domain("a path needs at least two steps".into()));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let p = path_point(&Rational::new((k as i64).into(), (n as i64).into()))?;
        if k > 0 && !region_membership(&p.point, region)?.in_both() {
            return Err(Error::Validation(format!(
                "path point {p} is outside the admissible region"
            )));
        }
        out.push(p);
    }
    Ok(out)
}

/// Result of comparing the tilted charges of the two decompositions at the
/// end of the path.
#[derive(Clone, Debug)]
pub struct RotationReport {
    /// True when every basis vector matched exactly.
    pub holds: bool,
    /// First mismatching basis vector with both values.
    pub mismatch: Option<(usize, ExactComplex, ExactComplex)>,
}

/// `e^{2πi/3}`.
pub fn endpoint_rotation() -> ExactComplex {
    ExactComplex::unit_root_twelfth(4)
}

/// Checks that the tilted charge of the first decomposition at the end of
/// the path is `e^{2πi/3}` times that of the second.
pub fn endpoint_rotation_check(
    first: &GluingContext,
    second: &GluingContext,
) -> Result<RotationReport> {
    endpoint_rotation_check_with(first, second, &endpoint_rotation())
}

/// As [`endpoint_rotation_check`] with an arbitrary rotation factor.
pub fn endpoint_rotation_check_with(
    first: &GluingContext,
    second: &GluingContext,
    rotation: &ExactComplex,
) -> Result<RotationReport> {
    if first.side() != SodSide::Sod0 || second.side() != SodSide::Sod1 {
        return Err(Error::Domain(
            "expected contexts of the first and second decompositions".into(),
        ));
    }
    if !first
        .first()
        .charge()
        .eq_certified(second.second().charge())?
    {
        return Err(Error::Domain(
            "the two contexts are built from different stability conditions".into(),
        ));
    }
    let end = path_point(&int(1))?.point;
    let left = tilted_charge(first, &end).row();
    let right = tilted_charge(second, &end).scale(rotation).row();
    for (i, (a, b)) in left.iter().zip(&right).enumerate() {
        if !a.eq_exact(b) {
            return Ok(RotationReport {
                holds: false,
                mismatch: Some((i, a.clone(), b.clone())),
            });
        }
    }
    Ok(RotationReport {
        holds: true,
        mismatch: None,
    })
}

/// Rotation by an angle that is a multiple of `π/6`.
pub fn rotate_action(sigma: &StabilityCondition, theta: &Angle) -> Result<StabilityCondition> {
    let q = theta
        .pi_multiple()
        .filter(|q| (*q * int(6)).is_integer())
        .ok_or_else(|| {
            Error::Refused(format!("rotation angle {theta} is not a multiple of pi/6"))
        })?;
    sigma.rotate(q)
}

/// Window positions of tilted-heart objects of the first decomposition
/// relative to the tilted heart of the second, and the vanishing of
/// morphisms between their torsion and free classes.
#[derive(Clone, Debug, Default)]
pub struct HeartWindowReport {
    /// Torsion objects placed in the window `[−1, 0]`.
    pub torsion_checked: usize,
    /// Free objects placed in the window `[−2, −1]`.
    pub free_checked: usize,
    /// Heart objects placed in the window `[−1, 0]`.
    pub heart_checked: usize,
    /// Torsion–free pairs tested for vanishing in negative degrees.
    pub torsion_free_pairs: usize,
    /// Torsion–free pairs tested for vanishing in nonpositive degrees.
    pub free_torsion_pairs: usize,
    /// Failures with the offending objects.
    pub failures: Vec<String>,
}

impl HeartWindowReport {
    /// True when nothing failed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Number of evaluated statements.
    pub fn total_checked(&self) -> usize {
        self.torsion_checked
            + self.free_checked
            + self.heart_checked
            + self.torsion_free_pairs
            + self.free_torsion_pairs
    }
}

fn torsion_free_pieces(tag: &TiltTag, objects: &[DObject]) -> Result<(Vec<DObject>, Vec<DObject>)> {
    let mut torsion = BTreeMap::new();
    let mut free = BTreeMap::new();
    let glued = tag.glued().heart();
    let mut candidates: Vec<DObject> = glued
        .catalog()
        .iter()
        .map(|x| DObject::indec(2, *x))
        .collect();
    candidates.extend(objects.iter().cloned());
    for e in candidates {
        if e.is_zero() || !glued.contains(&e)? {
            continue;
        }
        let (t, f) = match tag.tilt_membership(&e)? {
            TiltMembership::Torsion => (e, DObject::zero(2)),
            TiltMembership::Free => (DObject::zero(2), e),
            TiltMembership::Mixed { torsion, free } => (torsion, free),
        };
        for x in t.summands() {
            torsion.insert(x, DObject::indec(2, x));
        }
        for x in f.summands() {
            free.insert(x, DObject::indec(2, x));
        }
    }
    Ok((
        torsion.into_values().collect(),
        free.into_values().collect(),
    ))
}

/// `H^i` nonzero only for `i ∈ [lo, hi]`.
fn degrees_within(heart: &Heart, e: &DObject, lo: i64, hi: i64) -> Result<Option<Vec<i64>>> {
    let degrees: Vec<i64> = heart
        .cohomology(e)?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, _)| d)
        .collect();
    Ok(if degrees.iter().all(|d| (lo..=hi).contains(d)) {
        None
    } else {
        Some(degrees)
    })
}

/// Window and vanishing checks between the tilted hearts of the two
/// decompositions at the admissible point `p`.
pub fn heart_window_check(
    first: &GluingContext,
    second: &GluingContext,
    p: &PlanePoint,
    objects: &[DObject],
    region: &RegionParams,
) -> Result<HeartWindowReport> {
    require_admissible(p, region)?;
    let tag0 = TiltTag::new(first, p)?;
    let tag1 = TiltTag::new(second, p)?;
    let heart0 = Heart::build(tilted_heart_kind(first, p), 2)?;
    let heart1 = Heart::build(tilted_heart_kind(second, p), 2)?;
    let (torsion0, free0) = torsion_free_pieces(&tag0, objects)?;
    let (torsion1, free1) = torsion_free_pieces(&tag1, objects)?;
    let mut out = HeartWindowReport::default();
    for t in &torsion0 {
        out.torsion_checked += 1;
        if let Some(d) = degrees_within(&heart1, t, 0, 1)? {
            out.failures.push(format!(
                "torsion object {t} has cohomology in degrees {d:?}"
            ));
        }
    }
    for f in &free0 {
        out.free_checked += 1;
        if let Some(d) = degrees_within(&heart1, f, 1, 2)? {
            out.failures
                .push(format!("free object {f} has cohomology in degrees {d:?}"));
        }
    }
    let mut members: Vec<DObject> = heart0
        .catalog()
        .iter()
        .map(|x| DObject::indec(2, *x))
        .collect();
    for e in objects {
        if !e.is_zero() && heart0.contains(e)? {
            members.push(e.clone());
        }
    }
    for e in &members {
        out.heart_checked += 1;
        if let Some(d) = degrees_within(&heart1, e, 0, 1)? {
            out.failures
                .push(format!("heart object {e} has cohomology in degrees {d:?}"));
        }
    }
    for f in &torsion0 {
        for g in &free1 {
            out.torsion_free_pairs += 1;
            for k in -HOM_SHIFT_RANGE..=-1 {
                if hom_dim(f, &g.shift(k)) != 0 {
                    out.failures
                        .push(format!("Hom({f}, {}) is nonzero", g.shift(k)));
                }
            }
        }
    }
    for f in &free0 {
        for g in &torsion1 {
            out.free_torsion_pairs += 1;
            for k in -HOM_SHIFT_RANGE..=0 {
                if hom_dim(g, &f.shift(k)) != 0 {
                    out.failures
                        .push(format!("Hom({g}, {}) is nonzero", f.shift(k)));
                }
            }
        }
    }
    Ok(out)
}

/// Tilt classification at a point compared with nearby rational points.
#[derive(Clone, Debug)]
pub struct ApproximantReport {
    /// The rational points used.
    pub approximants: Vec<PlanePoint>,
    /// Glued-heart objects whose classification was compared.
    pub classified: usize,
    /// Tilted-heart objects checked to be two-term for the glued heart.
    pub two_term_checked: usize,
    /// Objects whose classification or heart membership changed.
    pub changes: Vec<String>,
}

impl ApproximantReport {
    /// True when nothing changed.
    pub fn passed(&self) -> bool {
        self.changes.is_empty()
    }
}

fn classification(tag: &TiltTag, objects: &[DObject]) -> Result<Vec<(String, &'static str)>> {
    let mut out = Vec::new();
    for e in objects {
        let label = match tag.tilt_membership(e)? {
            TiltMembership::Torsion => "torsion",
            TiltMembership::Free => "free",
            TiltMembership::Mixed { .. } => "mixed",
        };
        out.push((e.to_string(), label));
    }
    Ok(out)
}

fn catalog_names(heart: &Heart) -> BTreeSet<Indec> {
    heart.catalog().iter().copied().collect()
}

/// Compares the tilt classification of glued-heart objects at `p` with the
/// classification at rational points whose coordinates differ from the
/// midpoint of `p` by at most `radius`.
pub fn approximant_check(
    ctx: &GluingContext,
    p: &PlanePoint,
    radius: &Rational,
    objects: &[DObject],
) -> Result<ApproximantReport> {
    if !radius.is_positive() {
        return Err(Error::Domain(
            "approximation radius must be positive".into(),
        ));
    }
    let tag = TiltTag::new(ctx, p)?;
    let glued = tag.glued().heart().clone();
    let mut members: Vec<DObject> = glued
        .catalog()
        .iter()
        .map(|x| DObject::indec(2, *x))
        .collect();
    for e in objects {
        if !e.is_zero() && glued.contains(e)? {
            members.push(e.clone());
        }
    }
    let reference = classification(&tag, &members)?;
    let reference_heart = Heart::build(tilted_heart_kind(ctx, p), 2)?;
    let reference_catalog = catalog_names(&reference_heart);
    let (b, w) = (
        p.beta().to_interval().midpoint(),
        p.omega().to_interval().midpoint(),
    );
    let h = radius / int(2);
    let offsets = [
        (int(0), int(0)),
        (h.clone(), int(0)),
        (-h.clone(), int(0)),
        (int(0), h.clone()),
        (int(0), -h.clone()),
    ];
    let mut out = ApproximantReport {
        approximants: Vec::new(),
        classified: 0,
        two_term_checked: 0,
        changes: Vec::new(),
    };
    for (db, dw) in offsets {
        let q = PlanePoint::rational(&b + &db, &w + &dw)?;
        let (qb, qw) = (q.beta().to_interval(), q.omega().to_interval());
        let (pb, pw) = (p.beta().to_interval(), p.omega().to_interval());
        let far =
            |x: &Interval, y: &Interval| x.sub(y).lo().abs().max(x.sub(y).hi().abs()) > *radius;
        if far(&qb, &pb) || far(&qw, &pw) {
            return Err(Error::Domain(format!(
                "{p} is not known to within the approximation radius"
            )));
        }
        let qtag = TiltTag::new(ctx, &q)?;
        for ((name, expected), (_, got)) in reference.iter().zip(classification(&qtag, &members)?) {
            out.classified += 1;
            if *expected != got {
                out.changes
                    .push(format!("{name} is {expected} at {p} but {got} at {q}"));
            }
        }
        let heart = Heart::build(tilted_heart_kind(ctx, &q), 2)?;
        if catalog_names(&heart) != reference_catalog {
            out.changes
                .push(format!("tilted heart at {q} differs from the heart at {p}"));
        }
        for x in heart.catalog() {
            out.two_term_checked += 1;
            let e = DObject::indec(2, *x);
            if let Some(d) = degrees_within(&glued, &e, -1, 0)? {
                out.changes
                    .push(format!("{e} has glued cohomology in degrees {d:?}"));
            }
        }
        out.approximants.push(q);
    }
    Ok(out)
}

/// One adjacent pair of the path.
#[derive(Clone, Debug)]
pub struct ChainLink {
    /// Parameter of the first point.
    pub from: Rational,
    /// Parameter of the second point.
    pub to: Rational,
    /// Continuity data.
    pub report: ContinuityReport,
}

/// The chain of members along the path for one decomposition.
#[derive(Clone, Debug)]
pub struct SideChain {
    /// Decomposition.
    pub side: SodSide,
    /// Bridge from the glued condition to the first member.
    pub specialization: SpecializationReport,
    /// Continuity along adjacent pairs.
    pub links: Vec<ChainLink>,
    /// Every member carries the support flag.
    pub support: bool,
}

impl SideChain {
    /// True when the bridge, every link and every support flag held.
    pub fn passed(&self) -> bool {
        self.specialization.passed() && self.support && self.links.iter().all(|l| l.report.passed())
    }
}

/// Certificate of a corpus-level path between the glued conditions of the
/// two decompositions.
#[derive(Clone, Debug)]
pub struct PathReport {
    /// Number of steps.
    pub steps: usize,
    /// Radius of the deformation balls.
    pub eps: Rational,
    /// Chains for the first and second decomposition.
    pub chains: Vec<SideChain>,
    /// Exact identity of the tilted charges at the end of the path.
    pub rotation: RotationReport,
    /// The rotated member of the second chain has the charge of the first chain's last member.
    pub rotated_charge_matches: bool,
    /// The rotated member has the same heart as the first chain's last member.
    pub rotated_heart_matches: bool,
}

impl PathReport {
    /// True when every part of the certificate held.
    pub fn passed(&self) -> bool {
        self.rotation.holds
            && self.rotated_charge_matches
            && self.rotated_heart_matches
            && self.chains.iter().all(SideChain::passed)
    }
}

fn build_chain(
    ctx: &GluingContext,
    points: &[PathPoint],
    eps: &Rational,
    opts: &FamilyOptions,
    workers: usize,
) -> Result<(SideChain, FamilySample)> {
    let interior = &points[1..];
    let samples = parallel_map(interior, workers, |p| {
        FamilySample::new(ctx, &p.point, opts)
    })?;
    let specialization = specialization_check(ctx, &interior[0].point, eps, opts)?;
    let pairs: Vec<usize> = (0..samples.len() - 1).collect();
    let reports = parallel_map(&pairs, workers, |&i| {
        continuity_between(&samples[i], &samples[i + 1], eps, &opts.corpus)
    })?;
    let links = reports
        .into_iter()
        .enumerate()
        .map(|(i, report)| ChainLink {
            from: interior[i].t.clone(),
            to: interior[i + 1].t.clone(),
            report,
        })
        .collect();
    let support = samples.iter().all(|s| s.flags.full);
    let last = samples.last().expect("nonempty path").clone();
    Ok((
        SideChain {
            side: ctx.side(),
            specialization,
            links,
            support,
        },
        last,
    ))
}

/// Runs the path certificate for the stability condition on `D^b(k)` with
/// charge `z`: a chain of deformation balls along each decomposition's
/// family, bridges to the glued conditions and the rotation at the end.
pub fn path_chain(
    z: &ExactComplex,
    steps: usize,
    eps: &Rational,
    opts: &FamilyOptions,
    workers: usize,
) -> Result<PathReport> {
    check_eps(eps)?;
    let points = path_points(steps, &opts.build.region)?;
    let first = GluingContext::from_point_charge(SodSide::Sod0, z.clone())?;
    let second = GluingContext::from_point_charge(SodSide::Sod1, z.clone())?;
    let (chain0, end0) = build_chain(&first, &points, eps, opts, workers)?;
    let (chain1, end1) = build_chain(&second, &points, eps, opts, workers)?;
    let rotation = endpoint_rotation_check(&first, &second)?;
    let rotated = rotate_action(&end1.sigma, &Angle::from_pi_multiple(rat(2, 3)))?;
    let rotated_charge_matches = rotated.charge().eq_certified(end0.sigma.charge())?;
    let rotated_heart_matches = catalog_names(rotated.heart()) == catalog_names(end0.sigma.heart());
    Ok(PathReport {
        steps,
        eps: eps.clone(),
        chains: vec![chain0, chain1],
        rotation,
        rotated_charge_matches,
        rotated_heart_matches,
    })
}

/// One row of a grid scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    /// β.
    pub beta: Rational,
    /// ω.
    pub omega: Rational,
    /// Membership in the admissible region.
    pub in_region: bool,
    /// Largest truncation ratio, for admissible points.
    pub sup_ratio: Option<Real>,
    /// The member was built and validated and the phase-window test held.
    pub heart_ok: Option<bool>,
    /// Continuity held towards every admissible right and upper neighbour.
    pub ball_ok: Option<bool>,
}

/// A rectangular grid of rational points.
#[derive(Clone, Debug)]
pub struct Grid {
    /// Smallest β.
    pub beta_min: Rational,
    /// Spacing in β.
    pub beta_step: Rational,
    /// Number of β values.
    pub beta_count: usize,
    /// Smallest ω.
    pub omega_min: Rational,
    /// Spacing in ω.
    pub omega_step: Rational,
    /// Number of ω values.
    pub omega_count: usize,
}

impl Grid {
    /// `n × m` points covering `β ∈ [−3/2, 3/2]`, `ω ∈ (0, 3/2]`.
    pub fn default_box(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m < 1 {
            return Err(Error::Domain(
                "grid needs at least two columns and one row".into(),
            ));
        }
        let step_b = rat(3, 1) / Rational::from_integer(((n - 1) as i64).into());
        let step_w = rat(3, 2) / Rational::from_integer((m as i64).into());
        Ok(Self {
            beta_min: rat(-3, 2),
            beta_step: step_b,
            beta_count: n,
            omega_min: step_w.clone(),
            omega_step: step_w,
            omega_count: m,
        })
    }

    /// The point with indices `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> (Rational, Rational) {
        let fi = Rational::from_integer((i as i64).into());
        let fj = Rational::from_integer((j as i64).into());
        (
            &self.beta_min + &self.beta_step * fi,
            &self.omega_min + &self.omega_step * fj,
        )
    }
}

/// Scans a grid: region membership, the truncation ratio and heart checks
/// at admissible points, and continuity towards admissible neighbours.
pub fn scan_grid(
    ctx: &GluingContext,
    grid: &Grid,
    eps: &Rational,
    opts: &FamilyOptions,
    workers: usize,
) -> Result<Vec<ScanRow>> {
    check_eps(eps)?;
    let indices: Vec<(usize, usize)> = (0..grid.omega_count)
        .flat_map(|j| (0..grid.beta_count).map(move |i| (i, j)))
        .collect();
    let samples = parallel_map(
        &indices,
        workers,
        |&(i, j)| -> Result<Option<Arc<FamilySample>>> {
            let (b, w) = grid.point(i, j);
            let p = PlanePoint::rational(b, w)?;
            if !region_membership(&p, &opts.build.region)?.in_both() {
                return Ok(None);
            }
            Ok(Some(Arc::new(FamilySample::new(ctx, &p, opts)?)))
        },
    )?;
    let at = |i: usize, j: usize| samples[j * grid.beta_count + i].clone();
    parallel_map(&indices, workers, |&(i, j)| {
        let (beta, omega) = grid.point(i, j);
        let Some(sample) = at(i, j) else {
            return Ok(ScanRow {
                beta,
                omega,
                in_region: false,
                sup_ratio: None,
                heart_ok: None,
                ball_ok: None,
            });
        };
        let sup = sup_ratio_estimate(ctx, &sample, &opts.corpus)?;
        let heart_ok = torsion_window_check(&sample, &opts.corpus)?.passed();
        let mut ball_ok = true;
        let neighbours = [
            (i + 1 < grid.beta_count).then(|| at(i + 1, j)),
            (j + 1 < grid.omega_count).then(|| at(i, j + 1)),
        ];
        for other in neighbours.into_iter().flatten().flatten() {
            ball_ok &= continuity_between(&sample, &other, eps, &opts.corpus)?.passed();
        }
        Ok(ScanRow {
            beta,
            omega,
            in_region: true,
            sup_ratio: Some(sup.value.value),
            heart_ok: Some(heart_ok),
            ball_ok: Some(ball_ok),
        })
    })
}

/// Applies `f` to every item using up to `workers` threads; results keep the
/// input order and the first error is returned.
pub fn parallel_map<T, U, F>(items: &[T], workers: usize, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let parts: Vec<Result<Vec<U>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Result<Vec<U>>>())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::point;
    use crate::morphism::{identity_arrow, include_first, target_only, to_a2};
    use crate::scalar::QSqrt3;

    fn ctx(side: SodSide) -> GluingContext {
        GluingContext::from_point_charge(side, ExactComplex::i()).unwrap()
    }

    fn small_opts() -> FamilyOptions {
        FamilyOptions {
            corpus: corpus(2, 2, -1..=1),
            ..FamilyOptions::default()
        }
    }

    fn q(b: Rational, w: Rational) -> PlanePoint {
        PlanePoint::rational(b, w).unwrap()
    }

    #[test]
    fn path_points_endpoints() {
        let r = BuildOptions::default().region;
        let pts = path_points(4, &r).unwrap();
        assert_eq!(pts[0].point.beta().as_rational(), Some(&int(1)));
        assert!(pts[0].point.omega().is_exact_zero());
        let end = &pts[4].point;
        assert_eq!(end.beta().as_rational(), Some(&rat(-1, 2)));
        assert_eq!(
            end.omega().as_exact(),
            Some(&QSqrt3::new(int(0), rat(1, 2)))
        );
        let mid = &pts[2].point;
        assert_eq!(mid.beta().as_rational(), Some(&rat(1, 2)));
        assert_eq!(
            mid.omega().as_exact(),
            Some(&QSqrt3::new(int(0), rat(1, 2)))
        );
        let odd = path_point(&rat(1, 3)).unwrap().point;
        assert!(!odd.is_exact());
        assert!((odd.beta().to_f64() - (2.0 * std::f64::consts::PI / 9.0).cos()).abs() < 1e-15);
        assert!(path_points(1, &r).is_err());
    }

    #[test]
    fn admissibility_names_the_failing_inequality() {
        let r = BuildOptions::default().region;
        let err = require_admissible(&q(int(-2), rat(1, 10)), &r)
            .unwrap_err()
            .to_string();
        assert!(err.contains("2*beta + 1 - 2*eps2"), "{err}");
        assert!(require_admissible(&q(rat(1, 2), rat(1, 2)), &r).is_ok());
    }

    #[test]
    fn ratio_at_the_boundary_point_is_at_most_one() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let opts = small_opts();
            let sample = FamilySample::new(&c, &boundary_point(), &opts).unwrap();
            assert!(sample.is_specialization());
            let report = sup_ratio_estimate(&c, &sample, &opts.corpus).unwrap();
            assert!(report.semistable_checked > 0);
            assert_ne!(
                report.value.value.cmp_real(&Real::one()).unwrap(),
                Ordering::Greater
            );
        }
    }

    #[test]
    fn first_factor_objects_have_zero_ratio() {
        let c = ctx(SodSide::Sod0);
        let sample = FamilySample::new(&c, &q(rat(1, 2), rat(1, 2)), &small_opts()).unwrap();
        let e = to_a2(&identity_arrow(&point(0))).unwrap();
        assert!(sample.second_truncation_charge(&c, &e).is_exact_zero());
    }

    #[test]
    fn ratio_is_stable_under_corpus_growth() {
        let c = ctx(SodSide::Sod0);
        let sample = FamilySample::new(&c, &q(rat(1, 2), rat(1, 2)), &small_opts()).unwrap();
        let small = sup_ratio_estimate(&c, &sample, &corpus(2, 4, -2..=2)).unwrap();
        let large = sup_ratio_estimate(&c, &sample, &corpus(2, 6, -2..=2)).unwrap();
        assert_eq!(
            small.value.value.cmp_real(&large.value.value).unwrap(),
            Ordering::Equal
        );
        assert!(small.classes.iter().map(|k| k.count).sum::<usize>() > 0);
    }

    #[test]
    fn torsion_window_holds() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let sample = FamilySample::new(&c, &q(rat(1, 2), rat(1, 2)), &small_opts()).unwrap();
            let report = torsion_window_check(&sample, &corpus(2, 4, -2..=2)).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
            assert!(report.low_phase_checked + report.shifted_free_checked > 0);
        }
        let c = ctx(SodSide::Sod0);
        let sample = FamilySample::new(&c, &q(rat(1, 2), rat(1, 2)), &small_opts()).unwrap();
        let e = to_a2(&include_first(&point(0), SodSide::Sod0)).unwrap();
        assert_eq!(
            sample.tag.as_ref().unwrap().tilt_membership(&e).unwrap(),
            TiltMembership::Torsion
        );
    }

    #[test]
    fn continuity_examples() {
        let c = ctx(SodSide::Sod0);
        let opts = small_opts();
        let p = q(rat(1, 2), rat(1, 2));
        assert!(continuity_check(&c, &p, &p, &rat(1, 16), &opts)
            .unwrap()
            .passed());
        let near = q(rat(1, 2) + rat(1, 64), rat(1, 2));
        assert!(continuity_check(&c, &p, &near, &rat(1, 16), &opts)
            .unwrap()
            .passed());
        let far = continuity_check(
            &c,
            &q(rat(9, 10), rat(1, 10)),
            &q(rat(-2, 5), rat(9, 10)),
            &rat(1, 16),
            &opts,
        )
        .unwrap();
        assert!(!far.passed());
        assert!(continuity_check(&c, &p, &p, &rat(1, 8), &opts).is_err());
    }

    #[test]
    fn specialization_examples() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let r = specialization_check(&c, &q(int(1), rat(1, 100)), &rat(1, 10), &small_opts())
                .unwrap();
            assert!(r.passed(), "{:?}", r.heart_failures);
            assert!(r.heart_checked > 0);
        }
        let c = ctx(SodSide::Sod0);
        assert!(matches!(
            specialization_check(&c, &q(rat(1, 2), rat(1, 2)), &rat(1, 10), &small_opts()),
            Err(Error::Refused(_))
        ));
        let b = FamilySample::new(&c, &boundary_point(), &small_opts()).unwrap();
        let glued = c.glue_stability().unwrap();
        assert!(b.sigma.charge().eq_certified(glued.charge()).unwrap());
        assert_eq!(catalog_names(b.sigma.heart()), catalog_names(glued.heart()));
    }

    #[test]
    fn endpoint_rotation_identity() {
        for z in [ExactComplex::i(), ExactComplex::from_ints(-1, 1)] {
            let c0 = GluingContext::from_point_charge(SodSide::Sod0, z.clone()).unwrap();
            let c1 = GluingContext::from_point_charge(SodSide::Sod1, z).unwrap();
            assert!(endpoint_rotation_check(&c0, &c1).unwrap().holds);
            let wrong = endpoint_rotation_check_with(&c0, &c1, &ExactComplex::unit_root_twelfth(2))
                .unwrap();
            assert!(!wrong.holds);
            assert!(wrong.mismatch.is_some());
        }
        let end = path_point(&int(1)).unwrap().point;
        let row0 = tilted_charge(&ctx(SodSide::Sod0), &end).row();
        assert!(row0[0].eq_exact(&ExactComplex::unit_root_twelfth(5)));
        assert!(row0[1].eq_exact(&ExactComplex::unit_root_twelfth(1)));
        assert!(endpoint_rotation_check(&ctx(SodSide::Sod1), &ctx(SodSide::Sod0)).is_err());
    }

    #[test]
    fn rotation_relabels_phases() {
        let c = ctx(SodSide::Sod1);
        let sample = FamilySample::new(&c, &q(rat(1, 2), rat(1, 2)), &small_opts()).unwrap();
        let rotated = rotate_action(&sample.sigma, &Angle::from_pi_multiple(rat(2, 3))).unwrap();
        for x in sample.sigma.semistable_catalog().unwrap() {
            let e = DObject::indec(2, x);
            assert!(rotated.is_semistable(&e).unwrap());
            let before = sample
                .sigma
                .phase_value(&sample.sigma.phase(&e).unwrap())
                .unwrap();
            let after = rotated.phase_value(&rotated.phase(&e).unwrap()).unwrap();
            let gap = &(&after - &before) - &Real::from_rational(rat(2, 3));
            assert!(gap.to_interval().contains_zero());
        }
        let same = rotate_action(&sample.sigma, &Angle::from_pi_multiple(int(0))).unwrap();
        assert_eq!(
            catalog_names(same.heart()),
            catalog_names(sample.sigma.heart())
        );
        assert!(rotate_action(&sample.sigma, &Angle::from_pi_multiple(rat(1, 5))).is_err());
    }

    #[test]
    fn heart_windows_between_decompositions() {
        let r = BuildOptions::default().region;
        let objects = corpus(2, 3, -2..=2);
        for p in [
            q(rat(1, 2), rat(1, 2)),
            path_point(&int(1)).unwrap().point,
            q(int(0), int(1)),
        ] {
            let report =
                heart_window_check(&ctx(SodSide::Sod0), &ctx(SodSide::Sod1), &p, &objects, &r)
                    .unwrap();
            assert!(report.passed(), "{p}: {:?}", report.failures);
            assert!(report.torsion_checked > 0 && report.heart_checked > 0);
        }
        let e = to_a2(&target_only(&point(0))).unwrap();
        assert!(!e.is_zero());
    }

    #[test]
    fn classification_is_stable_near_an_irrational_point() {
        let c = ctx(SodSide::Sod0);
        let p = path_point(&rat(1, 3)).unwrap().point;
        let report = approximant_check(&c, &p, &rat(1, 1_000_000), &corpus(2, 3, -1..=1)).unwrap();
        assert!(report.passed(), "{:?}", report.changes);
        assert_eq!(report.approximants.len(), 5);
        assert!(report.classified > 0 && report.two_term_checked > 0);
    }

    #[test]
    fn short_path_certificate() {
        let report = path_chain(&ExactComplex::i(), 16, &rat(1, 16), &small_opts(), 1).unwrap();
        assert!(report.rotation.holds && report.rotated_charge_matches);
        for chain in &report.chains {
            assert!(chain.specialization.passed());
            assert!(chain.support);
        }
        assert_eq!(report.chains[0].links.len(), 15);
        assert!(report.passed());
    }
}
