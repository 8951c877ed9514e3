//! Gluing stability conditions on `D^b(k)` along the two decompositions of
//! the morphism category over a point, modelled on `D^b(A_2)`.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::antype::{hom_dim, DObject, Indec, K0Class};
use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::morphism::{
    from_a2, gluing_functor_image, include_first, include_second, mor_hom_dim,
    right_truncation_triangle, source_of, target_of, truncations, MorObject, SodSide, Truncations,
};
use crate::rep::Interval;
use crate::scalar::Real;
use crate::stability::heart::{Heart, HeartKind};
use crate::stability::hn::max_destabilizing;
use crate::stability::{CentralCharge, StabilityCondition};

/// The point object `k` of `D^b(k)` placed in degree `-shift`.
pub fn point(shift: i64) -> DObject {
    DObject::indec(1, Indec::new(Interval { a: 1, b: 1 }, shift))
}

/// Objects of `D^b(k)` used as test inputs: sums of at most `max_dim` shifted points.
pub fn point_corpus(max_dim: usize, shifts: std::ops::RangeInclusive<i64>) -> Vec<DObject> {
    crate::antype::corpus(1, max_dim, shifts)
}

/// The stability condition on `D^b(k)` with module heart and `Z(k) = z`.
pub fn point_stability(z: ExactComplex) -> Result<StabilityCondition> {
    StabilityCondition::standard(CentralCharge::new(vec![z]))
}

/// Two stability conditions on `D^b(k)`, one for each factor of a decomposition.
#[derive(Clone, Debug)]
pub struct GluingContext {
    side: SodSide,
    first: StabilityCondition,
    second: StabilityCondition,
}

/// Outcome of one gluing condition.
#[derive(Clone, Debug)]
pub struct ConditionOutcome {
    /// Short name.
    pub name: &'static str,
    /// Whether the condition held on every test object.
    pub holds: bool,
    /// A failing object, when there is one.
    pub witness: Option<String>,
}

impl ConditionOutcome {
    fn from_failures(name: &'static str, failure: Option<String>) -> Self {
        Self {
            name,
            holds: failure.is_none(),
            witness: failure,
        }
    }
}

/// Position of a glued-heart object relative to the glued torsion pair.
#[derive(Clone, Debug, PartialEq)]
pub enum GluedTorsion {
    /// Both truncations are torsion.
    Torsion,
    /// Both truncations are free.
    Free,
    /// Neither; the torsion subobject and the free quotient are returned.
    Mixed {
        /// Largest torsion subobject.
        torsion: DObject,
        /// Free quotient.
        free: DObject,
    },
}

/// Checks on a glued-semistable object relating it to its truncations.
#[derive(Clone, Debug)]
pub struct TruncationReport {
    /// The object.
    pub object: DObject,
    /// The first truncation is semistable for the first stability condition.
    pub first_semistable: bool,
    /// The second truncation is semistable for the second stability condition.
    pub second_semistable: bool,
    /// The charges of the first truncation and of the glued image of the
    /// second have equal arguments; `None` when one truncation vanishes.
    pub phases_agree: Option<bool>,
    /// `|Z(E)| = |Z₁(τ₁E)| + |Z₂(τ₂E)|`.
    pub mass_additive: bool,
    /// `|Z₂(τ₂E)|² / |Z(E)|²`.
    pub ratio_squared: Real,
    /// The ratio is at most one.
    pub ratio_bounded: bool,
}

impl TruncationReport {
    /// True when every check holds.
    pub fn passed(&self) -> bool {
        self.first_semistable
            && self.second_semistable
            && self.phases_agree != Some(false)
            && self.mass_additive
            && self.ratio_bounded
    }
}

impl GluingContext {
    /// Pairs two stability conditions on `D^b(k)`.
    pub fn new(
        side: SodSide,
        first: StabilityCondition,
        second: StabilityCondition,
    ) -> Result<Self> {
        if first.n() != 1 || second.n() != 1 {
            return Err(Error::Unsupported(
                "gluing is modelled over D^b(k) only".into(),
            ));
        }
        Ok(Self {
            side,
            first,
            second,
        })
    }

    /// The matched pair for a side: `(σ, σ[-1])` on the first decomposition
    /// and `(σ[1], σ)` on the second.
    pub fn matched(side: SodSide, sigma: &StabilityCondition) -> Result<Self> {
        match side {
            SodSide::Sod0 => Self::new(side, sigma.clone(), sigma.shift(-1)?),
            SodSide::Sod1 => Self::new(side, sigma.shift(1)?, sigma.clone()),
        }
    }

    /// The matched pair built from the module heart with `Z(k) = z`.
    pub fn from_point_charge(side: SodSide, z: ExactComplex) -> Result<Self> {
        Self::matched(side, &point_stability(z)?)
    }

    /// Decomposition used.
    pub fn side(&self) -> SodSide {
        self.side
    }

    /// Stability condition on the first factor.
    pub fn first(&self) -> &StabilityCondition {
        &self.first
    }

    /// Stability condition on the second factor.
    pub fn second(&self) -> &StabilityCondition {
        &self.second
    }

    /// Rows giving the classes of the two truncations from the class of an
    /// object of `D^b(A_2)`, written in the basis `([x], [y])`.
    pub fn truncation_rows(&self) -> [[i64; 2]; 2] {
        match self.side {
            SodSide::Sod0 => [[0, 1], [1, -1]],
            SodSide::Sod1 => [[-1, 1], [1, 0]],
        }
    }

    /// Classes of the two truncations.
    pub fn truncation_classes(&self, c: &K0Class) -> (i64, i64) {
        let rows = self.truncation_rows();
        let v = c.coords();
        (
            rows[0][0] * v[0] + rows[0][1] * v[1],
            rows[1][0] * v[0] + rows[1][1] * v[1],
        )
    }

    /// `Z₁(k)` and `Z₂(k)`.
    pub fn point_charges(&self) -> (ExactComplex, ExactComplex) {
        let unit = K0Class::new(vec![1]);
        (
            self.first.charge().eval(&unit),
            self.second.charge().eval(&unit),
        )
    }

    /// A charge `c ↦ a·t₁(c) + b·t₂(c)` on `K_0(A_2)`, where `t₁, t₂` are
    /// the truncation classes.
    pub fn truncation_charge(
        &self,
        on_first: ExactComplex,
        on_second: ExactComplex,
    ) -> CentralCharge {
        let rows = self.truncation_rows();
        CentralCharge::with_transform(
            2,
            rows.iter().map(|r| r.to_vec()).collect(),
            vec![on_first, on_second],
        )
        .expect("two rows of rank two")
    }

    /// `Z₁(τ₁E) + Z₂(τ₂E)`.
    pub fn glued_charge(&self) -> CentralCharge {
        let (z1, z2) = self.point_charges();
        self.truncation_charge(z1, z2)
    }

    /// Recipe of the glued heart.
    pub fn glued_heart_kind(&self) -> HeartKind {
        HeartKind::Glued {
            side: self.side,
            first: Box::new(self.first.heart().kind().clone()),
            second: Box::new(self.second.heart().kind().clone()),
        }
    }

    /// The glued heart.
    pub fn glued_heart(&self) -> Result<Arc<Heart>> {
        Heart::build(self.glued_heart_kind(), 2)
    }

    /// The glued stability condition.
    pub fn glue_stability(&self) -> Result<StabilityCondition> {
        for (name, sigma) in [("first", &self.first), ("second", &self.second)] {
            if !sigma.flags()?.reasonable {
                return Err(Error::Refused(format!(
                    "{name} stability condition is not reasonable"
                )));
            }
        }
        StabilityCondition::new(self.glued_heart()?, self.glued_charge())
    }

    /// Truncations of an object of `D^b(A_2)`.
    pub fn truncations(&self, e: &DObject) -> Result<Truncations> {
        Ok(truncations(&from_a2(e)?, self.side))
    }

    /// Membership in the glued heart, decided on the truncations.
    pub fn heart_membership(&self, m: &MorObject) -> Result<bool> {
        let t = truncations(m, self.side);
        Ok(self.first.heart().contains(&t.first)? && self.second.heart().contains(&t.second)?)
    }

    /// The gluing conditions, tested on objects of `D^b(k)` and on arrows
    /// between them.
    pub fn check_conditions(
        &self,
        objects: &[DObject],
        arrows: &[MorObject],
    ) -> Result<Vec<ConditionOutcome>> {
        if objects.is_empty() {
            return Err(Error::Domain("gluing checks need test objects".into()));
        }
        let mut out = Vec::new();

        let mut adjoint = None;
        'm1: for e in objects {
            for m in arrows {
                let right = match self.side {
                    SodSide::Sod0 => source_of(m),
                    SodSide::Sod1 => target_of(m),
                };
                if mor_hom_dim(&include_first(e, self.side), m) != hom_dim(e, &right) {
                    adjoint = Some(format!("Hom({e}, -) at {m}"));
                    break 'm1;
                }
            }
        }
        out.push(ConditionOutcome::from_failures(
            "first inclusion has a right adjoint",
            adjoint,
        ));

        let mut glue = None;
        'm2: for m in arrows {
            let t = right_truncation_triangle(m, self.side);
            if t.right.k0() != &t.glued_second.k0() + &t.left.k0() {
                glue = Some(m.to_string());
                break 'm2;
            }
            if self.side == SodSide::Sod0
                && m.arrow().cone() != gluing_functor_image(&truncations(m, self.side).second)
            {
                glue = Some(m.to_string());
                break 'm2;
            }
        }
        if glue.is_none() {
            'equiv: for a in objects {
                for b in objects {
                    if hom_dim(a, b) != hom_dim(&gluing_functor_image(a), &gluing_functor_image(b))
                    {
                        glue = Some(format!("{a}, {b}"));
                        break 'equiv;
                    }
                }
            }
        }
        out.push(ConditionOutcome::from_failures(
            "gluing functor is the shift",
            glue,
        ));

        let mut exact = None;
        for x in self.second.heart().catalog() {
            let e = DObject::indec(1, *x);
            if !self.first.heart().contains(&gluing_functor_image(&e))? {
                exact = Some(e.to_string());
                break;
            }
        }
        if exact.is_none() {
            for x in self.first.heart().catalog() {
                let e = DObject::indec(1, *x);
                if !self.second.heart().contains(&e.shift(-1))? {
                    exact = Some(e.shift(-1).to_string());
                    break;
                }
            }
        }
        out.push(ConditionOutcome::from_failures(
            "gluing functor is t-exact",
            exact,
        ));

        let mut free = None;
        for x in self.second.heart().catalog() {
            let e = DObject::indec(1, *x);
            let z2 = self.second.charge().eval_object(&e);
            if z2.im().sign()? == Ordering::Greater {
                let image = gluing_functor_image(&e);
                let z1 = self.first.charge().eval_object(&image);
                if !(self.first.heart().contains(&image)? && z1.im().sign()? == Ordering::Greater) {
                    free = Some(e.to_string());
                    break;
                }
            }
        }
        out.push(ConditionOutcome::from_failures(
            "gluing functor preserves free parts",
            free,
        ));

        let mut charges = None;
        for e in objects {
            let z2 = self.second.charge().eval_object(e);
            let z1 = self.first.charge().eval_object(&gluing_functor_image(e));
            if !z2.eq_certified(&z1)? {
                charges = Some(crate::morphism::to_a2(&include_second(e, self.side))?.to_string());
                break;
            }
        }
        out.push(ConditionOutcome::from_failures(
            "charges agree through the gluing functor",
            charges,
        ));

        let mut semistable = None;
        for e in objects {
            if self.second.is_semistable(e)?
                && !self.first.is_semistable(&gluing_functor_image(e))?
            {
                semistable = Some(e.to_string());
                break;
            }
        }
        out.push(ConditionOutcome::from_failures(
            "gluing functor preserves semistability",
            semistable,
        ));

        let mut orthogonal = None;
        'orth: for a in self.first.heart().catalog() {
            for b in self.second.heart().catalog() {
                let (e1, e2) = (DObject::indec(1, *a), DObject::indec(1, *b));
                for p in -3..=0 {
                    let direct = mor_hom_dim(
                        &include_first(&e1, self.side),
                        &include_second(&e2.shift(p), self.side),
                    );
                    let via_glue = hom_dim(&e1, &gluing_functor_image(&e2).shift(p - 1));
                    if direct != 0 || via_glue != 0 {
                        orthogonal = Some(format!("{e1}, {e2}[{p}]"));
                        break 'orth;
                    }
                }
            }
        }
        out.push(ConditionOutcome::from_failures(
            "heart orthogonality",
            orthogonal,
        ));
        Ok(out)
    }

    /// Position relative to the glued torsion pair.
    pub fn torsion_membership(
        &self,
        glued: &StabilityCondition,
        e: &DObject,
    ) -> Result<GluedTorsion> {
        if !glued.heart().contains(e)? {
            return Err(Error::Domain(format!("{e} is not in the glued heart")));
        }
        let t = self.truncations(e)?;
        let im1 = self.first.charge().eval_object(&t.first).im().sign()?;
        let im2 = self.second.charge().eval_object(&t.second).im().sign()?;
        let torsion1 = t.first.is_zero() || im1 == Ordering::Equal;
        let torsion2 = t.second.is_zero() || im2 == Ordering::Equal;
        let free1 = t.first.is_zero() || self.is_free(&self.first, &t.first)?;
        let free2 = t.second.is_zero() || self.is_free(&self.second, &t.second)?;
        if torsion1 && torsion2 {
            return Ok(GluedTorsion::Torsion);
        }
        if free1 && free2 {
            return Ok(GluedTorsion::Free);
        }
        let mut torsion = DObject::zero(2);
        let mut free = DObject::zero(2);
        for x in e.summands() {
            let (sub, quotient, phase) = max_destabilizing(glued.heart(), glued.charge(), &x)?;
            if glued.charge().is_top(phase.class())? {
                torsion = torsion.direct_sum(&sub);
                free = free.direct_sum(&quotient);
            } else {
                free = free.direct_sum(&DObject::indec(2, x));
            }
        }
        Ok(GluedTorsion::Mixed { torsion, free })
    }

    fn is_free(&self, sigma: &StabilityCondition, e: &DObject) -> Result<bool> {
        for f in sigma.hn(e)? {
            let z = sigma
                .charge()
                .eval_object(&f.object.shift(-f.phase.shift()));
            if z.im().sign()? != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relation between a glued-semistable object and its truncations.
    pub fn truncation_report(
        &self,
        glued: &StabilityCondition,
        e: &DObject,
    ) -> Result<TruncationReport> {
        if !glued.is_semistable(e)? {
            return Err(Error::NotSemistable {
                object: e.to_string(),
                destabilizer: glued.hn(e)?[0].object.to_string(),
            });
        }
        let t = self.truncations(e)?;
        let first_semistable = t.first.is_zero() || self.first.is_semistable(&t.first)?;
        let second_semistable = t.second.is_zero() || self.second.is_semistable(&t.second)?;
        let a = self.first.charge().eval_object(&t.first);
        let b = self.second.charge().eval_object(&t.second);
        let glued_second = self
            .first
            .charge()
            .eval_object(&gluing_functor_image(&t.second));
        let same_ray = |u: &ExactComplex, v: &ExactComplex| -> Result<bool> {
            Ok(u.cross(v).sign()? == Ordering::Equal && u.dot(v).sign()? == Ordering::Greater)
        };
        let phases_agree = if t.first.is_zero() || t.second.is_zero() {
            None
        } else {
            Some(same_ray(&a, &glued_second)?)
        };
        let mass_additive = a.is_exact_zero() || b.is_exact_zero() || same_ray(&a, &b)?;
        let total = glued.charge().eval_object(e);
        let ratio_squared = b.norm_sq().checked_div(&total.norm_sq())?;
        let ratio_bounded = ratio_squared.cmp_real(&Real::one())? != Ordering::Greater;
        Ok(TruncationReport {
            object: e.clone(),
            first_semistable,
            second_semistable,
            phases_agree,
            mass_additive,
            ratio_squared,
            ratio_bounded,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antype::corpus;
    use crate::morphism::{identity_arrow, mor_corpus, source_only, target_only, to_a2};

    fn ctx(side: SodSide) -> GluingContext {
        GluingContext::from_point_charge(side, ExactComplex::i()).unwrap()
    }

    fn catalog_names(h: &Heart) -> Vec<String> {
        h.catalog().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn matched_pairs_satisfy_every_condition() {
        let objects = point_corpus(2, -1..=1);
        let arrows = mor_corpus(&point_corpus(1, -1..=1));
        for side in [SodSide::Sod0, SodSide::Sod1] {
            for c in ctx(side).check_conditions(&objects, &arrows).unwrap() {
                assert!(c.holds, "{} fails on {side:?}: {:?}", c.name, c.witness);
            }
        }
    }

    #[test]
    fn unmatched_charges_break_the_charge_condition() {
        let sigma = point_stability(ExactComplex::i()).unwrap();
        let bad = GluingContext::new(SodSide::Sod0, sigma.clone(), sigma).unwrap();
        let out = bad.check_conditions(&point_corpus(1, 0..=0), &[]).unwrap();
        let charges = out
            .iter()
            .find(|c| c.name == "charges agree through the gluing functor")
            .unwrap();
        assert!(!charges.holds);
        assert_eq!(charges.witness.as_deref(), Some("I[1,1]@0"));
    }

    #[test]
    fn glued_hearts_have_expected_indecomposables() {
        assert_eq!(
            catalog_names(&ctx(SodSide::Sod0).glued_heart().unwrap()),
            ["I[1,1]@-1", "I[1,2]@0", "I[2,2]@0"]
        );
        assert_eq!(
            catalog_names(&ctx(SodSide::Sod1).glued_heart().unwrap()),
            ["I[1,1]@0", "I[1,2]@0", "I[2,2]@1"]
        );
    }

    #[test]
    fn membership_examples() {
        let c = ctx(SodSide::Sod0);
        let k = point(0);
        assert!(c.heart_membership(&identity_arrow(&k)).unwrap());
        assert!(c.heart_membership(&target_only(&k)).unwrap());
        assert!(!c.heart_membership(&source_only(&k)).unwrap());
    }

    #[test]
    fn glued_charge_examples() {
        let z = ctx(SodSide::Sod0).glued_charge();
        let k = point(0);
        let eval = |m: &MorObject| z.eval_object(&to_a2(m).unwrap());
        assert!(eval(&target_only(&k)).eq_exact(&ExactComplex::from_ints(0, 2)));
        assert!(eval(&source_only(&k)).eq_exact(&ExactComplex::from_ints(0, -1)));
        assert!(eval(&identity_arrow(&k)).eq_exact(&ExactComplex::i()));
        let z1 = ctx(SodSide::Sod1).glued_charge();
        let eval1 = |m: &MorObject| z1.eval_object(&to_a2(m).unwrap());
        assert!(eval1(&identity_arrow(&k)).eq_exact(&ExactComplex::i()));
        assert!(eval1(&source_only(&k)).eq_exact(&ExactComplex::from_ints(0, 2)));
    }

    #[test]
    fn glued_stability_respects_truncations() {
        for side in [SodSide::Sod0, SodSide::Sod1] {
            let c = ctx(side);
            let glued = c.glue_stability().unwrap();
            for e in corpus(2, 4, -2..=2) {
                if !glued.heart().contains(&e).unwrap() || !glued.is_semistable(&e).unwrap() {
                    continue;
                }
                let r = c.truncation_report(&glued, &e).unwrap();
                assert!(r.passed(), "{side:?}: {r:?}");
            }
        }
    }

    #[test]
    fn torsion_classification() {
        let torsion_ctx =
            GluingContext::from_point_charge(SodSide::Sod0, ExactComplex::from_ints(-1, 0))
                .unwrap();
        let glued = torsion_ctx.glue_stability().unwrap();
        let p1 = to_a2(&identity_arrow(&point(0))).unwrap();
        assert_eq!(
            torsion_ctx.torsion_membership(&glued, &p1).unwrap(),
            GluedTorsion::Torsion
        );
        let s2 = to_a2(&target_only(&point(0))).unwrap();
        assert_eq!(
            torsion_ctx.torsion_membership(&glued, &s2).unwrap(),
            GluedTorsion::Torsion
        );
        let c = ctx(SodSide::Sod0);
        let glued = c.glue_stability().unwrap();
        assert_eq!(
            c.torsion_membership(&glued, &p1).unwrap(),
            GluedTorsion::Free
        );
    }
}
