//! Stability conditions as a heart together with a central charge: phases,
//! Harder–Narasimhan filtrations, masses, the slicing distance, the charge
//! norm, deformation balls and support-property checks.

pub mod charge;
pub mod heart;
pub mod hn;
pub mod oracle;

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::antype::{indecomposables, DObject, Indec, K0Class};
use crate::complex::ExactComplex;
use crate::error::{Error, Result};
use crate::geometry::Angle;
use crate::linalg::Matrix;
use crate::scalar::{Interval, QSqrt3, Rational, Real};

pub use charge::{format_phase, phase_gap, CentralCharge, Phase};
pub use heart::{Heart, HeartKind, Subobject, TiltClass, TiltPair};
pub use hn::{hn_filtration, hn_in_heart, merge_filtrations, HnCache, HnFactor};

/// Structural properties of a stability condition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Every value of the charge on the basis has rational parts.
    pub rational: bool,
    /// The image of the charge is a discrete subgroup of ℂ.
    pub discrete: bool,
    /// Semistable objects have charges bounded away from zero.
    pub reasonable: bool,
    /// The support property holds.
    pub full: bool,
}

/// A stability condition on `D^b(A_n)`.
#[derive(Clone, Debug)]
pub struct StabilityCondition {
    heart: Arc<Heart>,
    charge: CentralCharge,
    cache: Arc<HnCache>,
    flags: Arc<OnceLock<Flags>>,
}

impl StabilityCondition {
    /// Pairs a heart with a charge and checks positivity on the heart.
    pub fn new(heart: Arc<Heart>, charge: CentralCharge) -> Result<Self> {
        if charge.rank() != heart.n() {
            return Err(Error::Structural(format!(
                "charge of rank {} on a category with {} simples",
                charge.rank(),
                heart.n()
            )));
        }
        let sigma = Self {
            heart,
            charge,
            cache: Arc::default(),
            flags: Arc::default(),
        };
        if let Some(bad) = sigma.positivity_failures()?.first() {
            return Err(Error::Validation(format!(
                "charge {} of heart object {bad} is not in the upper half-plane",
                sigma.charge.eval_object(bad)
            )));
        }
        Ok(sigma)
    }

    /// Builds the heart from its recipe and pairs it with a charge.
    pub fn from_kind(kind: HeartKind, n: usize, charge: CentralCharge) -> Result<Self> {
        Self::new(Heart::build(kind, n)?, charge)
    }

    /// The charge on the standard heart of modules.
    pub fn standard(charge: CentralCharge) -> Result<Self> {
        let n = charge.rank();
        Self::from_kind(HeartKind::standard(), n, charge)
    }

    /// The heart.
    pub fn heart(&self) -> &Arc<Heart> {
        &self.heart
    }

    /// The charge.
    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.heart.n()
    }

    /// Heart objects whose charge is zero or outside `H ∪ ℝ_{<0}`.
    pub fn positivity_failures(&self) -> Result<Vec<DObject>> {
        let mut out = Vec::new();
        for x in self.heart.catalog() {
            let e = DObject::indec(self.n(), *x);
            let z = self.charge.eval_object(&e);
            if z.is_zero()? || !z.in_charge_half_plane()? {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Harder–Narasimhan filtration.
    pub fn hn(&self, e: &DObject) -> Result<Vec<HnFactor>> {
        if e.is_zero() {
            return Err(Error::Domain("the zero object has no filtration".into()));
        }
        hn_filtration(&self.heart, &self.charge, &self.cache, e)
    }

    /// True when `e` is semistable.
    pub fn is_semistable(&self, e: &DObject) -> Result<bool> {
        Ok(self.hn(e)?.len() == 1)
    }

    /// Phase of a semistable object.
    pub fn phase(&self, e: &DObject) -> Result<Phase> {
        let hn = self.hn(e)?;
        if hn.len() != 1 {
            return Err(Error::NotSemistable {
                object: e.to_string(),
                destabilizer: hn[0].object.to_string(),
            });
        }
        Ok(hn[0].phase.clone())
    }

    /// Phase in units of π.
    pub fn phase_value(&self, p: &Phase) -> Result<Real> {
        self.charge.phase_value(p)
    }

    /// Largest and smallest phases of the filtration.
    pub fn extreme_phases(&self, e: &DObject) -> Result<(Phase, Phase)> {
        let hn = self.hn(e)?;
        Ok((hn[0].phase.clone(), hn[hn.len() - 1].phase.clone()))
    }

    /// Largest and smallest phases of the filtration, in units of π.
    pub fn phase_bounds(&self, e: &DObject) -> Result<(Real, Real)> {
        let (top, bottom) = self.extreme_phases(e)?;
        Ok((self.phase_value(&top)?, self.phase_value(&bottom)?))
    }

    /// Sum of the absolute values of the charges of the filtration factors.
    pub fn mass(&self, e: &DObject) -> Result<Real> {
        let mut acc = Real::zero();
        for f in self.hn(e)? {
            acc = &acc + &self.charge.eval_object(&f.object).abs()?;
        }
        Ok(acc)
    }

    /// The same slicing with phases shifted by `k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_kind(
            self.heart.kind().clone().shifted(k),
            self.n(),
            self.charge.scale(&ExactComplex::from_ints(sign, 0)),
        )
    }

    /// The action of `e^{iπq}`: charge multiplied by `e^{iπq}`, every phase
    /// increased by `q`.
    pub fn rotate(&self, q: &Rational) -> Result<Self> {
        let whole = q.floor();
        let m: i64 = whole
            .to_integer()
            .try_into()
            .map_err(|_| Error::Domain("rotation out of range".into()))?;
        let r = q - &whole;
        let unit = Angle::from_pi_multiple(q.clone()).unit()?;
        let charge = self.charge.scale(&unit);
        let kind = if r.is_zero() {
            self.heart.kind().clone().shifted(-m)
        } else {
            HeartKind::Tilted {
                base: Box::new(self.heart.kind().clone()),
                pair: Box::new(TiltPair::PhaseCut {
                    charge: self.charge.clone(),
                    cut: Rational::one() - r,
                }),
            }
            .shifted(-m - 1)
        };
        Self::from_kind(kind, self.n(), charge)
    }

    /// Semistable indecomposables of the heart.
    pub fn semistable_catalog(&self) -> Result<Vec<Indec>> {
        let mut out = Vec::new();
        for x in self.heart.catalog() {
            if self.is_semistable(&DObject::indec(self.n(), *x))? {
                out.push(*x);
            }
        }
        Ok(out)
    }

    /// Smallest `|Z|` over semistable objects.
    pub fn min_semistable_charge(&self) -> Result<Real> {
        let mut best: Option<Real> = None;
        for x in self.semistable_catalog()? {
            let v = self.charge.eval(&K0Class::of_indec(self.n(), &x)).abs()?;
            best = Some(match best {
                Some(b) => real_min(b, v),
                None => v,
            });
        }
        best.ok_or_else(|| Error::Structural("heart without semistable objects".into()))
    }

    /// Flags, computed once.
    pub fn flags(&self) -> Result<Flags> {
        if let Some(f) = self.flags.get() {
            return Ok(*f);
        }
        let rational = self.charge.is_rational();
        let discrete = rational || self.charge_is_lattice()?;
        let reasonable = self.min_semistable_charge()?.sign()? == Ordering::Greater;
        let flags = Flags {
            rational,
            discrete,
            reasonable,
            full: reasonable,
        };
        Ok(*self.flags.get_or_init(|| flags))
    }

    fn charge_is_lattice(&self) -> Result<bool> {
        let row = self.charge.row();
        match row.len() {
            1 => Ok(true),
            2 => Ok(row[0].cross(&row[1]).sign()? != Ordering::Equal),
            _ => Ok(false),
        }
    }
}

/// The smaller of two reals; undecided comparisons return the interval of
/// possible minima.
pub fn real_min(a: Real, b: Real) -> Real {
    match a.cmp_real(&b) {
        Ok(Ordering::Greater) => b,
        Ok(_) => a,
        Err(_) => {
            let (x, y) = (a.to_interval(), b.to_interval());
            let lo = if x.lo() < y.lo() {
                x.lo().clone()
            } else {
                y.lo().clone()
            };
            let hi = if x.hi() < y.hi() {
                x.hi().clone()
            } else {
                y.hi().clone()
            };
            Real::Approx(Interval::new(lo, hi).expect("ordered"))
        }
    }
}

/// The larger of two reals; undecided comparisons return the hull.
pub fn real_max(a: Real, b: Real) -> Real {
    match a.cmp_real(&b) {
        Ok(Ordering::Less) => b,
        Ok(_) => a,
        Err(_) => {
            let (x, y) = (a.to_interval(), b.to_interval());
            let lo = if x.lo() > y.lo() {
                x.lo().clone()
            } else {
                y.lo().clone()
            };
            let hi = if x.hi() > y.hi() {
                x.hi().clone()
            } else {
                y.hi().clone()
            };
            Real::Approx(Interval::new(lo, hi).expect("ordered"))
        }
    }
}

/// A supremum over a family of objects, flagged exact when the family
/// covers every indecomposable up to shift.
#[derive(Clone, Debug)]
pub struct Estimate {
    /// The value.
    pub value: Real,
    /// True when the value is the supremum over all objects.
    pub exact: bool,
}

fn probe_objects(n: usize, corpus: &[DObject]) -> Vec<DObject> {
    let mut out: Vec<DObject> = indecomposables(n, 0..=0)
        .into_iter()
        .map(|x| DObject::indec(n, x))
        .collect();
    out.extend(corpus.iter().filter(|e| !e.is_zero()).cloned());
    out
}

/// Largest difference of extreme phases between two stability conditions
/// over the indecomposables and the given corpus.
pub fn metric_estimate(
    sigma: &StabilityCondition,
    tau: &StabilityCondition,
    corpus: &[DObject],
) -> Result<Estimate> {
    let mut acc = Real::zero();
    for e in probe_objects(sigma.n(), corpus) {
        let (s_top, s_bottom) = sigma.extreme_phases(&e)?;
        let (t_top, t_bottom) = tau.extreme_phases(&e)?;
        acc = real_max(
            acc,
            phase_gap(sigma.charge(), &s_top, tau.charge(), &t_top)?.abs(),
        );
        acc = real_max(
            acc,
            phase_gap(sigma.charge(), &s_bottom, tau.charge(), &t_bottom)?.abs(),
        );
    }
    Ok(Estimate {
        value: acc,
        exact: true,
    })
}

/// `sup |U(E)| / |Z(E)|` over semistable objects.
pub fn norm_estimate(
    u: &CentralCharge,
    sigma: &StabilityCondition,
    corpus: &[DObject],
) -> Result<Estimate> {
    let mut acc = Real::zero();
    for e in probe_objects(sigma.n(), corpus) {
        if !sigma.is_semistable(&e)? {
            continue;
        }
        let num = u.eval_object(&e).norm_sq();
        let den = sigma.charge().eval_object(&e).norm_sq();
        acc = real_max(acc, num.checked_div(&den)?);
    }
    Ok(Estimate {
        value: acc.sqrt()?,
        exact: true,
    })
}

/// Outcome of a deformation-ball test.
#[derive(Clone, Debug)]
pub struct BallReport {
    /// Slicing distance.
    pub metric: Estimate,
    /// Norm of the charge difference.
    pub norm: Estimate,
    /// `sin(πε)`.
    pub bound: Real,
    /// True when both quantities are inside the ball.
    pub inside: bool,
}

/// Whether `tau` lies in the ε-ball around `sigma`: slicing distance below
/// `ε` and charge difference of norm below `sin(πε)`.
pub fn ball_membership(
    sigma: &StabilityCondition,
    tau: &StabilityCondition,
    eps: &Rational,
    corpus: &[DObject],
) -> Result<BallReport> {
    if eps <= &Rational::zero() || eps >= &Rational::new(1.into(), 4.into()) {
        return Err(Error::Domain("ball radius must lie in (0, 1/4)".into()));
    }
    let metric = metric_estimate(sigma, tau, corpus)?;
    let norm = norm_estimate(&tau.charge().sub(sigma.charge()), sigma, corpus)?;
    let bound = Angle::from_pi_multiple(eps.clone()).sin()?;
    let inside = metric.value.cmp_real(&Real::from_rational(eps.clone()))? == Ordering::Less
        && norm.value.cmp_real(&bound)? == Ordering::Less;
    Ok(BallReport {
        metric,
        norm,
        bound,
        inside,
    })
}

/// Outcome of a support-property check.
#[derive(Clone, Debug)]
pub struct SupportReport {
    /// Number of semistable objects at which the form was evaluated.
    pub checked: usize,
    /// Semistable objects with negative form value.
    pub negative: Vec<(DObject, Rational)>,
    /// Real dimension of the kernel of the charge, when computable exactly.
    pub kernel_dim: Option<usize>,
    /// Negative definiteness on the kernel; `None` when not computable.
    pub kernel_negative_definite: Option<bool>,
}

impl SupportReport {
    /// True when every check succeeded.
    pub fn passed(&self) -> bool {
        self.negative.is_empty() && self.kernel_negative_definite == Some(true)
    }
}

/// Value of a quadratic form on a class.
pub fn quadratic_value(q: &Matrix, c: &K0Class) -> Rational {
    let v: Vec<Rational> = c
        .coords()
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    q.apply(&v).iter().zip(&v).map(|(a, b)| a * b).sum()
}

/// Checks `q ≥ 0` on semistable objects and negative definiteness of `q`
/// on the kernel of the charge.
pub fn support_check(
    sigma: &StabilityCondition,
    q: &Matrix,
    corpus: &[DObject],
) -> Result<SupportReport> {
    let mut semistable = Vec::new();
    for e in probe_objects(sigma.n(), corpus) {
        if sigma.is_semistable(&e)? {
            semistable.push(e);
        }
    }
    support_check_on(sigma.charge(), q, &semistable)
}

/// Checks `q ≥ 0` on the given semistable objects and negative
/// definiteness of `q` on the kernel of a (possibly weak) charge.
pub fn support_check_on(
    charge: &CentralCharge,
    q: &Matrix,
    semistable: &[DObject],
) -> Result<SupportReport> {
    let n = charge.rank();
    if q.rows() != n || q.cols() != n || q.transpose() != *q {
        return Err(Error::Domain(
            "support form must be a symmetric matrix of the lattice rank".into(),
        ));
    }
    let mut negative = Vec::new();
    for e in semistable {
        let v = quadratic_value(q, &e.k0());
        if v < Rational::zero() {
            negative.push((e.clone(), v));
        }
    }
    let checked = semistable.len();
    let (kernel_dim, kernel_negative_definite) = match exact_kernel(charge) {
        Some(basis) => {
            let definite = negative_definite_on(q, &basis);
            (Some(basis.len()), Some(definite))
        }
        None => (None, None),
    };
    Ok(SupportReport {
        checked,
        negative,
        kernel_dim,
        kernel_negative_definite,
    })
}

fn exact_kernel(z: &CentralCharge) -> Option<Vec<Vec<QSqrt3>>> {
    let row = z.row();
    let mut rows: Vec<Vec<QSqrt3>> = vec![Vec::new(), Vec::new()];
    for v in &row {
        rows[0].push(v.re().as_exact()?.clone());
        rows[1].push(v.im().as_exact()?.clone());
    }
    Some(nullspace_q3(rows, row.len()))
}

fn nullspace_q3(mut rows: Vec<Vec<QSqrt3>>, cols: usize) -> Vec<Vec<QSqrt3>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                rows[i] = rows[i]
                    .iter()
                    .zip(&rows[r])
                    .map(|(a, b)| a - &(&f * b))
                    .collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![QSqrt3::zero(); cols];
            v[f] = QSqrt3::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[i][f];
            }
            v
        })
        .collect()
}

fn negative_definite_on(q: &Matrix, basis: &[Vec<QSqrt3>]) -> bool {
    let k = basis.len();
    let entry = |a: &Vec<QSqrt3>, b: &Vec<QSqrt3>| -> QSqrt3 {
        let mut acc = QSqrt3::zero();
        for (i, ai) in a.iter().enumerate().take(q.rows()) {
            for (j, bj) in b.iter().enumerate().take(q.cols()) {
                let qij = QSqrt3::from_rational(q.get(i, j).clone());
                acc = &acc + &(&(ai * &qij) * bj);
            }
        }
        -acc
    };
    let gram: Vec<Vec<QSqrt3>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| entry(a, b)).collect())
        .collect();
    (1..=k).all(|m| det_q3(&gram, m).signum() == Ordering::Greater)
}

fn det_q3(g: &[Vec<QSqrt3>], m: usize) -> QSqrt3 {
    let mut a: Vec<Vec<QSqrt3>> = g
        .iter()
        .take(m)
        .map(|r| r.iter().take(m).cloned().collect())
        .collect();
    let mut det = QSqrt3::one();
    for c in 0..m {
        let Some(p) = (c..m).find(|&i| !a[i][c].is_zero()) else {
            return QSqrt3::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in (c + 1)..m {
            let f = &a[i][c] * &inv;
            let pivot_row = a[c].clone();
            a[i] = a[i]
                .iter()
                .zip(&pivot_row)
                .map(|(x, y)| x - &(&f * y))
                .collect();
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::oracle::{standard_filtrations, BruteForce};
    use super::*;
    use crate::antype::corpus;
    use crate::scalar::{rat, rational_to_f64};
    use num_traits::Signed;

    fn sigma() -> StabilityCondition {
        StabilityCondition::standard("-1+i, i".parse().unwrap()).unwrap()
    }

    fn obj(text: &str) -> DObject {
        DObject::parse(text, 2).unwrap()
    }

    fn value(s: &StabilityCondition, e: &DObject) -> Rational {
        s.phase_value(&s.phase(e).unwrap())
            .unwrap()
            .as_rational()
            .unwrap()
            .clone()
    }

    #[test]
    fn standard_heart_has_interval_catalog() {
        let s = sigma();
        assert_eq!(s.heart().catalog().len(), 3);
        let simples: Vec<String> = s
            .heart()
            .simples()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(simples, vec!["I[1,1]@0", "I[2,2]@0"]);
        assert_eq!(s.heart().length(&obj("I[1,2]@0")), 2);
    }

    #[test]
    fn phases_follow_arguments_and_shifts() {
        let s = sigma();
        assert_eq!(value(&s, &obj("I[2,2]@0")), rat(1, 2));
        assert_eq!(value(&s, &obj("I[1,1]@0")), rat(3, 4));
        assert_eq!(value(&s, &obj("I[2,2]@2")), rat(5, 2));
        let p1 = s
            .phase_value(&s.phase(&obj("I[1,2]@0")).unwrap())
            .unwrap()
            .to_f64();
        assert!((p1 - 2f64.atan2(-1.0) / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn filtrations_of_documented_objects() {
        let s = sigma();
        let hn = s.hn(&obj("I[1,2]@0")).unwrap();
        assert_eq!(hn.len(), 1);
        let hn = s.hn(&obj("I[1,1]@0 + I[2,2]@0")).unwrap();
        let factors: Vec<String> = hn.iter().map(|f| f.object.to_string()).collect();
        assert_eq!(factors, vec!["I[1,1]@0", "I[2,2]@0"]);
        match s.phase(&obj("I[1,1]@0 + I[2,2]@0")) {
            Err(Error::NotSemistable { destabilizer, .. }) => assert_eq!(destabilizer, "I[1,1]@0"),
            other => panic!("expected a destabilizer, got {other:?}"),
        }
    }

    #[test]
    fn masses_add_over_factors() {
        let s = sigma();
        let m = s.mass(&obj("I[1,1]@0 + I[2,2]@0")).unwrap();
        assert!((m.to_f64() - (2f64.sqrt() + 1.0)).abs() < 1e-9);
        let e = obj("I[1,2]@0 + I[1,1]@1");
        assert!(
            (s.mass(&e).unwrap().to_f64() - s.mass(&e.shift(1)).unwrap().to_f64()).abs() < 1e-12
        );
        let p = obj("I[1,2]@0");
        let z = s.charge().eval_object(&p).abs().unwrap();
        assert!((s.mass(&p).unwrap().to_f64() - z.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn flags_of_sample_charges() {
        let f = sigma().flags().unwrap();
        assert_eq!(
            f,
            Flags {
                rational: true,
                discrete: true,
                reasonable: true,
                full: true
            }
        );
        assert_eq!(
            sigma().min_semistable_charge().unwrap().as_rational(),
            Some(&rat(1, 1))
        );
        let flat = StabilityCondition::standard("i, i".parse().unwrap()).unwrap();
        assert!(flat.flags().unwrap().reasonable);
        assert_eq!(
            flat.min_semistable_charge().unwrap().as_rational(),
            Some(&rat(1, 1))
        );
        let pi_entry = ExactComplex::new(Real::Approx(Interval::pi()), Real::one());
        let irrational =
            StabilityCondition::standard(CentralCharge::new(vec![pi_entry, ExactComplex::i()]))
                .unwrap();
        assert!(!irrational.flags().unwrap().rational);
    }

    #[test]
    fn positivity_is_enforced() {
        let bad = StabilityCondition::standard("1, i".parse().unwrap());
        assert!(matches!(bad, Err(Error::Validation(_))));
    }

    #[test]
    fn shifts_and_rotations_move_phases() {
        let s = sigma();
        let shifted = s.shift(1).unwrap();
        assert_eq!(value(&shifted, &obj("I[1,1]@0")), rat(-1, 4));
        for q in [rat(1, 6), rat(1, 2), rat(5, 6), rat(7, 6), rat(-1, 3)] {
            let r = s.rotate(&q).unwrap();
            for x in s.heart().catalog() {
                let e = DObject::indec(2, *x);
                let before = s.phase_value(&s.phase(&e).unwrap()).unwrap();
                let after = r.phase_value(&r.phase(&e).unwrap()).unwrap();
                let gap = &(&after - &before) - &Real::from_rational(q.clone());
                assert!(gap.to_f64().abs() < 1e-12, "rotation by {q} at {e}");
                if let Some(b) = before.as_rational() {
                    assert_eq!(after.as_rational(), Some(&(b + &q)));
                }
            }
            let d = metric_estimate(&s, &r, &[]).unwrap();
            assert_eq!(d.value.as_rational(), Some(&q.abs()));
        }
    }

    #[test]
    fn engine_matches_interval_oracle() {
        let s = sigma();
        for e in corpus(2, 4, -1..=1) {
            let chains = standard_filtrations(s.charge(), &e).unwrap();
            assert_eq!(chains.len(), 1, "{e}");
            let hn = s.hn(&e).unwrap();
            assert_eq!(hn.len(), chains[0].len(), "{e}");
            for (f, o) in hn.iter().zip(&chains[0]) {
                assert_eq!(f.phase.shift(), o.phase.shift());
                assert_eq!(f.object.shift(-f.phase.shift()).k0(), o.class);
            }
        }
    }

    #[test]
    fn engine_matches_lattice_oracle_on_tilted_heart() {
        let s = sigma().rotate(&rat(1, 3)).unwrap();
        let mut brute = BruteForce::new(s.heart(), s.charge());
        let heart_objects: Vec<DObject> = corpus(2, 4, -1..=1)
            .into_iter()
            .filter(|e| s.heart().contains(e).unwrap())
            .collect();
        assert!(heart_objects.len() > 10);
        for e in heart_objects {
            let chains = brute.filtrations(&e).unwrap();
            assert_eq!(chains.len(), 1, "{e}");
            let hn = s.hn(&e).unwrap();
            assert_eq!(hn.len(), chains[0].len(), "{e}");
            for (f, o) in hn.iter().zip(&chains[0]) {
                assert_eq!(f.object.k0(), o.class, "{e}");
            }
        }
    }

    #[test]
    fn norms_and_balls() {
        let s = sigma();
        assert_eq!(
            norm_estimate(s.charge(), &s, &[])
                .unwrap()
                .value
                .as_rational(),
            Some(&rat(1, 1))
        );
        let zero = CentralCharge::new(vec![ExactComplex::zero(), ExactComplex::zero()]);
        assert!(norm_estimate(&zero, &s, &[]).unwrap().value.is_exact_zero());
        let ball = ball_membership(&s, &s, &rat(1, 8), &[]).unwrap();
        assert!(ball.inside);
        assert!((rational_to_f64(&rat(1, 8)) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn support_form_kernel_is_trivial_for_injective_charge() {
        let s = sigma();
        let q = Matrix::from_i64(2, 2, &[&[-1, 0], &[0, -1]]);
        let report = support_check(&s, &q, &[]).unwrap();
        assert_eq!(report.kernel_dim, Some(0));
        assert_eq!(report.kernel_negative_definite, Some(true));
        let flat = StabilityCondition::standard("i, i".parse().unwrap()).unwrap();
        let report = support_check(&flat, &q, &[]).unwrap();
        assert_eq!(report.kernel_dim, Some(1));
        assert_eq!(report.kernel_negative_definite, Some(true));
    }
}
