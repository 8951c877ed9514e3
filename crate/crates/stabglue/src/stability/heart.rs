//! Hearts of bounded t-structures on `D^b(A_n)`, described by how they are
//! built: standard module hearts, shifts, hearts glued along one of the two
//! decompositions of the morphism category over a point, and tilts at a
//! torsion pair.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::antype::{generic_morphism, hom_dim, indecomposables, DObject, Indec, K0Class};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morphism::{from_a2, truncations, SodSide};
use crate::scalar::{int, Rational};

use super::charge::{CentralCharge, Phase};
use super::hn::{hn_in_heart, max_destabilizing, HnCache};

/// Shifts scanned when listing the indecomposables of a heart.
pub const CATALOG_WINDOW: i64 = 4;

/// Degrees scanned when locating cohomology.
const DEGREE_WINDOW: i64 = 12;

/// Recipe for a heart.
#[derive(Clone, Debug)]
pub enum HeartKind {
    /// Complexes concentrated in one degree: modules shifted by `shift`.
    Standard {
        /// Shift of the module category.
        shift: i64,
    },
    /// The heart `A[by]`.
    Shifted {
        /// The heart being shifted.
        base: Box<HeartKind>,
        /// Amount of the shift.
        by: i64,
    },
    /// Objects of the morphism category over a point whose two truncations
    /// lie in the given hearts of `D^b(k)`.
    Glued {
        /// Decomposition used.
        side: SodSide,
        /// Heart on the first factor.
        first: Box<HeartKind>,
        /// Heart on the second factor.
        second: Box<HeartKind>,
    },
    /// The tilt `⟨F[1], T⟩` of a heart at a torsion pair.
    Tilted {
        /// The heart being tilted.
        base: Box<HeartKind>,
        /// The torsion pair.
        pair: Box<TiltPair>,
    },
}

/// Torsion pairs on a heart defined through charges.
#[derive(Clone, Debug)]
pub enum TiltPair {
    /// `T` has all phases above `cut`, `F` has all phases at most `cut`.
    PhaseCut {
        /// Charge defining the phases.
        charge: CentralCharge,
        /// Cut in `[0, 1]`.
        cut: Rational,
    },
    /// `T` holds objects whose free part has every slope above zero;
    /// `F` holds torsion-free objects with every slope at most zero.
    /// Torsion objects are those of top phase for `torsion_charge`; slopes
    /// are read off from the phase of `slope_charge` relative to one half.
    Slope {
        /// Charge whose top-phase objects are torsion.
        torsion_charge: CentralCharge,
        /// Weak charge measuring slopes.
        slope_charge: CentralCharge,
    },
}

impl HeartKind {
    /// The standard heart of modules.
    pub fn standard() -> Self {
        HeartKind::Standard { shift: 0 }
    }

    /// This heart shifted by `by`.
    pub fn shifted(self, by: i64) -> Self {
        if by == 0 {
            return self;
        }
        match self {
            HeartKind::Standard { shift } => HeartKind::Standard { shift: shift + by },
            HeartKind::Shifted { base, by: b } => {
                HeartKind::Shifted { base, by: b + by }.normalize()
            }
            other => HeartKind::Shifted {
                base: Box::new(other),
                by,
            },
        }
    }

    fn normalize(self) -> Self {
        match self {
            HeartKind::Shifted { base, by: 0 } => *base,
            other => other,
        }
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        match self {
            HeartKind::Standard { shift: 0 } => "modules".into(),
            HeartKind::Standard { shift } => format!("modules[{shift}]"),
            HeartKind::Shifted { base, by } => format!("({})[{by}]", base.describe()),
            HeartKind::Glued {
                side,
                first,
                second,
            } => {
                format!(
                    "glued-{}({}, {})",
                    side.name(),
                    first.describe(),
                    second.describe()
                )
            }
            HeartKind::Tilted { base, pair } => match pair.as_ref() {
                TiltPair::PhaseCut { cut, .. } => {
                    format!(
                        "tilt({}, phase>{})",
                        base.describe(),
                        crate::scalar::format_rational(cut)
                    )
                }
                TiltPair::Slope { .. } => format!("tilt({}, slope>0)", base.describe()),
            },
        }
    }
}

impl fmt::Display for HeartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Position of a base-heart object relative to a torsion pair.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TiltClass {
    /// In the torsion class.
    Torsion,
    /// In the torsion-free class.
    Free,
    /// In neither.
    Neither,
}

/// A proper nonzero subobject together with its quotient.
#[derive(Clone, Debug)]
pub struct Subobject {
    /// The subobject.
    pub object: DObject,
    /// The quotient.
    pub quotient: DObject,
}

enum Parts {
    Leaf,
    Shifted(Arc<Heart>),
    Glued {
        side: SodSide,
        first: Arc<Heart>,
        second: Arc<Heart>,
    },
    Tilted {
        base: Arc<Heart>,
        caches: [HnCache; 2],
    },
}

/// A materialized heart on `D^b(A_n)`: its indecomposables within the
/// catalog window, its simple objects and memoized cohomology.
pub struct Heart {
    kind: HeartKind,
    n: usize,
    parts: Parts,
    catalog: Vec<Indec>,
    simples: Vec<Indec>,
    length_map: Matrix,
    cohomology_cache: Mutex<HashMap<Indec, BTreeMap<i64, DObject>>>,
    subobject_cache: Mutex<HashMap<Indec, Arc<Vec<Subobject>>>>,
    tilt_cache: Mutex<HashMap<Indec, TiltClass>>,
}

impl fmt::Debug for Heart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Heart")
            .field("kind", &self.kind)
            .field("n", &self.n)
            .finish()
    }
}

impl Heart {
    /// Builds a heart on `D^b(A_n)`.
    pub fn build(kind: HeartKind, n: usize) -> Result<Arc<Heart>> {
        let parts = match &kind {
            HeartKind::Standard { .. } => Parts::Leaf,
            HeartKind::Shifted { base, .. } => Parts::Shifted(Heart::build((**base).clone(), n)?),
            HeartKind::Glued {
                side,
                first,
                second,
            } => {
                if n != 2 {
                    return Err(Error::Unsupported(
                        "glued hearts are modelled on the morphism category over a point".into(),
                    ));
                }
                Parts::Glued {
                    side: *side,
                    first: Heart::build((**first).clone(), 1)?,
                    second: Heart::build((**second).clone(), 1)?,
                }
            }
            HeartKind::Tilted { base, pair } => {
                let base = Heart::build((**base).clone(), n)?;
                let (TiltPair::PhaseCut { charge, .. }
                | TiltPair::Slope {
                    torsion_charge: charge,
                    ..
                }) = pair.as_ref();
                if charge.rank() != n {
                    return Err(Error::Structural(
                        "tilting charge has the wrong rank".into(),
                    ));
                }
                Parts::Tilted {
                    base,
                    caches: Default::default(),
                }
            }
        };
        let mut heart = Heart {
            kind,
            n,
            parts,
            catalog: Vec::new(),
            simples: Vec::new(),
            length_map: Matrix::zeros(0, 0),
            cohomology_cache: Mutex::default(),
            subobject_cache: Mutex::default(),
            tilt_cache: Mutex::default(),
        };
        let mut catalog = Vec::new();
        for x in indecomposables(n, -CATALOG_WINDOW..=CATALOG_WINDOW) {
            if heart.contains_indec(&x)? {
                catalog.push(x);
            }
        }
        heart.catalog = catalog;
        heart.simples = heart.find_simples()?;
        heart.length_map = heart.simple_basis_inverse()?;
        Ok(Arc::new(heart))
    }

    /// The recipe.
    pub fn kind(&self) -> &HeartKind {
        &self.kind
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Indecomposable objects of the heart.
    pub fn catalog(&self) -> &[Indec] {
        &self.catalog
    }

    /// Simple objects.
    pub fn simples(&self) -> &[Indec] {
        &self.simples
    }

    /// Membership of an indecomposable.
    pub fn contains_indec(&self, x: &Indec) -> Result<bool> {
        match (&self.kind, &self.parts) {
            (HeartKind::Standard { shift }, _) => Ok(x.shift == *shift),
            (HeartKind::Shifted { by, .. }, Parts::Shifted(base)) => {
                base.contains_indec(&x.shifted(-by))
            }
            (
                HeartKind::Glued { .. },
                Parts::Glued {
                    side,
                    first,
                    second,
                },
            ) => {
                let m = from_a2(&DObject::indec(self.n, *x))?;
                let t = truncations(&m, *side);
                Ok(first.contains(&t.first)? && second.contains(&t.second)?)
            }
            (HeartKind::Tilted { .. }, Parts::Tilted { base, .. }) => {
                let pieces = base.cohomology_indec(x)?;
                for (degree, piece) in &pieces {
                    let wanted = match degree {
                        -1 => TiltClass::Free,
                        0 => TiltClass::Torsion,
                        _ => return Ok(false),
                    };
                    for y in piece.summands() {
                        if self.tilt_class(&y)? != wanted {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            _ => Err(Error::Structural("heart recipe and parts disagree".into())),
        }
    }

    /// Membership of an object: every summand lies in the heart.
    pub fn contains(&self, e: &DObject) -> Result<bool> {
        for x in e.parts().keys() {
            if !self.contains_indec(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The base heart and torsion pair of a tilted heart.
    pub fn tilt_data(&self) -> Option<(&Arc<Heart>, &TiltPair)> {
        match (&self.kind, &self.parts) {
            (HeartKind::Tilted { pair, .. }, Parts::Tilted { base, .. }) => {
                Some((base, pair.as_ref()))
            }
            _ => None,
        }
    }

    /// Position of an indecomposable of the base heart relative to the
    /// torsion pair of a tilted heart.
    pub fn tilt_class(&self, y: &Indec) -> Result<TiltClass> {
        if let Some(c) = self.tilt_cache.lock().expect("cache").get(y) {
            return Ok(*c);
        }
        let (HeartKind::Tilted { pair, .. }, Parts::Tilted { base, caches }) =
            (&self.kind, &self.parts)
        else {
            return Err(Error::Structural(
                "torsion pairs exist only on tilted hearts".into(),
            ));
        };
        let class = classify(base, pair, caches, y)?;
        self.tilt_cache.lock().expect("cache").insert(*y, class);
        Ok(class)
    }

    fn find_simples(&self) -> Result<Vec<Indec>> {
        let mut out = Vec::new();
        for x in &self.catalog {
            let target = DObject::indec(self.n, *x);
            let mut simple = true;
            for y in &self.catalog {
                if y == x {
                    continue;
                }
                let source = DObject::indec(self.n, *y);
                if hom_dim(&source, &target) == 0 {
                    continue;
                }
                if self.contains(&generic_morphism(&source, &target).cone())? {
                    simple = false;
                    break;
                }
            }
            if simple {
                out.push(*x);
            }
        }
        Ok(out)
    }

    fn simple_basis_inverse(&self) -> Result<Matrix> {
        if self.simples.len() != self.n {
            return Err(Error::Structural(format!(
                "heart {} has {} simple objects in the catalog window, expected {}",
                self.kind,
                self.simples.len(),
                self.n
            )));
        }
        let columns: Vec<Vec<Rational>> = self
            .simples
            .iter()
            .map(|s| {
                K0Class::of_indec(self.n, s)
                    .coords()
                    .iter()
                    .map(|&c| int(c))
                    .collect()
            })
            .collect();
        Matrix::from_columns(self.n, &columns)
            .inverse()
            .ok_or_else(|| {
                Error::Structural(format!("simple classes of {} are dependent", self.kind))
            })
    }

    /// Multiplicities of the simple objects in a class.
    pub fn simple_multiplicities(&self, c: &K0Class) -> Vec<i64> {
        let v: Vec<Rational> = c.coords().iter().map(|&x| int(x)).collect();
        self.length_map
            .apply(&v)
            .into_iter()
            .map(|q| {
                debug_assert!(q.is_integer());
                q.to_integer().try_into().expect("small multiplicity")
            })
            .collect()
    }

    /// Length of a heart object.
    pub fn length(&self, e: &DObject) -> i64 {
        self.simple_multiplicities(&e.k0()).iter().sum()
    }

    fn top_degree(&self, e: &DObject) -> Option<i64> {
        (-DEGREE_WINDOW..=DEGREE_WINDOW).rev().find(|&i| {
            self.simples
                .iter()
                .any(|s| hom_dim(e, &DObject::indec(self.n, s.shifted(-i))) > 0)
        })
    }

    /// Cohomology objects of an indecomposable with respect to this heart,
    /// keyed by degree.
    pub fn cohomology_indec(&self, x: &Indec) -> Result<BTreeMap<i64, DObject>> {
        if let Some(c) = self.cohomology_cache.lock().expect("cache").get(x) {
            return Ok(c.clone());
        }
        let out = if self.contains_indec(x)? {
            BTreeMap::from([(0, DObject::indec(self.n, *x))])
        } else {
            self.split_top(&DObject::indec(self.n, *x))?
        };
        self.cohomology_cache
            .lock()
            .expect("cache")
            .insert(*x, out.clone());
        Ok(out)
    }

    fn split_top(&self, e: &DObject) -> Result<BTreeMap<i64, DObject>> {
        let top = self.top_degree(e).ok_or_else(|| {
            Error::Structural(format!("{e} has no cohomology in the degree window"))
        })?;
        let mut candidates = Vec::new();
        for y in &self.catalog {
            let target = DObject::indec(self.n, y.shifted(-top));
            match hom_dim(e, &target) {
                0 => {}
                1 => candidates.push(*y),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "truncation of {e} needs a repeated cohomology summand"
                    )))
                }
            }
        }
        for mask in 1u32..(1 << candidates.len()) {
            let chosen: Vec<Indec> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, y)| *y)
                .collect();
            let piece = DObject::from_summands(self.n, &chosen)?;
            let map = generic_morphism(e, &piece.shift(-top));
            let fiber = map.fiber();
            if self.top_degree(&fiber).is_none_or(|d| d < top) {
                let mut out = self.cohomology(&fiber)?;
                out.insert(top, piece);
                return Ok(out);
            }
        }
        Err(Error::Structural(format!(
            "no truncation of {e} found in degree {top}"
        )))
    }

    /// Cohomology objects of an object with respect to this heart.
    pub fn cohomology(&self, e: &DObject) -> Result<BTreeMap<i64, DObject>> {
        let mut out: BTreeMap<i64, DObject> = BTreeMap::new();
        for (x, &m) in e.parts() {
            for (d, piece) in self.cohomology_indec(x)? {
                let entry = out.entry(d).or_insert_with(|| DObject::zero(self.n));
                for _ in 0..m {
                    *entry = entry.direct_sum(&piece);
                }
            }
        }
        Ok(out)
    }

    /// Proper nonzero subobjects of an indecomposable heart object, one for
    /// each multiplicity-free sum of catalog objects admitting a monomorphism.
    pub fn subobjects(&self, x: &Indec) -> Result<Arc<Vec<Subobject>>> {
        if let Some(s) = self.subobject_cache.lock().expect("cache").get(x) {
            return Ok(s.clone());
        }
        let target = DObject::indec(self.n, *x);
        let total = self.length(&target);
        let mut candidates = Vec::new();
        for y in &self.catalog {
            if y == x {
                continue;
            }
            let source = DObject::indec(self.n, *y);
            let len = self.length(&source);
            if len < total && hom_dim(&source, &target) > 0 {
                candidates.push((*y, len));
            }
        }
        let mut out = Vec::new();
        for mask in 1u32..(1 << candidates.len()) {
            let chosen: Vec<&(Indec, i64)> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, c)| c)
                .collect();
            if chosen.iter().map(|c| c.1).sum::<i64>() >= total {
                continue;
            }
            let ys: Vec<Indec> = chosen.iter().map(|c| c.0).collect();
            let source = DObject::from_summands(self.n, &ys)?;
            let quotient = generic_morphism(&source, &target).cone();
            if self.contains(&quotient)? {
                out.push(Subobject {
                    object: source,
                    quotient,
                });
            }
        }
        let out = Arc::new(out);
        self.subobject_cache
            .lock()
            .expect("cache")
            .insert(*x, out.clone());
        Ok(out)
    }
}

fn classify(base: &Heart, pair: &TiltPair, caches: &[HnCache; 2], y: &Indec) -> Result<TiltClass> {
    let obj = DObject::indec(base.n(), *y);
    match pair {
        TiltPair::PhaseCut { charge, cut } => {
            let hn = hn_in_heart(base, charge, &caches[0], &obj)?;
            let first = &hn.first().expect("nonzero").phase;
            let last = &hn.last().expect("nonzero").phase;
            if charge.cmp_phase_with(last, cut)? == std::cmp::Ordering::Greater {
                Ok(TiltClass::Torsion)
            } else if charge.cmp_phase_with(first, cut)? != std::cmp::Ordering::Greater {
                Ok(TiltClass::Free)
            } else {
                Ok(TiltClass::Neither)
            }
        }
        TiltPair::Slope {
            torsion_charge,
            slope_charge,
        } => {
            let (_, quotient, phase) = max_destabilizing(base, torsion_charge, y)?;
            let (free, has_torsion) = if torsion_charge.is_top(phase.class())? {
                if quotient.is_zero() {
                    return Ok(TiltClass::Torsion);
                }
                (quotient, true)
            } else {
                (obj, false)
            };
            let hn = hn_in_heart(base, slope_charge, &caches[1], &free)?;
            let half = Rational::new(1.into(), 2.into());
            let first: &Phase = &hn.first().expect("nonzero").phase;
            let last: &Phase = &hn.last().expect("nonzero").phase;
            if slope_charge.cmp_phase_with(last, &half)? == std::cmp::Ordering::Greater {
                Ok(TiltClass::Torsion)
            } else if !has_torsion
                && slope_charge.cmp_phase_with(first, &half)? != std::cmp::Ordering::Greater
            {
                Ok(TiltClass::Free)
            } else {
                Ok(TiltClass::Neither)
            }
        }
    }
}
