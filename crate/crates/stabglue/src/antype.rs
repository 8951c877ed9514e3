//! The bounded derived category of representations of the linearly oriented
//! A_n quiver: objects in normal form, Hom spaces, morphisms, cones and
//! Grothendieck classes.
//!
//! Every object is stored as a multiset of shifted interval modules. Its
//! chain-level model is the minimal projective complex in which `M[a,b][s]`
//! is `P_{b+1} → P_a` placed in degrees `-s-1, -s` with differential
//! `(-1)^s`, so that the model of `X[k]` is the `k`-fold shift of the model
//! of `X` on the nose.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::{cone as complex_cone, ChainMap, HomSpace, Poset, ProjComplex};
use crate::rep::{Interval, Rep, RepComplex};
use crate::scalar::Rational;

/// Largest supported number of vertices.
pub const MAX_VERTICES: usize = 8;

/// The quiver `1 → 2 → … → n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverSpec {
    n: usize,
}

impl QuiverSpec {
    /// Validates `1 ≤ n ≤ 8`.
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(Error::Domain(format!(
                "A_n needs 1 ≤ n ≤ {MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Self { n })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// A shifted interval module `M[a,b][shift]`, ordered by shift first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indec {
    /// Shift `s`; the module sits in cohomological degree `-s`.
    pub shift: i64,
    /// Support interval.
    pub interval: Interval,
}

impl Indec {
    /// `M[a,b][shift]`.
    pub fn new(interval: Interval, shift: i64) -> Self {
        Self { shift, interval }
    }

    /// Shifted copy.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            shift: self.shift + k,
            interval: self.interval,
        }
    }

    /// Total dimension of the underlying module.
    pub fn dim(&self) -> usize {
        self.interval.len()
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I[{},{}]@{}",
            self.interval.a, self.interval.b, self.shift
        )
    }
}

/// A class in the Grothendieck group, in the basis of simple modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K0Class {
    coords: Vec<i64>,
}

impl K0Class {
    /// Wraps coordinates.
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    /// The zero class of rank `n`.
    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    /// Class of `M[a,b][shift]`.
    pub fn of_indec(n: usize, x: &Indec) -> Self {
        let sign = if x.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        Self {
            coords: (1..=n)
                .map(|v| if x.interval.contains(v) { sign } else { 0 })
                .collect(),
        }
    }

    /// Coordinates.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// True for the zero class.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Integer multiple.
    pub fn times(&self, k: i64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// The Euler form `Σ α_i β_i − Σ α_i β_{i+1}`.
    pub fn euler_form(&self, other: &K0Class) -> i64 {
        let n = self.rank();
        let diag: i64 = (0..n).map(|i| self.coords[i] * other.coords[i]).sum();
        let arrows: i64 = (0..n.saturating_sub(1))
            .map(|i| self.coords[i] * other.coords[i + 1])
            .sum();
        diag - arrows
    }
}

impl Add<&K0Class> for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        K0Class {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&K0Class> for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        K0Class {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        self.times(-1)
    }
}

crate::scalar::forward_binop!(K0Class, Add, add);
crate::scalar::forward_binop!(K0Class, Sub, sub);

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An object of the derived category in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DObject {
    n: usize,
    parts: BTreeMap<Indec, usize>,
}

impl DObject {
    /// The zero object.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            parts: BTreeMap::new(),
        }
    }

    /// A single indecomposable.
    pub fn indec(n: usize, x: Indec) -> Self {
        Self {
            n,
            parts: BTreeMap::from([(x, 1)]),
        }
    }

    /// `M[a,b][shift]`, validated against `n`.
    pub fn interval(n: usize, a: usize, b: usize, shift: i64) -> Result<Self> {
        Ok(Self::indec(n, Indec::new(Interval::new(a, b, n)?, shift)))
    }

    /// Builds from a multiset of indecomposables.
    pub fn from_parts(n: usize, parts: BTreeMap<Indec, usize>) -> Result<Self> {
        for x in parts.keys() {
            Interval::new(x.interval.a, x.interval.b, n)?;
        }
        Ok(Self {
            n,
            parts: parts.into_iter().filter(|(_, m)| *m > 0).collect(),
        })
    }

    /// Builds from a list of indecomposables with repetition.
    pub fn from_summands(n: usize, summands: &[Indec]) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for x in summands {
            *parts.entry(*x).or_insert(0) += 1;
        }
        Self::from_parts(n, parts)
    }

    /// Normal form of the cohomology of a complex of representations.
    pub fn from_rep_complex(c: &RepComplex, n: usize) -> Self {
        Self::from_cohomology(n, &c.cohomology())
    }

    /// Normal form of a projective complex over the chain poset.
    pub fn from_complex(c: &ProjComplex) -> Result<Self> {
        let n = c.poset().size();
        Ok(Self::from_cohomology(n, &c.cohomology()?))
    }

    fn from_cohomology(n: usize, h: &BTreeMap<i64, Rep>) -> Self {
        let mut parts = BTreeMap::new();
        for (d, rep) in h {
            for (iv, m) in rep.decompose() {
                *parts.entry(Indec::new(iv, -d)).or_insert(0) += m;
            }
        }
        Self { n, parts }
    }

    /// Number of vertices of the quiver.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiset of indecomposable summands.
    pub fn parts(&self) -> &BTreeMap<Indec, usize> {
        &self.parts
    }

    /// Summands listed with repetition, in normal-form order.
    pub fn summands(&self) -> Vec<Indec> {
        self.parts
            .iter()
            .flat_map(|(x, &m)| std::iter::repeat_n(*x, m))
            .collect()
    }

    /// Number of indecomposable summands with repetition.
    pub fn summand_count(&self) -> usize {
        self.parts.values().sum()
    }

    /// True for the zero object.
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when there is exactly one summand.
    pub fn is_indecomposable(&self) -> bool {
        self.summand_count() == 1
    }

    /// The unique summand of an indecomposable object.
    pub fn as_indec(&self) -> Option<Indec> {
        if self.is_indecomposable() {
            self.parts.keys().next().copied()
        } else {
            None
        }
    }

    /// Sum of the dimensions of all cohomology modules.
    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|(x, m)| x.dim() * m).sum()
    }

    /// Shift `X[k]`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            n: self.n,
            parts: self.parts.iter().map(|(x, m)| (x.shifted(k), *m)).collect(),
        }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "direct sum across different quivers");
        let mut parts = self.parts.clone();
        for (x, m) in &other.parts {
            *parts.entry(*x).or_insert(0) += m;
        }
        Self { n: self.n, parts }
    }

    /// Grothendieck class.
    pub fn k0(&self) -> K0Class {
        self.parts
            .iter()
            .fold(K0Class::zero(self.n), |acc, (x, &m)| {
                &acc + &K0Class::of_indec(self.n, x).times(m as i64)
            })
    }

    /// Cohomology module in degree `d`, as a multiset of intervals.
    pub fn cohomology(&self, d: i64) -> BTreeMap<Interval, usize> {
        self.parts
            .iter()
            .filter(|(x, _)| x.shift == -d)
            .map(|(x, m)| (x.interval, *m))
            .collect()
    }

    /// Degrees with nonzero cohomology, ascending.
    pub fn cohomology_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.parts.keys().map(|x| -x.shift).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Minimal projective complex modelling the object.
    pub fn complex(&self) -> ProjComplex {
        self.summands()
            .iter()
            .fold(ProjComplex::zero(Poset::chain(self.n)), |acc, x| {
                acc.direct_sum(&indec_complex(self.n, x))
            })
    }

    /// Parses `I[a,b]@s + …`; `0` is the zero object.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let s = text.trim();
        if s == "0" {
            return Ok(Self::zero(n));
        }
        let mut summands = Vec::new();
        for term in s.split('+') {
            summands.push(parse_indec(term.trim(), n)?);
        }
        Self::from_summands(n, &summands)
    }
}

impl fmt::Display for DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.summands().iter().map(Indec::to_string).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn parse_indec(term: &str, n: usize) -> Result<Indec> {
    let bad = || Error::Parse(format!("not an object literal: {term:?}"));
    let body = term.strip_prefix("I[").ok_or_else(bad)?;
    let (range, shift) = body.split_once("]@").ok_or_else(bad)?;
    let (a, b) = range.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    let shift: i64 = shift.trim().parse().map_err(|_| bad())?;
    Ok(Indec::new(Interval::new(a, b, n)?, shift))
}

/// Chain-level model of one indecomposable.
pub fn indec_complex(n: usize, x: &Indec) -> ProjComplex {
    let top = -x.shift;
    let mut terms = BTreeMap::from([(top, vec![x.interval.a - 1])]);
    let mut diffs = BTreeMap::new();
    if x.interval.b < n {
        terms.insert(top - 1, vec![x.interval.b]);
        let sign = if x.shift.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        diffs.insert(top - 1, Matrix::from_rows(1, 1, vec![vec![sign]]));
    }
    ProjComplex::new(Poset::chain(n), terms, diffs).expect("interval models are complexes")
}

type HomCache = HashMap<(usize, Indec, Indec), Arc<HomSpace>>;

fn hom_cache() -> &'static Mutex<HomCache> {
    static CACHE: OnceLock<Mutex<HomCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Chain maps modulo homotopy between two indecomposables, memoized.
pub fn indec_hom_space(n: usize, x: &Indec, y: &Indec) -> Arc<HomSpace> {
    let key = (n, *x, *y);
    if let Some(h) = hom_cache().lock().expect("hom cache poisoned").get(&key) {
        return h.clone();
    }
    let h = Arc::new(HomSpace::new(&indec_complex(n, x), &indec_complex(n, y)));
    hom_cache()
        .lock()
        .expect("hom cache poisoned")
        .insert(key, h.clone());
    h
}

/// Dimension of Hom between two indecomposables.
pub fn indec_hom_dim(n: usize, x: &Indec, y: &Indec) -> usize {
    indec_hom_space(n, x, y).dim()
}

/// `dim Hom(x, y)` in the derived category.
pub fn hom_dim(x: &DObject, y: &DObject) -> usize {
    let mut total = 0;
    for (a, ma) in &x.parts {
        for (b, mb) in &y.parts {
            total += ma * mb * indec_hom_dim(x.n, a, b);
        }
    }
    total
}

/// `Hom(x, y[k])` between modules computed from the projective resolution of
/// `x`, independently of the chain-map machinery.
pub fn module_ext_dim(n: usize, x: Interval, y: Interval, k: i64) -> usize {
    let hom = usize::from(y.a <= x.a && x.a <= y.b && y.b <= x.b);
    match k {
        0 => hom,
        1 => {
            let alpha = K0Class::of_indec(n, &Indec::new(x, 0));
            let beta = K0Class::of_indec(n, &Indec::new(y, 0));
            (hom as i64 - alpha.euler_form(&beta)) as usize
        }
        _ => 0,
    }
}

/// A morphism between objects, stored as a chain map of the minimal models.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: DObject,
    target: DObject,
    map: ChainMap,
}

impl Morphism {
    /// Wraps a chain map between the minimal models; validates it.
    pub fn new(source: DObject, target: DObject, map: ChainMap) -> Result<Self> {
        if !map.is_chain_map(&source.complex(), &target.complex()) {
            return Err(Error::Structural(format!(
                "not a chain map from {source} to {target}"
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    /// The zero morphism.
    pub fn zero(source: &DObject, target: &DObject) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            map: ChainMap::zero(),
        }
    }

    /// The identity.
    pub fn identity(x: &DObject) -> Self {
        Self {
            source: x.clone(),
            target: x.clone(),
            map: ChainMap::identity(&x.complex()),
        }
    }

    /// Source object.
    pub fn source(&self) -> &DObject {
        &self.source
    }

    /// Target object.
    pub fn target(&self) -> &DObject {
        &self.target
    }

    /// Underlying chain map.
    pub fn chain_map(&self) -> &ChainMap {
        &self.map
    }

    /// Composite `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::Structural(
                "composable morphisms need matching objects".into(),
            ));
        }
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.after(&first.map),
        })
    }

    /// Sum of parallel morphisms.
    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Structural(
                "only parallel morphisms can be added".into(),
            ));
        }
        Ok(Self {
            map: self.map.add(&other.map),
            ..self.clone()
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> Morphism {
        Self {
            map: self.map.scale(s),
            ..self.clone()
        }
    }

    /// Shift `f[k]`.
    pub fn shift(&self, k: i64) -> Morphism {
        Self {
            source: self.source.shift(k),
            target: self.target.shift(k),
            map: self.map.shift(k),
        }
    }

    /// Block from source summand `j` to target summand `i`.
    pub fn block(&self, i: usize, j: usize) -> ChainMap {
        let s = self.source.complex();
        let t = self.target.complex();
        let n = self.source.n;
        let srcs = self.source.summands();
        let tgts = self.target.summands();
        let mut out = BTreeMap::new();
        for d in self.map.degrees() {
            let full = self.map.component(d, &s, &t);
            let rows = block_range(n, &tgts, i, d);
            let cols = block_range(n, &srcs, j, d);
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            out.insert(d, full.select(&rows, &cols));
        }
        ChainMap::new(out)
    }

    /// Coordinates in the basis returned by [`hom_basis`].
    pub fn coordinates(&self) -> Vec<Rational> {
        let n = self.source.n;
        let mut out = Vec::new();
        for (i, y) in self.target.summands().iter().enumerate() {
            for (j, x) in self.source.summands().iter().enumerate() {
                let hs = indec_hom_space(n, x, y);
                if hs.dim() == 0 {
                    continue;
                }
                let c = hs
                    .coordinates(&self.block(i, j))
                    .expect("blocks of a chain map are chain maps");
                out.extend(c);
            }
        }
        out
    }

    /// True when the morphism vanishes in the derived category.
    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(Zero::is_zero)
    }

    /// Mapping cone in normal form.
    pub fn cone(&self) -> DObject {
        let c = complex_cone(&self.map, &self.source.complex(), &self.target.complex());
        DObject::from_complex(&c.complex).expect("chain poset")
    }

    /// Fiber `cone(f)[-1]`.
    pub fn fiber(&self) -> DObject {
        self.cone().shift(-1)
    }
}

fn block_range(n: usize, summands: &[Indec], k: usize, degree: i64) -> Vec<usize> {
    let mut offset = 0;
    for (idx, x) in summands.iter().enumerate() {
        let c = indec_complex(n, x);
        let len = c.term(degree).len();
        if idx == k {
            return (offset..offset + len).collect();
        }
        offset += len;
    }
    Vec::new()
}

/// Basis of `Hom(x, y)`: one morphism per basis map between each pair of summands.
pub fn hom_basis(x: &DObject, y: &DObject) -> Vec<Morphism> {
    let n = x.n;
    let srcs = x.summands();
    let tgts = y.summands();
    let src_complexes: Vec<ProjComplex> = srcs.iter().map(|s| indec_complex(n, s)).collect();
    let tgt_complexes: Vec<ProjComplex> = tgts.iter().map(|t| indec_complex(n, t)).collect();
    let mut out = Vec::new();
    for (i, b) in tgts.iter().enumerate() {
        for (j, a) in srcs.iter().enumerate() {
            let hs = indec_hom_space(n, a, b);
            for basis_map in hs.basis() {
                let blocks: Vec<Vec<ChainMap>> = (0..tgts.len())
                    .map(|r| {
                        (0..srcs.len())
                            .map(|c| {
                                if r == i && c == j {
                                    basis_map.clone()
                                } else {
                                    ChainMap::zero()
                                }
                            })
                            .collect()
                    })
                    .collect();
                let map = ChainMap::from_blocks(&src_complexes, &tgt_complexes, &blocks);
                out.push(Morphism {
                    source: x.clone(),
                    target: y.clone(),
                    map,
                });
            }
        }
    }
    out
}

/// The morphism with the given coordinates in [`hom_basis`].
pub fn morphism_from_coordinates(
    x: &DObject,
    y: &DObject,
    coefficients: &[Rational],
) -> Result<Morphism> {
    let basis = hom_basis(x, y);
    if basis.len() != coefficients.len() {
        return Err(Error::Structural(format!(
            "Hom({x}, {y}) has dimension {}, got {} coefficients",
            basis.len(),
            coefficients.len()
        )));
    }
    let mut acc = Morphism::zero(x, y);
    for (b, c) in basis.iter().zip(coefficients) {
        acc = acc.add(&b.scale(c))?;
    }
    Ok(acc)
}

/// Sum of all basis morphisms `x → y`.
pub fn generic_morphism(x: &DObject, y: &DObject) -> Morphism {
    hom_basis(x, y)
        .iter()
        .fold(Morphism::zero(x, y), |acc, b| acc.add(b).expect("parallel"))
}

/// All indecomposables with shift in the given range.
pub fn indecomposables(n: usize, shifts: std::ops::RangeInclusive<i64>) -> Vec<Indec> {
    shifts
        .flat_map(|s| {
            Interval::all(n)
                .into_iter()
                .map(move |iv| Indec::new(iv, s))
        })
        .collect()
}

/// Every nonzero object whose summands have shift in `shifts` and whose total
/// dimension is at most `max_dim`, in a fixed order.
pub fn corpus(n: usize, max_dim: usize, shifts: std::ops::RangeInclusive<i64>) -> Vec<DObject> {
    let pool = indecomposables(n, shifts);
    let mut out = Vec::new();
    let mut current: Vec<usize> = vec![0; pool.len()];
    fn walk(
        pool: &[Indec],
        idx: usize,
        budget: usize,
        current: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<DObject>,
    ) {
        if idx == pool.len() {
            let parts: BTreeMap<Indec, usize> = pool
                .iter()
                .zip(current.iter())
                .filter(|(_, m)| **m > 0)
                .map(|(x, m)| (*x, *m))
                .collect();
            if !parts.is_empty() {
                out.push(DObject { n, parts });
            }
            return;
        }
        let d = pool[idx].dim();
        let mut m = 0;
        while m * d <= budget {
            current[idx] = m;
            walk(pool, idx + 1, budget - m * d, current, n, out);
            m += 1;
        }
        current[idx] = 0;
    }
    walk(&pool, 0, max_dim, &mut current, n, &mut out);
    out.sort();
    out
}

/// Stable textual fingerprint of corpus parameters.
pub fn corpus_descriptor(
    n: usize,
    max_dim: usize,
    shifts: &std::ops::RangeInclusive<i64>,
) -> String {
    format!(
        "A{n};dim<={max_dim};shifts={}..={}",
        shifts.start(),
        shifts.end()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn obj(text: &str, n: usize) -> DObject {
        DObject::parse(text, n).unwrap()
    }

    #[test]
    fn quiver_bounds() {
        assert!(QuiverSpec::new(0).is_err());
        assert!(QuiverSpec::new(9).is_err());
        assert_eq!(QuiverSpec::new(2).unwrap().n(), 2);
    }

    #[test]
    fn literals_round_trip() {
        let x = obj("I[1,2]@0 + I[2,2]@1", 2);
        assert_eq!(x.to_string(), "I[1,2]@0 + I[2,2]@1");
        assert_eq!(DObject::parse(&x.to_string(), 2).unwrap(), x);
        assert_eq!(obj("0", 2), DObject::zero(2));
        assert!(DObject::parse("I[2,1]@0", 2).is_err());
        assert!(DObject::parse("J[1,1]@0", 2).is_err());
    }

    #[test]
    fn k0_examples() {
        assert_eq!(obj("I[1,2]@0", 2).k0().coords(), &[1, 1]);
        assert_eq!(obj("I[2,2]@3", 2).k0().coords(), &[0, -1]);
        assert_eq!(obj("I[1,1]@0 + I[2,2]@1", 2).k0().coords(), &[1, -1]);
    }

    #[test]
    fn hom_examples() {
        let p1 = obj("I[1,2]@0", 2);
        let s1 = obj("I[1,1]@0", 2);
        let s2 = obj("I[2,2]@0", 2);
        assert_eq!(hom_dim(&p1, &s2), 0);
        assert_eq!(hom_dim(&s1, &s2.shift(1)), 1);
        for x in indecomposables(3, 0..=0) {
            let d = DObject::indec(3, x);
            assert_eq!(hom_dim(&d, &d), 1);
        }
    }

    #[test]
    fn cone_examples() {
        let x = obj("I[1,1]@0 + I[2,3]@1", 3);
        assert!(Morphism::identity(&x).cone().is_zero());
        let y = obj("I[2,2]@0", 3);
        let zero = Morphism::zero(&x, &y);
        assert_eq!(zero.cone(), y.direct_sum(&x.shift(1)));
        let p2 = obj("I[2,2]@0", 2);
        let p1 = obj("I[1,2]@0", 2);
        let f = generic_morphism(&p2, &p1);
        assert!(!f.is_zero());
        assert_eq!(f.cone(), obj("I[1,1]@0", 2));
        assert_eq!(f.cone().k0(), &p1.k0() - &p2.k0());
    }

    #[test]
    fn minimal_model_cohomology_matches_normal_form() {
        for x in corpus(3, 3, -1..=1) {
            assert_eq!(DObject::from_complex(&x.complex()).unwrap(), x);
            assert_eq!(x.complex().dimension_vector(), x.k0().coords().to_vec());
        }
    }

    #[test]
    fn chain_level_homs_match_resolution_ext() {
        for n in 1..=4 {
            for a in Interval::all(n) {
                for b in Interval::all(n) {
                    for k in -2..=3 {
                        let x = Indec::new(a, 0);
                        let y = Indec::new(b, k);
                        assert_eq!(
                            indec_hom_dim(n, &x, &y),
                            module_ext_dim(n, a, b, k),
                            "Hom(M{a}, M{b}[{k}]) over A_{n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_coordinates_round_trip() {
        let x = obj("I[1,2]@0 + I[2,2]@0", 2);
        let y = obj("I[1,2]@0 + I[1,1]@0", 2);
        let dim = hom_dim(&x, &y);
        assert_eq!(hom_basis(&x, &y).len(), dim);
        let coeffs: Vec<Rational> = (0..dim as i64).map(|k| int(k + 2)).collect();
        let f = morphism_from_coordinates(&x, &y, &coeffs).unwrap();
        assert_eq!(f.coordinates(), coeffs);
        let g = Morphism::identity(&y).after(&f).unwrap();
        assert_eq!(g.coordinates(), coeffs);
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let c = corpus(2, 3, -1..=1);
        assert_eq!(c, corpus(2, 3, -1..=1));
        assert!(c.iter().all(|x| x.total_dim() <= 3 && !x.is_zero()));
        let modules = corpus(2, 6, 0..=0);
        assert_eq!(modules.len(), 49);
    }
}
