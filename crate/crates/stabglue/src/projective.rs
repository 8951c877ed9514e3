//! Bounded complexes of indecomposable projective modules over the incidence
//! algebra of a finite poset, chain maps between them, and the space of chain
//! maps modulo homotopy.
//!
//! The projective at a vertex `w` is nonzero exactly at the vertices `v ≥ w`,
//! so a nonzero map `P_w → P_w'` exists iff `w' ≤ w` and it is a scalar.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{Rep, RepComplex, RepMap};
use crate::scalar::Rational;

/// Shape of the poset, used for labels and for evaluation to representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetShape {
    /// `0 < 1 < … < n-1`.
    Chain(usize),
    /// `[n] × [2]`; vertex `(i, c)` has index `c·n + i`.
    Ladder(usize),
}

/// A finite poset given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    shape: PosetShape,
    size: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// The chain with `n` elements.
    pub fn chain(n: usize) -> Arc<Self> {
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Arc::new(Self {
            shape: PosetShape::Chain(n),
            size: n,
            leq,
        })
    }

    /// The product of a chain with `n` elements and a chain with 2 elements.
    pub fn ladder(n: usize) -> Arc<Self> {
        let size = 2 * n;
        let leq = (0..size * size)
            .map(|k| {
                let (x, y) = (k / size, k % size);
                let (xi, xc, yi, yc) = (x % n, x / n, y % n, y / n);
                xi <= yi && xc <= yc
            })
            .collect();
        Arc::new(Self {
            shape: PosetShape::Ladder(n),
            size,
            leq,
        })
    }

    /// Shape tag.
    pub fn shape(&self) -> PosetShape {
        self.shape
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Order relation.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }
}

/// A bounded complex of projectives with differentials `C^d → C^{d+1}`.
///
/// `terms[d]` lists the vertices of the summands `P_w` of `C^d`; the matrix
/// `diffs[d]` has one row per summand of `C^{d+1}` and one column per summand
/// of `C^d`.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    poset: Arc<Poset>,
    terms: BTreeMap<i64, Vec<usize>>,
    diffs: BTreeMap<i64, Matrix>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset && self.terms == other.terms && {
            let degrees: Vec<i64> = self
                .terms
                .keys()
                .chain(other.terms.keys())
                .copied()
                .collect();
            degrees.iter().all(|&d| self.diff(d) == other.diff(d))
        }
    }
}

impl ProjComplex {
    /// The zero complex.
    pub fn zero(poset: Arc<Poset>) -> Self {
        Self {
            poset,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Validates shapes, that each entry is an allowed map, and that `d∘d = 0`.
    pub fn new(
        poset: Arc<Poset>,
        terms: BTreeMap<i64, Vec<usize>>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let terms: BTreeMap<i64, Vec<usize>> =
            terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        for vs in terms.values() {
            if let Some(&bad) = vs.iter().find(|&&w| w >= poset.size()) {
                return Err(Error::Structural(format!(
                    "vertex {bad} is outside the poset"
                )));
            }
        }
        let c = Self {
            poset,
            terms,
            diffs: BTreeMap::new(),
        };
        let mut kept = BTreeMap::new();
        for (d, m) in diffs {
            let (src, tgt) = (c.term(d), c.term(d + 1));
            if m.rows() != tgt.len() || m.cols() != src.len() {
                return Err(Error::Structural(format!(
                    "differential {d} has shape {}×{}, expected {}×{}",
                    m.rows(),
                    m.cols(),
                    tgt.len(),
                    src.len()
                )));
            }
            c.check_support(&m, src, tgt, &format!("differential {d}"))?;
            if !m.is_zero() {
                kept.insert(d, m);
            }
        }
        let c = Self { diffs: kept, ..c };
        for d in c.diffs.keys() {
            if !(&c.diff(d + 1) * &c.diff(*d)).is_zero() {
                return Err(Error::Structural(format!("d∘d ≠ 0 at degree {d}")));
            }
        }
        Ok(c)
    }

    fn check_support(&self, m: &Matrix, src: &[usize], tgt: &[usize], what: &str) -> Result<()> {
        for (i, &t) in tgt.iter().enumerate() {
            for (j, &s) in src.iter().enumerate() {
                if !m.get(i, j).is_zero() && !self.poset.leq(t, s) {
                    return Err(Error::Structural(format!(
                        "{what}: no nonzero map from P_{s} to P_{t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Underlying poset.
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    /// Summand vertices in degree `d`.
    pub fn term(&self, d: i64) -> &[usize] {
        self.terms.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Differential `C^d → C^{d+1}`.
    pub fn diff(&self, d: i64) -> Matrix {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.term(d + 1).len(), self.term(d).len()))
    }

    /// All nonzero terms keyed by degree.
    pub fn terms(&self) -> &BTreeMap<i64, Vec<usize>> {
        &self.terms
    }

    /// Keeps the summands selected by `keep`, relabelling vertices through `relabel`,
    /// over a new poset. Used for restriction along poset embeddings.
    pub fn restrict(
        &self,
        poset: Arc<Poset>,
        keep: impl Fn(usize) -> bool,
        relabel: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let mut terms = BTreeMap::new();
        let mut picks = BTreeMap::new();
        for (d, vs) in &self.terms {
            let idx: Vec<usize> = (0..vs.len()).filter(|&j| keep(vs[j])).collect();
            terms.insert(*d, idx.iter().map(|&j| relabel(vs[j])).collect::<Vec<_>>());
            picks.insert(*d, idx);
        }
        let empty = Vec::new();
        let pick = |d: i64| picks.get(&d).unwrap_or(&empty).clone();
        let diffs = self
            .diffs
            .iter()
            .map(|(d, m)| (*d, m.select(&pick(d + 1), &pick(*d))))
            .collect();
        Self::new(poset, terms, diffs)
    }

    /// Selects the summand indices kept by [`ProjComplex::restrict`] in degree `d`.
    pub fn kept_indices(&self, d: i64, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.term(d)
            .iter()
            .enumerate()
            .filter(|(_, &w)| keep(w))
            .map(|(j, _)| j)
            .collect()
    }

    /// Same complex over a poset with an identical order relation.
    pub fn with_poset(&self, poset: Arc<Poset>) -> Result<Self> {
        if poset.size() != self.poset.size()
            || (0..poset.size())
                .any(|a| (0..poset.size()).any(|b| poset.leq(a, b) != self.poset.leq(a, b)))
        {
            return Err(Error::Structural(
                "posets have different order relations".into(),
            ));
        }
        Ok(Self {
            poset,
            ..self.clone()
        })
    }

    /// Degrees with nonzero terms, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// True when every term is zero.
    pub fn is_zero_complex(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shift `C[k]`: `C[k]^d = C^{d+k}` with differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        Self {
            poset: self.poset.clone(),
            terms: self.terms.iter().map(|(d, v)| (d - k, v.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(d, m)| (d - k, m.scale(&sign)))
                .collect(),
        }
    }

    /// Direct sum, with the summands of `self` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.poset, other.poset, "direct sum over different posets");
        let mut terms = self.terms.clone();
        for (d, v) in &other.terms {
            terms.entry(*d).or_default().extend(v.iter().copied());
        }
        let mut degrees: Vec<i64> = self
            .diffs
            .keys()
            .chain(other.diffs.keys())
            .copied()
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let diffs = degrees
            .into_iter()
            .map(|d| (d, self.diff(d).direct_sum(&other.diff(d))))
            .collect();
        Self {
            poset: self.poset.clone(),
            terms,
            diffs,
        }
    }

    /// Euler characteristic as a dimension vector over the poset.
    pub fn dimension_vector(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.poset.size()];
        for (d, vs) in &self.terms {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            for &w in vs {
                for (v, slot) in out.iter_mut().enumerate() {
                    if self.poset.leq(w, v) {
                        *slot += sign;
                    }
                }
            }
        }
        out
    }

    /// Evaluates at each vertex of a chain poset, giving a complex of representations.
    pub fn to_rep_complex(&self) -> Result<RepComplex> {
        let PosetShape::Chain(n) = self.poset.shape() else {
            return Err(Error::Unsupported(
                "evaluation to quiver representations needs a chain poset".into(),
            ));
        };
        let support = |vs: &[usize], v: usize| -> Vec<usize> {
            (0..vs.len()).filter(|&j| vs[j] <= v).collect()
        };
        let mut terms = BTreeMap::new();
        for (d, vs) in &self.terms {
            let dims: Vec<usize> = (0..n).map(|v| support(vs, v).len()).collect();
            let maps = (0..n.saturating_sub(1))
                .map(|v| {
                    let (small, big) = (support(vs, v), support(vs, v + 1));
                    let mut m = Matrix::zeros(big.len(), small.len());
                    for (c, j) in small.iter().enumerate() {
                        let r = big
                            .iter()
                            .position(|x| x == j)
                            .expect("support grows along the chain");
                        m.set(r, c, Rational::one());
                    }
                    m
                })
                .collect();
            terms.insert(*d, Rep::new(dims, maps)?);
        }
        let mut diffs = BTreeMap::new();
        for (d, m) in &self.diffs {
            let (src, tgt) = (self.term(*d), self.term(d + 1));
            let comps = (0..n)
                .map(|v| m.select(&support(tgt, v), &support(src, v)))
                .collect();
            diffs.insert(*d, RepMap::new(comps));
        }
        RepComplex::new(n, terms, diffs)
    }

    /// Cohomology representations for a chain poset.
    pub fn cohomology(&self) -> Result<BTreeMap<i64, Rep>> {
        Ok(self.to_rep_complex()?.cohomology())
    }
}

/// A chain map, stored as one matrix per degree (rows: target summands, columns: source summands).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Wraps per-degree matrices; zero components may be omitted.
    pub fn new(components: BTreeMap<i64, Matrix>) -> Self {
        Self {
            components: components
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .collect(),
        }
    }

    /// The zero map.
    pub fn zero() -> Self {
        Self {
            components: BTreeMap::new(),
        }
    }

    /// Identity of a complex.
    pub fn identity(c: &ProjComplex) -> Self {
        Self::new(
            c.terms
                .iter()
                .map(|(d, v)| (*d, Matrix::identity(v.len())))
                .collect(),
        )
    }

    /// Component in degree `d` for the given source and target.
    pub fn component(&self, d: i64, source: &ProjComplex, target: &ProjComplex) -> Matrix {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(target.term(d).len(), source.term(d).len()))
    }

    /// Degrees carrying nonzero components.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// True when every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Composite `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        let mut out = BTreeMap::new();
        for (d, g) in &self.components {
            if let Some(f) = first.components.get(d) {
                out.insert(*d, g * f);
            }
        }
        Self::new(out)
    }

    /// Sum of two maps with the same source and target.
    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut out = self.components.clone();
        for (d, m) in &other.components {
            let next = match out.remove(d) {
                Some(prev) => &prev + m,
                None => m.clone(),
            };
            out.insert(*d, next);
        }
        Self::new(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> ChainMap {
        Self::new(
            self.components
                .iter()
                .map(|(d, m)| (*d, m.scale(s)))
                .collect(),
        )
    }

    /// Shift `f[k]`, with `f[k]^d = f^{d+k}`.
    pub fn shift(&self, k: i64) -> ChainMap {
        Self {
            components: self
                .components
                .iter()
                .map(|(d, m)| (d - k, m.clone()))
                .collect(),
        }
    }

    /// Block map between direct sums: `blocks[i][j]` goes from source summand `j` to target summand `i`.
    pub fn from_blocks(
        sources: &[ProjComplex],
        targets: &[ProjComplex],
        blocks: &[Vec<ChainMap>],
    ) -> ChainMap {
        let mut degrees: Vec<i64> = sources.iter().flat_map(|c| c.degrees()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut out = BTreeMap::new();
        for d in degrees {
            let rows: usize = targets.iter().map(|t| t.term(d).len()).sum();
            let cols: usize = sources.iter().map(|s| s.term(d).len()).sum();
            let mut m = Matrix::zeros(rows, cols);
            let mut r0 = 0;
            for (i, t) in targets.iter().enumerate() {
                let mut c0 = 0;
                for (j, s) in sources.iter().enumerate() {
                    m.put_block(r0, c0, &blocks[i][j].component(d, s, t));
                    c0 += s.term(d).len();
                }
                r0 += t.term(d).len();
            }
            out.insert(d, m);
        }
        Self::new(out)
    }

    /// Checks supports and the chain-map identity `d_T f = f d_S`.
    pub fn is_chain_map(&self, source: &ProjComplex, target: &ProjComplex) -> bool {
        let mut degrees: Vec<i64> = source.degrees();
        degrees.extend(self.degrees());
        degrees.sort_unstable();
        degrees.dedup();
        for &d in &degrees {
            let f = self.component(d, source, target);
            if f.rows() != target.term(d).len() || f.cols() != source.term(d).len() {
                return false;
            }
            if target
                .check_support(&f, source.term(d), target.term(d), "map")
                .is_err()
            {
                return false;
            }
        }
        degrees.iter().all(|&d| {
            let lhs = &target.diff(d) * &self.component(d, source, target);
            let rhs = &self.component(d + 1, source, target) * &source.diff(d);
            lhs == rhs
        })
    }
}

/// Chain maps `source → target` modulo null-homotopic ones, with a chosen basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    vars: Vec<(i64, usize, usize)>,
    basis: Vec<ChainMap>,
    frame: Matrix,
}

impl HomSpace {
    /// Computes cocycles, coboundaries and a complement basis.
    pub fn new(source: &ProjComplex, target: &ProjComplex) -> Self {
        let poset = source.poset.clone();
        let mut degrees: Vec<i64> = source.degrees();
        degrees.sort_unstable();
        let mut vars = Vec::new();
        for &d in &degrees {
            for (i, &t) in target.term(d).iter().enumerate() {
                for (j, &s) in source.term(d).iter().enumerate() {
                    if poset.leq(t, s) {
                        vars.push((d, i, j));
                    }
                }
            }
        }
        let index: BTreeMap<(i64, usize, usize), usize> =
            vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let nvars = vars.len();

        let mut eq_offset = BTreeMap::new();
        let mut neq = 0;
        let mut eq_degrees: Vec<i64> = degrees.iter().flat_map(|&d| [d - 1, d]).collect();
        eq_degrees.sort_unstable();
        eq_degrees.dedup();
        for &d in &eq_degrees {
            eq_offset.insert(d, neq);
            neq += target.term(d + 1).len() * source.term(d).len();
        }
        let mut eqs = vec![vec![Rational::zero(); nvars]; neq];
        for (k, &(d, i, j)) in vars.iter().enumerate() {
            let dq = target.diff(d);
            let width = source.term(d).len();
            let off = eq_offset[&d];
            for r in 0..dq.rows() {
                let c = dq.get(r, i);
                if !c.is_zero() {
                    eqs[off + r * width + j][k] += c;
                }
            }
            let dp = source.diff(d - 1);
            let width = source.term(d - 1).len();
            let off = eq_offset[&(d - 1)];
            for c in 0..dp.cols() {
                let e = dp.get(j, c);
                if !e.is_zero() {
                    eqs[off + i * width + c][k] -= e;
                }
            }
        }
        let cocycles = if nvars == 0 {
            Vec::new()
        } else if neq == 0 {
            (0..nvars).map(|c| Matrix::identity(nvars).col(c)).collect()
        } else {
            Matrix::from_rows(neq, nvars, eqs).nullspace()
        };

        let mut boundaries = Vec::new();
        let mut h_degrees: Vec<i64> = source.degrees();
        h_degrees.sort_unstable();
        for &d in &h_degrees {
            for (i, &t) in target.term(d - 1).iter().enumerate() {
                for (j, &s) in source.term(d).iter().enumerate() {
                    if !poset.leq(t, s) {
                        continue;
                    }
                    let mut v = vec![Rational::zero(); nvars];
                    let dq = target.diff(d - 1);
                    for r in 0..dq.rows() {
                        let c = dq.get(r, i);
                        if !c.is_zero() {
                            v[index[&(d, r, j)]] += c;
                        }
                    }
                    let dp = source.diff(d - 1);
                    for c in 0..dp.cols() {
                        let e = dp.get(j, c);
                        if !e.is_zero() {
                            v[index[&(d - 1, i, c)]] += e;
                        }
                    }
                    if v.iter().any(|x| !x.is_zero()) {
                        boundaries.push(v);
                    }
                }
            }
        }
        let boundary_basis: Vec<Vec<Rational>> = if boundaries.is_empty() {
            Vec::new()
        } else {
            Matrix::from_columns(nvars, &boundaries)
                .independent_columns()
                .into_iter()
                .map(|c| boundaries[c].clone())
                .collect()
        };
        let mut all = boundary_basis.clone();
        all.extend(cocycles.iter().cloned());
        let pivots = if all.is_empty() {
            Vec::new()
        } else {
            Matrix::from_columns(nvars, &all).independent_columns()
        };
        let chosen: Vec<Vec<Rational>> = pivots
            .into_iter()
            .filter(|&p| p >= boundary_basis.len())
            .map(|p| all[p].clone())
            .collect();
        let mut frame_cols = chosen.clone();
        frame_cols.extend(boundary_basis);
        let frame = Matrix::from_columns(nvars, &frame_cols);
        let mut hs = Self {
            source: source.clone(),
            target: target.clone(),
            vars,
            basis: Vec::new(),
            frame,
        };
        hs.basis = chosen.iter().map(|v| hs.map_from_coordinates(v)).collect();
        hs
    }

    fn map_from_coordinates(&self, v: &[Rational]) -> ChainMap {
        let mut comps: BTreeMap<i64, Matrix> = BTreeMap::new();
        for (k, &(d, i, j)) in self.vars.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let m = comps.entry(d).or_insert_with(|| {
                Matrix::zeros(self.target.term(d).len(), self.source.term(d).len())
            });
            m.set(i, j, v[k].clone());
        }
        ChainMap::new(comps)
    }

    fn to_vector(&self, f: &ChainMap) -> Vec<Rational> {
        self.vars
            .iter()
            .map(|&(d, i, j)| f.component(d, &self.source, &self.target).get(i, j).clone())
            .collect()
    }

    /// Dimension of the homotopy classes.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis representatives.
    pub fn basis(&self) -> &[ChainMap] {
        &self.basis
    }

    /// Source complex.
    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    /// Target complex.
    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    /// Coordinates of the class of a chain map in the chosen basis.
    pub fn coordinates(&self, f: &ChainMap) -> Result<Vec<Rational>> {
        if !f.is_chain_map(&self.source, &self.target) {
            return Err(Error::Structural(
                "not a chain map between these complexes".into(),
            ));
        }
        if self.vars.is_empty() {
            return Ok(Vec::new());
        }
        let v = self.to_vector(f);
        let x = self
            .frame
            .solve(&v)
            .ok_or_else(|| Error::Structural("chain map outside the cocycle space".into()))?;
        Ok(x[..self.basis.len()].to_vec())
    }

    /// True when the map is homotopic to zero.
    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        Ok(self.coordinates(f)?.iter().all(Zero::is_zero))
    }

    /// The chain map with the given coordinates.
    pub fn combination(&self, coefficients: &[Rational]) -> ChainMap {
        self.basis
            .iter()
            .zip(coefficients)
            .fold(ChainMap::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
    }
}

/// The mapping cone of `f: source → target` with its structure maps.
#[derive(Clone, Debug)]
pub struct Cone {
    /// The cone complex, with `C^d = source^{d+1} ⊕ target^d`.
    pub complex: ProjComplex,
    /// The inclusion `target → C`.
    pub inclusion: ChainMap,
    /// The projection `C → source[1]`.
    pub projection: ChainMap,
}

/// Mapping cone with differential `[[-d_S, 0], [f, d_T]]`.
pub fn cone(f: &ChainMap, source: &ProjComplex, target: &ProjComplex) -> Cone {
    let poset = source.poset.clone();
    let mut degrees: Vec<i64> = source.degrees().iter().map(|d| d - 1).collect();
    degrees.extend(target.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    for &d in &degrees {
        let mut v = source.term(d + 1).to_vec();
        v.extend_from_slice(target.term(d));
        terms.insert(d, v);
    }
    let minus = -Rational::one();
    let mut diffs = BTreeMap::new();
    for &d in &degrees {
        let (s1, s2) = (source.term(d + 1).len(), source.term(d + 2).len());
        let (t0, t1) = (target.term(d).len(), target.term(d + 1).len());
        let mut m = Matrix::zeros(s2 + t1, s1 + t0);
        m.put_block(0, 0, &source.diff(d + 1).scale(&minus));
        m.put_block(s2, 0, &f.component(d + 1, source, target));
        m.put_block(s2, s1, &target.diff(d));
        diffs.insert(d, m);
    }
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for &d in &degrees {
        let (s1, t0) = (source.term(d + 1).len(), target.term(d).len());
        let mut i = Matrix::zeros(s1 + t0, t0);
        i.put_block(s1, 0, &Matrix::identity(t0));
        inc.insert(d, i);
        let mut p = Matrix::zeros(s1, s1 + t0);
        p.put_block(0, 0, &Matrix::identity(s1));
        proj.insert(d, p);
    }
    let complex =
        ProjComplex::new(poset, terms, diffs).expect("the cone of a chain map is a complex");
    Cone {
        complex,
        inclusion: ChainMap::new(inc),
        projection: ChainMap::new(proj),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Interval;

    fn two_term(n: usize, top: usize, bottom: usize) -> ProjComplex {
        ProjComplex::new(
            Poset::chain(n),
            BTreeMap::from([(-1, vec![bottom]), (0, vec![top])]),
            BTreeMap::from([(-1, Matrix::identity(1))]),
        )
        .unwrap()
    }

    #[test]
    fn poset_orders() {
        let c = Poset::chain(3);
        assert!(c.leq(0, 2) && !c.leq(2, 0) && c.leq(1, 1));
        let l = Poset::ladder(2);
        assert!(l.leq(0, 3) && l.leq(0, 1) && l.leq(0, 2) && !l.leq(1, 2) && !l.leq(3, 0));
    }

    #[test]
    fn forbidden_entries_are_rejected() {
        let r = ProjComplex::new(
            Poset::chain(2),
            BTreeMap::from([(-1, vec![0]), (0, vec![1])]),
            BTreeMap::from([(-1, Matrix::identity(1))]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn simple_module_resolution_has_one_cohomology() {
        let s1 = two_term(2, 0, 1);
        let h = s1.cohomology().unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(
            h[&0].decompose(),
            BTreeMap::from([(Interval { a: 1, b: 1 }, 1)])
        );
        assert_eq!(s1.dimension_vector(), vec![1, 0]);
    }

    #[test]
    fn hom_spaces_match_interval_modules() {
        let p1 = ProjComplex::new(
            Poset::chain(2),
            BTreeMap::from([(0, vec![0])]),
            BTreeMap::new(),
        )
        .unwrap();
        let s2 = ProjComplex::new(
            Poset::chain(2),
            BTreeMap::from([(0, vec![1])]),
            BTreeMap::new(),
        )
        .unwrap();
        let s1 = two_term(2, 0, 1);
        assert_eq!(HomSpace::new(&p1, &s1).dim(), 1);
        assert_eq!(HomSpace::new(&s1, &p1).dim(), 0);
        assert_eq!(HomSpace::new(&s2, &p1).dim(), 1);
        assert_eq!(HomSpace::new(&p1, &s2).dim(), 0);
        assert_eq!(HomSpace::new(&s1, &s2.shift(1)).dim(), 1);
        assert_eq!(HomSpace::new(&s1, &s1).dim(), 1);
        let id = HomSpace::new(&s1, &s1);
        assert_eq!(id.coordinates(&ChainMap::identity(&s1)).unwrap().len(), 1);
        assert!(!id.is_null_homotopic(&ChainMap::identity(&s1)).unwrap());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let s1 = two_term(3, 0, 2);
        let c = cone(&ChainMap::identity(&s1), &s1, &s1);
        assert!(c.complex.cohomology().unwrap().is_empty());
        assert!(c.inclusion.is_chain_map(&s1, &c.complex));
        assert!(c.projection.is_chain_map(&c.complex, &s1.shift(1)));
        let e = HomSpace::new(&c.complex, &c.complex);
        assert_eq!(e.dim(), 0);
    }

    #[test]
    fn shift_commutes_with_cohomology_degrees() {
        let x = two_term(3, 0, 2);
        let h = x.shift(2).cohomology().unwrap();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![-2]);
        assert_eq!(x.shift(1).shift(-1), x);
    }
}
