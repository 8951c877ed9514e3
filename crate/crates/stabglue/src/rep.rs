//! Representations of the linearly oriented A_n quiver, their interval
//! decomposition, and complexes of representations with their cohomology.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// The interval `[a, b]` of vertices, 1-based, naming the module M[a,b].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    /// First vertex.
    pub a: usize,
    /// Last vertex.
    pub b: usize,
}

impl Interval {
    /// Builds `[a, b]`; requires `1 ≤ a ≤ b ≤ n`.
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if !(1 <= a && a <= b && b <= n) {
            return Err(Error::Structural(format!(
                "interval [{a},{b}] does not fit in A_{n}"
            )));
        }
        Ok(Self { a, b })
    }

    /// Dimension vector entry at vertex `v` (1-based).
    pub fn contains(&self, v: usize) -> bool {
        self.a <= v && v <= self.b
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.b + 1 - self.a
    }

    /// Intervals are never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every interval of A_n in the order `[1,1], [1,2], …, [n,n]`.
    pub fn all(n: usize) -> Vec<Interval> {
        (1..=n)
            .flat_map(|a| (a..=n).map(move |b| Interval { a, b }))
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A representation: spaces `V_1..V_n` and maps `V_i → V_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    /// Validates shapes: `maps[i]` is `dims[i+1] × dims[i]`.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Structural(
                "a representation needs at least one vertex".into(),
            ));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::Structural(format!(
                "{} vertices need {} arrow maps, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return Err(Error::Structural(format!(
                    "arrow {} has shape {}×{}, expected {}×{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(Self { dims, maps })
    }

    /// The zero representation of A_n.
    pub fn zero(n: usize) -> Self {
        Self {
            dims: vec![0; n],
            maps: (1..n).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// The interval module M[a,b].
    pub fn interval(n: usize, iv: Interval) -> Self {
        let dims: Vec<usize> = (1..=n).map(|v| usize::from(iv.contains(v))).collect();
        let maps = (0..n - 1)
            .map(|i| {
                if dims[i] == 1 && dims[i + 1] == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(dims[i + 1], dims[i])
                }
            })
            .collect();
        Self { dims, maps }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Dimension vector.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Arrow maps.
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Total dimension.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Rep) -> Rep {
        assert_eq!(
            self.n(),
            other.n(),
            "direct sum of representations of different quivers"
        );
        Rep {
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// Rank of the composite `V_a → V_b` (1-based, `a ≤ b`); zero outside `1..=n`.
    pub fn composite_rank(&self, a: usize, b: usize) -> usize {
        if a < 1 || b > self.n() || a > b {
            return 0;
        }
        if a == b {
            return self.dims[a - 1];
        }
        let mut m = self.maps[a - 1].clone();
        for i in a..b - 1 {
            m = &self.maps[i] * &m;
        }
        m.rank()
    }

    /// Interval multiplicities by the rank formula.
    pub fn decompose(&self) -> BTreeMap<Interval, usize> {
        let n = self.n();
        let r = |a: usize, b: usize| self.composite_rank(a, b) as i64;
        let mut out = BTreeMap::new();
        for iv in Interval::all(n) {
            let (a, b) = (iv.a, iv.b);
            let m = r(a, b) - r(a, b + 1) - if a > 1 { r(a - 1, b) } else { 0 }
                + if a > 1 { r(a - 1, b + 1) } else { 0 };
            debug_assert!(m >= 0, "negative interval multiplicity");
            if m > 0 {
                out.insert(iv, m as usize);
            }
        }
        out
    }

    /// Reassembles a representation from interval multiplicities.
    pub fn from_intervals(n: usize, parts: &BTreeMap<Interval, usize>) -> Rep {
        let mut acc = Rep::zero(n);
        for (iv, &m) in parts {
            for _ in 0..m {
                acc = acc.direct_sum(&Rep::interval(n, *iv));
            }
        }
        acc
    }

    /// Dimension of the space of representation morphisms `self → other`.
    pub fn hom_dim(&self, other: &Rep) -> usize {
        let n = self.n();
        let mut offsets = Vec::with_capacity(n);
        let mut nvars = 0;
        for v in 0..n {
            offsets.push(nvars);
            nvars += self.dims[v] * other.dims[v];
        }
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * self.dims[v] + c;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let src = &self.maps[i];
            let tgt = &other.maps[i];
            for r in 0..other.dims[i + 1] {
                for c in 0..self.dims[i] {
                    let mut eq = vec![Rational::zero(); nvars];
                    for k in 0..other.dims[i] {
                        eq[var(i, k, c)] += tgt.get(r, k);
                    }
                    for k in 0..self.dims[i + 1] {
                        eq[var(i + 1, r, k)] -= src.get(k, c);
                    }
                    rows.push(eq);
                }
            }
        }
        if rows.is_empty() {
            return nvars;
        }
        let m = Matrix::from_rows(rows.len(), nvars, rows);
        nvars - m.rank()
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    components: Vec<Matrix>,
}

impl RepMap {
    /// Wraps per-vertex matrices.
    pub fn new(components: Vec<Matrix>) -> Self {
        Self { components }
    }

    /// Zero morphism between two representations.
    pub fn zero(source: &Rep, target: &Rep) -> Self {
        Self {
            components: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(t, s))
                .collect(),
        }
    }

    /// Component at vertex `v` (0-based).
    pub fn at(&self, v: usize) -> &Matrix {
        &self.components[v]
    }

    /// Checks commutativity with the arrow maps.
    pub fn is_morphism(&self, source: &Rep, target: &Rep) -> bool {
        (0..source.n().saturating_sub(1)).all(|i| {
            &target.maps[i] * &self.components[i] == &self.components[i + 1] * &source.maps[i]
        })
    }

    /// Composite `self ∘ first`.
    pub fn after(&self, first: &RepMap) -> RepMap {
        RepMap {
            components: self
                .components
                .iter()
                .zip(&first.components)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// A bounded complex of representations with differentials `T^d → T^{d+1}`.
#[derive(Clone, Debug)]
pub struct RepComplex {
    n: usize,
    terms: BTreeMap<i64, Rep>,
    diffs: BTreeMap<i64, RepMap>,
}

impl RepComplex {
    /// Validates that each differential is a morphism and that consecutive ones compose to zero.
    pub fn new(n: usize, terms: BTreeMap<i64, Rep>, diffs: BTreeMap<i64, RepMap>) -> Result<Self> {
        let c = Self { n, terms, diffs };
        for (d, map) in &c.diffs {
            let (s, t) = (c.term(*d), c.term(d + 1));
            for v in 0..n {
                let m = map.at(v);
                if m.rows() != t.dims[v] || m.cols() != s.dims[v] {
                    return Err(Error::Structural(format!(
                        "differential {d} has wrong shape at vertex {}",
                        v + 1
                    )));
                }
            }
            if !map.is_morphism(&s, &t) {
                return Err(Error::Structural(format!(
                    "differential {d} is not a morphism"
                )));
            }
            if let Some(next) = c.diffs.get(&(d + 1)) {
                if !(0..n).all(|v| (next.at(v) * map.at(v)).is_zero()) {
                    return Err(Error::Structural(format!("d∘d ≠ 0 at degree {d}")));
                }
            }
        }
        Ok(c)
    }

    /// Term in degree `d`, zero when absent.
    pub fn term(&self, d: i64) -> Rep {
        self.terms
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Rep::zero(self.n))
    }

    fn diff_at(&self, d: i64, v: usize) -> Matrix {
        match self.diffs.get(&d) {
            Some(m) => m.at(v).clone(),
            None => Matrix::zeros(self.term(d + 1).dims[v], self.term(d).dims[v]),
        }
    }

    /// Cohomology representations, keyed by degree, zero ones omitted.
    pub fn cohomology(&self) -> BTreeMap<i64, Rep> {
        let mut degrees: Vec<i64> = self.terms.keys().copied().collect();
        degrees.sort_unstable();
        let mut out = BTreeMap::new();
        for d in degrees {
            let term = self.term(d);
            let mut bases: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(self.n);
            let mut images: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let dim = term.dims[v];
                let incoming = self.diff_at(d - 1, v);
                let outgoing = self.diff_at(d, v);
                let image: Vec<Vec<Rational>> =
                    (0..incoming.cols()).map(|c| incoming.col(c)).collect();
                let image_cols = Matrix::from_columns(dim, &image);
                let independent: Vec<Vec<Rational>> = image_cols
                    .independent_columns()
                    .into_iter()
                    .map(|c| image[c].clone())
                    .collect();
                let kernel = if outgoing.rows() == 0 {
                    (0..dim)
                        .map(|i| {
                            let mut e = vec![Rational::zero(); dim];
                            e[i] = num_traits::One::one();
                            e
                        })
                        .collect()
                } else {
                    outgoing.nullspace()
                };
                let mut all = independent.clone();
                all.extend(kernel.iter().cloned());
                let pivots = Matrix::from_columns(dim, &all).independent_columns();
                let basis: Vec<Vec<Rational>> = pivots
                    .into_iter()
                    .filter(|&p| p >= independent.len())
                    .map(|p| all[p].clone())
                    .collect();
                bases.push(basis);
                images.push(independent);
            }
            let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
            if dims.iter().all(|&x| x == 0) {
                continue;
            }
            let mut maps = Vec::with_capacity(self.n.saturating_sub(1));
            for v in 0..self.n.saturating_sub(1) {
                let structure = &term.maps[v];
                let target_dim = term.dims[v + 1];
                let mut frame = bases[v + 1].clone();
                frame.extend(images[v + 1].iter().cloned());
                let frame = Matrix::from_columns(target_dim, &frame);
                let mut m = Matrix::zeros(dims[v + 1], dims[v]);
                for (j, b) in bases[v].iter().enumerate() {
                    let y = structure.apply(b);
                    let x = frame.solve(&y).expect("a cocycle maps to a cocycle");
                    for (i, xi) in x.iter().enumerate().take(dims[v + 1]) {
                        m.set(i, j, xi.clone());
                    }
                }
                maps.push(m);
            }
            out.insert(d, Rep { dims, maps });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decomposition_examples() {
        let p1 = Rep::new(vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        assert_eq!(
            p1.decompose(),
            BTreeMap::from([(Interval { a: 1, b: 2 }, 1)])
        );
        let split = Rep::new(vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(
            split.decompose(),
            BTreeMap::from([(Interval { a: 1, b: 1 }, 1), (Interval { a: 2, b: 2 }, 1)])
        );
        let proj = Rep::new(vec![2, 1], vec![Matrix::from_i64(1, 2, &[&[1, 0]])]).unwrap();
        assert_eq!(
            proj.decompose(),
            BTreeMap::from([(Interval { a: 1, b: 1 }, 1), (Interval { a: 1, b: 2 }, 1)])
        );
        assert!(Rep::new(vec![1, 1], vec![Matrix::zeros(2, 1)]).is_err());
    }

    #[test]
    fn commuting_square_hom_examples() {
        let p1 = Rep::interval(2, Interval { a: 1, b: 2 });
        let s2 = Rep::interval(2, Interval { a: 2, b: 2 });
        let s1 = Rep::interval(2, Interval { a: 1, b: 1 });
        assert_eq!(p1.hom_dim(&s2), 0);
        assert_eq!(s2.hom_dim(&p1), 1);
        assert_eq!(p1.hom_dim(&s1), 1);
        assert_eq!(p1.hom_dim(&p1), 1);
    }

    #[test]
    fn cohomology_of_a_projective_resolution() {
        let p2 = Rep::interval(2, Interval { a: 2, b: 2 });
        let p1 = Rep::interval(2, Interval { a: 1, b: 2 });
        let map = RepMap::new(vec![Matrix::zeros(1, 0), Matrix::identity(1)]);
        let c = RepComplex::new(
            2,
            BTreeMap::from([(-1, p2), (0, p1)]),
            BTreeMap::from([(-1, map)]),
        )
        .unwrap();
        let h = c.cohomology();
        assert_eq!(h.len(), 1);
        assert_eq!(
            h[&0].decompose(),
            BTreeMap::from([(Interval { a: 1, b: 1 }, 1)])
        );
    }

    fn multiset(n: usize) -> impl Strategy<Value = BTreeMap<Interval, usize>> {
        let intervals = Interval::all(n);
        proptest::collection::vec(0usize..3, intervals.len()).prop_map(move |counts| {
            intervals
                .iter()
                .zip(counts)
                .filter(|(_, c)| *c > 0)
                .map(|(iv, c)| (*iv, c))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn decompose_inverts_reassembly(parts in (1usize..5).prop_flat_map(multiset)) {
            let n = parts.keys().map(|iv| iv.b).max().unwrap_or(1).max(1);
            let total: usize = parts.iter().map(|(iv, m)| iv.len() * m).sum();
            prop_assume!(total <= 12);
            let rep = Rep::from_intervals(n, &parts);
            prop_assert_eq!(rep.decompose(), parts);
        }

        #[test]
        fn decomposition_survives_change_of_basis(a in -2i64..3, b in -2i64..3) {
            let g = Matrix::from_i64(2, 2, &[&[1, a], &[0, 1]]);
            let h = Matrix::from_i64(2, 2, &[&[1, 0], &[b, 1]]);
            let f = Matrix::from_i64(2, 2, &[&[1, 0], &[0, 0]]);
            let conj = &(&h * &f) * &g.inverse().unwrap();
            let rep = Rep::new(vec![2, 2], vec![conj]).unwrap();
            let expected = BTreeMap::from([
                (Interval { a: 1, b: 1 }, 1),
                (Interval { a: 1, b: 2 }, 1),
                (Interval { a: 2, b: 2 }, 1),
            ]);
            prop_assert_eq!(rep.decompose(), expected);
        }
    }
}
