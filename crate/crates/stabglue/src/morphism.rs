//! The category of morphisms over the type-A derived category: objects are
//! arrows `f: x → y`, modelled as complexes of projectives over the product
//! of the quiver with a single arrow.
//!
//! Column 0 of the ladder carries the source `x` and column 1 the target `y`.
//! The object `[f]` is represented by the cone of
//! `(ι, -f): target_only(x) → identity_arrow(x) ⊕ target_only(y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::antype::{hom_basis, hom_dim, DObject, Indec, K0Class, Morphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::{cone, ChainMap, HomSpace, Poset, ProjComplex};
use crate::rep::Interval;
use crate::scalar::Rational;

/// An object `[f: x → y]` of the morphism category.
#[derive(Clone, Debug)]
pub struct MorObject {
    arrow: Morphism,
}

impl PartialEq for MorObject {
    fn eq(&self, other: &Self) -> bool {
        self.x() == other.x()
            && self.y() == other.y()
            && self.arrow.coordinates() == other.arrow.coordinates()
    }
}

impl MorObject {
    /// Wraps an arrow.
    pub fn new(arrow: Morphism) -> Self {
        Self { arrow }
    }

    /// Source object.
    pub fn x(&self) -> &DObject {
        self.arrow.source()
    }

    /// Target object.
    pub fn y(&self) -> &DObject {
        self.arrow.target()
    }

    /// The arrow itself.
    pub fn arrow(&self) -> &Morphism {
        &self.arrow
    }

    /// Number of vertices of the underlying quiver.
    pub fn n(&self) -> usize {
        self.x().n()
    }

    /// True when both endpoints vanish.
    pub fn is_zero(&self) -> bool {
        self.x().is_zero() && self.y().is_zero()
    }

    /// Grothendieck class `([x], [y])`.
    pub fn k0(&self) -> (K0Class, K0Class) {
        (self.x().k0(), self.y().k0())
    }

    /// Shift `[f][k] = [f[k]]`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            arrow: self.arrow.shift(k),
        }
    }

    /// Direct sum of arrows.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            arrow: morphism_direct_sum(&self.arrow, &other.arrow),
        }
    }

    /// Chain-level model over the ladder poset.
    pub fn grid_complex(&self) -> ProjComplex {
        let n = self.n();
        let x = self.x().complex();
        let y = self.y().complex();
        let jx = embed_column(&x, n, 1);
        let sx = embed_column(&x, n, 0);
        let jy = embed_column(&y, n, 1);
        let minus_f = self.arrow.chain_map().scale(&-Rational::one());
        let map = ChainMap::from_blocks(
            std::slice::from_ref(&jx),
            &[sx.clone(), jy.clone()],
            &[vec![ChainMap::identity(&x)], vec![minus_f]],
        );
        cone(&map, &jx, &sx.direct_sum(&jy)).complex
    }
}

impl fmt::Display for MorObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .arrow
            .coordinates()
            .iter()
            .map(crate::scalar::format_rational)
            .collect();
        write!(
            f,
            "mor({}; {}; f=[{}])",
            self.x(),
            self.y(),
            coords.join(",")
        )
    }
}

/// Parses `mor(x; y; f=basis#k)`, `mor(x; y; f=0)`, `mor(x; y; f=id)` or
/// `mor(x; y; f=[c1,c2,…])` with coordinates in the Hom basis.
pub fn parse_mor(text: &str, n: usize) -> Result<MorObject> {
    let bad = || Error::Parse(format!("not a morphism literal: {text:?}"));
    let body = text
        .trim()
        .strip_prefix("mor(")
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut fields = body.split(';');
    let x = DObject::parse(fields.next().ok_or_else(bad)?, n)?;
    let y = DObject::parse(fields.next().ok_or_else(bad)?, n)?;
    let spec = fields.next().ok_or_else(bad)?.trim();
    if fields.next().is_some() {
        return Err(bad());
    }
    let spec = spec.strip_prefix("f=").ok_or_else(bad)?.trim();
    let basis = hom_basis(&x, &y);
    let arrow = if spec == "0" {
        Morphism::zero(&x, &y)
    } else if spec == "id" {
        if x != y {
            return Err(Error::Parse("f=id needs equal endpoints".into()));
        }
        Morphism::identity(&x)
    } else if let Some(k) = spec.strip_prefix("basis#") {
        let k: usize = k.parse().map_err(|_| bad())?;
        basis.get(k).cloned().ok_or_else(|| {
            Error::Parse(format!("Hom has dimension {}, no basis#{k}", basis.len()))
        })?
    } else if let Some(list) = spec.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
        let coeffs: Vec<Rational> = if list.trim().is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|c| crate::scalar::parse_rational(c.trim()))
                .collect::<Result<_>>()?
        };
        crate::antype::morphism_from_coordinates(&x, &y, &coeffs)?
    } else {
        return Err(bad());
    };
    Ok(MorObject::new(arrow))
}

/// Places a complex over the chain in one column of the ladder.
pub fn embed_column(c: &ProjComplex, n: usize, column: usize) -> ProjComplex {
    c.restrict(Poset::ladder(n), |_| true, |i| column * n + i)
        .expect("columns of the ladder are chains")
}

/// Restricts a ladder complex to one column.
pub fn restrict_column(c: &ProjComplex, n: usize, column: usize) -> ProjComplex {
    let keep = move |w: usize| column == 1 || w / n == 0;
    c.restrict(Poset::chain(n), keep, move |w| w % n)
        .expect("restriction of projectives is projective")
}

fn restrict_map(
    f: &ChainMap,
    source: &ProjComplex,
    target: &ProjComplex,
    n: usize,
    column: usize,
) -> ChainMap {
    let keep = move |w: usize| column == 1 || w / n == 0;
    let mut out = BTreeMap::new();
    for d in f.degrees() {
        let rows = target.kept_indices(d, keep);
        let cols = source.kept_indices(d, keep);
        out.insert(d, f.component(d, source, target).select(&rows, &cols));
    }
    ChainMap::new(out)
}

/// Direct sum of two morphisms in normal-form summand order.
pub fn morphism_direct_sum(f: &Morphism, g: &Morphism) -> Morphism {
    let source = f.source().direct_sum(g.source());
    let target = f.target().direct_sum(g.target());
    let tag = |a: &DObject, b: &DObject| -> Vec<(usize, usize)> {
        let mut tagged: Vec<(Indec, usize, usize)> = a
            .summands()
            .into_iter()
            .enumerate()
            .map(|(i, x)| (x, 0, i))
            .chain(b.summands().into_iter().enumerate().map(|(i, x)| (x, 1, i)))
            .collect();
        tagged.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
        tagged.into_iter().map(|(_, side, i)| (side, i)).collect()
    };
    let src_tags = tag(f.source(), g.source());
    let tgt_tags = tag(f.target(), g.target());
    let n = source.n();
    let src_parts: Vec<ProjComplex> = source
        .summands()
        .iter()
        .map(|x| crate::antype::indec_complex(n, x))
        .collect();
    let tgt_parts: Vec<ProjComplex> = target
        .summands()
        .iter()
        .map(|x| crate::antype::indec_complex(n, x))
        .collect();
    let blocks: Vec<Vec<ChainMap>> = tgt_tags
        .iter()
        .map(|&(ts, ti)| {
            src_tags
                .iter()
                .map(|&(ss, si)| match (ts, ss) {
                    (0, 0) => f.block(ti, si),
                    (1, 1) => g.block(ti, si),
                    _ => ChainMap::zero(),
                })
                .collect()
        })
        .collect();
    let map = ChainMap::from_blocks(&src_parts, &tgt_parts, &blocks);
    Morphism::new(source, target, map).expect("block sums of chain maps are chain maps")
}

/// `identity_arrow(z) = [id: z → z]`.
pub fn identity_arrow(z: &DObject) -> MorObject {
    MorObject::new(Morphism::identity(z))
}

/// `source_only(y) = [y → 0]`.
pub fn source_only(y: &DObject) -> MorObject {
    MorObject::new(Morphism::zero(y, &DObject::zero(y.n())))
}

/// `target_only(z) = [0 → z]`.
pub fn target_only(z: &DObject) -> MorObject {
    MorObject::new(Morphism::zero(&DObject::zero(z.n()), z))
}

/// Evaluation at the target.
pub fn target_of(m: &MorObject) -> DObject {
    m.y().clone()
}

/// Evaluation at the source.
pub fn source_of(m: &MorObject) -> DObject {
    m.x().clone()
}

/// Chain maps modulo homotopy between the ladder models.
pub fn mor_hom_space(m1: &MorObject, m2: &MorObject) -> HomSpace {
    HomSpace::new(&m1.grid_complex(), &m2.grid_complex())
}

/// `dim Hom(m1, m2)` in the morphism category.
pub fn mor_hom_dim(m1: &MorObject, m2: &MorObject) -> usize {
    mor_hom_space(m1, m2).dim()
}

/// Dimension of the maps `m1 → m2` whose source and target components both vanish.
pub fn vanishing_component_dim(m1: &MorObject, m2: &MorObject) -> usize {
    let n = m1.n();
    let (g1, g2) = (m1.grid_complex(), m2.grid_complex());
    let hs = HomSpace::new(&g1, &g2);
    if hs.dim() == 0 {
        return 0;
    }
    let columns: Vec<HomSpace> = (0..2)
        .map(|c| HomSpace::new(&restrict_column(&g1, n, c), &restrict_column(&g2, n, c)))
        .collect();
    let rows: Vec<Vec<Rational>> = hs
        .basis()
        .iter()
        .map(|tau| {
            let mut coords = Vec::new();
            for (c, h) in columns.iter().enumerate() {
                let r = restrict_map(tau, &g1, &g2, n, c);
                coords.extend(h.coordinates(&r).expect("restriction preserves chain maps"));
            }
            coords
        })
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 {
        return hs.dim();
    }
    let m = Matrix::from_rows(rows.len(), width, rows);
    hs.dim() - m.rank()
}

/// Upper bound for [`vanishing_component_dim`]: `dim Hom(d1 m1, d0 m2[-1])`.
pub fn vanishing_component_bound(m1: &MorObject, m2: &MorObject) -> usize {
    hom_dim(m1.x(), &m2.y().shift(-1))
}

/// Which of the two semiorthogonal decompositions is in use.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SodSide {
    /// First factor the identity arrows, second factor the objects `[y → 0]`.
    Sod0,
    /// First factor the objects `[0 → z]`, second factor the identity arrows.
    Sod1,
}

impl SodSide {
    /// Stable name.
    pub fn name(&self) -> &'static str {
        match self {
            SodSide::Sod0 => "sod0",
            SodSide::Sod1 => "sod1",
        }
    }
}

impl std::str::FromStr for SodSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sod0" | "0" => Ok(SodSide::Sod0),
            "sod1" | "1" => Ok(SodSide::Sod1),
            other => Err(Error::Parse(format!("unknown decomposition {other:?}"))),
        }
    }
}

/// Truncations of an object with respect to a decomposition, as objects of `C`.
#[derive(Clone, Debug)]
pub struct Truncations {
    /// Image of the object under the left adjoint onto the first factor.
    pub first: DObject,
    /// Image of the object under the right adjoint onto the second factor.
    pub second: DObject,
}

/// The two truncations, identified with objects of `C`.
pub fn truncations(m: &MorObject, side: SodSide) -> Truncations {
    match side {
        SodSide::Sod0 => Truncations {
            first: m.y().clone(),
            second: m.arrow().fiber(),
        },
        SodSide::Sod1 => Truncations {
            first: m.arrow().cone(),
            second: m.x().clone(),
        },
    }
}

/// Inclusion of the first factor.
pub fn include_first(z: &DObject, side: SodSide) -> MorObject {
    match side {
        SodSide::Sod0 => identity_arrow(z),
        SodSide::Sod1 => target_only(z),
    }
}

/// Inclusion of the second factor.
pub fn include_second(z: &DObject, side: SodSide) -> MorObject {
    match side {
        SodSide::Sod0 => source_only(z),
        SodSide::Sod1 => identity_arrow(z),
    }
}

/// The decomposition triangle `i₂τ₂(m) → m → i₁τ₁(m)`.
#[derive(Clone, Debug)]
pub struct SodTriangle {
    /// Second-factor part.
    pub second: MorObject,
    /// The object.
    pub middle: MorObject,
    /// First-factor part.
    pub first: MorObject,
}

/// Decomposition triangle of `m`.
pub fn sod_triangle(m: &MorObject, side: SodSide) -> SodTriangle {
    let t = truncations(m, side);
    SodTriangle {
        second: include_second(&t.second, side),
        middle: m.clone(),
        first: include_first(&t.first, side),
    }
}

/// The gluing functor on objects: the shift by one.
pub fn gluing_functor_image(e2: &DObject) -> DObject {
    e2.shift(1)
}

/// The triangle `Φ(τ₂ m)[-1] → τ₁ᴿ m → τ₁ m` of first-factor objects.
#[derive(Clone, Debug)]
pub struct RightTruncationTriangle {
    /// `Φ(τ₂ m)[-1]`.
    pub glued_second: DObject,
    /// Right adjoint onto the first factor.
    pub right: DObject,
    /// Left adjoint onto the first factor.
    pub left: DObject,
}

/// Triangle relating the two adjoints onto the first factor.
pub fn right_truncation_triangle(m: &MorObject, side: SodSide) -> RightTruncationTriangle {
    let t = truncations(m, side);
    let right = match side {
        SodSide::Sod0 => source_of(m),
        SodSide::Sod1 => target_of(m),
    };
    RightTruncationTriangle {
        glued_second: gluing_functor_image(&t.second).shift(-1),
        right,
        left: t.first,
    }
}

/// Equivalence between the morphism category over `D^b(k)` and `D^b(A_2)`.
pub fn to_a2(m: &MorObject) -> Result<DObject> {
    if m.n() != 1 {
        return Err(Error::Unsupported(
            "only the morphism category over a point is modelled on A_2".into(),
        ));
    }
    let c = m.grid_complex().with_poset(Poset::chain(2))?;
    DObject::from_complex(&c)
}

/// Inverse of [`to_a2`] on normal forms.
pub fn from_a2(e: &DObject) -> Result<MorObject> {
    if e.n() != 2 {
        return Err(Error::Unsupported("expected an object of D^b(A_2)".into()));
    }
    let mut acc = MorObject::new(Morphism::zero(&DObject::zero(1), &DObject::zero(1)));
    for x in e.summands() {
        let k = DObject::indec(1, Indec::new(Interval { a: 1, b: 1 }, x.shift));
        let piece = match (x.interval.a, x.interval.b) {
            (1, 1) => source_only(&k),
            (2, 2) => target_only(&k),
            _ => identity_arrow(&k),
        };
        acc = acc.direct_sum(&piece);
    }
    Ok(acc)
}

/// Every arrow between corpus objects: zero, identity when defined, and each basis map.
pub fn mor_corpus(objects: &[DObject]) -> Vec<MorObject> {
    let mut out = Vec::new();
    for x in objects.iter() {
        for y in objects.iter() {
            out.push(MorObject::new(Morphism::zero(x, y)));
            if x == y {
                out.push(MorObject::new(Morphism::identity(x)));
            }
            for b in hom_basis(x, y) {
                out.push(MorObject::new(b));
            }
        }
    }
    out
}

/// True when a morphism of the category of arrows vanishes after forgetting to both ends.
pub fn coordinates_vanish(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(shift: i64) -> DObject {
        DObject::interval(1, 1, 1, shift).unwrap()
    }

    #[test]
    fn point_model_matches_a2() {
        assert_eq!(
            to_a2(&identity_arrow(&k(0))).unwrap(),
            DObject::parse("I[1,2]@0", 2).unwrap()
        );
        assert_eq!(
            to_a2(&target_only(&k(0))).unwrap(),
            DObject::parse("I[2,2]@0", 2).unwrap()
        );
        assert_eq!(
            to_a2(&source_only(&k(0))).unwrap(),
            DObject::parse("I[1,1]@0", 2).unwrap()
        );
        assert_eq!(
            to_a2(&source_only(&k(3))).unwrap(),
            DObject::parse("I[1,1]@3", 2).unwrap()
        );
        for e in crate::antype::corpus(2, 3, -1..=1) {
            assert_eq!(to_a2(&from_a2(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn functor_examples() {
        let y = DObject::parse("I[1,2]@0", 2).unwrap();
        assert_eq!(target_of(&target_only(&y)), y);
        assert_eq!(source_of(&identity_arrow(&y)), y);
        assert_eq!(target_of(&identity_arrow(&y)), y);
        assert_eq!(source_of(&source_only(&y)), y);
        assert!(source_only(&DObject::zero(2)).is_zero());
        assert_eq!(gluing_functor_image(&y.shift(-1)), y);
    }

    #[test]
    fn sod_triangle_examples() {
        let z = k(0);
        let t = sod_triangle(&identity_arrow(&z), SodSide::Sod0);
        assert!(t.second.is_zero());
        assert_eq!(t.first, identity_arrow(&z));
        let t = sod_triangle(&target_only(&z), SodSide::Sod0);
        assert_eq!(t.second, source_only(&z.shift(-1)));
        assert_eq!(t.first, identity_arrow(&z));
        let t = sod_triangle(&source_only(&z), SodSide::Sod1);
        assert_eq!(t.second, identity_arrow(&z));
        assert_eq!(t.first, target_only(&z.shift(1)));
    }

    #[test]
    fn hom_examples() {
        let z = k(0);
        assert_eq!(mor_hom_dim(&identity_arrow(&z), &identity_arrow(&z)), 1);
        assert_eq!(
            mor_hom_dim(&source_only(&z), &target_only(&z)),
            hom_dim(&z, &z.shift(-1))
        );
        let s1 = DObject::parse("I[1,1]@0", 2).unwrap();
        let s2 = DObject::parse("I[2,2]@0", 2).unwrap();
        let m1 = source_only(&s1);
        let m2 = target_only(&s2);
        assert_eq!(vanishing_component_bound(&m1, &m2), 0);
        assert_eq!(vanishing_component_dim(&m1, &m2), 0);
    }

    #[test]
    fn literals_round_trip() {
        let m = parse_mor("mor(I[1,2]@0; I[1,1]@0; f=basis#0)", 2).unwrap();
        assert_eq!(m.arrow().coordinates().len(), 1);
        let again = parse_mor(&m.to_string(), 2).unwrap();
        assert_eq!(again, m);
        assert!(parse_mor("mor(I[1,2]@0; I[2,2]@0; f=basis#0)", 2).is_err());
        assert_eq!(
            parse_mor("mor(I[1,1]@0; I[1,1]@0; f=id)", 2)
                .unwrap()
                .x()
                .total_dim(),
            1
        );
    }
}
