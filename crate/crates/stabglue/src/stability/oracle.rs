//! Exhaustive reference computations of Harder–Narasimhan filtrations, used
//! to cross-check the filtration engine on small objects.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;

use crate::antype::{hom_basis, DObject, Indec, K0Class, Morphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::Interval;
use crate::scalar::Rational;

use super::charge::{CentralCharge, Phase};
use super::heart::Heart;

/// A filtration factor reported by an oracle: the class of the unshifted
/// heart object and its phase.
#[derive(Clone, Debug)]
pub struct OracleFactor {
    /// Class of the factor.
    pub class: K0Class,
    /// Phase of the factor.
    pub phase: Phase,
}

/// A subobject of a heart object with a chosen monomorphism.
#[derive(Clone, Debug)]
pub struct LatticeElement {
    /// The subobject.
    pub object: DObject,
    /// Its inclusion.
    pub inclusion: Morphism,
}

fn coefficient_vectors(d: usize) -> impl Iterator<Item = Vec<Rational>> {
    (1u32..(1 << d)).map(move |mask| {
        (0..d)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect()
    })
}

/// Factorization `a = b ∘ h` of one inclusion through another, if it exists.
pub fn factor_through(a: &LatticeElement, b: &LatticeElement) -> Result<Option<Morphism>> {
    if a.object.is_zero() {
        return Ok(Some(Morphism::zero(&a.object, &b.object)));
    }
    let target = a.inclusion.coordinates();
    let basis = hom_basis(&a.object, &b.object);
    if basis.is_empty() {
        return Ok(None);
    }
    let mut columns = Vec::new();
    for h in &basis {
        columns.push(b.inclusion.after(h)?.coordinates());
    }
    let m = Matrix::from_columns(target.len(), &columns);
    let Some(c) = m.solve(&target) else {
        return Ok(None);
    };
    let mut acc = Morphism::zero(&a.object, &b.object);
    for (h, x) in basis.iter().zip(&c) {
        acc = acc.add(&h.scale(x))?;
    }
    Ok(Some(acc))
}

/// Every subobject of an indecomposable heart object, up to equality of
/// subobjects: sums of catalog objects with multiplicity at most two mapped
/// in by every 0/1 combination of basis maps, kept when the cone lies in
/// the heart.
pub fn sub_lattice(heart: &Heart, x: &Indec) -> Result<Vec<LatticeElement>> {
    let n = heart.n();
    let whole = DObject::indec(n, *x);
    let total = heart.length(&whole);
    let mut out = vec![
        LatticeElement {
            object: DObject::zero(n),
            inclusion: Morphism::zero(&DObject::zero(n), &whole),
        },
        LatticeElement {
            object: whole.clone(),
            inclusion: Morphism::identity(&whole),
        },
    ];
    let pool: Vec<(Indec, i64)> = heart
        .catalog()
        .iter()
        .filter(|y| *y != x)
        .map(|y| (*y, heart.length(&DObject::indec(n, *y))))
        .filter(|(_, len)| *len < total)
        .collect();
    let mut multiplicities = vec![0usize; pool.len()];
    loop {
        let mut i = 0;
        while i < pool.len() && multiplicities[i] == 2 {
            multiplicities[i] = 0;
            i += 1;
        }
        if i == pool.len() {
            break;
        }
        multiplicities[i] += 1;
        let len: i64 = pool
            .iter()
            .zip(&multiplicities)
            .map(|(p, &m)| p.1 * m as i64)
            .sum();
        if len >= total {
            continue;
        }
        let mut summands = Vec::new();
        for (p, &m) in pool.iter().zip(&multiplicities) {
            summands.extend(std::iter::repeat_n(p.0, m));
        }
        let source = DObject::from_summands(n, &summands)?;
        let basis = hom_basis(&source, &whole);
        for coeffs in coefficient_vectors(basis.len()) {
            let mut g = Morphism::zero(&source, &whole);
            for (b, c) in basis.iter().zip(&coeffs) {
                if !c.is_zero() {
                    g = g.add(b)?;
                }
            }
            if !heart.contains(&g.cone())? {
                continue;
            }
            let candidate = LatticeElement {
                object: source.clone(),
                inclusion: g,
            };
            let mut duplicate = false;
            for existing in &out {
                if existing.object.k0() == candidate.object.k0()
                    && factor_through(&candidate, existing)?.is_some()
                    && factor_through(existing, &candidate)?.is_some()
                {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

struct SummandLattice {
    elements: Vec<LatticeElement>,
    quotients: Vec<Vec<Option<DObject>>>,
}

fn summand_lattice(heart: &Heart, x: &Indec) -> Result<SummandLattice> {
    let elements = sub_lattice(heart, x)?;
    let mut quotients = vec![vec![None; elements.len()]; elements.len()];
    for (i, a) in elements.iter().enumerate() {
        for (k, b) in elements.iter().enumerate() {
            if let Some(h) = factor_through(a, b)? {
                quotients[i][k] = Some(h.cone());
            }
        }
    }
    Ok(SummandLattice {
        elements,
        quotients,
    })
}

/// Exhaustive filtration search on one heart: enumerates every chain of
/// subobjects whose factors are semistable of strictly decreasing phase.
pub struct BruteForce<'a> {
    heart: &'a Heart,
    charge: &'a CentralCharge,
    lattices: HashMap<Indec, std::rc::Rc<SummandLattice>>,
    semistable: HashMap<DObject, bool>,
}

impl<'a> BruteForce<'a> {
    /// Oracle for one heart and charge.
    pub fn new(heart: &'a Heart, charge: &'a CentralCharge) -> Self {
        Self {
            heart,
            charge,
            lattices: HashMap::new(),
            semistable: HashMap::new(),
        }
    }

    fn lattice(&mut self, x: &Indec) -> Result<std::rc::Rc<SummandLattice>> {
        if let Some(l) = self.lattices.get(x) {
            return Ok(l.clone());
        }
        let l = std::rc::Rc::new(summand_lattice(self.heart, x)?);
        self.lattices.insert(*x, l.clone());
        Ok(l)
    }

    fn phase(&self, e: &DObject) -> Phase {
        self.charge.phase_of_class(&e.k0(), 0)
    }

    /// Semistability by comparing against every subobject of every summand
    /// combination.
    pub fn is_semistable(&mut self, g: &DObject) -> Result<bool> {
        if let Some(&b) = self.semistable.get(g) {
            return Ok(b);
        }
        let summands = g.summands();
        let lattices = summands
            .iter()
            .map(|x| self.lattice(x))
            .collect::<Result<Vec<_>>>()?;
        let phase = self.phase(g);
        let mut index = vec![0usize; summands.len()];
        let mut stable = true;
        'outer: loop {
            let mut i = 0;
            loop {
                if i == index.len() {
                    break 'outer;
                }
                index[i] += 1;
                if index[i] < lattices[i].elements.len() {
                    break;
                }
                index[i] = 0;
                i += 1;
            }
            let mut class = K0Class::zero(g.n());
            for (l, &k) in lattices.iter().zip(&index) {
                class = &class + &l.elements[k].object.k0();
            }
            if class.is_zero() {
                continue;
            }
            let sub = self.charge.phase_of_class(&class, 0);
            if self.charge.cmp_phase(&sub, &phase)? == Ordering::Greater {
                stable = false;
                break;
            }
        }
        self.semistable.insert(g.clone(), stable);
        Ok(stable)
    }

    /// Every filtration of a heart object with semistable factors of
    /// strictly decreasing phase.
    pub fn filtrations(&mut self, e: &DObject) -> Result<Vec<Vec<OracleFactor>>> {
        if !self.heart.contains(e)? {
            return Err(Error::Domain(format!("{e} is not a heart object")));
        }
        let summands = e.summands();
        let lattices = summands
            .iter()
            .map(|x| self.lattice(x))
            .collect::<Result<Vec<_>>>()?;
        let top: Vec<usize> = vec![1; summands.len()];
        let mut out = Vec::new();
        let mut chain = Vec::new();
        self.extend(
            &lattices,
            &vec![0; summands.len()],
            &top,
            None,
            &mut chain,
            &mut out,
        )?;
        Ok(out)
    }

    fn extend(
        &mut self,
        lattices: &[std::rc::Rc<SummandLattice>],
        state: &[usize],
        top: &[usize],
        last: Option<Phase>,
        chain: &mut Vec<OracleFactor>,
        out: &mut Vec<Vec<OracleFactor>>,
    ) -> Result<()> {
        if state == top {
            out.push(chain.clone());
            return Ok(());
        }
        let n = self.heart.n();
        let mut next = vec![0usize; state.len()];
        loop {
            let mut i = 0;
            let mut done = false;
            loop {
                if i == next.len() {
                    done = true;
                    break;
                }
                next[i] += 1;
                if next[i] < lattices[i].elements.len() {
                    break;
                }
                next[i] = 0;
                i += 1;
            }
            if done {
                break;
            }
            if next.as_slice() == state {
                continue;
            }
            let mut factor = DObject::zero(n);
            let mut admissible = true;
            for (j, l) in lattices.iter().enumerate() {
                match &l.quotients[state[j]][next[j]] {
                    Some(q) => factor = factor.direct_sum(q),
                    None => {
                        admissible = false;
                        break;
                    }
                }
            }
            if !admissible || factor.is_zero() {
                continue;
            }
            let phase = self.phase(&factor);
            if let Some(p) = &last {
                if self.charge.cmp_phase(&phase, p)? != Ordering::Less {
                    continue;
                }
            }
            if !self.is_semistable(&factor)? {
                continue;
            }
            chain.push(OracleFactor {
                class: factor.k0(),
                phase: phase.clone(),
            });
            let snapshot = next.clone();
            self.extend(lattices, &snapshot, top, Some(phase), chain, out)?;
            chain.pop();
        }
        Ok(())
    }
}

/// Exhaustive filtrations in the standard heart of `D^b(A_n)`, read off
/// from the submodule lattice of interval modules: the subobjects of
/// `M[a,b]` are the `M[x,b]`.
pub fn standard_filtrations(charge: &CentralCharge, e: &DObject) -> Result<Vec<Vec<OracleFactor>>> {
    let n = e.n();
    let mut by_shift: std::collections::BTreeMap<i64, Vec<Interval>> = Default::default();
    for x in e.summands() {
        by_shift.entry(x.shift).or_default().push(x.interval);
    }
    let mut combined: Vec<Vec<OracleFactor>> = vec![Vec::new()];
    for (shift, intervals) in by_shift.iter().rev() {
        let pieces = standard_heart_filtrations(charge, n, intervals)?;
        let mut next = Vec::new();
        for prefix in &combined {
            for piece in &pieces {
                let mut c = prefix.clone();
                c.extend(piece.iter().map(|f| OracleFactor {
                    class: f.class.clone(),
                    phase: f.phase.shifted(*shift),
                }));
                next.push(c);
            }
        }
        combined = next;
    }
    Ok(combined)
}

fn interval_class(n: usize, a: usize, b: usize) -> K0Class {
    let mut v = vec![0; n];
    for c in &mut v[a - 1..b] {
        *c = 1;
    }
    K0Class::new(v)
}

fn standard_heart_filtrations(
    charge: &CentralCharge,
    n: usize,
    modules: &[Interval],
) -> Result<Vec<Vec<OracleFactor>>> {
    let bottom: Vec<usize> = modules.iter().map(|iv| iv.b + 1).collect();
    let top: Vec<usize> = modules.iter().map(|iv| iv.a).collect();
    let mut out = Vec::new();
    let mut chain = Vec::new();
    standard_extend(charge, n, &bottom, &top, None, &mut chain, &mut out)?;
    Ok(out)
}

fn sum_class(n: usize, pieces: &[(usize, usize)]) -> K0Class {
    pieces
        .iter()
        .filter(|(a, b)| a <= b)
        .fold(K0Class::zero(n), |acc, (a, b)| {
            &acc + &interval_class(n, *a, *b)
        })
}

fn standard_semistable(
    charge: &CentralCharge,
    n: usize,
    pieces: &[(usize, usize)],
) -> Result<bool> {
    let pieces: Vec<(usize, usize)> = pieces.iter().copied().filter(|(a, b)| a <= b).collect();
    let phase = charge.phase_of_class(&sum_class(n, &pieces), 0);
    let mut starts: Vec<usize> = pieces.iter().map(|p| p.1 + 1).collect();
    loop {
        let mut i = 0;
        loop {
            if i == starts.len() {
                return Ok(true);
            }
            if starts[i] > pieces[i].0 {
                starts[i] -= 1;
                break;
            }
            starts[i] = pieces[i].1 + 1;
            i += 1;
        }
        let sub: Vec<(usize, usize)> = pieces.iter().zip(&starts).map(|(p, &x)| (x, p.1)).collect();
        let class = sum_class(n, &sub);
        if class.is_zero() {
            continue;
        }
        if charge.cmp_phase(&charge.phase_of_class(&class, 0), &phase)? == Ordering::Greater {
            return Ok(false);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn standard_extend(
    charge: &CentralCharge,
    n: usize,
    state: &[usize],
    top: &[usize],
    last: Option<Phase>,
    chain: &mut Vec<OracleFactor>,
    out: &mut Vec<Vec<OracleFactor>>,
) -> Result<()> {
    if state == top {
        out.push(chain.clone());
        return Ok(());
    }
    let mut next: Vec<usize> = state.to_vec();
    loop {
        let mut i = 0;
        loop {
            if i == next.len() {
                return Ok(());
            }
            if next[i] > top[i] {
                next[i] -= 1;
                break;
            }
            next[i] = state[i];
            i += 1;
        }
        let pieces: Vec<(usize, usize)> =
            next.iter().zip(state).map(|(&x, &y)| (x, y - 1)).collect();
        let class = sum_class(n, &pieces);
        if class.is_zero() {
            continue;
        }
        let phase = charge.phase_of_class(&class, 0);
        if let Some(p) = &last {
            if charge.cmp_phase(&phase, p)? != Ordering::Less {
                continue;
            }
        }
        if !standard_semistable(charge, n, &pieces)? {
            continue;
        }
        chain.push(OracleFactor {
            class,
            phase: phase.clone(),
        });
        let snapshot = next.clone();
        standard_extend(charge, n, &snapshot, top, Some(phase), chain, out)?;
        chain.pop();
    }
}
