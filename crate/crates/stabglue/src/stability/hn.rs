//! Harder–Narasimhan filtrations in a heart and in the derived category.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::antype::{DObject, Indec};
use crate::error::{Error, Result};

use super::charge::{CentralCharge, Phase};
use super::heart::Heart;

/// One factor of a Harder–Narasimhan filtration.
#[derive(Clone, Debug)]
pub struct HnFactor {
    /// The semistable factor.
    pub object: DObject,
    /// Its phase.
    pub phase: Phase,
}

/// Memoized filtrations of indecomposable heart objects for one charge.
pub type HnCache = Mutex<HashMap<Indec, Vec<HnFactor>>>;

/// Phase of a heart object.
pub fn heart_phase(charge: &CentralCharge, e: &DObject) -> Phase {
    charge.phase_of_class(&e.k0(), 0)
}

/// The maximal destabilizing subobject of an indecomposable heart object:
/// the subobject of largest phase, and of largest length among those.
/// Returns the subobject, the quotient and the phase.
pub fn max_destabilizing(
    heart: &Heart,
    charge: &CentralCharge,
    x: &Indec,
) -> Result<(DObject, DObject, Phase)> {
    let whole = DObject::indec(heart.n(), *x);
    let mut best = (
        whole.clone(),
        DObject::zero(heart.n()),
        heart_phase(charge, &whole),
        heart.length(&whole),
    );
    for sub in heart.subobjects(x)?.iter() {
        let phase = heart_phase(charge, &sub.object);
        let len = heart.length(&sub.object);
        let better = match charge.cmp_phase(&phase, &best.2)? {
            Ordering::Greater => true,
            Ordering::Equal => len > best.3,
            Ordering::Less => false,
        };
        if better {
            best = (sub.object.clone(), sub.quotient.clone(), phase, len);
        }
    }
    Ok((best.0, best.1, best.2))
}

fn hn_indec(
    heart: &Heart,
    charge: &CentralCharge,
    cache: &HnCache,
    x: &Indec,
) -> Result<Vec<HnFactor>> {
    if let Some(f) = cache.lock().expect("cache").get(x) {
        return Ok(f.clone());
    }
    let (sub, quotient, phase) = max_destabilizing(heart, charge, x)?;
    let mut out = vec![HnFactor {
        object: sub,
        phase: phase.clone(),
    }];
    if !quotient.is_zero() {
        let rest = hn_in_heart(heart, charge, cache, &quotient)?;
        if charge.cmp_phase(&rest[0].phase, &phase)? != Ordering::Less {
            return Err(Error::Structural(format!(
                "Harder–Narasimhan search for {} produced non-decreasing phases",
                DObject::indec(heart.n(), *x)
            )));
        }
        out.extend(rest);
    }
    cache.lock().expect("cache").insert(*x, out.clone());
    Ok(out)
}

/// Merges filtrations of the summands of an object into the filtration of
/// the sum, combining factors of equal phase.
pub fn merge_filtrations(
    charge: &CentralCharge,
    parts: Vec<Vec<HnFactor>>,
) -> Result<Vec<HnFactor>> {
    let mut out: Vec<HnFactor> = Vec::new();
    for factor in parts.into_iter().flatten() {
        let mut pos = out.len();
        let mut merged = false;
        for (i, existing) in out.iter_mut().enumerate() {
            match charge.cmp_phase(&factor.phase, &existing.phase)? {
                Ordering::Equal => {
                    existing.object = existing.object.direct_sum(&factor.object);
                    let shift = existing.phase.shift();
                    existing.phase =
                        charge.phase_of_class(&existing.object.shift(-shift).k0(), shift);
                    merged = true;
                    break;
                }
                Ordering::Greater => {
                    pos = i;
                    break;
                }
                Ordering::Less => {}
            }
        }
        if !merged {
            out.insert(pos, factor);
        }
    }
    Ok(out)
}

/// Filtration of a heart object by semistable factors of strictly
/// decreasing phase.
pub fn hn_in_heart(
    heart: &Heart,
    charge: &CentralCharge,
    cache: &HnCache,
    e: &DObject,
) -> Result<Vec<HnFactor>> {
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    for (x, &m) in e.parts() {
        if !heart.contains_indec(x)? {
            return Err(Error::Domain(format!(
                "{} is not in the heart {}",
                e,
                heart.kind()
            )));
        }
        let f = hn_indec(heart, charge, cache, x)?;
        for _ in 0..m {
            parts.push(f.clone());
        }
    }
    merge_filtrations(charge, parts)
}

/// Filtration of an arbitrary object: the heart filtrations of its
/// cohomology objects, shifted into place.
pub fn hn_filtration(
    heart: &Heart,
    charge: &CentralCharge,
    cache: &HnCache,
    e: &DObject,
) -> Result<Vec<HnFactor>> {
    let mut out = Vec::new();
    for (degree, piece) in heart.cohomology(e)? {
        for f in hn_in_heart(heart, charge, cache, &piece)? {
            out.push(HnFactor {
                object: f.object.shift(-degree),
                phase: f.phase.shifted(-degree),
            });
        }
    }
    Ok(out)
}
