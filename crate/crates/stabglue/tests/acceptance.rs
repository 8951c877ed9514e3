use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use stabglue::antype::{corpus, DObject, K0Class};
use stabglue::complex::ExactComplex;
use stabglue::error::Result;
use stabglue::family::{
    heart_window_check, path_chain, path_point, require_admissible, FamilyOptions,
};
use stabglue::geometry::{
    ratio_sup_closed_form, ratio_sup_oracle, Angle, PlanePoint, RegionParams,
};
use stabglue::gluing::{point_corpus, GluingContext};
use stabglue::kernel_sampling::sample_kernel;
use stabglue::morphism::{mor_corpus, SodSide};
use stabglue::scalar::rat;
use stabglue::stability::oracle::{BruteForce, OracleFactor};
use stabglue::stability::{CentralCharge, StabilityCondition};
use stabglue::tilt::{build_tilted_condition, slope_support_check, BuildOptions, TiltTag};

const SIXTHS: [i64; 4] = [1, 3, 4, 5];
const KERNEL_SAMPLES: usize = 100_000;
const KERNEL_SEED: u64 = 0x5eed;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

fn kernel_inequality() -> Result<Outcome> {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut passed = true;
    for k in SIXTHS {
        let report = sample_kernel(
            &Angle::from_sixths(k),
            KERNEL_SAMPLES,
            KERNEL_SEED + k as u64,
        )?;
        let ok = report.samples == KERNEL_SAMPLES
            && report.violations.is_empty()
            && report.equality_witness == Some(true);
        passed &= ok;
        notes.push(format!(
            "{k}pi/6: {} samples, {} violations, equality {:?}",
            report.samples,
            report.violations.len(),
            report.equality_witness
        ));
    }
    let elapsed = start.elapsed();
    passed &= elapsed < Duration::from_secs(10);
    Ok(Outcome::new(
        passed,
        format!("{}; {:.2?}", notes.join("; "), elapsed),
    ))
}

fn ratio_bound_soundness() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut passed = true;
    for k in SIXTHS {
        let theta = Angle::from_sixths(k);
        let report = sample_kernel(&theta, KERNEL_SAMPLES, KERNEL_SEED + 100 + k as u64)?;
        let bound = report.ratio_bound.to_f64();
        let oracle = ratio_sup_oracle(theta.to_f64());
        let closed = ratio_sup_closed_form(theta.to_f64());
        let ok = report.ratio_violations.is_empty()
            && report.empirical_ratio_sup <= bound
            && (oracle - closed).abs() <= 1e-9
            && oracle <= bound + 1e-12;
        passed &= ok;
        notes.push(format!(
            "{k}pi/6: empirical {:.9}, bound {bound:.9}, oracle {oracle:.12}, closed form {closed:.12}",
            report.empirical_ratio_sup
        ));
    }
    Ok(Outcome::new(passed, notes.join("; ")))
}

fn oracle_chain(brute: &mut BruteForce<'_>, e: &DObject) -> Result<Option<Vec<OracleFactor>>> {
    let mut layers: BTreeMap<i64, DObject> = BTreeMap::new();
    for x in e.summands() {
        let layer = layers
            .entry(x.shift)
            .or_insert_with(|| DObject::zero(e.n()));
        *layer = layer.direct_sum(&DObject::indec(e.n(), x.shifted(-x.shift)));
    }
    let mut chain = Vec::new();
    for (shift, layer) in layers.iter().rev() {
        let mut found = brute.filtrations(layer)?;
        if found.len() != 1 {
            return Ok(None);
        }
        chain.extend(found.remove(0).into_iter().map(|f| OracleFactor {
            class: f.class,
            phase: f.phase.shifted(*shift),
        }));
    }
    Ok(Some(chain))
}

fn hn_oracle_equivalence() -> Result<Outcome> {
    let start = Instant::now();
    let charge = CentralCharge::new(vec![ExactComplex::from_ints(-1, 1), ExactComplex::i()]);
    let sigma = StabilityCondition::standard(charge)?;
    let mut brute = BruteForce::new(sigma.heart(), sigma.charge());
    let objects = corpus(2, 6, -1..=1);
    let mut agree = 0;
    let mut first_mismatch = None;
    for e in &objects {
        let hn = sigma.hn(e)?;
        let matches = match oracle_chain(&mut brute, e)? {
            None => false,
            Some(chain) => {
                chain.len() == hn.len()
                    && hn
                        .iter()
                        .zip(&chain)
                        .try_fold(true, |acc, (f, o)| -> Result<bool> {
                            let class: K0Class = f.object.shift(-f.phase.shift()).k0();
                            Ok(acc
                                && class == o.class
                                && f.phase.shift() == o.phase.shift()
                                && sigma.charge().cmp_phase(&f.phase, &o.phase)? == Ordering::Equal)
                        })?
            }
        };
        if matches {
            agree += 1;
        } else if first_mismatch.is_none() {
            first_mismatch = Some(e.to_string());
        }
    }
    let elapsed = start.elapsed();
    let passed = agree == objects.len() && elapsed < Duration::from_secs(60);
    let mut detail = format!("{agree}/{} objects agree; {elapsed:.2?}", objects.len());
    if let Some(m) = first_mismatch {
        detail.push_str(&format!("; first mismatch {m}"));
    }
    Ok(Outcome::new(passed, detail))
}

fn hn_is_valid(sigma: &StabilityCondition, e: &DObject) -> Result<bool> {
    let hn = sigma.hn(e)?;
    let mut class = K0Class::zero(e.n());
    for (i, f) in hn.iter().enumerate() {
        class = &class + &f.object.k0();
        if !sigma.is_semistable(&f.object)?
            || !sigma.heart().contains(&f.object.shift(-f.phase.shift()))?
        {
            return Ok(false);
        }
        if i > 0 && sigma.charge().cmp_phase(&hn[i - 1].phase, &f.phase)? != Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(class == e.k0())
}

fn gluing_validation() -> Result<Outcome> {
    let points = point_corpus(2, -1..=1);
    let arrows = mor_corpus(&point_corpus(2, -1..=1));
    let objects = corpus(2, 4, -2..=2);
    let mut passed = true;
    let mut notes = Vec::new();
    for side in [SodSide::Sod0, SodSide::Sod1] {
        let ctx = GluingContext::from_point_charge(side, ExactComplex::i())?;
        let glued = ctx.glue_stability()?;
        let conditions = ctx.check_conditions(&points, &arrows)?;
        let conditions_ok = conditions.iter().all(|c| c.holds);
        let positivity_ok = glued.positivity_failures()?.is_empty();
        let mut hn_ok = true;
        let mut semistable = 0;
        let mut truncation_ok = true;
        let mut ratio_ok = true;
        for e in &objects {
            hn_ok &= hn_is_valid(&glued, e)?;
            if glued.is_semistable(e)? {
                semistable += 1;
                let r = ctx.truncation_report(&glued, e)?;
                truncation_ok &= r.first_semistable
                    && r.second_semistable
                    && r.phases_agree != Some(false)
                    && r.mass_additive;
                ratio_ok &= r.ratio_bounded;
            }
        }
        passed &= conditions_ok && positivity_ok && hn_ok && truncation_ok && ratio_ok;
        notes.push(format!(
            "{}: conditions {conditions_ok}, positivity {positivity_ok}, HN {hn_ok} on {} objects, truncations {truncation_ok} and ratio<=1 {ratio_ok} on {semistable} semistable",
            side.name(),
            objects.len()
        ));
    }
    Ok(Outcome::new(passed, notes.join("; ")))
}

fn rational_region_points(region: &RegionParams, count: usize) -> Vec<PlanePoint> {
    let mut admissible = Vec::new();
    for w in 1..=12 {
        for b in -8..=8 {
            let p = PlanePoint::rational(rat(b, 8), rat(w, 8)).expect("nonnegative omega");
            if require_admissible(&p, region).is_ok() {
                admissible.push(p);
            }
        }
    }
    let stride = (admissible.len() / count).max(1);
    admissible.into_iter().step_by(stride).take(count).collect()
}

fn tilt_family() -> Result<Outcome> {
    let opts = BuildOptions::default();
    let mut points = rational_region_points(&opts.region, 25);
    let rational_count = points.len();
    points.push(path_point(&rat(1, 1))?.point);
    let objects = corpus(2, 3, -2..=2);
    let mut passed = rational_count == 25;
    let mut built = 0;
    let mut positivity_checked = 0;
    let mut failures = Vec::new();
    for side in [SodSide::Sod0, SodSide::Sod1] {
        let ctx = GluingContext::from_point_charge(side, ExactComplex::i())?;
        for p in &points {
            let s = match build_tilted_condition(&ctx, p, &opts) {
                Ok(s) if !s.outside_hypotheses => s,
                Ok(_) => {
                    failures.push(format!("{} at {p}: outside hypotheses", side.name()));
                    continue;
                }
                Err(e) => {
                    failures.push(format!("{} at {p}: {e}", side.name()));
                    continue;
                }
            };
            built += 1;
            for e in &objects {
                if !s.sigma.heart().contains(e)? {
                    continue;
                }
                positivity_checked += 1;
                if !s.sigma.charge().eval_object(e).in_charge_half_plane()? {
                    failures.push(format!("{} at {p}: {e}", side.name()));
                }
            }
        }
    }
    passed &= failures.is_empty();
    let mut detail = format!(
        "{built} built over {rational_count} rational points and the exact endpoint on both sides; {positivity_checked} heart objects positive"
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first failure {f}"));
    }
    Ok(Outcome::new(passed, detail))
}

fn continuity_chain() -> Result<Outcome> {
    let start = Instant::now();
    let report = path_chain(
        &ExactComplex::i(),
        64,
        &rat(1, 16),
        &FamilyOptions::default(),
        1,
    )?;
    let elapsed = start.elapsed();
    let passed = report.passed() && report.rotation.holds && elapsed < Duration::from_secs(600);
    let chains: Vec<String> = report
        .chains
        .iter()
        .map(|c| {
            format!(
                "{}: {} links ok {}, specialization offset {:.4} < sin(pi/16) {}",
                c.side.name(),
                c.links.len(),
                c.links.iter().all(|l| l.report.passed()),
                c.specialization.offset.to_f64(),
                c.specialization.passed()
            )
        })
        .collect();
    Ok(Outcome::new(
        passed,
        format!(
            "{}; endpoint rotation {}, rotated charge {}, rotated heart {}; {elapsed:.2?}",
            chains.join("; "),
            report.rotation.holds,
            report.rotated_charge_matches,
            report.rotated_heart_matches
        ),
    ))
}

fn sampled_points() -> Result<Vec<PlanePoint>> {
    let mut points: Vec<PlanePoint> = [(1, 2, 1, 2), (0, 1, 1, 1), (1, 1, 1, 4), (-1, 4, 3, 4)]
        .iter()
        .map(|&(bn, bd, wn, wd)| PlanePoint::rational(rat(bn, bd), rat(wn, wd)))
        .collect::<Result<_>>()?;
    points.push(path_point(&rat(1, 1))?.point);
    Ok(points)
}

fn support_form() -> Result<Outcome> {
    let objects = corpus(2, 4, -2..=2);
    let mut passed = true;
    let mut checked = 0;
    let mut kernels = Vec::new();
    for side in [SodSide::Sod0, SodSide::Sod1] {
        let ctx = GluingContext::from_point_charge(side, ExactComplex::i())?;
        for p in sampled_points()? {
            let tag = TiltTag::new(&ctx, &p)?;
            let report = slope_support_check(&tag, &objects)?;
            checked += report.support.checked;
            passed &= report.support.passed();
            kernels.push(format!("{:?}", report.support.kernel_dim));
        }
    }
    kernels.dedup();
    Ok(Outcome::new(
        passed,
        format!(
            "{checked} slope-semistable evaluations nonnegative; kernel dimensions {}",
            kernels.join(",")
        ),
    ))
}

fn hom_vanishings() -> Result<Outcome> {
    let region = BuildOptions::default().region;
    let objects = corpus(2, 3, -2..=2);
    let first = GluingContext::from_point_charge(SodSide::Sod0, ExactComplex::i())?;
    let second = GluingContext::from_point_charge(SodSide::Sod1, ExactComplex::i())?;
    let mut passed = true;
    let mut notes = Vec::new();
    for p in sampled_points()? {
        let r = heart_window_check(&first, &second, &p, &objects, &region)?;
        passed &= r.passed();
        notes.push(format!(
            "{p}: {} containments, {} torsion-free and {} free-torsion pairs, {} failures",
            r.total_checked(),
            r.torsion_free_pairs,
            r.free_torsion_pairs,
            r.failures.len()
        ));
    }
    Ok(Outcome::new(passed, notes.join("; ")))
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("kernel inequality", kernel_inequality),
        ("ratio bound soundness", ratio_bound_soundness),
        ("HN oracle equivalence", hn_oracle_equivalence),
        ("gluing validation", gluing_validation),
        ("tilt family", tilt_family),
        ("continuity chain", continuity_chain),
        ("support form", support_form),
        ("Hom vanishings and windows", hom_vanishings),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        if !outcome.passed {
            failed += 1;
        }
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{verdict}] {name}: {}", i + 1, outcome.detail);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
