use std::cmp::Ordering;

use serde_json::json;
use stabglue::antype::{corpus, DObject, K0Class};
use stabglue::complex::ExactComplex;
use stabglue::error::Error;
use stabglue::family::{path_chain, scan_grid, FamilyOptions, PathReport, ScanRow};
use stabglue::geometry::{
    ratio_sup_closed_form, ratio_sup_oracle, region_membership, Angle, PlanePoint,
};
use stabglue::gluing::{point_corpus, GluingContext};
use stabglue::kernel_sampling::sample_kernel;
use stabglue::morphism::{mor_corpus, SodSide};
use stabglue::scalar::{format_rational, rational_from_f64, Real};
use stabglue::stability::StabilityCondition;
use stabglue::tilt::{build_tilted_condition, slope_support_check, BuildOptions, TiltTag};

use crate::config::{ConfigError, RunConfig, Validated};
use crate::report::{counts, CheckResult};

/// Why a run stopped before producing a report.
#[derive(Debug)]
pub enum RunError {
    /// The request is not valid; exit code 2.
    Usage(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Usage(e.0)
    }
}

/// Engine errors caused by the request become usage errors; the rest become
/// failed checks carrying the message as witness. A refused hypothesis is a
/// usage error only when the user supplied the point directly.
fn classify(check: &str, e: Error, refusal_is_usage: bool) -> Result<Vec<CheckResult>, RunError> {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) => {
            Err(RunError::Usage(e.to_string()))
        }
        Error::Refused(_) if refusal_is_usage => Err(RunError::Usage(e.to_string())),
        other => Ok(vec![CheckResult::new(
            check,
            false,
            Some(other.to_string()),
            json!({}),
        )]),
    }
}

fn guarded(
    check: &str,
    f: impl FnOnce() -> stabglue::error::Result<Vec<CheckResult>>,
) -> Result<Vec<CheckResult>, RunError> {
    f().or_else(|e| classify(check, e, false))
}

fn exact_f64(x: f64) -> String {
    rational_from_f64(x)
        .map(|q| format_rational(&q))
        .unwrap_or_else(|_| x.to_string())
}

/// Kernel sampling at the requested angles.
pub fn verify_kernel(config: &RunConfig, thetas: &[Angle]) -> Result<Vec<CheckResult>, RunError> {
    let mut out = Vec::new();
    for (k, theta) in thetas.iter().enumerate() {
        let name = format!("kernel_inequality[{}]", theta_label(theta));
        let seed = config.seed.wrapping_add(k as u64);
        out.extend(guarded(&name, || {
            let r = sample_kernel(theta, config.samples, seed)?;
            let angle_ok = r.violations.is_empty() && r.equality_witness != Some(false);
            let ratio_ok = r.ratio_violations.is_empty();
            let oracle = ratio_sup_oracle(theta.to_f64());
            let closed = ratio_sup_closed_form(theta.to_f64());
            let oracle_ok = (oracle - closed).abs() <= 1e-9;
            let witness = r
                .violations
                .first()
                .or(r.ratio_violations.first())
                .map(|(a, b)| format!("z1={a} z2={b}"));
            Ok(vec![
                CheckResult::new(
                    name.clone(),
                    angle_ok,
                    witness.clone(),
                    json!({
                        "samples": r.samples,
                        "rejected": r.rejected,
                        "exact_fallbacks": r.exact_fallbacks,
                        "violations": r.violations.len(),
                        "equality_witness": r.equality_witness,
                    }),
                ),
                CheckResult::new(
                    format!("ratio_bound[{}]", theta_label(theta)),
                    ratio_ok && oracle_ok,
                    witness,
                    json!({
                        "violations": r.ratio_violations.len(),
                        "empirical_sup": exact_f64(r.empirical_ratio_sup),
                        "bound": r.ratio_bound.to_string(),
                        "oracle_sup": exact_f64(oracle),
                        "closed_form_sup": exact_f64(closed),
                    }),
                ),
            ])
        })?);
    }
    Ok(out)
}

fn theta_label(theta: &Angle) -> String {
    match theta.pi_multiple() {
        Some(q) => format!("{}pi", format_rational(q)),
        None => theta.radians().to_string(),
    }
}

/// Checks that a filtration is a valid Harder–Narasimhan filtration.
fn filtration_problem(
    sigma: &StabilityCondition,
    e: &DObject,
) -> stabglue::error::Result<Option<String>> {
    let hn = sigma.hn(e)?;
    let mut class = K0Class::zero(e.n());
    for (i, f) in hn.iter().enumerate() {
        class = &class + &f.object.k0();
        if !sigma.is_semistable(&f.object)? {
            return Ok(Some(format!("factor {} is not semistable", f.object)));
        }
        if !sigma.heart().contains(&f.object.shift(-f.phase.shift()))? {
            return Ok(Some(format!(
                "factor {} is not a shifted heart object",
                f.object
            )));
        }
        if i > 0 && sigma.charge().cmp_phase(&hn[i - 1].phase, &f.phase)? != Ordering::Greater {
            return Ok(Some(format!(
                "phases of {} and {} do not decrease",
                hn[i - 1].object,
                f.object
            )));
        }
    }
    Ok((class != e.k0()).then(|| format!("factor classes sum to {class}, not {}", e.k0())))
}

/// HN filtration of one object in the standard heart of the model.
pub fn hn(v: &Validated, object: &str) -> Result<Vec<CheckResult>, RunError> {
    let n = v.quiver.n();
    let e = DObject::parse(object, n).map_err(|e| RunError::Usage(format!("object: {e}")))?;
    let sigma = StabilityCondition::standard(v.model_charge.clone())
        .map_err(|e| RunError::Usage(e.to_string()))?;
    guarded("hn_filtration", || {
        let factors = sigma
            .hn(&e)?
            .iter()
            .map(|f| {
                Ok(json!({
                    "object": f.object.to_string(),
                    "charge": sigma.charge().eval_object(&f.object).to_string(),
                    "phase": sigma.phase_value(&f.phase)?.to_string(),
                }))
            })
            .collect::<stabglue::error::Result<Vec<_>>>()?;
        let problem = filtration_problem(&sigma, &e)?;
        Ok(vec![CheckResult::new(
            "hn_filtration",
            problem.is_none(),
            problem.map(|p| format!("{e}: {p}")),
            json!({ "object": e.to_string(), "factors": factors }),
        )])
    })
}

fn sides(side: Option<SodSide>) -> Vec<SodSide> {
    side.map(|s| vec![s])
        .unwrap_or_else(|| vec![SodSide::Sod0, SodSide::Sod1])
}

/// Gluing conditions, glued HN filtrations, positivity and truncations.
pub fn glue(
    config: &RunConfig,
    v: &Validated,
    side: Option<SodSide>,
) -> Result<Vec<CheckResult>, RunError> {
    let points = point_corpus(config.corpus_cap, config.shifts());
    let arrows = mor_corpus(&point_corpus(2, -1..=1));
    let objects = corpus(2, config.corpus_cap, config.shifts());
    let mut out = Vec::new();
    for side in sides(side) {
        let tag = side.name();
        out.extend(guarded(&format!("glue[{tag}]"), || {
            let ctx = GluingContext::from_point_charge(side, v.point_charge.clone())?;
            let glued = ctx.glue_stability()?;
            let mut results: Vec<CheckResult> = ctx
                .check_conditions(&points, &arrows)?
                .into_iter()
                .map(|c| {
                    CheckResult::new(
                        format!("gluing_condition[{tag}:{}]", c.name),
                        c.holds,
                        c.witness,
                        json!({}),
                    )
                })
                .collect();
            let positivity = glued.positivity_failures()?;
            results.push(CheckResult::new(
                format!("glued_positivity[{tag}]"),
                positivity.is_empty(),
                positivity.first().map(|e| e.to_string()),
                counts(&[("heart_indecomposables", glued.heart().catalog().len())]),
            ));
            let mut hn_witness = None;
            let mut trunc_witness = None;
            let mut semistable = 0;
            let mut ratio_max: Option<Real> = None;
            for e in &objects {
                if hn_witness.is_none() {
                    hn_witness = filtration_problem(&glued, e)?.map(|p| format!("{e}: {p}"));
                }
                if glued.is_semistable(e)? {
                    semistable += 1;
                    let r = ctx.truncation_report(&glued, e)?;
                    if !r.passed() && trunc_witness.is_none() {
                        trunc_witness = Some(e.to_string());
                    }
                    ratio_max = Some(match ratio_max {
                        None => r.ratio_squared.clone(),
                        Some(m) => stabglue::stability::real_max(m, r.ratio_squared.clone()),
                    });
                }
            }
            results.push(CheckResult::new(
                format!("glued_hn[{tag}]"),
                hn_witness.is_none(),
                hn_witness,
                counts(&[("objects", objects.len())]),
            ));
            results.push(CheckResult::new(
                format!("truncation_semistability[{tag}]"),
                trunc_witness.is_none(),
                trunc_witness,
                json!({
                    "semistable_objects": semistable,
                    "max_ratio_squared": ratio_max.map(|r| r.to_string()),
                }),
            ));
            Ok(results)
        })?);
    }
    Ok(out)
}

fn build_options(config: &RunConfig, v: &Validated) -> BuildOptions {
    BuildOptions {
        region: v.region.clone(),
        allow_outside_hypotheses: false,
        corpus_dim: config.corpus_cap,
        corpus_shifts: config.shifts(),
    }
}

fn family_options(config: &RunConfig, v: &Validated) -> FamilyOptions {
    FamilyOptions {
        build: build_options(config, v),
        corpus: corpus(2, config.corpus_cap, config.shifts()),
    }
}

/// Parses a point given as two real literals.
pub fn plane_point(beta: &str, omega: &str) -> Result<PlanePoint, RunError> {
    let b: Real = beta
        .parse()
        .map_err(|e| RunError::Usage(format!("beta: {e}")))?;
    let w: Real = omega
        .parse()
        .map_err(|e| RunError::Usage(format!("omega: {e}")))?;
    let p = PlanePoint::new(b, w).map_err(|e| RunError::Usage(e.to_string()))?;
    let boundary = p
        .beta()
        .as_rational()
        .is_some_and(|q| *q == stabglue::scalar::int(1))
        && p.omega().is_exact_zero();
    if !boundary
        && !p
            .is_interior()
            .map_err(|e| RunError::Usage(e.to_string()))?
    {
        return Err(RunError::Usage(format!("omega must be positive at {p}")));
    }
    Ok(p)
}

/// Builds and validates the tilted condition at one point.
pub fn tilt(
    config: &RunConfig,
    v: &Validated,
    side: Option<SodSide>,
    p: &PlanePoint,
) -> Result<Vec<CheckResult>, RunError> {
    let opts = build_options(config, v);
    let objects = corpus(2, config.corpus_cap, config.shifts());
    let mut out = Vec::new();
    for side in sides(side) {
        let tag = side.name();
        let check = format!("tilt[{tag}]");
        out.extend(
            (|| {
                let ctx = GluingContext::from_point_charge(side, v.point_charge.clone())?;
                let region = region_membership(p, &v.region)?;
                let s = build_tilted_condition(&ctx, p, &opts)?;
                let mut results = vec![CheckResult::new(
                    format!("tilt_build[{tag}]"),
                    !s.outside_hypotheses,
                    None,
                    json!({
                        "point": p.to_string(),
                        "in_region": region.in_both(),
                        "specialization": s.specialization,
                        "charge": s.sigma.charge().to_string(),
                        "positivity_checked": s.validation.positivity_checked,
                        "hn_checked": s.validation.hn_checked,
                        "bound_witnesses": s.validation.bound_witnesses,
                        "tilt_agreement_checked": s.validation.tilt_agreement_checked,
                    }),
                )];
                let mut witness = None;
                let mut checked = 0;
                for e in &objects {
                    if s.sigma.heart().contains(e)? {
                        checked += 1;
                        if witness.is_none()
                            && !s.sigma.charge().eval_object(e).in_charge_half_plane()?
                        {
                            witness = Some(e.to_string());
                        }
                    }
                }
                results.push(CheckResult::new(
                    format!("tilt_positivity[{tag}]"),
                    witness.is_none(),
                    witness,
                    counts(&[("heart_objects", checked)]),
                ));
                if !s.specialization {
                    let support = slope_support_check(&TiltTag::new(&ctx, p)?, &objects)?;
                    results.push(CheckResult::new(
                        format!("slope_support[{tag}]"),
                        support.passed(),
                        support
                            .support
                            .negative
                            .first()
                            .map(|(e, _)| e.to_string())
                            .or(support.angle_failures.first().map(|e| e.to_string())),
                        json!({
                            "semistable_checked": support.support.checked,
                            "kernel_dim": support.support.kernel_dim,
                            "kernel_negative_definite": support.support.kernel_negative_definite,
                            "angle_checked": support.angle_checked,
                        }),
                    ));
                }
                Ok(results)
            })()
            .or_else(|e| classify(&check, e, true))?,
        );
    }
    Ok(out)
}

/// Scans the configured grid.
pub fn scan(
    config: &RunConfig,
    v: &Validated,
    side: SodSide,
    workers: usize,
) -> Result<(Vec<CheckResult>, Vec<ScanRow>), RunError> {
    let opts = family_options(config, v);
    let mut rows = Vec::new();
    let results = guarded("grid_scan", || {
        let ctx = GluingContext::from_point_charge(side, v.point_charge.clone())?;
        rows = scan_grid(&ctx, &v.grid, &v.eps, &opts, workers)?;
        let bad = rows
            .iter()
            .find(|r| r.heart_ok == Some(false) || r.ball_ok == Some(false))
            .map(|r| {
                format!(
                    "({}, {})",
                    format_rational(&r.beta),
                    format_rational(&r.omega)
                )
            });
        let admissible = rows.iter().filter(|r| r.in_region).count();
        let table: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "beta": format_rational(&r.beta),
                    "omega": format_rational(&r.omega),
                    "in_region": r.in_region,
                    "sup_ratio": r.sup_ratio.as_ref().map(|x| x.to_string()),
                    "heart_ok": r.heart_ok,
                    "ball_ok": r.ball_ok,
                })
            })
            .collect();
        Ok(vec![CheckResult::new(
            format!("grid_scan[{}]", side.name()),
            bad.is_none(),
            bad,
            json!({ "points": rows.len(), "admissible": admissible, "rows": table }),
        )])
    })?;
    Ok((results, rows))
}

fn path_results(report: &PathReport) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for chain in &report.chains {
        let tag = chain.side.name();
        let sp = &chain.specialization;
        out.push(CheckResult::new(
            format!("specialization_check[{tag}]"),
            sp.passed(),
            sp.heart_failures.first().cloned(),
            json!({
                "offset": sp.offset.to_string(),
                "theta": sp.theta.to_string(),
                "radius_bound": sp.ball.bound.to_string(),
                "inside_ball": sp.ball.inside,
                "heart_checked": sp.heart_checked,
                "shifted_free_checked": sp.shifted_free_checked,
            }),
        ));
        let failing = chain.links.iter().find(|l| !l.report.passed());
        out.push(CheckResult::new(
            format!("continuity_check[{tag}]"),
            failing.is_none(),
            failing.map(|l| {
                format!(
                    "t={} to t={}: {}",
                    format_rational(&l.from),
                    format_rational(&l.to),
                    l.report
                        .hom_failures
                        .first()
                        .cloned()
                        .unwrap_or_else(|| "outside ball".into())
                )
            }),
            json!({
                "links": chain.links.len(),
                "hom_checked": chain.links.iter().map(|l| l.report.hom_checked).sum::<usize>(),
            }),
        ));
        out.push(CheckResult::new(
            format!("support[{tag}]"),
            chain.support,
            None,
            json!({}),
        ));
    }
    out.push(CheckResult::new(
        "endpoint_rotation_check",
        report.rotation.holds && report.rotated_charge_matches && report.rotated_heart_matches,
        report
            .rotation
            .mismatch
            .as_ref()
            .map(|(i, a, b)| format!("basis vector {i}: {a} vs {b}")),
        json!({
            "rotation": ExactComplex::unit_root_twelfth(4).to_string(),
            "charge_identity": report.rotation.holds,
            "rotated_charge_matches": report.rotated_charge_matches,
            "rotated_heart_matches": report.rotated_heart_matches,
        }),
    ));
    out
}

/// The continuity chain along the path for both decompositions.
pub fn path(
    config: &RunConfig,
    v: &Validated,
    workers: usize,
) -> Result<Vec<CheckResult>, RunError> {
    let opts = family_options(config, v);
    guarded("path_chain", || {
        let report = path_chain(&v.point_charge, config.path_steps, &v.eps, &opts, workers)?;
        let mut out = vec![CheckResult::new(
            "path_chain",
            report.passed(),
            None,
            json!({ "steps": report.steps, "eps": format_rational(&report.eps) }),
        )];
        out.extend(path_results(&report));
        Ok(out)
    })
}
