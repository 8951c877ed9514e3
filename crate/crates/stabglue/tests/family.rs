use stabglue::antype::corpus;
use stabglue::complex::ExactComplex;
use stabglue::family::{
    approximant_check, continuity_check, endpoint_rotation_check, path_point, scan_grid,
    specialization_check, FamilyOptions, Grid,
};
use stabglue::geometry::PlanePoint;
use stabglue::gluing::GluingContext;
use stabglue::morphism::SodSide;
use stabglue::scalar::rat;

fn small_opts() -> FamilyOptions {
    FamilyOptions {
        corpus: corpus(2, 2, -1..=1),
        ..FamilyOptions::default()
    }
}

fn ctx(side: SodSide, z: ExactComplex) -> GluingContext {
    GluingContext::from_point_charge(side, z).unwrap()
}

#[test]
fn fine_grid_is_continuous_at_every_admissible_point() {
    let grid = Grid {
        beta_min: rat(1, 4),
        beta_step: rat(1, 64),
        beta_count: 32,
        omega_min: rat(1, 2),
        omega_step: rat(1, 64),
        omega_count: 32,
    };
    let rows = scan_grid(
        &ctx(SodSide::Sod0, ExactComplex::i()),
        &grid,
        &rat(1, 16),
        &small_opts(),
        1,
    )
    .unwrap();
    assert_eq!(rows.len(), 32 * 32);
    let admissible: Vec<_> = rows.iter().filter(|r| r.in_region).collect();
    assert!(
        admissible.len() > 500,
        "{} admissible points",
        admissible.len()
    );
    for r in admissible {
        assert_eq!(r.heart_ok, Some(true), "heart at ({}, {})", r.beta, r.omega);
        assert_eq!(r.ball_ok, Some(true), "ball at ({}, {})", r.beta, r.omega);
    }
}

#[test]
fn specialization_bridges_points_near_the_boundary() {
    let opts = small_opts();
    for side in [SodSide::Sod0, SodSide::Sod1] {
        let c = ctx(side, ExactComplex::i());
        for (b, w) in [
            (rat(1, 1), rat(1, 64)),
            (rat(63, 64), rat(1, 64)),
            (rat(1, 1), rat(1, 32)),
        ] {
            let p = PlanePoint::rational(b, w).unwrap();
            let r = specialization_check(&c, &p, &rat(1, 16), &opts).unwrap();
            assert!(r.passed(), "{} at {p}", side.name());
        }
        let far = PlanePoint::rational(rat(1, 2), rat(1, 2)).unwrap();
        assert!(specialization_check(&c, &far, &rat(1, 16), &opts).is_err());
    }
}

#[test]
fn endpoint_rotation_holds_for_several_point_charges() {
    for z in [
        ExactComplex::i(),
        ExactComplex::from_ints(-1, 1),
        ExactComplex::from_ints(2, 3),
        ExactComplex::from_ints(-5, 1),
    ] {
        let report = endpoint_rotation_check(
            &ctx(SodSide::Sod0, z.clone()),
            &ctx(SodSide::Sod1, z.clone()),
        )
        .unwrap();
        assert!(report.holds, "Z = {z}: {:?}", report.mismatch);
    }
    let swapped = endpoint_rotation_check(
        &ctx(SodSide::Sod1, ExactComplex::i()),
        &ctx(SodSide::Sod0, ExactComplex::i()),
    );
    assert!(swapped.is_err());
}

#[test]
fn neighbouring_path_points_are_close() {
    let opts = small_opts();
    let c = ctx(SodSide::Sod1, ExactComplex::from_ints(-1, 1));
    for k in [1i64, 17, 40, 63] {
        let p1 = path_point(&rat(k, 64)).unwrap().point;
        let p2 = path_point(&rat(k + 1, 64)).unwrap().point;
        let r = continuity_check(&c, &p1, &p2, &rat(1, 16), &opts).unwrap();
        assert!(r.passed(), "t = {k}/64");
    }
}

#[test]
fn irrational_path_points_have_stable_approximants() {
    let objects = corpus(2, 2, -1..=1);
    for t in [rat(1, 5), rat(2, 3)] {
        let p = path_point(&t).unwrap().point;
        let r = approximant_check(
            &ctx(SodSide::Sod0, ExactComplex::i()),
            &p,
            &rat(1, 1_000_000),
            &objects,
        )
        .unwrap();
        assert!(r.passed(), "t = {t}: {:?}", r.changes);
    }
}
