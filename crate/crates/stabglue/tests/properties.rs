use std::cmp::Ordering;

use proptest::prelude::*;
use stabglue::antype::{hom_dim, DObject, Indec};
use stabglue::complex::ExactComplex;
use stabglue::geometry::PlanePoint;
use stabglue::gluing::GluingContext;
use stabglue::morphism::{
    from_a2, identity_arrow, mor_hom_dim, sod_triangle, source_of, target_of, to_a2, SodSide,
};
use stabglue::rep::Interval;
use stabglue::scalar::rat;
use stabglue::tilt::{TiltMembership, TiltTag};

fn object(n: usize) -> impl Strategy<Value = DObject> {
    let count = Interval::all(n).len();
    prop::collection::vec((0..count, -2i64..=2), 0..4).prop_map(move |picks| {
        let all = Interval::all(n);
        let summands: Vec<Indec> = picks.iter().map(|&(i, s)| Indec::new(all[i], s)).collect();
        DObject::from_summands(n, &summands).unwrap()
    })
}

fn heart_indecs(side: SodSide) -> Vec<DObject> {
    let shifts = match side {
        SodSide::Sod0 => [(1, 1, -1), (1, 2, 0), (2, 2, 0)],
        SodSide::Sod1 => [(1, 1, 0), (1, 2, 0), (2, 2, 1)],
    };
    shifts
        .iter()
        .map(|&(a, b, s)| DObject::interval(2, a, b, s).unwrap())
        .collect()
}

fn heart_object(side: SodSide) -> impl Strategy<Value = DObject> {
    prop::collection::vec(0usize..3, 1..4).prop_map(move |picks| {
        let pool = heart_indecs(side);
        picks
            .iter()
            .fold(DObject::zero(2), |acc, &i| acc.direct_sum(&pool[i]))
    })
}

fn glued_pair() -> impl Strategy<Value = (SodSide, DObject, DObject)> {
    side().prop_flat_map(|side| (Just(side), heart_object(side), heart_object(side)))
}

fn side() -> impl Strategy<Value = SodSide> {
    prop_oneof![Just(SodSide::Sod0), Just(SodSide::Sod1)]
}

fn interior_point() -> impl Strategy<Value = PlanePoint> {
    (-24i64..=24, 1i64..=24)
        .prop_map(|(b, w)| PlanePoint::rational(rat(b, 16), rat(w, 16)).unwrap())
}

fn tag(side: SodSide, p: &PlanePoint) -> TiltTag {
    let ctx = GluingContext::from_point_charge(side, ExactComplex::i()).unwrap();
    TiltTag::new(&ctx, p).unwrap()
}

fn split(tag: &TiltTag, e: &DObject) -> (DObject, DObject) {
    match tag.tilt_membership(e).unwrap() {
        TiltMembership::Torsion => (e.clone(), DObject::zero(2)),
        TiltMembership::Free => (DObject::zero(2), e.clone()),
        TiltMembership::Mixed { torsion, free } => (torsion, free),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k0_is_additive_and_odd_under_shift(x in object(3), y in object(3), k in -3i64..=3) {
        prop_assert_eq!(x.direct_sum(&y).k0(), &x.k0() + &y.k0());
        let expected = if k % 2 == 0 { x.k0() } else { -&x.k0() };
        prop_assert_eq!(x.shift(k).k0(), expected);
    }

    #[test]
    fn hom_is_shift_invariant_and_additive(x in object(3), y in object(3), z in object(3), k in -2i64..=2) {
        prop_assert_eq!(hom_dim(&x.shift(k), &y.shift(k)), hom_dim(&x, &y));
        prop_assert_eq!(hom_dim(&x, &y.direct_sum(&z)), hom_dim(&x, &y) + hom_dim(&x, &z));
    }

    #[test]
    fn euler_form_matches_alternating_hom(x in object(3), y in object(3)) {
        let alternating: i64 = (-8i64..=8)
            .map(|p| {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                sign * hom_dim(&x, &y.shift(p)) as i64
            })
            .sum();
        prop_assert_eq!(alternating, x.k0().euler_form(&y.k0()));
    }

    #[test]
    fn display_parses_back(x in object(3)) {
        prop_assert_eq!(DObject::parse(&x.to_string(), 3).unwrap(), x);
    }

    #[test]
    fn arrow_category_round_trips_through_a2(x in object(2)) {
        let m = from_a2(&x).unwrap();
        prop_assert_eq!(to_a2(&m).unwrap(), x);
    }

    #[test]
    fn arrow_hom_matches_a2_hom(x in object(2), y in object(2)) {
        let (m1, m2) = (from_a2(&x).unwrap(), from_a2(&y).unwrap());
        prop_assert_eq!(mor_hom_dim(&m1, &m2), hom_dim(&x, &y));
    }

    #[test]
    fn identity_arrow_adjunctions(x in object(2), z in object(1)) {
        let m = from_a2(&x).unwrap();
        let sz = identity_arrow(&z);
        prop_assert_eq!(mor_hom_dim(&sz, &m), hom_dim(&z, &source_of(&m)));
        prop_assert_eq!(mor_hom_dim(&m, &sz), hom_dim(&target_of(&m), &z));
    }

    #[test]
    fn decomposition_triangles_split_classes_and_are_orthogonal(x in object(2), side in side()) {
        let m = from_a2(&x).unwrap();
        let t = sod_triangle(&m, side);
        let (second, first) = (to_a2(&t.second).unwrap(), to_a2(&t.first).unwrap());
        prop_assert_eq!(&second.k0() + &first.k0(), x.k0());
        for p in -3i64..=3 {
            prop_assert_eq!(hom_dim(&second, &first.shift(p)), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slope_of_a_sum_lies_between_the_slopes((side, a, b) in glued_pair(), p in interior_point()) {
        let tag = tag(side, &p);
        let (sa, sb, ssum) = (tag.slope(&a).unwrap(), tag.slope(&b).unwrap(), tag.slope(&a.direct_sum(&b)).unwrap());
        prop_assume!(!sa.is_null() && !sb.is_null());
        let (lo, hi) = if sa.cmp_slope(&sb).unwrap() == Ordering::Greater { (sb, sa) } else { (sa, sb) };
        prop_assert_ne!(ssum.cmp_slope(&lo).unwrap(), Ordering::Less);
        prop_assert_ne!(ssum.cmp_slope(&hi).unwrap(), Ordering::Greater);
    }

    #[test]
    fn torsion_pieces_admit_no_maps_to_free_pieces((side, e, f) in glued_pair(), p in interior_point()) {
        let tag = tag(side, &p);
        let (t, _) = split(&tag, &e);
        let (_, fr) = split(&tag, &f);
        prop_assert_eq!(hom_dim(&t, &fr), 0);
    }
}
