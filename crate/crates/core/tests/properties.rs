use antican::anticanon::kappa;
use antican::catalog::builtin;
use antican::knop::{classify_image, dphi_project, LieElement, Mat2};
use antican::rational::{q, qf, Q};
use antican::{parse_datum, ColorRecord, ColorType, DatumParts, RootSystem, SphericalDatum, Weight};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn factor() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..=5).prop_map(|n| format!("A{n}")),
        (2usize..=5).prop_map(|n| format!("B{n}")),
        (2usize..=5).prop_map(|n| format!("C{n}")),
        (3usize..=6).prop_map(|n| format!("D{n}")),
        prop_oneof![Just("E6"), Just("E7"), Just("F4"), Just("G2")].prop_map(String::from),
    ]
}

fn system() -> impl Strategy<Value = RootSystem> {
    (prop::collection::vec(factor(), 1..=3), 0usize..=2).prop_map(|(fs, t)| {
        let mut spec = fs.join("x");
        if t > 0 {
            spec.push_str(&format!("+T{t}"));
        }
        RootSystem::parse(&spec).unwrap()
    })
}

fn system_and_subset() -> impl Strategy<Value = (RootSystem, Vec<usize>)> {
    system().prop_flat_map(|rs| {
        let n = rs.rank();
        (Just(rs), subsequence((0..n).collect::<Vec<_>>(), 0..=n))
    })
}

proptest! {
    #[test]
    fn kappa_vanishes_exactly_on_sp((rs, sp) in system_and_subset()) {
        let k = kappa(&rs, &sp);
        for i in 0..rs.rank() {
            if sp.contains(&i) {
                prop_assert!(k.fund[i].is_zero());
            } else {
                prop_assert!(k.fund[i] >= q(2));
            }
        }
        prop_assert!(k.central.iter().all(Zero::is_zero));
    }
}

fn small_mat2() -> impl Strategy<Value = Mat2> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| Mat2::from_ints([[a, b], [c, -a]]))
}

fn invertible() -> impl Strategy<Value = Mat2> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(a, b, c, d)| Mat2::from_ints([[a, b], [c, d]]))
        .prop_filter("invertible", |g| !g.det().is_zero())
}

proptest! {
    #[test]
    fn image_class_is_conjugation_invariant(
        vs in prop::collection::vec(small_mat2(), 1..=3),
        g in invertible(),
    ) {
        prop_assume!(vs.iter().any(|v| !v.is_zero()));
        let before = classify_image(&vs).unwrap();
        let moved: Vec<Mat2> = vs.iter().map(|v| v.conjugate_by(&g).unwrap()).collect();
        let after = classify_image(&moved).unwrap();
        prop_assert_eq!(before.class, after.class);
        prop_assert_eq!(before.basis.len(), after.basis.len());
    }
}

fn combination(basis: &[LieElement], coeffs: &[i64]) -> LieElement {
    let mut x = LieElement::zero(&basis[0].shape());
    for (b, &c) in basis.iter().zip(coeffs) {
        x = x.add(&b.scale(&q(c)));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn dphi_respects_brackets(
        which in 0usize..4,
        alpha_seed in 0usize..8,
        cx in prop::collection::vec(-2i64..=2, 40),
        cy in prop::collection::vec(-2i64..=2, 40),
    ) {
        let (key, n) = [("sl2_mod_T", None), ("brion_5_2", None), ("brion_5_4", Some(4)), ("brion_5_1", Some(3))][which];
        let entry = builtin(key, n).unwrap();
        let pres = entry.datum.presentation.unwrap();
        let alpha = alpha_seed % pres.rank();
        let p = pres.parabolic_basis(alpha).unwrap();
        let x = combination(&p, &cx);
        let y = combination(&p, &cy);
        let lhs = dphi_project(&pres, alpha, &x.bracket(&y)).unwrap();
        let rhs = dphi_project(&pres, alpha, &x)
            .unwrap()
            .commutator(&dphi_project(&pres, alpha, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| qf(a, b))
}

fn datum() -> impl Strategy<Value = SphericalDatum> {
    system().prop_flat_map(|rs| {
        let n = rs.rank();
        let c = rs.central_rank();
        let color = (
            subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(2)),
            prop::option::of(prop_oneof![Just(ColorType::A), Just(ColorType::TwoA), Just(ColorType::B)]),
            prop::option::of((prop::collection::vec(rational(), n), prop::collection::vec(rational(), c))),
        );
        (Just(rs), prop::collection::vec(color, 0..=4), 0usize..=3)
    })
    .prop_map(|(rs, colors, boundary)| {
        let mut parts = DatumParts::new(rs.clone());
        parts.colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, (moved, t, chi))| {
                let mut c = ColorRecord::new(format!("D{}", i + 1), moved);
                c.declared_type = t;
                c.chi = chi.map(|(f, z)| Weight::new(f, z));
                c
            })
            .collect();
        parts.lattice_m = Some((0..rs.rank()).step_by(2).map(|i| rs.fundamental_weight(i)).collect());
        parts.boundary_count = boundary;
        SphericalDatum::new(parts).unwrap()
    })
}

proptest! {
    #[test]
    fn datum_json_round_trips(d in datum()) {
        let text = d.to_json();
        let back = parse_datum(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.sp, d.sp);
    }
}
