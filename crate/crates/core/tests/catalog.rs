use antican::anticanon::{anticanonical_divisor, kappa, verify_decomposition};
use antican::catalog::{builtin, keys};
use antican::knop::{classify_knop_color, full_image_roots, open_orbit_check};
use antican::{validate_datum, CatalogEntry};

fn all_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for k in keys() {
        match k.range {
            None => out.push(builtin(k.key, None).unwrap()),
            Some((lo, hi)) => {
                for n in lo..=hi {
                    out.push(builtin(k.key, Some(n)).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn every_entry_validates() {
    for e in all_entries() {
        let report = validate_datum(&e.datum);
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{} {:?}: {bad:?}", e.key, e.param);
    }
}

#[test]
fn presentations_have_open_orbit() {
    for e in all_entries() {
        if let Some(p) = &e.datum.presentation {
            assert!(open_orbit_check(p), "{} {:?}", e.key, e.param);
        }
    }
}

#[test]
fn expected_values_are_reproduced() {
    for e in all_entries() {
        let d = &e.datum;
        let div = anticanonical_divisor(d).unwrap();
        assert_eq!(div.coefficients(), e.expected.m.value, "{} {:?}", e.key, e.param);
        assert_eq!(div.boundary_coeff, 1);
        assert_eq!(vec![1; div.boundary_count], e.expected.boundary.value);
        let k: Vec<i64> = kappa(&d.rs, &d.sp)
            .fund
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(k, e.expected.kappa.value, "{} {:?}", e.key, e.param);
        assert!(verify_decomposition(d).unwrap(), "{} {:?}", e.key, e.param);
    }
}

#[test]
fn knop_types_match_expected() {
    for e in all_entries() {
        if e.datum.presentation.is_none() || e.param.is_some_and(|n| n > 6) {
            continue;
        }
        let types: Vec<_> = (0..e.datum.colors.len())
            .map(|i| classify_knop_color(&e.datum, i).unwrap().unwrap())
            .collect();
        assert_eq!(types, e.expected.types.value, "{} {:?}", e.key, e.param);
    }
}

#[test]
fn full_images_sit_exactly_on_sp() {
    for n in 3..=6 {
        let e = builtin("brion_5_4", Some(n)).unwrap();
        let p = e.datum.presentation.as_ref().unwrap();
        assert_eq!(full_image_roots(p).unwrap(), e.datum.sp);
    }
    let e = builtin("brion_5_3", Some(4)).unwrap();
    assert!(full_image_roots(e.datum.presentation.as_ref().unwrap()).unwrap().is_empty());
}

#[test]
fn dumps_round_trip() {
    for e in all_entries() {
        let text = e.datum.to_json();
        let back = antican::parse_datum(&text).unwrap();
        assert_eq!(back.to_json(), text, "{} {:?}", e.key, e.param);
    }
}
