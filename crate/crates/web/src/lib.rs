//! Browser bindings. Every exported function takes plain strings and numbers
//! and returns a JSON string; failures come back as `{"error": "..."}`.

use serde_json::json;
use wasm_bindgen::prelude::*;

pub mod api {
    use antican::anticanon::{
        anticanonical_divisor, color_type, cone_contains, cone_generators, kappa,
        uniqueness_certificate, valuation_cone, verify_decomposition,
    };
    use antican::catalog::{builtin, keys};
    use antican::knop::{classify_knop, open_orbit_check, stabilizer_image};
    use antican::lunatypes::classify_luna;
    use antican::rational::{fmt_q, parse_q};
    use antican::{parse_datum, validate_datum, Coweight, RootSystem, SphericalDatum};
    use serde_json::{json, Value};

    pub type Reply = Result<Value, String>;

    fn err(e: impl ToString) -> String {
        e.to_string()
    }

    fn coords(c: &Coweight) -> Vec<String> {
        c.coords().iter().map(fmt_q).collect()
    }

    pub fn catalog_keys() -> Value {
        json!(keys())
    }

    /// Positive roots of the subsystem on `subset` (comma-separated names,
    /// empty for all), with `rho` of that subsystem.
    pub fn root_system(spec: &str, subset: &str) -> Reply {
        let rs = RootSystem::parse(spec).map_err(err)?;
        let idx: Vec<usize> = if subset.trim().is_empty() {
            (0..rs.rank()).collect()
        } else {
            subset
                .split(',')
                .map(|n| rs.simple_index(n.trim()).ok_or(format!("unknown simple root `{}`", n.trim())))
                .collect::<Result<_, _>>()?
        };
        let roots = rs.positive_roots(&idx).map_err(err)?;
        Ok(json!({
            "root_system": rs.spec().to_string(),
            "cartan": rs.cartan(),
            "subset": idx.iter().map(|&i| rs.simple_name(i)).collect::<Vec<_>>(),
            "positive_roots": roots.iter().map(|r| json!({
                "coeffs": r.simple_coeffs,
                "height": r.height(),
                "weight": r.as_weight.to_string(),
            })).collect::<Vec<_>>(),
            "rho": rs.rho(&idx).map_err(err)?.to_string(),
        }))
    }

    fn load(source: &str, n: Option<u32>) -> Result<SphericalDatum, String> {
        match source.strip_prefix("catalog:") {
            Some(key) => Ok(builtin(key, n).map_err(err)?.datum),
            None => parse_datum(source).map_err(err),
        }
    }

    /// Types, multiplicities, `kappa_P` and the validation report of a catalog
    /// entry (`catalog:<key>`) or of pasted datum JSON.
    pub fn analyze(source: &str, n: Option<u32>) -> Reply {
        let d = load(source, n)?;
        let k = kappa(&d.rs, &d.sp);
        let div = anticanonical_divisor(&d).ok();
        let colors: Vec<Value> = d
            .colors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let knop = d
                    .presentation
                    .as_ref()
                    .map(|_| classify_knop(&d, i, c.moved_by[0]));
                json!({
                    "name": c.name,
                    "moved_by": c.moved_by.iter().map(|&a| d.rs.simple_name(a)).collect::<Vec<_>>(),
                    "declared": c.declared_type,
                    "luna": d.spherical_roots.as_ref().map(|_| match classify_luna(&d, i) {
                        Ok(t) => json!(t),
                        Err(e) => json!({ "error": e.to_string() }),
                    }),
                    "knop": knop.map(|v| match v {
                        Ok(v) => json!({
                            "type": v.color_type,
                            "image": v.image.class,
                            "evidence": v.evidence,
                        }),
                        Err(e) => json!({ "error": e.to_string() }),
                    }),
                    "type": color_type(&d, i).ok(),
                    "m": div.as_ref().map(|div| div.coefficients()[i]),
                })
            })
            .collect();
        let report = validate_datum(&d);
        Ok(json!({
            "root_system": d.rs.spec().to_string(),
            "sp": d.sp.iter().map(|&a| d.rs.simple_name(a)).collect::<Vec<_>>(),
            "kappa": k.to_string(),
            "colors": colors,
            "divisor": div.as_ref().map(ToString::to_string),
            "decomposition": verify_decomposition(&d).ok(),
            "valid": report.all_pass(),
            "failures": report.failures().collect::<Vec<_>>(),
            "datum": d.to_value(),
        }))
    }

    /// Membership of `point` (comma-separated rationals) in the valuation
    /// cone, the cone generators, and the stabilizer image at every simple root.
    pub fn probe(source: &str, n: Option<u32>, point: &str) -> Reply {
        let d = load(source, n)?;
        let mut out = json!({});
        if let Ok(cone) = valuation_cone(&d) {
            out["halfspaces"] = json!(cone.halfspaces.iter().map(ToString::to_string).collect::<Vec<_>>());
            if !point.trim().is_empty() {
                let xs = point
                    .split(',')
                    .map(|s| parse_q(s.trim()).ok_or(format!("malformed rational `{}`", s.trim())))
                    .collect::<Result<Vec<_>, _>>()?;
                let want = d.rs.rank() + d.rs.central_rank();
                if xs.len() != want {
                    return Err(format!("point needs {want} coordinates, got {}", xs.len()));
                }
                let v = Coweight::from_coords(&xs, d.rs.rank());
                out["inside"] = json!(cone_contains(&cone, &v).map_err(err)?);
            }
            if let Ok(g) = cone_generators(&d) {
                out["rays"] = json!(g.rays.iter().map(coords).collect::<Vec<_>>());
                out["lines"] = json!(g.lines.iter().map(coords).collect::<Vec<_>>());
            }
            if let Ok(c) = uniqueness_certificate(&d) {
                out["certificate"] = json!(c.holds);
            }
        }
        if let Some(p) = &d.presentation {
            out["open_orbit"] = json!(open_orbit_check(p));
            let images: Vec<Value> = (0..p.rank())
                .map(|a| match stabilizer_image(p, a) {
                    Ok(img) => json!({
                        "root": d.rs.simple_name(a),
                        "class": img.class,
                        "basis": img.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    }),
                    Err(e) => json!({ "root": d.rs.simple_name(a), "error": e.to_string() }),
                })
                .collect();
            out["images"] = json!(images);
        }
        Ok(out)
    }
}

fn reply(r: api::Reply) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn param(n: i32) -> Option<u32> {
    u32::try_from(n).ok().filter(|&n| n > 0)
}

#[wasm_bindgen]
pub fn catalog_keys() -> String {
    api::catalog_keys().to_string()
}

#[wasm_bindgen]
pub fn root_system(spec: &str, subset: &str) -> String {
    reply(api::root_system(spec, subset))
}

/// `n <= 0` selects the entry's default parameter.
#[wasm_bindgen]
pub fn analyze(source: &str, n: i32) -> String {
    reply(api::analyze(source, param(n)))
}

#[wasm_bindgen]
pub fn probe(source: &str, n: i32, point: &str) -> String {
    reply(api::probe(source, param(n), point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn roots_of_a_subsystem() {
        let v = parse(root_system("A4", "a2, a3"));
        assert_eq!(v["positive_roots"].as_array().unwrap().len(), 3);
        assert_eq!(v["rho"], "(-1, 1, 1, -1)");
        assert!(parse(root_system("Q2", "")).get("error").is_some());
    }

    #[test]
    fn analysis_of_a_catalog_entry() {
        let v = parse(analyze("catalog:brion_5_4", 5));
        assert_eq!(v["divisor"], "Div s = 4 D1 + 4 D2");
        assert_eq!(v["kappa"], "(4, 0, 0, 4)");
        assert_eq!(v["valid"], true);
        assert_eq!(v["colors"][0]["knop"]["image"], "CONTAINS_NILPOTENT");
        let again = parse(analyze(&v["datum"].to_string(), 0));
        assert_eq!(again["divisor"], v["divisor"]);
    }

    #[test]
    fn probing_cone_and_images() {
        let v = parse(probe("catalog:brion_5_2", 0, "-1, -2, 0"));
        assert_eq!(v["inside"], true);
        assert_eq!(v["certificate"], true);
        assert_eq!(v["images"][0]["class"], "TORUS_LIKE");
        let v = parse(probe("catalog:brion_5_4", 5, ""));
        let classes: Vec<&str> = v["images"]
            .as_array()
            .unwrap()
            .iter()
            .map(|i| i["class"].as_str().unwrap())
            .collect();
        assert_eq!(classes, ["CONTAINS_NILPOTENT", "FULL", "FULL", "CONTAINS_NILPOTENT"]);
        assert!(parse(probe("catalog:brion_5_2", 0, "1,2")).get("error").is_some());
    }
}
