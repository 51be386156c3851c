//! The `antican` command line. [`run`] takes the argument list and the two
//! output streams and returns the exit status, so it can be driven from tests.
//!
//! Exit status: 0 on success, 1 when the datum is inconsistent or a check
//! fails, 2 on usage errors (bad flags, unknown catalog keys, unreadable files).

use std::fmt::Write as _;
use std::io::Write;

use antican::anticanon::{
    anticanonical_divisor, color_type, cone_contains, cone_generators, enumerate_positive_solutions,
    kappa, uniqueness_certificate, valuation_cone, verify_decomposition, MAX_UNKNOWNS,
};
use antican::catalog::{builtin, keys};
use antican::knop::{classify_knop, classify_knop_color};
use antican::lunatypes::classify_luna;
use antican::rational::{fmt_q, parse_q};
use antican::{parse_datum, validate_datum, Coweight, Error, Report, RootSystem, SphericalDatum, Weight};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "antican", version, about = "Anticanonical divisors of spherical homogeneous spaces")]
struct Cli {
    /// Machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Source {
    /// A datum file, or `catalog:<key>`.
    datum: String,
    /// Parameter of a catalog entry.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots and rho of a root system, or of a subset of its simple roots.
    Roots {
        /// e.g. `A2xB3+T1`
        spec: String,
        /// Comma-separated simple roots, e.g. `a1,a3`.
        #[arg(long)]
        subset: Option<String>,
    },
    /// The weight kappa_P = 2 rho_S - 2 rho_{S^p}.
    Kappa(Source),
    /// Color types from spherical roots, from the stabilizer image, or both.
    Types {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Color multiplicities m_i and the divisor of the anticanonical section.
    Antican(Source),
    /// Decomposition, audits and the exhaustive uniqueness search.
    Verify(Source),
    /// Valuation cone, its generators and the uniqueness certificate.
    Cone {
        #[command(flatten)]
        source: Source,
        /// Coweight coordinates to test, e.g. `-1,0,1/2`.
        #[arg(long, allow_hyphen_values = true)]
        contains: Option<String>,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Structural checks on a datum.
    Validate(Source),
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Keys, parameters and descriptions.
    List,
    /// Print an entry as a datum file.
    Dump {
        key: String,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Luna,
    Knop,
    Both,
}

enum Failure {
    Usage(String),
    Datum(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownKey(_) | Error::ParamOutOfRange(_) => Failure::Usage(e.to_string()),
            other => Failure::Datum(other.to_string()),
        }
    }
}

/// Rendered output plus whether every check passed.
struct Output {
    json: Value,
    table: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output { json, table, ok: true }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.table)
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Datum(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Roots { spec, subset } => roots(spec, subset.as_deref()),
        Command::Kappa(s) => kappa_cmd(&load(s)?),
        Command::Types { source, method } => types(&load(source)?, *method),
        Command::Antican(s) => antican_cmd(&load(s)?),
        Command::Verify(s) => verify(&load(s)?),
        Command::Cone { source, contains } => cone(&load(source)?, contains.as_deref()),
        Command::Catalog { action } => catalog(action),
        Command::Validate(s) => Ok(validate(&load(s)?)),
    }
}

fn load(src: &Source) -> Result<SphericalDatum, Failure> {
    if let Some(key) = src.datum.strip_prefix("catalog:") {
        return Ok(builtin(key, src.n)?.datum);
    }
    if src.n.is_some() {
        return Err(Failure::Usage("--n only applies to catalog entries".into()));
    }
    let text = std::fs::read_to_string(&src.datum)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", src.datum)))?;
    parse_datum(&text).map_err(|e| Failure::Datum(format!("{}: {e}", src.datum)))
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(headers.to_vec());
    s += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn names(rs: &RootSystem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| rs.simple_name(i)).collect()
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn weight_json(w: &Weight) -> Value {
    serde_json::to_value(w).expect("weight serializes")
}

fn coweight_text(c: &Coweight) -> String {
    let coords: Vec<String> = c.coords().iter().map(fmt_q).collect();
    format!("({})", coords.join(", "))
}

fn roots(spec: &str, subset: Option<&str>) -> Result<Output, Failure> {
    let rs = RootSystem::parse(spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let idx: Vec<usize> = match subset {
        None => (0..rs.rank()).collect(),
        Some(text) => text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|n| {
                rs.simple_index(n)
                    .ok_or_else(|| Failure::Usage(format!("unknown simple root `{n}`")))
            })
            .collect::<Result<_, _>>()?,
    };
    let roots = rs.positive_roots(&idx)?;
    let rho = rs.rho(&idx)?;
    let rows: Vec<Vec<String>> = roots
        .iter()
        .map(|r| {
            let c: Vec<String> = r.simple_coeffs.iter().map(i64::to_string).collect();
            vec![r.height().to_string(), c.join(" "), r.as_weight.to_string()]
        })
        .collect();
    let subset_names = names(&rs, &idx);
    let mut t = format!("root system {}, subset {}\n", rs.spec(), set_text(&subset_names));
    t += &table(&["height", "simple coefficients", "weight"], &rows);
    writeln!(t, "{} positive roots; rho = {rho}", roots.len()).unwrap();
    let json = json!({
        "root_system": rs.spec().to_string(),
        "subset": subset_names,
        "positive_roots": roots.iter().map(|r| json!({
            "height": r.height(),
            "coeffs": r.simple_coeffs,
            "weight": weight_json(&r.as_weight),
        })).collect::<Vec<_>>(),
        "count": roots.len(),
        "rho": weight_json(&rho),
    });
    Ok(Output::ok(json, t))
}

fn kappa_cmd(d: &SphericalDatum) -> Result<Output, Failure> {
    let k = kappa(&d.rs, &d.sp);
    let sp = names(&d.rs, &d.sp);
    let rows: Vec<Vec<String>> = (0..d.rs.rank())
        .map(|i| {
            vec![
                d.rs.simple_name(i),
                if d.sp.contains(&i) { "yes" } else { "no" }.into(),
                fmt_q(&k.fund[i]),
            ]
        })
        .collect();
    let mut t = format!("S^p = {}\n", set_text(&sp));
    t += &table(&["root", "in S^p", "<a^vee, kappa>"], &rows);
    writeln!(t, "kappa_P = {k}").unwrap();
    Ok(Output::ok(json!({ "sp": sp, "kappa": weight_json(&k) }), t))
}

fn types(d: &SphericalDatum, method: Method) -> Result<Output, Failure> {
    let want_luna = method != Method::Knop;
    let want_knop = method != Method::Luna;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut agree_all = true;
    for (i, c) in d.colors.iter().enumerate() {
        let luna = match (&d.spherical_roots, want_luna) {
            (Some(_), true) => Some(classify_luna(d, i)?),
            _ => None,
        };
        let (knop, evidence) = match (&d.presentation, want_knop) {
            (Some(_), true) => {
                let t = classify_knop_color(d, i)?;
                let first = classify_knop(d, i, c.moved_by[0])?;
                (t, Some(first.evidence))
            }
            _ => (None, None),
        };
        let agree = match (method, luna.or(c.declared_type), knop) {
            (Method::Both, Some(l), Some(k)) => Some(l == k),
            _ => None,
        };
        agree_all &= agree != Some(false);
        let show = |t: Option<antican::ColorType>| t.map_or("-".to_string(), |t| t.to_string());
        let mut row = vec![c.name.clone(), set_text(&names(&d.rs, &c.moved_by)), show(c.declared_type)];
        if want_luna {
            row.push(show(luna));
        }
        if want_knop {
            row.push(show(knop));
            row.push(evidence.map_or("-".into(), |e| serde_json::to_value(e).unwrap().as_str().unwrap().to_string()));
        }
        if method == Method::Both {
            row.push(match agree {
                Some(true) => "yes".into(),
                Some(false) => "NO".into(),
                None => "-".into(),
            });
        }
        rows.push(row);
        entries.push(json!({
            "name": c.name,
            "moved_by": names(&d.rs, &c.moved_by),
            "declared": c.declared_type,
            "luna": luna,
            "knop": knop,
            "evidence": evidence,
            "agree": agree,
        }));
    }
    let mut headers = vec!["color", "moved by", "declared"];
    if want_luna {
        headers.push("luna");
    }
    if want_knop {
        headers.extend(["knop", "evidence"]);
    }
    if method == Method::Both {
        headers.push("agree");
    }
    let mut t = table(&headers, &rows);
    if !agree_all {
        t += "the two classifications disagree: the datum is inconsistent\n";
    }
    Ok(Output {
        json: json!({ "colors": entries, "agree": agree_all }),
        table: t,
        ok: agree_all,
    })
}

fn antican_cmd(d: &SphericalDatum) -> Result<Output, Failure> {
    let div = anticanonical_divisor(d)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (i, (name, m)) in div.color_coeffs.iter().enumerate() {
        let t = color_type(d, i)?;
        rows.push(vec![name.clone(), t.to_string(), m.to_string()]);
        entries.push(json!({ "name": name, "type": t, "m": m }));
    }
    let mut t = table(&["color", "type", "m"], &rows);
    if div.boundary_count > 0 {
        writeln!(t, "boundary divisors X1..X{}: coefficient 1", div.boundary_count).unwrap();
    }
    writeln!(t, "{div}").unwrap();
    let json = json!({
        "colors": entries,
        "boundary_count": div.boundary_count,
        "boundary_coeff": div.boundary_coeff,
        "divisor": div.to_string(),
    });
    Ok(Output::ok(json, t))
}

fn report_table(r: &Report) -> String {
    let rows: Vec<Vec<String>> = r
        .findings
        .iter()
        .map(|f| {
            vec![
                if f.pass { "ok" } else { "FAIL" }.into(),
                f.check.clone(),
                f.subject.clone(),
                f.expected.clone(),
                f.actual.clone(),
            ]
        })
        .collect();
    table(&["", "check", "subject", "expected", "actual"], &rows)
}

fn validate(d: &SphericalDatum) -> Output {
    let r = validate_datum(d);
    let failures = r.failures().count();
    let mut t = report_table(&r);
    writeln!(t, "{} findings, {failures} failed", r.findings.len()).unwrap();
    Output {
        json: json!({ "findings": r, "pass": r.all_pass() }),
        table: t,
        ok: r.all_pass(),
    }
}

fn verify(d: &SphericalDatum) -> Result<Output, Failure> {
    let v = validate(d);
    let mut ok = v.ok;
    let mut t = v.table;
    let decomposition = match verify_decomposition(d) {
        Ok(b) => {
            ok &= b;
            writeln!(t, "decomposition kappa_P = sum m_i chi_i: {}", if b { "holds" } else { "FAILS" }).unwrap();
            json!(b)
        }
        Err(e @ Error::InsufficientData(_)) => {
            writeln!(t, "decomposition: skipped ({e})").unwrap();
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let chis: Option<Vec<Weight>> = d.colors.iter().map(|c| c.chi.clone()).collect();
    let bound = 10;
    let uniqueness = match chis {
        Some(chis) if chis.len() <= MAX_UNKNOWNS && !chis.is_empty() => {
            let sols = enumerate_positive_solutions(&kappa(&d.rs, &d.sp), &chis, bound)?;
            let m = anticanonical_divisor(d)?.coefficients();
            let unique = sols == vec![m];
            ok &= unique;
            let shown: Vec<String> = sols
                .iter()
                .map(|s| format!("({})", s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            writeln!(
                t,
                "positive solutions with m_i <= {bound}: {} [{}]{}",
                sols.len(),
                shown.join(", "),
                if unique { "" } else { " (expected exactly the computed m)" }
            )
            .unwrap();
            json!({ "bound": bound, "solutions": sols, "unique": unique })
        }
        _ => {
            let why = if d.colors.is_empty() {
                "no colors".to_string()
            } else if d.colors.len() > MAX_UNKNOWNS {
                format!("more than {MAX_UNKNOWNS} colors")
            } else {
                "some color has no chi".to_string()
            };
            writeln!(t, "uniqueness search: skipped ({why})").unwrap();
            Value::Null
        }
    };
    writeln!(t, "{}", if ok { "verified" } else { "verification FAILED" }).unwrap();
    let mut json = v.json;
    json["decomposition"] = decomposition;
    json["uniqueness"] = uniqueness;
    json["pass"] = json!(ok);
    Ok(Output { json, table: t, ok })
}

fn parse_coweight(d: &SphericalDatum, text: &str) -> Result<Coweight, Failure> {
    let coords = text
        .split(',')
        .map(|s| parse_q(s.trim()).ok_or_else(|| Failure::Usage(format!("malformed rational `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let want = d.rs.rank() + d.rs.central_rank();
    if coords.len() != want {
        return Err(Failure::Usage(format!("--contains needs {want} coordinates, got {}", coords.len())));
    }
    Ok(Coweight::from_coords(&coords, d.rs.rank()))
}

fn cone(d: &SphericalDatum, contains: Option<&str>) -> Result<Output, Failure> {
    let c = valuation_cone(d)?;
    let mut t = String::from("valuation cone: <v, sigma> <= 0 for sigma in\n");
    for s in &c.halfspaces {
        writeln!(t, "  {s}").unwrap();
    }
    if c.halfspaces.is_empty() {
        t += "  (none: the cone is all of N_Q)\n";
    }
    let mut json = json!({ "halfspaces": c.halfspaces });
    if d.lattice_m.is_some() {
        let g = cone_generators(d)?;
        let cert = uniqueness_certificate(d)?;
        for r in &g.rays {
            writeln!(t, "ray   {}", coweight_text(r)).unwrap();
        }
        for l in &g.lines {
            writeln!(t, "line  ±{}", coweight_text(l)).unwrap();
        }
        writeln!(
            t,
            "uniqueness certificate: {} (interior witness {}, orthogonal dimension {})",
            if cert.holds { "holds" } else { "does not hold" },
            coweight_text(&cert.witness),
            cert.orthogonal_dim
        )
        .unwrap();
        json["rays"] = json!(g.rays);
        json["lines"] = json!(g.lines);
        json["certificate"] = json!(cert);
    }
    if let Some(text) = contains {
        let v = parse_coweight(d, text)?;
        let inside = cone_contains(&c, &v)?;
        writeln!(t, "{} {} the cone", coweight_text(&v), if inside { "lies in" } else { "is outside" }).unwrap();
        json["contains"] = json!({ "v": v, "inside": inside });
    }
    Ok(Output::ok(json, t))
}

fn catalog(action: &CatalogAction) -> Result<Output, Failure> {
    match action {
        CatalogAction::List => {
            let ks = keys();
            let rows: Vec<Vec<String>> = ks
                .iter()
                .map(|k| {
                    let param = match (k.param, k.range, k.default) {
                        (Some(p), Some((lo, hi)), Some(def)) => format!("{p} in {lo}..={hi} (default {def})"),
                        _ => "-".into(),
                    };
                    vec![format!("catalog:{}", k.key), param, k.description.into()]
                })
                .collect();
            Ok(Output::ok(json!(ks), table(&["key", "parameter", "space"], &rows)))
        }
        CatalogAction::Dump { key, n } => {
            let e = builtin(key, *n)?;
            let text = e.datum.to_json();
            Ok(Output::ok(e.datum.to_value(), text + "\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_pads_columns() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
