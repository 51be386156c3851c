//! The combinatorial record of a spherical homogeneous space `G/H`, its JSON
//! form (`sphdatum/1`) and structural validation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knop::{LieElement, LiePresentation, Mat2, Shape, Sl2Triple, Witness};
use crate::linalg;
use crate::lunatypes::{audit_pairings, classify_luna, resolved_type, ColorType};
use crate::rational::{QText, Q};
use crate::report::{Finding, Report};
use crate::rootsys::{Coweight, RootSystem, Weight};

pub const SCHEMA_VERSION: &str = "sphdatum/1";

/// A color `D`: the simple roots moving it, and optionally its type, the
/// `B`-weight `chi` of its equation and its image `rho(D)` in `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorRecord {
    pub name: String,
    /// Sorted, nonempty.
    pub moved_by: Vec<usize>,
    pub declared_type: Option<ColorType>,
    pub chi: Option<Weight>,
    pub rho: Option<Coweight>,
}

impl ColorRecord {
    pub fn new(name: impl Into<String>, moved_by: Vec<usize>) -> Self {
        ColorRecord {
            name: name.into(),
            moved_by,
            declared_type: None,
            chi: None,
            rho: None,
        }
    }

    pub fn with_type(mut self, t: ColorType) -> Self {
        self.declared_type = Some(t);
        self
    }

    pub fn with_chi(mut self, chi: Weight) -> Self {
        self.chi = Some(chi);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalDatum {
    pub rs: RootSystem,
    /// `S^p`, sorted.
    pub sp: Vec<usize>,
    pub colors: Vec<ColorRecord>,
    /// Basis of `M`.
    pub lattice_m: Option<Vec<Weight>>,
    /// `Σ`.
    pub spherical_roots: Option<Vec<Weight>>,
    /// Number of `G`-invariant prime divisors of the embedding.
    pub boundary_count: usize,
    pub presentation: Option<LiePresentation>,
}

/// Builder input for [`SphericalDatum::new`]; `sp: None` means "recompute".
#[derive(Debug, Clone)]
pub struct DatumParts {
    pub rs: RootSystem,
    pub sp: Option<Vec<usize>>,
    pub colors: Vec<ColorRecord>,
    pub lattice_m: Option<Vec<Weight>>,
    pub spherical_roots: Option<Vec<Weight>>,
    pub boundary_count: usize,
    pub presentation: Option<LiePresentation>,
}

impl DatumParts {
    pub fn new(rs: RootSystem) -> Self {
        DatumParts {
            rs,
            sp: None,
            colors: Vec::new(),
            lattice_m: None,
            spherical_roots: None,
            boundary_count: 0,
            presentation: None,
        }
    }
}

fn check_weight(rs: &RootSystem, w: &Weight, at: &str) -> Result<()> {
    if w.fund.len() != rs.rank() || w.central.len() != rs.central_rank() {
        return Err(Error::parse(
            at,
            format!(
                "weight has {}+{} coordinates, expected {}+{}",
                w.fund.len(),
                w.central.len(),
                rs.rank(),
                rs.central_rank()
            ),
        ));
    }
    Ok(())
}

/// Set of simple roots moving no color.
pub fn compute_sp(rs: &RootSystem, colors: &[ColorRecord]) -> Vec<usize> {
    let moved: BTreeSet<usize> = colors.iter().flat_map(|c| c.moved_by.iter().copied()).collect();
    (0..rs.rank()).filter(|a| !moved.contains(a)).collect()
}

impl SphericalDatum {
    /// Assemble a datum, enforcing the structural invariants (valid indices,
    /// unique names, nonempty moving sets, dimensions, independent `Σ`).
    pub fn new(parts: DatumParts) -> Result<Self> {
        let DatumParts {
            rs,
            sp,
            mut colors,
            lattice_m,
            spherical_roots,
            boundary_count,
            presentation,
        } = parts;
        let mut names = BTreeSet::new();
        for (i, c) in colors.iter_mut().enumerate() {
            let at = format!("colors[{i}]");
            if c.name.trim().is_empty() {
                return Err(Error::parse(format!("{at}.name"), "empty color name"));
            }
            if !names.insert(c.name.clone()) {
                return Err(Error::parse(
                    format!("{at}.name"),
                    format!("duplicate color name `{}`", c.name),
                ));
            }
            if c.moved_by.is_empty() {
                return Err(Error::parse(
                    format!("{at}.moved_by"),
                    "a color must be moved by at least one simple root",
                ));
            }
            for &a in &c.moved_by {
                if a >= rs.rank() {
                    return Err(Error::parse(format!("{at}.moved_by"), format!("index {a} out of range")));
                }
            }
            c.moved_by.sort_unstable();
            c.moved_by.dedup();
            if let Some(chi) = &c.chi {
                check_weight(&rs, chi, &format!("{at}.chi"))?;
            }
            if let Some(rho) = &c.rho {
                if rho.fund.len() != rs.rank() || rho.central.len() != rs.central_rank() {
                    return Err(Error::parse(format!("{at}.rho"), "coweight has wrong length"));
                }
            }
        }
        let sp = match sp {
            Some(mut sp) => {
                for &a in &sp {
                    if a >= rs.rank() {
                        return Err(Error::parse("Sp", format!("index {a} out of range")));
                    }
                }
                sp.sort_unstable();
                sp.dedup();
                sp
            }
            None => compute_sp(&rs, &colors),
        };
        if let Some(m) = &lattice_m {
            for (j, w) in m.iter().enumerate() {
                check_weight(&rs, w, &format!("M[{j}]"))?;
            }
            let coords: Vec<Vec<Q>> = m.iter().map(Weight::coords).collect();
            if !linalg::is_independent(&coords) {
                return Err(Error::parse("M", "basis of M is linearly dependent"));
            }
        }
        if let Some(sigma) = &spherical_roots {
            for (j, w) in sigma.iter().enumerate() {
                check_weight(&rs, w, &format!("spherical_roots[{j}]"))?;
            }
            if let Some(m) = &lattice_m {
                if sigma.len() > m.len() {
                    return Err(Error::parse(
                        "spherical_roots",
                        format!("{} spherical roots exceed rank {} of M", sigma.len(), m.len()),
                    ));
                }
            }
            let coords: Vec<Vec<Q>> = sigma.iter().map(Weight::coords).collect();
            if !linalg::is_independent(&coords) {
                return Err(Error::parse(
                    "spherical_roots",
                    "spherical roots are linearly dependent",
                ));
            }
        }
        if let Some(p) = &presentation {
            if p.rank() != rs.rank() {
                return Err(Error::parse(
                    "presentation.triples",
                    format!("{} triples for {} simple roots", p.rank(), rs.rank()),
                ));
            }
            if p.shape().central_rank != rs.central_rank() {
                return Err(Error::parse("presentation.central_rank", "does not match the root system"));
            }
            for w in p.witnesses() {
                if !names.contains(&w.color) {
                    return Err(Error::parse(
                        "presentation.witnesses",
                        format!("unknown color `{}`", w.color),
                    ));
                }
            }
        }
        Ok(SphericalDatum {
            rs,
            sp,
            colors,
            lattice_m,
            spherical_roots,
            boundary_count,
            presentation,
        })
    }

    pub fn color_index(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|c| c.name == name)
    }

    /// `Δ(alpha)` as color indices.
    pub fn delta(&self, alpha: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i].moved_by.contains(&alpha))
            .collect()
    }

    pub fn compute_sp(&self) -> Vec<usize> {
        compute_sp(&self.rs, &self.colors)
    }

    fn root_names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.rs.simple_name(i)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("datum serializes")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("datum serializes")
    }

    fn to_doc(&self) -> DatumDoc {
        DatumDoc {
            version: SCHEMA_VERSION.to_string(),
            root_system: self.rs.spec().to_string(),
            sp: Some(self.root_names(&self.sp)),
            colors: self
                .colors
                .iter()
                .map(|c| ColorDoc {
                    name: c.name.clone(),
                    moved_by: self.root_names(&c.moved_by),
                    ty: c.declared_type,
                    chi: c.chi.clone(),
                    rho: c.rho.as_ref().map(|r| r.coords().into_iter().map(QText).collect()),
                })
                .collect(),
            m: self.lattice_m.clone(),
            spherical_roots: self.spherical_roots.clone(),
            boundary_count: self.boundary_count,
            presentation: self.presentation.as_ref().map(|p| PresentationDoc::from_presentation(p, &self.rs)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumDoc {
    version: String,
    root_system: String,
    #[serde(rename = "Sp", default)]
    sp: Option<Vec<String>>,
    #[serde(default)]
    colors: Vec<ColorDoc>,
    #[serde(rename = "M", default)]
    m: Option<Vec<Weight>>,
    #[serde(default)]
    spherical_roots: Option<Vec<Weight>>,
    #[serde(default)]
    boundary_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    presentation: Option<PresentationDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColorDoc {
    name: String,
    moved_by: Vec<String>,
    #[serde(rename = "type", default)]
    ty: Option<ColorType>,
    #[serde(default)]
    chi: Option<Weight>,
    #[serde(default)]
    rho: Option<Vec<QText>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    blocks: Vec<usize>,
    #[serde(default)]
    central_rank: usize,
    h_basis: Vec<ElementDoc>,
    b_basis: Vec<ElementDoc>,
    triples: Vec<TripleDoc>,
    #[serde(default)]
    witnesses: Vec<WitnessDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    blocks: Vec<Vec<Vec<QText>>>,
    #[serde(default)]
    central: Vec<QText>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleDoc {
    e: ElementDoc,
    h: ElementDoc,
    f: ElementDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    color: String,
    root: String,
    matrix: Vec<Vec<QText>>,
}

impl ElementDoc {
    fn from_element(x: &LieElement) -> Self {
        ElementDoc {
            blocks: x
                .blocks
                .iter()
                .map(|m| m.iter().map(|r| r.iter().cloned().map(QText).collect()).collect())
                .collect(),
            central: x.central.iter().cloned().map(QText).collect(),
        }
    }

    fn into_element(self, shape: &Shape, at: &str) -> Result<LieElement> {
        let central = if self.central.is_empty() {
            vec![Q::zero(); shape.central_rank]
        } else {
            self.central.into_iter().map(|x| x.0).collect()
        };
        let x = LieElement {
            blocks: self
                .blocks
                .into_iter()
                .map(|m| m.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
                .collect(),
            central,
        };
        let ok = x.blocks.len() == shape.blocks.len()
            && x.central.len() == shape.central_rank
            && x
                .blocks
                .iter()
                .zip(&shape.blocks)
                .all(|(m, &n)| m.len() == n && m.iter().all(|r| r.len() == n));
        if !ok {
            return Err(Error::parse(at, "matrix shape does not match `blocks`"));
        }
        Ok(x)
    }
}

impl PresentationDoc {
    fn from_presentation(p: &LiePresentation, rs: &RootSystem) -> Self {
        PresentationDoc {
            blocks: p.shape().blocks.clone(),
            central_rank: p.shape().central_rank,
            h_basis: p.h_basis().iter().map(ElementDoc::from_element).collect(),
            b_basis: p.b_basis().iter().map(ElementDoc::from_element).collect(),
            triples: p
                .triples()
                .iter()
                .map(|t| TripleDoc {
                    e: ElementDoc::from_element(&t.e),
                    h: ElementDoc::from_element(&t.h),
                    f: ElementDoc::from_element(&t.f),
                })
                .collect(),
            witnesses: p
                .witnesses()
                .iter()
                .map(|w| WitnessDoc {
                    color: w.color.clone(),
                    root: rs.simple_name(w.root),
                    matrix: w
                        .matrix
                        .0
                        .iter()
                        .map(|r| r.iter().cloned().map(QText).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    fn into_presentation(self, rs: &RootSystem) -> Result<LiePresentation> {
        let shape = Shape {
            blocks: self.blocks,
            central_rank: self.central_rank,
        };
        let elements = |docs: Vec<ElementDoc>, field: &str| -> Result<Vec<LieElement>> {
            docs.into_iter()
                .enumerate()
                .map(|(i, d)| d.into_element(&shape, &format!("presentation.{field}[{i}]")))
                .collect()
        };
        let h_basis = elements(self.h_basis, "h_basis")?;
        let b_basis = elements(self.b_basis, "b_basis")?;
        let triples = self
            .triples
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let at = |s: &str| format!("presentation.triples[{i}].{s}");
                Ok(Sl2Triple {
                    e: t.e.into_element(&shape, &at("e"))?,
                    h: t.h.into_element(&shape, &at("h"))?,
                    f: t.f.into_element(&shape, &at("f"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let witnesses = self
            .witnesses
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                let at = format!("presentation.witnesses[{i}]");
                let root = rs
                    .simple_index(&w.root)
                    .ok_or_else(|| Error::parse(&at, format!("unknown simple root `{}`", w.root)))?;
                let m = w.matrix;
                if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
                    return Err(Error::parse(&at, "witness must be a 2x2 matrix"));
                }
                Ok(Witness {
                    color: w.color,
                    root,
                    matrix: Mat2([
                        [m[0][0].0.clone(), m[0][1].0.clone()],
                        [m[1][0].0.clone(), m[1][1].0.clone()],
                    ]),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LiePresentation::new(shape, h_basis, b_basis, triples, witnesses).map_err(|e| match e {
            Error::Presentation(m) => Error::parse("presentation", m),
            other => other,
        })
    }
}

fn pad_weight(mut w: Weight, rs: &RootSystem) -> Weight {
    if w.central.is_empty() {
        w.central = vec![Q::zero(); rs.central_rank()];
    }
    w
}

/// Parse a `sphdatum/1` JSON document.
pub fn parse_datum(text: &str) -> Result<SphericalDatum> {
    let doc: DatumDoc = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    if doc.version != SCHEMA_VERSION {
        return Err(Error::parse(
            "version",
            format!("expected \"{SCHEMA_VERSION}\", got \"{}\"", doc.version),
        ));
    }
    let rs = RootSystem::parse(&doc.root_system)
        .map_err(|e| Error::parse("root_system", e.to_string()))?;
    let resolve = |name: &str, at: String| {
        rs.simple_index(name)
            .ok_or_else(|| Error::parse(at, format!("unknown simple root `{name}`")))
    };
    let sp = doc
        .sp
        .map(|names| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| resolve(n, format!("Sp[{i}]")))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let mut colors = Vec::with_capacity(doc.colors.len());
    for (i, c) in doc.colors.into_iter().enumerate() {
        let moved_by = c
            .moved_by
            .iter()
            .enumerate()
            .map(|(j, n)| resolve(n, format!("colors[{i}].moved_by[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let rho = c.rho.map(|v| {
            let coords: Vec<Q> = v.into_iter().map(|x| x.0).collect();
            if coords.len() == rs.rank() {
                Coweight::new(coords, vec![Q::zero(); rs.central_rank()])
            } else {
                Coweight::from_coords(&coords, rs.rank().min(coords.len()))
            }
        });
        colors.push(ColorRecord {
            name: c.name,
            moved_by,
            declared_type: c.ty,
            chi: c.chi.map(|w| pad_weight(w, &rs)),
            rho,
        });
    }
    let presentation = doc.presentation.map(|p| p.into_presentation(&rs)).transpose()?;
    SphericalDatum::new(DatumParts {
        sp,
        colors,
        lattice_m: doc.m.map(|m| m.into_iter().map(|w| pad_weight(w, &rs)).collect()),
        spherical_roots: doc
            .spherical_roots
            .map(|s| s.into_iter().map(|w| pad_weight(w, &rs)).collect()),
        boundary_count: doc.boundary_count,
        presentation,
        rs,
    })
}

/// Check the datum against the structural facts every spherical datum obeys.
/// Findings are data; nothing here fails.
pub fn validate_datum(datum: &SphericalDatum) -> Report {
    let rs = &datum.rs;
    let mut report = Report::default();
    let names = |idx: &[usize]| {
        let v: Vec<String> = idx.iter().map(|&i| rs.simple_name(i)).collect();
        format!("{{{}}}", v.join(","))
    };
    report.push(Finding::new(
        "sp_consistency",
        "Sp",
        names(&datum.compute_sp()),
        names(&datum.sp),
    ));
    let types: BTreeMap<usize, Option<ColorType>> = (0..datum.colors.len())
        .map(|i| (i, resolved_type(datum, i).ok().flatten()))
        .collect();
    for alpha in 0..rs.rank() {
        let delta = datum.delta(alpha);
        let subject = rs.simple_name(alpha);
        report.push(Finding::with_pass(
            "delta_bound",
            &subject,
            "<= 2",
            delta.len(),
            delta.len() <= 2,
        ));
        // |Δ(alpha)| = 2 exactly when its colors are of type a
        for &i in &delta {
            if let Some(t) = types[&i] {
                let expected = if t == ColorType::A { 2 } else { 1 };
                report.push(Finding::new(
                    "delta_size_by_type",
                    format!("{} ({t}) at {subject}", datum.colors[i].name),
                    expected,
                    delta.len(),
                ));
            }
        }
    }
    for c in &datum.colors {
        let overlap: Vec<usize> = c.moved_by.iter().copied().filter(|a| datum.sp.contains(a)).collect();
        report.push(Finding::new("moved_by_outside_sp", &c.name, "{}", names(&overlap)));
    }
    if let Some(sigma) = &datum.spherical_roots {
        if let Some(m) = &datum.lattice_m {
            let mc: Vec<Vec<Q>> = m.iter().map(Weight::coords).collect();
            for (j, s) in sigma.iter().enumerate() {
                report.push(Finding::with_pass(
                    "sigma_in_span_m",
                    format!("spherical_roots[{j}]"),
                    "in span(M)",
                    s,
                    linalg::in_span(&mc, &s.coords()),
                ));
            }
        }
        for alpha in 0..rs.rank() {
            let root = rs.simple_root(alpha).as_weight;
            let both = sigma.contains(&root) && sigma.contains(&root.scale(&crate::rational::q(2)));
            if both {
                report.push(Finding::with_pass(
                    "sigma_root_and_double",
                    rs.simple_name(alpha),
                    "not both alpha and 2 alpha",
                    "both",
                    false,
                ));
            }
        }
        for (i, c) in datum.colors.iter().enumerate() {
            match (c.declared_type, classify_luna(datum, i)) {
                (Some(d), Ok(l)) => report.push(Finding::new("luna_vs_declared", &c.name, d, l)),
                (_, Err(e)) => {
                    report.push(Finding::with_pass("luna_classification", &c.name, "ok", e, false))
                }
                (None, Ok(_)) => {}
            }
        }
    }
    report.extend(audit_pairings(datum));
    report.normalized()
}
