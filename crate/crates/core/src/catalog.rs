//! Built-in spherical homogeneous spaces with known answers.
//!
//! | key          | space                                   | colors                    |
//! |--------------|-----------------------------------------|---------------------------|
//! | `toric`      | the torus `(C^*)^r` (param `r`)          | none, `r` boundary divisors |
//! | `sl2_mod_T`  | `SL(2)/T`                               | two of type a             |
//! | `sl2_mod_N`  | `SL(2)/N(T)`                            | one of type 2a            |
//! | `sl2_mod_U`  | `SL(2)/U`                               | one of type b             |
//! | `brion_5_1`  | `SL(n) x SL(n) / SL(n)` (param `n`)      | `n-1` of type b           |
//! | `brion_5_2`  | `SL(2)^3 / SL(2)`                        | three of type a           |
//! | `brion_5_3`  | `SL(n)/SO(n)` (param `n`)                | `n-1` of type 2a          |
//! | `brion_5_4`  | `SL(n)/SL(n-1)` (param `n`)              | two of type b             |
//!
//! The weights `chi` of the color equations are those of the principal minors
//! (or coordinate functions) cutting the colors out. For `SL(2)^3/SL(2)` the
//! equation of `D_ij` is the determinant of the 2x2 matrix formed by the first
//! rows of factors `i` and `j`; lower triangular `B` scales row one of factor
//! `i` by the first diagonal entry, so the weight is `omega_i + omega_j`. For
//! `SL(n)/SO(n)` the minor `f_i` of `A M A^T` picks up the square of the
//! corresponding minor of `A`, giving `2 omega_i`.

use serde::Serialize;

use crate::datum::{ColorRecord, DatumParts, SphericalDatum};
use crate::error::{Error, Result};
use crate::knop::{
    standard_triple, triangular_basis, LieElement, LiePresentation, Mat2, Matrix, Shape, Witness,
};
use crate::lunatypes::ColorType;
use crate::rational::q;
use crate::rootsys::{RootSystem, Weight};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published computation of the example.
    Published,
    /// Immediate from the definitions.
    Trivial,
    /// Recomputed independently (by hand or by a test oracle).
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

fn tag<T>(value: T, provenance: Provenance) -> Tagged<T> {
    Tagged { value, provenance }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// The color weights stored in the datum.
    pub chi: Tagged<Vec<Weight>>,
    pub types: Tagged<Vec<ColorType>>,
    pub m: Tagged<Vec<u64>>,
    pub kappa: Tagged<Vec<i64>>,
    pub boundary: Tagged<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub param: Option<u32>,
    pub description: String,
    pub datum: SphericalDatum,
    pub expected: Expected,
}

#[derive(Debug, Clone, Serialize)]
pub struct KeyInfo {
    pub key: &'static str,
    pub param: Option<&'static str>,
    pub range: Option<(u32, u32)>,
    pub default: Option<u32>,
    pub description: &'static str,
}

pub fn keys() -> Vec<KeyInfo> {
    let k = |key, param, range, default, description| KeyInfo {
        key,
        param,
        range,
        default,
        description,
    };
    vec![
        k("toric", Some("r"), Some((1, 10)), Some(2), "torus (C*)^r with r boundary divisors"),
        k("sl2_mod_T", None, None, None, "SL(2)/T"),
        k("sl2_mod_N", None, None, None, "SL(2)/N(T)"),
        k("sl2_mod_U", None, None, None, "SL(2)/U"),
        k("brion_5_1", Some("n"), Some((2, 10)), Some(3), "SL(n) x SL(n) / diagonal SL(n)"),
        k("brion_5_2", None, None, None, "SL(2)^3 / diagonal SL(2)"),
        k("brion_5_3", Some("n"), Some((3, 10)), Some(3), "SL(n)/SO(n)"),
        k("brion_5_4", Some("n"), Some((3, 10)), Some(5), "SL(n)/SL(n-1)"),
    ]
}

/// Build the entry for `key`; `param` defaults per [`keys`].
pub fn builtin(key: &str, param: Option<u32>) -> Result<CatalogEntry> {
    let info = keys()
        .into_iter()
        .find(|k| k.key == key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    let n = match (info.range, param) {
        (None, Some(p)) => {
            return Err(Error::ParamOutOfRange(format!("`{key}` takes no parameter (got {p})")))
        }
        (None, None) => 0,
        (Some((lo, hi)), p) => {
            let p = p.or(info.default).expect("parameterized keys have defaults");
            if !(lo..=hi).contains(&p) {
                return Err(Error::ParamOutOfRange(format!(
                    "`{key}` needs {} in {lo}..={hi}, got {p}",
                    info.param.unwrap_or("n")
                )));
            }
            p
        }
    };
    let (datum, expected) = match key {
        "toric" => toric(n as usize)?,
        "sl2_mod_T" => sl2_mod_t()?,
        "sl2_mod_N" => sl2_mod_n()?,
        "sl2_mod_U" => sl2_mod_u()?,
        "brion_5_1" => group_as_symmetric_space(n as usize)?,
        "brion_5_2" => diagonal_sl2_cubed()?,
        "brion_5_3" => sl_mod_so(n as usize)?,
        "brion_5_4" => sl_mod_sl(n as usize)?,
        _ => unreachable!("key list and builders agree"),
    };
    let description = match info.param {
        Some(p) => format!("{} ({p} = {n})", info.description),
        None => info.description.to_string(),
    };
    Ok(CatalogEntry {
        key: key.to_string(),
        param: info.range.map(|_| n),
        description,
        datum,
        expected,
    })
}

fn chis(colors: &[ColorRecord]) -> Vec<Weight> {
    colors.iter().filter_map(|c| c.chi.clone()).collect()
}

fn ints(m: &[&[i64]]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn unit_weight(rs: &RootSystem, idx: &[usize], coeff: i64) -> Weight {
    let mut w = rs.zero_weight();
    for &i in idx {
        w.fund[i] = q(coeff);
    }
    w
}

/// Lower (or upper) Borel and standard triples in every block.
fn standard_borel(shape: &Shape, lower: &[bool]) -> (Vec<LieElement>, Vec<crate::knop::Sl2Triple>) {
    let mut b = Vec::new();
    let mut triples = Vec::new();
    for (k, &n) in shape.blocks.iter().enumerate() {
        b.extend(triangular_basis(shape, k, lower[k]));
        triples.extend((0..n - 1).map(|i| standard_triple(shape, k, i, lower[k])));
    }
    (b, triples)
}

/// Basis of `sl(n)` (as matrices).
fn sl_basis(n: usize) -> Vec<Matrix> {
    let shape = Shape {
        blocks: vec![n],
        central_rank: 0,
    };
    let mut out: Vec<Matrix> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(LieElement::unit(&shape, 0, i, j).blocks.remove(0));
            }
        }
    }
    for i in 0..n - 1 {
        let mut m = LieElement::unit(&shape, 0, i, i).blocks.remove(0);
        m[i + 1][i + 1] = q(-1);
        out.push(m);
    }
    out
}

fn toric(r: usize) -> Result<(SphericalDatum, Expected)> {
    let rs = RootSystem::parse(&format!("T{r}"))?;
    let lattice: Vec<Weight> = (0..r)
        .map(|i| {
            let mut w = rs.zero_weight();
            w.central[i] = q(1);
            w
        })
        .collect();
    let mut parts = DatumParts::new(rs);
    parts.lattice_m = Some(lattice);
    parts.spherical_roots = Some(Vec::new());
    parts.boundary_count = r;
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Trivial),
        types: tag(vec![], Provenance::Trivial),
        m: tag(vec![], Provenance::Trivial),
        kappa: tag(vec![], Provenance::Trivial),
        boundary: tag(vec![1; r], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

fn sl2_presentation(h: Matrix, witnesses: Vec<Witness>) -> Result<LiePresentation> {
    let shape = Shape {
        blocks: vec![2],
        central_rank: 0,
    };
    let (b, triples) = standard_borel(&shape, &[true]);
    let h_basis = vec![LieElement::in_block(&shape, 0, h)];
    LiePresentation::new(shape, h_basis, b, triples, witnesses)
}

fn sl2_entry(
    colors: Vec<ColorRecord>,
    m: i64,
    sigma: Vec<i64>,
    h: Matrix,
    witnesses: Vec<Witness>,
    expected_m: u64,
) -> Result<(SphericalDatum, Expected)> {
    let rs = RootSystem::parse("A1")?;
    let types = colors.iter().map(|c| c.declared_type.expect("typed")).collect();
    let ncolors = colors.len();
    let mut parts = DatumParts::new(rs);
    parts.colors = colors;
    parts.lattice_m = Some(vec![Weight::from_ints(&[m])]);
    parts.spherical_roots = Some(sigma.iter().map(|&s| Weight::from_ints(&[s])).collect());
    parts.presentation = Some(sl2_presentation(h, witnesses)?);
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Derived),
        types: tag(types, Provenance::Published),
        m: tag(vec![expected_m; ncolors], Provenance::Derived),
        kappa: tag(vec![2], Provenance::Trivial),
        boundary: tag(vec![], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

fn sl2_mod_t() -> Result<(SphericalDatum, Expected)> {
    let colors = ["D1", "D2"]
        .iter()
        .map(|n| {
            ColorRecord::new(*n, vec![0])
                .with_type(ColorType::A)
                .with_chi(Weight::from_ints(&[1]))
        })
        .collect();
    sl2_entry(colors, 2, vec![2], ints(&[&[0, 1], &[1, 0]]), vec![], 1)
}

fn sl2_mod_n() -> Result<(SphericalDatum, Expected)> {
    let colors = vec![ColorRecord::new("D1", vec![0])
        .with_type(ColorType::TwoA)
        .with_chi(Weight::from_ints(&[2]))];
    let weyl = Witness {
        color: "D1".into(),
        root: 0,
        matrix: Mat2::from_ints([[0, 1], [-1, 0]]),
    };
    sl2_entry(colors, 4, vec![4], ints(&[&[0, 1], &[1, 0]]), vec![weyl], 1)
}

fn sl2_mod_u() -> Result<(SphericalDatum, Expected)> {
    let colors = vec![ColorRecord::new("D1", vec![0])
        .with_type(ColorType::B)
        .with_chi(Weight::from_ints(&[1]))];
    sl2_entry(colors, 1, vec![], ints(&[&[0, 1], &[0, 0]]), vec![], 2)
}

/// `G = SL(n) x SL(n)` acting on `SL(n)` by left and right multiplication,
/// `B = (lower triangular) x (upper triangular)`, `H` the diagonal. The
/// identity already lies in the open `B`-orbit.
fn group_as_symmetric_space(n: usize) -> Result<(SphericalDatum, Expected)> {
    let r = n - 1;
    let rs = RootSystem::parse(&format!("A{r}xA{r}"))?;
    let colors: Vec<ColorRecord> = (0..r)
        .map(|i| {
            ColorRecord::new(format!("D{}", i + 1), vec![i, r + i])
                .with_type(ColorType::B)
                .with_chi(unit_weight(&rs, &[i, r + i], 1))
        })
        .collect();
    let lattice = colors.iter().map(|c| c.chi.clone().expect("set above")).collect();
    let shape = Shape {
        blocks: vec![n, n],
        central_rank: 0,
    };
    let (b, triples) = standard_borel(&shape, &[true, false]);
    let h = sl_basis(n)
        .into_iter()
        .map(|x| LieElement {
            blocks: vec![x.clone(), x],
            central: vec![],
        })
        .collect();
    let mut parts = DatumParts::new(rs);
    parts.colors = colors;
    parts.lattice_m = Some(lattice);
    parts.presentation = Some(LiePresentation::new(shape, h, b, triples, vec![])?);
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Published),
        types: tag(vec![ColorType::B; r], Provenance::Published),
        m: tag(vec![2; r], Provenance::Published),
        kappa: tag(vec![2; 2 * r], Provenance::Trivial),
        boundary: tag(vec![], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

/// `SL(2)^3` over the diagonal, conjugated by `(1, u(1), u(2))` with
/// `u(t) = [[1, t], [0, 1]]` so the basepoint is generic for lower triangular `B`.
fn diagonal_sl2_cubed() -> Result<(SphericalDatum, Expected)> {
    let rs = RootSystem::parse("A1xA1xA1")?;
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let colors: Vec<ColorRecord> = pairs
        .iter()
        .map(|&(i, j)| {
            ColorRecord::new(format!("D{}{}", i + 1, j + 1), vec![i, j])
                .with_type(ColorType::A)
                .with_chi(unit_weight(&rs, &[i, j], 1))
        })
        .collect();
    let lattice = colors.iter().map(|c| c.chi.clone().expect("set above")).collect();
    let sigma = (0..3).map(|i| rs.simple_root(i).as_weight).collect();
    let shape = Shape {
        blocks: vec![2, 2, 2],
        central_rank: 0,
    };
    let (b, triples) = standard_borel(&shape, &[true, true, true]);
    let conj = [ints(&[&[1, 1], &[0, 1]]), ints(&[&[1, 2], &[0, 1]])];
    let h = sl_basis(2)
        .into_iter()
        .map(|x| {
            LieElement {
                blocks: vec![x.clone(), x.clone(), x],
                central: vec![],
            }
            .conjugate_block(1, &conj[0])?
            .conjugate_block(2, &conj[1])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut parts = DatumParts::new(rs);
    parts.colors = colors;
    parts.lattice_m = Some(lattice);
    parts.spherical_roots = Some(sigma);
    parts.presentation = Some(LiePresentation::new(shape, h, b, triples, vec![])?);
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Derived),
        types: tag(vec![ColorType::A; 3], Provenance::Published),
        m: tag(vec![1; 3], Provenance::Published),
        kappa: tag(vec![2; 3], Provenance::Trivial),
        boundary: tag(vec![], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

/// `SL(n)` acting on symmetric matrices by `A.M = A M A^T`, stabilizer
/// `SO(n)` of the identity, lower triangular `B`. The identity has nonzero
/// leading principal minors, so it lies in the open orbit.
fn sl_mod_so(n: usize) -> Result<(SphericalDatum, Expected)> {
    let r = n - 1;
    let rs = RootSystem::parse(&format!("A{r}"))?;
    let colors: Vec<ColorRecord> = (0..r)
        .map(|i| {
            ColorRecord::new(format!("D{}", i + 1), vec![i])
                .with_type(ColorType::TwoA)
                .with_chi(unit_weight(&rs, &[i], 2))
        })
        .collect();
    let lattice = (0..r).map(|i| unit_weight(&rs, &[i], 2)).collect();
    let sigma = (0..r).map(|i| rs.simple_root(i).as_weight.scale(&q(2))).collect();
    let shape = Shape {
        blocks: vec![n],
        central_rank: 0,
    };
    let (b, triples) = standard_borel(&shape, &[true]);
    let mut h = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut x = LieElement::unit(&shape, 0, i, j);
            x.blocks[0][j][i] = q(-1);
            h.push(x);
        }
    }
    // diag(.., 1, -1, ..) times -1 on another coordinate lies in SO(n) ∩ P_alpha
    let witnesses = (0..r)
        .map(|i| Witness {
            color: format!("D{}", i + 1),
            root: i,
            matrix: Mat2::from_ints([[1, 0], [0, -1]]),
        })
        .collect();
    let mut parts = DatumParts::new(rs);
    parts.colors = colors;
    parts.lattice_m = Some(lattice);
    parts.spherical_roots = Some(sigma);
    parts.presentation = Some(LiePresentation::new(shape, h, b, triples, witnesses)?);
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Derived),
        types: tag(vec![ColorType::TwoA; r], Provenance::Published),
        m: tag(vec![1; r], Provenance::Published),
        kappa: tag(vec![2; r], Provenance::Trivial),
        boundary: tag(vec![], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

/// `SL(n)/SL(n-1)` with `SL(n-1)` in the lower-right block, upper triangular
/// `B`. The stabilizer is conjugated by `1 + E_{n,1}`, moving the basepoint
/// `(e_1, e_1^*)` to `(e_1 + e_n, e_1^*)`, off both colors `X_n = 0` and `Y_1 = 0`.
fn sl_mod_sl(n: usize) -> Result<(SphericalDatum, Expected)> {
    let r = n - 1;
    let rs = RootSystem::parse(&format!("A{r}"))?;
    let sp: Vec<usize> = (1..r - 1).collect();
    let colors = vec![
        ColorRecord::new("D1", vec![r - 1])
            .with_type(ColorType::B)
            .with_chi(rs.fundamental_weight(r - 1)),
        ColorRecord::new("D2", vec![0])
            .with_type(ColorType::B)
            .with_chi(rs.fundamental_weight(0)),
    ];
    let lattice = vec![rs.fundamental_weight(0), rs.fundamental_weight(r - 1)];
    let shape = Shape {
        blocks: vec![n],
        central_rank: 0,
    };
    let (b, triples) = standard_borel(&shape, &[false]);
    let mut g = ints(&[]);
    for i in 0..n {
        g.push((0..n).map(|j| q((i == j) as i64)).collect());
    }
    g[n - 1][0] = q(1);
    let h = sl_basis(n - 1)
        .into_iter()
        .map(|x| {
            let mut m = vec![vec![q(0); n]; n];
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    m[i + 1][j + 1] = x[i][j].clone();
                }
            }
            LieElement::in_block(&shape, 0, m).conjugate_block(0, &g)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut kappa = vec![0i64; r];
    kappa[0] = r as i64;
    kappa[r - 1] = r as i64;
    let mut parts = DatumParts::new(rs);
    parts.sp = Some(sp);
    parts.colors = colors;
    parts.lattice_m = Some(lattice);
    parts.presentation = Some(LiePresentation::new(shape, h, b, triples, vec![])?);
    let expected = Expected {
        chi: tag(chis(&parts.colors), Provenance::Published),
        types: tag(vec![ColorType::B; 2], Provenance::Published),
        m: tag(vec![r as u64; 2], Provenance::Published),
        kappa: tag(kappa, Provenance::Derived),
        boundary: tag(vec![], Provenance::Trivial),
    };
    Ok((SphericalDatum::new(parts)?, expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_builds_at_its_default() {
        for k in keys() {
            let e = builtin(k.key, None).unwrap();
            assert_eq!(e.key, k.key);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(builtin("nope", None), Err(Error::UnknownKey(_))));
        assert!(matches!(builtin("brion_5_4", Some(11)), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(builtin("brion_5_3", Some(2)), Err(Error::ParamOutOfRange(_))));
        assert!(matches!(builtin("sl2_mod_T", Some(2)), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn expected_records() {
        assert_eq!(builtin("brion_5_4", Some(5)).unwrap().expected.m.value, vec![4, 4]);
        let e = builtin("brion_5_2", None).unwrap();
        assert_eq!(e.expected.types.value, vec![ColorType::A; 3]);
        assert_eq!(e.expected.chi.provenance, Provenance::Derived);
        assert_eq!(e.expected.chi.value[0], Weight::from_ints(&[1, 1, 0]));
        let so = builtin("brion_5_3", Some(4)).unwrap();
        assert_eq!(so.expected.chi.provenance, Provenance::Derived);
        assert_eq!(so.expected.chi.value[1], Weight::from_ints(&[0, 2, 0]));
        assert_eq!(e.datum.colors.len(), 3);
        assert!(e.datum.sp.is_empty());
        let t = builtin("toric", Some(3)).unwrap();
        assert!(t.datum.colors.is_empty());
        assert_eq!(t.expected.boundary.value, vec![1, 1, 1]);
        assert_eq!(t.datum.boundary_count, 3);
    }
}
