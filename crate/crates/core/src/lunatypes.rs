//! Color types read off the spherical roots, and the pairing audits every
//! typed datum must satisfy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::anticanon::kappa;
use crate::datum::SphericalDatum;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q};
use crate::report::{Finding, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColorType {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "b")]
    B,
}

impl ColorType {
    pub fn as_str(self) -> &'static str {
        match self {
            ColorType::A => "a",
            ColorType::TwoA => "2a",
            ColorType::B => "b",
        }
    }
}

impl fmt::Display for ColorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColorType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ColorType::A),
            "2a" => Ok(ColorType::TwoA),
            "b" => Ok(ColorType::B),
            other => Err(Error::parse("type", format!("unknown color type `{other}`"))),
        }
    }
}

/// `alpha ∈ Σ` gives a, `2 alpha ∈ Σ` gives 2a, anything else b. Every moving
/// root must give the same answer.
pub fn classify_luna(datum: &SphericalDatum, color: usize) -> Result<ColorType> {
    let sigma = datum.spherical_roots.as_ref().ok_or_else(|| {
        Error::InsufficientData("spherical roots are required for this classification".into())
    })?;
    let c = &datum.colors[color];
    let mut found: Option<ColorType> = None;
    for &alpha in &c.moved_by {
        let root = datum.rs.simple_root(alpha).as_weight;
        let double = root.scale(&q(2));
        let t = if sigma.contains(&root) {
            ColorType::A
        } else if sigma.contains(&double) {
            ColorType::TwoA
        } else {
            ColorType::B
        };
        match found {
            Some(prev) if prev != t => {
                return Err(Error::Inconsistent(format!(
                    "{}: spherical roots give type {prev} and {t} for different moving roots",
                    c.name
                )))
            }
            _ => found = Some(t),
        }
    }
    found.ok_or_else(|| Error::Inconsistent(format!("{} is moved by no simple root", c.name)))
}

/// `<alpha^vee, chi_i>` predicted from the type of `D_i` and whether `D_i ∈ Δ(alpha)`.
pub fn expected_chi_pairing(t: ColorType, member: bool) -> i64 {
    match (member, t) {
        (false, _) => 0,
        (true, ColorType::TwoA) => 2,
        (true, ColorType::A | ColorType::B) => 1,
    }
}

/// The declared type, cross-checked against spherical roots when both exist.
pub fn resolved_type(datum: &SphericalDatum, color: usize) -> Result<Option<ColorType>> {
    let declared = datum.colors[color].declared_type;
    let luna = match datum.spherical_roots {
        Some(_) => Some(classify_luna(datum, color)?),
        None => None,
    };
    match (declared, luna) {
        (Some(d), Some(l)) if d != l => Err(Error::Inconsistent(format!(
            "{}: declared type {d} but spherical roots give {l}",
            datum.colors[color].name
        ))),
        (d, l) => Ok(d.or(l)),
    }
}

/// Checks the weight pairings implied by the color types:
/// `<alpha^vee, chi_i>` against [`expected_chi_pairing`], `<alpha^vee, kappa_P> = 2`
/// at the moving roots of a/2a colors, and `<alpha^vee, M> = 0` on `S^p`.
pub fn audit_pairings(datum: &SphericalDatum) -> Report {
    let rs = &datum.rs;
    let k = kappa(rs, &datum.sp);
    let mut report = Report::default();
    for (idx, c) in datum.colors.iter().enumerate() {
        let t = match resolved_type(datum, idx) {
            Ok(Some(t)) => t,
            Ok(None) => continue,
            Err(e) => {
                report.push(Finding::with_pass("type_consistency", &c.name, "consistent", e, false));
                continue;
            }
        };
        if let Some(chi) = &c.chi {
            for alpha in 0..rs.rank() {
                let member = c.moved_by.contains(&alpha);
                let expected = expected_chi_pairing(t, member);
                let actual = fmt_q(&chi.fund[alpha]);
                report.push(Finding::new(
                    "chi_pairing",
                    format!("{} ({t}) at {}", c.name, rs.simple_name(alpha)),
                    expected,
                    actual,
                ));
            }
        }
        if matches!(t, ColorType::A | ColorType::TwoA) {
            for &alpha in &c.moved_by {
                report.push(Finding::new(
                    "kappa_pairing",
                    format!("{} ({t}) at {}", c.name, rs.simple_name(alpha)),
                    2,
                    fmt_q(&k.fund[alpha]),
                ));
            }
        }
    }
    if let Some(m) = &datum.lattice_m {
        for &alpha in &datum.sp {
            for (j, mu) in m.iter().enumerate() {
                report.push(Finding::new(
                    "sp_orthogonality",
                    format!("{} vs M[{j}]", rs.simple_name(alpha)),
                    0,
                    fmt_q(&mu.fund[alpha]),
                ));
            }
        }
    }
    report.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_table() {
        assert_eq!(expected_chi_pairing(ColorType::B, true), 1);
        assert_eq!(expected_chi_pairing(ColorType::A, true), 1);
        assert_eq!(expected_chi_pairing(ColorType::TwoA, true), 2);
        assert_eq!(expected_chi_pairing(ColorType::A, false), 0);
        assert_eq!(expected_chi_pairing(ColorType::TwoA, false), 0);
    }

    #[test]
    fn type_text() {
        for t in [ColorType::A, ColorType::TwoA, ColorType::B] {
            assert_eq!(t.as_str().parse::<ColorType>().unwrap(), t);
        }
        assert!("c".parse::<ColorType>().is_err());
    }
}
