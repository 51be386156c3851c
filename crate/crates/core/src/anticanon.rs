//! The weight `kappa_P = 2 rho_S - 2 rho_{S^p}` of the distinguished
//! anticanonical section, the color multiplicities `m_i` of its divisor,
//! the valuation cone, and the vanishing-order calculus of twisted sections.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::datum::SphericalDatum;
use crate::error::{Error, Result};
use crate::knop::classify_knop_color;
use crate::linalg;
use crate::lunatypes::{resolved_type, ColorType};
use crate::rational::{fmt_q, q, to_i64, Q};
use crate::rootsys::{pair, Coweight, RootSystem, Weight};

/// Largest number of unknowns accepted by [`enumerate_positive_solutions`].
pub const MAX_UNKNOWNS: usize = 8;
/// Largest per-coordinate bound accepted by [`enumerate_positive_solutions`].
pub const MAX_BOUND: u64 = 12;

/// `2 rho_S - 2 rho_{S^p}`; its fundamental coordinate at `alpha` is
/// `2 - <alpha^vee, 2 rho_{S^p}>`. Central coordinates are zero.
pub fn kappa(rs: &RootSystem, sp: &[usize]) -> Weight {
    let two_rho_sp = rs.two_rho(sp).expect("S^p must be a set of simple roots");
    let mut w = rs.zero_weight();
    for (x, r) in w.fund.iter_mut().zip(two_rho_sp) {
        *x = q(2 - r);
    }
    w
}

/// The type of a color: declared or read off the spherical roots, falling
/// back to the Lie presentation.
pub fn color_type(datum: &SphericalDatum, color: usize) -> Result<ColorType> {
    if let Some(t) = resolved_type(datum, color)? {
        return Ok(t);
    }
    if datum.presentation.is_some() {
        if let Some(t) = classify_knop_color(datum, color)? {
            return Ok(t);
        }
    }
    Err(Error::InsufficientData(format!(
        "type of {} is not determined",
        datum.colors[color].name
    )))
}

/// `m_i`: 1 for colors of type a or 2a, `<alpha^vee, kappa_P>` for type b.
pub fn color_coefficient(datum: &SphericalDatum, color: usize) -> Result<u64> {
    let c = &datum.colors[color];
    match color_type(datum, color)? {
        ColorType::A | ColorType::TwoA => Ok(1),
        ColorType::B => {
            let k = kappa(&datum.rs, &datum.sp);
            let mut value: Option<&Q> = None;
            for &alpha in &c.moved_by {
                let v = &k.fund[alpha];
                if let Some(prev) = value {
                    if prev != v {
                        return Err(Error::Inconsistent(format!(
                            "{}: <alpha^vee, kappa_P> differs between its moving roots ({} vs {})",
                            c.name,
                            fmt_q(prev),
                            fmt_q(v)
                        )));
                    }
                }
                value = Some(v);
            }
            let v = value.expect("moved_by is nonempty");
            match to_i64(v) {
                Some(m) if m >= 1 => Ok(m as u64),
                _ => Err(Error::Inconsistent(format!(
                    "{}: <alpha^vee, kappa_P> = {} is not a positive integer",
                    c.name,
                    fmt_q(v)
                ))),
            }
        }
    }
}

/// `Div s = sum m_i D_i + X_1 + ... + X_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnticanonicalDivisor {
    pub color_coeffs: Vec<(String, u64)>,
    pub boundary_coeff: u64,
    pub boundary_count: usize,
}

impl AnticanonicalDivisor {
    pub fn coefficients(&self) -> Vec<u64> {
        self.color_coeffs.iter().map(|(_, m)| *m).collect()
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.color_coeffs.iter().find(|(n, _)| n == name).map(|(_, m)| *m)
    }
}

impl fmt::Display for AnticanonicalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .color_coeffs
            .iter()
            .map(|(n, m)| if *m == 1 { n.clone() } else { format!("{m} {n}") })
            .collect();
        terms.extend((1..=self.boundary_count).map(|j| format!("X{j}")));
        if terms.is_empty() {
            f.write_str("Div s = 0")
        } else {
            write!(f, "Div s = {}", terms.join(" + "))
        }
    }
}

pub fn anticanonical_divisor(datum: &SphericalDatum) -> Result<AnticanonicalDivisor> {
    let color_coeffs = (0..datum.colors.len())
        .map(|i| Ok((datum.colors[i].name.clone(), color_coefficient(datum, i)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnticanonicalDivisor {
        color_coeffs,
        boundary_coeff: 1,
        boundary_count: datum.boundary_count,
    })
}

fn chis(datum: &SphericalDatum) -> Result<Vec<&Weight>> {
    datum
        .colors
        .iter()
        .map(|c| {
            c.chi
                .as_ref()
                .ok_or_else(|| Error::InsufficientData(format!("{} has no chi", c.name)))
        })
        .collect()
}

/// Whether `sum m_i chi_i = kappa_P` on the semisimple part.
pub fn verify_decomposition(datum: &SphericalDatum) -> Result<bool> {
    let chis = chis(datum)?;
    let div = anticanonical_divisor(datum)?;
    let k = kappa(&datum.rs, &datum.sp);
    let mut sum = vec![Q::zero(); datum.rs.rank()];
    for (chi, m) in chis.iter().zip(div.coefficients()) {
        for (s, x) in sum.iter_mut().zip(&chi.fund) {
            *s += x * q(m as i64);
        }
    }
    Ok(sum == k.fund)
}

/// Scale rational vectors by a common denominator into `i64` vectors.
fn integer_rows(rows: &[&[Q]]) -> Result<Vec<Vec<i64>>> {
    let lcm = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scale = Q::from_integer(lcm);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    to_i64(&(x * &scale))
                        .ok_or_else(|| Error::TooLarge("coordinates exceed 64-bit range".into()))
                })
                .collect()
        })
        .collect()
}

/// Every `(m_1, ..., m_k)` with `1 <= m_i <= bound` and `sum m_i chi_i = kappa`
/// on fundamental coordinates, in lexicographic order. Exhaustive, with
/// interval pruning on partial sums.
pub fn enumerate_positive_solutions(
    kappa: &Weight,
    chis: &[Weight],
    bound: u64,
) -> Result<Vec<Vec<u64>>> {
    if bound == 0 {
        return Err(Error::TooLarge("bound must be at least 1".into()));
    }
    if chis.len() > MAX_UNKNOWNS || bound > MAX_BOUND {
        return Err(Error::TooLarge(format!(
            "{} unknowns with bound {bound} (limits: {MAX_UNKNOWNS} unknowns, bound {MAX_BOUND})",
            chis.len()
        )));
    }
    for chi in chis {
        if chi.fund.len() != kappa.fund.len() {
            return Err(Error::DimensionMismatch {
                expected: kappa.fund.len(),
                actual: chi.fund.len(),
            });
        }
    }
    let mut rows: Vec<&[Q]> = vec![&kappa.fund];
    rows.extend(chis.iter().map(|c| c.fund.as_slice()));
    let ints = integer_rows(&rows)?;
    let target = &ints[0];
    let vecs = &ints[1..];
    let k = vecs.len();
    let dim = target.len();
    let b = bound as i64;
    // reach[j][c]: range of sum_{l >= j} m_l vecs[l][c]
    let mut reach = vec![vec![(0i64, 0i64); dim]; k + 1];
    for j in (0..k).rev() {
        for c in 0..dim {
            let (lo, hi) = reach[j + 1][c];
            let (x, y) = (vecs[j][c], vecs[j][c] * b);
            reach[j][c] = (lo + x.min(y), hi + x.max(y));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut residual = target.clone();
    search(0, vecs, &reach, b, &mut residual, &mut current, &mut out);
    Ok(out)
}

fn search(
    j: usize,
    vecs: &[Vec<i64>],
    reach: &[Vec<(i64, i64)>],
    bound: i64,
    residual: &mut Vec<i64>,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if residual
        .iter()
        .zip(&reach[j])
        .any(|(r, (lo, hi))| r < lo || r > hi)
    {
        return;
    }
    if j == vecs.len() {
        // reach is (0, 0) here, so the residual is zero
        out.push(current.clone());
        return;
    }
    for m in 1..=bound {
        for (r, x) in residual.iter_mut().zip(&vecs[j]) {
            *r -= m * x;
        }
        current.push(m as u64);
        search(j + 1, vecs, reach, bound, residual, current, out);
        current.pop();
        for (r, x) in residual.iter_mut().zip(&vecs[j]) {
            *r += m * x;
        }
    }
}

/// `{v : <v, sigma> <= 0 for all sigma ∈ Σ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationCone {
    pub halfspaces: Vec<Weight>,
}

pub fn valuation_cone(datum: &SphericalDatum) -> Result<ValuationCone> {
    let sigma = datum
        .spherical_roots
        .as_ref()
        .ok_or_else(|| Error::InsufficientData("spherical roots are required".into()))?;
    Ok(ValuationCone {
        halfspaces: sigma.clone(),
    })
}

pub fn cone_contains(cone: &ValuationCone, v: &Coweight) -> Result<bool> {
    for s in &cone.halfspaces {
        if pair(v, s)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of the valuation cone inside `N_Q`, written as coweights in
/// `span(M)`: rays `-d_j` dual to the spherical roots and `±d_j` spanning
/// the lineality space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeGenerators {
    pub rays: Vec<Coweight>,
    pub lines: Vec<Coweight>,
}

impl ConeGenerators {
    /// Rays followed by both directions of every line.
    pub fn directions(&self) -> Vec<Coweight> {
        let mut out = self.rays.clone();
        for l in &self.lines {
            out.push(l.clone());
            let neg: Vec<Q> = l.coords().iter().map(|x| -x).collect();
            out.push(Coweight::from_coords(&neg, l.fund.len()));
        }
        out
    }
}

fn require_m(datum: &SphericalDatum) -> Result<&Vec<Weight>> {
    datum
        .lattice_m
        .as_ref()
        .ok_or_else(|| Error::InsufficientData("a basis of M is required".into()))
}

pub fn cone_generators(datum: &SphericalDatum) -> Result<ConeGenerators> {
    let sigma = valuation_cone(datum)?.halfspaces;
    let m = require_m(datum)?;
    let rank = datum.rs.rank();
    let mut basis: Vec<Vec<Q>> = sigma.iter().map(Weight::coords).collect();
    if !linalg::is_independent(&basis) {
        return Err(Error::Inconsistent("spherical roots are linearly dependent".into()));
    }
    for mu in m {
        let mut ext = basis.clone();
        ext.push(mu.coords());
        if linalg::is_independent(&ext) {
            basis = ext;
        }
    }
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| crate::rational::dot(x, y)).collect())
        .collect();
    let inv = linalg::inverse(&gram).expect("Gram matrix of independent vectors is invertible");
    // dual vector j = sum_i inv[i][j] * basis_i, so <d_j, b_k> = delta_jk
    let dual: Vec<Vec<Q>> = (0..basis.len())
        .map(|j| {
            let coeffs: Vec<Q> = inv.iter().map(|row| row[j].clone()).collect();
            linalg::combine(&coeffs, &basis)
        })
        .collect();
    let s = sigma.len();
    let rays = dual[..s]
        .iter()
        .map(|d| {
            let neg: Vec<Q> = d.iter().map(|x| -x).collect();
            Coweight::from_coords(&neg, rank)
        })
        .collect();
    let lines = dual[s..].iter().map(|d| Coweight::from_coords(d, rank)).collect();
    Ok(ConeGenerators { rays, lines })
}

/// Vanishing order along the boundary divisor with valuation `nu` of the
/// twisted section `s * f_mu`: `1 + <nu, mu>`.
pub fn generator_order_shift(datum: &SphericalDatum, mu: &Weight, nu: &Coweight) -> Result<Q> {
    if let Some(m) = &datum.lattice_m {
        let mc: Vec<Vec<Q>> = m.iter().map(Weight::coords).collect();
        if !linalg::in_span(&mc, &mu.coords()) {
            return Err(Error::Inconsistent(format!("{mu} is not in span(M)")));
        }
    }
    Ok(q(1) + pair(nu, mu)?)
}

/// Evidence that a `B`-semi-invariant twist with vanishing order 1 along
/// every boundary direction is trivial: the valuation cone spans `N_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessCertificate {
    pub holds: bool,
    /// Pairs strictly negatively with every spherical root.
    pub witness: Coweight,
    /// Dimension of `{mu ∈ M_Q : <v, mu> = 0 for all v in the cone}`.
    pub orthogonal_dim: usize,
}

pub fn uniqueness_certificate(datum: &SphericalDatum) -> Result<UniquenessCertificate> {
    let gens = cone_generators(datum)?;
    let m = require_m(datum)?;
    let rank = datum.rs.rank();
    let central = datum.rs.central_rank();
    let mut witness = Coweight::zero(rank, central);
    for r in &gens.rays {
        let sum: Vec<Q> = witness
            .coords()
            .iter()
            .zip(r.coords())
            .map(|(a, b)| a + b)
            .collect();
        witness = Coweight::from_coords(&sum, rank);
    }
    let sigma = &datum.spherical_roots.as_ref().expect("checked above");
    let interior = sigma
        .iter()
        .map(|s| pair(&witness, s).map(|p| p.is_negative()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    // mu = sum c_k m_k orthogonal to every generator
    let rows: Vec<Vec<Q>> = gens
        .directions()
        .iter()
        .map(|g| m.iter().map(|mu| pair(g, mu)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let orthogonal_dim = if rows.is_empty() {
        m.len()
    } else {
        linalg::nullspace(&rows, m.len()).len()
    };
    Ok(UniquenessCertificate {
        holds: interior && orthogonal_dim == 0,
        witness,
        orthogonal_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        let a4 = RootSystem::parse("A4").unwrap();
        assert_eq!(kappa(&a4, &[]), Weight::from_ints(&[2, 2, 2, 2]));
        assert_eq!(kappa(&a4, &[1, 2]), Weight::from_ints(&[4, 0, 0, 4]));
        let a111 = RootSystem::parse("A1xA1xA1").unwrap();
        assert_eq!(kappa(&a111, &[]), Weight::from_ints(&[2, 2, 2]));
    }

    #[test]
    fn small_enumerations() {
        let k = Weight::from_ints(&[3, 1]);
        assert_eq!(
            enumerate_positive_solutions(&k, std::slice::from_ref(&k), 5).unwrap(),
            vec![vec![1]]
        );
        let w1 = Weight::from_ints(&[1]);
        let two_w1 = Weight::from_ints(&[2]);
        assert!(enumerate_positive_solutions(&w1, &[two_w1], 12).unwrap().is_empty());
        let many = vec![w1.clone(); 9];
        assert!(matches!(
            enumerate_positive_solutions(&w1, &many, 2),
            Err(Error::TooLarge(_))
        ));
        assert!(enumerate_positive_solutions(&w1, std::slice::from_ref(&w1), 13).is_err());
        // several solutions come out in lexicographic order
        let sols = enumerate_positive_solutions(&Weight::from_ints(&[4]), &[w1.clone(), w1], 3).unwrap();
        assert_eq!(sols, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn divisor_display() {
        let d = AnticanonicalDivisor {
            color_coeffs: vec![("D1".into(), 4), ("D2".into(), 1)],
            boundary_coeff: 1,
            boundary_count: 2,
        };
        assert_eq!(d.to_string(), "Div s = 4 D1 + D2 + X1 + X2");
    }

    #[test]
    fn cone_membership() {
        let cone = ValuationCone {
            halfspaces: vec![Weight::from_ints(&[2, 0]), Weight::from_ints(&[0, 2])],
        };
        let v = |a: i64, b: i64| Coweight::new(vec![q(a), q(b)], vec![]);
        assert!(cone_contains(&cone, &v(0, 0)).unwrap());
        assert!(cone_contains(&cone, &v(-1, -3)).unwrap());
        assert!(!cone_contains(&cone, &v(-1, 1)).unwrap());
        let everything = ValuationCone { halfspaces: vec![] };
        assert!(cone_contains(&everything, &v(5, 5)).unwrap());
    }
}
