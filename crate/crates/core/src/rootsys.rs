//! Root systems of reductive groups: Cartan matrices in Bourbaki numbering,
//! weights in fundamental-weight coordinates, positive roots of standard
//! sub-systems and their Weyl vectors.
//!
//! Conventions: the Cartan entry `c[i][j]` is `<alpha_i^vee, alpha_j>`, so the
//! fundamental-weight coordinates of `alpha_j` are the `j`-th column. Simple
//! roots of a product are numbered factor by factor and named `a1`, `a2`, ...

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{dot, q, serde_q, Q};

/// Cap on the total number of simple roots.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_legal_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Number of positive roots of the simple system of this family and rank.
    pub fn positive_root_count(self, n: usize) -> usize {
        match self {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Simple factors plus the rank of a central torus, e.g. `A2xA2+T1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub factors: Vec<Factor>,
    pub central_rank: usize,
}

impl RootSystemSpec {
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            if !f.family.is_legal_rank(f.rank) {
                return Err(Error::RootSystem(format!("illegal factor {f}")));
            }
        }
        if self.semisimple_rank() > MAX_RANK {
            return Err(Error::RootSystem(format!(
                "total rank {} exceeds {MAX_RANK}",
                self.semisimple_rank()
            )));
        }
        if self.factors.is_empty() && self.central_rank == 0 {
            return Err(Error::RootSystem("empty root system".into()));
        }
        Ok(())
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))?;
        match (self.factors.is_empty(), self.central_rank) {
            (_, 0) => Ok(()),
            (true, k) => write!(f, "T{k}"),
            (false, k) => write!(f, "+T{k}"),
        }
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: String| Error::RootSystem(format!("`{s}`: {msg}"));
        let (semisimple, central) = match s.split_once('+') {
            Some((a, b)) => (a, Some(b)),
            None if s.starts_with(['T', 't']) => ("", Some(s)),
            None => (s, None),
        };
        let central_rank = match central {
            None => 0,
            Some(t) => {
                let digits = t
                    .strip_prefix(['T', 't'])
                    .ok_or_else(|| bad(format!("central part `{t}` must be T<k>")))?;
                digits
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad central rank `{digits}`")))?
            }
        };
        let mut factors = Vec::new();
        if !semisimple.is_empty() {
            for part in semisimple.split(['x', 'X', '*']) {
                let mut chars = part.chars();
                let family = chars
                    .next()
                    .and_then(Family::from_letter)
                    .ok_or_else(|| bad(format!("unknown factor `{part}`")))?;
                let rank = chars
                    .as_str()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad rank in factor `{part}`")))?;
                factors.push(Factor { family, rank });
            }
        }
        let spec = RootSystemSpec {
            factors,
            central_rank,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A vector in X(B) ⊗ Q: fundamental-weight coordinates plus central coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    #[serde(
        serialize_with = "serde_q::serialize_vec",
        deserialize_with = "serde_q::deserialize_vec"
    )]
    pub fund: Vec<Q>,
    #[serde(
        default,
        serialize_with = "serde_q::serialize_vec",
        deserialize_with = "serde_q::deserialize_vec"
    )]
    pub central: Vec<Q>,
}

impl Weight {
    pub fn new(fund: Vec<Q>, central: Vec<Q>) -> Self {
        Weight { fund, central }
    }

    pub fn zero(rank: usize, central_rank: usize) -> Self {
        Weight {
            fund: vec![Q::zero(); rank],
            central: vec![Q::zero(); central_rank],
        }
    }

    pub fn from_ints(fund: &[i64]) -> Self {
        Weight {
            fund: fund.iter().map(|&x| q(x)).collect(),
            central: Vec::new(),
        }
    }

    pub fn with_central_rank(mut self, central_rank: usize) -> Self {
        self.central.resize(central_rank, Q::zero());
        self
    }

    pub fn is_zero(&self) -> bool {
        self.fund.iter().chain(&self.central).all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight {
            fund: self.fund.iter().map(|x| x * c).collect(),
            central: self.central.iter().map(|x| x * c).collect(),
        }
    }

    /// All coordinates, fundamental first.
    pub fn coords(&self) -> Vec<Q> {
        self.fund.iter().chain(&self.central).cloned().collect()
    }

    pub fn from_coords(coords: &[Q], rank: usize) -> Weight {
        Weight {
            fund: coords[..rank].to_vec(),
            central: coords[rank..].to_vec(),
        }
    }

    /// Equality on the semisimple part only.
    pub fn fund_eq(&self, other: &Weight) -> bool {
        self.fund == other.fund
    }
}

fn zip_with(a: &[Q], b: &[Q], f: impl Fn(&Q, &Q) -> Q) -> Vec<Q> {
    assert_eq!(a.len(), b.len(), "weight dimension mismatch");
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            fund: zip_with(&self.fund, &rhs.fund, |x, y| x + y),
            central: zip_with(&self.central, &rhs.central, |x, y| x + y),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            fund: zip_with(&self.fund, &rhs.fund, |x, y| x - y),
            central: zip_with(&self.central, &rhs.central, |x, y| x - y),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(&q(-1))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fund: Vec<String> = self.fund.iter().map(crate::rational::fmt_q).collect();
        write!(f, "({})", fund.join(", "))?;
        if !self.central.is_empty() {
            let c: Vec<String> = self.central.iter().map(crate::rational::fmt_q).collect();
            write!(f, " + central({})", c.join(", "))?;
        }
        Ok(())
    }
}

/// A vector in the dual of X(B) ⊗ Q, coordinates in the basis dual to the
/// fundamental weights (then the central dual basis).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coweight {
    #[serde(
        serialize_with = "serde_q::serialize_vec",
        deserialize_with = "serde_q::deserialize_vec"
    )]
    pub fund: Vec<Q>,
    #[serde(
        default,
        serialize_with = "serde_q::serialize_vec",
        deserialize_with = "serde_q::deserialize_vec"
    )]
    pub central: Vec<Q>,
}

impl Coweight {
    pub fn new(fund: Vec<Q>, central: Vec<Q>) -> Self {
        Coweight { fund, central }
    }

    pub fn zero(rank: usize, central_rank: usize) -> Self {
        Coweight {
            fund: vec![Q::zero(); rank],
            central: vec![Q::zero(); central_rank],
        }
    }

    pub fn coords(&self) -> Vec<Q> {
        self.fund.iter().chain(&self.central).cloned().collect()
    }

    pub fn from_coords(coords: &[Q], rank: usize) -> Coweight {
        Coweight {
            fund: coords[..rank].to_vec(),
            central: coords[rank..].to_vec(),
        }
    }
}

/// `<cw, w>`, the coordinate dot product.
pub fn pair(cw: &Coweight, w: &Weight) -> Result<Q> {
    if cw.fund.len() != w.fund.len() {
        return Err(Error::DimensionMismatch {
            expected: w.fund.len(),
            actual: cw.fund.len(),
        });
    }
    if cw.central.len() != w.central.len() {
        return Err(Error::DimensionMismatch {
            expected: w.central.len(),
            actual: cw.central.len(),
        });
    }
    Ok(dot(&cw.fund, &w.fund) + dot(&cw.central, &w.central))
}

/// A root with both its simple-root expansion and its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub simple_coeffs: Vec<i64>,
    pub as_weight: Weight,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i64>>,
    two_rho: Vec<i64>,
}

fn factor_cartan(f: Factor) -> Vec<Vec<i64>> {
    let n = f.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match f.family {
        Family::A => (0..n - 1).for_each(|i| edge(i, i + 1, -1, -1)),
        Family::B => {
            (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
            edge(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
            edge(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            (0..n - 2).for_each(|i| edge(i, i + 1, -1, -1));
            edge(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            edge(0, 2, -1, -1);
            edge(1, 3, -1, -1);
            (2..n - 1).for_each(|i| edge(i, i + 1, -1, -1));
        }
        Family::F => {
            edge(0, 1, -1, -1);
            edge(1, 2, -1, -2);
            edge(2, 3, -1, -1);
        }
        Family::G => edge(0, 1, -3, -1),
    }
    c
}

impl RootSystem {
    pub fn build(spec: RootSystemSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.semisimple_rank();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut off = 0;
        for f in &spec.factors {
            let block = factor_cartan(*f);
            for (i, row) in block.iter().enumerate() {
                cartan[off + i][off..off + f.rank].copy_from_slice(row);
            }
            off += f.rank;
        }
        let mut rs = RootSystem {
            spec,
            cartan,
            two_rho: Vec::new(),
        };
        let all: Vec<usize> = (0..n).collect();
        rs.two_rho = rs.two_rho(&all)?;
        Ok(rs)
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Self::build(spec.parse()?)
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.spec.central_rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_name(&self, i: usize) -> String {
        format!("a{}", i + 1)
    }

    pub fn simple_index(&self, name: &str) -> Option<usize> {
        let k: usize = name.trim().strip_prefix(['a', 'A'])?.parse().ok()?;
        (1..=self.rank()).contains(&k).then(|| k - 1)
    }

    /// Index of the simple factor containing simple root `i`.
    pub fn factor_of(&self, i: usize) -> Option<usize> {
        let mut off = 0;
        for (k, f) in self.spec.factors.iter().enumerate() {
            if i < off + f.rank {
                return Some(k);
            }
            off += f.rank;
        }
        None
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank(), self.central_rank())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = self.zero_weight();
        w.fund[i] = q(1);
        w
    }

    fn weight_of_coeffs(&self, coeffs: &[i64]) -> Weight {
        let fund = (0..self.rank())
            .map(|i| q((0..self.rank()).map(|j| self.cartan[i][j] * coeffs[j]).sum()))
            .collect();
        Weight {
            fund,
            central: vec![Q::zero(); self.central_rank()],
        }
    }

    pub fn root_from_coeffs(&self, coeffs: Vec<i64>) -> Root {
        let as_weight = self.weight_of_coeffs(&coeffs);
        Root {
            simple_coeffs: coeffs,
            as_weight,
        }
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        self.root_from_coeffs(c)
    }

    /// `<alpha_i^vee, w>`, i.e. the `i`-th fundamental coordinate.
    pub fn pair_coroot(&self, i: usize, w: &Weight) -> Result<Q> {
        self.check_index(i)?;
        if w.fund.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: w.fund.len(),
            });
        }
        Ok(w.fund[i].clone())
    }

    fn normalize_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut s = subset.to_vec();
        for &i in &s {
            self.check_index(i)?;
        }
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    /// Positive roots of the sub-system generated by `subset`, ordered by
    /// height and then with earlier simple roots first.
    pub fn positive_roots(&self, subset: &[usize]) -> Result<Vec<Root>> {
        let subset = self.normalize_subset(subset)?;
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut layer: Vec<Vec<i64>> = subset
            .iter()
            .map(|&i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        seen.extend(layer.iter().cloned());
        while !layer.is_empty() {
            found.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for beta in &layer {
                let w = self.weight_of_coeffs(beta);
                for &i in &subset {
                    // p = largest k with beta - k alpha_i a root
                    let mut p = 0i64;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = crate::rational::to_i64(&w.fund[i]).expect("integral root");
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        found.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        Ok(found
            .into_iter()
            .map(|c| self.root_from_coeffs(c))
            .collect())
    }

    /// Fundamental coordinates of `2 rho_I`.
    pub fn two_rho(&self, subset: &[usize]) -> Result<Vec<i64>> {
        let n = self.rank();
        let subset = self.normalize_subset(subset)?;
        if subset.len() == n && !self.two_rho.is_empty() {
            return Ok(self.two_rho.clone());
        }
        let mut acc = vec![0i64; n];
        for r in self.positive_roots(&subset)? {
            for (a, x) in acc.iter_mut().zip(&r.as_weight.fund) {
                *a += crate::rational::to_i64(x).expect("integral root");
            }
        }
        Ok(acc)
    }

    /// Half the sum of the positive roots of the sub-system generated by `subset`.
    pub fn rho(&self, subset: &[usize]) -> Result<Weight> {
        let two = self.two_rho(subset)?;
        Ok(Weight {
            fund: two.iter().map(|&x| crate::rational::qf(x, 2)).collect(),
            central: vec![Q::zero(); self.central_rank()],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar() {
        let s: RootSystemSpec = "A3+T1".parse().unwrap();
        assert_eq!(s.factors.len(), 1);
        assert_eq!(s.central_rank, 1);
        assert_eq!(s.to_string(), "A3+T1");
        assert_eq!("A2xA2".parse::<RootSystemSpec>().unwrap().to_string(), "A2xA2");
        assert_eq!("T3".parse::<RootSystemSpec>().unwrap().central_rank, 3);
        for bad in ["E5", "F3", "G3", "B1", "Q2", "A", "", "A2+X1"] {
            assert!(bad.parse::<RootSystemSpec>().is_err(), "{bad}");
        }
        let err = "A2xE9".parse::<RootSystemSpec>().unwrap_err();
        assert!(err.to_string().contains("E9"), "{err}");
    }

    #[test]
    fn small_cartan_matrices() {
        let rs = RootSystem::parse("A1xA1xA1").unwrap();
        assert_eq!(rs.cartan(), &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.cartan(), &[vec![2, -1], vec![-1, 2]]);
        let rs = RootSystem::parse("B2").unwrap();
        assert_eq!(rs.cartan()[0][1], -1);
        assert_eq!(rs.cartan()[1][0], -2);
    }

    #[test]
    fn coroot_pairings() {
        let rs = RootSystem::parse("A2xG2").unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = q((i == j) as i64);
                assert_eq!(rs.pair_coroot(i, &rs.fundamental_weight(j)).unwrap(), expected);
            }
            assert_eq!(rs.pair_coroot(i, &rs.simple_root(i).as_weight).unwrap(), q(2));
        }
        assert!(rs.pair_coroot(4, &rs.zero_weight()).is_err());
        assert!(rs.pair_coroot(0, &Weight::from_ints(&[1])).is_err());
    }

    #[test]
    fn subsystem_roots_in_a4() {
        let rs = RootSystem::parse("A4").unwrap();
        assert!(rs.positive_roots(&[]).unwrap().is_empty());
        let roots = rs.positive_roots(&[1, 2]).unwrap();
        let coeffs: Vec<_> = roots.iter().map(|r| r.simple_coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 1, 0]]);
        assert_eq!(rs.two_rho(&[1, 2]).unwrap(), vec![-2, 2, 2, -2]);
        assert_eq!(rs.rho(&[]).unwrap(), rs.zero_weight());
        assert!(rs.positive_roots(&[7]).is_err());
    }

    #[test]
    fn pairing_dimension_checks() {
        let cw = Coweight::new(vec![q(1), q(2)], vec![]);
        assert_eq!(pair(&cw, &Weight::from_ints(&[3, 4])).unwrap(), q(11));
        assert!(pair(&cw, &Weight::from_ints(&[3])).is_err());
    }
}
