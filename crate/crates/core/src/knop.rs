//! Color types from the image of a stabilizer in PGL(2), computed at the
//! Lie-algebra level.
//!
//! A presentation gives `g` as block-diagonal traceless matrices (plus an
//! abelian central block), bases of `b` and of `h`, and an sl2-triple
//! `(e, h, f)` per simple root with `e` in `b`. For a simple root `alpha` the
//! parabolic is `p = b + C f`, and the differential of `P_alpha -> PGL(2)`
//! kills the ideal
//!
//! ```text
//! K = (ker alpha ∩ t) ⊕ sum of the positive root spaces other than g_alpha,
//! ```
//!
//! computed here as `{t ∈ t : [t, e] = 0} + [n, n] + span{e_beta : beta != alpha}`
//! with `t` the centralizer of all `h_beta` and `n = [b, b]`.
//!
//! Torus and torus normalizer share a Lie algebra, so a torus-like image is
//! resolved by a group witness, then by the color's weight pairing, then by
//! spherical roots; otherwise it stays unresolved.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::datum::SphericalDatum;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::lunatypes::{classify_luna, ColorType};
use crate::rational::{fmt_q, q, to_i64, Q};

pub type Matrix = Vec<Vec<Q>>;

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Q::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

/// Block sizes of the simple blocks and rank of the central block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub blocks: Vec<usize>,
    pub central_rank: usize,
}

impl Shape {
    /// Length of the flattened coordinate vector.
    pub fn flat_len(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum::<usize>() + self.central_rank
    }

    /// Dimension of `g`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n - 1).sum::<usize>() + self.central_rank
    }
}

/// An element of `sl(n_1) ⊕ ... ⊕ sl(n_k) ⊕ C^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub blocks: Vec<Matrix>,
    pub central: Vec<Q>,
}

impl LieElement {
    pub fn zero(shape: &Shape) -> Self {
        LieElement {
            blocks: shape.blocks.iter().map(|&n| zero_matrix(n)).collect(),
            central: vec![Q::zero(); shape.central_rank],
        }
    }

    /// The matrix unit `E_ij` (0-based) in block `k`.
    pub fn unit(shape: &Shape, k: usize, i: usize, j: usize) -> Self {
        let mut x = Self::zero(shape);
        x.blocks[k][i][j] = Q::one();
        x
    }

    /// Block `k` set to `m`, zero elsewhere.
    pub fn in_block(shape: &Shape, k: usize, m: Matrix) -> Self {
        let mut x = Self::zero(shape);
        x.blocks[k] = m;
        x
    }

    pub fn shape(&self) -> Shape {
        Shape {
            blocks: self.blocks.iter().map(Vec::len).collect(),
            central_rank: self.central.len(),
        }
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let ab = mat_mul(a, b);
                let ba = mat_mul(b, a);
                ab.into_iter()
                    .zip(ba)
                    .map(|(r, s)| r.into_iter().zip(s).map(|(x, y)| x - y).collect())
                    .collect()
            })
            .collect();
        LieElement {
            blocks,
            central: vec![Q::zero(); self.central.len()],
        }
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        LieElement {
            blocks: self
                .blocks
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
                .collect(),
            central: self.central.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let flat: Vec<Q> = self
            .flatten()
            .into_iter()
            .zip(other.flatten())
            .map(|(x, y)| x + y)
            .collect();
        LieElement::unflatten(&self.shape(), &flat)
    }

    /// Conjugate block `k` by `g` (i.e. `g x g^-1`), other blocks unchanged.
    pub fn conjugate_block(&self, k: usize, g: &Matrix) -> Result<LieElement> {
        let inv = linalg::inverse(g)
            .ok_or_else(|| Error::Presentation("singular conjugator".into()))?;
        let mut out = self.clone();
        out.blocks[k] = mat_mul(&mat_mul(g, &self.blocks[k]), &inv);
        Ok(out)
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.blocks
            .iter()
            .flat_map(|m| m.iter().flatten().cloned())
            .chain(self.central.iter().cloned())
            .collect()
    }

    pub fn unflatten(shape: &Shape, v: &[Q]) -> LieElement {
        let mut it = v.iter().cloned();
        let blocks = shape
            .blocks
            .iter()
            .map(|&n| {
                (0..n)
                    .map(|_| (0..n).map(|_| it.next().expect("flat length")).collect())
                    .collect()
            })
            .collect();
        LieElement {
            blocks,
            central: it.collect(),
        }
    }

    pub fn is_traceless(&self) -> bool {
        self.blocks.iter().all(|m| {
            (0..m.len())
                .fold(Q::zero(), |acc, i| acc + &m[i][i])
                .is_zero()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(Zero::is_zero)
    }
}

/// A 2x2 rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[Q; 2]; 2]);

impl Mat2 {
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2([[q(m[0][0]), q(m[0][1])], [q(m[1][0]), q(m[1][1])]])
    }

    pub fn e() -> Self {
        Self::from_ints([[0, 1], [0, 0]])
    }

    pub fn h() -> Self {
        Self::from_ints([[1, 0], [0, -1]])
    }

    pub fn f() -> Self {
        Self::from_ints([[0, 0], [1, 0]])
    }

    pub fn det(&self) -> Q {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> Q {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([
            [&m[1][1] / &d, -(&m[0][1] / &d)],
            [-(&m[1][0] / &d), &m[0][0] / &d],
        ]))
    }

    pub fn scale(&self, c: &Q) -> Mat2 {
        let m = &self.0;
        Mat2([
            [&m[0][0] * c, &m[0][1] * c],
            [&m[1][0] * c, &m[1][1] * c],
        ])
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
            [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
        ])
    }

    /// `g x g^-1`.
    pub fn conjugate_by(&self, g: &Mat2) -> Option<Mat2> {
        Some(g.mul(self).mul(&g.inverse()?))
    }

    pub fn commutator(&self, o: &Mat2) -> Mat2 {
        self.mul(o).add(&o.mul(self).scale(&q(-1)))
    }

    /// Coordinates `(a, b, c)` of a traceless `[[a, b], [c, -a]]`.
    fn sl2_coords(&self) -> Vec<Q> {
        vec![self.0[0][0].clone(), self.0[0][1].clone(), self.0[1][0].clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_q(&m[0][0]),
            fmt_q(&m[0][1]),
            fmt_q(&m[1][0]),
            fmt_q(&m[1][1])
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

/// A group element of the image for the pair (color, simple root), written
/// in the standard basis of sl2 fixed by the triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub color: String,
    pub root: usize,
    pub matrix: Mat2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    shape: Shape,
    h_basis: Vec<LieElement>,
    b_basis: Vec<LieElement>,
    triples: Vec<Sl2Triple>,
    witnesses: Vec<Witness>,
}

fn flat_all(xs: &[LieElement]) -> Vec<Vec<Q>> {
    xs.iter().map(LieElement::flatten).collect()
}

fn closed_under_bracket(basis: &[LieElement]) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let span = Echelon::from_vectors(&flat_all(basis), first.shape().flat_len());
    basis.iter().enumerate().all(|(i, x)| {
        basis[i + 1..]
            .iter()
            .all(|y| span.contains(&x.bracket(y).flatten()))
    })
}

impl LiePresentation {
    pub fn new(
        shape: Shape,
        h_basis: Vec<LieElement>,
        b_basis: Vec<LieElement>,
        triples: Vec<Sl2Triple>,
        witnesses: Vec<Witness>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::Presentation(m));
        if shape.blocks.iter().any(|&n| n < 2) {
            return bad("block sizes must be at least 2".into());
        }
        let all_elements = h_basis
            .iter()
            .chain(&b_basis)
            .chain(triples.iter().flat_map(|t| [&t.e, &t.h, &t.f]));
        for x in all_elements {
            if x.shape() != shape {
                return bad("element shape does not match the block sizes".into());
            }
            if x.blocks.iter().any(|m| m.iter().any(|r| r.len() != m.len())) {
                return bad("blocks must be square".into());
            }
            if !x.is_traceless() {
                return bad("element is not traceless in every block".into());
            }
        }
        let expected_rank: usize = shape.blocks.iter().map(|n| n - 1).sum();
        if triples.len() != expected_rank {
            return bad(format!(
                "{} triples given, semisimple rank is {expected_rank}",
                triples.len()
            ));
        }
        if !closed_under_bracket(&h_basis) {
            return bad("h basis is not closed under the bracket".into());
        }
        if !closed_under_bracket(&b_basis) {
            return bad("b basis is not closed under the bracket".into());
        }
        let b_span = Echelon::from_vectors(&flat_all(&b_basis), shape.flat_len());
        for (i, t) in triples.iter().enumerate() {
            let two = q(2);
            if t.e.bracket(&t.f) != t.h
                || t.h.bracket(&t.e) != t.e.scale(&two)
                || t.h.bracket(&t.f) != t.f.scale(&-two)
            {
                return bad(format!("triple {} violates the sl2 relations", i + 1));
            }
            if !b_span.contains(&t.e.flatten()) || !b_span.contains(&t.h.flatten()) {
                return bad(format!("triple {}: e and h must lie in b", i + 1));
            }
            if b_span.contains(&t.f.flatten()) {
                return bad(format!("triple {}: f must not lie in b", i + 1));
            }
        }
        for w in &witnesses {
            if w.root >= triples.len() {
                return bad(format!("witness for {}: root index out of range", w.color));
            }
            if w.matrix.det().is_zero() {
                return bad(format!("witness for {} is singular", w.color));
            }
        }
        Ok(LiePresentation {
            shape,
            h_basis,
            b_basis,
            triples,
            witnesses,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn h_basis(&self) -> &[LieElement] {
        &self.h_basis
    }

    pub fn b_basis(&self) -> &[LieElement] {
        &self.b_basis
    }

    pub fn triples(&self) -> &[Sl2Triple] {
        &self.triples
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn witness(&self, color: &str, root: usize) -> Option<&Mat2> {
        self.witnesses
            .iter()
            .find(|w| w.color == color && w.root == root)
            .map(|w| &w.matrix)
    }

    pub fn rank(&self) -> usize {
        self.triples.len()
    }

    fn triple(&self, alpha: usize) -> Result<&Sl2Triple> {
        self.triples.get(alpha).ok_or(Error::IndexOutOfRange(alpha))
    }

    /// A basis of `g`: off-diagonal units, consecutive diagonal differences,
    /// central units.
    pub fn g_basis(&self) -> Vec<LieElement> {
        let mut out = Vec::new();
        for (k, &n) in self.shape.blocks.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(LieElement::unit(&self.shape, k, i, j));
                    }
                }
            }
            for i in 0..n - 1 {
                let mut x = LieElement::unit(&self.shape, k, i, i);
                x.blocks[k][i + 1][i + 1] = -Q::one();
                out.push(x);
            }
        }
        for c in 0..self.shape.central_rank {
            let mut x = LieElement::zero(&self.shape);
            x.central[c] = Q::one();
            out.push(x);
        }
        out
    }

    /// Basis of `p_alpha = b + C f_alpha`.
    pub fn parabolic_basis(&self, alpha: usize) -> Result<Vec<LieElement>> {
        let t = self.triple(alpha)?;
        let mut p = self.b_basis.clone();
        p.push(t.f.clone());
        Ok(p)
    }

    /// Basis of the kernel of the differential of `P_alpha -> PGL(2)`.
    pub fn kernel_basis(&self, alpha: usize) -> Result<Vec<Vec<Q>>> {
        let t = self.triple(alpha)?;
        let g = self.g_basis();
        // x in g with [x, h_beta] = 0 for all beta and [x, e_alpha] = 0
        let mut probes: Vec<&LieElement> = self.triples.iter().map(|s| &s.h).collect();
        probes.push(&t.e);
        let images: Vec<Vec<Q>> = g
            .iter()
            .map(|x| {
                probes
                    .iter()
                    .flat_map(|p| x.bracket(p).flatten())
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Q>> = (0..images[0].len())
            .map(|r| images.iter().map(|col| col[r].clone()).collect())
            .collect();
        let g_flat = flat_all(&g);
        let mut kernel: Vec<Vec<Q>> = linalg::nullspace(&rows, g.len())
            .iter()
            .map(|c| linalg::combine(c, &g_flat))
            .collect();

        let nil: Vec<LieElement> = pairwise_brackets(&self.b_basis, &self.shape);
        let nil_sq = pairwise_brackets(&nil, &self.shape);
        kernel.extend(nil_sq.iter().map(LieElement::flatten));
        kernel.extend(
            self.triples
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != alpha)
                .map(|(_, s)| s.e.flatten()),
        );
        let kernel = linalg::span_basis(&kernel);

        let p_flat = flat_all(&self.parabolic_basis(alpha)?);
        let p_span = Echelon::from_vectors(&p_flat, self.shape.flat_len());
        let p_dim = p_span.rank();
        let mut with_triple = kernel.clone();
        with_triple.extend([t.e.flatten(), t.h.flatten(), t.f.flatten()]);
        if kernel.len() + 3 != p_dim
            || linalg::rank(&with_triple) != p_dim
            || !kernel.iter().all(|k| p_span.contains(k))
        {
            return Err(Error::Presentation(format!(
                "b and the triples do not give a parabolic of the expected shape at root a{}",
                alpha + 1
            )));
        }
        Ok(kernel)
    }
}

fn pairwise_brackets(basis: &[LieElement], shape: &Shape) -> Vec<LieElement> {
    let mut span = Echelon::new(shape.flat_len());
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            span.insert(&x.bracket(y).flatten());
        }
    }
    span.rows().0.iter().map(|v| LieElement::unflatten(shape, v)).collect()
}

/// True iff `b + h = g`, the infinitesimal form of an open `B`-orbit through the basepoint.
pub fn open_orbit_check(pres: &LiePresentation) -> bool {
    let mut all = flat_all(&pres.b_basis);
    all.extend(flat_all(&pres.h_basis));
    !all.is_empty() && linalg::rank(&all) == pres.shape.dim()
}

/// Basis of `h ∩ p_alpha`.
pub fn stabilizer_in_parabolic(pres: &LiePresentation, alpha: usize) -> Result<Vec<LieElement>> {
    let p = flat_all(&pres.parabolic_basis(alpha)?);
    let h = flat_all(&pres.h_basis);
    Ok(linalg::intersect(&h, &p)
        .iter()
        .map(|v| LieElement::unflatten(&pres.shape, v))
        .collect())
}

/// Image of `x ∈ p_alpha` in sl2, with `e, h, f` sent to the standard `E, H, F`.
pub fn dphi_project(pres: &LiePresentation, alpha: usize, x: &LieElement) -> Result<Mat2> {
    let kernel = pres.kernel_basis(alpha)?;
    project_with_kernel(pres, alpha, &kernel, x)
}

fn project_with_kernel(
    pres: &LiePresentation,
    alpha: usize,
    kernel: &[Vec<Q>],
    x: &LieElement,
) -> Result<Mat2> {
    let t = pres.triple(alpha)?;
    if x.shape() != pres.shape {
        return Err(Error::Presentation("element shape mismatch".into()));
    }
    let mut gens = vec![t.e.flatten(), t.h.flatten(), t.f.flatten()];
    gens.extend(kernel.iter().cloned());
    let c = linalg::solve_combination(&gens, &x.flatten()).ok_or_else(|| {
        Error::Presentation(format!("element is not in the parabolic of a{}", alpha + 1))
    })?;
    Ok(Mat2::e()
        .scale(&c[0])
        .add(&Mat2::h().scale(&c[1]))
        .add(&Mat2::f().scale(&c[2])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ImageClass {
    /// One-dimensional and semisimple: a torus or its normalizer.
    TorusLike,
    /// A proper subalgebra containing a nonzero nilpotent.
    ContainsNilpotent,
    /// All of sl2.
    Full,
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageClass::TorusLike => "TORUS_LIKE",
            ImageClass::ContainsNilpotent => "CONTAINS_NILPOTENT",
            ImageClass::Full => "FULL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Image {
    pub basis: Vec<Mat2>,
    pub class: ImageClass,
}

pub fn classify_image(vectors: &[Mat2]) -> Result<Sl2Image> {
    if vectors.iter().any(|v| !v.trace().is_zero()) {
        return Err(Error::Presentation("image vector is not traceless".into()));
    }
    let coords: Vec<Vec<Q>> = vectors.iter().map(Mat2::sl2_coords).collect();
    let basis: Vec<Mat2> = linalg::span_basis(&coords)
        .into_iter()
        .map(|c| Mat2([[c[0].clone(), c[1].clone()], [c[2].clone(), -c[0].clone()]]))
        .collect();
    let class = match basis.len() {
        0 => {
            return Err(Error::Inconsistent(
                "image in PGL(2) has dimension 0; the basepoint is not in the open B-orbit".into(),
            ))
        }
        1 if basis[0].det().is_zero() => ImageClass::ContainsNilpotent,
        1 => ImageClass::TorusLike,
        2 => ImageClass::ContainsNilpotent,
        _ => ImageClass::Full,
    };
    Ok(Sl2Image { basis, class })
}

/// Which piece of evidence decided a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Image,
    Witness,
    ChiPairing,
    SphericalRoots,
    Unresolved,
}

/// Decide between a torus and its normalizer for a torus-like image.
/// `Ok((None, Unresolved))` when neither input settles it.
pub fn resolve_torus_like(
    image: &Sl2Image,
    witness: Option<&Mat2>,
    chi_pairing: Option<i64>,
) -> Result<(Option<ColorType>, Evidence)> {
    if image.class != ImageClass::TorusLike {
        return Err(Error::Inconsistent(format!(
            "image class {} is not torus-like",
            image.class
        )));
    }
    let t = &image.basis[0];
    if let Some(w) = witness {
        let moved = t
            .conjugate_by(w)
            .ok_or_else(|| Error::Presentation("singular witness".into()))?;
        if moved == t.scale(&q(-1)) {
            return Ok((Some(ColorType::TwoA), Evidence::Witness));
        }
        if &moved != t {
            return Err(Error::Presentation(format!(
                "witness {w} does not normalize the image torus spanned by {t}"
            )));
        }
    }
    match chi_pairing {
        Some(1) => Ok((Some(ColorType::A), Evidence::ChiPairing)),
        Some(2) => Ok((Some(ColorType::TwoA), Evidence::ChiPairing)),
        Some(k) => Err(Error::Inconsistent(format!(
            "torus-like image but <alpha^vee, chi> = {k}"
        ))),
        None => Ok((None, Evidence::Unresolved)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnopVerdict {
    pub alpha: usize,
    pub image: Sl2Image,
    pub color_type: Option<ColorType>,
    pub evidence: Evidence,
}

fn presentation_of(datum: &SphericalDatum) -> Result<&LiePresentation> {
    let pres = datum
        .presentation
        .as_ref()
        .ok_or_else(|| Error::InsufficientData("datum has no Lie presentation".into()))?;
    if pres.rank() != datum.rs.rank() {
        return Err(Error::Presentation(format!(
            "presentation has {} simple roots, root system has {}",
            pres.rank(),
            datum.rs.rank()
        )));
    }
    if !open_orbit_check(pres) {
        return Err(Error::Presentation(
            "b + h != g: conjugate h so that the basepoint lies in the open B-orbit".into(),
        ));
    }
    Ok(pres)
}

/// Image of `h ∩ p_alpha` in sl2.
pub fn stabilizer_image(pres: &LiePresentation, alpha: usize) -> Result<Sl2Image> {
    let kernel = pres.kernel_basis(alpha)?;
    let stab = stabilizer_in_parabolic(pres, alpha)?;
    let projected = stab
        .iter()
        .map(|x| project_with_kernel(pres, alpha, &kernel, x))
        .collect::<Result<Vec<_>>>()?;
    classify_image(&projected)
}

/// Classify one color through one of its moving simple roots.
pub fn classify_knop(datum: &SphericalDatum, color: usize, alpha: usize) -> Result<KnopVerdict> {
    let pres = presentation_of(datum)?;
    let c = datum
        .colors
        .get(color)
        .ok_or_else(|| Error::InsufficientData(format!("no color with index {color}")))?;
    if !c.moved_by.contains(&alpha) {
        return Err(Error::Inconsistent(format!(
            "{} is not moved by {}",
            c.name,
            datum.rs.simple_name(alpha)
        )));
    }
    let image = stabilizer_image(pres, alpha)?;
    let (color_type, evidence) = match image.class {
        ImageClass::Full => {
            return Err(Error::Inconsistent(format!(
                "image at {} is all of PGL(2) but {} is moved by it",
                datum.rs.simple_name(alpha),
                c.name
            )))
        }
        ImageClass::ContainsNilpotent => (Some(ColorType::B), Evidence::Image),
        ImageClass::TorusLike => {
            let chi_pairing = match &c.chi {
                Some(chi) => Some(
                    to_i64(&datum.rs.pair_coroot(alpha, chi)?).ok_or_else(|| {
                        Error::Inconsistent(format!("{}: non-integral chi pairing", c.name))
                    })?,
                ),
                None => None,
            };
            match resolve_torus_like(&image, pres.witness(&c.name, alpha), chi_pairing)? {
                (None, _) if datum.spherical_roots.is_some() => {
                    (Some(classify_luna(datum, color)?), Evidence::SphericalRoots)
                }
                resolved => resolved,
            }
        }
    };
    Ok(KnopVerdict {
        alpha,
        image,
        color_type,
        evidence,
    })
}

/// Classify a color through every moving root; all verdicts must agree.
pub fn classify_knop_color(datum: &SphericalDatum, color: usize) -> Result<Option<ColorType>> {
    let mut out: Option<Option<ColorType>> = None;
    for &alpha in &datum.colors[color].moved_by {
        let v = classify_knop(datum, color, alpha)?;
        match out {
            None => out = Some(v.color_type),
            Some(prev) if prev != v.color_type => {
                return Err(Error::Inconsistent(format!(
                    "{}: moving roots give different types",
                    datum.colors[color].name
                )))
            }
            Some(_) => {}
        }
    }
    Ok(out.flatten())
}

/// Simple roots whose stabilizer image is all of sl2.
pub fn full_image_roots(pres: &LiePresentation) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for alpha in 0..pres.rank() {
        if stabilizer_image(pres, alpha)?.class == ImageClass::Full {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// Standard triple in block `k` for consecutive indices `i, i+1`: with
/// `lower = true` the root vector is `E_{i+1,i}`, else `E_{i,i+1}`.
pub fn standard_triple(shape: &Shape, k: usize, i: usize, lower: bool) -> Sl2Triple {
    let (r, c) = if lower { (i + 1, i) } else { (i, i + 1) };
    let e = LieElement::unit(shape, k, r, c);
    let f = LieElement::unit(shape, k, c, r);
    let h = e.bracket(&f);
    Sl2Triple { e, h, f }
}

/// Basis of the lower (or upper) triangular traceless matrices in block `k`.
pub fn triangular_basis(shape: &Shape, k: usize, lower: bool) -> Vec<LieElement> {
    let n = shape.blocks[k];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (lower && i > j) || (!lower && i < j) {
                out.push(LieElement::unit(shape, k, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        let mut x = LieElement::unit(shape, k, i, i);
        x.blocks[k][i + 1][i + 1] = -Q::one();
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_shape() -> Shape {
        Shape {
            blocks: vec![2],
            central_rank: 0,
        }
    }

    fn sl2_pres(h: Vec<Matrix>, witnesses: Vec<Witness>) -> LiePresentation {
        let shape = sl2_shape();
        let h_basis = h
            .into_iter()
            .map(|m| LieElement::in_block(&shape, 0, m))
            .collect();
        LiePresentation::new(
            shape.clone(),
            h_basis,
            triangular_basis(&shape, 0, true),
            vec![standard_triple(&shape, 0, 0, true)],
            witnesses,
        )
        .unwrap()
    }

    fn m(rows: [[i64; 2]; 2]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn open_orbit_examples() {
        let torus_only = Shape {
            blocks: vec![],
            central_rank: 2,
        };
        let mut t1 = LieElement::zero(&torus_only);
        t1.central[0] = q(1);
        let mut t2 = LieElement::zero(&torus_only);
        t2.central[1] = q(1);
        let torus = LiePresentation::new(torus_only, vec![], vec![t1, t2], vec![], vec![]).unwrap();
        assert!(open_orbit_check(&torus));

        assert!(!open_orbit_check(&sl2_pres(vec![m([[1, 0], [0, -1]])], vec![])));
        assert!(open_orbit_check(&sl2_pres(vec![m([[0, 1], [1, 0]])], vec![])));
    }

    #[test]
    fn projections_of_triple_and_kernel() {
        let shape = Shape {
            blocks: vec![3],
            central_rank: 0,
        };
        let pres = LiePresentation::new(
            shape.clone(),
            vec![],
            triangular_basis(&shape, 0, true),
            vec![
                standard_triple(&shape, 0, 0, true),
                standard_triple(&shape, 0, 1, true),
            ],
            vec![],
        )
        .unwrap();
        let t = &pres.triples()[0];
        assert_eq!(dphi_project(&pres, 0, &t.e).unwrap(), Mat2::e());
        assert_eq!(dphi_project(&pres, 0, &t.f).unwrap(), Mat2::f());
        // h with alpha_1(h) = 0: diag(1, 1, -2)
        let mut hk = LieElement::zero(&shape);
        hk.blocks[0][0][0] = q(1);
        hk.blocks[0][1][1] = q(1);
        hk.blocks[0][2][2] = q(-2);
        assert!(dphi_project(&pres, 0, &hk).unwrap().is_zero());
        // positive root vectors other than alpha_1
        assert!(dphi_project(&pres, 0, &pres.triples()[1].e).unwrap().is_zero());
        assert!(dphi_project(&pres, 0, &LieElement::unit(&shape, 0, 2, 0))
            .unwrap()
            .is_zero());
        // f of the other root is outside p_alpha1
        assert!(dphi_project(&pres, 0, &pres.triples()[1].f).is_err());
    }

    #[test]
    fn image_classes() {
        assert_eq!(classify_image(&[Mat2::h()]).unwrap().class, ImageClass::TorusLike);
        assert_eq!(
            classify_image(&[Mat2::e(), Mat2::h()]).unwrap().class,
            ImageClass::ContainsNilpotent
        );
        assert_eq!(
            classify_image(&[Mat2::e(), Mat2::h(), Mat2::f()]).unwrap().class,
            ImageClass::Full
        );
        assert_eq!(
            classify_image(&[Mat2::f().scale(&q(3))]).unwrap().class,
            ImageClass::ContainsNilpotent
        );
        assert!(classify_image(&[]).is_err());
        assert!(classify_image(&[Mat2::from_ints([[1, 0], [0, 0]])]).is_err());
    }

    #[test]
    fn torus_resolution() {
        let s = Mat2::from_ints([[0, 1], [1, 0]]);
        let image = classify_image(std::slice::from_ref(&s)).unwrap();
        let w = Mat2::from_ints([[0, 1], [-1, 0]]);
        assert_eq!(
            resolve_torus_like(&image, Some(&w), None).unwrap(),
            (Some(ColorType::TwoA), Evidence::Witness)
        );
        assert_eq!(
            resolve_torus_like(&image, None, Some(1)).unwrap().0,
            Some(ColorType::A)
        );
        assert_eq!(
            resolve_torus_like(&image, None, Some(2)).unwrap().0,
            Some(ColorType::TwoA)
        );
        assert_eq!(
            resolve_torus_like(&image, None, None).unwrap(),
            (None, Evidence::Unresolved)
        );
        // centralizing witness is discarded
        let centralizer = Mat2::from_ints([[2, 1], [1, 2]]);
        assert_eq!(
            resolve_torus_like(&image, Some(&centralizer), Some(1)).unwrap().0,
            Some(ColorType::A)
        );
        let stray = Mat2::from_ints([[1, 1], [0, 1]]);
        assert!(resolve_torus_like(&image, Some(&stray), None).is_err());
    }

    #[test]
    fn stabilizer_in_sl2_is_everything() {
        let pres = sl2_pres(vec![m([[0, 1], [1, 0]])], vec![]);
        let stab = stabilizer_in_parabolic(&pres, 0).unwrap();
        assert_eq!(stab.len(), 1);
    }

    #[test]
    fn diagonal_sl2_cubed_stabilizer() {
        let shape = Shape {
            blocks: vec![2, 2, 2],
            central_rank: 0,
        };
        let diag = |x: Matrix| LieElement {
            blocks: vec![x.clone(), x.clone(), x],
            central: vec![],
        };
        let h = vec![
            diag(m([[1, 0], [0, -1]])),
            diag(m([[0, 1], [0, 0]])),
            diag(m([[0, 0], [1, 0]])),
        ];
        let b: Vec<LieElement> = (0..3).flat_map(|k| triangular_basis(&shape, k, true)).collect();
        let triples = (0..3).map(|k| standard_triple(&shape, k, 0, true)).collect();
        let pres = LiePresentation::new(shape, h, b, triples, vec![]).unwrap();
        let stab = stabilizer_in_parabolic(&pres, 0).unwrap();
        assert_eq!(stab.len(), 2);
    }

    #[test]
    fn rejects_bad_triples() {
        let shape = sl2_shape();
        let mut t = standard_triple(&shape, 0, 0, true);
        t.h = t.h.scale(&q(2));
        let err = LiePresentation::new(
            shape.clone(),
            vec![],
            triangular_basis(&shape, 0, true),
            vec![t],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Presentation(_)));
    }
}
