//! Exact linear algebra over the rationals: rank, kernels, span membership
//! and subspace intersection. Vectors are plain `Vec<Q>`.

use crate::rational::Q;
use num_traits::{One, Zero};

/// A subspace kept in reduced row echelon form, grown one vector at a time.
/// Rows are stored sparsely, which keeps membership tests cheap for the
/// sparse vectors that matrix units produce.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<(usize, Q)>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(vectors: &[Vec<Q>], ncols: usize) -> Self {
        let mut e = Echelon::new(ncols);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, x) in row {
                v[*j] -= &c * x;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; false if it was already in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &r[p];
        let new: Vec<(usize, Q)> = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * &inv))
            .collect();
        for row in &mut self.rows {
            let Some(c) = row.iter().find(|(j, _)| *j == p).map(|(_, x)| x.clone()) else {
                continue;
            };
            *row = sub_scaled(row, &c, &new);
        }
        self.rows.push(new);
        self.pivots.push(p);
        true
    }

    /// Reduced rows in pivot order, with their pivots.
    pub fn rows(&self) -> (Vec<Vec<Q>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let dense = order
            .iter()
            .map(|&i| {
                let mut d = vec![Q::zero(); self.ncols];
                for (j, x) in &self.rows[i] {
                    d[*j] = x.clone();
                }
                d
            })
            .collect();
        (dense, order.iter().map(|&i| self.pivots[i]).collect())
    }
}

/// `a - c * b` for sorted sparse vectors.
fn sub_scaled(a: &[(usize, Q)], c: &Q, b: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ka, xa)), Some((kb, _))) if ka < kb => {
                i += 1;
                (*ka, xa.clone())
            }
            (Some((ka, xa)), Some((kb, xb))) if ka == kb => {
                i += 1;
                j += 1;
                (*ka, xa - c * xb)
            }
            (_, Some((kb, xb))) => {
                j += 1;
                (*kb, -(c * xb))
            }
            (Some((ka, xa)), None) => {
                i += 1;
                (*ka, xa.clone())
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Reduced row echelon form of `rows` (each of length `ncols`).
/// Returns the nonzero reduced rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    Echelon::from_vectors(rows, ncols).rows()
}

fn width(vectors: &[Vec<Q>]) -> usize {
    vectors.first().map_or(0, Vec::len)
}

pub fn rank(vectors: &[Vec<Q>]) -> usize {
    rref(vectors, width(vectors)).1.len()
}

pub fn is_independent(vectors: &[Vec<Q>]) -> bool {
    rank(vectors) == vectors.len()
}

/// Echelon basis of the span.
pub fn span_basis(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    rref(vectors, width(vectors)).0
}

pub fn in_span(vectors: &[Vec<Q>], v: &[Q]) -> bool {
    if vectors.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    Echelon::from_vectors(vectors, v.len()).contains(v)
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (red, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (row, &p) in red.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Coefficients `c` with `sum_j c_j * generators[j] == target`, if any.
pub fn solve_combination(generators: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let k = generators.len();
    let n = target.len();
    // augmented system: rows are coordinates, columns the generators plus target
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            generators
                .iter()
                .map(|g| g[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let (red, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Basis of `span(u) ∩ span(v)`.
pub fn intersect(u: &[Vec<Q>], v: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let u = span_basis(u);
    let v = span_basis(v);
    let n = width(&u);
    // sum a_i u_i - sum b_j v_j = 0
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            u.iter()
                .map(|x| x[i].clone())
                .chain(v.iter().map(|y| -y[i].clone()))
                .collect()
        })
        .collect();
    let sols = nullspace(&rows, u.len() + v.len());
    let vecs: Vec<Vec<Q>> = sols
        .iter()
        .map(|s| combine(&s[..u.len()], &u))
        .collect();
    span_basis(&vecs)
}

pub fn combine(coeffs: &[Q], vectors: &[Vec<Q>]) -> Vec<Q> {
    let mut out = vec![Q::zero(); width(vectors)];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Inverse of a square matrix given by rows.
pub fn inverse(rows: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    let aug: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])];
        assert_eq!(rank(&a), 2);
        let ker = nullspace(&a, 3);
        assert_eq!(ker.len(), 1);
        for row in &a {
            assert!(crate::rational::dot(row, &ker[0]).is_zero());
        }
    }

    #[test]
    fn intersection_of_planes() {
        let u = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let w = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let i = intersect(&u, &w);
        assert_eq!(i.len(), 1);
        assert!(in_span(&[v(&[0, 1, 0])], &i[0]));
    }

    #[test]
    fn combination_and_inverse() {
        let g = vec![v(&[1, 1]), v(&[1, -1])];
        let c = solve_combination(&g, &v(&[3, 1])).unwrap();
        assert_eq!(c, v(&[2, 1]));
        assert!(solve_combination(&[v(&[1, 0])], &v(&[0, 1])).is_none());
        let inv = inverse(&[v(&[2, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }
}
