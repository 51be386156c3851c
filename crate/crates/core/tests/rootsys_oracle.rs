//! Cartan matrices and positive roots checked against the classical Euclidean
//! realizations. Roots are generated there by closing the simple roots under
//! simple reflections, with all coordinates doubled so they stay integral.

use std::collections::BTreeSet;

use antican::RootSystem;

type V = Vec<i64>;

fn e(dim: usize, i: usize, c: i64) -> V {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn add(a: &V, b: &V) -> V {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &V, b: &V) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Doubled simple roots (Bourbaki numbering) in `R^dim`.
fn euclidean(family: char, n: usize) -> Vec<V> {
    let chain = |dim: usize, len: usize| -> Vec<V> {
        (0..len).map(|i| add(&e(dim, i, 2), &e(dim, i + 1, -2))).collect()
    };
    match family {
        'A' => chain(n + 1, n),
        'B' => {
            let mut s = chain(n, n - 1);
            s.push(e(n, n - 1, 2));
            s
        }
        'C' => {
            let mut s = chain(n, n - 1);
            s.push(e(n, n - 1, 4));
            s
        }
        'D' => {
            let mut s = chain(n, n - 1);
            s.push(add(&e(n, n - 2, 2), &e(n, n - 1, 2)));
            s
        }
        'G' => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        'F' => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        'E' => {
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], add(&e(8, 0, 2), &e(8, 1, 2))];
            for i in 0..6 {
                s.push(add(&e(8, i + 1, 2), &e(8, i, -2)));
            }
            s.truncate(n);
            s
        }
        _ => unreachable!(),
    }
}

fn reflect(v: &V, a: &V) -> V {
    let k = 2 * dot(v, a) / dot(a, a);
    v.iter().zip(a).map(|(x, y)| x - k * y).collect()
}

fn all_roots(simple: &[V]) -> BTreeSet<V> {
    let mut seen: BTreeSet<V> = simple.iter().cloned().collect();
    let mut frontier: Vec<V> = simple.to_vec();
    while let Some(v) = frontier.pop() {
        for a in simple {
            let w = reflect(&v, a);
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// Simple-root coefficients by Gaussian elimination on the Gram system, in f64.
fn coefficients(simple: &[V], v: &V) -> Vec<i64> {
    let n = simple.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| dot(&simple[i], &simple[j]) as f64).collect();
            row.push(dot(&simple[i], v) as f64);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, p);
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c {
                let f = row[c] / pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * y;
                }
            }
        }
    }
    (0..n).map(|i| (m[i][n] / m[i][i]).round() as i64).collect()
}

fn check(family: char, n: usize, closed_form: usize) {
    let spec = format!("{family}{n}");
    let rs = RootSystem::parse(&spec).unwrap();
    let simple = euclidean(family, n);
    for i in 0..n {
        for j in 0..n {
            let c = 2 * dot(&simple[i], &simple[j]) / dot(&simple[i], &simple[i]);
            assert_eq!(rs.cartan()[i][j], c, "{spec} cartan[{i}][{j}]");
        }
    }
    let oracle: BTreeSet<Vec<i64>> = all_roots(&simple)
        .iter()
        .map(|v| coefficients(&simple, v))
        .filter(|c| c.iter().all(|&x| x >= 0))
        .collect();
    let ours: Vec<Vec<i64>> = rs
        .positive_roots(&(0..n).collect::<Vec<_>>())
        .unwrap()
        .into_iter()
        .map(|r| r.simple_coeffs)
        .collect();
    assert_eq!(ours.len(), closed_form, "{spec} count");
    assert_eq!(ours.iter().cloned().collect::<BTreeSet<_>>(), oracle, "{spec} roots");
    let heights: Vec<i64> = ours.iter().map(|c| c.iter().sum()).collect();
    assert!(heights.windows(2).all(|w| w[0] <= w[1]), "{spec} order");
}

#[test]
fn classical_families() {
    for n in 1..=8 {
        check('A', n, n * (n + 1) / 2);
    }
    for n in 2..=8 {
        check('B', n, n * n);
        check('C', n, n * n);
    }
    for n in 3..=8 {
        check('D', n, n * (n - 1));
    }
}

#[test]
fn exceptional_families() {
    check('G', 2, 6);
    check('F', 4, 24);
    check('E', 6, 36);
    check('E', 7, 63);
    check('E', 8, 120);
}

#[test]
fn rho_is_sum_of_fundamental_weights() {
    for spec in ["A5", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "A2xB3+T2"] {
        let rs = RootSystem::parse(spec).unwrap();
        let all: Vec<usize> = (0..rs.rank()).collect();
        assert!(rs.two_rho(&all).unwrap().iter().all(|&x| x == 2), "{spec}");
        let rho = rs.rho(&all).unwrap();
        assert!(rho.central.iter().all(num_traits::Zero::is_zero));
    }
}
