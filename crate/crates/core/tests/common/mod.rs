#![allow(dead_code, clippy::needless_range_loop)]

use compact_cubic::Mesh;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mesh with `n` widths in `[0.05, 1)`, randomly increasing or decreasing,
/// starting at a random offset.
pub fn random_mesh(rng: &mut ChaCha8Rng, n: usize) -> Mesh {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut t = rng.gen_range(-1.0..1.0);
    let mut nodes = vec![t];
    for _ in 0..n {
        t += sign * rng.gen_range(0.05..1.0);
        nodes.push(t);
    }
    Mesh::from_nodes(nodes).unwrap()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let m = a.len();
    let mut d = 1.0;
    for c in 0..m {
        let p = (c..m)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..m {
            let f = a[r][c] / a[c][c];
            for k in c..m {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Every square minor of `a` is at least `−tol` times its Hadamard bound.
pub fn all_minors_nonnegative(a: &[Vec<f64>], tol: f64) -> bool {
    let m = a.len();
    for k in 1..=m {
        let sets = subsets(m, k);
        for rows in &sets {
            for cols in &sets {
                let sub: Vec<Vec<f64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                let bound: f64 = sub
                    .iter()
                    .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
                    .product();
                if det(sub) < -tol * bound {
                    return false;
                }
            }
        }
    }
    true
}

/// `f(x) = e^{a x}` with all derivatives.
pub fn exp_family(a: f64) -> impl Fn(f64, usize) -> f64 {
    move |x, j| a.powi(j as i32) * (a * x).exp()
}

/// Derivative `j` of `x^d`.
pub fn monomial(d: u32, j: u32, x: f64) -> f64 {
    if j > d {
        return 0.0;
    }
    let c: f64 = ((d - j + 1)..=d).map(f64::from).product();
    c * x.powi((d - j) as i32)
}
