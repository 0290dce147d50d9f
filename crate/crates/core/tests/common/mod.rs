//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms under test beyond constructing values.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallkit::{IntMatrix, Lattice};

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn bigs(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| bigs(r)).collect())
}

pub fn form(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

/// Laplace expansion along the first row.
pub fn det_laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        total += s * m[0][j] as i128 * det_laplace(&minor);
    }
    total
}

/// gcd of the entries of `G x`.
pub fn divisibility_oracle(g: &[Vec<i64>], x: &[i64]) -> i64 {
    g.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>()).fold(0i64, |acc, v| acc.gcd(&v))
}

/// All `w` in the rank-2 lattice with `(w, v) = p` in `[lo, hi]` and either
/// `w^2 = c` (exact) or `0 <= w^2 < p` (range), found by scanning a box.
///
/// The box comes from the positive definite form `P(w) = 2 (w, v)^2 - N w^2`
/// with `N = v^2`: on solutions `P(w) <= 2 hi^2 - N c_min`, and for a
/// positive definite 2x2 form `a x^2 + 2 b x y + d y^2 <= B` one has
/// `x^2 <= B d / (a d - b^2)` and `y^2 <= B a / (a d - b^2)`.
pub fn rank2_oracle(g: [[i64; 2]; 2], v: [i64; 2], exact: Option<i64>, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let gv = [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]];
    let n = v[0] * gv[0] + v[1] * gv[1];
    assert!(n > 0);
    let pa = 2 * gv[0] * gv[0] - n * g[0][0];
    let pb = 2 * gv[0] * gv[1] - n * g[0][1];
    let pd = 2 * gv[1] * gv[1] - n * g[1][1];
    let pdet = pa * pd - pb * pb;
    assert!(pa > 0 && pdet > 0, "P must be positive definite");
    let c_min = exact.unwrap_or(0);
    let bound = 2 * hi.max(lo.abs()) * hi.max(lo.abs()) - n * c_min;
    if bound < 0 {
        return Vec::new();
    }
    let rx = ((bound as f64 * pd as f64 / pdet as f64).sqrt() as i64) + 2;
    let ry = ((bound as f64 * pa as f64 / pdet as f64).sqrt() as i64) + 2;
    let mut out: Vec<(i64, i64, Vec<i64>)> = Vec::new();
    for x in -rx..=rx {
        for y in -ry..=ry {
            let p = x * gv[0] + y * gv[1];
            let sq = g[0][0] * x * x + 2 * g[0][1] * x * y + g[1][1] * y * y;
            let ok = match exact {
                Some(c) => sq == c && lo <= p && p <= hi,
                None => 1 <= p && p <= hi && 0 <= sq && sq < p,
            };
            if ok {
                out.push((p, sq, vec![x, y]));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, _, w)| w).collect()
}

/// Every nonzero `x` in `[-r, r]^n` with `x^T G x = norm`.
pub fn box_vectors(g: &[Vec<i64>], norm: i64, r: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut out = Vec::new();
    let mut x = vec![-r; n];
    loop {
        if x.iter().any(|&c| c != 0) && form(g, &x, &x) == norm {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] <= r {
                break;
            }
            x[i] = -r;
            i += 1;
        }
    }
}

/// Distinct prime divisors by trial division.
pub fn omega(mut m: u64) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            count += 1;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    count + u32::from(m > 1)
}

/// A random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(n: usize, steps: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                for row in m.iter_mut() {
                    row[j] += k * row[i];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    m
}

pub fn transform(g: &[Vec<i64>], p: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    *x += p[a][i] * g[a][b] * p[b][j];
                }
            }
        }
    }
    out
}

pub fn lattice(g: &[Vec<i64>]) -> Lattice {
    Lattice::new(mat(g)).expect("nondegenerate symmetric")
}

pub fn to_i64s(xs: &[BigInt]) -> Vec<i64> {
    xs.iter().map(|x| i64::try_from(x).expect("small")).collect()
}
