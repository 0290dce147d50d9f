//! Dense integer matrices and the normal-form kernels built on them.
//!
//! [`smith_normal_form`] is the single routine behind discriminant groups,
//! integer kernels and saturation; [`hnf_rows`] canonicalizes lattice bases.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{div_floor, rat, Int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Int>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// `x^T self y` for a square matrix.
    pub fn bilinear(&self, x: &[Int], y: &[Int]) -> Int {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&IntMatrix]) -> IntMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.to_rows();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn to_rational(&self) -> Vec<Vec<Rat>> {
        self.to_rows().into_iter().map(|r| r.into_iter().map(rat).collect()).collect()
    }

    /// Exact rational inverse, `None` if singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<Rat>>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rational();
        let mut inv: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                        let t = &f * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let inv = self.inverse_rational()?;
        let rows = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix::from_rows(rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * k;
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * k;
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    /// Non-negative diagonal entries `d_1 | d_2 | ...`, zeros included.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.diag.nrows().min(self.diag.ncols())).map(|i| self.diag[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { left: u, diag: d, right: v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -div_floor(&d[(i, t)], &d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -div_floor(&d[(t, j)], &d[(t, t)]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let piv = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { left: u, diag: d, right: v }
}

/// Row-style Hermite normal form; returns the nonzero rows.
pub fn hnf_rows(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut a = IntMatrix::from_rows(rows.to_vec());
    let (m, n) = (a.nrows(), a.ncols());
    let mut p = 0;
    for c in 0..n {
        if p == m {
            break;
        }
        loop {
            let best = (p..m)
                .filter(|&r| !a[(r, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()));
            let Some(b) = best else { break };
            a.swap_rows(p, b);
            let mut done = true;
            for r in p + 1..m {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let q = -div_floor(&a[(r, c)], &a[(p, c)]);
                a.add_row(r, p, &q);
                done &= a[(r, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(p, c)].is_zero() {
            continue;
        }
        if a[(p, c)].is_negative() {
            a.negate_row(p);
        }
        for r in 0..p {
            let q = -div_floor(&a[(r, c)], &a[(p, c)]);
            a.add_row(r, p, &q);
        }
        p += 1;
    }
    a.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// HNF basis of `{ x in Z^n : A x = 0 }` for `A` with `n` columns.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return (0..n).map(|i| IntMatrix::identity(n).row(i).to_vec()).collect();
    }
    let s = smith_normal_form(a);
    let r = s.rank();
    let basis: Vec<Vec<Int>> = (r..n).map(|j| s.right.col(j)).collect();
    hnf_rows(&basis)
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    smith_normal_form(a).rank()
}

/// Solves `A c = b` over the rationals, returning one solution if consistent.
pub fn solve_rational(a: &IntMatrix, b: &[Int]) -> Option<Vec<Rat>> {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(b.len(), m);
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| a.row(i).iter().cloned().map(rat).chain(std::iter::once(rat(b[i].clone()))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let piv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = IntMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), int(4));
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), int(-1));
        let m = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.det(), int(0));
    }

    #[test]
    fn smith_reconstructs_and_divides() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diag);
        assert_eq!(s.diagonal(), vec![int(2), int(6), int(12)]);
        assert!(s.left.det().abs().is_one());
        assert!(s.right.det().abs().is_one());
    }

    #[test]
    fn smith_of_rectangular_matrix() {
        let a = IntMatrix::from_i64(&[&[2, 0, 4, 6], &[0, 0, 3, 9]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diag);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 7]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), vec![int(0), int(0)]);
        assert_eq!(k[0], vec![int(2), int(-1), int(0)]);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = vec![vec![int(4), int(6)], vec![int(2), int(2)]];
        let b = vec![vec![int(2), int(2)], vec![int(6), int(8)]];
        assert_eq!(hnf_rows(&a), hnf_rows(&b));
        assert_eq!(hnf_rows(&a), vec![vec![int(2), int(0)], vec![int(0), int(2)]]);
    }

    #[test]
    fn rational_solve() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 2], &[1, 2]]);
        let x = solve_rational(&a, &[int(1), int(1), int(2)]).unwrap();
        assert_eq!(x, vec![Rat::one(), Rat::new(int(1), int(2))]);
        assert!(solve_rational(&a, &[int(1), int(1), int(3)]).is_none());
    }

    #[test]
    fn unimodular_inverse() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
    }
}
