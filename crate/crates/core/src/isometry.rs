//! Verified lattice isometries: reflections, Eichler transvections,
//! orientation characters and constructive Eichler reduction.
//!
//! Matrices act on column vectors of coordinates; column `j` is the image of
//! the `j`-th basis vector.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{bezout, gcd_all, sign, Int};
use crate::discriminant::{action_of_matrix, disc_image, DiscAction};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector, PivotOrder};
use crate::matrix::IntMatrix;

#[derive(Clone)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
    det: i32,
    orientation: OnceLock<i32>,
    disc: OnceLock<DiscAction>,
}

impl std::fmt::Debug for Isometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Isometry").field("lattice", &self.lattice.label()).field("det", &self.det).finish()
    }
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice) && self.matrix == other.matrix
    }
}

impl Eq for Isometry {}

/// Checks `M^T G M = G` and wraps the matrix.
pub fn is_isometry(l: &Lattice, m: &IntMatrix) -> Result<Isometry> {
    Isometry::new(l, m.clone())
}

impl Isometry {
    pub fn new(l: &Lattice, m: IntMatrix) -> Result<Self> {
        let n = l.rank();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::NotIsometry(format!("expected a {n}x{n} matrix")));
        }
        if m.transpose().mul(l.gram()).mul(&m) != *l.gram() {
            return Err(Error::NotIsometry("Gram matrix not preserved".into()));
        }
        let det = m.det();
        if !det.abs().is_one() {
            return Err(Error::NotIsometry(format!("determinant {det}")));
        }
        Ok(Self::trusted(l, m, sign(&det)))
    }

    fn trusted(l: &Lattice, m: IntMatrix, det: i32) -> Self {
        Isometry { lattice: l.clone(), matrix: m, det, orientation: OnceLock::new(), disc: OnceLock::new() }
    }

    pub fn identity(l: &Lattice) -> Self {
        Self::trusted(l, IntMatrix::identity(l.rank()), 1)
    }

    pub fn minus_identity(l: &Lattice) -> Self {
        let n = l.rank();
        Self::trusted(l, IntMatrix::identity(n).neg(), if n.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn det(&self) -> i32 {
        self.det
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if !x.lattice().same_as(&self.lattice) {
            return Err(Error::LatticeMismatch);
        }
        self.lattice.vector(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if !self.lattice.same_as(&other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        Ok(Self::trusted(&self.lattice, self.matrix.mul(&other.matrix), self.det * other.det))
    }

    /// `G^{-1} M^T G`, which is integral for an isometry.
    pub fn inverse(&self) -> Isometry {
        let inv = self.matrix.inverse_unimodular().expect("isometries are unimodular");
        Self::trusted(&self.lattice, inv, self.det)
    }

    /// Sign of the determinant of the action on a maximal positive-definite
    /// subspace, read off from the pairing matrix `(p_i, M p_j)` between an
    /// orthogonal positive basis and its image.
    pub fn orientation(&self) -> i32 {
        *self.orientation.get_or_init(|| orientation_against(&self.lattice, &self.matrix, self.lattice.positive_basis()))
    }

    /// Orientation computed from an independently chosen positive subspace.
    pub fn orientation_with(&self, order: PivotOrder) -> i32 {
        orientation_against(&self.lattice, &self.matrix, &self.lattice.positive_basis_with(order))
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.orientation() == 1
    }

    /// Induced action on the discriminant group.
    pub fn disc_action(&self) -> Result<DiscAction> {
        if let Some(a) = self.disc.get() {
            return Ok(a.clone());
        }
        let a = action_of_matrix(&self.lattice, &self.matrix)?;
        Ok(self.disc.get_or_init(|| a).clone())
    }
}

fn orientation_against(l: &Lattice, m: &IntMatrix, basis: &[Vec<crate::arith::Rat>]) -> i32 {
    use crate::arith::Rat;
    let k = basis.len();
    if k == 0 {
        return 1;
    }
    let images: Vec<Vec<Rat>> = basis
        .iter()
        .map(|p| {
            (0..m.nrows())
                .map(|i| p.iter().enumerate().map(|(j, pj)| pj * Rat::from_integer(m[(i, j)].clone())).sum())
                .collect()
        })
        .collect();
    // clear denominators row by row; positive scalings keep the sign
    let rows: Vec<Vec<Int>> = basis
        .iter()
        .map(|p| {
            let row: Vec<Rat> = images.iter().map(|q| l.inner_rational(p, q)).collect();
            let den = row.iter().fold(Int::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| (r * Rat::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    sign(&IntMatrix::from_rows(rows).det())
}

/// `σ_u(x) = x - (2(x, u)/u^2) u`.
pub fn reflection(l: &Lattice, u: &LatticeVector) -> Result<Isometry> {
    if !u.lattice().same_as(l) {
        return Err(Error::LatticeMismatch);
    }
    let uu = u.square();
    if uu.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let gu = l.gram().mul_vec(u.coords());
    let mut coef = Vec::with_capacity(gu.len());
    for x in &gu {
        let (q, r) = Integer::div_rem(&(x * 2), &uu);
        if !r.is_zero() {
            return Err(Error::NotIntegral);
        }
        coef.push(q);
    }
    let n = l.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        for i in 0..n {
            let v = &m[(i, j)] - &coef[j] * &u.coords()[i];
            m[(i, j)] = v;
        }
    }
    Isometry::new(l, m)
}

/// `t(x) = x - (a, x) e + (e, x) a - ½ (a, a)(e, x) e` for isotropic
/// primitive `e` and `a ⊥ e`.
pub fn eichler_transvection(l: &Lattice, e: &LatticeVector, a: &LatticeVector) -> Result<Isometry> {
    if !e.lattice().same_as(l) || !a.lattice().same_as(l) {
        return Err(Error::LatticeMismatch);
    }
    if !e.square().is_zero() {
        return Err(Error::BadPair("e must be isotropic".into()));
    }
    if !e.is_primitive() {
        return Err(Error::BadPair("e must be primitive".into()));
    }
    if !e.dot(a)?.is_zero() {
        return Err(Error::BadPair("a must be orthogonal to e".into()));
    }
    let ge = l.gram().mul_vec(e.coords());
    if a.square().is_odd() && ge.iter().any(|x| x.is_odd()) {
        return Err(Error::BadPair("transvection is not integral".into()));
    }
    Isometry::new(l, transvection_matrix(l, e.coords(), a.coords()))
}

fn transvection_matrix(l: &Lattice, e: &[Int], a: &[Int]) -> IntMatrix {
    let n = l.rank();
    let mut m = IntMatrix::identity(n);
    apply_transvection_to_columns(l, e, a, &mut m);
    m
}

/// Replaces every column `c` of `m` by `t(c)`, i.e. `m <- T m`.
fn apply_transvection_to_columns(l: &Lattice, e: &[Int], a: &[Int], m: &mut IntMatrix) {
    let g = l.gram();
    let ge = g.mul_vec(e);
    let ga = g.mul_vec(a);
    let half_aa = g.bilinear(a, a) / 2;
    let n = l.rank();
    for j in 0..m.ncols() {
        let col = m.col(j);
        let ac: Int = ga.iter().zip(&col).map(|(x, y)| x * y).sum();
        let ec: Int = ge.iter().zip(&col).map(|(x, y)| x * y).sum();
        if ac.is_zero() && ec.is_zero() {
            continue;
        }
        let ce = -&ac - &half_aa * &ec;
        for i in 0..n {
            let v = &m[(i, j)] + &ce * &e[i] + &ec * &a[i];
            m[(i, j)] = v;
        }
    }
}

/// Bookkeeping for [`eichler_reduce`]: the current vector and the product
/// of the transvections applied so far.
struct Reducer<'a> {
    l: &'a Lattice,
    x: Vec<Int>,
    g: IntMatrix,
}

impl Reducer<'_> {
    fn unit(&self, i: usize, k: &Int) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.l.rank()];
        v[i] = k.clone();
        v
    }

    fn transvect(&mut self, e: &[Int], a: &[Int]) {
        let mut col = IntMatrix::from_cols(std::slice::from_ref(&self.x));
        apply_transvection_to_columns(self.l, e, a, &mut col);
        self.x = col.col(0);
        apply_transvection_to_columns(self.l, e, a, &mut self.g);
    }

    // The U+U part is tracked as X = [[a1, α2], [-β2, b1]] with
    // a1, b1, α2, β2 the e1, f1, e2, f2 coefficients; det X = x_U^2 / 2.
    fn a1(&self) -> &Int {
        &self.x[0]
    }
    fn b1(&self) -> &Int {
        &self.x[1]
    }
    fn alpha2(&self) -> &Int {
        &self.x[2]
    }
    fn beta2(&self) -> &Int {
        &self.x[3]
    }

    /// R1 += k R2
    fn row1_add(&mut self, k: &Int) {
        if !k.is_zero() {
            let (e, a) = (self.unit(0, &Int::one()), self.unit(2, k));
            self.transvect(&e, &a);
        }
    }
    /// R2 -= k R1
    fn row2_sub(&mut self, k: &Int) {
        if !k.is_zero() {
            let (e, a) = (self.unit(1, &Int::one()), self.unit(3, k));
            self.transvect(&e, &a);
        }
    }
    /// C1 -= k C2
    fn col1_sub(&mut self, k: &Int) {
        if !k.is_zero() {
            let (e, a) = (self.unit(0, &Int::one()), self.unit(3, k));
            self.transvect(&e, &a);
        }
    }
    /// C2 += k C1
    fn col2_add(&mut self, k: &Int) {
        if !k.is_zero() {
            let (e, a) = (self.unit(1, &Int::one()), self.unit(2, k));
            self.transvect(&e, &a);
        }
    }
    /// (R1, R2) -> (R2, -R1)
    fn rotate_rows(&mut self) {
        let one = Int::one();
        self.row1_add(&one);
        self.row2_sub(&one);
        self.row1_add(&one);
    }

    /// Euclid on the first column until `β2 = 0`.
    fn clear_beta2(&mut self) {
        while !self.beta2().is_zero() {
            if self.a1().is_zero() {
                self.rotate_rows();
                continue;
            }
            // R2 = (-β2, b1); R2 -= q R1 reduces -β2 modulo a1
            let q = Integer::div_floor(&-self.beta2(), self.a1());
            self.row2_sub(&q);
            if !self.beta2().is_zero() {
                self.rotate_rows();
            }
        }
    }

    /// (C1, C2) -> (-C2, C1)
    fn rotate_cols(&mut self) {
        let one = Int::one();
        self.col2_add(&one);
        self.col1_sub(&one);
        self.col2_add(&one);
    }

    /// Alternating Euclid until `α2 = β2 = 0`; `|a1|` drops on every pass
    /// that leaves `α2` nonzero.
    fn diagonalize(&mut self) {
        loop {
            self.clear_beta2();
            if self.alpha2().is_zero() {
                return;
            }
            if !self.a1().is_zero() {
                let q = Integer::div_floor(self.alpha2(), self.a1());
                self.col2_add(&-q);
                if self.alpha2().is_zero() {
                    return;
                }
            }
            self.rotate_cols();
        }
    }

    fn content(&self) -> Int {
        gcd_all([self.a1(), self.b1(), self.alpha2(), self.beta2()])
    }
}

/// Moves a primitive `x` with `div(x) = 1` to `e1 + (x^2/2) f1` by Eichler
/// transvections supported on the declared `U + U` summand.
pub fn eichler_reduce(l: &Lattice, x: &LatticeVector) -> Result<(Isometry, LatticeVector)> {
    if !l.has_uu_split() {
        return Err(Error::NoSplitDeclared);
    }
    if !x.lattice().same_as(l) {
        return Err(Error::LatticeMismatch);
    }
    if !l.is_even() {
        return Err(Error::Precondition("Eichler reduction needs an even lattice".into()));
    }
    let div = l.divisibility(x)?;
    if !div.is_one() {
        return Err(Error::DivisibilityNotOne(div.to_string()));
    }
    let n = l.rank();
    let mut r = Reducer { l, x: x.coords().to_vec(), g: IntMatrix::identity(n) };

    // pairings of the L0 part with L0; their gcd is div_{L0}(x0)
    let l0_pairings = |x: &[Int]| -> Vec<Int> {
        let g = l.gram();
        (4..n).map(|i| (4..n).map(|j| &g[(i, j)] * &x[j]).sum()).collect()
    };

    loop {
        r.clear_beta2();
        if r.content().is_one() {
            break;
        }
        let h = gcd_all([r.a1(), r.b1()]);
        if h.is_zero() && !r.alpha2().is_zero() {
            r.col1_sub(&Int::one());
            continue;
        }
        // E(e2, m) with m in L0 shifts α2 by -(m, x0) and fixes everything else
        // while β2 = 0; pick the shift so the U+U content becomes 1.
        let (d0, coeffs) = bezout(&l0_pairings(&r.x));
        if d0.is_zero() {
            return Err(Error::Precondition("reduction stalled: no L0 contribution".into()));
        }
        let mut t = Int::zero();
        let target = loop {
            let cand = r.alpha2() + &t * &d0;
            if !cand.is_zero() && (h.is_zero() || gcd_all([&h, &cand]).is_one()) {
                break cand;
            }
            t += 1;
        };
        let shift = r.alpha2() - &target; // (m, x0) must equal this
        let k = &shift / &d0;
        let mut m = vec![Int::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            m[4 + i] = c * &k;
        }
        let e2 = r.unit(2, &Int::one());
        r.transvect(&e2, &m);
        debug_assert_eq!(r.alpha2(), &target);
    }

    // content 1: diagonalize X to diag(±1, *)
    loop {
        r.diagonalize();
        if r.a1().abs().is_one() {
            break;
        }
        // a1 does not divide b1 in the 2x2 Smith form; fold R2 into R1
        r.row1_add(&Int::one());
    }
    if r.a1().is_negative() {
        r.rotate_rows();
        r.rotate_rows();
    }
    debug_assert!(r.a1().is_one() && r.alpha2().is_zero() && r.beta2().is_zero());

    // E(f1, -x0) clears the L0 part
    let mut z = vec![Int::zero(); n];
    for i in 4..n {
        z[i] = -&r.x[i];
    }
    if z.iter().any(|c| !c.is_zero()) {
        let f1 = r.unit(1, &Int::one());
        r.transvect(&f1, &z);
    }

    let half = x.square() / 2;
    let mut y = vec![Int::zero(); n];
    y[0] = Int::one();
    y[1] = half;
    let y = l.vector(y)?;
    let g = Isometry::new(l, r.g)?;
    if g.apply(x)? != y {
        return Err(Error::NotIsometry("reduction did not reach the canonical vector".into()));
    }
    Ok((g, y))
}

/// Eichler criterion for lattices containing `U + U`: same square, same
/// divisibility, same discriminant image.
pub fn orbit_equivalent(l: &Lattice, x: &LatticeVector, y: &LatticeVector) -> Result<bool> {
    if !l.has_uu_split() {
        return Err(Error::NoSplitDeclared);
    }
    if !x.is_primitive() || !y.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if x.square() != y.square() || l.divisibility(x)? != l.divisibility(y)? {
        return Ok(false);
    }
    Ok(disc_image(l, x)? == disc_image(l, y)?)
}

/// An orientation-preserving `g` with `g(x) = y`, for `div(x) = 1`.
pub fn mapping_isometry(l: &Lattice, x: &LatticeVector, y: &LatticeVector) -> Result<Isometry> {
    if !orbit_equivalent(l, x, y)? {
        return Err(Error::NotEquivalent("square, divisibility or discriminant image differ".into()));
    }
    let div = l.divisibility(x)?;
    if !div.is_one() {
        return Err(Error::DivisibilityNotOne(div.to_string()));
    }
    let (gx, _) = eichler_reduce(l, x)?;
    let (gy, _) = eichler_reduce(l, y)?;
    let g = gy.inverse().compose(&gx)?;
    let g = Isometry::new(l, g.matrix)?;
    if g.apply(x)? != *y {
        return Err(Error::NotIsometry("constructed map does not send x to y".into()));
    }
    Ok(g)
}
