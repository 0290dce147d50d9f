//! Integral lattices, their vectors, and sublattice constructions.
//!
//! A [`Lattice`] is a cheap handle to an immutable Gram matrix with cached
//! invariants. Vectors carry the handle of the lattice they live in; pairing
//! vectors of different lattices is an error rather than a coercion.

mod diag;
mod enumerate;
pub mod standard;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd_all, rat, Int, Rat};
use crate::discriminant::DiscriminantForm;
use crate::error::{Error, Result};
use crate::matrix::{hnf_rows, integer_kernel, rank, smith_normal_form, solve_rational, IntMatrix};

pub use diag::{orthogonal_basis, PivotOrder};
pub use enumerate::short_vectors;

struct LatticeData {
    gram: IntMatrix,
    label: Option<String>,
    even: bool,
    det: Int,
    uu_split: bool,
    signature: OnceLock<(usize, usize)>,
    positive_basis: OnceLock<Vec<Vec<Rat>>>,
    discriminant: OnceLock<Arc<DiscriminantForm>>,
}

/// A nondegenerate integral symmetric bilinear form.
#[derive(Clone)]
pub struct Lattice(Arc<LatticeData>);

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("label", &self.0.label)
            .field("rank", &self.rank())
            .field("det", &self.0.det)
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Lattice {}

/// Validates a Gram matrix and wraps it as a lattice.
pub fn make_lattice(gram: IntMatrix) -> Result<Lattice> {
    Lattice::new(gram)
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        Self::build(gram, None, false)
    }

    pub fn with_label(gram: IntMatrix, label: impl Into<String>) -> Result<Self> {
        Self::build(gram, Some(label.into()), false)
    }

    fn build(gram: IntMatrix, label: Option<String>, uu_split: bool) -> Result<Self> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(Error::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let even = (0..gram.nrows()).all(|i| gram[(i, i)].is_even());
        let lat = Lattice(Arc::new(LatticeData {
            gram,
            label,
            even,
            det,
            uu_split: false,
            signature: OnceLock::new(),
            positive_basis: OnceLock::new(),
            discriminant: OnceLock::new(),
        }));
        if uu_split {
            lat.declare_uu_split()
        } else {
            Ok(lat)
        }
    }

    /// Declares that the first four coordinates span an orthogonal summand
    /// `U + U` with basis `e1, f1, e2, f2`. Validated against the Gram matrix.
    pub fn declare_uu_split(&self) -> Result<Self> {
        let g = &self.0.gram;
        let n = g.nrows();
        if n < 4 {
            return Err(Error::NoSplitDeclared);
        }
        for i in 0..4 {
            for j in 0..n {
                let expected = if j < 4 && (i / 2 == j / 2) && i != j { 1 } else { 0 };
                if g[(i, j)] != Int::from(expected) {
                    return Err(Error::NoSplitDeclared);
                }
            }
        }
        let d = &self.0;
        Ok(Lattice(Arc::new(LatticeData {
            gram: d.gram.clone(),
            label: d.label.clone(),
            even: d.even,
            det: d.det.clone(),
            uu_split: true,
            signature: OnceLock::new(),
            positive_basis: OnceLock::new(),
            discriminant: OnceLock::new(),
        })))
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        let d = &self.0;
        Lattice(Arc::new(LatticeData {
            gram: d.gram.clone(),
            label: Some(label.into()),
            even: d.even,
            det: d.det.clone(),
            uu_split: d.uu_split,
            signature: OnceLock::new(),
            positive_basis: OnceLock::new(),
            discriminant: OnceLock::new(),
        }))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.0.gram
    }

    pub fn rank(&self) -> usize {
        self.0.gram.nrows()
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn is_even(&self) -> bool {
        self.0.even
    }

    pub fn det(&self) -> &Int {
        &self.0.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.0.det.abs().is_one()
    }

    pub fn has_uu_split(&self) -> bool {
        self.0.uu_split
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gram == other.0.gram
    }

    /// `(p, q)` from exact congruence diagonalization.
    pub fn signature(&self) -> (usize, usize) {
        *self.0.signature.get_or_init(|| {
            diag::signature_of(&self.0.gram).expect("nondegenerate by construction")
        })
    }

    pub fn is_definite(&self) -> bool {
        let (p, q) = self.signature();
        p == 0 || q == 0
    }

    /// Orthogonal rational basis of a maximal positive-definite subspace.
    pub fn positive_basis(&self) -> &[Vec<Rat>] {
        self.0.positive_basis.get_or_init(|| self.positive_basis_with(PivotOrder::Forward))
    }

    pub fn positive_basis_with(&self, order: PivotOrder) -> Vec<Vec<Rat>> {
        orthogonal_basis(&self.0.gram, order)
            .expect("nondegenerate by construction")
            .into_iter()
            .filter(|(_, n)| n.is_positive())
            .map(|(v, _)| v)
            .collect()
    }

    pub(crate) fn discriminant_cache(&self) -> &OnceLock<Arc<DiscriminantForm>> {
        &self.0.discriminant
    }

    pub fn vector(&self, coords: Vec<Int>) -> Result<LatticeVector> {
        if coords.len() != self.rank() {
            return Err(Error::WrongLength { got: coords.len(), rank: self.rank() });
        }
        Ok(LatticeVector { lattice: self.clone(), coords })
    }

    pub fn vector_i64(&self, coords: &[i64]) -> Result<LatticeVector> {
        self.vector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector { lattice: self.clone(), coords: vec![Int::zero(); self.rank()] }
    }

    /// The `i`-th basis vector.
    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = self.zero_vector();
        v.coords[i] = Int::one();
        v
    }

    fn check(&self, x: &LatticeVector) -> Result<()> {
        if self.same_as(&x.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// `x^T G y`.
    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.0.gram.bilinear(&x.coords, &y.coords))
    }

    pub fn inner_rational(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let g = &self.0.gram;
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !g[(i, j)].is_zero() {
                    acc += xi * yj * rat(g[(i, j)].clone());
                }
            }
        }
        acc
    }

    /// Positive generator of the ideal `(x, L)`.
    pub fn divisibility(&self, x: &LatticeVector) -> Result<Int> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(gcd_all(&self.0.gram.mul_vec(&x.coords)))
    }

    /// `x / div(x)`, an element of the dual lattice.
    pub fn dual_class(&self, x: &LatticeVector) -> Result<RationalVector> {
        let d = self.divisibility(x)?;
        Ok(RationalVector {
            lattice: self.clone(),
            coords: x.coords.iter().map(|c| Rat::new(c.clone(), d.clone())).collect(),
        })
    }

    /// Primitive closure `(Q-span of vectors) ∩ L`, returned in HNF basis.
    pub fn saturation(&self, vectors: &[LatticeVector]) -> Result<Sublattice> {
        let a = self.independent_rows(vectors)?;
        let n = self.rank();
        let complement = integer_kernel(&a);
        let basis = if complement.is_empty() {
            (0..n).map(|i| IntMatrix::identity(n).row(i).to_vec()).collect()
        } else {
            integer_kernel(&IntMatrix::from_rows(complement))
        };
        Ok(Sublattice::from_basis(self.clone(), basis))
    }

    /// Index of `span(vectors)` inside its saturation.
    pub fn saturation_index(&self, vectors: &[LatticeVector]) -> Result<Int> {
        let a = self.independent_rows(vectors)?;
        Ok(smith_normal_form(&a).diagonal().iter().product())
    }

    fn independent_rows(&self, vectors: &[LatticeVector]) -> Result<IntMatrix> {
        for v in vectors {
            self.check(v)?;
        }
        if vectors.is_empty() {
            return Err(Error::DependentInput);
        }
        let a = IntMatrix::from_rows(vectors.iter().map(|v| v.coords.clone()).collect());
        if rank(&a) != vectors.len() {
            return Err(Error::DependentInput);
        }
        Ok(a)
    }

    /// `{ z in L : (z, v) = 0 for all v }`, returned in HNF basis.
    pub fn orthogonal_complement(&self, vectors: &[LatticeVector]) -> Result<Sublattice> {
        for v in vectors {
            self.check(v)?;
        }
        let n = self.rank();
        let basis = if vectors.is_empty() {
            (0..n).map(|i| IntMatrix::identity(n).row(i).to_vec()).collect()
        } else {
            let b = IntMatrix::from_rows(vectors.iter().map(|v| self.0.gram.mul_vec(&v.coords)).collect());
            integer_kernel(&b)
        };
        Ok(Sublattice::from_basis(self.clone(), basis))
    }

    /// Gram matrix `P^T G P` of the same lattice in a new basis.
    pub fn change_basis(&self, p: &IntMatrix) -> Result<Lattice> {
        if !p.det().abs().is_one() {
            return Err(Error::BadParam("basis change must be unimodular".into()));
        }
        Lattice::new(p.transpose().mul(&self.0.gram).mul(p))
    }
}

/// Orthogonal direct sum; the label is joined with `+`.
pub fn direct_sum(parts: &[&Lattice]) -> Result<Lattice> {
    let grams: Vec<&IntMatrix> = parts.iter().map(|l| l.gram()).collect();
    let label = parts.iter().map(|l| l.label().unwrap_or("?")).collect::<Vec<_>>().join("+");
    Lattice::with_label(IntMatrix::direct_sum(&grams), label)
}

/// Integer coordinates relative to the basis of a specific lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Lattice,
    coords: Vec<Int>,
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(","))
    }
}

impl LatticeVector {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates.
    pub fn content(&self) -> Int {
        gcd_all(&self.coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn square(&self) -> Int {
        self.lattice.0.gram.bilinear(&self.coords, &self.coords)
    }

    pub fn dot(&self, other: &LatticeVector) -> Result<Int> {
        self.lattice.inner(self, other)
    }

    pub fn divisibility(&self) -> Result<Int> {
        self.lattice.divisibility(self)
    }

    fn zip_with(&self, other: &LatticeVector, f: impl Fn(&Int, &Int) -> Int) -> Result<LatticeVector> {
        self.lattice.check(other)?;
        Ok(LatticeVector {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// `self / content(self)`.
    pub fn primitive_part(&self) -> Result<LatticeVector> {
        let c = self.content();
        if c.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|x| x / &c).collect() })
    }

    /// Sign-normalized so that the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> LatticeVector {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector { lattice: self.lattice.clone(), coords: self.coords.iter().cloned().map(rat).collect() }
    }
}

/// A vector of `L ⊗ Q` with coordinates in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalVector {
    lattice: Lattice,
    coords: Vec<Rat>,
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(crate::arith::fmt_rat).collect();
        write!(f, "({})", c.join(","))
    }
}

impl RationalVector {
    pub fn new(lattice: &Lattice, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::WrongLength { got: coords.len(), rank: lattice.rank() });
        }
        Ok(RationalVector { lattice: lattice.clone(), coords })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn square(&self) -> Rat {
        self.lattice.inner_rational(&self.coords, &self.coords)
    }

    pub fn pair(&self, other: &RationalVector) -> Result<Rat> {
        self.lattice.check_rational(other)?;
        Ok(self.lattice.inner_rational(&self.coords, &other.coords))
    }

    pub fn pair_lattice(&self, x: &LatticeVector) -> Result<Rat> {
        self.lattice.check(x)?;
        Ok(self.lattice.inner_rational(&self.coords, &x.to_rational().coords))
    }

    /// The integral vector, if every coordinate is an integer.
    pub fn to_integral(&self) -> Option<LatticeVector> {
        let coords = self.coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>()?;
        Some(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl Lattice {
    fn check_rational(&self, x: &RationalVector) -> Result<()> {
        if self.same_as(&x.lattice) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }
}

/// A sublattice given by a basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: Vec<Vec<Int>>,
    gram: IntMatrix,
}

impl Sublattice {
    pub(crate) fn from_basis(ambient: Lattice, basis: Vec<Vec<Int>>) -> Self {
        let g = ambient.gram();
        let k = basis.len();
        let mut gram = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = g.bilinear(&basis[i], &basis[j]);
            }
        }
        Sublattice { ambient, basis, gram }
    }

    /// Validates independence and ambient membership.
    pub fn new(ambient: &Lattice, basis: &[LatticeVector]) -> Result<Self> {
        ambient.independent_rows(basis)?;
        Ok(Self::from_basis(ambient.clone(), basis.iter().map(|v| v.coords.clone()).collect()))
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<LatticeVector> {
        self.basis.iter().map(|b| LatticeVector { lattice: self.ambient.clone(), coords: b.clone() }).collect()
    }

    pub fn basis_coords(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> Int {
        self.gram.det()
    }

    /// Ambient vector with the given coordinates in this basis.
    pub fn vector(&self, coords: &[Int]) -> LatticeVector {
        let n = self.ambient.rank();
        let mut out = vec![Int::zero(); n];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        LatticeVector { lattice: self.ambient.clone(), coords: out }
    }

    /// Coordinates of `x` in this basis, if `x` lies in the sublattice.
    pub fn coordinates_of(&self, x: &LatticeVector) -> Option<Vec<Int>> {
        self.rational_coordinates_of(x)?
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Coordinates of `x` if it lies in the rational span.
    pub fn rational_coordinates_of(&self, x: &LatticeVector) -> Option<Vec<Rat>> {
        if !self.ambient.same_as(&x.lattice) || self.basis.is_empty() {
            return None;
        }
        let bt = IntMatrix::from_cols(&self.basis);
        solve_rational(&bt, &x.coords)
    }

    /// The sublattice as a standalone lattice with its induced form.
    pub fn as_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram.clone())
    }

    /// Same sublattice in a new basis; rows of `basis` are ambient coords.
    pub(crate) fn rebased(&self, basis: Vec<Vec<Int>>) -> Sublattice {
        Sublattice::from_basis(self.ambient.clone(), basis)
    }

    pub fn canonical_basis(&self) -> Vec<Vec<Int>> {
        hnf_rows(&self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lattice::standard::{self, Surface};

    fn u() -> Lattice {
        standard::hyperbolic_plane()
    }

    #[test]
    fn make_lattice_examples() {
        let l = make_lattice(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(l.is_even());
        assert_eq!(l.det(), &int(-1));
        let a2 = make_lattice(IntMatrix::from_i64(&[&[2, -1], &[-1, 2]])).unwrap();
        assert!(a2.is_even());
        assert_eq!(a2.det(), &int(3));
        assert_eq!(make_lattice(IntMatrix::from_i64(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::Degenerate);
        assert_eq!(make_lattice(IntMatrix::from_i64(&[&[1, 2], &[1, 1]])).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn inner_examples() {
        let l8 = standard::mukai_lattice(Surface::Abelian);
        let v = standard::mukai_vector(Surface::Abelian, 1, &[], -3).unwrap();
        let s = standard::mukai_vector(Surface::Abelian, 0, &[], -1).unwrap();
        assert_eq!(l8.inner(&v, &v).unwrap(), int(6));
        assert_eq!(l8.inner(&v, &s).unwrap(), int(1));
        let e = u().vector_i64(&[1, 0]).unwrap();
        assert_eq!(e.square(), int(0));
        let other = standard::a2().vector_i64(&[1, 0]).unwrap();
        assert_eq!(u().inner(&e, &other).unwrap_err(), Error::LatticeMismatch);
    }

    #[test]
    fn divisibility_examples() {
        let k5 = standard::kummer(5).unwrap();
        let delta = k5.basis_vector(6);
        assert_eq!(k5.divisibility(&delta).unwrap(), int(12));
        assert_eq!(u().divisibility(&u().vector_i64(&[1, 0]).unwrap()).unwrap(), int(1));
        let y = k5.vector_i64(&[12, 12, 0, 0, 0, 0, 5]).unwrap();
        assert_eq!(k5.divisibility(&y).unwrap(), int(12));
        assert_eq!(k5.divisibility(&k5.zero_vector()).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn dual_class_examples() {
        let k1 = standard::kummer(1).unwrap();
        let d = k1.dual_class(&k1.basis_vector(6)).unwrap();
        assert_eq!(d.coords()[6], Rat::new(int(1), int(4)));
        let x = u().vector_i64(&[2, 0]).unwrap();
        let d = u().dual_class(&x).unwrap();
        assert_eq!(d.to_integral().unwrap().coords(), &[int(1), int(0)]);
    }

    #[test]
    fn saturation_examples() {
        let e2 = u().vector_i64(&[2, 0]).unwrap();
        let s = u().saturation(std::slice::from_ref(&e2)).unwrap();
        assert_eq!(s.basis_coords(), &[vec![int(1), int(0)]]);
        assert_eq!(u().saturation_index(&[e2]).unwrap(), int(2));

        let l8 = standard::mukai_lattice(Surface::Abelian);
        let a = standard::mukai_vector(Surface::Abelian, 1, &[], -2).unwrap();
        let b = standard::mukai_vector(Surface::Abelian, 1, &[], 2).unwrap();
        let t = l8.saturation(&[a, b]).unwrap();
        assert_eq!(t.gram(), &IntMatrix::from_i64(&[&[0, -1], &[-1, 0]]));

        let v = standard::mukai_vector(Surface::Abelian, 1, &[], -6).unwrap();
        let y = standard::mukai_vector(Surface::Abelian, 5, &[12, 12, 0, 0, 0, 0], 30).unwrap();
        let t = l8.saturation(&[v.clone(), y.clone()]).unwrap();
        assert_eq!(t.det(), int(-1));
        let w = v.add(&y).unwrap().scale(&int(1));
        let w = l8.vector(w.coords().iter().map(|c| c / int(6)).collect()).unwrap();
        assert!(t.coordinates_of(&w).is_some());
        assert_eq!(l8.saturation_index(&[v, y]).unwrap(), int(12));
    }

    #[test]
    fn saturation_rejects_dependent_input() {
        let a = u().vector_i64(&[1, 2]).unwrap();
        let b = u().vector_i64(&[2, 4]).unwrap();
        assert_eq!(u().saturation(&[a, b]).unwrap_err(), Error::DependentInput);
    }

    #[test]
    fn complement_of_abelian_mukai_vector_is_kummer() {
        let l8 = standard::mukai_lattice(Surface::Abelian);
        let v = standard::mukai_vector(Surface::Abelian, 1, &[], -2).unwrap();
        let c = l8.orthogonal_complement(&[v]).unwrap();
        assert_eq!(c.rank(), 7);
        // the basis U^3 + <delta> lies in the complement with unimodular coordinates
        let mut cols = Vec::new();
        for i in 0..6 {
            let mut ell = [0i64; 6];
            ell[i] = 1;
            cols.push(c.coordinates_of(&standard::mukai_vector(Surface::Abelian, 0, &ell, 0).unwrap()).unwrap());
        }
        let delta = standard::mukai_vector(Surface::Abelian, 1, &[], 2).unwrap();
        cols.push(c.coordinates_of(&delta).unwrap());
        let p = IntMatrix::from_cols(&cols);
        assert!(p.det().abs().is_one());
        let k1 = standard::kummer(1).unwrap();
        assert_eq!(p.transpose().mul(c.gram()).mul(&p), *k1.gram());
    }

    #[test]
    fn complement_examples() {
        let e = u().vector_i64(&[1, 0]).unwrap();
        let c = u().orthogonal_complement(&[e]).unwrap();
        assert_eq!(c.basis_coords(), &[vec![int(1), int(0)]]);

        let l24 = standard::mukai_lattice(Surface::K3);
        let w = standard::mukai_vector(Surface::K3, 1, &[], -1).unwrap();
        let s = standard::mukai_vector(Surface::K3, 2, &[1, 1], 1).unwrap();
        let c = l24.orthogonal_complement(&[w.clone(), s.clone()]).unwrap();
        assert_eq!(c.rank(), 22);
        let mut all = c.basis();
        all.push(w);
        all.push(s);
        assert_eq!(rank(&IntMatrix::from_rows(all.iter().map(|v| v.coords().to_vec()).collect())), 24);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(u().signature(), (1, 1));
        assert_eq!(standard::mukai_lattice(Surface::K3).signature(), (4, 20));
        for n in 1..6 {
            assert_eq!(standard::kummer(n).unwrap().signature(), (3, 4));
        }
    }
}
