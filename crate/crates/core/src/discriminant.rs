//! Discriminant groups `A_L = L^∨ / L` as finite quadratic forms.
//!
//! Elements are stored as residue vectors in generator coordinates, so two
//! elements are equal exactly when their residues agree. Quadratic values are
//! normalized to `[0, 2)` and bilinear values to `[0, 1)`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, modp, rat, rat_mod, Int, Rat};
use crate::error::{Error, Result};
use crate::io::{to_json_matrix, JsonInt};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug)]
pub struct DiscriminantForm {
    invariant_factors: Vec<Int>,
    generator_lifts: Vec<Vec<Rat>>,
    q_values: Vec<Rat>,
    pairing_values: Vec<Vec<Rat>>,
    // rows of the SNF left transform for the nontrivial factors
    coord_rows: Vec<Vec<Int>>,
    gram: IntMatrix,
}

/// Residues `c_i mod d_i` in generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscElement(pub Vec<Int>);

/// Induced action of an isometry on the generators; column `j` holds the
/// image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscAction {
    pub factors: Vec<Int>,
    pub matrix: IntMatrix,
}

/// Outcome of testing an action for being the scalar `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PmOne {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "other")]
    Other,
}

impl PmOne {
    pub fn as_str(self) -> &'static str {
        match self {
            PmOne::Plus => "+1",
            PmOne::Minus => "-1",
            PmOne::Other => "other",
        }
    }

    pub fn as_sign(self) -> Option<i32> {
        match self {
            PmOne::Plus => Some(1),
            PmOne::Minus => Some(-1),
            PmOne::Other => None,
        }
    }
}

/// Discriminant group of `L` via the Smith normal form of its Gram matrix.
/// Cached per lattice.
pub fn discriminant_group(l: &Lattice) -> Arc<DiscriminantForm> {
    l.discriminant_cache().get_or_init(|| Arc::new(compute(l))).clone()
}

fn compute(l: &Lattice) -> DiscriminantForm {
    let g = l.gram();
    let s = smith_normal_form(g);
    let diag = s.diagonal();
    let mut invariant_factors = Vec::new();
    let mut generator_lifts = Vec::new();
    let mut coord_rows = Vec::new();
    for (k, d) in diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.clone());
        generator_lifts.push(s.right.col(k).into_iter().map(|c| Rat::new(c, d.clone())).collect::<Vec<_>>());
        coord_rows.push(s.left.row(k).to_vec());
    }
    let two = Int::from(2);
    let q_values = generator_lifts.iter().map(|x| rat_mod(&l.inner_rational(x, x), &two)).collect();
    let pairing_values = generator_lifts
        .iter()
        .map(|x| generator_lifts.iter().map(|y| rat_mod(&l.inner_rational(x, y), &Int::one())).collect())
        .collect();
    DiscriminantForm { invariant_factors, generator_lifts, q_values, pairing_values, coord_rows, gram: g.clone() }
}

impl DiscriminantForm {
    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn generator_lifts(&self) -> &[Vec<Rat>] {
        &self.generator_lifts
    }

    pub fn q_values(&self) -> &[Rat] {
        &self.q_values
    }

    pub fn pairing_values(&self) -> &[Vec<Rat>] {
        &self.pairing_values
    }

    /// Class of a dual vector (rational coordinates with `G x` integral).
    pub fn element_of_dual(&self, x: &[Rat]) -> Result<DiscElement> {
        let gx: Vec<Rat> = (0..self.gram.nrows())
            .map(|i| x.iter().enumerate().map(|(j, xj)| xj * rat(self.gram[(i, j)].clone())).sum())
            .collect();
        if gx.iter().any(|c| !c.is_integer()) {
            return Err(Error::BadParam("vector is not in the dual lattice".into()));
        }
        let y: Vec<Int> = gx.into_iter().map(|c| c.to_integer()).collect();
        Ok(DiscElement(
            self.coord_rows
                .iter()
                .zip(&self.invariant_factors)
                .map(|(row, d)| modp(&row.iter().zip(&y).map(|(a, b)| a * b).sum::<Int>(), d))
                .collect(),
        ))
    }

    /// A lift of the element to `L ⊗ Q`.
    pub fn lift(&self, e: &DiscElement) -> Vec<Rat> {
        let n = self.gram.nrows();
        let mut out = vec![Rat::zero(); n];
        for (c, g) in e.0.iter().zip(&self.generator_lifts) {
            for (o, gi) in out.iter_mut().zip(g) {
                *o += rat(c.clone()) * gi;
            }
        }
        out
    }

    /// `q(e)` in `[0, 2)`.
    pub fn q(&self, e: &DiscElement) -> Rat {
        let x = self.lift(e);
        let g = self.gram.to_rational();
        let mut acc = Rat::zero();
        for i in 0..x.len() {
            for j in 0..x.len() {
                acc += &x[i] * &g[i][j] * &x[j];
            }
        }
        rat_mod(&acc, &Int::from(2))
    }

    /// `{"invariant_factors": [...], "q": ["p/q", ...]}`.
    pub fn report(&self) -> DiscriminantReport {
        DiscriminantReport {
            invariant_factors: self.invariant_factors.iter().cloned().map(JsonInt).collect(),
            q: self.q_values.iter().map(fmt_rat).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DiscriminantReport {
    pub invariant_factors: Vec<JsonInt>,
    pub q: Vec<String>,
}

/// Class of `x / div(x)` in `A_L` for primitive `x`.
pub fn disc_image(l: &Lattice, x: &LatticeVector) -> Result<DiscElement> {
    if !x.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let d = l.dual_class(x)?;
    discriminant_group(l).element_of_dual(d.coords())
}

/// Action on `A_L` of an integer matrix already known to preserve the Gram
/// matrix. Quadratic values of the images are recomputed from the residues
/// and compared against the generators.
pub(crate) fn action_of_matrix(l: &Lattice, m: &IntMatrix) -> Result<DiscAction> {
    let a = discriminant_group(l);
    let k = a.invariant_factors.len();
    let mut mat = IntMatrix::zeros(k, k);
    for (j, g) in a.generator_lifts.iter().enumerate() {
        let img: Vec<Rat> = (0..m.nrows())
            .map(|i| g.iter().enumerate().map(|(c, gc)| rat(m[(i, c)].clone()) * gc).sum())
            .collect();
        let e = a.element_of_dual(&img)?;
        if a.q(&e) != a.q_values[j] {
            return Err(Error::NotIsometry(format!("discriminant form not preserved on generator {j}")));
        }
        for (i, c) in e.0.into_iter().enumerate() {
            mat[(i, j)] = c;
        }
    }
    Ok(DiscAction { factors: a.invariant_factors.clone(), matrix: mat })
}

impl DiscAction {
    pub fn identity(factors: &[Int]) -> Self {
        DiscAction { factors: factors.to_vec(), matrix: IntMatrix::identity(factors.len()) }
    }

    fn reduce(&self, m: IntMatrix) -> IntMatrix {
        let mut m = m;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = modp(&m[(i, j)], &self.factors[i]);
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Action of `self ∘ other`.
    pub fn compose(&self, other: &DiscAction) -> DiscAction {
        DiscAction { factors: self.factors.clone(), matrix: self.reduce(self.matrix.mul(&other.matrix)) }
    }

    pub fn apply(&self, e: &DiscElement) -> DiscElement {
        DiscElement(
            self.matrix.mul_vec(&e.0).iter().zip(&self.factors).map(|(x, d)| modp(x, d)).collect(),
        )
    }

    fn is_scalar(&self, s: i64) -> bool {
        let k = self.factors.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let want = if i == j { Int::from(s) } else { Int::zero() };
                modp(&(&self.matrix[(i, j)] - want), &self.factors[i]).is_zero()
            })
        })
    }

    pub fn residue_matrix(&self) -> Vec<Vec<JsonInt>> {
        to_json_matrix(&self.matrix)
    }
}

/// `+1` / `-1` when the action is that scalar on every generator.
pub fn classify_pm1(a: &DiscAction) -> PmOne {
    if a.is_scalar(1) {
        PmOne::Plus
    } else if a.is_scalar(-1) {
        PmOne::Minus
    } else {
        PmOne::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lattice::standard;

    #[test]
    fn unimodular_is_trivial() {
        let a = discriminant_group(&standard::hyperbolic_plane());
        assert!(a.is_trivial());
        assert_eq!(a.order(), int(1));
    }

    #[test]
    fn kummer5_is_cyclic_of_order_12() {
        let k = standard::kummer(5).unwrap();
        let a = discriminant_group(&k);
        assert_eq!(a.invariant_factors(), &[int(12)]);
        assert_eq!(fmt_rat(&a.q_values()[0]), "23/12");
        let delta = k.basis_vector(6);
        assert_eq!(disc_image(&k, &delta).unwrap(), DiscElement(vec![int(1)]));
        let y = k.vector_i64(&[12, 12, 0, 0, 0, 0, 5]).unwrap();
        assert_eq!(disc_image(&k, &y).unwrap(), DiscElement(vec![int(5)]));
    }

    #[test]
    fn a2_negative() {
        let l = standard::scaled(&standard::a2(), -1);
        let a = discriminant_group(&l);
        assert_eq!(a.invariant_factors(), &[int(3)]);
        assert_eq!(a.q_values()[0], Rat::new(int(4), int(3)));
    }

    #[test]
    fn primitive_vectors_of_unimodular_map_to_zero() {
        let uu = standard::uu();
        let x = uu.vector_i64(&[3, 5, -2, 7]).unwrap();
        assert_eq!(disc_image(&uu, &x).unwrap(), DiscElement(vec![]));
        let k = standard::kummer(5).unwrap();
        assert_eq!(disc_image(&k, &k.vector_i64(&[2, 0, 0, 0, 0, 0, 2]).unwrap()), Err(Error::NotPrimitive));
    }

    #[test]
    fn classify_examples() {
        let f = vec![int(12)];
        let id = DiscAction::identity(&f);
        assert_eq!(classify_pm1(&id), PmOne::Plus);
        let five = DiscAction { factors: f.clone(), matrix: IntMatrix::from_i64(&[&[5]]) };
        assert_eq!(classify_pm1(&five), PmOne::Other);
        let minus = DiscAction { factors: vec![int(4)], matrix: IntMatrix::from_i64(&[&[3]]) };
        assert_eq!(classify_pm1(&minus), PmOne::Minus);
        assert_eq!(five.compose(&five), id);
    }
}
