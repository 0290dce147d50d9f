//! Exact congruence diagonalization of a symmetric form over the rationals.

use num_traits::{Signed, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Order in which candidate pivots are scanned. Two orders give two
/// independent orthogonal bases of the same form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

fn pair(gram: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !gram[i][j].is_zero() {
                acc += xi * &gram[i][j] * yj;
            }
        }
    }
    acc
}

/// Returns a rational basis `b_1..b_n` with `(b_i, b_j) = 0` for `i != j`,
/// paired with the norms `(b_i, b_i)`, all nonzero.
///
/// When every remaining vector is isotropic but two of them pair
/// nontrivially, their sum is used as the pivot.
pub fn orthogonal_basis(gram: &IntMatrix, order: PivotOrder) -> Result<Vec<(Vec<Rat>, Rat)>> {
    let n = gram.nrows();
    let g = gram.to_rational();
    let mut pool: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
        .collect();
    if order == PivotOrder::Reverse {
        pool.reverse();
    }
    let mut out = Vec::with_capacity(n);
    while !pool.is_empty() {
        let pivot_idx = (0..pool.len()).find(|&i| !pair(&g, &pool[i], &pool[i]).is_zero());
        let pivot = match pivot_idx {
            Some(i) => pool.remove(i),
            None => {
                let mut found = None;
                'outer: for i in 0..pool.len() {
                    for j in i + 1..pool.len() {
                        if !pair(&g, &pool[i], &pool[j]).is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let (i, j) = found.ok_or(Error::Degenerate)?;
                let sum: Vec<Rat> = pool[i].iter().zip(&pool[j]).map(|(a, b)| a + b).collect();
                pool.remove(i);
                sum
            }
        };
        let norm = pair(&g, &pivot, &pivot);
        for v in pool.iter_mut() {
            let c = pair(&g, v, &pivot) / &norm;
            if !c.is_zero() {
                for (vi, pi) in v.iter_mut().zip(&pivot) {
                    *vi -= &c * pi;
                }
            }
        }
        out.push((pivot, norm));
    }
    Ok(out)
}

/// `(p, q)`: numbers of positive and negative diagonal entries.
pub fn signature_of(gram: &IntMatrix) -> Result<(usize, usize)> {
    let basis = orthogonal_basis(gram, PivotOrder::Forward)?;
    let p = basis.iter().filter(|(_, n)| n.is_positive()).count();
    Ok((p, basis.len() - p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane_needs_symmetric_completion() {
        let u = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature_of(&u).unwrap(), (1, 1));
        let b = orthogonal_basis(&u, PivotOrder::Forward).unwrap();
        let g = u.to_rational();
        assert!(pair(&g, &b[0].0, &b[1].0).is_zero());
    }

    #[test]
    fn degenerate_form_rejected() {
        let m = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(signature_of(&m), Err(Error::Degenerate));
    }

    #[test]
    fn both_orders_agree_on_signature() {
        let m = IntMatrix::from_i64(&[&[0, 3, 1], &[3, 0, 2], &[1, 2, -5]]);
        let f = orthogonal_basis(&m, PivotOrder::Forward).unwrap();
        let r = orthogonal_basis(&m, PivotOrder::Reverse).unwrap();
        let pos = |b: &Vec<(Vec<Rat>, Rat)>| b.iter().filter(|(_, n)| n.is_positive()).count();
        assert_eq!(pos(&f), pos(&r));
    }
}
