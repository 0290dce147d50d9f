//! Fincke–Pohst style enumeration of vectors of a fixed norm in a definite
//! lattice, in exact rational arithmetic.

use num_traits::{Signed, Zero};

use crate::arith::{div_round, rat, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};

/// All vectors `x` with `x^2 = norm`, at most `limit` of them, sorted
/// lexicographically. Without a limit the result is closed under negation.
pub fn short_vectors(l: &Lattice, norm: &Int, limit: Option<usize>) -> Result<Vec<LatticeVector>> {
    let (p, q) = l.signature();
    let sign = match (p, q) {
        (_, 0) => Int::from(1),
        (0, _) => Int::from(-1),
        _ => return Err(Error::NotDefinite),
    };
    let target = norm * &sign;
    if target.is_negative() {
        return Err(Error::BadParam("norm has the wrong sign for this lattice".into()));
    }
    if target.is_zero() {
        return Ok(Vec::new());
    }
    let gram = l.gram().scale(&sign);
    let n = gram.nrows();

    // Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
    let mut d: Vec<Rat> = vec![Rat::zero(); n];
    let mut mu: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut di = rat(gram[(i, i)].clone());
        for k in 0..i {
            di -= &d[k] * &mu[k][i] * &mu[k][i];
        }
        for j in i + 1..n {
            let mut v = rat(gram[(i, j)].clone());
            for k in 0..i {
                v -= &d[k] * &mu[k][i] * &mu[k][j];
            }
            mu[i][j] = v / &di;
        }
        d[i] = di;
    }

    let mut search = Search { n, d, mu, target: rat(target), limit, x: vec![Int::zero(); n], found: Vec::new() };
    let budget = search.target.clone();
    search.descend(n, budget);
    let mut out: Vec<LatticeVector> = search.found.into_iter().map(|c| l.vector(c).expect("rank")).collect();
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    Ok(out)
}

struct Search {
    n: usize,
    d: Vec<Rat>,
    mu: Vec<Vec<Rat>>,
    target: Rat,
    limit: Option<usize>,
    x: Vec<Int>,
    found: Vec<Vec<Int>>,
}

impl Search {
    fn full(&self) -> bool {
        self.limit.is_some_and(|m| self.found.len() >= m)
    }

    /// Assigns coordinate `level - 1` given the coordinates above it.
    fn descend(&mut self, level: usize, remaining: Rat) {
        if self.full() {
            return;
        }
        if level == 0 {
            if remaining.is_zero() {
                self.found.push(self.x.clone());
            }
            return;
        }
        let i = level - 1;
        let mut c = Rat::zero();
        for j in i + 1..self.n {
            if !self.x[j].is_zero() {
                c += &self.mu[i][j] * rat(self.x[j].clone());
            }
        }
        let center = div_round(&(-c.numer()), c.denom());
        let di = self.d[i].clone();
        let cost = |x: &Int| -> Rat {
            let t = rat(x.clone()) + &c;
            &di * &t * &t
        };
        // scan outward from the center on both sides
        let mut up = center.clone();
        loop {
            let k = cost(&up);
            if k > remaining {
                break;
            }
            self.x[i] = up.clone();
            self.descend(i, &remaining - k);
            if self.full() {
                return;
            }
            up += 1;
        }
        let mut down = center - 1;
        loop {
            let k = cost(&down);
            if k > remaining {
                break;
            }
            self.x[i] = down.clone();
            self.descend(i, &remaining - k);
            if self.full() {
                return;
            }
            down -= 1;
        }
        self.x[i] = Int::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lattice::standard;

    #[test]
    fn a2_roots() {
        let v = short_vectors(&standard::a2(), &int(2), None).unwrap();
        assert_eq!(v.len(), 6);
        assert!(short_vectors(&standard::a2(), &int(1), None).unwrap().is_empty());
    }

    #[test]
    fn e8_roots() {
        let v = short_vectors(&standard::e8(), &int(2), None).unwrap();
        assert_eq!(v.len(), 240);
        for x in &v {
            assert!(v.contains(&x.neg()));
        }
    }

    #[test]
    fn negative_definite_and_indefinite() {
        let e8m = standard::scaled(&standard::e8(), -1);
        assert_eq!(short_vectors(&e8m, &int(-2), None).unwrap().len(), 240);
        assert_eq!(short_vectors(&e8m, &int(-10), Some(3)).unwrap().len(), 3);
        assert_eq!(short_vectors(&standard::hyperbolic_plane(), &int(2), None).unwrap_err(), Error::NotDefinite);
    }
}
