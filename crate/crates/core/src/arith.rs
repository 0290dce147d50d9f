//! Integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ints(vs: &[i64]) -> Vec<Int> {
    vs.iter().map(|&v| Int::from(v)).collect()
}

/// Non-negative gcd of a slice; zero for an all-zero (or empty) slice.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(xs: I) -> Int {
    xs.into_iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients `c` with `sum c_i * xs_i = gcd(xs)`.
pub fn bezout(xs: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs: Vec<Int> = vec![Int::zero(); xs.len()];
    for (i, x) in xs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (ng, s, t) = xgcd(&g, x);
        for c in coeffs.iter_mut().take(i) {
            *c *= &s;
        }
        coeffs[i] = t;
        g = ng;
    }
    (g, coeffs)
}

/// Floor division rounding towards negative infinity.
pub fn div_floor(a: &Int, b: &Int) -> Int {
    Integer::div_floor(a, b)
}

/// Nearest integer to `a / b` (ties rounded down).
pub fn div_round(a: &Int, b: &Int) -> Int {
    let two = int(2);
    let (num, den) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    Integer::div_floor(&(num * &two + &den - 1), &(den * two))
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rat(n: Int) -> Rat {
    Rat::from_integer(n)
}

pub fn rat_to_int(r: &Rat) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

/// Reduces `x` into `[0, m)`.
pub fn modp(x: &Int, m: &Int) -> Int {
    x.mod_floor(m)
}

/// Reduces a rational into `[0, m)` for a positive integer modulus `m`.
pub fn rat_mod(x: &Rat, m: &Int) -> Rat {
    let m = rat(m.clone());
    let q = (x / &m).floor();
    x - q * m
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Distinct prime factors of `n >= 1` by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn sign(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x).ok()
}

pub fn abs(x: &Int) -> Int {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_combines_to_gcd() {
        let xs = ints(&[12, -18, 0, 27]);
        let (g, c) = bezout(&xs);
        assert_eq!(g, int(3));
        let s: Int = xs.iter().zip(&c).map(|(x, y)| x * y).sum();
        assert_eq!(s, g);
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(div_floor(&int(-7), &int(2)), int(-4));
        assert_eq!(div_round(&int(7), &int(2)), int(3));
        assert_eq!(div_round(&int(-7), &int(2)), int(-4));
        assert_eq!(div_round(&int(5), &int(-3)), int(-2));
        assert_eq!(exact_sqrt(&int(49)), Some(int(7)));
        assert_eq!(exact_sqrt(&int(50)), None);
        assert_eq!(distinct_prime_factors(30), vec![2, 3, 5]);
        assert_eq!(distinct_prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn rational_reduction() {
        let q = Rat::new(int(-1), int(12));
        assert_eq!(fmt_rat(&rat_mod(&q, &int(2))), "23/12");
    }
}
