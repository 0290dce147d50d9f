mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use wallkit::lattice::standard::{self, mukai_lattice, mukai_vector, Surface};
use wallkit::walls::{classify, rank2_closure, rank2_solve};
use wallkit::{eichler_transvection, Clause, Criterion, LatticeVector, Window};

/// Hyperbolic 2x2 Gram matrices with a vector `v`, `0 < v^2 <= 20`.
fn hyperbolic_pair() -> impl Strategy<Value = ([[i64; 2]; 2], [i64; 2])> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -4i64..=4, -4i64..=4)
        .prop_map(|(a, b, d, x, y)| ([[a, b], [b, d]], [x, y]))
        .prop_filter("hyperbolic with 0 < v^2 <= 20", |(g, v)| {
            let n = g[0][0] * v[0] * v[0] + 2 * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1];
            g[0][0] * g[1][1] - g[0][1] * g[0][1] < 0 && n > 0 && n <= 20
        })
}

fn solve(g: [[i64; 2]; 2], v: [i64; 2], w: &Window) -> Vec<Vec<i64>> {
    let gram = mat(&[g[0].to_vec(), g[1].to_vec()]);
    rank2_solve(&gram, &bigs(&v), w).unwrap().iter().map(|x| to_i64s(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank2_solve_matches_box_scan((g, v) in hyperbolic_pair()) {
        let n = g[0][0] * v[0] * v[0] + 2 * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1];
        let h = n / 2;
        let cases: [(Window, Option<i64>, i64, i64); 5] = [
            (Window::exact(-2, 0, h), Some(-2), 0, h),
            (Window::range(h), None, 1, h),
            (Window::exact(-2, 0, 0), Some(-2), 0, 0),
            (Window::exact(-2, 1, 1), Some(-2), 1, 1),
            (Window::exact(0, -h, h), Some(0), -h, h),
        ];
        for (w, exact, lo, hi) in cases {
            prop_assert_eq!(solve(g, v, &w), rank2_oracle(g, v, exact, lo, hi), "window {:?}", w);
        }
    }

    #[test]
    fn rank2_solve_is_covariant_under_negating_v((g, v) in hyperbolic_pair()) {
        // w solves (v, p, c) iff -w solves (-v, p, c)
        let n = g[0][0] * v[0] * v[0] + 2 * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1];
        let w = Window::exact(-2, 0, n / 2);
        let mut a: Vec<Vec<i64>> = solve(g, v, &w).into_iter().map(|x| vec![-x[0], -x[1]]).collect();
        let mut b = solve(g, [-v[0], -v[1]], &w);
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

/// A random primitive Mukai vector of positive square plus a random
/// negative vector orthogonal to it.
fn mukai_config(surface: Surface) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let m = surface.middle_rank();
    (
        -3i64..=3,
        proptest::collection::vec(-3i64..=3, 4),
        -4i64..=4,
        proptest::collection::vec(-3i64..=3, m + 1),
    )
        .prop_map(move |(r, ell, s, comb)| {
            let mut v = vec![0i64; m + 2];
            v[0] = r;
            v[1..5].copy_from_slice(&ell);
            v[m + 1] = s;
            (v, comb)
        })
}

fn build(surface: Surface, v: &[i64], comb: &[i64]) -> Option<(LatticeVector, LatticeVector)> {
    let l = mukai_lattice(surface);
    let v = l.vector_i64(v).ok()?;
    if !v.is_primitive() || !v.square().is_positive() {
        return None;
    }
    let perp = l.orthogonal_complement(std::slice::from_ref(&v)).ok()?;
    let mut d = l.zero_vector();
    for (b, &k) in perp.basis().iter().zip(comb) {
        d = d.add(&b.scale(&big(k))).ok()?;
    }
    if d.is_zero() || !d.square().is_negative() {
        return None;
    }
    Some((v, d))
}

fn witness_ok(clause: Clause, v: &LatticeVector, d: &LatticeVector, w: &LatticeVector) -> bool {
    // w lies in the rational span of v and D: the 3x3 Gram determinant vanishes
    let vs = [v, d, w];
    let g: Vec<Vec<BigInt>> = vs.iter().map(|a| vs.iter().map(|b| a.dot(b).unwrap()).collect()).collect();
    let det3 = &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1]) - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
        + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0]);
    if !det3.is_zero() {
        return false;
    }
    let n = v.square();
    let half = &n / 2;
    let p = w.dot(v).unwrap();
    let sq = w.square();
    match clause {
        Clause::Bm1 => sq == big(-2) && p >= big(0) && p <= half,
        Clause::Bm2 | Clause::Yosh => sq >= big(0) && sq < p && p <= half,
        Clause::Mz0 => sq == big(-2) && p == big(0),
        Clause::Mz1 => sq == big(-2) && p == big(1),
        Clause::None => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bm_witnesses_satisfy_their_clause((v, comb) in mukai_config(Surface::K3)) {
        let Some((v, d)) = build(Surface::K3, &v, &comb) else { return Ok(()); };
        let verdict = classify(Criterion::Bm, &v, &d, true).unwrap();
        prop_assert_eq!(verdict.is_wall, verdict.witness.is_some());
        prop_assert_eq!(verdict.is_wall, !verdict.all_witnesses.is_empty());
        for (c, w) in &verdict.all_witnesses {
            prop_assert!(witness_ok(*c, &v, &d, w), "{:?} {:?}", c, w.coords());
        }
        // the reported clause is the first clause with a witness
        if let Some((c, _)) = verdict.all_witnesses.first() {
            prop_assert_eq!(*c, verdict.clause);
        }
    }

    #[test]
    fn verdict_is_symmetric_in_sign_of_d((v, comb) in mukai_config(Surface::Abelian)) {
        let Some((v, d)) = build(Surface::Abelian, &v, &comb) else { return Ok(()); };
        {
            let c = Criterion::Yoshioka;
            let a = classify(c, &v, &d, false).unwrap();
            let b = classify(c, &v, &d.neg(), false).unwrap();
            prop_assert_eq!(a.is_wall, b.is_wall);
            prop_assert_eq!(a.clause, b.clause);
            prop_assert_eq!(a.t_gram(), b.t_gram());
        }
    }

    #[test]
    fn verdict_is_transport_invariant((v, comb) in mukai_config(Surface::K3), k in -3i64..=3) {
        let Some((v, d)) = build(Surface::K3, &v, &comb) else { return Ok(()); };
        let l = mukai_lattice(Surface::K3);
        // an Eichler transvection with isotropic e = r-coordinate basis vector
        let e = l.basis_vector(0);
        let a = l.basis_vector(3).scale(&big(k)).add(&l.basis_vector(1)).unwrap();
        prop_assume!(e.dot(&a).unwrap().is_zero());
        let g = eichler_transvection(&l, &e, &a).unwrap();
        let (gv, gd) = (g.apply(&v).unwrap(), g.apply(&d).unwrap());
        let x = classify(Criterion::Bm, &v, &d, false).unwrap();
        let y = classify(Criterion::Bm, &gv, &gd, false).unwrap();
        prop_assert_eq!(x.is_wall, y.is_wall);
        prop_assert_eq!(x.clause, y.clause);
        prop_assert_eq!(x.t_gram(), y.t_gram());
    }

    #[test]
    fn closure_gram_is_normalized((v, comb) in mukai_config(Surface::K3)) {
        let Some((v, d)) = build(Surface::K3, &v, &comb) else { return Ok(()); };
        let t = rank2_closure(v.lattice(), &v, &d).unwrap();
        let g = t.gram();
        let n = v.primitive_part().unwrap().square();
        prop_assert_eq!(g[(0, 0)].clone(), n.clone());
        prop_assert!(g[(0, 1)] >= big(0) && g[(0, 1)].clone() * 2 <= n);
        prop_assert!(t.coordinates_of(&d).is_some());
        // span{v, D} sits in T with index^2 = det(span) / det(T)
        let span_det = v.square() * d.square() - v.dot(&d).unwrap().pow(2);
        let ratio = BigRational::new(span_det, t.det());
        prop_assert!(ratio.is_integer());
        let idx = ratio.to_integer();
        prop_assert_eq!(idx.sqrt().pow(2), idx);
    }
}

#[test]
fn root_orthogonal_to_v_is_bm1() {
    // any (-2)-class orthogonal to v is its own BM1 witness at pairing 0
    let v = mukai_vector(Surface::K3, 1, &[], -3).unwrap();
    let l = v.lattice().clone();
    for i in 7..15 {
        let mut c = vec![0i64; 24];
        c[i] = 1;
        let root = l.vector_i64(&c).unwrap();
        if root.square() != big(-2) {
            continue;
        }
        let verdict = classify(Criterion::Bm, &v, &root, false).unwrap();
        assert!(verdict.is_wall);
        assert_eq!(verdict.clause, Clause::Bm1);
        assert_eq!(verdict.witness.unwrap().dot(&v).unwrap(), big(0));
    }
}

#[test]
fn mz_requires_square_two_and_orthogonality() {
    let w = mukai_vector(Surface::K3, 1, &[], -1).unwrap();
    let s = mukai_vector(Surface::K3, 2, &[1, 1], 1).unwrap();
    let d = standard::mukai_vector(Surface::K3, 3, &[2, 2], 3).unwrap();
    assert_eq!(w.square(), big(2));
    assert_eq!(d.dot(&w).unwrap(), big(0));
    let verdict = classify(Criterion::Mz, &w, &d, false).unwrap();
    assert_eq!(verdict.clause, Clause::Mz1);
    assert_eq!(verdict.witness.unwrap().dot(&w).unwrap(), big(1));
    assert!(classify(Criterion::Mz, &s.neg(), &d, false).is_err());
}
