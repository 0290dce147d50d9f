use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallkit::lattice::standard::{kummer, uu_e8m};
use wallkit::lattice::PivotOrder;
use wallkit::{
    classify_pm1, disc_image, eichler_reduce, eichler_transvection, mapping_isometry, orbit_equivalent, reflection,
    Isometry, Lattice, LatticeVector, PmOne,
};

/// A product of `len` random Eichler transvections `E(e, a)` with `e` one of
/// the four isotropic basis vectors of the declared `U + U`.
fn random_stable(l: &Lattice, len: usize, rng: &mut ChaCha8Rng) -> Isometry {
    let n = l.rank();
    let mut g = Isometry::identity(l);
    for _ in 0..len {
        let ei = rng.gen_range(0..4);
        let e = l.basis_vector(ei);
        let mut a = vec![0i64; n];
        for c in a.iter_mut() {
            *c = rng.gen_range(-2..=2);
        }
        a[ei ^ 1] = 0; // (e, a) = 0
        let a = l.vector_i64(&a).unwrap();
        g = g.compose(&eichler_transvection(l, &e, &a).unwrap()).unwrap();
    }
    g
}

fn random_div_one(l: &Lattice, rng: &mut ChaCha8Rng) -> LatticeVector {
    loop {
        let c: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-4..=4)).collect();
        let x = l.vector_i64(&c).unwrap();
        if !x.is_zero() && x.is_primitive() && l.divisibility(&x).unwrap().is_one() {
            return x;
        }
    }
}

/// A random word in `σ_δ`, `-Id`, reflections in `e_i - f_i` and
/// transvections of kummer(n).
fn kummer_isometry(n: u32, rng: &mut ChaCha8Rng) -> Isometry {
    let l = kummer(n).unwrap();
    let mut g = Isometry::identity(&l);
    for _ in 0..rng.gen_range(1..=4) {
        let h = match rng.gen_range(0..4) {
            0 => reflection(&l, &l.basis_vector(6)).unwrap(),
            1 => Isometry::minus_identity(&l),
            2 => {
                let i = rng.gen_range(0..3);
                let r = l.basis_vector(2 * i).sub(&l.basis_vector(2 * i + 1)).unwrap();
                reflection(&l, &r).unwrap()
            }
            _ => {
                let ei = rng.gen_range(0..6);
                let mut a = vec![0i64; 7];
                for c in a.iter_mut() {
                    *c = rng.gen_range(-2..=2);
                }
                a[ei ^ 1] = 0;
                a[ei] = 0;
                eichler_transvection(&l, &l.basis_vector(ei), &l.vector_i64(&a).unwrap()).unwrap()
            }
        };
        g = g.compose(&h).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transvections_are_stable_isometries(seed in any::<u64>(), len in 1usize..=5) {
        let l = uu_e8m();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_stable(&l, len, &mut rng);
        // re-verify from scratch
        let m = g.matrix();
        prop_assert_eq!(&m.transpose().mul(l.gram()).mul(m), l.gram());
        prop_assert_eq!(g.det(), 1);
        prop_assert_eq!(g.orientation(), 1);
        // unimodular lattice: the inverse is G^{-1} M^T G
        let inv = g.inverse();
        prop_assert_eq!(inv.compose(&g).unwrap(), Isometry::identity(&l));
    }

    #[test]
    fn disc_action_is_a_homomorphism(seed in any::<u64>(), n in 1u32..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = kummer_isometry(n, &mut rng);
        let h = kummer_isometry(n, &mut rng);
        let gh = g.compose(&h).unwrap();
        let composed = g.disc_action().unwrap().compose(&h.disc_action().unwrap());
        prop_assert_eq!(classify_pm1(&gh.disc_action().unwrap()), classify_pm1(&composed));
        // and agrees on the generator image
        let l = g.lattice().clone();
        let delta = l.basis_vector(6);
        let lhs = disc_image(&l, &gh.apply(&delta).unwrap()).unwrap();
        let rhs = composed.apply(&disc_image(&l, &delta).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orientation_is_a_character(seed in any::<u64>(), n in 1u32..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = kummer_isometry(n, &mut rng);
        let h = kummer_isometry(n, &mut rng);
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.orientation(), g.orientation() * h.orientation());
        prop_assert_eq!(g.orientation(), g.orientation_with(PivotOrder::Reverse));
        prop_assert_eq!(g.inverse().orientation(), g.orientation());
    }

    #[test]
    fn reduction_is_canonical(seed in any::<u64>()) {
        let l = uu_e8m();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_div_one(&l, &mut rng);
        let (g, y) = eichler_reduce(&l, &x).unwrap();
        prop_assert_eq!(g.apply(&x).unwrap(), y.clone());
        prop_assert!(classify_pm1(&g.disc_action().unwrap()) == PmOne::Plus);
        // pre-composing with a stable h does not move the canonical form
        let h = random_stable(&l, 3, &mut rng);
        let (_, y2) = eichler_reduce(&l, &h.apply(&x).unwrap()).unwrap();
        prop_assert_eq!(y, y2);
    }

    #[test]
    fn mapping_isometry_transports(seed in any::<u64>()) {
        let l = uu_e8m();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_div_one(&l, &mut rng);
        let h = random_stable(&l, 4, &mut rng);
        let y = h.apply(&x).unwrap();
        prop_assert!(orbit_equivalent(&l, &x, &y).unwrap());
        let g = mapping_isometry(&l, &x, &y).unwrap();
        prop_assert_eq!(g.apply(&x).unwrap(), y);
        prop_assert_eq!(g.orientation(), 1);
    }
}

#[test]
fn different_squares_are_not_equivalent() {
    let l = uu_e8m();
    let x = l.vector_i64(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let y = l.vector_i64(&[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    assert!(!orbit_equivalent(&l, &x, &y).unwrap());
    assert!(mapping_isometry(&l, &x, &y).is_err());
}

#[test]
fn reflection_in_delta_acts_as_minus_one() {
    for n in 1..=6 {
        let l = kummer(n).unwrap();
        let s = reflection(&l, &l.basis_vector(6)).unwrap();
        assert_eq!(classify_pm1(&s.disc_action().unwrap()), PmOne::Minus);
        assert_eq!(s.orientation(), 1);
        assert_eq!(s.det(), -1);
        let m = Isometry::minus_identity(&l);
        assert_eq!(m.orientation(), -1);
        assert!(s.compose(&s).unwrap().matrix().to_rows().iter().enumerate().all(|(i, r)| r
            .iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })));
    }
}
