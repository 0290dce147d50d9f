//! Monodromy bookkeeping for generalized Kummer type lattices and the OG10
//! certificate pipeline.
//!
//! For `kummer(n)` the decision rule is: `g` is a monodromy operator iff it
//! preserves orientation, acts on the discriminant group as `χ = ±1`, and
//! `det(g) · χ(g) = +1`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{distinct_prime_factors, Int};
use crate::discriminant::{classify_pm1, PmOne};
use crate::error::{Error, Result};
use crate::io::{from_json_matrix, from_json_vec, parse_json, EmbeddingFile, LatticeFile};
use crate::isometry::{eichler_transvection, mapping_isometry, reflection, Isometry};
use crate::lattice::standard::{self, kummer, kummer_mukai_vector, kummer_to_mukai, Surface};
use crate::lattice::{short_vectors, Lattice, LatticeVector, PivotOrder};
use crate::matrix::IntMatrix;
use crate::walls::{self, Clause, ContractionType};

fn check_kummer(n: u32, g: &Isometry) -> Result<Lattice> {
    let k = kummer(n)?;
    if !g.lattice().same_as(&k) {
        return Err(Error::LatticeMismatch);
    }
    Ok(k)
}

/// Character of the discriminant action of `g` on `A = Z/(2n+2)`.
pub fn chi(n: u32, g: &Isometry) -> Result<PmOne> {
    check_kummer(n, g)?;
    Ok(classify_pm1(&g.disc_action()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonVerdict {
    pub in_monodromy: bool,
    pub orientation: i32,
    pub chi: PmOne,
    pub det: i32,
    pub reason: String,
}

pub fn mon_membership_kummer(n: u32, g: &Isometry) -> Result<MonVerdict> {
    let chi = chi(n, g)?;
    let orientation = g.orientation();
    let det = g.det();
    let (in_monodromy, reason) = if orientation != 1 {
        (false, "orientation: g reverses the orientation of a positive 3-plane".to_string())
    } else {
        match chi.as_sign() {
            None => (false, "chi: the discriminant action is not ±1".to_string()),
            Some(c) if det * c == -1 => (false, format!("det·chi: det = {det}, chi = {c}, product -1")),
            Some(c) => (true, format!("orientation +1, det = {det}, chi = {c}, product +1")),
        }
    };
    Ok(MonVerdict { in_monodromy, orientation, chi, det, reason })
}

/// `a` with `2^a` the order of the subgroup acting as `±1`, i.e. the number
/// of distinct primes dividing `n + 1`, minus one.
pub fn w_exponent(n: u64) -> u32 {
    distinct_prime_factors(n + 1).len() as u32 - 1
}

/// `#{u mod 2n+2 : u^2 ≡ 1 mod 2(2n+2)}` by a direct loop.
pub fn count_sqrt_units(n: u64) -> u64 {
    let m = 2 * n + 2;
    (0..m).filter(|&u| u.gcd(&m) == 1 && (u * u) % (2 * m) == 1).count() as u64
}

/// Arithmetic of `g(δ) = k δ + (2n+2) l` for an isometry `g` of `kummer(n)`.
#[derive(Clone, Debug)]
pub struct KummerProofTrace {
    pub n: u32,
    pub k: Int,
    /// `l` in the `U^3` coordinates of `kummer(n)`.
    pub l: Vec<Int>,
    pub l_square: Int,
    pub k_mod: Int,
    /// `(v + g(δ)) / (2n+2)` integral.
    pub t_integral: bool,
    /// `(v - g(δ)) / (2n+2)` integral.
    pub t_prime_integral: bool,
    /// `g(δ)` in the abelian Mukai lattice.
    pub image: LatticeVector,
    pub yoshioka_wall: bool,
    pub yoshioka_clause: Clause,
    pub contraction: Option<ContractionType>,
    pub contraction_ambiguous: bool,
    pub div_of_image: Int,
    pub verdict: MonVerdict,
    pub diagnostics: Vec<String>,
}

pub fn kummer_proof_trace(n: u32, g: &Isometry) -> Result<KummerProofTrace> {
    let lat = check_kummer(n, g)?;
    let m = Int::from(2 * n as i64 + 2);
    let delta = lat.basis_vector(6);
    let gd = g.apply(&delta)?;
    let k = gd.coords()[6].clone();
    let mut l = Vec::with_capacity(6);
    for c in &gd.coords()[..6] {
        let (q, r) = c.div_rem(&m);
        if !r.is_zero() {
            return Err(Error::NotIsometry("g(δ) - kδ is not divisible by 2n+2".into()));
        }
        l.push(q);
    }
    let mut l_full = l.clone();
    l_full.push(Int::zero());
    let l_square = lat.vector(l_full)?.square();
    if &k * &k - &m * &l_square != Int::one() {
        return Err(Error::NotIsometry("k^2 - (2n+2) l^2 != 1".into()));
    }

    let v = kummer_mukai_vector(n);
    let image = kummer_to_mukai(n, &gd)?;
    let divisible = |x: &LatticeVector| x.coords().iter().all(|c| c.is_multiple_of(&m));
    let t_integral = divisible(&v.add(&image)?);
    let t_prime_integral = divisible(&v.sub(&image)?);
    let yosh = walls::yoshioka_wall(&v, &image)?;
    let contraction = walls::kummer_contraction_type(n, &image)?;
    let div_of_image = lat.divisibility(&gd)?;
    let verdict = mon_membership_kummer(n, g)?;
    let k_mod = k.mod_floor(&m);

    let mut diagnostics = Vec::new();
    let k_pm1 = k_mod.is_one() || k_mod == &m - 1;
    if yosh.is_wall && !k_pm1 {
        diagnostics.push(format!("g(δ) is a wall divisor although k ≡ {k_mod} mod {m} is not ±1"));
    }
    if contraction.kind() == Some(ContractionType::TypeII) && div_of_image == m {
        diagnostics.push(format!("type II image with divisibility {m}, the same as type I"));
    }
    Ok(KummerProofTrace {
        n,
        k,
        l,
        l_square,
        k_mod,
        t_integral,
        t_prime_integral,
        image,
        yoshioka_wall: yosh.is_wall,
        yoshioka_clause: yosh.clause,
        contraction: contraction.kind(),
        contraction_ambiguous: contraction.ambiguous,
        div_of_image,
        verdict,
        diagnostics,
    })
}

/// Reflection in `u' = 3(e1 + f1) + δ` on `kummer(5)`: an isometry with
/// `g(δ) = 5δ + 12(e1 + f1)`.
pub fn kummer5_pell_example() -> Isometry {
    let k = kummer(5).expect("n = 5");
    reflection(&k, &k.vector_i64(&[3, 3, 0, 0, 0, 0, 1]).expect("rank 7")).expect("u'^2 = 6 divides 2 div(u')")
}

/// Seeded random words in a fixed generating set of isometries of
/// `kummer(n)`: `σ_δ`, reflections in `e_i - f_i`, `-Id`, and Eichler
/// transvections `E(e, a)` with `e` a hyperbolic basis vector.
pub struct KummerSampler {
    lattice: Lattice,
    generators: Vec<(String, Isometry)>,
    rng: ChaCha8Rng,
    max_len: usize,
}

impl KummerSampler {
    pub fn new(n: u32, seed: u64) -> Result<Self> {
        let lattice = kummer(n)?;
        let b = |i: usize| lattice.basis_vector(i);
        let names = ["e1", "f1", "e2", "f2", "e3", "f3", "δ"];
        let mut generators = vec![
            ("σ_δ".to_string(), reflection(&lattice, &b(6))?),
            ("-Id".to_string(), Isometry::minus_identity(&lattice)),
        ];
        for i in 0..3 {
            let r = b(2 * i).sub(&b(2 * i + 1))?;
            generators.push((format!("σ_(e{0}-f{0})", i + 1), reflection(&lattice, &r)?));
        }
        for ei in 0..6 {
            let partner = ei ^ 1;
            for ai in 0..7 {
                if ai == ei || ai == partner {
                    continue;
                }
                for sign in [1i64, -1] {
                    let a = b(ai).scale(&Int::from(sign));
                    let t = eichler_transvection(&lattice, &b(ei), &a)?;
                    let s = if sign > 0 { "" } else { "-" };
                    generators.push((format!("E({},{s}{})", names[ei], names[ai]), t));
                }
            }
        }
        Ok(KummerSampler { lattice, generators, rng: ChaCha8Rng::seed_from_u64(seed), max_len: 4 })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[(String, Isometry)] {
        &self.generators
    }

    /// A random word of length `1..=4` and its spelling.
    pub fn sample_word(&mut self) -> (Vec<String>, Isometry) {
        let len = self.rng.gen_range(1..=self.max_len);
        let mut g = Isometry::identity(&self.lattice);
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            // reflections and -Id are as likely as the whole transvection family
            let pool = if self.rng.gen_bool(0.5) { &self.generators[..5] } else { &self.generators[5..] };
            let (name, h) = pool.choose(&mut self.rng).expect("nonempty");
            g = g.compose(h).expect("same lattice");
            word.push(name.clone());
        }
        (word, g)
    }

    pub fn sample(&mut self) -> Isometry {
        self.sample_word().1
    }
}

pub const OG10_LATTICE: &str = include_str!("../fixtures/og10_lattice.json");
pub const OG10_EMBEDDING: &str = include_str!("../fixtures/og10_embedding.json");

/// Lattice file with an optional declared definite block `[start, end)`,
/// an orthogonal summand used to search for `F`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Og10LatticeFile {
    #[serde(flatten)]
    pub lattice: LatticeFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definite_block: Option<[usize; 2]>,
}

/// Ambient lattice `L` and a primitive isometric embedding `ι: w^⊥ -> L`
/// for `w = (1; 0; -1)` in the K3 Mukai lattice.
#[derive(Clone, Debug)]
pub struct Og10Fixture {
    pub lattice: Lattice,
    /// `rank(L) x 24`; applied to Mukai coordinates of vectors in `w^⊥`.
    pub embedding: IntMatrix,
    pub w: LatticeVector,
    pub definite_block: Option<(usize, usize)>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::FixtureInvalid(msg.into())
}

impl Og10Fixture {
    pub fn shipped() -> Result<Self> {
        Self::load(OG10_LATTICE, OG10_EMBEDDING)
    }

    /// Parses and validates: `L` even of rank 24, signature (3, 21), `|A_L| = 3`,
    /// declared `U + U`; `ι` isometric on `w^⊥` with primitive image.
    pub fn load(lattice_json: &str, embedding_json: &str) -> Result<Self> {
        let lf: Og10LatticeFile = parse_json(lattice_json)?;
        if !lf.lattice.split_uu {
            return Err(invalid("lattice must declare a U+U split"));
        }
        let lattice = lf.lattice.to_lattice().map_err(|e| invalid(format!("lattice: {e}")))?;
        if lattice.rank() != 24 || !lattice.is_even() || lattice.signature() != (3, 21) {
            return Err(invalid("lattice must be even of rank 24 and signature (3, 21)"));
        }
        if lattice.det().abs() != Int::from(3) {
            return Err(invalid(format!("discriminant group must have order 3, got {}", lattice.det().abs())));
        }
        let definite_block = match lf.definite_block {
            None => None,
            Some([a, b]) => {
                let g = lattice.gram();
                let closed = a < b
                    && b <= 24
                    && (a..b).all(|i| (0..24).all(|j| (a..b).contains(&j) || g[(i, j)].is_zero()));
                if !closed {
                    return Err(invalid("definite_block must be an orthogonal summand"));
                }
                Some((a, b))
            }
        };

        let ef: EmbeddingFile = parse_json(embedding_json)?;
        let l24 = standard::mukai_lattice(Surface::K3);
        if ef.source != "mukai_k3" {
            return Err(invalid("embedding source must be mukai_k3"));
        }
        if Some(ef.target.as_str()) != lattice.label() {
            return Err(invalid("embedding target does not match the lattice label"));
        }
        let w = match &ef.orthogonal_to {
            Some(c) => l24.vector(from_json_vec(c))?,
            None => standard::mukai_vector(Surface::K3, 1, &[], -1)?,
        };
        if w != standard::mukai_vector(Surface::K3, 1, &[], -1)? {
            return Err(invalid("embedding must be defined on w^⊥ for w = (1; 0; -1)"));
        }
        let m = from_json_matrix(&ef.matrix)?;
        if m.nrows() != 24 || m.ncols() != 24 {
            return Err(invalid("embedding matrix must be 24 x 24"));
        }
        let fx = Og10Fixture { lattice, embedding: m, w, definite_block };
        fx.validate_embedding()?;
        Ok(fx)
    }

    fn validate_embedding(&self) -> Result<()> {
        let l24 = standard::mukai_lattice(Surface::K3);
        let comp = l24.orthogonal_complement(std::slice::from_ref(&self.w))?;
        let images: Vec<LatticeVector> =
            comp.basis().iter().map(|b| self.lattice.vector(self.embedding.mul_vec(b.coords()))).collect::<Result<_>>()?;
        for (i, bi) in comp.basis().iter().enumerate() {
            for (j, bj) in comp.basis().iter().enumerate() {
                if images[i].dot(&images[j])? != bi.dot(bj)? {
                    return Err(invalid("embedding does not preserve the form on w^⊥"));
                }
            }
        }
        if !self.lattice.saturation_index(&images)?.is_one() {
            return Err(invalid("embedding is not primitive"));
        }
        Ok(())
    }

    /// `ι(x)` for `x ∈ w^⊥`.
    pub fn embed(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if !x.dot(&self.w)?.is_zero() {
            return Err(Error::Precondition("vector is not orthogonal to w".into()));
        }
        self.lattice.vector(self.embedding.mul_vec(x.coords()))
    }

    /// Primitive vectors of square `-10` and divisibility 1 in the declared
    /// definite block, in enumeration order.
    pub fn search_f(&self, avoid: &[LatticeVector], limit: usize) -> Result<Option<LatticeVector>> {
        let (a, b) = self.definite_block.ok_or_else(|| Error::NoSuchF("no definite block declared; supply F".into()))?;
        let g = self.lattice.gram();
        let rows: Vec<Vec<Int>> = (a..b).map(|i| (a..b).map(|j| g[(i, j)].clone()).collect()).collect();
        let block = Lattice::new(IntMatrix::from_rows(rows))?;
        for c in short_vectors(&block, &Int::from(-10), Some(limit))? {
            let mut coords = vec![Int::zero(); self.lattice.rank()];
            for (i, x) in c.coords().iter().enumerate() {
                coords[a + i] = x.clone();
            }
            let f = self.lattice.vector(coords)?;
            if avoid.contains(&f) || !f.is_primitive() || !self.lattice.divisibility(&f)?.is_one() {
                continue;
            }
            return Ok(Some(f));
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Og10Certificate {
    pub w: LatticeVector,
    pub h: LatticeVector,
    pub s: LatticeVector,
    pub d: LatticeVector,
    pub d_hat: LatticeVector,
    pub f: LatticeVector,
    pub f_searched: bool,
    pub g: Isometry,
    pub checks: Vec<Check>,
    pub premises: Vec<String>,
    /// `F = ±D̂`: the map exists for trivial reasons.
    pub trivial: bool,
    pub conclusion: String,
}

impl Og10Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub const OG10_PREMISES: &[&str] = &[
    "F is not a wall divisor on X: geometric input (an invariant Kähler class of a symplectic automorphism), not computed",
    "the monodromy group preserves the set of wall divisors: cited input, not computed",
];

/// Builds `w`, `s = (2; H; 1)`, the wall divisor `D = w - 2s` up to sign,
/// embeds it, and constructs an orientation-preserving `g` with
/// `g(D̂) = F`. Every numeric claim is re-verified from raw Gram arithmetic.
pub fn og10_certificate(fx: &Og10Fixture, f: Option<&LatticeVector>) -> Result<Og10Certificate> {
    let l24 = standard::mukai_lattice(Surface::K3);
    let l = &fx.lattice;
    let g24 = l24.gram();
    let gl = l.gram();
    let mut checks = Vec::new();
    let mut check = |name: &str, holds: bool, detail: String| {
        checks.push(Check { name: name.to_string(), holds, detail });
    };

    let w = fx.w.clone();
    let h = standard::mukai_vector(Surface::K3, 0, &[1, 1], 0)?;
    let s = standard::mukai_vector(Surface::K3, 2, &[1, 1], 1)?;
    let sq = |x: &LatticeVector| g24.bilinear(x.coords(), x.coords());
    check("H^2 = 2", sq(&h) == Int::from(2), format!("H^2 = {}", sq(&h)));
    check("s^2 = -2", sq(&s) == Int::from(-2), format!("s^2 = {}", sq(&s)));
    let sw = g24.bilinear(s.coords(), w.coords());
    check("(s, w) = 1", sw.is_one(), format!("(s, w) = {sw}"));

    let d = walls::mz_wall_from_s(&w, &s)?;
    check("D^2 = -10", sq(&d) == Int::from(-10), format!("D^2 = {}", sq(&d)));
    let comp = l24.orthogonal_complement(std::slice::from_ref(&w))?;
    let d_in = comp.coordinates_of(&d).ok_or_else(|| Error::Precondition("D not in w^⊥".into()))?;
    let div_perp = comp.as_lattice()?.vector(d_in)?.divisibility()?;
    check("div_{w^⊥}(D) = 2", div_perp == Int::from(2), format!("div = {div_perp}"));
    let mz = walls::mz_wall(&w, &d)?;
    check("D is an MZ1 wall", mz.is_wall && mz.clause == Clause::Mz1, format!("clause = {}", mz.clause.as_str()));

    let d_hat = fx.embed(&d)?;
    let sql = |x: &LatticeVector| gl.bilinear(x.coords(), x.coords());
    check("D̂^2 = -10", sql(&d_hat) == Int::from(-10), format!("D̂^2 = {}", sql(&d_hat)));
    let div_hat = l.divisibility(&d_hat)?;
    check("div_L(D̂) = 1", div_hat.is_one(), format!("div = {div_hat}"));
    if !div_hat.is_one() {
        return Err(Error::FixtureInvalid(format!("embedded D has divisibility {div_hat}")));
    }

    let (f, f_searched) = match f {
        Some(f) => {
            if !f.lattice().same_as(l) {
                return Err(Error::LatticeMismatch);
            }
            if sql(f) != Int::from(-10) {
                return Err(Error::NoSuchF(format!("square-mismatch: F^2 = {}, expected -10", sql(f))));
            }
            if !f.is_primitive() || !l.divisibility(f)?.is_one() {
                return Err(Error::NoSuchF("F must be primitive of divisibility 1".into()));
            }
            (f.clone(), false)
        }
        None => {
            let f = fx
                .search_f(&[d_hat.clone(), d_hat.neg()], 64)?
                .ok_or_else(|| Error::NoSuchF("no primitive vector of square -10 and divisibility 1 found".into()))?;
            (f, true)
        }
    };
    check("F^2 = -10", sql(&f) == Int::from(-10), format!("F^2 = {}", sql(&f)));
    let div_f = l.divisibility(&f)?;
    check("div_L(F) = 1", div_f.is_one(), format!("div = {div_f}"));

    let g = mapping_isometry(l, &d_hat, &f)?;
    let m = g.matrix();
    check("g^T G g = G", m.transpose().mul(gl).mul(m) == *gl, "exact matrix identity".into());
    let gd = m.mul_vec(d_hat.coords());
    check("g(D̂) = F", gd == f.coords(), "exact vector identity".into());
    let det = m.det();
    check("det g = 1", det.is_one(), format!("det = {det}"));
    let (o1, o2) = (g.orientation(), g.orientation_with(PivotOrder::Reverse));
    check(
        "g is orientation-preserving",
        o1 == 1 && o2 == 1,
        format!("signs {o1}, {o2} on two independent positive 3-planes"),
    );
    let acts_trivially = classify_pm1(&g.disc_action()?) == PmOne::Plus;
    check("g acts trivially on A_L", acts_trivially, "discriminant residues".into());

    let trivial = f == d_hat || f == d_hat.neg();
    let conclusion = "g lies in O⁺(L) and sends the wall divisor D̂ to F; granting the premises, g does not \
                      preserve wall divisors, so the monodromy group is a proper subgroup of O⁺(L)"
        .to_string();
    Ok(Og10Certificate {
        w,
        h,
        s,
        d,
        d_hat,
        f,
        f_searched,
        g,
        checks,
        premises: OG10_PREMISES.iter().map(|s| s.to_string()).collect(),
        trivial,
        conclusion,
    })
}
