//! Wall-divisor criteria on rank-2 hyperbolic sublattices.
//!
//! Every criterion reduces to the same question: does the saturated lattice
//! `T = Q<v, D> ∩ Λ` contain a vector `w` with prescribed square and pairing
//! with `v`? [`rank2_solve`] answers that exactly by splitting `w` along `v`
//! and its orthogonal line inside `T`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{div_floor, exact_sqrt, gcd_all, xgcd, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::standard::{self, mukai_middle, Surface};
use crate::lattice::{Lattice, LatticeVector, RationalVector, Sublattice};
use crate::matrix::IntMatrix;

/// A Mukai vector together with the surface type it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub surface: Surface,
    pub vector: LatticeVector,
}

impl MukaiVector {
    pub fn new(surface: Surface, vector: LatticeVector) -> Result<Self> {
        if !vector.lattice().same_as(&standard::mukai_lattice(surface)) {
            return Err(Error::LatticeMismatch);
        }
        Ok(MukaiVector { surface, vector })
    }

    pub fn is_primitive(&self) -> bool {
        self.vector.is_primitive()
    }

    pub fn square(&self) -> Int {
        self.vector.square()
    }
}

/// `(r, c1, c1^2/2 - c2 + r)` on a K3 surface, `(r, c1, c1^2/2 - c2)` on an
/// abelian surface.
pub fn mukai_from_chern(surface: Surface, r: &Int, c1: &LatticeVector, c2: &Int) -> Result<MukaiVector> {
    if !c1.lattice().same_as(&mukai_middle(surface)) {
        return Err(Error::LatticeMismatch);
    }
    let sq = c1.square();
    if sq.is_odd() {
        return Err(Error::OddSquare);
    }
    let mut s = sq / 2 - c2;
    if surface == Surface::K3 {
        s += r;
    }
    let mut coords = Vec::with_capacity(c1.coords().len() + 2);
    coords.push(r.clone());
    coords.extend(c1.coords().iter().cloned());
    coords.push(s);
    MukaiVector::new(surface, standard::mukai_lattice(surface).vector(coords)?)
}

/// Saturation of `span{v, D}` in the basis `(v0, t)`, where `v0` is the
/// primitive part of `v` and `t` completes it with `0 <= (t, v0) <= v0^2/2`.
/// Ties prefer a positive first nonzero ambient coordinate, then the
/// lexicographically larger vector.
pub fn rank2_closure(l: &Lattice, v: &LatticeVector, d: &LatticeVector) -> Result<Sublattice> {
    let sat = l.saturation(&[v.clone(), d.clone()])?;
    if !sat.det().is_negative() {
        return Err(Error::NotHyperbolic);
    }
    let p = v.primitive_part()?;
    let n = p.square();
    if !n.is_positive() {
        return Err(Error::Precondition("first vector must have positive square".into()));
    }
    let ab = sat.coordinates_of(&p).ok_or_else(|| Error::Precondition("vector outside its own saturation".into()))?;
    let (g, s, t) = xgcd(&ab[0], &ab[1]);
    debug_assert!(g.is_one(), "primitive vector of a saturated lattice");
    let t0 = sat.vector(&[-t, s]);
    let pair = t0.dot(&p)?;

    let mut candidates = Vec::new();
    for sign in [Int::one(), -Int::one()] {
        let base = t0.scale(&sign);
        let bp = &pair * &sign;
        let r = bp.mod_floor(&n);
        if &r * 2 <= n {
            let k = (&r - &bp) / &n;
            candidates.push(base.add(&p.scale(&k))?);
        }
    }
    candidates.sort_by(|a, b| tie_key(b).cmp(&tie_key(a)));
    let t = candidates.into_iter().next().expect("one representative always lands in the window");
    Ok(sat.rebased(vec![p.into_coords(), t.into_coords()]))
}

fn tie_key(x: &LatticeVector) -> (bool, Vec<Int>) {
    let positive = x.coords().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive());
    (positive, x.coords().to_vec())
}

/// Constraint window for [`rank2_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// `w^2 = c` and `lo <= (w, v) <= hi`.
    ExactSquare { c: Int, lo: Int, hi: Int },
    /// `0 <= w^2 < (w, v) <= hi`.
    RangeSquare { hi: Int },
}

impl Window {
    pub fn exact(c: i64, lo: i64, hi: i64) -> Self {
        Window::ExactSquare { c: Int::from(c), lo: Int::from(lo), hi: Int::from(hi) }
    }

    pub fn range(hi: i64) -> Self {
        Window::RangeSquare { hi: Int::from(hi) }
    }

    /// `(pairing, square)` targets in search order.
    fn targets(&self) -> Result<Vec<(Int, Int)>> {
        let mut out = Vec::new();
        match self {
            Window::ExactSquare { c, lo, hi } => {
                if lo > hi {
                    return Err(Error::UnboundedWindow { lo: lo.to_string(), hi: hi.to_string() });
                }
                let mut p = lo.clone();
                while &p <= hi {
                    out.push((p.clone(), c.clone()));
                    p += 1;
                }
            }
            Window::RangeSquare { hi } => {
                let mut p = Int::one();
                while &p <= hi {
                    let mut c = Int::zero();
                    while c < p {
                        out.push((p.clone(), c.clone()));
                        c += 1;
                    }
                    p += 1;
                }
            }
        }
        Ok(out)
    }
}

/// All `w` in the rank-2 hyperbolic lattice with Gram `gram` satisfying the
/// window relative to `v` (coordinates in the same basis). Ordered by pairing,
/// then square, then coordinates.
///
/// Writing `u` for the primitive generator of `v^⊥` in `T` and `N = v^2`,
/// `M = -u^2`, a solution with `(w, v) = p` and `w^2 = c` has the form
/// `w = (p v + μ u) / N` with `μ^2 = N (p^2 - N c) / M`.
pub fn rank2_solve(gram: &IntMatrix, v: &[Int], window: &Window) -> Result<Vec<Vec<Int>>> {
    if gram.nrows() != 2 || !gram.is_square() {
        return Err(Error::BadParam("rank2_solve needs a 2x2 Gram matrix".into()));
    }
    if v.len() != 2 {
        return Err(Error::WrongLength { got: v.len(), rank: 2 });
    }
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !gram.det().is_negative() {
        return Err(Error::NotHyperbolic);
    }
    let n = gram.bilinear(v, v);
    if !n.is_positive() {
        return Err(Error::Precondition("v must have positive square".into()));
    }
    let gv = gram.mul_vec(v);
    let g = gcd_all(&gv);
    let u = [&gv[1] / &g, -(&gv[0] / &g)];
    let m = -gram.bilinear(&u, &u);
    debug_assert!(m.is_positive());

    let mut out = Vec::new();
    for (p, c) in window.targets()? {
        let num = &n * (&p * &p - &n * &c);
        if num.is_negative() || !(&num % &m).is_zero() {
            continue;
        }
        let Some(mu) = exact_sqrt(&(&num / &m)) else { continue };
        let mut found: Vec<Vec<Int>> = Vec::new();
        let signs: &[i64] = if mu.is_zero() { &[1] } else { &[1, -1] };
        for &sg in signs {
            let mu_s = &mu * sg;
            let w: Option<Vec<Int>> = (0..2)
                .map(|i| {
                    let x = &p * &v[i] + &mu_s * &u[i];
                    (&x % &n).is_zero().then(|| x / &n)
                })
                .collect();
            if let Some(w) = w {
                found.push(w);
            }
        }
        found.sort();
        out.extend(found);
    }
    Ok(out)
}

/// [`rank2_solve`] on a sublattice, returning ambient vectors.
pub fn rank2_solve_in(t: &Sublattice, v_in_t: &[Int], window: &Window) -> Result<Vec<LatticeVector>> {
    if t.rank() != 2 {
        return Err(Error::BadParam("sublattice must have rank 2".into()));
    }
    Ok(rank2_solve(t.gram(), v_in_t, window)?.iter().map(|w| t.vector(w)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    #[serde(rename = "BM1")]
    Bm1,
    #[serde(rename = "BM2")]
    Bm2,
    #[serde(rename = "YOSH")]
    Yosh,
    #[serde(rename = "MZ0")]
    Mz0,
    #[serde(rename = "MZ1")]
    Mz1,
    #[serde(rename = "none")]
    None,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::Bm1 => "BM1",
            Clause::Bm2 => "BM2",
            Clause::Yosh => "YOSH",
            Clause::Mz0 => "MZ0",
            Clause::Mz1 => "MZ1",
            Clause::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    /// K3 Mukai lattice: `(-2)`-clause then the isotropic-range clause.
    Bm,
    /// Abelian Mukai lattice: the range clause only.
    Yoshioka,
    /// K3 Mukai lattice, `w^2 = 2`: roots pairing 0 or 1 with `w`.
    Mz,
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bm" => Ok(Criterion::Bm),
            "yoshioka" => Ok(Criterion::Yoshioka),
            "mz" => Ok(Criterion::Mz),
            _ => Err(Error::BadParam(format!("unknown criterion {s:?}"))),
        }
    }
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Bm => "bm",
            Criterion::Yoshioka => "yoshioka",
            Criterion::Mz => "mz",
        }
    }

    fn surface(self) -> Surface {
        match self {
            Criterion::Yoshioka => Surface::Abelian,
            _ => Surface::K3,
        }
    }

    fn clauses(self, n: &Int) -> Vec<(Clause, Window)> {
        let half = div_floor(n, &Int::from(2));
        match self {
            Criterion::Bm => vec![
                (Clause::Bm1, Window::ExactSquare { c: Int::from(-2), lo: Int::zero(), hi: half.clone() }),
                (Clause::Bm2, Window::RangeSquare { hi: half }),
            ],
            Criterion::Yoshioka => vec![(Clause::Yosh, Window::RangeSquare { hi: half })],
            Criterion::Mz => vec![(Clause::Mz0, Window::exact(-2, 0, 0)), (Clause::Mz1, Window::exact(-2, 1, 1))],
        }
    }
}

/// Outcome of a wall test. `witness` is the first witness of the first
/// clause that fires; `all_witnesses` is filled only on request.
#[derive(Clone, Debug)]
pub struct WallVerdict {
    pub is_wall: bool,
    pub clause: Clause,
    pub witness: Option<LatticeVector>,
    pub witness_in_t: Option<Vec<Int>>,
    pub t: Sublattice,
    pub v_in_t: Vec<Int>,
    pub all_witnesses: Vec<(Clause, LatticeVector)>,
}

impl WallVerdict {
    pub fn t_gram(&self) -> &IntMatrix {
        self.t.gram()
    }
}

/// Runs a criterion. With `collect_all` every clause is evaluated and all
/// witnesses are kept; the verdict itself is unchanged.
pub fn classify(criterion: Criterion, v: &LatticeVector, d: &LatticeVector, collect_all: bool) -> Result<WallVerdict> {
    let l = standard::mukai_lattice(criterion.surface());
    if !v.lattice().same_as(&l) || !d.lattice().same_as(&l) {
        return Err(Error::LatticeMismatch);
    }
    if !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let n = v.square();
    if !n.is_positive() {
        return Err(Error::Precondition("v must have positive square".into()));
    }
    if criterion == Criterion::Mz && n != Int::from(2) {
        return Err(Error::Precondition(format!("w^2 must be 2, got {n}")));
    }
    if !v.dot(d)?.is_zero() {
        return Err(Error::Precondition("D must be orthogonal to v".into()));
    }
    if !d.square().is_negative() {
        return Err(Error::Precondition("D must have negative square".into()));
    }
    let t = rank2_closure(&l, v, d)?;
    let v_in_t = t.coordinates_of(v).expect("v lies in its closure");

    let mut first: Option<(Clause, Vec<Int>)> = None;
    let mut all = Vec::new();
    for (clause, window) in criterion.clauses(&n) {
        let sols = rank2_solve(t.gram(), &v_in_t, &window)?;
        if first.is_none() {
            if let Some(w) = sols.first() {
                first = Some((clause, w.clone()));
            }
        }
        if collect_all {
            all.extend(sols.iter().map(|w| (clause, t.vector(w))));
        } else if first.is_some() {
            break;
        }
    }
    Ok(match first {
        Some((clause, w)) => WallVerdict {
            is_wall: true,
            clause,
            witness: Some(t.vector(&w)),
            witness_in_t: Some(w),
            t,
            v_in_t,
            all_witnesses: all,
        },
        None => WallVerdict {
            is_wall: false,
            clause: Clause::None,
            witness: None,
            witness_in_t: None,
            t,
            v_in_t,
            all_witnesses: all,
        },
    })
}

pub fn bm_wall(v: &LatticeVector, d: &LatticeVector) -> Result<WallVerdict> {
    classify(Criterion::Bm, v, d, false)
}

pub fn yoshioka_wall(v: &LatticeVector, d: &LatticeVector) -> Result<WallVerdict> {
    classify(Criterion::Yoshioka, v, d, false)
}

pub fn mz_wall(w: &LatticeVector, dp: &LatticeVector) -> Result<WallVerdict> {
    classify(Criterion::Mz, w, dp, false)
}

/// Primitive generator of `<w, s> ∩ w^⊥` with positive first nonzero
/// coordinate, for a root `s` pairing 0 or 1 with `w`.
pub fn mz_wall_from_s(w: &LatticeVector, s: &LatticeVector) -> Result<LatticeVector> {
    if s.square() != Int::from(-2) {
        return Err(Error::BadWitness(format!("s^2 = {}, expected -2", s.square())));
    }
    let ws = w.dot(s)?;
    if !(ws.is_zero() || ws.is_one()) {
        return Err(Error::BadWitness(format!("(s, w) = {ws}, expected 0 or 1")));
    }
    // x w + y s is orthogonal to w iff x w^2 + y (s, w) = 0
    let w2 = w.square();
    let x = -&ws;
    let y = w2;
    let d = w.scale(&x).add(&s.scale(&y))?;
    Ok(d.primitive_part()?.sign_normalized())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContractionType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl ContractionType {
    pub fn as_str(self) -> &'static str {
        match self {
            ContractionType::TypeI => "I",
            ContractionType::TypeII => "II",
        }
    }
}

/// An isotropic `w` with `D` proportional to `v - (2n+2) w` (type I,
/// `(v, w) = 1`) or `v - (n+1) w` (type II, `(v, w) = 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMatch {
    pub kind: ContractionType,
    pub w: LatticeVector,
    /// `D` is a positive multiple of the target (not just proportional).
    pub same_direction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    /// Preferred match: the first one with `same_direction`, else the first.
    pub primary: Option<ContractionMatch>,
    pub matches: Vec<ContractionMatch>,
    /// Both types occur up to sign.
    pub ambiguous: bool,
}

impl ContractionReport {
    pub fn kind(&self) -> Option<ContractionType> {
        self.primary.as_ref().map(|m| m.kind)
    }
}

/// Contraction type of a divisor `D ∈ v^⊥ ⊂ Λ8` for `v = (1; 0; -n-1)`.
pub fn kummer_contraction_type(n: u32, d: &LatticeVector) -> Result<ContractionReport> {
    let v = standard::kummer_mukai_vector(n);
    let l = v.lattice().clone();
    if !d.lattice().same_as(&l) {
        return Err(Error::LatticeMismatch);
    }
    if !d.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !d.square().is_negative() {
        return Err(Error::Precondition("D must have negative square".into()));
    }
    if !v.dot(d)?.is_zero() {
        return Err(Error::Precondition("D must be orthogonal to v".into()));
    }
    let t = rank2_closure(&l, &v, d)?;
    let v_in_t = t.coordinates_of(&v).expect("v lies in its closure");
    let m = Int::from(2 * n as i64 + 2);
    let mut matches = Vec::new();
    for w in rank2_solve_in(&t, &v_in_t, &Window::exact(0, 1, 2))? {
        if !w.is_primitive() {
            continue;
        }
        let (kind, k) = if v.dot(&w)?.is_one() {
            (ContractionType::TypeI, m.clone())
        } else {
            (ContractionType::TypeII, Int::from(n as i64 + 1))
        };
        let target = v.sub(&w.scale(&k))?;
        if let Some(positive) = proportional(d, &target) {
            matches.push(ContractionMatch { kind, w, same_direction: positive });
        }
    }
    let primary = matches.iter().find(|m| m.same_direction).or(matches.first()).cloned();
    let ambiguous = matches.iter().any(|m| m.kind == ContractionType::TypeI)
        && matches.iter().any(|m| m.kind == ContractionType::TypeII);
    Ok(ContractionReport { primary, matches, ambiguous })
}

/// `Some(sign > 0)` when `a = λ b` for a nonzero rational `λ`.
fn proportional(a: &LatticeVector, b: &LatticeVector) -> Option<bool> {
    let (x, y) = (a.coords(), b.coords());
    let i = y.iter().position(|c| !c.is_zero())?;
    if x[i].is_zero() {
        return None;
    }
    let ok = (0..x.len()).all(|j| &x[j] * &y[i] == &x[i] * &y[j]);
    ok.then(|| (x[i].is_positive()) == (y[i].is_positive()))
}

/// Whether some wall hyperplane `D^⊥` separates `h1` and `h2` inside the
/// positive cone.
pub fn chamber_separates(walls: &[LatticeVector], h1: &RationalVector, h2: &RationalVector) -> Result<bool> {
    let zero = Rat::zero();
    if h1.square() <= zero || h2.square() <= zero || h1.pair(h2)? <= zero {
        return Err(Error::Precondition("h1, h2 must lie in the same component of the positive cone".into()));
    }
    let mut separated = false;
    for d in walls {
        let a = h1.pair_lattice(d)?;
        let b = h2.pair_lattice(d)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::OnWall);
        }
        if (a * b).is_negative() {
            separated = true;
        }
    }
    Ok(separated)
}
