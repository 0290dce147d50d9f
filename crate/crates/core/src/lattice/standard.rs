//! Named lattices and the Mukai coordinate convention.
//!
//! Mukai coordinates: the abelian lattice is `(r; a1,b1,a2,b2,a3,b3; s)`,
//! the K3 lattice inserts sixteen `E8(-1)^2` coordinates before `s`. The
//! pairing is `l.l' - r s' - r' s` with `U`-blocks `[[0,1],[1,0]]`.

use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::io::{parse_json, LatticeFile};
use crate::lattice::{direct_sum, Lattice, LatticeVector};
use crate::matrix::IntMatrix;

pub const E8_FIXTURE: &str = include_str!("../../fixtures/e8.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    K3,
    Abelian,
}

impl Surface {
    /// Rank of the middle (`c1`) part of the Mukai lattice.
    pub fn middle_rank(self) -> usize {
        match self {
            Surface::K3 => 22,
            Surface::Abelian => 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardLattice {
    U,
    E8,
    A2,
    Rank1(i64),
    MukaiK3,
    MukaiAbelian,
    Kummer(u32),
    /// `U + U` with declared split.
    Uu,
    /// `U + U + E8(-1)` with declared split.
    UuE8m,
}

impl FromStr for StandardLattice {
    type Err = Error;

    /// Accepts the labels produced by [`standard_lattice`]: `U`, `E8`, `A2`,
    /// `rank1(m)`, `mukai_k3`, `mukai_abelian`, `kummer(n)`, `U2`, `U2+E8(-1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |prefix: &str| -> Option<&str> { s.strip_prefix(prefix)?.strip_suffix(')') };
        let bad = || Error::BadParam(format!("unknown lattice {s:?}"));
        match s {
            "U" => Ok(StandardLattice::U),
            "E8" => Ok(StandardLattice::E8),
            "A2" => Ok(StandardLattice::A2),
            "mukai_k3" => Ok(StandardLattice::MukaiK3),
            "mukai_abelian" => Ok(StandardLattice::MukaiAbelian),
            "U2" => Ok(StandardLattice::Uu),
            "U2+E8(-1)" => Ok(StandardLattice::UuE8m),
            _ => {
                if let Some(m) = arg("rank1(") {
                    m.trim().parse().map(StandardLattice::Rank1).map_err(|_| bad())
                } else if let Some(n) = arg("kummer(") {
                    n.trim().parse().map(StandardLattice::Kummer).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

pub fn standard_lattice(which: StandardLattice) -> Result<Lattice> {
    match which {
        StandardLattice::U => Ok(hyperbolic_plane()),
        StandardLattice::E8 => Ok(e8()),
        StandardLattice::A2 => Ok(a2()),
        StandardLattice::Rank1(m) => rank1(m),
        StandardLattice::MukaiK3 => Ok(mukai_lattice(Surface::K3)),
        StandardLattice::MukaiAbelian => Ok(mukai_lattice(Surface::Abelian)),
        StandardLattice::Kummer(n) => kummer(n),
        StandardLattice::Uu => Ok(uu()),
        StandardLattice::UuE8m => Ok(uu_e8m()),
    }
}

pub fn hyperbolic_plane() -> Lattice {
    Lattice::with_label(u_gram(), "U").expect("valid")
}

fn u_gram() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
}

pub fn a2() -> Lattice {
    Lattice::with_label(IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]), "A2").expect("valid")
}

/// The even unimodular positive-definite lattice of rank 8, loaded from the
/// shipped fixture and validated (even, `|det| = 1`, positive definite).
pub fn e8() -> Lattice {
    static E8: OnceLock<Lattice> = OnceLock::new();
    E8.get_or_init(|| load_e8(E8_FIXTURE).expect("shipped E8 fixture is valid")).clone()
}

pub fn load_e8(text: &str) -> Result<Lattice> {
    let f: LatticeFile = parse_json(text)?;
    let l = f.to_lattice()?;
    if l.rank() != 8 || !l.is_even() || !l.is_unimodular() || l.signature() != (8, 0) {
        return Err(Error::FixtureInvalid("E8 Gram must be even, unimodular and positive definite of rank 8".into()));
    }
    Ok(l)
}

/// `<m>` for nonzero even `m`.
pub fn rank1(m: i64) -> Result<Lattice> {
    if m == 0 || m % 2 != 0 {
        return Err(Error::BadParam(format!("rank1 needs a nonzero even entry, got {m}")));
    }
    Lattice::with_label(IntMatrix::from_i64(&[&[m]]), format!("rank1({m})"))
}

/// Gram matrix scaled by `k`, e.g. `E8(-1)`.
pub fn scaled(l: &Lattice, k: i64) -> Lattice {
    let label = format!("{}({k})", l.label().unwrap_or("L"));
    Lattice::with_label(l.gram().scale(&Int::from(k)), label).expect("scaling a nondegenerate form")
}

/// `U^3` for abelian surfaces, `U^3 + E8(-1)^2` for K3 surfaces: the lattice
/// where `c1` lives.
pub fn mukai_middle(surface: Surface) -> Lattice {
    let u = u_gram();
    let mut blocks = vec![u.clone(), u.clone(), u];
    if surface == Surface::K3 {
        let e = e8().gram().scale(&Int::from(-1));
        blocks.push(e.clone());
        blocks.push(e);
    }
    let refs: Vec<&IntMatrix> = blocks.iter().collect();
    let label = match surface {
        Surface::K3 => "ns_k3",
        Surface::Abelian => "ns_abelian",
    };
    Lattice::with_label(IntMatrix::direct_sum(&refs), label).expect("valid")
}

/// The Mukai lattice `U^4` (abelian) or `U^4 + E8(-1)^2` (K3) in the fixed
/// coordinate convention.
pub fn mukai_lattice(surface: Surface) -> Lattice {
    static K3: OnceLock<Lattice> = OnceLock::new();
    static AB: OnceLock<Lattice> = OnceLock::new();
    let cell = match surface {
        Surface::K3 => &K3,
        Surface::Abelian => &AB,
    };
    cell.get_or_init(|| {
        let mid = mukai_middle(surface);
        let m = mid.rank();
        let n = m + 2;
        let mut g = IntMatrix::zeros(n, n);
        g[(0, n - 1)] = Int::from(-1);
        g[(n - 1, 0)] = Int::from(-1);
        for i in 0..m {
            for j in 0..m {
                g[(i + 1, j + 1)] = mid.gram()[(i, j)].clone();
            }
        }
        let label = match surface {
            Surface::K3 => "mukai_k3",
            Surface::Abelian => "mukai_abelian",
        };
        Lattice::with_label(g, label).expect("valid")
    })
    .clone()
}

/// `(r; l; s)` where `l` lists the leading middle coordinates (the rest are 0).
pub fn mukai_vector(surface: Surface, r: i64, ell: &[i64], s: i64) -> Result<LatticeVector> {
    let m = surface.middle_rank();
    if ell.len() > m {
        return Err(Error::WrongLength { got: ell.len(), rank: m });
    }
    let mut coords = vec![Int::zero(); m + 2];
    coords[0] = Int::from(r);
    for (i, &x) in ell.iter().enumerate() {
        coords[i + 1] = Int::from(x);
    }
    coords[m + 1] = Int::from(s);
    mukai_lattice(surface).vector(coords)
}

/// `U^3 + <-2n-2>`, realizing `v^⊥ ⊂ Λ8` for `v = (1;0;-n-1)`. The last
/// coordinate is the class `δ = (1;0;n+1)`; the first four coordinates are
/// declared as a `U + U` split.
pub fn kummer(n: u32) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::BadParam("kummer(n) needs n >= 1".into()));
    }
    let u = u_gram();
    let d = IntMatrix::from_rows(vec![vec![-Int::from(2 * n as i64 + 2)]]);
    let g = IntMatrix::direct_sum(&[&u, &u, &u, &d]);
    Lattice::with_label(g, format!("kummer({n})"))?.declare_uu_split()
}

/// `U^2 + E8(-1)` with declared split.
pub fn uu_e8m() -> Lattice {
    let l = direct_sum(&[&hyperbolic_plane(), &hyperbolic_plane(), &scaled(&e8(), -1)]).expect("valid");
    l.relabel("U2+E8(-1)").declare_uu_split().expect("split")
}

/// `U^2` with declared split.
pub fn uu() -> Lattice {
    let l = direct_sum(&[&hyperbolic_plane(), &hyperbolic_plane()]).expect("valid");
    l.relabel("U2").declare_uu_split().expect("split")
}

/// Image of a `kummer(n)` vector in the abelian Mukai lattice:
/// `(x1..x6, d) -> (d; x1..x6; d(n+1))`.
pub fn kummer_to_mukai(n: u32, x: &LatticeVector) -> Result<LatticeVector> {
    let c = x.coords();
    if c.len() != 7 {
        return Err(Error::WrongLength { got: c.len(), rank: 7 });
    }
    let d = &c[6];
    let mut out = Vec::with_capacity(8);
    out.push(d.clone());
    out.extend(c[..6].iter().cloned());
    out.push(d * Int::from(n as i64 + 1));
    mukai_lattice(Surface::Abelian).vector(out)
}

/// Abelian Mukai vector `v = (1; 0; -n-1)`.
pub fn kummer_mukai_vector(n: u32) -> LatticeVector {
    mukai_vector(Surface::Abelian, 1, &[], -(n as i64) - 1).expect("rank 8")
}
