//! Serializable reports for every computation exposed on the command line.
//! Each report deserializes back into the same type.

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, Int};
use crate::discriminant::{classify_pm1, discriminant_group, disc_image, PmOne};
use crate::error::Result;
use crate::io::{to_json_matrix, to_json_vec, JsonInt};
use crate::isometry::Isometry;
use crate::lattice::{Lattice, LatticeVector};
use crate::monodromy::{Check, KummerProofTrace, MonVerdict, Og10Certificate};
use crate::walls::{Clause, ContractionType, Criterion, WallVerdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeInfo {
    pub label: Option<String>,
    pub rank: usize,
    pub det: JsonInt,
    pub signature: [usize; 2],
    pub even: bool,
    pub unimodular: bool,
    pub disc: Vec<JsonInt>,
    pub q: Vec<String>,
}

pub fn lattice_info(l: &Lattice) -> LatticeInfo {
    let a = discriminant_group(l);
    let (p, q) = l.signature();
    LatticeInfo {
        label: l.label().map(str::to_string),
        rank: l.rank(),
        det: JsonInt(l.det().clone()),
        signature: [p, q],
        even: l.is_even(),
        unimodular: l.is_unimodular(),
        disc: to_json_vec(a.invariant_factors()),
        q: a.q_values().iter().map(fmt_rat).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClauseWitness {
    pub clause: Clause,
    pub witness: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallReport {
    pub criterion: Criterion,
    pub is_wall: bool,
    pub clause: Clause,
    pub witness: Option<Vec<JsonInt>>,
    #[serde(rename = "witness_in_T")]
    pub witness_in_t: Option<Vec<JsonInt>>,
    #[serde(rename = "T_basis")]
    pub t_basis: Vec<Vec<JsonInt>>,
    #[serde(rename = "T_gram")]
    pub t_gram: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub all_witnesses: Vec<ClauseWitness>,
}

pub fn wall_report(criterion: Criterion, v: &WallVerdict) -> WallReport {
    WallReport {
        criterion,
        is_wall: v.is_wall,
        clause: v.clause,
        witness: v.witness.as_ref().map(|w| to_json_vec(w.coords())),
        witness_in_t: v.witness_in_t.as_deref().map(to_json_vec),
        t_basis: v.t.basis_coords().iter().map(|b| to_json_vec(b)).collect(),
        t_gram: to_json_matrix(v.t_gram()),
        all_witnesses: v
            .all_witnesses
            .iter()
            .map(|(c, w)| ClauseWitness { clause: *c, witness: to_json_vec(w.coords()) })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub lattice: String,
    pub matrix: Vec<Vec<JsonInt>>,
    pub det: i32,
    pub orientation: i32,
    pub disc_action: Vec<Vec<JsonInt>>,
    pub disc_character: PmOne,
}

pub fn isometry_report(g: &Isometry) -> Result<IsometryReport> {
    let a = g.disc_action()?;
    Ok(IsometryReport {
        lattice: g.lattice().label().unwrap_or("").to_string(),
        matrix: to_json_matrix(g.matrix()),
        det: g.det(),
        orientation: g.orientation(),
        disc_action: a.residue_matrix(),
        disc_character: classify_pm1(&a),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub equivalent: bool,
    pub square: [JsonInt; 2],
    pub divisibility: [JsonInt; 2],
    pub disc_image: [Vec<JsonInt>; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry: Option<IsometryReport>,
}

pub fn orbit_report(l: &Lattice, x: &LatticeVector, y: &LatticeVector, equivalent: bool) -> Result<OrbitReport> {
    Ok(OrbitReport {
        equivalent,
        square: [JsonInt(x.square()), JsonInt(y.square())],
        divisibility: [JsonInt(l.divisibility(x)?), JsonInt(l.divisibility(y)?)],
        disc_image: [to_json_vec(&disc_image(l, x)?.0), to_json_vec(&disc_image(l, y)?.0)],
        isometry: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    pub k: JsonInt,
    pub l: Vec<JsonInt>,
    pub l_square: JsonInt,
    pub k_mod: JsonInt,
    pub pell: bool,
    pub t_integral: bool,
    pub t_prime_integral: bool,
    pub image: Vec<JsonInt>,
    pub yoshioka_wall: bool,
    pub yoshioka_clause: Clause,
    pub contraction: Option<ContractionType>,
    pub contraction_ambiguous: bool,
    pub div_of_image: JsonInt,
    pub verdict: MonVerdict,
    pub diagnostics: Vec<String>,
}

pub fn trace_report(t: &KummerProofTrace, word: Option<Vec<String>>) -> TraceReport {
    let m = Int::from(2 * t.n as i64 + 2);
    TraceReport {
        n: t.n,
        word,
        k: JsonInt(t.k.clone()),
        l: to_json_vec(&t.l),
        l_square: JsonInt(t.l_square.clone()),
        k_mod: JsonInt(t.k_mod.clone()),
        pell: &t.k * &t.k - m * &t.l_square == Int::from(1),
        t_integral: t.t_integral,
        t_prime_integral: t.t_prime_integral,
        image: to_json_vec(t.image.coords()),
        yoshioka_wall: t.yoshioka_wall,
        yoshioka_clause: t.yoshioka_clause,
        contraction: t.contraction,
        contraction_ambiguous: t.contraction_ambiguous,
        div_of_image: JsonInt(t.div_of_image.clone()),
        verdict: t.verdict.clone(),
        diagnostics: t.diagnostics.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub all_passed: bool,
    pub w: Vec<JsonInt>,
    #[serde(rename = "H")]
    pub h: Vec<JsonInt>,
    pub s: Vec<JsonInt>,
    #[serde(rename = "D")]
    pub d: Vec<JsonInt>,
    #[serde(rename = "D_hat")]
    pub d_hat: Vec<JsonInt>,
    #[serde(rename = "F")]
    pub f: Vec<JsonInt>,
    #[serde(rename = "F_searched")]
    pub f_searched: bool,
    pub trivial: bool,
    pub g: IsometryReport,
    pub checks: Vec<Check>,
    pub premises: Vec<String>,
    pub conclusion: String,
}

pub fn certificate_report(c: &Og10Certificate) -> Result<CertificateReport> {
    Ok(CertificateReport {
        all_passed: c.all_passed(),
        w: to_json_vec(c.w.coords()),
        h: to_json_vec(c.h.coords()),
        s: to_json_vec(c.s.coords()),
        d: to_json_vec(c.d.coords()),
        d_hat: to_json_vec(c.d_hat.coords()),
        f: to_json_vec(c.f.coords()),
        f_searched: c.f_searched,
        trivial: c.trivial,
        g: isometry_report(&c.g)?,
        checks: c.checks.clone(),
        premises: c.premises.clone(),
        conclusion: c.conclusion.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn lattice_info_examples() {
        let info = lattice_info(&standard::hyperbolic_plane());
        assert_eq!(info.signature, [1, 1]);
        assert_eq!(serde_json::to_value(&info.det).unwrap(), serde_json::json!(-1));
        assert!(info.disc.is_empty());
        let info = lattice_info(&standard::kummer(5).unwrap());
        assert_eq!(info.q, vec!["23/12".to_string()]);
        let text = serde_json::to_string(&info).unwrap();
        assert_eq!(serde_json::from_str::<LatticeInfo>(&text).unwrap(), info);
    }
}
