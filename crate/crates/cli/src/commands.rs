//! Subcommand dispatch and report rendering.

use std::fmt::Write as _;
use std::io::Write as _;

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;
use serde_json::Value;
use wallkit::lattice::standard::kummer;
use wallkit::monodromy::{kummer_proof_trace, mon_membership_kummer, og10_certificate, KummerSampler};
use wallkit::report::{
    certificate_report, isometry_report, lattice_info, orbit_report, trace_report, wall_report, CertificateReport,
    LatticeInfo, OrbitReport, TraceReport, WallReport,
};
use wallkit::walls::classify;
use wallkit::monodromy::MonVerdict;
use wallkit::{mapping_isometry, orbit_equivalent, Criterion};

use crate::inputs::{require_same, Inputs};
use crate::{Cli, Command, CriterionArg, Format, LatticeCmd, MonCmd, OrbitArgs, OrbitCmd, Outcome, ScenarioCmd};

const NEGATIVE: u8 = 3;

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    inputs: &'a [crate::inputs::InputRecord],
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    result: &'a Value,
}

pub fn run(cli: &Cli) -> Result<u8> {
    let mut inputs = Inputs::default();
    let (name, outcome) = dispatch(cli, &mut inputs)?;
    let body = match cli.format {
        Format::Json => {
            let env = Envelope {
                tool: "wallkit",
                version: env!("CARGO_PKG_VERSION"),
                command: &name,
                inputs: &inputs.records,
                seed: cli.seed,
                result: &outcome.result,
            };
            let mut s = serde_json::to_string_pretty(&env)?;
            s.push('\n');
            s
        }
        Format::Text => outcome.text,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(outcome.code)
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<(String, Outcome)> {
    Ok(match &cli.command {
        Command::Lattice { cmd: LatticeCmd::Info { lattice } } => ("lattice info".into(), lattice_cmd(inputs, lattice)?),
        Command::Wall { criterion, v, d, all } => {
            let c = match criterion {
                CriterionArg::Bm => Criterion::Bm,
                CriterionArg::Yoshioka => Criterion::Yoshioka,
                CriterionArg::Mz => Criterion::Mz,
            };
            let v = inputs.vector("v", v, None)?;
            let d = inputs.vector("d", d, Some(v.lattice()))?;
            let verdict = classify(c, &v, &d, *all)?;
            let report = wall_report(c, &verdict);
            let code = if report.is_wall { 0 } else { NEGATIVE };
            (format!("wall {}", c.as_str()), Outcome { text: wall_text(&report), result: to_value(&report)?, code })
        }
        Command::Orbit { cmd } => match cmd {
            OrbitCmd::Check(a) => ("orbit check".into(), orbit_cmd(inputs, a, false)?),
            OrbitCmd::Map(a) => ("orbit map".into(), orbit_cmd(inputs, a, true)?),
        },
        Command::Mon { cmd: MonCmd::Check { n, isometry } } => {
            let l = kummer(*n)?;
            let g = inputs.isometry("isometry", isometry, &l)?;
            let verdict = mon_membership_kummer(*n, &g)?;
            let code = if verdict.in_monodromy { 0 } else { NEGATIVE };
            ("mon check".into(), Outcome { text: mon_text(*n, &verdict), result: to_value(&verdict)?, code })
        }
        Command::Scenario { cmd: ScenarioCmd::KummerProof { n, isometry, sample } } => {
            let traces = kummer_proof(inputs, *n, isometry.as_deref(), *sample, cli.seed.unwrap_or(0))?;
            let text = kummer_text(*n, &traces);
            ("scenario kummer-proof".into(), Outcome { result: to_value(&traces)?, text, code: 0 })
        }
        Command::Scenario { cmd: ScenarioCmd::Og10 { fixture, embedding, f } } => {
            if let (Some(fx), Some(emb)) = (fixture, embedding) {
                let loaded = inputs.og10_from(fx, emb)?;
                inputs.set_og10(loaded);
            }
            let fx = inputs.og10_default()?.clone();
            let f = match f {
                Some(p) => {
                    let v = inputs.vector("F", p, Some(&fx.lattice))?;
                    Some(v)
                }
                None => None,
            };
            let cert = og10_certificate(&fx, f.as_ref())?;
            let report = certificate_report(&cert)?;
            let code = if report.all_passed { 0 } else { 1 };
            ("scenario og10".into(), Outcome { text: og10_text(&report), result: to_value(&report)?, code })
        }
    })
}

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    Ok(serde_json::to_value(t)?)
}

fn lattice_cmd(inputs: &mut Inputs, source: &str) -> Result<Outcome> {
    let l = inputs.lattice("lattice", source)?;
    let info = lattice_info(&l);
    Ok(Outcome { text: lattice_text(&info), result: to_value(&info)?, code: 0 })
}

fn orbit_cmd(inputs: &mut Inputs, a: &OrbitArgs, map: bool) -> Result<Outcome> {
    let lattice = match &a.lattice {
        Some(source) => Some(inputs.lattice("lattice", source)?),
        None => None,
    };
    let x = inputs.vector("x", &a.x, lattice.as_ref())?;
    let l = x.lattice().clone();
    let y = inputs.vector("y", &a.y, Some(&l))?;
    require_same(y.lattice(), &l, "y")?;
    let equivalent = orbit_equivalent(&l, &x, &y)?;
    let mut report = orbit_report(&l, &x, &y, equivalent)?;
    if map && equivalent {
        let g = mapping_isometry(&l, &x, &y)?;
        ensure!(g.apply(&x)? == y, "constructed isometry does not send x to y");
        report.isometry = Some(isometry_report(&g)?);
    }
    let code = if equivalent { 0 } else { NEGATIVE };
    Ok(Outcome { text: orbit_text(&report), result: to_value(&report)?, code })
}

fn kummer_proof(
    inputs: &mut Inputs,
    n: u32,
    isometry: Option<&std::path::Path>,
    sample: Option<usize>,
    seed: u64,
) -> Result<Vec<TraceReport>> {
    let mut out = Vec::new();
    match (isometry, sample) {
        (Some(path), _) => {
            let l = kummer(n)?;
            let g = inputs.isometry("isometry", path, &l)?;
            out.push(trace_report(&kummer_proof_trace(n, &g)?, None));
        }
        (None, Some(k)) => {
            let mut sampler = KummerSampler::new(n, seed)?;
            for _ in 0..k {
                let (word, g) = sampler.sample_word();
                out.push(trace_report(&kummer_proof_trace(n, &g)?, Some(word)));
            }
        }
        (None, None) => bail!("kummer-proof needs --isometry or --sample"),
    }
    for t in &out {
        ensure!(t.pell, "Pell relation failed for k = {}", t.k.0);
    }
    Ok(out)
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn lattice_text(i: &LatticeInfo) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "lattice   {}", i.label.as_deref().unwrap_or("(unlabelled)"));
    let _ = writeln!(s, "rank      {}", i.rank);
    let _ = writeln!(s, "det       {}", i.det.0);
    let _ = writeln!(s, "signature ({}, {})", i.signature[0], i.signature[1]);
    let _ = writeln!(s, "even      {}", i.even);
    let disc: Vec<String> = i.disc.iter().map(|d| format!("Z/{}", d.0)).collect();
    let _ = writeln!(s, "disc      {}", if disc.is_empty() { "trivial".into() } else { disc.join(" + ") });
    if !i.q.is_empty() {
        let _ = writeln!(s, "q         {} (mod 2)", i.q.join(", "));
    }
    s
}

fn wall_text(r: &WallReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} criterion: {}", r.criterion.as_str(), if r.is_wall { "wall" } else { "not a wall" });
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "clause {} witness ({})", r.clause.as_str(), join(&w.iter().map(|x| &x.0).collect::<Vec<_>>()));
    }
    let rows: Vec<String> =
        r.t_gram.iter().map(|row| format!("[{}]", join(&row.iter().map(|x| &x.0).collect::<Vec<_>>()))).collect();
    let _ = writeln!(s, "T gram {}", rows.join(" "));
    for cw in &r.all_witnesses {
        let _ = writeln!(s, "  {} ({})", cw.clause.as_str(), join(&cw.witness.iter().map(|x| &x.0).collect::<Vec<_>>()));
    }
    s
}

fn orbit_text(r: &OrbitReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "equivalent   {}", r.equivalent);
    let _ = writeln!(s, "squares      {} / {}", r.square[0].0, r.square[1].0);
    let _ = writeln!(s, "divisibility {} / {}", r.divisibility[0].0, r.divisibility[1].0);
    if let Some(g) = &r.isometry {
        let _ = writeln!(s, "isometry     det {} orientation {} (verified g(x) = y)", g.det, g.orientation);
    }
    s
}

fn mon_text(n: u32, v: &MonVerdict) -> String {
    format!(
        "kummer({n}): {} (orientation {}, chi {}, det {}): {}\n",
        if v.in_monodromy { "in" } else { "out" },
        v.orientation,
        v.chi.as_str(),
        v.det,
        v.reason
    )
}

fn kummer_text(n: u32, traces: &[TraceReport]) -> String {
    let m = 2 * n + 2;
    let mut s = String::new();
    let _ = writeln!(s, "kummer({n}): {} traces, k^2 - {m} l^2 = 1 verified for all", traces.len());
    for t in traces {
        let kind = t.contraction.map(|c| c.as_str()).unwrap_or("-");
        let _ = writeln!(
            s,
            "k={} k mod {m}={} type {kind} t:{} t':{} div {} {}",
            t.k.0,
            t.k_mod.0,
            t.t_integral,
            t.t_prime_integral,
            t.div_of_image.0,
            if t.verdict.in_monodromy { "in" } else { "out" },
        );
        for d in &t.diagnostics {
            let _ = writeln!(s, "  note: {d}");
        }
    }
    s
}

fn og10_text(r: &CertificateReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(s, "[{}] {}: {}", if c.holds { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    for p in &r.premises {
        let _ = writeln!(s, "premise: {p}");
    }
    let _ = writeln!(s, "{}", r.conclusion);
    s
}
