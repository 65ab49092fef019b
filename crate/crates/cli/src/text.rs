//! Aligned plain-text rendering.

use std::fmt::Display;

use linkinv::analysis::{HomologyProfile, LinkAnalysis};
use linkinv::families::{
    ChainChainReport, ChainCycleDual, ChainCycleVerdict, ExpectedTopology, TsChainVerdict,
};
use linkinv::obstruct::{BvcVerdict, ObstructionReport};
use linkinv::tables::{OracleStatus, RowReport};
use linkinv::WeightSystem;
use num_traits::Signed;

/// Collects `key: value` lines and pads the keys to one width.
#[derive(Default)]
pub struct Block {
    lines: Vec<(String, String)>,
}

impl Block {
    pub fn add(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let width = self
            .lines
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        self.lines
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

pub fn weights(ws: &WeightSystem) -> String {
    let w: Vec<String> = ws.weights().iter().map(|x| x.to_string()).collect();
    format!("({}) / {}", w.join(", "), ws.degree())
}

fn bvc(v: Option<&BvcVerdict>) -> String {
    match v {
        Some(v) => format!(
            "{} (doubled lhs {})",
            if v.holds { "holds" } else { "fails" },
            v.lhs_doubled
        ),
        None => "not applicable".into(),
    }
}

pub fn homology(b: &mut Block, h: &HomologyProfile, proven: bool) {
    let torsion = h.torsion.group();
    b.add("betti", &h.betti)
        .add(
            "torsion",
            if proven {
                torsion.to_string()
            } else {
                format!("{torsion} (conjectural: not atomic)")
            },
        )
        .add("milnor number", &h.milnor)
        .add("Δ(1)", &h.delta_at_1)
        .add("Δ(-1)", &h.delta_at_minus1);
}

pub fn obstruction(b: &mut Block, o: &ObstructionReport) {
    let sf = match &o.suspension {
        Some(sf) => format!("core {:?}, squares {:?}", sf.core_indices, sf.quad_indices),
        None => "none".into(),
    };
    let l = &o.lichnerowicz;
    b.add("suspension form", sf)
        .add("cone dimension", o.cone_dim)
        .add(
            "lichnerowicz",
            format!(
                "{} ({} vs {})",
                if l.holds { "holds" } else { "fails" },
                l.lhs,
                l.rhs
            ),
        )
        .add("no extremal metric", bvc(o.bvc.as_ref()))
        .add("classification", &o.classification);
}

pub fn analysis(a: &LinkAnalysis) -> String {
    let mut b = Block::default();
    let uv: Vec<String> =
        a.uv.u
            .iter()
            .zip(&a.uv.v)
            .map(|(u, v)| format!("({u}, {v})"))
            .collect();
    let mut divisor = String::new();
    for (n, c) in a.divisor.terms() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if divisor.is_empty() {
            if c.is_negative() {
                divisor.push('-');
            }
        } else {
            divisor += &format!(" {sign} ");
        }
        divisor += &format!("{}·Λ{n}", c.abs());
    }
    b.add("polynomial", &a.polynomial)
        .add("weights", weights(&a.weights))
        .add("well-formed", a.well_formed)
        .add("(u, v)", uv.join(" "))
        .add("divisor", divisor);
    homology(&mut b, &a.homology, a.torsion_is_proven());
    obstruction(&mut b, &a.obstruction);
    b.render()
}

fn dual(b: &mut Block, d: &ChainCycleDual) {
    b.add("family", format!("chain-cycle {}", d.params))
        .add("polynomial", &d.polynomial)
        .add("base weights", weights(&d.base))
        .add("m2, m3", format!("{}, {}", d.m2, d.m3))
        .add("transpose", &d.transpose)
        .add("dual weights", weights(&d.dual))
        .add("dual index", d.dual_index());
    homology(b, &d.homology, true);
}

pub fn chain_cycle_dual(d: &ChainCycleDual) -> String {
    let mut b = Block::default();
    dual(&mut b, d);
    b.render()
}

pub fn chain_cycle_verdict(v: &ChainCycleVerdict) -> String {
    let mut b = Block::default();
    dual(&mut b, &v.dual);
    b.add("perturbation", &v.g2)
        .add("perturbation weights", weights(&v.analysis.weights));
    homology(&mut b, &v.analysis.homology, true);
    obstruction(&mut b, &v.analysis.obstruction);
    let expected = match &v.expected {
        ExpectedTopology::HomotopySphere { delta_at_minus1 } => {
            format!("homotopy sphere with Δ(-1) = {delta_at_minus1}")
        }
        ExpectedTopology::RationalHomologySphere { torsion } => {
            format!("rational homology sphere with torsion {torsion}")
        }
        ExpectedTopology::S4xS5Profile => "S4xS5 homology profile".into(),
        ExpectedTopology::Unspecified => "no claim".into(),
    };
    b.add("expected", expected);
    b.render()
}

pub fn ts_chain_verdict(v: &TsChainVerdict) -> String {
    let d = &v.dual;
    let l = &v.base_lichnerowicz;
    let mut b = Block::default();
    b.add("family", d.params)
        .add("polynomial", &d.polynomial)
        .add("base weights", weights(&d.base))
        .add(
            "base lichnerowicz",
            format!(
                "{} ({} vs {})",
                if l.holds { "holds" } else { "fails" },
                l.lhs,
                l.rhs
            ),
        )
        .add("transpose", &d.transpose)
        .add("dual weights", weights(&d.dual));
    homology(&mut b, &d.homology, true);
    b.add("perturbation", &v.perturbed)
        .add("perturbation weights", weights(&v.perturbed_weights))
        .add("cone dimension", v.cone_dim)
        .add("no extremal metric", bvc(Some(&v.bvc)));
    b.render()
}

pub fn chain_chain(r: &ChainChainReport) -> String {
    let mut b = Block::default();
    b.add("polynomial", &r.polynomial)
        .add("base weights", weights(&r.base))
        .add("dual weights", weights(&r.dual))
        .add(
            "perturbation",
            r.perturbation
                .as_ref()
                .map_or("none (exponent not integral)".to_string(), |p| {
                    p.to_string()
                }),
        )
        .add("w0 + w3 >= 6 w2", r.hypothesis)
        .add("no extremal metric", bvc(Some(&r.bvc)));
    b.render()
}

pub fn row(r: &RowReport) -> String {
    let mut out = format!(
        "{} row {:>2}  {}",
        r.row.table,
        r.row.index,
        if r.passed() { "PASS" } else { "FAIL" }
    );
    if let Some(dm1) = r.delta_at_minus1() {
        out += &format!("  Δ(-1) = {dm1}, printed m3 = {}", r.row.m3);
    }
    match &r.oracle {
        OracleStatus::Agrees { degree } => out += &format!("  oracle agrees (degree {degree})"),
        OracleStatus::Disagrees(e) => out += &format!("  oracle disagrees: {e}"),
        OracleStatus::Skipped { .. } => out += "  oracle skipped",
    }
    out.push('\n');
    for c in r.failures() {
        out += &format!("    {}: {}\n", c.name, c.detail);
    }
    out
}
