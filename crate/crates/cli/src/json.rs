//! JSON views of library results. Integers beyond 2^53 are emitted as
//! decimal strings so that no consumer loses precision.

use linkinv::alexander::{CyclotomicDivisor, UvData};
use linkinv::analysis::{HomologyProfile, LinkAnalysis};
use linkinv::families::{
    ChainChainReport, ChainCycleDual, ChainCycleVerdict, ExpectedTopology, TsChainVerdict,
};
use linkinv::obstruct::{
    link_dimension, BvcVerdict, ConeDimension, LichnerowiczVerdict, LinkClass, ObstructionReport,
};
use linkinv::orlik::AbelianGroup;
use linkinv::poly::BlockKind;
use linkinv::tables::{OracleStatus, RowReport};
use linkinv::{AtomicDecomposition, Evaluation, SuspensionForm, WeightSystem};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const SAFE: i128 = 1 << 53;

pub fn int(x: i128) -> Value {
    if (-SAFE..=SAFE).contains(&x) {
        json!(x as i64)
    } else {
        json!(x.to_string())
    }
}

pub fn uint(x: u64) -> Value {
    int(x as i128)
}

pub fn big(x: &BigInt) -> Value {
    match x.to_i128() {
        Some(v) => int(v),
        None => json!(x.to_string()),
    }
}

fn uints(xs: &[u64]) -> Value {
    Value::Array(xs.iter().map(|&x| uint(x)).collect())
}

pub fn weights(ws: &WeightSystem) -> Value {
    json!({ "weights": uints(ws.weights()), "degree": uint(ws.degree()) })
}

pub fn uv(u: &UvData) -> Value {
    json!({ "u": uints(&u.u), "v": uints(&u.v) })
}

/// `[{"n": n, "c": c}]`, with `c` an integer or a `"p/q"` string.
pub fn divisor(dv: &CyclotomicDivisor) -> Value {
    Value::Array(
        dv.terms()
            .map(|(n, c)| {
                let c = if c.is_integer() {
                    big(c.numer())
                } else {
                    json!(c.to_string())
                };
                json!({ "n": uint(n), "c": c })
            })
            .collect(),
    )
}

pub fn evaluation(e: &Evaluation) -> Value {
    match e {
        Evaluation::Value(v) => json!({ "status": "value", "value": big(v) }),
        Evaluation::Zero => json!({ "status": "zero", "value": null }),
        Evaluation::Pole => json!({ "status": "pole", "value": null }),
    }
}

pub fn group(g: &AbelianGroup) -> Value {
    Value::Array(g.factors().iter().map(big).collect())
}

pub fn homology(h: &HomologyProfile, proven: bool) -> Value {
    json!({
        "betti": big(&h.betti),
        "torsion": group(&h.torsion.group()),
        "torsion_proven": proven,
        "milnor": big(&h.milnor),
        "delta_at_1": evaluation(&h.delta_at_1),
        "delta_at_minus1": evaluation(&h.delta_at_minus1),
    })
}

fn block_kind(k: BlockKind) -> &'static str {
    match k {
        BlockKind::Fermat => "fermat",
        BlockKind::Chain => "chain",
        BlockKind::Cycle => "cycle",
    }
}

pub fn decomposition(d: Option<&AtomicDecomposition>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => Value::Array(
            d.blocks
                .iter()
                .map(|b| {
                    json!({
                        "kind": block_kind(b.kind),
                        "variables": b.variables,
                        "exponents": b.exponents,
                    })
                })
                .collect(),
        ),
    }
}

pub fn suspension(sf: Option<&SuspensionForm>) -> Value {
    match sf {
        None => Value::Null,
        Some(sf) => json!({
            "core": sf.core_indices,
            "squares": sf.quad_indices,
            "k": sf.k,
            "n": sf.n,
        }),
    }
}

pub fn cone(c: ConeDimension) -> Value {
    match c {
        ConeDimension::Known(k) => uint(k),
        ConeDimension::Unknown => Value::Null,
    }
}

pub fn lichnerowicz(v: &LichnerowiczVerdict) -> Value {
    json!({ "lhs": int(v.lhs), "rhs": int(v.rhs), "holds": v.holds })
}

pub fn bvc(v: Option<&BvcVerdict>) -> Value {
    match v {
        None => Value::Null,
        Some(v) => json!({ "lhs_doubled": int(v.lhs_doubled), "holds": v.holds }),
    }
}

pub fn classification(c: &LinkClass, nvars: usize) -> Value {
    let mut v = json!({
        "label": c.label(),
        "link_dimension": uint(link_dimension(nvars)),
    });
    match c {
        LinkClass::RationalHomologySphere { torsion } => v["torsion"] = group(torsion),
        LinkClass::Other { betti, torsion } => {
            v["betti"] = big(betti);
            v["torsion"] = group(torsion);
        }
        _ => {}
    }
    v
}

pub fn obstruction(o: &ObstructionReport, nvars: usize) -> Value {
    json!({
        "suspension": suspension(o.suspension.as_ref()),
        "cone_dimension": cone(o.cone_dim),
        "lichnerowicz": lichnerowicz(&o.lichnerowicz),
        "bvc": bvc(o.bvc.as_ref()),
        "classification": classification(&o.classification, nvars),
    })
}

pub fn analysis(a: &LinkAnalysis) -> Value {
    let mut v = weights(&a.weights);
    v["polynomial"] = json!(a.polynomial.to_string());
    v["variables"] = json!(a.polynomial.nvars());
    v["well_formed"] = json!(a.well_formed);
    v["blocks"] = decomposition(a.decomposition.as_ref());
    v["uv"] = uv(&a.uv);
    v["divisor"] = divisor(&a.divisor);
    v["homology"] = homology(&a.homology, a.torsion_is_proven());
    v["obstruction"] = obstruction(&a.obstruction, a.polynomial.nvars());
    v
}

fn expected(e: &ExpectedTopology) -> Value {
    match e {
        ExpectedTopology::HomotopySphere { delta_at_minus1 } => {
            json!({ "kind": "homotopy sphere", "delta_at_minus1": uint(*delta_at_minus1) })
        }
        ExpectedTopology::RationalHomologySphere { torsion } => {
            json!({ "kind": "rational homology sphere", "torsion": group(torsion) })
        }
        ExpectedTopology::S4xS5Profile => json!({ "kind": "S4xS5 homology profile" }),
        ExpectedTopology::Unspecified => json!({ "kind": "unspecified" }),
    }
}

pub fn chain_cycle_dual(d: &ChainCycleDual) -> Value {
    json!({
        "family": "chain-cycle",
        "exponents": d.params.exponents(),
        "polynomial": d.polynomial.to_string(),
        "base": weights(&d.base),
        "m2": uint(d.m2),
        "m3": uint(d.m3),
        "transpose": d.transpose.to_string(),
        "dual": weights(&d.dual),
        "dual_index": int(d.dual_index()),
        "dual_homology": homology(&d.homology, true),
    })
}

pub fn chain_cycle_verdict(v: &ChainCycleVerdict) -> Value {
    let mut out = chain_cycle_dual(&v.dual);
    out["perturbation"] = analysis(&v.analysis);
    out["n"] = json!(v.n);
    out["expected"] = expected(&v.expected);
    out
}

pub fn ts_chain_verdict(v: &TsChainVerdict) -> Value {
    let d = &v.dual;
    json!({
        "family": d.params.name(),
        "exponents": d.params.exponents(),
        "polynomial": d.polynomial.to_string(),
        "base": weights(&d.base),
        "base_lichnerowicz": lichnerowicz(&v.base_lichnerowicz),
        "transpose": d.transpose.to_string(),
        "dual": weights(&d.dual),
        "dual_homology": homology(&d.homology, true),
        "perturbation": v.perturbed.to_string(),
        "perturbation_weights": weights(&v.perturbed_weights),
        "suspension": suspension(Some(&v.suspension)),
        "cone_dimension": cone(v.cone_dim),
        "bvc": bvc(Some(&v.bvc)),
        "obstructed": v.obstructed(),
    })
}

pub fn chain_chain(r: &ChainChainReport) -> Value {
    json!({
        "family": "chain-chain",
        "polynomial": r.polynomial.to_string(),
        "base": weights(&r.base),
        "dual": weights(&r.dual),
        "perturbation": r.perturbation.as_ref().map(|p| p.to_string()),
        "hypothesis": r.hypothesis,
        "bvc": bvc(Some(&r.bvc)),
    })
}

pub fn oracle_status(s: &OracleStatus) -> Value {
    match s {
        OracleStatus::Agrees { degree } => json!({ "status": "agrees", "degree": degree }),
        OracleStatus::Disagrees(e) => json!({ "status": "disagrees", "detail": e }),
        OracleStatus::Skipped { degree, cap } => {
            json!({ "status": "skipped", "degree": uint(*degree), "cap": uint(*cap) })
        }
    }
}

pub fn row(r: &RowReport) -> Value {
    json!({
        "table": r.row.table.number(),
        "row": r.row.index,
        "passed": r.passed(),
        "polynomial": r.row.polynomial,
        "printed": {
            "weights": uints(&r.row.weights),
            "degree": uint(r.row.degree),
            "m3": uint(r.row.m3),
            "type": r.row.label,
        },
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "delta_at_minus1": r.delta_at_minus1().map(evaluation),
        "oracle": oracle_status(&r.oracle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int(1 << 53), json!(9007199254740992i64));
        assert_eq!(int((1 << 53) + 1), json!("9007199254740993"));
        assert_eq!(int(-(1 << 60)), json!("-1152921504606846976"));
        assert_eq!(
            big(&BigInt::from(10u8).pow(30)),
            json!("1000000000000000000000000000000")
        );
        assert_eq!(uint(u64::MAX), json!("18446744073709551615"));
    }
}
