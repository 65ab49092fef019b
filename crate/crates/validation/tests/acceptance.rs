//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, then exits nonzero if any
//! criterion failed.

use std::time::{Duration, Instant};

use linkinv::alexander::{alexander_divisor, betti_from_divisor, betti_subset_formula, uv};
use linkinv::analysis::{analyze, analyze_with_weights, LinkAnalysis};
use linkinv::families::{
    chain_cycle_dual, chain_cycle_formula_check, chain_cycle_verdict, chain_cycle_weight_formula,
    ts_chain_dual, ts_chain_verdict, ChainCycleParams, TsChainParams,
};
use linkinv::obstruct::{ConeDimension, LinkClass, SphereType};
use linkinv::orlik::AbelianGroup;
use linkinv::tables::{self, oracle_check, OracleStatus, Table, DEFAULT_ORACLE_CAP};
use linkinv::transpose::{
    bh_transpose, chain_chain_dual_closed_form, chain_chain_polynomial, dual_weights,
};
use linkinv::weights::solve_weights;
use linkinv::{Error, Evaluation, InvertiblePolynomial, WeightSystem};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

const ROUND_TRIP_BUDGET: Duration = Duration::from_millis(1);
const PIPELINE_BUDGET: Duration = Duration::from_millis(10);
const SPHERE_TABLE_BUDGET: Duration = Duration::from_secs(5);
const PRODUCT_TABLE_BUDGET: Duration = Duration::from_secs(30);
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const FAMILY_ORACLE_CAP: u64 = 20_000;
const SWEEP_MAX_EXPONENT: u32 = 50;
const SWEEP_MAX_K: u32 = 50;
const SWEEP_MAX_PRIME: u32 = 200;
const GRID_MAX_EXPONENT: u32 = 30;
/// Sub-grid on which the cheap chain-cycle check is itself compared with the solver.
const SOLVER_SUBGRID: u32 = 8;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

fn outcome(passed: bool, summary: impl Into<String>, details: Vec<String>) -> Outcome {
    Outcome {
        passed,
        summary: summary.into(),
        details,
    }
}

fn ws(w: &[u64], d: u64) -> WeightSystem {
    WeightSystem::new(w.to_vec(), d).unwrap()
}

fn poly(s: &str) -> InvertiblePolynomial {
    InvertiblePolynomial::parse(s).unwrap()
}

fn round_trip() -> Outcome {
    let p = poly("z0^7*z1 + z1^4*z2 + z2^2*z0 + z3^3");
    let t = Instant::now();
    let base = solve_weights(&p);
    let dual = dual_weights(&p);
    let elapsed = t.elapsed();
    let exact = base.as_ref().ok() == Some(&ws(&[7, 8, 25, 19], 57))
        && dual.as_ref().ok() == Some(&ws(&[5, 13, 22, 19], 57));
    let mut details = Vec::new();
    if !exact {
        details.push(format!("weights {base:?}, dual {dual:?}"));
    }
    if elapsed >= ROUND_TRIP_BUDGET {
        details.push(format!("took {elapsed:?}, budget {ROUND_TRIP_BUDGET:?}"));
    }
    outcome(
        exact && elapsed < ROUND_TRIP_BUDGET,
        format!("(7,8,25,19)/57 <-> (5,13,22,19)/57 in {elapsed:?}"),
        details,
    )
}

fn chain_cycle_pipeline() -> Outcome {
    let t = Instant::now();
    let params = ChainCycleParams::new(3, 2, 10, 5, 14).unwrap();
    let v = chain_cycle_verdict(&params, 1);
    let elapsed = t.elapsed();
    let v = match v {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("pipeline error: {e}"), vec![]),
    };
    let row1 = &tables::rows(Table::HomotopySpheres)[0];
    let h = &v.dual.homology;
    let bvc = v.bvc();
    let checks = [
        (
            "dual weights",
            v.dual.dual == ws(&[701, 2103, 342, 786, 276], 4206),
        ),
        (
            "not well-formed",
            !linkinv::weights::well_formed(&v.dual.dual),
        ),
        ("betti 0", h.betti.is_zero()),
        (
            "torsion Z/701",
            h.torsion.group() == AbelianGroup::cyclic(701),
        ),
        ("row 1 polynomial", v.g2 == poly(&row1.polynomial)),
        (
            "row 1 weights",
            v.analysis.weights == ws(&row1.weights, row1.degree),
        ),
        (
            "Kervaire",
            *v.classification() == LinkClass::HomotopySphere(SphereType::Kervaire)
                && h.delta_at_1 == Evaluation::Value(BigInt::from(701)),
        ),
        (
            "lhs 1450",
            bvc.is_some_and(|b| b.lhs_doubled == 1450 && b.holds),
        ),
        ("cone dimension 2", v.cone_dim() == ConeDimension::Known(2)),
        ("time", elapsed < PIPELINE_BUDGET),
    ];
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.to_string())
        .collect();
    outcome(
        failed.is_empty(),
        format!(
            "{} of {} checks in {elapsed:?}",
            checks.len() - failed.len(),
            checks.len()
        ),
        failed,
    )
}

fn homotopy_sphere_table() -> Outcome {
    let t = Instant::now();
    let reports = tables::verify_table(Table::HomotopySpheres, &[], DEFAULT_ORACLE_CAP).unwrap();
    let elapsed = t.elapsed();
    let mut details = Vec::new();
    for r in reports.iter().filter(|r| !r.passed()) {
        for c in r.failures() {
            details.push(format!("row {}: {} ({})", r.row.index, c.name, c.detail));
        }
    }
    if elapsed >= SPHERE_TABLE_BUDGET {
        details.push(format!("took {elapsed:?}"));
    }
    let ok = reports.iter().filter(|r| r.passed()).count();
    outcome(
        details.is_empty() && reports.len() == 31,
        format!("{ok}/{} rows in {elapsed:?}", reports.len()),
        details,
    )
}

fn product_profile_table() -> Outcome {
    let t = Instant::now();
    let reports = tables::verify_table(Table::ProductProfiles, &[], DEFAULT_ORACLE_CAP).unwrap();
    let elapsed = t.elapsed();
    let mut details = Vec::new();
    let mut agreed = 0;
    for r in &reports {
        for c in r.failures() {
            details.push(format!("row {}: {} ({})", r.row.index, c.name, c.detail));
        }
        match &r.oracle {
            OracleStatus::Agrees { .. } => agreed += 1,
            OracleStatus::Disagrees(e) => details.push(format!("row {}: oracle {e}", r.row.index)),
            OracleStatus::Skipped { .. } => {}
        }
    }
    if elapsed >= PRODUCT_TABLE_BUDGET {
        details.push(format!("took {elapsed:?}"));
    }
    let pass = details.is_empty() && reports.len() == 6;
    // the Δ(-1) column is reported next to the printed header value
    for r in &reports {
        if let Some(dm1) = r.delta_at_minus1() {
            details.push(format!(
                "row {}: Δ(-1) = {dm1} (degree {}), printed m3 column {}",
                r.row.index, r.row.degree, r.row.m3
            ));
        }
    }
    outcome(
        pass,
        format!(
            "{}/{} rows, oracle agrees on {agreed} within d <= {DEFAULT_ORACLE_CAP}, in {elapsed:?}",
            reports.iter().filter(|r| r.passed()).count(),
            reports.len()
        ),
        details,
    )
}

/// One analysis checked against the dense expansion.
fn oracle_on(label: String, a: &LinkAnalysis, checked: &mut usize, details: &mut Vec<String>) {
    match oracle_check(a, FAMILY_ORACLE_CAP) {
        OracleStatus::Agrees { .. } => *checked += 1,
        OracleStatus::Disagrees(e) => details.push(format!("{label}: {e}")),
        OracleStatus::Skipped { .. } => {}
    }
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut details = Vec::new();
    for table in Table::ALL {
        for r in tables::verify_table(table, &[], FAMILY_ORACLE_CAP).unwrap() {
            match &r.oracle {
                OracleStatus::Agrees { .. } => checked += 1,
                OracleStatus::Disagrees(e) => {
                    details.push(format!("{table} row {}: {e}", r.row.index))
                }
                OracleStatus::Skipped { .. } => {}
            }
        }
    }
    for a0 in [3, 5, 7] {
        for a2 in 2..=6 {
            for a3 in 2..=6 {
                for a4 in 2..=6 {
                    let p = ChainCycleParams::new(a0, 2, a2, a3, a4).unwrap();
                    let Ok(rec) = chain_cycle_dual(&p) else {
                        continue;
                    };
                    if let Ok(a) = analyze_with_weights(&rec.transpose, rec.dual.clone()) {
                        oracle_on(
                            format!("chain-cycle dual {p}"),
                            &a,
                            &mut checked,
                            &mut details,
                        );
                    }
                    if let Ok(v) = chain_cycle_verdict(&p, 1) {
                        oracle_on(
                            format!("chain-cycle perturbation {p}"),
                            &v.analysis,
                            &mut checked,
                            &mut details,
                        );
                    }
                }
            }
        }
    }
    for x in 2..=15 {
        for y in 2..=15 {
            for z in 2..=15 {
                for params in [
                    TsChainParams::chain_pair(x, y, z),
                    TsChainParams::square_chain(x, y, z),
                ]
                .into_iter()
                .flatten()
                {
                    let Ok(dual) = ts_chain_dual(&params) else {
                        continue;
                    };
                    if let Ok(a) = analyze_with_weights(&dual.transpose, dual.dual.clone()) {
                        oracle_on(format!("{params} dual"), &a, &mut checked, &mut details);
                    }
                    if let Ok(a) = analyze_with_weights(&dual.bp, dual.dual.clone()) {
                        oracle_on(
                            format!("{params} perturbation"),
                            &a,
                            &mut checked,
                            &mut details,
                        );
                    }
                }
            }
        }
    }
    for a0 in 2..=8 {
        for a2 in 2..=8 {
            for a3 in 2..=8 {
                let Ok(p) = chain_chain_polynomial(a0, a2, a3) else {
                    continue;
                };
                let t = bh_transpose(&p);
                if let Ok(a) = analyze(&t) {
                    oracle_on(
                        format!("chain-chain ({a0}, {a2}, {a3}) dual"),
                        &a,
                        &mut checked,
                        &mut details,
                    );
                }
            }
        }
    }
    outcome(
        details.is_empty() && checked > 0,
        format!(
            "{checked} expansions with d <= {FAMILY_ORACLE_CAP} agree, in {:?}",
            t.elapsed()
        ),
        details,
    )
}

fn betti_double_computation(corpus: &[InvertiblePolynomial]) -> Outcome {
    let mut details = Vec::new();
    for p in corpus {
        let res = solve_weights(p).and_then(|w| {
            let u = uv(&w);
            let a = betti_from_divisor(&alexander_divisor(&u)?)?;
            let b = betti_subset_formula(&u)?;
            Ok((a, b))
        });
        match res {
            Ok((a, b)) if a == b => {}
            Ok((a, b)) => details.push(format!("{p}: divisor {a}, subset formula {b}")),
            Err(e) => details.push(format!("{p}: {e}")),
        }
    }
    outcome(
        details.is_empty(),
        format!("{} polynomials, {} mismatches", corpus.len(), details.len()),
        details,
    )
}

fn torsion_order(corpus: &[InvertiblePolynomial]) -> Outcome {
    let mut details = Vec::new();
    let mut spheres = 0;
    for p in corpus {
        match analyze(p) {
            Ok(a) if a.homology.betti.is_zero() => {
                spheres += 1;
                let order = a.homology.torsion.order();
                match a.homology.delta_at_1.value() {
                    Some(v) if v.abs() == order => {}
                    _ => details.push(format!(
                        "{p}: torsion order {order}, Δ(1) = {}",
                        a.homology.delta_at_1
                    )),
                }
            }
            Ok(_) => {}
            Err(e) => details.push(format!("{p}: {e}")),
        }
    }
    outcome(
        details.is_empty(),
        format!(
            "{spheres} rational homology spheres, {} mismatches",
            details.len()
        ),
        details,
    )
}

fn sweep_one(params: &TsChainParams, checked: &mut usize, details: &mut Vec<String>) {
    match ts_chain_verdict(params, 0) {
        Ok(v) => {
            if v.base_lichnerowicz.holds {
                *checked += 1;
            }
        }
        Err(e @ Error::Counterexample(_)) => details.push(e.to_string()),
        Err(e) => details.push(format!("{params}: {e}")),
    }
}

fn property_sweep() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut members = 0;
    let mut details = Vec::new();
    for x in 2..=SWEEP_MAX_EXPONENT {
        for y in 2..=SWEEP_MAX_EXPONENT {
            for z in 2..=SWEEP_MAX_EXPONENT {
                for params in [
                    TsChainParams::chain_pair(x, y, z),
                    TsChainParams::square_chain(x, y, z),
                ]
                .into_iter()
                .flatten()
                {
                    members += 1;
                    sweep_one(&params, &mut checked, &mut details);
                }
            }
        }
    }
    for k in 2..=SWEEP_MAX_K {
        for params in [
            TsChainParams::chain_pair_6k(k),
            TsChainParams::square_chain_4k(k),
        ] {
            match params {
                Ok(p) => {
                    members += 1;
                    sweep_one(&p, &mut checked, &mut details);
                }
                Err(e) => details.push(format!("k = {k}: {e}")),
            }
        }
    }
    let primes: Vec<u32> = (2..=SWEEP_MAX_PRIME)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q >= 5) {
            for &r in &primes {
                if p > r * q && p != q && q != r && p != r {
                    members += 1;
                    match TsChainParams::chain_pair_primes(p, q, r, 1) {
                        Ok(params) => sweep_one(&params, &mut checked, &mut details),
                        Err(e) => details.push(format!("primes ({p}, {q}, {r}): {e}")),
                    }
                }
            }
        }
    }
    let elapsed = t.elapsed();
    if elapsed >= SWEEP_BUDGET {
        details.push(format!("took {elapsed:?}"));
    }
    outcome(
        details.is_empty(),
        format!(
            "{members} members, {checked} with the base inequality, {} violations, in {elapsed:?}",
            details.len()
        ),
        details,
    )
}

fn involution_and_closed_forms(corpus: &[InvertiblePolynomial]) -> Outcome {
    let t = Instant::now();
    let mut details = Vec::new();
    for p in corpus {
        if bh_transpose(&bh_transpose(p)) != *p {
            details.push(format!("transpose is not an involution on {p}"));
        }
    }

    let mut chain_chain = 0;
    for a0 in 2..=GRID_MAX_EXPONENT {
        for a2 in 2..=GRID_MAX_EXPONENT {
            for a3 in 2..=GRID_MAX_EXPONENT {
                let Ok(p) = chain_chain_polynomial(a0, a2, a3) else {
                    continue;
                };
                let res = solve_weights(&p).and_then(|base| {
                    let closed = chain_chain_dual_closed_form(a0, a2, a3, &base)?;
                    Ok(closed == dual_weights(&p)?)
                });
                match res {
                    Ok(true) => chain_chain += 1,
                    Ok(false) => details.push(format!(
                        "chain-chain ({a0}, {a2}, {a3}) closed form differs"
                    )),
                    Err(e) => details.push(format!("chain-chain ({a0}, {a2}, {a3}): {e}")),
                }
            }
        }
    }

    // the cheap check is first compared with the generic solver on a sub-grid
    let mut solver_checked = 0;
    let range = 2..=SOLVER_SUBGRID;
    for a0 in range.clone() {
        for a1 in range.clone() {
            for a2 in range.clone() {
                for a3 in range.clone() {
                    for a4 in range.clone() {
                        let p = ChainCycleParams::new(a0, a1, a2, a3, a4).unwrap();
                        let res = p.polynomial().and_then(|f| {
                            let base = solve_weights(&f)?;
                            let m3 = base.weights()[0];
                            if num_integer::Integer::gcd(&(a0 as u64), &m3) != 1 {
                                return Ok(None);
                            }
                            let same =
                                chain_cycle_weight_formula(&p, a0 as u64, m3)? == dual_weights(&f)?;
                            Ok(Some(same))
                        });
                        match (res, chain_cycle_formula_check(&p)) {
                            (Ok(None), Ok(None)) => {}
                            (Ok(Some(true)), Ok(Some(true))) => solver_checked += 1,
                            (a, b) => details
                                .push(format!("chain-cycle {p}: solver {a:?}, grid check {b:?}")),
                        }
                    }
                }
            }
        }
    }

    let mut chain_cycle = 0u64;
    let range = 2..=GRID_MAX_EXPONENT;
    for a0 in range.clone() {
        for a1 in range.clone() {
            for a2 in range.clone() {
                for a3 in range.clone() {
                    for a4 in range.clone() {
                        let p = ChainCycleParams::new(a0, a1, a2, a3, a4).unwrap();
                        match chain_cycle_formula_check(&p) {
                            Ok(Some(true)) => chain_cycle += 1,
                            Ok(None) => {}
                            Ok(Some(false)) => {
                                details.push(format!("chain-cycle {p}: formula differs"))
                            }
                            Err(e) => details.push(format!("chain-cycle {p}: {e}")),
                        }
                    }
                }
            }
        }
    }
    outcome(
        details.is_empty(),
        format!(
            "{} involutions, {chain_chain} chain-chain and {chain_cycle} chain-cycle tuples \
             ({solver_checked} also against the solver), in {:?}",
            corpus.len(),
            t.elapsed()
        ),
        details,
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    const SHOWN_DETAILS: usize = 12;
    let corpus = linkinv_validation::corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("round trip", Box::new(round_trip)),
        ("chain-cycle pipeline", Box::new(chain_cycle_pipeline)),
        ("homotopy sphere table", Box::new(homotopy_sphere_table)),
        ("product profile table", Box::new(product_profile_table)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        (
            "Betti double computation",
            Box::new(|| betti_double_computation(&corpus)),
        ),
        ("torsion order", Box::new(|| torsion_order(&corpus))),
        ("property sweep", Box::new(property_sweep)),
        (
            "involution and closed forms",
            Box::new(|| involution_and_closed_forms(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {} {:<28} {}  {}",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.summary
        );
        for d in o.details.iter().take(SHOWN_DETAILS) {
            println!("    {d}");
        }
        if o.details.len() > SHOWN_DETAILS {
            println!("    ... {} more", o.details.len() - SHOWN_DETAILS);
        }
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
