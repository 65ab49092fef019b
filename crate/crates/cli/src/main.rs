mod json;
mod text;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linkinv::alexander::{expand_delta, DEFAULT_DEGREE_CAP};
use linkinv::analysis::{analyze, LinkAnalysis};
use linkinv::families::{
    chain_chain_report, chain_cycle_dual, chain_cycle_verdict, ts_chain_verdict, ChainCycleParams,
    TsChainParams,
};
use linkinv::tables::{self, Table, DEFAULT_ORACLE_CAP};
use linkinv::{Error, Evaluation, InvertiblePolynomial};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const CAP_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "linkinv",
    version,
    about = "Invariants of links of invertible polynomials"
)]
struct Cli {
    /// Print JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct PolyInput {
    /// Polynomial such as "z0^7*z1 + z1^4*z2 + z2^2*z0 + z3^3".
    polynomial: String,
    /// Work with the transposed polynomial.
    #[arg(long)]
    transpose: bool,
    /// Append this many pure squares first.
    #[arg(long, default_value_t = 0)]
    squares: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, (u, v) data, divisor, homology and obstructions.
    Analyze(PolyInput),
    /// Same as `analyze --transpose`.
    Transpose {
        polynomial: String,
        #[arg(long, default_value_t = 0)]
        squares: usize,
    },
    /// Weights and the homology of the link.
    Homology(PolyInput),
    /// Cone dimension, both inequalities and the topological label.
    Obstruct(PolyInput),
    /// Runs a parametric family pipeline.
    Family {
        #[arg(value_enum)]
        selector: Selector,
        /// Exponents of the family member.
        params: Vec<u32>,
        /// Extra squares on the perturbation (default 1 for chain-cycle, else 0).
        #[arg(long)]
        squares: Option<usize>,
        /// Range such as 2..10 for the k-indexed families, or the power for chain-pair-primes.
        #[arg(long)]
        k: Option<String>,
    },
    /// Re-derives every row of the embedded tables.
    VerifyTables {
        #[arg(long, value_enum, default_value_t = TableArg::All)]
        table: TableArg,
        /// Row list such as 1,3,5-7 (needs a single table).
        #[arg(long)]
        rows: Option<String>,
        /// Dense-expansion cross-check for rows with degree at most this.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
    },
    /// Expands the Alexander polynomial densely and compares it with the closed forms.
    Oracle {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, alias = "cap", default_value_t = DEFAULT_DEGREE_CAP)]
        oracle_cap: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Selector {
    ChainCycle,
    ChainPair,
    SquareChain,
    #[value(name = "chain-pair-6k")]
    ChainPair6k,
    #[value(name = "square-chain-4k")]
    SquareChain4k,
    ChainPairPrimes,
    ChainChain,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegreeCap { .. } | Error::Overflow(_) => CAP_EXCEEDED,
            Error::Counterexample(_)
            | Error::ClosedFormMismatch(_)
            | Error::NonIntegralDivisor
            | Error::NonIntegralEvaluation(_)
            | Error::NonIntegralMilnor
            | Error::InexactDivision
            | Error::NonIntegralC(_) => CHECK_FAILED,
            _ => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: INPUT_ERROR,
        message: message.into(),
    }
}

type Outcome = Result<(Value, String, u8), Failure>;

fn load(input: &PolyInput) -> Result<InvertiblePolynomial, Failure> {
    let mut p = InvertiblePolynomial::parse(&input.polynomial).map_err(Error::from)?;
    if input.transpose {
        p = p.transposed();
    }
    Ok(p.with_squares(input.squares))
}

fn cmd_analyze(input: &PolyInput) -> Outcome {
    let a = analyze(&load(input)?)?;
    let mut v = json::analysis(&a);
    v["transposed"] = json!(input.transpose);
    Ok((v, text::analysis(&a), PASS))
}

fn cmd_homology(input: &PolyInput) -> Outcome {
    let a = analyze(&load(input)?)?;
    let mut v = json::weights(&a.weights);
    v["polynomial"] = json!(a.polynomial.to_string());
    v["uv"] = json::uv(&a.uv);
    v["homology"] = json::homology(&a.homology, a.torsion_is_proven());
    let mut b = text::Block::default();
    b.add("polynomial", &a.polynomial)
        .add("weights", text::weights(&a.weights));
    text::homology(&mut b, &a.homology, a.torsion_is_proven());
    Ok((v, b.render(), PASS))
}

fn cmd_obstruct(input: &PolyInput) -> Outcome {
    let a = analyze(&load(input)?)?;
    let mut v = json::weights(&a.weights);
    v["polynomial"] = json!(a.polynomial.to_string());
    v["obstruction"] = json::obstruction(&a.obstruction, a.polynomial.nvars());
    let mut b = text::Block::default();
    b.add("polynomial", &a.polynomial)
        .add("weights", text::weights(&a.weights));
    text::obstruction(&mut b, &a.obstruction);
    Ok((v, b.render(), PASS))
}

fn as_int(e: &Evaluation) -> Option<BigInt> {
    match e {
        Evaluation::Value(v) => Some(v.clone()),
        Evaluation::Zero => Some(BigInt::zero()),
        Evaluation::Pole => None,
    }
}

fn cmd_oracle(input: &PolyInput, cap: u64) -> Outcome {
    let a: LinkAnalysis = analyze(&load(input)?)?;
    let dense = expand_delta(&a.divisor, cap)?;
    let h = &a.homology;
    let degree_ok = BigInt::from(dense.degree()) == h.milnor;
    let at1_ok = as_int(&h.delta_at_1) == Some(dense.at_one());
    let atm1_ok = as_int(&h.delta_at_minus1) == Some(dense.at_minus_one());
    let v = json!({
        "polynomial": a.polynomial.to_string(),
        "degree": dense.degree(),
        "milnor": json::big(&h.milnor),
        "delta_at_1": json::big(&dense.at_one()),
        "delta_at_minus1": json::big(&dense.at_minus_one()),
        "closed_form": {
            "delta_at_1": json::evaluation(&h.delta_at_1),
            "delta_at_minus1": json::evaluation(&h.delta_at_minus1),
        },
        "agrees": { "degree": degree_ok, "delta_at_1": at1_ok, "delta_at_minus1": atm1_ok },
    });
    let mut b = text::Block::default();
    b.add("polynomial", &a.polynomial)
        .add("degree of Δ", dense.degree())
        .add("Milnor number", &h.milnor)
        .add("Δ(1)", dense.at_one())
        .add("Δ(-1)", dense.at_minus_one())
        .add("degree agrees", degree_ok)
        .add("Δ(1) agrees", at1_ok)
        .add("Δ(-1) agrees", atm1_ok);
    let code = if degree_ok && at1_ok && atm1_ok {
        PASS
    } else {
        CHECK_FAILED
    };
    Ok((v, b.render(), code))
}

/// `a..b`, `a..=b` and `a-b` are inclusive; a bare number is a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, Failure> {
    let bad = || input_error(format!("cannot read range {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let x = num(s)?;
        (x, x)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn parse_rows(s: &str) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        out.extend(parse_range(part)?.map(|x| x as usize));
    }
    Ok(out)
}

fn exact_params<const N: usize>(params: &[u32], what: &str) -> Result<[u32; N], Failure> {
    params
        .try_into()
        .map_err(|_| input_error(format!("{what} takes {N} exponents, got {}", params.len())))
}

/// Runs the Thom-Sebastiani verdict on each member and summarizes.
fn ts_members(name: &str, members: Vec<TsChainParams>, squares: usize) -> Outcome {
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut obstructed = 0;
    for params in &members {
        let v = ts_chain_verdict(params, squares)?;
        obstructed += usize::from(v.obstructed());
        if !text.is_empty() {
            text.push('\n');
        }
        text += &text::ts_chain_verdict(&v);
        reports.push(json::ts_chain_verdict(&v));
    }
    if reports.len() == 1 {
        return Ok((reports.pop().unwrap(), text, PASS));
    }
    text += &format!("\n{name}: {obstructed}/{} obstructed\n", members.len());
    let v = json!({
        "family": name,
        "members": reports,
        "obstructed": obstructed,
        "total": members.len(),
    });
    Ok((v, text, PASS))
}

fn cmd_family(
    selector: Selector,
    params: &[u32],
    squares: Option<usize>,
    k: Option<&str>,
) -> Outcome {
    let k_range = |default: &str| parse_range(k.unwrap_or(default));
    let no_params = |what: &str| {
        if params.is_empty() {
            Ok(())
        } else {
            Err(input_error(format!("{what} takes no exponents, use --k")))
        }
    };
    match selector {
        Selector::ChainCycle => {
            let [a0, a1, a2, a3, a4] = exact_params(params, "chain-cycle")?;
            let p = ChainCycleParams::new(a0, a1, a2, a3, a4)?;
            match squares.unwrap_or(1) {
                0 => {
                    let d = chain_cycle_dual(&p)?;
                    Ok((json::chain_cycle_dual(&d), text::chain_cycle_dual(&d), PASS))
                }
                s => {
                    let v = chain_cycle_verdict(&p, s)?;
                    Ok((
                        json::chain_cycle_verdict(&v),
                        text::chain_cycle_verdict(&v),
                        PASS,
                    ))
                }
            }
        }
        Selector::ChainPair => {
            let [x, y, z] = exact_params(params, "chain-pair")?;
            ts_members(
                "chain-pair",
                vec![TsChainParams::chain_pair(x, y, z)?],
                squares.unwrap_or(0),
            )
        }
        Selector::SquareChain => {
            let [x, y, z] = exact_params(params, "square-chain")?;
            ts_members(
                "square-chain",
                vec![TsChainParams::square_chain(x, y, z)?],
                squares.unwrap_or(0),
            )
        }
        Selector::ChainPair6k => {
            no_params("chain-pair-6k")?;
            let members = k_range("2..10")?
                .map(TsChainParams::chain_pair_6k)
                .collect::<Result<_, _>>()?;
            ts_members("chain-pair-6k", members, squares.unwrap_or(0))
        }
        Selector::SquareChain4k => {
            no_params("square-chain-4k")?;
            let members = k_range("2..10")?
                .map(TsChainParams::square_chain_4k)
                .collect::<Result<_, _>>()?;
            ts_members("square-chain-4k", members, squares.unwrap_or(0))
        }
        Selector::ChainPairPrimes => {
            let [p, q, r] = exact_params(params, "chain-pair-primes")?;
            let members = k_range("1")?
                .map(|k| TsChainParams::chain_pair_primes(p, q, r, k))
                .collect::<Result<_, _>>()?;
            ts_members("chain-pair-primes", members, squares.unwrap_or(0))
        }
        Selector::ChainChain => {
            let [a0, a2, a3] = exact_params(params, "chain-chain")?;
            let r = chain_chain_report(a0, a2, a3)?;
            Ok((json::chain_chain(&r), text::chain_chain(&r), PASS))
        }
    }
}

fn cmd_verify_tables(table: TableArg, rows: Option<&str>, oracle_cap: u64) -> Outcome {
    let selected: Vec<Table> = match table {
        TableArg::One => vec![Table::HomotopySpheres],
        TableArg::Two => vec![Table::ProductProfiles],
        TableArg::All => Table::ALL.to_vec(),
    };
    let only = match rows {
        Some(_) if selected.len() > 1 => {
            return Err(input_error("--rows needs --table 1 or --table 2"))
        }
        Some(s) => parse_rows(s)?,
        None => Vec::new(),
    };
    let mut all_passed = true;
    let mut text = String::new();
    let mut out = Vec::new();
    for t in selected {
        let reports = tables::verify_table(t, &only, oracle_cap)?;
        let passed = reports.iter().filter(|r| r.passed()).count();
        all_passed &= passed == reports.len();
        for r in &reports {
            text += &text::row(r);
        }
        text += &format!("{t}: {passed}/{} rows pass\n", reports.len());
        out.push(json!({
            "table": t.number(),
            "passed": passed,
            "total": reports.len(),
            "rows": reports.iter().map(json::row).collect::<Vec<_>>(),
        }));
    }
    let v = json!({ "tables": out, "passed": all_passed, "oracle_cap": json::uint(oracle_cap) });
    Ok((v, text, if all_passed { PASS } else { CHECK_FAILED }))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze(input) => cmd_analyze(input),
        Command::Transpose {
            polynomial,
            squares,
        } => cmd_analyze(&PolyInput {
            polynomial: polynomial.clone(),
            transpose: true,
            squares: *squares,
        }),
        Command::Homology(input) => cmd_homology(input),
        Command::Obstruct(input) => cmd_obstruct(input),
        Command::Family {
            selector,
            params,
            squares,
            k,
        } => cmd_family(*selector, params, *squares, k.as_deref()),
        Command::VerifyTables {
            table,
            rows,
            oracle_cap,
        } => cmd_verify_tables(*table, rows.as_deref(), *oracle_cap),
        Command::Oracle { input, oracle_cap } => cmd_oracle(input, *oracle_cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, text, code)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("JSON values serialize")
                );
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message, "exit_code": f.code }));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..10").ok(), Some(2..=10));
        assert_eq!(parse_range("2..=10").ok(), Some(2..=10));
        assert_eq!(parse_range("5-7").ok(), Some(5..=7));
        assert_eq!(parse_range("4").ok(), Some(4..=4));
        assert!(parse_range("9..2").is_err());
        assert!(parse_range("x").is_err());
        assert_eq!(parse_rows("1,3,5-7").ok(), Some(vec![1, 3, 5, 6, 7]));
    }

    #[test]
    fn exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::DegreeCap { degree: 9, cap: 1 }), CAP_EXCEEDED);
        assert_eq!(code(Error::ParameterViolation(String::new())), INPUT_ERROR);
        assert_eq!(code(Error::Counterexample(String::new())), CHECK_FAILED);
    }
}
