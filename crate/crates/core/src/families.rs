//! Parametric families and their dual pipelines.
//!
//! Three shapes are covered. Chain-cycle polynomials are transposed and then
//! suspended by squares. Two Thom-Sebastiani chain families (chain-pair and
//! square-chain) are transposed and perturbed to Brieskorn-Pham form. The
//! chain-chain dual gets a perturbation with two free squares. Each pipeline
//! checks the closed forms known for its family against the generic
//! computation and fails loudly on any disagreement.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::alexander::{Evaluation, UvData};
use crate::analysis::{analyze_with_weights, HomologyProfile, LinkAnalysis};
use crate::obstruct::{
    bvc_no_extremal, cone_dimension, lichnerowicz, BvcVerdict, ConeDimension, LichnerowiczVerdict,
    LinkClass,
};
use crate::orlik::{chain_cycle_torsion_trichotomy, AbelianGroup};
use crate::poly::{InvertiblePolynomial, PolyError, MAX_EXPONENT};
use crate::transpose::{bh_transpose, chain_chain_dual_closed_form, chain_chain_polynomial};
use crate::weights::{solve_weights, suspension_form, SuspensionForm, WeightSystem};
use crate::{Error, Result};

/// Appends `count` pure squares. The new weights are `d/2`; when `d` is odd
/// every weight is doubled first. The result is primitive again.
pub fn suspend(
    p: &InvertiblePolynomial,
    ws: &WeightSystem,
    count: usize,
) -> (InvertiblePolynomial, WeightSystem) {
    if count == 0 {
        return (p.clone(), ws.clone());
    }
    let (mut w, d) = if ws.degree() % 2 == 0 {
        (ws.weights().to_vec(), ws.degree())
    } else {
        (
            ws.weights().iter().map(|x| 2 * x).collect(),
            2 * ws.degree(),
        )
    };
    w.extend(std::iter::repeat(d / 2).take(count));
    let ws = WeightSystem::new(w, d).expect("suspension keeps weights positive");
    (p.with_squares(count), ws)
}

fn exponent(x: u64) -> Result<u32> {
    u32::try_from(x)
        .ok()
        .filter(|&e| e <= MAX_EXPONENT)
        .ok_or(Error::Poly(PolyError::ExponentTooLarge(x)))
}

fn mismatch(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::ClosedFormMismatch(failures.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// chain-cycle

/// `z0^a0 + z0 z1^a1 + z4 z2^a2 + z2 z3^a3 + z3 z4^a4`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainCycleParams {
    pub a0: u32,
    pub a1: u32,
    pub a2: u32,
    pub a3: u32,
    pub a4: u32,
}

impl ChainCycleParams {
    pub fn new(a0: u32, a1: u32, a2: u32, a3: u32, a4: u32) -> Result<Self> {
        let p = ChainCycleParams { a0, a1, a2, a3, a4 };
        if p.exponents().iter().any(|&a| a < 2) {
            return Err(Error::ParameterViolation(format!(
                "chain-cycle exponents {:?} must all be at least 2",
                p.exponents()
            )));
        }
        Ok(p)
    }

    pub fn exponents(&self) -> [u32; 5] {
        [self.a0, self.a1, self.a2, self.a3, self.a4]
    }

    pub fn polynomial(&self) -> Result<InvertiblePolynomial> {
        let ChainCycleParams { a0, a1, a2, a3, a4 } = *self;
        Ok(InvertiblePolynomial::from_matrix(vec![
            vec![a0, 0, 0, 0, 0],
            vec![1, a1, 0, 0, 0],
            vec![0, 0, a2, 0, 1],
            vec![0, 0, 1, a3, 0],
            vec![0, 0, 0, 1, a4],
        ])?)
    }

    /// `a2 a3 a4 + 1`, the determinant of the cycle block.
    pub fn cycle_determinant(&self) -> u64 {
        self.a2 as u64 * self.a3 as u64 * self.a4 as u64 + 1
    }

    /// `(1 - a4 + a3 a4, 1 - a2 + a2 a4, 1 - a3 + a2 a3)`
    pub fn cycle_v(&self) -> [u64; 3] {
        let (a2, a3, a4) = (self.a2 as u64, self.a3 as u64, self.a4 as u64);
        [1 + a4 * (a3 - 1), 1 + a2 * (a4 - 1), 1 + a3 * (a2 - 1)]
    }
}

impl fmt::Display for ChainCycleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.a0, self.a1, self.a2, self.a3, self.a4
        )
    }
}

/// Dual weights of the chain-cycle polynomial from `m2`, `m3` and the
/// exponents, with `D = m3 m2 (m2 - 1)`:
/// `(m3(m2-1)(a1-1)/a1, D/a1, D v2/C, D v3/C, D v4/C; D)` where `C` is the
/// cycle determinant and `v` is [`ChainCycleParams::cycle_v`]. Normalized.
pub fn chain_cycle_weight_formula(p: &ChainCycleParams, m2: u64, m3: u64) -> Result<WeightSystem> {
    if m2 < 2 || m3 == 0 {
        return Err(Error::ParameterViolation(format!(
            "weight formula needs m2 >= 2 and m3 >= 1, got {m2} and {m3}"
        )));
    }
    // scaled by a1·C to clear denominators
    let a1 = p.a1 as u128;
    let c = p.cycle_determinant() as u128;
    let (m2, m3) = (m2 as u128, m3 as u128);
    let overflow = || Error::Overflow("chain-cycle weight formula".into());
    let big_d = m3.checked_mul(m2 * (m2 - 1)).ok_or_else(overflow)?;
    let mut t = Vec::with_capacity(6);
    t.push(
        m3.checked_mul((m2 - 1) * (a1 - 1))
            .and_then(|x| x.checked_mul(c))
            .ok_or_else(overflow)?,
    );
    t.push(big_d.checked_mul(c).ok_or_else(overflow)?);
    for v in p.cycle_v() {
        t.push(big_d.checked_mul(a1 * v as u128).ok_or_else(overflow)?);
    }
    t.push(big_d.checked_mul(a1 * c).ok_or_else(overflow)?);
    let g = t
        .iter()
        .fold(0u128, |acc, &x| crate::arith::gcd_u128(acc, x));
    let t: Vec<u64> = t
        .iter()
        .map(|x| u64::try_from(x / g).map_err(|_| overflow()))
        .collect::<Result<_>>()?;
    let d = t[5];
    WeightSystem::new(t[..5].to_vec(), d)
}

/// Grid check of [`chain_cycle_weight_formula`] that skips building
/// polynomials and eliminating. Base weights are `(a1 C, (a0 - 1) C, a0 a1 x)`
/// over `a0 a1 C`, with `x` the cycle solution by a 3 x 3 Cramer rule. Both
/// weight vectors are substituted into their equations, whose solutions are
/// unique since the determinant `a0 a1 C` is nonzero. `None` when
/// `gcd(m2, m3) != 1`.
pub fn chain_cycle_formula_check(p: &ChainCycleParams) -> Result<Option<bool>> {
    let ChainCycleParams { a0, a1, a2, a3, a4 } = *p;
    let m = [
        [a0, 0, 0, 0, 0],
        [1, a1, 0, 0, 0],
        [0, 0, a2, 0, 1],
        [0, 0, 1, a3, 0],
        [0, 0, 0, 1, a4],
    ];
    let (b0, b1, c) = (a0 as u128, a1 as u128, p.cycle_determinant() as u128);
    // rows (a2, 0, 1), (1, a3, 0), (0, 1, a4) with one column set to ones
    let (x2, x3, x4) = (a2 as u128, a3 as u128, a4 as u128);
    let cyc = [x3 * x4 + 1 - x3, x2 * x4 + 1 - x4, x2 * x3 + 1 - x2];
    let mut base = vec![b1 * c, (b0 - 1) * c];
    base.extend(cyc.iter().map(|x| b0 * b1 * x));
    let mut d = b0 * b1 * c;
    let g = base
        .iter()
        .fold(d, |acc, &x| crate::arith::gcd_u128(acc, x));
    base.iter_mut().for_each(|x| *x /= g);
    d /= g;
    let solves = |w: &[u128], d: u128, transpose: bool| {
        (0..5).all(|r| {
            (0..5)
                .map(|k| if transpose { m[k][r] } else { m[r][k] } as u128 * w[k])
                .sum::<u128>()
                == d
        })
    };
    if !solves(&base, d, false) {
        return Err(Error::ClosedFormMismatch(format!("base weights of {p}")));
    }
    let (m2, m3) = (a0 as u64, (d / b0) as u64);
    if m2.gcd(&m3) != 1 {
        return Ok(None);
    }
    let ws = chain_cycle_weight_formula(p, m2, m3)?;
    let w: Vec<u128> = ws.weights().iter().map(|&x| x as u128).collect();
    Ok(Some(solves(&w, ws.degree() as u128, true)))
}

/// The chain-cycle polynomial, its transpose, and everything computed on the
/// dual side.
#[derive(Debug, Clone)]
pub struct ChainCycleDual {
    pub params: ChainCycleParams,
    pub polynomial: InvertiblePolynomial,
    pub base: WeightSystem,
    /// equals `a0`
    pub m2: u64,
    /// `d / a0`, the first weight of the base
    pub m3: u64,
    pub transpose: InvertiblePolynomial,
    pub dual: WeightSystem,
    pub uv: UvData,
    pub homology: HomologyProfile,
}

impl ChainCycleDual {
    /// `Ĩ = |w̃| - d̃` of the primitive dual weights.
    pub fn dual_index(&self) -> i128 {
        self.dual.index()
    }
}

/// Solves both sides and asserts every closed form of the dual: the weight
/// formula, `d̃ = m3 m2 (m2-1)` and `Ĩ = m2 - 1` (as one scaled tuple),
/// `ũ = (m2 a1, a1, m3, m3, m3)`, `ṽ = (a1 - 1, 1, cycle_v)`,
/// `b = (a2 a3 a4 + 1)/m3 - 1`, and for vanishing `b` the torsion trichotomy.
pub fn chain_cycle_dual(params: &ChainCycleParams) -> Result<ChainCycleDual> {
    let polynomial = params.polynomial()?;
    let base = solve_weights(&polynomial)?;
    let m2 = params.a0 as u64;
    let m3 = base.weights()[0];
    debug_assert_eq!(m2 * m3, base.degree());
    if m2.gcd(&m3) != 1 {
        return Err(Error::ParameterViolation(format!(
            "m2 = {m2} and m3 = {m3} are not coprime"
        )));
    }
    let transpose = bh_transpose(&polynomial);
    let dual = solve_weights(&transpose)?;
    let (uv, _, homology) = HomologyProfile::compute(&dual)?;

    let mut failures = Vec::new();
    let formula = chain_cycle_weight_formula(params, m2, m3)?;
    if formula != dual {
        failures.push(format!(
            "weight formula gives {:?}/{}, solver {:?}/{}",
            formula.weights(),
            formula.degree(),
            dual.weights(),
            dual.degree()
        ));
    }
    // (Ĩ, d̃) is only fixed up to the scale of the weights
    let lit_d = m3 as i128 * m2 as i128 * (m2 as i128 - 1);
    let lit_i = m2 as i128 - 1;
    if dual.index() * lit_d != lit_i * dual.degree() as i128 {
        failures.push(format!(
            "index/degree is {}/{}, expected {lit_i}/{lit_d}",
            dual.index(),
            dual.degree()
        ));
    }
    let a1 = params.a1 as u64;
    let want_u = vec![m2 * a1, a1, m3, m3, m3];
    if uv.u != want_u {
        failures.push(format!("u is {:?}, expected {want_u:?}", uv.u));
    }
    let cv = params.cycle_v();
    let want_v = vec![a1 - 1, 1, cv[0], cv[1], cv[2]];
    if uv.v != want_v {
        failures.push(format!("v is {:?}, expected {want_v:?}", uv.v));
    }
    let c = params.cycle_determinant();
    if c % m3 != 0 || homology.betti != BigInt::from(c / m3) - 1 {
        failures.push(format!(
            "Betti number is {}, expected ({c})/{m3} - 1",
            homology.betti
        ));
    }
    if homology.betti.is_zero() {
        let want = chain_cycle_torsion_trichotomy(a1, m2, m3);
        if homology.torsion.group() != want {
            failures.push(format!(
                "torsion is {}, expected {want}",
                homology.torsion.group()
            ));
        }
    }
    mismatch(failures)?;
    Ok(ChainCycleDual {
        params: *params,
        polynomial,
        base,
        m2,
        m3,
        transpose,
        dual,
        uv,
        homology,
    })
}

/// Replaces the chain rows of the transpose by pure powers,
/// `z0^(d̃/w̃0) + z1^(d̃/w̃1)`, keeps the cycle rows and appends
/// `extra_squares` squares. Returns the polynomial with its weight system,
/// which is the dual one suspended.
pub fn g2_perturbation(
    rec: &ChainCycleDual,
    extra_squares: usize,
) -> Result<(InvertiblePolynomial, WeightSystem)> {
    let w = rec.dual.weights();
    let d = rec.dual.degree();
    for (i, &wi) in w.iter().enumerate().take(2) {
        if d % wi != 0 {
            return Err(Error::DivisibilityFailure(format!(
                "weight w{i} = {wi} does not divide the dual degree {d}"
            )));
        }
    }
    let mut m = rec.transpose.matrix();
    m[0] = vec![exponent(d / w[0])?, 0, 0, 0, 0];
    m[1] = vec![0, exponent(d / w[1])?, 0, 0, 0];
    let core = InvertiblePolynomial::with_names(m, rec.transpose.var_names().to_vec())?;
    let (g2, ws) = suspend(&core, &rec.dual, extra_squares);
    ws.check_against(&g2)?;
    Ok((g2, ws))
}

/// The topology expected for the suspended perturbation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedTopology {
    /// odd `m3`, odd `n`
    HomotopySphere { delta_at_minus1: u64 },
    /// odd `m3`, even `n`; torsion equal to the dual's
    RationalHomologySphere { torsion: AbelianGroup },
    /// even `m3`, `n = 5`
    S4xS5Profile,
    /// even `m3` with another `n`: no claim
    Unspecified,
}

#[derive(Debug, Clone)]
pub struct ChainCycleVerdict {
    pub dual: ChainCycleDual,
    pub g2: InvertiblePolynomial,
    pub analysis: LinkAnalysis,
    /// index of the last variable of `g2`
    pub n: usize,
    pub expected: ExpectedTopology,
}

impl ChainCycleVerdict {
    pub fn cone_dim(&self) -> ConeDimension {
        self.analysis.obstruction.cone_dim
    }

    pub fn bvc(&self) -> Option<BvcVerdict> {
        self.analysis.obstruction.bvc
    }

    pub fn classification(&self) -> &LinkClass {
        &self.analysis.obstruction.classification
    }
}

/// Runs the dual pipeline with `a1 = 2` on a rational homology sphere base,
/// suspends the perturbation by `squares` squares and asserts the
/// conclusions: cone dimension `1 + ⌊(n-3)/2⌋`, no extremal metric in the
/// cone, and the topology in [`ExpectedTopology`].
pub fn chain_cycle_verdict(params: &ChainCycleParams, squares: usize) -> Result<ChainCycleVerdict> {
    if params.a1 != 2 {
        return Err(Error::HypothesisViolation(format!(
            "needs a1 = 2, got {}",
            params.a1
        )));
    }
    if squares == 0 {
        return Err(Error::HypothesisViolation(
            "needs at least one added square".into(),
        ));
    }
    let dual = chain_cycle_dual(params)?;
    let (_, _, base_hp) = HomologyProfile::compute(&dual.base)?;
    if !base_hp.betti.is_zero() {
        return Err(Error::HypothesisViolation(format!(
            "base link has Betti number {}, not a rational homology sphere",
            base_hp.betti
        )));
    }
    let (g2, ws) = g2_perturbation(&dual, squares)?;
    let analysis = analyze_with_weights(&g2, ws)?;
    let n = g2.nvars() - 1;
    let m3 = dual.m3;
    let expected = match (m3 % 2, n % 2) {
        (1, 1) => ExpectedTopology::HomotopySphere {
            delta_at_minus1: m3,
        },
        (1, _) => ExpectedTopology::RationalHomologySphere {
            torsion: dual.homology.torsion.group(),
        },
        _ if n == 5 => ExpectedTopology::S4xS5Profile,
        _ => ExpectedTopology::Unspecified,
    };

    let mut failures = Vec::new();
    let ob = &analysis.obstruction;
    let want_dim = ConeDimension::Known(1 + (n as u64 - 3) / 2);
    if ob.cone_dim != want_dim {
        failures.push(format!(
            "cone dimension {}, expected {want_dim}",
            ob.cone_dim
        ));
    }
    match ob.bvc {
        Some(v) if v.holds => {}
        Some(v) => failures.push(format!("inequality fails with lhs {}", v.lhs_doubled)),
        None => failures.push("perturbation is not in suspension form".into()),
    }
    let class = &ob.classification;
    match &expected {
        ExpectedTopology::HomotopySphere { delta_at_minus1 } => {
            if !matches!(class, LinkClass::HomotopySphere(_)) {
                failures.push(format!("expected a homotopy sphere, got {class}"));
            }
            let want = Evaluation::Value(BigInt::from(*delta_at_minus1));
            if analysis.homology.delta_at_minus1 != want {
                failures.push(format!(
                    "Δ(-1) = {}, expected {delta_at_minus1}",
                    analysis.homology.delta_at_minus1
                ));
            }
        }
        ExpectedTopology::RationalHomologySphere { torsion } => match class {
            LinkClass::RationalHomologySphere { torsion: t } if t == torsion => {}
            _ => failures.push(format!(
                "expected a rational homology sphere with torsion {torsion}, got {class}"
            )),
        },
        ExpectedTopology::S4xS5Profile => {
            if *class != LinkClass::ProductLikeS4xS5 {
                failures.push(format!("expected the S4xS5 profile, got {class}"));
            }
        }
        ExpectedTopology::Unspecified => {}
    }
    if !failures.is_empty() {
        return Err(Error::Counterexample(format!(
            "chain-cycle {params} with {squares} squares: {}",
            failures.join("; ")
        )));
    }
    Ok(ChainCycleVerdict {
        dual,
        g2,
        analysis,
        n,
        expected,
    })
}

// ---------------------------------------------------------------------------
// Thom-Sebastiani chain families

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TsChainParams {
    /// `z0^a0 + z1^a1 + z1 z2^2 + z3^a3 + z3 z4^2`, `a0` odd, pairwise coprime.
    ChainPair { a0: u32, a1: u32, a3: u32 },
    /// `z0^2 + z1^a1 + z2^a2 + z3^a3 + z3 z4^2`, `a1`, `a2` odd, pairwise coprime.
    SquareChain { a1: u32, a2: u32, a3: u32 },
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn pairwise_coprime(a: [u32; 3]) -> bool {
    a[0].gcd(&a[1]) == 1 && a[0].gcd(&a[2]) == 1 && a[1].gcd(&a[2]) == 1
}

impl TsChainParams {
    /// Validates and returns a chain-pair instance.
    pub fn chain_pair(a0: u32, a1: u32, a3: u32) -> Result<Self> {
        let p = TsChainParams::ChainPair { a0, a1, a3 };
        p.validate()?;
        Ok(p)
    }

    pub fn square_chain(a1: u32, a2: u32, a3: u32) -> Result<Self> {
        let p = TsChainParams::SquareChain { a1, a2, a3 };
        p.validate()?;
        Ok(p)
    }

    /// Chain pair `(6k+1, 2k-1, 2k+1)`, `k >= 2`.
    pub fn chain_pair_6k(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::ParameterViolation(format!("needs k >= 2, got {k}")));
        }
        Self::chain_pair(6 * k + 1, 2 * k - 1, 2 * k + 1)
    }

    /// Square chain `(2k-1, 2k+1, 4k)`, `k >= 2`.
    pub fn square_chain_4k(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::ParameterViolation(format!("needs k >= 2, got {k}")));
        }
        Self::square_chain(2 * k - 1, 2 * k + 1, 4 * k)
    }

    /// Chain pair `(p^k, q^k, r^k)` for distinct primes with `q >= 5`,
    /// `r >= 2` and `p > r q`.
    pub fn chain_pair_primes(p: u32, q: u32, r: u32, k: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::ParameterViolation(msg));
        if ![p, q, r].into_iter().all(is_prime) || p == q || p == r || q == r {
            return bad(format!("({p}, {q}, {r}) are not distinct primes"));
        }
        if q < 5 || p as u64 <= r as u64 * q as u64 {
            return bad(format!("needs q >= 5 and p > r q, got ({p}, {q}, {r})"));
        }
        if k == 0 {
            return bad("needs k >= 1".into());
        }
        let pow = |b: u32| {
            b.checked_pow(k)
                .filter(|&x| x <= MAX_EXPONENT / 2)
                .ok_or_else(|| Error::ParameterViolation(format!("{b}^{k} is too large")))
        };
        Self::chain_pair(pow(p)?, pow(q)?, pow(r)?)
    }

    pub fn exponents(&self) -> [u32; 3] {
        match *self {
            TsChainParams::ChainPair { a0, a1, a3 } => [a0, a1, a3],
            TsChainParams::SquareChain { a1, a2, a3 } => [a1, a2, a3],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TsChainParams::ChainPair { .. } => "chain-pair",
            TsChainParams::SquareChain { .. } => "square-chain",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.exponents();
        let bad = |msg: String| Err(Error::ParameterViolation(msg));
        if a.iter().any(|&x| !(2..=MAX_EXPONENT / 2).contains(&x)) {
            return bad(format!(
                "exponents {a:?} must lie in 2..={}",
                MAX_EXPONENT / 2
            ));
        }
        if !pairwise_coprime(a) {
            return bad(format!("exponents {a:?} are not pairwise coprime"));
        }
        match *self {
            TsChainParams::ChainPair { a0, .. } if a0 % 2 == 0 => {
                bad(format!("a0 = {a0} must be odd"))
            }
            TsChainParams::SquareChain { a1, a2, .. } if a1 % 2 == 0 || a2 % 2 == 0 => {
                bad(format!("a1 = {a1} and a2 = {a2} must be odd"))
            }
            _ => Ok(()),
        }
    }

    pub fn polynomial(&self) -> Result<InvertiblePolynomial> {
        let m = match *self {
            TsChainParams::ChainPair { a0, a1, a3 } => vec![
                vec![a0, 0, 0, 0, 0],
                vec![0, a1, 0, 0, 0],
                vec![0, 1, 2, 0, 0],
                vec![0, 0, 0, a3, 0],
                vec![0, 0, 0, 1, 2],
            ],
            TsChainParams::SquareChain { a1, a2, a3 } => vec![
                vec![2, 0, 0, 0, 0],
                vec![0, a1, 0, 0, 0],
                vec![0, 0, a2, 0, 0],
                vec![0, 0, 0, a3, 0],
                vec![0, 0, 0, 1, 2],
            ],
        };
        Ok(InvertiblePolynomial::from_matrix(m)?)
    }

    /// Brieskorn-Pham polynomial in the dual weight space.
    pub fn bp_perturbation(&self) -> Result<InvertiblePolynomial> {
        let diag = match *self {
            TsChainParams::ChainPair { a0, a1, a3 } => [a0, 2 * a1, 2, 2 * a3, 2],
            TsChainParams::SquareChain { a1, a2, a3 } => [2, a1, a2, 2 * a3, 2],
        };
        let m = (0..5)
            .map(|i| (0..5).map(|j| if i == j { diag[i] } else { 0 }).collect())
            .collect();
        Ok(InvertiblePolynomial::from_matrix(m)?)
    }

    /// `(a0-1)(2a1-1)(2a3-1)` or `(a1-1)(a2-1)(2a3-1)`.
    pub fn milnor_closed_form(&self) -> BigInt {
        let [x, y, z] = self.exponents().map(|a| BigInt::from(a as i64));
        let one = BigInt::one();
        match self {
            TsChainParams::ChainPair { .. } => (x - &one) * (2 * y - &one) * (2 * z - &one),
            TsChainParams::SquareChain { .. } => (x - &one) * (y - &one) * (2 * z - &one),
        }
    }

    /// `(2w0, w1, d, w3, d; 2d)` or `(d, 2w1, 2w2, w3, d; 2d)` from the base.
    pub fn dual_closed_form(&self, base: &WeightSystem) -> Result<WeightSystem> {
        let w = base.weights();
        let d = base.degree();
        let t = match self {
            TsChainParams::ChainPair { .. } => vec![2 * w[0], w[1], d, w[3], d],
            TsChainParams::SquareChain { .. } => vec![d, 2 * w[1], 2 * w[2], w[3], d],
        };
        WeightSystem::new(t, 2 * d)
    }
}

impl fmt::Display for TsChainParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.exponents();
        write!(f, "{} ({x}, {y}, {z})", self.name())
    }
}

#[derive(Debug, Clone)]
pub struct TsChainDual {
    pub params: TsChainParams,
    pub polynomial: InvertiblePolynomial,
    pub base: WeightSystem,
    pub transpose: InvertiblePolynomial,
    /// Brieskorn-Pham polynomial with the dual weights.
    pub bp: InvertiblePolynomial,
    pub dual: WeightSystem,
    pub homology: HomologyProfile,
}

/// Builds the family member, its transpose and the Brieskorn-Pham
/// perturbation, and asserts the dual weight formula, the Milnor number, and
/// `Δ(1)`: `a0` with torsion `Z/a0` for the chain pair, 1 for the square chain.
pub fn ts_chain_dual(params: &TsChainParams) -> Result<TsChainDual> {
    params.validate()?;
    let polynomial = params.polynomial()?;
    let base = solve_weights(&polynomial)?;
    let transpose = bh_transpose(&polynomial);
    let dual = solve_weights(&transpose)?;
    let bp = params.bp_perturbation()?;
    let (_, _, homology) = HomologyProfile::compute(&dual)?;

    let mut failures = Vec::new();
    let formula = params.dual_closed_form(&base)?;
    if formula != dual {
        failures.push(format!(
            "dual formula gives {:?}/{}, solver {:?}/{}",
            formula.weights(),
            formula.degree(),
            dual.weights(),
            dual.degree()
        ));
    }
    if dual.check_against(&bp).is_err() {
        failures.push("dual weights do not solve the Brieskorn-Pham perturbation".into());
    }
    let mu = params.milnor_closed_form();
    if homology.milnor != mu {
        failures.push(format!("Milnor number {}, expected {mu}", homology.milnor));
    }
    match *params {
        TsChainParams::ChainPair { a0, .. } => {
            let want = Evaluation::Value(BigInt::from(a0));
            if homology.delta_at_1 != want {
                failures.push(format!("Δ(1) = {}, expected {a0}", homology.delta_at_1));
            }
            if homology.torsion.group() != AbelianGroup::cyclic(a0) {
                failures.push(format!(
                    "torsion {}, expected Z/{a0}",
                    homology.torsion.group()
                ));
            }
        }
        TsChainParams::SquareChain { .. } => {
            if homology.delta_at_1 != Evaluation::Value(BigInt::one()) {
                failures.push(format!("Δ(1) = {}, expected 1", homology.delta_at_1));
            }
        }
    }
    mismatch(failures)?;
    Ok(TsChainDual {
        params: *params,
        polynomial,
        base,
        transpose,
        bp,
        dual,
        homology,
    })
}

#[derive(Debug, Clone)]
pub struct TsChainVerdict {
    pub dual: TsChainDual,
    /// On the base polynomial.
    pub base_lichnerowicz: LichnerowiczVerdict,
    /// The Brieskorn-Pham perturbation, suspended.
    pub perturbed: InvertiblePolynomial,
    pub perturbed_weights: WeightSystem,
    pub suspension: SuspensionForm,
    pub cone_dim: ConeDimension,
    pub bvc: BvcVerdict,
}

impl TsChainVerdict {
    /// No extremal metric anywhere in the cone of the perturbation.
    pub fn obstructed(&self) -> bool {
        self.bvc.holds
    }
}

/// Lichnerowicz on the base and the cone inequality on the perturbation with
/// `squares` extra squares. For an even count, a base passing the first must
/// pass the second.
pub fn ts_chain_verdict(params: &TsChainParams, squares: usize) -> Result<TsChainVerdict> {
    let dual = ts_chain_dual(params)?;
    let base_lichnerowicz = lichnerowicz(&dual.base);
    let (perturbed, perturbed_weights) = suspend(&dual.bp, &dual.dual, squares);
    let suspension = suspension_form(&perturbed, &perturbed_weights)
        .ok_or_else(|| Error::PatternMismatch("perturbation is not in suspension form".into()))?;
    let bvc = bvc_no_extremal(&suspension, &perturbed_weights)?;
    let cone_dim = cone_dimension(Some(&suspension), &perturbed_weights);
    if squares % 2 == 0 && base_lichnerowicz.holds && !bvc.holds {
        return Err(Error::Counterexample(format!(
            "{params}: base passes Lichnerowicz ({} > {}) but the perturbation has lhs {}",
            base_lichnerowicz.lhs, base_lichnerowicz.rhs, bvc.lhs_doubled
        )));
    }
    Ok(TsChainVerdict {
        dual,
        base_lichnerowicz,
        perturbed,
        perturbed_weights,
        suspension,
        cone_dim,
        bvc,
    })
}

// ---------------------------------------------------------------------------
// chain-chain

#[derive(Debug, Clone)]
pub struct ChainChainReport {
    pub polynomial: InvertiblePolynomial,
    pub base: WeightSystem,
    pub dual: WeightSystem,
    /// `z0^(2a0) + z1^2 + z3 z2^a2 + z2 z3^ã3 + z4^2` when `ã3` is integral.
    pub perturbation: Option<InvertiblePolynomial>,
    /// `w0 + w3 >= 6 w2` on the base
    pub hypothesis: bool,
    /// Cone inequality on the dual with core `{0, 2, 3}` and squares `{1, 4}`.
    pub bvc: BvcVerdict,
}

/// Dual of `z0^a0 + z0 z1^2 + z2^a2 + z2 z3^a3 + z3 z4^2` and its cone
/// inequality. When `w0 + w3 >= 6 w2` the inequality must hold.
pub fn chain_chain_report(a0: u32, a2: u32, a3: u32) -> Result<ChainChainReport> {
    let polynomial = chain_chain_polynomial(a0, a2, a3)?;
    let base = solve_weights(&polynomial)?;
    let dual = solve_weights(&bh_transpose(&polynomial))?;
    let closed = chain_chain_dual_closed_form(a0, a2, a3, &base)?;
    if closed != dual {
        return Err(Error::ClosedFormMismatch(format!(
            "chain-chain dual formula gives {:?}/{}, solver {:?}/{}",
            closed.weights(),
            closed.degree(),
            dual.weights(),
            dual.degree()
        )));
    }
    let w = base.weights();
    let hypothesis = w[0] as u128 + w[3] as u128 >= 6 * w[2] as u128;
    let sf = SuspensionForm {
        core_indices: vec![0, 2, 3],
        quad_indices: vec![1, 4],
        k: 2,
        n: 4,
    };
    let bvc = bvc_no_extremal(&sf, &dual)?;

    let wt = dual.weights();
    let dt = dual.degree();
    let perturbation = if dt % wt[0] == 0 && (dt - wt[2]) % wt[3] == 0 {
        let a0t = exponent(dt / wt[0])?;
        let a3t = exponent((dt - wt[2]) / wt[3])?;
        let g = InvertiblePolynomial::from_matrix(vec![
            vec![a0t, 0, 0, 0, 0],
            vec![0, 2, 0, 0, 0],
            vec![0, 0, a2, 1, 0],
            vec![0, 0, 1, a3t, 0],
            vec![0, 0, 0, 0, 2],
        ])?;
        dual.check_against(&g)?;
        if let Some(found) = suspension_form(&g, &dual) {
            if found != sf {
                return Err(Error::PatternMismatch(format!(
                    "perturbation splits as {found:?}"
                )));
            }
        }
        Some(g)
    } else {
        None
    };

    if hypothesis && !bvc.holds {
        return Err(Error::Counterexample(format!(
            "chain-chain ({a0}, {a2}, {a3}) meets w0 + w3 >= 6 w2 but has lhs {}",
            bvc.lhs_doubled
        )));
    }
    Ok(ChainChainReport {
        polynomial,
        base,
        dual,
        perturbation,
        hypothesis,
        bvc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::SphereType;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn suspension_rules() {
        let p = InvertiblePolynomial::parse("z0^3 + z1^3").unwrap();
        let ws = solve_weights(&p).unwrap();
        let (q, w) = suspend(&p, &ws, 1);
        // d = 3 is odd: everything doubles first
        assert_eq!(w.weights(), &[2, 2, 3]);
        assert_eq!(w.degree(), 6);
        assert_eq!(q.to_string(), "z0^3 + z1^3 + z2^2");
        let (_, w) = suspend(&p, &ws, 0);
        assert_eq!(w, ws);
    }

    #[test]
    fn chain_cycle_example_dual() {
        let p = ChainCycleParams::new(3, 2, 10, 5, 14).unwrap();
        let rec = chain_cycle_dual(&p).unwrap();
        assert_eq!(rec.base.weights(), &[701, 701, 198, 381, 123]);
        assert_eq!((rec.m2, rec.m3), (3, 701));
        assert_eq!(rec.dual.weights(), &[701, 2103, 342, 786, 276]);
        assert_eq!(rec.dual.degree(), 4206);
        assert_eq!(rec.dual_index(), 2);
        assert!(rec.homology.betti.is_zero());
        // a1 = 2: w̃0 = m3 (m2 - 1) / 2
        assert_eq!(rec.dual.weights()[0], 701 * 2 / 2);

        let (g2, ws) = g2_perturbation(&rec, 1).unwrap();
        let printed =
            InvertiblePolynomial::parse("z0^6 + z1^2 + z3*z2^10 + z4*z3^5 + z2*z4^14 + z5^2")
                .unwrap();
        assert_eq!(g2, printed);
        assert_eq!(ws.degree(), 4206);
        let (g0, _) = g2_perturbation(&rec, 0).unwrap();
        assert_eq!(g0.nvars(), 5);
    }

    #[test]
    fn chain_cycle_verdicts() {
        let p = ChainCycleParams::new(3, 2, 10, 5, 14).unwrap();
        let v = chain_cycle_verdict(&p, 1).unwrap();
        assert_eq!(v.n, 5);
        assert_eq!(v.cone_dim(), ConeDimension::Known(2));
        assert_eq!(v.bvc().unwrap().lhs_doubled, 1450);
        assert_eq!(
            *v.classification(),
            LinkClass::HomotopySphere(SphereType::Kervaire)
        );
        let v = chain_cycle_verdict(&p, 2).unwrap();
        assert_eq!(v.cone_dim(), ConeDimension::Known(2));
        assert_eq!(
            v.expected,
            ExpectedTopology::RationalHomologySphere {
                torsion: AbelianGroup::cyclic(701u32)
            }
        );
        let v = chain_cycle_verdict(&p, 3).unwrap();
        assert_eq!(v.cone_dim(), ConeDimension::Known(3));
        assert!(matches!(v.classification(), LinkClass::HomotopySphere(_)));

        assert!(matches!(
            chain_cycle_verdict(&p, 0),
            Err(Error::HypothesisViolation(_))
        ));
        let q = ChainCycleParams::new(3, 3, 10, 5, 14).unwrap();
        assert!(matches!(
            chain_cycle_verdict(&q, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn even_m3_gives_product_profile() {
        // first row of the even table: g2 = z0^10 + z1^2 + z3 z2^3 + z4 z3^107 + z2 z4^11 + z5^2
        let p = ChainCycleParams::new(5, 2, 3, 107, 11).unwrap();
        let v = chain_cycle_verdict(&p, 1).unwrap();
        assert_eq!(v.dual.m3, 3532);
        assert_eq!(v.expected, ExpectedTopology::S4xS5Profile);
        assert_eq!(
            v.analysis.weights.weights(),
            &[1766, 8830, 5835, 155, 1075, 8830]
        );
        assert_eq!(v.analysis.homology.betti, big(1));
        assert!(v.analysis.homology.torsion.group().is_trivial());
    }

    #[test]
    fn chain_cycle_parameter_errors() {
        assert!(matches!(
            ChainCycleParams::new(1, 2, 3, 4, 5),
            Err(Error::ParameterViolation(_))
        ));
    }

    #[test]
    fn weight_formula_matches_solver_on_small_grid() {
        for a0 in 2..6 {
            for a1 in 2..5 {
                for (a2, a3, a4) in [(2, 2, 2), (3, 5, 7), (10, 5, 14), (4, 2, 9)] {
                    let p = ChainCycleParams::new(a0, a1, a2, a3, a4).unwrap();
                    let f = p.polynomial().unwrap();
                    let base = solve_weights(&f).unwrap();
                    let m3 = base.weights()[0];
                    let dual = solve_weights(&bh_transpose(&f)).unwrap();
                    assert_eq!(
                        chain_cycle_weight_formula(&p, a0 as u64, m3).unwrap(),
                        dual,
                        "{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn chain_pair_example() {
        let p = TsChainParams::chain_pair(3, 11, 13).unwrap();
        let v = ts_chain_verdict(&p, 0).unwrap();
        assert_eq!(v.dual.base.weights(), &[143, 39, 195, 33, 198]);
        assert_eq!(v.dual.base.index(), 179);
        assert_eq!(v.dual.dual.weights(), &[286, 39, 429, 33, 429]);
        assert_eq!(v.dual.dual.degree(), 858);
        assert_eq!(v.dual.dual.index(), 358);
        assert_eq!(v.dual.homology.torsion.group(), AbelianGroup::cyclic(3u32));
        assert_eq!(v.dual.bp.to_string(), "z0^3 + z1^22 + z2^2 + z3^26 + z4^2");
        assert!(v.base_lichnerowicz.holds);
        assert!(v.obstructed());
        assert_eq!(v.cone_dim, ConeDimension::Known(2));
        let v2 = ts_chain_verdict(&p, 2).unwrap();
        assert_eq!(v2.cone_dim, ConeDimension::Known(3));
        assert!(v2.obstructed());
    }

    #[test]
    fn square_chain_example() {
        let p = TsChainParams::square_chain(5, 7, 12).unwrap();
        let v = ts_chain_verdict(&p, 0).unwrap();
        assert_eq!(v.dual.base.weights(), &[420, 168, 120, 70, 385]);
        assert_eq!(v.dual.base.index(), 323);
        assert_eq!(v.dual.dual.weights(), &[420, 168, 120, 35, 420]);
        assert_eq!(v.dual.dual.degree(), 840);
        assert_eq!(v.dual.homology.milnor, big(4 * 6 * 23));
        assert!(v.obstructed());
    }

    #[test]
    fn sweep_constructors() {
        let p = TsChainParams::chain_pair_6k(2).unwrap();
        assert_eq!(
            p.polynomial().unwrap().to_string(),
            "z0^13 + z1^3 + z1*z2^2 + z3^5 + z3*z4^2"
        );
        assert!(ts_chain_verdict(&p, 0).unwrap().base_lichnerowicz.holds);
        let p = TsChainParams::square_chain_4k(2).unwrap();
        assert_eq!(p.exponents(), [3, 5, 8]);
        assert!(ts_chain_verdict(&p, 0).unwrap().obstructed());
        let p = TsChainParams::chain_pair_primes(11, 5, 2, 1).unwrap();
        let v = ts_chain_verdict(&p, 0).unwrap();
        assert_eq!(v.dual.homology.torsion.group(), AbelianGroup::cyclic(11u32));
        assert!(v.obstructed());
        assert!(TsChainParams::chain_pair_primes(7, 5, 2, 1).is_err());
        assert!(TsChainParams::chain_pair_6k(1).is_err());
    }

    #[test]
    fn ts_parameter_checks() {
        assert!(TsChainParams::chain_pair(4, 3, 5).is_err());
        assert!(TsChainParams::chain_pair(3, 6, 9).is_err());
        assert!(TsChainParams::square_chain(4, 7, 9).is_err());
        assert!(TsChainParams::square_chain(3, 5, 7).is_ok());
    }

    #[test]
    fn chain_chain_reports() {
        let r = chain_chain_report(3, 2, 2).unwrap();
        assert_eq!(r.bvc.holds, r.bvc.lhs_doubled >= 0);
        for a0 in 2..10 {
            for a2 in 2..10 {
                for a3 in 1..10 {
                    let r = chain_chain_report(a0, a2, a3).unwrap();
                    if r.hypothesis {
                        assert!(r.bvc.holds);
                    }
                }
            }
        }
    }
}
