//! Divisor calculus for the Alexander polynomial in the ring `Z[C*]`.
//!
//! `Λ_n` stands for the divisor of `t^n - 1`. Products follow
//! `Λ_a Λ_b = gcd(a, b) Λ_lcm(a, b)` and `Λ_1` is the unit. The divisor of the
//! Alexander polynomial is `Π_i (Λ_{u_i} / v_i - Λ_1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ratio;
use crate::weights::{M2M3Split, WeightSystem};
use crate::{Error, Result};

/// Default degree limit for [`expand_delta`].
pub const DEFAULT_DEGREE_CAP: u64 = 250_000;

/// `u_i = d / gcd(d, w_i)` and `v_i = w_i / gcd(d, w_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UvData {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

impl UvData {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

pub fn uv(ws: &WeightSystem) -> UvData {
    let d = ws.degree();
    let (u, v) = ws
        .weights()
        .iter()
        .map(|&w| {
            let g = d.gcd(&w);
            (d / g, w / g)
        })
        .unzip();
    UvData { u, v }
}

/// Sparse combination `Σ c_n Λ_n` with rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CyclotomicDivisor {
    coeffs: BTreeMap<u64, BigRational>,
}

impl CyclotomicDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Λ_1`, the unit of the ring.
    pub fn one() -> Self {
        Self::lambda(1)
    }

    pub fn lambda(n: u64) -> Self {
        Self::term(n, BigRational::one())
    }

    pub fn term(n: u64, c: BigRational) -> Self {
        assert!(n >= 1, "Λ_0 is not defined");
        let mut d = Self::zero();
        d.add_term(n, c);
        d
    }

    pub fn from_integers(terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut d = Self::zero();
        for (n, c) in terms {
            d.add_term(n, ratio(c, 1));
        }
        d
    }

    fn add_term(&mut self, n: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: u64) -> BigRational {
        self.coeffs
            .get(&n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `NonIntegralDivisor`.
    pub fn integer_terms(&self) -> Result<Vec<(u64, BigInt)>> {
        self.coeffs
            .iter()
            .map(|(&n, c)| {
                if c.is_integer() {
                    Ok((n, c.to_integer()))
                } else {
                    Err(Error::NonIntegralDivisor)
                }
            })
            .collect()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&n, c) in &self.coeffs {
            out.add_term(n, c * k);
        }
        out
    }

    /// `Σ c_n`, the exponent of `t - 1` in the Alexander polynomial.
    pub fn coefficient_sum(&self) -> BigRational {
        self.coeffs.values().sum()
    }

    /// `Σ n c_n`, the degree of the Alexander polynomial.
    pub fn degree(&self) -> BigRational {
        self.coeffs.iter().map(|(&n, c)| c * BigInt::from(n)).sum()
    }
}

impl Add for &CyclotomicDivisor {
    type Output = CyclotomicDivisor;

    fn add(self, rhs: &CyclotomicDivisor) -> CyclotomicDivisor {
        let mut out = self.clone();
        for (&n, c) in &rhs.coeffs {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl Neg for &CyclotomicDivisor {
    type Output = CyclotomicDivisor;

    fn neg(self) -> CyclotomicDivisor {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &CyclotomicDivisor {
    type Output = CyclotomicDivisor;

    fn sub(self, rhs: &CyclotomicDivisor) -> CyclotomicDivisor {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicDivisor {
    type Output = CyclotomicDivisor;

    fn mul(self, rhs: &CyclotomicDivisor) -> CyclotomicDivisor {
        let mut out = CyclotomicDivisor::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                let g = a.gcd(&b);
                out.add_term(a / g * b, ca * cb * BigInt::from(g));
            }
        }
        out
    }
}

impl fmt::Display for CyclotomicDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&n, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "L{n}")?;
        }
        Ok(())
    }
}

/// `Λ_a Λ_b = gcd(a, b) Λ_lcm(a, b)`.
pub fn lambda_mul(a: u64, b: u64) -> CyclotomicDivisor {
    &CyclotomicDivisor::lambda(a) * &CyclotomicDivisor::lambda(b)
}

/// Expands `Π_i (Λ_{u_i} / v_i - Λ_1)` and checks that the result is integral.
pub fn alexander_divisor(uv: &UvData) -> Result<CyclotomicDivisor> {
    let mut acc = CyclotomicDivisor::one();
    for (&u, &v) in uv.u.iter().zip(&uv.v) {
        let mut factor = CyclotomicDivisor::term(u, ratio(1, v));
        factor.add_term(1, -BigRational::one());
        acc = &acc * &factor;
    }
    if !acc.is_integral() {
        return Err(Error::NonIntegralDivisor);
    }
    Ok(acc)
}

/// Middle Betti number as the coefficient sum of the divisor.
pub fn betti_from_divisor(dv: &CyclotomicDivisor) -> Result<BigInt> {
    let s = dv.coefficient_sum();
    if !s.is_integer() {
        return Err(Error::NonIntegralDivisor);
    }
    Ok(s.to_integer())
}

/// Middle Betti number from the alternating sum over all index subsets
/// `Σ_S (-1)^{n+1-|S|} Π_S u_i / (Π_S v_i · lcm_S u_i)`; the empty set counts 1.
pub fn betti_subset_formula(uv: &UvData) -> Result<BigInt> {
    let m = uv.len();
    assert!(m < 32, "subset enumeration limited to 31 variables");
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << m) {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut l = 1u64;
        for i in (0..m).filter(|i| mask >> i & 1 == 1) {
            num *= uv.u[i];
            den *= uv.v[i];
            l = l.lcm(&uv.u[i]);
        }
        let term = BigRational::new(num, den * l);
        if (m - mask.count_ones() as usize) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    if !total.is_integer() {
        return Err(Error::NonIntegralDivisor);
    }
    Ok(total.to_integer())
}

/// Value of `Δ` at a point, or the reason it has none.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Evaluation {
    Value(BigInt),
    /// The polynomial vanishes there.
    Zero,
    /// Net negative multiplicity: the divisor is not a polynomial there.
    Pole,
}

impl Evaluation {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Evaluation::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Value(v) => write!(f, "{v}"),
            Evaluation::Zero => f.write_str("zero"),
            Evaluation::Pole => f.write_str("undefined"),
        }
    }
}

fn product_of_powers(factors: impl Iterator<Item = (BigInt, BigInt)>) -> Result<BigInt> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (base, exp) in factors {
        let e: u32 = exp
            .abs()
            .try_into()
            .map_err(|_| Error::Overflow(format!("exponent {exp}")))?;
        let p = base.pow(e);
        if exp.is_negative() {
            den *= p;
        } else {
            num *= p;
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegralEvaluation(format!("{num}/{den}")));
    }
    Ok(q)
}

fn order_of_vanishing(multiplicity: &BigInt) -> Option<Evaluation> {
    if multiplicity.is_positive() {
        Some(Evaluation::Zero)
    } else if multiplicity.is_negative() {
        Some(Evaluation::Pole)
    } else {
        None
    }
}

/// `Δ(1) = Π n^{c_n}` when `Σ c_n = 0`.
pub fn delta_at_1(dv: &CyclotomicDivisor) -> Result<Evaluation> {
    let terms = dv.integer_terms()?;
    let s: BigInt = terms.iter().map(|(_, c)| c).sum();
    if let Some(e) = order_of_vanishing(&s) {
        return Ok(e);
    }
    product_of_powers(terms.into_iter().map(|(n, c)| (BigInt::from(n), c))).map(Evaluation::Value)
}

/// `Δ(-1) = Π_{n odd} (-2)^{c_n} · Π_{n even} (-n)^{c_n}` when the even
/// coefficients sum to zero.
pub fn delta_at_minus1(dv: &CyclotomicDivisor) -> Result<Evaluation> {
    let terms = dv.integer_terms()?;
    let e: BigInt = terms
        .iter()
        .filter(|(n, _)| n % 2 == 0)
        .map(|(_, c)| c)
        .sum();
    if let Some(ev) = order_of_vanishing(&e) {
        return Ok(ev);
    }
    product_of_powers(terms.into_iter().map(|(n, c)| {
        let base = if n % 2 == 1 {
            BigInt::from(-2)
        } else {
            -BigInt::from(n)
        };
        (base, c)
    }))
    .map(Evaluation::Value)
}

/// `μ = Π (d - w_i) / w_i`.
pub fn milnor_number(ws: &WeightSystem) -> Result<BigInt> {
    let d = ws.degree();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (index, &w) in ws.weights().iter().enumerate() {
        if w >= d {
            return Err(Error::WeightExceedsDegree { index });
        }
        num *= d - w;
        den *= w;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegralMilnor);
    }
    Ok(q)
}

/// Dense integer polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    fn times_cyclotomic(&mut self, n: usize) {
        // p (t^n - 1)
        let old = std::mem::take(&mut self.coeffs);
        let mut out = vec![BigInt::zero(); old.len() + n];
        for (i, c) in old.into_iter().enumerate() {
            out[i] -= &c;
            out[i + n] += c;
        }
        self.coeffs = out;
    }

    fn div_cyclotomic(&mut self, n: usize) -> Result<()> {
        // q (t^n - 1) = p  =>  q_{k-n} = p_k + q_k from the top down
        let p = std::mem::take(&mut self.coeffs);
        if p.len() <= n {
            return Err(Error::InexactDivision);
        }
        let qlen = p.len() - n;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (n..p.len()).rev() {
            let above = if k < qlen {
                q[k].clone()
            } else {
                BigInt::zero()
            };
            q[k - n] = &p[k] + above;
        }
        // remaining low coefficients must satisfy p_k = -q_k
        for k in 0..n {
            let qk = if k < qlen { &q[k] } else { &BigInt::ZERO };
            if p[k] != -qk.clone() {
                return Err(Error::InexactDivision);
            }
        }
        self.coeffs = q;
        Ok(())
    }
}

/// Expands `Π (t^n - 1)^{c_n}` densely. Positive factors are multiplied first,
/// then the negative ones are divided out exactly.
pub fn expand_delta(dv: &CyclotomicDivisor, max_degree: u64) -> Result<DensePoly> {
    let terms = dv.integer_terms()?;
    let net = dv.degree().to_integer();
    if net.is_negative() {
        return Err(Error::InexactDivision);
    }
    let net: u64 = (&net).try_into().map_err(|_| Error::DegreeCap {
        degree: u64::MAX,
        cap: max_degree,
    })?;
    if net > max_degree {
        return Err(Error::DegreeCap {
            degree: net,
            cap: max_degree,
        });
    }
    let mut p = DensePoly {
        coeffs: vec![BigInt::one()],
    };
    let count = |c: &BigInt| -> Result<u64> {
        c.abs()
            .try_into()
            .map_err(|_| Error::Overflow(format!("multiplicity {c}")))
    };
    for (n, c) in terms.iter().filter(|(_, c)| c.is_positive()) {
        for _ in 0..count(c)? {
            p.times_cyclotomic(*n as usize);
        }
    }
    for (n, c) in terms.iter().filter(|(_, c)| c.is_negative()) {
        for _ in 0..count(c)? {
            p.div_cyclotomic(*n as usize)?;
        }
    }
    Ok(p)
}

/// `Π_{i in triple} (Λ_{m3}/v_i - 1) = β Λ_{m3} - 1` with
/// `β = m3²/(v0 v1 v2) - m3 Σ 1/(v_i v_j) + Σ 1/v_i`.
pub fn triple_beta(m3: u64, v: [u64; 3]) -> BigRational {
    let m3 = ratio(m3, 1);
    let inv = |x: u64| ratio(1, x);
    let prod = ratio(1, v[0] as u128 * v[1] as u128 * v[2] as u128);
    let pairs = inv(v[0] * v[1]) + inv(v[0] * v[2]) + inv(v[1] * v[2]);
    let singles = inv(v[0]) + inv(v[1]) + inv(v[2]);
    &m3 * &m3 * prod - &m3 * pairs + singles
}

/// `Π_{i in pair} (Λ_{m2}/v_i - 1) = α Λ_{m2} + 1` with `α = m2/(v v') - 1/v - 1/v'`.
pub fn pair_alpha(m2: u64, v: [u64; 2]) -> BigRational {
    ratio(m2, v[0] * v[1]) - ratio(1, v[0]) - ratio(1, v[1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredDivisor {
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `αβ Λ_d + β Λ_{m3} - α Λ_{m2} - Λ_1`
    pub divisor: CyclotomicDivisor,
    /// `β = 1`, the condition for `Δ(1) != 0` given `α > 0`
    pub beta_is_one: bool,
}

/// Evaluates the factored divisor for an `m2/m3` split and checks it against
/// the generic expansion.
pub fn structured_divisor_check(split: &M2M3Split) -> Result<StructuredDivisor> {
    let pair = split.pair();
    let triple = split.triple();
    let alpha = pair_alpha(split.m2, [split.v[pair[0]], split.v[pair[1]]]);
    let beta = triple_beta(
        split.m3,
        [split.v[triple[0]], split.v[triple[1]], split.v[triple[2]]],
    );
    let d = split.m2 * split.m3;
    let mut divisor = CyclotomicDivisor::term(d, &alpha * &beta);
    divisor = &divisor + &CyclotomicDivisor::term(split.m3, beta.clone());
    divisor = &divisor - &CyclotomicDivisor::term(split.m2, alpha.clone());
    divisor = &divisor - &CyclotomicDivisor::one();

    let generic = alexander_divisor(&UvData {
        u: split.u(),
        v: split.v.clone(),
    })?;
    if generic != divisor {
        return Err(Error::PatternMismatch(format!(
            "factored divisor {divisor} differs from {generic}"
        )));
    }
    Ok(StructuredDivisor {
        beta_is_one: beta.is_one(),
        alpha,
        beta,
        divisor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{m2m3_split, SplitPattern};

    fn ws(w: &[u64], d: u64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn uv_examples() {
        let u = uv(&ws(&[286, 39, 429, 33, 429], 858));
        assert_eq!(u.u, vec![3, 22, 2, 26, 2]);
        assert_eq!(u.v, vec![1; 5]);
        let u = uv(&ws(&[1, 1], 2));
        assert_eq!((u.u, u.v), (vec![2, 2], vec![1, 1]));
    }

    #[test]
    fn lambda_relation() {
        assert_eq!(
            lambda_mul(4, 6),
            CyclotomicDivisor::from_integers([(12, 2)])
        );
        assert_eq!(lambda_mul(1, 9), CyclotomicDivisor::lambda(9));
        assert_eq!(lambda_mul(10, 701), CyclotomicDivisor::lambda(7010));
    }

    #[test]
    fn two_squares_give_unit() {
        let dv = alexander_divisor(&UvData {
            u: vec![2, 2],
            v: vec![1, 1],
        })
        .unwrap();
        assert_eq!(dv, CyclotomicDivisor::one());
        assert_eq!(betti_from_divisor(&dv).unwrap(), big(1));
        assert_eq!(delta_at_minus1(&dv).unwrap(), Evaluation::Value(big(-2)));
        assert_eq!(delta_at_1(&dv).unwrap(), Evaluation::Zero);
    }

    #[test]
    fn homotopy_sphere_divisor() {
        // (t^30 - 1)(t - 1) / ((t^5 - 1)(t^6 - 1))
        let dv = CyclotomicDivisor::from_integers([(30, 1), (5, -1), (6, -1), (1, 1)]);
        assert_eq!(betti_from_divisor(&dv).unwrap(), big(0));
        assert_eq!(delta_at_1(&dv).unwrap(), Evaluation::Value(big(1)));
        assert_eq!(delta_at_minus1(&dv).unwrap(), Evaluation::Value(big(5)));
        let p = expand_delta(&dv, 1000).unwrap();
        assert_eq!(p.degree(), 20);
        assert_eq!(p.at_one(), big(1));
        assert_eq!(p.at_minus_one(), big(5));
        assert_eq!(p.eval(&big(-1)), big(5));
    }

    #[test]
    fn linear_oracle() {
        let p = expand_delta(&CyclotomicDivisor::one(), 10).unwrap();
        assert_eq!(p.coeffs(), &[big(-1), big(1)]);
    }

    #[test]
    fn oracle_rejects_bad_input() {
        let dv = CyclotomicDivisor::from_integers([(3, 1), (2, -1)]);
        assert_eq!(expand_delta(&dv, 100), Err(Error::InexactDivision));
        let dv = CyclotomicDivisor::from_integers([(300, 1)]);
        assert_eq!(
            expand_delta(&dv, 100),
            Err(Error::DegreeCap {
                degree: 300,
                cap: 100
            })
        );
    }

    #[test]
    fn brieskorn_pham_dual_profile() {
        let w = ws(&[286, 39, 429, 33, 429], 858);
        let u = uv(&w);
        let dv = alexander_divisor(&u).unwrap();
        assert_eq!(betti_from_divisor(&dv).unwrap(), big(0));
        assert_eq!(betti_subset_formula(&u).unwrap(), big(0));
        assert_eq!(delta_at_1(&dv).unwrap(), Evaluation::Value(big(3)));
        assert_eq!(milnor_number(&w).unwrap(), big(1050));
        assert_eq!(dv.degree(), ratio(1050, 1));
        let p = expand_delta(&dv, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(p.degree(), 1050);
        assert_eq!(p.at_one(), big(3));
    }

    #[test]
    fn milnor_edge_cases() {
        assert_eq!(milnor_number(&ws(&[1, 1], 2)).unwrap(), big(1));
        assert_eq!(
            milnor_number(&ws(&[2, 1], 2)),
            Err(Error::WeightExceedsDegree { index: 0 })
        );
    }

    #[test]
    fn structured_divisor_of_chain_cycle_primal() {
        let split = m2m3_split(&ws(&[701, 701, 198, 381, 123], 2103), SplitPattern::Auto)
            .unwrap()
            .unwrap();
        let s = structured_divisor_check(&split).unwrap();
        assert!(s.alpha.is_one());
        assert!(s.alpha.is_positive() && s.beta.is_positive());
    }

    #[test]
    fn dual_triple_beta_is_one() {
        // cycle part of the transposed chain-cycle example: u = 701, v = (57, 131, 46)
        assert!(triple_beta(701, [57, 131, 46]).is_one());
    }

    #[test]
    fn display() {
        let dv = CyclotomicDivisor::from_integers([(12, 2), (4, -1), (1, 1)]);
        assert_eq!(dv.to_string(), "2*L12 - L4 + L1");
    }
}
