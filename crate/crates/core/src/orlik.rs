//! Torsion of the middle homology of the link from the `(u, v)` data.
//!
//! Index sets are bitmasks over the variables. The `c` values are built
//! inductively, so masks are visited by increasing cardinality and
//! lexicographically within one cardinality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alexander::UvData;
use crate::arith::gcd_all;
use crate::{Error, Result};

/// Finite abelian group in invariant-factor form `Z/d_1 ⊕ Z/d_2 ⊕ ...`
/// with `d_{j+1} | d_j` and every `d_j > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalizes any list of cyclic orders to invariant factors.
    pub fn from_cyclic(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut f: Vec<BigInt> = orders.into_iter().filter(|x| !x.is_one()).collect();
        assert!(
            f.iter().all(|x| x.is_positive()),
            "cyclic orders must be positive"
        );
        // replacing (a, b) by (lcm, gcd) preserves the group
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let (g, l) = (f[i].gcd(&f[j]), f[i].lcm(&f[j]));
                f[i] = l;
                f[j] = g;
            }
        }
        f.retain(|x| !x.is_one());
        AbelianGroup { factors: f }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic([n.into()])
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Output of the torsion algorithm, all `d_j` for `1 <= j <= r` kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionResult {
    pub d_factors: Vec<BigInt>,
}

impl TorsionResult {
    /// The factors bigger than 1.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.d_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn order(&self) -> BigInt {
        self.d_factors.iter().product()
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic(self.d_factors.iter().cloned())
    }
}

/// All intermediate values, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrlikData {
    /// `(mask, c, k)` in enumeration order.
    pub entries: Vec<(u32, u64, BigRational)>,
    pub r: u64,
    pub result: TorsionResult,
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Masks of `m` bits by cardinality, then lexicographically by index list.
fn enumeration_order(m: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|&s| (s.count_ones(), mask_indices(s)));
    masks
}

pub fn orlik_torsion(uv: &UvData) -> Result<TorsionResult> {
    orlik_data(uv).map(|d| d.result)
}

pub fn orlik_data(uv: &UvData) -> Result<OrlikData> {
    let m = uv.len();
    assert!(
        (1..=20).contains(&m),
        "torsion algorithm supports 1..=20 variables"
    );
    let n = m - 1;
    let full = (1u32 << m) - 1;

    // term(T) = Π_T u / (Π_T v · lcm_T u), empty set 1
    let mut term = vec![BigRational::zero(); 1 << m];
    for t in 0..=full {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut l = 1u64;
        for i in mask_indices(t) {
            num *= uv.u[i];
            den *= uv.v[i];
            l = l.lcm(&uv.u[i]);
        }
        term[t as usize] = BigRational::new(num, den * l);
    }

    let order = enumeration_order(m);
    let mut c = vec![0u64; 1 << m];
    let mut k = vec![BigRational::zero(); 1 << m];
    for &s in &order {
        let card = s.count_ones() as usize;
        c[s as usize] = if s == full {
            1
        } else {
            let g = gcd_all((0..m).filter(|i| s >> i & 1 == 0).map(|i| uv.u[i]));
            let mut den: u128 = 1;
            // proper subsets of s
            let mut t = s;
            while t != 0 {
                t = (t - 1) & s;
                den *= c[t as usize] as u128;
                if den > g as u128 {
                    break;
                }
            }
            if den == 0 || g as u128 % den != 0 {
                return Err(Error::NonIntegralC(mask_indices(s)));
            }
            (g as u128 / den) as u64
        };
        // ε_{n-s+1} is 1 exactly when n - s + 1 is odd
        let eps = (n + 1 - card) % 2 == 1;
        k[s as usize] = if eps {
            let mut sum = BigRational::zero();
            let mut t = s;
            loop {
                let sign_neg = (card - t.count_ones() as usize) % 2 == 1;
                if sign_neg {
                    sum -= &term[t as usize];
                } else {
                    sum += &term[t as usize];
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            sum
        } else {
            BigRational::zero()
        };
    }

    let max_k = k.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let r = max_k.floor().to_integer().to_u64().unwrap_or(0);
    let mut d_factors = Vec::with_capacity(r as usize);
    for j in 1..=r {
        let jq = BigRational::from_integer(BigInt::from(j));
        let prod: BigInt = order
            .iter()
            .filter(|&&s| k[s as usize] >= jq)
            .map(|&s| BigInt::from(c[s as usize]))
            .product();
        d_factors.push(prod);
    }
    Ok(OrlikData {
        entries: order
            .iter()
            .map(|&s| (s, c[s as usize], k[s as usize].clone()))
            .collect(),
        r,
        result: TorsionResult { d_factors },
    })
}

/// Torsion of the transposed chain-cycle link by `gcd(a1, m3)`:
/// `Z/m3` if it is 1, `Z/(m2 m3)` if it is 2, otherwise
/// `Z/(m2 m3) ⊕ (Z/m2)^{gcd - 2}`.
pub fn chain_cycle_torsion_trichotomy(a1: u64, m2: u64, m3: u64) -> AbelianGroup {
    let g = a1.gcd(&m3);
    let d = BigInt::from(m2) * m3;
    match g {
        1 => AbelianGroup::cyclic(m3),
        2 => AbelianGroup::from_cyclic([d]),
        _ => AbelianGroup::from_cyclic(
            std::iter::once(d).chain(std::iter::repeat(BigInt::from(m2)).take(g as usize - 2)),
        ),
    }
}

/// Torsion after adding two squares to the transposed chain-cycle link with
/// `a1 = 2`: `Z/m3` for odd `m3`, `Z/(m2 m3)` for even `m3`.
pub fn double_suspension_torsion(m2: u64, m3: u64) -> AbelianGroup {
    if m3 % 2 == 1 {
        AbelianGroup::cyclic(m3)
    } else {
        AbelianGroup::from_cyclic([BigInt::from(m2) * m3])
    }
}
