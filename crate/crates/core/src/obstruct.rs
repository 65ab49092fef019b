//! Sasaki-Reeb cone dimension, the two obstruction inequalities, and the
//! topological label of the link.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alexander::Evaluation;
use crate::analysis::HomologyProfile;
use crate::orlik::AbelianGroup;
use crate::poly::InvertiblePolynomial;
use crate::weights::{one_dim_cone_test, suspension_form, SuspensionForm, WeightSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeDimension {
    Known(u64),
    Unknown,
}

impl fmt::Display for ConeDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeDimension::Known(k) => write!(f, "{k}"),
            ConeDimension::Unknown => f.write_str("unknown"),
        }
    }
}

/// `⌊(n-k)/2⌋ + 1` for a suspension form, else 1 when at most one weight has
/// `2w >= d`, else unknown.
pub fn cone_dimension(sf: Option<&SuspensionForm>, ws: &WeightSystem) -> ConeDimension {
    match sf {
        Some(sf) => ConeDimension::Known(((sf.n - sf.k) / 2 + 1) as u64),
        None if one_dim_cone_test(ws) => ConeDimension::Known(1),
        None => ConeDimension::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LichnerowiczVerdict {
    /// `I = |w| - d`
    pub lhs: i128,
    /// `n · min w`
    pub rhs: i128,
    /// `lhs > rhs`: no Sasaki-Einstein metric for the standard Reeb field
    pub holds: bool,
}

pub fn lichnerowicz(ws: &WeightSystem) -> LichnerowiczVerdict {
    let n = ws.nvars() as i128 - 1;
    let lhs = ws.index();
    let rhs = n * ws.min_weight() as i128;
    LichnerowiczVerdict {
        lhs,
        rhs,
        holds: lhs > rhs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BvcVerdict {
    /// `2 Σ_core w - 2n min w + d (n - k - 2)`
    pub lhs_doubled: i128,
    /// `lhs >= 0`: no extremal Sasaki metric anywhere in the cone
    pub holds: bool,
}

/// Evaluates `Σ_core w_i - n min_l w_l + (d/2)(n - k - 2) >= 0`, doubled to
/// stay integral. The minimum runs over all weights; for a suspension form
/// it coincides with the core minimum, which is checked.
pub fn bvc_no_extremal(sf: &SuspensionForm, ws: &WeightSystem) -> Result<BvcVerdict> {
    if sf.n < sf.k + 2 || sf.core_indices.is_empty() {
        return Err(Error::NotApplicable(format!(
            "needs n - k >= 2, got n = {}, k = {}",
            sf.n, sf.k
        )));
    }
    let w = ws.weights();
    let d = ws.degree() as i128;
    let min_all = ws.min_weight() as i128;
    let min_core = sf.core_indices.iter().map(|&i| w[i]).min().unwrap() as i128;
    if min_all != min_core {
        return Err(Error::HypothesisViolation(
            "a square variable has the smallest weight".into(),
        ));
    }
    let core_sum: i128 = sf.core_indices.iter().map(|&i| w[i] as i128).sum();
    let (n, k) = (sf.n as i128, sf.k as i128);
    let lhs_doubled = 2 * core_sum - 2 * n * min_all + d * (n - k - 2);
    Ok(BvcVerdict {
        lhs_doubled,
        holds: lhs_doubled >= 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereType {
    Standard,
    Kervaire,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkClass {
    HomotopySphere(SphereType),
    RationalHomologySphere {
        torsion: AbelianGroup,
    },
    /// Betti number 1, no torsion, dimension 9.
    ProductLikeS4xS5,
    Other {
        betti: BigInt,
        torsion: AbelianGroup,
    },
}

impl LinkClass {
    pub fn label(&self) -> &'static str {
        match self {
            LinkClass::HomotopySphere(SphereType::Standard) => "homotopy sphere (standard)",
            LinkClass::HomotopySphere(SphereType::Kervaire) => "homotopy sphere (Kervaire)",
            LinkClass::HomotopySphere(SphereType::Unresolved) => "homotopy sphere",
            LinkClass::RationalHomologySphere { .. } => "rational homology sphere",
            LinkClass::ProductLikeS4xS5 => "S4xS5 homology profile",
            LinkClass::Other { .. } => "other",
        }
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkClass::RationalHomologySphere { torsion } => {
                write!(f, "{} with torsion {torsion}", self.label())
            }
            LinkClass::Other { betti, torsion } => {
                write!(f, "betti {betti}, torsion {torsion}")
            }
            _ => f.write_str(self.label()),
        }
    }
}

/// Real dimension `2n - 1` of the link of `n + 1` variables.
pub fn link_dimension(nvars: usize) -> u64 {
    (2 * nvars as u64).saturating_sub(3)
}

/// Homotopy sphere iff `|Δ(1)| = 1`; in dimensions `1 mod 4` the residue of
/// `Δ(-1)` mod 8 separates the standard sphere (±1) from the Kervaire sphere (±3).
pub fn classify(hp: &HomologyProfile, link_dim: u64) -> LinkClass {
    let torsion = hp.torsion.group();
    if let Evaluation::Value(v) = &hp.delta_at_1 {
        if v.abs().is_one() {
            let kind = match (&hp.delta_at_minus1, link_dim % 4) {
                (Evaluation::Value(m), 1) => match m.mod_floor(&BigInt::from(8)).to_u8() {
                    Some(1 | 7) => SphereType::Standard,
                    Some(3 | 5) => SphereType::Kervaire,
                    _ => SphereType::Unresolved,
                },
                _ => SphereType::Unresolved,
            };
            return LinkClass::HomotopySphere(kind);
        }
    }
    if link_dim == 9 && hp.betti.is_one() && torsion.is_trivial() {
        return LinkClass::ProductLikeS4xS5;
    }
    match &hp.delta_at_1 {
        Evaluation::Value(v) if !v.is_zero() => LinkClass::RationalHomologySphere { torsion },
        _ => LinkClass::Other {
            betti: hp.betti.clone(),
            torsion,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub suspension: Option<SuspensionForm>,
    pub cone_dim: ConeDimension,
    pub lichnerowicz: LichnerowiczVerdict,
    /// `None` when the polynomial is not in suspension form.
    pub bvc: Option<BvcVerdict>,
    pub classification: LinkClass,
}

impl ObstructionReport {
    pub fn new(p: &InvertiblePolynomial, ws: &WeightSystem, hp: &HomologyProfile) -> Result<Self> {
        let suspension = suspension_form(p, ws);
        let bvc = suspension
            .as_ref()
            .map(|sf| bvc_no_extremal(sf, ws))
            .transpose()?;
        Ok(ObstructionReport {
            cone_dim: cone_dimension(suspension.as_ref(), ws),
            lichnerowicz: lichnerowicz(ws),
            bvc,
            classification: classify(hp, link_dimension(p.nvars())),
            suspension,
        })
    }
}
