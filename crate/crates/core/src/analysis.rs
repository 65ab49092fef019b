//! One-call pipeline from a polynomial to its full report.

use num_bigint::BigInt;

use crate::alexander::{
    alexander_divisor, betti_from_divisor, betti_subset_formula, delta_at_1, delta_at_minus1,
    milnor_number, uv, CyclotomicDivisor, Evaluation, UvData,
};
use crate::obstruct::ObstructionReport;
use crate::orlik::{orlik_torsion, TorsionResult};
use crate::poly::{AtomicDecomposition, InvertiblePolynomial};
use crate::weights::{solve_weights, well_formed, WeightSystem};
use crate::{Error, Result};

/// Largest variable count for which the subset formula is also evaluated.
const SUBSET_CHECK_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    /// Middle Betti number of the link.
    pub betti: BigInt,
    pub torsion: TorsionResult,
    pub milnor: BigInt,
    pub delta_at_1: Evaluation,
    pub delta_at_minus1: Evaluation,
}

impl HomologyProfile {
    /// Computes the profile from the weights alone. The Betti number is
    /// computed twice (divisor sum and subset formula) and the Milnor number
    /// is compared with the divisor degree.
    pub fn compute(ws: &WeightSystem) -> Result<(UvData, CyclotomicDivisor, HomologyProfile)> {
        let uvd = uv(ws);
        let dv = alexander_divisor(&uvd)?;
        let betti = betti_from_divisor(&dv)?;
        if uvd.len() <= SUBSET_CHECK_LIMIT {
            let other = betti_subset_formula(&uvd)?;
            if other != betti {
                return Err(Error::ClosedFormMismatch(format!(
                    "Betti number {betti} from the divisor, {other} from the subset formula"
                )));
            }
        }
        let milnor = milnor_number(ws)?;
        if dv.degree() != milnor.clone().into() {
            return Err(Error::ClosedFormMismatch(format!(
                "divisor degree {} differs from the Milnor number {milnor}",
                dv.degree()
            )));
        }
        let profile = HomologyProfile {
            betti,
            torsion: orlik_torsion(&uvd)?,
            milnor,
            delta_at_1: delta_at_1(&dv)?,
            delta_at_minus1: delta_at_minus1(&dv)?,
        };
        Ok((uvd, dv, profile))
    }
}

#[derive(Debug, Clone)]
pub struct LinkAnalysis {
    pub polynomial: InvertiblePolynomial,
    /// `None` when the matrix is invertible but not a sum of atomic blocks;
    /// the torsion result is then only conjectural.
    pub decomposition: Option<AtomicDecomposition>,
    pub weights: WeightSystem,
    pub well_formed: bool,
    pub uv: UvData,
    pub divisor: CyclotomicDivisor,
    pub homology: HomologyProfile,
    pub obstruction: ObstructionReport,
}

impl LinkAnalysis {
    pub fn torsion_is_proven(&self) -> bool {
        self.decomposition.is_some()
    }
}

pub fn analyze(p: &InvertiblePolynomial) -> Result<LinkAnalysis> {
    let weights = solve_weights(p)?;
    analyze_with_weights(p, weights)
}

/// As [`analyze`], for weights already known to solve `p`.
pub fn analyze_with_weights(
    p: &InvertiblePolynomial,
    weights: WeightSystem,
) -> Result<LinkAnalysis> {
    weights.check_against(p)?;
    let decomposition = p.decompose().ok();
    let (uvd, divisor, homology) = HomologyProfile::compute(&weights)?;
    let obstruction = ObstructionReport::new(p, &weights, &homology)?;
    Ok(LinkAnalysis {
        polynomial: p.clone(),
        decomposition,
        well_formed: well_formed(&weights),
        weights,
        uv: uvd,
        divisor,
        homology,
        obstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruct::{ConeDimension, LinkClass, SphereType};
    use crate::transpose::bh_transpose;

    #[test]
    fn chain_cycle_dual_pipeline() {
        let f =
            InvertiblePolynomial::parse("z0^3 + z0*z1^2 + z4*z2^10 + z2*z3^5 + z3*z4^14").unwrap();
        let a = analyze(&bh_transpose(&f)).unwrap();
        assert!(!a.well_formed);
        assert_eq!(a.homology.betti, BigInt::from(0));
        assert_eq!(a.homology.torsion.nontrivial(), vec![BigInt::from(701)]);
        assert_eq!(a.homology.delta_at_1, Evaluation::Value(BigInt::from(701)));

        let g = InvertiblePolynomial::parse("z0^6 + z1^2 + z3*z2^10 + z4*z3^5 + z2*z4^14 + z5^2")
            .unwrap();
        let a = analyze(&g).unwrap();
        assert_eq!(a.weights.weights(), &[701, 2103, 342, 786, 276, 2103]);
        assert_eq!(
            a.obstruction.classification,
            LinkClass::HomotopySphere(SphereType::Kervaire)
        );
        assert_eq!(
            a.homology.delta_at_minus1,
            Evaluation::Value(BigInt::from(701))
        );
        assert_eq!(a.obstruction.cone_dim, ConeDimension::Known(2));
        assert_eq!(a.obstruction.bvc.unwrap().lhs_doubled, 1450);
    }

    #[test]
    fn weights_must_match() {
        let p = InvertiblePolynomial::parse("x^2 + y^3").unwrap();
        let w = WeightSystem::new(vec![1, 1], 2).unwrap();
        assert!(matches!(
            analyze_with_weights(&p, w),
            Err(Error::InvalidWeights(_))
        ));
    }
}
