//! The Berglund-Hübsch transpose and dual weights.

use num_rational::BigRational;

use crate::arith::ratio;
use crate::poly::InvertiblePolynomial;
use crate::weights::{solve_weights, WeightSystem};
use crate::{Error, Result};

/// Transposes the exponent matrix. Always invertible again since `det A^T = det A`.
pub fn bh_transpose(p: &InvertiblePolynomial) -> InvertiblePolynomial {
    p.transposed()
}

/// Weight system of the transpose.
pub fn dual_weights(p: &InvertiblePolynomial) -> Result<WeightSystem> {
    solve_weights(&bh_transpose(p))
}

/// `z0^a0 + z0*z1^2 + z2^a2 + z2*z3^a3 + z3*z4^2`
pub fn chain_chain_polynomial(a0: u32, a2: u32, a3: u32) -> Result<InvertiblePolynomial> {
    if a0 < 2 || a2 < 2 || a3 < 1 {
        return Err(Error::ParameterViolation(format!(
            "chain-chain exponents ({a0}, {a2}, {a3}) need a0, a2 >= 2 and a3 >= 1"
        )));
    }
    Ok(InvertiblePolynomial::from_matrix(vec![
        vec![a0, 0, 0, 0, 0],
        vec![1, 2, 0, 0, 0],
        vec![0, 0, a2, 0, 0],
        vec![0, 0, 1, a3, 0],
        vec![0, 0, 0, 1, 2],
    ])?)
}

/// Dual weights of the chain-chain polynomial written directly in terms of the
/// base weights:
/// `(w0(d-w2), d(d-w2), w2(2d-2w2-w3), d w3, d(d-w2); 2d(d-w2))`, normalized.
pub fn chain_chain_dual_closed_form(
    a0: u32,
    a2: u32,
    a3: u32,
    base: &WeightSystem,
) -> Result<WeightSystem> {
    if base.nvars() != 5 {
        return Err(Error::PatternMismatch(format!(
            "chain-chain base needs 5 weights, got {}",
            base.nvars()
        )));
    }
    let w: Vec<i128> = base.weights().iter().map(|&x| x as i128).collect();
    let d = base.degree() as i128;
    let (a0, a2, a3) = (a0 as i128, a2 as i128, a3 as i128);
    let rows_hold = a0 * w[0] == d
        && w[0] + 2 * w[1] == d
        && a2 * w[2] == d
        && w[2] + a3 * w[3] == d
        && w[3] + 2 * w[4] == d;
    if !rows_hold {
        return Err(Error::PatternMismatch(
            "weights do not solve the chain-chain polynomial with these exponents".into(),
        ));
    }
    if w[2] >= d {
        return Err(Error::NonPositiveWeight { index: 0 });
    }
    let s = d - w[2];
    let tuple = [
        w[0] * s,
        d * s,
        w[2] * (2 * d - 2 * w[2] - w[3]),
        d * w[3],
        d * s,
    ];
    let q: Vec<BigRational> = tuple.iter().map(|&x| ratio(x, 1)).collect();
    WeightSystem::from_rational(&q, &ratio(2 * d * s, 1))
}
