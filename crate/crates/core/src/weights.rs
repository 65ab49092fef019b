//! Weight systems `A·w = d·1` and the structure read off from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{self, gcd_all};
use crate::poly::InvertiblePolynomial;
use crate::{Error, Result};

/// Primitive positive weights `w` and degree `d` with `gcd(w, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightSystem {
    /// Validates positivity and divides out the common factor of `(w, d)`.
    pub fn new(weights: Vec<u64>, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight { index });
        }
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights".into()));
        }
        let g = gcd_all(weights.iter().copied().chain([degree]));
        Ok(WeightSystem {
            weights: weights.into_iter().map(|w| w / g).collect(),
            degree: degree / g,
        })
    }

    /// Normalizes a rational weight tuple `(w_0, .., w_n; d)` given up to scale.
    pub fn from_rational(weights: &[BigRational], degree: &BigRational) -> Result<Self> {
        let mut all = weights.to_vec();
        all.push(degree.clone());
        let ints = arith::primitive_integer_vector(&all);
        let mut out = Vec::with_capacity(ints.len());
        for (index, x) in ints.iter().enumerate() {
            if !x.is_positive() {
                return Err(if index < weights.len() {
                    Error::NonPositiveWeight { index }
                } else {
                    Error::InvalidWeights("degree must be positive".into())
                });
            }
            out.push(to_u64(x)?);
        }
        let degree = out.pop().unwrap();
        WeightSystem::new(out, degree)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_sum(&self) -> u128 {
        self.weights.iter().map(|&w| w as u128).sum()
    }

    /// `I = |w| - d`.
    pub fn index(&self) -> i128 {
        self.weight_sum() as i128 - self.degree as i128
    }

    pub fn min_weight(&self) -> u64 {
        *self.weights.iter().min().unwrap()
    }

    /// Checks `A·w = d·1` row by row.
    pub fn check_against(&self, p: &InvertiblePolynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} variables",
                self.nvars(),
                p.nvars()
            )));
        }
        for (i, m) in p.monomials().iter().enumerate() {
            let s: u128 = m
                .iter()
                .zip(&self.weights)
                .map(|(&e, &w)| e as u128 * w as u128)
                .sum();
            if s != self.degree as u128 {
                return Err(Error::InvalidWeights(format!(
                    "monomial {i} has weighted degree {s}, expected {}",
                    self.degree
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(x.to_string()))
}

/// Unique primitive positive solution of `A·w = d·1`.
pub fn solve_weights(p: &InvertiblePolynomial) -> Result<WeightSystem> {
    if let Some((nums, det)) = arith::cramer_ones_i128(&p.matrix()) {
        if det == 0 {
            return Err(crate::PolyError::ZeroDeterminant.into());
        }
        let signed: Vec<i128> = nums.iter().map(|&x| x * det.signum()).collect();
        if let Some(index) = signed.iter().position(|&x| x <= 0) {
            return Err(Error::NonPositiveWeight { index });
        }
        let g = signed.iter().fold(det.abs(), |acc, &x| acc.gcd(&x));
        if let Some(ws) = signed
            .iter()
            .map(|&x| u64::try_from(x / g).ok())
            .collect::<Option<Vec<u64>>>()
            .zip(u64::try_from(det.abs() / g).ok())
        {
            return WeightSystem::new(ws.0, ws.1);
        }
    }
    let n = p.nvars();
    let a: Vec<Vec<BigRational>> = p
        .monomials()
        .iter()
        .map(|m| m.iter().map(|&e| arith::ratio(e, 1)).collect())
        .collect();
    let ones = vec![BigRational::one(); n];
    let x = arith::solve_rational(&a, &ones).ok_or(crate::PolyError::ZeroDeterminant)?;
    if let Some(index) = x.iter().position(|q| !q.is_positive()) {
        return Err(Error::NonPositiveWeight { index });
    }
    WeightSystem::from_rational(&x, &BigRational::one())
}

/// True iff every `n`-element subset of the weights has gcd 1.
pub fn well_formed(ws: &WeightSystem) -> bool {
    let w = ws.weights();
    if w.len() == 1 {
        return true;
    }
    (0..w.len()).all(|i| {
        let rest = w
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x);
        gcd_all(rest) == 1
    })
}

/// `f = f'(core) + sum of squares of the quad variables`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionForm {
    pub core_indices: Vec<usize>,
    pub quad_indices: Vec<usize>,
    /// `|core| - 1`
    pub k: usize,
    /// total variable count minus one
    pub n: usize,
}

/// Splits off pure-square variables. `None` means the polynomial is not in
/// suspension form: no core, fewer than two squares, or a core weight with
/// `2w >= d`.
pub fn suspension_form(p: &InvertiblePolynomial, ws: &WeightSystem) -> Option<SuspensionForm> {
    let nv = p.nvars();
    let is_quad = |j: usize| {
        let rows: Vec<usize> = (0..nv).filter(|&r| p.entry(r, j) > 0).collect();
        rows.len() == 1 && {
            let m = &p.monomials()[rows[0]];
            m[j] == 2 && m.support().count() == 1
        }
    };
    let (quad, core): (Vec<usize>, Vec<usize>) = (0..nv).partition(|&j| is_quad(j));
    if core.is_empty() || quad.len() < 2 {
        return None;
    }
    let d = ws.degree();
    if core.iter().any(|&i| 2 * ws.weights()[i] >= d) {
        return None;
    }
    Some(SuspensionForm {
        k: core.len() - 1,
        n: nv - 1,
        core_indices: core,
        quad_indices: quad,
    })
}

/// Which two of the five weights carry the factor `m3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitPattern {
    /// `(m2 v0, m2 v1, m2 v2, m3 v3, m3 v4)`
    M3OnLastTwo,
    /// `(m3 v0, m3 v1, m2 v2, m2 v3, m2 v4)`
    M3OnFirstTwo,
    /// Try both, last-two first.
    Auto,
}

impl SplitPattern {
    pub fn m3_indices(self) -> Option<[usize; 2]> {
        match self {
            SplitPattern::M3OnLastTwo => Some([3, 4]),
            SplitPattern::M3OnFirstTwo => Some([0, 1]),
            SplitPattern::Auto => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2M3Split {
    pub m2: u64,
    pub m3: u64,
    /// `w_i = m v_i` with `m = m3` on the pair and `m2` on the triple.
    pub v: Vec<u64>,
    pub pattern: SplitPattern,
}

impl M2M3Split {
    pub fn pair(&self) -> [usize; 2] {
        self.pattern.m3_indices().expect("resolved pattern")
    }

    pub fn triple(&self) -> [usize; 3] {
        let pair = self.pair();
        let mut t = [0; 3];
        let mut k = 0;
        for i in 0..5 {
            if !pair.contains(&i) {
                t[k] = i;
                k += 1;
            }
        }
        t
    }

    /// `u_i = d / gcd(d, w_i)`: `m2` on the pair, `m3` on the triple.
    pub fn u(&self) -> Vec<u64> {
        let pair = self.pair();
        (0..5)
            .map(|i| if pair.contains(&i) { self.m2 } else { self.m3 })
            .collect()
    }
}

/// Factors `d = m2·m3` according to `pattern`. `Ok(None)` means the weights
/// do not have the requested shape.
pub fn m2m3_split(ws: &WeightSystem, pattern: SplitPattern) -> Result<Option<M2M3Split>> {
    if ws.nvars() != 5 {
        return Err(Error::PatternMismatch(format!(
            "m2/m3 splitting needs 5 weights, got {}",
            ws.nvars()
        )));
    }
    let Some(pair) = pattern.m3_indices() else {
        let mut first_err = None;
        for p in [SplitPattern::M3OnLastTwo, SplitPattern::M3OnFirstTwo] {
            match m2m3_split(ws, p) {
                Ok(Some(s)) => return Ok(Some(s)),
                Ok(None) => {}
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        return first_err.map_or(Ok(None), Err);
    };
    let d = ws.degree();
    let w = ws.weights();
    let m3 = d.gcd(&w[pair[0]]);
    let m2 = d / m3;
    if m2.gcd(&m3) != 1 {
        return Err(Error::NonCoprime { m2, m3 });
    }
    let mut v = Vec::with_capacity(5);
    for (i, &wi) in w.iter().enumerate() {
        let m = if pair.contains(&i) { m3 } else { m2 };
        if d.gcd(&wi) != m {
            return Ok(None);
        }
        v.push(wi / m);
    }
    Ok(Some(M2M3Split { m2, m3, v, pattern }))
}

/// At most one weight with `2 w_i >= d`.
pub fn one_dim_cone_test(ws: &WeightSystem) -> bool {
    let d = ws.degree();
    ws.weights().iter().filter(|&&w| 2 * w >= d).count() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[u64], d: u64) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    fn solve(text: &str) -> WeightSystem {
        solve_weights(&InvertiblePolynomial::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn solves_small_systems() {
        assert_eq!(
            solve("z0^7*z1 + z1^4*z2 + z2^2*z0 + z3^3"),
            ws(&[7, 8, 25, 19], 57)
        );
        assert_eq!(solve("x^2 + y^2"), ws(&[1, 1], 2));
        let w = solve("z0^3 + z0*z1^2 + z4*z2^10 + z2*z3^5 + z3*z4^14");
        assert_eq!(w, ws(&[701, 701, 198, 381, 123], 2103));
        assert_eq!(w.index(), 1);
    }

    #[test]
    fn negative_weights_are_rejected() {
        let p = InvertiblePolynomial::parse("x^3*y + y^4").unwrap();
        assert!(solve_weights(&p).is_ok());
        let p = InvertiblePolynomial::parse("x*y^3 + x^2").unwrap();
        assert!(solve_weights(&p).is_ok());
        let p = InvertiblePolynomial::parse("x^3*y^3 + y").unwrap();
        assert_eq!(
            solve_weights(&p),
            Err(Error::NonPositiveWeight { index: 0 })
        );
    }

    #[test]
    fn normalization_is_scale_invariant() {
        assert_eq!(ws(&[14, 16, 50, 38], 114), ws(&[7, 8, 25, 19], 57));
        assert!(WeightSystem::new(vec![1, 0], 2).is_err());
    }

    #[test]
    fn well_formedness() {
        assert!(well_formed(&ws(&[7, 8, 25, 19], 57)));
        assert!(!well_formed(&ws(&[701, 2103, 342, 786, 276], 4206)));
        assert!(well_formed(&ws(&[1, 1], 2)));
    }

    #[test]
    fn suspension_forms() {
        let p = InvertiblePolynomial::parse("z0^6 + z1^2 + z3*z2^10 + z4*z3^5 + z2*z4^14 + z5^2")
            .unwrap();
        let w = solve_weights(&p).unwrap();
        let sf = suspension_form(&p, &w).unwrap();
        assert_eq!((sf.k, sf.n), (3, 5));
        assert_eq!(sf.quad_indices, vec![1, 5]);

        let p = InvertiblePolynomial::parse("z0^3 + z1^22 + z2^2 + z3^26 + z4^2").unwrap();
        let w = solve_weights(&p).unwrap();
        let sf = suspension_form(&p, &w).unwrap();
        assert_eq!((sf.k, sf.n), (2, 4));

        let p = InvertiblePolynomial::parse("x^3 + y^3").unwrap();
        assert!(suspension_form(&p, &solve_weights(&p).unwrap()).is_none());
    }

    #[test]
    fn splits() {
        let s = m2m3_split(&ws(&[701, 701, 198, 381, 123], 2103), SplitPattern::Auto)
            .unwrap()
            .unwrap();
        assert_eq!((s.m2, s.m3), (3, 701));
        assert_eq!(s.pattern, SplitPattern::M3OnFirstTwo);
        assert_eq!(s.v, vec![1, 1, 66, 127, 41]);
        assert_eq!(s.u(), vec![3, 3, 701, 701, 701]);

        let s = m2m3_split(
            &ws(&[3532, 7064, 5355, 115, 1595], 17660),
            SplitPattern::M3OnFirstTwo,
        )
        .unwrap()
        .unwrap();
        assert_eq!((s.m2, s.m3), (5, 3532));

        // d = 12 = 4·3 with gcd(d, w0) = 6 gives m2 = 2, m3 = 6
        assert_eq!(
            m2m3_split(&ws(&[6, 6, 1, 1, 1], 12), SplitPattern::M3OnFirstTwo),
            Err(Error::NonCoprime { m2: 2, m3: 6 })
        );
        assert_eq!(
            m2m3_split(&ws(&[2, 3, 1, 1, 1], 6), SplitPattern::M3OnFirstTwo),
            Ok(None)
        );
    }

    #[test]
    fn cone_test() {
        assert!(one_dim_cone_test(&ws(&[7, 8, 25, 19], 57)));
        assert!(!one_dim_cone_test(&ws(
            &[701, 2103, 342, 786, 276, 2103],
            4206
        )));
        assert!(!one_dim_cone_test(&ws(&[1, 1], 2)));
    }
}
