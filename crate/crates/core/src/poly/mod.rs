//! Invertible polynomials, stored as their square exponent matrix.
//!
//! Row `i` of the matrix is the exponent vector of the `i`-th monomial and
//! column `j` belongs to variable `j`. Coefficients are always 1; only the
//! exponents matter for everything computed in this crate.

mod atomic;
mod parse;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith;

pub use atomic::{AtomicBlock, AtomicDecomposition, BlockKind};

/// Largest exponent accepted anywhere in a polynomial.
pub const MAX_EXPONENT: u32 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient {0} is not allowed; only implicit coefficient 1 is supported")]
    CoefficientNotOne(String),
    #[error("{monomials} monomials in {variables} variables; an invertible polynomial needs a square exponent matrix")]
    NotSquare { monomials: usize, variables: usize },
    #[error("exponent matrix is singular")]
    ZeroDeterminant,
    #[error("exponent {0} exceeds the supported maximum {MAX_EXPONENT}")]
    ExponentTooLarge(u64),
    #[error("monomial {0} is constant")]
    ConstantMonomial(usize),
    #[error("variable {0} does not occur in any monomial")]
    UnusedVariable(usize),
    #[error("expected {expected} variable names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("polynomial has no monomials")]
    Empty,
    #[error("exponent matrix is not a Thom-Sebastiani sum of Fermat, chain and cycle blocks")]
    NotAtomicSum,
    #[error("even-length cycle with every other exponent equal to 1 (variables {0:?})")]
    CycleParityViolation(Vec<usize>),
}

/// One row of the exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Indices of the variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl Deref for Monomial {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// A sum of exactly `n` monomials in `n` variables with nonsingular exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    monomials: Vec<Monomial>,
    var_names: Vec<String>,
}

impl InvertiblePolynomial {
    /// Builds a polynomial from its exponent matrix, naming the variables `z0..zN`.
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<Self, PolyError> {
        let names = (0..matrix.len()).map(|i| format!("z{i}")).collect();
        Self::with_names(matrix, names)
    }

    pub fn with_names(matrix: Vec<Vec<u32>>, var_names: Vec<String>) -> Result<Self, PolyError> {
        let n = matrix.len();
        if n == 0 {
            return Err(PolyError::Empty);
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(PolyError::NotSquare {
                monomials: n,
                variables: row.len(),
            });
        }
        if var_names.len() != n {
            return Err(PolyError::NameCount {
                expected: n,
                got: var_names.len(),
            });
        }
        if let Some(&e) = matrix.iter().flatten().find(|&&e| e > MAX_EXPONENT) {
            return Err(PolyError::ExponentTooLarge(e as u64));
        }
        if let Some(i) = matrix.iter().position(|r| r.iter().all(|&e| e == 0)) {
            return Err(PolyError::ConstantMonomial(i));
        }
        if let Some(j) = (0..n).find(|&j| matrix.iter().all(|r| r[j] == 0)) {
            return Err(PolyError::UnusedVariable(j));
        }
        if arith::determinant(&matrix).is_zero() {
            return Err(PolyError::ZeroDeterminant);
        }
        Ok(InvertiblePolynomial {
            monomials: matrix.into_iter().map(Monomial).collect(),
            var_names,
        })
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        parse::parse(text)
    }

    pub fn nvars(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn entry(&self, monomial: usize, var: usize) -> u32 {
        self.monomials[monomial][var]
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.monomials.iter().map(|m| m.0.clone()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        arith::determinant(&self.matrix())
    }

    pub fn decompose(&self) -> Result<AtomicDecomposition, PolyError> {
        atomic::decompose(self)
    }

    /// Same polynomial plus `count` new variables, each entering as a pure square.
    pub fn with_squares(&self, count: usize) -> InvertiblePolynomial {
        let n = self.nvars();
        let m = n + count;
        let mut matrix: Vec<Vec<u32>> = self
            .monomials
            .iter()
            .map(|r| {
                let mut row = r.0.clone();
                row.resize(m, 0);
                row
            })
            .collect();
        let mut names = self.var_names.clone();
        for j in n..m {
            let mut row = vec![0; m];
            row[j] = 2;
            matrix.push(row);
            names.push(fresh_name(&names, j));
        }
        InvertiblePolynomial {
            monomials: matrix.into_iter().map(Monomial).collect(),
            var_names: names,
        }
    }

    /// The Berglund-Hübsch transpose: same variables, transposed exponent matrix.
    pub fn transposed(&self) -> InvertiblePolynomial {
        let n = self.nvars();
        let monomials = (0..n)
            .map(|j| Monomial((0..n).map(|i| self.monomials[i][j]).collect()))
            .collect();
        InvertiblePolynomial {
            monomials,
            var_names: self.var_names.clone(),
        }
    }
}

fn fresh_name(existing: &[String], index: usize) -> String {
    let mut candidate = format!("z{index}");
    let mut k = index;
    while existing.contains(&candidate) {
        k += 1;
        candidate = format!("z{k}");
    }
    candidate
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            for (j, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.var_names[j])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for InvertiblePolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            InvertiblePolynomial::from_matrix(vec![vec![1, 2], vec![2, 4]]),
            Err(PolyError::ZeroDeterminant)
        );
        assert!(matches!(
            InvertiblePolynomial::from_matrix(vec![vec![2, 0], vec![0]]),
            Err(PolyError::NotSquare { .. })
        ));
        assert_eq!(
            InvertiblePolynomial::from_matrix(vec![vec![2, 0], vec![0, 0]]),
            Err(PolyError::ConstantMonomial(1))
        );
        assert_eq!(
            InvertiblePolynomial::from_matrix(vec![vec![MAX_EXPONENT + 1]]),
            Err(PolyError::ExponentTooLarge(MAX_EXPONENT as u64 + 1))
        );
    }

    #[test]
    fn prints_canonical_form() {
        let p = InvertiblePolynomial::from_matrix(vec![vec![2]]).unwrap();
        assert_eq!(p.to_string(), "z0^2");
        let p = InvertiblePolynomial::from_matrix(vec![
            vec![7, 1, 0, 0],
            vec![0, 4, 1, 0],
            vec![1, 0, 2, 0],
            vec![0, 0, 0, 3],
        ])
        .unwrap();
        assert_eq!(p.to_string(), "z0^7*z1 + z1^4*z2 + z0*z2^2 + z3^3");
        assert_eq!(
            p.transposed().to_string(),
            "z0^7*z2 + z0*z1^4 + z1*z2^2 + z3^3"
        );
    }

    #[test]
    fn squares_get_fresh_names() {
        let p = InvertiblePolynomial::parse("x^3 + y^2").unwrap();
        let q = p.with_squares(2);
        assert_eq!(q.to_string(), "x^3 + y^2 + z2^2 + z3^2");
    }
}
