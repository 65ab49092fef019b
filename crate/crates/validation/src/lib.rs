//! Seeded corpus of random atomic polynomials for the acceptance suite and
//! the property tests.

use linkinv::InvertiblePolynomial;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_1ce5;
pub const CORPUS_SIZE: usize = 500;

/// Block-diagonal matrix of Fermat, chain and cycle blocks with exponents in
/// `2..=max_exp`, then a random relabelling of variables and monomials.
pub fn random_atomic(rng: &mut impl Rng, nvars: usize, max_exp: u32) -> InvertiblePolynomial {
    let mut m = vec![vec![0u32; nvars]; nvars];
    let mut start = 0;
    while start < nvars {
        let left = nvars - start;
        let len = rng.gen_range(1..=left.min(4));
        let cycle = rng.gen_bool(0.5);
        let mut e = || rng.gen_range(2..=max_exp);
        match (len, cycle) {
            (1, _) => m[start][start] = e(),
            (_, false) => {
                for i in 0..len {
                    m[start + i][start + i] = e();
                    if i > 0 {
                        m[start + i][start + i - 1] = 1;
                    }
                }
            }
            _ => {
                for i in 0..len {
                    m[start + i][start + i] = e();
                    m[start + i][start + (i + 1) % len] = 1;
                }
            }
        }
        start += len;
    }
    let mut cols: Vec<usize> = (0..nvars).collect();
    cols.shuffle(rng);
    let mut rows: Vec<usize> = (0..nvars).collect();
    rows.shuffle(rng);
    let shuffled = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
        .collect();
    InvertiblePolynomial::from_matrix(shuffled).expect("atomic blocks are invertible")
}

/// The fixed corpus: 3 to 7 variables, exponents at most 9.
pub fn corpus() -> Vec<InvertiblePolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.gen_range(3..=7);
            random_atomic(&mut rng, n, 9)
        })
        .collect()
}
