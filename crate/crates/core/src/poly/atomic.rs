//! Splitting an exponent matrix into Fermat, chain and cycle blocks.
//!
//! Conventions for the stored variable order:
//!
//! * chain `x0^a0 + x0*x1^a1 + x1*x2^a2 + ...`: the pure power comes first;
//! * cycle: starts at its smallest variable and walks towards the smaller
//!   neighbour, so `z0^7*z1 + z1^4*z2 + z2^2*z0` is `(z0, z1, z2; 7, 4, 2)`.
//!
//! In every block `exponents[j]` is the exponent of `variables[j]` in the
//! monomial where that variable carries its large power.

use num_bigint::BigInt;
use num_traits::One;

use super::{InvertiblePolynomial, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Fermat,
    Chain,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicBlock {
    pub kind: BlockKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
    /// Matrix rows belonging to the block, aligned with `variables`.
    pub rows: Vec<usize>,
}

impl AtomicBlock {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Determinant of the block's own exponent matrix, up to the sign of the row order.
    pub fn determinant(&self) -> BigInt {
        let prod: BigInt = self.exponents.iter().map(|&a| BigInt::from(a)).product();
        match self.kind {
            BlockKind::Fermat | BlockKind::Chain => prod,
            BlockKind::Cycle => {
                if self.len() % 2 == 1 {
                    prod + 1
                } else {
                    prod - 1
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicDecomposition {
    pub blocks: Vec<AtomicBlock>,
}

impl AtomicDecomposition {
    pub fn determinant_magnitude(&self) -> BigInt {
        self.blocks
            .iter()
            .map(|b| b.determinant())
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_brieskorn_pham(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == BlockKind::Fermat)
    }
}

pub(super) fn decompose(p: &InvertiblePolynomial) -> Result<AtomicDecomposition, PolyError> {
    let n = p.nvars();
    let a = p.matrix();
    for row in &a {
        let support: Vec<u32> = row.iter().copied().filter(|&e| e > 0).collect();
        let ok = match support.len() {
            1 => true,
            2 => support.contains(&1),
            _ => false,
        };
        if !ok {
            return Err(PolyError::NotAtomicSum);
        }
    }

    // connected components of the variable/monomial incidence graph
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut vars = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < vars.len() {
            let v = vars[i];
            for row in a.iter().filter(|r| r[v] > 0) {
                for (u, &e) in row.iter().enumerate() {
                    if e > 0 && comp[u] == usize::MAX {
                        comp[u] = id;
                        vars.push(u);
                    }
                }
            }
            i += 1;
        }
        vars.sort_unstable();
        components.push(vars);
    }

    let mut blocks = Vec::with_capacity(components.len());
    for vars in &components {
        let rows: Vec<usize> = (0..n)
            .filter(|&r| vars.iter().any(|&v| a[r][v] > 0))
            .collect();
        if rows.len() != vars.len() {
            return Err(PolyError::NotAtomicSum);
        }
        let pure: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&r| a[r].iter().filter(|&&e| e > 0).count() == 1)
            .collect();
        let block = match pure.len() {
            0 => cycle_block(&a, vars, &rows)?,
            1 => chain_block(&a, vars.len(), pure[0], &rows)?,
            _ => return Err(PolyError::NotAtomicSum),
        };
        blocks.push(block);
    }
    blocks.sort_by_key(|b| b.variables.iter().copied().min());
    Ok(AtomicDecomposition { blocks })
}

fn other_var(row: &[u32], v: usize) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|&(u, &e)| u != v && e > 0)
        .map(|(u, _)| u)
}

fn chain_block(
    a: &[Vec<u32>],
    len: usize,
    head_row: usize,
    rows: &[usize],
) -> Result<AtomicBlock, PolyError> {
    let head = a[head_row].iter().position(|&e| e > 0).unwrap();
    if a[head_row][head] < 2 {
        return Err(PolyError::NotAtomicSum);
    }
    let mut variables = vec![head];
    let mut exponents = vec![a[head_row][head]];
    let mut block_rows = vec![head_row];
    let mut cur = head;
    while variables.len() < len {
        let mut next = rows
            .iter()
            .copied()
            .filter(|r| !block_rows.contains(r) && a[*r][cur] > 0);
        let r = next.next().ok_or(PolyError::NotAtomicSum)?;
        if next.next().is_some() || a[r][cur] != 1 {
            return Err(PolyError::NotAtomicSum);
        }
        let v = other_var(&a[r], cur).ok_or(PolyError::NotAtomicSum)?;
        variables.push(v);
        exponents.push(a[r][v]);
        block_rows.push(r);
        cur = v;
    }
    let kind = if len == 1 {
        BlockKind::Fermat
    } else {
        BlockKind::Chain
    };
    Ok(AtomicBlock {
        kind,
        variables,
        exponents,
        rows: block_rows,
    })
}

fn cycle_block(a: &[Vec<u32>], vars: &[usize], rows: &[usize]) -> Result<AtomicBlock, PolyError> {
    let len = vars.len();
    let start = vars[0];
    // every variable sits in exactly two monomials of a cycle
    for &v in vars {
        if rows.iter().filter(|&&r| a[r][v] > 0).count() != 2 {
            return Err(PolyError::NotAtomicSum);
        }
    }
    let (variables, links): (Vec<usize>, Vec<usize>) = if len == 2 {
        let other = vars[1];
        let (r0, r1) = (rows[0], rows[1]);
        // position 0 row must carry exponent 1 on the other variable
        let (p0, p1) = if a[r0][other] == 1 && a[r1][start] == 1 {
            (r0, r1)
        } else {
            (r1, r0)
        };
        (vec![start, other], vec![p0, p1])
    } else {
        let neighbours: Vec<usize> = rows
            .iter()
            .filter(|&&r| a[r][start] > 0)
            .map(|&r| other_var(&a[r], start).unwrap())
            .collect();
        let mut order = vec![start, neighbours[0].min(neighbours[1])];
        let mut links = Vec::with_capacity(len);
        loop {
            let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
            let r = *rows
                .iter()
                .find(|&&r| a[r][prev] > 0 && a[r][cur] > 0)
                .unwrap();
            links.push(r);
            if order.len() == len + 1 {
                break;
            }
            let next = rows
                .iter()
                .filter(|&&r| a[r][cur] > 0 && a[r][prev] == 0)
                .map(|&r| other_var(&a[r], cur).unwrap())
                .next()
                .ok_or(PolyError::NotAtomicSum)?;
            order.push(next);
        }
        order.pop();
        if order.len() != len {
            return Err(PolyError::NotAtomicSum);
        }
        (order, links)
    };

    // links[j] joins variables[j] and variables[j+1]
    let nxt = |j: usize| variables[(j + 1) % len];
    let prv = |j: usize| variables[(j + len - 1) % len];
    let forward = (0..len).all(|j| a[links[j]][nxt(j)] == 1);
    let exponents: Vec<u32> = if forward {
        (0..len).map(|j| a[links[j]][variables[j]]).collect()
    } else if (0..len).all(|j| a[links[(j + len - 1) % len]][prv(j)] == 1) {
        (0..len)
            .map(|j| a[links[(j + len - 1) % len]][variables[j]])
            .collect()
    } else {
        return Err(PolyError::NotAtomicSum);
    };
    let block_rows: Vec<usize> = if forward {
        links.clone()
    } else {
        (0..len).map(|j| links[(j + len - 1) % len]).collect()
    };

    if len % 2 == 0 {
        let even_ones = exponents.iter().step_by(2).all(|&e| e == 1);
        let odd_ones = exponents.iter().skip(1).step_by(2).all(|&e| e == 1);
        if even_ones || odd_ones {
            return Err(PolyError::CycleParityViolation(variables));
        }
    }
    Ok(AtomicBlock {
        kind: BlockKind::Cycle,
        variables,
        exponents,
        rows: block_rows,
    })
}
