//! Pfaffians and their polarization.

use std::collections::HashMap;

use itertools::Itertools;
use num::{One, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{invalid, Result};

const MAX_PFAFFIAN_DIM: usize = 64;

/// Pfaffian of an even-dimensional antisymmetric matrix, by first-row
/// expansion memoized on the set of surviving indices. `pf` of the empty
/// matrix is 1.
pub fn pfaffian(w: &RationalMatrix) -> Result<Rational> {
    if !w.is_square() {
        return Err(invalid(format!(
            "pfaffian needs a square matrix, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    let n = w.rows();
    if n % 2 == 1 {
        return Err(invalid(format!("pfaffian needs even dimension, got {n}")));
    }
    if !w.is_antisymmetric() {
        return Err(invalid("pfaffian needs an antisymmetric matrix (w^t = -w)"));
    }
    if n > MAX_PFAFFIAN_DIM {
        return Err(invalid(format!("pfaffian dimension {n} exceeds {MAX_PFAFFIAN_DIM}")));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(pf_rec(w, full, &mut memo))
}

fn pf_rec(w: &RationalMatrix, mask: u64, memo: &mut HashMap<u64, Rational>) -> Rational {
    if mask == 0 {
        return Rational::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << i);
    let mut acc = Rational::zero();
    let mut bits = rest;
    let mut r = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        r += 1;
        let wij = w.get(i, j);
        if wij.is_zero() {
            continue;
        }
        let sub = pf_rec(w, rest & !(1u64 << j), memo);
        if sub.is_zero() {
            continue;
        }
        // the r-th surviving index sits at position r + 1 of the current row
        if r % 2 == 1 {
            acc += wij * sub;
        } else {
            acc -= wij * sub;
        }
    }
    memo.insert(mask, acc.clone());
    acc
}

/// `pf(W - W^t)`.
pub fn pf_tilde(w: &RationalMatrix) -> Result<Rational> {
    if !w.is_square() || w.rows() % 2 == 1 {
        return Err(invalid(format!(
            "pf_tilde needs an even-dimensional square matrix, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    pfaffian(&w.antisymmetric_part()?)
}

fn check_pl_inputs(cs: &[RationalMatrix]) -> Result<usize> {
    let n = cs.len();
    if n == 0 {
        return Err(invalid("linearized pfaffian needs at least one argument"));
    }
    if let Some((k, c)) = cs
        .iter()
        .enumerate()
        .find(|(_, c)| c.rows() != 2 * n || c.cols() != 2 * n)
    {
        return Err(invalid(format!(
            "argument {} is {}x{}, expected {}x{} for {n} arguments",
            k + 1,
            c.rows(),
            c.cols(),
            2 * n,
            2 * n
        )));
    }
    Ok(n)
}

/// Coefficient of `t_1 ... t_n` in `pf(sum_i t_i (C_i - C_i^t))`, computed by
/// inclusion-exclusion over subsets of the arguments.
pub fn linearized_pfaffian(cs: &[RationalMatrix]) -> Result<Rational> {
    let n = check_pl_inputs(cs)?;
    let parts = cs
        .iter()
        .map(RationalMatrix::antisymmetric_part)
        .collect::<Result<Vec<_>>>()?;
    // multilinear in the arguments
    if parts.iter().any(RationalMatrix::is_zero) {
        return Ok(Rational::zero());
    }
    let dim = 2 * n;
    let mut total = Rational::zero();
    for subset in 1u32..(1 << n) {
        let mut sum = RationalMatrix::zeros(dim, dim);
        for (i, k) in parts.iter().enumerate() {
            if subset & (1 << i) != 0 {
                sum = &sum + k;
            }
        }
        let pf = pfaffian(&sum)?;
        if (n - subset.count_ones() as usize).is_multiple_of(2) {
            total += pf;
        } else {
            total -= pf;
        }
    }
    Ok(total)
}

/// The block formula `sum_{sigma in S_n} prod_i pf(C_{sigma(i)}^{(i)} - (C_{sigma(i)}^{(i)})^t)`
/// for inputs that are block diagonal with `n` blocks of size 2.
pub fn pl_block_oracle(cs: &[RationalMatrix]) -> Result<Rational> {
    let n = check_pl_inputs(cs)?;
    for (k, c) in cs.iter().enumerate() {
        for i in 0..2 * n {
            for j in 0..2 * n {
                if i / 2 != j / 2 && !c.get(i, j).is_zero() {
                    return Err(invalid(format!(
                        "argument {} is not block diagonal with 2x2 blocks (entry ({i}, {j}))",
                        k + 1
                    )));
                }
            }
        }
    }
    // pf of a 2x2 antisymmetric [[0, a], [-a, 0]] is a
    let block_pf = |c: &RationalMatrix, block: usize| {
        let (r, s) = (2 * block, 2 * block + 1);
        c.get(r, s) - c.get(s, r)
    };
    let table: Vec<Vec<Rational>> = (0..n)
        .map(|block| cs.iter().map(|c| block_pf(c, block)).collect())
        .collect();
    let mut total = Rational::zero();
    for sigma in (0..n).permutations(n) {
        let mut prod = Rational::one();
        for (block, &arg) in sigma.iter().enumerate() {
            prod *= &table[block][arg];
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::{int, sample};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]])
    }

    /// Sum over perfect matchings, an independent oracle for small sizes.
    fn matching_pf(w: &RationalMatrix) -> Rational {
        fn go(w: &RationalMatrix, idx: &[usize]) -> Rational {
            if idx.is_empty() {
                return Rational::one();
            }
            let first = idx[0];
            let mut total = Rational::zero();
            for k in 1..idx.len() {
                let rest: Vec<usize> = idx[1..]
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != k - 1)
                    .map(|(_, &x)| x)
                    .collect();
                let term = w.get(first, idx[k]) * go(w, &rest);
                if k % 2 == 1 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        go(w, &(0..w.rows()).collect::<Vec<_>>())
    }

    #[test]
    fn base_values() {
        let c = int(7);
        let w = RationalMatrix::from_rows(vec![vec![int(0), c.clone()], vec![-c.clone(), int(0)]])
            .unwrap();
        assert_eq!(pfaffian(&w).unwrap(), c);
        assert_eq!(pfaffian(&RationalMatrix::zeros(0, 0)).unwrap(), int(1));
        assert_eq!(pf_tilde(&a()).unwrap(), int(2));
        assert_eq!(pf_tilde(&RationalMatrix::identity(2)).unwrap(), int(0));
        assert_eq!(pf_tilde(&RationalMatrix::identity(6)).unwrap(), int(0));
        let sym = RationalMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 5, 6, 7], &[3, 6, 8, 9], &[4, 7, 9, 1]]);
        assert_eq!(pf_tilde(&sym).unwrap(), int(0));
    }

    #[test]
    fn precondition_errors() {
        assert!(pfaffian(&RationalMatrix::identity(2)).is_err());
        assert!(pfaffian(&RationalMatrix::zeros(3, 3)).is_err());
        assert!(pf_tilde(&RationalMatrix::identity(3)).is_err());
        assert!(linearized_pfaffian(&[RationalMatrix::identity(4)]).is_err());
        let not_block = RationalMatrix::from_i64(&[&[1, 1, 1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(pl_block_oracle(&[not_block.clone(), not_block]).is_err());
    }

    #[test]
    fn expansion_matches_matching_sum_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 4, 6, 8] {
            for _ in 0..5 {
                let w = sample::random_antisymmetric(n, &mut rng);
                let pf = pfaffian(&w).unwrap();
                assert_eq!(pf, matching_pf(&w));
                assert_eq!(&pf * &pf, w.det().unwrap());
            }
        }
    }

    #[test]
    fn rho6_witness_value() {
        let i2 = RationalMatrix::identity(2);
        let g10 = RationalMatrix::direct_sum(&[&a(), &a(), &i2]);
        let g01 = RationalMatrix::direct_sum(&[&i2, &a(), &a()]);
        let args = [g10, g01.clone(), g01];
        assert_eq!(linearized_pfaffian(&args).unwrap(), int(16));
        assert_eq!(pl_block_oracle(&args).unwrap(), int(16));
        let ident = vec![RationalMatrix::identity(6); 3];
        assert_eq!(pl_block_oracle(&ident).unwrap(), int(0));
    }

    #[test]
    fn diagonal_argument_is_n_factorial_pf_tilde() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 2..=4usize {
            let c = sample::random_matrix(2 * n, 2 * n, &mut rng);
            let fact: i64 = (1..=n as i64).product();
            let pl = linearized_pfaffian(&vec![c.clone(); n]).unwrap();
            assert_eq!(pl, int(fact) * pf_tilde(&c).unwrap());
        }
    }

    #[test]
    fn block_oracle_agrees_on_random_block_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let args: Vec<RationalMatrix> = (0..3)
                .map(|_| sample::random_block_diagonal(3, &mut rng))
                .collect();
            assert_eq!(
                linearized_pfaffian(&args).unwrap(),
                pl_block_oracle(&args).unwrap()
            );
        }
    }
}
