//! Seeded samplers for exact test vectors.
//!
//! Nothing here touches global randomness: every sampler takes an explicit
//! generator or seed.

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{int, rational, Rational, RationalMatrix};
use crate::error::{invalid, Error, Result};

const CAYLEY_RETRIES: usize = 16;

/// A small random rational `p/q` with `|p| <= 4`, `1 <= q <= 3`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> RationalMatrix {
    let data = (0..rows * cols).map(|_| random_rational(rng)).collect();
    RationalMatrix::from_vec(rows, cols, data).expect("sized by construction")
}

pub fn random_antisymmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = random_rational(rng);
            m.set(j, i, -x.clone());
            m.set(i, j, x);
        }
    }
    m
}

/// Block diagonal `2n x 2n` matrix with random (not necessarily
/// antisymmetric) `2 x 2` blocks.
pub fn random_block_diagonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RationalMatrix {
    let blocks: Vec<RationalMatrix> = (0..n).map(|_| random_matrix(2, 2, rng)).collect();
    RationalMatrix::direct_sum(&blocks.iter().collect::<Vec<_>>())
}

/// `(I - S)(I + S)^{-1}`; orthogonal with determinant 1 whenever `S` is
/// antisymmetric and `I + S` is invertible.
pub fn cayley_transform(s: &RationalMatrix) -> Result<RationalMatrix> {
    let n = s.rows();
    let id = RationalMatrix::identity(n);
    let plus = id.try_add(s)?;
    let minus = id.try_sub(s)?;
    minus.try_mul(&plus.inverse()?)
}

/// Exact orthogonal matrix from the Cayley transform of a random
/// antisymmetric matrix. Unless `special` is set, the result is flipped
/// into the other component of `O_n` with probability one half.
/// Deterministic per seed.
pub fn sample_orthogonal(n: usize, special: bool, seed: u64) -> Result<RationalMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_orthogonal_with(n, special, &mut rng)
}

pub fn sample_orthogonal_with<R: Rng + ?Sized>(
    n: usize,
    special: bool,
    rng: &mut R,
) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(invalid("orthogonal sampler needs n >= 1"));
    }
    for _ in 0..CAYLEY_RETRIES {
        let s = random_antisymmetric(n, rng);
        let q = match cayley_transform(&s) {
            Ok(q) => q,
            Err(Error::SingularMatrix) => continue,
            Err(e) => return Err(e),
        };
        if !special && rng.gen_bool(0.5) {
            return reflection(n).try_mul(&q);
        }
        return Ok(q);
    }
    Err(Error::SamplerFailure {
        attempts: CAYLEY_RETRIES,
    })
}

/// `diag(-1, 1, ..., 1)`.
pub fn reflection(n: usize) -> RationalMatrix {
    let mut d = vec![Rational::one(); n];
    if n > 0 {
        d[0] = -Rational::one();
    }
    RationalMatrix::diagonal(&d)
}

/// Uniform random signed permutation matrix.
pub fn sample_signed_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RationalMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = RationalMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(i, j, if rng.gen_bool(0.5) { int(1) } else { int(-1) });
    }
    m
}

/// Random nonzero rational scale factor.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let c = random_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}
