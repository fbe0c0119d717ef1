use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest symmetric group enumerated (9! = 362880 permutations).
pub const MAX_PERM_SIZE: usize = 9;

/// A permutation of `{0, .., m-1}`; printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images })
    }

    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m).collect(),
        }
    }

    /// The `k`-th permutation of `m` points in lexicographic order.
    pub fn nth(m: usize, mut k: usize) -> Self {
        let mut pool: Vec<usize> = (0..m).collect();
        let mut images = Vec::with_capacity(m);
        let mut f = factorial(m);
        for left in (1..=m).rev() {
            f /= left;
            images.push(pool.remove(k / f));
            k %= f;
        }
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Cycles `(i, σ(i), σ²(i), ...)`, each starting from its least point,
    /// ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn sign(&self) -> i64 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            f.write_str("(")?;
            for (k, i) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

pub(crate) fn check_perm_budget(m: usize) -> Result<()> {
    if m == 0 {
        return Err(invalid("permutation size must be at least 1"));
    }
    if m > MAX_PERM_SIZE {
        return Err(Error::Budget(format!(
            "{m}! permutations exceed the ceiling of {MAX_PERM_SIZE}! terms"
        )));
    }
    Ok(())
}

/// All `m!` permutations in lexicographic order, with sign and cycles.
pub fn perms_with_sign(
    m: usize,
) -> Result<impl Iterator<Item = (Perm, i64, Vec<Vec<usize>>)>> {
    check_perm_budget(m)?;
    Ok((0..factorial(m)).map(move |k| {
        let p = Perm::nth(m, k);
        let cycles = p.cycles();
        let sign = p.sign();
        (p, sign, cycles)
    }))
}
