use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use super::{Rational, RationalMatrix};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilitudeKind {
    GeneralLinear,
    Orthogonal,
    GeneralOrthogonal,
    SpecialOrthogonal,
    Symplectic,
    GeneralSymplectic,
}

impl fmt::Display for SimilitudeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SimilitudeKind::GeneralLinear => "general_linear",
            SimilitudeKind::Orthogonal => "orthogonal",
            SimilitudeKind::GeneralOrthogonal => "general_orthogonal",
            SimilitudeKind::SpecialOrthogonal => "special_orthogonal",
            SimilitudeKind::Symplectic => "symplectic",
            SimilitudeKind::GeneralSymplectic => "general_symplectic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilitudeClass {
    pub kind: SimilitudeKind,
    /// Multiplier `lambda` for the orthogonal and symplectic kinds.
    pub lambda: Option<Rational>,
}

/// The standard symplectic form `[[0, I], [-I, 0]]` of size `2n`.
pub fn omega(two_n: usize) -> Result<RationalMatrix> {
    if two_n % 2 == 1 {
        return Err(invalid(format!("symplectic form needs even dimension, got {two_n}")));
    }
    let n = two_n / 2;
    let mut w = RationalMatrix::zeros(two_n, two_n);
    for i in 0..n {
        w.set(i, n + i, Rational::one());
        w.set(n + i, i, -Rational::one());
    }
    Ok(w)
}

/// `A* = Omega^{-1} A^T Omega`.
pub fn symplectic_adjoint(a: &RationalMatrix) -> Result<RationalMatrix> {
    let w = omega(a.rows())?;
    // Omega^{-1} = -Omega
    let w_inv = -&w;
    w_inv.try_mul(&a.transpose())?.try_mul(&w)
}

/// Every similitude class the matrix belongs to. `general_linear` is always
/// reported; orthogonal kinds come from `A A^t = lambda I`, symplectic kinds
/// from `A A* = lambda I` (even dimension only).
pub fn classify_similitude(a: &RationalMatrix) -> Result<Vec<SimilitudeClass>> {
    let det = a.det()?;
    if det.is_zero() {
        return Err(invalid("similitude classification needs a nonsingular matrix"));
    }
    let mut out = vec![SimilitudeClass {
        kind: SimilitudeKind::GeneralLinear,
        lambda: None,
    }];
    if let Some(lambda) = a.try_mul(&a.transpose())?.as_scalar() {
        let one = lambda.is_one();
        out.push(SimilitudeClass {
            kind: SimilitudeKind::GeneralOrthogonal,
            lambda: Some(lambda.clone()),
        });
        if one {
            out.push(SimilitudeClass {
                kind: SimilitudeKind::Orthogonal,
                lambda: Some(lambda.clone()),
            });
            if det.is_one() {
                out.push(SimilitudeClass {
                    kind: SimilitudeKind::SpecialOrthogonal,
                    lambda: Some(lambda),
                });
            }
        }
    }
    if a.rows().is_multiple_of(2) {
        if let Some(lambda) = a.try_mul(&symplectic_adjoint(a)?)?.as_scalar() {
            let one = lambda.is_one();
            out.push(SimilitudeClass {
                kind: SimilitudeKind::GeneralSymplectic,
                lambda: Some(lambda.clone()),
            });
            if one {
                out.push(SimilitudeClass {
                    kind: SimilitudeKind::Symplectic,
                    lambda: Some(lambda),
                });
            }
        }
    }
    Ok(out)
}
