//! Exact linear algebra over the rationals.

mod matrix;
mod pfaffian;
pub mod sample;
mod similitude;

use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{invalid, Error, Result};

pub use matrix::RationalMatrix;
pub use pfaffian::{linearized_pfaffian, pf_tilde, pfaffian, pl_block_oracle};
pub use similitude::{classify_similitude, omega, symplectic_adjoint, SimilitudeClass, SimilitudeKind};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"`; the sign lives on the numerator and `q` must be positive.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').or_else(|| num.strip_prefix('+')).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let p = BigInt::from_str(num).map_err(|_| bad())?;
    let q = match den {
        None => BigInt::one(),
        Some(q) if digits(q) => BigInt::from_str(q).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Elementary symmetric functions `e_1..e_n` from power sums `p_1..p_n`
/// through Newton's identities `m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} p_i`.
/// The last entry is the determinant when the `p_i` are traces of powers.
pub fn charpoly_coeffs_from_traces(p: &[Rational]) -> Result<Vec<Rational>> {
    if p.is_empty() {
        return Err(invalid("power-sum sequence is empty"));
    }
    let mut e = vec![Rational::one()];
    for m in 1..=p.len() {
        let mut acc = Rational::zero();
        for i in 1..=m {
            let term = &e[m - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / int(m as i64));
    }
    e.remove(0);
    Ok(e)
}

pub(crate) fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}
