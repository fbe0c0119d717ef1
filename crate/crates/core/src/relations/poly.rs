//! Integer-coefficient polynomials in trace symbols.
//!
//! A term is stored under a compact byte key: every factor word is written as
//! one byte per letter, `(var - 1) * 2 + flag + 1`, followed by a `0`
//! separator; the factors are sorted, then come the section marker
//! [`SECTION`], one `l`-exponent byte per variable and the power of the
//! constant `n`. Keys compare bytewise, which fixes the print order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{int, Rational, RationalMatrix};
use crate::words::{eval_tword, GLetter, GWord, LExponent, Letter, TWord};

pub(crate) const SECTION: u8 = 0xFF;
/// Largest variable index a key can hold.
pub const MAX_VAR: u32 = 127;

/// `R` has the trace symbols `T_M`; `S` has `U_M` and `l_M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ring {
    R,
    S,
}

/// One decoded term. In the `R` ring only `t_factors` is populated; in the
/// `S` ring `u_factors` and `l_factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: i64,
    pub u_factors: Vec<GWord>,
    pub l_factor: LExponent,
    pub t_factors: Vec<TWord>,
    pub const_power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPolynomial {
    ring: Ring,
    arity: usize,
    /// The value substituted for `T(1)` / `U_1`.
    n: u32,
    terms: BTreeMap<Box<[u8]>, i64>,
}

pub(crate) fn letter_byte(var: u32, flag: bool) -> u8 {
    debug_assert!((1..=MAX_VAR).contains(&var));
    ((var - 1) * 2 + flag as u32 + 1) as u8
}

fn byte_letter(b: u8) -> (u32, bool) {
    let x = b as u32 - 1;
    (x / 2 + 1, x % 2 == 1)
}

/// Builds term keys; factor words are pushed already canonical.
#[derive(Debug, Default, Clone)]
pub(crate) struct KeyBuilder {
    factors: Vec<Vec<u8>>,
    l: Vec<u32>,
    const_power: u32,
}

impl KeyBuilder {
    pub fn push_tword(&mut self, w: &TWord) {
        self.factors
            .push(w.letters().iter().map(|l| letter_byte(l.var, l.transposed)).collect());
    }

    pub fn push_gword(&mut self, w: &GWord) {
        self.factors
            .push(w.letters().iter().map(|l| letter_byte(l.var, l.inverse)).collect());
    }

    pub fn add_l(&mut self, e: &LExponent) {
        for (i, &c) in e.counts().iter().enumerate() {
            if self.l.len() <= i {
                self.l.resize(i + 1, 0);
            }
            self.l[i] += c;
        }
    }

    pub fn bump_const(&mut self) {
        self.const_power += 1;
    }

    pub fn finish(mut self, arity: usize) -> Result<Box<[u8]>> {
        self.factors.sort_unstable();
        let len: usize = self.factors.iter().map(|f| f.len() + 1).sum();
        let mut key = Vec::with_capacity(len + arity + 2);
        for f in &self.factors {
            key.extend_from_slice(f);
            key.push(0);
        }
        key.push(SECTION);
        if self.l.len() > arity {
            return Err(Error::Invariant(format!(
                "l-exponent mentions A{} beyond arity {arity}",
                self.l.len()
            )));
        }
        for i in 0..arity {
            let c = self.l.get(i).copied().unwrap_or(0);
            key.push(u8::try_from(c).map_err(|_| invalid("l-exponent exceeds 255"))?);
        }
        key.push(u8::try_from(self.const_power).map_err(|_| invalid("constant power exceeds 255"))?);
        Ok(key.into_boxed_slice())
    }
}

/// Splits a key into factor byte strings, `l` counts and constant power.
pub(crate) fn split_key(key: &[u8]) -> (Vec<&[u8]>, &[u8], u32) {
    let sec = key.iter().position(|&b| b == SECTION).expect("key has a section marker");
    let factors = key[..sec]
        .split(|&b| b == 0)
        .filter(|f| !f.is_empty())
        .collect();
    let tail = &key[sec + 1..];
    let (l, c) = tail.split_at(tail.len() - 1);
    (factors, l, c[0] as u32)
}

impl RelationPolynomial {
    pub(crate) fn from_map(ring: Ring, arity: usize, n: u32, map: HashMap<Box<[u8]>, i64>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| *c != 0).collect();
        RelationPolynomial {
            ring,
            arity,
            n,
            terms,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The dimension substituted for the constant symbol.
    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&[u8], i64)> {
        self.terms.iter().map(|(k, &c)| (&**k, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = RelationTerm> + '_ {
        self.terms.iter().map(move |(k, &c)| self.decode(k, c))
    }

    fn decode(&self, key: &[u8], coeff: i64) -> RelationTerm {
        let (factors, l, const_power) = split_key(key);
        let mut t_factors = Vec::new();
        let mut u_factors = Vec::new();
        for f in factors {
            match self.ring {
                Ring::R => t_factors.push(
                    TWord::new(
                        f.iter()
                            .map(|&b| {
                                let (v, t) = byte_letter(b);
                                Letter::new(v, t)
                            })
                            .collect(),
                    )
                    .expect("stored words are nonempty"),
                ),
                Ring::S => u_factors.push(GWord::from_letters(f.iter().map(|&b| {
                    let (v, i) = byte_letter(b);
                    GLetter::new(v, i)
                }))),
            }
        }
        RelationTerm {
            coeff,
            u_factors,
            l_factor: LExponent::new(l.iter().map(|&c| c as u32).collect()),
            t_factors,
            const_power,
        }
    }

    /// Reads an `R`-ring polynomial in transpose-free words as an `S`-ring
    /// polynomial by `T_M -> U_M`. Fails if any word carries a transpose.
    pub fn transpose_free_as_u(&self) -> Result<RelationPolynomial> {
        if self.ring != Ring::R {
            return Err(invalid("expected an R-ring polynomial"));
        }
        for k in self.terms.keys() {
            let (factors, _, _) = split_key(k);
            if factors.iter().flat_map(|f| f.iter()).any(|&b| byte_letter(b).1) {
                return Err(invalid("polynomial contains transposed letters"));
            }
        }
        Ok(RelationPolynomial {
            ring: Ring::S,
            ..self.clone()
        })
    }

    /// Evaluates with `T_M -> tr(M)` (ring `R`) or `U_M -> tr(M)`,
    /// `l_{A_i} -> lambdas[i]` (ring `S`) on the given matrices.
    pub fn eval_on_matrices(
        &self,
        mats: &[RationalMatrix],
        lambdas: Option<&[Rational]>,
    ) -> Result<Rational> {
        if mats.len() != self.arity {
            return Err(invalid(format!(
                "relation has arity {} but {} matrices were given",
                self.arity,
                mats.len()
            )));
        }
        let dim = mats[0].rows();
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension {
                op: "eval_on_matrices",
                detail: "matrices must be square of one dimension".into(),
            });
        }
        let needs_inverse = self.ring == Ring::S
            && self.terms.keys().any(|k| {
                let (factors, _, _) = split_key(k);
                factors.iter().flat_map(|f| f.iter()).any(|&b| byte_letter(b).1)
            });
        let inverses = if needs_inverse {
            mats.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let mut traces: HashMap<&[u8], Rational> = HashMap::new();
        let mut total = Rational::zero();
        let n = int(self.n as i64);
        for (key, &coeff) in &self.terms {
            let (factors, l, const_power) = split_key(key);
            let mut prod = int(coeff);
            for f in factors {
                let tr = match traces.get(f) {
                    Some(t) => t.clone(),
                    None => {
                        let m = match self.ring {
                            Ring::R => {
                                let w = TWord::new(
                                    f.iter()
                                        .map(|&b| {
                                            let (v, t) = byte_letter(b);
                                            Letter::new(v, t)
                                        })
                                        .collect(),
                                )?;
                                eval_tword(&w, mats)?
                            }
                            Ring::S => GWord::from_letters(f.iter().map(|&b| {
                                let (v, i) = byte_letter(b);
                                GLetter::new(v, i)
                            }))
                            .eval_matrices(mats, &inverses, dim)?,
                        };
                        let t = m.trace()?;
                        traces.insert(f, t.clone());
                        t
                    }
                };
                prod *= tr;
            }
            if l.iter().any(|&c| c > 0) {
                let lambdas = lambdas.ok_or(Error::MissingSimilitude)?;
                for (i, &c) in l.iter().enumerate() {
                    for _ in 0..c {
                        prod *= &lambdas[i];
                    }
                }
            }
            for _ in 0..const_power {
                prod *= &n;
            }
            total += prod;
        }
        Ok(total)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, bytes: &[u8], ring: Ring) -> fmt::Result {
    for (i, &b) in bytes.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        let (v, flag) = byte_letter(b);
        let mark = match (flag, ring) {
            (false, _) => "",
            (true, Ring::R) => "'",
            (true, Ring::S) => "-",
        };
        write!(f, "A{v}{mark}")?;
    }
    Ok(())
}

/// `U[A1]·U[A2] − U[A1 A2]`; coefficients other than ±1 print as `k · `,
/// `l` as `l[A1 A3^2]`, the constant as ` · n^p`.
impl fmt::Display for RelationPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let sym = match self.ring {
            Ring::R => "T",
            Ring::S => "U",
        };
        for (i, (key, &c)) in self.terms.iter().enumerate() {
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("−")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" − ")?,
            }
            if c.abs() != 1 {
                write!(f, "{} · ", c.abs())?;
            }
            let (factors, l, p) = split_key(key);
            let mut first = true;
            for w in factors {
                if !first {
                    f.write_str("·")?;
                }
                first = false;
                write!(f, "{sym}[")?;
                write_word(f, w, self.ring)?;
                f.write_str("]")?;
            }
            if l.iter().any(|&c| c > 0) {
                if !first {
                    f.write_str("·")?;
                }
                first = false;
                f.write_str("l[")?;
                let mut sep = "";
                for (i, &c) in l.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    write!(f, "{sep}A{}", i + 1)?;
                    if c > 1 {
                        write!(f, "^{c}")?;
                    }
                    sep = " ";
                }
                f.write_str("]")?;
            }
            if p > 0 {
                if first {
                    f.write_str("n")?;
                } else {
                    f.write_str(" · n")?;
                }
                if p > 1 {
                    write!(f, "^{p}")?;
                }
            } else if first {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

/// `n^p` as an exact integer.
pub(crate) fn int_pow(n: u32, p: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..p {
        acc *= n;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(words: &[&str], l: &[u32], c: u32, arity: usize) -> Box<[u8]> {
        let mut kb = KeyBuilder::default();
        for w in words {
            kb.push_gword(&w.parse().unwrap());
        }
        kb.add_l(&LExponent::new(l.to_vec()));
        for _ in 0..c {
            kb.bump_const();
        }
        kb.finish(arity).unwrap()
    }

    #[test]
    fn key_order_puts_split_factors_first() {
        assert!(key(&["A1", "A2"], &[], 0, 2) < key(&["A1 A2"], &[], 0, 2));
        let k = key(&["A2", "A1 A2-"], &[0, 2], 1, 2);
        let (f, l, c) = split_key(&k);
        assert_eq!(f.len(), 2);
        assert_eq!(l, &[0, 2]);
        assert_eq!(c, 1);
    }

    #[test]
    fn display_forms() {
        let mut m = HashMap::new();
        m.insert(key(&["A1", "A2"], &[], 0, 2), 1);
        m.insert(key(&["A1 A2"], &[], 0, 2), -1);
        let p = RelationPolynomial::from_map(Ring::S, 2, 1, m);
        assert_eq!(p.to_string(), "U[A1]·U[A2] − U[A1 A2]");

        let mut m = HashMap::new();
        m.insert(key(&["A1 A2-"], &[0, 1], 0, 2), 1);
        m.insert(key(&["A1"], &[2, 0], 2, 2), -3);
        m.insert(key(&[], &[], 1, 2), 2);
        m.insert(key(&["A2"], &[], 0, 2), 0);
        let p = RelationPolynomial::from_map(Ring::S, 2, 2, m);
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.to_string(),
            "−3 · U[A1]·l[A1^2] · n^2 + U[A1 A2-]·l[A2] + 2 · n"
        );
        let empty = RelationPolynomial::from_map(Ring::R, 1, 1, HashMap::new());
        assert_eq!(empty.to_string(), "0");
    }

    #[test]
    fn decode_round_trip() {
        let mut m = HashMap::new();
        m.insert(key(&["A1 A2-", "A3"], &[1, 0, 1], 1, 3), 4);
        let p = RelationPolynomial::from_map(Ring::S, 3, 3, m);
        let t: Vec<RelationTerm> = p.terms().collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].coeff, 4);
        assert_eq!(t[0].u_factors, vec!["A1 A2-".parse().unwrap(), "A3".parse().unwrap()]);
        assert_eq!(t[0].l_factor.counts(), &[1, 0, 1]);
        assert_eq!(t[0].const_power, 1);
        assert!(t[0].t_factors.is_empty());
        assert_eq!(int_pow(3, 4), BigInt::from(81));
    }
}
