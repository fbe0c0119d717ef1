//! Words in matrix variables.
//!
//! A [`TWord`] is a word in the free semigroup on `A_1, A_1^t, ..., A_m, A_m^t`
//! and indexes the trace symbols `T_M`. A [`GWord`] is a reduced word in the
//! free group on `A_1, ..., A_m` and indexes the symbols `U_M`. [`go_split`]
//! translates the former into an `l`-exponent and the latter.
//!
//! Text form: letters separated by spaces, `A3'` for a transpose and `A3-`
//! for an inverse, e.g. `"A1 A2' A1"` or `"A1 A2-"`.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::RationalMatrix;

/// `A_var` or its transpose. Ordered by `(var, transposed)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub var: u32,
    pub transposed: bool,
}

impl Letter {
    pub fn new(var: u32, transposed: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Letter { var, transposed }
    }

    pub fn plain(var: u32) -> Self {
        Letter::new(var, false)
    }

    pub fn toggled(self) -> Self {
        Letter {
            var: self.var,
            transposed: !self.transposed,
        }
    }
}

/// `A_var` or its inverse. Ordered by `(var, inverse)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GLetter {
    pub var: u32,
    pub inverse: bool,
}

impl GLetter {
    pub fn new(var: u32, inverse: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        GLetter { var, inverse }
    }

    pub fn inverted(self) -> Self {
        GLetter {
            var: self.var,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: GLetter) -> bool {
        self.var == other.var && self.inverse != other.inverse
    }
}

/// Nonempty word in letters and their transposes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TWord(Vec<Letter>);

impl TWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(invalid("a trace word must contain at least one letter"));
        }
        if letters.iter().any(|l| l.var == 0) {
            return Err(invalid("variables are numbered from 1"));
        }
        Ok(TWord(letters))
    }

    /// The single-letter word `A_var`.
    pub fn var(var: u32) -> Self {
        TWord(vec![Letter::plain(var)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &TWord) -> TWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TWord(v)
    }

    pub fn transpose(&self) -> TWord {
        word_transpose(self)
    }
}

/// Reduced word in the free group; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GWord(Vec<GLetter>);

impl GWord {
    pub fn identity() -> Self {
        GWord(Vec::new())
    }

    /// Reduces eagerly: no adjacent cancelling pair is ever stored.
    pub fn from_letters(letters: impl IntoIterator<Item = GLetter>) -> Self {
        let mut w = GWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[GLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.var).max().unwrap_or(0)
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, letter: GLetter) {
        assert!(letter.var >= 1, "variables are numbered from 1");
        match self.0.last() {
            Some(&last) if last.cancels(letter) => {
                self.0.pop();
            }
            _ => self.0.push(letter),
        }
    }

    pub fn concat(&self, other: &GWord) -> GWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> GWord {
        GWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Product in `grp`, letter `A_i` standing for `assign[i - 1]`.
    pub fn eval_in_group(&self, assign: &[GroupElement], grp: &FiniteGroup) -> Result<GroupElement> {
        eval_gword_in_group(self, assign, grp)
    }

    /// Product of matrices, letter `A_i` standing for `mats[i - 1]`; the
    /// inverses must be supplied alongside since they are used for `A_i^{-1}`.
    pub fn eval_matrices(
        &self,
        mats: &[RationalMatrix],
        inverses: &[RationalMatrix],
        dim: usize,
    ) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::identity(dim);
        for l in &self.0 {
            let i = l.var as usize - 1;
            let m = if l.inverse { inverses.get(i) } else { mats.get(i) };
            let m = m.ok_or_else(|| invalid(format!("no matrix assigned to A{}", l.var)))?;
            acc = acc.try_mul(m)?;
        }
        Ok(acc)
    }
}

/// Number of transposed occurrences of each variable, `counts[i]` for `A_{i+1}`.
/// Trailing zeros are trimmed so equal exponents compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LExponent(Vec<u32>);

impl LExponent {
    pub fn new(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        LExponent(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Count for variable `A_var`.
    pub fn get(&self, var: u32) -> u32 {
        self.0.get(var as usize - 1).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LExponent) -> LExponent {
        let n = self.0.len().max(other.0.len());
        LExponent::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

/// Reverses the word and toggles every transpose flag.
pub fn word_transpose(w: &TWord) -> TWord {
    TWord(w.0.iter().rev().map(|l| l.toggled()).collect())
}

fn least_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let n = v.len();
    let mut best: Option<Vec<T>> = None;
    for r in 0..n {
        let rot: Vec<T> = v[r..].iter().chain(&v[..r]).cloned().collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

/// Least word among all rotations of `w` and of its transpose, realizing
/// `T_{MN} = T_{NM}` and `T_M = T_{M^t}`.
pub fn canonical_t_symbol(w: &TWord) -> TWord {
    let a = least_rotation(&w.0);
    let b = least_rotation(&word_transpose(w).0);
    TWord(a.min(b))
}

/// `M -> (M', M'')`: the transposed letters counted with multiplicity, and
/// the free-group word with each `A_i^t` replaced by `A_i^{-1}`.
pub fn go_split(w: &TWord) -> (LExponent, GWord) {
    let mut counts = vec![0u32; w.max_var() as usize];
    let mut g = GWord::identity();
    for l in &w.0 {
        if l.transposed {
            counts[l.var as usize - 1] += 1;
        }
        g.push(GLetter::new(l.var, l.transposed));
    }
    (LExponent::new(counts), g)
}

/// Cyclically reduces, then takes the least rotation. Inversion is not
/// identified: `U_M` and `U_{M^{-1}}` stay distinct symbols.
pub fn canonical_u_symbol(w: &GWord) -> GWord {
    let mut v: &[GLetter] = &w.0;
    while v.len() >= 2 && v[0].cancels(v[v.len() - 1]) {
        v = &v[1..v.len() - 1];
    }
    GWord(least_rotation(v))
}

/// Product of the assigned matrices (or their transposes) in word order.
pub fn eval_tword(w: &TWord, assign: &[RationalMatrix]) -> Result<RationalMatrix> {
    let need = w.max_var() as usize;
    if assign.len() < need {
        return Err(Error::Dimension {
            op: "eval_tword",
            detail: format!("word uses A{need} but only {} matrices given", assign.len()),
        });
    }
    let mut acc: Option<RationalMatrix> = None;
    for l in &w.0 {
        let m = &assign[l.var as usize - 1];
        let factor = if l.transposed { m.transpose() } else { m.clone() };
        acc = Some(match acc {
            None => factor,
            Some(a) => a.try_mul(&factor)?,
        });
    }
    Ok(acc.expect("trace words are nonempty"))
}

/// Product in `grp` with inverses read from the group's inverse table.
pub fn eval_gword_in_group(
    w: &GWord,
    assign: &[GroupElement],
    grp: &FiniteGroup,
) -> Result<GroupElement> {
    let need = w.max_var() as usize;
    if assign.len() < need {
        return Err(invalid(format!(
            "word uses A{need} but only {} elements given",
            assign.len()
        )));
    }
    let mut acc = grp.identity().0;
    for l in &w.0 {
        let g = assign[l.var as usize - 1].0;
        let g = if l.inverse { grp.inv_idx(g) } else { g };
        acc = grp.mul_idx(acc, g);
    }
    Ok(GroupElement(acc))
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}{}", self.var, if self.transposed { "'" } else { "" })
    }
}

impl fmt::Display for GLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}{}", self.var, if self.inverse { "-" } else { "" })
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(f, &self.0)
    }
}

/// The identity prints as `1`.
impl fmt::Display for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        join(f, &self.0)
    }
}

fn parse_token(tok: &str, suffix: char) -> Result<(u32, bool)> {
    let bad = || Error::Parse(format!("malformed letter {tok:?}"));
    let body = tok.strip_prefix('A').ok_or_else(bad)?;
    let (digits, flag) = match body.strip_suffix(suffix) {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let var: u32 = digits.parse().map_err(|_| bad())?;
    if var == 0 {
        return Err(bad());
    }
    Ok((var, flag))
}

impl FromStr for TWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| parse_token(t, '\'').map(|(v, tr)| Letter::new(v, tr)))
            .collect::<Result<Vec<_>>>()?;
        TWord::new(letters).map_err(|_| Error::Parse("empty trace word".into()))
    }
}

impl FromStr for GWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(GWord::identity());
        }
        let letters = s
            .split_whitespace()
            .map(|t| parse_token(t, '-').map(|(v, inv)| GLetter::new(v, inv)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GWord::from_letters(letters))
    }
}
