//! Evaluation of `S`-ring relations on pseudocharacter data.
//!
//! A relation is compiled once into flat arrays with every distinct factor
//! word interned; evaluating at a tuple then computes each factor's `T` value
//! once and multiplies through the terms. When every `T` and `l` value is an
//! integer the arithmetic runs in checked `i128`, falling back to exact
//! rationals on overflow.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, ToPrimitive, Zero};

use super::poly::{int_pow, split_key, RelationPolynomial, Ring};
use super::procesi::{g_relation, gl_relation};
use crate::error::{invalid, Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{is_integral, Rational};
use crate::pseudochar::PseudocharData;

#[derive(Debug)]
pub struct CompiledRelation {
    arity: usize,
    n: u32,
    /// Distinct factor words; letters encoded `slot * 2 + inverse`.
    factor_letters: Vec<u16>,
    factor_offsets: Vec<u32>,
    coeffs: Vec<i64>,
    const_pows: Vec<u32>,
    /// Per term, a range into `term_factors`.
    term_offsets: Vec<u32>,
    term_factors: Vec<u32>,
    /// Per term, a range into `term_l` (slot indices repeated by exponent).
    l_offsets: Vec<u32>,
    term_l: Vec<u16>,
    needs_l: bool,
}

impl CompiledRelation {
    pub fn compile(p: &RelationPolynomial) -> Result<Self> {
        if p.ring() != Ring::S {
            return Err(invalid("only S-ring relations evaluate on group data"));
        }
        let mut intern: HashMap<&[u8], u32> = HashMap::new();
        let mut c = CompiledRelation {
            arity: p.arity(),
            n: p.dimension(),
            factor_letters: Vec::new(),
            factor_offsets: vec![0],
            coeffs: Vec::with_capacity(p.len()),
            const_pows: Vec::with_capacity(p.len()),
            term_offsets: vec![0],
            term_factors: Vec::new(),
            l_offsets: vec![0],
            term_l: Vec::new(),
            needs_l: false,
        };
        for (key, coeff) in p.raw_terms() {
            let (factors, l, cp) = split_key(key);
            for f in factors {
                let next = intern.len() as u32;
                let id = *intern.entry(f).or_insert_with(|| {
                    for &b in f {
                        let x = b as u16 - 1;
                        c.factor_letters.push(x);
                    }
                    c.factor_offsets.push(c.factor_letters.len() as u32);
                    next
                });
                c.term_factors.push(id);
            }
            c.term_offsets.push(c.term_factors.len() as u32);
            for (slot, &e) in l.iter().enumerate() {
                for _ in 0..e {
                    c.term_l.push(slot as u16);
                }
            }
            c.needs_l |= l.iter().any(|&e| e > 0);
            c.l_offsets.push(c.term_l.len() as u32);
            c.coeffs.push(coeff);
            c.const_pows.push(cp);
        }
        Ok(c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn needs_l(&self) -> bool {
        self.needs_l
    }

    fn factor_count(&self) -> usize {
        self.factor_offsets.len() - 1
    }
}

/// A compiled relation bound to one set of `(T, l)` values on a group.
pub struct Evaluator<'a> {
    rel: &'a CompiledRelation,
    grp: &'a FiniteGroup,
    t: &'a [Rational],
    l: Option<&'a [Rational]>,
    t_int: Option<Vec<i64>>,
    l_int: Option<Vec<i64>>,
    n_pows: Vec<BigInt>,
}

fn small_ints(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| if is_integral(x) { x.numer().to_i64() } else { None })
        .collect()
}

impl<'a> Evaluator<'a> {
    pub fn new(
        rel: &'a CompiledRelation,
        grp: &'a FiniteGroup,
        t: &'a [Rational],
        l: Option<&'a [Rational]>,
    ) -> Result<Self> {
        if t.len() != grp.order() {
            return Err(invalid("T must have one value per group element"));
        }
        if rel.needs_l && l.is_none() {
            return Err(Error::MissingSimilitude);
        }
        if l.is_some_and(|l| l.len() != grp.order()) {
            return Err(invalid("l must have one value per group element"));
        }
        let max_pow = rel.const_pows.iter().copied().max().unwrap_or(0);
        Ok(Evaluator {
            rel,
            grp,
            t,
            l,
            t_int: small_ints(t),
            l_int: l.and_then(small_ints),
            n_pows: (0..=max_pow).map(|p| int_pow(rel.n, p)).collect(),
        })
    }

    pub fn eval(&self, tuple: &[GroupElement]) -> Result<Rational> {
        if tuple.len() != self.rel.arity {
            return Err(invalid(format!(
                "relation has arity {} but the tuple has {} entries",
                self.rel.arity,
                tuple.len()
            )));
        }
        let elems: Vec<usize> = tuple.iter().map(|g| g.0).collect();
        let invs: Vec<usize> = elems.iter().map(|&g| self.grp.inv_idx(g)).collect();
        let factor_elems = self.factor_elements(&elems, &invs);
        if let (Some(ti), true) = (&self.t_int, self.l_int.is_some() || !self.rel.needs_l) {
            if let Some(v) = self.eval_int(&factor_elems, &elems, ti) {
                return Ok(Rational::from_integer(BigInt::from(v)));
            }
        }
        Ok(self.eval_rational(&factor_elems, &elems))
    }

    fn factor_elements(&self, elems: &[usize], invs: &[usize]) -> Vec<usize> {
        let r = self.rel;
        (0..r.factor_count())
            .map(|f| {
                let letters =
                    &r.factor_letters[r.factor_offsets[f] as usize..r.factor_offsets[f + 1] as usize];
                let mut g = self.grp.identity().0;
                for &x in letters {
                    let slot = (x / 2) as usize;
                    let h = if x % 2 == 1 { invs[slot] } else { elems[slot] };
                    g = self.grp.mul_idx(g, h);
                }
                g
            })
            .collect()
    }

    fn eval_int(&self, factor_elems: &[usize], elems: &[usize], ti: &[i64]) -> Option<i128> {
        let r = self.rel;
        let n = r.n as i128;
        let mut total: i128 = 0;
        for t in 0..r.coeffs.len() {
            let mut prod = r.coeffs[t] as i128;
            for &f in &r.term_factors[r.term_offsets[t] as usize..r.term_offsets[t + 1] as usize] {
                prod = prod.checked_mul(ti[factor_elems[f as usize]] as i128)?;
                if prod == 0 {
                    break;
                }
            }
            if prod == 0 {
                continue;
            }
            if let Some(li) = &self.l_int {
                for &s in &r.term_l[r.l_offsets[t] as usize..r.l_offsets[t + 1] as usize] {
                    prod = prod.checked_mul(li[elems[s as usize]] as i128)?;
                }
            }
            for _ in 0..r.const_pows[t] {
                prod = prod.checked_mul(n)?;
            }
            total = total.checked_add(prod)?;
        }
        Some(total)
    }

    fn eval_rational(&self, factor_elems: &[usize], elems: &[usize]) -> Rational {
        let r = self.rel;
        let mut total = Rational::zero();
        for t in 0..r.coeffs.len() {
            let mut prod = Rational::from_integer(BigInt::from(r.coeffs[t]));
            for &f in &r.term_factors[r.term_offsets[t] as usize..r.term_offsets[t + 1] as usize] {
                prod *= &self.t[factor_elems[f as usize]];
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            if let Some(l) = self.l {
                for &s in &r.term_l[r.l_offsets[t] as usize..r.l_offsets[t + 1] as usize] {
                    prod *= &l[elems[s as usize]];
                }
            }
            prod *= &self.n_pows[r.const_pows[t] as usize];
            total += prod;
        }
        total
    }
}

/// Substitutes `U_w -> T(w(tuple))`, `l -> l(tuple)`, the constant `-> n`.
pub fn eval_relation(
    p: &RelationPolynomial,
    d: &PseudocharData,
    tuple: &[GroupElement],
) -> Result<Rational> {
    let c = CompiledRelation::compile(p)?;
    let ev = Evaluator::new(&c, d.group(), d.t(), d.l())?;
    ev.eval(tuple)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Gl,
    G(usize),
}

type Cache = Mutex<HashMap<(RelationKind, usize), Arc<CompiledRelation>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The compiled `GL_n` relation or `G_{j,n+1}`, built once per process.
pub fn compiled_relation(kind: RelationKind, n: usize) -> Result<Arc<CompiledRelation>> {
    if let Some(c) = cache().lock().expect("relation cache poisoned").get(&(kind, n)) {
        return Ok(Arc::clone(c));
    }
    let poly = match kind {
        RelationKind::Gl => gl_relation(n)?,
        RelationKind::G(j) => g_relation(n, j)?,
    };
    let c = Arc::new(CompiledRelation::compile(&poly)?);
    cache()
        .lock()
        .expect("relation cache poisoned")
        .insert((kind, n), Arc::clone(&c));
    Ok(c)
}
