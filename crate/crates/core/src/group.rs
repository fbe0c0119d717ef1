//! Finite groups stored as dense multiplication tables.
//!
//! Elements are indices `0..order`. Every constructor validates the group
//! axioms and precomputes inverses and element orders, so a `FiniteGroup`
//! value is always a genuine group.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::words::{GLetter, GWord};

/// Tables up to this order get a full associativity scan.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
/// Number of random triples checked above [`FULL_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    elem_orders: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// The cyclic group `Z/mZ` written additively; element `i` is the residue `i`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("cyclic group order must be at least 1"));
        }
        let mult = (0..m * m).map(|k| (k / m + k % m) % m).collect();
        let mut g = Self::from_parts(m, 0, mult)?;
        g.labels = Some((0..m).map(|i| i.to_string()).collect());
        Ok(g)
    }

    /// Direct product; the pair `(a, b)` is encoded as `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (ng, nh) = (g.order, h.order);
        let order = ng * nh;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            let (xa, xb) = (x / nh, x % nh);
            for y in 0..order {
                let (ya, yb) = (y / nh, y % nh);
                mult[x * order + y] = g.mul_idx(xa, ya) * nh + h.mul_idx(xb, yb);
            }
        }
        let identity = g.identity * nh + h.identity;
        let inv = (0..order)
            .map(|x| g.inv[x / nh] * nh + h.inv[x % nh])
            .collect();
        let elem_orders = (0..order)
            .map(|x| lcm(g.elem_orders[x / nh], h.elem_orders[x % nh]))
            .collect();
        let labels = (0..order)
            .map(|x| format!("({},{})", g.label(x / nh), h.label(x % nh)))
            .collect();
        FiniteGroup {
            order,
            identity,
            mult,
            inv,
            elem_orders,
            labels: Some(labels),
        }
    }

    /// Builds a group from a square Cayley table, validating every axiom.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedGroup(format!(
                    "row {i} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedGroup(format!(
                    "entry {bad} in row {i} is out of range"
                )));
            }
        }
        let mult: Vec<usize> = table.iter().flatten().copied().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e * n + g] == g && mult[g * n + e] == g))
            .ok_or_else(|| Error::MalformedGroup("no identity element".into()))?;
        Self::from_parts(n, identity, mult)
    }

    fn from_parts(order: usize, identity: usize, mult: Vec<usize>) -> Result<Self> {
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| mult[g * order + h] == identity && mult[h * order + g] == identity)
                .ok_or_else(|| Error::MalformedGroup(format!("element {g} has no inverse")))?;
            inv[g] = h;
        }
        let at = |a: usize, b: usize| mult[a * order + b];
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                Err(Error::MalformedGroup(format!(
                    "associativity fails on the triple ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0a55);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                )?;
            }
        }
        let elem_orders = (0..order)
            .map(|g| {
                let mut x = g;
                let mut k = 1;
                while x != identity {
                    x = at(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroup {
            order,
            identity,
            mult,
            inv,
            elem_orders,
            labels: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    #[inline]
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.mul_idx(a.0, b.0))
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.inv[g.0])
    }

    #[inline]
    pub(crate) fn inv_idx(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn element_order(&self, g: GroupElement) -> usize {
        self.elem_orders[g.0]
    }

    /// `g^m`, with negative exponents going through the inverse table.
    pub fn power(&self, g: GroupElement, m: i64) -> GroupElement {
        let base = if m < 0 { self.inv[g.0] } else { g.0 };
        let k = m.unsigned_abs() % self.elem_orders[g.0] as u64;
        let mut x = self.identity;
        for _ in 0..k {
            x = self.mul_idx(x, base);
        }
        GroupElement(x)
    }

    /// The multiplication table as rows, suitable for serialization.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(invalid(format!(
                "{} labels supplied for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    /// Same multiplication table, ignoring labels.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.identity == other.identity && self.mult == other.mult
    }

    /// Shortest positive words in the given generators for every element,
    /// found by breadth-first search on the right Cayley graph. Letter `A_i`
    /// stands for `gens[i - 1]`.
    pub fn words_in_generators(&self, gens: &[GroupElement]) -> Result<Vec<GWord>> {
        let mut words: Vec<Option<GWord>> = vec![None; self.order];
        words[self.identity] = Some(GWord::identity());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (i, s) in gens.iter().enumerate() {
                let y = self.mul_idx(x, s.0);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(GLetter::new(i as u32 + 1, false));
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .enumerate()
            .map(|(g, w)| {
                w.ok_or_else(|| {
                    invalid(format!("element {g} is not generated by the given generators"))
                })
            })
            .collect()
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / num::integer::gcd(a, b) * b
}
