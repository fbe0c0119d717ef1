//! Exact matrix representations of finite groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteGroup, GroupElement, FULL_ASSOCIATIVITY_LIMIT, SAMPLED_ASSOCIATIVITY_TRIPLES};
use crate::linalg::{classify_similitude, linearized_pfaffian, Rational, RationalMatrix, SimilitudeKind};
use crate::pseudochar::{multisets, PTable, PseudocharData};
use crate::words::GWord;

pub const DEFAULT_MAX_ORDER: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    images: Vec<RationalMatrix>,
}

impl Representation {
    /// Checks `ρ(1) = I` and `ρ(gh) = ρ(g)ρ(h)` (every pair up to order 64,
    /// seeded random pairs above that).
    pub fn new(group: FiniteGroup, images: Vec<RationalMatrix>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(invalid(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        let dim = images[0].rows();
        if dim == 0 || images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(invalid("images must be square matrices of one common positive size"));
        }
        let rep = Representation { group, dim, images };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        let e = g.identity().0;
        if !self.images[e].is_identity() {
            return Err(Error::NotAHomomorphism { left: e, right: e });
        }
        let n = g.order();
        let pairs: Vec<(usize, usize)> = if n <= FULL_ASSOCIATIVITY_LIMIT {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..SAMPLED_ASSOCIATIVITY_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect()
        };
        let bad = pairs
            .par_iter()
            .map(|&(a, b)| {
                let prod = self.images[a].try_mul(&self.images[b])?;
                Ok((prod != self.images[g.mul_idx(a, b)]).then_some((a, b)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .min();
        match bad {
            Some((left, right)) => Err(Error::NotAHomomorphism { left, right }),
            None => Ok(()),
        }
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(group: &FiniteGroup, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        Ok(Representation {
            group: group.clone(),
            dim,
            images: vec![RationalMatrix::identity(dim); group.order()],
        })
    }

    /// The group generated by `gens` acting on itself: elements are numbered
    /// in breadth-first order from the identity (index 0).
    pub fn from_matrix_generators(gens: &[RationalMatrix], max_order: usize) -> Result<Self> {
        let first = gens.first().ok_or_else(|| invalid("at least one generator is required"))?;
        let dim = first.rows();
        for m in gens {
            if !m.is_square() || m.rows() != dim {
                return Err(invalid("generators must be square matrices of one common size"));
            }
            if m.det()?.is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        // Finite order makes every inverse a positive power, so closing under
        // right multiplication by the generators yields the whole group.
        let mut elems = vec![RationalMatrix::identity(dim)];
        let mut index: HashMap<RationalMatrix, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut path: Vec<Option<(usize, usize)>> = vec![None];
        let mut next = 0;
        while next < elems.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, gen) in gens.iter().enumerate() {
                let y = elems[next].try_mul(gen)?;
                let k = match index.get(&y) {
                    Some(&k) => k,
                    None => {
                        if elems.len() == max_order {
                            return Err(Error::GroupTooLarge { limit: max_order });
                        }
                        index.insert(y.clone(), elems.len());
                        elems.push(y);
                        path.push(Some((next, s)));
                        elems.len() - 1
                    }
                };
                row.push(k);
            }
            right.push(row);
            next += 1;
        }
        let order = elems.len();
        let words: Vec<Vec<usize>> = (0..order)
            .map(|mut x| {
                let mut w = Vec::new();
                while let Some((parent, s)) = path[x] {
                    w.push(s);
                    x = parent;
                }
                w.reverse();
                w
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..order)
            .into_par_iter()
            .map(|i| {
                words
                    .iter()
                    .map(|w| w.iter().fold(i, |x, &s| right[x][s]))
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_cayley_table(&table)?;
        Ok(Representation {
            group,
            dim,
            images: elems,
        })
    }

    /// `ρ(g) = words[g]` evaluated with `A_i ↦ gen_mats[i-1]`. Each word must
    /// evaluate to its own element under `A_i ↦ gen_elems[i-1]`.
    pub fn from_generator_assignment(
        grp: &FiniteGroup,
        gen_elems: &[GroupElement],
        gen_mats: &[RationalMatrix],
        words: &[GWord],
    ) -> Result<Self> {
        if gen_elems.len() != gen_mats.len() || gen_mats.is_empty() {
            return Err(invalid("need one matrix per generator and at least one generator"));
        }
        if words.len() != grp.order() {
            return Err(invalid(format!("{} words for a group of order {}", words.len(), grp.order())));
        }
        let dim = gen_mats[0].rows();
        if gen_mats.iter().any(|m| !m.is_square() || m.rows() != dim) {
            return Err(invalid("generator matrices must be square of one common size"));
        }
        let needs_inverse = words.iter().any(|w| w.letters().iter().any(|l| l.inverse));
        let inverses = if needs_inverse {
            gen_mats.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let mut images = Vec::with_capacity(words.len());
        for (g, w) in words.iter().enumerate() {
            if w.eval_in_group(gen_elems, grp)?.0 != g {
                return Err(invalid(format!("word {w} does not evaluate to element {g}")));
            }
            images.push(w.eval_matrices(gen_mats, &inverses, dim)?);
        }
        Representation::new(grp.clone(), images)
    }

    /// As [`from_generator_assignment`](Self::from_generator_assignment) with
    /// shortest words found by breadth-first search.
    pub fn from_generators(grp: &FiniteGroup, gen_elems: &[GroupElement], gen_mats: &[RationalMatrix]) -> Result<Self> {
        let words = grp.words_in_generators(gen_elems)?;
        Self::from_generator_assignment(grp, gen_elems, gen_mats, &words)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: GroupElement) -> &RationalMatrix {
        &self.images[g.0]
    }

    pub fn images(&self) -> &[RationalMatrix] {
        &self.images
    }

    /// Elements mapped to the identity matrix.
    pub fn kernel(&self) -> Vec<GroupElement> {
        self.group.elements().filter(|g| self.images[g.0].is_identity()).collect()
    }

    /// A generating set chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<GroupElement> {
        let g = &self.group;
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[g.identity().0] = true;
        for x in 0..g.order() {
            if inside[x] {
                continue;
            }
            gens.push(GroupElement(x));
            // Re-close: in a finite group the closure under right
            // multiplication by the generators is the generated subgroup.
            let mut stack: Vec<usize> = (0..g.order()).filter(|&y| inside[y]).collect();
            while let Some(y) = stack.pop() {
                for s in &gens {
                    let z = g.mul_idx(y, s.0);
                    if !inside[z] {
                        inside[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        gens
    }

    pub fn traces(&self) -> Result<Vec<Rational>> {
        self.images.par_iter().map(RationalMatrix::trace).collect()
    }

    /// Strongest family containing every image (priority Sp, SO, O, GSp,
    /// GO, GL) together with its multiplier.
    pub fn classify(&self) -> RepClass {
        let per_elem: Vec<Vec<(SimilitudeKind, Option<Rational>)>> = self
            .images
            .par_iter()
            .map(|m| {
                classify_similitude(m)
                    .map(|cs| cs.into_iter().map(|c| (c.kind, c.lambda)).collect())
                    .unwrap_or_default()
            })
            .collect();
        let holds = |kind: SimilitudeKind| per_elem.iter().all(|cs| cs.iter().any(|c| c.0 == kind));
        let mut families: Vec<Family> = Family::PRIORITY
            .iter()
            .copied()
            .filter(|f| f.kind().is_none_or(holds))
            .collect();
        families.sort();
        let family = Family::PRIORITY
            .iter()
            .copied()
            .find(|f| families.contains(f))
            .unwrap_or(Family::GL);
        let lambda = family.kind().map(|k| {
            let lookup = match k {
                SimilitudeKind::Symplectic | SimilitudeKind::GeneralSymplectic => SimilitudeKind::GeneralSymplectic,
                _ => SimilitudeKind::GeneralOrthogonal,
            };
            per_elem
                .iter()
                .map(|cs| {
                    cs.iter()
                        .find(|c| c.0 == lookup)
                        .and_then(|c| c.1.clone())
                        .unwrap_or_else(Rational::one)
                })
                .collect()
        });
        RepClass {
            family,
            families,
            lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    GL,
    O,
    GO,
    SO,
    Sp,
    GSp,
}

impl Family {
    /// Classification order, strongest first.
    pub const PRIORITY: [Family; 6] = [Family::Sp, Family::SO, Family::O, Family::GSp, Family::GO, Family::GL];

    fn kind(self) -> Option<SimilitudeKind> {
        match self {
            Family::GL => None,
            Family::O => Some(SimilitudeKind::Orthogonal),
            Family::GO => Some(SimilitudeKind::GeneralOrthogonal),
            Family::SO => Some(SimilitudeKind::SpecialOrthogonal),
            Family::Sp => Some(SimilitudeKind::Symplectic),
            Family::GSp => Some(SimilitudeKind::GeneralSymplectic),
        }
    }

    pub fn is_symplectic(self) -> bool {
        matches!(self, Family::Sp | Family::GSp)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "gl",
            Family::O => "o",
            Family::GO => "go",
            Family::SO => "so",
            Family::Sp => "sp",
            Family::GSp => "gsp",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gl" => Family::GL,
            "o" => Family::O,
            "go" => Family::GO,
            "so" => Family::SO,
            "sp" => Family::Sp,
            "gsp" => Family::GSp,
            _ => return Err(invalid(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepClass {
    pub family: Family,
    /// Every family containing all images, sorted.
    pub families: Vec<Family>,
    /// Per-element multiplier; `None` for `GL`.
    pub lambda: Option<Vec<Rational>>,
}

impl RepClass {
    /// A class naming `family` directly, without a multiplier.
    pub fn of(family: Family) -> Self {
        RepClass {
            family,
            families: vec![family],
            lambda: None,
        }
    }
}

pub fn classify(rep: &Representation) -> RepClass {
    rep.classify()
}

/// `(tr ρ, λ ρ)` for the classified family; `l` is omitted for `GL`.
pub fn trace_function(rep: &Representation) -> Result<PseudocharData> {
    let class = rep.classify();
    PseudocharData::new(rep.group.clone(), rep.dim, rep.traces()?, class.lambda)
}

/// `(tr ρ, λ ρ)` read in a family that contains the representation.
pub fn trace_function_for(rep: &Representation, family: Family) -> Result<PseudocharData> {
    let class = rep.classify();
    if !class.families.contains(&family) {
        return Err(invalid(format!("representation does not land in {family}")));
    }
    let l = match family.kind() {
        None => None,
        Some(_) => Some(lambda_in(rep, family)?),
    };
    PseudocharData::new(rep.group.clone(), rep.dim, rep.traces()?, l)
}

fn lambda_in(rep: &Representation, family: Family) -> Result<Vec<Rational>> {
    let form = if family.is_symplectic() {
        crate::linalg::omega(rep.dim)?
    } else {
        RationalMatrix::identity(rep.dim)
    };
    similitude_character(rep, &form)
}

/// `λ_J(g)` with `ρ(g) J ρ(g)^t = λ_J(g) J` for a nonsingular form `J`.
pub fn similitude_character(rep: &Representation, form: &RationalMatrix) -> Result<Vec<Rational>> {
    if form.rows() != rep.dim || form.cols() != rep.dim {
        return Err(Error::Dimension {
            op: "similitude_character",
            detail: format!("form is {}x{}, representation has dimension {}", form.rows(), form.cols(), rep.dim),
        });
    }
    let form_inv = form.inverse()?;
    rep.images
        .par_iter()
        .enumerate()
        .map(|(g, a)| {
            a.try_mul(form)?
                .try_mul(&a.transpose())?
                .try_mul(&form_inv)?
                .as_scalar()
                .ok_or_else(|| invalid(format!("image of element {g} does not preserve the form up to scalar")))
        })
        .collect()
}

/// `(tr ρ, λ_J ρ)` for the similitude group of the form `J`.
pub fn trace_function_with_form(rep: &Representation, form: &RationalMatrix) -> Result<PseudocharData> {
    let l = similitude_character(rep, form)?;
    PseudocharData::new(rep.group.clone(), rep.dim, rep.traces()?, Some(l))
}

/// `P = pl ∘ ρ` on every `dim/2`-tuple, computed once per multiset.
pub fn pl_table(rep: &Representation) -> Result<PTable> {
    if rep.dim % 2 == 1 {
        return Err(invalid("pl needs even dimension"));
    }
    let k = rep.dim / 2;
    let ms: Vec<Vec<usize>> = multisets(rep.group.order(), k).collect();
    let values: Vec<Rational> = ms
        .par_iter()
        .map(|t| {
            let mats: Vec<RationalMatrix> = t.iter().map(|&i| rep.images[i].clone()).collect();
            linearized_pfaffian(&mats)
        })
        .collect::<Result<_>>()?;
    let mut table = PTable::new(k);
    for (t, v) in ms.into_iter().zip(values) {
        if v.is_zero() {
            continue;
        }
        for p in itertools::Itertools::permutations(t.iter().copied(), k) {
            table.insert(p, v.clone())?;
        }
    }
    Ok(table)
}

/// `g ↦ x ρ(g) x^{-1}`.
pub fn conjugate_rep(rep: &Representation, x: &RationalMatrix) -> Result<Representation> {
    if x.rows() != rep.dim || x.cols() != rep.dim {
        return Err(Error::Dimension {
            op: "conjugate_rep",
            detail: format!("conjugator is {}x{}, representation has dimension {}", x.rows(), x.cols(), rep.dim),
        });
    }
    let x_inv = x.inverse()?;
    let images = rep
        .images
        .par_iter()
        .map(|m| m.conjugate_by(x, &x_inv))
        .collect::<Result<_>>()?;
    Ok(Representation {
        group: rep.group.clone(),
        dim: rep.dim,
        images,
    })
}

/// Blockwise direct sum over a common group.
pub fn direct_sum_rep(reps: &[&Representation]) -> Result<Representation> {
    let first = reps.first().ok_or_else(|| invalid("direct sum of no representations"))?;
    if reps.iter().any(|r| !r.group.same_table(&first.group)) {
        return Err(invalid("direct sum needs representations of one group"));
    }
    let images = (0..first.group.order())
        .map(|g| {
            let blocks: Vec<&RationalMatrix> = reps.iter().map(|r| &r.images[g]).collect();
            RationalMatrix::direct_sum(&blocks)
        })
        .collect();
    Ok(Representation {
        group: first.group.clone(),
        dim: reps.iter().map(|r| r.dim).sum(),
        images,
    })
}
