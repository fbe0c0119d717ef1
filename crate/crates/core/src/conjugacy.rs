//! Element-conjugacy versus global conjugacy of representations, and the
//! special orthogonal counterexamples built from `Z/4 × Z/4`.
//!
//! Both decisions compare invariants rather than search for conjugators.
//! Element conjugacy looks at every cyclic restriction `ρ|<γ>`; global
//! conjugacy compares the pseudocharacter data of the whole representation.

use std::fmt;

use itertools::Itertools;
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{linearized_pfaffian, omega, Rational, RationalMatrix};
use crate::pseudochar::{multisets, ser_rational, Coverage, VerifyOptions};
use crate::rep::{similitude_character, Family, Representation};

/// Where two representations first disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinction {
    /// `tr`, `lambda` or `pl`.
    pub invariant: String,
    pub tuple: Vec<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub right: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyVerdict {
    pub family: Family,
    pub element_conjugate: bool,
    /// The first `γ` whose cyclic restrictions differ, with the invariant.
    pub element_witness: Option<Distinction>,
    pub globally_conjugate: bool,
    pub distinction: Option<Distinction>,
    /// Coverage of the global `pl` comparison (exhaustive outside SO mode).
    pub coverage: Coverage,
}

impl ConjugacyVerdict {
    /// 0 globally conjugate, 3 element-conjugate only, 1 neither.
    pub fn exit_code(&self) -> i32 {
        match (self.globally_conjugate, self.element_conjugate) {
            (true, _) => 0,
            (false, true) => 3,
            (false, false) => 1,
        }
    }
}

impl fmt::Display for Distinction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): {} vs {}",
            self.invariant,
            self.tuple.iter().join(", "),
            self.left,
            self.right
        )
    }
}

impl fmt::Display for ConjugacyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {}", self.family)?;
        match &self.element_witness {
            None => writeln!(f, "element-conjugate: yes")?,
            Some(w) => writeln!(f, "element-conjugate: no ({w})")?,
        }
        match (&self.distinction, &self.coverage) {
            (Some(d), _) => writeln!(f, "globally conjugate: no ({d})")?,
            (None, Coverage::Exhaustive) => writeln!(f, "globally conjugate: yes")?,
            (None, Coverage::Sampled { size, .. }) => {
                writeln!(f, "globally conjugate: no distinction found (sampled {size} tuples)")?
            }
        }
        let outcome = match self.exit_code() {
            0 => "globally conjugate",
            3 => "element-conjugate only",
            _ => "not element-conjugate",
        };
        writeln!(f, "verdict: {outcome}")
    }
}

fn check_pair(r1: &Representation, r2: &Representation) -> Result<()> {
    if !r1.group().same_table(r2.group()) {
        return Err(invalid("representations are over different groups"));
    }
    if r1.dim() != r2.dim() {
        return Err(invalid(format!("dimensions differ: {} vs {}", r1.dim(), r2.dim())));
    }
    Ok(())
}

/// `λ` under the family's form, or `None` when the family has no multiplier.
fn lambda(rep: &Representation, family: Family) -> Result<Option<Vec<Rational>>> {
    match family {
        Family::GL => Ok(None),
        Family::Sp | Family::GSp => similitude_character(rep, &omega(rep.dim())?).map(Some),
        Family::O | Family::GO | Family::SO => {
            similitude_character(rep, &RationalMatrix::identity(rep.dim())).map(Some)
        }
    }
}

fn pl_at(rep: &Representation, tuple: &[usize]) -> Result<Rational> {
    let mats: Vec<RationalMatrix> = tuple.iter().map(|&g| rep.image(GroupElement(g)).clone()).collect();
    linearized_pfaffian(&mats)
}

fn so_even(rep: &Representation, family: Family) -> bool {
    family == Family::SO && rep.dim().is_multiple_of(2)
}

fn differ(invariant: &str, tuple: Vec<usize>, left: &Rational, right: &Rational) -> Option<Distinction> {
    (left != right).then(|| Distinction {
        invariant: invariant.into(),
        tuple,
        left: left.clone(),
        right: right.clone(),
    })
}

/// Compares, for each `γ` in index order, traces on the powers of `γ`, `λ(γ)`
/// and, in even SO mode, `pl` on all tuples of powers of `γ`. Returns the
/// first `γ` that separates the two.
pub fn element_conjugate(r1: &Representation, r2: &Representation, family: Family) -> Result<Option<Distinction>> {
    check_pair(r1, r2)?;
    let g = r1.group();
    let (t1, t2) = (r1.traces()?, r2.traces()?);
    let (l1, l2) = (lambda(r1, family)?, lambda(r2, family)?);
    let half = r1.dim() / 2;
    let witnesses: Vec<Option<Distinction>> = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&gamma| {
            let powers: Vec<usize> = (0..g.element_order(gamma) as i64).map(|m| g.power(gamma, m).0).collect();
            if let Some(&p) = powers.iter().find(|&&p| t1[p] != t2[p]) {
                return Ok(Some(Distinction {
                    invariant: "tr".into(),
                    tuple: vec![gamma.0],
                    left: t1[p].clone(),
                    right: t2[p].clone(),
                }));
            }
            if let (Some(l1), Some(l2)) = (&l1, &l2) {
                if let Some(d) = differ("lambda", vec![gamma.0], &l1[gamma.0], &l2[gamma.0]) {
                    return Ok(Some(d));
                }
            }
            if so_even(r1, family) {
                for t in multisets(powers.len(), half) {
                    let tuple: Vec<usize> = t.iter().map(|&i| powers[i]).collect();
                    let (a, b) = (pl_at(r1, &tuple)?, pl_at(r2, &tuple)?);
                    if a != b {
                        return Ok(Some(Distinction {
                            invariant: "pl".into(),
                            tuple: vec![gamma.0],
                            left: a,
                            right: b,
                        }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(witnesses.into_iter().flatten().next())
}

/// Equality of pseudocharacter data: `tr` for GL, O and odd SO; `(tr, λ)`
/// for GO, GSp and Sp; `tr` and `pl` on every `n`-multiset of elements for
/// `SO_{2n}` (lexicographic, budgeted like the verifiers).
pub fn globally_conjugate(
    r1: &Representation,
    r2: &Representation,
    family: Family,
    opts: &VerifyOptions,
) -> Result<(Option<Distinction>, Coverage)> {
    check_pair(r1, r2)?;
    let (t1, t2) = (r1.traces()?, r2.traces()?);
    if let Some(d) = (0..t1.len()).find_map(|g| differ("tr", vec![g], &t1[g], &t2[g])) {
        return Ok((Some(d), Coverage::Exhaustive));
    }
    if let (Some(l1), Some(l2)) = (lambda(r1, family)?, lambda(r2, family)?) {
        if let Some(d) = (0..l1.len()).find_map(|g| differ("lambda", vec![g], &l1[g], &l2[g])) {
            return Ok((Some(d), Coverage::Exhaustive));
        }
    }
    if !so_even(r1, family) {
        return Ok((None, Coverage::Exhaustive));
    }
    let (tuples, coverage) = budgeted_multisets(r1.group(), r1.dim() / 2, opts);
    let (found, _) = first_hit(&tuples, |t| Ok(differ("pl", t.to_vec(), &pl_at(r1, t)?, &pl_at(r2, t)?)))?;
    Ok((found.map(|(_, d)| d), coverage))
}

/// The first tuple (in order) where `f` returns a value, and how many tuples
/// were examined. Chunks run in parallel; a chunk containing a hit ends the
/// search, so the answer does not depend on scheduling.
fn first_hit<T: Send>(
    tuples: &[Vec<usize>],
    f: impl Fn(&[usize]) -> Result<Option<T>> + Sync,
) -> Result<(Option<(usize, T)>, usize)> {
    const CHUNK: usize = 512;
    for (c, chunk) in tuples.chunks(CHUNK).enumerate() {
        let hits: Vec<Option<T>> = chunk.par_iter().map(|t| f(t)).collect::<Result<_>>()?;
        if let Some((i, hit)) = hits.into_iter().enumerate().find_map(|(i, h)| h.map(|h| (i, h))) {
            let idx = c * CHUNK + i;
            return Ok((Some((idx, hit)), idx + 1));
        }
    }
    Ok((None, tuples.len()))
}

/// The first `budget` multisets in lexicographic order, or all of them.
fn budgeted_multisets(g: &FiniteGroup, k: usize, opts: &VerifyOptions) -> (Vec<Vec<usize>>, Coverage) {
    let total = num::integer::binomial(g.order() as u128 + k as u128 - 1, k as u128);
    let take = opts.budget.max(1) as u128;
    let tuples: Vec<Vec<usize>> = multisets(g.order(), k).take(take.min(total) as usize).collect();
    let coverage = if (tuples.len() as u128) == total {
        Coverage::Exhaustive
    } else {
        Coverage::Sampled {
            seed: opts.seed,
            size: tuples.len() as u64,
            population: total.to_string(),
        }
    };
    (tuples, coverage)
}

pub fn compare(r1: &Representation, r2: &Representation, family: Family, opts: &VerifyOptions) -> Result<ConjugacyVerdict> {
    let element_witness = element_conjugate(r1, r2, family)?;
    let (distinction, coverage) = globally_conjugate(r1, r2, family, opts)?;
    Ok(ConjugacyVerdict {
        family,
        element_conjugate: element_witness.is_none(),
        element_witness,
        globally_conjugate: distinction.is_none(),
        distinction,
        coverage,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub labels: Vec<String>,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub holds: bool,
    pub dim: usize,
    /// An element with `det(ρ(γ) - ρ(γ)^t) != 0`.
    pub blocking: Option<usize>,
    /// The first multiset with nonzero `pl`.
    pub witness: Option<Witness>,
    pub tuples_checked: u64,
    pub coverage: Coverage,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension: {}", self.dim)?;
        match self.blocking {
            Some(g) => writeln!(f, "det(rho(g) - rho(g)^t) != 0 at element {g}")?,
            None => writeln!(f, "det(rho(g) - rho(g)^t) = 0 for every element")?,
        }
        match &self.witness {
            Some(w) => writeln!(f, "witness: pl({}) = {}", w.labels.join(", "), w.value)?,
            None if self.blocking.is_none() => {
                writeln!(f, "no tuple with nonzero pl among {} checked", self.tuples_checked)?
            }
            None => {}
        }
        writeln!(f, "criterion holds: {}", if self.holds { "yes" } else { "no" })
    }
}

/// For `ρ` into `SO_{2n}`: every `ρ(γ) - ρ(γ)^t` singular and some `pl`
/// value nonzero. Such a `ρ` is element-conjugate but not globally conjugate
/// to its conjugate by any `X` in `O_{2n} \ SO_{2n}`.
pub fn so_counterexample_criterion(rep: &Representation, opts: &VerifyOptions) -> Result<CriterionReport> {
    if rep.dim() % 2 == 1 || !rep.classify().families.contains(&Family::SO) {
        return Err(invalid("criterion needs a representation into an even special orthogonal group"));
    }
    let blocking = rep
        .images()
        .par_iter()
        .map(|m| Ok(!m.try_sub(&m.transpose())?.det()?.is_zero()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .position(|b| b);
    if blocking.is_some() {
        return Ok(CriterionReport {
            holds: false,
            dim: rep.dim(),
            blocking,
            witness: None,
            tuples_checked: 0,
            coverage: Coverage::Exhaustive,
        });
    }
    let (tuples, coverage) = budgeted_multisets(rep.group(), rep.dim() / 2, opts);
    let (first, checked) = first_hit(&tuples, |t| {
        let v = pl_at(rep, t)?;
        Ok((!v.is_zero()).then_some(v))
    })?;
    let witness = first.map(|(i, value)| Witness {
        tuple: tuples[i].clone(),
        labels: tuples[i].iter().map(|&g| rep.group().label(g)).collect(),
        value,
    });
    Ok(CriterionReport {
        holds: witness.is_some(),
        dim: rep.dim(),
        blocking: None,
        witness,
        tuples_checked: checked as u64,
        coverage,
    })
}

/// The rotation `[[0, 1], [-1, 0]]` of order 4.
pub fn rotation_a() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]])
}

/// `Z/4 × Z/4` with `(a, b)` at index `4a + b`.
pub fn z4_squared() -> FiniteGroup {
    let z4 = FiniteGroup::cyclic(4).expect("Z/4");
    FiniteGroup::direct_product(&z4, &z4)
}

/// Generator images of `ρ_{2n}`: `(1,0) ↦ A ⊕ A ⊕ I ⊕ A^{⊕(n-3)}`,
/// `(0,1) ↦ I ⊕ A ⊕ A ⊕ A^{⊕(n-3)}`.
pub fn rho_2n_generators(n: usize) -> Result<[RationalMatrix; 2]> {
    if n < 3 {
        return Err(invalid(format!("the construction needs n >= 3, got {n}")));
    }
    let a = rotation_a();
    let i2 = RationalMatrix::identity(2);
    let tail = vec![&a; n - 3];
    let x: Vec<&RationalMatrix> = [&a, &a, &i2].into_iter().chain(tail.iter().copied()).collect();
    let y: Vec<&RationalMatrix> = [&i2, &a, &a].into_iter().chain(tail.iter().copied()).collect();
    Ok([RationalMatrix::direct_sum(&x), RationalMatrix::direct_sum(&y)])
}

/// `ρ_{2n}: Z/4 × Z/4 → SO_{2n}`.
pub fn build_rho_2n(n: usize) -> Result<Representation> {
    let gens = rho_2n_generators(n)?;
    let grp = z4_squared();
    Representation::from_generators(&grp, &[GroupElement(4), GroupElement(1)], &gens)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcceptabilityReport {
    pub family: Family,
    pub verdicts: Vec<ConjugacyVerdict>,
    /// Indices of pairs that are element-conjugate but not globally conjugate.
    pub violations: Vec<usize>,
}

/// Runs [`compare`] on each fixture pair and collects the pairs where element
/// conjugacy does not imply global conjugacy.
pub fn acceptability_suite(
    family: Family,
    fixtures: &[(Representation, Representation)],
    opts: &VerifyOptions,
) -> Result<AcceptabilityReport> {
    let verdicts = fixtures
        .iter()
        .map(|(a, b)| compare(a, b, family, opts))
        .collect::<Result<Vec<_>>>()?;
    let violations = verdicts
        .iter()
        .positions(|v| v.element_conjugate && !v.globally_conjugate)
        .collect();
    Ok(AcceptabilityReport {
        family,
        verdicts,
        violations,
    })
}
