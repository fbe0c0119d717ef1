//! Pseudocharacter data and the axiom verifiers.
//!
//! Every verifier runs all of its axiom families (a failure never stops the
//! others) and reports per-axiom tallies plus the first violations in
//! `(axiom, tuple)` order. Relation families whose tuple space exceeds the
//! budget are checked on a seeded uniform sample, and the report says so.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{int, linearized_pfaffian, Rational, RationalMatrix};
use crate::relations::{compiled_relation, det_from_traces_relation, Evaluator, RelationKind};
use crate::rep::Representation;

pub const DEFAULT_BUDGET: u64 = 2_000_000;
pub const DEFAULT_MAX_VIOLATIONS: usize = 20;
const PAR_CHUNK: usize = 256;

/// Values of `P` on `arity`-tuples; absent tuples are 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    arity: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl PTable {
    pub fn new(arity: usize) -> Self {
        PTable {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, tuple: Vec<usize>, value: Rational) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(invalid(format!(
                "P tuple {tuple:?} has length {}, expected {}",
                tuple.len(),
                self.arity
            )));
        }
        if value.is_zero() {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, value);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, tuple: &[usize]) -> Rational {
        self.entries.get(tuple).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }
}

/// A function `T` on a finite group with an optional similitude character
/// `l` and, for the even special orthogonal case, an optional `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudocharData {
    group: FiniteGroup,
    dim: usize,
    t: Vec<Rational>,
    l: Option<Vec<Rational>>,
    p: Option<PTable>,
}

impl PseudocharData {
    /// Rejects an `l` that is not a homomorphism to `Q^×`.
    pub fn new(group: FiniteGroup, dim: usize, t: Vec<Rational>, l: Option<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if t.len() != group.order() {
            return Err(invalid(format!(
                "T has {} values for a group of order {}",
                t.len(),
                group.order()
            )));
        }
        if let Some(l) = &l {
            check_similitude(&group, l)?;
        }
        Ok(PseudocharData {
            group,
            dim,
            t,
            l,
            p: None,
        })
    }

    pub fn with_p(mut self, p: PTable) -> Result<Self> {
        if let Some((bad, _)) = p.entries().find(|(k, _)| k.iter().any(|&g| g >= self.group.order())) {
            return Err(invalid(format!("P tuple {bad:?} names an element outside the group")));
        }
        self.p = Some(p);
        Ok(self)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self) -> &[Rational] {
        &self.t
    }

    pub fn l(&self) -> Option<&[Rational]> {
        self.l.as_deref()
    }

    pub fn p(&self) -> Option<&PTable> {
        self.p.as_ref()
    }

    /// Same data with `T(g)` shifted by `delta`.
    pub fn perturbed(&self, g: GroupElement, delta: &Rational) -> Self {
        let mut d = self.clone();
        d.t[g.0] += delta;
        d
    }

    pub fn with_dim(&self, dim: usize) -> Self {
        PseudocharData { dim, ..self.clone() }
    }
}

fn check_similitude(group: &FiniteGroup, l: &[Rational]) -> Result<()> {
    if l.len() != group.order() {
        return Err(Error::InvalidSimilitude(format!(
            "{} values for a group of order {}",
            l.len(),
            group.order()
        )));
    }
    if !l[group.identity().0].is_one() {
        return Err(Error::InvalidSimilitude("l(identity) != 1".into()));
    }
    if let Some(g) = l.iter().position(Zero::is_zero) {
        return Err(Error::InvalidSimilitude(format!("l({g}) = 0")));
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if l[group.mul_idx(a, b)] != &l[a] * &l[b] {
                return Err(Error::InvalidSimilitude(format!(
                    "l({a}·{b}) != l({a}) l({b})"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Relation evaluations (tuples times terms) allowed per family before
    /// falling back to sampling.
    pub budget: u64,
    pub seed: u64,
    pub max_violations: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
            max_violations: DEFAULT_MAX_VIOLATIONS,
        }
    }
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, size: u64, population: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub axiom: String,
    pub checked: u64,
    pub failed: u64,
    pub coverage: Coverage,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub tuple: Vec<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub dim: usize,
    pub group_order: usize,
    pub verdict: Verdict,
    pub tallies: Vec<AxiomTally>,
    pub total_violations: u64,
    /// The first violations in `(axiom, tuple)` order.
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(family: &str, d: &PseudocharData) -> Self {
        VerificationReport {
            family: family.to_string(),
            dim: d.dim,
            group_order: d.group.order(),
            verdict: Verdict::Pass,
            tallies: Vec::new(),
            total_violations: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn tally(&self, axiom: &str) -> Option<&AxiomTally> {
        self.tallies.iter().find(|t| t.axiom == axiom)
    }

    /// Axioms with at least one failure.
    pub fn failed_axioms(&self) -> Vec<&str> {
        self.tallies
            .iter()
            .filter(|t| t.failed > 0)
            .map(|t| t.axiom.as_str())
            .collect()
    }

    fn absorb(&mut self, tally: AxiomTally, mut violations: Vec<Violation>, k: usize) {
        self.total_violations += tally.failed;
        self.tallies.push(tally);
        self.violations.append(&mut violations);
        self.violations.sort();
        self.violations.truncate(k);
        self.verdict = if self.total_violations == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "family {}  dim {}  group order {}",
            self.family, self.dim, self.group_order
        )?;
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        writeln!(f, "verdict: {verdict}")?;
        let width = self.tallies.iter().map(|t| t.axiom.len()).max().unwrap_or(0);
        for t in &self.tallies {
            let cov = match &t.coverage {
                Coverage::Exhaustive => "exhaustive".to_string(),
                Coverage::Sampled {
                    seed,
                    size,
                    population,
                } => format!("sampled {size} of {population} (seed {seed})"),
            };
            writeln!(
                f,
                "  {:width$}  checked {:>9}  failed {:>7}  {cov}",
                t.axiom, t.checked, t.failed
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        if !self.violations.is_empty() {
            writeln!(
                f,
                "violations (first {} of {}):",
                self.violations.len(),
                self.total_violations
            )?;
            for v in &self.violations {
                let tuple = v.tuple.iter().map(|g| g.to_string()).join(", ");
                writeln!(f, "  {} at ({tuple}): {}", v.axiom, v.value)?;
            }
        }
        Ok(())
    }
}

/// Runs `check` over `arity`-tuples of group elements: all of them when
/// `order^arity * cost` fits the budget, else a seeded uniform sample of
/// `budget / cost` tuples. `check` returns the offending value, if any.
fn run_tuples<F>(
    axiom: &str,
    order: usize,
    arity: usize,
    cost: u64,
    opts: &VerifyOptions,
    salt: u64,
    check: F,
) -> Result<(AxiomTally, Vec<Violation>)>
where
    F: Fn(&[GroupElement]) -> Result<Option<Rational>> + Sync,
{
    let population = (order as u128).checked_pow(arity as u32);
    let exhaustive = population.is_some_and(|p| p.saturating_mul(cost.max(1) as u128) <= opts.budget as u128);
    let (tuples, coverage): (Box<dyn Fn(u64) -> Vec<GroupElement> + Sync>, _) = if exhaustive {
        let decode = move |mut k: u64| {
            let mut t = vec![GroupElement(0); arity];
            for slot in t.iter_mut().rev() {
                *slot = GroupElement((k % order as u64) as usize);
                k /= order as u64;
            }
            t
        };
        (Box::new(decode), Coverage::Exhaustive)
    } else {
        let seed = opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let size = (opts.budget / cost.max(1)).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample: Vec<Vec<GroupElement>> = (0..size)
            .map(|_| (0..arity).map(|_| GroupElement(rng.gen_range(0..order))).collect())
            .collect();
        let pop = match population {
            Some(p) => p.to_string(),
            None => format!("{order}^{arity}"),
        };
        (
            Box::new(move |k: u64| sample[k as usize].clone()),
            Coverage::Sampled {
                seed,
                size,
                population: pop,
            },
        )
    };
    let count = match (&coverage, population) {
        (Coverage::Exhaustive, Some(p)) => p as u64,
        (Coverage::Sampled { size, .. }, _) => *size,
        _ => unreachable!("exhaustive runs have a finite population"),
    };
    let k = opts.max_violations;
    let chunks: Vec<u64> = (0..count).step_by(PAR_CHUNK).collect();
    let (failed, violations) = chunks
        .into_par_iter()
        .map(|lo| {
            let mut failed = 0u64;
            let mut found = Vec::new();
            for i in lo..(lo + PAR_CHUNK as u64).min(count) {
                let t = tuples(i);
                if let Some(value) = check(&t)? {
                    failed += 1;
                    found.push(Violation {
                        axiom: axiom.to_string(),
                        tuple: t.iter().map(|g| g.0).collect(),
                        value,
                    });
                }
            }
            found.sort();
            found.truncate(k);
            Ok((failed, found))
        })
        .try_reduce(
            || (0, Vec::new()),
            |(fa, mut va), (fb, mut vb)| {
                va.append(&mut vb);
                va.sort();
                va.truncate(k);
                Ok((fa + fb, va))
            },
        )?;
    Ok((
        AxiomTally {
            axiom: axiom.to_string(),
            checked: count,
            failed,
            coverage,
        },
        violations,
    ))
}

fn nonzero(v: Rational) -> Option<Rational> {
    if v.is_zero() {
        None
    } else {
        Some(v)
    }
}

/// `T(1) = n` and `T(ab) = T(ba)`.
fn check_basic(rep: &mut VerificationReport, d: &PseudocharData, opts: &VerifyOptions) -> Result<()> {
    let g = &d.group;
    let n = int(d.dim as i64);
    let e = g.identity().0;
    let v = &d.t[e] - &n;
    let failed = !v.is_zero();
    rep.absorb(
        AxiomTally {
            axiom: "T(1)=n".into(),
            checked: 1,
            failed: failed as u64,
            coverage: Coverage::Exhaustive,
        },
        if failed {
            vec![Violation {
                axiom: "T(1)=n".into(),
                tuple: vec![e],
                value: v,
            }]
        } else {
            Vec::new()
        },
        opts.max_violations,
    );
    let (tally, vs) = run_tuples("centrality", g.order(), 2, 1, opts, 1, |t| {
        let (a, b) = (t[0].0, t[1].0);
        Ok(nonzero(&d.t[g.mul_idx(a, b)] - &d.t[g.mul_idx(b, a)]))
    })?;
    rep.absorb(tally, vs, opts.max_violations);
    Ok(())
}

/// `T(γ) = l(γ) T(γ^{-1})`.
fn check_inversion(rep: &mut VerificationReport, d: &PseudocharData, l: &[Rational], opts: &VerifyOptions) -> Result<()> {
    let g = &d.group;
    let (tally, vs) = run_tuples("inversion", g.order(), 1, 1, opts, 2, |t| {
        let a = t[0].0;
        Ok(nonzero(&d.t[a] - &l[a] * &d.t[g.inv_idx(a)]))
    })?;
    rep.absorb(tally, vs, opts.max_violations);
    Ok(())
}

fn check_relation(
    rep: &mut VerificationReport,
    d: &PseudocharData,
    l: Option<&[Rational]>,
    kind: RelationKind,
    opts: &VerifyOptions,
) -> Result<()> {
    let rel = compiled_relation(kind, d.dim)?;
    let ev = Evaluator::new(&rel, &d.group, &d.t, l)?;
    let (name, salt) = match kind {
        RelationKind::Gl => ("gl_relation".to_string(), 3),
        RelationKind::G(j) => (format!("G[j={j}]"), 16 + j as u64),
    };
    let (tally, vs) = run_tuples(
        &name,
        d.group.order(),
        rel.arity(),
        rel.term_count().max(1) as u64,
        opts,
        salt,
        |t| ev.eval(t).map(nonzero),
    )?;
    rep.absorb(tally, vs, opts.max_violations);
    Ok(())
}

/// `det(T)(g) = 1` through Newton's identities on `T(g), .., T(g^dim)`.
fn check_det(rep: &mut VerificationReport, d: &PseudocharData, opts: &VerifyOptions) -> Result<()> {
    let det = det_from_traces_relation(d.dim)?;
    let g = &d.group;
    let (tally, vs) = run_tuples("det(T)=1", g.order(), 1, 1, opts, 4, |t| {
        let traces: Vec<Rational> = (1..=d.dim as i64)
            .map(|k| d.t[g.power(t[0], k).0].clone())
            .collect();
        Ok(nonzero(det(&traces)? - Rational::one()))
    })?;
    rep.absorb(tally, vs, opts.max_violations);
    Ok(())
}

/// Forces `l ≡ 1`; a supplied `l` that differs is reported per element.
fn check_trivial_l(rep: &mut VerificationReport, d: &PseudocharData, opts: &VerifyOptions) -> Result<Vec<Rational>> {
    let ones = vec![Rational::one(); d.group.order()];
    if let Some(l) = &d.l {
        let (tally, vs) = run_tuples("l=1", d.group.order(), 1, 1, opts, 5, |t| {
            Ok(nonzero(&l[t[0].0] - Rational::one()))
        })?;
        rep.absorb(tally, vs, opts.max_violations);
    }
    Ok(ones)
}

/// `GL_n`: `T(1) = n`, centrality, and the relation `Σ sgn(σ) T_σ = 0`.
pub fn verify_gl(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&format!("GL_{}", d.dim), d);
    check_basic(&mut rep, d, opts)?;
    check_relation(&mut rep, d, None, RelationKind::Gl, opts)?;
    Ok(rep)
}

fn go_checks(rep: &mut VerificationReport, d: &PseudocharData, l: &[Rational], opts: &VerifyOptions) -> Result<()> {
    check_basic(rep, d, opts)?;
    check_inversion(rep, d, l, opts)?;
    for j in 0..=d.dim.div_ceil(2) {
        check_relation(rep, d, Some(l), RelationKind::G(j), opts)?;
    }
    Ok(())
}

/// `GO_n`: the `GL` basics, `T(γ) = l(γ) T(γ^{-1})`, and `H_{j,n+1} = 0` for
/// every `0 <= j <= (n+1)/2`.
pub fn verify_go(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    let l = d.l.clone().ok_or(Error::MissingSimilitude)?;
    let mut rep = VerificationReport::new(&format!("GO_{}", d.dim), d);
    go_checks(&mut rep, d, &l, opts)?;
    Ok(rep)
}

/// `O_n`: `(T, 1)` is a `GO_n` pseudocharacter.
pub fn verify_o(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&format!("O_{}", d.dim), d);
    let ones = check_trivial_l(&mut rep, d, opts)?;
    go_checks(&mut rep, d, &ones, opts)?;
    Ok(rep)
}

const SYMPLECTIC_BANNER: &str = "symplectic relation family not checked";

fn gsp_checks(rep: &mut VerificationReport, d: &PseudocharData, l: &[Rational], opts: &VerifyOptions) -> Result<()> {
    if d.dim % 2 == 1 {
        return Err(invalid(format!("symplectic families need even dimension, got {}", d.dim)));
    }
    check_basic(rep, d, opts)?;
    check_inversion(rep, d, l, opts)?;
    rep.notes.push(SYMPLECTIC_BANNER.into());
    Ok(())
}

/// `GSp_{2n}`: `T(1) = n`, centrality, `T(γ) = l(γ) T(γ^{-1})`.
pub fn verify_gsp(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    let l = d.l.clone().ok_or(Error::MissingSimilitude)?;
    let mut rep = VerificationReport::new(&format!("GSp_{}", d.dim), d);
    gsp_checks(&mut rep, d, &l, opts)?;
    Ok(rep)
}

/// `Sp_{2n}`: the `GSp` axioms with `l ≡ 1`.
pub fn verify_sp(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(&format!("Sp_{}", d.dim), d);
    let ones = check_trivial_l(&mut rep, d, opts)?;
    gsp_checks(&mut rep, d, &ones, opts)?;
    Ok(rep)
}

/// `SO_{2n+1}`: an `O` pseudocharacter with `det(T) = 1`.
pub fn verify_so_odd(d: &PseudocharData, opts: &VerifyOptions) -> Result<VerificationReport> {
    if d.dim.is_multiple_of(2) {
        return Err(invalid(format!("odd special orthogonal case needs odd dimension, got {}", d.dim)));
    }
    let mut rep = VerificationReport::new(&format!("SO_{}", d.dim), d);
    let ones = check_trivial_l(&mut rep, d, opts)?;
    go_checks(&mut rep, d, &ones, opts)?;
    check_det(&mut rep, d, opts)?;
    Ok(rep)
}

/// Non-increasing index tuples of length `k` over `0..order`, in
/// lexicographic order.
pub(crate) fn multisets(order: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..order)
        .combinations_with_replacement(k)
        .map(|mut v| {
            v.reverse();
            v
        })
        .sorted()
}

/// `SO_{2n}`: the `O` axioms and `det(T) = 1`. A supplied `P` is checked for
/// symmetry in its arguments and, with a matrix model attached, against
/// `pl` of the model. The pair-product relation on `P` is not checked.
pub fn verify_so_even(
    d: &PseudocharData,
    model: Option<&Representation>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if d.dim % 2 == 1 {
        return Err(invalid(format!("even special orthogonal case needs even dimension, got {}", d.dim)));
    }
    let half = d.dim / 2;
    if let Some(p) = &d.p {
        if p.arity() != half {
            return Err(invalid(format!("P has arity {}, expected {half}", p.arity())));
        }
    }
    if let Some(m) = model {
        if m.dim() != d.dim || m.group().order() != d.group.order() {
            return Err(invalid("model representation does not match the data's group and dimension"));
        }
    }
    let mut rep = VerificationReport::new(&format!("SO_{}", d.dim), d);
    let ones = check_trivial_l(&mut rep, d, opts)?;
    go_checks(&mut rep, d, &ones, opts)?;
    check_det(&mut rep, d, opts)?;
    rep.notes.push("pair-product relation on P not checked".into());
    let Some(p) = &d.p else {
        rep.notes.push("P not supplied".into());
        return Ok(rep);
    };
    check_p_symmetry(&mut rep, p, opts);
    match model {
        Some(m) => check_p_model(&mut rep, d, p, m, opts)?,
        None => rep.notes.push("no model attached; P checked for symmetry only".into()),
    }
    Ok(rep)
}

fn check_p_symmetry(rep: &mut VerificationReport, p: &PTable, opts: &VerifyOptions) {
    let mut failed = 0;
    let mut vs = Vec::new();
    let mut checked = 0;
    for (tuple, value) in p.entries() {
        for perm in tuple.iter().copied().permutations(tuple.len()).unique() {
            checked += 1;
            let other = p.get(&perm);
            if &other != value {
                failed += 1;
                vs.push(Violation {
                    axiom: "P.symmetry".into(),
                    tuple: perm,
                    value: other - value,
                });
            }
        }
    }
    rep.absorb(
        AxiomTally {
            axiom: "P.symmetry".into(),
            checked,
            failed,
            coverage: Coverage::Exhaustive,
        },
        vs,
        opts.max_violations,
    );
}

fn check_p_model(
    rep: &mut VerificationReport,
    d: &PseudocharData,
    p: &PTable,
    model: &Representation,
    opts: &VerifyOptions,
) -> Result<()> {
    let g = &d.group;
    let (tally, vs) = run_tuples("model.trace", g.order(), 1, 1, opts, 6, |t| {
        Ok(nonzero(&d.t[t[0].0] - model.image(t[0]).trace()?))
    })?;
    rep.absorb(tally, vs, opts.max_violations);
    // P is symmetric (checked above), so one tuple per multiset suffices.
    let tuples: Vec<Vec<usize>> = multisets(g.order(), p.arity())
        .take(opts.budget.min(usize::MAX as u64) as usize)
        .collect();
    let total = num::integer::binomial(g.order() + p.arity() - 1, p.arity()) as u64;
    let results: Vec<Option<Violation>> = tuples
        .par_iter()
        .map(|t| {
            let mats: Vec<RationalMatrix> = t.iter().map(|&i| model.image(GroupElement(i)).clone()).collect();
            let pl = linearized_pfaffian(&mats)?;
            let diff = p.get(t) - pl;
            Ok((!diff.is_zero()).then(|| Violation {
                axiom: "P.model".into(),
                tuple: t.clone(),
                value: diff,
            }))
        })
        .collect::<Result<_>>()?;
    let vs: Vec<Violation> = results.into_iter().flatten().collect();
    let checked = tuples.len() as u64;
    let coverage = if checked == total {
        Coverage::Exhaustive
    } else {
        Coverage::Sampled {
            seed: 0,
            size: checked,
            population: total.to_string(),
        }
    };
    rep.absorb(
        AxiomTally {
            axiom: "P.model".into(),
            checked,
            failed: vs.len() as u64,
            coverage,
        },
        vs,
        opts.max_violations,
    );
    Ok(())
}

/// `{η : T(γη) = T(γ) for all γ}`.
pub fn kernel_of_t(d: &PseudocharData) -> Vec<GroupElement> {
    let g = &d.group;
    (0..g.order())
        .into_par_iter()
        .filter(|&eta| (0..g.order()).all(|gamma| d.t[g.mul_idx(gamma, eta)] == d.t[gamma]))
        .map(GroupElement)
        .collect()
}
