//! The `GL_n` relation and the orthogonal families `F_{j,n+1}`, `G_{j,n+1}`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::perms::{check_perm_budget, factorial, Perm};
use super::poly::{KeyBuilder, RelationPolynomial, Ring, MAX_VAR};
use crate::error::{invalid, Error, Result};
use crate::words::{
    canonical_t_symbol, canonical_u_symbol, go_split, GLetter, GWord, TWord,
};

/// Permutations handled per parallel work unit.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UV {
    U,
    V,
}

impl UV {
    pub fn other(self) -> UV {
        match self {
            UV::U => UV::V,
            UV::V => UV::U,
        }
    }
}

/// `u_index` or `v_index`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSymbol {
    pub index: usize,
    pub letter: UV,
}

impl FormalSymbol {
    pub fn u(index: usize) -> Self {
        FormalSymbol { index, letter: UV::U }
    }

    pub fn v(index: usize) -> Self {
        FormalSymbol { index, letter: UV::V }
    }
}

impl fmt::Display for FormalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.letter {
            UV::U => 'u',
            UV::V => 'v',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// Unordered pair `(a, b) = (b, a)`, stored with `left <= right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSymbolPair {
    left: FormalSymbol,
    right: FormalSymbol,
}

impl FormalSymbolPair {
    pub fn new(a: FormalSymbol, b: FormalSymbol) -> Self {
        if a <= b {
            FormalSymbolPair { left: a, right: b }
        } else {
            FormalSymbolPair { left: b, right: a }
        }
    }

    pub fn left(&self) -> FormalSymbol {
        self.left
    }

    pub fn right(&self) -> FormalSymbol {
        self.right
    }
}

impl fmt::Display for FormalSymbolPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

fn check_j(n: usize, j: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if 2 * j > n + 1 {
        return Err(invalid(format!("j = {j} out of range 0..={} for n = {n}", n.div_ceil(2))));
    }
    check_perm_budget(n + 1)
}

/// Row and column labels of the determinant `D^j`, with `n + 1 = 2j + s`:
/// rows `u_1..u_{j+s}, v_1..v_j`, columns `u_{j+s+1}..u_{n+1}, v_{j+1}..v_{n+1}`.
fn dj_labels(n: usize, j: usize) -> (Vec<FormalSymbol>, Vec<FormalSymbol>) {
    let m = n + 1;
    let s = m - 2 * j;
    let rows = (1..=j + s)
        .map(FormalSymbol::u)
        .chain((1..=j).map(FormalSymbol::v))
        .collect();
    let cols = (j + s + 1..=m)
        .map(FormalSymbol::u)
        .chain((j + 1..=m).map(FormalSymbol::v))
        .collect();
    (rows, cols)
}

/// The monomials of `D^j`, one per column permutation, each with its sign.
pub fn build_dj_monomials(
    n: usize,
    j: usize,
) -> Result<impl Iterator<Item = (i64, Vec<FormalSymbolPair>)>> {
    check_j(n, j)?;
    let m = n + 1;
    let (rows, cols) = dj_labels(n, j);
    Ok((0..factorial(m)).map(move |k| {
        let p = Perm::nth(m, k);
        let pairs = (0..m)
            .map(|r| FormalSymbolPair::new(rows[r], cols[p.apply(r)]))
            .collect();
        (p.sign(), pairs)
    }))
}

/// Endpoint id: `2 * (index - 1) + (letter == V)`.
fn endpoint(s: FormalSymbol) -> usize {
    2 * (s.index - 1) + (s.letter == UV::V) as usize
}

/// `partner[e]` is the other end of the unique pair containing endpoint `e`.
fn partner_table(monomial: &[FormalSymbolPair], m: usize) -> Result<Vec<usize>> {
    let mut partner = vec![usize::MAX; 2 * m];
    for p in monomial {
        for s in [p.left, p.right] {
            if s.index == 0 || s.index > m {
                return Err(Error::Invariant(format!("symbol {s} outside 1..={m}")));
            }
        }
        let (a, b) = (endpoint(p.left), endpoint(p.right));
        if partner[a] != usize::MAX || partner[b] != usize::MAX || a == b {
            return Err(Error::Invariant(format!(
                "symbol used twice in monomial at pair {p}"
            )));
        }
        partner[a] = b;
        partner[b] = a;
    }
    if let Some(e) = partner.iter().position(|&x| x == usize::MAX) {
        return Err(Error::Invariant(format!(
            "vertex {} does not have degree 2",
            e / 2 + 1
        )));
    }
    Ok(partner)
}

/// Walks one cycle starting at index `start` (0-based), leaving through
/// `w_start`. Returns the visited indices and for each whether its slot word
/// is transposed: `N_a` is `M_a` exactly when `w_a = v_a`.
fn walk_cycle(partner: &[usize], start: usize, w_start: UV) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    let (mut a, mut w) = (start, w_start);
    loop {
        out.push((a, w == UV::U));
        if out.len() > partner.len() {
            return Err(Error::Invariant("cycle walk does not close".into()));
        }
        let e = partner[2 * a + (w == UV::V) as usize];
        let (b, lb) = (e / 2, if e.is_multiple_of(2) { UV::U } else { UV::V });
        // the pair is (w_a, w̄_b), so the next chain symbol is w_b = other(lb)
        let wb = lb.other();
        if b == start {
            if wb != w_start {
                return Err(Error::Invariant("cycle returns through the wrong letter".into()));
            }
            return Ok(out);
        }
        a = b;
        w = wb;
    }
}

fn cycle_word(cycle: &[(usize, bool)], slot_words: &[TWord]) -> TWord {
    let mut letters = Vec::new();
    for &(a, transposed) in cycle {
        let w = &slot_words[a];
        if transposed {
            letters.extend(w.transpose().letters().iter().copied());
        } else {
            letters.extend(w.letters().iter().copied());
        }
    }
    canonical_t_symbol(&TWord::new(letters).expect("cycles are nonempty"))
}

/// Rewrites a monomial of `D^j` as its multiset of canonical cycle words,
/// with `slot_words[a - 1]` standing for `M_a`.
pub fn monomial_to_term(monomial: &[FormalSymbolPair], slot_words: &[TWord]) -> Result<Vec<TWord>> {
    let m = slot_words.len();
    if monomial.len() != m {
        return Err(Error::Invariant(format!(
            "monomial has {} pairs for {m} slots",
            monomial.len()
        )));
    }
    let partner = partner_table(monomial, m)?;
    let mut seen = vec![false; m];
    let mut words = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let cycle = walk_cycle(&partner, start, UV::U)?;
        for &(a, _) in &cycle {
            seen[a] = true;
        }
        words.push(cycle_word(&cycle, slot_words));
    }
    words.sort();
    Ok(words)
}

fn single_letter_slots(m: usize) -> Vec<TWord> {
    (1..=m as u32).map(TWord::var).collect()
}

/// Collects `(sign, key)` pairs produced per permutation index in parallel.
fn collect_parallel<F>(m: usize, term: F) -> Result<HashMap<Box<[u8]>, i64>>
where
    F: Fn(usize) -> Result<(i64, Box<[u8]>)> + Sync,
{
    let total = factorial(m);
    let chunks: Vec<usize> = (0..total).step_by(CHUNK).collect();
    chunks
        .into_par_iter()
        .map(|lo| {
            let mut map: HashMap<Box<[u8]>, i64> = HashMap::new();
            for k in lo..(lo + CHUNK).min(total) {
                let (sign, key) = term(k)?;
                *map.entry(key).or_insert(0) += sign;
            }
            Ok(map)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            let (mut a, b) = if a.len() < b.len() { (b, a) } else { (std::mem::take(&mut a), b) };
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })
}

fn dim_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| invalid("dimension too large"))
}

/// `sum_σ sgn(σ) prod_{cycles (i_1 .. i_r)} U_{A_{i_1} ⋯ A_{i_r}}` over `S_{n+1}`.
pub fn gl_relation(n: usize) -> Result<RelationPolynomial> {
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let m = n + 1;
    check_perm_budget(m)?;
    let map = collect_parallel(m, |k| {
        let p = Perm::nth(m, k);
        let mut kb = KeyBuilder::default();
        for c in p.cycles() {
            let w = GWord::from_letters(c.iter().map(|&i| GLetter::new(i as u32 + 1, false)));
            kb.push_gword(&canonical_u_symbol(&w));
        }
        Ok((p.sign(), kb.finish(m)?))
    })?;
    Ok(RelationPolynomial::from_map(Ring::S, m, dim_u32(n)?, map))
}

/// `F_{j,n+1}(A_1, .., A_{n+1})` in the trace ring `R`.
pub fn f_relation(n: usize, j: usize) -> Result<RelationPolynomial> {
    f_relation_with_slots(n, j, &single_letter_slots(n + 1))
}

/// `F_{j,n+1}(M_1, .., M_{n+1})` for arbitrary slot words `M_a`.
pub fn f_relation_with_slots(n: usize, j: usize, slot_words: &[TWord]) -> Result<RelationPolynomial> {
    check_j(n, j)?;
    let m = n + 1;
    if slot_words.len() != m {
        return Err(invalid(format!("expected {m} slot words, got {}", slot_words.len())));
    }
    let arity = slot_words.iter().map(TWord::max_var).max().unwrap_or(0);
    if arity > MAX_VAR {
        return Err(invalid(format!("variable index above {MAX_VAR}")));
    }
    let (rows, cols) = dj_labels(n, j);
    let map = collect_parallel(m, |k| {
        let p = Perm::nth(m, k);
        let pairs: Vec<FormalSymbolPair> = (0..m)
            .map(|r| FormalSymbolPair::new(rows[r], cols[p.apply(r)]))
            .collect();
        let mut kb = KeyBuilder::default();
        for w in monomial_to_term(&pairs, slot_words)? {
            kb.push_tword(&w);
        }
        Ok((p.sign(), kb.finish(arity as usize)?))
    })?;
    Ok(RelationPolynomial::from_map(Ring::R, arity as usize, dim_u32(n)?, map))
}

/// `G_{j,n+1}`: every `T_M` of `F_{j,n+1}` (taken in canonical form) becomes
/// `l_{M'} U_{M''}`, and `U_1` becomes the constant `n`.
pub fn g_relation(n: usize, j: usize) -> Result<RelationPolynomial> {
    let f = f_relation(n, j)?;
    let arity = f.arity();
    let mut map: HashMap<Box<[u8]>, i64> = HashMap::new();
    for term in f.terms() {
        let mut kb = KeyBuilder::default();
        for w in &term.t_factors {
            let (l, g) = go_split(w);
            kb.add_l(&l);
            let g = canonical_u_symbol(&g);
            if g.is_identity() {
                kb.bump_const();
            } else {
                kb.push_gword(&g);
            }
        }
        *map.entry(kb.finish(arity)?).or_insert(0) += term.coeff;
    }
    Ok(RelationPolynomial::from_map(Ring::S, arity, f.dimension(), map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, sample, Rational, RationalMatrix};
    use crate::words::{word_transpose, Letter};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle_letters(cycle: &[(usize, bool)]) -> Vec<Letter> {
        cycle.iter().map(|&(a, t)| Letter::new(a as u32 + 1, t)).collect()
    }

    #[test]
    fn small_relations_print_as_expected() {
        assert_eq!(gl_relation(1).unwrap().to_string(), "U[A1]·U[A2] − U[A1 A2]");
        assert_eq!(f_relation(1, 0).unwrap().to_string(), "T[A1]·T[A2] − T[A1 A2]");
        assert_eq!(f_relation(1, 1).unwrap().to_string(), "−T[A1 A2] + T[A1 A2']");
        assert_eq!(g_relation(1, 1).unwrap().to_string(), "−U[A1 A2] + U[A1 A2-]·l[A2]");
        assert_eq!(gl_relation(2).unwrap().len(), 6);
        assert!(f_relation(2, 2).is_err());
        assert!(gl_relation(9).is_err());
    }

    #[test]
    fn monomials_use_every_symbol_once() {
        for n in 1..=4 {
            for j in 0..=(n + 1) / 2 {
                let mut count = 0;
                for (_, pairs) in build_dj_monomials(n, j).unwrap() {
                    count += 1;
                    let mut used: Vec<FormalSymbol> =
                        pairs.iter().flat_map(|p| [p.left(), p.right()]).collect();
                    used.sort();
                    let expect: Vec<FormalSymbol> = (1..=n + 1)
                        .flat_map(|i| [FormalSymbol::u(i), FormalSymbol::v(i)])
                        .collect();
                    assert_eq!(used, expect);
                    if j == 0 {
                        assert!(pairs.iter().all(|p| p.left().letter != p.right().letter));
                    }
                }
                assert_eq!(count, factorial(n + 1));
            }
        }
        assert_eq!(build_dj_monomials(1, 1).unwrap().count(), 2);
        assert!(build_dj_monomials(3, 3).is_err());
    }

    #[test]
    fn pair_is_unordered() {
        let a = FormalSymbol::u(2);
        let b = FormalSymbol::v(1);
        assert_eq!(FormalSymbolPair::new(a, b), FormalSymbolPair::new(b, a));
    }

    #[test]
    fn fixed_point_gives_singleton_word() {
        let slots = single_letter_slots(1);
        let w = monomial_to_term(&[FormalSymbolPair::new(FormalSymbol::u(1), FormalSymbol::v(1))], &slots)
            .unwrap();
        assert_eq!(w, vec![TWord::var(1)]);
    }

    #[test]
    fn malformed_monomial_is_an_invariant_error() {
        let slots = single_letter_slots(2);
        let bad = [
            FormalSymbolPair::new(FormalSymbol::u(1), FormalSymbol::u(2)),
            FormalSymbolPair::new(FormalSymbol::u(1), FormalSymbol::v(2)),
        ];
        assert!(matches!(monomial_to_term(&bad, &slots), Err(Error::Invariant(_))));
    }

    #[test]
    fn walk_is_independent_of_start_and_direction() {
        for n in 1..=3 {
            for j in 0..=(n + 1) / 2 {
                let slots = single_letter_slots(n + 1);
                for (_, pairs) in build_dj_monomials(n, j).unwrap() {
                    let partner = partner_table(&pairs, n + 1).unwrap();
                    for start in 0..=n {
                        let fwd = walk_cycle(&partner, start, UV::U).unwrap();
                        let bwd = walk_cycle(&partner, start, UV::V).unwrap();
                        let a = canonical_t_symbol(&TWord::new(cycle_letters(&fwd)).unwrap());
                        let b = canonical_t_symbol(&TWord::new(cycle_letters(&bwd)).unwrap());
                        assert_eq!(a, b);
                        assert_eq!(a, cycle_word(&fwd, &slots));
                        // walking backwards reads the transposed word
                        assert_eq!(
                            canonical_t_symbol(&word_transpose(&TWord::new(cycle_letters(&bwd)).unwrap())),
                            a
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn j_zero_reduces_to_gl() {
        for n in 1..=4 {
            assert_eq!(f_relation(n, 0).unwrap().transpose_free_as_u().unwrap(), gl_relation(n).unwrap());
        }
    }

    #[test]
    fn rebuild_is_idempotent() {
        assert_eq!(f_relation(3, 1).unwrap(), f_relation(3, 1).unwrap());
        assert_eq!(g_relation(4, 2).unwrap(), g_relation(4, 2).unwrap());
    }

    /// The uncollected monomial sum, evaluated term by term.
    fn raw_f_value(n: usize, j: usize, mats: &[RationalMatrix]) -> Rational {
        let slots = single_letter_slots(n + 1);
        let mut total = int(0);
        for (sign, pairs) in build_dj_monomials(n, j).unwrap() {
            let mut prod = int(sign);
            for w in monomial_to_term(&pairs, &slots).unwrap() {
                prod *= crate::words::eval_tword(&w, mats).unwrap().trace().unwrap();
            }
            total += prod;
        }
        total
    }

    #[test]
    fn collection_preserves_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=3 {
            for j in 0..=(n + 1) / 2 {
                let f = f_relation(n, j).unwrap();
                for _ in 0..3 {
                    let dim = 1 + n % 2;
                    let mats: Vec<_> = (0..=n).map(|_| sample::random_matrix(dim, dim, &mut rng)).collect();
                    assert_eq!(f.eval_on_matrices(&mats, None).unwrap(), raw_f_value(n, j, &mats));
                }
            }
        }
    }

    #[test]
    fn orthogonal_relations_vanish_on_orthogonal_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=3 {
            for j in 0..=(n + 1) / 2 {
                let f = f_relation(n, j).unwrap();
                let g = g_relation(n, j).unwrap();
                for _ in 0..5 {
                    let qs: Vec<_> = (0..=n)
                        .map(|_| sample::sample_orthogonal_with(n, false, &mut rng).unwrap())
                        .collect();
                    assert_eq!(f.eval_on_matrices(&qs, None).unwrap(), int(0));
                    let ones = vec![int(1); n + 1];
                    assert_eq!(g.eval_on_matrices(&qs, Some(&ones)).unwrap(), int(0));
                    let cs: Vec<Rational> = (0..=n).map(|_| sample::random_nonzero(&mut rng)).collect();
                    let scaled: Vec<_> = qs.iter().zip(&cs).map(|(q, c)| q.scale(c)).collect();
                    let lambdas: Vec<Rational> = cs.iter().map(|c| c * c).collect();
                    assert_eq!(g.eval_on_matrices(&scaled, Some(&lambdas)).unwrap(), int(0));
                }
            }
        }
    }

    #[test]
    fn slot_words_substitute() {
        // F_{0,2}(A1 A2, A3) = T[A1 A2]·T[A3] − T[A1 A2 A3]
        let slots: Vec<TWord> = vec!["A1 A2".parse().unwrap(), TWord::var(3)];
        let f = f_relation_with_slots(1, 0, &slots).unwrap();
        assert_eq!(f.to_string(), "T[A1 A2]·T[A3] − T[A1 A2 A3]");
    }
}
