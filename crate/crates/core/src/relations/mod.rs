//! Symbolic trace relations and their evaluation.

mod eval;
mod perms;
mod poly;
mod procesi;

pub use eval::{compiled_relation, eval_relation, CompiledRelation, Evaluator, RelationKind};
pub use perms::{factorial, perms_with_sign, Perm, MAX_PERM_SIZE};
pub use poly::{RelationPolynomial, RelationTerm, Ring, MAX_VAR};
pub use procesi::{
    build_dj_monomials, f_relation, f_relation_with_slots, g_relation, gl_relation,
    monomial_to_term, FormalSymbol, FormalSymbolPair, UV,
};

use crate::error::{invalid, Error, Result};
use crate::linalg::{charpoly_coeffs_from_traces, int, Rational, RationalMatrix};
use crate::words::{eval_tword, TWord};

/// `tr(M N N^t P) - tr(MP) tr(N N^t) / dim` for words `[M, N, P]`. The
/// division by `dim` turns `tr(N N^t) = λ(N) dim` into `λ(N)`, so the value
/// vanishes whenever `N` evaluates to a similitude. With `normalized` unset
/// the bare difference `tr(M N N^t P) - tr(MP) tr(N N^t)` is returned.
pub fn tnn_relation_check(
    words: &[TWord; 3],
    assign: &[RationalMatrix],
    normalized: bool,
) -> Result<Rational> {
    let [m, n, p] = words;
    let dim = assign.first().ok_or_else(|| invalid("no matrices assigned"))?.rows();
    if assign.iter().any(|a| a.rows() != dim || a.cols() != dim) {
        return Err(Error::Dimension {
            op: "tnn_relation_check",
            detail: "matrices must be square of one dimension".into(),
        });
    }
    let nt = n.transpose();
    let lhs = eval_tword(&m.concat(n).concat(&nt).concat(p), assign)?.trace()?;
    let mp = eval_tword(&m.concat(p), assign)?.trace()?;
    let nn = eval_tword(&n.concat(&nt), assign)?.trace()?;
    let sub = mp * nn;
    Ok(if normalized {
        lhs - sub / int(dim as i64)
    } else {
        lhs - sub
    })
}

/// `(T(g), .., T(g^n)) -> det`, the last elementary symmetric function
/// recovered through Newton's identities.
pub fn det_from_traces_relation(n: usize) -> Result<impl Fn(&[Rational]) -> Result<Rational>> {
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    Ok(move |p: &[Rational]| {
        if p.len() != n {
            return Err(invalid(format!("expected {n} power traces, got {}", p.len())));
        }
        Ok(charpoly_coeffs_from_traces(p)?.pop().expect("n >= 1"))
    })
}
