//! Acceptance run: one PASS/FAIL line per criterion, all at zero tolerance.

mod common;

use std::time::{Duration, Instant};

use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pseudochar::cli::docs::{representation_json, GroupSpec};
use pseudochar::cli::run;
use pseudochar::conjugacy::{build_rho_2n, so_counterexample_criterion};
use pseudochar::linalg::sample::{
    random_antisymmetric, random_matrix, random_nonzero, reflection, sample_orthogonal, sample_orthogonal_with,
    sample_signed_permutation,
};
use pseudochar::linalg::{int, linearized_pfaffian, pf_tilde, pfaffian, pl_block_oracle, Rational, RationalMatrix};
use pseudochar::pseudochar::VerifyOptions;
use pseudochar::relations::{det_from_traces_relation, f_relation, g_relation, gl_relation};
use pseudochar::rep::{conjugate_rep, Family, Representation};
use pseudochar::GroupElement;

use common::{fixtures, perturbation_point, verify_in};

type Outcome = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn images(r: &Representation, tuple: &[usize]) -> Vec<RationalMatrix> {
    tuple.iter().map(|&g| r.image(GroupElement(g)).clone()).collect()
}

fn write_rep(dir: &std::path::Path, name: &str, rep: &Representation) -> std::path::PathBuf {
    let spec = GroupSpec::Product {
        factors: vec![GroupSpec::Cyclic { m: 4 }, GroupSpec::Cyclic { m: 4 }],
    };
    let path = dir.join(name);
    let v = representation_json(&spec, rep, &[GroupElement(4), GroupElement(1)]);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rho = build_rho_2n(3).map_err(e)?;
    // (1,0) is element 4 and (0,1) is element 1
    let pl = linearized_pfaffian(&images(&rho, &[4, 1, 1])).map_err(e)?;
    ensure(pl == int(16), || format!("pl = {pl}, expected 16"))?;
    for m in rho.images() {
        let d = m.try_sub(&m.transpose()).map_err(e)?.det().map_err(e)?;
        ensure(d.is_zero(), || format!("det(rho - rho^t) = {d}"))?;
    }
    let rho_prime = conjugate_rep(&rho, &reflection(6)).map_err(e)?;
    let dir = tempfile::tempdir().map_err(e)?;
    let p1 = write_rep(dir.path(), "rho6.json", &rho);
    let p2 = write_rep(dir.path(), "rho6_prime.json", &rho_prime);
    let (a, b) = (p1.to_str().unwrap(), p2.to_str().unwrap());
    let so = run(["pseudochar", "conjugacy-compare", a, b, "--family", "so"]);
    ensure(so.code == 3, || format!("SO mode exit {}: {}{}", so.code, so.stdout, so.stderr))?;
    ensure(so.stdout.contains("pl at (4, 1, 1): 16 vs -16"), || so.stdout.clone())?;
    let o = run(["pseudochar", "conjugacy-compare", a, b, "--family", "o"]);
    ensure(o.code == 0, || format!("O mode exit {}: {}{}", o.code, o.stdout, o.stderr))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 3..=5 {
        let rho = build_rho_2n(n).map_err(e)?;
        let c = so_counterexample_criterion(&rho, &VerifyOptions::default()).map_err(e)?;
        ensure(c.holds, || format!("criterion fails for n = {n}"))?;
        let w = c.witness.ok_or("no witness")?;
        let mut expect = vec![1; n];
        expect[0] = 4;
        ensure(w.tuple == expect, || format!("n = {n}: witness {:?}", w.tuple))?;
        let oracle = pl_block_oracle(&images(&rho, &w.tuple)).map_err(e)?;
        ensure(oracle == w.value, || format!("n = {n}: pl {} vs block oracle {oracle}", w.value))?;
        ensure(!w.value.is_zero(), || "zero witness".into())?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))
}

fn criterion_3() -> Outcome {
    let a = RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    let i = RationalMatrix::identity(2);
    let pa = pfaffian(&a.try_sub(&a.transpose()).map_err(e)?).map_err(e)?;
    ensure(pa == int(2), || format!("pf(A - A^t) = {pa}"))?;
    let pi = pfaffian(&i.try_sub(&i.transpose()).map_err(e)?).map_err(e)?;
    ensure(pi.is_zero(), || format!("pf(I - I^t) = {pi}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for size in [2, 4, 6, 8] {
        for _ in 0..50 {
            let w = random_antisymmetric(size, &mut rng);
            let pf = pfaffian(&w).map_err(e)?;
            let det = w.det().map_err(e)?;
            ensure(&pf * &pf == det, || format!("pf^2 != det at size {size}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for n in 1..=4 {
        let f = f_relation(n, 0).map_err(e)?.transpose_free_as_u().map_err(e)?;
        let g = gl_relation(n).map_err(e)?;
        ensure(f == g, || format!("n = {n}: F_0 and the GL relation differ"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=3 {
        for j in 0..=(n + 1) / 2 {
            let f = f_relation(n, j).map_err(e)?;
            let g = g_relation(n, j).map_err(e)?;
            for k in 0..100 {
                let o_tuple: Vec<RationalMatrix> = (0..n + 1)
                    .map(|a| {
                        if (k + a) % 2 == 0 {
                            sample_orthogonal_with(n, false, &mut rng)
                        } else {
                            Ok(sample_signed_permutation(n, &mut rng))
                        }
                    })
                    .collect::<pseudochar::Result<_>>()
                    .map_err(e)?;
                let v = f.eval_on_matrices(&o_tuple, None).map_err(e)?;
                ensure(v.is_zero(), || format!("F(n={n}, j={j}) = {v} on an O_n tuple"))?;
                let scales: Vec<Rational> = (0..n + 1).map(|_| random_nonzero(&mut rng)).collect();
                let go_tuple: Vec<RationalMatrix> = o_tuple.iter().zip(&scales).map(|(q, c)| q.scale(c)).collect();
                let lambdas: Vec<Rational> = scales.iter().map(|c| c * c).collect();
                let v = g.eval_on_matrices(&go_tuple, Some(&lambdas)).map_err(e)?;
                ensure(v.is_zero(), || format!("G(n={n}, j={j}) = {v} on a GO_n tuple"))?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=3 {
        let rel = gl_relation(n).map_err(e)?;
        for _ in 0..100 {
            let mats: Vec<RationalMatrix> = (0..n + 1).map(|_| random_matrix(n, n, &mut rng)).collect();
            let v = rel.eval_on_matrices(&mats, None).map_err(e)?;
            ensure(v.is_zero(), || format!("GL relation n = {n} gives {v}"))?;
        }
    }
    let gl1 = gl_relation(1).map_err(e)?;
    let witness = (0..100).any(|_| {
        let pair = [random_matrix(2, 2, &mut rng), random_matrix(2, 2, &mut rng)];
        gl1.eval_on_matrices(&pair, None).map(|v| !v.is_zero()).unwrap_or(false)
    });
    ensure(witness, || "GL_1 relation vanished on every 2x2 pair".into())
}

fn criterion_7() -> Outcome {
    let expected = [
        ("trivial Z/4 dim 2", Family::Sp),
        ("trivial Z/4 dim 3", Family::SO),
        ("<A>", Family::Sp),
        ("rho_6", Family::SO),
        ("dihedral in O_2", Family::O),
        ("Sp_2 order 6", Family::Sp),
        ("SO_3 rotations", Family::SO),
        ("skewed S_3", Family::GL),
        ("GO_2 split-form dihedral", Family::GO),
        ("rho_8", Family::SO),
    ];
    let fx = fixtures(true);
    ensure(fx.len() == expected.len(), || "fixture list changed".into())?;
    for (f, (name, family)) in fx.iter().zip(expected) {
        ensure(f.name == name && f.family == family, || format!("{}: classified {:?}", f.name, f.family))?;
        let report = verify_in(f.family, &f.data, Some(&f.rep)).map_err(e)?;
        ensure(report.passed(), || format!("{} should pass:\n{report}", f.name))?;
        let g = perturbation_point(f.rep.group());
        let bad = f.data.perturbed(g, &int(1));
        let report = verify_in(f.family, &bad, Some(&f.rep)).map_err(e)?;
        ensure(!report.passed(), || format!("{} perturbed at {g} should fail", f.name))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=6 {
        let det_of = det_from_traces_relation(n).map_err(e)?;
        for _ in 0..50 {
            let m = random_matrix(n, n, &mut rng);
            let mut p = Vec::with_capacity(n);
            let mut power = m.clone();
            for _ in 0..n {
                p.push(power.trace().map_err(e)?);
                power = power.try_mul(&m).map_err(e)?;
            }
            let (a, b) = (det_of(&p).map_err(e)?, m.det().map_err(e)?);
            ensure(a == b, || format!("size {n}: Newton {a} vs det {b}"))?;
        }
    }
    let so3 = common::so3_rotations();
    let good = verify_in(Family::SO, &pseudochar::rep::trace_function(&so3).map_err(e)?, None).map_err(e)?;
    ensure(good.passed(), || format!("SO_3 fixture rejected:\n{good}"))?;
    let o3 = common::o3_cube();
    let d = pseudochar::rep::trace_function(&o3).map_err(e)?;
    let bad = verify_in(Family::SO, &d, None).map_err(e)?;
    ensure(bad.failed_axioms() == ["det(T)=1"], || format!("O_3 extension:\n{bad}"))
}

fn criterion_9() -> Outcome {
    let x = reflection(6);
    let x_inv = x.inverse().map_err(e)?;
    for k in 0..50 {
        let triple: Vec<RationalMatrix> = (0..3)
            .map(|i| sample_orthogonal(6, true, 900 + 3 * k + i))
            .collect::<pseudochar::Result<_>>()
            .map_err(e)?;
        let conj: Vec<RationalMatrix> = triple
            .iter()
            .map(|c| c.conjugate_by(&x, &x_inv))
            .collect::<pseudochar::Result<_>>()
            .map_err(e)?;
        let (a, b) = (linearized_pfaffian(&triple).map_err(e)?, linearized_pfaffian(&conj).map_err(e)?);
        ensure(a == -b.clone(), || format!("sample {k}: pl {a} vs conjugate {b}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let c = random_matrix(6, 6, &mut rng);
        let pl = linearized_pfaffian(&[c.clone(), c.clone(), c.clone()]).map_err(e)?;
        let pf = pf_tilde(&c).map_err(e)?;
        ensure(pl == int(6) * &pf, || format!("pl(C,C,C) = {pl}, 6 pf~(C) = {}", int(6) * pf))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("counterexample reproduction", criterion_1),
        ("rho_2n family", criterion_2),
        ("Pfaffian base facts", criterion_3),
        ("symbolic reduction", criterion_4),
        ("identity vanishing", criterion_5),
        ("GL relation", criterion_6),
        ("verifier soundness and discrimination", criterion_7),
        ("Newton determinant oracle", criterion_8),
        ("parity and polarization", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match &outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", i + 1),
            Err(msg) => {
                println!("criterion {}: FAIL  {name} ({took:.2?}): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
