#![allow(dead_code)]

use pseudochar::conjugacy::{build_rho_2n, rotation_a};
use pseudochar::linalg::{int, rational, RationalMatrix};
use pseudochar::pseudochar::{
    verify_gl, verify_go, verify_gsp, verify_o, verify_so_even, verify_so_odd, verify_sp, PseudocharData,
    VerificationReport, VerifyOptions,
};
use pseudochar::rep::{conjugate_rep, pl_table, trace_function, trace_function_with_form, Family, Representation};
use pseudochar::{FiniteGroup, GroupElement, Result};

pub struct Fixture {
    pub name: &'static str,
    pub family: Family,
    pub rep: Representation,
    pub data: PseudocharData,
}

fn classified(name: &'static str, rep: Representation) -> Fixture {
    let family = rep.classify().family;
    let mut data = trace_function(&rep).unwrap();
    if family == Family::SO && rep.dim().is_multiple_of(2) {
        data = data.with_p(pl_table(&rep).unwrap()).unwrap();
    }
    Fixture {
        name,
        family,
        rep,
        data,
    }
}

pub fn z4() -> FiniteGroup {
    FiniteGroup::cyclic(4).unwrap()
}

/// `<A>` for the rotation `A` of order 4.
pub fn cyclic_a() -> Representation {
    Representation::from_generators(&z4(), &[GroupElement(1)], &[rotation_a()]).unwrap()
}

/// Dihedral group of order 8 generated by the swap and `diag(1, -1)`.
pub fn dihedral() -> Representation {
    let s = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let d = RationalMatrix::from_i64(&[&[1, 0], &[0, -1]]);
    Representation::from_matrix_generators(&[s, d], 100).unwrap()
}

/// The split form `diag(1, -1)`.
pub fn split_form() -> RationalMatrix {
    RationalMatrix::diagonal(&[int(1), int(-1)])
}

/// The order-6 subgroup of `Sp_2 = SL_2` generated by `[[1, -1], [1, 0]]`.
pub fn sp2_hexagonal() -> Representation {
    Representation::from_matrix_generators(&[RationalMatrix::from_i64(&[&[1, -1], &[1, 0]])], 100).unwrap()
}

/// Rotation subgroup of the cube: even signed permutations, order 24.
pub fn so3_rotations() -> Representation {
    let cyc = RationalMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let quarter = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
    Representation::from_matrix_generators(&[cyc, quarter], 100).unwrap()
}

/// The full cube group (order 48), which contains `diag(-1, 1, 1)`.
pub fn o3_cube() -> Representation {
    let cyc = RationalMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let quarter = RationalMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
    let refl = RationalMatrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    Representation::from_matrix_generators(&[cyc, quarter, refl], 100).unwrap()
}

/// `S_3` permuting coordinates, conjugated off the orthogonal group.
pub fn skewed_s3() -> Representation {
    let t = RationalMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let c = RationalMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let perm = Representation::from_matrix_generators(&[t, c], 100).unwrap();
    let x = RationalMatrix::diagonal(&[int(2), int(1), rational(1, 3)]);
    conjugate_rep(&perm, &x).unwrap()
}

/// Every fixture with its expected family; `include_rho8` adds the costly one.
pub fn fixtures(include_rho8: bool) -> Vec<Fixture> {
    let mut out = vec![
        classified("trivial Z/4 dim 2", Representation::trivial(&z4(), 2).unwrap()),
        classified("trivial Z/4 dim 3", Representation::trivial(&z4(), 3).unwrap()),
        classified("<A>", cyclic_a()),
        classified("rho_6", build_rho_2n(3).unwrap()),
        classified("dihedral in O_2", dihedral()),
        classified("Sp_2 order 6", sp2_hexagonal()),
        classified("SO_3 rotations", so3_rotations()),
        classified("skewed S_3", skewed_s3()),
    ];
    let d = dihedral();
    out.push(Fixture {
        name: "GO_2 split-form dihedral",
        family: Family::GO,
        data: trace_function_with_form(&d, &split_form()).unwrap(),
        rep: d,
    });
    if include_rho8 {
        out.push(classified("rho_8", build_rho_2n(4).unwrap()));
    }
    out
}

pub fn verify_in(family: Family, d: &PseudocharData, model: Option<&Representation>) -> Result<VerificationReport> {
    let opts = VerifyOptions::default();
    match family {
        Family::GL => verify_gl(d, &opts),
        Family::O => verify_o(d, &opts),
        Family::GO => verify_go(d, &opts),
        Family::Sp => verify_sp(d, &opts),
        Family::GSp => verify_gsp(d, &opts),
        Family::SO if d.dim() % 2 == 1 => verify_so_odd(d, &opts),
        Family::SO => verify_so_even(d, model, &opts),
    }
}

/// The first element that is not its own inverse, else the first
/// non-identity element.
pub fn perturbation_point(g: &FiniteGroup) -> GroupElement {
    g.elements()
        .find(|&x| g.inverse(x) != x)
        .or_else(|| g.elements().find(|&x| x != g.identity()))
        .expect("nontrivial group")
}
