//! Built-in regression for the crossed module G(2,3): E = C_3, G = C_2,
//! ∂ trivial, the generator of G inverting E.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::CycMatrix;
use crate::intertwiners::{self, OneIntertwiner};
use crate::reps::{self, CatRep, UpTo};
use crate::twovect::{NatMatrix, TwoMorphism};
use crate::xmod::{self, CrossedModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_owned(), pass, detail: detail.into() }
}

/// `V(2)_ξ` with `ξ = ω^k` at index 0 and `ξ⁻¹` at index 1.
pub fn twisted(m: &Arc<CrossedModule>, k: u32) -> CatRep {
    let k = k % 3;
    let k2 = (3 - k) % 3;
    reps::validate_rep(
        m.clone(),
        2,
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, k, (2 * k) % 3], vec![0, k2, (2 * k2) % 3]],
    )
    .expect("V(2)_ξ is a representation")
}

/// Shape pattern of the admissible 1-intertwiners `r → t`: one letter per
/// cell orbit that allows a nonzero fiber, `0` elsewhere, e.g. `(a 0; 0 a)`.
pub fn shape_pattern(r: &CatRep, t: &CatRep) -> String {
    let orbits = intertwiners::admissible_shapes(r, t).expect("same crossed module");
    let mut grid = vec![vec!['0'; t.dim()]; r.dim()];
    for (letter, o) in (b'a'..).zip(orbits.iter().filter(|o| o.permitted)) {
        for &(i, j) in &o.cells {
            grid[i][j] = letter as char;
        }
    }
    let rows: Vec<String> = grid
        .iter()
        .map(|row| row.iter().map(char::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("({})", rows.join("; "))
}

/// The 1-intertwiner `V(2)_{ξψ} ⊞ V(2)_{ξψ⁻¹} → V(2)_ξ ⊠ V(2)_ψ` for
/// `ξ = ω^a`, `ψ = ω^b`, with shape rows `0→0, 1→3, 2→1, 3→2` and every
/// nonzero block equal to `(1)`.
pub fn unit_block_witness(
    m: &Arc<CrossedModule>,
    a: u32,
    b: u32,
) -> Result<OneIntertwiner, intertwiners::IntertwinerError> {
    let src = reps::boxplus_rep(&twisted(m, a + b), &twisted(m, a + 3 - b % 3)).expect("same crossed module");
    let tgt = reps::boxtimes_rep(&twisted(m, a), &twisted(m, b)).expect("same crossed module");
    let shape = NatMatrix::permutation(&[0, 3, 1, 2]);
    let mut action = Vec::new();
    for x in m.base().elements() {
        let a = src.object(x).hcompose(&shape)?;
        let b = shape.hcompose(&tgt.object(x))?;
        let cell = TwoMorphism::from_fn(a.clone(), b, 1, |i, j| CycMatrix::identity(a.get(i, j), 1))?;
        action.push(cell);
    }
    OneIntertwiner::new(src, tgt, shape, action)
}

fn decomposition_classes(m: &Arc<CrossedModule>, r: &CatRep, expected: &[CatRep]) -> (bool, String) {
    let Ok((parts, _)) = r.decompose() else {
        return (false, "decomposition failed".into());
    };
    let ok = parts.len() == expected.len()
        && parts
            .iter()
            .zip(expected)
            .all(|(p, e)| intertwiners::is_isomorphic(p, e).ok().flatten().is_some());
    let names: Vec<String> = parts.iter().map(|p| name_of(m, p)).collect();
    (ok, names.join(" ⊞ "))
}

/// Name of a G(2,3) representation of dimension at most 2; `≅ name` when
/// only an isomorphic copy is recognized.
pub fn name_of(m: &Arc<CrossedModule>, r: &CatRep) -> String {
    let candidates = [
        ("V(1)", reps::trivial_rep(m.clone(), 1)),
        ("V(2)", reps::trivial_rep(m.clone(), 2)),
        ("V(2)_1", twisted(m, 0)),
        ("V(2)_ω", twisted(m, 1)),
        ("V(2)_ω²", twisted(m, 2)),
    ];
    if let Some((name, _)) = candidates.iter().find(|(_, c)| c == r) {
        return (*name).to_owned();
    }
    for (name, c) in &candidates {
        if c.dim() == r.dim() && intertwiners::is_isomorphic(c, r).ok().flatten().is_some() {
            return format!("≅ {name}");
        }
    }
    format!("{r:?}")
}

fn witness_ok(w: Option<OneIntertwiner>) -> bool {
    w.is_some_and(|w| w.check_all_morphisms().is_ok() && w.is_invertible())
}

pub fn verify_g23() -> Vec<Check> {
    let m = Arc::new(xmod::g23());
    let v1 = reps::trivial_rep(m.clone(), 1);
    let v2 = reps::trivial_rep(m.clone(), 2);
    let (w1, w, w2) = (twisted(&m, 0), twisted(&m, 1), twisted(&m, 2));
    let iso = |a: &CatRep, b: &CatRep| intertwiners::is_isomorphic(a, b).ok().flatten();
    let mut out = Vec::new();

    let one = reps::classify_one_dimensional(&m);
    out.push(check(
        "one-dimensional representations",
        one.len() == 1 && one[0] == v1,
        format!("{} found", one.len()),
    ));
    let all = reps::enumerate_reps(&m, 2, UpTo::Equality);
    out.push(check(
        "two-dimensional representations up to equality",
        all == vec![v2.clone(), w1.clone(), w.clone(), w2.clone()],
        format!("{} found", all.len()),
    ));
    let classes = reps::enumerate_reps(&m, 2, UpTo::Isomorphism);
    out.push(check("two-dimensional isomorphism classes", classes.len() == 3, format!("{} classes", classes.len())));
    let sum = reps::boxplus_rep(&v1, &v1).expect("same crossed module");
    out.push(check("V(2) ≅ V(1) ⊞ V(1)", witness_ok(iso(&sum, &v2)), "witness validated"));
    out.push(check("V(2)_ω ≅ V(2)_ω²", witness_ok(iso(&w, &w2)), "witness validated"));
    out.push(check("V(2) ≇ V(2)_1", iso(&v2, &w1).is_none(), "no equivariant permutation"));

    out.push(check(
        "decomposability",
        v2.is_decomposable() && [&w1, &w, &w2].iter().all(|r| r.is_indecomposable()),
        "V(2) decomposable; V(2)_1, V(2)_ω, V(2)_ω² indecomposable",
    ));
    let irr_w = reps::is_irreducible(&w);
    let irr_w2 = reps::is_irreducible(&w2);
    out.push(check(
        "V(2)_ω and V(2)_ω² irreducible",
        irr_w.irreducible && irr_w2.irreducible,
        "no retract onto V(1)",
    ));
    let red = reps::is_irreducible(&w1);
    let red_ok = !red.irreducible
        && red.witness.as_ref().is_some_and(|wit| wit.s == v1 && wit.check(&w1).is_ok());
    out.push(check("V(2)_1 reducible", red_ok, "V(1) is a retract of V(2)_1"));
    out.push(check(
        "stabilizer criterion agrees",
        [(&w, true), (&w2, true), (&w1, false)]
            .iter()
            .all(|(r, irr)| reps::is_irreducible(r).stabilizer_criterion == Some(*irr)),
        "H = G_ξ exactly for ξ ≠ 1",
    ));

    let ww = reps::boxtimes_rep(&w, &w).expect("same crossed module");
    let (ok, names) = decomposition_classes(&m, &ww, &[w2.clone(), w1.clone()]);
    out.push(check("V(2)_ω ⊠ V(2)_ω", ok, names));
    let ww2 = reps::boxtimes_rep(&w, &w2).expect("same crossed module");
    let (ok, names) = decomposition_classes(&m, &ww2, &[w1.clone(), w2.clone()]);
    out.push(check("V(2)_ω ⊠ V(2)_ω²", ok, names));
    let unit_ok = (0..3).all(|a| {
        (0..3).all(|b| {
            unit_block_witness(&m, a, b).is_ok_and(|h| {
                h.check_all_morphisms().is_ok()
                    && h.inverse().is_ok_and(|k| {
                        intertwiners::hcompose_intertwiners(&h, &k)
                            .is_ok_and(|c| c == OneIntertwiner::identity(h.source()))
                    })
            })
        })
    });
    out.push(check(
        "unit-block witnesses V(2)_ξψ ⊞ V(2)_ξψ⁻¹ → V(2)_ξ ⊠ V(2)_ψ",
        unit_ok,
        "all nine (ξ, ψ), invertible, validated on all morphisms",
    ));

    let table = [
        (&v2, &v2, "(a b; c d)"),
        (&w, &w, "(a 0; 0 a)"),
        (&w, &w2, "(0 a; a 0)"),
        (&w1, &w1, "(a b; b a)"),
        (&v1, &v2, "(a b)"),
        (&v2, &v1, "(a; b)"),
        (&v1, &w1, "(a a)"),
        (&w1, &v1, "(a; a)"),
        (&v1, &w, "(0 0)"),
    ];
    for (r, t, expected) in table {
        let got = shape_pattern(r, t);
        out.push(check(
            &format!("shapes {} → {}", name_of(&m, r), name_of(&m, t)),
            got == expected,
            got,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for c in verify_g23() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
