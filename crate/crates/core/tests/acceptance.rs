use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use catrep::cli::g23::{shape_pattern, twisted, unit_block_witness};
use catrep::cyclotomic::{rank_nullspace, root_of_unity, CycMatrix, CycNumber};
use catrep::groups::{self, FiniteGroup, SymmetricGroup};
use catrep::intertwiners::{self, OneIntertwiner, OrbitFiber};
use catrep::reps::{self, CatRep, UpTo};
use catrep::twovect::{NatMatrix, TwoMorphism};
use catrep::xmod::{self, CatGroupMorphism, CrossedModule};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn g23() -> Arc<CrossedModule> {
    Arc::new(xmod::g23())
}

fn validated(h: &OneIntertwiner) -> Result<(), String> {
    h.check_all_morphisms().map_err(|e| e.to_string())
}

fn c1_one_dimensional() -> Outcome {
    let m = g23();
    let one = reps::classify_one_dimensional(&m);
    ensure(one.len() == 1, format!("{} one-dimensional representations", one.len()))?;
    ensure(one[0] == reps::trivial_rep(m.clone(), 1), "the representation is not trivial")?;
    Ok("1 representation, trivial".into())
}

fn c2_two_dimensional() -> Outcome {
    let m = g23();
    let v1 = reps::trivial_rep(m.clone(), 1);
    let v2 = reps::trivial_rep(m.clone(), 2);
    let (w1, w, w2) = (twisted(&m, 0), twisted(&m, 1), twisted(&m, 2));
    let all = reps::enumerate_reps(&m, 2, UpTo::Equality);
    ensure(all == vec![v2.clone(), w1.clone(), w.clone(), w2.clone()], format!("equality list {all:?}"))?;
    let classes = reps::enumerate_reps(&m, 2, UpTo::Isomorphism);
    ensure(classes.len() == 3, format!("{} classes", classes.len()))?;
    for (a, b) in [(&w, &w2), (&reps::boxplus_rep(&v1, &v1).unwrap(), &v2)] {
        let h = intertwiners::is_isomorphic(a, b).map_err(|e| e.to_string())?.ok_or("no witness")?;
        validated(&h)?;
        let k = h.inverse().map_err(|e| e.to_string())?;
        validated(&k)?;
        let there = intertwiners::hcompose_intertwiners(&h, &k).map_err(|e| e.to_string())?;
        let back = intertwiners::hcompose_intertwiners(&k, &h).map_err(|e| e.to_string())?;
        ensure(there == OneIntertwiner::identity(a) && back == OneIntertwiner::identity(b), "witness not inverse")?;
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            ensure(intertwiners::is_isomorphic(a, b).unwrap().is_none(), "two classes are isomorphic")?;
        }
    }
    Ok("4 up to equality, 3 classes, witnesses validated".into())
}

fn c3_decomposability() -> Outcome {
    let m = g23();
    let v1 = reps::trivial_rep(m.clone(), 1);
    let v2 = reps::trivial_rep(m.clone(), 2);
    let (w1, w, w2) = (twisted(&m, 0), twisted(&m, 1), twisted(&m, 2));
    ensure(v2.is_decomposable(), "V(2) indecomposable")?;
    ensure([&w1, &w, &w2].iter().all(|r| r.is_indecomposable()), "V(2)_ξ decomposable")?;
    let (parts, _) = v2.decompose().map_err(|e| e.to_string())?;
    ensure(parts == vec![v1.clone(), v1.clone()], "V(2) parts")?;
    for r in [&w, &w2] {
        let rep = reps::is_irreducible(r);
        ensure(rep.irreducible, "V(2)_ω reducible")?;
        ensure(rep.stabilizer_criterion == Some(true), "stabilizer criterion disagrees")?;
    }
    let rep = reps::is_irreducible(&w1);
    ensure(!rep.irreducible, "V(2)_1 irreducible")?;
    ensure(rep.stabilizer_criterion == Some(false), "stabilizer criterion disagrees on V(2)_1")?;
    let wit = rep.witness.ok_or("no witness for V(2)_1")?;
    ensure(wit.s == v1, "witness S is not V(1)")?;
    wit.check(&w1).map_err(|e| e.to_string())?;
    ensure(reps::is_irreducible(&v1).irreducible, "V(1) reducible")?;
    Ok(format!(
        "V(2)_1 reducible via h shape {}, h' shape {}",
        wit.h.shape(),
        wit.h_prime.shape()
    ))
}

fn c4_tensor_decomposition() -> Outcome {
    let m = g23();
    let (w1, w, w2) = (twisted(&m, 0), twisted(&m, 1), twisted(&m, 2));
    for (a, b, expected) in [(&w, &w, [&w2, &w1]), (&w, &w2, [&w1, &w2])] {
        let prod = reps::boxtimes_rep(a, b).unwrap();
        let (parts, pi) = prod.decompose().map_err(|e| e.to_string())?;
        ensure(parts.len() == 2, "two parts expected")?;
        for (p, e) in parts.iter().zip(expected) {
            ensure(intertwiners::is_isomorphic(p, e).unwrap().is_some(), format!("part {p:?}"))?;
        }
        let sum = reps::boxplus_rep(&parts[0], &parts[1]).unwrap();
        ensure(prod.relabel(&pi) == sum, "relabelled product differs from the sum of parts")?;
        let h = intertwiners::is_isomorphic(&sum, &prod).unwrap().ok_or("no isomorphism to the product")?;
        validated(&h)?;
    }
    // the explicit matrices, entry for entry
    let expected_shape = NatMatrix::from_rows(&[
        vec![1, 0, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
    ])
    .unwrap();
    for a in 0..3 {
        for b in 0..3 {
            let h = unit_block_witness(&m, a, b).map_err(|e| format!("({a}, {b}): {e}"))?;
            ensure(h.shape() == &expected_shape, "shape differs")?;
            for x in 0..2 {
                let cell = h.action(x);
                for i in 0..4 {
                    for j in 0..4 {
                        let blk = cell.block(i, j);
                        let want = if cell.source().get(i, j) == 1 {
                            CycMatrix::identity(1, 1)
                        } else {
                            CycMatrix::zeros(0, 0, 1)
                        };
                        ensure(blk == &want, format!("block ({i}, {j}) at X = {x}"))?;
                    }
                }
            }
            // every nonzero cell of h̃(−1) is (1)
            ensure(h.action(1).blocks().iter().filter(|b| b.rows() > 0).count() == 4, "four unit blocks")?;
            validated(&h)?;
            let k = h.inverse().map_err(|e| e.to_string())?;
            let round = intertwiners::hcompose_intertwiners(&h, &k).map_err(|e| e.to_string())?;
            ensure(round == OneIntertwiner::identity(h.source()), "not invertible")?;
        }
    }
    Ok("ω⊠ω = V(2)_ω² ⊞ V(2)_1, ω⊠ω² = V(2)_1 ⊞ V(2)_ω², unit-block witness validated".into())
}

/// Cell (i, j) admits a nonzero fiber iff ξ_i = ψ_j on ker ∂.
fn permitted_oracle(r: &CatRep, t: &CatRep, i: usize, j: usize) -> bool {
    let m = r.xmod();
    m.principal()
        .elements()
        .filter(|&e| m.boundary().apply(e) == 0)
        .all(|e| r.char(i).k(e) == t.char(j).k(e))
}

fn c5_shape_tables() -> Outcome {
    let m = g23();
    let v1 = reps::trivial_rep(m.clone(), 1);
    let v2 = reps::trivial_rep(m.clone(), 2);
    let (w1, w, w2) = (twisted(&m, 0), twisted(&m, 1), twisted(&m, 2));
    let table = [
        (&v2, &v2, "(a b; c d)"),
        (&w, &w, "(a 0; 0 a)"),
        (&w2, &w2, "(a 0; 0 a)"),
        (&w, &w2, "(0 a; a 0)"),
        (&w1, &w1, "(a b; b a)"),
        (&v1, &v2, "(a b)"),
        (&v2, &v1, "(a; b)"),
        (&v1, &w1, "(a a)"),
        (&w1, &v1, "(a; a)"),
        (&v1, &w, "(0 0)"),
        (&w, &v1, "(0; 0)"),
    ];
    for (r, t, expected) in table {
        let got = shape_pattern(r, t);
        ensure(got == expected, format!("{r:?} → {t:?}: {got}, expected {expected}"))?;
        for o in intertwiners::admissible_shapes(r, t).unwrap() {
            for &(i, j) in &o.cells {
                ensure(o.permitted == permitted_oracle(r, t, i, j), "permitted flag disagrees with oracle")?;
            }
        }
    }
    Ok(format!("{} shape tables", table.len()))
}

/// Exact inverse over ℚ by Gauss–Jordan, independent of the library.
fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v = &*v / &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let row_c = m[c].clone();
                for (v, w) in m[r].iter_mut().zip(row_c) {
                    *v = &*v - &f * w;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn c6_wreath_lemma() -> Outcome {
    let mut report = Vec::new();
    for n in 1..=3usize {
        let cells = n * n;
        let mut invertible = Vec::new();
        for code in 0..3usize.pow(cells as u32) {
            let entries: Vec<usize> = (0..cells).map(|k| code / 3usize.pow(k as u32) % 3).collect();
            let a = NatMatrix::new(n, n, entries.clone()).unwrap();
            let rows: Vec<Vec<i64>> = entries.chunks(n).map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            let oracle = rational_inverse(&rows)
                .is_some_and(|inv| inv.iter().flatten().all(|q| q.is_integer() && !q.is_negative()));
            ensure(a.is_invertible() == oracle, format!("disagreement at {a}"))?;
            if oracle {
                invertible.push(a);
            }
        }
        let perms = SymmetricGroup::new(n);
        ensure(invertible.len() == perms.group().order(), format!("{} invertible at N = {n}", invertible.len()))?;
        ensure(invertible.iter().all(|a| a.as_permutation().is_some()), "non-permutation invertible")?;
        // 2-endomorphisms of 1_N: only diagonal blocks are nonempty
        let id = NatMatrix::identity(n);
        let zero = TwoMorphism::zero(&id, &id).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = usize::from(i == j);
                ensure(zero.block(i, j).shape() == (want, want), "off-diagonal block nonempty")?;
            }
        }
        // conjugation by P permutes diagonal coordinates
        let d: Vec<CycNumber> = (0..n).map(|i| CycNumber::from_int(1, [2, 3, 5][i])).collect();
        let diag = TwoMorphism::from_fn(id.clone(), id.clone(), 1, |i, j| {
            if i == j {
                CycMatrix::single(d[i].clone())
            } else {
                CycMatrix::zeros(0, 0, 1)
            }
        })
        .unwrap();
        for x in perms.group().elements() {
            let perm = perms.perm(x).to_vec();
            let p = NatMatrix::permutation(&perm);
            let pt = p.transpose();
            let conj = TwoMorphism::identity(&p)
                .hcompose(&diag)
                .and_then(|c| c.hcompose(&TwoMorphism::identity(&pt)))
                .map_err(|e| e.to_string())?;
            ensure(conj.source() == &id, "P·1·Pᵀ is not 1")?;
            // oracle: P diag(d) Pᵀ as ordinary matrices
            let pm = CycMatrix::permutation(&perm);
            let dm = CycMatrix::from_fn(n, n, 1, |i, j| if i == j { d[i].clone() } else { CycNumber::zero(1) });
            let oracle = pm.matmul(&dm).unwrap().matmul(&pm.transpose()).unwrap();
            for i in 0..n {
                ensure(conj.block(i, i).get(0, 0) == oracle.get(i, i), "conjugated diagonal differs")?;
            }
        }
        report.push(format!("N={n}: {}", invertible.len()));
    }
    Ok(report.join(", "))
}

fn composable_pairs(m: &CrossedModule) -> Vec<(CatGroupMorphism, CatGroupMorphism)> {
    let all: Vec<CatGroupMorphism> = m.morphisms().collect();
    let mut out = Vec::new();
    for &f in &all {
        for &g in &all {
            if m.target(f) == g.source {
                out.push((f, g));
            }
        }
    }
    out
}

fn c7_categorical_group_axioms() -> Outcome {
    let s3 = SymmetricGroup::new(3);
    let modules = [("G(2,3)", xmod::g23()), ("∂ = id on S_3", xmod::identity_xmod(s3.group()))];
    let mut counts = Vec::new();
    for (name, m) in &modules {
        let pairs = composable_pairs(m);
        let mut checked = 0usize;
        for &(f, g) in &pairs {
            for &(h, k) in &pairs {
                let lhs = m.compose(m.tensor(f, h), m.tensor(g, k)).map_err(|e| e.to_string())?;
                let rhs = m.tensor(m.compose(f, g).unwrap(), m.compose(h, k).unwrap());
                ensure(lhs == rhs, format!("{name}: interchange fails"))?;
                checked += 1;
            }
            let y = m.target(f);
            let yinv = m.identity(m.base().inv(y));
            let composite = m.compose(f, g).unwrap();
            ensure(composite == m.tensor(m.tensor(f, yinv), g), format!("{name}: f·g ≠ f∘1∘g"))?;
            ensure(composite == m.tensor(m.tensor(g, yinv), f), format!("{name}: f·g ≠ g∘1∘f"))?;
        }
        counts.push(format!("{name}: {checked} interchange tuples"));
    }
    let mut more = vec![
        xmod::g23(),
        xmod::identity_xmod(s3.group()),
        xmod::wreath(2, 3),
        xmod::wreath(3, 2),
        xmod::closure(&groups::cyclic(4)).unwrap(),
    ];
    more.push(xmod::normal_subgroup_xmod(s3.group(), &alternating(&s3)).unwrap());
    for m in &more {
        let back = m.verdier_roundtrip().map_err(|e| e.to_string())?;
        ensure(&back == m, "Verdier round trip changed the crossed module")?;
    }
    counts.push(format!("{} Verdier round trips", more.len()));
    Ok(counts.join("; "))
}

fn alternating(s3: &SymmetricGroup) -> Vec<usize> {
    s3.group().elements().filter(|&x| s3.group().element_order(x) != 2).collect()
}

/// G-invariant homomorphisms E → Z/m by brute force over all maps.
fn invariant_characters_oracle(m: &CrossedModule) -> Vec<Vec<u32>> {
    let e = m.principal();
    let n = e.order();
    let exp = e.exponent() as u32;
    let mut out = Vec::new();
    let mut k = vec![0u32; n];
    loop {
        let hom = e
            .elements()
            .all(|a| e.elements().all(|b| k[e.mul(a, b)] == (k[a] + k[b]) % exp));
        let inv = m.base().elements().all(|x| e.elements().all(|f| k[m.act(x, f)] == k[f]));
        if hom && inv {
            out.push(k.clone());
        }
        let mut p = 0;
        while p < n {
            k[p] += 1;
            if k[p] < exp {
                break;
            }
            k[p] = 0;
            p += 1;
        }
        if p == n {
            break;
        }
    }
    out.sort();
    out
}

/// Right-multiplication action of G on the cosets of ∂E, as permutations.
fn coset_action(m: &CrossedModule) -> Vec<Vec<usize>> {
    let g = m.base();
    let image = m.boundary().image();
    let mut reps: Vec<usize> = Vec::new();
    let coset_of = |x: usize, reps: &[usize]| reps.iter().position(|&r| image.contains(&g.mul(x, g.inv(r))));
    for x in g.elements() {
        if coset_of(x, &reps).is_none() {
            reps.push(x);
        }
    }
    g.elements()
        .map(|x| reps.iter().map(|&r| coset_of(g.mul(r, x), &reps).unwrap()).collect())
        .collect()
}

fn trace(a: &CycMatrix) -> CycNumber {
    (0..a.rows()).fold(CycNumber::zero(a.conductor()), |acc, i| &acc + a.get(i, i))
}

fn inner_product(g: &FiniteGroup, a: &[CycMatrix], b: &[CycMatrix]) -> CycNumber {
    let sum = g.elements().fold(CycNumber::zero(1), |acc, x| &acc + &(&trace(&a[x]) * &trace(&b[x]).conj()));
    &sum * &CycNumber::from_rational(1, BigRational::new(BigInt::one(), BigInt::from(g.order())))
}

/// Fiber representations of G trivial on ∂E, as row-convention matrices.
fn fiber_reps(m: &CrossedModule) -> Vec<Vec<CycMatrix>> {
    let g = m.base();
    let image = m.boundary().image();
    let mut out = vec![vec![CycMatrix::identity(1, 1); g.order()], vec![CycMatrix::identity(2, 1); g.order()]];
    let exp = g.exponent() as u32;
    for chi in groups::characters_with_exponent(g, exp) {
        if image.iter().all(|&d| chi.k(d) == 0) && !chi.is_trivial() {
            out.push(g.elements().map(|x| CycMatrix::single(chi.value(x))).collect());
        }
    }
    out.push(intertwiners::permutation_fiber(g, &coset_action(m)));
    out
}

fn c9_catchar_oracle() -> Outcome {
    let s3 = SymmetricGroup::new(3);
    let c2 = groups::cyclic(2);
    let c4 = groups::cyclic(4);
    let surj = xmod::validate_xmod(c4.clone(), c2.clone(), vec![0, 1, 0, 1], vec![vec![0, 1, 2, 3]; 2]).unwrap();
    let modules: Vec<(&str, CrossedModule)> = vec![
        ("G(2,3)", xmod::g23()),
        ("C_2² swap", xmod::wreath(2, 2)),
        ("C_3² swap", xmod::wreath(2, 3)),
        ("C_3 over 1", xmod::closure(&groups::cyclic(3)).unwrap()),
        ("S_3 identity", xmod::identity_xmod(s3.group())),
        ("C_4 identity", xmod::identity_xmod(&c4)),
        ("C_4 onto C_2", surj),
        ("A_3 in S_3", xmod::normal_subgroup_xmod(s3.group(), &alternating(&s3)).unwrap()),
    ];
    let mut kinds = (0, 0, 0);
    let mut dims_checked = 0;
    for (name, m) in modules {
        ensure(m.principal().order() <= 12 && m.base().order() <= 12, format!("{name} too large"))?;
        let c = m.classify();
        kinds.0 += usize::from(c.intransitive);
        kinds.1 += usize::from(c.free);
        kinds.2 += usize::from(c.transitive);
        let m = Arc::new(m);
        let one = reps::classify_one_dimensional(&m);
        let mut got: Vec<Vec<u32>> = one.iter().map(|r| r.char(0).expmap().to_vec()).collect();
        got.sort();
        ensure(got == invariant_characters_oracle(&m), format!("{name}: characters differ"))?;
        let fibers = fiber_reps(&m);
        for r in &one {
            let ints: Vec<OneIntertwiner> = fibers
                .iter()
                .map(|f| intertwiners::induced(r, r, &[OrbitFiber { base_cell: (0, 0), matrices: f.clone() }]))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{name}: {e}"))?;
            for (a, fa) in ints.iter().zip(&fibers) {
                for (b, fb) in ints.iter().zip(&fibers) {
                    let dim = intertwiners::two_intertwiner_space(a, b).map_err(|e| e.to_string())?.len();
                    let ip = inner_product(m.base(), fa, fb);
                    ensure(
                        ip == CycNumber::from_int(1, dim as i64),
                        format!("{name}: dimension {dim} vs inner product {ip}"),
                    )?;
                    dims_checked += 1;
                }
            }
        }
    }
    ensure(kinds.0 > 0 && kinds.1 > 0 && kinds.2 > 0, "missing a class of crossed module")?;
    Ok(format!("8 crossed modules, {dims_checked} hom dimensions"))
}

/// Every 1-intertwiner fixture on G(2,3), valid or not, as raw data.
type Raw = (CatRep, CatRep, NatMatrix, Vec<TwoMorphism>);

fn raw(h: &OneIntertwiner) -> Raw {
    (h.source().clone(), h.target().clone(), h.shape().clone(), h.actions().to_vec())
}

fn c8_naturality_from_generators() -> Outcome {
    let m = g23();
    let mut reps_all: Vec<CatRep> = (1..=2).flat_map(|n| reps::enumerate_reps(&m, n, UpTo::Equality)).collect();
    reps_all.push(reps::boxtimes_rep(&twisted(&m, 1), &twisted(&m, 1)).unwrap());
    let mut fixtures: Vec<Raw> = Vec::new();
    for r in &reps_all {
        for t in &reps_all {
            for o in intertwiners::admissible_shapes(r, t).unwrap() {
                for chi in &o.line_characters {
                    fixtures.push(raw(&intertwiners::induced(r, t, &[OrbitFiber::line(o.base_cell, chi)]).unwrap()));
                }
                if o.permitted && o.stabilizer.len() == 2 {
                    let perm = intertwiners::permutation_fiber(m.base(), &[vec![0, 1], vec![1, 0]]);
                    let f = OrbitFiber { base_cell: o.base_cell, matrices: perm };
                    fixtures.push(raw(&intertwiners::induced(r, t, &[f]).unwrap()));
                }
            }
            if let Some(h) = intertwiners::is_isomorphic(r, t).unwrap() {
                fixtures.push(raw(&h));
            }
        }
    }
    for a in 0..3 {
        for b in 0..3 {
            let h = unit_block_witness(&m, a, b).unwrap();
            fixtures.push(raw(&h.inverse().unwrap()));
            fixtures.push(raw(&h));
        }
    }
    // perturbations: scaled, rotated and swapped cells
    let valid = fixtures.len();
    let omega = root_of_unity(3, 1).unwrap();
    for k in 0..valid {
        let (r, t, shape, action) = fixtures[k].clone();
        for s in [CycNumber::from_int(1, 2), omega.clone(), CycNumber::from_int(1, -1)] {
            let mut bad = action.clone();
            bad[1] = bad[1].scale(&s);
            fixtures.push((r.clone(), t.clone(), shape.clone(), bad));
        }
        let mut swapped = action.clone();
        swapped.swap(0, 1);
        fixtures.push((r.clone(), t.clone(), shape.clone(), swapped));
    }
    let (mut accepted, mut rejected) = (0, 0);
    for (r, t, shape, action) in fixtures {
        let gen = OneIntertwiner::new(r.clone(), t.clone(), shape.clone(), action.clone());
        let all = OneIntertwiner::new_exhaustive(r, t, shape, action);
        ensure(gen.is_ok() == all.is_ok(), format!("disagreement: generators {gen:?}, exhaustive {all:?}"))?;
        if gen.is_ok() {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    ensure(accepted >= valid && rejected > 0, "fixtures not exercised")?;
    Ok(format!("{accepted} accepted, {rejected} rejected, all in agreement"))
}

fn random_cyc(rng: &mut ChaCha8Rng, n: u32) -> CycNumber {
    let len = (1..=n as usize).filter(|&k| num_integer::gcd(k, n as usize) == 1).count();
    let coeffs = (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.random_range(-6i64..=6)), BigInt::from(rng.random_range(1i64..=4))))
        .collect();
    CycNumber::from_coeffs(n, coeffs).unwrap()
}

/// Multiplication oracle: product of power-basis polynomials taken modulo
/// xⁿ − 1, then compared through the library's embedding of ζ^k.
fn mul_oracle(a: &CycNumber, b: &CycNumber) -> CycNumber {
    let n = a.conductor() as usize;
    let mut prod = vec![BigRational::zero(); n];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            prod[(i + j) % n] += x * y;
        }
    }
    prod.iter().enumerate().fold(CycNumber::zero(n as u32), |acc, (k, c)| {
        &acc + &(&root_of_unity(n as u32, k as i64).unwrap() * &CycNumber::from_rational(n as u32, c.clone()))
    })
}

fn c10_exact_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in [3u32, 4, 6, 12] {
        let one = CycNumber::one(n);
        let zero = CycNumber::zero(n);
        for k in 0..n as i64 {
            ensure(root_of_unity(n, k).unwrap().pow(n as i64).unwrap() == one, format!("ζ_{n}^{k} not of order | {n}"))?;
        }
        let z = root_of_unity(n, 1).unwrap();
        ensure((1..n as i64).all(|k| !z.pow(k).unwrap().is_one()), "ζ_n has smaller order")?;
        for _ in 0..1000 {
            let (a, b, c) = (random_cyc(&mut rng, n), random_cyc(&mut rng, n), random_cyc(&mut rng, n));
            ensure(&(&a + &b) + &c == &a + &(&b + &c), "additive associativity")?;
            ensure(&(&a * &b) * &c == &a * &(&b * &c), "multiplicative associativity")?;
            ensure(&a + &b == &b + &a && &a * &b == &b * &a, "commutativity")?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity")?;
            ensure(&a + &zero == a && &a * &one == a, "identities")?;
            ensure((&a + &(-&a)).is_zero(), "additive inverse")?;
            ensure(&a * &b == mul_oracle(&a, &b), "product disagrees with the polynomial oracle")?;
            if !a.is_zero() {
                let inv = a.inv().map_err(|e| e.to_string())?;
                ensure((&a * &inv).is_one(), format!("inverse of {a}"))?;
            }
        }
    }
    let mut checked = 0;
    for t in 0..200 {
        let n = [3u32, 4, 12][t % 3];
        let rows = rng.random_range(1..=5usize);
        let cols = rng.random_range(1..=6usize);
        let inner = rng.random_range(1..=rows.min(cols));
        let left = CycMatrix::from_fn(rows, inner, n, |_, _| sparse_cyc(&mut rng, n));
        let right = CycMatrix::from_fn(inner, cols, n, |_, _| sparse_cyc(&mut rng, n));
        let a = left.matmul(&right).unwrap();
        let (rank, null) = rank_nullspace(&a);
        let oracle = oracle_rank(&a);
        ensure(rank == oracle, format!("rank {rank} vs oracle {oracle}"))?;
        ensure(null.len() == cols - rank, "nullity")?;
        for v in &null {
            ensure(a.matmul(v).unwrap().is_zero(), "nullspace vector not in kernel")?;
        }
        if !null.is_empty() {
            let basis = CycMatrix::from_fn(cols, null.len(), n, |i, j| null[j].get(i, 0).clone());
            ensure(oracle_rank(&basis) == null.len(), "nullspace basis dependent")?;
        }
        checked += 1;
    }
    Ok(format!("4000 random elements, {checked} random matrices"))
}

fn sparse_cyc(rng: &mut ChaCha8Rng, n: u32) -> CycNumber {
    if rng.random_bool(0.3) {
        CycNumber::zero(n)
    } else {
        random_cyc(rng, n)
    }
}

/// Rank by plain Gaussian elimination with field division.
fn oracle_rank(a: &CycMatrix) -> usize {
    let mut m: Vec<Vec<CycNumber>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).clone()).collect()).collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        let pivot_row: Vec<CycNumber> = m[rank].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 one-dimensional classification of G(2,3)", c1_one_dimensional),
        ("2 two-dimensional enumeration of G(2,3)", c2_two_dimensional),
        ("3 decomposability and irreducibility", c3_decomposability),
        ("4 tensor decomposition", c4_tensor_decomposition),
        ("5 hom-shape tables", c5_shape_tables),
        ("6 invertible 1-morphisms of 2Vect", c6_wreath_lemma),
        ("7 categorical-group axioms", c7_categorical_group_axioms),
        ("8 naturality from generators", c8_naturality_from_generators),
        ("9 one-dimensional classification oracle", c9_catchar_oracle),
        ("10 exact arithmetic", c10_exact_arithmetic),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| (*s).to_owned()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
