//! Strict categorical representations.
//!
//! A representation of dimension N sends each object `X` of the categorical
//! group to the permutation matrix of `σ_X` (the base action on
//! `{0, …, N−1}`) and each morphism `(X, e)` to the diagonal-pattern cell
//! with scalar `ξ_i(e)` at `(i, i·σ_X)`. Strictness amounts to:
//!
//! * `∂e` acts trivially on indices for every `e`;
//! * `ξ_i(X ▷ e) = ξ_{i·σ_X}(e)` for all `X`, `e`, `i`.
//!
//! The second condition is forced by functoriality of the monoidal product
//! under the right action of G on indices; it makes `i ↦ ξ_i` a G-map.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::CycMatrix;
use crate::groups::{self, AbelianCharacter, PermAction, SymmetricGroup};
use crate::intertwiners::{self, IntertwinerError, OneIntertwiner, OrbitFiber, TwoIntertwiner};
use crate::twovect::{NatMatrix, TwoMorphism};
use crate::xmod::{CatGroupMorphism, CrossedModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("base action: {0}")]
    Base(groups::GroupError),
    #[error("malformed representation: {0}")]
    Shape(String),
    #[error("kernel condition fails: boundary of e = {e} moves index {index}")]
    Kernel { e: usize, index: usize },
    #[error("equivariance fails: xi_{index}(X acting on e) != xi_(index.X)(e) for X = {x}, e = {e}")]
    Equivariance { x: usize, e: usize, index: usize },
    #[error("representations belong to different crossed modules")]
    XmodMismatch,
    #[error("a zero-dimensional representation has no decomposition")]
    Empty,
}

/// A strict categorical representation `(R_b, R_p)`.
#[derive(Clone)]
pub struct CatRep {
    xmod: Arc<CrossedModule>,
    base: PermAction,
    chars: Vec<AbelianCharacter>,
}

impl fmt::Debug for CatRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chars: Vec<&[u32]> = self.chars.iter().map(AbelianCharacter::expmap).collect();
        f.debug_struct("CatRep")
            .field("dim", &self.dim())
            .field("base", &self.base.perms())
            .field("chars", &chars)
            .finish()
    }
}

impl PartialEq for CatRep {
    fn eq(&self, other: &Self) -> bool {
        same_xmod(&self.xmod, &other.xmod) && self.base == other.base && self.chars == other.chars
    }
}

impl Eq for CatRep {}

impl PartialOrd for CatRep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: dimension, then base permutations, then characters.
impl Ord for CatRep {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.base.perms().cmp(other.base.perms()))
            .then_with(|| self.chars.cmp(&other.chars))
    }
}

pub(crate) fn same_xmod(a: &Arc<CrossedModule>, b: &Arc<CrossedModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent of the character values used for representations of `xmod`.
pub fn char_exponent(xmod: &CrossedModule) -> u32 {
    xmod.principal().exponent() as u32
}

/// Validates `(base, chars)` as a representation of `xmod`. `base[X]` is
/// the permutation `i ↦ i·σ_X`; `chars[i][e]` the exponent `k` with
/// `ξ_i(e) = ζ_m^k`, `m` the exponent of E.
pub fn validate_rep(
    xmod: Arc<CrossedModule>,
    dim: usize,
    base: Vec<Vec<usize>>,
    chars: Vec<Vec<u32>>,
) -> Result<CatRep, RepError> {
    let base = PermAction::new(xmod.base().clone(), dim, base).map_err(RepError::Base)?;
    if chars.len() != dim {
        return Err(RepError::Shape(format!("{} characters for dimension {dim}", chars.len())));
    }
    let m = char_exponent(&xmod);
    let chars = chars
        .into_iter()
        .enumerate()
        .map(|(i, k)| {
            AbelianCharacter::new(xmod.principal(), m, k)
                .map_err(|err| RepError::Shape(format!("character {i}: {err}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rep = CatRep { xmod, base, chars };
    rep.check()?;
    Ok(rep)
}

impl CatRep {
    fn check(&self) -> Result<(), RepError> {
        let m = &self.xmod;
        for e in m.principal().elements() {
            let d = m.boundary().apply(e);
            if let Some(index) = (0..self.dim()).find(|&i| self.base.act(i, d) != i) {
                return Err(RepError::Kernel { e, index });
            }
        }
        for x in m.base().elements() {
            for e in m.principal().elements() {
                let xe = m.act(x, e);
                for i in 0..self.dim() {
                    if self.chars[i].k(xe) != self.chars[self.base.act(i, x)].k(e) {
                        return Err(RepError::Equivariance { x, e, index: i });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs every structural check.
    pub fn revalidate(&self) -> Result<(), RepError> {
        PermAction::new(self.xmod.base().clone(), self.dim(), self.base.perms().to_vec()).map_err(RepError::Base)?;
        for c in &self.chars {
            AbelianCharacter::new(self.xmod.principal(), c.exponent(), c.expmap().to_vec())
                .map_err(|err| RepError::Shape(err.to_string()))?;
        }
        self.check()?;
        // invariance of each character under ker(R_b)
        for x in self.base.kernel() {
            for e in self.xmod.principal().elements() {
                let xe = self.xmod.act(x, e);
                if let Some(i) = (0..self.dim()).find(|&i| self.chars[i].k(xe) != self.chars[i].k(e)) {
                    return Err(RepError::Equivariance { x, e, index: i });
                }
            }
        }
        Ok(())
    }

    pub fn xmod(&self) -> &Arc<CrossedModule> {
        &self.xmod
    }

    pub fn dim(&self) -> usize {
        self.base.degree()
    }

    pub fn base(&self) -> &PermAction {
        &self.base
    }

    pub fn chars(&self) -> &[AbelianCharacter] {
        &self.chars
    }

    pub fn char(&self, i: usize) -> &AbelianCharacter {
        &self.chars[i]
    }

    /// `i·σ_X`.
    #[inline]
    pub fn act(&self, i: usize, x: usize) -> usize {
        self.base.act(i, x)
    }

    /// The permutation 1-morphism `R(X)`.
    pub fn object(&self, x: usize) -> NatMatrix {
        NatMatrix::permutation(self.base.perm(x))
    }

    /// The exponent-map rows, for serialization.
    pub fn char_rows(&self) -> Vec<Vec<u32>> {
        self.chars.iter().map(|c| c.expmap().to_vec()).collect()
    }

    pub fn same_xmod(&self, other: &CatRep) -> bool {
        same_xmod(&self.xmod, &other.xmod)
    }

    /// Relabels indices: old index `i` becomes `pi[i]`.
    pub fn relabel(&self, pi: &[usize]) -> CatRep {
        let n = self.dim();
        let inv = groups::invert_perm(pi);
        let perms = self
            .base
            .perms()
            .iter()
            .map(|s| (0..n).map(|new| pi[s[inv[new]]]).collect())
            .collect();
        let chars = (0..n).map(|new| self.chars[inv[new]].clone()).collect();
        CatRep {
            xmod: self.xmod.clone(),
            base: PermAction::from_parts_unchecked(self.xmod.base().clone(), n, perms),
            chars,
        }
    }

    /// The orbit `{0..N−1}` of the base action is a single orbit.
    pub fn is_indecomposable(&self) -> bool {
        self.dim() > 0 && self.base.is_transitive()
    }

    pub fn is_decomposable(&self) -> bool {
        self.dim() > 0 && !self.base.is_transitive()
    }

    /// Splits along orbits, least element first. Returns the parts and the
    /// permutation `pi` with `self.relabel(pi) = ⊞ parts`.
    pub fn decompose(&self) -> Result<(Vec<CatRep>, Vec<usize>), RepError> {
        if self.dim() == 0 {
            return Err(RepError::Empty);
        }
        let mut pi = vec![0; self.dim()];
        let mut parts = Vec::new();
        let mut offset = 0;
        for orbit in self.base.orbits() {
            for (pos, &i) in orbit.iter().enumerate() {
                pi[i] = offset + pos;
            }
            offset += orbit.len();
            parts.push(self.restrict(&orbit));
        }
        Ok((parts, pi))
    }

    /// The subrepresentation on an invariant index set (sorted ascending).
    fn restrict(&self, orbit: &[usize]) -> CatRep {
        let pos = |i: usize| orbit.binary_search(&i).expect("orbit is invariant");
        let perms = self
            .base
            .perms()
            .iter()
            .map(|s| orbit.iter().map(|&i| pos(s[i])).collect())
            .collect();
        CatRep {
            xmod: self.xmod.clone(),
            base: PermAction::from_parts_unchecked(self.xmod.base().clone(), orbit.len(), perms),
            chars: orbit.iter().map(|&i| self.chars[i].clone()).collect(),
        }
    }

    /// Rebuilds every character from `ξ_0` and the base action, assuming
    /// the base action is transitive: `ξ_{0·σ_X}(e) = ξ_0(X ▷ e)`.
    pub fn characters_from_first(&self) -> Option<Vec<AbelianCharacter>> {
        if !self.is_indecomposable() {
            return None;
        }
        let mut out: Vec<Option<AbelianCharacter>> = vec![None; self.dim()];
        for x in self.xmod.base().elements() {
            let j = self.act(0, x);
            if out[j].is_none() {
                out[j] = Some(self.chars[0].precompose(|e| self.xmod.act(x, e)));
            }
        }
        out.into_iter().collect()
    }

    /// Conjugate representation: every character inverted.
    pub fn conjugate(&self) -> CatRep {
        CatRep {
            xmod: self.xmod.clone(),
            base: self.base.clone(),
            chars: self.chars.iter().map(AbelianCharacter::inverse).collect(),
        }
    }
}

/// The image of a morphism `(X, e)`: a 2-endomorphism of `R(X)` with block
/// `(ξ_i(e))` at `(i, i·σ_X)`.
pub fn rep_apply(rep: &CatRep, f: CatGroupMorphism) -> TwoMorphism {
    let p = rep.object(f.source);
    let m = char_exponent(&rep.xmod);
    TwoMorphism::from_fn(p.clone(), p, m, |i, j| {
        if rep.act(i, f.source) == j {
            CycMatrix::single(rep.chars[i].value(f.label))
        } else {
            CycMatrix::zeros(0, 0, m)
        }
    })
    .expect("permutation cells")
}

/// `R ⊞ T`: indices of `T` shifted past those of `R`.
pub fn boxplus_rep(r: &CatRep, t: &CatRep) -> Result<CatRep, RepError> {
    if !r.same_xmod(t) {
        return Err(RepError::XmodMismatch);
    }
    let n = r.dim();
    let perms = r
        .base
        .perms()
        .iter()
        .zip(t.base.perms())
        .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&j| n + j)).collect())
        .collect();
    Ok(CatRep {
        xmod: r.xmod.clone(),
        base: PermAction::from_parts_unchecked(r.xmod.base().clone(), n + t.dim(), perms),
        chars: r.chars.iter().chain(&t.chars).cloned().collect(),
    })
}

/// `R ⊠ T`: index `(i, j)` at `i·M + j` with character `ξ_i·ψ_j`.
pub fn boxtimes_rep(r: &CatRep, t: &CatRep) -> Result<CatRep, RepError> {
    if !r.same_xmod(t) {
        return Err(RepError::XmodMismatch);
    }
    let (n, mm) = (r.dim(), t.dim());
    let perms = r
        .base
        .perms()
        .iter()
        .zip(t.base.perms())
        .map(|(a, b)| (0..n * mm).map(|x| a[x / mm] * mm + b[x % mm]).collect())
        .collect();
    let chars = (0..n * mm).map(|x| r.chars[x / mm].product(&t.chars[x % mm])).collect();
    Ok(CatRep {
        xmod: r.xmod.clone(),
        base: PermAction::from_parts_unchecked(r.xmod.base().clone(), n * mm, perms),
        chars,
    })
}

/// The trivial representation of dimension `n`: identity base, trivial
/// characters.
pub fn trivial_rep(xmod: Arc<CrossedModule>, n: usize) -> CatRep {
    let m = char_exponent(&xmod);
    let chars = (0..n).map(|_| AbelianCharacter::trivial(xmod.principal(), m)).collect();
    CatRep { base: PermAction::trivial(xmod.base().clone(), n), chars, xmod }
}

/// Characters of E fixed by every element of `stab` under `X ▷`.
pub(crate) fn invariant_characters(xmod: &CrossedModule, stab: &[usize]) -> Vec<AbelianCharacter> {
    groups::characters_with_exponent(xmod.principal(), char_exponent(xmod))
        .into_iter()
        .filter(|c| {
            stab.iter()
                .all(|&x| xmod.principal().elements().all(|e| c.k(xmod.act(x, e)) == c.k(e)))
        })
        .collect()
}

/// All representations of dimension `n`, in canonical order.
///
/// Base actions are the homomorphisms `G → S_n` killing the image of ∂.
/// On each orbit the character at the least index is any character
/// invariant under that index's stabilizer; the rest of the orbit is then
/// determined by equivariance.
pub fn enumerate_reps_equality(xmod: &Arc<CrossedModule>, n: usize) -> Vec<CatRep> {
    let sym = SymmetricGroup::new(n);
    let image = xmod.boundary().image();
    let mut out = Vec::new();
    for hom in groups::enumerate_homs(xmod.base(), sym.group()) {
        if image.iter().any(|&d| hom.apply(d) != 0) {
            continue;
        }
        let base = PermAction::from_hom(&hom, &sym);
        let orbits = base.orbits();
        let choices: Vec<Vec<AbelianCharacter>> = orbits
            .iter()
            .map(|o| invariant_characters(xmod, &base.stabilizer(o[0])))
            .collect();
        let mut idx = vec![0usize; orbits.len()];
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let mut chars: Vec<Option<AbelianCharacter>> = vec![None; n];
            for (o, orbit) in orbits.iter().enumerate() {
                let xi0 = &choices[o][idx[o]];
                for x in xmod.base().elements() {
                    let j = base.act(orbit[0], x);
                    if chars[j].is_none() {
                        chars[j] = Some(xi0.precompose(|e| xmod.act(x, e)));
                    }
                }
            }
            out.push(CatRep {
                xmod: xmod.clone(),
                base: base.clone(),
                chars: chars.into_iter().map(|c| c.expect("orbits cover")).collect(),
            });
            // odometer over per-orbit choices
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// 1-dimensional representations: one per G-invariant character of E.
pub fn classify_one_dimensional(xmod: &Arc<CrossedModule>) -> Vec<CatRep> {
    enumerate_reps_equality(xmod, 1)
}

/// Equality or isomorphism mode for [`enumerate_reps`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpTo {
    Equality,
    Isomorphism,
}

/// Representations of dimension `n`. In isomorphism mode each class is
/// represented by its least member in canonical order.
pub fn enumerate_reps(xmod: &Arc<CrossedModule>, n: usize, up_to: UpTo) -> Vec<CatRep> {
    let all = enumerate_reps_equality(xmod, n);
    match up_to {
        UpTo::Equality => all,
        UpTo::Isomorphism => {
            let mut classes: Vec<CatRep> = Vec::new();
            for r in all {
                let known = classes
                    .iter()
                    .any(|c| intertwiners::is_isomorphic(c, &r).expect("same crossed module").is_some());
                if !known {
                    classes.push(r);
                }
            }
            classes
        }
    }
}

/// A smaller representation `s` with `1_s` a retract of `h ∘ h'`:
/// `iota · pi` is the identity 2-intertwiner of `1_s`.
#[derive(Clone, Debug)]
pub struct RetractWitness {
    pub s: CatRep,
    pub h: OneIntertwiner,
    pub h_prime: OneIntertwiner,
    pub iota: TwoIntertwiner,
    pub pi: TwoIntertwiner,
}

impl RetractWitness {
    /// Revalidates every piece from its raw data.
    pub fn check(&self, r: &CatRep) -> Result<(), IntertwinerError> {
        let h = OneIntertwiner::new(self.s.clone(), r.clone(), self.h.shape().clone(), self.h.actions().to_vec())?;
        let hp = OneIntertwiner::new(
            r.clone(),
            self.s.clone(),
            self.h_prime.shape().clone(),
            self.h_prime.actions().to_vec(),
        )?;
        h.check_all_morphisms()?;
        hp.check_all_morphisms()?;
        let hh = intertwiners::hcompose_intertwiners(&h, &hp)?;
        let id = OneIntertwiner::identity(&self.s);
        let iota = TwoIntertwiner::new(id.clone(), hh.clone(), self.iota.cell().clone())?;
        let pi = TwoIntertwiner::new(hh, id.clone(), self.pi.cell().clone())?;
        if iota.vcompose(&pi)? != TwoIntertwiner::identity(&id) {
            return Err(IntertwinerError::Shape("iota · pi is not the identity".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub witness: Option<RetractWitness>,
    /// For ∂ trivial and transitive base: whether the stabilizer of index 0
    /// equals the stabilizer of `ξ_0` in G.
    pub stabilizer_criterion: Option<bool>,
}

/// Irreducibility by bounded search.
///
/// `R` is reducible when some representation `S` of smaller dimension is a
/// retract of `R` through 1-intertwiners: `h: S → R`, `h': R → S` and
/// 2-intertwiners `ι: 1_S ⇒ h∘h'`, `π: h∘h' ⇒ 1_S` with `ι·π = 1`. The
/// search runs over indecomposable `S` (one per isomorphism class) and over
/// shapes with 0/1 entries carrying line fibers.
pub fn is_irreducible(r: &CatRep) -> IrreducibilityReport {
    let xmod = r.xmod();
    let stabilizer_criterion = stabilizer_criterion(r);
    if r.is_decomposable() {
        // the first summand is a retract
        let (parts, _) = r.decompose().expect("nonzero dimension");
        let witness = retract_witness(&parts[0], r);
        return IrreducibilityReport { irreducible: false, witness, stabilizer_criterion };
    }
    for n in 1..r.dim() {
        for s in enumerate_reps(xmod, n, UpTo::Isomorphism).into_iter().filter(CatRep::is_indecomposable) {
            if let Some(w) = retract_witness(&s, r) {
                return IrreducibilityReport { irreducible: false, witness: Some(w), stabilizer_criterion };
            }
        }
    }
    IrreducibilityReport { irreducible: true, witness: None, stabilizer_criterion }
}

fn stabilizer_criterion(r: &CatRep) -> Option<bool> {
    let xmod = r.xmod();
    if r.dim() == 0 || !r.is_indecomposable() || xmod.boundary().kernel().len() != xmod.principal().order() {
        return None;
    }
    let xi = r.char(0);
    let g = xmod.base();
    let e = xmod.principal();
    let h: Vec<usize> = g.elements().filter(|&x| r.act(0, x) == 0).collect();
    let g_xi: Vec<usize> = g.elements().filter(|&x| e.elements().all(|f| xi.k(xmod.act(x, f)) == xi.k(f))).collect();
    Some(h == g_xi)
}

/// Every 1-intertwiner `a → b` with 0/1 shape and line fibers, one for each
/// subset of line-admissible orbits and choice of stabilizer characters.
fn zero_one_intertwiners(a: &CatRep, b: &CatRep) -> Vec<OneIntertwiner> {
    let orbits = intertwiners::admissible_shapes(a, b).expect("same crossed module");
    let usable: Vec<&intertwiners::CellOrbit> = orbits.iter().filter(|o| o.line_permitted()).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << usable.len()) {
        let chosen: Vec<&intertwiners::CellOrbit> =
            usable.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, o)| *o).collect();
        let mut idx = vec![0usize; chosen.len()];
        loop {
            let fibers: Vec<OrbitFiber> = chosen
                .iter()
                .zip(&idx)
                .map(|(o, &k)| OrbitFiber::line(o.base_cell, &o.line_characters[k]))
                .collect();
            if let Ok(h) = intertwiners::induced(a, b, &fibers) {
                out.push(h);
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < chosen[k].line_characters.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

fn retract_witness(s: &CatRep, r: &CatRep) -> Option<RetractWitness> {
    let hs = zero_one_intertwiners(s, r);
    if hs.is_empty() {
        return None;
    }
    let hps = zero_one_intertwiners(r, s);
    let id = OneIntertwiner::identity(s);
    for h in &hs {
        for hp in &hps {
            let hh = intertwiners::hcompose_intertwiners(h, hp).expect("composable");
            let ins = intertwiners::two_intertwiner_space(&id, &hh).expect("parallel");
            if ins.is_empty() {
                continue;
            }
            let outs = intertwiners::two_intertwiner_space(&hh, &id).expect("parallel");
            for iota in &ins {
                for pi in &outs {
                    let c = iota.vcompose(pi).expect("composable");
                    // End(1_S) is one-dimensional for transitive S
                    let scalar = c.cell().block(0, 0).get(0, 0).clone();
                    if scalar.is_zero() {
                        continue;
                    }
                    let pi = pi.scale(&scalar.inv().expect("nonzero"));
                    if iota.vcompose(&pi).expect("composable") != TwoIntertwiner::identity(&id) {
                        continue;
                    }
                    return Some(RetractWitness {
                        s: s.clone(),
                        h: h.clone(),
                        h_prime: hp.clone(),
                        iota: iota.clone(),
                        pi,
                    });
                }
            }
        }
    }
    None
}
