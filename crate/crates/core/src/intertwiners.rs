//! 1- and 2-intertwiners between strict representations.
//!
//! A 1-intertwiner `h: R → T` has a shape `h_•` (an `N×M` natural-number
//! matrix) and, for every object `X`, an invertible cell
//! `h̃(X): R(X)·h_• ⇒ h_•·T(X)`. The block of `h̃(X)` at `(i, j)` maps the
//! fiber over `d·X` to the fiber over `d`, where `d = (i, j·τ_X⁻¹)` and
//! cells `(i, j)` carry the right action `(i, j)·X = (i·σ_X, j·τ_X)`. The
//! cocycle law reads
//!
//! `h̃(XY)_{ij} = h̃(Y)_{i·σ_X, j} · h̃(X)_{i, j·τ_Y⁻¹}`,
//!
//! so the fibers form a G-equivariant bundle over the cells. On each orbit
//! the bundle is induced from a representation of the stabilizer of one
//! cell, restricted on `∂E` to the scalar `ξ_i(e)⁻¹ψ_j(e)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::{rank_nullspace, CycError, CycMatrix, CycNumber};
use crate::groups::{self, AbelianCharacter, FiniteGroup};
use crate::reps::{self, CatRep};
use crate::twovect::{self, NatMatrix, TwoMorphism, TwoVectError};
use crate::xmod::CrossedModule;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntertwinerError {
    #[error("representations belong to different crossed modules")]
    XmodMismatch,
    #[error("malformed intertwiner: {0}")]
    Shape(String),
    #[error("shape is not equivariant: cell {cell:?} and its image under X = {x} differ")]
    NotEquivariant { x: usize, cell: (usize, usize) },
    #[error("action at the identity is not the identity (cell {cell:?})")]
    Unit { cell: (usize, usize) },
    #[error("cocycle law fails for X = {x}, Y = {y} at cell {cell:?}")]
    Cocycle { x: usize, y: usize, cell: (usize, usize) },
    #[error("naturality on E fails for e = {e} at cell {cell:?}")]
    Naturality { e: usize, cell: (usize, usize) },
    #[error("naturality fails for the morphism ({x}, {e}) at cell {cell:?}")]
    MorphismNaturality { x: usize, e: usize, cell: (usize, usize) },
    #[error("2-intertwiner condition fails for X = {x} at cell {cell:?}")]
    TwoCondition { x: usize, cell: (usize, usize) },
    #[error("fiber representation: {0}")]
    Fiber(String),
    #[error("not invertible")]
    NotInvertible,
    #[error(transparent)]
    TwoVect(#[from] TwoVectError),
}

impl From<CycError> for IntertwinerError {
    fn from(e: CycError) -> Self {
        IntertwinerError::TwoVect(e.into())
    }
}

fn check_same(r: &CatRep, t: &CatRep) -> Result<(), IntertwinerError> {
    if r.same_xmod(t) {
        Ok(())
    } else {
        Err(IntertwinerError::XmodMismatch)
    }
}

/// First differing cell of two parallel 2-morphisms.
fn first_diff(a: &TwoMorphism, b: &TwoMorphism) -> Option<(usize, usize)> {
    if a.source() != b.source() || a.target() != b.target() {
        return Some((0, 0));
    }
    let m = a.source().cols();
    a.blocks().iter().zip(b.blocks()).position(|(x, y)| x != y).map(|p| (p / m, p % m))
}

/// A 1-intertwiner with its action stored for every element of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneIntertwiner {
    source: CatRep,
    target: CatRep,
    shape: NatMatrix,
    action: Vec<TwoMorphism>,
}

impl OneIntertwiner {
    /// Validates the data: shape equivariance, unit, the cocycle law on
    /// generators of G and naturality on generators of E. Full naturality
    /// follows from these; [`OneIntertwiner::check_all_morphisms`] verifies
    /// it directly.
    pub fn new(
        source: CatRep,
        target: CatRep,
        shape: NatMatrix,
        action: Vec<TwoMorphism>,
    ) -> Result<Self, IntertwinerError> {
        check_same(&source, &target)?;
        let g = source.xmod().base().clone();
        if shape.shape() != (source.dim(), target.dim()) {
            return Err(IntertwinerError::Shape(format!(
                "shape {:?} for dimensions {} and {}",
                shape.shape(),
                source.dim(),
                target.dim()
            )));
        }
        if action.len() != g.order() {
            return Err(IntertwinerError::Shape(format!("{} action cells for |G| = {}", action.len(), g.order())));
        }
        let h = Self { source, target, shape, action };
        h.check_shape()?;
        for x in g.elements() {
            let src = h.source.object(x).hcompose(&h.shape)?;
            let tgt = h.shape.hcompose(&h.target.object(x))?;
            if h.action[x].source() != &src || h.action[x].target() != &tgt {
                return Err(IntertwinerError::Shape(format!("action at X = {x} has the wrong source or target")));
            }
        }
        if let Some(cell) = first_non_identity(&h.action[0]) {
            return Err(IntertwinerError::Unit { cell });
        }
        for y in g.generators() {
            for x in g.elements() {
                h.check_cocycle(x, y)?;
            }
        }
        for e in h.source.xmod().principal().generators() {
            h.check_e_naturality(e)?;
        }
        Ok(h)
    }

    /// Validates the same data against every morphism of the categorical
    /// group instead of generators.
    pub fn new_exhaustive(
        source: CatRep,
        target: CatRep,
        shape: NatMatrix,
        action: Vec<TwoMorphism>,
    ) -> Result<Self, IntertwinerError> {
        check_same(&source, &target)?;
        let g = source.xmod().base().clone();
        if shape.shape() != (source.dim(), target.dim()) || action.len() != g.order() {
            return Err(IntertwinerError::Shape("dimensions do not match".into()));
        }
        let h = Self { source, target, shape, action };
        h.check_shape()?;
        for x in g.elements() {
            let src = h.source.object(x).hcompose(&h.shape)?;
            let tgt = h.shape.hcompose(&h.target.object(x))?;
            if h.action[x].source() != &src || h.action[x].target() != &tgt {
                return Err(IntertwinerError::Shape(format!("action at X = {x} has the wrong source or target")));
            }
        }
        if let Some(cell) = first_non_identity(&h.action[0]) {
            return Err(IntertwinerError::Unit { cell });
        }
        h.check_all_morphisms()?;
        Ok(h)
    }

    fn check_shape(&self) -> Result<(), IntertwinerError> {
        let g = self.source.xmod().base();
        for x in g.elements() {
            for i in 0..self.source.dim() {
                for j in 0..self.target.dim() {
                    let (i2, j2) = (self.source.act(i, x), self.target.act(j, x));
                    if self.shape.get(i2, j2) != self.shape.get(i, j) {
                        return Err(IntertwinerError::NotEquivariant { x, cell: (i, j) });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_cocycle(&self, x: usize, y: usize) -> Result<(), IntertwinerError> {
        let g = self.source.xmod().base();
        let rhs = TwoMorphism::identity(&self.source.object(x))
            .hcompose(&self.action[y])?
            .vcompose(&self.action[x].hcompose(&TwoMorphism::identity(&self.target.object(y)))?)?;
        match first_diff(&self.action[g.mul(x, y)], &rhs) {
            Some(cell) => Err(IntertwinerError::Cocycle { x, y, cell }),
            None => Ok(()),
        }
    }

    fn check_e_naturality(&self, e: usize) -> Result<(), IntertwinerError> {
        let m = self.source.xmod();
        let f = m.morphism(0, m.boundary().apply(e), e).expect("(1, e) is a morphism");
        let lhs = reps::rep_apply(&self.source, f)
            .hcompose(&TwoMorphism::identity(&self.shape))?
            .vcompose(&self.action[m.target(f)])?;
        let rhs = TwoMorphism::identity(&self.shape).hcompose(&reps::rep_apply(&self.target, f))?;
        match first_diff(&lhs, &rhs) {
            Some(cell) => Err(IntertwinerError::Naturality { e, cell }),
            None => Ok(()),
        }
    }

    /// Naturality `(R(f)∘1_h)·h̃(Y) = h̃(X)·(1_h∘T(f))` for every morphism
    /// `f: X → Y`, plus the cocycle law for every pair.
    pub fn check_all_morphisms(&self) -> Result<(), IntertwinerError> {
        let m = self.source.xmod().clone();
        let g = m.base();
        for x in g.elements() {
            for y in g.elements() {
                self.check_cocycle(x, y)?;
            }
        }
        let id = TwoMorphism::identity(&self.shape);
        for f in m.morphisms() {
            let y = m.target(f);
            let lhs = reps::rep_apply(&self.source, f).hcompose(&id)?.vcompose(&self.action[y])?;
            let rhs = self.action[f.source].vcompose(&id.hcompose(&reps::rep_apply(&self.target, f))?)?;
            if let Some(cell) = first_diff(&lhs, &rhs) {
                return Err(IntertwinerError::MorphismNaturality { x: f.source, e: f.label, cell });
            }
        }
        Ok(())
    }

    pub fn identity(r: &CatRep) -> Self {
        let action = r.xmod().base().elements().map(|x| TwoMorphism::identity(&r.object(x))).collect();
        Self { source: r.clone(), target: r.clone(), shape: NatMatrix::identity(r.dim()), action }
    }

    pub fn source(&self) -> &CatRep {
        &self.source
    }

    pub fn target(&self) -> &CatRep {
        &self.target
    }

    pub fn shape(&self) -> &NatMatrix {
        &self.shape
    }

    pub fn action(&self, x: usize) -> &TwoMorphism {
        &self.action[x]
    }

    pub fn actions(&self) -> &[TwoMorphism] {
        &self.action
    }

    pub fn conductor(&self) -> u32 {
        self.action.iter().fold(1, |acc, a| acc.lcm(&a.conductor()))
    }

    /// Invertible exactly when the shape is a permutation matrix (every
    /// nonzero fiber is then a line and the action cells are invertible).
    pub fn is_invertible(&self) -> bool {
        self.shape.is_invertible()
    }

    /// The inverse 1-intertwiner `T → R`: transposed shape, dual fibers.
    pub fn inverse(&self) -> Result<Self, IntertwinerError> {
        if !self.is_invertible() {
            return Err(IntertwinerError::NotInvertible);
        }
        let (r, t) = (&self.source, &self.target);
        let g = r.xmod().base();
        let shape = self.shape.transpose();
        let mut action = Vec::with_capacity(g.order());
        for x in g.elements() {
            let xi = g.inv(x);
            let src = t.object(x).hcompose(&shape)?;
            let tgt = shape.hcompose(&r.object(x))?;
            let c = self.action[x].conductor();
            let cell = TwoMorphism::from_fn(src, tgt, c, |j, i| {
                // the block of h̃(X) at (i·σ_X⁻¹, j·τ_X) between the same fibers
                let b = self.action[x].block(r.act(i, xi), t.act(j, x));
                if b.rows() == 0 {
                    b.transpose()
                } else {
                    b.inverse().expect("line fibers carry invertible scalars").transpose()
                }
            })?;
            action.push(cell);
        }
        Self::new(t.clone(), r.clone(), shape, action)
    }
}

fn first_non_identity(a: &TwoMorphism) -> Option<(usize, usize)> {
    let m = a.source().cols();
    if a.source() != a.target() {
        return Some((0, 0));
    }
    a.blocks().iter().position(|b| !b.is_identity()).map(|p| (p / m, p % m))
}

/// Orbit of a cell under `(i, j)·X = (i·σ_X, j·τ_X)` with the data needed
/// to induce fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrbit {
    /// Cells of the orbit, ascending.
    pub cells: Vec<(usize, usize)>,
    /// The least cell.
    pub base_cell: (usize, usize),
    /// Elements of G fixing the base cell, ascending.
    pub stabilizer: Vec<usize>,
    /// Whether `e ↦ ξ_i(e)⁻¹ψ_j(e)` at the base cell factors through ∂, so
    /// that some nonzero fiber exists.
    pub permitted: bool,
    /// Characters of the stabilizer (values in μ_L, indexed by position in
    /// `stabilizer`) restricting to that scalar on `∂E`. Nonempty exactly
    /// when a line fiber exists.
    pub line_characters: Vec<AbelianCharacter>,
}

impl CellOrbit {
    pub fn line_permitted(&self) -> bool {
        !self.line_characters.is_empty()
    }
}

/// `u_c`: the first element carrying the base cell to `c`, for each cell of
/// the orbit.
fn transversal(r: &CatRep, t: &CatRep, base: (usize, usize)) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for x in r.xmod().base().elements() {
        out.entry((r.act(base.0, x), t.act(base.1, x))).or_insert(x);
    }
    out
}

/// The common exponent for stabilizer characters.
fn stabilizer_exponent(xmod: &CrossedModule, stab: &FiniteGroup) -> u32 {
    (reps::char_exponent(xmod) as usize).lcm(&stab.exponent()) as u32
}

/// Cell orbits of `{0..N−1}×{0..M−1}` with the constraint each orbit puts
/// on fibers.
pub fn admissible_shapes(r: &CatRep, t: &CatRep) -> Result<Vec<CellOrbit>, IntertwinerError> {
    check_same(r, t)?;
    let m = r.xmod();
    let g = m.base();
    let e_grp = m.principal();
    let mut seen = vec![vec![false; t.dim()]; r.dim()];
    let mut out = Vec::new();
    let me = reps::char_exponent(m);
    for i0 in 0..r.dim() {
        for j0 in 0..t.dim() {
            if seen[i0][j0] {
                continue;
            }
            let tr = transversal(r, t, (i0, j0));
            let cells: Vec<(usize, usize)> = tr.keys().copied().collect();
            for &(i, j) in &cells {
                seen[i][j] = true;
            }
            let stabilizer: Vec<usize> = g.elements().filter(|&x| r.act(i0, x) == i0 && t.act(j0, x) == j0).collect();
            // forced exponent of e ↦ ξ_i0(e)⁻¹ψ_j0(e), modulo me
            let forced = |e: usize| (me + t.char(j0).k(e) - r.char(i0).k(e)) % me;
            let kernel = m.boundary().kernel();
            let permitted = kernel.iter().all(|&e| forced(e) == 0);
            let mut line_characters = Vec::new();
            if permitted {
                let (sub, elems) = g.subgroup(&stabilizer).expect("stabilizer is a subgroup");
                let l = stabilizer_exponent(m, &sub);
                let scale = l / me;
                for chi in groups::characters_with_exponent(&sub, l) {
                    let ok = e_grp.elements().all(|e| {
                        let d = m.boundary().apply(e);
                        let pos = elems.binary_search(&d).expect("image of the boundary fixes every cell");
                        chi.k(pos) == forced(e) * scale
                    });
                    if ok {
                        line_characters.push(chi);
                    }
                }
            }
            out.push(CellOrbit { base_cell: (i0, j0), cells, stabilizer, permitted, line_characters });
        }
    }
    Ok(out)
}

/// Fiber data on one cell orbit: `matrices[k]` is the action of the k-th
/// stabilizer element (ascending) on the base fiber, as a matrix acting on
/// row vectors, so that `M(ab) = M(b)·M(a)`.
#[derive(Clone, Debug)]
pub struct OrbitFiber {
    pub base_cell: (usize, usize),
    pub matrices: Vec<CycMatrix>,
}

impl OrbitFiber {
    /// A line fiber carrying the character `chi` of the stabilizer.
    pub fn line(base_cell: (usize, usize), chi: &AbelianCharacter) -> Self {
        let matrices = (0..chi.expmap().len()).map(|k| CycMatrix::single(chi.value(k))).collect();
        Self { base_cell, matrices }
    }

    /// `n` copies of the trivial character.
    pub fn trivial(base_cell: (usize, usize), stabilizer_order: usize, n: usize) -> Self {
        Self { base_cell, matrices: vec![CycMatrix::identity(n, 1); stabilizer_order] }
    }
}

/// The row-vector matrices of the permutation representation of `g` on a
/// G-set given by a right action `p·σ_X`: `M(X)` has a 1 at
/// `(p, p·σ_{X⁻¹})`.
pub fn permutation_fiber(g: &FiniteGroup, perms: &[Vec<usize>]) -> Vec<CycMatrix> {
    g.elements().map(|x| CycMatrix::permutation(&perms[g.inv(x)])).collect()
}

/// Builds the 1-intertwiner induced from fiber representations on the given
/// orbits; cells outside these orbits get fiber 0.
pub fn induced(r: &CatRep, t: &CatRep, fibers: &[OrbitFiber]) -> Result<OneIntertwiner, IntertwinerError> {
    check_same(r, t)?;
    let g = r.xmod().base().clone();
    let (n, mm) = (r.dim(), t.dim());
    // per cell: (orbit index, u_c)
    let mut cell_info: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; mm]; n];
    let mut stabs: Vec<Vec<usize>> = Vec::new();
    let mut dims = Vec::new();
    for (o, fib) in fibers.iter().enumerate() {
        let (i0, j0) = fib.base_cell;
        if i0 >= n || j0 >= mm {
            return Err(IntertwinerError::Shape(format!("base cell {:?} out of range", fib.base_cell)));
        }
        let stab: Vec<usize> = g.elements().filter(|&x| r.act(i0, x) == i0 && t.act(j0, x) == j0).collect();
        if fib.matrices.len() != stab.len() {
            return Err(IntertwinerError::Fiber(format!(
                "{} matrices for a stabilizer of order {}",
                fib.matrices.len(),
                stab.len()
            )));
        }
        let d = fib.matrices.first().map_or(0, CycMatrix::rows);
        if fib.matrices.iter().any(|m| m.shape() != (d, d)) {
            return Err(IntertwinerError::Fiber("fiber matrices must be square of one size".into()));
        }
        for (a_pos, &a) in stab.iter().enumerate() {
            for (b_pos, &b) in stab.iter().enumerate() {
                let ab = stab.binary_search(&g.mul(a, b)).expect("subgroup");
                if fib.matrices[ab] != fib.matrices[b_pos].matmul(&fib.matrices[a_pos])? {
                    return Err(IntertwinerError::Fiber(format!("not a representation at ({a}, {b})")));
                }
            }
        }
        for (cell, u) in transversal(r, t, fib.base_cell) {
            if cell_info[cell.0][cell.1].is_some() {
                return Err(IntertwinerError::Shape(format!("orbit of {:?} given twice", fib.base_cell)));
            }
            cell_info[cell.0][cell.1] = Some((o, u));
        }
        stabs.push(stab);
        dims.push(d);
    }
    let shape = NatMatrix::from_fn(n, mm, |i, j| cell_info[i][j].map_or(0, |(o, _)| dims[o]));
    let conductor = fibers
        .iter()
        .flat_map(|f| f.matrices.iter())
        .fold(1u32, |acc, m| acc.lcm(&m.conductor()));
    let mut action = Vec::with_capacity(g.order());
    for x in g.elements() {
        let xinv = g.inv(x);
        let src = r.object(x).hcompose(&shape)?;
        let tgt = shape.hcompose(&t.object(x))?;
        let cell = TwoMorphism::from_fn(src, tgt, conductor, |i, j| {
            let d = (i, t.act(j, xinv));
            match cell_info[d.0][d.1] {
                None => CycMatrix::zeros(0, 0, conductor),
                Some((o, u_d)) => {
                    let dx = (r.act(d.0, x), t.act(d.1, x));
                    let (_, u_dx) = cell_info[dx.0][dx.1].expect("orbit is closed");
                    // g_d⁻¹ X g_{dX} with g_c = u_c⁻¹
                    let h = g.mul(g.mul(u_d, x), g.inv(u_dx));
                    let pos = stabs[o].binary_search(&h).expect("element fixes the base cell");
                    fibers[o].matrices[pos].clone()
                }
            }
        })?;
        action.push(cell);
    }
    OneIntertwiner::new(r.clone(), t.clone(), shape, action)
}

/// Horizontal composite `h ∘ k: R → T` of `h: R → S` and `k: S → T`.
pub fn hcompose_intertwiners(h: &OneIntertwiner, k: &OneIntertwiner) -> Result<OneIntertwiner, IntertwinerError> {
    if h.target != k.source {
        return Err(IntertwinerError::Shape("middle representations differ".into()));
    }
    let (r, s, t) = (&h.source, &h.target, &k.target);
    let g = r.xmod().base();
    let shape = h.shape.hcompose(&k.shape)?;
    let id_h = TwoMorphism::identity(&h.shape);
    let id_k = TwoMorphism::identity(&k.shape);
    let mut action = Vec::with_capacity(g.order());
    for x in g.elements() {
        let (rx, sx, tx) = (r.object(x), s.object(x), t.object(x));
        let cell = twovect::associator(&rx, &h.shape, &k.shape)?
            .vcompose(&h.action[x].hcompose(&id_k)?)?
            .vcompose(&twovect::associator_inverse(&h.shape, &sx, &k.shape)?)?
            .vcompose(&id_h.hcompose(&k.action[x])?)?
            .vcompose(&twovect::associator(&h.shape, &k.shape, &tx)?)?;
        action.push(cell);
    }
    OneIntertwiner::new(r.clone(), t.clone(), shape, action)
}

/// `h ⊠ k: R₁⊠R₂ → T₁⊠T₂`.
pub fn boxtimes_intertwiners(h: &OneIntertwiner, k: &OneIntertwiner) -> Result<OneIntertwiner, IntertwinerError> {
    check_same(&h.source, &k.source)?;
    let src = reps::boxtimes_rep(&h.source, &k.source).map_err(|_| IntertwinerError::XmodMismatch)?;
    let tgt = reps::boxtimes_rep(&h.target, &k.target).map_err(|_| IntertwinerError::XmodMismatch)?;
    let g = src.xmod().base();
    let mut action = Vec::with_capacity(g.order());
    for x in g.elements() {
        let (r1, r2) = (h.source.object(x), k.source.object(x));
        let (t1, t2) = (h.target.object(x), k.target.object(x));
        let cell = twovect::tensorator(&r1, &r2, &h.shape, &k.shape)?
            .vcompose(&h.action[x].boxtimes(&k.action[x]))?
            .vcompose(&twovect::tensorator(&h.shape, &k.shape, &t1, &t2)?.transpose())?;
        action.push(cell);
    }
    OneIntertwiner::new(src, tgt, h.shape.boxtimes(&k.shape), action)
}

/// `h ⊞ k: R₁⊞R₂ → T₁⊞T₂`, block-diagonal.
pub fn boxplus_intertwiners(h: &OneIntertwiner, k: &OneIntertwiner) -> Result<OneIntertwiner, IntertwinerError> {
    check_same(&h.source, &k.source)?;
    let src = reps::boxplus_rep(&h.source, &k.source).map_err(|_| IntertwinerError::XmodMismatch)?;
    let tgt = reps::boxplus_rep(&h.target, &k.target).map_err(|_| IntertwinerError::XmodMismatch)?;
    let action = h.action.iter().zip(&k.action).map(|(a, b)| a.boxplus(b)).collect();
    OneIntertwiner::new(src, tgt, h.shape.boxplus(&k.shape), action)
}

/// `[h; k]: R₁⊞R₂ → T` from `h: R₁ → T` and `k: R₂ → T`, stacking rows.
pub fn copair(h: &OneIntertwiner, k: &OneIntertwiner) -> Result<OneIntertwiner, IntertwinerError> {
    if h.target != k.target {
        return Err(IntertwinerError::Shape("copair needs a common target".into()));
    }
    let src = reps::boxplus_rep(&h.source, &k.source).map_err(|_| IntertwinerError::XmodMismatch)?;
    let n1 = h.source.dim();
    let stack = |a: &NatMatrix, b: &NatMatrix| {
        NatMatrix::from_fn(a.rows() + b.rows(), a.cols(), |i, j| if i < n1 { a.get(i, j) } else { b.get(i - n1, j) })
    };
    let shape = stack(&h.shape, &k.shape);
    let mut action = Vec::new();
    for (a, b) in h.action.iter().zip(&k.action) {
        let l = a.conductor().lcm(&b.conductor());
        let cell = TwoMorphism::from_fn(stack(a.source(), b.source()), stack(a.target(), b.target()), l, |i, j| {
            if i < n1 { a.block(i, j).clone() } else { b.block(i - n1, j).clone() }
        })?;
        action.push(cell);
    }
    OneIntertwiner::new(src, h.target.clone(), shape, action)
}

/// A 2-intertwiner `φ: h ⇒ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoIntertwiner {
    source: OneIntertwiner,
    target: OneIntertwiner,
    cell: TwoMorphism,
}

impl TwoIntertwiner {
    /// Checks `h̃(X)·(φ∘1_{T(X)}) = (1_{R(X)}∘φ)·k̃(X)` for every X.
    pub fn new(source: OneIntertwiner, target: OneIntertwiner, cell: TwoMorphism) -> Result<Self, IntertwinerError> {
        if source.source != target.source || source.target != target.target {
            return Err(IntertwinerError::Shape("1-intertwiners are not parallel".into()));
        }
        if cell.source() != &source.shape || cell.target() != &target.shape {
            return Err(IntertwinerError::Shape("cell does not go from h to k".into()));
        }
        for x in source.source.xmod().base().elements() {
            let d = two_condition_defect(&source, &target, &cell, x)?;
            if !d.is_zero() {
                let m = d.source().cols().max(1);
                let p = d.blocks().iter().position(|b| !b.is_zero()).unwrap_or(0);
                return Err(IntertwinerError::TwoCondition { x, cell: (p / m, p % m) });
            }
        }
        Ok(Self { source, target, cell })
    }

    pub fn identity(h: &OneIntertwiner) -> Self {
        Self { source: h.clone(), target: h.clone(), cell: TwoMorphism::identity(&h.shape) }
    }

    pub fn source(&self) -> &OneIntertwiner {
        &self.source
    }

    pub fn target(&self) -> &OneIntertwiner {
        &self.target
    }

    pub fn cell(&self) -> &TwoMorphism {
        &self.cell
    }

    /// `φ·ψ`, cellwise products.
    pub fn vcompose(&self, other: &Self) -> Result<Self, IntertwinerError> {
        if self.target != other.source {
            return Err(IntertwinerError::Shape("2-intertwiners are not composable".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            cell: self.cell.vcompose(&other.cell)?,
        })
    }

    pub fn boxtimes(&self, other: &Self) -> Result<Self, IntertwinerError> {
        Self::new(
            boxtimes_intertwiners(&self.source, &other.source)?,
            boxtimes_intertwiners(&self.target, &other.target)?,
            self.cell.boxtimes(&other.cell),
        )
    }

    pub fn boxplus(&self, other: &Self) -> Result<Self, IntertwinerError> {
        Self::new(
            boxplus_intertwiners(&self.source, &other.source)?,
            boxplus_intertwiners(&self.target, &other.target)?,
            self.cell.boxplus(&other.cell),
        )
    }

    pub fn scale(&self, s: &CycNumber) -> Self {
        Self { source: self.source.clone(), target: self.target.clone(), cell: self.cell.scale(s) }
    }
}

/// `h̃(X)·(φ∘1_{T(X)}) − (1_{R(X)}∘φ)·k̃(X)`.
fn two_condition_defect(
    h: &OneIntertwiner,
    k: &OneIntertwiner,
    phi: &TwoMorphism,
    x: usize,
) -> Result<TwoMorphism, IntertwinerError> {
    let lhs = h.action[x].vcompose(&phi.hcompose(&TwoMorphism::identity(&h.target.object(x)))?)?;
    let rhs = TwoMorphism::identity(&h.source.object(x)).hcompose(phi)?.vcompose(&k.action[x])?;
    Ok(lhs.add(&rhs.scale(&CycNumber::from_int(1, -1)))?)
}

/// A basis of the 2-intertwiners `h ⇒ k`, from the nullspace of the
/// defect map evaluated on generators of G.
pub fn two_intertwiner_space(h: &OneIntertwiner, k: &OneIntertwiner) -> Result<Vec<TwoIntertwiner>, IntertwinerError> {
    if h.source != k.source || h.target != k.target {
        return Err(IntertwinerError::Shape("1-intertwiners are not parallel".into()));
    }
    let c = h.conductor().lcm(&k.conductor());
    // unknowns: entries of every block of φ, in block then row-major order
    let mut slots = Vec::new();
    for (b, (&p, &q)) in h.shape.entries().iter().zip(k.shape.entries()).enumerate() {
        for r in 0..p {
            for s in 0..q {
                slots.push((b, r, s));
            }
        }
    }
    let m = h.shape.cols().max(1);
    let unit = |slot: Option<(usize, usize, usize)>| {
        TwoMorphism::from_fn(h.shape.clone(), k.shape.clone(), c, |i, j| {
            let b = i * m + j;
            CycMatrix::from_fn(h.shape.get(i, j), k.shape.get(i, j), c, |r, s| {
                CycNumber::from_int(c, i64::from(slot == Some((b, r, s))))
            })
        })
        .expect("unit shapes")
    };
    let gens = h.source.xmod().base().generators();
    let mut columns: Vec<Vec<CycNumber>> = Vec::with_capacity(slots.len());
    for &slot in &slots {
        let phi = unit(Some(slot));
        let mut col = Vec::new();
        for &x in &gens {
            let d = two_condition_defect(h, k, &phi, x)?;
            for b in d.blocks() {
                col.extend(b.embed(c.lcm(&b.conductor()))?.entries().iter().cloned());
            }
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let a = CycMatrix::from_fn(rows, slots.len(), c, |i, j| columns[j][i].clone());
    let (_, basis) = rank_nullspace(&a);
    let mut out = Vec::with_capacity(basis.len());
    for v in basis {
        let phi = TwoMorphism::from_fn(h.shape.clone(), k.shape.clone(), v.conductor(), |i, j| {
            let b = i * m + j;
            CycMatrix::from_fn(h.shape.get(i, j), k.shape.get(i, j), v.conductor(), |r, s| {
                let idx = slots.iter().position(|&t| t == (b, r, s)).expect("slot");
                v.get(idx, 0).clone()
            })
        })?;
        out.push(TwoIntertwiner::new(h.clone(), k.clone(), phi)?);
    }
    Ok(out)
}

/// Searches for an invertible 1-intertwiner `R → T`.
///
/// Candidate shapes are the permutation matrices `P` with
/// `π(i·σ_X) = π(i)·τ_X`. Each orbit of the support of `P` needs a
/// character of its stabilizer that restricts to the forced scalar on
/// `∂E`; the witness is the induced line bundle.
pub fn is_isomorphic(r: &CatRep, t: &CatRep) -> Result<Option<OneIntertwiner>, IntertwinerError> {
    check_same(r, t)?;
    if r.dim() != t.dim() {
        return Ok(None);
    }
    let n = r.dim();
    let g = r.xmod().base();
    let orbits = admissible_shapes(r, t)?;
    let orbit_of = |cell: (usize, usize)| orbits.iter().position(|o| o.cells.binary_search(&cell).is_ok());
    let mut pi: Vec<usize> = (0..n).collect();
    loop {
        let equivariant = g
            .elements()
            .all(|x| (0..n).all(|i| pi[r.act(i, x)] == t.act(pi[i], x)));
        if equivariant {
            let mut used: Vec<usize> = (0..n).filter_map(|i| orbit_of((i, pi[i]))).collect();
            used.sort_unstable();
            used.dedup();
            if used.iter().all(|&o| orbits[o].line_permitted()) {
                let fibers: Vec<OrbitFiber> = used
                    .iter()
                    .map(|&o| OrbitFiber::line(orbits[o].base_cell, &orbits[o].line_characters[0]))
                    .collect();
                return Ok(Some(induced(r, t, &fibers)?));
            }
        }
        if !groups::next_permutation(&mut pi) {
            return Ok(None);
        }
    }
}

/// Shorthand for an `Arc`-shared crossed module in tests and examples.
pub fn shared(m: CrossedModule) -> Arc<CrossedModule> {
    Arc::new(m)
}
