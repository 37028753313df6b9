//! Crossed modules and the categorical group they present.
//!
//! A morphism of the categorical group is a pair `(X, e)` with source `X`
//! and target `∂e·X`. The hom-set `X → Y` is the fiber `∂⁻¹(Y X⁻¹)`;
//! nothing beyond the crossed-module tables is stored.

use std::fmt;

use thiserror::Error;

use crate::groups::{self, FiniteGroup, GroupError, GroupHom};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XmodError {
    #[error("boundary: {0}")]
    Boundary(GroupError),
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("action of {x} is not an automorphism of E (witness e = {e}, e' = {e2})")]
    NotAutomorphism { x: usize, e: usize, e2: usize },
    #[error("action is not a group action: ({x}*{y}) acting on {e} differs from {x} acting on ({y} acting on {e})")]
    NotAction { x: usize, y: usize, e: usize },
    #[error("equivariance fails: boundary of ({x} acting on {e}) != {x} * boundary({e}) * {x}^-1")]
    Equivariance { x: usize, e: usize },
    #[error("Peiffer identity fails: boundary({e}) acting on {e2} != {e} * {e2} * {e}^-1")]
    Peiffer { e: usize, e2: usize },
    #[error("{0} is not abelian")]
    NotAbelian(&'static str),
    #[error("morphisms are not composable: target {target} != source {next}")]
    NotComposable { target: usize, next: usize },
    #[error("label {label} does not have boundary {expected}")]
    BadLabel { label: usize, expected: usize },
}

/// A crossed module `∂: E → G` with a left action `X ▷ e` of G on E.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossedModule {
    e: FiniteGroup,
    g: FiniteGroup,
    boundary: GroupHom,
    action: Vec<usize>,
}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CrossedModule")
            .field("E", &self.e)
            .field("G", &self.g)
            .field("boundary", &self.boundary.map())
            .finish()
    }
}

/// Validates crossed-module data. `action[x][e]` is the index of `x ▷ e`.
pub fn validate_xmod(
    e: FiniteGroup,
    g: FiniteGroup,
    boundary: Vec<usize>,
    action: Vec<Vec<usize>>,
) -> Result<CrossedModule, XmodError> {
    let boundary = GroupHom::new(e.clone(), g.clone(), boundary).map_err(XmodError::Boundary)?;
    let (ne, ng) = (e.order(), g.order());
    if action.len() != ng || action.iter().any(|r| r.len() != ne) {
        return Err(XmodError::Shape(format!("action grid must be {ng}x{ne}")));
    }
    if action.iter().flatten().any(|&v| v >= ne) {
        return Err(XmodError::Shape("action entry out of range".into()));
    }
    for (x, row) in action.iter().enumerate() {
        let mut seen = vec![false; ne];
        for (a, &v) in row.iter().enumerate() {
            if std::mem::replace(&mut seen[v], true) {
                let first = row.iter().position(|&w| w == v).unwrap_or(0);
                return Err(XmodError::NotAutomorphism { x, e: first, e2: a });
            }
        }
        for a in e.elements() {
            for b in e.elements() {
                if row[e.mul(a, b)] != e.mul(row[a], row[b]) {
                    return Err(XmodError::NotAutomorphism { x, e: a, e2: b });
                }
            }
        }
    }
    if let Some(a) = e.elements().find(|&a| action[0][a] != a) {
        return Err(XmodError::NotAction { x: 0, y: 0, e: a });
    }
    for x in g.elements() {
        for y in g.elements() {
            for a in e.elements() {
                if action[g.mul(x, y)][a] != action[x][action[y][a]] {
                    return Err(XmodError::NotAction { x, y, e: a });
                }
            }
        }
    }
    for x in g.elements() {
        for a in e.elements() {
            let lhs = boundary.apply(action[x][a]);
            let rhs = g.mul(g.mul(x, boundary.apply(a)), g.inv(x));
            if lhs != rhs {
                return Err(XmodError::Equivariance { x, e: a });
            }
        }
    }
    for a in e.elements() {
        for b in e.elements() {
            if action[boundary.apply(a)][b] != e.mul(e.mul(a, b), e.inv(a)) {
                return Err(XmodError::Peiffer { e: a, e2: b });
            }
        }
    }
    let action = action.into_iter().flatten().collect();
    Ok(CrossedModule { e, g, boundary, action })
}

/// A morphism `(X, e): X → ∂e·X` of the categorical group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatGroupMorphism {
    pub source: usize,
    pub label: usize,
}

/// Which of the standard families a crossed module belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XmodClass {
    /// ∂ surjective.
    pub transitive: bool,
    /// ∂ trivial.
    pub intransitive: bool,
    /// ∂ injective.
    pub free: bool,
}

impl CrossedModule {
    pub fn principal(&self) -> &FiniteGroup {
        &self.e
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    /// `x ▷ e`.
    #[inline]
    pub fn act(&self, x: usize, e: usize) -> usize {
        self.action[x * self.e.order() + e]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.e.order().max(1)).map(<[usize]>::to_vec).collect()
    }

    pub fn classify(&self) -> XmodClass {
        let img = self.boundary.image();
        XmodClass {
            transitive: img.len() == self.g.order(),
            intransitive: img == [0],
            free: self.boundary.kernel().len() == 1,
        }
    }

    pub fn target(&self, f: CatGroupMorphism) -> usize {
        self.g.mul(self.boundary.apply(f.label), f.source)
    }

    pub fn identity(&self, x: usize) -> CatGroupMorphism {
        CatGroupMorphism { source: x, label: 0 }
    }

    /// Every morphism, ordered by source then label.
    pub fn morphisms(&self) -> impl Iterator<Item = CatGroupMorphism> + '_ {
        self.g
            .elements()
            .flat_map(move |x| self.e.elements().map(move |e| CatGroupMorphism { source: x, label: e }))
    }

    pub fn hom_set(&self, x: usize, y: usize) -> Vec<CatGroupMorphism> {
        let want = self.g.mul(y, self.g.inv(x));
        self.e
            .elements()
            .filter(|&e| self.boundary.apply(e) == want)
            .map(|e| CatGroupMorphism { source: x, label: e })
            .collect()
    }

    /// Checked constructor for a morphism `x → y` with the given label.
    pub fn morphism(&self, x: usize, y: usize, label: usize) -> Result<CatGroupMorphism, XmodError> {
        let want = self.g.mul(y, self.g.inv(x));
        if self.boundary.apply(label) != want {
            return Err(XmodError::BadLabel { label, expected: want });
        }
        Ok(CatGroupMorphism { source: x, label })
    }

    /// The monoidal product `f ∘ g`, with label `f·(X_f ▷ g)`.
    pub fn tensor(&self, f: CatGroupMorphism, g: CatGroupMorphism) -> CatGroupMorphism {
        CatGroupMorphism {
            source: self.g.mul(f.source, g.source),
            label: self.e.mul(f.label, self.act(f.source, g.label)),
        }
    }

    /// Vertical composite "f, then g", with label `g·f`.
    pub fn compose(&self, f: CatGroupMorphism, g: CatGroupMorphism) -> Result<CatGroupMorphism, XmodError> {
        let t = self.target(f);
        if t != g.source {
            return Err(XmodError::NotComposable { target: t, next: g.source });
        }
        Ok(CatGroupMorphism { source: f.source, label: self.e.mul(g.label, f.label) })
    }

    /// Rebuilds `(E, G, ∂, ▷)` from the categorical group alone: E is the
    /// set of morphisms out of the unit under `∘`, ∂ is the target map and
    /// `Y ▷ e = 1_Y ∘ e ∘ 1_{Y⁻¹}`.
    pub fn verdier_roundtrip(&self) -> Result<CrossedModule, XmodError> {
        let out_of_unit: Vec<CatGroupMorphism> = self.morphisms().filter(|f| f.source == 0).collect();
        let index = |f: CatGroupMorphism| out_of_unit.iter().position(|&h| h == f).expect("closed");
        let table: Vec<Vec<usize>> = out_of_unit
            .iter()
            .map(|&a| out_of_unit.iter().map(|&b| index(self.tensor(a, b))).collect())
            .collect();
        let e = groups::validate_group_with_cap(&table, usize::MAX).map_err(XmodError::Boundary)?;
        let boundary = out_of_unit.iter().map(|&f| self.target(f)).collect();
        let action = self
            .g
            .elements()
            .map(|y| {
                out_of_unit
                    .iter()
                    .map(|&f| {
                        let conj = self.tensor(self.tensor(self.identity(y), f), self.identity(self.g.inv(y)));
                        index(conj)
                    })
                    .collect()
            })
            .collect();
        validate_xmod(e, self.g.clone(), boundary, action)
    }
}

/// Abelian `k` over the trivial group.
pub fn closure(k: &FiniteGroup) -> Result<CrossedModule, XmodError> {
    if !k.is_abelian() {
        return Err(XmodError::NotAbelian("closure group"));
    }
    let g = groups::trivial();
    validate_xmod(k.clone(), g, vec![0; k.order()], vec![k.elements().collect()])
}

/// ∂ = identity on `g` with the conjugation action.
pub fn identity_xmod(g: &FiniteGroup) -> CrossedModule {
    let action = g
        .elements()
        .map(|x| g.elements().map(|e| g.mul(g.mul(x, e), g.inv(x))).collect())
        .collect();
    validate_xmod(g.clone(), g.clone(), g.elements().collect(), action).expect("conjugation crossed module")
}

/// The inclusion of a normal subgroup, acting by conjugation.
pub fn normal_subgroup_xmod(g: &FiniteGroup, normal: &[usize]) -> Result<CrossedModule, XmodError> {
    let (sub, elems) = g.subgroup(normal).map_err(XmodError::Boundary)?;
    let pos = |v: usize| elems.iter().position(|&w| w == v);
    let mut action = Vec::with_capacity(g.order());
    for x in g.elements() {
        let mut row = Vec::with_capacity(elems.len());
        for &n in &elems {
            let c = g.mul(g.mul(x, n), g.inv(x));
            row.push(pos(c).ok_or_else(|| XmodError::Shape("subgroup is not normal".into()))?);
        }
        action.push(row);
    }
    validate_xmod(sub, g.clone(), elems.clone(), action)
}

/// `(μ_m)^n → S_n` with trivial boundary and coordinate permutation:
/// `(X ▷ k)_i = k_{i·σ_X}`. Coordinate 0 is the most significant digit of
/// the element index.
pub fn wreath(n: usize, m: usize) -> CrossedModule {
    let mut e = groups::trivial();
    for _ in 0..n {
        e = groups::direct_product(&e, &groups::cyclic(m));
    }
    let e = e.with_name(format!("(mu{m})^{n}"));
    let sym = groups::SymmetricGroup::new(n);
    let digits = |mut idx: usize| {
        let mut d = vec![0; n];
        for i in (0..n).rev() {
            d[i] = idx % m;
            idx /= m;
        }
        d
    };
    let undigits = |d: &[usize]| d.iter().fold(0, |acc, &k| acc * m + k);
    let action = sym
        .group()
        .elements()
        .map(|x| {
            let s = sym.perm(x);
            e.elements()
                .map(|idx| {
                    let d = digits(idx);
                    let moved: Vec<usize> = (0..n).map(|i| d[s[i]]).collect();
                    undigits(&moved)
                })
                .collect()
        })
        .collect();
    validate_xmod(e.clone(), sym.group().clone(), vec![0; e.order()], action).expect("wreath crossed module")
}

/// E = C_3 = {1, x, x⁻¹}, G = C_2 = {+1, −1}, ∂ trivial, −1 ▷ x = x⁻¹.
pub fn g23() -> CrossedModule {
    let e = groups::cyclic(3);
    let g = groups::cyclic(2).with_name("C2");
    validate_xmod(e, g, vec![0, 0, 0], vec![vec![0, 1, 2], vec![0, 2, 1]]).expect("G(2,3)")
}
