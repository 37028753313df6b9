//! Finite groups as multiplication tables.
//!
//! Elements are indices `0..order` with the identity at 0. Permutations act
//! on the right of points: a [`PermAction`] stores for each element `X` the
//! map `p ↦ p·σ_X`, and `σ_{XY}` is "σ_X, then σ_Y".

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::{root_of_unity, CycNumber};

/// Default cap on the order of any group handled by the table-driven code.
pub const DEFAULT_MAX_ORDER: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("table[{row}][{col}] = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("element 0 is not a two-sided identity (witness {witness})")]
    NoIdentity { witness: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("no inverse for {element}")]
    NoInverse { element: usize },
    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    NotAbelian { a: usize, b: usize },
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("permutation data invalid: {0}")]
    BadPermutation(String),
}

/// A finite group given by its multiplication table. Cheap to clone.
/// Equality compares tables only; the name is a label for reports.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Arc<[usize]>,
    inv: Arc<[usize]>,
    name: Option<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// Validates a multiplication table with the default order cap.
pub fn validate_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    validate_group_with_cap(table, DEFAULT_MAX_ORDER)
}

pub fn validate_group_with_cap(table: &[Vec<usize>], cap: usize) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n) {
        return Err(GroupError::NotSquare);
    }
    if n > cap {
        return Err(GroupError::TooLarge { order: n, cap });
    }
    for (i, row) in table.iter().enumerate() {
        if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::OutOfRange { row: i, col: j, value: v });
        }
    }
    if let Some(a) = (0..n).find(|&a| table[0][a] != a || table[a][0] != a) {
        return Err(GroupError::NoIdentity { witness: a });
    }
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
            Some(b) => inv[a] = b,
            None => return Err(GroupError::NoInverse { element: a }),
        }
    }
    // Light's test: associativity need only hold with a generator in the
    // middle slot.
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    let gens = magma_generators(n, &flat);
    for &g in &gens {
        for a in 0..n {
            let ag = table[a][g];
            for c in 0..n {
                if table[ag][c] != table[a][table[g][c]] {
                    return Err(GroupError::NonAssociative { a, b: g, c });
                }
            }
        }
    }
    Ok(FiniteGroup { order: n, table: flat.into(), inv: inv.into(), name: None })
}

fn magma_generators(n: usize, flat: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for cand in 1..n {
        if inside[cand] {
            continue;
        }
        gens.push(cand);
        inside[cand] = true;
        members.push(cand);
        // close under products
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            let mut j = 0;
            while j < members.len() {
                let b = members[j];
                for p in [flat[a * n + b], flat[b * n + a]] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
    }
    gens
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting().is_none()
    }

    fn first_noncommuting(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in a + 1..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !inside[b] {
                    inside[b] = true;
                    out.push(b);
                    queue.push_back(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Greedy generating set: repeatedly add the first element not yet in
    /// the generated subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for cand in 1..self.order {
            if inside[cand] {
                continue;
            }
            gens.push(cand);
            for e in self.generated_subgroup(&gens) {
                inside[e] = true;
            }
        }
        gens
    }

    /// The subgroup on `elements` (which must contain 0 and be closed) as a
    /// group in its own right, indexed by position in the sorted list.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = vec![vec![0; elems.len()]; elems.len()];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let p = self.mul(a, b);
                table[i][j] = *pos
                    .get(&p)
                    .ok_or_else(|| GroupError::BadPermutation(format!("subset not closed at {a}*{b}")))?;
            }
        }
        Ok((validate_group_with_cap(&table, usize::MAX)?, elems))
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }
}

/// Cyclic group ℤ/n with element k ↦ k.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    validate_group_with_cap(&table, usize::MAX).expect("cyclic group").with_name(format!("C{n}"))
}

pub fn trivial() -> FiniteGroup {
    cyclic(1).with_name("1")
}

/// Direct product with pair `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, k) = (g.order(), h.order());
    let table: Vec<Vec<usize>> = (0..m * k)
        .map(|a| {
            (0..m * k)
                .map(|b| g.mul(a / k, b / k) * k + h.mul(a % k, b % k))
                .collect()
        })
        .collect();
    let name = match (g.name(), h.name()) {
        (Some(x), Some(y)) => Some(format!("{x}x{y}")),
        _ => None,
    };
    let out = validate_group_with_cap(&table, usize::MAX).expect("direct product");
    match name {
        Some(n) => out.with_name(n),
        None => out,
    }
}

/// The symmetric group S_n with its elements listed as permutations in
/// lexicographic order (the identity first).
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    degree: usize,
    group: FiniteGroup,
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> Self {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..degree).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&compose_then(a, b)])
                    .collect()
            })
            .collect();
        let group = validate_group_with_cap(&table, usize::MAX)
            .expect("symmetric group")
            .with_name(format!("S{degree}"));
        Self { degree, group, perms, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn perm(&self, idx: usize) -> &[usize] {
        &self.perms[idx]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }
}

/// `a` then `b` under the right action: `p ↦ b[a[p]]`.
pub fn compose_then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An element-wise homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::BadPermutation(format!(
                "map has length {} but source has order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.order()) {
            return Err(GroupError::OutOfRange { row: 0, col: 0, value: v });
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn trivial(source: FiniteGroup, target: FiniteGroup) -> Self {
        let map = vec![0; source.order()];
        Self { source, target, map }
    }

    pub fn identity(g: FiniteGroup) -> Self {
        let map = g.elements().collect();
        Self { source: g.clone(), target: g, map }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&a| self.map[a] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.map.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// All homomorphisms `g → h`, sorted lexicographically by their maps.
///
/// Images are assigned to the greedy generating set of `g` by backtracking;
/// each partial assignment is extended over the generated subgroup and
/// rejected on the first inconsistency.
pub fn enumerate_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let gens = g.generators();
    let gen_orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let h_orders: Vec<usize> = h.elements().map(|y| h.element_order(y)).collect();
    let mut images = Vec::with_capacity(gens.len());
    let mut out = Vec::new();
    backtrack_homs(g, h, &gens, &gen_orders, &h_orders, &mut images, &mut out);
    out.sort();
    out.into_iter()
        .map(|map| GroupHom { source: g.clone(), target: h.clone(), map })
        .collect()
}

fn backtrack_homs(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    gen_orders: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend_by_closure(g, h, gens, images) {
            out.push(map);
        }
        return;
    }
    for y in h.elements() {
        if !gen_orders[k].is_multiple_of(h_orders[y]) {
            continue;
        }
        images.push(y);
        if extend_by_closure(g, h, &gens[..=k], images).is_some() {
            backtrack_homs(g, h, gens, gen_orders, h_orders, images, out);
        }
        images.pop();
    }
}

/// Extends generator images over the subgroup they generate; `None` on an
/// inconsistency. Unreached elements are left as `usize::MAX`.
fn extend_by_closure(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (&x, &y) in gens.iter().zip(images) {
            let b = g.mul(a, x);
            let img = h.mul(map[a], y);
            if map[b] == usize::MAX {
                map[b] = img;
                queue.push_back(b);
            } else if map[b] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// A homomorphism into S_N, stored as the right action of each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    group: FiniteGroup,
    degree: usize,
    perms: Vec<Vec<usize>>,
}

impl PermAction {
    pub fn new(group: FiniteGroup, degree: usize, perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if perms.len() != group.order() {
            return Err(GroupError::BadPermutation(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        for (x, p) in perms.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(GroupError::BadPermutation(format!("entry {x} is not a permutation of 0..{degree}")));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                if perms[group.mul(a, b)] != compose_then(&perms[a], &perms[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { group, degree, perms })
    }

    pub fn trivial(group: FiniteGroup, degree: usize) -> Self {
        let perms = vec![(0..degree).collect(); group.order()];
        Self { group, degree, perms }
    }

    pub fn from_hom(hom: &GroupHom, sym: &SymmetricGroup) -> Self {
        let perms = hom.map().iter().map(|&s| sym.perm(s).to_vec()).collect();
        Self { group: hom.source().clone(), degree: sym.degree(), perms }
    }

    pub(crate) fn from_parts_unchecked(group: FiniteGroup, degree: usize, perms: Vec<Vec<usize>>) -> Self {
        Self { group, degree, perms }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, x: usize) -> &[usize] {
        &self.perms[x]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `p·σ_X`.
    #[inline]
    pub fn act(&self, p: usize, x: usize) -> usize {
        self.perms[x][p]
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&x| self.perms[x].iter().enumerate().all(|(i, &j)| i == j))
            .collect()
    }

    /// Orbits sorted ascending, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens = self.group.generators();
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let p = orbit[i];
                for &g in &gens {
                    let q = self.act(p, g);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbits().len() == 1
    }

    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        self.group.elements().filter(|&x| self.act(point, x) == point).collect()
    }
}

/// A character of a finite abelian group with values ζ_m^{k(e)}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianCharacter {
    exponent: u32,
    expmap: Vec<u32>,
}

impl AbelianCharacter {
    pub fn new(group: &FiniteGroup, exponent: u32, expmap: Vec<u32>) -> Result<Self, GroupError> {
        if exponent == 0 || expmap.len() != group.order() || expmap.iter().any(|&k| k >= exponent) {
            return Err(GroupError::BadPermutation("character exponent map malformed".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if expmap[group.mul(a, b)] != (expmap[a] + expmap[b]) % exponent {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { exponent, expmap })
    }

    pub fn trivial(group: &FiniteGroup, exponent: u32) -> Self {
        Self { exponent, expmap: vec![0; group.order()] }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn expmap(&self) -> &[u32] {
        &self.expmap
    }

    #[inline]
    pub fn k(&self, e: usize) -> u32 {
        self.expmap[e]
    }

    pub fn value(&self, e: usize) -> CycNumber {
        root_of_unity(self.exponent, i64::from(self.expmap[e])).expect("positive exponent")
    }

    pub fn is_trivial(&self) -> bool {
        self.expmap.iter().all(|&k| k == 0)
    }

    /// Pointwise product of characters.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.exponent, other.exponent);
        let m = self.exponent;
        Self {
            exponent: m,
            expmap: self.expmap.iter().zip(&other.expmap).map(|(a, b)| (a + b) % m).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let m = self.exponent;
        Self { exponent: m, expmap: self.expmap.iter().map(|&a| (m - a) % m).collect() }
    }

    /// `e ↦ χ(f(e))` for an element map `f`.
    pub fn precompose(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            exponent: self.exponent,
            expmap: (0..self.expmap.len()).map(|e| self.expmap[f(e)]).collect(),
        }
    }
}

/// All characters of an abelian group, with values in the μ_m for m the
/// group exponent, sorted by exponent map.
pub fn characters(e: &FiniteGroup) -> Result<Vec<AbelianCharacter>, GroupError> {
    if let Some((a, b)) = e.first_noncommuting() {
        return Err(GroupError::NotAbelian { a, b });
    }
    Ok(characters_with_exponent(e, e.exponent() as u32))
}

/// Homomorphisms `g → μ_m` for any finite group `g`, as characters.
pub fn characters_with_exponent(g: &FiniteGroup, m: u32) -> Vec<AbelianCharacter> {
    let target = cyclic(m as usize);
    enumerate_homs(g, &target)
        .into_iter()
        .map(|h| AbelianCharacter {
            exponent: m,
            expmap: h.map().iter().map(|&k| k as u32).collect(),
        })
        .collect()
}

impl PartialOrd for GroupHom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupHom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.map.cmp(&other.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_functions_homs(g: &FiniteGroup, h: &FiniteGroup) -> usize {
        let n = g.order();
        let mut count = 0;
        let mut f = vec![0usize; n];
        loop {
            let ok = g.elements().all(|a| g.elements().all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])));
            if ok {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                f[i] += 1;
                if f[i] < h.order() {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn c2_table_is_valid() {
        let g = validate_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = validate_group(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { element: 1 });
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_group(&t), Err(GroupError::NonAssociative { .. })));
    }

    #[test]
    fn order_cap_applies() {
        let t: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        assert_eq!(validate_group_with_cap(&t, 3), Err(GroupError::TooLarge { order: 4, cap: 3 }));
    }

    #[test]
    fn s3_from_permutations() {
        let s3 = SymmetricGroup::new(3);
        let g = s3.group();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // rebuild the table independently from permutation composition
        let t: Vec<Vec<usize>> = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let p: Vec<usize> = (0..3).map(|x| s3.perm(b)[s3.perm(a)[x]]).collect();
                        s3.index_of(&p).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert!(validate_group(&t).is_ok());
        assert_eq!(t, g.table_rows());
    }

    #[test]
    fn hom_counts() {
        let c2 = cyclic(2);
        let s2 = SymmetricGroup::new(2);
        assert_eq!(enumerate_homs(&c2, s2.group()).len(), 2);
        assert_eq!(all_functions_homs(&c2, s2.group()), 2);
        assert_eq!(enumerate_homs(&cyclic(3), &c2).len(), 1);
        assert_eq!(enumerate_homs(&c2, &cyclic(6)).len(), 2);
        assert_eq!(all_functions_homs(&c2, &cyclic(6)), 2);
    }

    #[test]
    fn hom_counts_match_exhaustive_scan() {
        let s3 = SymmetricGroup::new(3).group().clone();
        let groups = [trivial(), cyclic(2), cyclic(3), cyclic(4), direct_product(&cyclic(2), &cyclic(2)), s3];
        for g in &groups {
            for h in &groups {
                if h.order().pow(g.order() as u32) > 2_000_000 {
                    continue;
                }
                let homs = enumerate_homs(g, h);
                assert_eq!(homs.len(), all_functions_homs(g, h), "{g:?} -> {h:?}");
                for w in homs.windows(2) {
                    assert!(w[0].map() < w[1].map());
                }
                for f in &homs {
                    GroupHom::new(g.clone(), h.clone(), f.map().to_vec()).unwrap();
                }
            }
        }
    }

    #[test]
    fn character_counts() {
        let c3 = characters(&cyclic(3)).unwrap();
        assert_eq!(c3.len(), 3);
        let ks: Vec<u32> = c3.iter().map(|c| c.k(1)).collect();
        assert_eq!(ks, vec![0, 1, 2]);
        assert_eq!(characters(&trivial()).unwrap().len(), 1);
        let v4 = characters(&direct_product(&cyclic(2), &cyclic(2))).unwrap();
        assert_eq!(v4.len(), 4);
        assert!(v4.iter().all(|c| c.exponent() == 2));
        assert!(characters(SymmetricGroup::new(3).group()).is_err());
    }

    #[test]
    fn orbit_examples() {
        let c2 = cyclic(2);
        let swap = PermAction::new(c2.clone(), 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.orbits(), vec![vec![0, 1]]);
        let triv = PermAction::trivial(c2.clone(), 3);
        assert_eq!(triv.orbits(), vec![vec![0], vec![1], vec![2]]);
        let dbl = PermAction::new(c2, 4, vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(dbl.orbits(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(dbl.stabilizer(0), vec![0]);
    }

    #[test]
    fn perm_action_rejects_anti_homomorphism() {
        // "σ_X then σ_Y" must equal σ_{XY}; S3 acting by its own perms is
        // fine, acting by inverses is not.
        let s3 = SymmetricGroup::new(3);
        let g = s3.group().clone();
        let good: Vec<Vec<usize>> = g.elements().map(|x| s3.perm(x).to_vec()).collect();
        assert!(PermAction::new(g.clone(), 3, good).is_ok());
        let bad: Vec<Vec<usize>> = g.elements().map(|x| invert_perm(s3.perm(x))).collect();
        assert!(PermAction::new(g, 3, bad).is_err());
    }
}
