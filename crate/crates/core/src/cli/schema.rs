//! JSON interchange formats.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycMatrix, CycNumber};
use crate::groups::{self, FiniteGroup};
use crate::intertwiners::OneIntertwiner;
use crate::reps::{self, CatRep};
use crate::twovect::{NatMatrix, TwoMorphism};
use crate::xmod::{self, CrossedModule};

use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XmodJson {
    #[serde(rename = "E")]
    pub e: GroupJson,
    #[serde(rename = "G")]
    pub g: GroupJson,
    pub boundary: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub dim: usize,
    pub base: Vec<Vec<usize>>,
    pub chars: Vec<Vec<u32>>,
}

/// An integer that is written as a JSON number when it fits in `i64` and
/// as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Big(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub conductor: u32,
    pub coeffs: Vec<(IntJson, IntJson)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<CycJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoMorphismJson {
    pub source: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<CycMatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneIntertwinerJson {
    pub shape: Vec<Vec<usize>>,
    pub action: BTreeMap<String, TwoMorphismJson>,
}

pub fn group_to_json(g: &FiniteGroup) -> GroupJson {
    GroupJson { order: g.order(), table: g.table_rows(), name: g.name().map(str::to_owned) }
}

pub fn group_from_json(j: &GroupJson, cap: usize) -> Result<FiniteGroup, CliError> {
    if j.table.len() != j.order {
        return Err(CliError::Input(format!("group order {} but {} table rows", j.order, j.table.len())));
    }
    let g = groups::validate_group_with_cap(&j.table, cap).map_err(|e| CliError::Input(format!("group: {e}")))?;
    Ok(match &j.name {
        Some(n) => g.with_name(n.clone()),
        None => g,
    })
}

pub fn xmod_to_json(m: &CrossedModule) -> XmodJson {
    XmodJson {
        e: group_to_json(m.principal()),
        g: group_to_json(m.base()),
        boundary: m.boundary().map().to_vec(),
        action: m.action_rows(),
    }
}

pub fn xmod_from_json(j: &XmodJson, cap: usize) -> Result<CrossedModule, CliError> {
    let e = group_from_json(&j.e, cap)?;
    let g = group_from_json(&j.g, cap)?;
    xmod::validate_xmod(e, g, j.boundary.clone(), j.action.clone())
        .map_err(|e| CliError::Input(format!("crossed module: {e}")))
}

pub fn rep_to_json(r: &CatRep) -> RepJson {
    RepJson { dim: r.dim(), base: r.base().perms().to_vec(), chars: r.char_rows() }
}

pub fn rep_from_json(j: &RepJson, m: &Arc<CrossedModule>) -> Result<CatRep, CliError> {
    reps::validate_rep(m.clone(), j.dim, j.base.clone(), j.chars.clone())
        .map_err(|e| CliError::Input(format!("representation: {e}")))
}

fn int_to_json(n: &BigInt) -> IntJson {
    i64::try_from(n).map_or_else(|_| IntJson::Big(n.to_string()), IntJson::Small)
}

fn int_from_json(j: &IntJson) -> Result<BigInt, CliError> {
    match j {
        IntJson::Small(v) => Ok(BigInt::from(*v)),
        IntJson::Big(s) => s.parse().map_err(|_| CliError::Input(format!("not an integer: {s:?}"))),
    }
}

pub fn cyc_to_json(z: &CycNumber) -> CycJson {
    CycJson {
        conductor: z.conductor(),
        coeffs: z.coeffs().iter().map(|q| (int_to_json(q.numer()), int_to_json(q.denom()))).collect(),
    }
}

pub fn cyc_from_json(j: &CycJson) -> Result<CycNumber, CliError> {
    let mut coeffs = Vec::with_capacity(j.coeffs.len());
    for (n, d) in &j.coeffs {
        let d = int_from_json(d)?;
        if d == BigInt::from(0) {
            return Err(CliError::Input("zero denominator".into()));
        }
        coeffs.push(BigRational::new(int_from_json(n)?, d));
    }
    CycNumber::from_coeffs(j.conductor, coeffs).map_err(|e| CliError::Input(e.to_string()))
}

pub fn cyc_matrix_to_json(m: &CycMatrix) -> CycMatrixJson {
    CycMatrixJson { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(cyc_to_json).collect() }
}

pub fn cyc_matrix_from_json(j: &CycMatrixJson) -> Result<CycMatrix, CliError> {
    let entries = j.entries.iter().map(cyc_from_json).collect::<Result<Vec<_>, _>>()?;
    let conductor = entries.iter().map(CycNumber::conductor).max().unwrap_or(1);
    CycMatrix::new(j.rows, j.cols, conductor, entries).map_err(|e| CliError::Input(e.to_string()))
}

pub fn nat_from_json(rows: &[Vec<usize>]) -> Result<NatMatrix, CliError> {
    NatMatrix::from_rows(rows).map_err(|e| CliError::Input(e.to_string()))
}

pub fn two_morphism_to_json(a: &TwoMorphism) -> TwoMorphismJson {
    let cols = a.source().cols();
    TwoMorphismJson {
        source: a.source().to_rows(),
        target: a.target().to_rows(),
        blocks: a
            .blocks()
            .chunks(cols.max(1))
            .map(|row| row.iter().map(cyc_matrix_to_json).collect())
            .collect(),
    }
}

pub fn two_morphism_from_json(j: &TwoMorphismJson) -> Result<TwoMorphism, CliError> {
    let blocks = j
        .blocks
        .iter()
        .flatten()
        .map(cyc_matrix_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    TwoMorphism::new(nat_from_json(&j.source)?, nat_from_json(&j.target)?, blocks)
        .map_err(|e| CliError::Input(e.to_string()))
}

pub fn intertwiner_to_json(h: &OneIntertwiner) -> OneIntertwinerJson {
    OneIntertwinerJson {
        shape: h.shape().to_rows(),
        action: h
            .actions()
            .iter()
            .enumerate()
            .map(|(x, a)| (x.to_string(), two_morphism_to_json(a)))
            .collect(),
    }
}

pub fn intertwiner_from_json(j: &OneIntertwinerJson, r: &CatRep, t: &CatRep) -> Result<OneIntertwiner, CliError> {
    let order = r.xmod().base().order();
    let mut action = Vec::with_capacity(order);
    for x in 0..order {
        let a = j
            .action
            .get(&x.to_string())
            .ok_or_else(|| CliError::Input(format!("action missing for X = {x}")))?;
        action.push(two_morphism_from_json(a)?);
    }
    OneIntertwiner::new(r.clone(), t.clone(), nat_from_json(&j.shape)?, action)
        .map_err(|e| CliError::Input(format!("1-intertwiner: {e}")))
}
