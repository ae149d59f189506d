//! JSON encodings. Integers are written as decimal strings so that
//! arbitrary-precision entries survive a round trip; matrices are row-major.

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use tiltkit_core::b::{BObject, Butterfly, StrictMorphism};
use tiltkit_core::ctilt::{make_c_object, CObject};
use tiltkit_core::decorated::{ChainComplexA, ChainMapA, DecComplex, DecMap};
use tiltkit_core::tot::{make_b_complex, BChainMap, BComplex};
use tiltkit_core::{FgGroup, GroupMap, IntMatrix, Subgroup};

use crate::error::CliError;

pub type Rows = Vec<Vec<String>>;

fn rows_of(m: &IntMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().map(BigInt::to_string).collect()).collect()
}

fn int(s: &str) -> Result<BigInt, CliError> {
    s.trim().parse().map_err(|_| CliError::Invalid(format!("{s:?} is not a decimal integer")))
}

/// A row-major matrix; `cols` fixes the width when there are no rows.
pub fn matrix_of(rows: &Rows, cols: Option<usize>) -> Result<IntMatrix, CliError> {
    let width = rows.first().map(Vec::len).or(cols).unwrap_or(0);
    if let Some(c) = cols {
        if !rows.is_empty() && c != width {
            return Err(CliError::Invalid(format!("expected {c} columns, found {width}")));
        }
    }
    let mut data = Vec::with_capacity(rows.len() * width);
    for r in rows {
        if r.len() != width {
            return Err(CliError::Invalid("ragged matrix".into()));
        }
        for x in r {
            data.push(int(x)?);
        }
    }
    Ok(IntMatrix::from_vec(rows.len(), width, data))
}

pub fn vector_of(v: &[String]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(|s| int(s)).collect()
}

pub fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

/// Conversion between a core value and its serde form.
pub trait Json: Sized {
    type Dto: Serialize + DeserializeOwned;
    fn to_dto(&self) -> Self::Dto;
    fn from_dto(dto: Self::Dto) -> Result<Self, CliError>;

    fn to_value(&self) -> Value {
        serde_json::to_value(self.to_dto()).expect("plain data serializes")
    }

    fn from_value(v: Value) -> Result<Self, CliError> {
        let dto: Self::Dto = serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("malformed JSON: {e}")))?;
        Self::from_dto(dto)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDto {
    pub ambient_rank: usize,
    pub relations: Rows,
}

impl Json for FgGroup {
    type Dto = GroupDto;

    fn to_dto(&self) -> GroupDto {
        GroupDto { ambient_rank: self.ambient_rank(), relations: rows_of(self.relations()) }
    }

    fn from_dto(d: GroupDto) -> Result<FgGroup, CliError> {
        if d.relations.len() != d.ambient_rank {
            return Err(CliError::Invalid(format!("{} relation rows for ambient rank {}", d.relations.len(), d.ambient_rank)));
        }
        Ok(FgGroup::new(matrix_of(&d.relations, None)?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDto {
    pub src: GroupDto,
    pub dst: GroupDto,
    pub lift: Rows,
}

impl Json for GroupMap {
    type Dto = MapDto;

    fn to_dto(&self) -> MapDto {
        MapDto { src: self.src().to_dto(), dst: self.dst().to_dto(), lift: rows_of(self.lift()) }
    }

    fn from_dto(d: MapDto) -> Result<GroupMap, CliError> {
        let src = FgGroup::from_dto(d.src)?;
        let dst = FgGroup::from_dto(d.dst)?;
        if d.lift.len() != dst.ambient_rank() {
            return Err(CliError::Invalid(format!("lift has {} rows, target rank is {}", d.lift.len(), dst.ambient_rank())));
        }
        let lift = matrix_of(&d.lift, Some(src.ambient_rank()))?;
        Ok(GroupMap::new(src, dst, lift)?)
    }
}

/// Generator lifts of a subgroup, one vector per generator.
pub fn subgroup_to(s: &Subgroup) -> Rows {
    s.generators().columns().iter().map(|c| strings(c)).collect()
}

pub fn subgroup_from(ambient: &FgGroup, gens: &Rows) -> Result<Subgroup, CliError> {
    let cols = gens.iter().map(|g| vector_of(g)).collect::<Result<Vec<_>, _>>()?;
    if cols.iter().any(|c| c.len() != ambient.ambient_rank()) {
        return Err(CliError::Invalid(format!("subgroup generators must have length {}", ambient.ambient_rank())));
    }
    Ok(Subgroup::new(ambient, &IntMatrix::from_columns(ambient.ambient_rank(), &cols)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BObjectDto {
    pub d: MapDto,
}

impl Json for BObject {
    type Dto = BObjectDto;

    fn to_dto(&self) -> BObjectDto {
        BObjectDto { d: self.d().to_dto() }
    }

    fn from_dto(d: BObjectDto) -> Result<BObject, CliError> {
        Ok(BObject::new(GroupMap::from_dto(d.d)?)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ButterflyDto {
    pub src: BObjectDto,
    pub dst: BObjectDto,
    pub e: GroupDto,
    pub kappa: MapDto,
    pub iota: MapDto,
    pub sigma: MapDto,
    pub rho: MapDto,
}

impl Json for Butterfly {
    type Dto = ButterflyDto;

    fn to_dto(&self) -> ButterflyDto {
        ButterflyDto {
            src: self.src().to_dto(),
            dst: self.dst().to_dto(),
            e: self.e().to_dto(),
            kappa: self.kappa().to_dto(),
            iota: self.iota().to_dto(),
            sigma: self.sigma().to_dto(),
            rho: self.rho().to_dto(),
        }
    }

    fn from_dto(d: ButterflyDto) -> Result<Butterfly, CliError> {
        Ok(Butterfly::new(
            BObject::from_dto(d.src)?,
            BObject::from_dto(d.dst)?,
            FgGroup::from_dto(d.e)?,
            GroupMap::from_dto(d.kappa)?,
            GroupMap::from_dto(d.iota)?,
            GroupMap::from_dto(d.sigma)?,
            GroupMap::from_dto(d.rho)?,
        )?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrictDto {
    pub src: BObjectDto,
    pub dst: BObjectDto,
    pub f_m1: MapDto,
    pub f_0: MapDto,
}

impl Json for StrictMorphism {
    type Dto = StrictDto;

    fn to_dto(&self) -> StrictDto {
        StrictDto { src: self.src.to_dto(), dst: self.dst.to_dto(), f_m1: self.f_m1.to_dto(), f_0: self.f_0.to_dto() }
    }

    fn from_dto(d: StrictDto) -> Result<StrictMorphism, CliError> {
        let src = BObject::from_dto(d.src)?;
        let dst = BObject::from_dto(d.dst)?;
        Ok(StrictMorphism::new(GroupMap::from_dto(d.f_m1)?, GroupMap::from_dto(d.f_0)?, &src, &dst)?)
    }
}

fn support(start: i64, len: usize) -> [i64; 2] {
    [start, start + len as i64 - 1]
}

fn check_support(s: [i64; 2], len: usize) -> Result<i64, CliError> {
    if s[1] - s[0] + 1 != len as i64 {
        return Err(CliError::Invalid(format!("support [{}, {}] does not match {} terms", s[0], s[1], len)));
    }
    Ok(s[0])
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BComplexDto {
    pub support: [i64; 2],
    pub objects: Vec<BObjectDto>,
    /// `differentials[i]` runs from object `i` to object `i + 1`.
    pub differentials: Vec<ButterflyDto>,
}

impl Json for BComplex {
    type Dto = BComplexDto;

    fn to_dto(&self) -> BComplexDto {
        let start = if self.is_empty() { 0 } else { self.start() };
        BComplexDto {
            support: support(start, self.objects().len()),
            objects: self.objects().iter().map(Json::to_dto).collect(),
            differentials: self.interior_diffs().iter().map(Json::to_dto).collect(),
        }
    }

    fn from_dto(d: BComplexDto) -> Result<BComplex, CliError> {
        let start = check_support(d.support, d.objects.len())?;
        let objects = d.objects.into_iter().map(BObject::from_dto).collect::<Result<Vec<_>, _>>()?;
        let diffs = d.differentials.into_iter().map(Butterfly::from_dto).collect::<Result<Vec<_>, _>>()?;
        Ok(make_b_complex(start, objects, diffs)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDto {
    pub support: [i64; 2],
    pub terms: Vec<GroupDto>,
    pub differentials: Vec<MapDto>,
}

impl Json for ChainComplexA {
    type Dto = ComplexDto;

    fn to_dto(&self) -> ComplexDto {
        let start = if self.is_empty() { 0 } else { self.start() };
        ComplexDto {
            support: support(start, self.terms().len()),
            terms: self.terms().iter().map(Json::to_dto).collect(),
            differentials: self.diffs().iter().map(Json::to_dto).collect(),
        }
    }

    fn from_dto(d: ComplexDto) -> Result<ChainComplexA, CliError> {
        let start = check_support(d.support, d.terms.len())?;
        if d.terms.is_empty() {
            return Ok(ChainComplexA::zero());
        }
        let terms = d.terms.into_iter().map(FgGroup::from_dto).collect::<Result<Vec<_>, _>>()?;
        let diffs = d.differentials.into_iter().map(GroupMap::from_dto).collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplexA::new(start, terms, diffs)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecComplexDto {
    pub support: [i64; 2],
    pub terms: Vec<GroupDto>,
    pub differentials: Vec<MapDto>,
    pub decoration: Vec<Rows>,
}

impl Json for DecComplex {
    type Dto = DecComplexDto;

    fn to_dto(&self) -> DecComplexDto {
        let c = self.complex().to_dto();
        DecComplexDto {
            support: c.support,
            terms: c.terms,
            differentials: c.differentials,
            decoration: self.decoration().iter().map(subgroup_to).collect(),
        }
    }

    fn from_dto(d: DecComplexDto) -> Result<DecComplex, CliError> {
        let c = ChainComplexA::from_dto(ComplexDto { support: d.support, terms: d.terms, differentials: d.differentials })?;
        if d.decoration.len() != c.terms().len() {
            return Err(CliError::Invalid(format!("{} decorations for {} terms", d.decoration.len(), c.terms().len())));
        }
        let deco = c.terms().iter().zip(&d.decoration).map(|(g, s)| subgroup_from(g, s)).collect::<Result<Vec<_>, _>>()?;
        Ok(DecComplex::new(c, deco)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecMapDto {
    pub src: DecComplexDto,
    pub dst: DecComplexDto,
    pub start: i64,
    pub components: Vec<MapDto>,
}

fn chain_components(m: &ChainMapA) -> (i64, Vec<MapDto>) {
    let (lo, hi) = m.range();
    (lo, (lo..=hi).map(|n| m.comp(n).to_dto()).collect())
}

impl Json for DecMap {
    type Dto = DecMapDto;

    fn to_dto(&self) -> DecMapDto {
        let (start, components) = chain_components(self.chain_map());
        DecMapDto { src: self.src().to_dto(), dst: self.dst().to_dto(), start, components }
    }

    fn from_dto(d: DecMapDto) -> Result<DecMap, CliError> {
        let src = DecComplex::from_dto(d.src)?;
        let dst = DecComplex::from_dto(d.dst)?;
        let comps = d.components.into_iter().map(GroupMap::from_dto).collect::<Result<Vec<_>, _>>()?;
        Ok(DecMap::from_components(&src, &dst, d.start, comps)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BChainMapDto {
    pub src: BComplexDto,
    pub dst: BComplexDto,
    pub start: i64,
    pub components: Vec<ButterflyDto>,
    /// Present for strict chain maps; takes precedence over `components`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<Vec<StrictDto>>,
}

impl Json for BChainMap {
    type Dto = BChainMapDto;

    fn to_dto(&self) -> BChainMapDto {
        let (lo, hi) = self.range();
        let strict = self
            .is_strict()
            .then(|| (lo..=hi).map(|n| self.strict_comp(n).expect("strict map").to_dto()).collect());
        BChainMapDto {
            src: self.src().to_dto(),
            dst: self.dst().to_dto(),
            start: lo,
            components: (lo..=hi).map(|n| self.comp(n).to_dto()).collect(),
            strict,
        }
    }

    fn from_dto(d: BChainMapDto) -> Result<BChainMap, CliError> {
        let src = BComplex::from_dto(d.src)?;
        let dst = BComplex::from_dto(d.dst)?;
        Ok(match d.strict {
            Some(s) => {
                let comps = s.into_iter().map(StrictMorphism::from_dto).collect::<Result<Vec<_>, _>>()?;
                BChainMap::new_strict(&src, &dst, d.start, comps)?
            }
            None => {
                let comps = d.components.into_iter().map(Butterfly::from_dto).collect::<Result<Vec<_>, _>>()?;
                BChainMap::new(&src, &dst, d.start, comps)?
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CObjectDto {
    pub e: GroupDto,
    pub k1: Rows,
    pub k2: Rows,
    pub m: Rows,
}

impl Json for CObject {
    type Dto = CObjectDto;

    fn to_dto(&self) -> CObjectDto {
        CObjectDto { e: self.e().to_dto(), k1: subgroup_to(self.k1()), k2: subgroup_to(self.k2()), m: subgroup_to(self.m()) }
    }

    fn from_dto(d: CObjectDto) -> Result<CObject, CliError> {
        let e = FgGroup::from_dto(d.e)?;
        let (k1, k2, m) = (subgroup_from(&e, &d.k1)?, subgroup_from(&e, &d.k2)?, subgroup_from(&e, &d.m)?);
        Ok(make_c_object(&e, k1, k2, m)?)
    }
}

/// Invariant-factor form of a group, e.g. `{"free_rank": 1, "torsion": ["2"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canonical {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub display: String,
}

pub fn canonical(g: &FgGroup) -> Canonical {
    Canonical { free_rank: g.free_rank(), torsion: strings(g.invariants()), display: g.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltkit_core::imat;

    #[test]
    fn group_round_trip_keeps_relations() {
        let g = FgGroup::new(imat![2; [2, 0], [0, 0]]);
        let v = g.to_value();
        assert_eq!(v["relations"][0][0], "2");
        assert_eq!(FgGroup::from_value(v).unwrap(), g);
    }

    #[test]
    fn big_entries_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let g = FgGroup::new(IntMatrix::from_vec(1, 1, vec![big.clone()]));
        let back = FgGroup::from_value(g.to_value()).unwrap();
        assert_eq!(back.invariants(), &[big][..]);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let bad = serde_json::json!({"ambient_rank": 2, "relations": [["1"]]});
        assert!(FgGroup::from_value(bad).is_err());
        let bad = serde_json::json!({"ambient_rank": 1, "relations": [["x"]]});
        assert!(FgGroup::from_value(bad).is_err());
        let z = FgGroup::free(1);
        let not_b = GroupMap::zero(&z, &z);
        assert!(BObject::from_value(serde_json::json!({ "d": not_b.to_value() })).is_err());
    }

    #[test]
    fn subgroup_generators_are_columns() {
        let g = FgGroup::free(2);
        let s = Subgroup::new(&g, &imat![1; [2], [0]]);
        let rows = subgroup_to(&s);
        assert_eq!(rows, vec![vec!["2".to_string(), "0".to_string()]]);
        assert_eq!(subgroup_from(&g, &rows).unwrap(), s);
    }
}
