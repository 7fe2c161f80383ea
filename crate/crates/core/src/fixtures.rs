//! Read-only literature data: a versioned, schema-checked table of simple
//! characters and Ext/socle facts that are not computable from the sum
//! formula alone. Loaded once from the JSON shipped with the crate; every
//! entry carries its bibliographic source and consumers surface that string
//! in their provenance output.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::charalg::{Form, VirtualCharacter};
use crate::rootsys::{RootSystem, SystemId, Weight};

const FIXTURE_JSON: &str = include_str!("../data/fixtures.json");

#[derive(Debug, Deserialize)]
struct RawFixtures {
    schema_version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
struct RawEntry {
    system: String,
    p: u64,
    kind: String,
    #[serde(default)]
    weight: Option<Vec<i64>>,
    #[serde(default)]
    dominant_multiplicities: Option<Vec<(Vec<i64>, i64)>>,
    #[serde(default)]
    payload: Option<RawPayload>,
    source: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type")]
enum RawPayload {
    #[serde(rename = "ext1-socle-summands")]
    ExtSocleSummands {
        lambda: Vec<i64>,
        mu: Vec<i64>,
        untwisted_summands: Vec<Vec<i64>>,
    },
    #[serde(rename = "ext1-contains-nabla")]
    ExtContainsNabla {
        lambda: Vec<i64>,
        mu: Vec<i64>,
        nabla_weight: Vec<i64>,
    },
    #[serde(rename = "weyl-socle")]
    WeylSocle { weight: Vec<i64>, socle: Vec<i64> },
}

/// A simple character taken from the literature.
#[derive(Debug, Clone)]
pub struct SimpleCharacterFixture {
    pub character: VirtualCharacter,
    pub source: String,
}

/// Summands of `Ext^1_{G_1}(L(λ), L(μ))^{(−1)}` when the literature gives the
/// full (semisimple) answer.
#[derive(Debug, Clone)]
pub struct ExtSummandsFixture {
    pub lambda: Weight,
    pub mu: Weight,
    pub untwisted_summands: Vec<Weight>,
    pub source: String,
}

/// A known embedding `∇(ν) ↪ Ext^1_{G_1}(L(λ), L(μ))^{(−1)}`.
#[derive(Debug, Clone)]
pub struct ExtNablaFixture {
    pub lambda: Weight,
    pub mu: Weight,
    pub nabla_weight: Weight,
    pub source: String,
}

/// A known simple socle of a Weyl module.
#[derive(Debug, Clone)]
pub struct WeylSocleFixture {
    pub weight: Weight,
    pub socle: Weight,
    pub source: String,
}

fn raw() -> &'static RawFixtures {
    static DATA: OnceLock<RawFixtures> = OnceLock::new();
    DATA.get_or_init(|| {
        let data: RawFixtures =
            serde_json::from_str(FIXTURE_JSON).expect("embedded fixture file must parse");
        assert_eq!(data.schema_version, 1, "unsupported fixture schema");
        data
    })
}

pub fn schema_version() -> u32 {
    raw().schema_version
}

fn sys_matches(entry: &RawEntry, id: SystemId) -> bool {
    SystemId::parse(&entry.system) == Some(id)
}

/// Simple character for (system, p, λ), if the literature table has one.
pub fn simple_character_fixture(
    rs: &RootSystem,
    p: u64,
    lambda: &Weight,
) -> Option<SimpleCharacterFixture> {
    for e in &raw().entries {
        if e.kind == "simple-character"
            && e.p == p
            && sys_matches(e, rs.id())
            && e.weight.as_deref() == Some(lambda.coords())
        {
            let mults = e.dominant_multiplicities.as_ref()?;
            let mut support = BTreeMap::new();
            for (coords, m) in mults {
                support.insert(Weight::new(rs.id(), coords.clone()), *m);
            }
            return Some(SimpleCharacterFixture {
                character: VirtualCharacter::from_map(rs.id(), Form::Weight, support),
                source: e.source.clone(),
            });
        }
    }
    None
}

pub fn ext_summands_fixture(
    rs: &RootSystem,
    p: u64,
    lambda: &Weight,
    mu: &Weight,
) -> Option<ExtSummandsFixture> {
    for e in &raw().entries {
        if e.kind != "ext-datum" || e.p != p || !sys_matches(e, rs.id()) {
            continue;
        }
        if let Some(RawPayload::ExtSocleSummands {
            lambda: l,
            mu: m,
            untwisted_summands,
        }) = &e.payload
        {
            if l == lambda.coords() && m == mu.coords() {
                return Some(ExtSummandsFixture {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    untwisted_summands: untwisted_summands
                        .iter()
                        .map(|c| Weight::new(rs.id(), c.clone()))
                        .collect(),
                    source: e.source.clone(),
                });
            }
        }
    }
    None
}

pub fn ext_nabla_fixture(
    rs: &RootSystem,
    p: u64,
    lambda: &Weight,
    mu: &Weight,
) -> Option<ExtNablaFixture> {
    for e in &raw().entries {
        if e.kind != "ext-datum" || e.p != p || !sys_matches(e, rs.id()) {
            continue;
        }
        if let Some(RawPayload::ExtContainsNabla {
            lambda: l,
            mu: m,
            nabla_weight,
        }) = &e.payload
        {
            if l == lambda.coords() && m == mu.coords() {
                return Some(ExtNablaFixture {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    nabla_weight: Weight::new(rs.id(), nabla_weight.clone()),
                    source: e.source.clone(),
                });
            }
        }
    }
    None
}

pub fn weyl_socle_fixture(rs: &RootSystem, p: u64, gamma: &Weight) -> Option<WeylSocleFixture> {
    for e in &raw().entries {
        if e.kind != "ext-datum" || e.p != p || !sys_matches(e, rs.id()) {
            continue;
        }
        if let Some(RawPayload::WeylSocle { weight, socle }) = &e.payload {
            if weight == gamma.coords() {
                return Some(WeylSocleFixture {
                    weight: gamma.clone(),
                    socle: Weight::new(rs.id(), socle.clone()),
                    source: e.source.clone(),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn fixture_table_loads() {
        assert_eq!(schema_version(), 1);
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let om2 = b3.fundamental_weight(1);
        let fx = simple_character_fixture(&b3, 2, &om2).unwrap();
        assert_eq!(fx.character.coeff(&om2), 1);
        assert_eq!(fx.character.coeff(&b3.zero_weight()), 2);
        assert!(simple_character_fixture(&b3, 3, &om2).is_none());
    }

    #[test]
    fn ext_fixtures_resolve() {
        let d4 = RootSystem::get(Family::D, 4).unwrap();
        let zero = d4.zero_weight();
        let mu = d4.weight(&[1, 0, 1, 1]).unwrap();
        let fx = ext_summands_fixture(&d4, 2, &zero, &mu).unwrap();
        assert_eq!(fx.untwisted_summands.len(), 2);
        let g2 = RootSystem::get(Family::G, 2).unwrap();
        let fx = ext_nabla_fixture(&g2, 2, &g2.zero_weight(), &g2.fundamental_weight(1)).unwrap();
        assert_eq!(fx.nabla_weight, g2.fundamental_weight(0));
        assert!(weyl_socle_fixture(&g2, 2, &g2.fundamental_weight(0)).is_some());
    }
}
