//! Externally sourced facts, loaded from a versioned TOML document.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::report::FixtureUse;
use super::VerifierError;

pub const FIXTURES_VERSION: u32 = 1;

const BUNDLED: &str = include_str!("../../fixtures/fixtures.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixtures {
    pub version: u32,
    pub ishikawa: IshikawaFact,
    pub magma: MagmaFact,
    pub voight: VoightFact,
}

/// No weight-2 cuspidal eigenform exists for the listed discriminants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IshikawaFact {
    pub citation: String,
    pub discriminants: Vec<i64>,
}

/// `dim S_k(Γ_F) > 1` over one field for the listed weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagmaFact {
    pub citation: String,
    pub discriminant: i64,
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoightFact {
    pub citation: String,
    /// `(degree, minimal discriminant)` pairs.
    pub minimal_discriminants: Vec<(u32, i64)>,
}

impl Fixtures {
    /// The fixtures file shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled fixtures parse")
    }

    pub fn parse(text: &str) -> Result<Self, VerifierError> {
        let f: Fixtures = toml::from_str(text).map_err(|e| VerifierError::Fixtures(e.to_string()))?;
        if f.version != FIXTURES_VERSION {
            return Err(VerifierError::Fixtures(format!("unsupported fixtures version {}", f.version)));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, VerifierError> {
        let text = std::fs::read_to_string(path).map_err(|e| VerifierError::Fixtures(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn no_weight_two_eigenform(&self, d: i64) -> Result<FixtureUse, VerifierError> {
        if !self.ishikawa.discriminants.contains(&d) {
            return Err(VerifierError::MissingFixture(format!("ishikawa: no entry for D = {d}")));
        }
        Ok(FixtureUse {
            id: format!("ishikawa-weight2-d{d}"),
            citation: self.ishikawa.citation.clone(),
            detail: format!("no weight-2 cuspidal eigenform for D = {d}"),
        })
    }

    pub fn cusp_dimension_exceeds_one(&self, d: i64, weight: u32) -> Result<FixtureUse, VerifierError> {
        if self.magma.discriminant != d || !self.magma.weights.contains(&weight) {
            return Err(VerifierError::MissingFixture(format!("magma: no entry for D = {d}, weight {weight}")));
        }
        Ok(FixtureUse {
            id: format!("magma-d{d}-weight{weight}"),
            citation: self.magma.citation.clone(),
            detail: format!("dim S_{weight} > 1 for D = {d}"),
        })
    }

    pub fn minimal_discriminant(&self, degree: u32) -> Result<(i64, FixtureUse), VerifierError> {
        let d = self
            .voight
            .minimal_discriminants
            .iter()
            .find(|(n, _)| *n == degree)
            .map(|(_, d)| *d)
            .ok_or_else(|| VerifierError::MissingFixture(format!("voight: no minimal discriminant for degree {degree}")))?;
        Ok((
            d,
            FixtureUse {
                id: format!("voight-degree{degree}"),
                citation: self.voight.citation.clone(),
                detail: format!("totally real fields of degree {degree} have D >= {d}"),
            },
        ))
    }
}
