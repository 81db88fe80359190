use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use dkoszul_core::superspace::SuperSpace;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Identities,
    Exactness,
    Commutativity,
    Equivariance,
    Spectra,
    Splittings,
    Constructions,
    Characters,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Identities,
        Check::Exactness,
        Check::Commutativity,
        Check::Equivariance,
        Check::Spectra,
        Check::Splittings,
        Check::Constructions,
        Check::Characters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Identities => "identities",
            Check::Exactness => "exactness",
            Check::Commutativity => "commutativity",
            Check::Equivariance => "equivariance",
            Check::Spectra => "spectra",
            Check::Splittings => "splittings",
            Check::Constructions => "constructions",
            Check::Characters => "characters",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown check {s:?}")))
    }
}

/// What to verify, on which alphabet, over which index window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationPlan {
    pub m: usize,
    pub n: usize,
    pub max_k: usize,
    pub max_l: usize,
    pub max_i: usize,
    pub max_a: usize,
    pub max_p: usize,
    pub max_r: usize,
    pub checks: BTreeSet<Check>,
    /// Cells whose largest space exceeds this are skipped.
    pub max_dim: usize,
    /// Worker count; does not affect the report.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for VerificationPlan {
    fn default() -> Self {
        VerificationPlan {
            m: 3,
            n: 1,
            max_k: 4,
            max_l: 4,
            max_i: 2,
            max_a: 2,
            max_p: 3,
            max_r: 3,
            checks: Check::ALL.into_iter().collect(),
            max_dim: 5000,
            jobs: 1,
        }
    }
}

impl VerificationPlan {
    pub fn only(checks: &[Check]) -> Self {
        VerificationPlan { checks: checks.iter().copied().collect(), ..Default::default() }
    }

    pub fn space(&self) -> Result<SuperSpace, HarnessError> {
        SuperSpace::new(self.m, self.n).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.space()?;
        let bounds = [
            ("max-k", self.max_k),
            ("max-l", self.max_l),
            ("max-i", self.max_i),
            ("max-a", self.max_a),
            ("max-p", self.max_p),
            ("max-r", self.max_r),
            ("max-dim", self.max_dim),
            ("jobs", self.jobs),
        ];
        if let Some((name, _)) = bounds.iter().find(|(_, b)| *b == 0) {
            return Err(HarnessError::Config(format!("{name} must be at least 1")));
        }
        if self.checks.is_empty() {
            return Err(HarnessError::Config("no checks selected".into()));
        }
        Ok(())
    }

    /// Hex digest of the plan's report-relevant fields.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let text = serde_json::to_string(self).expect("plan serializes");
        hex::encode(Sha256::digest(text.as_bytes()))[..16].to_string()
    }
}

/// Parses a comma-separated check list; `all` selects everything.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>, HarnessError> {
    if s.trim() == "all" {
        return Ok(Check::ALL.into_iter().collect());
    }
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}
