//! On-disk JSON schemas and their conversion to engine types.

use std::collections::BTreeMap;
use std::path::Path;

use reserve_core::baseline::{BaselineInstance, RawBaseline, RawReserve, ReserveMode};
use reserve_core::mechanisms::PreferenceProfile;
use reserve_core::{validate_instance, Instance, RawCategory, RawInstance};
use serde::{Deserialize, Serialize};

/// An instance file. The `kind` field selects the schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Raw(RawFile),
    Baseline(BaselineFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFile {
    pub patients: Vec<String>,
    pub categories: Vec<CategoryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_units: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryEntry {
    pub id: String,
    pub capacity: usize,
    /// Highest priority first; the first `eligible_count` are eligible.
    pub priority: Vec<String>,
    pub eligible_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineFile {
    pub baseline: Vec<String>,
    pub unreserved: String,
    pub unreserved_capacity: usize,
    pub mode: Mode,
    pub reserves: Vec<ReserveEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Soft,
    Hard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReserveEntry {
    pub id: String,
    pub capacity: usize,
    pub beneficiaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    /// Patient name to categories, most preferred first.
    pub preferences: BTreeMap<String, Vec<String>>,
}

/// A loaded instance.
#[derive(Debug, Clone)]
pub enum Loaded {
    Raw(Instance),
    Baseline(BaselineInstance),
}

impl Loaded {
    pub fn instance(&self) -> Result<Instance, String> {
        match self {
            Loaded::Raw(inst) => Ok(inst.clone()),
            Loaded::Baseline(b) => b.lower().map_err(|e| e.to_string()),
        }
    }
}

impl InstanceFile {
    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn load(self) -> Result<Loaded, String> {
        match self {
            InstanceFile::Raw(f) => validate_instance(RawInstance {
                patients: f.patients,
                categories: f
                    .categories
                    .into_iter()
                    .map(|c| RawCategory {
                        name: c.id,
                        capacity: c.capacity,
                        priority: c.priority,
                        eligible_count: c.eligible_count,
                    })
                    .collect(),
                total_units: f.total_units,
            })
            .map(Loaded::Raw),
            InstanceFile::Baseline(f) => BaselineInstance::new(RawBaseline {
                baseline: f.baseline,
                unreserved: f.unreserved,
                unreserved_capacity: f.unreserved_capacity,
                mode: match f.mode {
                    Mode::Soft => ReserveMode::Soft,
                    Mode::Hard => ReserveMode::Hard,
                },
                reserves: f
                    .reserves
                    .into_iter()
                    .map(|r| RawReserve {
                        name: r.id,
                        capacity: r.capacity,
                        beneficiaries: r.beneficiaries,
                    })
                    .collect(),
            })
            .map(Loaded::Baseline),
        }
        .map_err(|e| e.to_string())
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let raw = inst.to_raw();
        InstanceFile::Raw(RawFile {
            patients: raw.patients,
            categories: raw
                .categories
                .into_iter()
                .map(|c| CategoryEntry {
                    id: c.name,
                    capacity: c.capacity,
                    priority: c.priority,
                    eligible_count: c.eligible_count,
                })
                .collect(),
            total_units: raw.total_units,
        })
    }

    pub fn from_baseline(b: &BaselineInstance) -> Self {
        let raw = b.to_raw();
        InstanceFile::Baseline(BaselineFile {
            baseline: raw.baseline,
            unreserved: raw.unreserved,
            unreserved_capacity: raw.unreserved_capacity,
            mode: match raw.mode {
                ReserveMode::Soft => Mode::Soft,
                ReserveMode::Hard => Mode::Hard,
            },
            reserves: raw
                .reserves
                .into_iter()
                .map(|r| ReserveEntry {
                    id: r.name,
                    capacity: r.capacity,
                    beneficiaries: r.beneficiaries,
                })
                .collect(),
        })
    }
}

impl ProfileFile {
    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn resolve(&self, inst: &Instance) -> Result<PreferenceProfile, String> {
        for name in self.preferences.keys() {
            inst.patient_id(name).map_err(|e| e.to_string())?;
        }
        let lists = inst
            .patients()
            .map(|i| {
                let name = inst.patient_name(i);
                let list = self
                    .preferences
                    .get(name)
                    .ok_or_else(|| format!("no preferences for `{name}`"))?;
                list.iter()
                    .map(|c| inst.category_id(c).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PreferenceProfile::new(inst, lists).map_err(|e| e.to_string())
    }
}
