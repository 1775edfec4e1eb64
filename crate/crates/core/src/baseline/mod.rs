//! Reserve systems built from a single baseline priority order.
//!
//! One unreserved category ranks everybody by the baseline order. Every other
//! (preferential) category moves its beneficiaries to the front and keeps the
//! baseline order within each group. Under soft reserves everybody stays
//! eligible everywhere; under hard reserves only beneficiaries are eligible
//! for a preferential category.

mod comparative;
mod smart;
mod smart_poly;

use std::collections::{BTreeSet, HashMap};

use crate::combinatorics::{max_cardinality_matching, BipartiteGraph};
use crate::error::{Error, Result};
use crate::instance::{Category, CategoryId, Instance, PatientId, PriorityOrder};
use crate::matching::Matching;

pub use comparative::{check_prop3, compare_beneficiary_outcomes, BeneficiaryComparison};
pub use smart::{smart_reserve_matching_exhaustive, SmartConfig, SmartDecision, SmartOutcome};
pub use smart_poly::{smart_reserve_matching_poly, PolySmartOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReserveMode {
    Soft,
    Hard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawReserve {
    pub name: String,
    pub capacity: usize,
    pub beneficiaries: Vec<String>,
}

/// Unvalidated baseline description. `baseline` lists the patients from
/// highest to lowest priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBaseline {
    pub baseline: Vec<String>,
    pub unreserved: String,
    pub unreserved_capacity: usize,
    pub mode: ReserveMode,
    pub reserves: Vec<RawReserve>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Reserve {
    name: String,
    capacity: usize,
    beneficiaries: BTreeSet<PatientId>,
}

/// A validated baseline instance.
///
/// Patient `PatientId(k)` is the `k`-th highest in the baseline order.
/// Category ids follow the lowered instance: preferential categories in
/// declaration order, then the unreserved category last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineInstance {
    patients: Vec<String>,
    reserves: Vec<Reserve>,
    unreserved_name: String,
    unreserved_capacity: usize,
    mode: ReserveMode,
}

impl BaselineInstance {
    pub fn new(raw: RawBaseline) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidBaseline(msg));
        let mut index = HashMap::new();
        for (k, name) in raw.baseline.iter().enumerate() {
            if index.insert(name.as_str(), PatientId(k)).is_some() {
                return invalid(format!("patient `{name}` appears twice in the baseline"));
            }
        }
        let mut names = BTreeSet::from([raw.unreserved.as_str()]);
        let mut reserves = Vec::with_capacity(raw.reserves.len());
        for r in &raw.reserves {
            if !names.insert(r.name.as_str()) {
                return invalid(format!("category `{}` declared twice", r.name));
            }
            let mut beneficiaries = BTreeSet::new();
            for p in &r.beneficiaries {
                let &i = match index.get(p.as_str()) {
                    Some(i) => i,
                    None => {
                        return invalid(format!(
                            "beneficiary `{p}` of `{}` is not a patient",
                            r.name
                        ))
                    }
                };
                if !beneficiaries.insert(i) {
                    return invalid(format!(
                        "`{p}` listed twice as a beneficiary of `{}`",
                        r.name
                    ));
                }
            }
            reserves.push(Reserve {
                name: r.name.clone(),
                capacity: r.capacity,
                beneficiaries,
            });
        }
        Ok(Self {
            patients: raw.baseline,
            reserves,
            unreserved_name: raw.unreserved,
            unreserved_capacity: raw.unreserved_capacity,
            mode: raw.mode,
        })
    }

    pub fn to_raw(&self) -> RawBaseline {
        RawBaseline {
            baseline: self.patients.clone(),
            unreserved: self.unreserved_name.clone(),
            unreserved_capacity: self.unreserved_capacity,
            mode: self.mode,
            reserves: self
                .reserves
                .iter()
                .map(|r| RawReserve {
                    name: r.name.clone(),
                    capacity: r.capacity,
                    beneficiaries: r
                        .beneficiaries
                        .iter()
                        .map(|i| self.patients[i.0].clone())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn mode(&self) -> ReserveMode {
        self.mode
    }

    pub fn num_patients(&self) -> usize {
        self.patients.len()
    }

    pub fn num_categories(&self) -> usize {
        self.reserves.len() + 1
    }

    /// Patients from highest to lowest baseline priority.
    pub fn patients(&self) -> impl ExactSizeIterator<Item = PatientId> + Clone {
        (0..self.patients.len()).map(PatientId)
    }

    pub fn patient_name(&self, i: PatientId) -> &str {
        &self.patients[i.0]
    }

    pub fn unreserved(&self) -> CategoryId {
        CategoryId(self.reserves.len())
    }

    /// Preferential categories in declaration order.
    pub fn preferential(&self) -> impl ExactSizeIterator<Item = CategoryId> + Clone {
        (0..self.reserves.len()).map(CategoryId)
    }

    pub fn category_name(&self, c: CategoryId) -> &str {
        if c == self.unreserved() {
            &self.unreserved_name
        } else {
            &self.reserves[c.0].name
        }
    }

    pub fn capacity(&self, c: CategoryId) -> usize {
        if c == self.unreserved() {
            self.unreserved_capacity
        } else {
            self.reserves[c.0].capacity
        }
    }

    /// Everybody benefits from the unreserved category.
    pub fn is_beneficiary(&self, i: PatientId, c: CategoryId) -> bool {
        c == self.unreserved() || self.reserves[c.0].beneficiaries.contains(&i)
    }

    /// Beneficiaries of a preferential category.
    pub fn beneficiaries(&self, c: CategoryId) -> &BTreeSet<PatientId> {
        &self.reserves[c.0].beneficiaries
    }

    /// Patients who benefit from no preferential category.
    pub fn general_community(&self) -> BTreeSet<PatientId> {
        self.patients()
            .filter(|&i| self.preferential().all(|c| !self.is_beneficiary(i, c)))
            .collect()
    }

    /// Whether every patient benefits from at most one preferential category.
    pub fn has_disjoint_beneficiaries(&self) -> bool {
        self.patients().all(|i| {
            self.preferential()
                .filter(|&c| self.is_beneficiary(i, c))
                .count()
                <= 1
        })
    }

    /// Per-category priority orders induced by the baseline order.
    pub fn lower(&self) -> Result<Instance> {
        let n = self.patients.len();
        let mut categories: Vec<Category> = self
            .preferential()
            .map(|c| {
                let (mut ranking, rest): (Vec<_>, Vec<_>) =
                    self.patients().partition(|&i| self.is_beneficiary(i, c));
                let eligible = match self.mode {
                    ReserveMode::Soft => n,
                    ReserveMode::Hard => ranking.len(),
                };
                ranking.extend(rest);
                Category {
                    name: self.reserves[c.0].name.clone(),
                    capacity: self.reserves[c.0].capacity,
                    priority: PriorityOrder::new(ranking, eligible).expect("partition of patients"),
                }
            })
            .collect();
        categories.push(Category {
            name: self.unreserved_name.clone(),
            capacity: self.unreserved_capacity,
            priority: PriorityOrder::identity(n),
        });
        Instance::from_parts(self.patients.clone(), categories)
            .map_err(|e| Error::InvalidBaseline(e.to_string()))
    }

    /// Patients holding a preferential category they benefit from.
    pub fn beneficiary_assigned(&self, m: &Matching) -> BTreeSet<PatientId> {
        m.iter()
            .filter_map(|(i, c)| {
                let c = c?;
                (c != self.unreserved() && self.is_beneficiary(i, c)).then_some(i)
            })
            .collect()
    }

    /// Largest number of patients that can simultaneously hold preferential
    /// categories they benefit from.
    pub fn max_beneficiary_count(&self) -> usize {
        max_cardinality_matching(&self.beneficiary_graph()).size
    }

    /// Patients on the left, preferential categories on the right, an edge
    /// for each beneficiary relation.
    pub(crate) fn beneficiary_graph(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(
            self.num_patients(),
            self.preferential().map(|c| self.capacity(c)).collect(),
        );
        for c in self.preferential() {
            for &i in self.beneficiaries(c) {
                g.add_edge(i.0, c.0).expect("ids in range");
            }
        }
        g
    }
}

pub fn lower_instance(b: &BaselineInstance) -> Result<Instance> {
    b.lower()
}

pub fn is_maximal_in_beneficiary_assignment(b: &BaselineInstance, m: &Matching) -> bool {
    b.beneficiary_assigned(m).len() == b.max_beneficiary_count()
}

/// Fills idle units after the committed patients are placed: preferential
/// categories in declaration order, then the unreserved category. Each unit
/// goes to the highest-priority eligible patient outside `committed` who is
/// still unmatched.
pub(crate) fn fill_remaining_units(
    b: &BaselineInstance,
    inst: &Instance,
    mut m: Matching,
    committed: &BTreeSet<PatientId>,
) -> Matching {
    for c in b.preferential().chain(std::iter::once(b.unreserved())) {
        let mut room = inst.capacity(c).saturating_sub(m.load(c));
        for &i in inst.priority(c).eligible() {
            if room == 0 {
                break;
            }
            if !committed.contains(&i) && !m.is_matched(i) {
                m.set(i, Some(c));
                room -= 1;
            }
        }
    }
    m
}
