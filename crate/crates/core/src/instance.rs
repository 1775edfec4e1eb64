//! Patients, categories and per-category priority orders.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a patient within an [`Instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatientId(pub usize);

/// Index of a category within an [`Instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CategoryId(pub usize);

impl PatientId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl CategoryId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PatientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A position in a category's priority order: either a patient or the
/// eligibility sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Patient(PatientId),
    Empty,
}

impl Slot {
    pub fn patient(self) -> Option<PatientId> {
        match self {
            Slot::Patient(i) => Some(i),
            Slot::Empty => None,
        }
    }
}

/// Strict ranking of all patients together with the sentinel.
///
/// Stored as a permutation of the patients plus the number of patients ranked
/// above the sentinel. Patients strictly above the sentinel are eligible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorityOrder {
    ranking: Vec<PatientId>,
    eligible_count: usize,
    position: Vec<usize>,
}

impl PriorityOrder {
    /// Builds an order from a permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<PatientId>, eligible_count: usize) -> Option<Self> {
        let n = ranking.len();
        if eligible_count > n {
            return None;
        }
        let mut position = vec![usize::MAX; n];
        for (pos, &i) in ranking.iter().enumerate() {
            if i.0 >= n || position[i.0] != usize::MAX {
                return None;
            }
            position[i.0] = pos;
        }
        Some(Self {
            ranking,
            eligible_count,
            position,
        })
    }

    /// All patients `0..n` in index order, everyone eligible.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(PatientId).collect(), n).expect("identity permutation")
    }

    pub fn ranking(&self) -> &[PatientId] {
        &self.ranking
    }

    pub fn eligible_count(&self) -> usize {
        self.eligible_count
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Position of a slot in the full order; 0 is the top, the sentinel sits
    /// at `eligible_count`.
    pub fn rank(&self, slot: Slot) -> usize {
        match slot {
            Slot::Empty => self.eligible_count,
            Slot::Patient(i) => {
                let pos = self.position[i.0];
                if pos < self.eligible_count {
                    pos
                } else {
                    pos + 1
                }
            }
        }
    }

    /// Slot at a given position of the full order (inverse of [`rank`](Self::rank)).
    pub fn slot_at(&self, rank: usize) -> Slot {
        use std::cmp::Ordering::*;
        match rank.cmp(&self.eligible_count) {
            Less => Slot::Patient(self.ranking[rank]),
            Equal => Slot::Empty,
            Greater => Slot::Patient(self.ranking[rank - 1]),
        }
    }

    pub fn is_eligible(&self, i: PatientId) -> bool {
        self.position[i.0] < self.eligible_count
    }

    /// `a` has weakly higher priority than `b`.
    pub fn weakly_above(&self, a: Slot, b: Slot) -> bool {
        self.rank(a) <= self.rank(b)
    }

    /// `a` has strictly higher priority than `b`.
    pub fn above(&self, a: Slot, b: Slot) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// Eligible patients, highest priority first.
    pub fn eligible(&self) -> &[PatientId] {
        &self.ranking[..self.eligible_count]
    }

    /// The full order including the sentinel, highest priority first.
    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        (0..=self.ranking.len()).map(move |r| self.slot_at(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub name: String,
    pub capacity: usize,
    pub priority: PriorityOrder,
}

/// A validated reserve system: patients, categories, capacities and
/// priority orders. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    patients: Vec<String>,
    categories: Vec<Category>,
    total_units: usize,
}

/// Unvalidated instance description using patient and category names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub patients: Vec<String>,
    pub categories: Vec<RawCategory>,
    /// Declared number of units; when absent it is taken to be the capacity sum.
    pub total_units: Option<usize>,
}

/// One category of a [`RawInstance`]. The first `eligible_count` entries of
/// `priority` are ranked above the sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub capacity: usize,
    pub priority: Vec<String>,
    pub eligible_count: usize,
}

/// Checks every instance invariant and resolves names to indices.
pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    let mut index = HashMap::with_capacity(raw.patients.len());
    for (k, name) in raw.patients.iter().enumerate() {
        if index.insert(name.as_str(), PatientId(k)).is_some() {
            return Err(Error::DuplicatePatient(name.clone()));
        }
    }
    let n = raw.patients.len();

    let mut seen_categories = HashMap::new();
    let mut categories = Vec::with_capacity(raw.categories.len());
    for cat in &raw.categories {
        if seen_categories.insert(cat.name.as_str(), ()).is_some() {
            return Err(Error::DuplicateCategory(cat.name.clone()));
        }
        let malformed = |reason: String| Error::MalformedPriority {
            category: cat.name.clone(),
            reason,
        };
        if cat.priority.len() != n {
            return Err(malformed(format!(
                "lists {} patients, expected {n}",
                cat.priority.len()
            )));
        }
        if cat.eligible_count > n {
            return Err(malformed(format!(
                "eligible_count {} exceeds the {n} patients",
                cat.eligible_count
            )));
        }
        let mut ranking = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for name in &cat.priority {
            let &i = index
                .get(name.as_str())
                .ok_or_else(|| malformed(format!("unknown patient `{name}`")))?;
            if std::mem::replace(&mut seen[i.0], true) {
                return Err(malformed(format!("patient `{name}` listed twice")));
            }
            ranking.push(i);
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(malformed(format!("missing patient `{}`", raw.patients[k])));
        }
        let priority = PriorityOrder::new(ranking, cat.eligible_count)
            .ok_or_else(|| malformed("not a permutation".into()))?;
        categories.push(Category {
            name: cat.name.clone(),
            capacity: cat.capacity,
            priority,
        });
    }

    let found: usize = categories.iter().map(|c| c.capacity).sum();
    let total_units = raw.total_units.unwrap_or(found);
    if found != total_units {
        return Err(Error::CapacityMismatch {
            expected: total_units,
            found,
        });
    }
    Ok(Instance {
        patients: raw.patients,
        categories,
        total_units,
    })
}

impl Instance {
    /// Builds an instance from already-indexed parts. Every priority order must
    /// range over exactly `patients.len()` patients.
    pub fn from_parts(patients: Vec<String>, categories: Vec<Category>) -> Result<Self> {
        let raw = RawInstance {
            categories: categories
                .iter()
                .map(|c| RawCategory {
                    name: c.name.clone(),
                    capacity: c.capacity,
                    priority: c
                        .priority
                        .ranking()
                        .iter()
                        .map(|i| patients.get(i.0).cloned().unwrap_or_default())
                        .collect(),
                    eligible_count: c.priority.eligible_count(),
                })
                .collect(),
            patients,
            total_units: None,
        };
        validate_instance(raw)
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            patients: self.patients.clone(),
            categories: self
                .categories
                .iter()
                .map(|c| RawCategory {
                    name: c.name.clone(),
                    capacity: c.capacity,
                    priority: c
                        .priority
                        .ranking()
                        .iter()
                        .map(|&i| self.patient_name(i).to_owned())
                        .collect(),
                    eligible_count: c.priority.eligible_count(),
                })
                .collect(),
            total_units: Some(self.total_units),
        }
    }

    pub fn num_patients(&self) -> usize {
        self.patients.len()
    }

    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn total_units(&self) -> usize {
        self.total_units
    }

    pub fn patients(&self) -> impl ExactSizeIterator<Item = PatientId> + Clone {
        (0..self.patients.len()).map(PatientId)
    }

    pub fn categories(&self) -> impl ExactSizeIterator<Item = CategoryId> + Clone {
        (0..self.categories.len()).map(CategoryId)
    }

    pub fn category(&self, c: CategoryId) -> &Category {
        &self.categories[c.0]
    }

    pub fn patient_name(&self, i: PatientId) -> &str {
        &self.patients[i.0]
    }

    pub fn category_name(&self, c: CategoryId) -> &str {
        &self.categories[c.0].name
    }

    pub fn patient_names(&self) -> &[String] {
        &self.patients
    }

    pub fn patient_id(&self, name: &str) -> Result<PatientId> {
        self.patients
            .iter()
            .position(|p| p == name)
            .map(PatientId)
            .ok_or_else(|| Error::UnknownPatient(name.to_owned()))
    }

    pub fn category_id(&self, name: &str) -> Result<CategoryId> {
        self.categories
            .iter()
            .position(|c| c.name == name)
            .map(CategoryId)
            .ok_or_else(|| Error::UnknownCategory(name.to_owned()))
    }

    pub fn capacity(&self, c: CategoryId) -> usize {
        self.categories[c.0].capacity
    }

    pub fn priority(&self, c: CategoryId) -> &PriorityOrder {
        &self.categories[c.0].priority
    }

    /// Eligibility lookup for ids known to belong to this instance.
    pub fn eligible(&self, i: PatientId, c: CategoryId) -> bool {
        self.categories[c.0].priority.is_eligible(i)
    }

    /// Eligibility lookup that rejects foreign ids.
    pub fn is_eligible(&self, i: PatientId, c: CategoryId) -> Result<bool> {
        if i.0 >= self.patients.len() {
            return Err(Error::UnknownPatient(i.to_string()));
        }
        if c.0 >= self.categories.len() {
            return Err(Error::UnknownCategory(c.to_string()));
        }
        Ok(self.eligible(i, c))
    }

    /// Categories patient `i` is eligible for, in declaration order.
    pub fn eligible_categories(&self, i: PatientId) -> Vec<CategoryId> {
        self.categories().filter(|&c| self.eligible(i, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(total: Option<usize>) -> RawInstance {
        RawInstance {
            patients: vec!["i1".into(), "i2".into()],
            categories: vec![
                RawCategory {
                    name: "u".into(),
                    capacity: 1,
                    priority: vec!["i1".into(), "i2".into()],
                    eligible_count: 2,
                },
                RawCategory {
                    name: "c".into(),
                    capacity: 1,
                    priority: vec!["i1".into(), "i2".into()],
                    eligible_count: 1,
                },
            ],
            total_units: total,
        }
    }

    #[test]
    fn consistent_instance_validates() {
        let inst = validate_instance(raw(Some(2))).unwrap();
        assert_eq!(inst.num_patients(), 2);
        assert_eq!(inst.total_units(), 2);
    }

    #[test]
    fn capacity_mismatch() {
        assert_eq!(
            validate_instance(raw(Some(3))),
            Err(Error::CapacityMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn missing_patient_in_priority() {
        let mut r = raw(None);
        r.categories[1].priority = vec!["i1".into()];
        r.categories[1].eligible_count = 1;
        assert!(matches!(
            validate_instance(r),
            Err(Error::MalformedPriority { .. })
        ));
    }

    #[test]
    fn repeated_patient_in_priority() {
        let mut r = raw(None);
        r.categories[0].priority = vec!["i1".into(), "i1".into()];
        assert!(matches!(
            validate_instance(r),
            Err(Error::MalformedPriority { .. })
        ));
    }

    #[test]
    fn sentinel_out_of_range() {
        let mut r = raw(None);
        r.categories[0].eligible_count = 3;
        assert!(matches!(
            validate_instance(r),
            Err(Error::MalformedPriority { .. })
        ));
    }

    #[test]
    fn duplicate_patient() {
        let mut r = raw(None);
        r.patients.push("i1".into());
        assert_eq!(
            validate_instance(r),
            Err(Error::DuplicatePatient("i1".into()))
        );
    }

    #[test]
    fn eligibility_follows_sentinel() {
        let inst = validate_instance(raw(None)).unwrap();
        let (i1, i2) = (PatientId(0), PatientId(1));
        let (u, c) = (CategoryId(0), CategoryId(1));
        assert_eq!(inst.is_eligible(i2, c), Ok(false));
        assert_eq!(inst.is_eligible(i2, u), Ok(true));
        assert_eq!(inst.is_eligible(i1, c), Ok(true));
        assert!(matches!(
            inst.is_eligible(PatientId(7), u),
            Err(Error::UnknownPatient(_))
        ));
        assert!(matches!(
            inst.is_eligible(i1, CategoryId(9)),
            Err(Error::UnknownCategory(_))
        ));
    }

    #[test]
    fn rank_and_slot_are_inverse() {
        let order = PriorityOrder::new(vec![PatientId(2), PatientId(0), PatientId(1)], 1).unwrap();
        let slots: Vec<Slot> = order.slots().collect();
        assert_eq!(
            slots,
            vec![
                Slot::Patient(PatientId(2)),
                Slot::Empty,
                Slot::Patient(PatientId(0)),
                Slot::Patient(PatientId(1)),
            ]
        );
        for (r, s) in slots.iter().enumerate() {
            assert_eq!(order.rank(*s), r);
        }
        assert!(order.above(Slot::Patient(PatientId(2)), Slot::Empty));
        assert!(order.above(Slot::Empty, Slot::Patient(PatientId(0))));
    }
}
