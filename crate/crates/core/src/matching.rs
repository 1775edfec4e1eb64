use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::{CategoryId, Instance, PatientId};

/// Assignment of each patient to at most one category.
///
/// Ordered so that sets of matchings iterate deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    assignment: Vec<Option<CategoryId>>,
}

impl Matching {
    /// Validates the domain and the capacity of every category.
    pub fn new(inst: &Instance, assignment: Vec<Option<CategoryId>>) -> Result<Self> {
        if assignment.len() != inst.num_patients() {
            return Err(Error::InvalidMatching(format!(
                "assigns {} patients, instance has {}",
                assignment.len(),
                inst.num_patients()
            )));
        }
        let mut load = vec![0usize; inst.num_categories()];
        for c in assignment.iter().flatten() {
            if c.0 >= inst.num_categories() {
                return Err(Error::UnknownCategory(c.to_string()));
            }
            load[c.0] += 1;
        }
        for c in inst.categories() {
            if load[c.0] > inst.capacity(c) {
                return Err(Error::InvalidMatching(format!(
                    "category `{}` holds {} patients but has {} units",
                    inst.category_name(c),
                    load[c.0],
                    inst.capacity(c)
                )));
            }
        }
        Ok(Self { assignment })
    }

    pub fn unmatched(num_patients: usize) -> Self {
        Self {
            assignment: vec![None; num_patients],
        }
    }

    pub fn get(&self, i: PatientId) -> Option<CategoryId> {
        self.assignment[i.0]
    }

    pub(crate) fn set(&mut self, i: PatientId, c: Option<CategoryId>) {
        self.assignment[i.0] = c;
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn as_slice(&self) -> &[Option<CategoryId>] {
        &self.assignment
    }

    pub fn iter(&self) -> impl Iterator<Item = (PatientId, Option<CategoryId>)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .map(|(k, c)| (PatientId(k), *c))
    }

    pub fn is_matched(&self, i: PatientId) -> bool {
        self.assignment[i.0].is_some()
    }

    /// Patients assigned to `c`, in index order.
    pub fn assigned_to(&self, c: CategoryId) -> Vec<PatientId> {
        self.iter()
            .filter(|&(_, x)| x == Some(c))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn load(&self, c: CategoryId) -> usize {
        self.assignment.iter().filter(|x| **x == Some(c)).count()
    }

    /// Members of `subset` that are matched to some category.
    pub fn matched_set<I>(&self, subset: I) -> BTreeSet<PatientId>
    where
        I: IntoIterator<Item = PatientId>,
    {
        subset.into_iter().filter(|&i| self.is_matched(i)).collect()
    }

    /// All matched patients.
    pub fn matched(&self) -> BTreeSet<PatientId> {
        self.matched_set((0..self.assignment.len()).map(PatientId))
    }

    pub fn matched_count(&self) -> usize {
        self.assignment.iter().filter(|x| x.is_some()).count()
    }

    /// Matches a strict superset of the patients `other` matches.
    pub fn pareto_dominates(&self, other: &Matching) -> bool {
        let mine = self.matched();
        let theirs = other.matched();
        mine.len() > theirs.len() && theirs.is_subset(&mine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Category, PriorityOrder};

    fn one_category(n: usize, capacity: usize) -> Instance {
        Instance::from_parts(
            (0..n).map(|k| format!("p{k}")).collect(),
            vec![Category {
                name: "c".into(),
                capacity,
                priority: PriorityOrder::identity(n),
            }],
        )
        .unwrap()
    }

    #[test]
    fn capacity_is_enforced() {
        let inst = one_category(2, 1);
        let c = Some(CategoryId(0));
        assert!(Matching::new(&inst, vec![c, None]).is_ok());
        assert!(matches!(
            Matching::new(&inst, vec![c, c]),
            Err(Error::InvalidMatching(_))
        ));
        assert!(Matching::new(&inst, vec![c]).is_err());
        assert!(Matching::new(&inst, vec![Some(CategoryId(3)), None]).is_err());
    }

    #[test]
    fn matched_set_is_restricted_to_subset() {
        let inst = one_category(3, 2);
        let c = Some(CategoryId(0));
        let m = Matching::new(&inst, vec![c, None, c]).unwrap();
        let subset = [PatientId(1), PatientId(2)];
        let got = m.matched_set(subset);
        assert_eq!(got, BTreeSet::from([PatientId(2)]));
        assert_eq!(m.matched(), BTreeSet::from([PatientId(0), PatientId(2)]));
        assert_eq!(
            m.assigned_to(CategoryId(0)),
            vec![PatientId(0), PatientId(2)]
        );
    }
}
