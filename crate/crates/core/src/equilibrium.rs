//! Cutoff vectors, budget sets and cutoff equilibria.
//!
//! A cutoff vector assigns every category either a patient or the sentinel.
//! A patient can afford a category when she ranks weakly above its cutoff;
//! an equilibrium pairs a cutoff vector with a matching in which everyone
//! with something affordable holds an affordable category and every
//! under-filled category has the sentinel as its cutoff.

use crate::axioms;
use crate::error::{Error, Result};
use crate::instance::{CategoryId, Instance, PatientId, Slot};
use crate::matching::Matching;
use crate::product::Odometer;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutoffVector {
    cutoffs: Vec<Slot>,
}

impl CutoffVector {
    /// Every cutoff must be the sentinel or a patient eligible for its category.
    pub fn new(inst: &Instance, cutoffs: Vec<Slot>) -> Result<Self> {
        if cutoffs.len() != inst.num_categories() {
            return Err(Error::InvalidCutoff(format!(
                "{} cutoffs for {} categories",
                cutoffs.len(),
                inst.num_categories()
            )));
        }
        for (c, slot) in inst.categories().zip(&cutoffs) {
            if let Slot::Patient(i) = *slot {
                if i.0 >= inst.num_patients() {
                    return Err(Error::UnknownPatient(i.to_string()));
                }
                if !inst.eligible(i, c) {
                    return Err(Error::InvalidCutoff(format!(
                        "`{}` is not eligible for `{}`",
                        inst.patient_name(i),
                        inst.category_name(c)
                    )));
                }
            }
        }
        Ok(Self { cutoffs })
    }

    pub(crate) fn from_vec(cutoffs: Vec<Slot>) -> Self {
        Self { cutoffs }
    }

    pub fn empty(num_categories: usize) -> Self {
        Self {
            cutoffs: vec![Slot::Empty; num_categories],
        }
    }

    pub fn get(&self, c: CategoryId) -> Slot {
        self.cutoffs[c.0]
    }

    pub fn as_slice(&self) -> &[Slot] {
        &self.cutoffs
    }
}

/// Categories `i` can afford at `f`, in declaration order.
pub fn budget_set(inst: &Instance, f: &CutoffVector, i: PatientId) -> Vec<CategoryId> {
    inst.categories()
        .filter(|&c| inst.priority(c).weakly_above(Slot::Patient(i), f.get(c)))
        .collect()
}

pub fn is_cutoff_equilibrium(inst: &Instance, f: &CutoffVector, m: &Matching) -> bool {
    for i in inst.patients() {
        let budget = budget_set(inst, f, i);
        match m.get(i) {
            Some(c) if !budget.contains(&c) => return false,
            None if !budget.is_empty() => return false,
            _ => {}
        }
    }
    inst.categories()
        .all(|c| m.load(c) >= inst.capacity(c) || f.get(c) == Slot::Empty)
}

/// Per category: the lowest-priority holder when the category is full, the
/// sentinel otherwise. A zero-capacity category gets the sentinel.
pub fn max_cutoff_vector(inst: &Instance, m: &Matching) -> CutoffVector {
    let cutoffs = inst
        .categories()
        .map(|c| {
            let order = inst.priority(c);
            let holders = m.assigned_to(c);
            if holders.is_empty() || holders.len() < inst.capacity(c) {
                return Slot::Empty;
            }
            holders
                .into_iter()
                .map(Slot::Patient)
                .max_by_key(|&s| order.rank(s))
                .unwrap_or(Slot::Empty)
        })
        .collect();
    CutoffVector::from_vec(cutoffs)
}

/// Per category: let `x` be the best-ranked unmatched patient, or the
/// sentinel if that is higher. If `x` is a patient the cutoff is the
/// lowest-priority matched patient ranked above `x`; otherwise the sentinel.
pub fn min_cutoff_vector(inst: &Instance, m: &Matching) -> CutoffVector {
    let unmatched: Vec<PatientId> = inst.patients().filter(|&i| !m.is_matched(i)).collect();
    let cutoffs = inst
        .categories()
        .map(|c| {
            let order = inst.priority(c);
            let best_unmatched = unmatched
                .iter()
                .map(|&i| Slot::Patient(i))
                .chain(std::iter::once(Slot::Empty))
                .min_by_key(|&s| order.rank(s))
                .unwrap_or(Slot::Empty);
            if best_unmatched == Slot::Empty {
                return Slot::Empty;
            }
            // Outside the axioms this set can be empty; fall back to the sentinel.
            inst.patients()
                .filter(|&i| m.is_matched(i))
                .map(Slot::Patient)
                .filter(|&s| order.above(s, best_unmatched))
                .max_by_key(|&s| order.rank(s))
                .unwrap_or(Slot::Empty)
        })
        .collect();
    CutoffVector::from_vec(cutoffs)
}

/// All equilibrium cutoff vectors supporting one matching, stored as
/// per-category intervals of the priority order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumCutoffs {
    intervals: Vec<Vec<Slot>>,
}

impl EquilibriumCutoffs {
    /// Slots allowed for category `c`, highest priority first.
    pub fn interval(&self, c: CategoryId) -> &[Slot] {
        &self.intervals[c.0]
    }

    /// Number of vectors in the product.
    pub fn len(&self) -> u128 {
        self.intervals.iter().map(|v| v.len() as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, f: &CutoffVector) -> bool {
        self.intervals
            .iter()
            .zip(f.as_slice())
            .all(|(interval, slot)| interval.contains(slot))
    }

    /// Lazily walks the product; the last category varies fastest.
    pub fn iter(&self) -> impl Iterator<Item = CutoffVector> + '_ {
        Odometer::new(self.intervals.iter().map(Vec::len).collect()).map(move |digits| {
            CutoffVector::from_vec(
                digits
                    .iter()
                    .zip(&self.intervals)
                    .map(|(&d, interval)| interval[d])
                    .collect(),
            )
        })
    }
}

/// The set of cutoff vectors lying between the minimum and maximum
/// equilibrium cutoffs in every category. Only defined for matchings that
/// satisfy the three axioms.
pub fn enumerate_equilibrium_cutoffs(inst: &Instance, m: &Matching) -> Result<EquilibriumCutoffs> {
    if let Some(axiom) = axioms::first_violation(inst, m) {
        return Err(Error::AxiomViolation(axiom));
    }
    let hi = max_cutoff_vector(inst, m);
    let lo = min_cutoff_vector(inst, m);
    let intervals = inst
        .categories()
        .map(|c| {
            let order = inst.priority(c);
            (order.rank(hi.get(c))..=order.rank(lo.get(c)))
                .map(|r| order.slot_at(r))
                .collect()
        })
        .collect();
    Ok(EquilibriumCutoffs { intervals })
}
