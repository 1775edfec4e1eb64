//! The three basic requirements on a matching: eligibility compliance,
//! non-wastefulness and respect of priorities.

use crate::instance::{Instance, Slot};
use crate::matching::Matching;

/// Every matched patient is eligible for the category she holds.
pub fn complies_with_eligibility(inst: &Instance, m: &Matching) -> bool {
    m.iter()
        .all(|(i, c)| c.is_none_or(|c| inst.eligible(i, c)))
}

/// No unmatched patient is eligible for a category with an idle unit.
pub fn is_non_wasteful(inst: &Instance, m: &Matching) -> bool {
    let idle: Vec<_> = inst
        .categories()
        .filter(|&c| m.load(c) < inst.capacity(c))
        .collect();
    m.iter()
        .filter(|(_, c)| c.is_none())
        .all(|(i, _)| idle.iter().all(|&c| !inst.eligible(i, c)))
}

/// Whoever holds a category-`c` unit outranks, under `c`'s order, every
/// unmatched patient.
pub fn respects_priorities(inst: &Instance, m: &Matching) -> bool {
    let unmatched: Vec<_> = m
        .iter()
        .filter(|(_, c)| c.is_none())
        .map(|(i, _)| i)
        .collect();
    m.iter().all(|(i, c)| match c {
        None => true,
        Some(c) => {
            let order = inst.priority(c);
            unmatched
                .iter()
                .all(|&j| order.above(Slot::Patient(i), Slot::Patient(j)))
        }
    })
}

/// Name of the first failed axiom, if any.
pub fn first_violation(inst: &Instance, m: &Matching) -> Option<&'static str> {
    if !complies_with_eligibility(inst, m) {
        Some("eligibility")
    } else if !is_non_wasteful(inst, m) {
        Some("non-wastefulness")
    } else if !respects_priorities(inst, m) {
        Some("priority")
    } else {
        None
    }
}

pub fn satisfies_axioms(inst: &Instance, m: &Matching) -> bool {
    first_violation(inst, m).is_none()
}
