use std::collections::BTreeSet;

use super::{BaselineInstance, ReserveMode};
use crate::error::{Error, Result};
use crate::instance::{CategoryId, PatientId};
use crate::mechanisms::{adjacent_swap, sequential_reserve_matching, PrecedenceOrder};

/// Matched beneficiaries of one preferential category before and after it
/// is moved one step earlier in the precedence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeneficiaryComparison {
    pub category: CategoryId,
    pub before: PrecedenceOrder,
    pub after: PrecedenceOrder,
    pub matched_before: BTreeSet<PatientId>,
    pub matched_after: BTreeSet<PatientId>,
}

impl BeneficiaryComparison {
    /// Moving the category earlier did not add any matched beneficiary.
    pub fn inclusion_holds(&self) -> bool {
        self.matched_after.is_subset(&self.matched_before)
    }
}

/// Compares the matched beneficiaries of `c` under `before` and `after`,
/// where `after` must be `before` with `c` swapped with its predecessor.
pub fn compare_beneficiary_outcomes(
    b: &BaselineInstance,
    c: CategoryId,
    before: &PrecedenceOrder,
    after: &PrecedenceOrder,
) -> Result<BeneficiaryComparison> {
    if c.0 >= b.num_categories() {
        return Err(Error::UnknownCategory(c.to_string()));
    }
    if c == b.unreserved() {
        return Err(Error::PreconditionViolated(format!(
            "`{}` is the unreserved category",
            b.category_name(c)
        )));
    }
    let not_adjacent = || Error::NotAdjacent {
        first: b.category_name(c).to_owned(),
        second: "its predecessor".to_owned(),
    };
    let pos = before.position(c).ok_or_else(not_adjacent)?;
    if pos == 0 {
        return Err(not_adjacent());
    }
    let predecessor = before.as_slice()[pos - 1];
    if &adjacent_swap(before, c, predecessor)? != after {
        return Err(Error::NotAdjacent {
            first: b.category_name(predecessor).to_owned(),
            second: b.category_name(c).to_owned(),
        });
    }
    let inst = b.lower()?;
    let beneficiaries = b.beneficiaries(c);
    let matched = |order: &PrecedenceOrder| {
        sequential_reserve_matching(&inst, order).matched_set(beneficiaries.iter().copied())
    };
    Ok(BeneficiaryComparison {
        category: c,
        matched_before: matched(before),
        matched_after: matched(after),
        before: before.clone(),
        after: after.clone(),
    })
}

/// The comparison restricted to soft reserves, at most five categories and
/// disjoint beneficiary groups.
pub fn check_prop3(
    b: &BaselineInstance,
    c: CategoryId,
    before: &PrecedenceOrder,
    after: &PrecedenceOrder,
) -> Result<BeneficiaryComparison> {
    if b.num_categories() > 5 {
        return Err(Error::PreconditionViolated(format!(
            "{} categories, at most 5 allowed",
            b.num_categories()
        )));
    }
    if b.mode() != ReserveMode::Soft {
        return Err(Error::PreconditionViolated("reserves must be soft".into()));
    }
    if !b.has_disjoint_beneficiaries() {
        return Err(Error::PreconditionViolated(
            "a patient benefits from more than one preferential category".into(),
        ));
    }
    compare_beneficiary_outcomes(b, c, before, after)
}
