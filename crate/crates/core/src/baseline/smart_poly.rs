use std::collections::BTreeSet;

use super::{fill_remaining_units, BaselineInstance, SmartConfig, SmartDecision};
use crate::combinatorics::{
    max_cardinality_matching, solve_assignment, BipartiteGraph, LexWeight, WeightedAssignment,
};
use crate::error::Result;
use crate::instance::{CategoryId, PatientId};
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySmartOutcome {
    pub matching: Matching,
    /// Maximum number of beneficiaries that can hold their own categories.
    pub max_beneficiaries: usize,
    pub unreserved_committed: BTreeSet<PatientId>,
    pub preferential_committed: BTreeSet<PatientId>,
    pub decisions: Vec<SmartDecision>,
}

/// Smart reserve matching in polynomial time.
///
/// Each commitment test is an assignment problem under temporary
/// eligibility: unreserved-committed patients may only take the unreserved
/// category, everyone else only preferential categories they benefit from.
/// Patients that must stay matched weigh one major unit, all other eligible
/// pairs one minor unit, and ineligible pairs are forbidden.
pub fn smart_reserve_matching_poly(
    b: &BaselineInstance,
    cfg: SmartConfig,
) -> Result<PolySmartOutcome> {
    let inst = b.lower()?;
    let u = b.unreserved();
    let max_beneficiaries = b.max_beneficiary_count();

    let mut unreserved_committed: BTreeSet<PatientId> = BTreeSet::new();
    let mut preferential_committed: BTreeSet<PatientId> = BTreeSet::new();
    let mut decisions = Vec::with_capacity(b.num_patients());

    for i in b.patients() {
        if unreserved_committed.len() < cfg.n() {
            let mut on_u = unreserved_committed.clone();
            on_u.insert(i);
            let required: BTreeSet<_> = unreserved_committed
                .union(&preferential_committed)
                .copied()
                .collect();
            let sigma = solve_temporary(b, &on_u, &required);
            let matched = sigma.iter().filter(|x| x.is_some()).count();
            if matched == max_beneficiaries + unreserved_committed.len() + 1 {
                debug_assert_eq!(sigma[i.0], Some(u));
                unreserved_committed.insert(i);
                decisions.push(SmartDecision::Unreserved);
                continue;
            }
        }

        // `i` is required here as well, so the test cannot be lost to a tie
        // with a later beneficiary of the same category.
        let mut required: BTreeSet<_> = unreserved_committed
            .union(&preferential_committed)
            .copied()
            .collect();
        required.insert(i);
        let sigma = solve_temporary(b, &unreserved_committed, &required);
        let matched = sigma.iter().filter(|x| x.is_some()).count();
        let keeps_committed = preferential_committed
            .iter()
            .chain(std::iter::once(&i))
            .all(|j| sigma[j.0].is_some());
        if matched == max_beneficiaries + unreserved_committed.len() && keeps_committed {
            preferential_committed.insert(i);
            decisions.push(SmartDecision::Preferential);
        } else {
            decisions.push(SmartDecision::Deferred);
        }
    }

    // Place the committed patients: unreserved ones on u, the others on
    // preferential categories they benefit from.
    let mut g = BipartiteGraph::new(
        b.num_patients(),
        inst.categories().map(|c| inst.capacity(c)).collect(),
    );
    for &i in &unreserved_committed {
        g.add_edge(i.0, u.0)?;
    }
    for &i in &preferential_committed {
        for c in b.preferential().filter(|&c| b.is_beneficiary(i, c)) {
            g.add_edge(i.0, c.0)?;
        }
    }
    let placed = max_cardinality_matching(&g);
    let mut partial = Matching::unmatched(b.num_patients());
    for (k, r) in placed.assignment.iter().enumerate() {
        partial.set(PatientId(k), r.map(CategoryId));
    }
    let committed: BTreeSet<PatientId> = unreserved_committed
        .union(&preferential_committed)
        .copied()
        .collect();
    let matching = fill_remaining_units(b, &inst, partial, &committed);

    Ok(PolySmartOutcome {
        matching,
        max_beneficiaries,
        unreserved_committed,
        preferential_committed,
        decisions,
    })
}

/// Maximum-weight assignment where `on_unreserved` may only take the
/// unreserved category and everybody else only preferential categories they
/// benefit from.
fn solve_temporary(
    b: &BaselineInstance,
    on_unreserved: &BTreeSet<PatientId>,
    required: &BTreeSet<PatientId>,
) -> Vec<Option<CategoryId>> {
    let u = b.unreserved();
    let num_categories = b.num_categories();
    let mut g = BipartiteGraph::new(
        b.num_patients(),
        (0..num_categories)
            .map(|c| b.capacity(CategoryId(c)))
            .collect(),
    );
    let mut w = WeightedAssignment::new(b.num_patients(), num_categories);
    for i in b.patients() {
        let weight = if required.contains(&i) {
            LexWeight::MAJOR
        } else {
            LexWeight::MINOR
        };
        let allowed: Vec<CategoryId> = if on_unreserved.contains(&i) {
            vec![u]
        } else {
            b.preferential()
                .filter(|&c| b.is_beneficiary(i, c))
                .collect()
        };
        for c in allowed {
            g.add_edge(i.0, c.0).expect("ids in range");
            w.set(i.0, c.0, weight);
        }
    }
    solve_assignment(&g, &w)
        .assignment
        .into_iter()
        .map(|r| r.map(CategoryId))
        .collect()
}
