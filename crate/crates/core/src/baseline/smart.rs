use std::collections::BTreeSet;

use super::{fill_remaining_units, BaselineInstance};
use crate::error::{Error, Result};
use crate::instance::{CategoryId, PatientId};
use crate::matching::Matching;
use crate::oracle::{enumerate_matchings, SizeGuard};

/// Number of unreserved units committed before preferential processing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmartConfig {
    n: usize,
}

impl SmartConfig {
    pub fn new(b: &BaselineInstance, n: usize) -> Result<Self> {
        let capacity = b.capacity(b.unreserved());
        if n > capacity {
            return Err(Error::InvalidSmartParameter { n, capacity });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// What happened to one patient in the commitment pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmartDecision {
    /// Committed to the unreserved category.
    Unreserved,
    /// Committed to a preferential category she benefits from.
    Preferential,
    /// Left for the final fill.
    Deferred,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmartOutcome {
    /// Every smart reserve matching for this `n`.
    pub matchings: BTreeSet<Matching>,
    pub unreserved_committed: BTreeSet<PatientId>,
    pub preferential_committed: BTreeSet<PatientId>,
    /// One entry per patient, in baseline order.
    pub decisions: Vec<SmartDecision>,
}

/// Smart reserve matching by direct search over all matchings.
///
/// Starts from every matching that maximizes the number of beneficiaries
/// holding their own preferential categories, then walks the patients in
/// baseline order. While fewer than `n` patients are committed to the
/// unreserved category, a patient is committed there if some surviving
/// matching puts her there; otherwise she is committed to one of her own
/// preferential categories if some surviving matching allows it. Each
/// commitment discards the matchings that disagree. The committed part of
/// every survivor is then completed by filling idle units.
pub fn smart_reserve_matching_exhaustive(
    b: &BaselineInstance,
    cfg: SmartConfig,
    guard: &SizeGuard,
) -> Result<SmartOutcome> {
    let inst = b.lower()?;
    let u = b.unreserved();

    let scored: Vec<(usize, Matching)> = enumerate_matchings(&inst, guard)?
        .map(|m| (b.beneficiary_assigned(&m).len(), m))
        .collect();
    let best = scored.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut alive: Vec<Matching> = scored
        .into_iter()
        .filter(|(k, _)| *k == best)
        .map(|(_, m)| m)
        .collect();

    let own = |i: PatientId, c: Option<CategoryId>| matches!(c, Some(c) if c != u && b.is_beneficiary(i, c));

    let mut unreserved_committed = BTreeSet::new();
    let mut preferential_committed = BTreeSet::new();
    let mut decisions = Vec::with_capacity(b.num_patients());
    for i in b.patients() {
        if unreserved_committed.len() < cfg.n && alive.iter().any(|m| m.get(i) == Some(u)) {
            alive.retain(|m| m.get(i) == Some(u));
            unreserved_committed.insert(i);
            decisions.push(SmartDecision::Unreserved);
        } else if alive.iter().any(|m| own(i, m.get(i))) {
            alive.retain(|m| own(i, m.get(i)));
            preferential_committed.insert(i);
            decisions.push(SmartDecision::Preferential);
        } else {
            decisions.push(SmartDecision::Deferred);
        }
    }

    let committed: BTreeSet<PatientId> = unreserved_committed
        .union(&preferential_committed)
        .copied()
        .collect();
    let matchings = alive
        .into_iter()
        .map(|m| {
            let mut partial = Matching::unmatched(inst.num_patients());
            for &i in &committed {
                partial.set(i, m.get(i));
            }
            fill_remaining_units(b, &inst, partial, &committed)
        })
        .collect();
    Ok(SmartOutcome {
        matchings,
        unreserved_committed,
        preferential_committed,
        decisions,
    })
}
