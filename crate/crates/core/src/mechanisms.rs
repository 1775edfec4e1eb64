//! Individual-proposing deferred acceptance, sequential reserve matching
//! under a precedence order, and the bridge between the two.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{CategoryId, Instance, PatientId, Slot};
use crate::matching::Matching;
use crate::oracle::SizeGuard;
use crate::product::{permutations, Odometer};

/// Linear order in which categories are processed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrecedenceOrder {
    sequence: Vec<CategoryId>,
}

impl PrecedenceOrder {
    pub fn new(inst: &Instance, sequence: Vec<CategoryId>) -> Result<Self> {
        let m = inst.num_categories();
        if sequence.len() != m {
            return Err(Error::InvalidPrecedence(format!(
                "{} entries for {m} categories",
                sequence.len()
            )));
        }
        let mut seen = vec![false; m];
        for c in &sequence {
            if c.0 >= m {
                return Err(Error::UnknownCategory(c.to_string()));
            }
            if std::mem::replace(&mut seen[c.0], true) {
                return Err(Error::InvalidPrecedence(format!(
                    "`{}` appears twice",
                    inst.category_name(*c)
                )));
            }
        }
        Ok(Self { sequence })
    }

    pub fn from_names<S: AsRef<str>>(inst: &Instance, names: &[S]) -> Result<Self> {
        let sequence = names
            .iter()
            .map(|n| inst.category_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inst, sequence)
    }

    /// Declaration order.
    pub fn declaration(inst: &Instance) -> Self {
        Self {
            sequence: inst.categories().collect(),
        }
    }

    /// Every precedence order over the instance's categories.
    pub fn all(inst: &Instance) -> Vec<Self> {
        let cats: Vec<CategoryId> = inst.categories().collect();
        permutations(&cats)
            .into_iter()
            .map(|sequence| Self { sequence })
            .collect()
    }

    pub fn as_slice(&self) -> &[CategoryId] {
        &self.sequence
    }

    pub fn position(&self, c: CategoryId) -> Option<usize> {
        self.sequence.iter().position(|&x| x == c)
    }
}

/// Swaps `c` with its immediate predecessor `predecessor`, moving `c` one
/// step earlier.
pub fn adjacent_swap(
    order: &PrecedenceOrder,
    c: CategoryId,
    predecessor: CategoryId,
) -> Result<PrecedenceOrder> {
    let not_adjacent = || Error::NotAdjacent {
        first: predecessor.to_string(),
        second: c.to_string(),
    };
    let pos = order.position(c).ok_or_else(not_adjacent)?;
    if pos == 0 || order.sequence[pos - 1] != predecessor {
        return Err(not_adjacent());
    }
    let mut sequence = order.sequence.clone();
    sequence.swap(pos - 1, pos);
    Ok(PrecedenceOrder { sequence })
}

/// Each patient's ranking of the categories she finds acceptable, that is,
/// of exactly the categories she is eligible for. Everything else sits below
/// staying unmatched and never affects deferred acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    lists: Vec<Vec<CategoryId>>,
}

impl PreferenceProfile {
    pub fn new(inst: &Instance, lists: Vec<Vec<CategoryId>>) -> Result<Self> {
        let profile = Self { lists };
        profile.check(inst)?;
        Ok(profile)
    }

    fn check(&self, inst: &Instance) -> Result<()> {
        if self.lists.len() != inst.num_patients() {
            return Err(Error::InvalidProfile(format!(
                "{} preference lists for {} patients",
                self.lists.len(),
                inst.num_patients()
            )));
        }
        for (i, list) in inst.patients().zip(&self.lists) {
            let mut seen = vec![false; inst.num_categories()];
            for &c in list {
                if c.0 >= inst.num_categories() {
                    return Err(Error::UnknownCategory(c.to_string()));
                }
                if std::mem::replace(&mut seen[c.0], true) {
                    return Err(Error::InvalidProfile(format!(
                        "`{}` ranks `{}` twice",
                        inst.patient_name(i),
                        inst.category_name(c)
                    )));
                }
            }
            for c in inst.categories() {
                if seen[c.0] != inst.eligible(i, c) {
                    return Err(Error::InvalidProfile(format!(
                        "`{}` must rank `{}` above staying unmatched iff eligible for it",
                        inst.patient_name(i),
                        inst.category_name(c)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn list(&self, i: PatientId) -> &[CategoryId] {
        &self.lists[i.0]
    }

    pub fn lists(&self) -> &[Vec<CategoryId>] {
        &self.lists
    }
}

/// Every patient ranks her eligible categories in precedence order.
pub fn profile_from_precedence(inst: &Instance, order: &PrecedenceOrder) -> PreferenceProfile {
    let lists = inst
        .patients()
        .map(|i| {
            order
                .as_slice()
                .iter()
                .copied()
                .filter(|&c| inst.eligible(i, c))
                .collect()
        })
        .collect();
    PreferenceProfile { lists }
}

/// One round of deferred acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaRound {
    pub proposals: Vec<(PatientId, CategoryId)>,
    pub rejected: Vec<PatientId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaOutcome {
    pub matching: Matching,
    pub rounds: Vec<DaRound>,
    pub proposals: usize,
}

pub fn deferred_acceptance(inst: &Instance, prefs: &PreferenceProfile) -> Result<Matching> {
    prefs.check(inst)?;
    Ok(run_da(inst, prefs, false).matching)
}

/// Deferred acceptance with the per-round record of proposals and rejections.
pub fn deferred_acceptance_traced(inst: &Instance, prefs: &PreferenceProfile) -> Result<DaOutcome> {
    prefs.check(inst)?;
    Ok(run_da(inst, prefs, true))
}

// All rejected patients propose simultaneously; each category keeps its best
// applicants (held plus new) up to capacity.
fn run_da(inst: &Instance, prefs: &PreferenceProfile, trace: bool) -> DaOutcome {
    let mut next = vec![0usize; inst.num_patients()];
    let mut held: Vec<Vec<PatientId>> = vec![Vec::new(); inst.num_categories()];
    let mut proposers: Vec<PatientId> = inst.patients().collect();
    let mut rounds = Vec::new();
    let mut proposals = 0;

    loop {
        let mut applied: Vec<Vec<PatientId>> = vec![Vec::new(); inst.num_categories()];
        let mut round = DaRound {
            proposals: Vec::new(),
            rejected: Vec::new(),
        };
        for &i in &proposers {
            if let Some(&c) = prefs.list(i).get(next[i.0]) {
                next[i.0] += 1;
                applied[c.0].push(i);
                proposals += 1;
                if trace {
                    round.proposals.push((i, c));
                }
            }
        }
        if applied.iter().all(Vec::is_empty) {
            break;
        }
        let mut rejected = Vec::new();
        for c in inst.categories() {
            if applied[c.0].is_empty() {
                continue;
            }
            let order = inst.priority(c);
            let pool = &mut held[c.0];
            pool.append(&mut applied[c.0]);
            pool.sort_by_key(|&i| order.rank(Slot::Patient(i)));
            let cap = inst.capacity(c).min(pool.len());
            rejected.extend(pool.drain(cap..));
        }
        rejected.sort();
        if trace {
            round.rejected = rejected.clone();
            rounds.push(round);
        }
        if rejected.is_empty() {
            break;
        }
        proposers = rejected;
    }

    let mut matching = Matching::unmatched(inst.num_patients());
    for c in inst.categories() {
        for &i in &held[c.0] {
            matching.set(i, Some(c));
        }
    }
    DaOutcome {
        matching,
        rounds,
        proposals,
    }
}

/// Patients admitted when processing one category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialStep {
    pub category: CategoryId,
    pub patients: Vec<PatientId>,
}

pub fn sequential_reserve_matching(inst: &Instance, order: &PrecedenceOrder) -> Matching {
    sequential_reserve_matching_traced(inst, order).0
}

/// Processes categories in precedence order; each admits its highest-priority
/// eligible patients among those still unmatched, up to capacity.
pub fn sequential_reserve_matching_traced(
    inst: &Instance,
    order: &PrecedenceOrder,
) -> (Matching, Vec<SequentialStep>) {
    let mut matching = Matching::unmatched(inst.num_patients());
    let mut steps = Vec::with_capacity(order.as_slice().len());
    for &c in order.as_slice() {
        let admitted: Vec<PatientId> = inst
            .priority(c)
            .eligible()
            .iter()
            .copied()
            .filter(|&i| !matching.is_matched(i))
            .take(inst.capacity(c))
            .collect();
        for &i in &admitted {
            matching.set(i, Some(c));
        }
        steps.push(SequentialStep {
            category: c,
            patients: admitted,
        });
    }
    (matching, steps)
}

/// Distinct deferred acceptance outcomes over every admissible preference
/// profile.
pub fn enumerate_da_induced(inst: &Instance, guard: &SizeGuard) -> Result<BTreeSet<Matching>> {
    guard.check(inst)?;
    let choices: Vec<Vec<Vec<CategoryId>>> = inst
        .patients()
        .map(|i| permutations(&inst.eligible_categories(i)))
        .collect();
    let odometer = Odometer::new(choices.iter().map(Vec::len).collect());
    let outcomes = odometer
        .par_bridge()
        .fold(BTreeSet::new, |mut acc, digits| {
            let lists = digits
                .iter()
                .zip(&choices)
                .map(|(&d, options)| options[d].clone())
                .collect();
            let prefs = PreferenceProfile { lists };
            acc.insert(run_da(inst, &prefs, false).matching);
            acc
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    Ok(outcomes)
}
