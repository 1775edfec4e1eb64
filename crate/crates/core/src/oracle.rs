//! Exhaustive ground truth on small instances.
//!
//! Everything here enumerates the whole search space and never calls into
//! the mechanisms or engines it is used to check.

use std::collections::BTreeSet;

use crate::axioms;
use crate::combinatorics::{AssignmentWeight, BipartiteGraph, WeightedAssignment};
use crate::equilibrium::{budget_set, is_cutoff_equilibrium, CutoffVector};
use crate::error::{Error, Result};
use crate::instance::{CategoryId, Instance, Slot};
use crate::matching::Matching;
use crate::product::Odometer;

/// Upper bounds on instances handed to exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_patients: usize,
    pub max_categories: usize,
    pub max_units: usize,
}

impl SizeGuard {
    /// Bounds for enumerating preference profiles.
    pub fn profiles() -> Self {
        Self {
            max_patients: 6,
            max_categories: 3,
            max_units: 6,
        }
    }

    /// Bounds for enumerating matchings and cutoff vectors.
    pub fn matchings() -> Self {
        Self {
            max_patients: 6,
            max_categories: 6,
            max_units: 6,
        }
    }

    pub fn check(&self, inst: &Instance) -> Result<()> {
        let too_large = |what: &str, got: usize, max: usize| {
            Err(Error::InstanceTooLarge(format!(
                "{got} {what}, limit {max}"
            )))
        };
        if inst.num_patients() > self.max_patients {
            return too_large("patients", inst.num_patients(), self.max_patients);
        }
        if inst.num_categories() > self.max_categories {
            return too_large("categories", inst.num_categories(), self.max_categories);
        }
        if inst.total_units() > self.max_units {
            return too_large("units", inst.total_units(), self.max_units);
        }
        Ok(())
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        Self::matchings()
    }
}

/// Every capacity-respecting assignment of patients to categories (eligible
/// or not), each exactly once.
pub fn enumerate_matchings<'a>(
    inst: &'a Instance,
    guard: &SizeGuard,
) -> Result<impl Iterator<Item = Matching> + 'a> {
    guard.check(inst)?;
    let options = inst.num_categories() + 1;
    let odometer = Odometer::new(vec![options; inst.num_patients()]);
    Ok(odometer.filter_map(move |digits| {
        let assignment: Vec<Option<CategoryId>> = digits
            .into_iter()
            .map(|d| (d > 0).then(|| CategoryId(d - 1)))
            .collect();
        Matching::new(inst, assignment).ok()
    }))
}

pub fn axiom_satisfying_set(inst: &Instance, guard: &SizeGuard) -> Result<BTreeSet<Matching>> {
    Ok(enumerate_matchings(inst, guard)?
        .filter(|m| axioms::satisfies_axioms(inst, m))
        .collect())
}

/// Every cutoff vector: per category, an eligible patient or the sentinel.
pub fn enumerate_cutoff_vectors<'a>(
    inst: &'a Instance,
    guard: &SizeGuard,
) -> Result<impl Iterator<Item = CutoffVector> + 'a> {
    guard.check(inst)?;
    let choices: Vec<Vec<Slot>> = inst
        .categories()
        .map(|c| {
            let order = inst.priority(c);
            order
                .eligible()
                .iter()
                .map(|&i| Slot::Patient(i))
                .chain(std::iter::once(Slot::Empty))
                .collect()
        })
        .collect();
    let odometer = Odometer::new(choices.iter().map(Vec::len).collect());
    Ok(odometer.map(move |digits| {
        CutoffVector::from_vec(
            digits
                .iter()
                .zip(&choices)
                .map(|(&d, opts)| opts[d])
                .collect(),
        )
    }))
}

/// Matchings supported by at least one cutoff vector.
///
/// For each cutoff vector only matchings that put every patient inside her
/// budget set (or leave her unmatched when it is empty) are generated; the
/// remaining matchings cannot pass the first equilibrium condition. Each
/// candidate is then confirmed with the full equilibrium check.
pub fn cutoff_equilibrium_set(inst: &Instance, guard: &SizeGuard) -> Result<BTreeSet<Matching>> {
    let mut out = BTreeSet::new();
    for f in enumerate_cutoff_vectors(inst, guard)? {
        let options: Vec<Vec<Option<CategoryId>>> = inst
            .patients()
            .map(|i| {
                let budget = budget_set(inst, &f, i);
                if budget.is_empty() {
                    vec![None]
                } else {
                    budget.into_iter().map(Some).collect()
                }
            })
            .collect();
        for digits in Odometer::new(options.iter().map(Vec::len).collect()) {
            let assignment = digits.iter().zip(&options).map(|(&d, o)| o[d]).collect();
            if let Ok(m) = Matching::new(inst, assignment) {
                if is_cutoff_equilibrium(inst, &f, &m) {
                    out.insert(m);
                }
            }
        }
    }
    Ok(out)
}

/// Same set as [`cutoff_equilibrium_set`], by checking every (cutoff vector,
/// matching) pair.
pub fn cutoff_equilibrium_set_naive(
    inst: &Instance,
    guard: &SizeGuard,
) -> Result<BTreeSet<Matching>> {
    let vectors: Vec<CutoffVector> = enumerate_cutoff_vectors(inst, guard)?.collect();
    Ok(enumerate_matchings(inst, guard)?
        .filter(|m| vectors.iter().any(|f| is_cutoff_equilibrium(inst, f, m)))
        .collect())
}

/// Cutoff vectors that support `m` as an equilibrium.
pub fn supporting_cutoffs(
    inst: &Instance,
    m: &Matching,
    guard: &SizeGuard,
) -> Result<BTreeSet<CutoffVector>> {
    Ok(enumerate_cutoff_vectors(inst, guard)?
        .filter(|f| is_cutoff_equilibrium(inst, f, m))
        .collect())
}

/// Largest matching by trying every assignment of left nodes.
pub fn brute_max_cardinality(g: &BipartiteGraph) -> usize {
    fn go(g: &BipartiteGraph, l: usize, load: &mut [usize], size: usize, best: &mut usize) {
        if size + (g.num_left() - l) <= *best {
            return;
        }
        if l == g.num_left() {
            *best = size;
            return;
        }
        for &r in g.neighbors(l) {
            if load[r] < g.capacity(r) {
                load[r] += 1;
                go(g, l + 1, load, size + 1, best);
                load[r] -= 1;
            }
        }
        go(g, l + 1, load, size, best);
    }
    let mut best = 0;
    go(g, 0, &mut vec![0; g.num_right()], 0, &mut best);
    best
}

/// Best objective over every capacity-respecting assignment using only
/// weighted edges of `g`.
pub fn brute_assignment<W: AssignmentWeight>(g: &BipartiteGraph, w: &WeightedAssignment<W>) -> W {
    fn go<W: AssignmentWeight>(
        g: &BipartiteGraph,
        w: &WeightedAssignment<W>,
        l: usize,
        load: &mut [usize],
        acc: W,
    ) -> W {
        if l == g.num_left() {
            return acc;
        }
        let mut best = go(g, w, l + 1, load, acc);
        for &r in g.neighbors(l) {
            if let Some(x) = w.get(l, r) {
                if load[r] < g.capacity(r) {
                    load[r] += 1;
                    best = best.max(go(g, w, l + 1, load, acc + x));
                    load[r] -= 1;
                }
            }
        }
        best
    }
    go(g, w, 0, &mut vec![0; g.num_right()], W::zero())
}
