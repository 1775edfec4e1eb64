//! Randomized property checks against the exhaustive oracles.
//!
//! Every check takes one instance and compares what the mechanisms or
//! closed-form constructions produce with brute-force enumeration. The
//! random driver draws instances from a seeded generator so a run is
//! reproducible from `(property, seed, count)` alone.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms;
use crate::baseline::{
    check_prop3, is_maximal_in_beneficiary_assignment, smart_reserve_matching_exhaustive,
    smart_reserve_matching_poly, BaselineInstance, RawBaseline, RawReserve, ReserveMode,
    SmartConfig,
};
use crate::equilibrium::{
    enumerate_equilibrium_cutoffs, is_cutoff_equilibrium, max_cutoff_vector, min_cutoff_vector,
};
use crate::error::{Error, Result};
use crate::instance::{Instance, PatientId, RawCategory, RawInstance, Slot};
use crate::matching::Matching;
use crate::mechanisms::{
    adjacent_swap, deferred_acceptance, enumerate_da_induced, profile_from_precedence,
    sequential_reserve_matching, PrecedenceOrder, PreferenceProfile,
};
use crate::oracle::{axiom_satisfying_set, cutoff_equilibrium_set, supporting_cutoffs, SizeGuard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// Sequential and deferred-acceptance outcomes satisfy the three axioms.
    Axioms,
    /// Axiom-satisfying matchings are exactly those supported by a cutoff
    /// vector.
    EquilibriumCharacterization,
    /// Axiom-satisfying matchings are exactly the DA-induced ones.
    DaCharacterization,
    /// The supporting cutoff vectors of a matching form the box between its
    /// minimum and maximum cutoff vectors.
    CutoffIntervals,
    /// Sequential matching equals DA under the precedence-derived profile.
    SequentialIsDa,
    /// Moving a category one step earlier weakly raises its maximum cutoff.
    SwapRaisesCutoff,
    /// With soft reserves, at most five categories and disjoint beneficiary
    /// groups, moving a category earlier never matches more of its
    /// beneficiaries.
    BeneficiaryInclusion,
    /// Smart matchings for one `n` share their unreserved, beneficiary and
    /// matched sets, and the polynomial algorithm agrees.
    SmartSetsAgree,
    /// Smart matchings satisfy the axioms and are beneficiary-maximal.
    SmartAxioms,
    /// Unreserved maximum cutoffs of beneficiary-maximal matchings lie
    /// between those of the two extreme smart matchings.
    UnreservedCutoffBounds,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Axioms,
        Property::EquilibriumCharacterization,
        Property::DaCharacterization,
        Property::CutoffIntervals,
        Property::SequentialIsDa,
        Property::SwapRaisesCutoff,
        Property::BeneficiaryInclusion,
        Property::SmartSetsAgree,
        Property::SmartAxioms,
        Property::UnreservedCutoffBounds,
    ];

    /// Instance family the random driver samples from.
    pub fn family(self) -> Family {
        match self {
            Property::Axioms
            | Property::EquilibriumCharacterization
            | Property::DaCharacterization
            | Property::CutoffIntervals => Family::Raw(RawFamily::guarded()),
            Property::SequentialIsDa | Property::SwapRaisesCutoff => {
                Family::Raw(RawFamily::precedence())
            }
            Property::BeneficiaryInclusion => Family::Baseline(BaselineFamily::soft_disjoint()),
            Property::SmartSetsAgree | Property::SmartAxioms => {
                Family::Baseline(BaselineFamily::guarded())
            }
            Property::UnreservedCutoffBounds => Family::Baseline(BaselineFamily {
                disjoint: true,
                ..BaselineFamily::guarded()
            }),
        }
    }
}

/// Bounds for random general instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawFamily {
    pub max_patients: usize,
    pub max_categories: usize,
    pub max_units: usize,
    /// Smallest capacity any category gets.
    pub min_capacity: usize,
}

impl RawFamily {
    /// Within the exhaustive-oracle limits. Every category has at least one
    /// unit: a zero-capacity category that an unmatched patient is eligible
    /// for admits no supporting cutoff.
    pub fn guarded() -> Self {
        Self {
            max_patients: 6,
            max_categories: 3,
            max_units: 6,
            min_capacity: 1,
        }
    }

    /// Up to four categories, zero capacities allowed.
    pub fn precedence() -> Self {
        Self {
            max_patients: 6,
            max_categories: 4,
            max_units: 6,
            min_capacity: 0,
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Instance {
        let n = rng.gen_range(1..=self.max_patients.max(1));
        let most = self
            .max_units
            .checked_div(self.min_capacity)
            .map_or(self.max_categories, |k| self.max_categories.min(k));
        let m = rng.gen_range(1..=most.max(1));
        let capacities = spread_units(rng, m, self.min_capacity, self.max_units);
        let patients: Vec<String> = (1..=n).map(|k| format!("i{k}")).collect();
        let categories = capacities
            .into_iter()
            .enumerate()
            .map(|(k, capacity)| {
                let mut priority = patients.clone();
                priority.shuffle(rng);
                RawCategory {
                    name: format!("c{}", k + 1),
                    capacity,
                    priority,
                    eligible_count: eligible_count(rng, n),
                }
            })
            .collect();
        crate::instance::validate_instance(RawInstance {
            patients,
            categories,
            total_units: None,
        })
        .expect("generated instance is valid")
    }
}

/// Bounds for random baseline instances. Every category has at least one
/// unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineFamily {
    pub max_patients: usize,
    pub max_preferential: usize,
    pub max_units: usize,
    /// `None` picks soft or hard at random per instance.
    pub mode: Option<ReserveMode>,
    /// Each patient benefits from at most one preferential category.
    pub disjoint: bool,
}

impl BaselineFamily {
    /// Small enough for exhaustive smart matching.
    pub fn guarded() -> Self {
        Self {
            max_patients: 6,
            max_preferential: 3,
            max_units: 6,
            mode: None,
            disjoint: false,
        }
    }

    /// Soft reserves, disjoint beneficiaries, at most five categories.
    pub fn soft_disjoint() -> Self {
        Self {
            max_patients: 7,
            max_preferential: 4,
            max_units: 7,
            mode: Some(ReserveMode::Soft),
            disjoint: true,
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> BaselineInstance {
        let n = rng.gen_range(1..=self.max_patients.max(1));
        let k = rng.gen_range(
            1..=self
                .max_preferential
                .min(self.max_units.saturating_sub(1))
                .max(1),
        );
        let capacities = spread_units(rng, k + 1, 1, self.max_units.max(k + 1));
        let patients: Vec<String> = (1..=n).map(|j| format!("i{j}")).collect();
        let mut beneficiaries = vec![Vec::new(); k];
        for name in &patients {
            if self.disjoint {
                let pick = rng.gen_range(0..=k);
                if pick < k {
                    beneficiaries[pick].push(name.clone());
                }
            } else {
                for list in beneficiaries.iter_mut() {
                    if rng.gen_bool(0.4) {
                        list.push(name.clone());
                    }
                }
            }
        }
        let mode = self.mode.unwrap_or_else(|| {
            if rng.gen_bool(0.5) {
                ReserveMode::Soft
            } else {
                ReserveMode::Hard
            }
        });
        BaselineInstance::new(RawBaseline {
            baseline: patients,
            unreserved: "u".into(),
            unreserved_capacity: capacities[k],
            mode,
            reserves: beneficiaries
                .into_iter()
                .enumerate()
                .map(|(j, beneficiaries)| RawReserve {
                    name: format!("c{}", j + 1),
                    capacity: capacities[j],
                    beneficiaries,
                })
                .collect(),
        })
        .expect("generated baseline is valid")
    }
}

// Mostly wide eligibility, so categories compete for the same patients.
fn eligible_count(rng: &mut impl Rng, n: usize) -> usize {
    if rng.gen_bool(0.7) {
        rng.gen_range(n / 2..=n)
    } else {
        rng.gen_range(0..=n)
    }
}

// `parts` capacities of at least `min`, summing to at most `max_total`.
fn spread_units(rng: &mut impl Rng, parts: usize, min: usize, max_total: usize) -> Vec<usize> {
    let mut capacities = vec![min; parts];
    let extra = rng.gen_range(0..=max_total.saturating_sub(min * parts));
    for _ in 0..extra {
        let j = rng.gen_range(0..parts);
        capacities[j] += 1;
    }
    capacities
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Raw(RawFamily),
    Baseline(BaselineFamily),
}

impl Family {
    pub fn sample(&self, rng: &mut impl Rng) -> Subject {
        match self {
            Family::Raw(f) => Subject::Raw(f.sample(rng)),
            Family::Baseline(f) => Subject::Baseline(f.sample(rng)),
        }
    }
}

/// An instance a property is checked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Raw(Instance),
    Baseline(BaselineInstance),
}

impl Subject {
    /// The general instance; baseline instances are lowered.
    pub fn instance(&self) -> Result<Instance> {
        match self {
            Subject::Raw(inst) => Ok(inst.clone()),
            Subject::Baseline(b) => b.lower(),
        }
    }

    fn baseline(&self, property: Property) -> Result<&BaselineInstance> {
        match self {
            Subject::Baseline(b) => Ok(b),
            Subject::Raw(_) => Err(Error::PreconditionViolated(format!(
                "{property:?} needs a baseline instance"
            ))),
        }
    }
}

/// Result of checking one instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckOutcome {
    /// Number of individual comparisons made.
    pub checks: usize,
    pub violation: Option<String>,
}

impl CheckOutcome {
    fn fail(&mut self, detail: String) {
        if self.violation.is_none() {
            self.violation = Some(detail);
        }
    }

    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `property` on one instance. Errors mean the instance is outside
/// the property's scope (too large, wrong kind, preconditions unmet).
pub fn check(property: Property, subject: &Subject) -> Result<CheckOutcome> {
    match property {
        Property::Axioms => check_axioms(&subject.instance()?),
        Property::EquilibriumCharacterization => {
            check_equilibrium_characterization(&subject.instance()?)
        }
        Property::DaCharacterization => check_da_characterization(&subject.instance()?),
        Property::CutoffIntervals => check_cutoff_intervals(&subject.instance()?),
        Property::SequentialIsDa => check_sequential_is_da(&subject.instance()?),
        Property::SwapRaisesCutoff => check_swap_raises_cutoff(&subject.instance()?),
        Property::BeneficiaryInclusion => check_beneficiary_inclusion(subject.baseline(property)?),
        Property::SmartSetsAgree => check_smart_sets_agree(subject.baseline(property)?),
        Property::SmartAxioms => check_smart_axioms(subject.baseline(property)?),
        Property::UnreservedCutoffBounds => {
            check_unreserved_cutoff_bounds(subject.baseline(property)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Position of the failing instance in the random sequence.
    pub index: usize,
    pub subject: Subject,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub property: Property,
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `property` on `count` instances drawn from its family with the
/// given seed. Instances are generated in order and checked in parallel;
/// the reported counterexample is the first failing one in generation order.
pub fn verify_random(property: Property, seed: u64, count: usize) -> Result<VerifyReport> {
    let family = property.family();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subjects: Vec<Subject> = (0..count).map(|_| family.sample(&mut rng)).collect();
    let outcomes: Vec<Result<CheckOutcome>> =
        subjects.par_iter().map(|s| check(property, s)).collect();

    let mut report = VerifyReport {
        property,
        seed,
        instances: 0,
        checks: 0,
        counterexample: None,
    };
    for (index, (subject, outcome)) in subjects.into_iter().zip(outcomes).enumerate() {
        let outcome = outcome?;
        report.instances += 1;
        report.checks += outcome.checks;
        if let Some(detail) = outcome.violation {
            report.counterexample = Some(Counterexample {
                index,
                subject,
                detail,
            });
            break;
        }
    }
    Ok(report)
}

/// `{i1->c1, i2->-}` style rendering.
pub fn describe_matching(inst: &Instance, m: &Matching) -> String {
    let mut out = String::from("{");
    for (k, (i, c)) in m.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let target = c.map_or("-", |c| inst.category_name(c));
        let _ = write!(out, "{}->{}", inst.patient_name(i), target);
    }
    out.push('}');
    out
}

fn describe_slot(inst: &Instance, s: Slot) -> &str {
    match s {
        Slot::Patient(i) => inst.patient_name(i),
        Slot::Empty => "EMPTY",
    }
}

fn describe_order(inst: &Instance, order: &PrecedenceOrder) -> String {
    order
        .as_slice()
        .iter()
        .map(|&c| inst.category_name(c))
        .collect::<Vec<_>>()
        .join(",")
}

fn describe_set(names: impl IntoIterator<Item = String>) -> String {
    format!("{{{}}}", names.into_iter().collect::<Vec<_>>().join(", "))
}

fn patient_set(inst: &Instance, set: &BTreeSet<PatientId>) -> String {
    describe_set(set.iter().map(|&i| inst.patient_name(i).to_owned()))
}

fn compare_sets(
    inst: &Instance,
    out: &mut CheckOutcome,
    left_name: &str,
    left: &BTreeSet<Matching>,
    right_name: &str,
    right: &BTreeSet<Matching>,
) {
    out.checks += left.len().max(right.len());
    if let Some(m) = left.difference(right).next() {
        out.fail(format!(
            "{} is {left_name} but not {right_name}",
            describe_matching(inst, m)
        ));
    } else if let Some(m) = right.difference(left).next() {
        out.fail(format!(
            "{} is {right_name} but not {left_name}",
            describe_matching(inst, m)
        ));
    }
}

// Patient `k` ranks her eligible categories in declaration order rotated by `k`.
fn rotated_profile(inst: &Instance) -> PreferenceProfile {
    let lists = inst
        .patients()
        .map(|i| {
            let mut list = inst.eligible_categories(i);
            if !list.is_empty() {
                let shift = i.0 % list.len();
                list.rotate_left(shift);
            }
            list
        })
        .collect();
    PreferenceProfile::new(inst, lists).expect("eligible categories form a profile")
}

fn check_axioms(inst: &Instance) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for order in PrecedenceOrder::all(inst) {
        let m = sequential_reserve_matching(inst, &order);
        out.checks += 1;
        if let Some(axiom) = axioms::first_violation(inst, &m) {
            out.fail(format!(
                "sequential matching {} under {} violates {axiom}",
                describe_matching(inst, &m),
                describe_order(inst, &order)
            ));
        }
    }
    let m = deferred_acceptance(inst, &rotated_profile(inst))?;
    out.checks += 1;
    if let Some(axiom) = axioms::first_violation(inst, &m) {
        out.fail(format!(
            "deferred acceptance outcome {} violates {axiom}",
            describe_matching(inst, &m)
        ));
    }
    Ok(out)
}

fn check_equilibrium_characterization(inst: &Instance) -> Result<CheckOutcome> {
    let guard = SizeGuard::matchings();
    let admissible = axiom_satisfying_set(inst, &guard)?;
    let supported = cutoff_equilibrium_set(inst, &guard)?;
    let mut out = CheckOutcome::default();
    compare_sets(
        inst,
        &mut out,
        "axiom-satisfying",
        &admissible,
        "cutoff-supported",
        &supported,
    );
    for m in &admissible {
        out.checks += 2;
        for (name, f) in [
            ("maximum", max_cutoff_vector(inst, m)),
            ("minimum", min_cutoff_vector(inst, m)),
        ] {
            if !is_cutoff_equilibrium(inst, &f, m) {
                out.fail(format!(
                    "{name} cutoff vector does not support {}",
                    describe_matching(inst, m)
                ));
            }
        }
    }
    Ok(out)
}

fn check_da_characterization(inst: &Instance) -> Result<CheckOutcome> {
    let admissible = axiom_satisfying_set(inst, &SizeGuard::matchings())?;
    let induced = enumerate_da_induced(inst, &SizeGuard::profiles())?;
    let mut out = CheckOutcome::default();
    compare_sets(
        inst,
        &mut out,
        "axiom-satisfying",
        &admissible,
        "DA-induced",
        &induced,
    );
    Ok(out)
}

fn check_cutoff_intervals(inst: &Instance) -> Result<CheckOutcome> {
    let guard = SizeGuard::matchings();
    let mut out = CheckOutcome::default();
    for m in axiom_satisfying_set(inst, &guard)? {
        let enumerated = supporting_cutoffs(inst, &m, &guard)?;
        let intervals = enumerate_equilibrium_cutoffs(inst, &m)?;
        let product: BTreeSet<_> = intervals.iter().collect();
        out.checks += 1;
        if enumerated != product || intervals.len() != product.len() as u128 {
            out.fail(format!(
                "{}: {} supporting cutoff vectors, interval product has {}",
                describe_matching(inst, &m),
                enumerated.len(),
                product.len()
            ));
        }
    }
    Ok(out)
}

fn check_sequential_is_da(inst: &Instance) -> Result<CheckOutcome> {
    if inst.num_categories() > 4 {
        return Err(Error::InstanceTooLarge(format!(
            "{} categories, limit 4",
            inst.num_categories()
        )));
    }
    let mut out = CheckOutcome::default();
    for order in PrecedenceOrder::all(inst) {
        let sequential = sequential_reserve_matching(inst, &order);
        let da = deferred_acceptance(inst, &profile_from_precedence(inst, &order))?;
        out.checks += 1;
        if sequential != da {
            out.fail(format!(
                "under {}: sequential {} but DA {}",
                describe_order(inst, &order),
                describe_matching(inst, &sequential),
                describe_matching(inst, &da)
            ));
        }
    }
    Ok(out)
}

fn check_swap_raises_cutoff(inst: &Instance) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for before in PrecedenceOrder::all(inst) {
        let cutoffs_before = max_cutoff_vector(inst, &sequential_reserve_matching(inst, &before));
        for pos in 1..before.as_slice().len() {
            let c = before.as_slice()[pos];
            let after = adjacent_swap(&before, c, before.as_slice()[pos - 1])?;
            let cutoffs_after = max_cutoff_vector(inst, &sequential_reserve_matching(inst, &after));
            let (old, new) = (cutoffs_before.get(c), cutoffs_after.get(c));
            out.checks += 1;
            if !inst.priority(c).weakly_above(new, old) {
                out.fail(format!(
                    "moving {} earlier in {} lowers its maximum cutoff from {} to {}",
                    inst.category_name(c),
                    describe_order(inst, &before),
                    describe_slot(inst, old),
                    describe_slot(inst, new)
                ));
            }
        }
    }
    Ok(out)
}

fn check_beneficiary_inclusion(b: &BaselineInstance) -> Result<CheckOutcome> {
    let inst = b.lower()?;
    let mut out = CheckOutcome::default();
    for before in PrecedenceOrder::all(&inst) {
        for pos in 1..before.as_slice().len() {
            let c = before.as_slice()[pos];
            if c == b.unreserved() {
                continue;
            }
            let after = adjacent_swap(&before, c, before.as_slice()[pos - 1])?;
            let cmp = check_prop3(b, c, &before, &after)?;
            out.checks += 1;
            if !cmp.inclusion_holds() {
                out.fail(format!(
                    "moving {} earlier in {} grows its matched beneficiaries from {} to {}",
                    inst.category_name(c),
                    describe_order(&inst, &before),
                    patient_set(&inst, &cmp.matched_before),
                    patient_set(&inst, &cmp.matched_after)
                ));
            }
        }
    }
    Ok(out)
}

// Unreserved holders, beneficiaries holding their own categories, all matched.
type SmartSets = (
    BTreeSet<PatientId>,
    BTreeSet<PatientId>,
    BTreeSet<PatientId>,
);

fn smart_sets(b: &BaselineInstance, m: &Matching) -> SmartSets {
    (
        m.assigned_to(b.unreserved()).into_iter().collect(),
        b.beneficiary_assigned(m),
        m.matched(),
    )
}

fn check_smart_sets_agree(b: &BaselineInstance) -> Result<CheckOutcome> {
    let inst = b.lower()?;
    let guard = SizeGuard::matchings();
    let mut out = CheckOutcome::default();
    for n in 0..=b.capacity(b.unreserved()) {
        let cfg = SmartConfig::new(b, n)?;
        let exhaustive = smart_reserve_matching_exhaustive(b, cfg, &guard)?;
        let poly = smart_reserve_matching_poly(b, cfg)?;
        let reference = smart_sets(b, &poly.matching);
        out.checks += 1;
        if exhaustive.matchings.is_empty() {
            out.fail(format!("no smart matching for n = {n}"));
        }
        for m in &exhaustive.matchings {
            out.checks += 1;
            if smart_sets(b, m) != reference {
                out.fail(format!(
                    "n = {n}: smart matching {} and polynomial outcome {} differ in their unreserved, beneficiary or matched sets",
                    describe_matching(&inst, m),
                    describe_matching(&inst, &poly.matching)
                ));
            }
        }
    }
    Ok(out)
}

fn check_smart_axioms(b: &BaselineInstance) -> Result<CheckOutcome> {
    let inst = b.lower()?;
    let guard = SizeGuard::matchings();
    let mut out = CheckOutcome::default();
    for n in 0..=b.capacity(b.unreserved()) {
        let cfg = SmartConfig::new(b, n)?;
        let exhaustive = smart_reserve_matching_exhaustive(b, cfg, &guard)?;
        let poly = smart_reserve_matching_poly(b, cfg)?;
        for (source, m) in exhaustive
            .matchings
            .iter()
            .map(|m| ("exhaustive", m))
            .chain(std::iter::once(("polynomial", &poly.matching)))
        {
            out.checks += 1;
            if let Some(axiom) = axioms::first_violation(&inst, m) {
                out.fail(format!(
                    "n = {n}: {source} smart matching {} violates {axiom}",
                    describe_matching(&inst, m)
                ));
            } else if !is_maximal_in_beneficiary_assignment(b, m) {
                out.fail(format!(
                    "n = {n}: {source} smart matching {} is not beneficiary-maximal",
                    describe_matching(&inst, m)
                ));
            }
        }
    }
    Ok(out)
}

fn check_unreserved_cutoff_bounds(b: &BaselineInstance) -> Result<CheckOutcome> {
    if !b.has_disjoint_beneficiaries() {
        return Err(Error::PreconditionViolated(
            "a patient benefits from more than one preferential category".into(),
        ));
    }
    let inst = b.lower()?;
    let guard = SizeGuard::matchings();
    let u = b.unreserved();
    let order = inst.priority(u);
    let unreserved_cutoff = |m: &Matching| max_cutoff_vector(&inst, m).get(u);

    let extreme = |n: usize| -> Result<Vec<Slot>> {
        let out = smart_reserve_matching_exhaustive(b, SmartConfig::new(b, n)?, &guard)?;
        Ok(out.matchings.iter().map(unreserved_cutoff).collect())
    };
    let highest = extreme(b.capacity(u))?;
    let lowest = extreme(0)?;

    let mut out = CheckOutcome::default();
    for m in axiom_satisfying_set(&inst, &guard)? {
        if !is_maximal_in_beneficiary_assignment(b, &m) {
            continue;
        }
        let f = unreserved_cutoff(&m);
        for &top in &highest {
            out.checks += 1;
            if !order.weakly_above(top, f) {
                out.fail(format!(
                    "{} has unreserved cutoff {} above the all-first smart cutoff {}",
                    describe_matching(&inst, &m),
                    describe_slot(&inst, f),
                    describe_slot(&inst, top)
                ));
            }
        }
        for &bottom in &lowest {
            out.checks += 1;
            if !order.weakly_above(f, bottom) {
                out.fail(format!(
                    "{} has unreserved cutoff {} below the all-last smart cutoff {}",
                    describe_matching(&inst, &m),
                    describe_slot(&inst, f),
                    describe_slot(&inst, bottom)
                ));
            }
        }
    }
    Ok(out)
}
