//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reserve_core::baseline::{
    check_prop3, compare_beneficiary_outcomes, smart_reserve_matching_exhaustive,
    smart_reserve_matching_poly, SmartConfig,
};
use reserve_core::combinatorics::{
    max_cardinality_matching, solve_assignment, AssignmentWeight, BipartiteGraph, LexWeight,
    WeightedAssignment,
};
use reserve_core::fixtures;
use reserve_core::mechanisms::{
    adjacent_swap, sequential_reserve_matching_traced, PrecedenceOrder,
};
use reserve_core::oracle::{brute_assignment, brute_max_cardinality, SizeGuard};
use reserve_core::verify::{check, verify_random, Property, Subject};
use reserve_core::{Error, Instance};

type Outcome = Result<String, String>;

const SEED: u64 = 20_240_601;
const RANDOM_INSTANCES: usize = 200;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "six-category step tables",
            limit: Some(Duration::from_secs(1)),
            run: six_category_tables,
        },
        Criterion {
            id: 2,
            name: "two-patient hard reserve",
            limit: Some(Duration::from_secs(1)),
            run: two_patient_hard,
        },
        Criterion {
            id: 3,
            name: "axioms iff cutoff equilibrium",
            limit: Some(Duration::from_secs(60)),
            run: equilibrium_characterization,
        },
        Criterion {
            id: 4,
            name: "axioms iff DA-induced",
            limit: Some(Duration::from_secs(300)),
            run: da_characterization,
        },
        Criterion {
            id: 5,
            name: "equilibrium cutoffs form intervals",
            limit: None,
            run: cutoff_intervals,
        },
        Criterion {
            id: 6,
            name: "sequential equals DA",
            limit: None,
            run: sequential_is_da,
        },
        Criterion {
            id: 7,
            name: "earlier category raises its cutoff",
            limit: None,
            run: swap_raises_cutoff,
        },
        Criterion {
            id: 8,
            name: "beneficiary inclusion",
            limit: None,
            run: beneficiary_inclusion,
        },
        Criterion {
            id: 9,
            name: "smart matchings agree",
            limit: None,
            run: smart_matchings,
        },
        Criterion {
            id: 10,
            name: "unreserved cutoff bounds",
            limit: None,
            run: unreserved_cutoff_bounds,
        },
        Criterion {
            id: 11,
            name: "combinatorics engines",
            limit: Some(Duration::from_secs(30)),
            run: combinatorics,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2} {}: {detail} ({elapsed:.2?})",
                c.id, c.name
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2} {}: {detail} ({elapsed:.2?})",
                    c.id, c.name
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn names(inst: &Instance, set: impl IntoIterator<Item = reserve_core::PatientId>) -> Vec<String> {
    set.into_iter()
        .map(|i| inst.patient_name(i).to_owned())
        .collect()
}

fn random_suite(property: Property, count: usize) -> Outcome {
    let report = verify_random(property, SEED, count).map_err(|e| e.to_string())?;
    if let Some(cx) = report.counterexample {
        return Err(format!(
            "instance {}: {} [{:?}]",
            cx.index, cx.detail, cx.subject
        ));
    }
    ensure(report.instances == count, || {
        format!("only {} of {count} instances checked", report.instances)
    })?;
    Ok(format!(
        "{} instances, {} comparisons",
        report.instances, report.checks
    ))
}

fn six_category_tables() -> Outcome {
    let b = fixtures::six_category_soft();
    let inst = b.lower().map_err(|e| e.to_string())?;
    let before = fixtures::six_category_precedence(&inst);
    let c = inst.category_id("c").map_err(|e| e.to_string())?;
    let cp = inst.category_id("cp").map_err(|e| e.to_string())?;
    let after = adjacent_swap(&before, c, cp).map_err(|e| e.to_string())?;

    let expected = [
        (
            &before,
            [
                ("cp", "i1"),
                ("c", "i3"),
                ("cs", "i2"),
                ("ch", "i4"),
                ("ct", "i7"),
                ("u", "i5"),
            ],
        ),
        (
            &after,
            [
                ("c", "i1"),
                ("cp", "i2"),
                ("cs", "i5"),
                ("ch", "i3"),
                ("ct", "i4"),
                ("u", "i6"),
            ],
        ),
    ];
    for (order, table) in expected {
        let (_, steps) = sequential_reserve_matching_traced(&inst, order);
        let got: Vec<(String, Vec<String>)> = steps
            .iter()
            .map(|s| {
                (
                    inst.category_name(s.category).to_owned(),
                    names(&inst, s.patients.iter().copied()),
                )
            })
            .collect();
        let want: Vec<(String, Vec<String>)> = table
            .iter()
            .map(|(c, i)| (c.to_string(), vec![i.to_string()]))
            .collect();
        ensure(got == want, || format!("steps {got:?}, expected {want:?}"))?;
    }

    let cmp = compare_beneficiary_outcomes(&b, c, &before, &after).map_err(|e| e.to_string())?;
    let before_set = names(&inst, cmp.matched_before.iter().copied());
    let after_set = names(&inst, cmp.matched_after.iter().copied());
    ensure(
        before_set == ["i1", "i3"] && after_set == ["i1", "i3", "i6"],
        || format!("matched c beneficiaries {before_set:?} then {after_set:?}"),
    )?;
    ensure(
        cmp.matched_before.is_subset(&cmp.matched_after) && cmp.matched_before != cmp.matched_after,
        || "inclusion is not strict".into(),
    )?;
    Ok("both step tables exact, {i1,i3} strictly inside {i1,i3,i6}".into())
}

fn two_patient_hard() -> Outcome {
    let b = fixtures::two_patient_hard();
    let inst = b.lower().map_err(|e| e.to_string())?;
    let order =
        |names: &[&str]| PrecedenceOrder::from_names(&inst, names).map_err(|e| e.to_string());
    let (first, _) = sequential_reserve_matching_traced(&inst, &order(&["u", "c"])?);
    let (second, _) = sequential_reserve_matching_traced(&inst, &order(&["c", "u"])?);
    ensure(names(&inst, first.matched()) == ["i1"], || {
        format!("u first matches {:?}", names(&inst, first.matched()))
    })?;
    ensure(names(&inst, second.matched()) == ["i1", "i2"], || {
        format!("c first matches {:?}", names(&inst, second.matched()))
    })?;
    ensure(
        second.pareto_dominates(&first) && !first.pareto_dominates(&second),
        || "Pareto domination not detected".into(),
    )?;

    let everyone = BTreeSet::from_iter(inst.patients());
    for n in 0..=b.capacity(b.unreserved()) {
        let cfg = SmartConfig::new(&b, n).map_err(|e| e.to_string())?;
        let exhaustive = smart_reserve_matching_exhaustive(&b, cfg, &SizeGuard::matchings())
            .map_err(|e| e.to_string())?;
        let poly = smart_reserve_matching_poly(&b, cfg).map_err(|e| e.to_string())?;
        ensure(!exhaustive.matchings.is_empty(), || {
            format!("no smart matching for n = {n}")
        })?;
        for m in exhaustive
            .matchings
            .iter()
            .chain(std::iter::once(&poly.matching))
        {
            ensure(m.matched() == everyone, || {
                format!("n = {n}: smart matching leaves a patient out")
            })?;
        }
    }
    Ok("{i1} vs {i1,i2}, domination reported, smart matches both for every n".into())
}

fn equilibrium_characterization() -> Outcome {
    random_suite(Property::EquilibriumCharacterization, RANDOM_INSTANCES)
}

fn da_characterization() -> Outcome {
    random_suite(Property::DaCharacterization, RANDOM_INSTANCES)
}

fn cutoff_intervals() -> Outcome {
    random_suite(Property::CutoffIntervals, RANDOM_INSTANCES)
}

fn sequential_is_da() -> Outcome {
    random_suite(Property::SequentialIsDa, RANDOM_INSTANCES)
}

fn swap_raises_cutoff() -> Outcome {
    random_suite(Property::SwapRaisesCutoff, RANDOM_INSTANCES)
}

fn beneficiary_inclusion() -> Outcome {
    let random = random_suite(Property::BeneficiaryInclusion, RANDOM_INSTANCES)?;

    let b = fixtures::six_category_soft();
    let inst = b.lower().map_err(|e| e.to_string())?;
    let before = fixtures::six_category_precedence(&inst);
    let c = inst.category_id("c").map_err(|e| e.to_string())?;
    let after = adjacent_swap(
        &before,
        c,
        inst.category_id("cp").map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let cmp = compare_beneficiary_outcomes(&b, c, &before, &after).map_err(|e| e.to_string())?;
    ensure(!cmp.inclusion_holds(), || {
        "six-category control satisfies the inclusion".into()
    })?;
    ensure(
        matches!(
            check_prop3(&b, c, &before, &after),
            Err(Error::PreconditionViolated(_))
        ),
        || "six-category control accepted by the restricted check".into(),
    )?;
    Ok(format!(
        "{random}; six-category control violates the inclusion"
    ))
}

fn smart_matchings() -> Outcome {
    let sets = random_suite(Property::SmartSetsAgree, RANDOM_INSTANCES)?;
    let axioms = random_suite(Property::SmartAxioms, RANDOM_INSTANCES)?;
    for b in [fixtures::two_patient_hard(), fixtures::two_patient_soft()] {
        for p in [Property::SmartSetsAgree, Property::SmartAxioms] {
            let out = check(p, &Subject::Baseline(b.clone())).map_err(|e| e.to_string())?;
            if let Some(v) = out.violation {
                return Err(format!("fixture: {v}"));
            }
        }
    }
    let modes = mode_mix(Property::SmartSetsAgree);
    Ok(format!(
        "shared sets: {sets}; axioms and maximality: {axioms}; {modes}"
    ))
}

fn unreserved_cutoff_bounds() -> Outcome {
    let random = random_suite(Property::UnreservedCutoffBounds, RANDOM_INSTANCES)?;
    Ok(format!(
        "{random}; {}",
        mode_mix(Property::UnreservedCutoffBounds)
    ))
}

// How many soft and hard instances the random family produced.
fn mode_mix(property: Property) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let family = property.family();
    let mut soft = 0;
    for _ in 0..RANDOM_INSTANCES {
        if let Subject::Baseline(b) = family.sample(&mut rng) {
            soft += usize::from(b.mode() == reserve_core::baseline::ReserveMode::Soft);
        }
    }
    format!("{soft} soft / {} hard", RANDOM_INSTANCES - soft)
}

fn check_cardinality(g: &BipartiteGraph) -> Result<(), String> {
    let got = max_cardinality_matching(g);
    let mut load = vec![0; g.num_right()];
    for (l, r) in got.assignment.iter().enumerate() {
        if let Some(r) = *r {
            ensure(g.has_edge(l, r), || format!("non-edge ({l},{r}) used"))?;
            load[r] += 1;
        }
    }
    ensure((0..g.num_right()).all(|r| load[r] <= g.capacity(r)), || {
        "capacity exceeded".into()
    })?;
    let used = got.assignment.iter().flatten().count();
    let best = brute_max_cardinality(g);
    ensure(got.size == used && used == best, || {
        format!(
            "size {} ({used} assigned), brute force {best} on {g:?}",
            got.size
        )
    })
}

fn check_assignment<W: AssignmentWeight>(
    g: &BipartiteGraph,
    w: &WeightedAssignment<W>,
) -> Result<(), String> {
    let got = solve_assignment(g, w);
    let mut load = vec![0; g.num_right()];
    let mut total = W::zero();
    for (l, r) in got.assignment.iter().enumerate() {
        if let Some(r) = *r {
            let x = w
                .get(l, r)
                .filter(|_| g.has_edge(l, r))
                .ok_or_else(|| format!("forbidden pair ({l},{r}) used"))?;
            total = total + x;
            load[r] += 1;
        }
    }
    ensure((0..g.num_right()).all(|r| load[r] <= g.capacity(r)), || {
        "capacity exceeded".into()
    })?;
    let best = brute_assignment(g, w);
    ensure(total == got.objective && total == best, || {
        format!(
            "objective {:?} (assignment sums to {total:?}), brute force {best:?}",
            got.objective
        )
    })
}

fn random_graph(rng: &mut ChaCha8Rng, max_left: usize, max_right: usize) -> BipartiteGraph {
    let left = rng.gen_range(0..=max_left);
    let right = rng.gen_range(1..=max_right);
    let mut g = BipartiteGraph::new(left, (0..right).map(|_| rng.gen_range(0..=2)).collect());
    let density = rng.gen_range(0.1..0.9);
    for l in 0..left {
        for r in 0..right {
            if rng.gen_bool(density) {
                g.add_edge(l, r).expect("in range");
            }
        }
    }
    g
}

fn combinatorics() -> Outcome {
    // Every graph with up to 3 + 3 nodes and capacities 1 or 2.
    let mut exhaustive = 0;
    for left in 0..=3usize {
        for right in 1..=3usize {
            for caps in 0..(1usize << right) {
                let capacity: Vec<usize> = (0..right).map(|r| 1 + ((caps >> r) & 1)).collect();
                for edges in 0..(1usize << (left * right)) {
                    let mut g = BipartiteGraph::new(left, capacity.clone());
                    for bit in 0..left * right {
                        if edges >> bit & 1 == 1 {
                            g.add_edge(bit / right, bit % right).expect("in range");
                        }
                    }
                    check_cardinality(&g)?;
                    exhaustive += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random_graphs = 2000;
    for _ in 0..random_graphs {
        check_cardinality(&random_graph(&mut rng, 7, 7))?;
    }

    let assignments = 1500;
    for k in 0..assignments {
        let g = random_graph(&mut rng, 6, 4);
        let mut plain = WeightedAssignment::<i64>::new(g.num_left(), g.num_right());
        let mut lex = WeightedAssignment::<LexWeight>::new(g.num_left(), g.num_right());
        for (l, r) in g.edges() {
            if rng.gen_bool(0.85) {
                plain.set(l, r, rng.gen_range(-4..=12));
                lex.set(
                    l,
                    r,
                    LexWeight::new(rng.gen_range(0..=1), rng.gen_range(-2..=3)),
                );
            }
        }
        check_assignment(&g, &plain).map_err(|e| format!("assignment {k}: {e}"))?;
        check_assignment(&g, &lex).map_err(|e| format!("lexicographic assignment {k}: {e}"))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive and {random_graphs} random graphs, {assignments} plain and {assignments} lexicographic assignments"
    ))
}
