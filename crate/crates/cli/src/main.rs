//! `reserve`: run reserve-system mechanisms on instance files and check
//! their properties against exhaustive oracles.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a property check failed.

mod format;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use reserve_core::baseline::{
    smart_reserve_matching_exhaustive, smart_reserve_matching_poly, BaselineInstance, SmartConfig,
    SmartDecision,
};
use reserve_core::mechanisms::{
    deferred_acceptance_traced, profile_from_precedence, sequential_reserve_matching_traced,
    PrecedenceOrder, PreferenceProfile,
};
use reserve_core::oracle::SizeGuard;
use reserve_core::verify::{check, verify_random, Property, Subject};
use reserve_core::Instance;
use serde_json::{json, Map, Value};

use format::{InstanceFile, Loaded, ProfileFile};

#[derive(Debug, Parser)]
#[command(
    name = "reserve",
    version,
    about = "Reserve-system matchings, cutoffs and property checks"
)]
#[command(group(ArgGroup::new("action").required(true).args(["mechanism", "verify"])))]
struct Cli {
    /// Instance file (JSON, `"kind": "raw"` or `"kind": "baseline"`).
    #[arg(long)]
    instance: Option<PathBuf>,

    #[arg(long, value_enum)]
    mechanism: Option<Mechanism>,

    /// Category processing order, comma separated. Defaults to file order.
    #[arg(long, value_delimiter = ',')]
    precedence: Option<Vec<String>>,

    /// Preference profile for `da`. Defaults to the precedence-derived one.
    #[arg(long)]
    profile: Option<PathBuf>,

    /// Unreserved units committed first by smart reserve matching.
    #[arg(long)]
    n: Option<usize>,

    /// Property to check, on `--instance` if given, else on random instances.
    #[arg(long, value_enum)]
    verify: Option<Check>,

    /// Include the step-by-step trace.
    #[arg(long)]
    trace: bool,

    /// Seed for random instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of random instances.
    #[arg(long, default_value_t = 200)]
    instances: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mechanism {
    Sequential,
    Da,
    SmartPoly,
    SmartExhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Axioms,
    #[value(name = "theorem1")]
    EquilibriumCharacterization,
    #[value(name = "theorem2")]
    DaCharacterization,
    #[value(name = "lemma1")]
    CutoffIntervals,
    #[value(name = "prop1")]
    SequentialIsDa,
    #[value(name = "prop2")]
    SwapRaisesCutoff,
    #[value(name = "prop3")]
    BeneficiaryInclusion,
    #[value(name = "lemma2")]
    SmartSetsAgree,
    #[value(name = "prop4")]
    SmartAxioms,
    #[value(name = "theorem3")]
    UnreservedCutoffBounds,
}

impl Check {
    fn property(self) -> Property {
        match self {
            Check::Axioms => Property::Axioms,
            Check::EquilibriumCharacterization => Property::EquilibriumCharacterization,
            Check::DaCharacterization => Property::DaCharacterization,
            Check::CutoffIntervals => Property::CutoffIntervals,
            Check::SequentialIsDa => Property::SequentialIsDa,
            Check::SwapRaisesCutoff => Property::SwapRaisesCutoff,
            Check::BeneficiaryInclusion => Property::BeneficiaryInclusion,
            Check::SmartSetsAgree => Property::SmartSetsAgree,
            Check::SmartAxioms => Property::SmartAxioms,
            Check::UnreservedCutoffBounds => Property::UnreservedCutoffBounds,
        }
    }

    fn flag(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

enum Failure {
    Input(String),
    /// The report still goes to standard output.
    Check(Value),
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Input(msg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = cli.format;
    let (report, code) = match run(&cli) {
        Ok(report) => (report, ExitCode::SUCCESS),
        Err(Failure::Check(report)) => (report, ExitCode::from(2)),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
        }
        OutputFormat::Text => report::render_text(&report),
    };
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    code
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let loaded = match &cli.instance {
        Some(path) => Some(InstanceFile::read(path)?.load()?),
        None => None,
    };
    if let Some(check) = cli.verify {
        return run_check(cli, check, loaded);
    }
    let mechanism = cli.mechanism.expect("clap requires an action");
    let loaded = loaded.ok_or_else(|| "--mechanism needs --instance".to_owned())?;
    match mechanism {
        Mechanism::Sequential => run_sequential(cli, &loaded.instance()?),
        Mechanism::Da => run_da(cli, &loaded.instance()?),
        Mechanism::SmartPoly | Mechanism::SmartExhaustive => {
            let Loaded::Baseline(b) = loaded else {
                return Err("smart reserve matching needs a baseline instance"
                    .to_owned()
                    .into());
            };
            run_smart(cli, mechanism, &b)
        }
    }
    .map_err(Failure::Input)
}

fn precedence(cli: &Cli, inst: &Instance) -> Result<PrecedenceOrder, String> {
    match &cli.precedence {
        Some(names) => PrecedenceOrder::from_names(inst, names).map_err(|e| e.to_string()),
        None => Ok(PrecedenceOrder::declaration(inst)),
    }
}

fn order_names(inst: &Instance, order: &PrecedenceOrder) -> Value {
    order
        .as_slice()
        .iter()
        .map(|&c| Value::from(inst.category_name(c)))
        .collect()
}

fn run_sequential(cli: &Cli, inst: &Instance) -> Result<Value, String> {
    let order = precedence(cli, inst)?;
    let (m, steps) = sequential_reserve_matching_traced(inst, &order);
    let mut out = Map::new();
    out.insert("mechanism".into(), "sequential".into());
    out.insert("precedence".into(), order_names(inst, &order));
    out.insert("matching".into(), report::matching(inst, &m));
    out.insert("cutoffs".into(), report::cutoffs(inst, &m));
    if cli.trace {
        let trace = steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                json!({
                    "step": k + 1,
                    "category": inst.category_name(s.category),
                    "patients": report::patients(inst, &s.patients),
                })
            })
            .collect();
        out.insert("trace".into(), Value::Array(trace));
    }
    Ok(Value::Object(out))
}

fn profile_json(inst: &Instance, prefs: &PreferenceProfile) -> Value {
    let mut out = Map::new();
    for i in inst.patients() {
        let list = prefs
            .list(i)
            .iter()
            .map(|&c| Value::from(inst.category_name(c)))
            .collect();
        out.insert(inst.patient_name(i).to_owned(), Value::Array(list));
    }
    Value::Object(out)
}

fn run_da(cli: &Cli, inst: &Instance) -> Result<Value, String> {
    let prefs = match &cli.profile {
        Some(path) => ProfileFile::read(path)?.resolve(inst)?,
        None => profile_from_precedence(inst, &precedence(cli, inst)?),
    };
    let outcome = deferred_acceptance_traced(inst, &prefs).map_err(|e| e.to_string())?;
    let m = &outcome.matching;
    let mut out = Map::new();
    out.insert("mechanism".into(), "da".into());
    out.insert("profile".into(), profile_json(inst, &prefs));
    out.insert("matching".into(), report::matching(inst, m));
    out.insert("cutoffs".into(), report::cutoffs(inst, m));
    out.insert("proposals".into(), outcome.proposals.into());
    if cli.trace {
        let trace = outcome
            .rounds
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let proposals: Vec<Value> = r
                    .proposals
                    .iter()
                    .map(|&(i, c)| json!({ "patient": inst.patient_name(i), "category": inst.category_name(c) }))
                    .collect();
                json!({
                    "round": k + 1,
                    "proposals": proposals,
                    "rejected": report::patients(inst, &r.rejected),
                })
            })
            .collect();
        out.insert("trace".into(), Value::Array(trace));
    }
    Ok(Value::Object(out))
}

fn decision_name(d: SmartDecision) -> &'static str {
    match d {
        SmartDecision::Unreserved => "unreserved",
        SmartDecision::Preferential => "preferential",
        SmartDecision::Deferred => "deferred",
    }
}

fn run_smart(cli: &Cli, mechanism: Mechanism, b: &BaselineInstance) -> Result<Value, String> {
    let n = cli.n.ok_or("smart reserve matching needs --n")?;
    let cfg = SmartConfig::new(b, n).map_err(|e| e.to_string())?;
    let inst = b.lower().map_err(|e| e.to_string())?;
    let mut out = Map::new();
    let (m, unreserved, preferential, decisions) = if mechanism == Mechanism::SmartPoly {
        let o = smart_reserve_matching_poly(b, cfg).map_err(|e| e.to_string())?;
        out.insert("mechanism".into(), "smart-poly".into());
        out.insert("n".into(), n.into());
        out.insert("max_beneficiaries".into(), o.max_beneficiaries.into());
        (
            o.matching,
            o.unreserved_committed,
            o.preferential_committed,
            o.decisions,
        )
    } else {
        let o = smart_reserve_matching_exhaustive(b, cfg, &SizeGuard::matchings())
            .map_err(|e| e.to_string())?;
        out.insert("mechanism".into(), "smart-exhaustive".into());
        out.insert("n".into(), n.into());
        out.insert("smart_matchings".into(), o.matchings.len().into());
        let first = o
            .matchings
            .into_iter()
            .next()
            .ok_or("no smart reserve matching found")?;
        (
            first,
            o.unreserved_committed,
            o.preferential_committed,
            o.decisions,
        )
    };
    out.insert("matching".into(), report::matching(&inst, &m));
    out.insert("cutoffs".into(), report::cutoffs(&inst, &m));
    out.insert(
        "unreserved_committed".into(),
        report::patients(&inst, &unreserved),
    );
    out.insert(
        "preferential_committed".into(),
        report::patients(&inst, &preferential),
    );
    out.insert(
        "beneficiary_assigned".into(),
        report::patients(&inst, &b.beneficiary_assigned(&m)),
    );
    if cli.trace {
        let trace = b
            .patients()
            .zip(&decisions)
            .map(|(i, &d)| json!({ "patient": inst.patient_name(i), "decision": decision_name(d) }))
            .collect();
        out.insert("trace".into(), Value::Array(trace));
    }
    Ok(Value::Object(out))
}

fn subject_file(subject: &Subject) -> InstanceFile {
    match subject {
        Subject::Raw(inst) => InstanceFile::from_instance(inst),
        Subject::Baseline(b) => InstanceFile::from_baseline(b),
    }
}

fn run_check(cli: &Cli, which: Check, loaded: Option<Loaded>) -> Result<Value, Failure> {
    let property = which.property();
    let mut out = Map::new();
    out.insert("verify".into(), which.flag().into());

    let failure = if let Some(loaded) = loaded {
        let subject = match loaded {
            Loaded::Raw(inst) => Subject::Raw(inst),
            Loaded::Baseline(b) => Subject::Baseline(b),
        };
        let outcome = check(property, &subject).map_err(|e| e.to_string())?;
        out.insert("instances".into(), 1.into());
        out.insert("checks".into(), outcome.checks.into());
        outcome.violation.map(|detail| (0, subject, detail))
    } else {
        let report = verify_random(property, cli.seed, cli.instances).map_err(|e| e.to_string())?;
        out.insert("seed".into(), cli.seed.into());
        out.insert("instances".into(), report.instances.into());
        out.insert("checks".into(), report.checks.into());
        report
            .counterexample
            .map(|cx| (cx.index, cx.subject, cx.detail))
    };

    match failure {
        None => {
            out.insert("result".into(), "pass".into());
            Ok(Value::Object(out))
        }
        Some((index, subject, detail)) => {
            out.insert("result".into(), "fail".into());
            let file =
                serde_json::to_value(subject_file(&subject)).expect("instance files serialize");
            out.insert(
                "counterexample".into(),
                json!({ "index": index, "detail": detail, "instance": file }),
            );
            Err(Failure::Check(Value::Object(out)))
        }
    }
}
