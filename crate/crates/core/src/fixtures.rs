//! Small reference instances used by tests, the CLI and the documentation.

use crate::baseline::{BaselineInstance, RawBaseline, RawReserve, ReserveMode};
use crate::instance::Instance;
use crate::mechanisms::PrecedenceOrder;

fn reserve(name: &str, beneficiaries: &[&str]) -> RawReserve {
    RawReserve {
        name: name.into(),
        capacity: 1,
        beneficiaries: beneficiaries.iter().map(|s| s.to_string()).collect(),
    }
}

/// Seven patients, six single-unit soft categories. `c`, `cs` and `ct` have
/// beneficiaries, `cp` and `ch` have none, and `u` is unreserved.
///
/// Moving `c` ahead of `cp` gets one more `c` beneficiary matched, so the
/// beneficiary-inclusion property fails with six categories.
pub fn six_category_soft() -> BaselineInstance {
    BaselineInstance::new(RawBaseline {
        baseline: (1..=7).map(|k| format!("i{k}")).collect(),
        unreserved: "u".into(),
        unreserved_capacity: 1,
        mode: ReserveMode::Soft,
        reserves: vec![
            reserve("cp", &[]),
            reserve("c", &["i1", "i3", "i6"]),
            reserve("cs", &["i2", "i5"]),
            reserve("ch", &[]),
            reserve("ct", &["i4", "i7"]),
        ],
    })
    .expect("valid fixture")
}

/// `cp, c, cs, ch, ct, u`.
pub fn six_category_precedence(inst: &Instance) -> PrecedenceOrder {
    PrecedenceOrder::from_names(inst, &["cp", "c", "cs", "ch", "ct", "u"])
        .expect("fixture categories")
}

fn two_patient(mode: ReserveMode) -> BaselineInstance {
    BaselineInstance::new(RawBaseline {
        baseline: vec!["i1".into(), "i2".into()],
        unreserved: "u".into(),
        unreserved_capacity: 1,
        mode,
        reserves: vec![reserve("c", &["i1"])],
    })
    .expect("valid fixture")
}

/// Two patients, one unreserved unit and one hard-reserved unit whose only
/// beneficiary is the top patient. Processing `u` first leaves the reserved
/// unit idle.
pub fn two_patient_hard() -> BaselineInstance {
    two_patient(ReserveMode::Hard)
}

/// Soft-reserve variant of [`two_patient_hard`].
pub fn two_patient_soft() -> BaselineInstance {
    two_patient(ReserveMode::Soft)
}
