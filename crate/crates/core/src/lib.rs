//! Reserve systems for rationing identical units.
//!
//! Units are split into categories, each with its own capacity and strict
//! priority order over patients (a sentinel in the order marks the
//! eligibility boundary). The crate provides:
//!
//! * the eligibility, non-wastefulness and priority axioms ([`axioms`]);
//! * cutoff vectors, budget sets and cutoff equilibria ([`equilibrium`]);
//! * deferred acceptance and sequential reserve matching ([`mechanisms`]);
//! * baseline-priority instances with soft or hard reserves and smart
//!   reserve matching ([`baseline`]);
//! * bipartite matching and assignment engines ([`combinatorics`]);
//! * exhaustive oracles and randomized property checks ([`oracle`],
//!   [`verify`]).

pub mod axioms;
pub mod baseline;
pub mod combinatorics;
pub mod equilibrium;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod matching;
pub mod mechanisms;
pub mod oracle;
mod product;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{
    validate_instance, Category, CategoryId, Instance, PatientId, PriorityOrder, RawCategory,
    RawInstance, Slot,
};
pub use matching::Matching;
