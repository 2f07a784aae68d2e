//! Exact characters of Kirillov-Reshetikhin modules for the classical Lie
//! algebras, computed from the Q-system recurrence, together with a checker
//! showing that no other admissible choice of fundamental characters yields
//! genuine characters.

pub mod char_ring;
pub mod crystal_cn;
pub mod error;
pub mod qsystem;
pub mod root_data;
pub mod uniqueness;

pub use char_ring::{CharRing, CharacterRecord, FormalCharacter, Mult, TermRecord, WeightSystem};
pub use error::{Error, Result};
pub use qsystem::{kr_initial_data, InitialData, MRecord, QTable};
pub use root_data::{build_root_system, AlgebraType, RootSystem, Series, Weight};
pub use uniqueness::{uniqueness_scan, witness_specs, ScanReport, WitnessReport, WitnessSpec};
