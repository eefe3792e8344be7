//! Classification tables, the π-centraliser checker and lifting tools.

pub mod check;
pub mod crosscheck;
pub mod lifting;
pub mod tables;

pub use check::{check_soluble_pi_centralisers, verify_witness, GroupProfile, Outcome, PropertyReport, Witness};
pub use crosscheck::{soundness_crosscheck, CrosscheckReport, CrosscheckRow, Verdict};
pub use lifting::{central_lifting_check, lifting_check, LiftMode, LiftingVerdict, Quotient};
