//! Exact nonnegativity decision for forms on the nonnegative orthant by
//! successive weighted difference substitution.

pub mod cli;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod polynomial;
pub mod rational;
pub mod report;
pub mod substitution;

pub use engine::{yys_decide, CertificateEntry, Decision, EngineConfig, EngineStats, Verdict};
pub use error::{Result, SdsError};
pub use polynomial::{parse_form, Form, Monomial, NegativityMode, Point};
pub use substitution::{Chain, PwnTable, SubMatrix};
