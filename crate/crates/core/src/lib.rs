//! Exact computations for finitely presented symmetric operads.
//!
//! Quotient dimensions and normal forms are computed arity by arity with
//! exact sparse elimination over the rationals. On top of that sit the
//! operadic Golod-Shafarevich criterion and the greedy construction
//! engines in [`kurosh`].

pub mod combinat;
pub mod error;
pub mod free;
pub mod gs;
pub mod kurosh;
pub mod linalg;
pub mod parse;
pub mod presentation;
pub mod quotient;
pub mod rational;
pub mod series;
pub mod signature;
pub mod term;

pub use error::{Error, Result};
pub use free::{
    compose_at, enumerate_basis, free_component_dim, free_dim_series, suboperad_closure,
    symmetrized_power, Budget, ComponentBasis,
};
pub use gs::{
    bound_series, euler_defect, euler_defect_series, growth_exponent_estimate, gs_binary_root,
    gs_criterion, GrowthEstimate, GsReport, GsReportRecord, RootBracket, Verdict,
};
pub use kurosh::{
    branch_relations, enumerate_elements, strong_construct, verify_construction, weak_construct,
    CertificateRecord, ConstructionCertificate, ConstructionKind, ProcessedElement,
    VerificationReport,
};
pub use parse::{parse_lincomb, parse_term};
pub use presentation::Presentation;
pub use quotient::{
    ideal_component, ideal_components, is_nilpotent_element, quotient_dim, quotient_dim_series,
    reduce, IdealComponent, NilpotencyReport, QuotientEngine,
};
pub use rational::{parse_rational, Rational};
pub use series::TruncatedSeries;
pub use signature::{signature_egf, Generator, Signature};
pub use term::{render_term, LinComb, TreeTerm};
