//! Discrete Poincaré constants of integer-valued distributions.
//!
//! [`poincare_exact`] computes the constant as the top eigenvalue of a
//! weighted indicator-covariance matrix. The [`bounds`] module provides
//! moment bounds for ultra log-concave laws, score-ratio crossing
//! certificates, tail certificates and the Bobkov–Götze sandwich, and
//! [`full_report`] puts all of them next to the exact value.

pub mod bounds;
pub mod charlier;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pmf;
pub mod random;
pub mod spectral_gap;
pub mod suite;
pub mod ulc;

pub use bounds::{
    full_report, full_report_with_components, BoundReport, Certificate, CertificateKind, Verdict,
};
pub use charlier::CharlierPoly;
pub use error::{Error, Result};
pub use pmf::{Moments, Pmf};
pub use spectral_gap::{poincare_exact, rayleigh, ExactGap, GapKind};
pub use suite::{run_suite, PropertyOutcome, SuiteReport};
pub use ulc::{classify_ulc, UlcClass};
