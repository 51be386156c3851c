//! Exact combinatorics of the anticanonical divisor of a spherical
//! homogeneous space `G/H`.
//!
//! Given the colors of `G/H` (the `B`-stable prime divisors), the simple
//! roots moving them, and optionally spherical roots, color weights and a
//! matrix presentation of `g`, `b`, `h`, this crate computes
//!
//! * the weight `kappa_P = 2 rho_S - 2 rho_{S^p}` of the `B`-semi-invariant
//!   anticanonical section `s`,
//! * the type (a, 2a, b) of every color, both from the spherical roots and
//!   from the image of the stabilizer in `PGL(2)`,
//! * the multiplicities `m_i` in `Div s = sum m_i D_i + sum X_j`,
//!
//! and checks them: `kappa_P = sum m_i chi_i`, uniqueness of the positive
//! solution by exhaustive search, and the pairing rules of the color types.
//! All arithmetic is exact.

pub mod anticanon;
pub mod catalog;
pub mod datum;
pub mod error;
pub mod knop;
pub mod linalg;
pub mod lunatypes;
pub mod rational;
pub mod report;
pub mod rootsys;

pub use anticanon::{
    anticanonical_divisor, color_coefficient, cone_contains, cone_generators,
    enumerate_positive_solutions, generator_order_shift, kappa, uniqueness_certificate,
    valuation_cone, verify_decomposition, AnticanonicalDivisor, UniquenessCertificate,
    ValuationCone,
};
pub use catalog::{builtin, CatalogEntry};
pub use datum::{parse_datum, validate_datum, ColorRecord, DatumParts, SphericalDatum};
pub use error::{Error, Result};
pub use knop::{classify_image, classify_knop, open_orbit_check, ImageClass, LiePresentation};
pub use lunatypes::{audit_pairings, classify_luna, expected_chi_pairing, ColorType};
pub use rational::Q;
pub use report::{Finding, Report};
pub use rootsys::{pair, Coweight, Root, RootSystem, RootSystemSpec, Weight};
