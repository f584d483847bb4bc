//! High-precision tooling for additive p-sequences and their golden ratios.
//!
//! * [`mpnum`]: fixed-point decimal reals/complexes with e, π, exp, sin, cos, sqrt.
//! * [`sequences`]: exact additive p-sequences, fast distant terms, term ratios.
//! * [`charpoly`]: the characteristic polynomial `x^p - x^(p-1) - ... - x - 1`,
//!   certified enclosures of its root in (1, 2), and p-fold golden sections.
//! * [`hypercomplex`]: quaternions, octonions, pure exponentials, roots of unity.
//! * [`relations`]: residual reports for the e / π / Φ_p relations.
//! * [`cli`]: the `pgolden` command-line front end.

pub mod charpoly;
pub mod cli;
pub mod hypercomplex;
pub mod mpnum;
pub mod relations;
pub mod selftest;
pub mod sequences;

pub use charpoly::{golden_ratio, golden_section, CharPoly, GoldenRatio, SegmentDivision};
pub use mpnum::{MPComplex, MPReal};
pub use sequences::{generate, nth_term_fast, ratio_at, PSequence, TermRatio};
