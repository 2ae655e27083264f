//! Exact computational invariant theory of truncated polynomial rings
//! `F_q[x_1..x_n]/(x_1^{q^m},...,x_n^{q^m})` over finite fields.
//!
//! The crate builds the explicit basis of Borel-invariants of the truncated
//! ring, tests it against a brute-force linear-algebra oracle, computes the
//! associated (q,t)-multinomial Hilbert series, and enumerates the candidate
//! bases for the general linear group and its parabolic subgroups.
//!
//! Module map:
//! - [`gf`]: exact arithmetic in `F_q`, `q = p^e`, with deterministic
//!   extension-field construction;
//! - [`mpoly`]: sparse multivariate polynomials and rational functions over
//!   `F_q` (graded-lex order, exact division, determinants, truncation);
//! - [`invariants`]: Moore determinants, Dickson invariants, the
//!   determinant-quotient operator `delta`, weighted shuffles, Schur
//!   variations, and the nested `Y` invariants;
//! - [`basis`]: enumeration of the Borel basis indices and of the GL/parabolic
//!   candidate bases;
//! - [`groups`]: matrix groups over `F_q`, their action on the truncated
//!   ring, the invariant-subspace oracle, and orbit counting;
//! - [`series`]: q-integers, (q,t)-multinomials, and the conjectural
//!   Hilbert-series formulas;
//! - [`harness`]: end-to-end verification pipelines with machine-readable
//!   reports.

pub mod basis;
pub mod gf;
pub mod groups;
pub mod harness;
pub mod invariants;
pub mod mpoly;
pub mod series;

pub use gf::{Field, FieldError, FqElem};
pub use mpoly::{MPoly, Monomial, PolyError, RationalFn, TruncationSpec};
