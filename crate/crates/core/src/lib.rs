//! Exact computations around combinatorial polarization over finite fields,
//! binary codes whose weights are divisible by a prescribed power of two,
//! and the code loops built on doubly even codes.
//!
//! * [`field`]: arithmetic in GF(p^e).
//! * [`poly_map`]: reduced polynomials, value tables, interpolation and the
//!   complemented normal form over GF(2).
//! * [`polarization`]: derived forms and the combinatorial degree, both by
//!   exhaustive evaluation and by the p-weight formula.
//! * [`codes`]: binary codes, simplex blocks and the construction of a code
//!   of level `r` from a map of combinatorial degree `r + 1`.
//! * [`loops`]: Griess factor sets, code loops and their identities.

pub mod cli;
pub mod codes;
pub mod error;
pub mod field;
pub mod loops;
pub mod poly_map;
pub mod polarization;

pub use codes::{BinaryCode, CodeLevel, Codeword};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use loops::{CodeLoop, EtaTable, LoopElement};
pub use polarization::CombDegree;
pub use poly_map::{MultiExp, ReducedPoly, SubsetFamily, ValueTable};
