//! Binary codes whose weights are divisible by a power of 2.

mod build;
mod code;
mod codeword;
mod simplex;

pub use build::{
    build_code, prescribe_cg, verify_build, verify_generator, BuildOptions, BuildReport,
    CodeBuild, Prescription, MAX_CODE_LENGTH,
};
pub use code::{level_of_weights, parse_rows, rank, BinaryCode, CodeLevel, MAX_CODE_DIM};
pub use codeword::Codeword;
pub use simplex::{weight_congruence, SimplexCode, MAX_SIMPLEX_DIM, WORKED_EXAMPLE_ROWS};
