//! Certificate commands behind the CLI, usable as a library.

mod build;
mod cert;
mod io;
mod report;

pub use build::{build_recipe, cmd_build, is_input_error, Built, Recipe};
pub use cert::{
    cmd_check_hopf, cmd_clifford_report, cmd_frobenius_check, cmd_lies_over, cmd_series_check, load_hopf,
    CheckOptions, SeriesCertificate,
};
pub use io::{
    element_from_json, element_json, parse_json, to_json_string, vector_from_json, vector_json, AlgebraFile, HopfFile,
    ModuleFile, SeriesFile, SubspaceFile, SubspaceSpec, VectorSpec,
};
pub use report::{Kind, Report, Verdict, EXIT_ASSUMPTION, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
