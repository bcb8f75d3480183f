use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hopfcert_core::algebra::ModuleRep;
use hopfcert_core::exactfield::{Embedding, FieldSpec, Subspace};
use hopfcert_core::hopf::HopfData;
use hopfcert_core::verifier::{
    cmd_build, cmd_check_hopf, cmd_clifford_report, cmd_frobenius_check, cmd_lies_over, cmd_series_check,
    is_input_error, load_hopf, parse_json, to_json_string, CheckOptions, HopfFile, ModuleFile, Report, SeriesFile,
    SubspaceFile, SubspaceSpec, EXIT_FAIL, EXIT_INPUT,
};
use hopfcert_core::Error;

#[derive(Parser)]
#[command(name = "hopfcert", version)]
#[command(about = "Build finite-dimensional Hopf algebras over finite fields and certify their representation theory")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work over GF(p^k), written `p,k`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Write the report or artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cross-check composition factors against the brute-force lattice.
    #[arg(long, global = true)]
    oracle: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a Hopf algebra or algebra from a recipe.
    Build {
        recipe: PathBuf,
        /// Also write a solvable series for the result, when one is known.
        #[arg(long)]
        series_out: Option<PathBuf>,
    },
    /// Check every Hopf algebra axiom.
    CheckHopf { hopf: PathBuf },
    /// Certify a lower solvable series.
    SeriesCheck { hopf: PathBuf, series: PathBuf },
    /// Certify that every simple module has dimension dividing dim H.
    FrobeniusCheck { hopf: PathBuf, series: PathBuf },
    /// Induce each simple K-module and check the factors.
    CliffordReport { hopf: PathBuf, k: PathBuf },
    /// Check lying-over between annihilators of H- and K-modules.
    LiesOver {
        hopf: PathBuf,
        k: PathBuf,
        modules: Vec<PathBuf>,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let (p, k) = s.split_once(',').ok_or("expected p,k")?;
    let p = p.trim().parse().map_err(|e| format!("bad p: {e}"))?;
    let k = k.trim().parse().map_err(|e| format!("bad k: {e}"))?;
    Ok(FieldSpec { p, k, modulus: vec![] })
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

fn read_subspace(path: &Path) -> Result<SubspaceSpec, Error> {
    let text = read(path)?;
    match parse_json::<SubspaceFile>(&text, "subspace file") {
        Ok(f) => Ok(f.basis),
        Err(_) => parse_json::<SubspaceSpec>(&text, "subspace file"),
    }
}

/// The input Hopf algebra, moved to `--field` when that names an extension
/// of its field.
struct Input {
    base: Arc<HopfData>,
    hopf: Arc<HopfData>,
    embedding: Option<Embedding>,
}

impl Input {
    fn load(path: &Path, field: &Option<FieldSpec>) -> Result<Input, Error> {
        let h = load_hopf(&read(path)?)?;
        let Some(spec) = field else {
            return Ok(Input { base: h.clone(), hopf: h, embedding: None });
        };
        let f = h.field();
        if spec.p != f.p() || spec.k % f.k() != 0 {
            return Err(Error::Parse(format!(
                "--field GF({}^{}) is not an extension of the input field {f}",
                spec.p, spec.k
            )));
        }
        if spec.k == f.k() {
            return Ok(Input { base: h.clone(), hopf: h, embedding: None });
        }
        let target = f.extension(spec.k / f.k())?;
        let emb = Embedding::new(f, &target)?;
        let ext = Arc::new(h.extend_scalars(&emb)?);
        Ok(Input {
            base: h,
            hopf: ext,
            embedding: Some(emb),
        })
    }

    /// Resolves against the input field, then maps to the working field.
    fn subspace(&self, spec: &SubspaceSpec) -> Result<Subspace, Error> {
        let s = spec.resolve(self.base.algebra())?;
        Ok(match &self.embedding {
            None => s,
            Some(e) => s.map_entries(e.target(), |c| e.apply(c)),
        })
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let opts = CheckOptions {
        seed: cli.seed,
        oracle: cli.oracle,
    };
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Build { recipe, series_out } => {
            return match cmd_build(&read(recipe)?, cli.field.as_ref())? {
                Ok(built) => {
                    write_out(&cli.out, &to_json_string(&built.to_json()))?;
                    if let Some(path) = series_out {
                        let s = built
                            .series
                            .ok_or_else(|| Error::Parse("no series is known for this construction".into()))?;
                        fs::write(path, to_json_string(&s))
                            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    }
                    Ok(0)
                }
                Err(r) => {
                    write_out(&cli.out, &render(&r, cli.format))?;
                    Ok(r.exit_code)
                }
            };
        }
        Command::CheckHopf { hopf } => {
            let file: HopfFile = parse_json(&read(hopf)?, "Hopf file")?;
            cmd_check_hopf(&file, opts)?
        }
        Command::SeriesCheck { hopf, series } | Command::FrobeniusCheck { hopf, series } => {
            let input = Input::load(hopf, &cli.field)?;
            let file: SeriesFile = parse_json(&read(series)?, "series file")?;
            let chain = file
                .chain
                .iter()
                .map(|s| Ok(SubspaceSpec::from_subspace(&input.subspace(s)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let file = SeriesFile { chain };
            if matches!(cli.command, Command::SeriesCheck { .. }) {
                cmd_series_check(&input.hopf, &file, opts)?
            } else {
                cmd_frobenius_check(&input.hopf, &file, opts)?
            }
        }
        Command::CliffordReport { hopf, k } => {
            let input = Input::load(hopf, &cli.field)?;
            let k = input.subspace(&read_subspace(k)?)?;
            cmd_clifford_report(&input.hopf, &k, opts)?
        }
        Command::LiesOver { hopf, k, modules } => {
            let input = Input::load(hopf, &cli.field)?;
            let k = input.subspace(&read_subspace(k)?)?;
            let mods = modules
                .iter()
                .map(|p| {
                    let file: ModuleFile = parse_json(&read(p)?, "module file")?;
                    let m: ModuleRep = file.to_module(input.base.algebra())?;
                    match &input.embedding {
                        None => Ok(m),
                        Some(e) => m.extend_scalars(e, input.hopf.algebra().clone()),
                    }
                })
                .collect::<Result<Vec<_>, Error>>()?;
            cmd_lies_over(&input.hopf, &k, &mods, opts)?
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    write_out(&cli.out, &render(&report, cli.format))?;
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hopfcert: {e}");
            let input = is_input_error(&e) || matches!(e, Error::NoEmbedding { .. } | Error::Axiom(_));
            ExitCode::from(if input { EXIT_INPUT } else { EXIT_FAIL } as u8)
        }
    }
}
