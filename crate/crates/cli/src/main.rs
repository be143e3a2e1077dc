//! `fipkit`: construct, dualize, minimize and inspect free-cofree
//! presentations of finitely supported multigraded modules.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 validation error.

use clap::{ArgAction, Parser, Subcommand};
use fipkit_core::degree::box_degrees;
use fipkit_core::io::{self, FileKind};
use fipkit_core::{
    assoc_presentation, reduce, reduce_generators, Degree, FieldSpec, GradedModuleData,
    MonomialMatrix,
};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fipkit",
    about = "Minimal flat-injective presentations of multigraded modules",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Write output to this file instead of standard output
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Abort unless the input file declares exactly this field (Q or F<p>)
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,

    /// Print progress notes to standard error (repeatable)
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the associated free-cofree presentation of a module file
    Present { input: PathBuf },
    /// Minimize a monomial matrix; the removal report goes to stderr
    Reduce {
        /// Run only the generator pass
        #[arg(long)]
        generators_only: bool,
        input: PathBuf,
    },
    /// Matlis dual of a monomial matrix
    Dual { input: PathBuf },
    /// Validate a module or matrix file and report minimality
    Check { input: PathBuf },
    /// Image dimensions of a monomial matrix, degree by degree
    Hilbert {
        /// Box as 2n integers "lo1 .. lon hi1 .. hin" (one argument,
        /// space- or comma-separated)
        #[arg(long = "box", allow_hyphen_values = true, value_name = "BOX")]
        degree_box: Option<String>,
        input: PathBuf,
    },
    /// Minimal generator and cogenerator degrees of a module file
    Betti { input: PathBuf },
}

enum Failure {
    Parse(String),
    Validation(String),
    Io(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) | Failure::Validation(m) | Failure::Io(m) => write!(f, "{m}"),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Parse(_) => 1,
            Failure::Validation(_) => 2,
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn check_field_override(declared: FieldSpec, want: &Option<String>) -> Result<(), Failure> {
    let Some(want) = want else {
        return Ok(());
    };
    let want_spec = FieldSpec::parse_token(want)
        .map_err(|e| Failure::Parse(format!("bad --field value: {e}")))?;
    if want_spec != declared {
        return Err(Failure::Validation(format!(
            "input declares field {}, but --field {} was required",
            declared.token(),
            want_spec.token()
        )));
    }
    Ok(())
}

fn load_module(path: &Path, field: &Option<String>) -> Result<GradedModuleData, Failure> {
    let text = read_input(path)?;
    let module = io::parse_module(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    check_field_override(module.field(), field)?;
    module
        .validate()
        .map_err(|e| Failure::Validation(e.to_string()))?;
    Ok(module)
}

fn load_matrix(path: &Path, field: &Option<String>) -> Result<MonomialMatrix, Failure> {
    let text = read_input(path)?;
    let matrix = io::parse_matrix(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    check_field_override(matrix.field(), field)?;
    // the parser enforces the support condition already
    matrix
        .validate()
        .map_err(|e| Failure::Validation(e.to_string()))?;
    Ok(matrix)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn degree_table(pairs: impl Iterator<Item = (Degree, usize)>) -> String {
    let mut out = String::new();
    for (g, v) in pairs {
        let coords: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push(' ');
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Present { input } => {
            let module = load_module(input, &cli.field)?;
            if cli.verbose > 0 {
                eprintln!(
                    "presenting {} components, total dimension {}",
                    module.components().len(),
                    module.total_dim()
                );
            }
            let matrix = assoc_presentation(&module)
                .map_err(|e| Failure::Validation(e.to_string()))?
                .canonicalize();
            emit(&cli.output, &io::serialize_matrix(&matrix))
        }
        Cmd::Reduce {
            generators_only,
            input,
        } => {
            let matrix = load_matrix(input, &cli.field)?;
            let (reduced, report) = if *generators_only {
                reduce_generators(&matrix)
            } else {
                reduce(&matrix)
            };
            eprint!("{report}");
            emit(&cli.output, &io::serialize_matrix(&reduced.canonicalize()))
        }
        Cmd::Dual { input } => {
            let matrix = load_matrix(input, &cli.field)?;
            let dual = matrix.matlis_dual().canonicalize();
            emit(&cli.output, &io::serialize_matrix(&dual))
        }
        Cmd::Check { input } => {
            let text = read_input(input)?;
            match io::detect_kind(&text) {
                FileKind::Module => {
                    let module =
                        io::parse_module(&text).map_err(|e| Failure::Parse(e.to_string()))?;
                    check_field_override(module.field(), &cli.field)?;
                    module
                        .validate()
                        .map_err(|e| Failure::Validation(e.to_string()))?;
                    emit(&cli.output, "valid module\n")
                }
                FileKind::Matrix => {
                    let matrix =
                        io::parse_matrix(&text).map_err(|e| Failure::Parse(e.to_string()))?;
                    check_field_override(matrix.field(), &cli.field)?;
                    matrix
                        .validate()
                        .map_err(|e| Failure::Validation(e.to_string()))?;
                    let verdict = if matrix.is_minimal() {
                        "valid, minimal"
                    } else if matrix.is_generator_minimal() {
                        "valid, generator-minimal, not cogenerator-minimal"
                    } else {
                        "valid, not generator-minimal"
                    };
                    emit(&cli.output, &format!("{verdict}\n"))
                }
            }
        }
        Cmd::Hilbert { degree_box, input } => {
            let matrix = load_matrix(input, &cli.field)?;
            let n = matrix.nvars();
            let span = match degree_box {
                Some(text) => {
                    let vals: Vec<i64> = text
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse()
                                .map_err(|_| Failure::Parse(format!("bad --box coordinate `{s}`")))
                        })
                        .collect::<Result<_, _>>()?;
                    if vals.len() != 2 * n {
                        return Err(Failure::Parse(format!(
                            "--box needs {} integers for {} variables, got {}",
                            2 * n,
                            n,
                            vals.len()
                        )));
                    }
                    Some((
                        Degree::from_slice(&vals[..n]),
                        Degree::from_slice(&vals[n..]),
                    ))
                }
                None => matrix.natural_box(),
            };
            let mut table = String::new();
            if let Some((lo, hi)) = span {
                table = degree_table(
                    box_degrees(&lo, &hi)
                        .into_iter()
                        .map(|g| {
                            let dim = matrix.image_dim(&g);
                            (g, dim)
                        })
                        .filter(|(_, dim)| *dim > 0),
                );
            }
            emit(&cli.output, &table)
        }
        Cmd::Betti { input } => {
            let module = load_module(input, &cli.field)?;
            let mut out = String::from("generators\n");
            out.push_str(&degree_table(module.betti0().into_iter()));
            out.push_str("cogenerators\n");
            out.push_str(&degree_table(module.socle().into_iter()));
            emit(&cli.output, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
