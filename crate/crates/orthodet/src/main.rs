//! Command-line front end: batch computation of orthogonal determinants of
//! exact matrix representations, with a built-in catalog and JSON reports
//! on stdout (diagnostics on stderr, distinct exit codes per error family).

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use orthodet::catalog::{self, CatalogError};
use orthodet::exactla::{LaError, Polynomial};
use orthodet::jsonio;
use orthodet::numfield::{
    same_class, FieldElement, NumFieldError, SquareClass,
};
use orthodet::repkit::{
    self, det_via_isometry, enumerate_group, find_invertible_skew, fs_indicator,
    has_square_root_of_minus_one, induced_determinant_formula, induced_split_extension,
    invariant_symmetric_forms, orthogonal_determinant_with_config,
    verify_automorphism_order_two, GroupWord, RepKitError, Representation, SearchConfig,
    DEFAULT_ENUMERATION_CAP,
};

#[derive(Parser)]
#[command(
    name = "orthodet",
    about = "Exact orthogonal determinants of finite group representations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orthogonal determinant via the invertible skew-adjoint element search
    Orthodet {
        /// Catalog name or path to a representation JSON file
        input: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        budget: usize,
        /// Reports are always JSON; accepted for interface stability
        #[arg(long)]
        json: bool,
    },
    /// Isometry shortcut: the class of P(1)·P(−1) for a characteristic polynomial
    Cyc {
        /// Polynomial like "x^6+x^5+x^4+x^3+x^2+x+1"
        poly: Option<String>,
        /// Representation input; the polynomial is taken from --word
        #[arg(long)]
        input: Option<String>,
        /// Group word like "g0 g1^-1", used with --input
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Split-extension determinant: closed formula and/or explicit construction
    Induce {
        /// Catalog name or representation file (construct-and-verify mode)
        input: Option<String>,
        /// Automorphism file: JSON list of generator-image words
        #[arg(long)]
        alpha: Option<String>,
        /// Evaluate only the closed formula (needs --n and --delta)
        #[arg(long)]
        formula_only: bool,
        #[arg(long)]
        n: Option<usize>,
        /// Generator of the quadratic character-field extension, e.g. "5"
        #[arg(long)]
        delta: Option<String>,
        /// Character field does not extend
        #[arg(long)]
        fields_equal: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Reduced-norm path for doubled representations of Schur-index-2 characters
    Schur2 {
        input: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify a representation: closure, indicator, invariant forms
    Check {
        input: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Catalog access
    Catalog {
        #[command(subcommand)]
        sub: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List all entry names
    List,
    /// Print a catalog representation as JSON
    Emit { name: String },
}

// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    Input(String),
    Rep(RepKitError),
    Disagreement,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Rep(e) => write!(f, "{e}"),
            CliError::Disagreement => {
                write!(f, "formula and construction disagree on the determinant class")
            }
        }
    }
}

impl From<RepKitError> for CliError {
    fn from(e: RepKitError) -> Self {
        CliError::Rep(e)
    }
}

impl From<NumFieldError> for CliError {
    fn from(e: NumFieldError) -> Self {
        CliError::Rep(RepKitError::Field(e))
    }
}

impl From<LaError> for CliError {
    fn from(e: LaError) -> Self {
        CliError::Rep(RepKitError::La(e))
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Unknown(n) => CliError::Input(format!("unknown catalog entry {n:?}")),
            CatalogError::Rep(e) => CliError::Rep(e),
        }
    }
}

/// Distinct exit code per documented error family.
fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Input(_) => 2,
        CliError::Disagreement => 10,
        CliError::Rep(e) => match e {
            RepKitError::OddDegree => 3,
            RepKitError::BudgetExhausted { .. } => 4,
            RepKitError::CapExceeded { .. } => 5,
            RepKitError::NotPerfectSquare => 6,
            RepKitError::ShortcutInapplicable => 7,
            RepKitError::Field(NumFieldError::FactorizationBudget) => 8,
            RepKitError::NotOrthogonal => 9,
            RepKitError::AutomorphismInvalid => 10,
            RepKitError::DeterminantNotOne => 11,
            RepKitError::InconsistentDelta => 12,
            RepKitError::SingularGenerator(_) | RepKitError::ZeroDegree => 13,
            RepKitError::WordOutOfRange(_) | RepKitError::WordParse(_) => 2,
            RepKitError::Field(_) | RepKitError::La(_) => 2,
            _ => 1,
        },
    }
}

fn load_representation(input: &str) -> Result<Representation, CliError> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::Input(format!("cannot read {input}: {e}")))?;
        jsonio::representation_from_json(&text)
            .map_err(|e| CliError::Input(format!("cannot parse {input}: {e}")))
    } else {
        Ok(catalog::build(input)?)
    }
}

fn emit(report: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&report).expect("report"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Orthodet {
            input,
            seed,
            budget,
            json: _,
        } => {
            let rep = load_representation(&input)?;
            let config = SearchConfig {
                budget,
                ..SearchConfig::default()
            };
            let class = orthogonal_determinant_with_config(&rep, seed, &config)?;
            let warn = !rep.field().is_totally_real();
            emit(json!({
                "input": rep.label(),
                "class": class.to_string(),
                "totally_positive": true,
                "totally_real_field": !warn,
                "method": "skew-search",
                "seed": seed,
            }));
            Ok(())
        }
        Command::Cyc {
            poly,
            input,
            word,
            json: _,
        } => {
            let p = match (poly, input, word) {
                (Some(text), None, None) => Polynomial::parse(&text, None)
                    .map_err(|e| CliError::Input(format!("cannot parse polynomial: {e}")))?,
                (None, Some(input), Some(word)) => {
                    let rep = load_representation(&input)?;
                    let w = GroupWord::parse(&word)?;
                    repkit::element(&rep, &w)?.charpoly()?
                }
                _ => {
                    return Err(CliError::Input(
                        "pass either a polynomial or --input with --word".into(),
                    ))
                }
            };
            let class = det_via_isometry(&p)?;
            emit(json!({
                "charpoly": p.to_string(),
                "class": class.to_string(),
                "method": "isometry-charpoly",
            }));
            Ok(())
        }
        Command::Induce {
            input,
            alpha,
            formula_only,
            n,
            delta,
            fields_equal,
            seed,
            cap,
            json: _,
        } => {
            if formula_only {
                let n = n.ok_or_else(|| CliError::Input("--formula-only needs --n".into()))?;
                let delta_el = match (&delta, fields_equal) {
                    (_, true) => FieldElement::from_int(1),
                    (Some(d), false) => orthodet::numfield::parse_field_element(d, None)
                        .map_err(|e| CliError::Input(format!("cannot parse delta: {e}")))?,
                    (None, false) => {
                        return Err(CliError::Input("--formula-only needs --delta".into()))
                    }
                };
                let class = induced_determinant_formula(n, fields_equal, &delta_el)?;
                emit(json!({
                    "method": "formula",
                    "n": n,
                    "fields_equal": fields_equal,
                    "class": class.to_string(),
                }));
                return Ok(());
            }
            let input = input
                .ok_or_else(|| CliError::Input("construct-and-verify needs an input".into()))?;
            let rep = load_representation(&input)?;
            let alpha = match alpha {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
                    jsonio::automorphism_from_json(&text)
                        .map_err(|e| CliError::Input(format!("cannot parse {path}: {e}")))?
                }
                None if rep.label() == "a5-deg3" => catalog::a5_outer_automorphism(),
                None => return Err(CliError::Input("--alpha is required for this input".into())),
            };
            verify_automorphism_order_two(&rep, &alpha, cap)?;
            // the character field drops to the rationals; delta generates it
            let (fields_equal, delta_el) = match rep.field().d() {
                None => (true, FieldElement::from_int(1)),
                Some(d) => (false, FieldElement::from_int(d)),
            };
            let formula = induced_determinant_formula(rep.degree(), fields_equal, &delta_el)?;
            let ext = induced_split_extension(&rep, &alpha)?;
            // determinants of rational combinations of Ρ(g) − Ρ(g⁻¹) land in
            // the small field already; extract the rational value
            let x = find_invertible_skew(&ext, seed, &SearchConfig::default())?;
            let d = x.det()?;
            let dr = d.to_rational().ok_or(CliError::Disagreement)?;
            let construction = orthodet::numfield::normalize_class(&SquareClass::new(
                FieldElement::from_rational(dr),
            )?)?;
            let agreement = same_class(&formula, &construction)?;
            if !agreement {
                return Err(CliError::Disagreement);
            }
            emit(json!({
                "input": rep.label(),
                "extension_degree": ext.degree(),
                "formula_class": formula.to_string(),
                "construction_class": construction.to_string(),
                "agreement": agreement,
                "seed": seed,
            }));
            Ok(())
        }
        Command::Schur2 {
            input,
            seed,
            budget,
            json: _,
        } => {
            let rep = load_representation(&input)?;
            let config = SearchConfig {
                budget,
                ..SearchConfig::default()
            };
            let class =
                repkit::schur_index_two_determinant_with_config(&rep, seed, &config)?;
            emit(json!({
                "input": rep.label(),
                "class": class.to_string(),
                "method": "reduced-norm",
                "seed": seed,
            }));
            Ok(())
        }
        Command::Check { input, cap, json: _ } => {
            let rep = load_representation(&input)?;
            let order = enumerate_group(&rep, cap)?.len();
            let indicator = fs_indicator(&rep, cap)?;
            let forms = invariant_symmetric_forms(&rep);
            let sqrt_minus_one = has_square_root_of_minus_one(&rep, cap)?;
            emit(json!({
                "input": rep.label(),
                "degree": rep.degree(),
                "field": rep.field().to_string(),
                "generators_invertible": true,
                "group_order": order,
                "fs_indicator": indicator,
                "invariant_form_dimension": forms.len(),
                "has_square_root_of_minus_one": sqrt_minus_one,
            }));
            Ok(())
        }
        Command::Catalog { sub } => match sub {
            CatalogCommand::List => {
                let mut names = catalog::names();
                names.push("double:<name>");
                emit(json!({ "entries": names }));
                Ok(())
            }
            CatalogCommand::Emit { name } => {
                let rep = catalog::build(&name)?;
                println!("{}", jsonio::representation_to_json(&rep));
                Ok(())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
