//! `sullivan` — exact computations with Sullivan minimal algebras over ℚ.
//!
//! Exit codes: 0 on success/Holds, 1 on Fails or diagnostics, 2 when the
//! answer is Undetermined at the recorded bounds.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sullivan_cli::corpus;
use sullivan_cli::parser::{parse_model, Diagnostic};
use sullivan_cli::report::{
    build_report, default_max_degree, ellipticity_report, page_entries, to_json, to_table,
    verdict_report, Report, DEFAULT_WINDOW_FACTOR,
};
use sullivan_core::cohomology::{bigraded_dims, ellipticity_verdict, Complex, EllipticityStatus};
use sullivan_core::conjecture::{
    e0gap_check, hilali_check, lupton_sequence_check, nogap_check,
    Conclusion, TheoremVerdict,
};
use sullivan_core::model::SullivanModel;
use sullivan_core::spectral::{e0_of_class, e0_spectrum_direct, toomer, SpectralEngine};

#[derive(Parser)]
#[command(
    name = "sullivan",
    version,
    about = "Exact cohomology, word-length spectral sequences, and theorem checks for Sullivan minimal algebras"
)]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// A model argument: a file path or `corpus:<id>`.
#[derive(Args)]
struct ModelArg {
    /// Model file in the model language, or `corpus:<id>`.
    model: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a model, reporting diagnostics.
    Validate(ModelArg),
    /// Cohomology dimensions up to a degree bound.
    Cohomology {
        #[command(flatten)]
        model: ModelArg,
        /// Top degree (default: formal dimension when meaningful).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Word-length splitting of cohomology (length-homogeneous d only).
    Bigraded {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Dimensions of one spectral-sequence page.
    Page {
        #[command(flatten)]
        model: ModelArg,
        /// Page index r >= 1.
        #[arg(long)]
        r: usize,
        /// Top total degree.
        #[arg(long)]
        max_total: Option<usize>,
    },
    /// Dimensions of the limit term E_inf.
    Einfty {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        max_total: Option<usize>,
    },
    /// Toomer invariant via the limit columns, with the closed-form value.
    Toomer(ModelArg),
    /// e0 of a class, or the full e0 spectrum.
    E0 {
        #[command(flatten)]
        model: ModelArg,
        /// Cocycle expression in the model language's polynomial syntax.
        #[arg(long)]
        class: Option<String>,
    },
    /// Window-certified ellipticity verdict.
    Elliptic {
        #[command(flatten)]
        model: ModelArg,
        /// Window factor (window = max(F*N, N + top generator degree)).
        #[arg(long, default_value_t = DEFAULT_WINDOW_FACTOR)]
        window: usize,
    },
    /// dim H >= dim V for elliptic models.
    Hilali(ModelArg),
    /// No gaps in the limit-term columns 0..e.
    Nogaps(ModelArg),
    /// The e0 spectrum equals {0..e}.
    E0gaps(ModelArg),
    /// Bigraded degree-sequence chains on homogeneous elliptic models.
    Lupton(ModelArg),
    /// Everything: invariants, tables, pages, verdicts.
    Report {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Built-in corpus operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List corpus models with descriptions and tags.
    List,
    /// Run full reports over the corpus.
    Run {
        /// Only models carrying this tag.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load_model(arg: &ModelArg) -> Result<(SullivanModel, String), String> {
    if let Some(id) = arg.model.strip_prefix("corpus:") {
        let entry = corpus::find(id)
            .ok_or_else(|| format!("unknown corpus model `{id}` (see `sullivan corpus list`)"))?;
        return Ok((corpus::load(entry), entry.id.to_string()));
    }
    let text = std::fs::read_to_string(&arg.model)
        .map_err(|e| format!("cannot read `{}`: {e}", arg.model))?;
    match parse_model(&text) {
        Ok(model) => Ok((model, arg.model.clone())),
        Err(diags) => Err(render_diagnostics(&arg.model, &diags)),
    }
}

fn render_diagnostics(source: &str, diags: &[Diagnostic]) -> String {
    let mut out = String::new();
    for (i, d) in diags.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("{source}:{}", d.render()));
    }
    out
}

fn verdict_exit(v: &TheoremVerdict) -> ExitCode {
    match &v.conclusion {
        Conclusion::Fails { .. } => ExitCode::from(1),
        Conclusion::Undetermined { .. } => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}

fn emit_verdict(format: Format, check: &str, v: &TheoremVerdict) -> ExitCode {
    let report = verdict_report(check, v);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("verdicts serialize")
        ),
        Format::Table => {
            println!("{}: {}", check, report.conclusion);
            if let Some(d) = &report.detail {
                println!("  {d}");
            }
            for h in &report.hypotheses {
                println!(
                    "  hypothesis [{}] {}: {}",
                    if h.satisfied { "ok" } else { "not met" },
                    h.name,
                    h.evidence
                );
            }
            for (k, val) in &report.evidence {
                println!("  {k} = {val}");
            }
        }
    }
    verdict_exit(v)
}

fn emit_report(format: Format, report: &Report) {
    match format {
        Format::Json => print!("{}", to_json(report)),
        Format::Table => print!("{}", to_table(report)),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate(arg) => {
            let (model, name) = load_model(&arg)?;
            let gens = model.algebra().len();
            println!("{name}: valid minimal model with {gens} generator(s)");
            Ok(ExitCode::SUCCESS)
        }
        Command::Cohomology { model, max_degree } => {
            let (model, _) = load_model(&model)?;
            let bound = max_degree.unwrap_or_else(|| default_max_degree(&model));
            let complex = Complex::new(model.algebra(), model.differential());
            let dims: Vec<usize> = (0..=bound).map(|n| complex.dim_h(n)).collect();
            match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({ "max_degree": bound, "dims": dims });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Table => {
                    for (n, d) in dims.iter().enumerate() {
                        println!("H^{n} = {d}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bigraded { model, max_degree } => {
            let (model, _) = load_model(&model)?;
            let bound = max_degree.unwrap_or_else(|| default_max_degree(&model));
            let mut rows: Vec<BTreeMap<usize, usize>> = Vec::new();
            for n in 0..=bound {
                rows.push(
                    bigraded_dims(model.algebra(), model.differential(), n)
                        .map_err(|e| format!("bigraded cohomology undefined: {e}"))?,
                );
            }
            match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({ "max_degree": bound, "bigraded": rows });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Table => {
                    for (n, row) in rows.iter().enumerate() {
                        let cells: Vec<String> = row
                            .iter()
                            .filter(|(_, &d)| d > 0)
                            .map(|(p, d)| format!("H^{n}_{p}={d}"))
                            .collect();
                        if !cells.is_empty() {
                            println!("{}", cells.join(" "));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Page {
            model,
            r,
            max_total,
        } => {
            let (model, _) = load_model(&model)?;
            if r == 0 {
                return Err("page index r must be >= 1".into());
            }
            let bound = max_total.unwrap_or_else(|| default_max_degree(&model));
            let engine = SpectralEngine::new(&model);
            let entries = page_entries(&engine, r, bound);
            emit_page(cli.format, r, bound, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Einfty { model, max_total } => {
            let (model, _) = load_model(&model)?;
            let bound = max_total.unwrap_or_else(|| default_max_degree(&model));
            let engine = SpectralEngine::new(&model);
            let mut entries = Vec::new();
            for n in 0..=bound {
                for (p, dim) in engine.e_infinity_dims(n) {
                    entries.push((p, n - p, dim));
                }
            }
            emit_page(cli.format, 0, bound, &entries);
            Ok(ExitCode::SUCCESS)
        }
        Command::Toomer(arg) => {
            let (model, _) = load_model(&arg)?;
            let verdict = ellipticity_verdict(&model, DEFAULT_WINDOW_FACTOR);
            let (elliptic_n, bound) = if verdict.is_elliptic() {
                let n = verdict.n_formula as usize;
                (Some(n), n)
            } else {
                (None, default_max_degree(&model))
            };
            let t = toomer(&model, elliptic_n, bound);
            let e = model.invariants().e_formula;
            match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "toomer": t.value,
                        "bound": t.bound,
                        "certified": t.certified,
                        "e_formula": e,
                        "agrees_with_formula": e.map(|e| e == t.value),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Table => {
                    println!(
                        "toomer = {} (bound {}, certified {})",
                        t.value, t.bound, t.certified
                    );
                    if let Some(e) = e {
                        println!("formula e = {e}, agree = {}", e == t.value);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::E0 { model, class } => {
            let (model, _) = load_model(&model)?;
            match class {
                Some(expr) => {
                    let poly = parse_class(&model, &expr)?;
                    let e0 = e0_of_class(&model, &poly).map_err(|e| format!("{e:?}"))?;
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&serde_json::json!({ "e0": e0 })).unwrap()
                        ),
                        Format::Table => println!("e0 = {e0}"),
                    }
                }
                None => {
                    let verdict = ellipticity_verdict(&model, DEFAULT_WINDOW_FACTOR);
                    if !verdict.is_elliptic() {
                        return Err(format!(
                            "e0 spectrum needs a certified elliptic model: {}",
                            verdict.reason
                        ));
                    }
                    let spectrum: Vec<usize> =
                        e0_spectrum_direct(&model, verdict.n_formula as usize)
                            .into_iter()
                            .collect();
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(
                                &serde_json::json!({ "e0_spectrum": spectrum })
                            )
                            .unwrap()
                        ),
                        Format::Table => println!("e0 spectrum: {spectrum:?}"),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Elliptic { model, window } => {
            let (model, _) = load_model(&model)?;
            let verdict = ellipticity_verdict(&model, window);
            let report = ellipticity_report(&model, &verdict);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("verdicts serialize")
                ),
                Format::Table => {
                    println!("{} (window {}): {}", report.status, report.window, report.reason);
                    if let Some(w) = &report.witness {
                        println!("  witness: {w}");
                    }
                }
            }
            Ok(match verdict.status {
                EllipticityStatus::Elliptic => ExitCode::SUCCESS,
                EllipticityStatus::NotElliptic => ExitCode::from(1),
                EllipticityStatus::Undetermined => ExitCode::from(2),
            })
        }
        Command::Hilali(arg) => {
            let (model, _) = load_model(&arg)?;
            Ok(emit_verdict(
                cli.format,
                "hilali",
                &hilali_check(&model, DEFAULT_WINDOW_FACTOR),
            ))
        }
        Command::Nogaps(arg) => {
            let (model, _) = load_model(&arg)?;
            Ok(emit_verdict(
                cli.format,
                "nogaps",
                &nogap_check(&model, DEFAULT_WINDOW_FACTOR),
            ))
        }
        Command::E0gaps(arg) => {
            let (model, _) = load_model(&arg)?;
            Ok(emit_verdict(
                cli.format,
                "e0gaps",
                &e0gap_check(&model, DEFAULT_WINDOW_FACTOR),
            ))
        }
        Command::Lupton(arg) => {
            let (model, _) = load_model(&arg)?;
            Ok(emit_verdict(
                cli.format,
                "lupton",
                &lupton_sequence_check(&model, DEFAULT_WINDOW_FACTOR),
            ))
        }
        Command::Report { model, max_degree } => {
            let (model, name) = load_model(&model)?;
            let report = build_report(&model, &name, max_degree, DEFAULT_WINDOW_FACTOR);
            emit_report(cli.format, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for entry in corpus::CORPUS {
                    println!("{:<10} {}  [{}]", entry.id, entry.description, entry.tags.join(", "));
                }
                Ok(ExitCode::SUCCESS)
            }
            CorpusAction::Run { filter } => {
                let mut worst = ExitCode::SUCCESS;
                for entry in corpus::CORPUS {
                    if let Some(tag) = &filter {
                        if !entry.tags.contains(&tag.as_str()) {
                            continue;
                        }
                    }
                    let model = corpus::load(entry);
                    let report = build_report(&model, entry.id, None, DEFAULT_WINDOW_FACTOR);
                    emit_report(cli.format, &report);
                    for v in &report.verdicts {
                        if v.conclusion == "fails" {
                            worst = ExitCode::from(1);
                        }
                    }
                }
                Ok(worst)
            }
        },
    }
}

fn emit_page(format: Format, r: usize, bound: usize, entries: &[(usize, usize, usize)]) {
    let label = if r == 0 {
        "einfty".to_string()
    } else {
        format!("page r={r}")
    };
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "r": if r == 0 { serde_json::Value::Null } else { r.into() },
                "max_total": bound,
                "entries": entries,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Table => {
            if entries.is_empty() {
                println!("{label}: 0 through total degree {bound}");
            } else {
                for (p, q, d) in entries {
                    println!("{label}: E[{p},{q}] = {d}");
                }
            }
        }
    }
}

/// Parses a class expression with the model-language polynomial grammar
/// over the model's own generators.
fn parse_class(
    model: &SullivanModel,
    expr: &str,
) -> Result<sullivan_core::Polynomial, String> {
    sullivan_cli::parser::parse_polynomial_in(model.algebra(), expr).map_err(|d| d.render())
}
