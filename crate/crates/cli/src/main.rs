use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bellcheck::gallery::{self, Artifact, SizeCaps};
use bellcheck::io::{self, ChshDoc, ConjectureDoc, GalleryDoc, GalleryItemDoc, ModelFile, ReportDoc, StrategyWeight};
use bellcheck::locality::test_equivalence_conjecture;
use bellcheck::polytope::{
    behavior_from_model, chsh_value, format_signs, lhv_membership, BehaviorTable, LhvVerdict, NonLocalWitness,
};
use bellcheck::rational;
use bellcheck::suite::{run_suite, Outcome, Suite};
use bellcheck::Error;

mod render;

#[derive(Parser)]
#[command(
    name = "bellcheck",
    version,
    about = "Check locality conditions on finite stochastic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks on a model file.
    Check {
        model: PathBuf,
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        /// Past selector override: mutual | joint | past-a | past-b |
        /// slice:<name> | srla:<name> | custom:<region>
        #[arg(long)]
        past: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// CHSH value and local-polytope membership of a model or behavior table.
    Chsh {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Random search for models separating Bell locality from slice-based
    /// locality.
    Conjecture {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        #[arg(long, default_value_t = 8)]
        max_histories: usize,
        #[arg(long, default_value_t = 6)]
        max_generators: usize,
        /// Directory for counterexample model files and the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List or emit named models.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a gallery model (JSON) or behavior table (text) to a file.
    Emit { name: String, path: PathBuf },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            model,
            suite,
            past,
            format,
        } => cmd_check(&model, &suite, past.as_deref(), format),
        Command::Chsh { input, format } => cmd_chsh(&input, format),
        Command::Conjecture {
            seed,
            trials,
            max_points,
            max_histories,
            max_generators,
            out,
            format,
        } => {
            let caps = SizeCaps {
                max_points,
                max_histories,
                max_generators,
            };
            cmd_conjecture(seed, trials, &caps, out.as_deref(), format)
        }
        Command::Gallery { action } => cmd_gallery(action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_check(path: &Path, suite: &str, past: Option<&str>, format: Format) -> Result<u8, Error> {
    let file = ModelFile::from_json(&read(path)?)?;
    let loaded = file.build()?;
    let digest = file.digest()?;
    let suite = Suite::parse(suite).expect("clap restricts suite names");
    let outcomes = run_suite(&loaded, suite, past)?;
    let model = &loaded.model;
    let failed = outcomes.iter().any(|o| o.verdict_str() == "fail");
    match format {
        Format::Machine => {
            let checks = outcomes
                .iter()
                .map(|o| match o {
                    Outcome::Ran(r) => io::check_doc(Some(model), r),
                    Outcome::Skipped { condition, reason } => io::skipped_doc(condition, reason),
                })
                .collect();
            print!("{}", json(&ReportDoc::new(model, digest, checks)));
        }
        Format::Text => print!("{}", render::check_text(path, model, &digest, &outcomes)),
    }
    Ok(if failed { EXIT_FAIL } else { 0 })
}

fn load_table(path: &Path) -> Result<(BehaviorTable, Option<String>), Error> {
    let text = read(path)?;
    if !text.trim_start().starts_with('{') {
        return Ok((BehaviorTable::parse(&text)?, None));
    }
    let file = ModelFile::from_json(&text)?;
    let loaded = file.build()?;
    let scen = loaded
        .scenario
        .as_ref()
        .ok_or_else(|| Error::Precondition("the model declares no two-wing scenario".into()))?;
    Ok((behavior_from_model(&loaded.model, scen)?, Some(file.digest()?)))
}

fn cmd_chsh(path: &Path, format: Format) -> Result<u8, Error> {
    let (table, digest) = load_table(path)?;
    let chsh = chsh_value(&table);
    let verdict = lhv_membership(&table);
    let mut doc = ChshDoc {
        schema: io::CHSH_SCHEMA.into(),
        tool_version: io::TOOL_VERSION.into(),
        model_digest: digest,
        value: rational::format(&chsh.value),
        decimal: format!("{:.6}", rational::to_f64(&chsh.value)),
        signs: format_signs(&chsh.signs),
        lhv: if verdict.is_local() { "member" } else { "not-member" }.into(),
        decomposition: Vec::new(),
        violated_facet: None,
        signalling: None,
    };
    match &verdict {
        LhvVerdict::Local(d) => {
            doc.decomposition = d
                .support()
                .into_iter()
                .map(|(strategy, w)| StrategyWeight {
                    strategy,
                    weight: rational::format(w),
                })
                .collect();
        }
        LhvVerdict::NotLocal(NonLocalWitness::ChshFacet { signs, .. }) => {
            doc.violated_facet = Some(format!("{} <= 2", format_signs(signs)));
        }
        LhvVerdict::NotLocal(NonLocalWitness::Signalling(w)) => doc.signalling = Some(io::witness_doc(None, w)),
        LhvVerdict::NotLocal(NonLocalWitness::Unclassified) => {}
    }
    match format {
        Format::Machine => print!("{}", json(&doc)),
        Format::Text => print!("{}", render::chsh_text(&doc)),
    }
    Ok(0)
}

fn cmd_conjecture(seed: u64, trials: usize, caps: &SizeCaps, out: Option<&Path>, format: Format) -> Result<u8, Error> {
    let report = test_equivalence_conjecture(seed, trials, caps)?;
    let doc = ConjectureDoc {
        schema: io::CONJECTURE_SCHEMA.into(),
        tool_version: io::TOOL_VERSION.into(),
        report,
    };
    let mut written = Vec::new();
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
        for c in &doc.report.counterexamples {
            let p = dir.join(format!("counterexample-{}.json", c.trial));
            write(&p, &c.model.to_json_pretty())?;
            written.push(p);
        }
        write(&dir.join("conjecture.json"), &json(&doc))?;
    }
    match format {
        Format::Machine => print!("{}", json(&doc)),
        Format::Text => print!("{}", render::conjecture_text(&doc.report, &written)),
    }
    Ok(if doc.report.counterexamples.is_empty() {
        0
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn cmd_gallery(action: GalleryAction) -> Result<u8, Error> {
    match action {
        GalleryAction::List { format } => {
            let entries = gallery::entries();
            match format {
                Format::Machine => {
                    let doc = GalleryDoc {
                        schema: io::GALLERY_SCHEMA.into(),
                        tool_version: io::TOOL_VERSION.into(),
                        entries: entries
                            .iter()
                            .map(|e| GalleryItemDoc {
                                name: e.name.into(),
                                summary: e.summary.into(),
                            })
                            .collect(),
                    };
                    print!("{}", json(&doc));
                }
                Format::Text => {
                    for e in &entries {
                        println!("{:<30} {}", e.name, e.summary);
                    }
                }
            }
        }
        GalleryAction::Emit { name, path } => {
            let text = match gallery::lookup(&name)?.build() {
                Artifact::Model(f) => f.to_json_pretty(),
                Artifact::Behavior(t) => t.to_text(),
            };
            write(&path, &text)?;
        }
    }
    Ok(0)
}
