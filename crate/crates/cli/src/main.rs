use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ontoforge::builds;
use ontoforge::iscn::parse_iscn;
use ontoforge::karyotype::{format_stats, karyotype_stats, BandDataset};
use ontoforge::serializer::{read_functional_subset, serialize, Format, NameStyle, SerializationConfig, SortOrder};
use ontoforge::sio::load_atoms;
use ontoforge::validate::{validate, ValidationOptions, ValidationReport};
use ontoforge::{Iri, Ontology};

#[derive(Parser)]
#[command(name = "ontoforge", version, about = "Build OWL ontologies from design patterns")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output syntax.
    #[arg(long, value_enum, default_value_t = FormatArg::Functional, global = true)]
    format: FormatArg,

    /// Axiom and frame order.
    #[arg(long, value_enum, default_value_t = SortArg::Canonical, global = true)]
    sort: SortArg,

    /// Name entities by their labels in Manchester output.
    #[arg(long, global = true)]
    labels: bool,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Namespace for generated entities.
    #[arg(long, env = "ONTOFORGE_NS", global = true)]
    namespace: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Functional,
    Manchester,
}

#[derive(Clone, Copy, ValueEnum)]
enum SortArg {
    Canonical,
    Insertion,
}

#[derive(Subcommand)]
enum Command {
    /// Pizza ontology.
    Pizza {
        #[command(subcommand)]
        action: PizzaAction,
    },
    /// Human chromosome and band ontology.
    Karyotype {
        #[command(subcommand)]
        action: KaryotypeAction,
    },
    /// ISCN karyotype strings.
    Iscn {
        #[command(subcommand)]
        action: IscnAction,
    },
    /// SIO pattern showcase.
    Sio {
        #[command(subcommand)]
        action: SioAction,
    },
    /// Chromosome statistics table for a functional-syntax file.
    Stats { file: PathBuf },
    /// Structural checks on a functional-syntax file. Exits 3 on findings.
    Validate {
        file: PathBuf,
        /// Check that universal restrictions close over the existentials.
        #[arg(long)]
        require_closure: bool,
        /// Annotation property every audited class must carry.
        #[arg(long = "require-annotation", value_name = "IRI")]
        require_annotation: Vec<String>,
        /// Only audit classes below this one.
        #[arg(long, value_name = "IRI")]
        scope: Option<String>,
    },
}

#[derive(Subcommand)]
enum PizzaAction {
    /// Scaffold, toppings and named pizzas.
    Build {
        /// Pizza list, one pizza per line: name then toppings.
        #[arg(long)]
        pizzas: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KaryotypeAction {
    /// Chromosome scaffold, bands, centromeres and telomeres.
    Build {
        /// Band dataset as JSON.
        #[arg(long)]
        bands: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IscnAction {
    /// Compile a karyotype string into a karyotype class.
    Compile {
        iscn: String,
        /// Band dataset, needed for inversions.
        #[arg(long)]
        bands: Option<PathBuf>,
    },
    /// Parse a karyotype string and print its structure as JSON.
    Check { iscn: String },
}

#[derive(Subcommand)]
enum SioAction {
    /// Scaffold, atoms and a glycolysis pathway.
    Demo {
        /// Atom list as JSON.
        #[arg(long)]
        atoms: Option<PathBuf>,
    },
}

enum Failure {
    Build(String),
    Findings(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Build(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Build(format!("{}: {e}", path.display())))
}

fn bands(path: Option<&Path>) -> Result<Option<BandDataset>, Failure> {
    match path {
        Some(p) => Ok(Some(BandDataset::from_json(&read(p)?)?)),
        None => Ok(None),
    }
}

impl GlobalOpts {
    fn config(&self) -> SerializationConfig {
        SerializationConfig {
            format: match self.format {
                FormatArg::Functional => Format::Functional,
                FormatArg::Manchester => Format::Manchester,
            },
            sort: match self.sort {
                SortArg::Canonical => SortOrder::Canonical,
                SortArg::Insertion => SortOrder::InsertionOrder,
            },
            names: if self.labels { NameStyle::Label } else { NameStyle::Fragment },
        }
    }

    fn ns(&self) -> Option<&str> {
        self.namespace.as_deref()
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Build(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_ontology(&self, ont: &Ontology) -> Result<(), Failure> {
        self.emit(&serialize(ont, &self.config())?)
    }
}

fn report_text(report: &ValidationReport) -> String {
    let mut out = String::new();
    for iri in &report.undeclared {
        out.push_str(&format!("undeclared\t<{iri}>\n"));
    }
    for f in &report.closure {
        out.push_str(&format!(
            "open-closure\t<{}>\t<{}>\tsome: {}\tonly: {}\n",
            f.class,
            f.property,
            f.existential.join(" "),
            f.universal.join(" ")
        ));
    }
    for f in &report.annotations {
        out.push_str(&format!("missing-annotation\t<{}>\t<{}>\n", f.class, f.missing));
    }
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match cli.command {
        Command::Pizza {
            action: PizzaAction::Build { pizzas },
        } => {
            let list = match pizzas {
                Some(p) => read(&p)?,
                None => builds::NAMED_PIZZAS.to_string(),
            };
            g.emit_ontology(&builds::pizza_ontology(&list, g.ns())?)
        }
        Command::Karyotype {
            action: KaryotypeAction::Build { bands: path },
        } => {
            let dataset = bands(path.as_deref())?;
            g.emit_ontology(&builds::karyotype_ontology(dataset.as_ref(), g.ns())?)
        }
        Command::Iscn {
            action: IscnAction::Compile { iscn, bands: path },
        } => {
            let dataset = bands(path.as_deref())?;
            let (ont, class) = builds::iscn_ontology(&iscn, dataset.as_ref(), g.ns())?;
            g.emit_ontology(&ont.fragment(&class))
        }
        Command::Iscn {
            action: IscnAction::Check { iscn },
        } => {
            let k = parse_iscn(&iscn)?;
            g.emit(&format!("{}\n", serde_json::to_string_pretty(&k)?))
        }
        Command::Sio {
            action: SioAction::Demo { atoms },
        } => {
            let atoms = match atoms {
                Some(p) => load_atoms(&read(&p)?)?,
                None => load_atoms(builds::ATOMS)?,
            };
            g.emit_ontology(&builds::sio_demo(&atoms, g.ns())?)
        }
        Command::Stats { file } => {
            let ont = read_functional_subset(&read(&file)?)?;
            g.emit(&format_stats(&karyotype_stats(&ont)))
        }
        Command::Validate {
            file,
            require_closure,
            require_annotation,
            scope,
        } => {
            let ont = read_functional_subset(&read(&file)?)?;
            let required = require_annotation
                .iter()
                .map(|t| ont.resolve(t))
                .collect::<Result<BTreeSet<Iri>, _>>()?;
            let scope = scope.map(|s| ont.resolve(&s)).transpose()?;
            let opts = ValidationOptions {
                require_closure,
                required_annotations: required,
                scope,
            };
            let report = validate(&ont, &opts)?;
            let text = report_text(&report);
            g.emit(&text)?;
            if report.is_clean() {
                Ok(())
            } else {
                let n = report.undeclared.len() + report.closure.len() + report.annotations.len();
                Err(Failure::Findings(format!("{n} finding(s)")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Build(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Findings(msg)) => {
            eprintln!("validation: {msg}");
            ExitCode::from(3)
        }
    }
}
