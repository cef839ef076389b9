//! Command-line front end for `reductkit`.
//!
//! [`run`] parses arguments, executes one subcommand and writes a report.
//! It returns the process exit status instead of exiting so that tests can
//! drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use reductkit::audit::{Subject, Witness};
use reductkit::character::Evidence;
use reductkit::reducers::{Iteration, ReductTrace};
use reductkit::{
    all_reducts_bruteforce, audit_family, audit_theorems, classify_all, ea_reduce, load_table,
    verify_reduct, yao_row_wise, AttrId, AttrSet, CoveringSpace, DiscernibilityMatrix, Error,
    ErrorKind, InformationSystem, ReductDiagnosis, RelationReport, SelectionPolicy, SetFamily,
    TableOptions, DEFAULT_AUDIT_CAP, DEFAULT_ORACLE_CAP,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "reductkit",
    version,
    about = "Attribute reduction for categorical tables"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Treat the first CSV column as object labels.
    #[arg(long, global = true)]
    id_col: bool,
    /// Input kind; inferred from the file extension when omitted.
    #[arg(long, value_enum, global = true)]
    kind: Option<InputKind>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// Header row of attribute names, one object per row.
    Csv,
    /// An array of arrays of attribute names.
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Ea,
    Yao,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Select {
    First,
    Freq,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Table (CSV) or family (JSON) file.
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the pairwise discernibility matrix.
    Matrix(InputArg),
    /// Classify every attribute as core, relative necessary or unnecessary.
    Classify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_attrs: usize,
    },
    /// Construct one reduct.
    Reduct {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Algo::Ea)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = Select::First)]
        select: Select,
        /// Skip the final pass that drops redundant attributes.
        #[arg(long)]
        no_minimize: bool,
        /// Include the step-by-step trace.
        #[arg(long)]
        verbose: bool,
    },
    /// List every reduct.
    AllReducts {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_attrs: usize,
    },
    /// Finer, equivalent and coupled attribute pairs.
    Relations {
        #[command(flatten)]
        input: InputArg,
        /// Exclusion query `C->a`, with `C` a comma-separated list.
        #[arg(long = "excludes", value_name = "C->a", allow_hyphen_values = true)]
        excludes: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_attrs: usize,
    },
    /// Check the quantified characterisations by exhaustive enumeration.
    Audit {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = DEFAULT_AUDIT_CAP)]
        max_attrs: usize,
    },
    /// Minimal descriptions and neighbourhoods over the attribute covering.
    Covering(InputArg),
}

/// Resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub kind: InputKind,
    pub command: CommandConfig,
    pub format: Format,
    pub id_col: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandConfig {
    Matrix,
    Classify {
        max_attrs: usize,
    },
    Reduct {
        algo: Algo,
        select: Select,
        minimize: bool,
        verbose: bool,
    },
    AllReducts {
        max_attrs: usize,
    },
    Relations {
        excludes: Vec<String>,
        max_attrs: usize,
    },
    Audit {
        max_attrs: usize,
    },
    Covering,
}

impl CommandConfig {
    fn name(&self) -> &'static str {
        match self {
            CommandConfig::Matrix => "matrix",
            CommandConfig::Classify { .. } => "classify",
            CommandConfig::Reduct { .. } => "reduct",
            CommandConfig::AllReducts { .. } => "all-reducts",
            CommandConfig::Relations { .. } => "relations",
            CommandConfig::Audit { .. } => "audit",
            CommandConfig::Covering => "covering",
        }
    }
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Self {
        let (input, command) = match cli.command {
            Command::Matrix(i) => (i.input, CommandConfig::Matrix),
            Command::Classify { input, max_attrs } => {
                (input.input, CommandConfig::Classify { max_attrs })
            }
            Command::Reduct {
                input,
                algo,
                select,
                no_minimize,
                verbose,
            } => (
                input.input,
                CommandConfig::Reduct {
                    algo,
                    select,
                    minimize: !no_minimize,
                    verbose,
                },
            ),
            Command::AllReducts { input, max_attrs } => {
                (input.input, CommandConfig::AllReducts { max_attrs })
            }
            Command::Relations {
                input,
                excludes,
                max_attrs,
            } => (
                input.input,
                CommandConfig::Relations {
                    excludes,
                    max_attrs,
                },
            ),
            Command::Audit { input, max_attrs } => {
                (input.input, CommandConfig::Audit { max_attrs })
            }
            Command::Covering(i) => (i.input, CommandConfig::Covering),
        };
        let kind = cli.kind.unwrap_or_else(|| infer_kind(&input));
        RunConfig {
            input,
            kind,
            command,
            format: cli.format,
            id_col: cli.id_col,
        }
    }
}

fn infer_kind(path: &Path) -> InputKind {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => InputKind::Json,
        _ => InputKind::Csv,
    }
}

/// A failure carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Input => EXIT_INPUT,
            ErrorKind::Invariant => EXIT_INVARIANT,
            ErrorKind::Resource => EXIT_RESOURCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    run_config(&RunConfig::from_cli(cli), out, err)
}

pub fn run_config(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config) {
        Ok(report) => {
            let text = match config.format {
                Format::Json => report.to_json(config),
                Format::Text => report.to_text(),
            };
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            match writeln!(out, "{text}") {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "reductkit: cannot write output: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "reductkit: {}: {}", config.input.display(), f.message);
            f.code
        }
    }
}

/// Loaded input: either a full table or a bare family of discernibility sets.
enum Source {
    Table(InformationSystem),
    Family {
        names: Vec<String>,
        family: SetFamily,
    },
}

impl Source {
    fn names(&self) -> &[String] {
        match self {
            Source::Table(is) => is.attribute_names(),
            Source::Family { names, .. } => names,
        }
    }

    fn family(&self) -> SetFamily {
        match self {
            Source::Table(is) => DiscernibilityMatrix::new(is).family(),
            Source::Family { family, .. } => family.clone(),
        }
    }

    fn table(&self) -> Option<&InformationSystem> {
        match self {
            Source::Table(is) => Some(is),
            Source::Family { .. } => None,
        }
    }
}

fn load(config: &RunConfig, warnings: &mut Vec<String>) -> Outcome<Source> {
    let bytes = fs::read(&config.input).map_err(|e| Failure::input(format!("cannot read: {e}")))?;
    match config.kind {
        InputKind::Csv => {
            let is = load_table(
                bytes.as_slice(),
                TableOptions {
                    id_column: config.id_col,
                },
            )?;
            Ok(Source::Table(is))
        }
        InputKind::Json => {
            if config.id_col {
                warnings.push("--id-col has no effect on a family input".into());
            }
            parse_family(&bytes)
        }
    }
}

/// Reads `[["a","b"],["c"],...]`. The attribute universe is the sorted set
/// of names. Empty entries stand for indiscernible pairs and are skipped.
fn parse_family(bytes: &[u8]) -> Outcome<Source> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| {
        Failure::input(format!(
            "row {}, column {}: invalid JSON: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let Value::Array(entries) = value else {
        return Err(Failure::input(
            "row 1: expected an array of arrays of attribute names",
        ));
    };
    let mut raw: Vec<Vec<&str>> = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let Value::Array(items) = entry else {
            return Err(Failure::input(format!(
                "entry {}: expected an array of attribute names",
                i + 1
            )));
        };
        let mut names = Vec::with_capacity(items.len());
        for (j, item) in items.iter().enumerate() {
            match item.as_str() {
                Some(name) if !name.is_empty() => names.push(name),
                _ => {
                    return Err(Failure::input(format!(
                        "entry {}, position {}: expected a non-empty attribute name",
                        i + 1,
                        j + 1
                    )))
                }
            }
        }
        raw.push(names);
    }
    let mut names: Vec<String> = raw.iter().flatten().map(|s| s.to_string()).collect();
    names.sort();
    names.dedup();
    let family = raw
        .iter()
        .map(|entry| {
            entry
                .iter()
                .map(|n| {
                    names
                        .binary_search_by(|x| x.as_str().cmp(n))
                        .expect("name collected above")
                })
                .collect::<AttrSet>()
        })
        .collect();
    Ok(Source::Family { names, family })
}

/// What a command produced, in both renderings.
struct Report {
    attributes: Vec<String>,
    result: Value,
    text: String,
    warnings: Vec<String>,
}

impl Report {
    fn to_json(&self, config: &RunConfig) -> String {
        let doc = json!({
            "command": config.command.name(),
            "input": config.input.display().to_string(),
            "attributes": self.attributes,
            "result": self.result,
            "warnings": self.warnings,
        });
        serde_json::to_string_pretty(&doc).expect("JSON values always serialise")
    }

    fn to_text(&self) -> String {
        self.text.trim_end().to_owned()
    }
}

/// Attribute names for rendering, sorted by name.
struct Names<'a>(&'a [String]);

impl Names<'_> {
    fn of(&self, a: AttrId) -> &str {
        &self.0[a]
    }

    fn set(&self, s: &AttrSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|a| self.0[a].clone()).collect();
        v.sort();
        v
    }

    fn set_json(&self, s: &AttrSet) -> Value {
        json!(self.set(s))
    }

    fn family_json(&self, f: &SetFamily) -> Value {
        Value::Array(f.canonical().iter().map(|s| self.set_json(s)).collect())
    }

    fn set_text(&self, s: &AttrSet) -> String {
        if s.is_empty() {
            "∅".into()
        } else {
            format!("{{{}}}", self.set(s).join(", "))
        }
    }

    fn family_text(&self, f: &SetFamily) -> String {
        let parts: Vec<String> = f.canonical().iter().map(|s| self.set_text(s)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn list_text(&self, sets: &[AttrSet]) -> String {
        let parts: Vec<String> = sets.iter().map(|s| self.set_text(s)).collect();
        parts.join(", ")
    }
}

fn cap_warning(flag: usize, default: usize, warnings: &mut Vec<String>) {
    if flag > default {
        warnings.push(format!(
            "--max-attrs {flag} is above the default of {default}; enumeration is exponential in the attribute count"
        ));
    }
}

fn execute(config: &RunConfig) -> Outcome<Report> {
    let mut warnings = Vec::new();
    if let CommandConfig::Classify { max_attrs }
    | CommandConfig::AllReducts { max_attrs }
    | CommandConfig::Relations { max_attrs, .. }
    | CommandConfig::Audit { max_attrs } = &config.command
    {
        if *max_attrs == 0 {
            return Err(Failure::input("--max-attrs must be at least 1"));
        }
        let default = if matches!(config.command, CommandConfig::Audit { .. }) {
            DEFAULT_AUDIT_CAP
        } else {
            DEFAULT_ORACLE_CAP
        };
        cap_warning(*max_attrs, default, &mut warnings);
    }
    let source = load(config, &mut warnings)?;
    let names = Names(source.names());
    let (result, text) = match &config.command {
        CommandConfig::Matrix => matrix(&source, &names)?,
        CommandConfig::Classify { max_attrs } => {
            classify(&source, &names, *max_attrs, &mut warnings)?
        }
        CommandConfig::Reduct {
            algo,
            select,
            minimize,
            verbose,
        } => reduct(&source, &names, *algo, *select, *minimize, *verbose)?,
        CommandConfig::AllReducts { max_attrs } => all_reducts(&source, &names, *max_attrs)?,
        CommandConfig::Relations {
            excludes,
            max_attrs,
        } => relations(&source, &names, excludes, *max_attrs)?,
        CommandConfig::Audit { max_attrs } => audit(&source, &names, *max_attrs)?,
        CommandConfig::Covering => covering(&source, &names, &mut warnings)?,
    };
    Ok(Report {
        attributes: source.names().to_vec(),
        result,
        text,
        warnings,
    })
}

fn matrix(source: &Source, names: &Names) -> Outcome<(Value, String)> {
    let Some(is) = source.table() else {
        return Err(Failure::input(
            "the matrix command needs a CSV table, not a family",
        ));
    };
    let m = DiscernibilityMatrix::new(is);
    let labels = is.object_labels();
    let entries: Vec<Value> = m
        .pairs()
        .map(|(x, y, d)| json!({ "x": labels[x], "y": labels[y], "set": names.set_json(d) }))
        .collect();
    let result = json!({
        "objects": labels,
        "entries": entries,
        "family": names.family_json(&m.family()),
    });

    let n = labels.len();
    let mut cells = vec![vec![String::new(); n + 1]; n + 1];
    cells[0][0] = "U×U".into();
    for i in 0..n {
        cells[0][i + 1] = labels[i].clone();
        cells[i + 1][0] = labels[i].clone();
        cells[i + 1][i + 1] = "∅".into();
    }
    for (x, y, d) in m.pairs() {
        cells[x + 1][y + 1] = names.set_text(d);
    }
    let widths: Vec<usize> = (0..=n)
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut text = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}", w = *w))
            .collect();
        text.push_str(line.join("  ").trim_end());
        text.push('\n');
    }
    Ok((result, text))
}

/// Every reduct over the attributes that occur in `f`, cross-checked against
/// prime-implicant expansion.
fn oracle_reducts(f: &SetFamily, max_attrs: usize) -> Outcome<Vec<AttrSet>> {
    let reducts = all_reducts_bruteforce(f, &f.union(), max_attrs)?;
    let expanded = f.discernibility_function_reducts(max_attrs)?;
    if expanded != reducts {
        return Err(Failure::invariant(format!(
            "exhaustive search found {reducts:?} but prime-implicant expansion found {expanded:?}"
        )));
    }
    Ok(reducts)
}

fn evidence_json(names: &Names, evidence: &Evidence) -> Value {
    match evidence {
        Evidence::Core { singleton } => json!({ "singleton": names.set_json(singleton) }),
        Evidence::RelativeNecessary { blocking } => json!({ "blocking": names.set_json(blocking) }),
        Evidence::Unnecessary { witnesses } => json!({
            "witnesses": witnesses
                .iter()
                .map(|(k, m)| json!({ "member": names.set_json(k), "inside": names.set_json(m) }))
                .collect::<Vec<_>>()
        }),
    }
}

fn classify(
    source: &Source,
    names: &Names,
    max_attrs: usize,
    warnings: &mut Vec<String>,
) -> Outcome<(Value, String)> {
    let f = source.family();
    let report = classify_all(&f, names.0.len())?;
    if f.union().len() <= max_attrs {
        let reducts = oracle_reducts(&f, max_attrs)?;
        let union = reducts.iter().fold(AttrSet::new(), |acc, r| acc.union(r));
        let core = reducts[1..]
            .iter()
            .fold(reducts[0].clone(), |acc, r| acc.intersection(r));
        if core != report.core() || union != report.core().union(&report.relative_necessary()) {
            return Err(Failure::invariant(
                "attribute characters disagree with the exhaustive reduct list",
            ));
        }
    } else {
        warnings.push(format!(
            "more than {max_attrs} attributes discern objects; characters were not cross-checked against every reduct"
        ));
    }
    let mut characters = Map::new();
    let mut details = Vec::new();
    let mut text = String::new();
    for entry in &report.attributes {
        let name = names.of(entry.attribute);
        characters.insert(name.to_owned(), json!(entry.character.as_str()));
        details.push(json!({
            "name": name,
            "character": entry.character.as_str(),
            "n": names.family_json(&entry.n),
            "e": names.family_json(&entry.e),
            "evidence": evidence_json(names, &entry.evidence),
        }));
        text.push_str(&format!(
            "{name}: {}\n  N = {}\n  E = {}\n",
            entry.character,
            names.family_text(&entry.n),
            names.family_text(&entry.e)
        ));
    }
    text.push_str(&format!(
        "core: {}\nrelative necessary: {}\nunnecessary: {}\n",
        names.set_text(&report.core()),
        names.set_text(&report.relative_necessary()),
        names.set_text(&report.unnecessary())
    ));
    let result = json!({
        "characters": characters,
        "core": names.set_json(&report.core()),
        "relative_necessary": names.set_json(&report.relative_necessary()),
        "unnecessary": names.set_json(&report.unnecessary()),
        "attributes": details,
    });
    Ok((result, text))
}

fn trace_json(names: &Names, trace: &ReductTrace) -> Value {
    let steps: Vec<Value> = trace
        .iterations
        .iter()
        .map(|it| match it {
            Iteration::RowWise(s) => json!({
                "entry": s.entry,
                "original": names.set_json(&s.original),
                "absorbed": names.set_json(&s.absorbed),
                "chosen": names.of(s.chosen),
                "entries_after": s.entries_after.iter().map(|e| names.set_json(e)).collect::<Vec<_>>(),
            }),
            Iteration::Ea(s) => json!({
                "chosen": names.of(s.chosen),
                "n": names.family_json(&s.n),
                "e": names.family_json(&s.e),
                "red": names.set_json(&s.red),
                "a_added": s.a_added,
                "blocking": s.blocking.as_ref().map(|b| names.set_json(b)),
                "family_after": names.family_json(&s.family_after),
            }),
        })
        .collect();
    json!({ "iterations": steps, "unminimized": names.set_json(&trace.unminimized) })
}

fn trace_text(names: &Names, trace: &ReductTrace) -> String {
    let mut text = String::new();
    for (i, it) in trace.iterations.iter().enumerate() {
        match it {
            Iteration::RowWise(s) => text.push_str(&format!(
                "step {}: entry {} {} absorbed to {}, chose {}\n",
                i + 1,
                s.entry + 1,
                names.set_text(&s.original),
                names.set_text(&s.absorbed),
                names.of(s.chosen)
            )),
            Iteration::Ea(s) => {
                text.push_str(&format!(
                    "step {}: chose {}\n  N = {}\n  E = {}\n  RED = {}\n",
                    i + 1,
                    names.of(s.chosen),
                    names.family_text(&s.n),
                    names.family_text(&s.e),
                    names.set_text(&s.red)
                ));
                if let Some(b) = &s.blocking {
                    text.push_str(&format!(
                        "  {} added, RED misses {}\n",
                        names.of(s.chosen),
                        names.set_text(b)
                    ));
                }
                text.push_str(&format!(
                    "  remaining = {}\n",
                    names.family_text(&s.family_after)
                ));
            }
        }
    }
    text.push_str(&format!(
        "before minimisation: {}\n",
        names.set_text(&trace.unminimized)
    ));
    text
}

fn reduct(
    source: &Source,
    names: &Names,
    algo: Algo,
    select: Select,
    minimize: bool,
    verbose: bool,
) -> Outcome<(Value, String)> {
    let f = source.family();
    let policy = match select {
        Select::First => SelectionPolicy::First,
        Select::Freq => SelectionPolicy::MaxFrequency,
    };
    let (result, trace) = match algo {
        Algo::Ea => ea_reduce(&f, policy, minimize),
        Algo::Yao => yao_row_wise(&f, policy),
    };
    if trace.replay(&f)? != result {
        return Err(Failure::invariant(
            "replaying the trace does not reproduce the result",
        ));
    }
    match verify_reduct(&f, &result) {
        ReductDiagnosis::Valid => {}
        ReductDiagnosis::NotHitting(missed) => {
            return Err(Failure::invariant(format!(
                "result {} misses {}",
                names.set_text(&result),
                names.set_text(&missed)
            )))
        }
        ReductDiagnosis::NotMinimal(a) => {
            return Err(Failure::invariant(format!(
                "result {} is not minimal: {} can be dropped",
                names.set_text(&result),
                names.of(a)
            )))
        }
    }
    let algo_name = match algo {
        Algo::Ea => "ea",
        Algo::Yao => "yao",
    };
    let mut result_json = json!({
        "algorithm": algo_name,
        "policy": policy.as_str(),
        "minimized": trace.minimized,
        "reduct": names.set_json(&result),
        "valid": true,
    });
    let mut text = String::new();
    if verbose {
        result_json["trace"] = trace_json(names, &trace);
        text.push_str(&trace_text(names, &trace));
    }
    text.push_str(&format!(
        "reduct: {}\nverified: valid\n",
        names.set_text(&result)
    ));
    Ok((result_json, text))
}

fn all_reducts(source: &Source, names: &Names, max_attrs: usize) -> Outcome<(Value, String)> {
    let reducts = oracle_reducts(&source.family(), max_attrs)?;
    let result = json!({
        "reducts": reducts.iter().map(|r| names.set_json(r)).collect::<Vec<_>>(),
    });
    let text = format!(
        "{} reduct(s): {}\n",
        reducts.len(),
        names.list_text(&reducts)
    );
    Ok((result, text))
}

fn resolve(names: &Names, name: &str) -> Outcome<AttrId> {
    names
        .0
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Failure::input(format!("unknown attribute `{name}`")))
}

/// Parses `C->a` with `C` comma-separated and possibly empty.
fn parse_exclusion(names: &Names, query: &str) -> Outcome<(AttrSet, AttrId)> {
    let Some((c, a)) = query.split_once("->") else {
        return Err(Failure::input(format!(
            "exclusion query `{query}` is not of the form C->a"
        )));
    };
    let mut set = AttrSet::new();
    for part in c.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        set.insert(resolve(names, part)?);
    }
    Ok((set, resolve(names, a.trim())?))
}

fn relations(
    source: &Source,
    names: &Names,
    excludes: &[String],
    max_attrs: usize,
) -> Outcome<(Value, String)> {
    let f = source.family();
    let queries = excludes
        .iter()
        .map(|q| parse_exclusion(names, q))
        .collect::<Outcome<Vec<_>>>()?;
    let reducts = oracle_reducts(&f, max_attrs)?;
    let report = RelationReport::build(source.table(), &f, names.0.len(), &reducts, &queries)?;
    let pairs_json = |pairs: &[(AttrId, AttrId)]| -> Value {
        Value::Array(
            pairs
                .iter()
                .map(|&(a, b)| json!([names.of(a), names.of(b)]))
                .collect(),
        )
    };
    let pairs_text = |pairs: &[(AttrId, AttrId)], sep: &str| -> String {
        let parts: Vec<String> = pairs
            .iter()
            .map(|&(a, b)| format!("{} {sep} {}", names.of(a), names.of(b)))
            .collect();
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(", ")
        }
    };
    let exclusions: Vec<Value> = report
        .exclusions
        .iter()
        .map(|x| json!({ "c": names.set_json(&x.c), "a": names.of(x.a), "holds": x.holds }))
        .collect();
    let result = json!({
        "finer": pairs_json(&report.finer_pairs),
        "equivalent": pairs_json(&report.equivalent_pairs),
        "coupled": pairs_json(&report.coupled_pairs),
        "excludes": exclusions,
    });
    let mut text = format!(
        "finer: {}\nequivalent: {}\ncoupled: {}\n",
        pairs_text(&report.finer_pairs, "≽"),
        pairs_text(&report.equivalent_pairs, "≈"),
        pairs_text(&report.coupled_pairs, "⋈")
    );
    for x in &report.exclusions {
        text.push_str(&format!(
            "{} excludes {}: {}\n",
            names.set_text(&x.c),
            names.of(x.a),
            x.holds
        ));
    }
    Ok((result, text))
}

fn subject_json(names: &Names, subject: &Subject) -> Value {
    match subject {
        Subject::Attribute(a) => json!({ "attribute": names.of(*a) }),
        Subject::Pair(a, b) => json!({ "pair": [names.of(*a), names.of(*b)] }),
        Subject::SetAndAttribute(c, a) => {
            json!({ "set": names.set_json(c), "attribute": names.of(*a) })
        }
        Subject::MemberAndAttribute(d, a) => {
            json!({ "member": names.set_json(d), "attribute": names.of(*a) })
        }
    }
}

fn subject_text(names: &Names, subject: &Subject) -> String {
    match subject {
        Subject::Attribute(a) => names.of(*a).to_owned(),
        Subject::Pair(a, b) => format!("({}, {})", names.of(*a), names.of(*b)),
        Subject::SetAndAttribute(c, a) => format!("({}, {})", names.set_text(c), names.of(*a)),
        Subject::MemberAndAttribute(d, a) => format!("({}, {})", names.set_text(d), names.of(*a)),
    }
}

fn witness_json(names: &Names, witness: &Option<Witness>) -> Value {
    match witness {
        None => Value::Null,
        Some(Witness::Subset(c)) => json!({ "subset": names.set_json(c) }),
        Some(Witness::SubsetAndMember(c, k)) => {
            json!({ "subset": names.set_json(c), "member": names.set_json(k) })
        }
        Some(Witness::Member(k)) => json!({ "member": names.set_json(k) }),
        Some(Witness::Reduct(r)) => json!({ "reduct": names.set_json(r) }),
    }
}

fn audit(source: &Source, names: &Names, max_attrs: usize) -> Outcome<(Value, String)> {
    let report = match source {
        Source::Table(is) => audit_theorems(is, max_attrs, "input")?,
        Source::Family { names, family } => audit_family(family, names.len(), max_attrs, "input")?,
    };
    let summary: Vec<Value> = report
        .summary()
        .iter()
        .map(|s| json!({ "claim": s.claim.name(), "checked": s.checked, "agreed": s.agreed }))
        .collect();
    let disagreements: Vec<Value> = report
        .disagreements()
        .map(|e| {
            json!({
                "claim": e.claim.name(),
                "subject": subject_json(names, &e.subject),
                "lhs": e.lhs,
                "rhs": e.rhs,
                "witness": witness_json(names, &e.witness),
            })
        })
        .collect();
    let result = json!({
        "reducts": report.reducts.iter().map(|r| names.set_json(r)).collect::<Vec<_>>(),
        "claims": summary,
        "disagreements": disagreements,
    });
    let mut text = format!("reducts: {}\n", names.list_text(&report.reducts));
    for s in report.summary() {
        text.push_str(&format!(
            "{:<36} {}/{} agree\n",
            s.claim.name(),
            s.agreed,
            s.checked
        ));
    }
    for e in report.disagreements() {
        let witness = match &e.witness {
            None => String::new(),
            Some(Witness::Subset(c)) => format!(", subset {}", names.set_text(c)),
            Some(Witness::SubsetAndMember(c, k)) => {
                format!(
                    ", subset {} member {}",
                    names.set_text(c),
                    names.set_text(k)
                )
            }
            Some(Witness::Member(k)) => format!(", member {}", names.set_text(k)),
            Some(Witness::Reduct(r)) => format!(", reduct {}", names.set_text(r)),
        };
        text.push_str(&format!(
            "disagreement: {} at {}: left {}, right {}{}\n",
            e.claim,
            subject_text(names, &e.subject),
            e.lhs,
            e.rhs,
            witness
        ));
    }
    Ok((result, text))
}

fn covering(
    source: &Source,
    names: &Names,
    warnings: &mut Vec<String>,
) -> Outcome<(Value, String)> {
    let f = source.family();
    let n_attributes = names.0.len();
    let space = CoveringSpace::from_family(f.clone());
    let uncovered = space.uncovered(&(0..n_attributes).collect());
    if !uncovered.is_empty() {
        warnings.push(format!(
            "attributes {} discern no objects and are left out of the covering",
            names.set_text(&uncovered)
        ));
    }
    let characters = classify_all(&f, n_attributes)?;
    let mut elements = Vec::new();
    let mut text = format!("ground: {}\n", names.set_text(space.ground()));
    for a in space.ground() {
        let md = space.minimal_description(a)?;
        let neighborhood = space.neighborhood(a)?;
        let report = space.singleton_equivalences(a)?;
        let core = characters.character_of(a) == Some(reductkit::Character::Core);
        if !report.all_equal() || report.all_true() != core {
            return Err(Failure::invariant(format!(
                "singleton conditions for {} are inconsistent: {report:?}, core = {core}",
                names.of(a)
            )));
        }
        elements.push(json!({
            "attribute": names.of(a),
            "minimal_description": names.family_json(&md),
            "neighborhood": names.set_json(&neighborhood),
            "singleton_member": report.singleton_member,
            "description_is_singleton": report.description_is_singleton,
            "lower_fixes_singleton": report.lower_fixes_singleton,
            "description_is_lower": report.description_is_lower,
        }));
        text.push_str(&format!(
            "{}: Md = {}, neighbourhood = {}, singleton conditions {}\n",
            names.of(a),
            names.family_text(&md),
            names.set_text(&neighborhood),
            report.singleton_member
        ));
    }
    let result = json!({
        "ground": names.set_json(space.ground()),
        "uncovered": names.set_json(&uncovered),
        "elements": elements,
    });
    Ok((result, text))
}
