//! The `sbp` command line.
//!
//! Every command writes a JSON report to the output (or a plain rendering
//! of it with `--format text`). Exit codes: 0 when every check passes, 1 when
//! a mathematical check fails, 2 for usage, parse and budget errors.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{check_derived_identities, synthesize, ActionError, PseudoAction};
use crate::bounded::check_nat_order;
use crate::catalog;
use crate::corpus::{corpus_report, summarize_pair, Corpus, PairActions};
use crate::enumerate::{enumerate_pseudo_actions, SearchConfig, Strategy};
use crate::error::{Error, Result};
use crate::gallery;
use crate::io::{self, ActionInput, BundleInput, Workspace};
use crate::maps::{Homomorphism, PointedMap};
use crate::monoid::FiniteMonoid;
use crate::morphism::classify_up_to_iso;
use crate::relations::{evaluate_scheme, enumerate_relation_extensions, RelationScheme, RelationSearch, Verdict};
use crate::semibiproduct::{
    beta_embedding, decomposition_check, extract_pseudo_action, schreier_witness, SemiBiproduct, SemiBiproductError,
};
use crate::transform::{self, certify_monoid_recognizer, check_corecognizer, check_recognizer};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Lazy,
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// The three-element relation over {0, s} and {1, t}.
    PaperE1,
    /// The order relation on a truncation of the natural numbers.
    PaperNat,
    /// The {-1, 0, 1} structure on the same relation.
    E1Sign,
    /// S3 as an extension of Z2 by Z3.
    S3,
}

#[derive(Debug, Parser)]
#[command(name = "sbp", version, about = "Semi-biproducts of finite monoids")]
pub struct Cli {
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, env = "SBP_JOBS")]
    pub jobs: Option<usize>,
    /// Search budget for enumeration.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Truncation bound for the natural-number example.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the semi-biproduct equations for every bundle in the input.
    Verify { files: Vec<PathBuf> },
    /// Read off the pseudo-action of every bundle.
    Extract { files: Vec<PathBuf> },
    /// Validate every pseudo-action in the input.
    ValidateAction { files: Vec<PathBuf> },
    /// Build the synthetic semi-biproduct of every pseudo-action.
    Synthesize { files: Vec<PathBuf> },
    /// Stream all pseudo-actions of B on X as JSON lines, then a summary.
    EnumerateActions {
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Pruned)]
        strategy: StrategyArg,
        /// Also count isomorphism classes of the synthetic semi-biproducts.
        #[arg(long)]
        classify: bool,
        files: Vec<PathBuf>,
    },
    /// Run the relation construction scheme over X and B.
    EnumerateRelations {
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
        /// Fix R, e.g. "(0,1),(s,1),(0,t)" using element labels.
        #[arg(long)]
        relation: Option<String>,
        files: Vec<PathBuf>,
    },
    /// Partition the bundles into isomorphism classes.
    Classify { files: Vec<PathBuf> },
    /// Check that a map is a recognizer (or with --co a co-recognizer).
    CheckRecognizer {
        /// A map name, or BUNDLE.k / BUNDLE.p.
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "monoid")]
        instance: String,
        #[arg(long)]
        co: bool,
        /// Universe: all monoids up to this order.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Use the monoids of the input as the universe instead.
        #[arg(long)]
        input_universe: bool,
        files: Vec<PathBuf>,
    },
    /// Reproduce a worked example.
    Examples {
        #[arg(value_enum)]
        name: Example,
    },
    /// Run every check over the corpus of small monoids.
    Corpus {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
}

/// A finished report and the exit code it implies.
#[derive(Debug)]
pub struct Report {
    pub code: i32,
    pub value: Value,
    pub text: Option<String>,
}

impl Report {
    fn new(ok: bool, value: Value) -> Self {
        Report { code: if ok { 0 } else { 1 }, value, text: None }
    }

    fn render(&self, format: Format) -> String {
        match (format, &self.text) {
            (Format::Text, Some(t)) => t.clone(),
            (Format::Text, None) => {
                let mut out = String::new();
                render_text(&self.value, 0, &mut out);
                out
            }
            (Format::Json, _) => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                if is_scalar(v) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(v)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{pad}[{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) || item.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    render_text(item, indent, out);
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses arguments, runs the command in a pool of `--jobs` threads and
/// writes the report. Returns the exit code.
pub fn run<W: Write + Send>(cli: &Cli, out: &mut W) -> Result<i32> {
    let jobs = match cli.jobs {
        Some(0) => return Err(Error::Usage("--jobs must be positive".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} threads: {e}")))?;
    pool.install(|| dispatch(cli, out))
}

fn load(files: &[PathBuf]) -> Result<Workspace> {
    Ok(io::parse_inputs(files)?)
}

fn config(cli: &Cli, ws: &Workspace) -> SearchConfig {
    SearchConfig { budget: cli.budget.unwrap_or(ws.config.budget), ..SearchConfig::default() }
}

fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let report = match &cli.command {
        Command::Verify { files } => verify(&load(files)?)?,
        Command::Extract { files } => return extract(&load(files)?, cli.format, out),
        Command::ValidateAction { files } => validate_actions(&load(files)?)?,
        Command::Synthesize { files } => return synthesize_all(&load(files)?, cli.format, out),
        Command::EnumerateActions { x, b, strategy, classify, files } => {
            let ws = load(files)?;
            let mut config = config(cli, &ws);
            config.strategy = match strategy {
                StrategyArg::Lazy => Strategy::Lazy,
                StrategyArg::Pruned => Strategy::Pruned,
            };
            return enumerate_actions(&ws, x, b, &config, *classify, cli.format, out);
        }
        Command::EnumerateRelations { x, b, relation, files } => {
            let ws = load(files)?;
            enumerate_relations(&ws, x, b, relation.as_deref(), config(cli, &ws).budget)?
        }
        Command::Classify { files } => classify(&load(files)?)?,
        Command::CheckRecognizer { map, instance, co, order, input_universe, files } => {
            let ws = load(files)?;
            let universe: Vec<Arc<FiniteMonoid>> = if *input_universe {
                ws.monoids.values().cloned().collect()
            } else {
                catalog::monoids_up_to(*order).into_iter().map(Arc::new).collect()
            };
            recognizer(&ws, map, instance, *co, &universe)?
        }
        Command::Examples { name } => match name {
            Example::PaperE1 => paper_e1(),
            Example::PaperNat => paper_nat(cli.bound.unwrap_or(io::DEFAULT_BOUND)),
            Example::E1Sign => e1_sign(),
            Example::S3 => s3(),
        },
        Command::Corpus { order } => {
            let corpus = Corpus::build(*order, &SearchConfig { budget: cli.budget.unwrap_or(crate::enumerate::DEFAULT_BUDGET), ..Default::default() })?;
            let report = corpus_report(&corpus);
            Report::new(report.all_pass(), to_value(&report))
        }
    };
    out.write_all(report.render(cli.format).as_bytes())?;
    Ok(report.code)
}

fn resolve_monoid(ws: &Workspace, name: &str) -> Result<Arc<FiniteMonoid>> {
    if let Some(m) = ws.monoids.get(name) {
        return Ok(m.clone());
    }
    catalog::builtin(name)
        .map(Arc::new)
        .ok_or_else(|| Error::Usage(format!("unknown monoid {name:?}: not in the input and not a builtin")))
}

fn pair_labels(m: &FiniteMonoid, n: &FiniteMonoid, (a, b): (usize, usize)) -> Value {
    json!([m.label(a), n.label(b)])
}

/// The failure of [`SemiBiproduct::verify`] as a report fragment.
pub fn failure_value(e: &SemiBiproductError) -> Value {
    let detail = match e {
        SemiBiproductError::Typing { role, expected, found } => {
            json!({"kind": "typing", "role": role.to_string(), "expected": expected, "found": found})
        }
        SemiBiproductError::NotHomomorphism { role, witness, labels } => json!({
            "kind": "not-homomorphism",
            "role": role.to_string(),
            "witness": [witness.0, witness.1],
            "labels": [labels.0, labels.1],
        }),
        SemiBiproductError::ConditionFails { condition, witness, label } => json!({
            "kind": "condition",
            "condition": condition.to_string(),
            "witness": witness,
            "label": label,
        }),
    };
    let mut detail = detail;
    detail["message"] = Value::String(e.to_string());
    detail
}

fn semibiproduct_value(sb: &SemiBiproduct) -> (bool, Value) {
    let (x, a, b) = (sb.x(), sb.a(), sb.b());
    let witness = schreier_witness(sb);
    let (theorems_ok, theorems) = match beta_embedding(sb).and_then(|beta| decomposition_check(sb).map(|d| (beta, d))) {
        Ok((beta, d)) => {
            let image: Vec<Value> = beta.image.iter().map(|&p| pair_labels(x, b, p)).collect();
            (true, json!({"beta_image": image, "decomposition_pairs": d.pairs_checked}))
        }
        Err(e) => (false, json!({"violation": e.to_string()})),
    };
    let value = json!({
        "semibiproduct": true,
        "order": a.order(),
        "biproduct": sb.is_biproduct(),
        "schreier": witness.is_none(),
        "schreier_witness": witness.map(|p| pair_labels(x, b, p)),
        "theorems": theorems,
    });
    (theorems_ok, value)
}

fn require<T>(items: &std::collections::BTreeMap<String, T>, what: &str) -> Result<()> {
    if items.is_empty() {
        return Err(Error::Usage(format!("no {what} in the input")));
    }
    Ok(())
}

fn verify(ws: &Workspace) -> Result<Report> {
    require(&ws.bundles, "semi-biproduct bundles")?;
    let mut ok = true;
    let mut results = Vec::new();
    for (name, bundle) in &ws.bundles {
        let mut value = match bundle.verify() {
            Ok(sb) => {
                let (good, v) = semibiproduct_value(&sb);
                ok &= good;
                v
            }
            Err(e) => {
                ok = false;
                json!({"semibiproduct": false, "failure": failure_value(&e)})
            }
        };
        value["name"] = Value::String(name.clone());
        results.push(value);
    }
    Ok(Report::new(ok, json!({"command": "verify", "results": results})))
}

fn write_line<W: Write>(out: &mut W, format: Format, v: &Value) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(v).expect("serializes"))?,
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn extract<W: Write>(ws: &Workspace, format: Format, out: &mut W) -> Result<i32> {
    require(&ws.bundles, "semi-biproduct bundles")?;
    let mut code = 0;
    for (name, bundle) in &ws.bundles {
        let line = match bundle.verify() {
            Ok(sb) => match extract_pseudo_action(&sb) {
                Ok(pa) => io::emit_action(Some(name), &ActionInput::from_action(&pa)),
                Err(e) => {
                    code = 1;
                    json!({"name": name, "violation": e.to_string()})
                }
            },
            Err(e) => {
                code = 1;
                json!({"name": name, "semibiproduct": false, "failure": failure_value(&e)})
            }
        };
        write_line(out, format, &line)?;
    }
    Ok(code)
}

fn action_failure(e: &ActionError) -> Value {
    let mut v = to_value(e);
    v["message"] = Value::String(e.to_string());
    v
}

fn is_input_error(e: &ActionError) -> bool {
    matches!(e, ActionError::Shape { .. } | ActionError::IndexOutOfRange { .. } | ActionError::MonoidMismatch)
}

fn validate_actions(ws: &Workspace) -> Result<Report> {
    require(&ws.actions, "pseudo-actions")?;
    let mut ok = true;
    let mut results = Vec::new();
    for (name, input) in &ws.actions {
        let value = match input.validate() {
            Ok(pa) => {
                let identities = check_derived_identities(&pa);
                ok &= identities.all_pass();
                json!({
                    "name": name,
                    "valid": true,
                    "trivial_correction": pa.has_trivial_correction(),
                    "carrier": pa.carrier().len(),
                    "identities": to_value(&identities),
                })
            }
            Err(e) if is_input_error(&e) => return Err(Error::Usage(format!("{name}: {e}"))),
            Err(e) => {
                ok = false;
                json!({"name": name, "valid": false, "failure": action_failure(&e)})
            }
        };
        results.push(value);
    }
    Ok(Report::new(ok, json!({"command": "validate-action", "results": results})))
}

fn synthesize_all<W: Write>(ws: &Workspace, format: Format, out: &mut W) -> Result<i32> {
    require(&ws.actions, "pseudo-actions")?;
    let mut code = 0;
    for (name, input) in &ws.actions {
        let line = match input.validate().and_then(|pa| synthesize(&pa)) {
            Ok((_, sb)) => io::emit_bundle(Some(name), &BundleInput::from_semibiproduct(&sb)),
            Err(e) if is_input_error(&e) => return Err(Error::Usage(format!("{name}: {e}"))),
            Err(e) => {
                code = 1;
                json!({"name": name, "valid": false, "failure": action_failure(&e)})
            }
        };
        write_line(out, format, &line)?;
    }
    Ok(code)
}

fn enumerate_actions<W: Write>(
    ws: &Workspace,
    x: &str,
    b: &str,
    config: &SearchConfig,
    classify: bool,
    format: Format,
    out: &mut W,
) -> Result<i32> {
    let (x, b) = (resolve_monoid(ws, x)?, resolve_monoid(ws, b)?);
    let actions = enumerate_pseudo_actions(&x, &b, config)?;
    for (i, pa) in actions.iter().enumerate() {
        let name = format!("{}-{}-{i}", x.name(), b.name());
        write_line(out, format, &io::emit_action(Some(&name), &ActionInput::from_action(pa)))?;
    }
    let pair = PairActions { x, b, actions };
    let summary = summarize_pair(&pair);
    let mut ok = summary.roundtrip_failures + summary.embedding_failures + summary.schreier_failures + summary.identity_failures == 0;
    let mut value = to_value(&summary);
    if classify {
        let sbs: Vec<SemiBiproduct> = pair.actions.iter().filter_map(|pa| synthesize(pa).ok().map(|(_, sb)| sb)).collect();
        ok &= sbs.len() == pair.actions.len();
        let classes = classify_up_to_iso(&sbs)?;
        value["classes"] = json!(classes.len());
        value["class_sizes"] = json!(classes.iter().map(|c| c.size).collect::<Vec<_>>());
    }
    write_line(out, format, &json!({ "summary": value }))?;
    Ok(if ok { 0 } else { 1 })
}

fn parse_relation(x: &FiniteMonoid, b: &FiniteMonoid, text: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::Usage(format!("cannot read relation {text:?}; expected \"(x,b),(x,b),...\""));
    let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = squeezed.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|pair| {
            let (xl, bl) = pair.split_once(',').ok_or_else(bad)?;
            let xi = x.index_of(xl).ok_or_else(|| Error::Usage(format!("{xl:?} is not an element of {}", x.name())))?;
            let bi = b.index_of(bl).ok_or_else(|| Error::Usage(format!("{bl:?} is not an element of {}", b.name())))?;
            Ok((xi, bi))
        })
        .collect()
}

fn labelled(m: &FiniteMonoid, rows: &[Vec<usize>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|&i| m.label(i).to_owned()).collect()).collect()
}

fn search_value(search: &RelationSearch) -> Value {
    let scheme = &search.scheme;
    let (x, b) = (scheme.x(), scheme.b());
    let candidates: Vec<Value> = search
        .candidates
        .iter()
        .map(|c| {
            let verdict = match &c.verdict {
                Verdict::Accepted(sb) => json!({"accepted": true, "schreier": schreier_witness(sb).is_none()}),
                Verdict::Rejected(r) => json!({"accepted": false, "rejection": to_value(r)}),
            };
            json!({
                "table": labelled(&c.monoid, &c.monoid.rows()),
                "oplus": labelled(x, &c.oplus),
                "factor": labelled(x, &c.factor),
                "act": labelled(x, &c.act),
                "correct": labelled(x, &c.correct),
                "verdict": verdict,
            })
        })
        .collect();
    json!({
        "relation": scheme.labels(),
        "u": scheme.u().iter().map(|&i| x.label(i)).collect::<Vec<_>>(),
        "q": scheme.q().iter().map(|&i| x.label(i)).collect::<Vec<_>>(),
        "structures_found": search.structures_found,
        "accepted": search.accepted().count(),
        "candidates": candidates,
        "B": b.name(),
    })
}

fn enumerate_relations(ws: &Workspace, x: &str, b: &str, relation: Option<&str>, budget: u64) -> Result<Report> {
    let (x, b) = (resolve_monoid(ws, x)?, resolve_monoid(ws, b)?);
    let r = relation.map(|t| parse_relation(&x, &b, t)).transpose()?;
    let searches = enumerate_relation_extensions(&x, &b, r, budget)?;
    let structures: usize = searches.iter().map(|s| s.structures_found).sum();
    let accepted: usize = searches.iter().map(|s| s.accepted().count()).sum();
    let value = json!({
        "command": "enumerate-relations",
        "X": x.name(),
        "B": b.name(),
        "schemes": searches.iter().map(search_value).collect::<Vec<_>>(),
        "structures_found": structures,
        "accepted": accepted,
    });
    Ok(Report::new(true, value))
}

fn classify(ws: &Workspace) -> Result<Report> {
    require(&ws.bundles, "semi-biproduct bundles")?;
    let mut named = Vec::new();
    let mut failures = Vec::new();
    for (name, bundle) in &ws.bundles {
        match bundle.verify() {
            Ok(sb) => named.push((name.clone(), sb)),
            Err(e) => failures.push(json!({"name": name, "failure": failure_value(&e)})),
        }
    }
    if !failures.is_empty() {
        return Ok(Report::new(false, json!({"command": "classify", "invalid": failures})));
    }
    let sbs: Vec<SemiBiproduct> = named.iter().map(|(_, sb)| sb.clone()).collect();
    let classes = classify_up_to_iso(&sbs)?;
    let classes: Vec<Value> = classes
        .iter()
        .map(|c| {
            let rep = named.iter().find(|(_, sb)| *sb == c.representative).map(|(n, _)| n.clone());
            json!({
                "representative": rep,
                "size": c.size,
                "order": c.representative.a().order(),
                "schreier": schreier_witness(&c.representative).is_none(),
            })
        })
        .collect();
    Ok(Report::new(true, json!({"command": "classify", "items": sbs.len(), "classes": classes})))
}

fn lookup_map(ws: &Workspace, name: &str) -> Result<PointedMap> {
    if let Some(m) = ws.maps.get(name) {
        return Ok(m.clone());
    }
    if let Some((bundle, role)) = name.rsplit_once('.') {
        if let Some(b) = ws.bundles.get(bundle) {
            match role {
                "p" => return Ok(b.p.clone()),
                "k" => return Ok(b.k.clone()),
                "q" => return Ok(b.q.clone()),
                "s" => return Ok(b.s.clone()),
                _ => {}
            }
        }
    }
    Err(Error::Usage(format!("no map named {name:?} in the input")))
}

fn recognizer(ws: &Workspace, map: &str, instance: &str, co: bool, universe: &[Arc<FiniteMonoid>]) -> Result<Report> {
    let inst = transform::instance(instance)
        .ok_or_else(|| Error::Usage(format!("unknown instance {instance:?}; expected monoid or commutative-monoid")))?;
    let m = lookup_map(ws, map)?;
    let hom = Homomorphism::new(m.clone()).map_err(|e| Error::Usage(format!("{map} is not a homomorphism: {e}")))?;
    let mut value = json!({
        "command": "check-recognizer",
        "map": map,
        "kind": if co { "co-recognizer" } else { "recognizer" },
    });
    let report = if co {
        check_corecognizer(inst, &hom, universe)
    } else {
        check_recognizer(inst, &hom, universe).map_err(|e| Error::Usage(format!("{map}: {e}")))?
    };
    value["report"] = to_value(&report);
    if !co && instance == "monoid" {
        value["certificate"] = match certify_monoid_recognizer(&m) {
            Ok(c) => to_value(&c),
            Err(e) => Value::String(e.to_string()),
        };
    }
    Ok(Report::new(report.passes(), value))
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", parts.join(" | ").trim_end())
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("{}\n", rule.join("-+-")));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn e1_scheme() -> RelationScheme {
    let x = Arc::new(catalog::semilattice2());
    let b = Arc::new(catalog::idempotent2());
    RelationScheme::canonical(x, b, vec![(0, 0), (1, 0), (0, 1)]).expect("E1 relation satisfies the scheme")
}

/// Rows `(x, b, x', b')` of the derived-operation table.
const E1_ROWS: [(usize, usize, usize, usize); 4] = [(0, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 1, 1)];

fn paper_e1() -> Report {
    let scheme = e1_scheme();
    let search = evaluate_scheme(&scheme, crate::enumerate::DEFAULT_BUDGET).expect("three-element search fits any budget");
    let (x, b) = (scheme.x().clone(), scheme.b().clone());
    let accepted: Vec<&crate::relations::RelationCandidate> =
        search.candidates.iter().filter(|c| c.verdict.is_accepted()).collect();
    let Some(chosen) = accepted.first() else {
        return Report::new(false, json!({"example": "paper-e1", "semibiproduct": false}));
    };
    let Verdict::Accepted(sb) = &chosen.verdict else { unreachable!() };
    let r = &chosen.monoid;
    let labels: Vec<String> = r.elements().to_vec();
    let mut op_header = vec!["+".to_owned()];
    op_header.extend(labels.iter().cloned());
    let op_rows: Vec<Vec<String>> = (0..r.order())
        .map(|i| std::iter::once(labels[i].clone()).chain((0..r.order()).map(|j| labels[r.op(i, j)].clone())).collect())
        .collect();
    let d_header: Vec<String> =
        ["x", "b", "x'", "b'", "x⊕x'", "b×b'", "b·x", "x^b"].iter().map(|s| s.to_string()).collect();
    let xl = |i: usize| x.label(i).to_owned();
    let bl = |i: usize| b.label(i).to_owned();
    let d_rows: Vec<Vec<String>> = E1_ROWS
        .iter()
        .map(|&(xi, bi, x2, b2)| {
            vec![
                xl(xi),
                bl(bi),
                xl(x2),
                bl(b2),
                xl(chosen.oplus[xi][x2]),
                xl(chosen.factor[bi][b2]),
                xl(chosen.act[bi][xi]),
                xl(chosen.correct[xi][bi]),
            ]
        })
        .collect();
    let additive = (0..x.order()).all(|i| (0..x.order()).all(|j| chosen.oplus[i][j] == x.op(i, j)));
    let in_r = |xi: usize, bi: usize| scheme.position((xi, bi)).is_some();
    let fixed_on_r = scheme.pairs().iter().all(|&(xi, bi)| chosen.correct[xi][bi] == xi);
    let witness = schreier_witness(sb);
    let notes: Vec<String> = witness
        .iter()
        .filter(|&&(xi, bi)| !in_r(xi, bi))
        .map(|&(xi, bi)| {
            format!("{}^{}={} but ({},{})∉R", xl(xi), bl(bi), xl(chosen.correct[xi][bi]), xl(xi), bl(bi))
        })
        .collect();
    let schreier = witness.is_none();
    let summary = format!("semi-biproduct: yes, Schreier: {}", yes(schreier));
    let ok = search.structures_found == 2 && accepted.len() == 1 && additive && fixed_on_r && !schreier;
    let value = json!({
        "example": "paper-e1",
        "relation": labels,
        "structures_found": search.structures_found,
        "accepted": accepted.len(),
        "operation_table": {"header": op_header, "rows": op_rows},
        "derived_table": {"header": d_header, "rows": d_rows},
        "oplus_is_addition": additive,
        "correction_fixes_r": fixed_on_r,
        "notes": notes,
        "semibiproduct": true,
        "schreier": schreier,
        "schreier_witness": witness.map(|p| pair_labels(&x, &b, p)),
        "summary": summary,
    });
    let mut text = String::new();
    text.push_str(&grid(&op_header, &op_rows));
    text.push('\n');
    text.push_str(&grid(&d_header, &d_rows));
    text.push('\n');
    for n in &notes {
        text.push_str(&format!("note: {n}\n"));
    }
    text.push_str(&summary);
    text.push('\n');
    Report { code: if ok { 0 } else { 1 }, value, text: Some(text) }
}

fn paper_nat(bound: u64) -> Report {
    let report = check_nat_order(bound);
    let summary = format!(
        "semi-biproduct: {}, Schreier: {}, q,s homomorphisms: {}",
        yes(report.semibiproduct),
        yes(report.schreier),
        yes(report.q_homomorphism && report.s_homomorphism)
    );
    let ok = report.semibiproduct && report.schreier && report.q_homomorphism && report.s_homomorphism && report.beta_bijective;
    let mut value = to_value(&report);
    value["example"] = json!("paper-nat");
    value["summary"] = Value::String(summary);
    Report::new(ok, value)
}

fn e1_sign() -> Report {
    let mut value = json!({"example": "e1-sign"});
    let verdict = gallery::paper_e1_sign();
    if let Err(e) = &verdict {
        value["failure"] = failure_value(e);
    }
    value["semibiproduct"] = json!(verdict.is_ok());
    let search = evaluate_scheme(&e1_scheme(), crate::enumerate::DEFAULT_BUDGET).expect("small search");
    let sign_rows = gallery::e1_sign().rows();
    if let Some(c) = search.candidates.iter().find(|c| c.monoid.rows() == sign_rows) {
        if let Verdict::Rejected(r) = &c.verdict {
            value["rejection"] = to_value(r);
        }
    }
    Report::new(verdict.is_ok(), value)
}

fn s3() -> Report {
    let sb = gallery::z3_semidirect_z2();
    let (ok, mut value) = semibiproduct_value(&sb);
    value["example"] = json!("s3");
    let pa: Option<PseudoAction> = extract_pseudo_action(&sb).ok();
    value["pseudo_action"] = pa.as_ref().map(|pa| to_value(&pa.tables())).unwrap_or(Value::Null);
    Report::new(ok && pa.is_some(), value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("sbp").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = run(&cli, &mut out).unwrap();
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn e1_example_text() {
        let (code, out) = run_args(&["examples", "paper-e1", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("0Rt | 0Rt | 0Rt | 0Rt"), "{out}");
        assert!(out.contains("note: s^t=0 but (s,t)∉R"));
        assert!(out.ends_with("semi-biproduct: yes, Schreier: no\n"));
    }

    #[test]
    fn sign_example_fails_on_k() {
        let (code, out) = run_args(&["examples", "e1-sign"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["failure"]["message"], "k not homomorphism at (s,s)");
        assert_eq!(v["rejection"]["reason"], "not-additive");
    }

    #[test]
    fn relation_parsing() {
        let s = e1_scheme();
        assert_eq!(parse_relation(s.x(), s.b(), "(0,1), (s,1), (0,t)").unwrap(), vec![(0, 0), (1, 0), (0, 1)]);
        assert!(parse_relation(s.x(), s.b(), "(0,1),(u,1)").is_err());
    }
}
