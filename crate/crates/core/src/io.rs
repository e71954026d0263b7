//! The `sbp-1` JSON format and the in-memory [`Workspace`].
//!
//! Every file is a JSON object carrying `"schema": "sbp-1"`. Its kind is
//! recognised by its keys:
//!
//! | keys                         | kind                 |
//! |------------------------------|----------------------|
//! | `monoids` / `maps` / ...     | workspace            |
//! | `p`, `k`, `q`, `s`           | semi-biproduct bundle|
//! | `phi`, `rho`, `gamma`        | pseudo-action        |
//! | `domain`, `codomain`, `values` | pointed map        |
//! | `table`                      | monoid               |
//!
//! Monoids inside bundles and actions may be written inline or referenced by
//! name. Bundle maps are value arrays whose typing follows from the role
//! (`p: A → B`, `k: X → A`, `q: A → X`, `s: B → A`). Pseudo-action tables are
//! indexed `phi[b][x]`, `rho[x][b]`, `gamma[b][b']`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::action::{ActionError, ActionTables, PseudoAction};
use crate::enumerate::DEFAULT_BUDGET;
use crate::maps::{MapError, PointedMap};
use crate::monoid::{FiniteMonoid, MonoidError, Notation};
use crate::semibiproduct::{SemiBiproduct, SemiBiproductError};

pub const SCHEMA: &str = "sbp-1";

/// Truncation bound used for `ℕ` when none is given.
pub const DEFAULT_BOUND: u64 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    SemiBiproduct(#[from] SemiBiproductError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{location}: {message}")]
    Parse { path: String, location: String, message: String },
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("dangling reference {0:?}")]
    DanglingReference(String),
    #[error("{path}: {name}: {source}")]
    Validation { path: String, name: String, source: ValidationError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_bound")]
    pub bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_bound() -> u64 {
    DEFAULT_BOUND
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: DEFAULT_BUDGET, bound: DEFAULT_BOUND, jobs: None }
    }
}

/// Pseudo-action tables over named monoids, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionInput {
    pub x: Arc<FiniteMonoid>,
    pub b: Arc<FiniteMonoid>,
    pub tables: ActionTables,
}

impl ActionInput {
    pub fn validate(&self) -> Result<PseudoAction, ActionError> {
        PseudoAction::validate(self.x.clone(), self.b.clone(), &self.tables)
    }

    pub fn from_action(pa: &PseudoAction) -> Self {
        ActionInput { x: pa.x().clone(), b: pa.b().clone(), tables: pa.tables() }
    }
}

/// Candidate semi-biproduct data. The maps are well-typed pointed maps; the
/// five equations are checked by [`BundleInput::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleInput {
    pub x: Arc<FiniteMonoid>,
    pub a: Arc<FiniteMonoid>,
    pub b: Arc<FiniteMonoid>,
    pub p: PointedMap,
    pub k: PointedMap,
    pub q: PointedMap,
    pub s: PointedMap,
}

impl BundleInput {
    pub fn verify(&self) -> Result<SemiBiproduct, SemiBiproductError> {
        SemiBiproduct::verify(
            self.x.clone(),
            self.a.clone(),
            self.b.clone(),
            self.p.clone(),
            self.k.clone(),
            self.q.clone(),
            self.s.clone(),
        )
    }

    pub fn from_semibiproduct(sb: &SemiBiproduct) -> Self {
        BundleInput {
            x: sb.x().clone(),
            a: sb.a().clone(),
            b: sb.b().clone(),
            p: sb.p().as_map().clone(),
            k: sb.k().as_map().clone(),
            q: sb.q().clone(),
            s: sb.s().clone(),
        }
    }
}

/// Everything loaded from a list of input files, with references resolved.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub monoids: BTreeMap<String, Arc<FiniteMonoid>>,
    pub maps: BTreeMap<String, PointedMap>,
    pub actions: BTreeMap<String, ActionInput>,
    pub bundles: BTreeMap<String, BundleInput>,
    pub config: Config,
}

impl Workspace {
    /// Registers a monoid under its own name. Identical redeclaration is a
    /// no-op and returns the stored handle.
    pub fn add_monoid(&mut self, m: FiniteMonoid) -> Result<Arc<FiniteMonoid>, LoadError> {
        match self.monoids.get(m.name()) {
            Some(old) if **old == m && old.notation() == m.notation() => Ok(old.clone()),
            Some(_) => Err(LoadError::DuplicateName(m.name().to_owned())),
            None => {
                let m = Arc::new(m);
                self.monoids.insert(m.name().to_owned(), m.clone());
                Ok(m)
            }
        }
    }

    fn insert<T: PartialEq>(map: &mut BTreeMap<String, T>, name: String, value: T) -> Result<(), LoadError> {
        match map.get(&name) {
            Some(old) if *old == value => Ok(()),
            Some(_) => Err(LoadError::DuplicateName(name)),
            None => {
                map.insert(name, value);
                Ok(())
            }
        }
    }

    pub fn add_map(&mut self, name: impl Into<String>, map: PointedMap) -> Result<(), LoadError> {
        Self::insert(&mut self.maps, name.into(), map)
    }

    pub fn add_action(&mut self, name: impl Into<String>, action: ActionInput) -> Result<(), LoadError> {
        Self::insert(&mut self.actions, name.into(), action)
    }

    pub fn add_bundle(&mut self, name: impl Into<String>, bundle: BundleInput) -> Result<(), LoadError> {
        Self::insert(&mut self.bundles, name.into(), bundle)
    }

    pub fn monoid(&self, name: &str) -> Result<&Arc<FiniteMonoid>, LoadError> {
        self.monoids.get(name).ok_or_else(|| LoadError::DanglingReference(name.to_owned()))
    }

    pub fn is_empty(&self) -> bool {
        self.monoids.is_empty() && self.maps.is_empty() && self.actions.is_empty() && self.bundles.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "is_additive")]
    pub notation: Notation,
}

fn is_additive(n: &Notation) -> bool {
    *n == Notation::Additive
}

impl MonoidDoc {
    pub fn of(m: &FiniteMonoid) -> Self {
        MonoidDoc {
            name: m.name().to_owned(),
            elements: m.elements().to_vec(),
            identity: m.identity(),
            table: m.rows(),
            notation: m.notation(),
        }
    }

    pub fn build(&self) -> Result<FiniteMonoid, MonoidError> {
        Ok(FiniteMonoid::new(self.name.clone(), self.elements.clone(), self.identity, &self.table)?
            .with_notation(self.notation))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Name(String),
    Inline(MonoidDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub domain: String,
    pub codomain: String,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapRef {
    Values(Vec<usize>),
    Name(String),
    Inline(MapDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "X")]
    pub x: MonoidRef,
    #[serde(rename = "B")]
    pub b: MonoidRef,
    pub phi: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "X")]
    pub x: MonoidRef,
    #[serde(rename = "A")]
    pub a: MonoidRef,
    #[serde(rename = "B")]
    pub b: MonoidRef,
    pub p: MapRef,
    pub k: MapRef,
    pub q: MapRef,
    pub s: MapRef,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monoids: Vec<MonoidDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<ActionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub semibiproducts: Vec<BundleDoc>,
    #[serde(default)]
    pub config: Option<Config>,
}

/// One parsed file, before name resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Workspace(WorkspaceDoc),
    Bundle(BundleDoc),
    Action(ActionDoc),
    Map(MapDoc),
    Monoid(MonoidDoc),
}

impl Document {
    fn kind(&self) -> &'static str {
        match self {
            Document::Workspace(_) => "workspace",
            Document::Bundle(_) => "bundle",
            Document::Action(_) => "pseudo-action",
            Document::Map(_) => "map",
            Document::Monoid(_) => "monoid",
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind())
    }
}

fn parse_error(path: &str, location: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Parse { path: path.to_owned(), location: location.into(), message: message.into() }
}

fn typed<T: for<'de> Deserialize<'de>>(path: &str, kind: &str, obj: Map<String, Value>) -> Result<T, LoadError> {
    serde_json::from_value(Value::Object(obj)).map_err(|e| parse_error(path, kind, e.to_string()))
}

/// Parses one `sbp-1` document. `path` is used only in error messages.
pub fn parse_document(text: &str, path: &str) -> Result<Document, LoadError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| parse_error(path, format!("{}:{}", e.line(), e.column()), e.to_string()))?;
    let Value::Object(mut obj) = value else {
        return Err(parse_error(path, "$", "top level must be an object"));
    };
    match obj.get("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(parse_error(path, "schema", format!("unsupported schema {other}, expected {SCHEMA:?}"))),
        None => return Err(parse_error(path, "schema", format!("missing \"schema\": {SCHEMA:?}"))),
    }
    let workspace_keys = ["monoids", "maps", "actions", "semibiproducts", "config"];
    if workspace_keys.iter().any(|k| obj.contains_key(*k)) {
        return typed(path, "workspace", obj).map(Document::Workspace);
    }
    obj.remove("schema");
    let has = |k: &str| obj.contains_key(k);
    if has("p") {
        typed(path, "bundle", obj).map(Document::Bundle)
    } else if has("phi") {
        typed(path, "pseudo-action", obj).map(Document::Action)
    } else if has("values") {
        typed(path, "map", obj).map(Document::Map)
    } else if has("table") {
        typed(path, "monoid", obj).map(Document::Monoid)
    } else if obj.is_empty() {
        Ok(Document::Workspace(WorkspaceDoc { schema: SCHEMA.to_owned(), ..Default::default() }))
    } else {
        Err(parse_error(path, "$", "cannot tell the document kind from its keys"))
    }
}

struct Loader<'w> {
    ws: &'w mut Workspace,
}

impl Loader<'_> {
    fn declare(&mut self, path: &str, doc: &MonoidDoc) -> Result<(), LoadError> {
        let m = doc
            .build()
            .map_err(|e| LoadError::Validation { path: path.to_owned(), name: doc.name.clone(), source: e.into() })?;
        self.ws.add_monoid(m).map(|_| ())
    }

    fn declare_ref(&mut self, path: &str, r: &MonoidRef) -> Result<(), LoadError> {
        match r {
            MonoidRef::Inline(doc) => self.declare(path, doc),
            MonoidRef::Name(_) => Ok(()),
        }
    }

    fn declare_all(&mut self, path: &str, doc: &Document) -> Result<(), LoadError> {
        match doc {
            Document::Monoid(m) => self.declare(path, m),
            Document::Map(_) => Ok(()),
            Document::Action(a) => {
                self.declare_ref(path, &a.x)?;
                self.declare_ref(path, &a.b)
            }
            Document::Bundle(b) => {
                for r in [&b.x, &b.a, &b.b] {
                    self.declare_ref(path, r)?;
                }
                Ok(())
            }
            Document::Workspace(w) => {
                for m in &w.monoids {
                    self.declare(path, m)?;
                }
                for a in &w.actions {
                    self.declare_ref(path, &a.x)?;
                    self.declare_ref(path, &a.b)?;
                }
                for b in &w.semibiproducts {
                    for r in [&b.x, &b.a, &b.b] {
                        self.declare_ref(path, r)?;
                    }
                }
                Ok(())
            }
        }
    }

    fn resolve(&self, r: &MonoidRef) -> Result<Arc<FiniteMonoid>, LoadError> {
        let name = match r {
            MonoidRef::Name(n) => n,
            MonoidRef::Inline(doc) => &doc.name,
        };
        self.ws.monoid(name).cloned()
    }

    fn map(&self, path: &str, name: &str, doc: &MapDoc) -> Result<PointedMap, LoadError> {
        let d = self.ws.monoid(&doc.domain)?.clone();
        let c = self.ws.monoid(&doc.codomain)?.clone();
        PointedMap::new(d, c, doc.values.clone())
            .map_err(|e| LoadError::Validation { path: path.to_owned(), name: name.to_owned(), source: e.into() })
    }

    fn role_map(
        &self,
        path: &str,
        name: &str,
        r: &MapRef,
        d: &Arc<FiniteMonoid>,
        c: &Arc<FiniteMonoid>,
    ) -> Result<PointedMap, LoadError> {
        let invalid = |e: MapError| LoadError::Validation { path: path.to_owned(), name: name.to_owned(), source: e.into() };
        match r {
            MapRef::Values(v) => PointedMap::new(d.clone(), c.clone(), v.clone()).map_err(invalid),
            MapRef::Inline(doc) => self.map(path, name, doc),
            MapRef::Name(n) => self.ws.maps.get(n).cloned().ok_or_else(|| LoadError::DanglingReference(n.clone())),
        }
    }

    fn action(&self, doc: &ActionDoc) -> Result<ActionInput, LoadError> {
        let tables = ActionTables { phi: doc.phi.clone(), rho: doc.rho.clone(), gamma: doc.gamma.clone() };
        Ok(ActionInput { x: self.resolve(&doc.x)?, b: self.resolve(&doc.b)?, tables })
    }

    fn bundle(&self, path: &str, name: &str, doc: &BundleDoc) -> Result<BundleInput, LoadError> {
        let (x, a, b) = (self.resolve(&doc.x)?, self.resolve(&doc.a)?, self.resolve(&doc.b)?);
        let role = |tag: &str, r: &MapRef, d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>| {
            self.role_map(path, &format!("{name}.{tag}"), r, d, c)
        };
        let p = role("p", &doc.p, &a, &b)?;
        let k = role("k", &doc.k, &x, &a)?;
        let q = role("q", &doc.q, &a, &x)?;
        let s = role("s", &doc.s, &b, &a)?;
        Ok(BundleInput { x, a, b, p, k, q, s })
    }

    fn named_maps(&mut self, path: &str, doc: &Document) -> Result<(), LoadError> {
        let docs: Vec<&MapDoc> = match doc {
            Document::Map(m) => vec![m],
            Document::Workspace(w) => w.maps.iter().collect(),
            _ => vec![],
        };
        for m in docs {
            let name = m.name.clone().unwrap_or_else(|| stem(path));
            let map = self.map(path, &name, m)?;
            self.ws.add_map(name, map)?;
        }
        Ok(())
    }

    fn rest(&mut self, path: &str, doc: &Document) -> Result<(), LoadError> {
        match doc {
            Document::Monoid(_) | Document::Map(_) => Ok(()),
            Document::Action(a) => {
                let input = self.action(a)?;
                self.ws.add_action(a.name.clone().unwrap_or_else(|| stem(path)), input)
            }
            Document::Bundle(b) => {
                let name = b.name.clone().unwrap_or_else(|| stem(path));
                let input = self.bundle(path, &name, b)?;
                self.ws.add_bundle(name, input)
            }
            Document::Workspace(w) => {
                for (i, a) in w.actions.iter().enumerate() {
                    let input = self.action(a)?;
                    self.ws.add_action(a.name.clone().unwrap_or_else(|| format!("action{i}")), input)?;
                }
                for (i, b) in w.semibiproducts.iter().enumerate() {
                    let name = b.name.clone().unwrap_or_else(|| format!("semibiproduct{i}"));
                    let input = self.bundle(path, &name, b)?;
                    self.ws.add_bundle(name, input)?;
                }
                if let Some(c) = &w.config {
                    if self.ws.config != Config::default() && self.ws.config != *c {
                        return Err(LoadError::DuplicateName("config".to_owned()));
                    }
                    self.ws.config = c.clone();
                }
                Ok(())
            }
        }
    }
}

fn stem(path: &str) -> String {
    Path::new(path).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.to_owned())
}

/// Builds a workspace from already parsed documents, each tagged with the
/// path it came from. Monoids are declared first so references may point
/// across files.
pub fn load_documents(docs: &[(String, Document)]) -> Result<Workspace, LoadError> {
    let mut ws = Workspace::default();
    let mut loader = Loader { ws: &mut ws };
    for (path, doc) in docs {
        loader.declare_all(path, doc)?;
    }
    for (path, doc) in docs {
        loader.named_maps(path, doc)?;
    }
    for (path, doc) in docs {
        loader.rest(path, doc)?;
    }
    Ok(ws)
}

/// Parses a single document held in memory.
pub fn parse_str(text: &str, path: &str) -> Result<Workspace, LoadError> {
    let doc = parse_document(text, path)?;
    load_documents(&[(path.to_owned(), doc)])
}

/// Reads and resolves a list of files. An empty list yields an empty
/// workspace.
pub fn parse_inputs<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace, LoadError> {
    let mut docs = Vec::with_capacity(paths.len());
    for p in paths {
        let p = p.as_ref();
        let shown = p.display().to_string();
        let text = std::fs::read_to_string(p).map_err(|e| LoadError::Io { path: shown.clone(), message: e.to_string() })?;
        docs.push((shown.clone(), parse_document(&text, &shown)?));
    }
    load_documents(&docs)
}

/// The workspace as a single `sbp-1` document.
pub fn to_document(ws: &Workspace) -> WorkspaceDoc {
    let name = |m: &Arc<FiniteMonoid>| MonoidRef::Name(m.name().to_owned());
    WorkspaceDoc {
        schema: SCHEMA.to_owned(),
        monoids: ws.monoids.values().map(|m| MonoidDoc::of(m)).collect(),
        maps: ws
            .maps
            .iter()
            .map(|(n, m)| MapDoc {
                name: Some(n.clone()),
                domain: m.domain().name().to_owned(),
                codomain: m.codomain().name().to_owned(),
                values: m.values().to_vec(),
            })
            .collect(),
        actions: ws
            .actions
            .iter()
            .map(|(n, a)| ActionDoc {
                name: Some(n.clone()),
                x: name(&a.x),
                b: name(&a.b),
                phi: a.tables.phi.clone(),
                rho: a.tables.rho.clone(),
                gamma: a.tables.gamma.clone(),
            })
            .collect(),
        semibiproducts: ws
            .bundles
            .iter()
            .map(|(n, b)| BundleDoc {
                name: Some(n.clone()),
                x: name(&b.x),
                a: name(&b.a),
                b: name(&b.b),
                p: MapRef::Values(b.p.values().to_vec()),
                k: MapRef::Values(b.k.values().to_vec()),
                q: MapRef::Values(b.q.values().to_vec()),
                s: MapRef::Values(b.s.values().to_vec()),
            })
            .collect(),
        config: Some(ws.config.clone()),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit(ws: &Workspace) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(ws)).expect("workspace serializes");
    s.push('\n');
    s
}

/// A standalone bundle document with inline monoids.
pub fn emit_bundle(name: Option<&str>, b: &BundleInput) -> Value {
    let doc = BundleDoc {
        name: name.map(str::to_owned),
        x: MonoidRef::Inline(MonoidDoc::of(&b.x)),
        a: MonoidRef::Inline(MonoidDoc::of(&b.a)),
        b: MonoidRef::Inline(MonoidDoc::of(&b.b)),
        p: MapRef::Values(b.p.values().to_vec()),
        k: MapRef::Values(b.k.values().to_vec()),
        q: MapRef::Values(b.q.values().to_vec()),
        s: MapRef::Values(b.s.values().to_vec()),
    };
    with_schema(serde_json::to_value(doc).expect("bundle serializes"))
}

/// A standalone pseudo-action document with inline monoids.
pub fn emit_action(name: Option<&str>, a: &ActionInput) -> Value {
    let doc = ActionDoc {
        name: name.map(str::to_owned),
        x: MonoidRef::Inline(MonoidDoc::of(&a.x)),
        b: MonoidRef::Inline(MonoidDoc::of(&a.b)),
        phi: a.tables.phi.clone(),
        rho: a.tables.rho.clone(),
        gamma: a.tables.gamma.clone(),
    };
    with_schema(serde_json::to_value(doc).expect("action serializes"))
}

fn with_schema(v: Value) -> Value {
    let Value::Object(obj) = v else { unreachable!("documents are objects") };
    let mut out = Map::new();
    out.insert("schema".to_owned(), Value::String(SCHEMA.to_owned()));
    out.extend(obj);
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn e1_text() -> String {
        let sb = gallery::paper_e1().unwrap();
        serde_json::to_string_pretty(&emit_bundle(Some("E1"), &BundleInput::from_semibiproduct(&sb))).unwrap()
    }

    #[test]
    fn e1_bundle_loads() {
        let ws = parse_str(&e1_text(), "e1.json").unwrap();
        assert_eq!(ws.monoids.keys().collect::<Vec<_>>(), ["B", "R", "X"]);
        let sb = ws.bundles["E1"].verify().unwrap();
        assert_eq!(sb, gallery::paper_e1().unwrap());
    }

    #[test]
    fn empty_inputs() {
        let none: [&str; 0] = [];
        assert!(parse_inputs(&none).unwrap().is_empty());
    }

    #[test]
    fn missing_monoid_is_dangling() {
        let t = r#"{"name":"T","elements":["0"],"identity":0,"table":[[0]]}"#;
        let text = format!(r#"{{"schema":"sbp-1","X":{t},"A":"C","B":"T","p":[0],"k":[0],"q":[0],"s":[0]}}"#);
        let text = text.as_str();
        assert_eq!(parse_str(text, "b.json").unwrap_err(), LoadError::DanglingReference("C".into()));
    }

    #[test]
    fn schema_is_required() {
        let err = parse_str(r#"{"name":"T","elements":["0"],"identity":0,"table":[[0]]}"#, "m.json").unwrap_err();
        assert!(matches!(err, LoadError::Parse { ref location, .. } if location == "schema"));
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        let err = parse_str("{\n  \"schema\": \"sbp-1\",\n  oops\n}", "bad.json").unwrap_err();
        assert!(matches!(err, LoadError::Parse { ref location, .. } if location.starts_with("3:")), "{err}");
    }

    #[test]
    fn conflicting_redeclaration() {
        let a = r#"{"schema":"sbp-1","name":"T","elements":["0","a"],"identity":0,"table":[[0,1],[1,1]]}"#;
        let b = r#"{"schema":"sbp-1","name":"T","elements":["0","a"],"identity":0,"table":[[0,1],[1,0]]}"#;
        let docs = vec![
            ("a.json".to_owned(), parse_document(a, "a.json").unwrap()),
            ("a2.json".to_owned(), parse_document(a, "a2.json").unwrap()),
        ];
        assert_eq!(load_documents(&docs).unwrap().monoids.len(), 1);
        let docs = vec![
            ("a.json".to_owned(), parse_document(a, "a.json").unwrap()),
            ("b.json".to_owned(), parse_document(b, "b.json").unwrap()),
        ];
        assert_eq!(load_documents(&docs).unwrap_err(), LoadError::DuplicateName("T".into()));
    }

    #[test]
    fn invalid_monoid_is_a_validation_error() {
        let text = r#"{"schema":"sbp-1","name":"T","elements":["0","a"],"identity":1,"table":[[0,1],[1,1]]}"#;
        let err = parse_str(text, "t.json").unwrap_err();
        assert!(matches!(err, LoadError::Validation { source: ValidationError::Monoid(_), .. }));
    }

    #[test]
    fn workspace_round_trip() {
        let mut ws = parse_str(&e1_text(), "e1.json").unwrap();
        let pa = crate::semibiproduct::extract_pseudo_action(&ws.bundles["E1"].verify().unwrap()).unwrap();
        ws.add_action("E1", ActionInput::from_action(&pa)).unwrap();
        let x = ws.monoids["X"].clone();
        ws.add_map("idX", PointedMap::identity(x)).unwrap();
        ws.config.bound = 7;
        let text = emit(&ws);
        let back = parse_str(&text, "ws.json").unwrap();
        assert_eq!(back, ws);
        assert_eq!(emit(&back), text);
    }
}
