//! Object files: a stream of JSON objects, each with a `kind`.
//!
//! ```json
//! {"kind": "algebra", "name": "z2", "carrier": 2,
//!  "ops": {"·": {"arity": 2, "table": [0, 1, 1, 0]}}}
//! {"kind": "congruence", "name": "R", "algebra": "z2", "blocks": [[0, 1]]}
//! ```
//!
//! Carriers are a size, a list of labels, or the name of an earlier algebra.
//! Elements are indices or labels. Arrows inside diagrams are either the name
//! of an earlier function or an inline `{"dom", "cod", "map"}` object.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use relcalc::exactness::{Fork, Grid3x3, SplitSquare};
use relcalc::finset::Partition;
use relcalc::{Algebra, Carrier, Congruence, FinFn, Rel, Signature};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub file: String,
    pub line: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone)]
pub struct BarrKockData {
    pub v: Option<FinFn>,
    pub u: FinFn,
    pub w: FinFn,
    pub f: FinFn,
    pub g: FinFn,
}

#[derive(Debug, Clone)]
pub enum Object {
    Algebra(Algebra),
    Relation(Rel),
    Function(FinFn),
    Congruence {
        algebra: String,
        congruence: Congruence,
    },
    Fork(Fork),
    BarrKock(BarrKockData),
    SplitSquare(SplitSquare),
    Grid(Box<Grid3x3>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Relation(_) => "relation",
            Object::Function(_) => "function",
            Object::Congruence { .. } => "congruence",
            Object::Fork(_) => "fork",
            Object::BarrKock(_) => "barr-kock",
            Object::SplitSquare(_) => "split-square",
            Object::Grid(_) => "grid3x3",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub object: Object,
    pub provenance: Provenance,
}

/// Named objects in load order; names are unique per kind.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    entries: Vec<Entry>,
    index: BTreeMap<(&'static str, String), usize>,
}

pub const KINDS: &[&str] = &[
    "algebra",
    "relation",
    "function",
    "congruence",
    "fork",
    "barr-kock",
    "split-square",
    "grid3x3",
];

fn line_of(text: &str, offset: usize) -> usize {
    let start = offset + text[offset..].len() - text[offset..].trim_start().len();
    text[..start].matches('\n').count() + 1
}

impl Workspace {
    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
        let mut ws = Workspace::default();
        ws.add_text(path, &text)?;
        Ok(ws)
    }

    pub fn add_text(&mut self, file: &str, text: &str) -> Result<()> {
        let mut stream = serde_json::Deserializer::from_str(text).into_iter::<Value>();
        loop {
            let offset = stream.byte_offset();
            let value = match stream.next() {
                None => break,
                Some(Err(e)) => bail!(
                    "{file}: syntax error at line {} column {}: {e}",
                    e.line(),
                    e.column()
                ),
                Some(Ok(v)) => v,
            };
            let provenance = Provenance {
                file: file.to_string(),
                line: line_of(text, offset),
            };
            let (name, object) = self
                .parse_object(&value)
                .with_context(|| format!("{provenance}"))?;
            let key = (object.kind(), name.clone());
            if let Some(&prev) = self.index.get(&key) {
                bail!(
                    "{provenance}: {} `{name}` already defined at {}",
                    object.kind(),
                    self.entries[prev].provenance
                );
            }
            self.index.insert(key, self.entries.len());
            self.entries.push(Entry {
                name,
                object,
                provenance,
            });
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, kind: &'static str, name: &str) -> Option<&Entry> {
        self.index
            .get(&(kind, name.to_string()))
            .map(|&i| &self.entries[i])
    }

    fn named<'a>(&'a self, kind: &'static str, name: Option<&str>) -> Result<&'a Entry> {
        match name {
            Some(n) => self
                .get(kind, n)
                .ok_or_else(|| anyhow!("no {kind} named `{n}`")),
            None => {
                let mut it = self.entries.iter().filter(|e| e.object.kind() == kind);
                match (it.next(), it.next()) {
                    (Some(e), None) => Ok(e),
                    (None, _) => bail!("no {kind} in the input"),
                    _ => bail!("several {kind} objects in the input; name one"),
                }
            }
        }
    }

    pub fn algebra(&self, name: Option<&str>) -> Result<(&str, &Algebra)> {
        let e = self.named("algebra", name)?;
        match &e.object {
            Object::Algebra(a) => Ok((&e.name, a)),
            _ => unreachable!(),
        }
    }

    pub fn relation(&self, name: &str) -> Result<&Rel> {
        match &self.named("relation", Some(name))?.object {
            Object::Relation(r) => Ok(r),
            _ => unreachable!(),
        }
    }

    pub fn function(&self, name: &str) -> Result<&FinFn> {
        match &self.named("function", Some(name))?.object {
            Object::Function(f) => Ok(f),
            _ => unreachable!(),
        }
    }

    pub fn congruence(&self, name: &str) -> Result<(&str, &Congruence)> {
        match &self.named("congruence", Some(name))?.object {
            Object::Congruence {
                algebra,
                congruence,
            } => Ok((algebra, congruence)),
            _ => unreachable!(),
        }
    }

    /// The object of the given kind named `name`, or the only one.
    pub fn diagram(&self, kind: &'static str, name: Option<&str>) -> Result<&Entry> {
        self.named(kind, name)
    }

    fn carrier(&self, v: &Value, what: &str) -> Result<Carrier> {
        match v {
            Value::Number(_) => Ok(Carrier::new(as_usize(v, what)?)),
            Value::Array(items) => {
                let labels = items
                    .iter()
                    .map(|l| match l {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        _ => bail!("{what}: labels must be strings"),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Carrier::with_labels(labels)?)
            }
            Value::String(name) => Ok(self.algebra(Some(name))?.1.carrier().clone()),
            _ => bail!("{what}: expected a size, a label list or an algebra name"),
        }
    }

    fn function_value(&self, v: &Value, what: &str) -> Result<FinFn> {
        match v {
            Value::String(name) => self.function(name).cloned(),
            Value::Object(m) => parse_function(self, m, what).map(|(f, _, _)| f),
            _ => bail!("{what}: expected a function name or an inline function"),
        }
    }

    fn parse_object(&self, v: &Value) -> Result<(String, Object)> {
        let m = v.as_object().ok_or_else(|| anyhow!("expected an object"))?;
        let kind = field(m, "kind")?
            .as_str()
            .ok_or_else(|| anyhow!("`kind` must be a string"))?;
        let name = field(m, "name")?
            .as_str()
            .ok_or_else(|| anyhow!("`name` must be a string"))?
            .to_string();
        let object = match kind {
            "algebra" => Object::Algebra(self.parse_algebra(m)?),
            "relation" => {
                let dom = self.carrier(field(m, "dom")?, "dom")?;
                let cod = self.carrier(field(m, "cod")?, "cod")?;
                let pairs = as_array(field(m, "pairs")?, "pairs")?
                    .iter()
                    .enumerate()
                    .map(|(i, p)| pair(p, &dom, &cod, &format!("pairs[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Object::Relation(Rel::from_pairs(dom.size(), cod.size(), pairs)?)
            }
            "function" => Object::Function(parse_function(self, m, "function")?.0),
            "congruence" => {
                let alg_name = field(m, "algebra")?
                    .as_str()
                    .ok_or_else(|| anyhow!("`algebra` must be a name"))?;
                let (_, alg) = self.algebra(Some(alg_name))?;
                let blocks = as_array(field(m, "blocks")?, "blocks")?
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        as_array(b, "block")?
                            .iter()
                            .map(|e| element(e, alg.carrier(), &format!("blocks[{i}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let p = Partition::from_blocks(alg.size(), &blocks)?;
                Object::Congruence {
                    algebra: alg_name.to_string(),
                    congruence: Congruence::new(alg, p)?,
                }
            }
            "fork" => {
                let f = self.function_value(field(m, "f")?, "f")?;
                let fork = match (m.get("relation"), m.get("r1"), m.get("r2")) {
                    (Some(Value::String(r)), None, None) => Fork::new(self.relation(r)?, f)?,
                    (None, Some(r1), Some(r2)) => Fork::from_legs(
                        self.function_value(r1, "r1")?,
                        self.function_value(r2, "r2")?,
                        f,
                    )?,
                    _ => bail!("a fork needs either `relation` or both `r1` and `r2`"),
                };
                Object::Fork(fork)
            }
            "barr-kock" => Object::BarrKock(BarrKockData {
                v: m.get("v")
                    .map(|v| self.function_value(v, "v"))
                    .transpose()?,
                u: self.function_value(field(m, "u")?, "u")?,
                w: self.function_value(field(m, "w")?, "w")?,
                f: self.function_value(field(m, "f")?, "f")?,
                g: self.function_value(field(m, "g")?, "g")?,
            }),
            "split-square" => {
                let a = |k: &str| self.function_value(field(m, k)?, k);
                Object::SplitSquare(SplitSquare::new(
                    a("c")?,
                    a("d")?,
                    a("g")?,
                    a("f")?,
                    a("t")?,
                    a("s")?,
                )?)
            }
            "grid3x3" => {
                let a = |k: &str| self.function_value(field(m, k)?, k);
                Object::Grid(Box::new(Grid3x3 {
                    a1: a("a1")?,
                    a2: a("a2")?,
                    a: a("a")?,
                    b1: a("b1")?,
                    b2: a("b2")?,
                    b: a("b")?,
                    c1: a("c1")?,
                    c2: a("c2")?,
                    c: a("c")?,
                    z1: a("z1")?,
                    z2: a("z2")?,
                    z: a("z")?,
                    y1: a("y1")?,
                    y2: a("y2")?,
                    y: a("y")?,
                    k1: a("k1")?,
                    k2: a("k2")?,
                    x: a("x")?,
                }))
            }
            other => bail!(
                "unknown kind `{other}` (expected one of {})",
                KINDS.join(", ")
            ),
        };
        Ok((name, object))
    }

    fn parse_algebra(&self, m: &Map<String, Value>) -> Result<Algebra> {
        let carrier = self.carrier(field(m, "carrier")?, "carrier")?;
        let ops = match m.get("ops") {
            None => Map::new(),
            Some(Value::Object(o)) => o.clone(),
            Some(_) => bail!("`ops` must be an object"),
        };
        let mut sig = Vec::new();
        let mut tables = Vec::new();
        for (op, spec) in &ops {
            let spec = spec
                .as_object()
                .ok_or_else(|| anyhow!("op `{op}`: expected {{arity, table}}"))?;
            let arity = as_usize(field(spec, "arity")?, "arity")?;
            let table = as_array(field(spec, "table")?, "table")?
                .iter()
                .enumerate()
                .map(|(i, e)| element(e, &carrier, &format!("op `{op}` table[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            sig.push((op.clone(), arity));
            tables.push(table);
        }
        Ok(Algebra::new(carrier, Signature::new(sig)?, tables)?)
    }
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| anyhow!("missing field `{key}`"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| anyhow!("{what}: expected a list"))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| anyhow!("{what}: expected a nonnegative integer"))
}

fn element(v: &Value, carrier: &Carrier, what: &str) -> Result<usize> {
    match v {
        Value::Number(_) => {
            let i = as_usize(v, what)?;
            if i >= carrier.size() {
                bail!(
                    "{what}: element {i} outside a carrier of size {}",
                    carrier.size()
                );
            }
            Ok(i)
        }
        Value::String(s) => carrier
            .lookup(s)
            .ok_or_else(|| anyhow!("{what}: unknown label `{s}`")),
        _ => bail!("{what}: expected an index or a label"),
    }
}

fn pair(v: &Value, dom: &Carrier, cod: &Carrier, what: &str) -> Result<(usize, usize)> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((element(x, dom, what)?, element(y, cod, what)?)),
        _ => bail!("{what}: expected a pair"),
    }
}

fn parse_function(
    ws: &Workspace,
    m: &Map<String, Value>,
    what: &str,
) -> Result<(FinFn, Carrier, Carrier)> {
    let dom = ws.carrier(field(m, "dom")?, "dom")?;
    let cod = ws.carrier(field(m, "cod")?, "cod")?;
    let map = as_array(field(m, "map")?, "map")?
        .iter()
        .enumerate()
        .map(|(i, e)| element(e, &cod, &format!("{what} map[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if map.len() != dom.size() {
        bail!(
            "{what}: map has {} entries for a domain of size {}",
            map.len(),
            dom.size()
        );
    }
    Ok((FinFn::new(cod.size(), map)?, dom, cod))
}

pub fn carrier_json(c: &Carrier) -> Value {
    match c.labels() {
        Some(labels) => json!(labels),
        None => json!(c.size()),
    }
}

/// The file form of an algebra; tables use indices.
pub fn algebra_json(name: &str, alg: &Algebra) -> Value {
    let mut ops = Map::new();
    for (i, op) in alg.signature().ops().iter().enumerate() {
        ops.insert(
            op.name.clone(),
            json!({"arity": op.arity, "table": alg.table(i)}),
        );
    }
    json!({"kind": "algebra", "name": name, "carrier": carrier_json(alg.carrier()), "ops": ops})
}

pub fn function_json(f: &FinFn) -> Value {
    json!({"dom": f.dom(), "cod": f.cod(), "map": f.map()})
}

pub fn pairs_json(r: &Rel) -> Value {
    Value::Array(r.pairs().map(|(x, y)| json!([x, y])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_lines() {
        let mut ws = Workspace::default();
        let text = "{\"kind\": \"function\", \"name\": \"f\", \"dom\": 2, \"cod\": 1, \"map\": [0, 0]}\n\n  {\"kind\": \"function\", \"name\": \"g\", \"dom\": 1, \"cod\": 1, \"map\": [0]}\n";
        ws.add_text("t", text).unwrap();
        let lines: Vec<usize> = ws.entries().iter().map(|e| e.provenance.line).collect();
        assert_eq!(lines, vec![1, 3]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut ws = Workspace::default();
        let text = "{\"kind\": \"algebra\", \"name\": \"a\", \"carrier\": 1}\n{\"kind\": \"algebra\", \"name\": \"a\", \"carrier\": 2}";
        let err = ws.add_text("t", text).unwrap_err().to_string();
        assert!(err.contains("already defined at t:1"), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let mut ws = Workspace::default();
        let err = ws
            .add_text("t", "{\"kind\": \"algebra\",\n \"name\" \"a\"}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn labels_and_references() {
        let mut ws = Workspace::default();
        let text = r#"{"kind": "algebra", "name": "s", "carrier": ["a", "b"], "ops": {}}
{"kind": "relation", "name": "le", "dom": "s", "cod": "s", "pairs": [["a", "a"], ["a", "b"], ["b", "b"]]}"#;
        ws.add_text("t", text).unwrap();
        assert!(ws.relation("le").unwrap().contains(0, 1));
        assert!(!ws.relation("le").unwrap().contains(1, 0));
    }
}
