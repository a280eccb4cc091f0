//! Text formats: hypergraphs (`.hg`), Gen-VC instances (`.gr` with `x`/`y`
//! lines), DIMACS `.col` graphs and certificate documents.
//!
//! Vertex and witness ids are 1-based on disk and 0-based in memory.

use std::fmt::{self, Write as _};

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::model::{GenVcInstance, Graph, Hypergraph, ShatterCertificate};
use crate::shatter::{verify_hypergraph_certificate, verify_instance_certificate, CertificateError};
use crate::treedecomp::pace::{parse_header, read_gr_body, vertex_id};
use crate::treedecomp::{read_pace_gr, write_pace_gr};

/// Reads `p hg <n> <m>` followed by `m` edge lines. Lines starting with
/// `c` are comments; an empty line is the empty edge. Blank lines after
/// the last edge are ignored.
pub fn read_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('c'));
    let (hl, header) = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some(h) => break h,
            None => return Err(Error::parse(1, "empty input")),
        }
    };
    let (n, m) = parse_header(hl, header, "hg")?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines.by_ref() {
        last = ln;
        let mut edge = Vec::new();
        let mut toks = l.split_whitespace().peekable();
        while toks.peek().is_some() {
            edge.push(vertex_id(ln, toks.next(), n)?);
        }
        edges.push(edge);
        if edges.len() == m {
            break;
        }
    }
    if edges.len() != m {
        return Err(Error::parse(last, format!("header announces {m} edges, found {}", edges.len())));
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(ln, "content after the last edge"));
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("p hg {} {}\n", h.n_vertices(), h.num_edges());
    for e in h.edges() {
        out.push_str(&join_ids(e));
        out.push('\n');
    }
    out
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Reads a `.gr` graph plus optional `x <ids…>` and `y <ids…>` lines. A
/// missing line means the whole vertex set.
pub fn read_instance(text: &str) -> Result<GenVcInstance> {
    let mut x_line: Option<(usize, &str)> = None;
    let mut y_line: Option<(usize, &str)> = None;
    let graph = read_gr_body(text, "tw", |ln, l| {
        let slot = match l.split_whitespace().next() {
            Some("x") => &mut x_line,
            Some("y") => &mut y_line,
            _ => return Ok(false),
        };
        if slot.replace((ln, l)).is_some() {
            return Err(Error::parse(ln, "side listed twice"));
        }
        Ok(true)
    })?;
    let n = graph.n_vertices();
    let side = |line: Option<(usize, &str)>| -> Result<Vec<usize>> {
        match line {
            None => Ok((0..n).collect()),
            Some((ln, l)) => {
                let mut toks = l.split_whitespace().skip(1).peekable();
                let mut ids = Vec::new();
                while toks.peek().is_some() {
                    ids.push(vertex_id(ln, toks.next(), n)?);
                }
                Ok(ids)
            }
        }
    };
    let (x, y) = (side(x_line)?, side(y_line)?);
    GenVcInstance::new(graph, x, y)
}

/// `.gr` body followed by the `x` and `y` lines.
pub fn write_instance(inst: &GenVcInstance) -> String {
    let mut out = write_pace_gr(inst.graph());
    for (tag, side) in [("x", inst.x()), ("y", inst.y())] {
        out.push_str(tag);
        for v in side {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

/// Reads DIMACS `p edge <n> <m>` with `e <u> <v>` lines.
pub fn read_dimacs_col(text: &str) -> Result<Graph> {
    read_gr_body(text, "edge", |_, _| Ok(false))
}

/// Reads a plain graph from either PACE `.gr` or DIMACS `.col` text.
pub fn read_graph(text: &str) -> Result<Graph> {
    match header_kind(text) {
        Some("edge") => read_dimacs_col(text),
        _ => read_pace_gr(text),
    }
}

fn header_kind(text: &str) -> Option<&str> {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('c'))?;
    let mut toks = line.split_whitespace();
    (toks.next() == Some("p")).then(|| toks.next()).flatten()
}

/// A parsed solver input.
#[derive(Clone, Debug)]
pub enum Input {
    Hypergraph(Hypergraph),
    Instance(GenVcInstance),
}

/// Detects the format from the header: `p hg` is a hypergraph, `p tw` an
/// instance and `p edge` a DIMACS graph taken with `X = Y = V`.
pub fn read_input(text: &str) -> Result<Input> {
    match header_kind(text) {
        Some("hg") => read_hypergraph(text).map(Input::Hypergraph),
        Some("tw") => read_instance(text).map(Input::Instance),
        Some("edge") => read_dimacs_col(text).map(|g| Input::Instance(GenVcInstance::graph_vc(g))),
        Some(other) => Err(Error::parse(1, format!("unknown format `p {other}`"))),
        None => Err(Error::parse(1, "missing `p` header")),
    }
}

/// Bit string of `pattern` over `k` positions, least significant bit first.
pub fn pattern_key(pattern: usize, k: usize) -> String {
    (0..k).map(|i| if pattern >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_pattern_key(key: &str) -> Option<usize> {
    key.chars().rev().try_fold(0usize, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some(acc << 1 | 1),
        _ => None,
    })
}

/// A solver result as written to disk.
///
/// `fields` holds extra `key: value` lines printed between `vc_dimension`
/// and `shattered_set`, in insertion order. Ids in `shattered_set` and
/// `witnesses` are 0-based; edge indices for hypergraphs, vertex ids for
/// instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDocument {
    pub vc_dimension: i64,
    pub fields: Vec<(String, String)>,
    pub certificate: Option<ShatterCertificate>,
}

impl CertificateDocument {
    pub fn new(vc_dimension: i64, certificate: Option<ShatterCertificate>) -> Self {
        CertificateDocument { vc_dimension, fields: Vec::new(), certificate }
    }

    pub fn with_field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vc_dimension: {}\n", self.vc_dimension);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        let (set, witnesses) = match &self.certificate {
            Some(c) => (c.shattered_set.as_slice(), c.witnesses.as_slice()),
            None => (&[][..], &[][..]),
        };
        let ids: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "shattered_set: [{}]", ids.join(", "));
        out.push_str("witnesses:\n");
        for (p, w) in witnesses.iter().enumerate() {
            let _ = writeln!(out, "  \"{}\": {}", pattern_key(p, set.len()), w + 1);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("vc_dimension".into(), Value::from(self.vc_dimension));
        for (k, v) in &self.fields {
            let value = if let Ok(i) = v.parse::<i64>() {
                Value::from(i)
            } else if let Ok(b) = v.parse::<bool>() {
                Value::from(b)
            } else {
                Value::from(v.as_str())
            };
            obj.insert(k.clone(), value);
        }
        let mut set = Vec::new();
        let mut witnesses = Map::new();
        if let Some(c) = &self.certificate {
            set = c.shattered_set.iter().map(|v| Value::from(v + 1)).collect();
            for (p, w) in c.witnesses.iter().enumerate() {
                witnesses.insert(pattern_key(p, c.size()), Value::from(w + 1));
            }
        }
        obj.insert("shattered_set".into(), Value::Array(set));
        obj.insert("witnesses".into(), Value::Object(witnesses));
        Value::Object(obj)
    }

    /// Parses either rendering; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    fn parse_text(text: &str) -> Result<Self> {
        let mut vc = None;
        let mut fields = Vec::new();
        let mut set: Option<Vec<usize>> = None;
        let mut entries: Vec<(usize, String, usize)> = Vec::new();
        let mut in_witnesses = false;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            if in_witnesses && raw.starts_with(char::is_whitespace) {
                let (key, id) = raw
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::parse(ln, "expected `\"<bits>\": <id>`"))?;
                let key = key.trim();
                let bits = key
                    .strip_prefix('"')
                    .and_then(|k| k.strip_suffix('"'))
                    .ok_or_else(|| Error::parse(ln, "pattern key must be quoted"))?;
                entries.push((ln, bits.to_string(), one_based(ln, id.trim())?));
                continue;
            }
            in_witnesses = false;
            let (key, value) = raw.split_once(':').ok_or_else(|| Error::parse(ln, "expected `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "vc_dimension" => {
                    vc = Some(value.parse::<i64>().map_err(|_| Error::parse(ln, "invalid vc_dimension"))?)
                }
                "shattered_set" => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(|| Error::parse(ln, "shattered_set must be a bracketed list"))?;
                    let ids = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| one_based(ln, t))
                        .collect::<Result<Vec<_>>>()?;
                    set = Some(ids);
                }
                "witnesses" => in_witnesses = true,
                other => fields.push((other.to_string(), value.to_string())),
            }
        }
        let vc = vc.ok_or_else(|| Error::parse(1, "missing vc_dimension"))?;
        let set = set.ok_or_else(|| Error::parse(1, "missing shattered_set"))?;
        let mut witnesses = vec![None; if vc < 0 { 0 } else { 1usize << set.len().min(40) }];
        for (ln, bits, id) in entries {
            let p = (bits.len() == set.len())
                .then(|| parse_pattern_key(&bits))
                .flatten()
                .ok_or_else(|| Error::parse(ln, format!("bad pattern key \"{bits}\"")))?;
            if witnesses.get(p).is_none() {
                return Err(Error::parse(ln, format!("pattern \"{bits}\" for a negative result")));
            }
            if witnesses[p].replace(id).is_some() {
                return Err(Error::parse(ln, format!("pattern \"{bits}\" listed twice")));
            }
        }
        Self::assemble(vc, fields, set, witnesses)
    }

    fn parse_json(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, msg.to_string());
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("expected a JSON object"))?;
        let vc = obj.get("vc_dimension").and_then(Value::as_i64).ok_or_else(|| bad("missing vc_dimension"))?;
        let id = |v: &Value| -> Result<usize> {
            match v.as_u64() {
                Some(i) if i >= 1 => Ok(i as usize - 1),
                _ => Err(bad("ids must be positive integers")),
            }
        };
        let set = obj
            .get("shattered_set")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing shattered_set"))?
            .iter()
            .map(id)
            .collect::<Result<Vec<_>>>()?;
        let mut witnesses = vec![None; if vc < 0 { 0 } else { 1usize << set.len().min(40) }];
        let map = obj.get("witnesses").and_then(Value::as_object).ok_or_else(|| bad("missing witnesses"))?;
        for (bits, w) in map {
            let p = (bits.len() == set.len())
                .then(|| parse_pattern_key(bits))
                .flatten()
                .filter(|&p| p < witnesses.len())
                .ok_or_else(|| bad(&format!("bad pattern key \"{bits}\"")))?;
            witnesses[p] = Some(id(w)?);
        }
        let fields = obj
            .iter()
            .filter(|(k, _)| !matches!(k.as_str(), "vc_dimension" | "shattered_set" | "witnesses"))
            .map(|(k, v)| (k.clone(), v.as_str().map_or_else(|| v.to_string(), str::to_string)))
            .collect();
        Self::assemble(vc, fields, set, witnesses)
    }

    fn assemble(
        vc: i64,
        fields: Vec<(String, String)>,
        set: Vec<usize>,
        witnesses: Vec<Option<usize>>,
    ) -> Result<Self> {
        if vc < 0 {
            if !set.is_empty() {
                return Err(Error::parse(1, "negative vc_dimension with a non-empty shattered_set"));
            }
            return Ok(CertificateDocument { vc_dimension: vc, fields, certificate: None });
        }
        let witnesses = witnesses
            .into_iter()
            .enumerate()
            .map(|(p, w)| w.ok_or_else(|| Error::parse(1, format!("no witness for pattern \"{}\"", pattern_key(p, set.len())))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CertificateDocument {
            vc_dimension: vc,
            fields,
            certificate: Some(ShatterCertificate { shattered_set: set, witnesses }),
        })
    }

    /// Re-checks the document against its input.
    pub fn verify(&self, input: &Input) -> std::result::Result<(), VerifyError> {
        let Some(cert) = &self.certificate else {
            let empty = match input {
                Input::Hypergraph(h) => h.num_edges() == 0,
                Input::Instance(inst) => inst.y().is_empty(),
            };
            return if self.vc_dimension == -1 && empty {
                Ok(())
            } else {
                Err(VerifyError::NegativeWithWitnesses)
            };
        };
        if self.vc_dimension != cert.size() as i64 {
            return Err(VerifyError::SizeMismatch { claimed: self.vc_dimension, listed: cert.size() });
        }
        let res = match input {
            Input::Hypergraph(h) => verify_hypergraph_certificate(h, cert),
            Input::Instance(inst) => verify_instance_certificate(inst, cert),
        };
        res.map_err(|e| VerifyError::Certificate { k: cert.size(), error: e })
    }
}

fn one_based(line: usize, tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(Error::parse(line, format!("invalid id `{tok}`"))),
    }
}

/// Why a certificate document was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// `vc_dimension` differs from the size of the listed set.
    SizeMismatch { claimed: i64, listed: usize },
    /// A negative result for an input that has an edge (or a `Y` vertex).
    NegativeWithWitnesses,
    Certificate { k: usize, error: CertificateError },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::SizeMismatch { claimed, listed } => {
                write!(f, "vc_dimension {claimed} but shattered_set has {listed} vertices")
            }
            VerifyError::NegativeWithWitnesses => {
                f.write_str("vc_dimension -1 claimed, but the empty set is shattered")
            }
            VerifyError::Certificate { k, error } => match error {
                CertificateError::WrongLength { expected, found } => {
                    write!(f, "expected {expected} witnesses, found {found}")
                }
                CertificateError::BadVertex(v) => write!(f, "shattered_set vertex {} is not allowed", v + 1),
                CertificateError::BadWitness { pattern, witness } => {
                    write!(f, "pattern \"{}\": {} is not a valid witness", pattern_key(*pattern, *k), witness + 1)
                }
                CertificateError::WrongTrace { pattern, witness } => write!(
                    f,
                    "pattern \"{}\": witness {} realizes a different subset",
                    pattern_key(*pattern, *k),
                    witness + 1
                ),
            },
        }
    }
}

impl std::error::Error for VerifyError {}
