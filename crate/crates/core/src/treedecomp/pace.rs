//! PACE 2017 `.gr` and `.td` formats. Ids are 1-based on disk.

use std::fmt::Write as _;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::model::Graph;

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub(crate) fn parse_num(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

/// Converts a 1-based id to 0-based, checking the range.
pub(crate) fn vertex_id(line: usize, tok: Option<&str>, n: usize) -> Result<usize> {
    let v = parse_num(line, tok, "vertex id")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex id {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses a `p <kind> <n> <m>` header line.
pub(crate) fn parse_header(line: usize, text: &str, kind: &str) -> Result<(usize, usize)> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some(kind) {
        return Err(Error::parse(line, format!("expected header `p {kind} <n> <m>`")));
    }
    let n = parse_num(line, toks.next(), "vertex count")?;
    let m = parse_num(line, toks.next(), "edge count")?;
    if toks.next().is_some() {
        return Err(Error::parse(line, "trailing tokens in header"));
    }
    Ok((n, m))
}

/// Reads the edge lines of a `.gr`-style body. Lines for which `other`
/// returns `true` are consumed by the caller.
pub(crate) fn read_gr_body<'a>(
    text: &'a str,
    kind: &str,
    mut other: impl FnMut(usize, &'a str) -> Result<bool>,
) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let (n, m) = parse_header(hl, header, kind)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hl;
    for (ln, l) in lines {
        last_line = ln;
        if other(ln, l)? {
            continue;
        }
        let mut toks = l.split_whitespace();
        if kind == "edge" && toks.next() != Some("e") {
            return Err(Error::parse(ln, "expected `e <u> <v>`"));
        }
        let u = vertex_id(ln, toks.next(), n)?;
        let v = vertex_id(ln, toks.next(), n)?;
        if toks.next().is_some() {
            return Err(Error::parse(ln, "trailing tokens on edge line"));
        }
        if u == v {
            return Err(Error::parse(ln, "self-loop"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(last_line, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

pub fn read_pace_gr(text: &str) -> Result<Graph> {
    read_gr_body(text, "tw", |_, _| Ok(false))
}

/// Canonical form: header, then edges `u < v` in ascending order.
pub fn write_pace_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n_vertices(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Reads `s td <#bags> <width+1> <n>`, `b <id> <ids…>` lines and tree edges.
/// Bag count and the declared maximum bag size must match the body.
pub fn read_pace_td(text: &str) -> Result<TreeDecomposition> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("s") || toks.next() != Some("td") {
        return Err(Error::parse(hl, "expected header `s td <bags> <width+1> <n>`"));
    }
    let n_bags = parse_num(hl, toks.next(), "bag count")?;
    let declared = parse_num(hl, toks.next(), "bag size")?;
    let n = parse_num(hl, toks.next(), "vertex count")?;
    if toks.next().is_some() {
        return Err(Error::parse(hl, "trailing tokens in header"));
    }
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; n_bags];
    let mut edges = Vec::new();
    let mut last_line = hl;
    for (ln, l) in lines {
        last_line = ln;
        let mut toks = l.split_whitespace();
        if l.starts_with('b') {
            toks.next();
            let id = parse_num(ln, toks.next(), "bag id")?;
            if id == 0 || id > n_bags {
                return Err(Error::parse(ln, format!("bag id {id} outside 1..={n_bags}")));
            }
            if bags[id - 1].is_some() {
                return Err(Error::parse(ln, format!("bag {id} defined twice")));
            }
            let mut bag = Vec::new();
            let mut rest = toks.peekable();
            while rest.peek().is_some() {
                bag.push(vertex_id(ln, rest.next(), n)?);
            }
            bags[id - 1] = Some(bag);
        } else {
            let a = parse_num(ln, toks.next(), "bag id")?;
            let b = parse_num(ln, toks.next(), "bag id")?;
            if toks.next().is_some() {
                return Err(Error::parse(ln, "trailing tokens on tree edge"));
            }
            for id in [a, b] {
                if id == 0 || id > n_bags {
                    return Err(Error::parse(ln, format!("bag id {id} outside 1..={n_bags}")));
                }
            }
            edges.push((a - 1, b - 1));
        }
    }
    let defined = bags.iter().filter(|b| b.is_some()).count();
    if defined != n_bags {
        return Err(Error::parse(last_line, format!("header announces {n_bags} bags, found {defined}")));
    }
    let bags: Vec<Vec<usize>> = bags.into_iter().map(|b| b.expect("checked")).collect();
    let td = TreeDecomposition::new(n, bags, edges);
    if td.max_bag_size() != declared {
        return Err(Error::parse(
            hl,
            format!("header announces bag size {declared}, largest bag has {}", td.max_bag_size()),
        ));
    }
    Ok(td)
}

pub fn write_pace_td(td: &TreeDecomposition) -> String {
    let mut out = format!("s td {} {} {}\n", td.n_nodes(), td.max_bag_size(), td.n_vertices());
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}
