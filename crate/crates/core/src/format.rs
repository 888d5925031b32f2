//! Text formats for embeddings and seed catalogs.
//!
//! Embedding:
//!
//! ```text
//! V E orientable_flag
//! 0: n1 n2 ... nd
//! ...
//! sign u v -1
//! ```
//!
//! Rotation lines give the cyclic neighbour order at each vertex. Sign lines
//! are optional; an edge without one is positive. A catalog is a header
//! `surface orientable_flag euler_characteristic n_seeds` followed by
//! `n_seeds` embedding blocks, each introduced by `# provenance: <text>`.

use std::collections::BTreeSet;

use crate::catalog::{Seed, SeedCatalog};
use crate::error::{Error, Result};
use crate::graph::{normalize, parse_usizes};
use crate::surface::{rule, EmbeddedTriangulation, SurfaceSpec, ValidationReport};

/// A parsed embedding together with its header claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFile {
    pub triangulation: EmbeddedTriangulation,
    pub declared_edges: usize,
    pub declared_orientable: bool,
}

impl EmbeddingFile {
    /// Compares the header against the rotation system.
    pub fn header_report(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let t = &self.triangulation;
        let sides: usize = t.rotation().iter().map(Vec::len).sum();
        if sides != 2 * self.declared_edges {
            report.push(
                rule::ROTATION_MISMATCH,
                format!(
                    "header declares {} edges, rotations list {sides} edge ends",
                    self.declared_edges
                ),
            );
        }
        if t.check_structure().is_ok()
            && crate::surface::orientability(t) != self.declared_orientable
        {
            report.push(
                rule::SURFACE_MISMATCH,
                format!(
                    "header declares orientable = {}, signs say {}",
                    self.declared_orientable, !self.declared_orientable
                ),
            );
        }
        report
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn peek(&mut self) -> Option<&str> {
        self.inner.peek().map(|&(_, l)| l)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::parse(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    /// Skips comment lines other than provenance markers.
    fn skip_comments(&mut self) {
        while let Some(l) = self.peek() {
            if l.starts_with('#') && !is_provenance(l) {
                self.inner.next();
            } else {
                break;
            }
        }
    }
}

fn is_provenance(line: &str) -> bool {
    line.strip_prefix('#')
        .map(|rest| rest.trim_start().starts_with("provenance:"))
        .unwrap_or(false)
}

fn parse_flag(line: usize, tok: &str) -> Result<bool> {
    match tok {
        "1" | "true" | "orientable" => Ok(true),
        "0" | "false" | "nonorientable" => Ok(false),
        _ => Err(Error::parse(
            line,
            format!("expected orientable flag 0 or 1, got `{tok}`"),
        )),
    }
}

fn parse_embedding_block(lines: &mut Lines<'_>) -> Result<EmbeddingFile> {
    lines.skip_comments();
    let (ln, header) = lines.next("embedding header `V E orientable_flag`")?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [v_tok, e_tok, flag_tok] = toks[..] else {
        return Err(Error::parse(
            ln,
            "embedding header must be `V E orientable_flag`",
        ));
    };
    let n: usize = v_tok
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad vertex count `{v_tok}`")))?;
    let declared_edges: usize = e_tok
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad edge count `{e_tok}`")))?;
    let declared_orientable = parse_flag(ln, flag_tok)?;

    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    for _ in 0..n {
        let (ln, line) = lines.next("rotation line `v: n1 n2 ...`")?;
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, "rotation line must look like `v: n1 n2 ...`"))?;
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::parse(ln, format!("bad vertex `{}`", head.trim())))?;
        if v >= n {
            return Err(Error::parse(ln, format!("vertex {v} out of range")));
        }
        if rotation[v].is_some() {
            return Err(Error::parse(
                ln,
                format!("rotation for vertex {v} given twice"),
            ));
        }
        rotation[v] = Some(parse_usizes(ln, rest)?);
    }

    let mut negative = BTreeSet::new();
    while lines.peek().is_some_and(|l| l.starts_with("sign")) {
        let (ln, line) = lines.next("sign line")?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["sign", u, v, s] = toks[..] else {
            return Err(Error::parse(ln, "sign line must be `sign u v s`"));
        };
        let (u, v): (usize, usize) = match (u.parse(), v.parse()) {
            (Ok(u), Ok(v)) => (u, v),
            _ => return Err(Error::parse(ln, "sign endpoints must be integers")),
        };
        match s {
            "-1" => {
                negative.insert(normalize(u, v));
            }
            "+1" | "1" => {
                negative.remove(&normalize(u, v));
            }
            _ => {
                return Err(Error::parse(
                    ln,
                    format!("sign must be +1 or -1, got `{s}`"),
                ))
            }
        }
    }

    let rotation = rotation
        .into_iter()
        .map(Option::unwrap_or_default)
        .collect();
    Ok(EmbeddingFile {
        triangulation: EmbeddedTriangulation::new(rotation, negative),
        declared_edges,
        declared_orientable,
    })
}

pub fn parse_embedding(text: &str) -> Result<EmbeddingFile> {
    let mut lines = Lines::new(text);
    let file = parse_embedding_block(&mut lines)?;
    lines.skip_comments();
    if lines.peek().is_some() {
        let (ln, _) = lines.next("")?;
        return Err(Error::parse(ln, "trailing content after embedding"));
    }
    Ok(file)
}

pub fn write_embedding(t: &EmbeddedTriangulation, orientable: bool) -> String {
    let mut out = format!(
        "{} {} {}\n",
        t.n_vertices(),
        t.n_edges(),
        u8::from(orientable)
    );
    for (v, r) in t.rotation().iter().enumerate() {
        let rest: Vec<String> = r.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{v}: {}\n", rest.join(" ")));
    }
    for (u, v) in t.negative_edges() {
        out.push_str(&format!("sign {u} {v} -1\n"));
    }
    out
}

/// Catalog header line, before any seed is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogHeader {
    pub surface_name: String,
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub n_seeds: usize,
}

pub fn parse_catalog(text: &str) -> Result<SeedCatalog> {
    let mut lines = Lines::new(text);
    lines.skip_comments();
    let (ln, header) = lines.next("catalog header")?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [name, flag, chi, count] = toks[..] else {
        return Err(Error::parse(
            ln,
            "catalog header must be `surface orientable_flag euler_characteristic n_seeds`",
        ));
    };
    let orientable = parse_flag(ln, flag)?;
    let chi: i64 = chi
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad Euler characteristic `{chi}`")))?;
    let n_seeds: usize = count
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad seed count `{count}`")))?;
    let surface =
        SurfaceSpec::from_euler(orientable, chi).map_err(|e| Error::parse(ln, e.to_string()))?;
    if let Some(named) = SurfaceSpec::from_name(name) {
        if named != surface {
            return Err(Error::parse(
                ln,
                format!("surface `{name}` does not have orientable = {orientable}, chi = {chi}"),
            ));
        }
    }

    let mut seeds = Vec::with_capacity(n_seeds);
    for _ in 0..n_seeds {
        let (ln, line) = lines.next("`# provenance:` line")?;
        if !is_provenance(line) {
            return Err(Error::parse(
                ln,
                "each seed must be preceded by `# provenance: <text>`",
            ));
        }
        let provenance = line
            .trim_start_matches('#')
            .trim_start()
            .trim_start_matches("provenance:")
            .trim()
            .to_string();
        let file = parse_embedding_block(&mut lines)?;
        seeds.push(Seed {
            triangulation: file.triangulation,
            provenance,
            declared_orientable: file.declared_orientable,
            declared_edges: file.declared_edges,
        });
    }
    lines.skip_comments();
    if lines.peek().is_some() {
        let (ln, _) = lines.next("")?;
        return Err(Error::parse(
            ln,
            format!("more seeds than the {n_seeds} declared"),
        ));
    }
    Ok(SeedCatalog { surface, seeds })
}

pub fn write_catalog(catalog: &SeedCatalog) -> String {
    let s = catalog.surface;
    let mut out = format!(
        "{} {} {} {}\n",
        s.name(),
        u8::from(s.orientable),
        s.euler_characteristic,
        catalog.seeds.len()
    );
    for seed in &catalog.seeds {
        out.push_str(&format!("# provenance: {}\n", seed.provenance));
        out.push_str(&write_embedding(
            &seed.triangulation,
            seed.declared_orientable,
        ));
    }
    out
}

/// Distinguishes the graph, embedding and catalog formats by their first
/// non-comment line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Embedding,
    Catalog,
}

pub fn sniff(text: &str) -> Option<FileKind> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    match toks.len() {
        2 => Some(FileKind::Graph),
        3 => Some(FileKind::Embedding),
        4 => Some(FileKind::Catalog),
        _ => None,
    }
}
