//! Catalog files: TOML documents with one `[[group]]` table per group.
//!
//! ```toml
//! # comment
//! [[group]]
//! name = "M11"
//! degree = 11
//! generators = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]
//! expected_order = 7920          # optional; integer or decimal string
//! tags = ["sporadic"]            # optional
//! actions = ["natural", "sylow2"] # optional, defaults to both
//! ```
//!
//! Instead of `generators`, an entry may give `construct`, a group
//! expression (see [`super::expr`]) whose generators are used verbatim; the
//! stated degree must then match. Points in cycle strings are 1-based.

use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

use super::expr;

const BUNDLED: &str = include_str!("../../data/catalog.toml");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub construct: Option<String>,
    pub expected_order: Option<u128>,
    pub tags: Vec<String>,
    pub actions: Vec<String>,
}

impl CatalogEntry {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OrderField {
    Int(u64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    degree: Spanned<usize>,
    #[serde(default)]
    generators: Vec<Spanned<String>>,
    construct: Option<Spanned<String>>,
    expected_order: Option<Spanned<OrderField>>,
    #[serde(default)]
    tags: Vec<String>,
    actions: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    group: Vec<RawEntry>,
}

/// 1-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn catalog_error(src: &str, offset: usize, msg: impl Into<String>) -> Error {
    let (line, column) = line_col(src, offset);
    Error::Catalog {
        line,
        column,
        msg: msg.into(),
    }
}

pub fn parse_catalog(src: &str) -> Result<Vec<CatalogEntry>> {
    let raw: RawCatalog = toml::from_str(src).map_err(|e| {
        let off = e.span().map_or(0, |s| s.start);
        catalog_error(src, off, e.message().to_string())
    })?;
    let mut out = Vec::with_capacity(raw.group.len());
    for r in raw.group {
        let degree = *r.degree.get_ref();
        if degree == 0 {
            return Err(catalog_error(src, r.degree.span().start, "degree must be positive"));
        }
        if r.generators.is_empty() == r.construct.is_none() {
            return Err(catalog_error(
                src,
                r.degree.span().start,
                format!("entry {}: give exactly one of `generators` and `construct`", r.name),
            ));
        }
        for g in &r.generators {
            if let Err(e) = Permutation::parse_cycles(g.get_ref(), degree) {
                // +1 skips the opening quote of the string literal.
                let extra = match e {
                    Error::Parse { pos, .. } => pos + 1,
                    _ => 0,
                };
                return Err(catalog_error(src, g.span().start + extra, e.to_string()));
            }
        }
        let expected_order = match r.expected_order {
            None => None,
            Some(o) => {
                let span = o.span();
                Some(match o.into_inner() {
                    OrderField::Int(n) => n as u128,
                    OrderField::Str(s) => s
                        .trim()
                        .parse::<u128>()
                        .map_err(|_| catalog_error(src, span.start, "expected_order is not an integer"))?,
                })
            }
        };
        out.push(CatalogEntry {
            name: r.name,
            degree,
            generators: r.generators.into_iter().map(Spanned::into_inner).collect(),
            construct: r.construct.map(Spanned::into_inner),
            expected_order,
            tags: r.tags,
            actions: r
                .actions
                .unwrap_or_else(|| vec!["natural".into(), "sylow2".into()]),
        });
    }
    Ok(out)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// The catalog compiled into the library.
pub fn bundled_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED).expect("bundled catalog parses")
}

pub fn bundled_source() -> &'static str {
    BUNDLED
}

/// Builds the group of an entry, validating `expected_order` when present.
pub fn realize(entry: &CatalogEntry) -> Result<PermGroup> {
    let gens: Vec<Permutation> = match &entry.construct {
        Some(c) => {
            let g = expr::resolve_expr(c, &[])?;
            if g.degree() != entry.degree {
                return Err(Error::DegreeMismatch {
                    left: entry.degree,
                    right: g.degree(),
                });
            }
            g.generators().to_vec()
        }
        None => entry
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(s, entry.degree))
            .collect::<Result<_>>()?,
    };
    let group = PermGroup::with_degree(entry.degree, gens)?;
    if let Some(expected) = entry.expected_order {
        if group.order() != expected {
            return Err(Error::OrderMismatch {
                name: entry.name.clone(),
                expected,
                actual: group.order(),
            });
        }
    }
    Ok(group)
}
