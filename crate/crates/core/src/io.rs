//! Text formats: site CSV (one node per line, optional `# field:` header)
//! and value CSV (either one value per line aligned with the site, or full
//! coordinate/value rows matched by node identity).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldValue};
use crate::sites::{Node, Site};

/// `Q` (any case, or `rationals`) or a prime modulus.
pub fn parse_field_spec(s: &str) -> Result<FieldContext> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rationals") {
        return Ok(FieldContext::rationals());
    }
    let q: u64 = s
        .parse()
        .map_err(|_| Error::ParseError(format!("invalid field spec `{s}`")))?;
    FieldContext::prime(q)
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// The field named by a `# field: ...` header line, if present.
fn header_field(text: &str) -> Result<Option<FieldContext>> {
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(spec) = rest.trim().strip_prefix("field:") {
                return Ok(Some(parse_field_spec(spec)?));
            }
        }
    }
    Ok(None)
}

/// Parses a site from CSV text. An explicit context wins over the header;
/// with neither, the rationals are assumed.
pub fn parse_site(text: &str, ctx: Option<FieldContext>) -> Result<Site> {
    let ctx = match ctx {
        Some(c) => c,
        None => header_field(text)?.unwrap_or(FieldContext::Rationals),
    };
    let mut nodes = Vec::new();
    for (lineno, line) in data_lines(text) {
        let coords: Vec<FieldValue> = line
            .split(',')
            .map(|c| {
                ctx.parse(c)
                    .map_err(|e| Error::ParseError(format!("line {lineno}: {e}")))
            })
            .collect::<Result<_>>()?;
        nodes.push(Node(coords));
    }
    Site::new(ctx, nodes)
}

pub fn site_to_csv(site: &Site) -> String {
    let mut out = match site.context().modulus() {
        Some(q) => format!("# field: {q}\n"),
        None => "# field: Q\n".to_string(),
    };
    for n in site.nodes() {
        let row: Vec<String> = n.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses prescribed values for `site`, returned in the site's node order.
/// Single-column rows are taken positionally; rows with d+1 columns carry
/// their node coordinates and are matched by identity.
pub fn parse_values(text: &str, site: &Site) -> Result<Vec<FieldValue>> {
    let ctx = site.context();
    let d = site.dim();
    let rows: Vec<(usize, Vec<&str>)> = data_lines(text)
        .map(|(n, l)| (n, l.split(',').collect()))
        .collect();
    if rows.is_empty() {
        return Err(Error::LengthMismatch {
            expected: site.len(),
            got: 0,
        });
    }
    let width = rows[0].1.len();
    if let Some((lineno, _)) = rows.iter().find(|(_, r)| r.len() != width) {
        return Err(Error::ParseError(format!(
            "line {lineno}: ragged row; expected {width} columns"
        )));
    }
    match width {
        1 => {
            if rows.len() != site.len() {
                return Err(Error::LengthMismatch {
                    expected: site.len(),
                    got: rows.len(),
                });
            }
            rows.iter().map(|(_, r)| ctx.parse(r[0])).collect()
        }
        w if w == d + 1 => {
            let mut by_node: HashMap<Node, FieldValue> = HashMap::new();
            for (lineno, row) in &rows {
                let coords: Vec<FieldValue> = row[..d]
                    .iter()
                    .map(|c| ctx.parse(c))
                    .collect::<Result<_>>()?;
                let value = ctx.parse(row[d])?;
                if by_node.insert(Node(coords), value).is_some() {
                    return Err(Error::ParseError(format!(
                        "line {lineno}: node listed twice in the value table"
                    )));
                }
            }
            if by_node.len() != site.len() {
                return Err(Error::LengthMismatch {
                    expected: site.len(),
                    got: by_node.len(),
                });
            }
            site.nodes()
                .iter()
                .map(|n| {
                    by_node.get(n).cloned().ok_or_else(|| {
                        Error::ParseError(format!("no value given for site node {n}"))
                    })
                })
                .collect()
        }
        w => Err(Error::ParseError(format!(
            "value rows must have 1 or {} columns, found {w}",
            d + 1
        ))),
    }
}
