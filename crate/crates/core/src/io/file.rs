//! The subspace file format.
//!
//! UTF-8, LF line endings. Line 1 is the header `p=<prime> n=<count>`. The
//! body is one generator expression per line (blank lines and `#` comments
//! allowed), or the literal line `@matrix` followed by coordinate rows of
//! C(n,2) integers separated by single spaces, columns in the v-basis order.
//! Files written by [`render_subspace`] reload to the identical subspace and
//! re-render byte-for-byte.

use std::path::Path;

use crate::fpalg::Subspace;
use crate::io::expr::{is_blank, parse_expression};
use crate::spaces::SpaceContext;
use crate::{Error, Result};

/// Parse the `p=<int> n=<int>` header.
fn parse_header(line: &str) -> Result<(u64, usize)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(Error::Header(format!(
            "expected 'p=<prime> n=<count>', got '{line}'"
        )));
    }
    let p = tokens[0]
        .strip_prefix("p=")
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| Error::Header(format!("bad p field '{}'", tokens[0])))?;
    let n = tokens[1]
        .strip_prefix("n=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::Header(format!("bad n field '{}'", tokens[1])))?;
    Ok((p, n))
}

/// Load a subspace file from text.
pub fn load_subspace_str(text: &str) -> Result<(SpaceContext, Subspace)> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if is_blank(l) => continue,
            Some((_, l)) => break l,
            None => return Err(Error::Header("empty file".into())),
        }
    };
    let (p, n) = parse_header(header)?;
    let ctx = SpaceContext::new(n, p)?;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut matrix_mode = false;
    for (lineno, line) in lines {
        if is_blank(line) {
            continue;
        }
        let trimmed = line.trim();
        if trimmed == "@matrix" {
            matrix_mode = true;
            continue;
        }
        if matrix_mode {
            let mut row = Vec::with_capacity(ctx.dim_v());
            for tok in trimmed.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("bad matrix entry '{tok}'"),
                })?;
                row.push(ctx.modulus().reduce_signed(v));
            }
            if row.len() != ctx.dim_v() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!(
                        "matrix row has {} entries, expected C(n,2) = {}",
                        row.len(),
                        ctx.dim_v()
                    ),
                });
            }
            rows.push(row);
        } else {
            let expr = parse_expression(trimmed, n).map_err(|e| match e {
                Error::Parse { col, msg, .. } => Error::Parse {
                    line: lineno + 1,
                    col,
                    msg,
                },
                other => other,
            })?;
            rows.push(expr.resolve(&ctx)?);
        }
    }
    let subspace = Subspace::span(&rows, ctx.dim_v(), ctx.modulus())?;
    Ok((ctx, subspace))
}

/// Load a subspace file from disk.
pub fn load_subspace(path: impl AsRef<Path>) -> Result<(SpaceContext, Subspace)> {
    let text = std::fs::read_to_string(path)?;
    load_subspace_str(&text)
}

/// Canonical text form of a subspace of V: header, `@matrix`, RREF rows.
pub fn render_subspace(ctx: &SpaceContext, x: &Subspace) -> String {
    let mut out = format!("p={} n={}\n@matrix\n", ctx.p(), ctx.n());
    for row in x.basis_rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Text form for a subspace of an auxiliary ambient (W or V^n): the same
/// layout plus a comment naming the ambient dimension. Not reloadable as a
/// subspace of V.
pub fn render_aux_subspace(ctx: &SpaceContext, label: &str, x: &Subspace) -> String {
    let mut out = format!(
        "p={} n={}\n# ambient {} dim {}\n@matrix\n",
        ctx.p(),
        ctx.n(),
        label,
        x.ambient_dim()
    );
    for row in x.basis_rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_subspace(path: impl AsRef<Path>, ctx: &SpaceContext, x: &Subspace) -> Result<()> {
    std::fs::write(path, render_subspace(ctx, x))?;
    Ok(())
}
