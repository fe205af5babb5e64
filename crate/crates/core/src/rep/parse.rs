//! Text format for representations.
//!
//! ```text
//! rep explicit
//! dim 1 = 1
//! dim 2 = 1
//! raydim r = 1 @ 2
//! map a = [[1]]
//! ```
//!
//! ```text
//! rep presented
//! gens: 1 2*2
//! relgens: 2
//! rel[0][0] = a
//! ```
//!
//! `rel[i][j]` is the path combination from generator `i` to relation
//! generator `j` (both 0-based). Unlisted dimensions and maps are zero,
//! except that ray arrows beyond a `raydim` depth default to the identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{min_depth, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};
use crate::pathcat::{parse_path_expr, PathMatrix};
use crate::quiver::parse::{column_of, strip_comment};
use crate::quiver::{Arrow, Direction, Quiver, Vertex};

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Re-anchors errors raised while parsing a fragment of `raw`.
fn at_line(e: Error, line: usize, raw: &str, frag: &str) -> Error {
    match e {
        Error::Parse { message, .. } => perr(line, column_of(raw, frag), message),
        Error::UnknownVertex(v) => perr(line, column_of(raw, &v), format!("unknown vertex `{v}`")),
        Error::UnknownArrow(a) => perr(line, column_of(raw, &a), format!("unknown arrow `{a}`")),
        Error::Linalg(l) => perr(line, column_of(raw, frag), l.to_string()),
        other => other,
    }
}

fn parse_matrix(f: FieldSpec, text: &str) -> std::result::Result<(usize, Vec<Vec<Scalar>>), String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or("matrix must be written as [[row], [row], ...]")?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let open = rest.strip_prefix('[').ok_or("expected `[` to open a row")?;
        let close = open.find(']').ok_or("unclosed row")?;
        let row = open[..close].trim();
        let entries = if row.is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|e| f.parse(e.trim()).map_err(|err| err.to_string()))
                .collect::<std::result::Result<Vec<_>, _>>()?
        };
        rows.push(entries);
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err("expected `,` between rows".into());
        }
    }
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != cols) {
        return Err("rows have different lengths".into());
    }
    Ok((cols, rows))
}

fn parse_count(text: &str) -> Option<usize> {
    text.trim().parse().ok()
}

/// Parses a representation in explicit or presented form.
pub fn parse_representation(q: &Arc<Quiver>, text: &str) -> Result<Representation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw, strip_comment(raw).trim()))
        .filter(|(_, _, l)| !l.is_empty());
    let (hl, hraw, header) = lines
        .next()
        .ok_or_else(|| perr(1, 1, "empty representation file"))?;
    let body: Vec<(usize, &str, &str)> = lines.collect();
    match header {
        "rep explicit" => parse_explicit(q, &body),
        "rep presented" => parse_presented(q, &body),
        _ => Err(perr(
            hl,
            column_of(hraw, header),
            "expected `rep explicit` or `rep presented`",
        )),
    }
}

fn parse_explicit(q: &Arc<Quiver>, body: &[(usize, &str, &str)]) -> Result<Representation> {
    let f = q.field();
    let mut dims: BTreeMap<Vertex, (usize, usize)> = BTreeMap::new();
    let mut raydims: BTreeMap<usize, (usize, u32)> = BTreeMap::new();
    let mut maps: BTreeMap<Arrow, (usize, &str, ExactMatrix)> = BTreeMap::new();
    let mut depth = min_depth(q);
    for &(ln, raw, line) in body {
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .map(|(a, b)| (a, b.trim()))
            .unwrap_or((line, ""));
        let (lhs, rhs) = rest
            .split_once('=')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| perr(ln, column_of(raw, rest), "expected `<name> = <value>`"))?;
        match kw {
            "dim" => {
                let v = q.vertex(lhs).map_err(|e| at_line(e, ln, raw, lhs))?;
                let n = parse_count(rhs)
                    .ok_or_else(|| perr(ln, column_of(raw, rhs), "expected a dimension"))?;
                if dims.insert(v, (n, ln)).is_some() {
                    return Err(perr(ln, column_of(raw, lhs), format!("dimension of `{lhs}` given twice")));
                }
                depth = depth.max(v.depth());
            }
            "raydim" => {
                let r = q
                    .rays()
                    .iter()
                    .position(|r| r.name == lhs)
                    .ok_or_else(|| perr(ln, column_of(raw, lhs), format!("unknown ray `{lhs}`")))?;
                if q.ray_direction(r) != Direction::Outward {
                    return Err(perr(
                        ln,
                        column_of(raw, lhs),
                        format!("ray `{lhs}` is inward; finitely presented data vanishes along it"),
                    ));
                }
                let (n, at) = rhs
                    .split_once('@')
                    .and_then(|(n, d)| Some((parse_count(n)?, d.trim().parse::<u32>().ok()?)))
                    .ok_or_else(|| perr(ln, column_of(raw, rhs), "expected `<n> @ <depth>`"))?;
                let at = at.max(1);
                raydims.insert(r, (n, at));
                depth = depth.max(at);
            }
            "map" => {
                let a = q.arrow(lhs).map_err(|e| at_line(e, ln, raw, lhs))?;
                let (cols, rows) = parse_matrix(f, rhs).map_err(|m| perr(ln, column_of(raw, rhs), m))?;
                let nrows = rows.len();
                let m = ExactMatrix::new(f, nrows, cols, rows.into_iter().flatten().collect());
                if maps.insert(a, (ln, raw, m)).is_some() {
                    return Err(perr(ln, column_of(raw, lhs), format!("map `{lhs}` given twice")));
                }
                if let Arrow::Ray { depth: k, .. } = a {
                    depth = depth.max(k);
                }
            }
            _ => {
                return Err(perr(
                    ln,
                    column_of(raw, kw),
                    format!("unknown declaration `{kw}`"),
                ))
            }
        }
    }
    let window = q.window_vertices(depth);
    let dim_of = |v: Vertex| -> Result<usize> {
        let stable = match v {
            Vertex::Ray { ray, depth: k } => raydims.get(&ray).filter(|(_, at)| k >= *at).map(|(n, _)| *n),
            _ => None,
        };
        match (dims.get(&v), stable) {
            (Some((n, ln)), Some(s)) if *n != s => Err(perr(
                *ln,
                1,
                format!("dimension of `{}` contradicts the ray dimension {s}", q.vertex_name(v)),
            )),
            (Some((n, _)), _) => Ok(*n),
            (None, Some(s)) => Ok(s),
            (None, None) => Ok(0),
        }
    };
    let dv = window.iter().map(|v| dim_of(*v)).collect::<Result<Vec<_>>>()?;
    let mut ms = Vec::new();
    for a in q.window_arrows(depth) {
        let s = dv[q.vertex_index(q.source(a), depth).unwrap()];
        let t = dv[q.vertex_index(q.target(a), depth).unwrap()];
        let m = match maps.remove(&a) {
            Some((ln, raw, m)) => {
                if m.shape() != (t, s) && !(m.rows() * m.cols() == 0 && t * s == 0) {
                    return Err(perr(
                        ln,
                        column_of(raw, "="),
                        format!(
                            "map `{}` is {}x{}, expected {t}x{s}",
                            q.arrow_name(a),
                            m.rows(),
                            m.cols()
                        ),
                    ));
                }
                if m.shape() == (t, s) {
                    m
                } else {
                    ExactMatrix::zeros(f, t, s)
                }
            }
            None => match a {
                Arrow::Ray { ray, depth: k } if raydims.get(&ray).is_some_and(|(_, at)| k > *at) => {
                    ExactMatrix::identity(f, s)
                }
                _ => ExactMatrix::zeros(f, t, s),
            },
        };
        ms.push(m);
    }
    Representation::new(q.clone(), depth, dv, ms)
}

fn parse_gen_list(q: &Quiver, ln: usize, raw: &str, text: &str) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (name, mult) = match tok.split_once('*') {
            Some((n, m)) => (
                n,
                parse_count(m).ok_or_else(|| perr(ln, column_of(raw, tok), "bad multiplicity"))?,
            ),
            None => (tok, 1),
        };
        let v = q.vertex(name).map_err(|e| at_line(e, ln, raw, name))?;
        out.extend(std::iter::repeat(v).take(mult));
    }
    Ok(out)
}

fn parse_presented(q: &Arc<Quiver>, body: &[(usize, &str, &str)]) -> Result<Representation> {
    let f = q.field();
    let mut p0 = None;
    let mut p1 = None;
    let mut entries = Vec::new();
    for &(ln, raw, line) in body {
        if let Some(rest) = line.strip_prefix("gens:") {
            p0 = Some(parse_gen_list(q, ln, raw, rest)?);
        } else if let Some(rest) = line.strip_prefix("relgens:") {
            p1 = Some(parse_gen_list(q, ln, raw, rest)?);
        } else if let Some(rest) = line.strip_prefix("rel[") {
            let bad = || perr(ln, column_of(raw, "rel"), "expected `rel[<i>][<j>] = <path expression>`");
            let (i, rest) = rest.split_once("][").ok_or_else(bad)?;
            let (j, rest) = rest.split_once(']').ok_or_else(bad)?;
            let expr = rest.trim().strip_prefix('=').ok_or_else(bad)?.trim();
            let i = parse_count(i).ok_or_else(bad)?;
            let j = parse_count(j).ok_or_else(bad)?;
            entries.push((ln, raw, i, j, expr));
        } else {
            return Err(perr(ln, column_of(raw, line), format!("unexpected line `{line}`")));
        }
    }
    let p0 = p0.ok_or_else(|| perr(1, 1, "missing `gens:` line"))?;
    let p1 = p1.unwrap_or_default();
    let mut rel = PathMatrix::zero(f, p0.clone(), p1.clone());
    for (ln, raw, i, j, expr) in entries {
        if i >= p0.len() || j >= p1.len() {
            return Err(perr(
                ln,
                column_of(raw, "rel"),
                format!("entry rel[{i}][{j}] outside a {}x{} relation", p0.len(), p1.len()),
            ));
        }
        let e = parse_path_expr(q, p0[i], p1[j], expr).map_err(|e| at_line(e, ln, raw, expr))?;
        rel.set(i, j, e);
    }
    Ok(Representation::from_presentation(q.clone(), &rel)?.module)
}

fn write_matrix(f: FieldSpec, m: &ExactMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let es: Vec<String> = m.row(i).iter().map(|c| f.format(c)).collect();
            format!("[{}]", es.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Explicit form; re-parses to the same representation.
pub fn write_representation(m: &Representation) -> String {
    let q = m.quiver();
    let f = q.field();
    let d = m.depth();
    let mut out = String::from("rep explicit\n");
    for (v, n) in q.window_vertices(d).iter().zip(m.dims()) {
        if *n > 0 {
            out.push_str(&format!("dim {} = {n}\n", q.vertex_name(*v)));
        }
    }
    for (r, ray) in q.rays().iter().enumerate() {
        if ray.direction == Direction::Outward {
            let n = m.dim_at(q.ray_vertex(r, d));
            if n > 0 {
                out.push_str(&format!("raydim {} = {n} @ {d}\n", ray.name));
            }
        }
    }
    for (a, map) in q.window_arrows(d).iter().zip(m.maps()) {
        if !map.is_zero() {
            out.push_str(&format!("map {} = {}\n", q.arrow_name(*a), write_matrix(f, map)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;
    use crate::rep::is_isomorphic;
    use crate::rep::random::random_representation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn explicit_and_presented_agree() {
        let q = Arc::new(catalog::right_infinite_a());
        let a = parse_representation(&q, "rep explicit\ndim 2 = 1\nraydim r = 1 @ 1\nmap r[1] = [[1]]\n").unwrap();
        let b = parse_representation(&q, "rep presented\ngens: 2\n").unwrap();
        assert!(!a.is_finite_dimensional());
        assert!(is_isomorphic(&a, &b).unwrap());
        let s1 = parse_representation(&q, "rep presented\ngens: 1\nrelgens: 2\nrel[0][0] = a\n").unwrap();
        assert_eq!(s1.total_dim(), Some(1));
    }

    #[test]
    fn round_trip() {
        let q = Arc::new(catalog::d4());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_representation(&q, &[2, 1, 2, 3], 0, &mut rng);
            let back = parse_representation(&q, &write_representation(&m)).unwrap();
            assert_eq!(back.dims(), m.dims());
            assert_eq!(back.maps(), m.maps());
        }
    }

    #[test]
    fn errors_have_positions() {
        let q = Arc::new(catalog::a_n(2));
        match parse_representation(&q, "rep explicit\ndim 1 = 1\nmap a = [[1, 2]]\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_representation(&q, "rep explicit\ndim 7 = 1\n") {
            Err(Error::Parse { line: 2, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_representation(&q, "rep what\n").is_err());
    }
}
