use super::{Direction, Quiver};
use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Strips a trailing `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Column (1-based) of `needle` inside `line`, or of the first
/// non-blank character.
pub(crate) fn column_of(line: &str, needle: &str) -> usize {
    line.find(needle)
        .or_else(|| line.find(|c: char| !c.is_whitespace()))
        .unwrap_or(0)
        + 1
}

/// Parses the quiver file format.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut field = None;
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut rays = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line
            .split_once(char::is_whitespace)
            .map(|(a, b)| (a, b.trim()))
            .unwrap_or((line, ""));
        match kw {
            "field" => {
                if field.is_some() {
                    return Err(perr(lineno, column_of(raw, kw), "field declared twice"));
                }
                let f: FieldSpec = rest
                    .parse()
                    .map_err(|e| perr(lineno, column_of(raw, rest), format!("{e}")))?;
                field = Some(f);
            }
            "vertex" => {
                if !valid_name(rest) {
                    return Err(perr(
                        lineno,
                        column_of(raw, rest),
                        format!("invalid vertex name `{rest}`"),
                    ));
                }
                vertices.push(rest.to_string());
            }
            "arrow" => {
                let (name, ends) = rest.split_once(':').ok_or_else(|| {
                    perr(lineno, column_of(raw, rest), "expected `arrow <name>: <src> -> <tgt>`")
                })?;
                let name = name.trim();
                let (s, t) = ends.split_once("->").ok_or_else(|| {
                    perr(lineno, column_of(raw, ends), "expected `<src> -> <tgt>`")
                })?;
                let (s, t) = (s.trim(), t.trim());
                for tok in [name, s, t] {
                    if !valid_name(tok) {
                        return Err(perr(
                            lineno,
                            column_of(raw, tok),
                            format!("invalid name `{tok}`"),
                        ));
                    }
                }
                if !vertices.iter().any(|v| v == s) {
                    return Err(perr(lineno, column_of(raw, s), format!("unknown vertex `{s}`")));
                }
                if !vertices.iter().any(|v| v == t) {
                    return Err(perr(lineno, column_of(raw, t), format!("unknown vertex `{t}`")));
                }
                arrows.push((name.to_string(), s.to_string(), t.to_string()));
            }
            "ray" => {
                let (name, opts) = rest.split_once(':').ok_or_else(|| {
                    perr(
                        lineno,
                        column_of(raw, rest),
                        "expected `ray <name>: attach=<vertex> dir=<in|out>`",
                    )
                })?;
                let name = name.trim();
                if !valid_name(name) {
                    return Err(perr(lineno, column_of(raw, name), format!("invalid name `{name}`")));
                }
                let mut attach = None;
                let mut dir = None;
                for opt in opts.split_whitespace() {
                    match opt.split_once('=') {
                        Some(("attach", v)) => attach = Some(v.to_string()),
                        Some(("dir", "in")) => dir = Some(Direction::Inward),
                        Some(("dir", "out")) => dir = Some(Direction::Outward),
                        _ => {
                            return Err(perr(
                                lineno,
                                column_of(raw, opt),
                                format!("unexpected ray option `{opt}`"),
                            ))
                        }
                    }
                }
                let attach = attach
                    .ok_or_else(|| perr(lineno, column_of(raw, opts), "missing attach=<vertex>"))?;
                let dir =
                    dir.ok_or_else(|| perr(lineno, column_of(raw, opts), "missing dir=<in|out>"))?;
                if !vertices.iter().any(|v| *v == attach) {
                    return Err(perr(
                        lineno,
                        column_of(raw, &attach),
                        format!("unknown vertex `{attach}`"),
                    ));
                }
                rays.push((name.to_string(), attach, dir));
            }
            other => {
                return Err(perr(
                    lineno,
                    column_of(raw, other),
                    format!("unknown declaration `{other}`"),
                ))
            }
        }
    }
    Quiver::new(field.unwrap_or_default(), vertices, arrows, rays)
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, Vertex};
    use super::*;

    #[test]
    fn parses_a2() {
        let q = parse_quiver("vertex 1\nvertex 2\narrow a: 1 -> 2").unwrap();
        assert_eq!(q.core_vertices().len(), 2);
        assert_eq!(q.field(), FieldSpec::Prime(32003));
        assert_eq!(q, catalog::a_n(2));
    }

    #[test]
    fn rejects_cycles() {
        let err = parse_quiver("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1").unwrap_err();
        assert!(matches!(err, Error::CyclicCore(_)));
        assert!(err.to_string().contains("infinitely many paths"));
    }

    #[test]
    fn parses_rays_and_field() {
        let q = parse_quiver(
            "# right-infinite A\nfield QQ\nvertex 1\nvertex 2\narrow a: 1 -> 2\nray r: attach=2 dir=out\n",
        )
        .unwrap();
        assert_eq!(q.field(), FieldSpec::Rationals);
        assert_eq!(q.rays().len(), 1);
        assert_eq!(q.vertex("r[3]").unwrap(), Vertex::Ray { ray: 0, depth: 3 });
        assert_eq!(parse_quiver(&q.to_text()).unwrap(), q);
    }

    #[test]
    fn reports_positions() {
        match parse_quiver("vertex 1\narrow a: 1 -> 9").unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 15);
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            parse_quiver("vertex 1\nvertex 1").unwrap_err(),
            Error::DuplicateName(_)
        ));
        assert!(matches!(
            parse_quiver("vertx 1").unwrap_err(),
            Error::Parse { line: 1, column: 1, .. }
        ));
    }
}
