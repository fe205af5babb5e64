//! The path category and morphisms between finitely generated projectives.
//!
//! Conventions: left modules, `P_x(a)` is spanned by the paths `x -> a` and
//! `Hom(P_x, P_y)` by the paths `y -> x`. A [`PathMatrix`] with row generators
//! `b_i` and column generators `a_j` is a morphism `⊕ P_{a_j} -> ⊕ P_{b_i}`
//! whose entry `(i, j)` combines paths `b_i -> a_j`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};
use crate::quiver::{Path, Quiver, Vertex};

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLin {
    pub source: Vertex,
    pub target: Vertex,
    terms: Vec<(Path, Scalar)>,
}

impl PathLin {
    pub fn zero(source: Vertex, target: Vertex) -> Self {
        PathLin {
            source,
            target,
            terms: Vec::new(),
        }
    }

    pub fn from_path(field: FieldSpec, p: Path) -> Self {
        Self::from_terms(field, p.source, p.target, vec![(p, field.one())])
    }

    pub fn from_terms(
        field: FieldSpec,
        source: Vertex,
        target: Vertex,
        terms: Vec<(Path, Scalar)>,
    ) -> Self {
        let mut out = PathLin::zero(source, target);
        for (p, c) in terms {
            out.add_term(field, p, &c);
        }
        out
    }

    pub fn terms(&self) -> &[(Path, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, field: FieldSpec, p: Path, c: &Scalar) {
        debug_assert_eq!((p.source, p.target), (self.source, self.target));
        match self.terms.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => {
                let s = field.add(&self.terms[i].1, c);
                if field.is_zero(&s) {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => {
                if !field.is_zero(c) {
                    self.terms.insert(i, (p, c.clone()));
                }
            }
        }
    }

    pub fn add(&self, field: FieldSpec, other: &PathLin) -> PathLin {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(field, p.clone(), c);
        }
        out
    }

    pub fn scale(&self, field: FieldSpec, c: &Scalar) -> PathLin {
        let mut out = PathLin::zero(self.source, self.target);
        for (p, d) in &self.terms {
            out.add_term(field, p.clone(), &field.mul(c, d));
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, field: FieldSpec, next: &PathLin) -> PathLin {
        let mut out = PathLin::zero(self.source, next.target);
        for (p, c) in &self.terms {
            for (q, d) in &next.terms {
                out.add_term(field, p.then(q), &field.mul(c, d));
            }
        }
        out
    }

    pub fn reversed(&self) -> PathLin {
        let mut terms: Vec<(Path, Scalar)> =
            self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        PathLin {
            source: self.target,
            target: self.source,
            terms,
        }
    }

    /// True when some trivial path occurs with nonzero coefficient.
    pub fn has_trivial_term(&self) -> bool {
        self.terms.iter().any(|(p, _)| p.is_trivial())
    }

    /// Writes `c * b.a + ...`, with `e_<v>` for trivial paths.
    pub fn format(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let field = q.field();
        let mut sorted: Vec<&(Path, Scalar)> = self.terms.iter().collect();
        sorted.sort_by_cached_key(|(p, _)| q.path_key(p));
        let parts: Vec<String> = sorted
            .iter()
            .map(|(p, c)| {
                let word = if p.is_trivial() {
                    format!("e_{}", q.vertex_name(p.source))
                } else {
                    p.arrows
                        .iter()
                        .rev()
                        .map(|a| q.arrow_name(*a))
                        .collect::<Vec<_>>()
                        .join(".")
                };
                format!("{} * {}", field.format(c), word)
            })
            .collect();
        parts.join(" + ")
    }
}

/// Parses a path expression such as `2 * b.a - e_1` into a combination of
/// paths `source -> target`.
pub fn parse_path_expr(q: &Quiver, source: Vertex, target: Vertex, text: &str) -> Result<PathLin> {
    let field = q.field();
    let bad = |m: String| Error::Parse {
        line: 0,
        column: 0,
        message: m,
    };
    let mut out = PathLin::zero(source, target);
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    // split on + and - at the top level, keeping the sign
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && !cur.trim().ends_with('/') {
            if !cur.trim().is_empty() {
                chunks.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        chunks.push((neg, cur));
    }
    if chunks.is_empty() {
        return Err(bad(format!("empty path expression `{text}`")));
    }
    for (neg, chunk) in chunks {
        let (coef, word) = match chunk.split_once('*') {
            Some((c, w)) => (field.parse(c.trim()).map_err(Error::from)?, w.trim()),
            None => (field.one(), chunk.trim()),
        };
        let coef = if neg { field.neg(&coef) } else { coef };
        let path = if let Some(v) = word.strip_prefix("e_") {
            let v = q.vertex(v)?;
            Path::trivial(v)
        } else {
            // `b.a` means first a, then b
            let mut arrows = Vec::new();
            for name in word.split('.').rev() {
                arrows.push(q.arrow(name)?);
            }
            let mut p = Path::trivial(q.source(arrows[0]));
            for a in arrows {
                if q.source(a) != p.target {
                    return Err(bad(format!("arrows in `{word}` do not compose")));
                }
                p.target = q.target(a);
                p.arrows.push(a);
            }
            p
        };
        if path.source != source || path.target != target {
            return Err(bad(format!(
                "path `{word}` runs {} -> {}, expected {} -> {}",
                q.vertex_name(path.source),
                q.vertex_name(path.target),
                q.vertex_name(source),
                q.vertex_name(target)
            )));
        }
        out.add_term(field, path, &coef);
    }
    Ok(out)
}

/// A morphism `⊕_j P_{col_gens[j]} -> ⊕_i P_{row_gens[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMatrix {
    field: FieldSpec,
    pub row_gens: Vec<Vertex>,
    pub col_gens: Vec<Vertex>,
    entries: Vec<PathLin>,
}

impl PathMatrix {
    pub fn zero(field: FieldSpec, row_gens: Vec<Vertex>, col_gens: Vec<Vertex>) -> Self {
        let mut entries = Vec::with_capacity(row_gens.len() * col_gens.len());
        for b in &row_gens {
            for a in &col_gens {
                entries.push(PathLin::zero(*b, *a));
            }
        }
        PathMatrix {
            field,
            row_gens,
            col_gens,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, gens: Vec<Vertex>) -> Self {
        let mut m = Self::zero(field, gens.clone(), gens.clone());
        for (i, v) in gens.iter().enumerate() {
            m.set(i, i, PathLin::from_path(field, Path::trivial(*v)));
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.row_gens.len()
    }

    pub fn cols(&self) -> usize {
        self.col_gens.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &PathLin {
        &self.entries[i * self.col_gens.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PathLin) {
        assert_eq!((v.source, v.target), (self.row_gens[i], self.col_gens[j]));
        let c = self.col_gens.len();
        self.entries[i * c + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PathLin::is_zero)
    }

    /// No trivial-path summand anywhere: the minimality certificate.
    pub fn is_radical(&self) -> bool {
        !self.entries.iter().any(PathLin::has_trivial_term)
    }

    pub fn add(&self, other: &PathMatrix) -> Result<PathMatrix> {
        if self.row_gens != other.row_gens || self.col_gens != other.col_gens {
            return Err(Error::Shape("path matrices have different generators".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(self.field, o);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> PathMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(self.field, c);
        }
        out
    }

    /// Keeps the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> PathMatrix {
        let mut out = Self::zero(
            self.field,
            rows.iter().map(|&i| self.row_gens[i]).collect(),
            self.col_gens.clone(),
        );
        for (ni, &i) in rows.iter().enumerate() {
            for j in 0..self.cols() {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Keeps the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> PathMatrix {
        let mut out = Self::zero(
            self.field,
            self.row_gens.clone(),
            cols.iter().map(|&j| self.col_gens[j]).collect(),
        );
        for i in 0..self.rows() {
            for (nj, &j) in cols.iter().enumerate() {
                out.set(i, nj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Transposes and reverses every path: the duality `Hom(-, A)` into the
    /// opposite quiver.
    pub fn dualize(&self) -> PathMatrix {
        let mut out = Self::zero(self.field, self.col_gens.clone(), self.row_gens.clone());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(j, i, self.get(i, j).reversed());
            }
        }
        out
    }

    /// Human-readable rows of path expressions.
    pub fn format(&self, q: &Quiver) -> Vec<Vec<String>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j).format(q)).collect())
            .collect()
    }

    /// The linear map `⊕ P_{a_j}(v) -> ⊕ P_{b_i}(v)` in the canonical path bases.
    pub fn evaluate(&self, q: &Quiver, v: Vertex) -> Result<ExactMatrix> {
        let field = self.field;
        let src: Vec<Vec<Path>> = self
            .col_gens
            .iter()
            .map(|a| q.paths_between(*a, v))
            .collect::<Result<_>>()?;
        let tgt: Vec<Vec<Path>> = self
            .row_gens
            .iter()
            .map(|b| q.paths_between(*b, v))
            .collect::<Result<_>>()?;
        let tgt_index: Vec<HashMap<&Path, usize>> = tgt
            .iter()
            .map(|ps| ps.iter().enumerate().map(|(k, p)| (p, k)).collect())
            .collect();
        let row_off = offsets(tgt.iter().map(Vec::len));
        let col_off = offsets(src.iter().map(Vec::len));
        let mut m = ExactMatrix::zeros(field, row_off[tgt.len()], col_off[src.len()]);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                for (k, qp) in src[j].iter().enumerate() {
                    for (p, c) in e.terms() {
                        let r = p.then(qp);
                        let idx = *tgt_index[i].get(&r).ok_or_else(|| {
                            Error::Internal("composite path missing from basis".into())
                        })?;
                        let (ri, ci) = (row_off[i] + idx, col_off[j] + k);
                        let cur = m.get(ri, ci).clone();
                        m.set(ri, ci, field.add(&cur, c));
                    }
                }
            }
        }
        Ok(m)
    }
}

pub(crate) fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// `A ∘ B`; requires `A.col_gens == B.row_gens`.
pub fn compose(a: &PathMatrix, b: &PathMatrix) -> Result<PathMatrix> {
    if a.col_gens != b.row_gens {
        return Err(Error::Shape("generator mismatch in composition".into()));
    }
    let field = a.field;
    let mut out = PathMatrix::zero(field, a.row_gens.clone(), b.col_gens.clone());
    for i in 0..a.rows() {
        for k in 0..b.cols() {
            let mut acc = PathLin::zero(a.row_gens[i], b.col_gens[k]);
            for j in 0..a.cols() {
                acc = acc.add(field, &a.get(i, j).then(field, b.get(j, k)));
            }
            out.set(i, k, acc);
        }
    }
    Ok(out)
}

/// Basis of `Hom(P_x, P_y)`: the paths `y -> x`.
pub fn hom_basis_proj(q: &Quiver, x: Vertex, y: Vertex) -> Result<Vec<Path>> {
    q.paths_between(y, x)
}

/// Basis of `P_x(a)`: the paths `x -> a`.
pub fn evaluate_proj(q: &Quiver, x: Vertex, a: Vertex) -> Result<Vec<Path>> {
    q.paths_between(x, a)
}

/// Matrix of the arrow `alpha: u -> w` acting on `⊕ P_{gens}`: it sends a
/// path `p: x -> u` to `p` followed by `alpha`.
pub fn proj_arrow_matrix(
    q: &Quiver,
    gens: &[Vertex],
    alpha: crate::quiver::Arrow,
) -> Result<ExactMatrix> {
    let field = q.field();
    let (u, w) = (q.source(alpha), q.target(alpha));
    let src: Vec<Vec<Path>> = gens.iter().map(|x| q.paths_between(*x, u)).collect::<Result<_>>()?;
    let tgt: Vec<Vec<Path>> = gens.iter().map(|x| q.paths_between(*x, w)).collect::<Result<_>>()?;
    let row_off = offsets(tgt.iter().map(Vec::len));
    let col_off = offsets(src.iter().map(Vec::len));
    let mut m = ExactMatrix::zeros(field, row_off[gens.len()], col_off[gens.len()]);
    for g in 0..gens.len() {
        for (k, p) in src[g].iter().enumerate() {
            let mut r = p.clone();
            r.arrows.push(alpha);
            r.target = w;
            let idx = tgt[g]
                .iter()
                .position(|t| *t == r)
                .ok_or_else(|| Error::Internal("extended path missing from basis".into()))?;
            m.set(row_off[g] + idx, col_off[g] + k, field.one());
        }
    }
    Ok(m)
}

impl fmt::Display for PathLin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} term(s)", self.terms.len())
    }
}
