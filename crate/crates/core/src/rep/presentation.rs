use std::sync::Arc;

use super::{min_depth, RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};
use crate::pathcat::{compose, proj_arrow_matrix, PathLin, PathMatrix};
use crate::quiver::{Direction, Quiver, Vertex};

/// An exact sequence `⊕ P_{p1} -> ⊕ P_{p0} -> M -> 0` together with the
/// generators `m_j ∈ M(p0[j])` that define the deflation.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: Vec<Vertex>,
    pub p1: Vec<Vertex>,
    /// Rows indexed by `p0`, columns by `p1`.
    pub relation: PathMatrix,
    pub generators: Vec<ExactMatrix>,
    pub module: Representation,
}

/// Coordinates of a combination of paths `gens[i] -> w`, one per generator,
/// in the canonical basis of `⊕ P_{gens}(w)`.
pub(crate) fn column_to_vector(q: &Quiver, gens: &[Vertex], w: Vertex, col: &[PathLin]) -> Result<Vec<Scalar>> {
    let f = q.field();
    let mut out = Vec::new();
    for (g, entry) in gens.iter().zip(col) {
        let basis = q.paths_between(*g, w)?;
        let mut block = vec![f.zero(); basis.len()];
        for (p, c) in entry.terms() {
            let k = basis
                .iter()
                .position(|b| b == p)
                .ok_or_else(|| Error::Internal("path outside its basis".into()))?;
            block[k] = c.clone();
        }
        out.extend(block);
    }
    Ok(out)
}

/// Inverse of [`column_to_vector`].
pub(crate) fn vector_to_column(q: &Quiver, gens: &[Vertex], w: Vertex, v: &[Scalar]) -> Result<Vec<PathLin>> {
    let f = q.field();
    let mut out = Vec::new();
    let mut pos = 0;
    for g in gens {
        let basis = q.paths_between(*g, w)?;
        let terms = basis
            .into_iter()
            .map(|p| {
                let c = v[pos].clone();
                pos += 1;
                (p, c)
            })
            .collect();
        out.push(PathLin::from_terms(f, *g, w, terms));
    }
    if pos != v.len() {
        return Err(Error::Internal("vector length does not match path basis".into()));
    }
    Ok(out)
}

/// Indices of standard basis vectors completing `span` (columns, `n` rows)
/// to the whole space, chosen greedily in order.
pub(crate) fn greedy_complement(span: &ExactMatrix, candidates: &ExactMatrix) -> Vec<usize> {
    let mut cur = span.column_space();
    let mut rank = cur.cols();
    let mut chosen = Vec::new();
    for j in 0..candidates.cols() {
        let c = candidates.select_columns(&[j]);
        let next = cur.hstack(&c);
        let r = next.rank();
        if r > rank {
            cur = next;
            rank = r;
            chosen.push(j);
        }
    }
    chosen
}

impl Presentation {
    /// `π_v : P0(v) -> M(v)`, sending a path `p: v_j -> v` to `M(p) m_j`.
    pub fn deflation_at(&self, v: Vertex) -> Result<ExactMatrix> {
        let q = self.module.quiver();
        let f = q.field();
        let mut blocks = Vec::new();
        for (g, m) in self.p0.iter().zip(&self.generators) {
            for p in q.paths_between(*g, v)? {
                blocks.push(self.module.eval_path(&p).mul(m));
            }
        }
        Ok(ExactMatrix::hstack_all(f, self.module.dim_at(v), &blocks))
    }

    /// Window depth on which every object of the presentation is stable.
    pub fn depth(&self) -> u32 {
        self.p0
            .iter()
            .chain(&self.p1)
            .map(|v| v.depth())
            .max()
            .unwrap_or(0)
            .max(self.module.depth())
    }

    pub fn p0_rep(&self, depth: u32) -> Result<Representation> {
        Representation::projective(self.module.quiver().clone(), &self.p0, depth.max(self.depth()))
    }

    pub fn p1_rep(&self, depth: u32) -> Result<Representation> {
        Representation::projective(self.module.quiver().clone(), &self.p1, depth.max(self.depth()))
    }

    /// The deflation `P0 -> M` as a morphism.
    pub fn deflation(&self, depth: u32) -> Result<RepMorphism> {
        let p0 = self.p0_rep(depth)?;
        let d = p0.depth().max(self.module.depth());
        let q = self.module.quiver().clone();
        let maps = q
            .window_vertices(d)
            .iter()
            .map(|v| self.deflation_at(*v))
            .collect::<Result<_>>()?;
        RepMorphism::new_unchecked(p0, self.module.clone(), d, maps)
    }

    /// The relation `P1 -> P0` as a morphism.
    pub fn relation_morphism(&self, depth: u32) -> Result<RepMorphism> {
        let p1 = self.p1_rep(depth)?;
        let p0 = self.p0_rep(depth)?;
        let d = p0.depth().max(p1.depth());
        let q = self.module.quiver().clone();
        let maps = q
            .window_vertices(d)
            .iter()
            .map(|v| self.relation.evaluate(&q, *v))
            .collect::<Result<_>>()?;
        RepMorphism::new_unchecked(p1, p0, d, maps)
    }

    /// No trivial-path summand in the relation.
    pub fn is_minimal(&self) -> bool {
        self.relation.is_radical()
    }

    pub fn is_projective(&self) -> bool {
        self.p1.is_empty()
    }
}

/// Minimal projective presentation: `P0` covers `top M = M / rad M` with
/// standard basis generators chosen greedily, `P1` covers the top of the
/// kernel of the deflation (projective, as the path algebra is hereditary).
pub fn minimal_presentation(m: &Representation) -> Result<Presentation> {
    let q = m.quiver().clone();
    let f = q.field();
    let d = m.depth();
    let window = q.window_vertices(d);

    // top of M
    let mut p0 = Vec::new();
    let mut generators = Vec::new();
    for &v in &window {
        let n = m.dim_at(v);
        if n == 0 {
            continue;
        }
        let images: Vec<ExactMatrix> = q.in_arrows(v).into_iter().map(|a| m.map_at(a)).collect();
        let span = ExactMatrix::hstack_all(f, n, &images);
        for i in greedy_complement(&span, &ExactMatrix::identity(f, n)) {
            let mut e = ExactMatrix::zeros(f, n, 1);
            e.set(i, 0, f.one());
            p0.push(v);
            generators.push(e);
        }
    }
    let mut pres = Presentation {
        relation: PathMatrix::zero(f, p0.clone(), vec![]),
        p0,
        p1: vec![],
        generators,
        module: m.clone(),
    };

    // top of the kernel of the deflation
    let mut kernels = Vec::with_capacity(window.len());
    for &v in &window {
        kernels.push(pres.deflation_at(v)?.kernel());
    }
    let mut p1 = Vec::new();
    let mut columns: Vec<Vec<PathLin>> = Vec::new();
    for (wi, &w) in window.iter().enumerate() {
        let kw = &kernels[wi];
        if kw.cols() == 0 {
            continue;
        }
        let mut images = Vec::new();
        for a in q.in_arrows(w) {
            let u = q.source(a);
            if let Some(ui) = q.vertex_index(u, d) {
                images.push(proj_arrow_matrix(&q, &pres.p0, a)?.mul(&kernels[ui]));
            }
        }
        let span = ExactMatrix::hstack_all(f, kw.rows(), &images);
        for j in greedy_complement(&span, kw) {
            p1.push(w);
            columns.push(vector_to_column(&q, &pres.p0, w, &kw.column(j))?);
        }
    }
    let mut relation = PathMatrix::zero(f, pres.p0.clone(), p1.clone());
    for (k, col) in columns.into_iter().enumerate() {
        for (j, entry) in col.into_iter().enumerate() {
            relation.set(j, k, entry);
        }
    }
    pres.p1 = p1;
    pres.relation = relation;
    debug_assert!(pres.is_minimal());
    Ok(pres)
}

/// Window depth for a presented representation: generator depth plus the
/// longest core path plus one.
pub(crate) fn presented_depth(q: &Quiver, rel: &PathMatrix) -> u32 {
    let gen_depth = rel
        .row_gens
        .iter()
        .chain(&rel.col_gens)
        .map(|v| v.depth())
        .max()
        .unwrap_or(0);
    (gen_depth + q.longest_core_path() as u32 + 1).max(min_depth(q))
}

impl Representation {
    /// The cokernel of a relation `⊕ P_{cols} -> ⊕ P_{rows}`, computed
    /// pointwise on the window of [`presented_depth`] and spot-checked two
    /// steps further out.
    pub fn from_presentation(quiver: Arc<Quiver>, rel: &PathMatrix) -> Result<Presentation> {
        let q = quiver;
        let f = q.field();
        let d = presented_depth(&q, rel);
        let window = q.window_vertices(d);
        let mut projs = Vec::with_capacity(window.len());
        for &v in &window {
            projs.push(rel.evaluate(&q, v)?.cokernel().0);
        }
        // stabilization spot check
        for (r, ray) in q.rays().iter().enumerate() {
            let at = |k: u32| rel.evaluate(&q, Vertex::Ray { ray: r, depth: k });
            let base = at(d)?;
            for k in [d + 1, d + 2] {
                let g = at(k)?;
                let ok = match ray.direction {
                    Direction::Outward => g == base,
                    Direction::Inward => g.rows() == 0,
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "presentation not stable along ray `{}` at depth {k}",
                        ray.name
                    )));
                }
            }
        }
        let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
        let mut maps = Vec::new();
        for a in q.window_arrows(d) {
            let (u, w) = (q.source(a), q.target(a));
            let ui = q.vertex_index(u, d).unwrap();
            let wi = q.vertex_index(w, d).unwrap();
            let arrow = proj_arrow_matrix(&q, &rel.row_gens, a)?;
            let section = projs[ui].right_inverse()?;
            maps.push(projs[wi].mul(&arrow).mul(&section));
        }
        let module = Representation::new(q.clone(), d, dims, maps)?;
        let generators = rel
            .row_gens
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let vi = q.vertex_index(v, d).unwrap();
                // the trivial path of generator j inside P0(v)
                let mut col: Vec<PathLin> =
                    rel.row_gens.iter().map(|g| PathLin::zero(*g, v)).collect();
                col[j] = PathLin::from_path(f, crate::quiver::Path::trivial(v));
                let unit = column_to_vector(&q, &rel.row_gens, v, &col)?;
                Ok(projs[vi].mul(&ExactMatrix::column_vector(f, unit)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            p0: rel.row_gens.clone(),
            p1: rel.col_gens.clone(),
            relation: rel.clone(),
            generators,
            module,
        })
    }
}

/// Lifts `h: Z -> Y` to `h0: P0(Z) -> P0(Y)` and `h1: P1(Z) -> P1(Y)` with
/// `π_Y h0 = h π_Z` and `g_Y h1 = h0 g_Z`. Requires the relation of `py` to
/// be injective (true for minimal presentations).
pub fn lift_to_presentations(
    h: &RepMorphism,
    pz: &Presentation,
    py: &Presentation,
) -> Result<(PathMatrix, PathMatrix)> {
    let q = h.source.quiver().clone();
    let f = q.field();
    let mut h0 = PathMatrix::zero(f, py.p0.clone(), pz.p0.clone());
    for (j, (&u, z)) in pz.p0.iter().zip(&pz.generators).enumerate() {
        let y = h.map_at(u).mul(z);
        let x = py.deflation_at(u)?.solve(&y).map_err(|_| {
            Error::Internal("generator image does not lift through the deflation".into())
        })?;
        for (i, e) in vector_to_column(&q, &py.p0, u, &x.column(0))?.into_iter().enumerate() {
            h0.set(i, j, e);
        }
    }
    let pushed = compose(&h0, &pz.relation)?;
    let mut h1 = PathMatrix::zero(f, py.p1.clone(), pz.p1.clone());
    for (k, &w) in pz.p1.iter().enumerate() {
        let col: Vec<PathLin> = (0..pushed.rows()).map(|i| pushed.get(i, k).clone()).collect();
        let v = column_to_vector(&q, &py.p0, w, &col)?;
        let g = py.relation.evaluate(&q, w)?;
        let x = g
            .solve(&ExactMatrix::column_vector(f, v))
            .map_err(|_| Error::Internal("relation image does not lift".into()))?;
        for (i, e) in vector_to_column(&q, &py.p1, w, &x.column(0))?.into_iter().enumerate() {
            h1.set(i, k, e);
        }
    }
    Ok((h0, h1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    fn a_rep(q: &Arc<Quiver>, dims: Vec<usize>, maps: Vec<Vec<Vec<i64>>>) -> Representation {
        let f = q.field();
        let ms = maps
            .into_iter()
            .zip(q.window_arrows(0))
            .map(|(rows, a)| {
                let s = dims[q.vertex_index(q.source(a), 0).unwrap()];
                if rows.is_empty() {
                    let t = dims[q.vertex_index(q.target(a), 0).unwrap()];
                    ExactMatrix::zeros(f, t, s)
                } else {
                    ExactMatrix::from_i64_rows(f, s, &rows)
                }
            })
            .collect();
        Representation::new(q.clone(), 0, dims, ms).unwrap()
    }

    #[test]
    fn projective_has_no_relations() {
        let q = Arc::new(catalog::a_n(3));
        let p = Representation::projective(q, &[Vertex::Core(0)], 0).unwrap();
        let pres = minimal_presentation(&p).unwrap();
        assert_eq!(pres.p0, vec![Vertex::Core(0)]);
        assert!(pres.is_projective());
    }

    #[test]
    fn simple_over_a2() {
        let q = Arc::new(catalog::a_n(2));
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        let pres = minimal_presentation(&s1).unwrap();
        assert_eq!(pres.p0, vec![Vertex::Core(0)]);
        assert_eq!(pres.p1, vec![Vertex::Core(1)]);
        assert_eq!(pres.relation.get(0, 0).format(&q), "1 * a");
        assert!(pres.is_minimal());
    }

    #[test]
    fn a3_dims_110() {
        let q = Arc::new(catalog::a_n(3));
        let m = a_rep(&q, vec![1, 1, 0], vec![vec![vec![1]], vec![]]);
        let pres = minimal_presentation(&m).unwrap();
        assert_eq!(pres.p0, vec![Vertex::Core(0)]);
        assert_eq!(pres.p1, vec![Vertex::Core(2)]);
    }

    #[test]
    fn presented_round_trip() {
        let q = Arc::new(catalog::a_n(2));
        let f = q.field();
        let mut rel = PathMatrix::zero(f, vec![Vertex::Core(0)], vec![Vertex::Core(1)]);
        rel.set(0, 0, crate::pathcat::parse_path_expr(&q, Vertex::Core(0), Vertex::Core(1), "a").unwrap());
        let pres = Representation::from_presentation(q.clone(), &rel).unwrap();
        assert_eq!(pres.module.core_dims(), vec![1, 0]);
        let min = minimal_presentation(&pres.module).unwrap();
        assert_eq!(min.p1, vec![Vertex::Core(1)]);

        let r = Arc::new(catalog::right_infinite_a());
        let p1 = Representation::projective(r.clone(), &[Vertex::Core(0)], 0).unwrap();
        assert_eq!(p1.dim_at(r.vertex("r[5]").unwrap()), 1);
        let s1 = Representation::from_presentation(r.clone(), &{
            let mut m = PathMatrix::zero(f, vec![Vertex::Core(0)], vec![Vertex::Core(1)]);
            m.set(0, 0, crate::pathcat::parse_path_expr(&r, Vertex::Core(0), Vertex::Core(1), "a").unwrap());
            m
        })
        .unwrap();
        assert!(s1.module.is_finite_dimensional());
        assert_eq!(s1.module.total_dim(), Some(1));
    }

    #[test]
    fn lifting_commutes() {
        let q = Arc::new(catalog::a_n(3));
        let p = Representation::projective(q.clone(), &[Vertex::Core(1)], 0).unwrap();
        let m = a_rep(&q, vec![0, 1, 1], vec![vec![], vec![vec![1]]]);
        assert_eq!(p.core_dims(), m.core_dims());
        let h = RepMorphism::identity(&m);
        let pm = minimal_presentation(&m).unwrap();
        let (h0, h1) = lift_to_presentations(&h, &pm, &pm).unwrap();
        assert_eq!(h0, PathMatrix::identity(q.field(), pm.p0.clone()));
        assert_eq!(h1.rows(), 0);
    }
}
