use super::presentation::{minimal_presentation, Presentation};
use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};
use crate::pathcat::PathLin;

/// A Hom space with an ordered basis and a coordinate map.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<RepMorphism>,
    depth: u32,
    flat: ExactMatrix,
    // independent rows of `flat` and the inverse of that square block
    pivots: Vec<usize>,
    pivot_inv: ExactMatrix,
}

impl HomSpace {
    pub(crate) fn from_basis(source: &Representation, target: &Representation, basis: Vec<RepMorphism>) -> Self {
        let f = source.field();
        let depth = basis
            .iter()
            .map(|b| b.depth())
            .max()
            .unwrap_or(0)
            .max(source.depth())
            .max(target.depth());
        let rows = RepMorphism::zero(source, target)
            .map(|z| z.flatten(depth).len())
            .unwrap_or(0);
        let cols: Vec<ExactMatrix> = basis
            .iter()
            .map(|b| ExactMatrix::column_vector(f, b.flatten(depth)))
            .collect();
        let flat = ExactMatrix::hstack_all(f, rows, &cols);
        let (_, pivots) = flat.transpose().rref();
        let pivot_inv = flat
            .select_rows(&pivots)
            .inverse()
            .unwrap_or_else(|| ExactMatrix::zeros(f, 0, 0));
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            flat,
            pivots,
            pivot_inv,
            basis,
            depth,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis.
    pub fn coordinates(&self, f: &RepMorphism) -> Result<Vec<Scalar>> {
        let field = self.source.field();
        let v = ExactMatrix::column_vector(field, f.flatten(self.depth));
        if v.rows() != self.flat.rows() {
            return Err(Error::EndpointMismatch("morphism outside this Hom space".into()));
        }
        let c = self.pivot_inv.mul(&v.select_rows(&self.pivots));
        if self.flat.mul(&c) != v {
            return Err(Error::Internal("morphism is not in the span of the Hom basis".into()));
        }
        Ok(c.column(0))
    }

    /// Coordinates of several morphisms, as the columns of one matrix.
    pub fn coordinate_matrix(&self, fs: &[RepMorphism]) -> Result<ExactMatrix> {
        let field = self.source.field();
        let cols = fs
            .iter()
            .map(|f| Ok(ExactMatrix::column_vector(field, self.coordinates(f)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::hstack_all(field, self.dim(), &cols))
    }

    pub fn element(&self, coeffs: &[Scalar]) -> Result<RepMorphism> {
        super::combine(&self.source, &self.target, &self.basis, coeffs)
    }
}

/// Matrix of a path combination `e: x -> y` acting on `N`.
pub(crate) fn eval_pathlin(n: &Representation, e: &PathLin) -> ExactMatrix {
    let f = n.field();
    let mut acc = ExactMatrix::zeros(f, n.dim_at(e.target), n.dim_at(e.source));
    for (p, c) in e.terms() {
        acc = acc.add(&n.eval_path(p).scale(c));
    }
    acc
}

/// The restriction map `Hom(P0, N) = ⊕ N(v_j) -> Hom(P1, N) = ⊕ N(w_k)`,
/// `(n_j) ↦ (Σ_j N(g_jk) n_j)_k`.
pub(crate) fn restriction_matrix(pres: &Presentation, n: &Representation) -> ExactMatrix {
    let f = n.field();
    let rel = &pres.relation;
    let rows: Vec<ExactMatrix> = (0..rel.cols())
        .map(|k| {
            let blocks: Vec<ExactMatrix> = (0..rel.rows())
                .map(|j| eval_pathlin(n, rel.get(j, k)))
                .collect();
            ExactMatrix::hstack_all(f, n.dim_at(pres.p1[k]), &blocks)
        })
        .collect();
    let cols: usize = pres.p0.iter().map(|v| n.dim_at(*v)).sum();
    ExactMatrix::vstack_all(f, cols, &rows)
}

/// The morphism `M -> N` sending generator `m_j` to `n_j` (the `n_j` must
/// satisfy the relations).
pub(crate) fn morphism_from_generator_images(
    pres: &Presentation,
    n: &Representation,
    images: &[Scalar],
) -> Result<RepMorphism> {
    let m = &pres.module;
    let q = m.quiver().clone();
    let f = q.field();
    let d = m.depth().max(n.depth()).max(pres.depth());
    let mut starts = vec![0];
    for v in &pres.p0 {
        starts.push(starts.last().unwrap() + n.dim_at(*v));
    }
    let mut maps = Vec::new();
    for w in q.window_vertices(d) {
        let mut blocks = Vec::new();
        for (j, v) in pres.p0.iter().enumerate() {
            let nj = ExactMatrix::column_vector(f, images[starts[j]..starts[j + 1]].to_vec());
            for p in q.paths_between(*v, w)? {
                blocks.push(n.eval_path(&p).mul(&nj));
            }
        }
        let big = ExactMatrix::hstack_all(f, n.dim_at(w), &blocks);
        let section = pres.deflation_at(w)?.right_inverse()?;
        maps.push(big.mul(&section));
    }
    RepMorphism::new_unchecked(m.clone(), n.clone(), d, maps)
}

/// `Hom(M, N)` computed as the kernel of `Hom(P0, N) -> Hom(P1, N)` from a
/// minimal presentation of `M`.
pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_compatible(n)?;
    let pres = minimal_presentation(m)?;
    hom_with(&pres, n)
}

pub(crate) fn hom_with(pres: &Presentation, n: &Representation) -> Result<HomSpace> {
    let m = &pres.module;
    let k = restriction_matrix(pres, n).kernel();
    let basis = (0..k.cols())
        .map(|j| morphism_from_generator_images(pres, n, &k.column(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomSpace::from_basis(m, n, basis))
}

/// `Hom(M, N)` by solving the commuting-square system directly on the
/// common window; an independent check of [`hom`].
pub fn hom_direct(m: &Representation, n: &Representation) -> Result<HomSpace> {
    m.check_compatible(n)?;
    let q = m.quiver().clone();
    let f = q.field();
    let d = m.depth().max(n.depth());
    let verts = q.window_vertices(d);
    let mut off = vec![0];
    for v in &verts {
        off.push(off.last().unwrap() + n.dim_at(*v) * m.dim_at(*v));
    }
    let unknowns = *off.last().unwrap();
    let mut eqs: Vec<ExactMatrix> = Vec::new();
    for a in q.window_arrows(d) {
        let (u, w) = (q.source(a), q.target(a));
        let (ui, wi) = (q.vertex_index(u, d).unwrap(), q.vertex_index(w, d).unwrap());
        let (na, ma) = (n.map_at(a), m.map_at(a));
        let (mu, nu, mw, nw) = (m.dim_at(u), n.dim_at(u), m.dim_at(w), n.dim_at(w));
        // N(a) f_u - f_w M(a) = 0, entry (i, k) with i < nw, k < mu
        let mut e = ExactMatrix::zeros(f, nw * mu, unknowns);
        for i in 0..nw {
            for kk in 0..mu {
                let row = i * mu + kk;
                for l in 0..nu {
                    let col = off[ui] + l * mu + kk;
                    let cur = e.get(row, col).clone();
                    e.set(row, col, f.add(&cur, na.get(i, l)));
                }
                for l in 0..mw {
                    let col = off[wi] + i * mw + l;
                    let cur = e.get(row, col).clone();
                    e.set(row, col, f.sub(&cur, ma.get(l, kk)));
                }
            }
        }
        eqs.push(e);
    }
    let sys = ExactMatrix::vstack_all(f, unknowns, &eqs);
    let k = sys.kernel();
    let mut basis = Vec::new();
    for j in 0..k.cols() {
        let col = k.column(j);
        let maps = verts
            .iter()
            .enumerate()
            .map(|(vi, v)| {
                let (r, c) = (n.dim_at(*v), m.dim_at(*v));
                ExactMatrix::new(f, r, c, col[off[vi]..off[vi + 1]].to_vec())
            })
            .collect();
        basis.push(RepMorphism::new_unchecked(m.clone(), n.clone(), d, maps)?);
    }
    Ok(HomSpace::from_basis(m, n, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{catalog, Vertex};
    use std::sync::Arc;

    fn rep(q: &Arc<crate::quiver::Quiver>, dims: Vec<usize>, maps: Vec<Vec<Vec<i64>>>) -> Representation {
        let f = q.field();
        let arrows = q.window_arrows(0);
        let ms = arrows
            .iter()
            .zip(maps)
            .map(|(a, rows)| {
                let s = dims[q.vertex_index(q.source(*a), 0).unwrap()];
                let t = dims[q.vertex_index(q.target(*a), 0).unwrap()];
                if rows.is_empty() {
                    ExactMatrix::zeros(f, t, s)
                } else {
                    ExactMatrix::from_i64_rows(f, s, &rows)
                }
            })
            .collect();
        Representation::new(q.clone(), 0, dims, ms).unwrap()
    }

    #[test]
    fn yoneda_dimension() {
        let q = Arc::new(catalog::d4());
        let n = rep(&q, vec![1, 1, 1, 2], vec![vec![vec![1], vec![0]], vec![vec![0], vec![1]], vec![vec![1], vec![1]]]);
        for x in 0..4 {
            let p = Representation::projective(q.clone(), &[Vertex::Core(x)], 0).unwrap();
            assert_eq!(hom(&p, &n).unwrap().dim(), n.dim_at(Vertex::Core(x)));
        }
    }

    #[test]
    fn small_examples() {
        let q = Arc::new(catalog::a_n(2));
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        let p1 = Representation::projective(q.clone(), &[Vertex::Core(0)], 0).unwrap();
        assert_eq!(hom(&s1, &p1).unwrap().dim(), 0);
        assert_eq!(hom_direct(&s1, &p1).unwrap().dim(), 0);
        let q3 = Arc::new(catalog::a_n(3));
        let m = rep(&q3, vec![0, 1, 1], vec![vec![], vec![vec![1]]]);
        let n = rep(&q3, vec![1, 1, 0], vec![vec![vec![1]], vec![]]);
        assert_eq!(hom(&m, &n).unwrap().dim(), 1);
        assert_eq!(hom_direct(&m, &n).unwrap().dim(), 1);
    }

    #[test]
    fn routes_agree_over_rays() {
        let q = Arc::new(catalog::double_infinite_a());
        let gens = [Vertex::Core(0), q.vertex("l[1]").unwrap(), q.vertex("r[2]").unwrap()];
        for a in gens {
            for b in gens {
                let pa = Representation::projective(q.clone(), &[a], 0).unwrap();
                let pb = Representation::projective(q.clone(), &[b], 0).unwrap();
                let h = hom(&pa, &pb).unwrap();
                assert_eq!(h.dim(), hom_direct(&pa, &pb).unwrap().dim());
                assert_eq!(h.dim(), q.paths_between(b, a).unwrap().len());
                for f in &h.basis {
                    assert!(RepMorphism::new(f.source.clone(), f.target.clone(), f.depth(), f.maps().to_vec()).is_ok());
                }
            }
        }
    }
}
