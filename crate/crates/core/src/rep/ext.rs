use super::hom::{eval_pathlin, restriction_matrix};
use super::presentation::{lift_to_presentations, minimal_presentation, Presentation};
use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};

/// `Ext¹(M, N)` as the cokernel of `Hom(P0, N) -> Hom(P1, N)`. Cocycles are
/// vectors in `⊕_k N(w_k)`, one block per generator of `P1`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub m: Representation,
    pub n: Representation,
    pub presentation: Presentation,
    proj: ExactMatrix,
    representatives: ExactMatrix,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }

    /// Length of a cocycle vector.
    pub fn cocycle_len(&self) -> usize {
        self.proj.cols()
    }

    /// Class of a cocycle in the canonical coordinates.
    pub fn coordinates(&self, cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
        if cocycle.len() != self.cocycle_len() {
            return Err(Error::InvalidCoordinates(format!(
                "cocycle has length {}, expected {}",
                cocycle.len(),
                self.cocycle_len()
            )));
        }
        let f = self.m.field();
        Ok(self.proj.mul(&ExactMatrix::column_vector(f, cocycle.to_vec())).column(0))
    }

    /// A cocycle representing the class with these coordinates.
    pub fn cocycle(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidCoordinates(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        let f = self.m.field();
        Ok(self
            .representatives
            .mul(&ExactMatrix::column_vector(f, coords.to_vec()))
            .column(0))
    }

    /// Basis cocycles as the columns of a matrix.
    pub fn representatives(&self) -> &ExactMatrix {
        &self.representatives
    }

    /// True when the cocycle is a coboundary.
    pub fn is_coboundary(&self, cocycle: &[Scalar]) -> Result<bool> {
        let f = self.m.field();
        Ok(self.coordinates(cocycle)?.iter().all(|c| f.is_zero(c)))
    }
}

pub fn ext1(m: &Representation, n: &Representation) -> Result<ExtSpace> {
    m.check_compatible(n)?;
    let pres = minimal_presentation(m)?;
    ext1_with(pres, n)
}

pub(crate) fn ext1_with(pres: Presentation, n: &Representation) -> Result<ExtSpace> {
    let restriction = restriction_matrix(&pres, n);
    let (proj, _) = restriction.cokernel();
    let representatives = proj.right_inverse()?;
    Ok(ExtSpace {
        m: pres.module.clone(),
        n: n.clone(),
        presentation: pres,
        proj,
        representatives,
    })
}

/// Independent oracle: `dim Ext¹(M, N)` from the standard resolution
/// `0 -> ⊕_a Hom(M_a, N_a) -> ⊕_α Hom(M_{sα}, N_{tα}) -> Ext¹ -> 0`.
/// Requires `M` and `N` finite dimensional.
pub fn ext1_dim_ringel(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    if !m.is_finite_dimensional() || !n.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional(
            "the standard resolution formula needs finite dimensional arguments".into(),
        ));
    }
    let q = m.quiver().clone();
    let f = q.field();
    let d = m.depth().max(n.depth()) + 1;
    let verts = q.window_vertices(d);
    let mut voff = vec![0];
    for v in &verts {
        voff.push(voff.last().unwrap() + n.dim_at(*v) * m.dim_at(*v));
    }
    let arrows = q.window_arrows(d);
    let mut aoff = vec![0];
    for a in &arrows {
        aoff.push(aoff.last().unwrap() + n.dim_at(q.target(*a)) * m.dim_at(q.source(*a)));
    }
    // (f_v) ↦ (N(α) f_s - f_t M(α))_α
    let mut big = ExactMatrix::zeros(f, *aoff.last().unwrap(), *voff.last().unwrap());
    for (ai, a) in arrows.iter().enumerate() {
        let (u, w) = (q.source(*a), q.target(*a));
        let (ui, wi) = (q.vertex_index(u, d).unwrap(), q.vertex_index(w, d).unwrap());
        let (na, ma) = (n.map_at(*a), m.map_at(*a));
        let (mu, nu, mw, nw) = (m.dim_at(u), n.dim_at(u), m.dim_at(w), n.dim_at(w));
        for i in 0..nw {
            for k in 0..mu {
                let row = aoff[ai] + i * mu + k;
                for l in 0..nu {
                    let col = voff[ui] + l * mu + k;
                    let c = f.add(big.get(row, col), na.get(i, l));
                    big.set(row, col, c);
                }
                for l in 0..mw {
                    let col = voff[wi] + i * mw + l;
                    let c = f.sub(big.get(row, col), ma.get(l, k));
                    big.set(row, col, c);
                }
            }
        }
    }
    Ok(big.rows() - big.rank())
}

/// Matrix of `Ext¹(h, X): Ext¹(Y, X) -> Ext¹(Z, X)` for `h: Z -> Y`, in the
/// coordinates of `ext_yx` and `ext_zx`.
pub fn ext_morphism_matrix(h: &RepMorphism, ext_yx: &ExtSpace, ext_zx: &ExtSpace) -> Result<ExactMatrix> {
    let x = &ext_yx.n;
    let f = x.field();
    let (_, h1) = lift_to_presentations(h, &ext_zx.presentation, &ext_yx.presentation)?;
    let py = &ext_yx.presentation;
    let pz = &ext_zx.presentation;
    let rows: Vec<ExactMatrix> = (0..pz.p1.len())
        .map(|k| {
            let blocks: Vec<ExactMatrix> =
                (0..py.p1.len()).map(|l| eval_pathlin(x, h1.get(l, k))).collect();
            ExactMatrix::hstack_all(f, x.dim_at(pz.p1[k]), &blocks)
        })
        .collect();
    let pull = ExactMatrix::vstack_all(f, ext_yx.cocycle_len(), &rows);
    Ok(ext_zx.proj.mul(&pull).mul(&ext_yx.representatives))
}

/// Matrix of `Ext¹(Y, g): Ext¹(Y, X) -> Ext¹(Y, Z)` for `g: X -> Z`; both
/// spaces must use the same presentation of `Y`.
pub fn ext_pushforward_matrix(g: &RepMorphism, ext_yx: &ExtSpace, ext_yz: &ExtSpace) -> Result<ExactMatrix> {
    let f = g.field();
    if ext_yx.presentation.p1 != ext_yz.presentation.p1 {
        return Err(Error::EndpointMismatch("Ext spaces use different presentations".into()));
    }
    let blocks: Vec<ExactMatrix> = ext_yx.presentation.p1.iter().map(|w| g.map_at(*w)).collect();
    let push = ExactMatrix::block_diag(f, &blocks);
    Ok(ext_yz.proj.mul(&push).mul(&ext_yx.representatives))
}
