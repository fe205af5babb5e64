//! Objects and morphisms of the category of finitely presented
//! representations.
//!
//! A [`Representation`] is stored explicitly on the window of ray depth `d`:
//! core vertices plus ray vertices up to depth `d`. Beyond the window an
//! outward ray repeats the space at depth `d` with identity maps and an
//! inward ray is zero. Every finitely presented representation has such a
//! form, so all Hom and Ext systems are finite.

mod conflation;
mod decompose;
mod ext;
mod hom;
mod parse;
mod presentation;
pub mod random;
mod stable;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};
use crate::quiver::{Arrow, Direction, Path, Quiver, Vertex};

pub(crate) use conflation::cocycle_of;
pub(crate) use ext::ext1_with;
pub(crate) use decompose::{indecomposables_isomorphic, EndAlgebra};
pub use conflation::{
    conflation_of_class, ext_class_in, ext_class_of, pullback, pushout, section, splits, Conflation,
};
pub use decompose::{decompose, is_indecomposable, is_isomorphic, Decomposition, Summand};
pub use ext::{ext1, ext1_dim_ringel, ext_morphism_matrix, ext_pushforward_matrix, ExtSpace};
pub use hom::{hom, hom_direct, HomSpace};
pub(crate) use hom::morphism_from_generator_images;
pub(crate) use presentation::column_to_vector;
pub use parse::{parse_representation, write_representation};
pub use stable::{injectivity_obstruction, is_injective_windowed, stable_hom_inj, stable_hom_proj, StableHom};
pub use presentation::{lift_to_presentations, minimal_presentation, Presentation};

#[derive(Debug)]
struct RepData {
    quiver: Arc<Quiver>,
    depth: u32,
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

/// An object of rep⁺(Q) in explicit windowed form. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Representation {
    inner: Arc<RepData>,
}

/// Minimum window depth for a quiver: rays need at least one explicit vertex
/// to carry their stable data.
pub(crate) fn min_depth(q: &Quiver) -> u32 {
    u32::from(!q.rays().is_empty())
}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Validates shapes. Windows of depth 0 over quivers with rays are
    /// widened to depth 1 with zero ray spaces.
    pub fn new(
        quiver: Arc<Quiver>,
        depth: u32,
        dims: Vec<usize>,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.window_size(depth) {
            return Err(Error::Shape(format!(
                "expected {} vertex dimensions, got {}",
                quiver.window_size(depth),
                dims.len()
            )));
        }
        let arrows = quiver.window_arrows(depth);
        if maps.len() != arrows.len() {
            return Err(Error::Shape(format!(
                "expected {} arrow maps, got {}",
                arrows.len(),
                maps.len()
            )));
        }
        let field = quiver.field();
        for (a, m) in arrows.iter().zip(&maps) {
            let s = dim_in(&quiver, depth, &dims, quiver.source(*a));
            let t = dim_in(&quiver, depth, &dims, quiver.target(*a));
            if m.shape() != (t, s) {
                return Err(Error::Shape(format!(
                    "map for arrow `{}` has shape {:?}, expected {:?}",
                    quiver.arrow_name(*a),
                    m.shape(),
                    (t, s)
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let rep = Representation {
            inner: Arc::new(RepData {
                quiver: quiver.clone(),
                depth,
                dims,
                maps,
            }),
        };
        let need = min_depth(&quiver);
        Ok(if depth < need { rep.extend(need) } else { rep })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let d = min_depth(&quiver);
        let dims = vec![0; quiver.window_size(d)];
        let maps = quiver
            .window_arrows(d)
            .iter()
            .map(|_| ExactMatrix::zeros(quiver.field(), 0, 0))
            .collect();
        Self::new(quiver, d, dims, maps).expect("zero representation is well formed")
    }

    /// The simple representation at a core or ray vertex.
    pub fn simple(quiver: Arc<Quiver>, v: Vertex) -> Result<Self> {
        // one step past a ray vertex, so that the tail is zero
        let d = match v {
            Vertex::Ray { depth, .. } => min_depth(&quiver).max(depth + 1),
            Vertex::Core(_) => min_depth(&quiver),
        };
        let idx = quiver
            .vertex_index(v, d)
            .ok_or_else(|| Error::UnknownVertex(format!("{v:?}")))?;
        let mut dims = vec![0; quiver.window_size(d)];
        dims[idx] = 1;
        let f = quiver.field();
        let maps = quiver
            .window_arrows(d)
            .iter()
            .map(|a| {
                let s = dims[quiver.vertex_index(quiver.source(*a), d).unwrap()];
                let t = dims[quiver.vertex_index(quiver.target(*a), d).unwrap()];
                ExactMatrix::zeros(f, t, s)
            })
            .collect();
        Self::new(quiver, d, dims, maps)
    }

    /// `⊕ P_x` over the listed generators, in path bases, on a window deep
    /// enough to carry its stable data.
    pub fn projective(quiver: Arc<Quiver>, gens: &[Vertex], depth: u32) -> Result<Self> {
        let d = gens
            .iter()
            .map(|v| v.depth())
            .max()
            .unwrap_or(0)
            .max(depth)
            .max(min_depth(&quiver));
        let mut dims = Vec::new();
        for v in quiver.window_vertices(d) {
            let mut n = 0;
            for x in gens {
                n += quiver.paths_between(*x, v)?.len();
            }
            dims.push(n);
        }
        let maps = quiver
            .window_arrows(d)
            .into_iter()
            .map(|a| crate::pathcat::proj_arrow_matrix(&quiver, gens, a))
            .collect::<Result<_>>()?;
        Self::new(quiver, d, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.inner.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.quiver.field()
    }

    pub fn depth(&self) -> u32 {
        self.inner.depth
    }

    /// Dimensions on the window, in [`Quiver::window_vertices`] order.
    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    /// Arrow maps on the window, in [`Quiver::window_arrows`] order.
    pub fn maps(&self) -> &[ExactMatrix] {
        &self.inner.maps
    }

    /// Dimension at any vertex, following the tail rule beyond the window.
    pub fn dim_at(&self, v: Vertex) -> usize {
        dim_in(&self.inner.quiver, self.inner.depth, &self.inner.dims, v)
    }

    /// Map of any arrow, following the tail rule beyond the window.
    pub fn map_at(&self, a: Arrow) -> ExactMatrix {
        let q = &self.inner.quiver;
        if let Some(i) = q.arrow_index(a, self.inner.depth) {
            return self.inner.maps[i].clone();
        }
        let (s, t) = (self.dim_at(q.source(a)), self.dim_at(q.target(a)));
        match a {
            Arrow::Ray { ray, .. } if q.ray_direction(ray) == Direction::Outward => {
                ExactMatrix::identity(self.field(), s)
            }
            _ => ExactMatrix::zeros(self.field(), t, s),
        }
    }

    /// Linear map of a path (identity for trivial paths).
    pub fn eval_path(&self, p: &Path) -> ExactMatrix {
        let mut m = ExactMatrix::identity(self.field(), self.dim_at(p.source));
        for a in &p.arrows {
            m = self.map_at(*a).mul(&m);
        }
        m
    }

    /// The same representation on a window of depth `d >= depth()`.
    pub fn extend(&self, d: u32) -> Self {
        if d <= self.inner.depth {
            return self.clone();
        }
        let q = self.inner.quiver.clone();
        let dims = q.window_vertices(d).iter().map(|v| self.dim_at(*v)).collect();
        let maps = q.window_arrows(d).iter().map(|a| self.map_at(*a)).collect();
        Representation {
            inner: Arc::new(RepData {
                quiver: q,
                depth: d,
                dims,
                maps,
            }),
        }
    }

    /// Stable dimension along each ray (always 0 on inward rays).
    pub fn stable_ray_dims(&self) -> Vec<usize> {
        let q = &self.inner.quiver;
        (0..q.rays().len())
            .map(|r| match q.ray_direction(r) {
                Direction::Inward => 0,
                Direction::Outward => self.dim_at(Vertex::Ray {
                    ray: r,
                    depth: self.inner.depth + 1,
                }),
            })
            .collect()
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.stable_ray_dims().iter().all(|&d| d == 0)
    }

    /// Total dimension, when finite.
    pub fn total_dim(&self) -> Option<usize> {
        self.is_finite_dimensional()
            .then(|| self.inner.dims.iter().sum())
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dims.iter().all(|&d| d == 0)
    }

    /// Dimension vector on the core followed by the window ray entries.
    pub fn dim_vector(&self) -> Vec<usize> {
        self.inner.dims.clone()
    }

    /// Dimensions at core vertices and the stable ray dimensions: equal for
    /// isomorphic representations regardless of window depth.
    pub fn signature(&self, d: u32) -> Vec<usize> {
        let q = &self.inner.quiver;
        q.window_vertices(d).iter().map(|v| self.dim_at(*v)).collect()
    }

    pub(crate) fn check_compatible(&self, other: &Representation) -> Result<()> {
        if !same_quiver(self.quiver(), other.quiver()) {
            if self.quiver().field() != other.quiver().field() {
                return Err(Error::FieldMismatch);
            }
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// Direct sum, with the summands' bases concatenated at each vertex.
    pub fn direct_sum(parts: &[Representation]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("empty direct sum".into()))?;
        for p in parts {
            first.check_compatible(p)?;
        }
        let q = first.quiver().clone();
        let d = parts.iter().map(|p| p.depth()).max().unwrap();
        let f = q.field();
        let dims = q
            .window_vertices(d)
            .iter()
            .map(|v| parts.iter().map(|p| p.dim_at(*v)).sum())
            .collect();
        let maps = q
            .window_arrows(d)
            .iter()
            .map(|a| {
                let blocks: Vec<ExactMatrix> = parts.iter().map(|p| p.map_at(*a)).collect();
                ExactMatrix::block_diag(f, &blocks)
            })
            .collect();
        Self::new(q, d, dims, maps)
    }

    /// Human-readable summary: window dimensions and stable ray data.
    pub fn summary(&self) -> RepSummary {
        let q = self.quiver();
        RepSummary {
            dims: q
                .window_vertices(self.depth())
                .iter()
                .map(|v| (q.vertex_name(*v), self.dim_at(*v)))
                .filter(|(_, n)| *n > 0)
                .collect(),
            stable_rays: q
                .rays()
                .iter()
                .zip(self.stable_ray_dims())
                .filter(|(_, n)| *n > 0)
                .map(|(r, n)| (r.name.clone(), n))
                .collect(),
            finite_dimensional: self.is_finite_dimensional(),
        }
    }

    /// Core dimension vector.
    pub fn core_dims(&self) -> Vec<usize> {
        self.inner.dims[..self.inner.quiver.num_core()].to_vec()
    }
}

/// Structured description used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepSummary {
    pub dims: Vec<(String, usize)>,
    pub stable_rays: Vec<(String, usize)>,
    pub finite_dimensional: bool,
}

impl fmt::Display for RepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(v, n)| format!("{v}:{n}")).collect();
        write!(f, "({})", parts.join(", "))?;
        for (r, n) in &self.stable_rays {
            write!(f, " stable {r}:{n}")?;
        }
        Ok(())
    }
}

fn dim_in(q: &Quiver, depth: u32, dims: &[usize], v: Vertex) -> usize {
    if let Some(i) = q.vertex_index(v, depth) {
        return dims[i];
    }
    match v {
        Vertex::Ray { ray, .. } if q.ray_direction(ray) == Direction::Outward && depth > 0 => {
            dims[q.vertex_index(Vertex::Ray { ray, depth }, depth).unwrap()]
        }
        _ => 0,
    }
}

/// A morphism of representations, stored on a common window. Beyond the
/// window it repeats the ray component at the window boundary.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    pub source: Representation,
    pub target: Representation,
    depth: u32,
    maps: Vec<ExactMatrix>,
}

impl RepMorphism {
    /// Checks shapes and the commutativity of every window square.
    pub fn new(
        source: Representation,
        target: Representation,
        depth: u32,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, depth, maps)?;
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Representation,
        target: Representation,
        depth: u32,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self> {
        source.check_compatible(&target)?;
        let depth = depth.max(source.depth()).max(target.depth());
        let q = source.quiver().clone();
        let verts = q.window_vertices(depth);
        if maps.len() != verts.len() {
            return Err(Error::Shape(format!(
                "morphism needs {} vertex maps, got {}",
                verts.len(),
                maps.len()
            )));
        }
        for (v, m) in verts.iter().zip(&maps) {
            let want = (target.dim_at(*v), source.dim_at(*v));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "map at `{}` has shape {:?}, expected {:?}",
                    q.vertex_name(*v),
                    m.shape(),
                    want
                )));
            }
        }
        Ok(RepMorphism {
            source,
            target,
            depth,
            maps,
        })
    }

    fn check_commutes(&self) -> Result<()> {
        let q = self.source.quiver();
        for a in q.window_arrows(self.depth + 1) {
            let (u, w) = (q.source(a), q.target(a));
            let lhs = self.target.map_at(a).mul(&self.map_at(u));
            let rhs = self.map_at(w).mul(&self.source.map_at(a));
            if lhs != rhs {
                return Err(Error::Shape(format!(
                    "morphism does not commute with arrow `{}`",
                    q.arrow_name(a)
                )));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Representation, target: &Representation) -> Result<Self> {
        let d = source.depth().max(target.depth());
        let q = source.quiver().clone();
        let f = q.field();
        let maps = q
            .window_vertices(d)
            .iter()
            .map(|v| ExactMatrix::zeros(f, target.dim_at(*v), source.dim_at(*v)))
            .collect();
        Self::new_unchecked(source.clone(), target.clone(), d, maps)
    }

    pub fn identity(m: &Representation) -> Self {
        let q = m.quiver().clone();
        let f = q.field();
        let maps = q
            .window_vertices(m.depth())
            .iter()
            .map(|v| ExactMatrix::identity(f, m.dim_at(*v)))
            .collect();
        Self::new_unchecked(m.clone(), m.clone(), m.depth(), maps).unwrap()
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    pub fn field(&self) -> FieldSpec {
        self.source.field()
    }

    /// Component at any vertex.
    pub fn map_at(&self, v: Vertex) -> ExactMatrix {
        let q = self.source.quiver();
        if let Some(i) = q.vertex_index(v, self.depth) {
            return self.maps[i].clone();
        }
        match v {
            Vertex::Ray { ray, .. } if q.ray_direction(ray) == Direction::Outward => {
                let i = q
                    .vertex_index(Vertex::Ray { ray, depth: self.depth }, self.depth)
                    .unwrap();
                self.maps[i].clone()
            }
            _ => ExactMatrix::zeros(self.field(), self.target.dim_at(v), self.source.dim_at(v)),
        }
    }

    pub fn extend(&self, d: u32) -> Self {
        if d <= self.depth {
            return self.clone();
        }
        let q = self.source.quiver().clone();
        let maps = q.window_vertices(d).iter().map(|v| self.map_at(*v)).collect();
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            depth: d,
            maps,
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &RepMorphism) -> Result<RepMorphism> {
        if self.source.signature(self.depth.max(f.depth)) != f.target.signature(self.depth.max(f.depth)) {
            return Err(Error::EndpointMismatch(
                "composite of morphisms with mismatched middle object".into(),
            ));
        }
        let d = self.depth.max(f.depth);
        let q = self.source.quiver().clone();
        let maps = q
            .window_vertices(d)
            .iter()
            .map(|v| self.map_at(*v).mul(&f.map_at(*v)))
            .collect();
        Self::new_unchecked(f.source.clone(), self.target.clone(), d, maps)
    }

    fn zip_with(&self, other: &RepMorphism, op: impl Fn(&ExactMatrix, &ExactMatrix) -> ExactMatrix) -> Result<RepMorphism> {
        let d = self.depth.max(other.depth);
        if self.source.signature(d) != other.source.signature(d)
            || self.target.signature(d) != other.target.signature(d)
        {
            return Err(Error::EndpointMismatch("morphisms are not parallel".into()));
        }
        let q = self.source.quiver().clone();
        let maps = q
            .window_vertices(d)
            .iter()
            .map(|v| op(&self.map_at(*v), &other.map_at(*v)))
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), d, maps)
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &RepMorphism) -> Result<RepMorphism> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(ExactMatrix::is_zero)
    }

    /// Invertible at every vertex (the tail repeats the boundary component).
    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(ExactMatrix::is_invertible)
    }

    /// All window components flattened into one column, on depth `d`.
    pub fn flatten(&self, d: u32) -> Vec<Scalar> {
        let q = self.source.quiver();
        let mut out = Vec::new();
        for v in q.window_vertices(d.max(self.depth)) {
            out.extend(self.map_at(v).flatten());
        }
        out
    }

    /// Block-diagonal matrix on the total window space of depth `d`.
    pub fn total_matrix(&self, d: u32) -> ExactMatrix {
        let q = self.source.quiver();
        let blocks: Vec<ExactMatrix> = q.window_vertices(d).iter().map(|v| self.map_at(*v)).collect();
        ExactMatrix::block_diag(self.field(), &blocks)
    }
}

/// Linear combination `Σ c_i f_i` of parallel morphisms.
pub(crate) fn combine(
    source: &Representation,
    target: &Representation,
    basis: &[RepMorphism],
    coeffs: &[Scalar],
) -> Result<RepMorphism> {
    let mut acc = RepMorphism::zero(source, target)?;
    for (b, c) in basis.iter().zip(coeffs) {
        acc = acc.add(&b.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    #[test]
    fn projective_over_ray_is_infinite() {
        let q = Arc::new(catalog::right_infinite_a());
        let p1 = Representation::projective(q.clone(), &[Vertex::Core(0)], 0).unwrap();
        assert_eq!(p1.dim_at(q.vertex("r[5]").unwrap()), 1);
        assert!(!p1.is_finite_dimensional());
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        assert!(s1.is_finite_dimensional());
        assert_eq!(s1.total_dim(), Some(1));
        let p = Representation::projective(q.clone(), &[Vertex::Core(0)], 0).unwrap();
        let path = q.paths_between(Vertex::Core(0), q.vertex("r[4]").unwrap()).unwrap();
        assert!(p.eval_path(&path[0]).is_identity());
    }

    #[test]
    fn extension_preserves_data() {
        let q = Arc::new(catalog::double_infinite_a());
        let p = Representation::projective(q.clone(), &[q.vertex("l[2]").unwrap()], 0).unwrap();
        let e = p.extend(5);
        for v in q.window_vertices(6) {
            assert_eq!(p.dim_at(v), e.dim_at(v));
        }
        // inward ray vanishes beyond the generator
        assert_eq!(p.dim_at(q.vertex("l[3]").unwrap()), 0);
        assert_eq!(p.dim_at(q.vertex("l[1]").unwrap()), 1);
        assert_eq!(p.stable_ray_dims(), vec![0, 1]);
        let id = RepMorphism::identity(&p);
        assert!(id.compose(&id).unwrap().is_isomorphism());
    }

    #[test]
    fn shapes_are_validated() {
        let q = Arc::new(catalog::a_n(2));
        let f = q.field();
        let bad = Representation::new(q.clone(), 0, vec![1, 1], vec![ExactMatrix::zeros(f, 2, 1)]);
        assert!(matches!(bad, Err(Error::Shape(_))));
        let ok = Representation::new(q, 0, vec![1, 1], vec![ExactMatrix::identity(f, 1)]).unwrap();
        assert_eq!(ok.total_dim(), Some(2));
    }
}
