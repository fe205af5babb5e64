//! The Matlis dual `D`, the transpose `Tr` and the translates `τ = D Tr`,
//! `τ⁻ = Tr D`, on objects and on morphisms.

use std::sync::Arc;

use super::membership::{cl_split, cr_certificate};
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::pathcat::PathLin;
use crate::quiver::Quiver;
use crate::rep::{
    lift_to_presentations, minimal_presentation, Conflation, Presentation, RepMorphism, Representation,
};

pub(crate) fn opposite(q: &Arc<Quiver>) -> Arc<Quiver> {
    Arc::new(q.opposite())
}

/// Pointwise dual over the opposite quiver. Defined on representations that
/// vanish far out along outward rays; the dual of an infinite dimensional
/// one is not finitely presented.
pub fn matlis_dual(m: &Representation) -> Result<Representation> {
    if !m.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional(
            "the dual of a representation that is nonzero along an outward ray is not finitely presented"
                .into(),
        ));
    }
    let q = m.quiver();
    // one extra step so that the flipped inward rays have a zero boundary
    let d = m.depth() + 1;
    let m = m.extend(d);
    let maps = m.maps().iter().map(|a| a.transpose()).collect();
    Representation::new(opposite(q), d, m.dims().to_vec(), maps)
}

/// `D f : DB -> DA` for `f : A -> B`.
pub fn matlis_dual_morphism(f: &RepMorphism) -> Result<RepMorphism> {
    let da = matlis_dual(&f.source)?;
    let db = matlis_dual(&f.target)?;
    let d = da.depth().max(db.depth()).max(f.depth() + 1);
    let g = f.extend(d);
    let maps = g.maps().iter().map(|m| m.transpose()).collect();
    RepMorphism::new(db, da, d, maps)
}

/// A minimal presentation `g` of `M` together with the presentation
/// `coker(dualize g)` of `Tr M` over the opposite quiver. The generators of
/// `Tr M` are the relation generators of `M`, in the same order.
#[derive(Clone, Debug)]
pub struct TransposeData {
    pub presentation: Presentation,
    pub transpose: Presentation,
}

pub(crate) fn transpose_data(m: &Representation) -> Result<TransposeData> {
    let pres = minimal_presentation(m)?;
    let qop = opposite(m.quiver());
    let tr = Representation::from_presentation(qop, &pres.relation.dualize())?;
    Ok(TransposeData {
        presentation: pres,
        transpose: tr,
    })
}

pub fn transpose(m: &Representation) -> Result<Representation> {
    Ok(transpose_data(m)?.transpose.module)
}

/// `Tr f : Tr B -> Tr A` for `f : A -> B`, induced by the dual of a lift of
/// `f` to the relation modules of the minimal presentations.
pub fn transpose_on_morphism(f: &RepMorphism) -> Result<RepMorphism> {
    let ta = transpose_data(&f.source)?;
    let tb = transpose_data(&f.target)?;
    transpose_on_morphism_with(f, &ta, &tb)
}

pub(crate) fn transpose_on_morphism_with(
    f: &RepMorphism,
    ta: &TransposeData,
    tb: &TransposeData,
) -> Result<RepMorphism> {
    let (_, h1) = lift_to_presentations(f, &ta.presentation, &tb.presentation)?;
    let dual = h1.dualize();
    let qop = ta.transpose.module.quiver().clone();
    let mut images: Vec<Scalar> = Vec::new();
    for (i, &b) in tb.transpose.p0.iter().enumerate() {
        let col: Vec<PathLin> = (0..dual.rows()).map(|r| dual.get(r, i).clone()).collect();
        let v = crate::rep::column_to_vector(&qop, &ta.transpose.p0, b, &col)?;
        let x = ta
            .transpose
            .deflation_at(b)?
            .mul(&crate::exactlin::ExactMatrix::column_vector(qop.field(), v));
        images.extend(x.column(0));
    }
    crate::rep::morphism_from_generator_images(&tb.transpose, &ta.transpose.module, &images)
}

/// `τ M = D Tr M`, defined for `M` in `C_r`.
pub fn tau(m: &Representation) -> Result<Representation> {
    let td = transpose_data(m)?;
    if !td.transpose.module.is_finite_dimensional() {
        return Err(Error::NotInCr(Box::new(cr_certificate(m, &td.transpose.module))));
    }
    matlis_dual(&td.transpose.module)
}

/// The summands of `X` without injective summands, with the split inclusion
/// and projection. Finite dimensional `X` is returned unchanged, since
/// `Tr D` kills injectives anyway.
fn non_injective_part(x: &Representation, seed: u64) -> Result<(Representation, RepMorphism, RepMorphism)> {
    if x.is_finite_dimensional() {
        return Ok((x.clone(), RepMorphism::identity(x), RepMorphism::identity(x)));
    }
    let split = cl_split(x, seed)?;
    if !split.certificate.verdict {
        return Err(Error::NotInCl(Box::new(split.certificate)));
    }
    let keep: Vec<_> = split
        .decomposition
        .summands
        .iter()
        .zip(&split.injective)
        .filter(|(_, inj)| !**inj)
        .map(|(s, _)| s)
        .collect();
    let parts: Vec<Representation> = keep.iter().map(|s| s.module.clone()).collect();
    let xb = if parts.is_empty() {
        Representation::zero(x.quiver().clone())
    } else {
        Representation::direct_sum(&parts)?
    };
    // block inclusion and projection
    let q = x.quiver().clone();
    let f = q.field();
    let d = x.depth().max(xb.depth()).max(keep.iter().map(|s| s.inclusion.depth()).max().unwrap_or(0));
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for v in q.window_vertices(d) {
        let ib: Vec<_> = keep.iter().map(|s| s.inclusion.map_at(v)).collect();
        let pb: Vec<_> = keep.iter().map(|s| s.projection.map_at(v)).collect();
        inc.push(crate::exactlin::ExactMatrix::hstack_all(f, x.dim_at(v), &ib));
        proj.push(crate::exactlin::ExactMatrix::vstack_all(f, x.dim_at(v), &pb));
    }
    Ok((
        xb.clone(),
        RepMorphism::new(xb.clone(), x.clone(), d, inc)?,
        RepMorphism::new(x.clone(), xb, d, proj)?,
    ))
}

/// `τ⁻ X = Tr D X_b` for `X` in `C_l`, where `X_b` collects the summands
/// that are not injective (all finite dimensional).
pub fn tau_minus(x: &Representation, seed: u64) -> Result<Representation> {
    let (xb, _, _) = non_injective_part(x, seed)?;
    transpose(&matlis_dual(&xb)?)
}

/// `τ f : τY -> τY'`, as `D Tr f`. The target has no injective summands and
/// is finite dimensional, so this representative is the unique one.
pub fn tau_on_morphism(f: &RepMorphism) -> Result<RepMorphism> {
    for m in [&f.source, &f.target] {
        let td = transpose_data(m)?;
        if !td.transpose.module.is_finite_dimensional() {
            return Err(Error::NotInCr(Box::new(cr_certificate(m, &td.transpose.module))));
        }
    }
    matlis_dual_morphism(&transpose_on_morphism(f)?)
}

/// `τ⁻ g : τ⁻X -> τ⁻X'`, as `Tr D` of the component of `g` between the
/// non-injective parts; defined up to morphisms factoring through
/// projectives.
pub fn tau_minus_on_morphism(g: &RepMorphism, seed: u64) -> Result<RepMorphism> {
    let (_, ix, _) = non_injective_part(&g.source, seed)?;
    let (_, _, px) = non_injective_part(&g.target, seed)?;
    let gb = px.compose(&g.compose(&ix)?)?;
    transpose_on_morphism(&matlis_dual_morphism(&gb)?)
}

/// `0 -> DY -> DE -> DX -> 0` for `0 -> X -> E -> Y -> 0`.
pub fn dual_conflation(delta: &Conflation) -> Result<Conflation> {
    Conflation::new(matlis_dual_morphism(&delta.d)?, matlis_dual_morphism(&delta.i)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{catalog, Vertex};
    use crate::rep::is_isomorphic;

    #[test]
    fn a2_examples() {
        let q = Arc::new(catalog::a_n(2));
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        let p1 = Representation::projective(q.clone(), &[Vertex::Core(0)], 0).unwrap();
        let ds1 = matlis_dual(&s1).unwrap();
        assert_eq!(ds1.core_dims(), vec![1, 0]);
        assert_eq!(transpose(&p1).unwrap().total_dim(), Some(0));
        let tr = transpose(&s1).unwrap();
        assert_eq!(tr.core_dims(), vec![0, 1]);
        let t = tau(&s1).unwrap();
        assert_eq!(t.core_dims(), vec![0, 1]);
        assert!(t.quiver().as_ref() == q.as_ref());
        assert!(is_isomorphic(&tau_minus(&t, 0).unwrap(), &s1).unwrap());
        assert_eq!(tau(&p1).unwrap().total_dim(), Some(0));
    }

    #[test]
    fn right_infinite_transpose_of_simple() {
        let q = Arc::new(catalog::right_infinite_a());
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        let tr = transpose(&s1).unwrap();
        assert_eq!(tr.total_dim(), Some(1));
        assert_eq!(tr.core_dims(), vec![0, 1]);
    }

    #[test]
    fn tau_of_identity_is_identity() {
        let q = Arc::new(catalog::a_n(3));
        let m = crate::rep::parse_representation(&q, "rep explicit\ndim 1 = 1\ndim 2 = 1\nmap a = [[1]]\n").unwrap();
        let t = tau_on_morphism(&RepMorphism::identity(&m)).unwrap();
        assert_eq!(t.source.core_dims(), vec![0, 1, 1]);
        assert!(t.is_isomorphism());
        assert!(t.sub(&RepMorphism::identity(&t.source)).unwrap().is_zero());
    }
}
