//! The Auslander-Reiten pairings and the unit and counit of `(τ⁻, τ)`.
//!
//! `φ_Y : Hom(L, τY) × Ext¹(Y, L) -> k` pairs `f` with a cocycle `(c_k)` of
//! the minimal presentation of `Y` by `Σ_k ⟨f(c_k), e_k⟩`, where `e_k` is the
//! class in `Tr Y` of the generator at the k-th relation vertex and `τY` is
//! the pointwise dual of `Tr Y`. It vanishes on coboundaries and on
//! injectively trivial `f`.
//!
//! `ψ_X : Hom(τ⁻X, L) × Ext¹(L, X) -> k` is transported from `φ_{DX}` over
//! the opposite quiver: `ψ_X(u, μ) = φ_{DX}(Du, Dμ)`. It needs `X` and `L`
//! finite dimensional.

use super::duality::{
    dual_conflation, matlis_dual, matlis_dual_morphism, tau_minus_on_morphism, tau_on_morphism, transpose_data,
    TransposeData,
};
use super::membership::cr_certificate;
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};
use crate::rep::{
    cocycle_of, conflation_of_class, ext1_with, hom, stable_hom_inj, stable_hom_proj, ExtSpace, RepMorphism,
    Representation, StableHom,
};

/// The transpose of `Y` with `τY = D Tr Y`.
#[derive(Clone, Debug)]
pub(crate) struct TauData {
    pub td: TransposeData,
    pub tau: Representation,
}

pub(crate) fn tau_data(y: &Representation) -> Result<TauData> {
    let td = transpose_data(y)?;
    if !td.transpose.module.is_finite_dimensional() {
        return Err(Error::NotInCr(Box::new(cr_certificate(y, &td.transpose.module))));
    }
    let tau = matlis_dual(&td.transpose.module)?;
    Ok(TauData { td, tau })
}

impl TauData {
    /// `Ext¹(Y, L)` in the presentation that defines `Tr Y`.
    pub fn ext_into(&self, l: &Representation) -> Result<ExtSpace> {
        ext1_with(self.td.presentation.clone(), l)
    }
}

/// `φ_Y(f)(c)` for `f : L -> τY` and a cocycle `c` of `Ext¹(Y, L)`.
pub(crate) fn phi_value(t: &TauData, f: &RepMorphism, cocycle: &[Scalar]) -> Scalar {
    let field = f.field();
    let l = &f.source;
    let mut acc = field.zero();
    let mut pos = 0;
    for (w, e) in t.td.presentation.p1.iter().zip(&t.td.transpose.generators) {
        let n = l.dim_at(*w);
        let c = ExactMatrix::column_vector(field, cocycle[pos..pos + n].to_vec());
        pos += n;
        let v = f.map_at(*w).mul(&c);
        for i in 0..v.rows() {
            acc = field.add(&acc, &field.mul(v.get(i, 0), e.get(i, 0)));
        }
    }
    acc
}

/// Rows: morphisms `L -> τY`; columns: the basis of `ext = Ext¹(Y, L)`.
pub(crate) fn phi_matrix(t: &TauData, homs: &[RepMorphism], ext: &ExtSpace) -> Result<ExactMatrix> {
    let f = ext.m.field();
    let mut out = ExactMatrix::zeros(f, homs.len(), ext.dim());
    let reps = ext.representatives();
    for (i, h) in homs.iter().enumerate() {
        for j in 0..ext.dim() {
            out.set(i, j, phi_value(t, h, &reps.column(j)));
        }
    }
    Ok(out)
}

/// `DX` over the opposite quiver with its translate; `τ⁻X = Tr DX`.
#[derive(Clone, Debug)]
pub(crate) struct PsiData {
    pub top: TauData,
}

impl PsiData {
    pub fn tau_minus(&self) -> &Representation {
        &self.top.td.transpose.module
    }
}

pub(crate) fn psi_data(x: &Representation) -> Result<PsiData> {
    let dx = matlis_dual(x)?;
    let td = transpose_data(&dx)?;
    if !td.transpose.module.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional(
            "the pairing ψ needs τ⁻X finite dimensional".into(),
        ));
    }
    let tau = matlis_dual(&td.transpose.module)?;
    Ok(PsiData {
        top: TauData { td, tau },
    })
}

/// Rows: morphisms `τ⁻X -> L`; columns: the basis of `ext = Ext¹(L, X)`.
pub(crate) fn psi_matrix(p: &PsiData, homs: &[RepMorphism], ext: &ExtSpace) -> Result<ExactMatrix> {
    let f = ext.m.field();
    let dl = matlis_dual(&ext.m)?;
    let ext_op = p.top.ext_into(&dl)?;
    let mut cocycles = Vec::new();
    for j in 0..ext.dim() {
        let mut e = vec![f.zero(); ext.dim()];
        e[j] = f.one();
        let delta = conflation_of_class(ext, &e)?;
        let dual = dual_conflation(&delta)?;
        cocycles.push(cocycle_of(&dual, &ext_op)?);
    }
    let mut out = ExactMatrix::zeros(f, homs.len(), ext.dim());
    for (i, u) in homs.iter().enumerate() {
        let du = matlis_dual_morphism(u)?;
        for (j, c) in cocycles.iter().enumerate() {
            out.set(i, j, phi_value(&p.top, &du, c));
        }
    }
    Ok(out)
}

/// The bilinear form `Hom-bar(L, τM) × Ext¹(M, L) -> k` in the canonical
/// bases of the injectively stable Hom space and of `Ext¹`.
#[derive(Clone, Debug)]
pub struct ArPairing {
    pub m: Representation,
    pub l: Representation,
    pub tau_m: Representation,
    pub stable: StableHom,
    pub ext: ExtSpace,
    pub matrix: ExactMatrix,
    tau: TauData,
}

impl ArPairing {
    /// Square and invertible (the empty form counts).
    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.is_invertible()
    }

    /// `⟨f, μ⟩` for `f : L -> τM` and `μ` given by coordinates in `ext`.
    pub fn pair(&self, f: &RepMorphism, coords: &[Scalar]) -> Result<Scalar> {
        let d = f.depth().max(self.tau_m.depth());
        if f.target.signature(d) != self.tau_m.signature(d) || f.source.signature(d) != self.l.signature(d) {
            return Err(Error::EndpointMismatch("pairing needs a morphism L -> τM".into()));
        }
        let c = self.ext.cocycle(coords)?;
        Ok(phi_value(&self.tau, f, &c))
    }
}

pub fn ar_pairing(m: &Representation, l: &Representation, seed: u64) -> Result<ArPairing> {
    m.check_compatible(l)?;
    let t = tau_data(m)?;
    let ext = t.ext_into(l)?;
    let stable = stable_hom_inj(l, &t.tau, seed)?;
    let reps = stable.representatives()?;
    let matrix = phi_matrix(&t, &reps, &ext)?;
    Ok(ArPairing {
        m: m.clone(),
        l: l.clone(),
        tau_m: t.tau.clone(),
        stable,
        ext,
        matrix,
        tau: t,
    })
}

/// `⟨f, μ⟩` for `f : L -> τM` and `μ ∈ Ext¹(M, L)` in the coordinates of
/// `data.ext`.
pub fn pair(data: &ArPairing, f: &RepMorphism, coords: &[Scalar]) -> Result<Scalar> {
    data.pair(f, coords)
}

fn solve_functional(pairing: &ExactMatrix, target: &[Scalar]) -> Result<Vec<Scalar>> {
    let f = pairing.field();
    let rhs = ExactMatrix::column_vector(f, target.to_vec());
    let a = pairing
        .transpose()
        .solve(&rhs)
        .map_err(|_| Error::Internal("pairing does not reach the requested functional".into()))?;
    Ok(a.column(0))
}

/// `ε_Y = ψ⁻¹(φ(id_{τY})) : τ⁻τY -> Y`, a representative of its stable class.
pub fn epsilon(y: &Representation) -> Result<RepMorphism> {
    let t = tau_data(y)?;
    let x = t.tau.clone();
    let ext = t.ext_into(&x)?;
    let beta = phi_matrix(&t, &[RepMorphism::identity(&x)], &ext)?.row(0);
    let p = psi_data(&x)?;
    let homs = hom(p.tau_minus(), y)?;
    let psi = psi_matrix(&p, &homs.basis, &ext)?;
    homs.element(&solve_functional(&psi, &beta)?)
}

/// `η_X = φ⁻¹(ψ(id_{τ⁻X})) : X -> ττ⁻X`.
pub fn eta(x: &Representation) -> Result<RepMorphism> {
    let p = psi_data(x)?;
    let z = p.tau_minus().clone();
    let t = tau_data(&z)?;
    let ext = t.ext_into(x)?;
    let alpha = psi_matrix(&p, &[RepMorphism::identity(&z)], &ext)?.row(0);
    let homs = hom(x, &t.tau)?;
    let phi = phi_matrix(&t, &homs.basis, &ext)?;
    homs.element(&solve_functional(&phi, &alpha)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    /// modulo morphisms factoring through projectives
    Projective,
    /// modulo injectively trivial morphisms
    Injective,
}

fn stable_space(a: &Representation, b: &Representation, kind: Stability, seed: u64) -> Result<StableHom> {
    match kind {
        Stability::Projective => stable_hom_proj(a, b),
        Stability::Injective => stable_hom_inj(a, b, seed),
    }
}

pub fn stably_equal(f: &RepMorphism, g: &RepMorphism, kind: Stability, seed: u64) -> Result<bool> {
    stable_space(&f.source, &f.target, kind, seed)?.is_zero(&f.sub(g)?)
}

/// A morphism `u` with `u f` and `f u` stably equal to identities.
pub fn stable_inverse(f: &RepMorphism, kind: Stability, seed: u64) -> Result<Option<RepMorphism>> {
    let (a, b) = (&f.source, &f.target);
    let field = f.field();
    let back = hom(b, a)?;
    let saa = stable_space(a, a, kind, seed)?;
    let sbb = stable_space(b, b, kind, seed)?;
    let n = back.dim();
    let rows = saa.dim() + sbb.dim();
    let mut sys = ExactMatrix::zeros(field, rows, n);
    for (i, u) in back.basis.iter().enumerate() {
        let c1 = saa.class_of(&u.compose(f)?)?;
        let c2 = sbb.class_of(&f.compose(u)?)?;
        for (r, c) in c1.into_iter().chain(c2).enumerate() {
            sys.set(r, i, c);
        }
    }
    let mut rhs = saa.class_of(&RepMorphism::identity(a))?;
    rhs.extend(sbb.class_of(&RepMorphism::identity(b))?);
    match sys.solve(&ExactMatrix::column_vector(field, rhs)) {
        Ok(sol) => Ok(Some(back.element(&sol.column(0))?)),
        Err(_) => Ok(None),
    }
}

/// Outcome of the unit/counit checks at `Y`.
#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub epsilon: RepMorphism,
    pub eta: RepMorphism,
    pub epsilon_is_stable_iso: bool,
    pub eta_is_stable_iso: bool,
    /// `τ(ε_Y) ∘ η_{τY} = id` modulo injectively trivial morphisms
    pub first: bool,
    /// `ε_{τ⁻X} ∘ τ⁻(η_X) = id` modulo projectively trivial ones, `X = τY`
    pub second: bool,
}

impl TriangleReport {
    pub fn all_hold(&self) -> bool {
        self.epsilon_is_stable_iso && self.eta_is_stable_iso && self.first && self.second
    }
}

pub fn triangle_identities(y: &Representation, seed: u64) -> Result<TriangleReport> {
    let x = tau_data(y)?.tau;
    let eps = epsilon(y)?;
    let eta_x = eta(&x)?;
    let first_comp = tau_on_morphism(&eps)?.compose(&eta_x)?;
    let first = stably_equal(&first_comp, &RepMorphism::identity(&x), Stability::Injective, seed)?;
    let z = eps.source.clone();
    let second_comp = epsilon(&z)?.compose(&tau_minus_on_morphism(&eta_x, seed)?)?;
    let second = stably_equal(&second_comp, &RepMorphism::identity(&z), Stability::Projective, seed)?;
    Ok(TriangleReport {
        epsilon_is_stable_iso: stable_inverse(&eps, Stability::Projective, seed)?.is_some(),
        eta_is_stable_iso: stable_inverse(&eta_x, Stability::Injective, seed)?.is_some(),
        epsilon: eps,
        eta: eta_x,
        first,
        second,
    })
}
