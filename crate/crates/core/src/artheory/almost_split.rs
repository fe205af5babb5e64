//! Almost split conflations, constructed from the socle of `Ext¹(Y, τY)` as
//! a module over `End(Y)`, and an independent verifier of the defining
//! lifting properties.

use serde::Serialize;

use super::duality::{matlis_dual, transpose};
use super::pairing::{phi_matrix, psi_data, psi_matrix, tau_data};
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Scalar};
use crate::rep::{
    conflation_of_class, decompose, ext1, ext1_with, ext_class_of, ext_morphism_matrix, ext_pushforward_matrix,
    hom, is_injective_windowed, minimal_presentation, pullback, pushout, splits, Conflation, EndAlgebra,
    ExtSpace, RepMorphism, Representation,
};

#[derive(Clone, Debug)]
pub struct AlmostSplitCertificate {
    pub delta: Conflation,
    /// The Ext space containing the class of `delta`.
    pub ext: ExtSpace,
    pub coords: Vec<Scalar>,
    /// The functional whose kernel is the radical submodule, when available;
    /// it is nonzero on `coords`.
    pub gamma: Option<Vec<Scalar>>,
    /// A basis of the radical of the endomorphism ring of the fixed end.
    pub radical_basis: Vec<RepMorphism>,
    pub checks: Vec<String>,
    pub seed: u64,
}

impl AlmostSplitCertificate {
    pub fn gamma_value(&self, coords: &[Scalar]) -> Option<Scalar> {
        let f = self.ext.m.field();
        self.gamma.as_ref().map(|g| {
            g.iter()
                .zip(coords)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
    }
}

fn check_indecomposable(m: &Representation, seed: u64) -> Result<()> {
    if m.is_zero() {
        return Err(Error::NotIndecomposable(0));
    }
    let n = decompose(m, seed)?.summands.len();
    if n != 1 {
        return Err(Error::NotIndecomposable(n));
    }
    Ok(())
}

fn radical_basis(m: &Representation) -> Result<Vec<RepMorphism>> {
    let alg = EndAlgebra::new(m)?;
    let rad = alg.radical()?;
    (0..rad.cols()).map(|j| alg.hom.element(&rad.column(j))).collect()
}

/// First vector of the common kernel of the given operators on `ext`.
fn socle_vector(ops: &[ExactMatrix], ext: &ExtSpace) -> Result<Vec<Scalar>> {
    let f = ext.m.field();
    let stacked = ExactMatrix::vstack_all(f, ext.dim(), ops);
    let ker = stacked.kernel();
    if ker.cols() == 0 {
        return Err(Error::Internal("the socle of the Ext space is zero".into()));
    }
    Ok(ker.column(0))
}

/// Scales `v` so that `γ(v) = 1`; left alone when `γ` is absent or vanishes
/// (the latter is caught by the certificate checks).
fn normalize(v: Vec<Scalar>, gamma: Option<&[Scalar]>, ext: &ExtSpace) -> Vec<Scalar> {
    let f = ext.m.field();
    let Some(g) = gamma else {
        return v;
    };
    let value = g.iter().zip(&v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
    if f.is_zero(&value) {
        return v;
    }
    let s = f.inv(&value);
    v.iter().map(|c| f.mul(c, &s)).collect()
}

/// The almost split conflation `0 -> τY -> E -> Y -> 0` ending at an
/// indecomposable non-projective `Y` in `C_r`.
pub fn almost_split_ending_at(y: &Representation, seed: u64) -> Result<AlmostSplitCertificate> {
    check_indecomposable(y, seed)?;
    if minimal_presentation(y)?.is_projective() {
        return Err(Error::IsProjective);
    }
    let t = tau_data(y)?;
    let x = t.tau.clone();
    let ext = t.ext_into(&x)?;
    let radical = radical_basis(y)?;
    let ops = radical
        .iter()
        .map(|r| ext_morphism_matrix(r, &ext, &ext))
        .collect::<Result<Vec<_>>>()?;
    let gamma = phi_matrix(&t, &[RepMorphism::identity(&x)], &ext)?.row(0);
    let coords = normalize(socle_vector(&ops, &ext)?, Some(&gamma), &ext);
    let delta = conflation_of_class(&ext, &coords)?;
    let mut cert = AlmostSplitCertificate {
        delta,
        ext,
        coords,
        gamma: Some(gamma),
        radical_basis: radical,
        checks: Vec::new(),
        seed,
    };
    finish_checks(&mut cert, true)?;
    Ok(cert)
}

/// The almost split conflation `0 -> X -> E -> τ⁻X -> 0` starting at a
/// finite dimensional indecomposable non-injective `X`.
pub fn almost_split_starting_at(x: &Representation, seed: u64) -> Result<AlmostSplitCertificate> {
    check_indecomposable(x, seed)?;
    if !x.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional(
            "the sequence starting at X is built for finite dimensional X".into(),
        ));
    }
    if is_injective_windowed(x, seed)? {
        return Err(Error::IsInjective);
    }
    let y = transpose(&matlis_dual(x)?)?;
    let (ext, gamma) = if y.is_finite_dimensional() {
        let p = psi_data(x)?;
        let y = p.tau_minus().clone();
        let ext = ext1(&y, x)?;
        let g = psi_matrix(&p, &[RepMorphism::identity(&y)], &ext)?.row(0);
        (ext, Some(g))
    } else {
        (ext1(&y, x)?, None)
    };
    let radical = radical_basis(x)?;
    let ops = radical
        .iter()
        .map(|r| ext_pushforward_matrix(r, &ext, &ext))
        .collect::<Result<Vec<_>>>()?;
    let coords = normalize(socle_vector(&ops, &ext)?, gamma.as_deref(), &ext);
    let delta = conflation_of_class(&ext, &coords)?;
    let mut cert = AlmostSplitCertificate {
        delta,
        ext,
        coords,
        gamma,
        radical_basis: radical,
        checks: Vec::new(),
        seed,
    };
    finish_checks(&mut cert, false)?;
    Ok(cert)
}

fn finish_checks(cert: &mut AlmostSplitCertificate, ending: bool) -> Result<()> {
    let f = cert.ext.m.field();
    if splits(&cert.delta)? {
        return Err(Error::Internal("constructed conflation splits".into()));
    }
    cert.checks.push("does not split".into());
    if let Some(v) = cert.gamma_value(&cert.coords) {
        if f.is_zero(&v) {
            return Err(Error::Internal("γ vanishes on the socle element".into()));
        }
        cert.checks.push(format!("γ(δ) = {}", f.format(&v)));
    }
    for (i, r) in cert.radical_basis.iter().enumerate() {
        let moved = if ending {
            pullback(&cert.delta, r)?
        } else {
            pushout(&cert.delta, r)?
        };
        if !splits(&moved)? {
            return Err(Error::Internal(format!("radical element {i} does not kill δ")));
        }
    }
    cert.checks.push(format!(
        "{} by all {} radical endomorphisms splits",
        if ending { "pullback" } else { "pushout" },
        cert.radical_basis.len()
    ));
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    NonSplit,
    RightAlmostSplit,
    LeftAlmostSplit,
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub condition: Condition,
    pub probe: Option<usize>,
    /// A non-split morphism that does not factor as required.
    pub witness: Option<RepMorphism>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub probes: usize,
    /// Number of radical morphisms checked against the conflation.
    pub morphisms_checked: usize,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Basis of the morphisms `h` in `homs` with `h∘g` (or `g∘h` when `post`)
/// in the radical of `alg` for every `g` in `back`: the non-retractions
/// onto (non-sections out of) the indecomposable whose endomorphisms `alg`
/// describes.
fn radical_morphisms(
    homs: &[RepMorphism],
    back: &[RepMorphism],
    alg: &EndAlgebra,
    rad: &ExactMatrix,
    post: bool,
) -> Result<Vec<RepMorphism>> {
    let Some(first) = homs.first() else {
        return Ok(Vec::new());
    };
    let f = first.field();
    let quot = rad.cokernel().0;
    let mut cols = Vec::new();
    for h in homs {
        let mut v = Vec::new();
        for g in back {
            let e = if post { g.compose(h)? } else { h.compose(g)? };
            let c = alg.hom.coordinates(&e)?;
            v.extend(quot.mul(&ExactMatrix::column_vector(f, c)).column(0));
        }
        cols.push(ExactMatrix::column_vector(f, v));
    }
    let rows = cols[0].rows();
    let ker = ExactMatrix::hstack_all(f, rows, &cols).kernel();
    (0..ker.cols())
        .map(|j| {
            let c = ker.column(j);
            let mut acc = RepMorphism::zero(&first.source, &first.target)?;
            for (h, a) in homs.iter().zip(&c) {
                acc = acc.add(&h.scale(a))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Checks that `delta` does not split, that every non-retraction `N -> Y`
/// from a probe factors through the deflation, and that every non-section
/// `X -> N` into a probe factors through the inflation.
pub fn verify_almost_split(delta: &Conflation, probes: &[Representation], seed: u64) -> Result<VerificationReport> {
    check_indecomposable(&delta.x, seed)?;
    check_indecomposable(&delta.y, seed)?;
    let mut report = VerificationReport {
        probes: probes.len(),
        morphisms_checked: 0,
        failure: None,
    };
    if splits(delta)? {
        report.failure = Some(Failure {
            condition: Condition::NonSplit,
            probe: None,
            witness: None,
        });
        return Ok(report);
    }
    let (ext_yx, coords) = ext_class_of(delta)?;
    let f = delta.x.field();
    let c = ExactMatrix::column_vector(f, coords);
    let alg_y = EndAlgebra::new(&delta.y)?;
    let rad_y = alg_y.radical()?;
    let alg_x = EndAlgebra::new(&delta.x)?;
    let rad_x = alg_x.radical()?;
    for (i, n) in probes.iter().enumerate() {
        // right: Ext¹(h, X) δ = 0 for non-retractions h: N -> Y
        let to_y = hom(n, &delta.y)?;
        let from_y = hom(&delta.y, n)?;
        let ext_nx = ext1(n, &delta.x)?;
        for h in radical_morphisms(&to_y.basis, &from_y.basis, &alg_y, &rad_y, false)? {
            report.morphisms_checked += 1;
            if !ext_morphism_matrix(&h, &ext_yx, &ext_nx)?.mul(&c).is_zero() {
                report.failure = Some(Failure {
                    condition: Condition::RightAlmostSplit,
                    probe: Some(i),
                    witness: Some(h),
                });
                return Ok(report);
            }
        }
        // left: Ext¹(Y, h) δ = 0 for non-sections h: X -> N
        let from_x = hom(&delta.x, n)?;
        let to_x = hom(n, &delta.x)?;
        let ext_yn = ext1_with(ext_yx.presentation.clone(), n)?;
        for h in radical_morphisms(&from_x.basis, &to_x.basis, &alg_x, &rad_x, true)? {
            report.morphisms_checked += 1;
            if !ext_pushforward_matrix(&h, &ext_yx, &ext_yn)?.mul(&c).is_zero() {
                report.failure = Some(Failure {
                    condition: Condition::LeftAlmostSplit,
                    probe: Some(i),
                    witness: Some(h),
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}
