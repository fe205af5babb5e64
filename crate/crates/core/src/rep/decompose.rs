use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hom::{hom, HomSpace};
use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::poly::{coprime_split, minimal_polynomial, Poly};
use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub seed: u64,
}

impl Decomposition {
    /// Summands grouped into isomorphism classes, with multiplicities.
    pub fn grouped(&self) -> Result<Vec<(Representation, usize)>> {
        let mut out: Vec<(Representation, usize)> = Vec::new();
        'next: for s in &self.summands {
            for (r, n) in out.iter_mut() {
                if indecomposables_isomorphic(r, &s.module)? {
                    *n += 1;
                    continue 'next;
                }
            }
            out.push((s.module.clone(), 1));
        }
        Ok(out)
    }
}

/// The endomorphism algebra in a fixed basis, with structure constants
/// `b_i b_j = Σ_k c[i][j][k] b_k`.
pub(crate) struct EndAlgebra {
    pub hom: HomSpace,
    consts: Vec<Vec<Vec<Scalar>>>,
    field: FieldSpec,
}

impl EndAlgebra {
    pub fn new(m: &Representation) -> Result<Self> {
        let hom = hom(m, m)?;
        let n = hom.dim();
        let mut consts = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                consts[i][j] = hom.coordinates(&hom.basis[i].compose(&hom.basis[j])?)?;
            }
        }
        Ok(EndAlgebra {
            field: m.field(),
            hom,
            consts,
        })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let c = f.mul(&x[i], &y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(o, &f.mul(&c, &self.consts[i][j][k]));
                }
            }
        }
        out
    }

    fn pow(&self, x: &[Scalar], mut e: u64) -> Vec<Scalar> {
        let f = self.field;
        let n = self.dim();
        let id = self.hom.coordinates(&RepMorphism::identity(&self.hom.source)).unwrap_or_else(|_| vec![f.zero(); n]);
        let mut acc = id;
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Jacobson radical as the kernel of the trace form
    /// `T(a, b) = trace(x ↦ abx)`; valid in characteristic 0 or `p > dim`.
    pub fn radical(&self) -> Result<ExactMatrix> {
        let f = self.field;
        let n = self.dim();
        if !f.supports_trace_radical(n) {
            return Err(Error::FieldTooSmall {
                p: f.characteristic(),
                dim: n,
            });
        }
        // t_k = trace of left multiplication by b_k
        let t: Vec<Scalar> = (0..n)
            .map(|k| (0..n).fold(f.zero(), |acc, j| f.add(&acc, &self.consts[k][j][j])))
            .collect();
        let mut gram = ExactMatrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&self.consts[i][j][k], &t[k])));
                gram.set(i, j, v);
            }
        }
        Ok(gram.kernel())
    }
}

/// Outcome of the locality test for an endomorphism algebra.
enum Locality {
    Local,
    NotLocal,
    Unknown,
}

fn locality(alg: &EndAlgebra, rad: &ExactMatrix) -> Result<Locality> {
    let f = alg.field;
    let n = alg.dim();
    let q = n - rad.cols();
    if q <= 1 {
        return Ok(Locality::Local);
    }
    let p = match f {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Ok(Locality::Unknown),
    };
    // A/J local iff it is a field: commutative with one-dimensional
    // Frobenius fixed space.
    let proj = rad.cokernel().0;
    let lift = proj.right_inverse()?;
    let lifts: Vec<Vec<Scalar>> = (0..q).map(|i| lift.column(i)).collect();
    let class = |v: &[Scalar]| proj.mul(&ExactMatrix::column_vector(f, v.to_vec()));
    for i in 0..q {
        for j in (i + 1)..q {
            let ab = alg.mul(&lifts[i], &lifts[j]);
            let ba = alg.mul(&lifts[j], &lifts[i]);
            if class(&ab) != class(&ba) {
                return Ok(Locality::NotLocal);
            }
        }
    }
    let cols: Vec<ExactMatrix> = lifts.iter().map(|l| class(&alg.pow(l, p as u64))).collect();
    let frob = ExactMatrix::hstack_all(f, q, &cols);
    let fixed = frob.sub(&ExactMatrix::identity(f, q)).kernel().cols();
    Ok(if fixed == 1 {
        Locality::Local
    } else {
        Locality::NotLocal
    })
}

/// Splits `M = ker u(φ) ⊕ ker w(φ)` for an endomorphism `φ` whose minimal
/// polynomial is `u w` with `u`, `w` coprime.
fn split_along(m: &Representation, phi: &RepMorphism, u: &Poly, w: &Poly) -> Result<[Summand; 2]> {
    let q = m.quiver().clone();
    let f = q.field();
    let d = m.depth().max(phi.depth());
    let window = q.window_vertices(d);
    let mut k1 = Vec::new();
    let mut k2 = Vec::new();
    for v in &window {
        let a = phi.map_at(*v);
        k1.push(u.eval_matrix(&a).kernel());
        k2.push(w.eval_matrix(&a).kernel());
    }
    let build = |ks: &[ExactMatrix]| -> Result<Representation> {
        let mut maps = Vec::new();
        for a in q.window_arrows(d) {
            let ui = q.vertex_index(q.source(a), d).unwrap();
            let wi = q.vertex_index(q.target(a), d).unwrap();
            maps.push(ks[wi].solve(&m.map_at(a).mul(&ks[ui]))?);
        }
        Representation::new(q.clone(), d, ks.iter().map(|k| k.cols()).collect(), maps)
    };
    let n1 = build(&k1)?;
    let n2 = build(&k2)?;
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for (a, b) in k1.iter().zip(&k2) {
        let inv = a
            .hstack(b)
            .inverse()
            .ok_or_else(|| Error::Internal("kernels of coprime factors do not span".into()))?;
        p1.push(inv.submatrix(0..a.cols(), 0..inv.cols()));
        p2.push(inv.submatrix(a.cols()..inv.rows(), 0..inv.cols()));
    }
    let _ = f;
    Ok([
        Summand {
            inclusion: RepMorphism::new_unchecked(n1.clone(), m.clone(), d, k1)?,
            projection: RepMorphism::new_unchecked(m.clone(), n1.clone(), d, p1)?,
            module: n1,
        },
        Summand {
            inclusion: RepMorphism::new_unchecked(n2.clone(), m.clone(), d, k2)?,
            projection: RepMorphism::new_unchecked(m.clone(), n2.clone(), d, p2)?,
            module: n2,
        },
    ])
}

fn decompose_rec(m: &Representation, rng: &mut ChaCha8Rng, out: &mut Vec<Summand>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let alg = EndAlgebra::new(m)?;
    let rad = alg.radical()?;
    let loc = locality(&alg, &rad)?;
    if matches!(loc, Locality::Local) {
        out.push(Summand {
            module: m.clone(),
            inclusion: RepMorphism::identity(m),
            projection: RepMorphism::identity(m),
        });
        return Ok(());
    }
    let f = m.field();
    let n = alg.dim();
    let d = m.depth();
    let mut candidates: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            e
        })
        .collect();
    for _ in 0..48 {
        candidates.push((0..n).map(|_| super::random::small_scalar(f, rng)).collect());
    }
    for c in candidates {
        let phi = alg.hom.element(&c)?;
        let mu = minimal_polynomial(&phi.total_matrix(d));
        if let Some((u, w)) = coprime_split(&mu, rng) {
            for part in split_along(m, &phi, &u, &w)? {
                let mut sub = Vec::new();
                decompose_rec(&part.module, rng, &mut sub)?;
                for s in sub {
                    out.push(Summand {
                        inclusion: part.inclusion.compose(&s.inclusion)?,
                        projection: s.projection.compose(&part.projection)?,
                        module: s.module,
                    });
                }
            }
            return Ok(());
        }
    }
    Err(match loc {
        Locality::Unknown => Error::Undecided(format!(
            "the endomorphism algebra modulo its radical has dimension {} and no element with a rational eigenvalue split it",
            n - rad.cols()
        )),
        _ => Error::Internal("no splitting endomorphism found for a non-local algebra".into()),
    })
}

/// Krull-Schmidt decomposition. Summands are sorted by dimension data, and
/// each comes with its inclusion and projection.
pub fn decompose(m: &Representation, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summands = Vec::new();
    decompose_rec(m, &mut rng, &mut summands)?;
    let d = m.depth();
    summands.sort_by_key(|s| s.module.signature(d));
    Ok(Decomposition { summands, seed })
}

/// True for a nonzero representation with local endomorphism algebra.
pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    Ok(!m.is_zero() && decompose(m, 0)?.summands.len() == 1)
}

/// For indecomposables: isomorphic iff some composite of basis morphisms
/// `Y -> X` after `X -> Y` is invertible.
pub(crate) fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> Result<bool> {
    let d = x.depth().max(y.depth());
    if x.signature(d) != y.signature(d) {
        return Ok(false);
    }
    let xy = hom(x, y)?;
    let yx = hom(y, x)?;
    for f in &xy.basis {
        for g in &yx.basis {
            if g.compose(f)?.is_isomorphism() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Decides `M ≅ N` by matching indecomposable summands.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    m.check_compatible(n)?;
    let d = m.depth().max(n.depth());
    if m.signature(d) != n.signature(d) {
        return Ok(false);
    }
    let a = decompose(m, 0)?;
    let b = decompose(n, 0)?;
    if a.summands.len() != b.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.summands.len()];
    'outer: for s in &a.summands {
        for (k, t) in b.summands.iter().enumerate() {
            if !used[k] && indecomposables_isomorphic(&s.module, &t.module)? {
                used[k] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{catalog, Vertex};
    use crate::rep::random::random_representation;
    use std::sync::Arc;

    #[test]
    fn a2_examples() {
        let q = Arc::new(catalog::a_n(2));
        let f = q.field();
        let p1 = Representation::projective(q.clone(), &[Vertex::Core(0)], 0).unwrap();
        let s1 = Representation::simple(q.clone(), Vertex::Core(0)).unwrap();
        let sum = Representation::direct_sum(&[p1.clone(), s1.clone()]).unwrap();
        let dec = decompose(&sum, 0).unwrap();
        let dims: Vec<Vec<usize>> = dec.summands.iter().map(|s| s.module.core_dims()).collect();
        assert_eq!(dims, vec![vec![1, 0], vec![1, 1]]);
        let zero_map = Representation::new(q.clone(), 0, vec![1, 1], vec![ExactMatrix::zeros(f, 1, 1)]).unwrap();
        let dec = decompose(&zero_map, 0).unwrap();
        assert_eq!(dec.summands.len(), 2);
        assert_eq!(decompose(&p1, 0).unwrap().summands.len(), 1);
        assert!(is_isomorphic(&sum, &Representation::direct_sum(&[s1, p1]).unwrap()).unwrap());
    }

    #[test]
    fn summands_reassemble() {
        let q = Arc::new(catalog::d4());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let m = random_representation(&q, &[2, 2, 1, 3], 0, &mut rng);
            let dec = decompose(&m, 5).unwrap();
            let total: usize = dec.summands.iter().map(|s| s.module.total_dim().unwrap()).sum();
            assert_eq!(Some(total), m.total_dim());
            let mut id = RepMorphism::zero(&m, &m).unwrap();
            for s in &dec.summands {
                assert!(s.projection.compose(&s.inclusion).unwrap().is_isomorphism());
                id = id.add(&s.inclusion.compose(&s.projection).unwrap()).unwrap();
                let again = decompose(&s.module, 1).unwrap();
                assert_eq!(again.summands.len(), 1);
            }
            assert!(id.sub(&RepMorphism::identity(&m)).unwrap().is_zero());
        }
    }

    #[test]
    fn repeated_simple_over_rationals() {
        let q = Arc::new(catalog::a_n(2).with_field(FieldSpec::Rationals));
        let s = Representation::simple(q.clone(), Vertex::Core(1)).unwrap();
        let ss = Representation::direct_sum(&[s.clone(), s.clone(), s]).unwrap();
        let dec = decompose(&ss, 0).unwrap();
        assert_eq!(dec.summands.len(), 3);
        assert_eq!(dec.grouped().unwrap().len(), 1);
    }

    #[test]
    fn small_field_is_reported() {
        let q = Arc::new(catalog::a_n(2).with_field(FieldSpec::Prime(2)));
        let s = Representation::simple(q.clone(), Vertex::Core(1)).unwrap();
        let ss = Representation::direct_sum(&[s.clone(), s.clone(), s]).unwrap();
        assert!(matches!(decompose(&ss, 0), Err(Error::FieldTooSmall { .. })));
    }
}
