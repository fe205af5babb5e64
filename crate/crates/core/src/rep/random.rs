//! Seeded random representations for tests, sampling and cross-validation.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::decompose::decompose;
use super::Representation;
use crate::error::Result;
use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};
use crate::pathcat::{PathLin, PathMatrix};
use crate::quiver::{Quiver, Vertex};

/// A small integer, so that rational computations stay readable.
pub fn small_scalar<R: Rng + ?Sized>(f: FieldSpec, rng: &mut R) -> Scalar {
    f.from_i64(rng.gen_range(-2..=2))
}

fn small_matrix<R: Rng + ?Sized>(f: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> ExactMatrix {
    let data = (0..rows * cols).map(|_| small_scalar(f, rng)).collect();
    ExactMatrix::new(f, rows, cols, data)
}

/// Random dimensions bounded by `max_dims` (one entry per vertex of the
/// window of depth `depth`, missing entries read as 0) and random arrow maps.
/// Along outward rays the data beyond the window repeats the boundary.
pub fn random_representation<R: Rng + ?Sized>(
    q: &Arc<Quiver>,
    max_dims: &[usize],
    depth: u32,
    rng: &mut R,
) -> Representation {
    let f = q.field();
    let window = q.window_vertices(depth);
    let dims: Vec<usize> = (0..window.len())
        .map(|i| rng.gen_range(0..=max_dims.get(i).copied().unwrap_or(0)))
        .collect();
    let maps = q
        .window_arrows(depth)
        .iter()
        .map(|a| {
            let s = dims[q.vertex_index(q.source(*a), depth).unwrap()];
            let t = dims[q.vertex_index(q.target(*a), depth).unwrap()];
            small_matrix(f, t, s, rng)
        })
        .collect();
    Representation::new(q.clone(), depth, dims, maps).expect("random data has valid shapes")
}

/// Cokernel of a random relation between the given projectives.
pub fn random_presented<R: Rng + ?Sized>(
    q: &Arc<Quiver>,
    p0: &[Vertex],
    p1: &[Vertex],
    rng: &mut R,
) -> Result<Representation> {
    let f = q.field();
    let mut rel = PathMatrix::zero(f, p0.to_vec(), p1.to_vec());
    for (j, b) in p0.iter().enumerate() {
        for (k, a) in p1.iter().enumerate() {
            let terms = q
                .paths_between(*b, *a)?
                .into_iter()
                .filter(|p| !p.is_trivial())
                .map(|p| (p, small_scalar(f, rng)))
                .collect();
            rel.set(j, k, PathLin::from_terms(f, *b, *a, terms));
        }
    }
    Ok(Representation::from_presentation(q.clone(), &rel)?.module)
}

/// A random finitely presented representation whose generators and
/// relations sit on vertices of the window of depth `depth`.
pub fn random_finitely_presented<R: Rng + ?Sized>(
    q: &Arc<Quiver>,
    depth: u32,
    max_gens: usize,
    rng: &mut R,
) -> Result<Representation> {
    let window = q.window_vertices(depth);
    let n0 = rng.gen_range(1..=max_gens.max(1));
    let n1 = rng.gen_range(0..=max_gens);
    let p0: Vec<Vertex> = (0..n0).map(|_| *window.choose(rng).unwrap()).collect();
    let p1: Vec<Vertex> = (0..n1).map(|_| *window.choose(rng).unwrap()).collect();
    random_presented(q, &p0, &p1, rng)
}

/// A random nonzero indecomposable summand of a random representation;
/// `None` after repeated zero draws.
pub fn random_indecomposable<R: Rng + ?Sized>(
    q: &Arc<Quiver>,
    max_dims: &[usize],
    depth: u32,
    rng: &mut R,
) -> Result<Option<Representation>> {
    for _ in 0..32 {
        let m = random_representation(q, max_dims, depth, rng);
        if m.is_zero() {
            continue;
        }
        let dec = decompose(&m, rng.gen())?;
        let pick = rng.gen_range(0..dec.summands.len());
        return Ok(Some(dec.summands[pick].module.clone()));
    }
    Ok(None)
}
