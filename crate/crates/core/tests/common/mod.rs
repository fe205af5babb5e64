//! Oracles and samplers shared by the integration tests. The oracles use
//! only integer arithmetic and brute force, never the library's linear
//! algebra, except where noted.

#![allow(dead_code)]

use std::sync::Arc;

use ar_duality::exactlin::ExactMatrix;
use ar_duality::quiver::{Quiver, Vertex};
use ar_duality::rep::{hom_direct, minimal_presentation, Representation};

/// Number of paths `i -> j` in a finite acyclic quiver, by recursion on arrows.
pub fn path_count(q: &Quiver, i: usize, j: usize) -> i64 {
    if i == j {
        return 1;
    }
    q.core_arrows()
        .iter()
        .filter(|a| a.source == i)
        .map(|a| path_count(q, a.target, j))
        .sum()
}

/// `dim τM = -Cᵀ C⁻¹ dim M` for non-projective indecomposable `M` over a
/// finite acyclic quiver, where column `j` of `C` is `dim P_j`. The catalog
/// quivers number vertices so that arrows increase the index, making `C`
/// unipotent lower triangular.
pub fn coxeter_tau_dims(q: &Quiver, d: &[usize]) -> Vec<i64> {
    let n = q.num_core();
    let c = |i: usize, j: usize| path_count(q, j, i);
    // forward substitution for C x = d
    let mut x = vec![0i64; n];
    for i in 0..n {
        let mut s = d[i] as i64;
        for (j, xj) in x.iter().enumerate().take(i) {
            s -= c(i, j) * xj;
        }
        x[i] = s;
    }
    (0..n).map(|i| -(0..n).map(|j| c(j, i) * x[j]).sum::<i64>()).collect()
}

/// `q(d) = Σ d_v² - Σ_arrows d_s d_t`.
pub fn tits_form(q: &Quiver, d: &[usize]) -> i64 {
    let sq: i64 = d.iter().map(|&x| (x * x) as i64).sum();
    let ar: i64 = q
        .core_arrows()
        .iter()
        .map(|a| (d[a.source] * d[a.target]) as i64)
        .sum();
    sq - ar
}

/// Dimension vectors carrying a representation with 0/1 matrix entries and
/// one-dimensional endomorphism ring, over all dimension vectors bounded by
/// `cap`. Endomorphism rings via the direct Hom solver.
pub fn brick_dims_01(q: &Arc<Quiver>, cap: &[usize]) -> Vec<Vec<usize>> {
    let f = q.field();
    let mut out = Vec::new();
    let mut d = vec![0usize; cap.len()];
    loop {
        // next dimension vector
        let mut k = 0;
        loop {
            if k == cap.len() {
                out.sort();
                return out;
            }
            if d[k] < cap[k] {
                d[k] += 1;
                break;
            }
            d[k] = 0;
            k += 1;
        }
        let shapes: Vec<(usize, usize)> = q
            .core_arrows()
            .iter()
            .map(|a| (d[a.target], d[a.source]))
            .collect();
        let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        for mask in 0u64..(1u64 << bits) {
            let mut pos = 0;
            let maps: Vec<ExactMatrix> = shapes
                .iter()
                .map(|&(r, c)| {
                    let data = (0..r * c)
                        .map(|t| f.from_i64(((mask >> (pos + t)) & 1) as i64))
                        .collect();
                    pos += r * c;
                    ExactMatrix::new(f, r, c, data)
                })
                .collect();
            let m = Representation::new(q.clone(), 0, d.clone(), maps).unwrap();
            if hom_direct(&m, &m).unwrap().dim() == 1 {
                out.push(d.clone());
                break;
            }
        }
    }
}

pub fn is_projective(m: &Representation) -> bool {
    minimal_presentation(m).unwrap().is_projective()
}

pub fn simples(q: &Arc<Quiver>) -> Vec<Representation> {
    (0..q.num_core())
        .map(|v| Representation::simple(q.clone(), Vertex::Core(v)).unwrap())
        .collect()
}
