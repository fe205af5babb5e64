//! Knitting the Auslander-Reiten quiver of a finite acyclic quiver: start at
//! the indecomposable projectives and complete the mesh starting at every
//! non-injective module found so far.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use super::almost_split::almost_split_starting_at;
use super::membership::{in_cl, in_cr, MembershipCertificate};
use crate::error::{Error, Result};
use crate::quiver::{Counterexample, Quiver, Vertex};
use crate::rep::{
    decompose, indecomposables_isomorphic, is_injective_windowed, write_representation, Representation,
};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KnitCaps {
    pub max_modules: usize,
    pub max_dim: usize,
}

impl Default for KnitCaps {
    fn default() -> Self {
        KnitCaps {
            max_modules: 200,
            max_dim: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArVertex {
    pub id: usize,
    pub dims: Vec<usize>,
    pub generation: usize,
    pub projective: bool,
    pub injective: bool,
    /// The module in the explicit text format.
    pub representation: String,
    #[serde(skip)]
    pub module: Representation,
}

/// An irreducible map `source -> target` of the given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
}

/// The mesh of the almost split conflation `start -> middle -> end`.
#[derive(Clone, Debug, Serialize)]
pub struct Mesh {
    pub start: usize,
    pub end: usize,
    /// `(vertex, multiplicity)` pairs of the middle term.
    pub middle: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArQuiver {
    pub vertices: Vec<ArVertex>,
    pub arrows: Vec<ArArrow>,
    /// `(Y, τY)` pairs.
    pub tau: Vec<(usize, usize)>,
    pub meshes: Vec<Mesh>,
    pub truncated: bool,
    pub caps: KnitCaps,
    pub seed: u64,
}

impl ArQuiver {
    pub fn find(&self, dims: &[usize]) -> Vec<usize> {
        self.vertices.iter().filter(|v| v.dims == dims).map(|v| v.id).collect()
    }

    pub fn modules(&self) -> Vec<Representation> {
        self.vertices.iter().map(|v| v.module.clone()).collect()
    }

    pub fn mesh_ending_at(&self, id: usize) -> Option<&Mesh> {
        self.meshes.iter().find(|m| m.end == id)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
        for v in &self.vertices {
            let label: Vec<String> = v.dims.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "  n{} [label=\"{}\"];", v.id, label.join(""));
        }
        for a in &self.arrows {
            if a.multiplicity == 1 {
                let _ = writeln!(s, "  n{} -> n{};", a.source, a.target);
            } else {
                let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", a.source, a.target, a.multiplicity);
            }
        }
        for (y, x) in &self.tau {
            let _ = writeln!(s, "  n{y} -> n{x} [style=dashed];");
        }
        if self.truncated {
            s.push_str("  // truncated at caps\n");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("AR quiver serializes")
    }
}

struct Registry {
    modules: Vec<(Representation, usize)>,
}

impl Registry {
    fn lookup(&self, m: &Representation) -> Result<Option<usize>> {
        let dims = m.dim_vector();
        for (i, (n, _)) in self.modules.iter().enumerate() {
            if n.dim_vector() == dims && indecomposables_isomorphic(n, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Index of `m`, registering it if there is room; the flag marks a new
    /// entry.
    fn place(&mut self, m: &Representation, generation: usize, cap: usize) -> Result<Option<(usize, bool)>> {
        if let Some(i) = self.lookup(m)? {
            return Ok(Some((i, false)));
        }
        if self.modules.len() >= cap {
            return Ok(None);
        }
        self.modules.push((m.clone(), generation));
        Ok(Some((self.modules.len() - 1, true)))
    }
}

/// Knits the AR quiver of a finite quiver. Stops, with `truncated` set, once
/// `max_modules` iso-classes are known or a module exceeds `max_dim`.
pub fn knit_ar_quiver(q: &Arc<Quiver>, caps: KnitCaps, seed: u64) -> Result<ArQuiver> {
    if !q.is_finite() {
        return Err(Error::NotFiniteDimensional("knitting needs a finite quiver".into()));
    }
    let mut reg = Registry { modules: Vec::new() };
    let mut queue = VecDeque::new();
    let mut truncated = false;
    for v in 0..q.num_core() {
        let p = Representation::projective(q.clone(), &[Vertex::Core(v)], 0)?;
        if let Some((i, _)) = reg.place(&p, 0, usize::MAX)? {
            queue.push_back(i);
        }
    }
    let mut arrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut tau = Vec::new();
    let mut meshes = Vec::new();
    let mut injective = vec![false; reg.modules.len()];
    while let Some(i) = queue.pop_front() {
        let (m, generation) = reg.modules[i].clone();
        if injective.len() < reg.modules.len() {
            injective.resize(reg.modules.len(), false);
        }
        if m.total_dim().unwrap_or(usize::MAX) > caps.max_dim {
            truncated = true;
            continue;
        }
        if is_injective_windowed(&m, seed)? {
            injective[i] = true;
            continue;
        }
        let cert = almost_split_starting_at(&m, seed)?;
        let mut new = Vec::new();
        let mut middle: BTreeMap<usize, usize> = BTreeMap::new();
        let dec = decompose(&cert.delta.e, seed)?;
        let mut complete = true;
        for s in &dec.summands {
            match reg.place(&s.module, generation + 1, caps.max_modules)? {
                Some((j, fresh)) => {
                    if fresh {
                        new.push(j);
                    }
                    *middle.entry(j).or_insert(0) += 1;
                }
                None => complete = false,
            }
        }
        let end = reg.place(&cert.delta.y, generation + 1, caps.max_modules)?;
        if let Some((j, true)) = end {
            new.push(j);
        }
        queue.extend(new);
        let Some((end, _)) = end else {
            truncated = true;
            continue;
        };
        if !complete {
            truncated = true;
        }
        for (&j, &mult) in &middle {
            for key in [(i, j), (j, end)] {
                let e = arrows.entry(key).or_insert(0);
                *e = (*e).max(mult);
            }
        }
        tau.push((end, i));
        meshes.push(Mesh {
            start: i,
            end,
            middle: middle.into_iter().collect(),
        });
    }
    if !queue.is_empty() {
        truncated = true;
    }
    injective.resize(reg.modules.len(), false);

    // canonical order: dimension vector, then discovery generation
    let mut order: Vec<usize> = (0..reg.modules.len()).collect();
    order.sort_by(|&a, &b| {
        let (ma, ga) = &reg.modules[a];
        let (mb, gb) = &reg.modules[b];
        (ma.dim_vector(), ga, a).cmp(&(mb.dim_vector(), gb, b))
    });
    let mut new_id = vec![0; order.len()];
    for (k, &old) in order.iter().enumerate() {
        new_id[old] = k;
    }
    let projective_count = q.num_core();
    let vertices = order
        .iter()
        .enumerate()
        .map(|(k, &old)| {
            let (m, generation) = &reg.modules[old];
            ArVertex {
                id: k,
                dims: m.dim_vector(),
                generation: *generation,
                projective: old < projective_count,
                injective: injective[old],
                representation: write_representation(m),
                module: m.clone(),
            }
        })
        .collect();
    let mut arrows: Vec<ArArrow> = arrows
        .into_iter()
        .map(|((s, t), multiplicity)| ArArrow {
            source: new_id[s],
            target: new_id[t],
            multiplicity,
        })
        .collect();
    arrows.sort_by_key(|a| (a.source, a.target));
    let mut tau: Vec<(usize, usize)> = tau.into_iter().map(|(y, x)| (new_id[y], new_id[x])).collect();
    tau.sort();
    let mut meshes: Vec<Mesh> = meshes
        .into_iter()
        .map(|m| Mesh {
            start: new_id[m.start],
            end: new_id[m.end],
            middle: {
                let mut v: Vec<_> = m.middle.into_iter().map(|(j, c)| (new_id[j], c)).collect();
                v.sort();
                v
            },
        })
        .collect();
    meshes.sort_by_key(|m| m.end);
    Ok(ArQuiver {
        vertices,
        arrows,
        tau,
        meshes,
        truncated,
        caps,
        seed,
    })
}

/// Runs the membership test that a classification counterexample predicts
/// to fail, returning the first failing certificate, or the last certificate
/// when none fails.
pub fn confirm_counterexample(q: &Arc<Quiver>, c: &Counterexample, seed: u64) -> Result<MembershipCertificate> {
    match c {
        Counterexample::ProjectiveNotInCl(v) => {
            let p = Representation::projective(q.clone(), &[*v], 0)?;
            in_cl(&p, seed)
        }
        Counterexample::SimpleNotInCr(vs) => {
            let mut last = None;
            for v in vs {
                let cert = in_cr(&Representation::simple(q.clone(), *v)?)?;
                if !cert.verdict {
                    return Ok(cert);
                }
                last = Some(cert);
            }
            last.ok_or_else(|| Error::Internal("empty counterexample candidate list".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    #[test]
    fn small_counts() {
        for (q, n) in [(catalog::a_n(2), 3), (catalog::a_n(3), 6), (catalog::d4(), 12)] {
            let ar = knit_ar_quiver(&Arc::new(q), KnitCaps::default(), 0).unwrap();
            assert_eq!(ar.vertices.len(), n);
            assert!(!ar.truncated);
        }
    }

    #[test]
    fn a2_translate_and_dot() {
        let ar = knit_ar_quiver(&Arc::new(catalog::a_n(2)), KnitCaps::default(), 0).unwrap();
        let s1 = ar.find(&[1, 0])[0];
        let s2 = ar.find(&[0, 1])[0];
        assert_eq!(ar.tau, vec![(s1, s2)]);
        let dot = ar.to_dot();
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot, knit_ar_quiver(&Arc::new(catalog::a_n(2)), KnitCaps::default(), 0).unwrap().to_dot());
    }

    #[test]
    fn caps_truncate() {
        let caps = KnitCaps {
            max_modules: 4,
            max_dim: 64,
        };
        let ar = knit_ar_quiver(&Arc::new(catalog::d4()), caps, 0).unwrap();
        assert!(ar.truncated);
        assert!(ar.vertices.len() <= 4);
    }
}
