use std::collections::BTreeMap;

use super::{Arrow, Direction, Quiver, Vertex};
use crate::error::{Error, Result};

/// A path, arrows listed in traversal order. The empty arrow list is the
/// trivial path `e_source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        debug_assert_eq!(self.target, next.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            source: self.source,
            target: next.target,
            arrows,
        }
    }

    /// The same arrows read backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }
}

impl Quiver {
    /// Sort key: length, then arrow names in traversal order.
    pub(crate) fn path_key(&self, p: &Path) -> (usize, Vec<String>) {
        (p.len(), p.arrows.iter().map(|a| self.arrow_name(*a)).collect())
    }

    pub(crate) fn sort_paths(&self, paths: &mut [Path]) {
        paths.sort_by_cached_key(|p| self.path_key(p));
    }

    /// True when some path `from -> to` exists.
    pub fn reaches(&self, from: Vertex, to: Vertex) -> bool {
        self.reaches_with(&self.core_reach(), from, to)
    }

    fn reaches_with(&self, reach: &[Vec<bool>], from: Vertex, to: Vertex) -> bool {
        // where an inward-ray vertex enters the core
        let entry = |v: Vertex| -> Option<usize> {
            match v {
                Vertex::Core(i) => Some(i),
                Vertex::Ray { ray, .. } => {
                    (self.rays[ray].direction == Direction::Inward).then_some(self.rays[ray].attach)
                }
            }
        };
        match to {
            Vertex::Core(b) => entry(from).is_some_and(|a| reach[a][b]),
            Vertex::Ray { ray, depth } => {
                let decl = &self.rays[ray];
                match decl.direction {
                    Direction::Outward => match from {
                        Vertex::Ray { ray: r2, depth: d2 } if r2 == ray => d2 <= depth,
                        _ => entry(from).is_some_and(|a| reach[a][decl.attach]),
                    },
                    Direction::Inward => {
                        matches!(from, Vertex::Ray { ray: r2, depth: d2 } if r2 == ray && d2 >= depth)
                    }
                }
            }
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        match v {
            Vertex::Core(i) if i < self.vertices.len() => Ok(()),
            Vertex::Ray { ray, depth } if ray < self.rays.len() && depth >= 1 => Ok(()),
            _ => Err(Error::UnknownVertex(format!("{v:?}"))),
        }
    }

    /// All paths `a -> b`, ordered by length and then arrow names. Finite by
    /// interval-finiteness.
    pub fn paths_between(&self, a: Vertex, b: Vertex) -> Result<Vec<Path>> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let reach = self.core_reach();
        let mut out = Vec::new();
        if !self.reaches_with(&reach, a, b) {
            return Ok(out);
        }
        let bound = b.depth().max(a.depth());
        let mut stack = vec![Path::trivial(a)];
        while let Some(p) = stack.pop() {
            if p.target == b {
                out.push(p.clone());
            }
            for arr in self.out_arrows(p.target, bound) {
                let t = self.target(arr);
                if self.reaches_with(&reach, t, b) {
                    let mut q = p.clone();
                    q.arrows.push(arr);
                    q.target = t;
                    stack.push(q);
                }
            }
        }
        self.sort_paths(&mut out);
        Ok(out)
    }

    /// All paths starting at `a` whose target lies in the window of depth
    /// `d`, grouped by target and sorted.
    pub fn paths_from(&self, a: Vertex, d: u32) -> BTreeMap<Vertex, Vec<Path>> {
        let mut out: BTreeMap<Vertex, Vec<Path>> = BTreeMap::new();
        let mut stack = vec![Path::trivial(a)];
        while let Some(p) = stack.pop() {
            let t = p.target;
            let inside = match t {
                Vertex::Core(_) => true,
                Vertex::Ray { depth, .. } => depth <= d,
            };
            if !inside {
                continue;
            }
            for arr in self.out_arrows(t, d) {
                let mut q = p.clone();
                q.arrows.push(arr);
                q.target = self.target(arr);
                stack.push(q);
            }
            out.entry(t).or_default().push(p);
        }
        for v in out.values_mut() {
            self.sort_paths(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    /// Independent oracle: enumerate arrow words of bounded length.
    fn brute_force(q: &Quiver, a: Vertex, b: Vertex, max_len: usize) -> usize {
        let mut count = 0;
        let mut frontier = vec![a];
        for _ in 0..=max_len {
            count += frontier.iter().filter(|&&v| v == b).count();
            let mut next = Vec::new();
            for v in frontier {
                for arr in q.out_arrows(v, 64) {
                    next.push(q.target(arr));
                }
            }
            frontier = next;
        }
        count
    }

    #[test]
    fn a3_paths() {
        let q = catalog::a_n(3);
        let p = q.paths_between(Vertex::Core(0), Vertex::Core(2)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].len(), 2);
        assert_eq!(brute_force(&q, Vertex::Core(0), Vertex::Core(2), 6), 1);
        for v in 0..3 {
            let t = q.paths_between(Vertex::Core(v), Vertex::Core(v)).unwrap();
            assert_eq!(t, vec![Path::trivial(Vertex::Core(v))]);
        }
    }

    #[test]
    fn ray_paths_are_unique() {
        let q = catalog::right_infinite_a();
        let r4 = q.vertex("r[4]").unwrap();
        let p = q.paths_between(Vertex::Core(0), r4).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].len(), 5);
        assert!(q.paths_between(r4, Vertex::Core(0)).unwrap().is_empty());
        let l = catalog::left_infinite_a();
        let l3 = l.vertex("r[3]").unwrap();
        assert_eq!(l.paths_between(l3, Vertex::Core(0)).unwrap().len(), 1);
    }

    #[test]
    fn d4_matches_brute_force() {
        let q = catalog::d4();
        for a in 0..4 {
            for b in 0..4 {
                let n = q.paths_between(Vertex::Core(a), Vertex::Core(b)).unwrap().len();
                assert_eq!(n, brute_force(&q, Vertex::Core(a), Vertex::Core(b), 4));
            }
        }
    }

    #[test]
    fn paths_from_covers_window() {
        let q = catalog::right_infinite_a();
        let m = q.paths_from(Vertex::Core(0), 3);
        assert_eq!(m.len(), 5);
        assert!(m.values().all(|v| v.len() == 1));
    }
}
