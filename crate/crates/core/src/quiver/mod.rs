//! Quivers with a finite acyclic core extended by infinite linear rays.
//!
//! An inward ray at `v` contributes vertices `r[1], r[2], ...` with arrows
//! `... -> r[2] -> r[1] -> v`; an outward ray contributes `v -> r[1] -> r[2] -> ...`.
//! The ray arrow named `r[k]` always joins depth `k-1` (depth 0 is the
//! attaching vertex) and depth `k`.

mod classify;
pub(crate) mod parse;
mod paths;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

pub use classify::{
    classify_duality, infinite_path_profile, Counterexample, DualityClass, DualityWitness,
    InfinitePathProfile,
};
pub use parse::parse_quiver;
pub use paths::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Inward,
    Outward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Inward => Direction::Outward,
            Direction::Outward => Direction::Inward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowDecl {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayDecl {
    pub name: String,
    pub attach: usize,
    pub direction: Direction,
}

/// A vertex of the (possibly infinite) quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Core(usize),
    Ray { ray: usize, depth: u32 },
}

/// An arrow; `Ray { depth }` joins depths `depth - 1` and `depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    Core(usize),
    Ray { ray: usize, depth: u32 },
}

impl Vertex {
    pub fn depth(&self) -> u32 {
        match self {
            Vertex::Core(_) => 0,
            Vertex::Ray { depth, .. } => *depth,
        }
    }
}

/// Validated quiver. Declaration order fixes every basis ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    field: FieldSpec,
    vertices: Vec<String>,
    arrows: Vec<ArrowDecl>,
    rays: Vec<RayDecl>,
}

impl Quiver {
    /// Builds and validates a quiver from name lists.
    pub fn new(
        field: FieldSpec,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        rays: Vec<(String, String, Direction)>,
    ) -> Result<Self> {
        let mut names = std::collections::HashSet::new();
        for v in &vertices {
            if !names.insert(v.clone()) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let lookup = |n: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        };
        let mut arrow_names = std::collections::HashSet::new();
        let mut arrow_decls = Vec::new();
        for (name, s, t) in arrows {
            if !arrow_names.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            arrow_decls.push(ArrowDecl {
                source: lookup(&s)?,
                target: lookup(&t)?,
                name,
            });
        }
        let mut ray_decls = Vec::new();
        for (name, at, dir) in rays {
            if names.contains(&name) || !arrow_names.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            ray_decls.push(RayDecl {
                attach: lookup(&at)?,
                name,
                direction: dir,
            });
        }
        let q = Quiver {
            field,
            vertices,
            arrows: arrow_decls,
            rays: ray_decls,
        };
        q.check_acyclic()?;
        Ok(q)
    }

    fn check_acyclic(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        if seen < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CyclicCore(self.vertices[v].clone()));
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        Quiver {
            field,
            ..self.clone()
        }
    }

    pub fn core_vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn core_arrows(&self) -> &[ArrowDecl] {
        &self.arrows
    }

    pub fn rays(&self) -> &[RayDecl] {
        &self.rays
    }

    pub fn num_core(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    /// Arrows reversed, ray directions flipped.
    pub fn opposite(&self) -> Self {
        Quiver {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDecl {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            rays: self
                .rays
                .iter()
                .map(|r| RayDecl {
                    direction: r.direction.flip(),
                    ..r.clone()
                })
                .collect(),
        }
    }

    pub fn ray_direction(&self, ray: usize) -> Direction {
        self.rays[ray].direction
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        match a {
            Arrow::Core(i) => Vertex::Core(self.arrows[i].source),
            Arrow::Ray { ray, depth } => match self.rays[ray].direction {
                Direction::Outward => self.ray_vertex(ray, depth - 1),
                Direction::Inward => Vertex::Ray { ray, depth },
            },
        }
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        match a {
            Arrow::Core(i) => Vertex::Core(self.arrows[i].target),
            Arrow::Ray { ray, depth } => match self.rays[ray].direction {
                Direction::Outward => Vertex::Ray { ray, depth },
                Direction::Inward => self.ray_vertex(ray, depth - 1),
            },
        }
    }

    /// Vertex at `depth` along a ray; depth 0 is the attaching core vertex.
    pub fn ray_vertex(&self, ray: usize, depth: u32) -> Vertex {
        if depth == 0 {
            Vertex::Core(self.rays[ray].attach)
        } else {
            Vertex::Ray { ray, depth }
        }
    }

    /// Arrows leaving `v`, restricted to ray depth at most `bound`.
    pub fn out_arrows(&self, v: Vertex, bound: u32) -> Vec<Arrow> {
        let mut out = Vec::new();
        match v {
            Vertex::Core(i) => {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.source == i {
                        out.push(Arrow::Core(k));
                    }
                }
                for (r, ray) in self.rays.iter().enumerate() {
                    if ray.attach == i && ray.direction == Direction::Outward && bound >= 1 {
                        out.push(Arrow::Ray { ray: r, depth: 1 });
                    }
                }
            }
            Vertex::Ray { ray, depth } => match self.rays[ray].direction {
                Direction::Outward => {
                    if depth < bound {
                        out.push(Arrow::Ray {
                            ray,
                            depth: depth + 1,
                        });
                    }
                }
                Direction::Inward => out.push(Arrow::Ray { ray, depth }),
            },
        }
        out
    }

    /// Arrows entering `v`. Incoming inward-ray arrows may start beyond any window.
    pub fn in_arrows(&self, v: Vertex) -> Vec<Arrow> {
        let mut out = Vec::new();
        match v {
            Vertex::Core(i) => {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.target == i {
                        out.push(Arrow::Core(k));
                    }
                }
                for (r, ray) in self.rays.iter().enumerate() {
                    if ray.attach == i && ray.direction == Direction::Inward {
                        out.push(Arrow::Ray { ray: r, depth: 1 });
                    }
                }
            }
            Vertex::Ray { ray, depth } => match self.rays[ray].direction {
                Direction::Outward => out.push(Arrow::Ray { ray, depth }),
                Direction::Inward => out.push(Arrow::Ray {
                    ray,
                    depth: depth + 1,
                }),
            },
        }
        out
    }

    pub fn vertex_name(&self, v: Vertex) -> String {
        match v {
            Vertex::Core(i) => self.vertices[i].clone(),
            Vertex::Ray { ray, depth } => format!("{}[{}]", self.rays[ray].name, depth),
        }
    }

    pub fn arrow_name(&self, a: Arrow) -> String {
        match a {
            Arrow::Core(i) => self.arrows[i].name.clone(),
            Arrow::Ray { ray, depth } => format!("{}[{}]", self.rays[ray].name, depth),
        }
    }

    /// Resolves `name` or `ray[depth]`.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        let name = name.trim();
        if let Some((ray, depth)) = split_ray_address(name) {
            let r = self
                .rays
                .iter()
                .position(|x| x.name == ray)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            if depth == 0 {
                return Err(Error::UnknownVertex(name.to_string()));
            }
            return Ok(Vertex::Ray { ray: r, depth });
        }
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(Vertex::Core)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<Arrow> {
        let name = name.trim();
        if let Some((ray, depth)) = split_ray_address(name) {
            let r = self
                .rays
                .iter()
                .position(|x| x.name == ray)
                .ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
            if depth == 0 {
                return Err(Error::UnknownArrow(name.to_string()));
            }
            return Ok(Arrow::Ray { ray: r, depth });
        }
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(Arrow::Core)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Core reachability, reflexive: `reach[a][b]` iff a path `a -> b` exists.
    pub(crate) fn core_reach(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut reach = vec![vec![false; n]; n];
        for (a, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![a];
            while let Some(v) = stack.pop() {
                if row[v] {
                    continue;
                }
                row[v] = true;
                for arr in self.arrows.iter().filter(|x| x.source == v) {
                    stack.push(arr.target);
                }
            }
        }
        reach
    }

    /// Length of the longest path inside the core.
    pub fn longest_core_path(&self) -> usize {
        let n = self.vertices.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn go(q: &Quiver, v: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(x) = memo[v] {
                return x;
            }
            let best = q
                .arrows
                .iter()
                .filter(|a| a.source == v)
                .map(|a| 1 + go(q, a.target, memo))
                .max()
                .unwrap_or(0);
            memo[v] = Some(best);
            best
        }
        (0..n).map(|v| go(self, v, &mut memo)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            for a in &self.arrows {
                if a.source == v {
                    stack.push(a.target);
                }
                if a.target == v {
                    stack.push(a.source);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    // ---- window layout -------------------------------------------------

    /// Vertices of the window of ray depth `d`: core first, then each ray.
    pub fn window_vertices(&self, d: u32) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = (0..self.vertices.len()).map(Vertex::Core).collect();
        for r in 0..self.rays.len() {
            for k in 1..=d {
                out.push(Vertex::Ray { ray: r, depth: k });
            }
        }
        out
    }

    /// Arrows with both endpoints in the window of depth `d`.
    pub fn window_arrows(&self, d: u32) -> Vec<Arrow> {
        let mut out: Vec<Arrow> = (0..self.arrows.len()).map(Arrow::Core).collect();
        for r in 0..self.rays.len() {
            for k in 1..=d {
                out.push(Arrow::Ray { ray: r, depth: k });
            }
        }
        out
    }

    pub fn window_size(&self, d: u32) -> usize {
        self.vertices.len() + self.rays.len() * d as usize
    }

    /// Position of `v` in [`Quiver::window_vertices`]; `None` outside the window.
    pub fn vertex_index(&self, v: Vertex, d: u32) -> Option<usize> {
        match v {
            Vertex::Core(i) => Some(i),
            Vertex::Ray { ray, depth } => (depth >= 1 && depth <= d)
                .then(|| self.vertices.len() + ray * d as usize + (depth as usize - 1)),
        }
    }

    pub fn arrow_index(&self, a: Arrow, d: u32) -> Option<usize> {
        match a {
            Arrow::Core(i) => Some(i),
            Arrow::Ray { ray, depth } => (depth >= 1 && depth <= d)
                .then(|| self.arrows.len() + ray * d as usize + (depth as usize - 1)),
        }
    }

    /// Serializes back to the quiver file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self.field {
            FieldSpec::Prime(p) => s.push_str(&format!("field Fp {p}\n")),
            FieldSpec::Rationals => s.push_str("field QQ\n"),
        }
        for v in &self.vertices {
            s.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for r in &self.rays {
            let dir = match r.direction {
                Direction::Inward => "in",
                Direction::Outward => "out",
            };
            s.push_str(&format!(
                "ray {}: attach={} dir={}\n",
                r.name, self.vertices[r.attach], dir
            ));
        }
        s
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn split_ray_address(name: &str) -> Option<(&str, u32)> {
    let open = name.find('[')?;
    let inner = name[open + 1..].strip_suffix(']')?;
    let depth = inner.trim().parse().ok()?;
    Some((&name[..open], depth))
}

/// Ready-made quivers used by tests, examples and the acceptance suite.
pub mod catalog {
    use super::*;

    fn build(vs: &[&str], arrows: &[(&str, &str, &str)], rays: &[(&str, &str, Direction)]) -> Quiver {
        Quiver::new(
            FieldSpec::default(),
            vs.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
                .collect(),
            rays.iter()
                .map(|(n, a, d)| (n.to_string(), a.to_string(), *d))
                .collect(),
        )
        .expect("catalog quiver is valid")
    }

    /// Linearly oriented `1 -> 2 -> ... -> n`.
    pub fn a_n(n: usize) -> Quiver {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrow_names = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| {
                (
                    arrow_names.get(i - 1).map_or(format!("x{i}"), |s| s.to_string()),
                    i.to_string(),
                    (i + 1).to_string(),
                )
            })
            .collect();
        Quiver::new(FieldSpec::default(), names, arrows, vec![]).unwrap()
    }

    /// Three sources `1, 2, 3` into the sink `4`.
    pub fn d4() -> Quiver {
        build(
            &["1", "2", "3", "4"],
            &[("a", "1", "4"), ("b", "2", "4"), ("c", "3", "4")],
            &[],
        )
    }

    /// `1 -> 2 -> r[1] -> r[2] -> ...`
    pub fn right_infinite_a() -> Quiver {
        build(&["1", "2"], &[("a", "1", "2")], &[("r", "2", Direction::Outward)])
    }

    /// `... -> r[2] -> r[1] -> 1`
    pub fn left_infinite_a() -> Quiver {
        build(&["1"], &[], &[("r", "1", Direction::Inward)])
    }

    /// `... -> l[1] -> 1 -> 2 -> r[1] -> ...`
    pub fn double_infinite_a() -> Quiver {
        build(
            &["1", "2"],
            &[("a", "1", "2")],
            &[("l", "1", Direction::Inward), ("r", "2", Direction::Outward)],
        )
    }

    /// `... -> a[1] -> v <- b[1] <- ...`
    pub fn two_inward_star() -> Quiver {
        build(
            &["v"],
            &[],
            &[("a", "v", Direction::Inward), ("b", "v", Direction::Inward)],
        )
    }
}
