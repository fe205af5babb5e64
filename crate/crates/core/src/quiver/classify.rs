use serde::Serialize;

use super::{Direction, Quiver, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitePathProfile {
    pub has_left_infinite: bool,
    pub has_right_infinite: bool,
}

/// Left infinite paths come from inward rays, right infinite ones from
/// outward rays; a finite acyclic core contributes neither.
pub fn infinite_path_profile(q: &Quiver) -> InfinitePathProfile {
    InfinitePathProfile {
        has_left_infinite: q.rays().iter().any(|r| r.direction == Direction::Inward),
        has_right_infinite: q.rays().iter().any(|r| r.direction == Direction::Outward),
    }
}

/// Object expected to violate a membership test when duality fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    /// The indecomposable projective at this vertex is infinite dimensional
    /// and not injective, so it lies outside C_l.
    ProjectiveNotInCl(Vertex),
    /// Some simple at one of these vertices has an infinite dimensional
    /// transpose, so it lies outside C_r. Candidates are listed in search order.
    SimpleNotInCr(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityWitness {
    pub profile: InfinitePathProfile,
    pub reason: String,
    pub counterexample: Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DualityClass {
    HasARDuality,
    LacksARDuality(DualityWitness),
}

impl DualityClass {
    pub fn has_duality(&self) -> bool {
        matches!(self, DualityClass::HasARDuality)
    }
}

/// Linearly oriented `A_n` core: returns its source when the core is a
/// single directed line.
fn linear_source(q: &Quiver) -> Option<usize> {
    let n = q.num_core();
    let arrows = q.core_arrows();
    if arrows.len() + 1 != n {
        return None;
    }
    let mut outdeg = vec![0; n];
    let mut indeg = vec![0; n];
    for a in arrows {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    if outdeg.iter().chain(indeg.iter()).any(|&d| d > 1) {
        return None;
    }
    // connected with n-1 arrows and degrees <= 1: a directed line
    (0..n).find(|&v| indeg[v] == 0)
}

/// Decides whether rep⁺(Q) has Auslander-Reiten duality.
pub fn classify_duality(q: &Quiver) -> Result<DualityClass> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let profile = infinite_path_profile(q);
    if q.rays().is_empty() {
        return Ok(DualityClass::HasARDuality);
    }
    if let Some((r, ray)) = q
        .rays()
        .iter()
        .enumerate()
        .find(|(_, r)| r.direction == Direction::Outward)
    {
        let has_core_pred = q.core_arrows().iter().any(|a| a.target == ray.attach);
        let witness = if has_core_pred {
            Vertex::Core(ray.attach)
        } else {
            Vertex::Ray { ray: r, depth: 1 }
        };
        return Ok(DualityClass::LacksARDuality(DualityWitness {
            profile,
            reason: format!(
                "right infinite path present along ray `{}`; not of the form ...->o->...->o->o",
                ray.name
            ),
            counterexample: Counterexample::ProjectiveNotInCl(witness),
        }));
    }
    let special = q.rays().len() == 1 && linear_source(q) == Some(q.rays()[0].attach);
    if special {
        return Ok(DualityClass::HasARDuality);
    }
    let reason = if q.rays().len() > 1 {
        format!("{} left infinite rays; the special form allows exactly one", q.rays().len())
    } else {
        format!(
            "left infinite ray `{}` is not attached to the source of a linearly oriented A_n core",
            q.rays()[0].name
        )
    };
    let mut candidates: Vec<Vertex> = (0..q.rays().len())
        .map(|ray| Vertex::Ray { ray, depth: 1 })
        .collect();
    candidates.extend((0..q.num_core()).map(Vertex::Core));
    Ok(DualityClass::LacksARDuality(DualityWitness {
        profile,
        reason,
        counterexample: Counterexample::SimpleNotInCr(candidates),
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, FieldSpec};
    use super::*;

    #[test]
    fn profiles() {
        let p = infinite_path_profile(&catalog::a_n(3));
        assert!(!p.has_left_infinite && !p.has_right_infinite);
        let p = infinite_path_profile(&catalog::left_infinite_a());
        assert!(p.has_left_infinite && !p.has_right_infinite);
        let p = infinite_path_profile(&catalog::double_infinite_a());
        assert!(p.has_left_infinite && p.has_right_infinite);
        let q = catalog::right_infinite_a();
        let (a, b) = (infinite_path_profile(&q), infinite_path_profile(&q.opposite()));
        assert_eq!((a.has_left_infinite, a.has_right_infinite), (b.has_right_infinite, b.has_left_infinite));
    }

    #[test]
    fn classification_table() {
        assert!(classify_duality(&catalog::a_n(3)).unwrap().has_duality());
        assert!(classify_duality(&catalog::d4()).unwrap().has_duality());
        assert!(classify_duality(&catalog::left_infinite_a()).unwrap().has_duality());
        for q in [
            catalog::right_infinite_a(),
            catalog::double_infinite_a(),
            catalog::two_inward_star(),
        ] {
            assert!(!classify_duality(&q).unwrap().has_duality());
        }
        match classify_duality(&catalog::right_infinite_a()).unwrap() {
            DualityClass::LacksARDuality(w) => {
                assert_eq!(w.counterexample, Counterexample::ProjectiveNotInCl(Vertex::Core(1)));
                assert!(w.reason.contains("right infinite path"));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn inward_ray_must_sit_at_the_source() {
        let mk = |attach: &str| {
            Quiver::new(
                FieldSpec::default(),
                vec!["1".into(), "2".into(), "3".into()],
                vec![("a".into(), "1".into(), "2".into()), ("b".into(), "2".into(), "3".into())],
                vec![("r".into(), attach.into(), Direction::Inward)],
            )
            .unwrap()
        };
        assert!(classify_duality(&mk("1")).unwrap().has_duality());
        assert!(!classify_duality(&mk("2")).unwrap().has_duality());
        assert!(!classify_duality(&mk("3")).unwrap().has_duality());
    }

    #[test]
    fn disconnected_is_rejected() {
        let q = Quiver::new(FieldSpec::default(), vec!["1".into(), "2".into()], vec![], vec![]).unwrap();
        assert!(matches!(classify_duality(&q), Err(Error::Disconnected)));
    }
}
