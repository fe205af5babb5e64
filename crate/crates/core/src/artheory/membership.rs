use std::fmt;

use serde::Serialize;

use super::duality::transpose_data;
use crate::error::Result;
use crate::rep::{decompose, injectivity_obstruction, Decomposition, RepSummary, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "C_r")]
    Cr,
    #[serde(rename = "C_l")]
    Cl,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Cr => "C_r",
            Side::Cl => "C_l",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandEvidence {
    pub summary: RepSummary,
    pub finite_dimensional: bool,
    pub injective: bool,
    /// For a non-injective summand: a vertex `a` and `dim Ext¹(S_a, -)`.
    pub ext_witness: Option<(String, usize)>,
}

/// Verdict on membership in `C_r` or `C_l` with its evidence: the transpose
/// and its finiteness for `C_r`; the decomposition into finite dimensional
/// and injective summands (or the obstructing summand) for `C_l`.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipCertificate {
    pub verdict: bool,
    pub side: Side,
    pub transpose: Option<RepSummary>,
    pub summands: Vec<SummandEvidence>,
    pub obstruction: Option<usize>,
    pub criterion: String,
}

impl fmt::Display for MembershipCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = if self.verdict { "in" } else { "not in" };
        write!(f, "{verb} {}", self.side)?;
        if let Some(t) = &self.transpose {
            write!(f, "; transpose {t}")?;
        }
        if let Some(i) = self.obstruction {
            let s = &self.summands[i];
            write!(f, "; summand {i} ({}) is infinite dimensional and not injective", s.summary)?;
            if let Some((v, e)) = &s.ext_witness {
                write!(f, ", Ext¹(S_{v}, -) has dimension {e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn cr_certificate(m: &Representation, tr: &Representation) -> MembershipCertificate {
    let _ = m;
    MembershipCertificate {
        verdict: tr.is_finite_dimensional(),
        side: Side::Cr,
        transpose: Some(tr.summary()),
        summands: Vec::new(),
        obstruction: None,
        criterion: "transpose is finite dimensional".into(),
    }
}

/// `M ∈ C_r` iff `Tr M` is finite dimensional.
pub fn in_cr(m: &Representation) -> Result<MembershipCertificate> {
    let td = transpose_data(m)?;
    Ok(cr_certificate(m, &td.transpose.module))
}

/// A decomposition with an injectivity flag per summand, and the resulting
/// `C_l` certificate.
#[derive(Clone, Debug)]
pub struct ClSplit {
    pub decomposition: Decomposition,
    pub injective: Vec<bool>,
    pub certificate: MembershipCertificate,
}

pub fn cl_split(m: &Representation, seed: u64) -> Result<ClSplit> {
    let q = m.quiver().clone();
    let decomposition = decompose(m, seed)?;
    let mut injective = Vec::new();
    let mut summands = Vec::new();
    let mut obstruction = None;
    for (i, s) in decomposition.summands.iter().enumerate() {
        let witness = injectivity_obstruction(&s.module, seed.wrapping_add(i as u64))?;
        let fd = s.module.is_finite_dimensional();
        if !fd && witness.is_some() && obstruction.is_none() {
            obstruction = Some(i);
        }
        injective.push(witness.is_none());
        summands.push(SummandEvidence {
            summary: s.module.summary(),
            finite_dimensional: fd,
            injective: witness.is_none(),
            ext_witness: witness.map(|(v, e)| (q.vertex_name(v), e)),
        });
    }
    Ok(ClSplit {
        decomposition,
        injective,
        certificate: MembershipCertificate {
            verdict: obstruction.is_none(),
            side: Side::Cl,
            transpose: None,
            summands,
            obstruction,
            criterion: "windowed criterion: injective iff Ext¹(S_a, -) = 0 on the window extended by one step"
                .into(),
        },
    })
}

/// `M ∈ C_l` iff every indecomposable summand is finite dimensional or
/// injective.
pub fn in_cl(m: &Representation, seed: u64) -> Result<MembershipCertificate> {
    Ok(cl_split(m, seed)?.certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{catalog, Vertex};
    use std::sync::Arc;

    #[test]
    fn right_infinite_p2_not_in_cl() {
        let q = Arc::new(catalog::right_infinite_a());
        let p2 = Representation::projective(q.clone(), &[Vertex::Core(1)], 0).unwrap();
        let c = in_cl(&p2, 0).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.obstruction, Some(0));
        assert_eq!(c.summands[0].ext_witness.as_ref().unwrap().0, "1");
        assert!(in_cr(&p2).unwrap().verdict);
    }

    #[test]
    fn star_simple_not_in_cr() {
        let q = Arc::new(catalog::two_inward_star());
        let a1 = q.vertex("a[1]").unwrap();
        let s = Representation::simple(q.clone(), a1).unwrap();
        let c = in_cr(&s).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.transpose.as_ref().unwrap().stable_rays.iter().map(|r| r.1).sum::<usize>(), 1);
    }
}
