//! Auslander-Reiten theory on `rep⁺(Q)`: the translates, membership in
//! `C_r` and `C_l`, the pairings, almost split conflations and knitting.

mod almost_split;
mod duality;
mod knit;
mod membership;
mod pairing;

pub use duality::{
    dual_conflation, matlis_dual, matlis_dual_morphism, tau, tau_minus, tau_minus_on_morphism, tau_on_morphism,
    transpose, transpose_on_morphism, TransposeData,
};
pub use membership::{cl_split, in_cl, in_cr, ClSplit, MembershipCertificate, Side, SummandEvidence};
pub use pairing::{
    ar_pairing, epsilon, eta, pair, stable_inverse, stably_equal, triangle_identities, ArPairing, Stability,
    TriangleReport,
};
pub use almost_split::{
    almost_split_ending_at, almost_split_starting_at, verify_almost_split, AlmostSplitCertificate, Condition, Failure,
    VerificationReport,
};
pub use knit::{confirm_counterexample, knit_ar_quiver, ArArrow, ArQuiver, ArVertex, KnitCaps, Mesh};
