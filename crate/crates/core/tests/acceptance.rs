//! Acceptance suite. Each test prints one line `criterion N: PASS|FAIL ...`
//! (run with `--nocapture` to see them) and fails on FAIL. All comparisons
//! are exact; time limits are wall-clock on a debug build.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use ar_duality::artheory::{
    almost_split_ending_at, ar_pairing, confirm_counterexample, in_cr, knit_ar_quiver, matlis_dual, tau,
    tau_minus, transpose, triangle_identities, verify_almost_split, KnitCaps,
};
use ar_duality::quiver::{catalog, classify_duality, Counterexample, DualityClass, Quiver, Vertex};
use ar_duality::rep::random::{random_finitely_presented, random_indecomposable, random_representation, small_scalar};
use ar_duality::rep::{
    decompose, ext1, ext1_dim_ringel, ext_class_in, hom, is_isomorphic, pushout, stable_hom_inj, conflation_of_class,
    Representation,
};
use ar_duality::Error;
use common::{brick_dims_01, coxeter_tau_dims, is_projective, tits_form};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, detail: &str, elapsed: Duration, limit: Option<Duration>) {
    let within = limit.map_or(true, |l| elapsed <= l);
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
    println!(
        "criterion {n}: {} {detail}; {:.2} s{limit_text}",
        if ok && within { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(within, "criterion {n} exceeded its time limit");
}

fn finite_quivers() -> Vec<(&'static str, Arc<Quiver>)> {
    vec![
        ("A2", Arc::new(catalog::a_n(2))),
        ("A3", Arc::new(catalog::a_n(3))),
        ("D4", Arc::new(catalog::d4())),
    ]
}

fn all_quivers() -> Vec<(&'static str, Arc<Quiver>)> {
    let mut v = finite_quivers();
    v.push(("right-infinite A", Arc::new(catalog::right_infinite_a())));
    v.push(("left-infinite A", Arc::new(catalog::left_infinite_a())));
    v.push(("doubly infinite A", Arc::new(catalog::double_infinite_a())));
    v.push(("two-inward star", Arc::new(catalog::two_inward_star())));
    v
}

fn knitted(q: &Arc<Quiver>) -> Vec<Representation> {
    let ar = knit_ar_quiver(q, KnitCaps::default(), 0).unwrap();
    assert!(!ar.truncated);
    ar.modules()
}

fn non_projective_indecomposables(q: &Arc<Quiver>) -> Vec<Representation> {
    knitted(q).into_iter().filter(|m| !is_projective(m)).collect()
}

#[test]
fn criterion_1_ar_formula() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    let mut quivers = finite_quivers();
    quivers.push(("right-infinite A", Arc::new(catalog::right_infinite_a())));
    for (name, q) in &quivers {
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < 55 {
            attempts += 1;
            assert!(attempts < 2000, "too few samples in C_r over {name}");
            let m = random_finitely_presented(q, 1, 2, &mut rng).unwrap();
            if !in_cr(&m).unwrap().verdict {
                continue;
            }
            let l = random_finitely_presented(q, 1, 2, &mut rng).unwrap();
            let tm = tau(&m).unwrap();
            let lhs = stable_hom_inj(&l, &tm, 0).unwrap().dim();
            let rhs = ext1(&m, &l).unwrap().dim();
            // second, independent count when both ends are finite dimensional
            let ringel = (m.is_finite_dimensional() && l.is_finite_dimensional())
                .then(|| ext1_dim_ringel(&m, &l).unwrap());
            if lhs != rhs || ringel.is_some_and(|r| r != rhs) {
                mismatches.push(format!("{name}: {lhs} vs {rhs} vs {ringel:?}"));
            }
            accepted += 1;
        }
        pairs += accepted;
    }
    report(
        1,
        mismatches.is_empty() && pairs >= 200,
        &format!("{pairs} pairs, {} mismatches {:?}", mismatches.len(), mismatches),
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_2_almost_split_correctness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = Vec::new();
    for (name, q) in finite_quivers() {
        let ar = knit_ar_quiver(&q, KnitCaps::default(), 0).unwrap();
        let probes = ar.modules();
        let mut count = 0;
        for v in &ar.vertices {
            let y = &v.module;
            if is_projective(y) {
                continue;
            }
            count += 1;
            let cert = almost_split_ending_at(y, 0).unwrap();
            let rep = verify_almost_split(&cert.delta, &probes, 0).unwrap();
            if !rep.passed() {
                failures.push(format!("{name} {:?}: {:?}", v.dims, rep.failure.map(|f| f.condition)));
            }
            // τ oracle: Coxeter transformation on dimension vectors
            let expect = coxeter_tau_dims(&q, &v.dims);
            let got: Vec<i64> = cert.delta.x.dim_vector().iter().map(|&d| d as i64).collect();
            if got != expect {
                failures.push(format!("{name} {:?}: τ dims {got:?}, Coxeter oracle {expect:?}", v.dims));
            }
            // middle term against the knitted mesh
            let mut middle: Vec<Vec<usize>> = decompose(&cert.delta.e, 0)
                .unwrap()
                .summands
                .iter()
                .map(|s| s.module.dim_vector())
                .collect();
            middle.sort();
            let mesh = ar.mesh_ending_at(v.id).expect("mesh ends at every non-projective");
            let mut knit_middle: Vec<Vec<usize>> = mesh
                .middle
                .iter()
                .flat_map(|&(j, k)| std::iter::repeat(ar.vertices[j].dims.clone()).take(k))
                .collect();
            knit_middle.sort();
            if middle != knit_middle {
                failures.push(format!("{name} {:?}: middle {middle:?} vs mesh {knit_middle:?}", v.dims));
            }
            if name == "A3" && v.dims == [1, 1, 0] && middle != vec![vec![0, 1, 0], vec![1, 1, 1]] {
                failures.push(format!("A3 (1,1,0): middle {middle:?}"));
            }
        }
        cases.push(format!("{name}: {count}"));
    }
    let expected = ["A2: 1", "A3: 3", "D4: 8"];
    let counts_ok = cases.iter().map(String::as_str).eq(expected);
    report(
        2,
        failures.is_empty() && counts_ok,
        &format!("cases {cases:?}; failures {failures:?}"),
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_3_quasi_inverse_and_triangles() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut n = 0;
    for (name, q) in finite_quivers().into_iter().skip(1) {
        for y in non_projective_indecomposables(&q) {
            n += 1;
            let back = tau_minus(&tau(&y).unwrap(), 0).unwrap();
            if !is_isomorphic(&back, &y).unwrap() {
                failures.push(format!("{name} {:?}: τ⁻τY not isomorphic to Y", y.dim_vector()));
            }
            let t = triangle_identities(&y, 0).unwrap();
            if !t.all_hold() {
                failures.push(format!("{name} {:?}: {t:?}", y.dim_vector()));
            }
        }
    }
    report(
        3,
        failures.is_empty() && n == 11,
        &format!("{n} modules; failures {failures:?}"),
        start.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_4_classification_table() {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, q) in all_quivers() {
        if name == "A2" {
            continue;
        }
        let expect_has = matches!(name, "A3" | "D4" | "left-infinite A");
        let class = classify_duality(&q).unwrap();
        ok &= class.has_duality() == expect_has;
        match &class {
            DualityClass::HasARDuality => rows.push(format!("{name}: Has")),
            DualityClass::LacksARDuality(w) => {
                let cert = confirm_counterexample(&q, &w.counterexample, 0).unwrap();
                ok &= !cert.verdict;
                match (name, &w.counterexample) {
                    ("right-infinite A", Counterexample::ProjectiveNotInCl(v)) => {
                        ok &= q.vertex_name(*v) == "2";
                    }
                    ("two-inward star", Counterexample::SimpleNotInCr(_)) => {
                        let a1 = q.vertex("a[1]").unwrap();
                        let s = Representation::simple(q.clone(), a1).unwrap();
                        ok &= !in_cr(&s).unwrap().verdict;
                    }
                    ("doubly infinite A", _) => {}
                    _ => ok = false,
                }
                rows.push(format!("{name}: Lacks, counterexample confirmed = {}", !cert.verdict));
            }
        }
    }
    report(4, ok, &rows.join("; "), start.elapsed(), None);
}

#[test]
fn criterion_5_membership_vs_existence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (name, q) in all_quivers() {
        let depth = if q.is_finite() { 0 } else { 2 };
        let max = vec![2; q.window_size(depth)];
        let (mut samples, mut attempts, mut outside) = (0, 0, 0);
        while samples < 20 {
            attempts += 1;
            assert!(attempts < 2000, "too few non-projective samples over {name}");
            let Some(y) = random_indecomposable(&q, &max, depth, &mut rng).unwrap() else {
                continue;
            };
            if is_projective(&y) {
                continue;
            }
            samples += 1;
            let verdict = in_cr(&y).unwrap().verdict;
            let built = match almost_split_ending_at(&y, 0) {
                Ok(cert) => {
                    let probes: Vec<Representation> = (0..6)
                        .filter_map(|_| random_indecomposable(&q, &max, depth, &mut rng).unwrap())
                        .chain(std::iter::once(y.clone()))
                        .collect();
                    verify_almost_split(&cert.delta, &probes, 0).unwrap().passed()
                }
                Err(Error::NotInCr(_)) => false,
                Err(e) => panic!("{name}: unexpected {e}"),
            };
            if !verdict {
                outside += 1;
            }
            if verdict != built {
                failures.push(format!("{name} {:?}: in C_r {verdict}, built {built}", y.summary()));
            }
        }
        summary.push(format!("{name}: {samples} samples, {outside} outside C_r"));
    }
    report(
        5,
        failures.is_empty(),
        &format!("{}; failures {failures:?}", summary.join(", ")),
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_6_knitting_counts() {
    let start = Instant::now();
    let mut ok = true;
    let mut rows = Vec::new();
    for ((name, q), (cap, expected)) in finite_quivers()
        .into_iter()
        .zip([(vec![1, 1], 3), (vec![1, 1, 1], 6), (vec![1, 1, 1, 2], 12)])
    {
        let ar = knit_ar_quiver(&q, KnitCaps::default(), 0).unwrap();
        let mut knit: Vec<Vec<usize>> = ar.vertices.iter().map(|v| v.dims.clone()).collect();
        knit.sort();
        let oracle = brick_dims_01(&q, &cap);
        let roots = oracle.iter().all(|d| tits_form(&q, d) == 1);
        ok &= !ar.truncated && knit.len() == expected && knit == oracle && roots;
        rows.push(format!("{name}: knitted {} oracle {}", knit.len(), oracle.len()));
    }
    report(6, ok, &rows.join("; "), start.elapsed(), Some(Duration::from_secs(120)));
}

/// Dimension caps of 2 with the outermost ray slots forced to 0, so that the
/// outward tails vanish and the sample is finite dimensional.
fn finite_caps(q: &Quiver, depth: u32) -> Vec<usize> {
    q.window_vertices(depth)
        .iter()
        .map(|v| match v {
            Vertex::Ray { depth: k, .. } if *k == depth => 0,
            _ => 2,
        })
        .collect()
}

fn strip_projectives(m: &Representation) -> Option<Representation> {
    let parts: Vec<Representation> = decompose(m, 0)
        .unwrap()
        .summands
        .into_iter()
        .map(|s| s.module)
        .filter(|s| !is_projective(s))
        .collect();
    (!parts.is_empty()).then(|| Representation::direct_sum(&parts).unwrap())
}

#[test]
fn criterion_7_duality_involutions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let quivers = all_quivers();
    let (mut dd, mut trtr, mut failures) = (0, 0, Vec::new());
    while dd < 50 {
        let (name, q) = &quivers[rng.gen_range(0..quivers.len())];
        let depth = if q.is_finite() { 0 } else { 2 };
        let m = random_representation(q, &finite_caps(q, depth), depth, &mut rng);
        let back = matlis_dual(&matlis_dual(&m).unwrap()).unwrap();
        if !is_isomorphic(&back, &m).unwrap() {
            failures.push(format!("DD over {name}"));
        }
        dd += 1;
    }
    while trtr < 50 {
        let (name, q) = &quivers[rng.gen_range(0..quivers.len())];
        let m = random_finitely_presented(q, 1, 3, &mut rng).unwrap();
        let Some(m) = strip_projectives(&m) else {
            continue;
        };
        let back = transpose(&transpose(&m).unwrap()).unwrap();
        if !is_isomorphic(&back, &m).unwrap() {
            failures.push(format!("TrTr over {name}: {} vs {}", back.summary(), m.summary()));
        }
        trtr += 1;
    }
    report(
        7,
        failures.is_empty(),
        &format!("{dd} DD checks, {trtr} TrTr checks; failures {failures:?}"),
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_8_pairing_coherence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let (mut checks, mut matrices) = (0, 0);
    let ys: Vec<(Arc<Quiver>, Representation)> = finite_quivers()
        .into_iter()
        .flat_map(|(_, q)| non_projective_indecomposables(&q).into_iter().map(move |y| (q.clone(), y)))
        .collect();
    while checks < 50 {
        let (q, y) = &ys[rng.gen_range(0..ys.len())];
        let cert = almost_split_ending_at(y, 0).unwrap();
        let gamma = cert.gamma.as_ref().expect("γ is available for the sequence ending at Y");
        let l = random_finitely_presented(q, 0, 3, &mut rng).unwrap();
        let data = ar_pairing(y, &l, 0).unwrap();
        matrices += 1;
        if !data.is_nondegenerate() {
            failures.push(format!("degenerate pairing at {:?}, {:?}", y.dim_vector(), l.dim_vector()));
        }
        let homs = hom(&l, &data.tau_m).unwrap();
        if homs.dim() == 0 || data.ext.dim() == 0 {
            continue;
        }
        let field = q.field();
        let fc: Vec<_> = (0..homs.dim()).map(|_| small_scalar(field, &mut rng)).collect();
        let mu: Vec<_> = (0..data.ext.dim()).map(|_| small_scalar(field, &mut rng)).collect();
        let f = homs.element(&fc).unwrap();
        let lhs = data.pair(&f, &mu).unwrap();
        let pushed = pushout(&conflation_of_class(&data.ext, &mu).unwrap(), &f).unwrap();
        let coords = ext_class_in(&pushed, &cert.ext).unwrap();
        let rhs = gamma
            .iter()
            .zip(&coords)
            .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
        if lhs != rhs {
            failures.push(format!("{:?} vs {:?}", field.format(&lhs), field.format(&rhs)));
        }
        checks += 1;
    }
    report(
        8,
        failures.is_empty(),
        &format!("{checks} pairs, {matrices} pairing matrices; failures {failures:?}"),
        start.elapsed(),
        None,
    );
}
