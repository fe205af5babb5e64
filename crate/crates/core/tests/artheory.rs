mod common;

use std::sync::Arc;

use ar_duality::artheory::{
    almost_split_ending_at, almost_split_starting_at, ar_pairing, in_cl, in_cr, knit_ar_quiver, matlis_dual,
    tau, tau_minus, tau_on_morphism, transpose, verify_almost_split, Condition, KnitCaps,
};
use ar_duality::exactlin::ExactMatrix;
use ar_duality::quiver::{catalog, Quiver, Vertex};
use ar_duality::rep::random::{random_finitely_presented, random_indecomposable, small_scalar};
use ar_duality::rep::{
    conflation_of_class, decompose, ext1, ext_class_in, hom, is_injective_windowed, is_isomorphic,
    minimal_presentation, parse_representation, pushout, stable_hom_inj, stable_hom_proj, Conflation, RepMorphism,
    Representation,
};
use common::is_projective;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a2() -> Arc<Quiver> {
    Arc::new(catalog::a_n(2))
}

fn a3() -> Arc<Quiver> {
    Arc::new(catalog::a_n(3))
}

fn rep(q: &Arc<Quiver>, text: &str) -> Representation {
    parse_representation(q, text).unwrap()
}

fn core(v: usize) -> Vertex {
    Vertex::Core(v)
}

fn morphism(src: &Representation, dst: &Representation, maps: &[Vec<Vec<i64>>]) -> RepMorphism {
    let f = src.field();
    let ms = maps
        .iter()
        .enumerate()
        .map(|(v, rows)| match rows.is_empty() {
            true => ExactMatrix::zeros(f, dst.dim_at(core(v)), src.dim_at(core(v))),
            false => ExactMatrix::from_i64_rows(f, src.dim_at(core(v)), rows),
        })
        .collect();
    RepMorphism::new(src.clone(), dst.clone(), 0, ms).unwrap()
}

#[test]
fn matlis_dual_of_opposite_projective_is_injective() {
    let q = a2();
    let qop = Arc::new(q.opposite());
    // over the opposite quiver 2 -> 1, the projective at 2 has dims (1,1)
    let p = Representation::projective(qop, &[core(1)], 0).unwrap();
    let d = matlis_dual(&p).unwrap();
    assert!(d.quiver().as_ref() == q.as_ref());
    assert_eq!(d.core_dims(), vec![1, 1]);
    assert!(is_injective_windowed(&d, 0).unwrap());
}

#[test]
fn transpose_kills_projectives_and_has_none() {
    for q in [a3(), Arc::new(catalog::d4()), Arc::new(catalog::right_infinite_a())] {
        for v in 0..q.num_core() {
            let p = Representation::projective(q.clone(), &[core(v)], 0).unwrap();
            assert!(transpose(&p).unwrap().is_zero());
            assert!(tau(&p).unwrap().is_zero());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_finitely_presented(&q, 1, 3, &mut rng).unwrap();
            let t = transpose(&m).unwrap();
            if t.is_zero() {
                continue;
            }
            for s in decompose(&t, 0).unwrap().summands {
                assert!(!is_projective(&s.module));
            }
        }
    }
}

#[test]
fn translates_on_objects() {
    let q = a2();
    let s1 = Representation::simple(q.clone(), core(0)).unwrap();
    let p2 = Representation::projective(q.clone(), &[core(1)], 0).unwrap();
    assert!(is_isomorphic(&tau(&s1).unwrap(), &p2).unwrap());
    let q3 = a3();
    let y = rep(&q3, "rep explicit\ndim 1 = 1\ndim 2 = 1\nmap a = [[1]]\n");
    assert_eq!(tau(&y).unwrap().core_dims(), vec![0, 1, 1]);
}

#[test]
fn tau_requires_cr() {
    let q = Arc::new(catalog::two_inward_star());
    let s = Representation::simple(q.clone(), q.vertex("a[1]").unwrap()).unwrap();
    match tau(&s) {
        Err(ar_duality::Error::NotInCr(c)) => assert!(!c.verdict),
        other => panic!("expected NotInCr, got {other:?}"),
    }
    let q = Arc::new(catalog::right_infinite_a());
    let p2 = Representation::projective(q.clone(), &[core(1)], 0).unwrap();
    assert!(matches!(tau_minus(&p2, 0), Err(ar_duality::Error::NotInCl(_))));
}

#[test]
fn finite_quivers_have_everything_in_both_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [a3(), Arc::new(catalog::d4())] {
        for _ in 0..8 {
            let m = random_finitely_presented(&q, 0, 3, &mut rng).unwrap();
            assert!(in_cr(&m).unwrap().verdict);
            assert!(in_cl(&m, 0).unwrap().verdict);
        }
    }
}

#[test]
fn tau_on_a_nonzero_map_stays_nonzero() {
    let q = a3();
    let i2 = rep(&q, "rep explicit\ndim 1 = 1\ndim 2 = 1\nmap a = [[1]]\n");
    let s1 = Representation::simple(q.clone(), core(0)).unwrap();
    let f = morphism(&i2, &s1, &[vec![vec![1]], vec![], vec![]]);
    let tf = tau_on_morphism(&f).unwrap();
    assert_eq!(tf.source.core_dims(), vec![0, 1, 1]);
    assert_eq!(tf.target.core_dims(), vec![0, 1, 0]);
    let st = stable_hom_inj(&tf.source, &tf.target, 0).unwrap();
    assert!(!st.is_zero(&tf).unwrap());
}

#[test]
fn tau_kills_projectively_trivial_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for q in [a3(), Arc::new(catalog::d4())] {
        for _ in 0..6 {
            let m = random_finitely_presented(&q, 0, 2, &mut rng).unwrap();
            let n = random_finitely_presented(&q, 0, 2, &mut rng).unwrap();
            let cover = minimal_presentation(&n).unwrap().deflation(0).unwrap();
            for g in hom(&m, &cover.source).unwrap().basis {
                let f = cover.compose(&g).unwrap();
                let tf = tau_on_morphism(&f).unwrap();
                let st = stable_hom_inj(&tf.source, &tf.target, 0).unwrap();
                assert!(st.is_zero(&tf).unwrap());
            }
        }
    }
}

#[test]
fn small_almost_split_sequences() {
    let q = a2();
    let s1 = Representation::simple(q.clone(), core(0)).unwrap();
    let p1 = Representation::projective(q.clone(), &[core(0)], 0).unwrap();
    let p2 = Representation::projective(q.clone(), &[core(1)], 0).unwrap();
    let end = almost_split_ending_at(&s1, 0).unwrap();
    assert!(is_isomorphic(&end.delta.x, &p2).unwrap());
    assert!(is_isomorphic(&end.delta.e, &p1).unwrap());
    let start = almost_split_starting_at(&p2, 0).unwrap();
    assert!(is_isomorphic(&start.delta.y, &s1).unwrap());
    assert!(is_isomorphic(&start.delta.e, &p1).unwrap());
    assert!(matches!(almost_split_ending_at(&p1, 0), Err(ar_duality::Error::IsProjective)));
    assert!(matches!(almost_split_starting_at(&p1, 0), Err(ar_duality::Error::IsInjective)));

    let q = a3();
    let s3 = Representation::simple(q.clone(), core(2)).unwrap();
    let c = almost_split_starting_at(&s3, 0).unwrap();
    assert_eq!(c.delta.e.core_dims(), vec![0, 1, 1]);
    assert_eq!(c.delta.y.core_dims(), vec![0, 1, 0]);
}

#[test]
fn verifier_reports_a_witness() {
    let q = a3();
    let ar = knit_ar_quiver(&q, KnitCaps::default(), 0).unwrap();
    let p1 = Representation::projective(q.clone(), &[core(0)], 0).unwrap();
    let p3 = Representation::projective(q.clone(), &[core(2)], 0).unwrap();
    let i2 = rep(&q, "rep explicit\ndim 1 = 1\ndim 2 = 1\nmap a = [[1]]\n");
    let inc = morphism(&p3, &p1, &[vec![], vec![], vec![vec![1]]]);
    let proj = morphism(&p1, &i2, &[vec![vec![1]], vec![vec![1]], vec![]]);
    let delta = Conflation::new(inc, proj).unwrap();
    let r = verify_almost_split(&delta, &ar.modules(), 0).unwrap();
    let fail = r.failure.expect("not almost split");
    assert_eq!(fail.condition, Condition::RightAlmostSplit);
    let w = fail.witness.unwrap();
    assert_eq!(w.source.core_dims(), vec![0, 1, 0]);
    assert!(is_isomorphic(&w.target, &i2).unwrap());

    let s1 = Representation::simple(a2(), core(0)).unwrap();
    let cert = almost_split_ending_at(&s1, 0).unwrap();
    let probes = knit_ar_quiver(&a2(), KnitCaps::default(), 0).unwrap().modules();
    assert!(verify_almost_split(&cert.delta, &probes, 0).unwrap().passed());
}

#[test]
fn certificate_coherence() {
    for q in [a3(), Arc::new(catalog::d4())] {
        let ar = knit_ar_quiver(&q, KnitCaps::default(), 0).unwrap();
        for y in ar.modules().into_iter().filter(|m| !is_projective(m)) {
            let cert = almost_split_ending_at(&y, 0).unwrap();
            let f = q.field();
            assert_eq!(cert.gamma_value(&cert.coords).unwrap(), f.one());
            // pushing δ along a radical endomorphism of τY gives a split class
            let x = &cert.delta.x;
            let alg = hom(x, x).unwrap();
            for e in &alg.basis {
                if e.is_isomorphism() {
                    continue;
                }
                let pushed = pushout(&cert.delta, e).unwrap();
                let c = ext_class_in(&pushed, &cert.ext).unwrap();
                assert!(f.is_zero(&cert.gamma_value(&c).unwrap()));
            }
            // pair(id, δ) = γ(δ)
            let p = ar_pairing(&y, x, 0).unwrap();
            let v = p.pair(&RepMorphism::identity(&p.tau_m), &cert.coords).unwrap();
            assert_eq!(v, f.one());
        }
    }
}

#[test]
fn pairing_examples_and_naturality() {
    let q = a2();
    let s1 = Representation::simple(q.clone(), core(0)).unwrap();
    let p2 = Representation::projective(q.clone(), &[core(1)], 0).unwrap();
    let p = ar_pairing(&s1, &s1, 0).unwrap();
    assert_eq!((p.matrix.rows(), p.matrix.cols()), (0, 0));
    assert!(p.is_nondegenerate());
    let p = ar_pairing(&s1, &p2, 0).unwrap();
    assert_eq!((p.stable.dim(), p.ext.dim()), (1, 1));
    assert!(p.is_nondegenerate());

    // ⟨f h, μ⟩_L' = ⟨f, h.μ⟩_L for h: L' -> L
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = Arc::new(catalog::d4());
    let f = q.field();
    let mut checked = 0;
    for _ in 0..60 {
        let Some(m) = random_indecomposable(&q, &[1, 1, 1, 2], 0, &mut rng).unwrap() else {
            continue;
        };
        if is_projective(&m) {
            continue;
        }
        let l = random_finitely_presented(&q, 0, 2, &mut rng).unwrap();
        let l2 = random_finitely_presented(&q, 0, 2, &mut rng).unwrap();
        let pl = ar_pairing(&m, &l, 0).unwrap();
        let pl2 = ar_pairing(&m, &l2, 0).unwrap();
        assert!(pl.is_nondegenerate() && pl2.is_nondegenerate());
        let hs = hom(&l2, &l).unwrap();
        let fs = hom(&l, &pl.tau_m).unwrap();
        if hs.dim() == 0 || fs.dim() == 0 || pl2.ext.dim() == 0 {
            continue;
        }
        let pick = |n: usize, rng: &mut ChaCha8Rng| (0..n).map(|_| small_scalar(f, rng)).collect::<Vec<_>>();
        let h = hs.element(&pick(hs.dim(), &mut rng)).unwrap();
        let g = fs.element(&pick(fs.dim(), &mut rng)).unwrap();
        let mu = pick(pl2.ext.dim(), &mut rng);
        let lhs = pl2.pair(&g.compose(&h).unwrap(), &mu).unwrap();
        let pushed = pushout(&conflation_of_class(&pl2.ext, &mu).unwrap(), &h).unwrap();
        let rhs = pl.pair(&g, &ext_class_in(&pushed, &pl.ext).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        checked += 1;
    }
    assert!(checked >= 5, "only {checked} naturality checks");
}

#[test]
fn dual_ar_formula_and_tau_of_tau_minus() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in [a3(), Arc::new(catalog::d4()), Arc::new(catalog::left_infinite_a())] {
        let depth = if q.is_finite() { 0 } else { 1 };
        let caps = vec![2; q.window_size(depth)];
        for _ in 0..12 {
            let Some(x) = random_indecomposable(&q, &caps, depth, &mut rng).unwrap() else {
                continue;
            };
            let l = random_finitely_presented(&q, depth, 2, &mut rng).unwrap();
            let tm = tau_minus(&x, 0).unwrap();
            assert_eq!(stable_hom_proj(&tm, &l).unwrap().dim(), ext1(&l, &x).unwrap().dim());
            if !is_injective_windowed(&x, 0).unwrap() {
                assert!(is_isomorphic(&tau(&tm).unwrap(), &x).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_has_no_injective_summands(seed in any::<u64>()) {
        let q = Arc::new(catalog::d4());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_finitely_presented(&q, 0, 3, &mut rng).unwrap();
        let t = tau(&m).unwrap();
        if !t.is_zero() {
            for s in decompose(&t, seed).unwrap().summands {
                prop_assert!(!is_injective_windowed(&s.module, seed).unwrap());
            }
        }
        let tm = tau_minus(&m, seed).unwrap();
        if !tm.is_zero() {
            for s in decompose(&tm, seed).unwrap().summands {
                prop_assert!(!is_projective(&s.module));
            }
        }
    }

    #[test]
    fn double_dual_is_identity(seed in any::<u64>()) {
        let q = a3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_finitely_presented(&q, 0, 3, &mut rng).unwrap();
        prop_assert!(is_isomorphic(&matlis_dual(&matlis_dual(&m).unwrap()).unwrap(), &m).unwrap());
    }
}
