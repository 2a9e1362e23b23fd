use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use opsdisc::cert::certify_indistinguishable;
use opsdisc::family::{family_eq2, FamilyParams};
use opsdisc::generate::{generate_from_graph, random_graph_with_counts};
use opsdisc::graph::{
    canonical_form, classify, compute_graph, pattern_holds, relation_vector, OrthoGraph,
};
use opsdisc::linalg::{self, CMat, CVec};
use opsdisc::measurement::{
    apply, complete_local_discrimination, pair_split, preserves_all, span_split, Measurement,
};
use opsdisc::protocol::simulate;
use opsdisc::states::{local_rank, product_inner, validate, ProductState, StateSet};
use opsdisc::synthesis::{synthesize, Options};

fn cplx() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn ket(dim: usize) -> impl Strategy<Value = CVec> {
    prop::collection::vec(cplx(), dim)
        .prop_filter("nonzero", |v| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
        .prop_map(CVec::from_vec)
}

fn kets(dim: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<CVec>> {
    prop::collection::vec(ket(dim), count)
}

/// Unitary from the QR factor of a complex Gaussian-ish matrix.
fn unitary(dim: usize) -> impl Strategy<Value = CMat> {
    prop::collection::vec(cplx(), dim * dim)
        .prop_map(move |v| DMatrix::from_vec(dim, dim, v).qr().q())
        .prop_filter("full rank", move |q| {
            (q.adjoint() * q - linalg::identity(dim)).norm() < 1e-9
        })
}

fn nonzero() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r.exp(), t))
}

fn optional() -> impl Strategy<Value = Complex64> {
    prop_oneof![Just(Complex64::new(0.0, 0.0)), nonzero()]
}

fn family_params() -> impl Strategy<Value = FamilyParams> {
    (
        (nonzero(), nonzero(), optional(), optional(), optional()),
        (nonzero(), nonzero(), optional(), optional(), optional()),
    )
        .prop_map(|((a, b, d, g, h), (a2, b2, d2, g2, h2))| FamilyParams {
            a,
            b,
            d,
            g,
            h,
            a2,
            b2,
            d2,
            g2,
            h2,
        })
        .prop_filter("valid", |p| p.check().is_ok())
}

/// A generated set on `n` states over two parties, at the smallest
/// realizable dimension from 3 up.
fn generated(n: usize) -> impl Strategy<Value = StateSet> {
    let total = n * (n - 1) / 2;
    (0..=total, any::<u64>()).prop_filter_map("realizable", move |(c0, seed)| {
        let g = random_graph_with_counts(n, &[c0, total - c0], seed).ok()?;
        (3..=5).find_map(|d| generate_from_graph(&g, Some(&[d, d]), seed, 1e-9).ok())
    })
}

fn relabel() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (
        Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
        Just(vec![0usize, 1]).prop_shuffle(),
    )
}

fn valid_povm(m: &Measurement) -> bool {
    m.completeness_residual() <= 1e-10 && m.psd_residual() <= 1e-10
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_is_conjugate_symmetric(u in ket(4), v in ket(4)) {
        let a = linalg::inner(&u, &v).unwrap();
        let b = linalg::inner(&v, &u).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn complement_is_orthogonal_and_fills_the_space(vs in kets(5, 1..4)) {
        let rank = linalg::rank_of(&vs, 1e-9).unwrap();
        let comp = linalg::orthonormal_complement(&vs, 5, 1e-9).unwrap();
        prop_assert_eq!(comp.len(), 5 - rank);
        for w in &comp {
            prop_assert!((w.norm() - 1.0).abs() < 1e-12);
            for v in &vs {
                prop_assert!(w.dotc(v).norm() <= 1e-9 * v.norm());
            }
        }
    }

    #[test]
    fn rank_is_unitarily_invariant(vs in kets(4, 1..6), u in unitary(4)) {
        let moved: Vec<CVec> = vs.iter().map(|v| &u * v).collect();
        prop_assert_eq!(linalg::rank_of(&vs, 1e-9).unwrap(), linalg::rank_of(&moved, 1e-9).unwrap());
    }

    #[test]
    fn solution_space_satisfies_its_constraints(vs in kets(4, 2..6), picks in prop::collection::vec((0usize..6, 0usize..6), 1..5)) {
        let constraints: Vec<(CVec, CVec)> = picks
            .iter()
            .map(|&(i, j)| (vs[i % vs.len()].clone(), vs[j % vs.len()].clone()))
            .collect();
        let basis = linalg::hermitian_solution_space(&constraints, 4, 1e-9).unwrap();
        for b in &basis {
            prop_assert!(linalg::hermitian_residual(b) <= 1e-10);
            for (x, y) in &constraints {
                prop_assert!(linalg::sandwich(x, b, y).norm() <= 1e-8 * x.norm() * y.norm());
            }
        }
        // without constraints the whole 16-dimensional space survives
        prop_assert!(basis.len() <= 16);
    }

    #[test]
    fn product_inner_is_conjugate_symmetric(a in ket(3), b in ket(2), c in ket(3), d in ket(2)) {
        let p = ProductState::new(vec![a, b]).unwrap();
        let q = ProductState::new(vec![c, d]).unwrap();
        let x = product_inner(&p, &q).unwrap();
        let y = product_inner(&q, &p).unwrap();
        prop_assert!((x - y.conj()).norm() <= 1e-12);
    }

    #[test]
    fn every_family_member_validates(p in family_params()) {
        let set = family_eq2(&p).unwrap().with_tolerance(1e-12);
        let report = validate(&set);
        prop_assert!(report.orthogonal, "{:?}", report.non_orthogonal_pairs);
        prop_assert!(report.unique_party_per_pair);
    }

    #[test]
    fn generated_sets_realize_their_graph(n in 3usize..=5, seed in any::<u64>(), split in 0usize..=10) {
        let total = n * (n - 1) / 2;
        let c0 = split.min(total);
        let g = random_graph_with_counts(n, &[c0, total - c0], seed).unwrap();
        let set = generate_from_graph(&g, None, seed, 1e-9).unwrap();
        prop_assert_eq!(compute_graph(&set).unwrap(), g);
    }

    #[test]
    fn relation_vector_and_key_survive_relabeling(set in generated(5), (sp, pp) in relabel()) {
        let g = compute_graph(&set).unwrap();
        let h = g.relabeled(&sp, &pp);
        let (rg, rh) = (relation_vector(&g), relation_vector(&h));
        prop_assert_eq!(&rg.canonical, &rh.canonical);
        let permuted: Vec<usize> = pp.iter().map(|&q| rg.counts[q]).collect();
        let inverse_ok = permuted == rh.counts || {
            let mut back = vec![0; 2];
            for (i, &q) in pp.iter().enumerate() {
                back[q] = rh.counts[i];
            }
            back == rg.counts
        };
        prop_assert!(inverse_ok);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn classified_pattern_holds(set in generated(5)) {
        let g = compute_graph(&set).unwrap();
        let case = classify(&g).unwrap();
        prop_assert!(pattern_holds(&g, &case.pattern));
        let case = classify(&g.relabeled(&[4, 3, 2, 1, 0], &[1, 0])).unwrap();
        prop_assert!(pattern_holds(&g.relabeled(&[4, 3, 2, 1, 0], &[1, 0]), &case.pattern));
    }

    #[test]
    fn constructed_measurements_are_valid_povms(set in generated(5), party in 0usize..2, alpha in ket(3)) {
        let dim = set.dims()[party];
        let m = complete_local_discrimination(&set.subset(&[0]), party).unwrap();
        prop_assert!(valid_povm(&m));
        let locals = set.locals(party);
        let m = span_split(party, &locals[..2], 1e-9).unwrap();
        prop_assert!(valid_povm(&m));
        let mut a = CVec::zeros(dim);
        a.rows_mut(0, 3).copy_from(&alpha);
        let m = opsdisc::measurement::projective_split(party, &a).unwrap();
        prop_assert!(valid_povm(&m));
    }

    #[test]
    fn apply_conserves_probability_and_transports_gram(set in generated(4), party in 0usize..2, seed in any::<u64>()) {
        let dim = set.dims()[party];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = {
            use rand::Rng;
            let v = CVec::from_fn(dim, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            linalg::projector(&v).unwrap().scale(0.7)
        };
        let rest = linalg::identity(dim) - &e;
        let m = Measurement::from_elements(party, &[e.clone(), rest], vec!["E".into(), "R".into()], 1e-9).unwrap();
        let mut totals = vec![0.0; set.len()];
        for o in 0..m.outcomes() {
            let upd = apply(&set, &m, o).unwrap();
            for (t, p) in totals.iter_mut().zip(&upd.probabilities) {
                *t += p;
            }
            let elem = &m.elements()[o];
            for ((x, &j), (y, &k)) in upd.kept.iter().enumerate().tuple_combinations() {
                let direct = linalg::sandwich(set.local(party, j), elem, set.local(party, k))
                    / (upd.probabilities[j] * upd.probabilities[k]).sqrt();
                let post = upd.post_set.local(party, x).dotc(upd.post_set.local(party, y));
                prop_assert!((direct - post).norm() <= 1e-9, "{} vs {}", direct, post);
            }
        }
        for t in totals {
            prop_assert!((t - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn pair_split_keeps_orthogonality_outside_the_pair(basis_seed in unitary(5), x in ket(3), y in ket(2), z in ket(2)) {
        let cols: Vec<CVec> = (0..5).map(|i| basis_seed.column(i).into_owned()).collect();
        let (alpha, beta) = (&cols[0], &cols[1]);
        // u, v orthogonal to alpha and beta, and to each other
        let u: CVec = &cols[2] * x[0] + &cols[3] * x[1];
        let v: CVec = &cols[4] * x[2];
        let w1 = linalg::normalize(&y).unwrap();
        let w2 = linalg::normalize(&z).unwrap();
        prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
        let set = StateSet::new(
            vec![5, 2],
            vec![
                ProductState::new(vec![u, w1]).unwrap(),
                ProductState::new(vec![v, w2]).unwrap(),
            ],
        )
        .unwrap();
        let m = pair_split(0, alpha, beta, 1e-9).unwrap();
        prop_assert!(preserves_all(&set, &m).unwrap());
    }

    #[test]
    fn synthesized_protocols_conserve_probability(set in generated(4)) {
        let v = synthesize(&set, &Options::default()).unwrap();
        if let Some(p) = v.protocol() {
            let report = simulate(p, &set, None).unwrap();
            for t in report.conservation() {
                prop_assert!((t - 1.0).abs() <= 1e-10);
            }
            let mut ok = true;
            p.for_each_measurement(&mut |m| ok &= valid_povm(m));
            prop_assert!(ok);
        }
    }

    #[test]
    fn verdicts_survive_relabeling(set in generated(5), (sp, pp) in relabel()) {
        let base = synthesize(&set, &Options::default()).unwrap();
        let moved = set.permute_states(&sp).permute_parties(&pp);
        let v = synthesize(&moved, &Options::default()).unwrap();
        prop_assert_eq!(base.name(), v.name());
        if base.name() == "Perfect" {
            prop_assert!(certify_indistinguishable(&set).unwrap().is_none());
        }
        for (party, &from) in pp.iter().enumerate() {
            prop_assert_eq!(local_rank(&set, from).unwrap(), local_rank(&moved, party).unwrap());
        }
    }
}

#[test]
fn canonical_key_is_stable_over_many_relabelings() {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_graph_with_counts(5, &[6, 4], 3).unwrap();
    let key = canonical_form(&g);
    for _ in 0..100 {
        let mut sp: Vec<usize> = (0..5).collect();
        sp.shuffle(&mut rng);
        let mut pp = vec![0, 1];
        pp.shuffle(&mut rng);
        assert_eq!(canonical_form(&g.relabeled(&sp, &pp)), key);
    }
    // different color-degree multisets give different keys
    let other: OrthoGraph = random_graph_with_counts(5, &[7, 3], 3).unwrap();
    assert_ne!(canonical_form(&other), key);
}

#[test]
fn probabilistic_values_survive_relabeling() {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for name in ["theorem4-1", "theorem4-2", "theorem4-3"] {
        let set = opsdisc::commands::demo_set(name).unwrap();
        let base = synthesize(&set, &Options::default()).unwrap();
        let mut expected = base.report().unwrap().success.clone();
        expected.sort_by(f64::total_cmp);
        for _ in 0..10 {
            let mut sp: Vec<usize> = (0..5).collect();
            sp.shuffle(&mut rng);
            let moved = set.permute_states(&sp).permute_parties(&[1, 0]);
            let v = synthesize(&moved, &Options::default()).unwrap();
            assert_eq!(v.name(), "Probabilistic");
            let mut got = v.report().unwrap().success.clone();
            got.sort_by(f64::total_cmp);
            for (a, b) in got.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-9, "{name}: {got:?} vs {expected:?}");
            }
        }
    }
}
