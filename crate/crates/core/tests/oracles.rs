//! Independent re-derivations: kets typed in from the source constructions,
//! plain Gaussian elimination instead of the SVD null space, and closed-form
//! probabilities.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opsdisc::cert::{constraint_pairs, opm_space};
use opsdisc::commands::theorem4_protocol;
use opsdisc::family::{family_eq10, family_eq11, family_eq2, family_eq3, FamilyParams};
use opsdisc::linalg::{self, CVec};
use opsdisc::measurement::{apply, projective_split, theorem4_measurements};
use opsdisc::protocol::simulate;
use opsdisc::states::StateSet;

fn ket(amps: &[f64]) -> CVec {
    CVec::from_iterator(amps.len(), amps.iter().map(|&x| Complex64::new(x, 0.0)))
}

fn same_ray(u: &CVec, v: &CVec) -> bool {
    let (u, v) = (u.normalize(), v.normalize());
    (u.dotc(&v).norm() - 1.0).abs() < 1e-12
}

fn check_against(set: &StateSet, typed: &[Vec<CVec>]) {
    assert_eq!(set.len(), typed.len());
    for (j, locals) in typed.iter().enumerate() {
        for (p, v) in locals.iter().enumerate() {
            assert!(
                same_ray(set.local(p, j), v),
                "state {} party {}",
                j + 1,
                p + 1
            );
        }
    }
}

#[test]
fn tripartite_sets_match_their_definitions() {
    let s2 = 2f64.sqrt();
    check_against(
        &family_eq10(),
        &[
            vec![ket(&[1., 0., 0.]), ket(&[1., 0., 0.]), ket(&[1., s2, 0.])],
            vec![ket(&[1., 1., -1.]), ket(&[0., 1., 0.]), ket(&[1., 1., 0.])],
            vec![ket(&[1., 0., 1.]), ket(&[0., 1., 0.]), ket(&[1., 0., 0.])],
            vec![ket(&[0., 1., 0.]), ket(&[1., 1., 0.]), ket(&[1., -1., 0.])],
            vec![ket(&[0., 1., 1.]), ket(&[1., -1., 0.]), ket(&[0., 1., 0.])],
        ],
    );
    check_against(
        &family_eq11(),
        &[
            vec![ket(&[1., 0., 0.]), ket(&[1., 0., 0.]), ket(&[1., 0., 0.])],
            vec![ket(&[1., 1., -1.]), ket(&[0., 1., 0.]), ket(&[1., 1., 0.])],
            vec![ket(&[1., 0., 1.]), ket(&[0., 1., 0.]), ket(&[1., 0., 1.])],
            vec![ket(&[0., 1., 0.]), ket(&[1., 1., 0.]), ket(&[1., -1., 0.])],
            vec![ket(&[0., 1., 1.]), ket(&[1., -1., 0.]), ket(&[1., 0., -1.])],
        ],
    );
}

#[test]
fn simple_double_cycle_matches_its_definition() {
    // a = 2, b = 3, a' = 1, b' = -1: c = -1/2, e = 6, c' = -1, e' = -1
    let set = family_eq3(
        linalg::re(2.0),
        linalg::re(3.0),
        linalg::re(1.0),
        linalg::re(-1.0),
    )
    .unwrap();
    check_against(
        &set,
        &[
            vec![ket(&[1., 0., 0.]), ket(&[1., 0., 1.])],
            vec![ket(&[1., 0., 2.]), ket(&[0., 1., 0.])],
            vec![ket(&[1., 3., -0.5]), ket(&[1., -1., -1.])],
            vec![ket(&[0., 1., 6.]), ket(&[1., 0., 0.])],
            vec![ket(&[0., 1., 0.]), ket(&[0., 1., -1.])],
        ],
    );
}

/// Dimension of the real solution space of `rows · x = 0` by Gaussian
/// elimination with partial pivoting.
fn nullity(mut rows: Vec<Vec<f64>>, vars: usize) -> usize {
    let mut rank = 0;
    for col in 0..vars {
        let Some(pivot) =
            (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
        else {
            break;
        };
        if rows[pivot][col].abs() < 1e-9 {
            continue;
        }
        rows.swap(rank, pivot);
        let lead = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                let f = row[col] / lead[col];
                for (x, l) in row.iter_mut().zip(&lead) {
                    *x -= f * l;
                }
            }
        }
        rank += 1;
    }
    vars - rank
}

/// Real equations in the 2·dim² entries of a complex matrix `H`: Hermiticity
/// and `⟨x|H|y⟩ = 0` for every constraint pair.
fn opm_equations(dim: usize, constraints: &[(CVec, CVec)]) -> Vec<Vec<f64>> {
    let var = |r: usize, c: usize, im: bool| 2 * (r * dim + c) + im as usize;
    let n = 2 * dim * dim;
    let mut rows = Vec::new();
    for r in 0..dim {
        for c in r..dim {
            let mut re = vec![0.0; n];
            re[var(r, c, false)] += 1.0;
            re[var(c, r, false)] -= 1.0;
            let mut im = vec![0.0; n];
            im[var(r, c, true)] += 1.0;
            im[var(c, r, true)] += 1.0;
            rows.push(re);
            rows.push(im);
        }
    }
    for (x, y) in constraints {
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        for r in 0..dim {
            for c in 0..dim {
                let w = x[r].conj() * y[c];
                re[var(r, c, false)] += w.re;
                re[var(r, c, true)] -= w.im;
                im[var(r, c, false)] += w.im;
                im[var(r, c, true)] += w.re;
            }
        }
        rows.push(re);
        rows.push(im);
    }
    rows
}

fn oracle_dimension(set: &StateSet, party: usize) -> usize {
    let constraints: Vec<(CVec, CVec)> = constraint_pairs(set, party)
        .into_iter()
        .map(|(j, k)| (set.local(party, j).clone(), set.local(party, k).clone()))
        .collect();
    let dim = set.dims()[party];
    nullity(opm_equations(dim, &constraints), 2 * dim * dim)
}

#[test]
fn elimination_agrees_on_the_simple_double_cycle() {
    let set = family_eq3(
        linalg::re(1.0),
        linalg::re(1.0),
        linalg::re(1.0),
        linalg::re(1.0),
    )
    .unwrap();
    // 18 real unknowns for a 3x3 complex matrix; only multiples of I survive
    assert_eq!(opm_equations(3, &[]).len(), 12);
    assert_eq!(oracle_dimension(&set, 0), 1);
    assert_eq!(oracle_dimension(&set, 1), 1);
    for party in 0..2 {
        assert_eq!(opm_space(&set, party).unwrap().basis.len(), 1);
    }
    let wide = set.embed_party(0, 4).unwrap();
    assert_eq!(oracle_dimension(&wide, 0), 8);
    assert_eq!(opm_space(&wide, 0).unwrap().basis.len(), 8);
}

#[test]
fn elimination_agrees_on_generic_inputs() {
    for set in [family_eq10(), family_eq11()] {
        for party in 0..3 {
            assert_eq!(
                oracle_dimension(&set, party),
                opm_space(&set, party).unwrap().basis.len(),
                "party {}",
                party + 1
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mut z = || {
            Complex64::from_polar(
                rng.random_range(-1.0f64..1.0).exp(),
                rng.random_range(0.0..6.3),
            )
        };
        let p = FamilyParams::simple(z(), z(), z(), z());
        let set = family_eq2(&p).unwrap();
        assert_eq!(oracle_dimension(&set, 0), 1);
        assert_eq!(oracle_dimension(&set, 1), 1);
    }
}

#[test]
fn first_party_split_on_the_tripartite_set() {
    // |<1|x>|^2 for x = |0>, (0+1-2)/√3, (0+2)/√2, |1>, (1+2)/√2
    let expected = [0.0, 1.0 / 3.0, 0.0, 1.0, 0.5];
    let m = projective_split(0, &linalg::basis(3, 1)).unwrap();
    let p = apply(&family_eq11(), &m, 0).unwrap().probabilities;
    for (a, b) in p.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12, "{p:?}");
    }
}

/// Probability of perfect identification from the closed forms, equal priors.
fn closed_form(p: &FamilyParams, case: u8) -> f64 {
    let (b, c, d, g) = (p.b, p.c(), p.d, p.g);
    let e = p.a * (b.conj() + d.conj() * g);
    match case {
        1 => d.norm_sqr() / (5.0 * (1.0 + b.norm_sqr() + c.norm_sqr() + d.norm_sqr())),
        2 => g.norm_sqr() / (5.0 * (1.0 + e.norm_sqr() + g.norm_sqr())),
        _ => {
            let db = d.norm_sqr() + b.norm_sqr();
            (d.norm_sqr() / db
                + (d - g * b).norm_sqr() / (db * (1.0 + e.norm_sqr() + g.norm_sqr())))
                / 5.0
        }
    }
}

#[test]
fn gadget_protocols_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for draw in 0..30 {
        let mut z = || {
            Complex64::from_polar(
                rng.random_range(-1.0f64..1.0).exp(),
                rng.random_range(0.0..6.3),
            )
        };
        let zero = Complex64::new(0.0, 0.0);
        let (a, b, d, g) = (z(), z(), z(), z());
        for case in 1..=3u8 {
            let (d, g) = match case {
                1 => (d, zero),
                2 => (zero, g),
                _ => (d, g),
            };
            let mut p = FamilyParams::simple(a, b, linalg::re(1.0), linalg::re(1.0));
            p.d = d;
            p.g = g;
            let set = family_eq2(&p).unwrap();
            let protocol = theorem4_protocol(&set, &p, case).unwrap();
            let r = simulate(&protocol, &set, None).unwrap();
            let f = closed_form(&p, case);
            assert!(
                (r.overall - f).abs() < 1e-12,
                "draw {draw} case {case}: {} vs {f}",
                r.overall
            );
            assert!(r.misidentified_mass() == 0.0);
            assert!(theorem4_measurements(&p, case).is_ok());
        }
    }
}
