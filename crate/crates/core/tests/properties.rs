mod common;

use chromlag::chromatic::{brute_force_moduli_count, chromatic_polynomial, moduli_count_poly, IntPoly};
use chromlag::exactalg::mpoly::{MPoly, Monomial};
use chromlag::exactalg::rational::{q, qf, Q};
use chromlag::exactalg::snf::{smith_normal_form, IntMatrix};
use chromlag::exactalg::{rat_expand, series_solve, RatFunc};
use chromlag::homlattice::{h1_presentation, presets as phases, validate_phase_framing, EdgeClass};
use chromlag::periods::{build_chart, cross_ratio};
use chromlag::ribbon::{presets as graphs, Multigraph};
use chromlag::superpot::{bps_invert, multiple_cover, pipeline, Coeffs, PipelineOptions};
use chromlag::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chromatic_polynomial_counts_colorings(
        n in 1usize..7,
        raw in prop::collection::vec((0usize..7, 0usize..7), 0..10),
    ) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let g = Multigraph::new(n, edges).unwrap();
        let p = chromatic_polynomial(&g);
        for k in 0..5u64 {
            prop_assert_eq!(p.eval(&BigInt::from(k)), BigInt::from(common::count_colorings(&g, k)));
        }
    }

    #[test]
    fn smith_normal_form_is_a_valid_decomposition(
        rows in 1usize..5,
        cols in 1usize..6,
        data in prop::collection::vec(-6i64..7, 30),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| data[i * cols..(i + 1) * cols].to_vec()).collect();
        let a = IntMatrix::from_rows(&m);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        let f = &s.invariant_factors;
        prop_assert_eq!(f.len(), a.rank());
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn bps_inversion_roundtrip(
        g in 1usize..4,
        vals in prop::collection::vec(-5i64..6, 40),
    ) {
        let order = 8;
        let exps = chromlag::superpot::exponents_up_to(g, order / 2);
        let mut a = Coeffs::new();
        for (d, v) in exps.into_iter().zip(vals) {
            if v != 0 {
                a.insert(d, q(v));
            }
        }
        let k = multiple_cover(&a, g, order);
        let (back, integral) = bps_invert(&k, g, order);
        prop_assert!(integral);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn phase_validation_accepts_exactly_symmetric_framings(m in prop::array::uniform4(-3i64..4)) {
        let pres = h1_presentation(&graphs::prism()).unwrap();
        let pf = phases::prism_m(vec![vec![m[0], m[1]], vec![m[2], m[3]]]);
        let res = validate_phase_framing(&pres, &pf);
        if m[1] == m[2] {
            prop_assert!(res.is_ok());
        } else {
            prop_assert_eq!(res.unwrap_err(), Error::FramingNotSymmetric);
        }
    }
}

#[test]
fn point_counts_match_enumeration() {
    let mut r = rng(11);
    let mut graphs_under_test = vec![graphs::tetrahedron(), graphs::prism(), graphs::cube()];
    for _ in 0..4 {
        graphs_under_test.push(common::random_blowup(&mut r, 2));
    }
    for g in &graphs_under_test {
        let poly = moduli_count_poly(g).unwrap();
        for qq in [2u64, 3, 4] {
            let (count, rem) = common::moduli_count_oracle(g, qq);
            assert_eq!(rem, 0);
            assert_eq!(poly.eval(&BigInt::from(qq)), BigInt::from(count));
            assert_eq!(brute_force_moduli_count(g, qq).unwrap(), BigInt::from(count));
        }
    }
}

#[test]
fn blow_up_multiplies_point_count_by_pants() {
    let mut r = rng(12);
    for _ in 0..10 {
        let steps = r.gen_range(0..4);
        let g = common::random_blowup(&mut r, steps);
        let v = r.gen_range(0..g.num_vertices());
        let before = moduli_count_poly(&g).unwrap();
        let after = moduli_count_poly(&g.blow_up(v).unwrap()).unwrap();
        assert_eq!(after, before.mul(&IntPoly::linear(2)));
    }
}

#[test]
fn lattice_invariants_on_random_graphs() {
    let mut r = rng(13);
    for _ in 0..10 {
        let steps = r.gen_range(0..5);
        let g = common::random_blowup(&mut r, steps);
        let pres = h1_presentation(&g).unwrap();
        let a = &pres.intersection_form;
        assert!(a.is_antisymmetric());
        assert_eq!(a.rank(), 2 * g.genus());
        assert_eq!(pres.rank(), 2 * g.genus());
        assert!(pres.induced_form.det().abs().is_one());
    }
}

fn random_small_ratfunc(r: &mut ChaCha8Rng, nvars: usize) -> RatFunc {
    let mut poly = |constant_one: bool| {
        let mut p = MPoly::constant(nvars, if constant_one { Q::one() } else { q(r.gen_range(-3..4)) });
        for _ in 0..3 {
            let exps: Vec<u32> = (0..nvars).map(|_| r.gen_range(0..3)).collect();
            if exps.iter().all(|&e| e == 0) {
                continue;
            }
            p = &p + &MPoly::monomial(Monomial::from_exps(exps), q(r.gen_range(-3..4)));
        }
        p
    };
    let num = poly(false);
    let den = poly(true);
    RatFunc::new(num, den).unwrap()
}

#[test]
fn series_expansion_is_multiplicative() {
    let mut r = rng(14);
    for _ in 0..25 {
        let f = random_small_ratfunc(&mut r, 2);
        let g = random_small_ratfunc(&mut r, 2);
        let lhs = rat_expand(&(&f * &g), 6).unwrap();
        let rhs = rat_expand(&f, 6).unwrap().try_mul(&rat_expand(&g, 6).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn series_solve_geometric() {
    // U V + V - 1 = 0 has V = 1 / (1 + U).
    let u = MPoly::var(2, 0);
    let v = MPoly::var(2, 1);
    let eq = &(&(&u * &v) + &v) - &MPoly::one(2);
    let sol = series_solve(&[eq], 1, &[q(1)], 3).unwrap();
    for n in 0..=3u32 {
        assert_eq!(sol[0].coeff_of(&[n]), q(if n % 2 == 0 { 1 } else { -1 }));
    }
}

#[test]
fn cross_ratios_are_mobius_invariant() {
    let mut r = rng(15);
    for g in [graphs::tetrahedron(), graphs::prism(), graphs::cube()] {
        let chart = build_chart(&g, None).unwrap();
        for _ in 0..10 {
            let m = loop {
                let m: [[Q; 2]; 2] = [
                    [
                        qf(r.gen_range(-5..6), r.gen_range(1..4)),
                        qf(r.gen_range(-5..6), r.gen_range(1..4)),
                    ],
                    [
                        qf(r.gen_range(-5..6), r.gen_range(1..4)),
                        qf(r.gen_range(-5..6), r.gen_range(1..4)),
                    ],
                ];
                if !(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
                    break m;
                }
            };
            let moved: Vec<_> = chart.face_coords.iter().map(|p| p.transform(&m)).collect();
            for e in 0..g.num_edges() {
                assert_eq!(cross_ratio(&g, e, &moved).unwrap(), chart.edge_values[e]);
            }
        }
    }
}

#[test]
fn edge_monomials_factor_through_homology() {
    let mut r = rng(16);
    for g in [graphs::tetrahedron(), graphs::prism(), graphs::cube()] {
        let chart = build_chart(&g, None).unwrap();
        let faces = chromlag::homlattice::face_relations(&g);
        for _ in 0..10 {
            let c = EdgeClass((0..g.num_edges()).map(|_| r.gen_range(-2..3)).collect());
            let f = &faces[r.gen_range(0..faces.len())];
            let shifted = c.add(&f.scale(r.gen_range(-2..3)));
            assert_eq!(chart.monomial(&shifted), chart.monomial(&c));
        }
    }
}

#[test]
fn order_two_twist_flips_k_by_degree_parity() {
    let pf = phases::tetra_p(1);
    let base = PipelineOptions {
        order: 7,
        ..Default::default()
    };
    let a = pipeline(&graphs::tetrahedron(), &pf, &base).unwrap();
    let flipped = PipelineOptions {
        signs_override: Some(vec![-pf.effective_signs()[0]]),
        ..base
    };
    let b = pipeline(&graphs::tetrahedron(), &pf, &flipped).unwrap();
    for n in 1..=7u32 {
        let sign = if n % 2 == 0 { q(1) } else { q(-1) };
        assert_eq!(b.k_at(&[n]), sign * a.k_at(&[n]));
    }
}

#[test]
fn pants_factor_after_blow_up_of_theta() {
    let g = graphs::theta().blow_up(0).unwrap();
    assert!(g.is_isomorphic(&graphs::tetrahedron()));
    let r = pipeline(&graphs::tetrahedron(), &phases::tetra_p(0), &PipelineOptions::default()).unwrap();
    for n in 1..=10u32 {
        assert_eq!(r.k_at(&[n]), qf(1, (n * n) as i64));
    }
}
