use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use flatband_core::flatband::flat_bands;
use flatband_core::floquet::{build_floquet, dispersion, floquet_matrix};
use flatband_core::graph::{canonicalize_edge, PeriodicGraph, ShiftAssignment};
use flatband_core::labeling::Labeling;
use flatband_core::laurent::{Exponent, LaurentMatrix, LaurentPoly, WeightVector};
use flatband_core::polytope::{hull_vertices, minkowski_sum_vertices, sigma_support_check, symbolic_generic_support};
use flatband_core::resultant::resultant;
use flatband_core::sampling::{random_graph, random_labeling, trial_rng, GraphBounds};
use flatband_core::univariate::UniPoly;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn graph_strategy() -> impl Strategy<Value = PeriodicGraph> {
    any::<u64>().prop_map(|s| random_graph(&mut trial_rng(s, 0), GraphBounds::default()))
}

fn labeled_strategy() -> impl Strategy<Value = (PeriodicGraph, Labeling)> {
    any::<u64>().prop_map(|s| {
        let mut rng = trial_rng(s, 1);
        let g = random_graph(&mut rng, GraphBounds::default());
        let lab = random_labeling(&g, &mut rng);
        (g, lab)
    })
}

fn poly_strategy(dim: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), 0u32..=2, -5i64..=5), 0..=max_terms).prop_map(
        move |terms| LaurentPoly::from_terms(dim, terms.into_iter().map(|(z, b, c)| (Exponent::new(z, b), rat(c)))),
    )
}

fn nonzero_poly(dim: usize) -> impl Strategy<Value = LaurentPoly> {
    poly_strategy(dim, 5).prop_filter("nonzero", |f| !f.is_zero())
}

fn matrix_strategy() -> impl Strategy<Value = LaurentMatrix> {
    (1usize..=5, 0usize..=2).prop_flat_map(|(n, d)| {
        prop::collection::vec(poly_strategy(d, 2), n * n).prop_map(move |entries| {
            let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
            LaurentMatrix::from_rows(rows).unwrap()
        })
    })
}

fn unipoly_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-4i64..=4, 2..=4)
        .prop_map(|c| UniPoly::from_i64(&c))
        .prop_filter("degree >= 1", |f| f.degree().unwrap_or(0) >= 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_orientation_free(i in 0usize..4, j in 0usize..4, a in prop::collection::vec(-3i64..=3, 2)) {
        let minus: Vec<i64> = a.iter().map(|x| -x).collect();
        match canonicalize_edge(i, j, &a) {
            Ok(c) => {
                prop_assert_eq!(canonicalize_edge(j, i, &minus).unwrap(), c.clone());
                prop_assert_eq!(canonicalize_edge(c.from, c.to, &c.offset).unwrap(), c);
            }
            Err(_) => prop_assert!(i == j && a.iter().all(|&x| x == 0)),
        }
    }

    #[test]
    fn support_is_symmetric(g in graph_strategy()) {
        let all: Vec<usize> = (0..g.num_orbits()).collect();
        let s = g.support_of_subset(&all).unwrap();
        for a in &s {
            let minus: Vec<i64> = a.iter().map(|x| -x).collect();
            prop_assert!(s.contains(&minus));
        }
    }

    #[test]
    fn support0_shifts_are_valid_and_shift_invariant(g in graph_strategy(), c in prop::collection::vec(-3i64..=3, 2)) {
        for (component, shifts) in g.support0_components() {
            let moved = g.apply_shifts(&shifts);
            let support = moved.support_of_subset(&component).unwrap();
            prop_assert!(support.iter().all(|a| a.iter().all(|&x| x == 0)));
            let translated: ShiftAssignment = shifts
                .iter()
                .map(|(&u, a)| (u, a.iter().zip(&c).map(|(x, y)| x + y).collect()))
                .collect();
            let moved = g.apply_shifts(&translated);
            let support = moved.support_of_subset(&component).unwrap();
            prop_assert!(support.iter().all(|a| a.iter().all(|&x| x == 0)));
        }
    }

    #[test]
    fn support0_answers_ignore_orbit_order(g in graph_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.num_orbits()).collect();
        perm.shuffle(&mut trial_rng(seed, 0));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(g.find_support0_component().is_some(), h.find_support0_component().is_some());
        prop_assert_eq!(g.has_support0_fundamental_domain(), h.has_support0_fundamental_domain());
    }

    #[test]
    fn components_are_closed(g in graph_strategy()) {
        let blocks = g.components();
        let covered: usize = blocks.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, g.num_orbits());
        for class in g.edges() {
            let block = blocks.iter().position(|b| b.contains(&class.from)).unwrap();
            prop_assert!(blocks[block].contains(&class.to));
        }
    }

    #[test]
    fn ring_axioms(f in poly_strategy(2, 4), g in poly_strategy(2, 4), h in poly_strategy(2, 4)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn determinant_paths_agree(m in matrix_strategy()) {
        prop_assert_eq!(m.determinant_leibniz(), m.determinant_bareiss());
    }

    #[test]
    fn minkowski_and_facial_product(f in nonzero_poly(2), g in nonzero_poly(2), w in prop::collection::vec(-3i64..=3, 3)) {
        let fg = &f * &g;
        prop_assert_eq!(hull_vertices(&fg.support()), minkowski_sum_vertices(&f.support(), &g.support()));
        let w = WeightVector(w);
        let lhs = fg.facial_polynomial(&w).unwrap();
        let rhs = &f.facial_polynomial(&w).unwrap() * &g.facial_polynomial(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_division_inverts_multiplication(f in poly_strategy(2, 5), root in -5i64..=5) {
        let lam = LaurentPoly::lambda(2);
        let linear = &lam - &LaurentPoly::constant(2, rat(root));
        let product = &linear * &f;
        prop_assert!(product.substitute_lambda(&rat(root)).is_zero());
        prop_assert_eq!(product.divide_by_linear(&rat(root)).unwrap(), f);
    }

    #[test]
    fn floquet_symmetry_and_leading_term((g, lab) in labeled_strategy()) {
        let f = build_floquet(&g, &lab).unwrap();
        prop_assert!(f.matrix().is_transpose_inverse_symmetric());
        let n = g.num_orbits() as u32;
        let top = f.dispersion().coefficient_in_lambda(n);
        let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
        prop_assert_eq!(top, LaurentPoly::constant(g.dimension(), sign));
        prop_assert_eq!(f.dispersion().lambda_degree(), Some(n));
    }

    #[test]
    fn dispersion_is_affine_in_each_potential((g, lab) in labeled_strategy(), i in 0usize..4) {
        let i = i % g.num_orbits();
        let at = |v: i64| dispersion(&g, &lab.with_potential(i, rat(v))).unwrap();
        let (d0, d1, d5) = (at(0), at(1), at(5));
        let slope = &d1 - &d0;
        prop_assert_eq!(d5, &d0 + &slope.scalar_mul(&rat(5)));
    }

    #[test]
    fn flat_bands_are_exact((g, lab) in labeled_strategy()) {
        let d = dispersion(&g, &lab).unwrap();
        let report = flat_bands(&d).unwrap();
        prop_assert!(report.count() <= g.num_orbits());
        prop_assert!(report.verified.iter().all(|&v| v));
        for (root, _) in &report.rational_roots {
            prop_assert!(d.divide_by_linear(root).is_ok());
        }
        let p0 = d.lambda_polys_by_monomial().remove(&vec![0; g.dimension()]).unwrap();
        prop_assert!(p0.div_exact(&report.flatband_poly).is_some());
    }

    #[test]
    fn all_bands_flat_iff_vertical_segment((g, lab) in labeled_strategy()) {
        let report = flat_bands(&dispersion(&g, &lab).unwrap()).unwrap();
        let vertical = flatband_core::polytope::is_vertical_segment(&symbolic_generic_support(&g));
        prop_assert_eq!(report.count() == g.num_orbits(), vertical);
        prop_assert_eq!(vertical, g.has_support0_fundamental_domain());
    }

    #[test]
    fn permutation_supports_stay_inside((g, lab) in labeled_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut sigma: Vec<usize> = (0..g.num_orbits()).collect();
        sigma.shuffle(&mut trial_rng(seed, 2));
        let generic = symbolic_generic_support(&g);
        prop_assert!(sigma_support_check(&g, &lab, &sigma, &generic).unwrap());
    }

    #[test]
    fn resultant_detects_common_factors(f in unipoly_strategy(), g in unipoly_strategy()) {
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(r.is_zero(), !f.gcd(&g).is_constant());
    }

    #[test]
    fn resultant_is_multiplicative(f in unipoly_strategy(), h in unipoly_strategy(), g in unipoly_strategy()) {
        let lhs = resultant(&(&f * &h), &g).unwrap();
        let rhs = resultant(&f, &g).unwrap() * resultant(&h, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_reconstructs(roots in prop::collection::vec(-6i64..=6, 0..=3), extra in prop::collection::vec(-3i64..=3, 0..=4)) {
        let mut f = UniPoly::from_i64(&extra);
        if f.is_zero() {
            f = UniPoly::one();
        }
        for r in &roots {
            f = &f * &UniPoly::linear(&rat(*r));
        }
        let factors = f.factor();
        let mut product = UniPoly::constant(f.leading());
        for (p, m) in &factors {
            for _ in 0..*m {
                product = &product * p;
            }
        }
        prop_assert_eq!(product, f.clone());
        let found: BTreeSet<BigRational> = f.rational_roots().into_iter().map(|(r, _)| r).collect();
        for r in roots {
            prop_assert!(found.contains(&rat(r)));
        }
    }
}

#[test]
fn unit_leading_coefficient_on_edgeless() {
    let g = PeriodicGraph::edgeless(1, 3).unwrap();
    let m = floquet_matrix(&g, &Labeling::unit(&g)).unwrap();
    let d = m.minus_lambda_identity().determinant();
    assert_eq!(d.coefficient_in_lambda(3), LaurentPoly::constant(1, -BigRational::one()));
}
