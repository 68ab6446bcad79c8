use flatband_core::flatband::{flat_bands, generic_flat_band_decision, GenericVerdict};
use flatband_core::floquet::dispersion;
use flatband_core::numeric::{numeric_floquet, hermiticity_defect, hermitian_eigen, refine_real_roots, sample_bands, track_level};
use flatband_core::resultant::cut_edge_certificate;
use flatband_core::sampling::{random_corpus, random_moderate_labeling, random_tree_instance, trial_rng, GraphBounds};
use num_traits::{ToPrimitive, Zero};

#[test]
fn cut_edge_certificates_are_nonzero() {
    let mut rng = trial_rng(31, 0);
    for _ in 0..100 {
        let t = random_tree_instance(&mut rng, 2, 5);
        let value = cut_edge_certificate(&t.graph, &t.subset, &t.labeling, &t.point).unwrap();
        assert!(!value.is_zero(), "{:?}", t.graph);
    }
}

#[test]
fn exact_flat_bands_show_up_numerically() {
    let graphs = random_corpus(77, 50, GraphBounds::default());
    let mut checked = 0;
    for (k, g) in graphs.iter().enumerate() {
        let lab = random_moderate_labeling(g, &mut trial_rng(78, k as u64));
        let report = flat_bands(&dispersion(g, &lab).unwrap()).unwrap();
        let sample = sample_bands(g, &lab, 16).unwrap();
        assert!(sample.hermiticity_defect < 1e-12);
        let mut levels: Vec<f64> = report.rational_roots.iter().map(|(r, _)| r.to_f64().unwrap()).collect();
        for (f, _) in &report.irreducible_factors {
            let found = refine_real_roots(f, &sample.bands[0]);
            assert_eq!(found.len(), f.degree().unwrap());
            levels.extend(found);
        }
        for level in levels {
            let track = track_level(&sample, level);
            assert!(track.deviation < 1e-8 && track.flatness < 1e-8, "{g:?} {track:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn generic_bands_are_not_flat() {
    let graphs = random_corpus(77, 50, GraphBounds::default());
    for (k, g) in graphs.iter().enumerate() {
        if generic_flat_band_decision(g, 5, 1).unwrap().verdict != GenericVerdict::NoFlatBand {
            continue;
        }
        let lab = random_moderate_labeling(g, &mut trial_rng(79, k as u64));
        let sample = sample_bands(g, &lab, 16).unwrap();
        assert!(sample.flatness.iter().all(|&f| f >= 1e-3), "{g:?} {:?}", sample.flatness);
    }
}

#[test]
fn eigenpairs_have_small_residuals() {
    let graphs = random_corpus(5, 30, GraphBounds::default());
    for (k, g) in graphs.iter().enumerate() {
        let lab = random_moderate_labeling(g, &mut trial_rng(6, k as u64));
        let theta: Vec<f64> = (0..g.dimension()).map(|i| 0.3 + 1.1 * i as f64).collect();
        let m = numeric_floquet(g, &lab, &theta).unwrap();
        assert!(hermiticity_defect(&m) < 1e-12);
        let norm = m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let (values, vectors) = hermitian_eigen(&m);
        for (lambda, x) in values.iter().zip(&vectors) {
            let n = x.len();
            let residual = (0..n)
                .map(|i| ((0..n).map(|j| m[i][j] * x[j]).sum::<num_complex::Complex64>() - x[i] * *lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(residual <= 1e-8 * norm.max(1.0));
        }
    }
}
