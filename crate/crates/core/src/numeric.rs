//! Floating-point band functions on the torus.
//!
//! `L(z)` is evaluated at `z = exp(i theta)` on a uniform grid. A Hermitian
//! `H = A + iB` is diagonalized through the real symmetric matrix
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled; cyclic Jacobi handles the symmetric problem.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{LabelingError, NumericError};
use crate::graph::PeriodicGraph;
use crate::labeling::Labeling;
use crate::univariate::UniPoly;

pub type CMatrix = Vec<Vec<Complex64>>;

fn to_f64(x: &num_rational::BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `L(exp(i theta))` with complex entries.
pub fn numeric_floquet(graph: &PeriodicGraph, labeling: &Labeling, theta: &[f64]) -> Result<CMatrix, NumericError> {
    let n = graph.num_orbits();
    if labeling.potentials().len() != n {
        return Err(LabelingError::PotentialCount { expected: n, got: labeling.potentials().len() }.into());
    }
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, v) in labeling.potentials().iter().enumerate() {
        m[i][i] += to_f64(v);
    }
    for class in graph.edges() {
        let w = to_f64(labeling.weight(class).ok_or_else(|| LabelingError::MissingWeight(class.clone()))?);
        let phase: f64 = class.offset.iter().zip(theta).map(|(&a, t)| a as f64 * t).sum();
        let forward = Complex64::from_polar(w, phase);
        let backward = forward.conj();
        m[class.from][class.to] += forward;
        m[class.to][class.from] += backward;
    }
    Ok(m)
}

/// `max |M_ij - conj(M_ji)|`
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

pub fn symmetrize(m: &CMatrix) -> CMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| (m[i][j] + m[j][i].conj()) * 0.5).collect()).collect()
}

/// Cyclic Jacobi on a real symmetric matrix. Returns eigenvalues and the
/// matrix whose columns are the eigenvectors.
pub fn jacobi_symmetric(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Eigenvalues (ascending) and unit eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = m.len();
    let mut s = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = (m[i][j].re, m[i][j].im);
            s[i][j] = re;
            s[i + n][j + n] = re;
            s[i][j + n] = -im;
            s[i + n][j] = im;
        }
    }
    let (values, vectors) = jacobi_symmetric(s);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for pair in order.chunks(2) {
        let k = pair[0];
        eigenvalues.push((values[pair[0]] + values[pair[1]]) / 2.0);
        let x: Vec<Complex64> = (0..n).map(|i| Complex64::new(vectors[i][k], vectors[i + n][k])).collect();
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        eigenvectors.push(x.into_iter().map(|c| c / norm).collect());
    }
    (eigenvalues, eigenvectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandSample {
    pub resolution: usize,
    /// Grid angles, last coordinate varying fastest.
    pub thetas: Vec<Vec<f64>>,
    /// `bands[k]`: sorted eigenvalues at grid point `k`.
    pub bands: Vec<Vec<f64>>,
    /// `flatness[j] = max_z lambda_j - min_z lambda_j`.
    pub flatness: Vec<f64>,
    /// Largest Hermiticity defect seen before symmetrization.
    pub hermiticity_defect: f64,
}

pub fn torus_grid(dimension: usize, resolution: usize) -> Vec<Vec<f64>> {
    let step = 2.0 * PI / resolution as f64;
    let mut grid = vec![Vec::new()];
    for _ in 0..dimension {
        grid = grid
            .into_iter()
            .flat_map(|prefix: Vec<f64>| {
                (0..resolution).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k as f64 * step);
                    p
                })
            })
            .collect();
    }
    grid
}

pub fn sample_bands(graph: &PeriodicGraph, labeling: &Labeling, resolution: usize) -> Result<BandSample, NumericError> {
    if resolution < 2 {
        return Err(NumericError::Resolution(resolution));
    }
    let thetas = torus_grid(graph.dimension(), resolution);
    let mut bands = Vec::with_capacity(thetas.len());
    let mut defect = 0.0f64;
    for theta in &thetas {
        let m = numeric_floquet(graph, labeling, theta)?;
        defect = defect.max(hermiticity_defect(&m));
        bands.push(hermitian_eigenvalues(&symmetrize(&m)));
    }
    let n = graph.num_orbits();
    let flatness = (0..n)
        .map(|j| {
            let (lo, hi) = bands
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), b| (lo.min(b[j]), hi.max(b[j])));
            hi - lo
        })
        .collect();
    Ok(BandSample { resolution, thetas, bands, flatness, hermiticity_defect: defect })
}

/// 0-based indices `j` with `flatness[j] < tol`.
pub fn numeric_flat_flags(sample: &BandSample, tol: f64) -> Result<Vec<usize>, NumericError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(NumericError::Tolerance);
    }
    Ok(sample.flatness.iter().enumerate().filter(|(_, &f)| f < tol).map(|(j, _)| j).collect())
}

/// How well a constant level is present in every sampled spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelTrack {
    pub level: f64,
    /// `max_z min_j |lambda_j(z) - level|`
    pub deviation: f64,
    /// Spread of the eigenvalue nearest to `level` across the grid. Unlike
    /// the sorted-band flatness this is unaffected by other bands crossing
    /// the flat level.
    pub flatness: f64,
}

pub fn track_level(sample: &BandSample, level: f64) -> LevelTrack {
    let mut deviation = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for b in &sample.bands {
        let nearest = b
            .iter()
            .copied()
            .min_by(|x, y| (x - level).abs().total_cmp(&(y - level).abs()))
            .unwrap_or(f64::NAN);
        deviation = deviation.max((nearest - level).abs());
        lo = lo.min(nearest);
        hi = hi.max(nearest);
    }
    LevelTrack { level, deviation, flatness: hi - lo }
}

/// Real roots of `f`, refined by Newton's method on its square-free part
/// from the given starting points, deduplicated and sorted.
pub fn refine_real_roots(f: &UniPoly, guesses: &[f64]) -> Vec<f64> {
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let g = f.gcd(&f.derivative());
    let sf = f.div_exact(&g).unwrap_or_else(|| f.clone()).monic();
    let dsf = sf.derivative();
    let mut roots: Vec<f64> = Vec::new();
    for &x0 in guesses {
        let mut x = x0;
        for _ in 0..100 {
            let d = dsf.eval_f64(x);
            if d == 0.0 {
                break;
            }
            let step = sf.eval_f64(x) / d;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        let scale: f64 = sf.coeffs().iter().map(|c| to_f64(c).abs()).sum::<f64>().max(1.0) * x.abs().max(1.0).powi(deg as i32);
        if x.is_finite() && sf.eval_f64(x).abs() <= 1e-9 * scale && !roots.iter().any(|r| (r - x).abs() < 1e-7) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;

    #[test]
    fn lieb_at_gamma() {
        let g = PeriodicGraph::lieb();
        let m = numeric_floquet(&g, &Labeling::unit(&g), &[0.0, 0.0]).unwrap();
        let e = hermitian_eigenvalues(&m);
        let r = 2.0 * 2f64.sqrt();
        for (got, want) in e.iter().zip([-r, 0.0, r]) {
            assert!((got - want).abs() < 1e-10, "{e:?}");
        }
    }

    #[test]
    fn lieb_flat_middle_band() {
        let g = PeriodicGraph::lieb();
        let s = sample_bands(&g, &Labeling::unit(&g), 16).unwrap();
        assert_eq!(s.thetas.len(), 256);
        assert!(s.flatness[1] < 1e-9);
        assert_eq!(numeric_flat_flags(&s, 1e-8).unwrap(), vec![1]);
        assert!(s.hermiticity_defect < 1e-12);
        let t = track_level(&s, 0.0);
        assert!(t.deviation < 1e-9 && t.flatness < 1e-9);
    }

    #[test]
    fn edgeless_bands_are_flat() {
        let g = PeriodicGraph::edgeless(1, 2).unwrap();
        let lab = Labeling::from_vectors(&g, vec![rational(5), rational(7)], vec![]).unwrap();
        for r in [2, 5, 16] {
            let s = sample_bands(&g, &lab, r).unwrap();
            assert!(s.flatness.iter().all(|&f| f < 1e-12));
            assert_eq!(numeric_flat_flags(&s, 1e-8).unwrap(), vec![0, 1]);
        }
        assert_eq!(sample_bands(&g, &lab, 1), Err(NumericError::Resolution(1)));
        let s = sample_bands(&g, &lab, 2).unwrap();
        assert_eq!(numeric_flat_flags(&s, 0.0), Err(NumericError::Tolerance));
    }

    #[test]
    fn eigen_residuals() {
        let m: CMatrix = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -2.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.5, 2.0), Complex64::new(-3.0, 0.0), Complex64::new(1.5, 0.5)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(1.5, -0.5), Complex64::new(2.0, 0.0)],
        ];
        let (values, vectors) = hermitian_eigen(&m);
        for (lambda, x) in values.iter().zip(&vectors) {
            for i in 0..3 {
                let r: Complex64 = (0..3).map(|j| m[i][j] * x[j]).sum::<Complex64>() - x[i] * *lambda;
                assert!(r.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn newton_roots() {
        let f = &UniPoly::from_i64(&[-1, -1, 1]) * &UniPoly::from_i64(&[-1, -1, 1]);
        let roots = refine_real_roots(&f, &[-1.0, 0.0, 1.0, 2.0]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - (1.0 - phi)).abs() < 1e-12);
        assert!((roots[1] - phi).abs() < 1e-12);
    }
}
