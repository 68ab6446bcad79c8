//! Sylvester resultants and the cut-edge certificate.
//!
//! For `f = a_0 + .. + a_s x^s` and `g = b_0 + .. + b_t x^t` the Sylvester
//! matrix has `t` rows holding the ascending coefficients of `f`, each
//! shifted one column right of the previous, followed by `s` rows built the
//! same way from `g`. With this layout the determinant equals
//! `(-1)^(s t)` times the textbook resultant (whose rows list coefficients
//! from the top degree down). Both vanish under the same conditions and both
//! are multiplicative in each argument.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ResultantError;
use crate::floquet::{dispersion, induced_dispersion};
use crate::graph::PeriodicGraph;
use crate::labeling::Labeling;
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    pub size: usize,
    pub entries: Vec<Vec<BigRational>>,
}

impl SylvesterMatrix {
    pub fn new(f: &UniPoly, g: &UniPoly) -> Result<Self, ResultantError> {
        let s = f.degree().filter(|&s| s >= 1).ok_or(ResultantError::DegreeZero)?;
        let t = g.degree().filter(|&t| t >= 1).ok_or(ResultantError::DegreeZero)?;
        let size = s + t;
        let mut entries = vec![vec![BigRational::zero(); size]; size];
        for r in 0..t {
            for (k, c) in f.coeffs().iter().enumerate() {
                entries[r][r + k] = c.clone();
            }
        }
        for r in 0..s {
            for (k, c) in g.coeffs().iter().enumerate() {
                entries[t + r][r + k] = c.clone();
            }
        }
        Ok(SylvesterMatrix { size, entries })
    }

    pub fn determinant(&self) -> BigRational {
        determinant(self.entries.clone())
    }
}

/// Gaussian elimination over the rationals.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &pivot;
            for c in k..n {
                let delta = &factor * &m[k][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Determinant of the Sylvester matrix of `f` and `g`.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigRational, ResultantError> {
    Ok(SylvesterMatrix::new(f, g)?.determinant())
}

/// `Res(D(z0, lambda), D|_U(lambda))` after checking the cut-edge hypotheses:
/// `|U| = n - 1`, `U` has support 0, the simplified quotient graph is a
/// tree, all weights are nonzero and `z0` has nonzero coordinates.
pub fn cut_edge_certificate(
    graph: &PeriodicGraph,
    subset: &[usize],
    labeling: &Labeling,
    z0: &[BigRational],
) -> Result<BigRational, ResultantError> {
    let n = graph.num_orbits();
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() != subset.len() || members.len() + 1 != n {
        return Err(ResultantError::WrongSubsetSize { expected: n.saturating_sub(1), got: subset.len() });
    }
    let support = graph.support_of_subset(subset)?;
    if support.iter().any(|a| a.iter().any(|&x| x != 0)) {
        return Err(ResultantError::NotSupportZero);
    }
    let quotient = graph.quotient();
    if !quotient.is_connected() {
        return Err(ResultantError::Disconnected);
    }
    if let Some(&(i, j)) = quotient.non_bridges().first() {
        return Err(ResultantError::NonBridgeEdge(i, j));
    }
    for class in graph.edges() {
        match labeling.weight(class) {
            Some(w) if !w.is_zero() => {}
            _ => return Err(ResultantError::ZeroWeight(class.clone())),
        }
    }
    if z0.len() != graph.dimension() {
        return Err(ResultantError::PointLength { expected: graph.dimension(), got: z0.len() });
    }
    if z0.iter().any(Zero::is_zero) {
        return Err(ResultantError::ZeroCoordinate);
    }
    let full = dispersion(graph, labeling)?.evaluate_z(z0)?;
    let part = induced_dispersion(graph, labeling, subset)?.to_univariate()?;
    resultant(&full, &part)
}
