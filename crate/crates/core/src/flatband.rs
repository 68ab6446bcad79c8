//! Exact flat-band detection.
//!
//! Writing `D = sum_a z^a p_a(lambda)`, a linear factor `lambda - lambda0`
//! divides `D` iff it divides every `p_a`. So the flat bands over the
//! complex numbers are exactly the roots of `g = gcd_a p_a`, and `g` is
//! computed over the rationals. Rational roots come out of the
//! factorization of `g`; higher-degree irreducible factors stand for
//! irrational flat bands.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::FlatBandError;
use crate::floquet::{dispersion, induced_dispersion};
use crate::graph::PeriodicGraph;
use crate::labeling::Labeling;
use crate::laurent::{LaurentPoly, WeightVector};
use crate::polytope::{vertical_faces, FaceDescriptor, Point};
use crate::sampling::{random_labeling, trial_rng};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatBandReport {
    /// Monic `gcd_a p_a`; equal to 1 when there is no flat band.
    pub flatband_poly: UniPoly,
    /// Ascending, with multiplicity in `g`.
    pub rational_roots: Vec<(BigRational, u32)>,
    /// Monic irreducible factors of `g` of degree at least 2.
    pub irreducible_factors: Vec<(UniPoly, u32)>,
    /// `verified[k]`: `lambda - rational_roots[k]` divides `D` exactly.
    pub verified: Vec<bool>,
}

impl FlatBandReport {
    pub fn has_flat_band(&self) -> bool {
        self.flatband_poly.degree().unwrap_or(0) > 0
    }

    /// Number of flat bands counted with multiplicity.
    pub fn count(&self) -> usize {
        self.flatband_poly.degree().unwrap_or(0)
    }
}

/// The flat-band polynomial `g` of `D`.
pub fn flatband_polynomial(d: &LaurentPoly) -> Result<UniPoly, FlatBandError> {
    let top = d.lambda_degree().ok_or(FlatBandError::NotMonicInLambda)?;
    let lead = d.coefficient_in_lambda(top);
    let unit = lead.is_lambda_only()
        && lead.num_terms() == 1
        && lead.terms().all(|(_, c)| c.abs() == BigRational::one());
    if !unit {
        return Err(FlatBandError::NotMonicInLambda);
    }
    let mut g = UniPoly::zero();
    for p in d.lambda_polys_by_monomial().values() {
        g = g.gcd(p);
        if g.is_constant() {
            break;
        }
    }
    Ok(g)
}

pub fn flat_bands(d: &LaurentPoly) -> Result<FlatBandReport, FlatBandError> {
    let g = flatband_polynomial(d)?;
    let factors = g.factor();
    let rational_roots: Vec<(BigRational, u32)> = factors
        .iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, m)| (-f.coeff(0), *m))
        .collect::<std::collections::BTreeMap<_, _>>()
        .into_iter()
        .collect();
    let irreducible_factors = factors.into_iter().filter(|(f, _)| f.degree() > Some(1)).collect();
    let verified = rational_roots
        .iter()
        .map(|(r, _)| d.substitute_lambda(r).is_zero() && d.divide_by_linear(r).is_ok())
        .collect();
    Ok(FlatBandReport { flatband_poly: g, rational_roots, irreducible_factors, verified })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenericVerdict {
    FlatBand,
    NoFlatBand,
    /// Trials disagree; some draw was not generic.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDecision {
    pub verdict: GenericVerdict,
    pub seed: u64,
    /// One report per trial, in trial order.
    pub reports: Vec<FlatBandReport>,
}

/// Unanimity over `trials` random labelings; trial `t` uses `trial_rng(seed, t)`.
pub fn generic_flat_band_decision(graph: &PeriodicGraph, trials: usize, seed: u64) -> Result<GenericDecision, FlatBandError> {
    if trials == 0 {
        return Err(FlatBandError::NoTrials);
    }
    let reports = (0..trials)
        .map(|t| {
            let lab = random_labeling(graph, &mut trial_rng(seed, t as u64));
            flat_bands(&dispersion(graph, &lab)?)
        })
        .collect::<Result<Vec<_>, FlatBandError>>()?;
    let flat = reports.iter().filter(|r| r.has_flat_band()).count();
    let verdict = if flat == trials {
        GenericVerdict::FlatBand
    } else if flat == 0 {
        GenericVerdict::NoFlatBand
    } else {
        GenericVerdict::Inconsistent
    };
    Ok(GenericDecision { verdict, seed, reports })
}

/// Flat bands shared by `D` and `D|_{W \ {i}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedFlatBands {
    pub deleted: usize,
    pub rational: Vec<BigRational>,
    /// Monic `gcd(g, g_i)` restricted to its factors of degree >= 2.
    pub irrational_factors: Vec<UniPoly>,
}

impl SharedFlatBands {
    pub fn is_empty(&self) -> bool {
        self.rational.is_empty() && self.irrational_factors.is_empty()
    }
}

pub fn inheritance_check(graph: &PeriodicGraph, labeling: &Labeling, i: usize) -> Result<SharedFlatBands, FlatBandError> {
    let n = graph.num_orbits();
    if n < 2 {
        return Err(FlatBandError::TooFewOrbits);
    }
    if i >= n {
        return Err(FlatBandError::OrbitOutOfRange { index: i, num_orbits: n });
    }
    let g = flatband_polynomial(&dispersion(graph, labeling)?)?;
    let rest: Vec<usize> = (0..n).filter(|&u| u != i).collect();
    let g_rest = flatband_polynomial(&induced_dispersion(graph, labeling, &rest)?)?;
    let common = g.gcd(&g_rest);
    let mut rational = Vec::new();
    let mut irrational_factors = Vec::new();
    for (f, _) in common.factor() {
        match f.degree() {
            Some(1) => rational.push(-f.coeff(0)),
            Some(_) => irrational_factors.push(f),
            None => {}
        }
    }
    rational.sort();
    Ok(SharedFlatBands { deleted: i, rational, irrational_factors })
}

/// Runs [`inheritance_check`] for every orbit.
pub fn inheritance_scan(graph: &PeriodicGraph, labeling: &Labeling) -> Result<Vec<SharedFlatBands>, FlatBandError> {
    (0..graph.num_orbits()).map(|i| inheritance_check(graph, labeling, i)).collect()
}

/// A proper vertical face whose facial polynomial is `z^a p(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalSegmentWitness {
    pub face: FaceDescriptor,
    pub facial: LaurentPoly,
    pub z_exponent: Vec<i64>,
    pub p: UniPoly,
    /// The flat-band polynomial divides `p`.
    pub divides: bool,
}

impl VerticalSegmentWitness {
    pub fn normal(&self) -> &WeightVector {
        &self.face.normal
    }
}

/// Searches the proper vertical faces of the generic support for one on
/// which `D` restricts to a single z-monomial times `p(lambda)`, and checks
/// that all flat bands divide `p`. Faces where `p` is divisible are
/// preferred; among them, the first in enumeration order.
///
/// The faces come from `generic` rather than from `support(D)`: a special
/// labeling can cancel terms and shrink a vertical face to a point.
pub fn vertical_segment_face_witness(
    graph: &PeriodicGraph,
    labeling: &Labeling,
    generic: &BTreeSet<Point>,
) -> Result<Option<VerticalSegmentWitness>, FlatBandError> {
    if graph.has_support0_fundamental_domain() {
        return Err(FlatBandError::HasSupportZeroDomain);
    }
    let d = dispersion(graph, labeling)?;
    let g = flatband_polynomial(&d)?;
    if g.is_constant() {
        return Err(FlatBandError::NoFlatBand);
    }
    let mut fallback = None;
    for face in vertical_faces(generic)? {
        let facial = d.terms_at_weight(&face.normal, face.min_value)?;
        let by_z = facial.lambda_polys_by_monomial();
        if facial.is_zero() || by_z.len() != 1 {
            continue;
        }
        let (z_exponent, p) = by_z.into_iter().next().expect("one monomial");
        if z_exponent.iter().all(|&a| a == 0) {
            continue;
        }
        let divides = p.div_exact(&g).is_some();
        let witness = VerticalSegmentWitness { face, facial, z_exponent, p, divides };
        if divides {
            return Ok(Some(witness));
        }
        fallback.get_or_insert(witness);
    }
    Ok(fallback)
}
