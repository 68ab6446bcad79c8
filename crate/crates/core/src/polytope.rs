//! Supports, Newton polytopes and vertical faces of dispersion polynomials.
//!
//! Support points are `(a_1, .., a_d, b)` with the lambda exponent last.
//! Hull vertices are found for any dimension with an exact LP; face
//! enumeration is limited to `d <= 2`, where the projection of the support
//! to the z-coordinates is an interval or a polygon.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolytopeError;
use crate::floquet::{dispersion, floquet_matrix, symbolic_dispersion};
use crate::graph::PeriodicGraph;
use crate::labeling::Labeling;
use crate::laurent::{LaurentPoly, WeightVector};
use crate::sampling::{random_labeling, random_nonzero_rational, trial_rng};

pub type Point = Vec<i64>;

/// A face `{p in S : w . p = m}` with `m = min_S w . p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub normal: WeightVector,
    pub min_value: i64,
    pub members: BTreeSet<Point>,
}

impl FaceDescriptor {
    fn of(support: &BTreeSet<Point>, normal: WeightVector) -> Self {
        let min_value = support.iter().map(|p| normal.dot(p)).min().expect("nonempty support");
        let members = support.iter().filter(|p| normal.dot(p) == min_value).cloned().collect();
        FaceDescriptor { normal, min_value, members }
    }

    /// Two members with the same z-part (and therefore different lambda-part).
    pub fn is_vertical(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.members.iter().any(|p| !seen.insert(&p[..p.len() - 1]))
    }

    pub fn contains_origin(&self) -> bool {
        self.members.iter().any(|p| p.iter().all(|&x| x == 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytopeData {
    /// `d + 1`
    pub dimension: usize,
    pub support_points: BTreeSet<Point>,
    pub hull_vertices: BTreeSet<Point>,
    /// Proper vertical faces; `None` when `d > 2` or the support is a
    /// vertical segment.
    pub faces: Option<Vec<FaceDescriptor>>,
}

impl NewtonPolytopeData {
    pub fn new(support: BTreeSet<Point>) -> Result<Self, PolytopeError> {
        let dimension = support.iter().next().ok_or(PolytopeError::EmptySupport)?.len();
        let hull_vertices = hull_vertices(&support);
        let faces = match vertical_faces(&support) {
            Ok(f) => Some(f),
            Err(PolytopeError::UnsupportedDimension(_) | PolytopeError::VerticalSegment) => None,
            Err(e) => return Err(e),
        };
        Ok(NewtonPolytopeData { dimension, support_points: support, hull_vertices, faces })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericSupportEstimate {
    pub trials: usize,
    pub seed: u64,
    pub points: BTreeSet<Point>,
}

/// Union of `support(D)` over `trials` random labelings.
pub fn generic_support(graph: &PeriodicGraph, trials: usize, seed: u64) -> Result<GenericSupportEstimate, PolytopeError> {
    if trials == 0 {
        return Err(PolytopeError::NoTrials);
    }
    let mut points = BTreeSet::new();
    for t in 0..trials {
        let lab = random_labeling(graph, &mut trial_rng(seed, t as u64));
        points.extend(dispersion(graph, &lab)?.support());
    }
    Ok(GenericSupportEstimate { trials, seed, points })
}

/// Exact generic support: the support of the dispersion polynomial with
/// every label kept as an independent variable, projected to `(z, lambda)`.
/// Cost grows like `n!`; intended for small `n`.
pub fn symbolic_generic_support(graph: &PeriodicGraph) -> BTreeSet<Point> {
    let (d, _) = symbolic_dispersion(graph);
    d.projected_support(graph.dimension())
}

/// True iff every point has zero z-part.
pub fn is_vertical_segment(support: &BTreeSet<Point>) -> bool {
    support.iter().all(|p| p[..p.len() - 1].iter().all(|&a| a == 0))
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull of planar points, counter-clockwise, starting from the
/// lexicographically smallest vertex, collinear points dropped.
pub fn convex_polygon(points: &BTreeSet<Point>) -> Vec<Point> {
    let pts: Vec<&Point> = points.iter().collect();
    if pts.len() <= 1 {
        return pts.into_iter().cloned().collect();
    }
    let mut lower: Vec<&Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).cloned().collect()
}

fn lift(w: Vec<i64>) -> WeightVector {
    let mut w = w;
    w.push(0);
    WeightVector(w)
}

/// Normals `(w', 0)` of the proper faces of the projected hull, in a fixed
/// order: for `d = 1` the two endpoints, for `d = 2` each vertex followed by
/// the edge to the next vertex counter-clockwise.
fn projected_face_normals(projection: &BTreeSet<Point>, d: usize) -> Vec<WeightVector> {
    match d {
        1 => vec![lift(vec![1]), lift(vec![-1])],
        _ => {
            let polygon = convex_polygon(projection);
            if polygon.len() == 2 {
                let u = primitive(vec![polygon[1][0] - polygon[0][0], polygon[1][1] - polygon[0][1]]);
                let minus: Vec<i64> = u.iter().map(|x| -x).collect();
                return vec![lift(u), lift(minus)];
            }
            let k = polygon.len();
            let edge_normal = |s: usize| {
                let (p, q) = (&polygon[s], &polygon[(s + 1) % k]);
                primitive(vec![-(q[1] - p[1]), q[0] - p[0]])
            };
            let mut out = Vec::with_capacity(2 * k);
            for s in 0..k {
                let before = edge_normal((s + k - 1) % k);
                let after = edge_normal(s);
                out.push(lift(primitive(vec![before[0] + after[0], before[1] + after[1]])));
                out.push(lift(after));
            }
            out
        }
    }
}

/// Proper faces of `hull(S)` with normal `(w', 0)` that contain two points
/// with the same z-part.
pub fn vertical_faces(support: &BTreeSet<Point>) -> Result<Vec<FaceDescriptor>, PolytopeError> {
    let first = support.iter().next().ok_or(PolytopeError::EmptySupport)?;
    let d = first.len() - 1;
    if d == 0 || d > 2 {
        return Err(PolytopeError::UnsupportedDimension(d));
    }
    if is_vertical_segment(support) {
        return Err(PolytopeError::VerticalSegment);
    }
    let projection: BTreeSet<Point> = support.iter().map(|p| p[..d].to_vec()).collect();
    Ok(projected_face_normals(&projection, d)
        .into_iter()
        .map(|w| FaceDescriptor::of(support, w))
        .filter(FaceDescriptor::is_vertical)
        .collect())
}

/// Checks that `w` is `(w', 0)` and cuts out a proper vertical face of `support`.
pub fn proper_vertical_face(support: &BTreeSet<Point>, w: &WeightVector) -> Result<FaceDescriptor, PolytopeError> {
    let first = support.iter().next().ok_or(PolytopeError::EmptySupport)?;
    if w.0.len() != first.len() || w.0.last() != Some(&0) || w.is_zero() {
        return Err(PolytopeError::NotProperVerticalFace);
    }
    let face = FaceDescriptor::of(support, w.clone());
    if !face.is_vertical() || face.members.len() == support.len() {
        return Err(PolytopeError::NotProperVerticalFace);
    }
    Ok(face)
}

/// Finds an orbit `i` such that the facial polynomial `D_w` does not depend
/// on the potential `v_i`.
///
/// `D` is affine in each `v_i`, so two evaluations at distinct values decide
/// dependence exactly. The face is taken at the minimum `m` of `w` over the
/// generic support, so a labeling that happens to cancel terms on the face
/// cannot shift it.
pub fn facial_independence_witness(
    graph: &PeriodicGraph,
    generic: &BTreeSet<Point>,
    w: &WeightVector,
    seed: u64,
) -> Result<Option<usize>, PolytopeError> {
    let face = proper_vertical_face(generic, w)?;
    let mut rng = trial_rng(seed, 0);
    let base = random_labeling(graph, &mut rng);
    for i in 0..graph.num_orbits() {
        let first = base.potential(i).clone();
        let second = loop {
            let r = random_nonzero_rational(&mut rng);
            if r != first {
                break r;
            }
        };
        let facial = |v: BigRational| -> Result<LaurentPoly, PolytopeError> {
            let d = dispersion(graph, &base.with_potential(i, v))?;
            Ok(d.terms_at_weight(w, face.min_value)?)
        };
        if facial(first)? == facial(second)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `support(sigma D)` for `sigma D = prod_i (L - lambda I)_{i, sigma(i)}`.
pub fn permutation_support(graph: &PeriodicGraph, labeling: &Labeling, sigma: &[usize]) -> Result<BTreeSet<Point>, PolytopeError> {
    let m = floquet_matrix(graph, labeling)?.minus_lambda_identity();
    Ok(m.permutation_product(sigma).support())
}

/// `support(sigma D) ⊆ generic`.
pub fn sigma_support_check(
    graph: &PeriodicGraph,
    labeling: &Labeling,
    sigma: &[usize],
    generic: &BTreeSet<Point>,
) -> Result<bool, PolytopeError> {
    Ok(permutation_support(graph, labeling, sigma)?.is_subset(generic))
}

/// Phase-one simplex with Bland's rule: is `A x = b, x >= 0` feasible?
fn feasible(columns: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let rows = b.len();
    let cols = columns.len();
    // tableau: [A | I | b], rows normalized so b >= 0
    let width = cols + rows + 1;
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let flip = b[r].is_negative();
            let mut row = vec![BigRational::zero(); width];
            for (c, col) in columns.iter().enumerate() {
                row[c] = if flip { -&col[r] } else { col[r].clone() };
            }
            row[cols + r] = BigRational::one();
            row[width - 1] = if flip { -&b[r] } else { b[r].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    loop {
        // reduced cost of column c for minimizing the sum of artificials
        let reduced = |t: &Vec<Vec<BigRational>>, basis: &[usize], c: usize| -> BigRational {
            let cost = |k: usize| if k >= cols && k < cols + rows { BigRational::one() } else { BigRational::zero() };
            let mut r = cost(c);
            for (row, &bk) in basis.iter().enumerate() {
                r -= cost(bk) * &t[row][c];
            }
            r
        };
        let entering = (0..cols + rows).find(|&c| !basis.contains(&c) && reduced(&t, &basis, c).is_negative());
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][e].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][e];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = t[pr][e].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..rows {
            if r != pr && !t[r][e].is_zero() {
                let factor = t[r][e].clone();
                for c in 0..width {
                    let delta = &factor * &t[pr][c];
                    t[r][c] -= delta;
                }
            }
        }
        basis[pr] = e;
    }
    basis
        .iter()
        .enumerate()
        .all(|(r, &bk)| bk < cols || t[r][width - 1].is_zero())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// True iff `p` is a convex combination of `others`.
pub fn in_convex_hull(p: &[i64], others: &[&Point]) -> bool {
    if others.is_empty() {
        return false;
    }
    let columns: Vec<Vec<BigRational>> = others
        .iter()
        .map(|q| q.iter().map(|&x| int(x)).chain(std::iter::once(BigRational::one())).collect())
        .collect();
    let b: Vec<BigRational> = p.iter().map(|&x| int(x)).chain(std::iter::once(BigRational::one())).collect();
    feasible(&columns, &b)
}

/// Extreme points of `hull(points)`.
pub fn hull_vertices(points: &BTreeSet<Point>) -> BTreeSet<Point> {
    points
        .iter()
        .filter(|p| {
            let others: Vec<&Point> = points.iter().filter(|q| q != p).collect();
            !in_convex_hull(p, &others)
        })
        .cloned()
        .collect()
}

/// Whether `hull(a) = hull(b)`, compared through vertex sets.
pub fn same_hull(a: &BTreeSet<Point>, b: &BTreeSet<Point>) -> bool {
    hull_vertices(a) == hull_vertices(b)
}

/// Vertices of the Minkowski sum `hull(a) + hull(b)`.
pub fn minkowski_sum_vertices(a: &BTreeSet<Point>, b: &BTreeSet<Point>) -> BTreeSet<Point> {
    let (va, vb) = (hull_vertices(a), hull_vertices(b));
    let sums: BTreeSet<Point> = va
        .iter()
        .flat_map(|p| vb.iter().map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect()))
        .collect();
    hull_vertices(&sums)
}

/// Groups support points by z-part; handy for printing.
pub fn lambda_range_by_z(support: &BTreeSet<Point>) -> BTreeMap<Vec<i64>, (i64, i64)> {
    let mut out: BTreeMap<Vec<i64>, (i64, i64)> = BTreeMap::new();
    for p in support {
        let (z, b) = (p[..p.len() - 1].to_vec(), p[p.len() - 1]);
        let entry = out.entry(z).or_insert((b, b));
        entry.0 = entry.0.min(b);
        entry.1 = entry.1.max(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(items: &[&[i64]]) -> BTreeSet<Point> {
        items.iter().map(|p| p.to_vec()).collect()
    }

    fn lieb_support() -> BTreeSet<Point> {
        pts(&[
            &[0, 0, 0], &[0, 0, 1], &[0, 0, 2], &[0, 0, 3],
            &[-1, 0, 0], &[-1, 0, 1], &[1, 0, 0], &[1, 0, 1],
            &[0, -1, 0], &[0, -1, 1], &[0, 1, 0], &[0, 1, 1],
        ])
    }

    #[test]
    fn lieb_generic_support() {
        let g = PeriodicGraph::lieb();
        assert_eq!(generic_support(&g, 5, 1).unwrap().points, lieb_support());
        assert_eq!(symbolic_generic_support(&g), lieb_support());
        let single = PeriodicGraph::edgeless(2, 1).unwrap();
        assert_eq!(generic_support(&single, 5, 1).unwrap().points, pts(&[&[0, 0, 0], &[0, 0, 1]]));
        assert!(matches!(generic_support(&g, 0, 1), Err(PolytopeError::NoTrials)));
    }

    #[test]
    fn vertical_segments() {
        assert!(is_vertical_segment(&pts(&[&[0, 0], &[0, 3]])));
        assert!(is_vertical_segment(&pts(&[&[0, 0]])));
        assert!(!is_vertical_segment(&lieb_support()));
    }

    #[test]
    fn lieb_vertical_faces() {
        let faces = vertical_faces(&lieb_support()).unwrap();
        assert_eq!(faces.len(), 8);
        assert_eq!(faces[0].normal, WeightVector(vec![1, 0, 0]));
        assert_eq!(faces[0].min_value, -1);
        assert_eq!(faces[0].members, pts(&[&[-1, 0, 0], &[-1, 0, 1]]));
        for f in &faces {
            assert!(f.min_value < 0);
            assert!(!f.contains_origin());
        }
        let normals: BTreeSet<Vec<i64>> = faces.iter().map(|f| f.normal.0.clone()).collect();
        for w in [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [1, 1, 0], [-1, -1, 0], [1, -1, 0], [-1, 1, 0]] {
            assert!(normals.contains(&w.to_vec()), "{w:?}");
        }
    }

    #[test]
    fn faces_without_vertical_pairs() {
        let square = pts(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0]]);
        assert!(vertical_faces(&square).unwrap().is_empty());
        let chain = pts(&[&[-1, 0], &[0, 0], &[0, 1], &[1, 0]]);
        assert!(vertical_faces(&chain).unwrap().is_empty());
        assert!(matches!(vertical_faces(&pts(&[&[0, 0, 0, 0], &[1, 0, 0, 0]])), Err(PolytopeError::UnsupportedDimension(3))));
        assert!(matches!(vertical_faces(&pts(&[&[0, 0], &[0, 1]])), Err(PolytopeError::VerticalSegment)));
    }

    #[test]
    fn collinear_projection() {
        // projection onto z is the segment from (-1,-1) to (1,1)
        let s = pts(&[&[-1, -1, 0], &[-1, -1, 1], &[0, 0, 0], &[0, 0, 2], &[1, 1, 0], &[1, 1, 1]]);
        let faces = vertical_faces(&s).unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].normal, WeightVector(vec![1, 1, 0]));
        assert_eq!(faces[0].members, pts(&[&[-1, -1, 0], &[-1, -1, 1]]));
    }

    #[test]
    fn lieb_independence() {
        let g = PeriodicGraph::lieb();
        let s = lieb_support();
        let w = |v: [i64; 3]| WeightVector(v.to_vec());
        // D_w for w = (1,0,0) depends only on v3
        let i = facial_independence_witness(&g, &s, &w([1, 0, 0]), 3).unwrap().unwrap();
        assert!(i == 0 || i == 1);
        let i = facial_independence_witness(&g, &s, &w([-1, 0, 0]), 3).unwrap().unwrap();
        assert!(i == 0 || i == 1);
        let i = facial_independence_witness(&g, &s, &w([0, 1, 0]), 3).unwrap().unwrap();
        assert!(i == 1 || i == 2);
        assert!(matches!(
            facial_independence_witness(&g, &s, &w([0, 0, 1]), 3),
            Err(PolytopeError::NotProperVerticalFace)
        ));
    }

    #[test]
    fn sigma_on_lieb() {
        let g = PeriodicGraph::lieb();
        let lab = random_labeling(&g, &mut trial_rng(4, 0));
        let s = lieb_support();
        assert!(sigma_support_check(&g, &lab, &[0, 1, 2], &s).unwrap());
        assert!(sigma_support_check(&g, &lab, &[1, 2, 0], &s).unwrap());
        assert!(sigma_support_check(&g, &lab, &[1, 0, 2], &s).unwrap());
    }

    #[test]
    fn hulls() {
        let square = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]);
        assert_eq!(hull_vertices(&square), pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]));
        assert_eq!(hull_vertices(&pts(&[&[3, 4, 5]])), pts(&[&[3, 4, 5]]));
        let seg = pts(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 2], &[0, 0, 3]]);
        assert_eq!(hull_vertices(&seg), pts(&[&[0, 0, 0], &[0, 0, 3]]));
        let a = pts(&[&[0, 0], &[1, 0]]);
        let b = pts(&[&[0, 0], &[0, 1]]);
        assert_eq!(minkowski_sum_vertices(&a, &b), pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    }

    #[test]
    fn polygon_order() {
        let p = convex_polygon(&pts(&[&[0, 1], &[1, 0], &[-1, 0], &[0, -1], &[0, 0]]));
        assert_eq!(p, vec![vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn polytope_data() {
        let data = NewtonPolytopeData::new(lieb_support()).unwrap();
        assert_eq!(data.dimension, 3);
        assert_eq!(data.faces.as_ref().unwrap().len(), 8);
        assert!(data.hull_vertices.contains(&vec![0, 0, 3]));
        assert!(!data.hull_vertices.contains(&vec![0, 0, 1]));
        assert!(data.hull_vertices.is_subset(&data.support_points));
    }
}
