//! Floquet matrices and dispersion polynomials.
//!
//! For a labeled periodic graph the Floquet matrix `L(z)` has
//! `L_ii = v_i + sum e (z^a + z^-a)` over self-orbit classes `(i, i, a)`
//! and, for `i != j`, `L_ij = sum e z^a` over classes from `i` to `j`.
//! The dispersion polynomial is `D(z, lambda) = det(L(z) - lambda I)`.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{FloquetError, LabelingError};
use crate::graph::{EdgeClass, PeriodicGraph};
use crate::labeling::Labeling;
use crate::laurent::{LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone)]
pub struct FloquetMatrix<'a> {
    graph: &'a PeriodicGraph,
    labeling: &'a Labeling,
    matrix: LaurentMatrix,
    dispersion: LaurentPoly,
}

impl<'a> FloquetMatrix<'a> {
    pub fn graph(&self) -> &'a PeriodicGraph {
        self.graph
    }

    pub fn labeling(&self) -> &'a Labeling {
        self.labeling
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    /// `det(L(z) - lambda I)`, computed once at construction.
    pub fn dispersion(&self) -> &LaurentPoly {
        &self.dispersion
    }

    pub fn into_dispersion(self) -> LaurentPoly {
        self.dispersion
    }
}

fn check_labeling(graph: &PeriodicGraph, labeling: &Labeling) -> Result<(), LabelingError> {
    if labeling.potentials().len() != graph.num_orbits() {
        return Err(LabelingError::PotentialCount {
            expected: graph.num_orbits(),
            got: labeling.potentials().len(),
        });
    }
    if let Some(class) = graph.edges().iter().find(|c| labeling.weight(c).is_none()) {
        return Err(LabelingError::MissingWeight(class.clone()));
    }
    if let Some(class) = labeling.weights().keys().find(|c| graph.edges().binary_search(c).is_err()) {
        return Err(LabelingError::UnknownClass(class.clone()));
    }
    Ok(())
}

/// Places the contribution of one edge class with coefficient `weight`
/// (a Laurent polynomial in the extra variables, or a constant).
fn place_class(matrix: &mut LaurentMatrix, class: &EdgeClass, weight: &LaurentPoly, dim: usize) {
    let forward = &pad_z(&LaurentPoly::monomial(class.offset.clone(), 0, BigRational::one()), dim) * weight;
    let backward = &pad_z(
        &LaurentPoly::monomial(class.offset.iter().map(|a| -a).collect(), 0, BigRational::one()),
        dim,
    ) * weight;
    let (i, j) = (class.from, class.to);
    if i == j {
        let entry = matrix.get_mut(i, i);
        *entry = &(&*entry + &forward) + &backward;
    } else {
        let entry = matrix.get_mut(i, j);
        *entry = &*entry + &forward;
        let entry = matrix.get_mut(j, i);
        *entry = &*entry + &backward;
    }
}

/// Embeds a polynomial in `z_1..z_d` into a ring with `dim >= d` z-slots.
fn pad_z(f: &LaurentPoly, dim: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        dim,
        f.terms().map(|(e, c)| {
            let mut z = e.z.clone();
            z.resize(dim, 0);
            (crate::laurent::Exponent::new(z, e.lambda), c.clone())
        }),
    )
}

/// Builds `L(z)` and caches its dispersion polynomial.
pub fn build_floquet<'a>(
    graph: &'a PeriodicGraph,
    labeling: &'a Labeling,
) -> Result<FloquetMatrix<'a>, LabelingError> {
    let matrix = floquet_matrix(graph, labeling)?;
    let dispersion = matrix.minus_lambda_identity().determinant();
    Ok(FloquetMatrix { graph, labeling, matrix, dispersion })
}

/// The bare matrix `L(z)` without computing its determinant.
pub fn floquet_matrix(graph: &PeriodicGraph, labeling: &Labeling) -> Result<LaurentMatrix, LabelingError> {
    check_labeling(graph, labeling)?;
    let d = graph.dimension();
    let mut matrix = LaurentMatrix::zeros(d, graph.num_orbits());
    for (i, v) in labeling.potentials().iter().enumerate() {
        *matrix.get_mut(i, i) = LaurentPoly::constant(d, v.clone());
    }
    for class in graph.edges() {
        let w = labeling.weight(class).expect("checked above");
        place_class(&mut matrix, class, &LaurentPoly::constant(d, w.clone()), d);
    }
    Ok(matrix)
}

pub fn dispersion(graph: &PeriodicGraph, labeling: &Labeling) -> Result<LaurentPoly, LabelingError> {
    Ok(build_floquet(graph, labeling)?.into_dispersion())
}

/// `D|_U`: the dispersion polynomial of the operator induced on `subset`.
pub fn induced_dispersion(
    graph: &PeriodicGraph,
    labeling: &Labeling,
    subset: &[usize],
) -> Result<LaurentPoly, FloquetError> {
    check_labeling(graph, labeling)?;
    let (sub, orbits) = graph.induced_subgraph(subset)?;
    let sub_labels = labeling.restrict(&sub, &orbits);
    Ok(dispersion(&sub, &sub_labels)?)
}

/// Layout of the variables in [`symbolic_floquet`]: `z_1..z_d`, then one
/// slot per potential, then one slot per edge class in `graph.edges()` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicLayout {
    pub dimension: usize,
    pub num_orbits: usize,
    pub num_classes: usize,
}

impl SymbolicLayout {
    pub fn total(&self) -> usize {
        self.dimension + self.num_orbits + self.num_classes
    }

    pub fn potential_slot(&self, i: usize) -> usize {
        self.dimension + i
    }

    pub fn weight_slot(&self, k: usize) -> usize {
        self.dimension + self.num_orbits + k
    }
}

/// `L(z)` with every potential and weight replaced by an independent
/// variable, so that `det(L - lambda I)` carries the generic support.
pub fn symbolic_floquet(graph: &PeriodicGraph) -> (LaurentMatrix, SymbolicLayout) {
    let layout = SymbolicLayout {
        dimension: graph.dimension(),
        num_orbits: graph.num_orbits(),
        num_classes: graph.edges().len(),
    };
    let dim = layout.total();
    let mut matrix = LaurentMatrix::zeros(dim, graph.num_orbits());
    for i in 0..graph.num_orbits() {
        *matrix.get_mut(i, i) = LaurentPoly::z(dim, layout.potential_slot(i), 1);
    }
    for (k, class) in graph.edges().iter().enumerate() {
        place_class(&mut matrix, class, &LaurentPoly::z(dim, layout.weight_slot(k), 1), dim);
    }
    (matrix, layout)
}

/// Dispersion polynomial in `z`, the label variables and `lambda`.
pub fn symbolic_dispersion(graph: &PeriodicGraph) -> (LaurentPoly, SymbolicLayout) {
    let (matrix, layout) = symbolic_floquet(graph);
    (matrix.minus_lambda_identity().determinant(), layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;

    fn z(dim: usize, k: usize, p: i64) -> LaurentPoly {
        LaurentPoly::z(dim, k, p)
    }

    fn c(dim: usize, n: i64) -> LaurentPoly {
        LaurentPoly::constant(dim, rational(n))
    }

    /// `(1 + z_k)(1 + z_k^-1)`
    fn bond(k: usize) -> LaurentPoly {
        &(&c(2, 1) + &z(2, k, 1)) * &(&c(2, 1) + &z(2, k, -1))
    }

    #[test]
    fn lieb_matrix_and_dispersion() {
        let g = PeriodicGraph::lieb();
        let lab = Labeling::unit(&g);
        let f = build_floquet(&g, &lab).unwrap();
        let m = f.matrix();
        assert_eq!(*m.get(0, 1), &c(2, 1) + &z(2, 0, 1));
        assert_eq!(*m.get(1, 0), &c(2, 1) + &z(2, 0, -1));
        assert_eq!(*m.get(1, 2), &c(2, 1) + &z(2, 1, -1));
        assert!(m.get(0, 2).is_zero());
        assert!(m.is_transpose_inverse_symmetric());
        let lam = LaurentPoly::lambda(2);
        let expected = &(-&lam.pow(3)) + &(&lam * &(&bond(0) + &bond(1)));
        assert_eq!(*f.dispersion(), expected);
    }

    #[test]
    fn small_cases() {
        let chain = PeriodicGraph::new(1, 1, [(0, 0, vec![1])]).unwrap();
        let lab = Labeling::from_vectors(&chain, vec![rational(3)], vec![rational(1)]).unwrap();
        let f = build_floquet(&chain, &lab).unwrap();
        let expected = &(&(&c(1, 3) + &z(1, 0, 1)) + &z(1, 0, -1)) - &LaurentPoly::lambda(1);
        assert_eq!(*f.dispersion(), expected);

        let empty = PeriodicGraph::edgeless(1, 2).unwrap();
        let lab = Labeling::from_vectors(&empty, vec![rational(5), rational(7)], vec![]).unwrap();
        let f = build_floquet(&empty, &lab).unwrap();
        assert_eq!(*f.matrix().get(0, 0), c(1, 5));
        let lam = LaurentPoly::lambda(1);
        assert_eq!(*f.dispersion(), &(&c(1, 5) - &lam) * &(&c(1, 7) - &lam));
    }

    #[test]
    fn induced_on_lieb() {
        let g = PeriodicGraph::lieb();
        let lab = Labeling::unit(&g);
        let d = induced_dispersion(&g, &lab, &[1, 2]).unwrap();
        let lam = LaurentPoly::lambda(2);
        assert_eq!(d, &lam.pow(2) - &bond(1));
        let full = induced_dispersion(&g, &lab, &[0, 1, 2]).unwrap();
        assert_eq!(full, dispersion(&g, &lab).unwrap());
        assert!(induced_dispersion(&g, &lab, &[0]).unwrap().is_lambda_only());
        assert!(matches!(induced_dispersion(&g, &lab, &[]), Err(FloquetError::Graph(_))));
    }

    #[test]
    fn missing_labels_are_named() {
        let g = PeriodicGraph::lieb();
        let other = PeriodicGraph::edgeless(2, 3).unwrap();
        let lab = Labeling::unit(&other);
        assert!(matches!(build_floquet(&g, &lab), Err(LabelingError::MissingWeight(_))));
    }

    #[test]
    fn symbolic_lieb_faces() {
        let g = PeriodicGraph::lieb();
        let (d, layout) = symbolic_dispersion(&g);
        assert_eq!(layout.total(), 2 + 3 + 4);
        // the coefficient of v1 v2 v3 is 1
        let mut e = vec![0; layout.total()];
        for i in 0..3 {
            e[layout.potential_slot(i)] = 1;
        }
        assert_eq!(d.coefficient(&crate::laurent::Exponent::new(e, 0)), rational(1));
        let support = d.projected_support(2);
        assert_eq!(support.len(), 4 + 2 * 2 + 2 * 2);
    }
}
