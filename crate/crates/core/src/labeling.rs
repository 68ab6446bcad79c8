//! Rational potentials and edge weights for a periodic graph.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::LabelingError;
use crate::graph::{canonicalize_edge, EdgeClass, PeriodicGraph, ShiftAssignment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    potentials: Vec<BigRational>,
    weights: BTreeMap<EdgeClass, BigRational>,
}

impl Labeling {
    /// Checks that there is one potential per orbit and one nonzero weight
    /// per edge class of `graph`.
    pub fn new(
        graph: &PeriodicGraph,
        potentials: Vec<BigRational>,
        weights: BTreeMap<EdgeClass, BigRational>,
    ) -> Result<Self, LabelingError> {
        let labeling = Self::new_permitting_zero(graph, potentials, weights)?;
        if let Some((class, _)) = labeling.weights.iter().find(|(_, w)| w.is_zero()) {
            return Err(LabelingError::ZeroWeight(class.clone()));
        }
        Ok(labeling)
    }

    /// Like [`Labeling::new`], but zero weights are allowed. A zero weight
    /// behaves as a deleted edge.
    pub fn new_permitting_zero(
        graph: &PeriodicGraph,
        potentials: Vec<BigRational>,
        weights: BTreeMap<EdgeClass, BigRational>,
    ) -> Result<Self, LabelingError> {
        if potentials.len() != graph.num_orbits() {
            return Err(LabelingError::PotentialCount { expected: graph.num_orbits(), got: potentials.len() });
        }
        for class in weights.keys() {
            if graph.edges().binary_search(class).is_err() {
                return Err(LabelingError::UnknownClass(class.clone()));
            }
        }
        for class in graph.edges() {
            if !weights.contains_key(class) {
                return Err(LabelingError::MissingWeight(class.clone()));
            }
        }
        Ok(Labeling { potentials, weights })
    }

    /// Weights in the order of `graph.edges()`.
    pub fn from_vectors(
        graph: &PeriodicGraph,
        potentials: Vec<BigRational>,
        weights: Vec<BigRational>,
    ) -> Result<Self, LabelingError> {
        let map = graph.edges().iter().cloned().zip(weights).collect();
        Self::new(graph, potentials, map)
    }

    /// Potentials 0 and weights 1: the adjacency operator.
    pub fn unit(graph: &PeriodicGraph) -> Self {
        Labeling {
            potentials: vec![BigRational::zero(); graph.num_orbits()],
            weights: graph.edges().iter().map(|c| (c.clone(), BigRational::from_integer(1.into()))).collect(),
        }
    }

    pub fn potentials(&self) -> &[BigRational] {
        &self.potentials
    }

    pub fn potential(&self, orbit: usize) -> &BigRational {
        &self.potentials[orbit]
    }

    pub fn weights(&self) -> &BTreeMap<EdgeClass, BigRational> {
        &self.weights
    }

    pub fn weight(&self, class: &EdgeClass) -> Option<&BigRational> {
        self.weights.get(class)
    }

    pub fn with_potential(&self, orbit: usize, value: BigRational) -> Self {
        let mut out = self.clone();
        out.potentials[orbit] = value;
        out
    }

    /// Labels for the subgraph induced on `orbits` (old indices, listed in
    /// the order of the new indices), matching `PeriodicGraph::induced_subgraph`.
    pub fn restrict(&self, sub: &PeriodicGraph, orbits: &[usize]) -> Self {
        let potentials = orbits.iter().map(|&u| self.potentials[u].clone()).collect();
        let weights = sub
            .edges()
            .iter()
            .map(|c| {
                let old = EdgeClass { from: orbits[c.from], to: orbits[c.to], offset: c.offset.clone() };
                let w = self.weights.get(&old).cloned().unwrap_or_else(BigRational::zero);
                (c.clone(), w)
            })
            .collect();
        Labeling { potentials, weights }
    }

    /// Labels carried over to `graph.apply_shifts(shifts)`.
    pub fn shifted(&self, graph: &PeriodicGraph, shifts: &ShiftAssignment) -> Self {
        let zero = vec![0; graph.dimension()];
        let weights = graph
            .edges()
            .iter()
            .map(|c| {
                let si = shifts.get(&c.from).unwrap_or(&zero);
                let sj = shifts.get(&c.to).unwrap_or(&zero);
                let offset: Vec<i64> = (0..zero.len()).map(|k| c.offset[k] + si[k] - sj[k]).collect();
                let moved = canonicalize_edge(c.from, c.to, &offset).expect("shifting preserves validity");
                (moved, self.weights[c].clone())
            })
            .collect();
        Labeling { potentials: self.potentials.clone(), weights }
    }
}
