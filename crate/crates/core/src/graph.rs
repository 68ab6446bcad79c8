//! Z^d-periodic graphs described by a fundamental domain.
//!
//! A graph is stored as `n` vertex orbits together with a set of edge
//! classes `(i, j, a)`, each standing for the orbit of edges
//! `{(i + b, j + a + b) : b in Z^d}`. Orbits are 0-based here; the CLI
//! converts from the 1-based numbering used in input files.
//!
//! The infinite graph is never materialized. Everything below works on
//! the quotient data: components, supports, induced graphs and the search
//! for a component that can be refitted to support 0.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::GraphError;

pub type Offset = Vec<i64>;

/// One edge class in canonical form: `from < to`, or `from == to` with a
/// lexicographically positive offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeClass {
    pub from: usize,
    pub to: usize,
    pub offset: Offset,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {:?})", self.from + 1, self.to + 1, self.offset)
    }
}

impl EdgeClass {
    pub fn is_self_orbit(&self) -> bool {
        self.from == self.to
    }
}

fn lex_positive(a: &[i64]) -> bool {
    a.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn negated(a: &[i64]) -> Offset {
    a.iter().map(|x| -x).collect()
}

/// Canonical representative of `{(i, j, a), (j, i, -a)}`.
pub fn canonicalize_edge(i: usize, j: usize, offset: &[i64]) -> Result<EdgeClass, GraphError> {
    if i == j {
        if offset.iter().all(|&x| x == 0) {
            return Err(GraphError::ZeroSelfLoop(i));
        }
        let offset = if lex_positive(offset) { offset.to_vec() } else { negated(offset) };
        return Ok(EdgeClass { from: i, to: i, offset });
    }
    if i < j {
        Ok(EdgeClass { from: i, to: j, offset: offset.to_vec() })
    } else {
        Ok(EdgeClass { from: j, to: i, offset: negated(offset) })
    }
}

/// Per-orbit shift vectors `a_u`; the refitted domain is `{u + a_u}`.
pub type ShiftAssignment = BTreeMap<usize, Offset>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicGraph {
    dimension: usize,
    num_orbits: usize,
    edges: Vec<EdgeClass>,
}

impl PeriodicGraph {
    /// Builds a graph from raw `(i, j, offset)` triples, canonicalizing each
    /// one. Two triples naming the same class are rejected.
    pub fn new<I>(dimension: usize, num_orbits: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Offset)>,
    {
        if dimension == 0 {
            return Err(GraphError::ZeroDimension);
        }
        if num_orbits == 0 {
            return Err(GraphError::NoOrbits);
        }
        let mut classes = BTreeSet::new();
        for (i, j, offset) in edges {
            for index in [i, j] {
                if index >= num_orbits {
                    return Err(GraphError::OrbitOutOfRange { index, num_orbits });
                }
            }
            if offset.len() != dimension {
                return Err(GraphError::OffsetLength { expected: dimension, got: offset.len() });
            }
            let class = canonicalize_edge(i, j, &offset)?;
            if !classes.insert(class.clone()) {
                return Err(GraphError::DuplicateClass(class));
            }
        }
        Ok(PeriodicGraph { dimension, num_orbits, edges: classes.into_iter().collect() })
    }

    pub fn edgeless(dimension: usize, num_orbits: usize) -> Result<Self, GraphError> {
        Self::new(dimension, num_orbits, std::iter::empty())
    }

    /// The Z^2-periodic Lieb lattice with its three-orbit fundamental domain.
    pub fn lieb() -> Self {
        Self::new(
            2,
            3,
            [
                (0, 1, vec![0, 0]),
                (1, 2, vec![0, 0]),
                (0, 1, vec![1, 0]),
                (2, 1, vec![0, 1]),
            ],
        )
        .expect("Lieb lattice is well formed")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_orbits(&self) -> usize {
        self.num_orbits
    }

    /// Edge classes in canonical form, sorted.
    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn quotient(&self) -> QuotientGraph {
        let simple_edges = self
            .edges
            .iter()
            .filter(|c| !c.is_self_orbit())
            .map(|c| (c.from, c.to))
            .collect();
        QuotientGraph {
            num_orbits: self.num_orbits,
            multi_edges: self.edges.clone(),
            simple_edges,
        }
    }

    fn check_subset(&self, subset: &[usize]) -> Result<BTreeSet<usize>, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut set = BTreeSet::new();
        for &u in subset {
            if u >= self.num_orbits {
                return Err(GraphError::OrbitOutOfRange { index: u, num_orbits: self.num_orbits });
            }
            set.insert(u);
        }
        Ok(set)
    }

    /// The support `A(U)`: offsets of edge classes with both ends in `U`,
    /// each class contributing `a` and `-a`.
    pub fn support_of_subset(&self, subset: &[usize]) -> Result<BTreeSet<Offset>, GraphError> {
        let set = self.check_subset(subset)?;
        let mut support = BTreeSet::new();
        for class in &self.edges {
            if set.contains(&class.from) && set.contains(&class.to) {
                support.insert(negated(&class.offset));
                support.insert(class.offset.clone());
            }
        }
        Ok(support)
    }

    /// Connected components of the quotient multigraph, each sorted, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.num_orbits).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for class in &self.edges {
            let (a, b) = (find(&mut parent, class.from), find(&mut parent, class.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..self.num_orbits {
            let root = find(&mut parent, u);
            blocks.entry(root).or_default().push(u);
        }
        let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }

    /// The induced periodic graph on `U`. The returned map sends new orbit
    /// `k` to the original orbit it came from.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<(PeriodicGraph, Vec<usize>), GraphError> {
        let set = self.check_subset(subset)?;
        let index_map: Vec<usize> = set.iter().copied().collect();
        let position: BTreeMap<usize, usize> =
            index_map.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|c| set.contains(&c.from) && set.contains(&c.to))
            .map(|c| (position[&c.from], position[&c.to], c.offset.clone()));
        let graph = PeriodicGraph::new(self.dimension, index_map.len(), edges)?;
        Ok((graph, index_map))
    }

    /// Refits the fundamental domain by moving orbit `u` to `u + a_u`.
    /// Orbits missing from `shifts` stay put.
    pub fn apply_shifts(&self, shifts: &ShiftAssignment) -> PeriodicGraph {
        let zero = vec![0; self.dimension];
        let edges = self.edges.iter().map(|c| {
            let si = shifts.get(&c.from).unwrap_or(&zero);
            let sj = shifts.get(&c.to).unwrap_or(&zero);
            let offset = (0..self.dimension).map(|k| c.offset[k] + si[k] - sj[k]).collect();
            (c.from, c.to, offset)
        });
        PeriodicGraph::new(self.dimension, self.num_orbits, edges)
            .expect("shifting preserves validity")
    }

    /// Tries to refit `component` so that every class inside it has offset 0.
    ///
    /// Shifts are propagated along a BFS spanning tree (`a_v = a_u + offset`);
    /// the component passes iff every class agrees with the tree, i.e. every
    /// cycle of the quotient multigraph has zero net displacement.
    pub fn zero_monodromy_shifts(&self, component: &[usize]) -> Option<ShiftAssignment> {
        let members: BTreeSet<usize> = component.iter().copied().collect();
        let mut adjacency: BTreeMap<usize, Vec<(usize, Offset)>> = BTreeMap::new();
        let inner: Vec<&EdgeClass> = self
            .edges
            .iter()
            .filter(|c| members.contains(&c.from) && members.contains(&c.to))
            .collect();
        for c in &inner {
            adjacency.entry(c.from).or_default().push((c.to, c.offset.clone()));
            adjacency.entry(c.to).or_default().push((c.from, negated(&c.offset)));
        }
        let mut shifts = ShiftAssignment::new();
        for &start in &members {
            if shifts.contains_key(&start) {
                continue;
            }
            shifts.insert(start, vec![0; self.dimension]);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = shifts[&u].clone();
                for (v, a) in adjacency.get(&u).into_iter().flatten() {
                    if !shifts.contains_key(v) {
                        let sv = su.iter().zip(a).map(|(x, y)| x + y).collect();
                        shifts.insert(*v, sv);
                        queue.push_back(*v);
                    }
                }
            }
        }
        let consistent = inner.iter().all(|c| {
            let (si, sj) = (&shifts[&c.from], &shifts[&c.to]);
            (0..self.dimension).all(|k| c.offset[k] == sj[k] - si[k])
        });
        consistent.then_some(shifts)
    }

    /// First quotient component admitting a support-0 refit, with its shifts.
    pub fn find_support0_component(&self) -> Option<(Vec<usize>, ShiftAssignment)> {
        self.components()
            .into_iter()
            .find_map(|c| self.zero_monodromy_shifts(&c).map(|s| (c, s)))
    }

    /// Every component admitting a support-0 refit.
    pub fn support0_components(&self) -> Vec<(Vec<usize>, ShiftAssignment)> {
        self.components()
            .into_iter()
            .filter_map(|c| self.zero_monodromy_shifts(&c).map(|s| (c, s)))
            .collect()
    }

    /// True iff the whole fundamental domain can be refitted to support 0.
    pub fn has_support0_fundamental_domain(&self) -> bool {
        self.components().iter().all(|c| self.zero_monodromy_shifts(c).is_some())
    }

    /// Relabels orbits: new orbit `perm[u]` is old orbit `u`.
    pub fn relabel(&self, perm: &[usize]) -> Result<PeriodicGraph, GraphError> {
        let edges = self.edges.iter().map(|c| (perm[c.from], perm[c.to], c.offset.clone()));
        PeriodicGraph::new(self.dimension, self.num_orbits, edges)
    }
}

/// The quotient multigraph and its simplified simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub num_orbits: usize,
    pub multi_edges: Vec<EdgeClass>,
    /// Pairs `(i, j)` with `i < j` joined by some class.
    pub simple_edges: BTreeSet<(usize, usize)>,
}

impl QuotientGraph {
    fn connected_without(&self, skip: Option<(usize, usize)>) -> bool {
        let mut seen = vec![false; self.num_orbits];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.simple_edges {
                if Some((a, b)) == skip {
                    continue;
                }
                let next = if a == u { b } else if b == u { a } else { continue };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Simple edges whose removal keeps the simple graph connected.
    /// Assumes the simple graph is connected.
    pub fn non_bridges(&self) -> Vec<(usize, usize)> {
        self.simple_edges
            .iter()
            .copied()
            .filter(|&e| self.connected_without(Some(e)))
            .collect()
    }
}
