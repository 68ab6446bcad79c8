//! Seeded random labelings and random periodic graphs.
//!
//! Every randomized path takes an explicit RNG. Trial `t` of a run with
//! seed `s` uses [`trial_rng`]`(s, t)`, so trials are independent and can
//! be replayed one at a time.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{canonicalize_edge, EdgeClass, PeriodicGraph};
use crate::labeling::Labeling;

pub const NUMERATOR_BOUND: i64 = 10_000;
pub const DENOMINATOR_BOUND: i64 = 100;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `p / q` with `p` uniform in `[-10^4, 10^4]` and `q` uniform in `[1, 100]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let p = rng.gen_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND);
    let q = rng.gen_range(1..=DENOMINATOR_BOUND);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    loop {
        let r = random_rational(rng);
        if r != BigRational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn random_labeling<R: Rng + ?Sized>(graph: &PeriodicGraph, rng: &mut R) -> Labeling {
    let potentials = (0..graph.num_orbits()).map(|_| random_rational(rng)).collect();
    let weights = graph.edges().iter().map(|_| random_nonzero_rational(rng)).collect();
    Labeling::from_vectors(graph, potentials, weights).expect("random labels are complete")
}

/// Labels of order one: potentials in `[-2, 2]`, weights with magnitude in
/// `[1/2, 2]` and random sign. Used by floating-point checks, where the
/// wide range of [`random_labeling`] would make some bands nearly flat.
pub fn random_moderate_labeling<R: Rng + ?Sized>(graph: &PeriodicGraph, rng: &mut R) -> Labeling {
    let hundredths = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(100));
    let potentials = (0..graph.num_orbits()).map(|_| hundredths(rng.gen_range(-200..=200))).collect();
    let weights = graph
        .edges()
        .iter()
        .map(|_| {
            let magnitude = rng.gen_range(50..=200);
            hundredths(if rng.gen_bool(0.5) { magnitude } else { -magnitude })
        })
        .collect();
    Labeling::from_vectors(graph, potentials, weights).expect("random labels are complete")
}

/// Bounds for [`random_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphBounds {
    pub max_dimension: usize,
    pub max_orbits: usize,
    pub max_classes: usize,
}

impl Default for GraphBounds {
    fn default() -> Self {
        GraphBounds { max_dimension: 2, max_orbits: 4, max_classes: 6 }
    }
}

fn random_offset<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(-1..=1)).collect()
}

/// A random graph with offsets in `{-1, 0, 1}^d`.
///
/// With probability 3/4 the generator first lays down a random spanning
/// tree of the quotient, so most instances are connected; the remaining
/// classes are uniform over orbit pairs. Disconnected instances are kept.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, bounds: GraphBounds) -> PeriodicGraph {
    let d = rng.gen_range(1..=bounds.max_dimension.max(1));
    let n = rng.gen_range(1..=bounds.max_orbits.max(1));
    let target = rng.gen_range(0..=bounds.max_classes);
    let mut classes: BTreeSet<EdgeClass> = BTreeSet::new();
    if n > 1 && rng.gen_bool(0.75) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for k in 1..n {
            if classes.len() >= target {
                break;
            }
            let parent = order[rng.gen_range(0..k)];
            let class = canonicalize_edge(parent, order[k], &random_offset(rng, d)).expect("distinct orbits");
            classes.insert(class);
        }
    }
    let mut attempts = 0;
    while classes.len() < target && attempts < 100 {
        attempts += 1;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if let Ok(class) = canonicalize_edge(i, j, &random_offset(rng, d)) {
            classes.insert(class);
        }
    }
    PeriodicGraph::new(d, n, classes.into_iter().map(|c| (c.from, c.to, c.offset)))
        .expect("generated classes are canonical and distinct")
}

/// `count` graphs, graph `k` drawn from `trial_rng(seed, k)`.
pub fn random_corpus(seed: u64, count: usize, bounds: GraphBounds) -> Vec<PeriodicGraph> {
    (0..count).map(|k| random_graph(&mut trial_rng(seed, k as u64), bounds)).collect()
}

/// A labeled graph whose simplified quotient is a tree, together with a
/// subset `U` of `n - 1` orbits that has support 0.
#[derive(Debug, Clone)]
pub struct TreeInstance {
    pub graph: PeriodicGraph,
    pub labeling: Labeling,
    pub subset: Vec<usize>,
    pub point: Vec<BigRational>,
}

/// Random tree-quotient instance for the cut-edge resultant. Classes inside
/// `U` have offset 0; the excluded orbit may be joined to a neighbour by up
/// to two parallel classes with arbitrary offsets.
pub fn random_tree_instance<R: Rng + ?Sized>(rng: &mut R, max_dimension: usize, max_orbits: usize) -> TreeInstance {
    let d = rng.gen_range(1..=max_dimension.max(1));
    let n = rng.gen_range(2..=max_orbits.max(2));
    let excluded = rng.gen_range(0..n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut classes: BTreeSet<EdgeClass> = BTreeSet::new();
    for k in 1..n {
        let (a, b) = (order[rng.gen_range(0..k)], order[k]);
        if a == excluded || b == excluded {
            let parallel = rng.gen_range(1..=2);
            for _ in 0..parallel {
                classes.insert(canonicalize_edge(a, b, &random_offset(rng, d)).expect("distinct orbits"));
            }
        } else {
            classes.insert(canonicalize_edge(a, b, &vec![0; d]).expect("distinct orbits"));
        }
    }
    let graph = PeriodicGraph::new(d, n, classes.into_iter().map(|c| (c.from, c.to, c.offset)))
        .expect("tree classes are distinct");
    let labeling = random_labeling(&graph, rng);
    let subset = (0..n).filter(|&u| u != excluded).collect();
    let point = (0..d)
        .map(|_| {
            let p = loop {
                let p = rng.gen_range(-9i64..=9);
                if p != 0 {
                    break p;
                }
            };
            BigRational::new(BigInt::from(p), BigInt::from(rng.gen_range(1i64..=9)))
        })
        .collect();
    TreeInstance { graph, labeling, subset, point }
}
