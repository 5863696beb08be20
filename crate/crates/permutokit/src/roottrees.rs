//! Tree triangulation of the standard root cone
//! `<e_1 - e_2, ..., e_{m-1} - e_m>_+`.
//!
//! Trees are stored as sets of interval edges `(i, j)` (meaning the interval
//! `{i, ..., j}` and the root vector `e_i - e_j`), pairwise nested or
//! disjoint, always containing the mandatory edge `(1, m)`. Full trees have
//! `m - 1` edges and index the Catalan-many top-dimensional cones; partial
//! trees index everything else.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::linalg::solve_columns;
use crate::rational::Rat;
use crate::{Error, Result};

pub const MAX_TREE_M: usize = 10;
pub const MAX_PARTIAL_M: usize = 9;

/// Two interval edges are compatible when one contains the other or they are
/// disjoint as integer ranges. Sharing a single endpoint without nesting
/// (like (1,2) and (2,3)) counts as crossing.
pub fn nested_or_disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let a_in_b = b.0 <= a.0 && a.1 <= b.1;
    let b_in_a = a.0 <= b.0 && b.1 <= a.1;
    disjoint || a_in_b || b_in_a
}

/// A maximal tree: `m - 1` pairwise-compatible interval edges with `(1, m)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntervalTree {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Any pairwise-compatible edge subset containing `(1, m)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialTree {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

fn check_edges(m: usize, edges: &BTreeSet<(usize, usize)>) -> Result<()> {
    if !edges.contains(&(1, m)) {
        return Err(Error::InconsistentInput(format!(
            "missing mandatory edge (1, {m})"
        )));
    }
    for &(i, j) in edges {
        if i < 1 || j > m || i >= j {
            return Err(Error::InconsistentInput(format!("bad edge ({i}, {j})")));
        }
    }
    let list: Vec<_> = edges.iter().copied().collect();
    for (pos, &a) in list.iter().enumerate() {
        for &b in &list[pos + 1..] {
            if !nested_or_disjoint(a, b) {
                return Err(Error::InconsistentInput(format!(
                    "edges {a:?} and {b:?} cross"
                )));
            }
        }
    }
    Ok(())
}

impl IntervalTree {
    pub fn new(m: usize, edges: BTreeSet<(usize, usize)>) -> Result<Self> {
        check_edges(m, &edges)?;
        if edges.len() != m - 1 {
            return Err(Error::InconsistentInput(format!(
                "a full tree on {m} leaves has {} edges, got {}",
                m - 1,
                edges.len()
            )));
        }
        Ok(Self { m, edges })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn cone(&self) -> SimplicialCone {
        SimplicialCone::new(self.m, self.edges.iter().copied().collect()).expect("tree is valid")
    }

    pub fn as_partial(&self) -> PartialTree {
        PartialTree {
            m: self.m,
            edges: self.edges.clone(),
        }
    }
}

impl PartialTree {
    pub fn new(m: usize, edges: BTreeSet<(usize, usize)>) -> Result<Self> {
        check_edges(m, &edges)?;
        Ok(Self { m, edges })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cone(&self) -> SimplicialCone {
        SimplicialCone::new(self.m, self.edges.iter().copied().collect()).expect("valid edges")
    }
}

/// All full trees, by recursive interval splitting (each split of the root
/// interval produces the Catalan recursion), sorted canonically.
pub fn enumerate_trees(m: usize) -> Result<Vec<IntervalTree>> {
    if !(2..=MAX_TREE_M).contains(&m) {
        return Err(Error::OutOfRange {
            what: "tree enumeration leaf count",
            value: m,
            max: MAX_TREE_M,
        });
    }
    fn gen(lo: usize, hi: usize) -> Vec<BTreeSet<(usize, usize)>> {
        if lo == hi {
            return vec![BTreeSet::new()];
        }
        let mut out = Vec::new();
        for split in lo..hi {
            for left in gen(lo, split) {
                for right in gen(split + 1, hi) {
                    let mut edges = left.clone();
                    edges.extend(right.iter().copied());
                    edges.insert((lo, hi));
                    out.push(edges);
                }
            }
        }
        out
    }
    let mut trees: Vec<IntervalTree> = gen(1, m)
        .into_iter()
        .map(|edges| IntervalTree::new(m, edges).expect("construction yields valid trees"))
        .collect();
    trees.sort();
    Ok(trees)
}

/// All partial trees, by backtracking over the non-mandatory candidate edges
/// in lexicographic order. Includes the bare `{(1, m)}`.
pub fn enumerate_partial_trees(m: usize) -> Result<Vec<PartialTree>> {
    if !(2..=MAX_PARTIAL_M).contains(&m) {
        return Err(Error::OutOfRange {
            what: "partial tree enumeration leaf count",
            value: m,
            max: MAX_PARTIAL_M,
        });
    }
    let candidates: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| ((i + 1)..=m).map(move |j| (i, j)))
        .filter(|&e| e != (1, m))
        .collect();
    let mut out: Vec<PartialTree> = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn recurse(
        m: usize,
        candidates: &[(usize, usize)],
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<PartialTree>,
    ) {
        let mut edges: BTreeSet<(usize, usize)> = chosen.iter().copied().collect();
        edges.insert((1, m));
        out.push(PartialTree { m, edges });
        for idx in from..candidates.len() {
            let e = candidates[idx];
            if chosen.iter().all(|&c| nested_or_disjoint(c, e)) {
                chosen.push(e);
                recurse(m, candidates, idx + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    recurse(m, &candidates, 0, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

/// A simplicial cone spanned by root vectors `e_i - e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    dim: usize,
    generators: Vec<(usize, usize)>,
}

/// Result of a cone membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMembership {
    pub member: bool,
    pub interior: bool,
    pub coefficients: Option<Vec<Rat>>,
}

impl SimplicialCone {
    pub fn new(dim: usize, generators: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &generators {
            if i < 1 || j > dim || i >= j {
                return Err(Error::InconsistentInput(format!(
                    "bad generator ({i}, {j}) for ambient dimension {dim}"
                )));
            }
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn generator_vectors(&self) -> Vec<Vec<Rat>> {
        self.generators
            .iter()
            .map(|&(i, j)| {
                let mut v = vec![Rat::zero(); self.dim];
                v[i - 1] = Rat::from_integer(1.into());
                v[j - 1] = Rat::from_integer((-1).into());
                v
            })
            .collect()
    }

    /// Exact membership: solves for the unique generator coefficients and
    /// checks signs. A point outside the span is simply not a member.
    pub fn contains(&self, v: &[Rat]) -> Result<ConeMembership> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let cols = self.generator_vectors();
        match solve_columns(&cols, v)? {
            None => Ok(ConeMembership {
                member: false,
                interior: false,
                coefficients: None,
            }),
            Some(t) => {
                let member = t.iter().all(|c| c >= &Rat::zero());
                let interior = member && t.iter().all(|c| c > &Rat::zero());
                Ok(ConeMembership {
                    member,
                    interior,
                    coefficients: Some(t),
                })
            }
        }
    }
}

/// Facet index intervals of the associahedron face dual to a partial tree:
/// each non-mandatory edge `(i, j)` names the facet interval `[i, j]`. The
/// bare tree maps to the empty set (the whole associahedron).
pub fn tree_to_assoc_face(tree: &PartialTree) -> Vec<(usize, usize)> {
    tree.edges()
        .iter()
        .copied()
        .filter(|&e| e != (1, tree.m()))
        .collect()
}
