//! The kinematic associahedron: coordinates `x_i = s_{i,i+1}` for
//! `i = 1..N-1`, constants on nonadjacent pairs inside `{1, ..., N}`, facet
//! inequalities indexed by proper intervals, and the Minkowski-sum
//! realization by dilated simplices.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::rational::{format_rat, sum_rats, Rat};
use crate::roottrees::nested_or_disjoint;
use crate::{Error, Result, SCHEMA};

/// Vertex enumeration bound ((N-1)! orderings).
pub const MAX_ASSOC_N: usize = 7;

/// Associahedron data: the polygon-side parameter `N` and the nonnegative
/// constants `c_ij` on pairs with `j >= i + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocSpec {
    sides: usize,
    constants: BTreeMap<(usize, usize), Rat>,
}

impl AssocSpec {
    /// `pairs` lists `(i, j, c_ij)`; unspecified nonadjacent pairs are zero.
    pub fn new(sides: usize, pairs: &[(usize, usize, Rat)]) -> Result<Self> {
        if sides < 3 {
            return Err(Error::OutOfRange {
                what: "associahedron side parameter",
                value: sides,
                max: usize::MAX,
            });
        }
        let mut constants = BTreeMap::new();
        for (i, j, c) in pairs {
            let (i, j) = (*i, *j);
            if i < 1 || j > sides || j < i + 2 {
                return Err(Error::InvalidLabel(format!(
                    "constant pair ({i},{j}) must satisfy 1 <= i, i+2 <= j <= N"
                )));
            }
            if c < &Rat::zero() {
                return Err(Error::InconsistentInput(format!(
                    "c_{{{i},{j}}} must be nonnegative"
                )));
            }
            constants.insert((i, j), c.clone());
        }
        Ok(Self { sides, constants })
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    /// Ambient coordinate count `N - 1`.
    pub fn dim(&self) -> usize {
        self.sides - 1
    }

    pub fn c(&self, i: usize, j: usize) -> Rat {
        self.constants.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// `c_{[a,b]}`: sum of constants on nonadjacent pairs inside the interval.
    pub fn interval_bound(&self, a: usize, b: usize) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.constants {
            if *i >= a && *j <= b {
                acc += c;
            }
        }
        acc
    }

    /// Bound of the slice equality `x_1 + ... + x_{N-1} = c_{[1,N]}`.
    pub fn total(&self) -> Rat {
        self.interval_bound(1, self.sides)
    }

    /// Facet inequalities: for each interval `[a,b]` with
    /// `2 <= b - a + 1 <= N - 1`, the inequality
    /// `x_a + ... + x_{b-1} >= c_{[a,b]}`.
    pub fn facets(&self) -> Vec<((usize, usize), Rat)> {
        let n = self.sides;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                if b - a + 1 <= n - 1 {
                    out.push(((a, b), self.interval_bound(a, b)));
                }
            }
        }
        out
    }

    fn interval_coordinate_sum(x: &[Rat], a: usize, b: usize) -> Rat {
        sum_rats(x[(a - 1)..(b - 1)].iter())
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if sum_rats(x.iter()) != self.total() {
            return Ok(false);
        }
        Ok(self
            .facets()
            .iter()
            .all(|((a, b), bound)| &Self::interval_coordinate_sum(x, *a, *b) >= bound))
    }

    /// Vertex set via the Minkowski realization: each constant `c_ij`
    /// dilates the simplex on coordinates `{i, ..., j-1}`, and a braid-generic
    /// functional picks one simplex vertex per summand. Scanning all strict
    /// coordinate orderings reaches every vertex of the sum.
    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        let n = self.sides;
        if n > MAX_ASSOC_N {
            return Err(Error::OutOfRange {
                what: "associahedron vertex enumeration size",
                value: n,
                max: MAX_ASSOC_N,
            });
        }
        let dim = self.dim();
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for ordering in (0..dim).permutations(dim) {
            let mut priority = vec![0usize; dim];
            for (rank, &coord) in ordering.iter().enumerate() {
                priority[coord] = dim - rank; // higher = preferred
            }
            let mut v = vec![Rat::zero(); dim];
            for ((i, j), c) in &self.constants {
                let coords = (*i - 1)..(*j - 1); // simplex support, 0-based
                let pick = coords.max_by_key(|&k| priority[k]).expect("nonempty");
                v[pick] += c;
            }
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<Value> {
        let vertices = self.vertices()?;
        Ok(json!({
            "schema": SCHEMA,
            "sides": self.sides,
            "C": self.constants.iter()
                .map(|((i, j), c)| json!({"i": i, "j": j, "c": format_rat(c)}))
                .collect::<Vec<_>>(),
            "vertices": vertices.iter()
                .map(|v| v.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "facets": self.facets().iter()
                .map(|((a, b), bound)| json!({
                    "interval": [a, b],
                    "bound": format_rat(bound),
                }))
                .collect::<Vec<_>>(),
            "equality": { "interval": [1, self.sides], "bound": format_rat(&self.total()) },
        }))
    }

    /// SVG of the pentagon (N = 4 only): three coordinates on the slice plane.
    pub fn to_svg(&self) -> Result<String> {
        if self.sides != 4 {
            return Err(Error::OutOfRange {
                what: "associahedron SVG rendering size",
                value: self.sides,
                max: 4,
            });
        }
        let vertices = self.vertices()?;
        crate::svg::render_slice_polygon(&vertices, "associahedron")
    }
}

/// Checks that the cyclic relabeling `i -> i + 1` of the full particle set
/// `{1, ..., N+1}` permutes the facet index sets among themselves, after
/// eliminating the top label via `s_I = s_{I^c}`.
pub fn cyclic_action_check(sides: usize) -> Result<bool> {
    if !(3..=MAX_ASSOC_N).contains(&sides) {
        return Err(Error::OutOfRange {
            what: "cyclic action check size",
            value: sides,
            max: MAX_ASSOC_N,
        });
    }
    let n = sides;
    let facets: Vec<(usize, usize)> = AssocSpec::new(n, &[])?
        .facets()
        .into_iter()
        .map(|(interval, _)| interval)
        .collect();
    let mut mapped: Vec<(usize, usize)> = facets
        .iter()
        .map(|&(a, b)| {
            if b + 1 <= n {
                (a + 1, b + 1)
            } else {
                // The shifted interval {a+1, ..., N+1} contains the top
                // label; its complement in {1, ..., N+1} is {1, ..., a}.
                (1, a)
            }
        })
        .collect();
    mapped.sort_unstable();
    let mut original = facets;
    original.sort_unstable();
    Ok(mapped == original)
}

/// Active facet intervals of a point (those met with equality).
pub fn active_facets(spec: &AssocSpec, x: &[Rat]) -> Vec<(usize, usize)> {
    spec.facets()
        .into_iter()
        .filter(|((a, b), bound)| {
            sum_rats(x[(a - 1)..(b - 1)].iter()) == *bound
        })
        .map(|(interval, _)| interval)
        .collect()
}

/// True when the interval set is pairwise nested or disjoint.
pub fn intervals_compatible(intervals: &[(usize, usize)]) -> bool {
    intervals
        .iter()
        .tuple_combinations()
        .all(|(a, b)| nested_or_disjoint(*a, *b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::roottrees;

    fn ri(v: i64) -> Rat {
        rat_int(v)
    }

    fn pentagon(c13: i64, c24: i64, c14: i64) -> AssocSpec {
        AssocSpec::new(
            4,
            &[(1, 3, ri(c13)), (2, 4, ri(c24)), (1, 4, ri(c14))],
        )
        .unwrap()
    }

    #[test]
    fn pentagon_facets() {
        for (c13, c24, c14) in [(2, 5, 11), (7, 3, 13), (1, 1, 1)] {
            let a = pentagon(c13, c24, c14);
            let facets = a.facets();
            assert_eq!(facets.len(), 5);
            let expect = vec![
                ((1, 2), ri(0)),
                ((1, 3), ri(c13)),
                ((2, 3), ri(0)),
                ((2, 4), ri(c24)),
                ((3, 4), ri(0)),
            ];
            let mut got = facets.clone();
            got.sort();
            assert_eq!(got, expect);
            assert_eq!(a.total(), ri(c13 + c24 + c14));
        }
    }

    #[test]
    fn facet_count_formula() {
        for n in 3..=7 {
            let a = AssocSpec::new(n, &[]).unwrap();
            assert_eq!(a.facets().len(), n * (n - 1) / 2 - 1);
        }
    }

    #[test]
    fn segment_case() {
        let a = AssocSpec::new(3, &[(1, 3, ri(5))]).unwrap();
        let mut vs = a.vertices().unwrap();
        vs.sort();
        assert_eq!(vs, vec![vec![ri(0), ri(5)], vec![ri(5), ri(0)]]);
        assert!(a.contains(&[ri(2), ri(3)]).unwrap());
        assert!(!a.contains(&[ri(6), ri(-1)]).unwrap());
    }

    #[test]
    fn unit_bounds_count_nonadjacent_pairs() {
        // With all constants 1, the bound of [a,b] counts the nonadjacent
        // pairs inside: binom(len,2) - (len-1).
        let n = 6;
        let pairs: Vec<(usize, usize, Rat)> = (1..=n)
            .flat_map(|i| ((i + 2)..=n).map(move |j| (i, j, rat_int(1))))
            .collect();
        let a = AssocSpec::new(n, &pairs).unwrap();
        for ((lo, hi), bound) in a.facets() {
            let len = (hi - lo + 1) as i64;
            assert_eq!(bound, ri(len * (len - 1) / 2 - (len - 1)));
        }
    }

    #[test]
    fn contains_examples() {
        let a = pentagon(1, 1, 1);
        assert!(a.contains(&[ri(0), ri(1), ri(2)]).unwrap());
        assert!(a.contains(&[ri(1), ri(1), ri(1)]).unwrap());
        assert!(!a.contains(&[ri(3), ri(0), ri(0)]).unwrap());
        assert!(a.contains(&[ri(1), ri(1)]).is_err());
    }

    #[test]
    fn pentagon_vertices_symbolic() {
        for (c13, c24, c14) in [(2i64, 5, 11), (7, 3, 13)] {
            let a = pentagon(c13, c24, c14);
            let mut vs = a.vertices().unwrap();
            vs.sort();
            let mut expect: Vec<Vec<Rat>> = vec![
                vec![ri(0), ri(c13), ri(c24 + c14)],
                vec![ri(0), ri(c13 + c24 + c14), ri(0)],
                vec![ri(c13), ri(0), ri(c24 + c14)],
                vec![ri(c13 + c14), ri(0), ri(c24)],
                vec![ri(c13 + c14), ri(c24), ri(0)],
            ];
            expect.sort();
            assert_eq!(vs, expect);
            for v in &vs {
                assert!(a.contains(v).unwrap());
            }
        }
    }

    #[test]
    fn pentagon_vertices_unit() {
        let a = pentagon(1, 1, 1);
        let mut vs = a.vertices().unwrap();
        vs.sort();
        let mut expect: Vec<Vec<Rat>> = [
            [0, 1, 2],
            [0, 3, 0],
            [1, 0, 2],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|v| v.iter().map(|&k| ri(k)).collect())
        .collect();
        expect.sort();
        assert_eq!(vs, expect);
    }

    #[test]
    fn zero_constants_collapse_to_point() {
        let a = AssocSpec::new(5, &[]).unwrap();
        assert_eq!(a.vertices().unwrap(), vec![vec![ri(0); 4]]);
    }

    #[test]
    fn vertex_count_is_catalan_for_generic_constants() {
        for n in 3..=5usize {
            let pairs: Vec<(usize, usize, Rat)> = (1..=n)
                .flat_map(|i| ((i + 2)..=n).map(move |j| (i, j, rat(7 * i as i64 + j as i64, 3))))
                .collect();
            let a = AssocSpec::new(n, &pairs).unwrap();
            let trees = roottrees::enumerate_trees(n).unwrap();
            assert_eq!(a.vertices().unwrap().len(), trees.len(), "N = {n}");
        }
    }

    #[test]
    fn unit_vertices_flag_triangulations() {
        // At c = 1 each vertex activates exactly N-2 compatible facet
        // intervals, and together with the mandatory edge they form a full
        // interval tree.
        for n in 3..=5usize {
            let pairs: Vec<(usize, usize, Rat)> = (1..=n)
                .flat_map(|i| ((i + 2)..=n).map(move |j| (i, j, rat_int(1))))
                .collect();
            let a = AssocSpec::new(n, &pairs).unwrap();
            let trees: Vec<std::collections::BTreeSet<(usize, usize)>> =
                roottrees::enumerate_trees(n)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.edges().clone())
                    .collect();
            let total = a.total();
            for v in a.vertices().unwrap() {
                for xi in &v {
                    assert!(xi >= &Rat::zero());
                    assert!(xi.denom() == &num_bigint::BigInt::from(1));
                }
                assert_eq!(sum_rats(v.iter()), total);
                let active = active_facets(&a, &v);
                assert_eq!(active.len(), n - 2);
                assert!(intervals_compatible(&active));
                let mut edges: std::collections::BTreeSet<(usize, usize)> =
                    active.into_iter().collect();
                edges.insert((1, n));
                assert!(trees.contains(&edges), "vertex {v:?}");
            }
        }
    }

    #[test]
    fn edges_are_root_directed() {
        for n in 3..=5usize {
            let pairs: Vec<(usize, usize, Rat)> = (1..=n)
                .flat_map(|i| ((i + 2)..=n).map(move |j| (i, j, rat(5 * i as i64 + 2 * j as i64, 2))))
                .collect();
            let a = AssocSpec::new(n, &pairs).unwrap();
            let dim = a.dim();
            let vertex_of = |ordering: &[usize]| -> Vec<Rat> {
                let mut priority = vec![0usize; dim];
                for (rank, &coord) in ordering.iter().enumerate() {
                    priority[coord] = dim - rank;
                }
                let mut v = vec![Rat::zero(); dim];
                for i in 1..=n {
                    for j in (i + 2)..=n {
                        let c = a.c(i, j);
                        let pick = ((i - 1)..(j - 1)).max_by_key(|&k| priority[k]).unwrap();
                        v[pick] += &c;
                    }
                }
                v
            };
            for ordering in (0..dim).permutations(dim) {
                let v1 = vertex_of(&ordering);
                for swap in 0..dim - 1 {
                    let mut other = ordering.clone();
                    other.swap(swap, swap + 1);
                    let v2 = vertex_of(&other);
                    let diff: Vec<Rat> = v1.iter().zip(&v2).map(|(a, b)| a - b).collect();
                    let nonzero: Vec<&Rat> = diff.iter().filter(|d| !d.is_zero()).collect();
                    assert!(nonzero.len() == 2 || nonzero.is_empty(), "diff {diff:?}");
                    if nonzero.len() == 2 {
                        assert!((nonzero[0] + nonzero[1]).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_action_preserves_facets() {
        for n in 3..=6 {
            assert!(cyclic_action_check(n).unwrap(), "N = {n}");
        }
        assert!(cyclic_action_check(2).is_err());
    }

    #[test]
    fn cyclic_action_n4_mapped_list() {
        // The shifted pentagon facets: {12,23,34,123,234} maps to
        // {23,34,45,234,345} = {23,34,123,234,12} after complements.
        let facets = [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)];
        let mapped: Vec<(usize, usize)> = facets
            .iter()
            .map(|&(a, b)| if b + 1 <= 4 { (a + 1, b + 1) } else { (1, a) })
            .collect();
        assert_eq!(mapped, vec![(2, 3), (3, 4), (1, 3), (2, 4), (1, 2)]);
    }

    #[test]
    fn spec_validation() {
        assert!(AssocSpec::new(4, &[(1, 2, ri(1))]).is_err()); // adjacent pair
        assert!(AssocSpec::new(4, &[(1, 5, ri(1))]).is_err()); // out of range
        assert!(AssocSpec::new(4, &[(1, 3, ri(-1))]).is_err()); // negative
        assert!(AssocSpec::new(2, &[]).is_err());
    }

    #[test]
    fn svg_smoke() {
        let a = pentagon(1, 1, 1);
        let svg = a.to_svg().unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 5);
        assert!(AssocSpec::new(5, &[]).unwrap().to_svg().is_err());
    }
}
