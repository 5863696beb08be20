//! The kinematic space of Mandelstam invariants.
//!
//! A point of the space for `n` particles is a symmetric `(n+2) x (n+2)`
//! rational matrix with zero diagonal and every row summing to zero. The two
//! auxiliary labels `a` and `b` sit at internal indices `0` and `n+1`;
//! particle labels `1..=n` keep their own indices. All external I/O uses the
//! string labels `"a", "1", ..., "n", "b"`.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::rational::{format_rat, parse_rat, sum_rats, Rat};
use crate::{Error, Result, SCHEMA};

/// Internal index of the auxiliary label `a`.
pub const LABEL_A: usize = 0;

/// Internal index of the auxiliary label `b` for a given particle count.
pub fn label_b(n: usize) -> usize {
    n + 1
}

/// Parses `"a"`, `"b"`, or a particle number into an internal index.
pub fn parse_label(s: &str, n: usize) -> Result<usize> {
    match s {
        "a" => Ok(LABEL_A),
        "b" => Ok(label_b(n)),
        _ => {
            let k: usize = s.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
            if (1..=n).contains(&k) {
                Ok(k)
            } else {
                Err(Error::InvalidLabel(s.to_string()))
            }
        }
    }
}

/// Inverse of [`parse_label`].
pub fn label_name(idx: usize, n: usize) -> String {
    if idx == LABEL_A {
        "a".to_string()
    } else if idx == label_b(n) {
        "b".to_string()
    } else {
        idx.to_string()
    }
}

/// Sum of entries `m[i][j]` over unordered pairs `{i, j}` inside `subset`.
pub fn subset_sum(matrix: &[Vec<Rat>], subset: &[usize]) -> Rat {
    let mut acc = Rat::zero();
    for (pos, &i) in subset.iter().enumerate() {
        for &j in &subset[pos + 1..] {
            acc += &matrix[i][j];
        }
    }
    acc
}

/// Sum of entries over the product set `j1 x j2`.
pub fn split_sum(matrix: &[Vec<Rat>], j1: &[usize], j2: &[usize]) -> Rat {
    let mut acc = Rat::zero();
    for &i in j1 {
        for &j in j2 {
            acc += &matrix[i][j];
        }
    }
    acc
}

/// A point of the kinematic space: symmetric, zero diagonal, zero row sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinematicPoint {
    n: usize,
    entries: Vec<Vec<Rat>>,
}

impl KinematicPoint {
    /// Validates a full matrix against the defining conditions.
    pub fn from_entries(n: usize, entries: Vec<Vec<Rat>>) -> Result<Self> {
        let size = n + 2;
        if entries.len() != size || entries.iter().any(|row| row.len() != size) {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: entries.len(),
            });
        }
        for i in 0..size {
            if !entries[i][i].is_zero() {
                return Err(Error::InconsistentInput(format!(
                    "nonzero diagonal entry at {}",
                    label_name(i, n)
                )));
            }
            for j in 0..size {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InconsistentInput(format!(
                        "asymmetric at ({}, {})",
                        label_name(i, n),
                        label_name(j, n)
                    )));
                }
            }
            if !sum_rats(entries[i].iter()).is_zero() {
                return Err(Error::InconsistentInput(format!(
                    "row {} does not sum to zero",
                    label_name(i, n)
                )));
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds the unique point extending the free entries `s_ij` (pairs inside
    /// `1..=n`, lexicographic order) and `s_ai`.
    ///
    /// The `b`-column and `s_ab` are forced by the row sums of rows `1..=n`
    /// and `a`. Row `b` then sums to `-2 * s_{a1...n}`, so the inputs admit a
    /// valid extension exactly when the subset sum over all labels but `b`
    /// vanishes; anything else is rejected.
    pub fn complete(n: usize, s_inner: &[Rat], s_a: &[Rat]) -> Result<Self> {
        let inner_len = n * (n - 1) / 2;
        if s_inner.len() != inner_len {
            return Err(Error::DimensionMismatch {
                expected: inner_len,
                got: s_inner.len(),
            });
        }
        if s_a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s_a.len(),
            });
        }
        let size = n + 2;
        let b = label_b(n);
        let mut m = vec![vec![Rat::zero(); size]; size];
        let mut it = s_inner.iter();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let v = it.next().unwrap().clone();
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        for i in 1..=n {
            m[LABEL_A][i] = s_a[i - 1].clone();
            m[i][LABEL_A] = s_a[i - 1].clone();
        }
        for i in 1..=n {
            let s_ib = -sum_rats(m[i][..b].iter());
            m[i][b] = s_ib.clone();
            m[b][i] = s_ib;
        }
        let s_ab = -sum_rats(m[LABEL_A][..b].iter());
        m[LABEL_A][b] = s_ab.clone();
        m[b][LABEL_A] = s_ab;
        if !sum_rats(m[b].iter()).is_zero() {
            return Err(Error::InconsistentInput(
                "inputs violate the relation s_{a1...n} = 0; \
                 solve one s_ai (or s_ij) from the others"
                    .to_string(),
            ));
        }
        Ok(Self { n, entries: m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 2
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// `s_J`: sum over unordered pairs inside `J`. Zero for singletons.
    pub fn s_subset(&self, subset: &[usize]) -> Result<Rat> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(subset_sum(&self.entries, subset))
    }

    /// `s_{J1|J2}`: sum over the product of two disjoint nonempty subsets.
    pub fn s_split(&self, j1: &[usize], j2: &[usize]) -> Result<Rat> {
        if j1.is_empty() || j2.is_empty() {
            return Err(Error::EmptySubset);
        }
        if j1.iter().any(|i| j2.contains(i)) {
            return Err(Error::OverlappingSubsets);
        }
        Ok(split_sum(&self.entries, j1, j2))
    }

    /// `s_{a12...n} = 0`, the linear relation that holds identically on the
    /// kinematic space.
    pub fn check_mass_identity(&self) -> bool {
        let all_but_b: Vec<usize> = (0..=self.n).collect();
        subset_sum(&self.entries, &all_but_b).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let n = self.n;
        json!({
            "schema": SCHEMA,
            "n": n,
            "labels": (0..self.size()).map(|i| label_name(i, n)).collect::<Vec<_>>(),
            "entries": self.entries.iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing n".to_string()))? as usize;
        let rows = v["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing entries".to_string()))?;
        let entries = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("entries must be arrays".to_string()))?
                    .iter()
                    .map(|cell| {
                        parse_rat(
                            cell.as_str()
                                .ok_or_else(|| Error::Parse("rationals are strings".to_string()))?,
                        )
                    })
                    .collect::<Result<Vec<Rat>>>()
            })
            .collect::<Result<Vec<Vec<Rat>>>>()?;
        Self::from_entries(n, entries)
    }
}

/// The nonnegative symmetric constants `c_ij` that dilate the root segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantMatrix {
    n: usize,
    entries: Vec<Vec<Rat>>,
}

impl ConstantMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![vec![Rat::zero(); n]; n],
        }
    }

    /// Builds from `(i, j, c_ij)` triples with 1-based labels; unspecified
    /// pairs stay zero.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut m = Self::zero(n);
        for (i, j, c) in pairs {
            let (i, j) = (*i, *j);
            if i == j || i < 1 || j < 1 || i > n || j > n {
                return Err(Error::InvalidLabel(format!("({i},{j})")));
            }
            if c < &Rat::zero() {
                return Err(Error::InconsistentInput(format!(
                    "c_{{{i},{j}}} must be nonnegative"
                )));
            }
            m.entries[i - 1][j - 1] = c.clone();
            m.entries[j - 1][i - 1] = c.clone();
        }
        Ok(m)
    }

    /// Constants for all pairs `i < j`, lexicographic: `c_12, c_13, ..., c_{n-1,n}`.
    pub fn from_upper(n: usize, upper: &[Rat]) -> Result<Self> {
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: upper.len(),
            });
        }
        let mut pairs = Vec::with_capacity(expected);
        let mut it = upper.iter();
        for i in 1..=n {
            for j in (i + 1)..=n {
                pairs.push((i, j, it.next().unwrap().clone()));
            }
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_ij` with 1-based labels.
    pub fn c(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i - 1][j - 1]
    }

    /// `c_J = sum of c_ij over pairs inside J` (1-based labels; 0 for singletons).
    pub fn c_subset(&self, subset: &[usize]) -> Rat {
        let mut acc = Rat::zero();
        for (pos, &i) in subset.iter().enumerate() {
            for &j in &subset[pos + 1..] {
                acc += self.c(i, j);
            }
        }
        acc
    }

    /// `c_{J1|J2}` over the product of two disjoint label sets.
    pub fn c_split(&self, j1: &[usize], j2: &[usize]) -> Rat {
        let mut acc = Rat::zero();
        for &i in j1 {
            for &j in j2 {
                acc += self.c(i, j);
            }
        }
        acc
    }

    /// Table of `c_J` for every label subset, indexed by bitmask
    /// (bit `k` set means label `k+1` is in the subset).
    pub fn subset_totals(&self) -> Vec<Rat> {
        let n = self.n;
        let mut table = vec![Rat::zero(); 1 << n];
        for mask in 1usize..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << low);
            let mut v = table[rest].clone();
            let mut bits = rest;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                v += self.c(low + 1, j + 1);
                bits &= bits - 1;
            }
            table[mask] = v;
        }
        table
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "n": self.n,
            "c": self.entries.iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// A point of the nearest-neighbor subspace: only adjacent invariants
/// `s_{i,i+1}` among the first `n-1` labels are free, with a massive `n`-th
/// particle absorbing momentum conservation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestNeighborPoint {
    n: usize,
    adjacent: Vec<Rat>,
}

impl NearestNeighborPoint {
    /// `adjacent = (s_12, s_23, ..., s_{n-2,n-1})`, so `n = adjacent.len() + 2`.
    pub fn new(adjacent: Vec<Rat>) -> Result<Self> {
        if adjacent.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self {
            n: adjacent.len() + 2,
            adjacent,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self) -> &[Rat] {
        &self.adjacent
    }

    /// `s_{i,i+1}` for `i` in `1..=n-2`.
    pub fn s_adj(&self, i: usize) -> &Rat {
        &self.adjacent[i - 1]
    }

    /// The full symmetric `n x n` matrix: zeros beyond nearest neighbors,
    /// `s_in = -sum_j s_ij`, and `s_nn = s_{12...n-1}` (the massive particle).
    pub fn embed(&self) -> Vec<Vec<Rat>> {
        let n = self.n;
        let mut m = vec![vec![Rat::zero(); n]; n];
        for i in 1..=(n - 2) {
            let v = self.s_adj(i).clone();
            m[i - 1][i] = v.clone();
            m[i][i - 1] = v;
        }
        for i in 0..(n - 1) {
            let s_in = -sum_rats(m[i][..n - 1].iter());
            m[i][n - 1] = s_in.clone();
            m[n - 1][i] = s_in;
        }
        m[n - 1][n - 1] = sum_rats(self.adjacent.iter());
        m
    }
}

/// Checks a symmetric `n x n` matrix against the nearest-neighbor subspace
/// conditions (zero diagonal among massless labels, no non-adjacent
/// couplings, momentum-conservation last column, massive last diagonal).
pub fn validate_nearest_neighbor(matrix: &[Vec<Rat>]) -> bool {
    let n = matrix.len();
    if n < 3 || matrix.iter().any(|row| row.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if matrix[i][j] != matrix[j][i] {
                return false;
            }
        }
    }
    for i in 0..(n - 1) {
        if !matrix[i][i].is_zero() {
            return false;
        }
        for j in 0..(n - 1) {
            if i.abs_diff(j) > 1 && !matrix[i][j].is_zero() {
                return false;
            }
        }
        if matrix[i][n - 1] != -sum_rats(matrix[i][..n - 1].iter()) {
            return false;
        }
    }
    let inner: Vec<usize> = (0..n - 1).collect();
    matrix[n - 1][n - 1] == subset_sum(matrix, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn ri(n: i64) -> Rat {
        rat_int(n)
    }

    #[test]
    fn zero_point_is_valid() {
        let p = KinematicPoint::complete(3, &vec![ri(0); 3], &vec![ri(0); 3]).unwrap();
        assert!(p.entries().iter().flatten().all(|e| e.is_zero()));
        assert!(p.check_mass_identity());
    }

    #[test]
    fn complete_solves_row_sums() {
        // s12, s13, s23 = -2, -3, -1 and s_a = (0, 2, 4); then s_1b = 5.
        let p = KinematicPoint::complete(3, &[ri(-2), ri(-3), ri(-1)], &[ri(0), ri(2), ri(4)])
            .unwrap();
        assert_eq!(p.entry(1, label_b(3)), &ri(5));
        for i in 0..p.size() {
            assert!(sum_rats(p.entries()[i].iter()).is_zero());
        }
        assert!(p.check_mass_identity());
    }

    #[test]
    fn complete_rejects_inconsistent_inputs() {
        // s_{a123} = 1 here, so no valid extension exists.
        let err = KinematicPoint::complete(3, &vec![ri(0); 3], &[ri(1), ri(0), ri(0)]).unwrap_err();
        assert!(matches!(err, Error::InconsistentInput(_)));
    }

    #[test]
    fn free_input_count_is_dim_plus_one() {
        // The chart {s_ij} U {s_ai} has one linear relation, so it carries
        // dim K^n + 1 = (n+2)(n-1)/2 + 1 coordinates.
        for n in 2..=6usize {
            let inputs = n * (n - 1) / 2 + n;
            let dim = (n + 2) * (n - 1) / 2;
            assert_eq!(inputs, dim + 1);
        }
    }

    #[test]
    fn subset_sums() {
        let p = KinematicPoint::complete(3, &[ri(-2), ri(-3), ri(-1)], &[ri(0), ri(2), ri(4)])
            .unwrap();
        assert_eq!(p.s_subset(&[2]).unwrap(), ri(0));
        let all: Vec<usize> = (0..p.size()).collect();
        assert_eq!(p.s_subset(&all).unwrap(), ri(0));
        assert!(p.s_subset(&[]).is_err());
        // s_{a|123} with s_a = (0,2,4)
        assert_eq!(p.s_split(&[LABEL_A], &[1, 2, 3]).unwrap(), ri(6));
        assert_eq!(p.s_split(&[1], &[2]).unwrap(), ri(-2));
        assert!(p.s_split(&[1], &[1, 2]).is_err());
        assert!(p.s_split(&[], &[1]).is_err());
    }

    #[test]
    fn split_additivity() {
        let p = KinematicPoint::complete(3, &[ri(-2), ri(-3), ri(-1)], &[ri(0), ri(2), ri(4)])
            .unwrap();
        let j1 = [LABEL_A, 1];
        let j2 = [2, 3];
        let union = [LABEL_A, 1, 2, 3];
        let lhs = p.s_subset(&union).unwrap();
        let rhs = p.s_subset(&j1).unwrap() + p.s_subset(&j2).unwrap() + p.s_split(&j1, &j2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mass_identity_and_additivity_on_random_points() {
        use rand::Rng;
        let mut rng = crate::sampling::rng(101);
        for _ in 0..100 {
            let n = rng.gen_range(2..=5usize);
            let p = crate::sampling::random_kinematic_point(n, &mut rng);
            assert!(p.check_mass_identity());
            // Random disjoint split of a random subset.
            let size = n + 2;
            let mut j1 = Vec::new();
            let mut j2 = Vec::new();
            for idx in 0..size {
                match rng.gen_range(0..3) {
                    0 => j1.push(idx),
                    1 => j2.push(idx),
                    _ => {}
                }
            }
            if j1.is_empty() || j2.is_empty() {
                continue;
            }
            let union: Vec<usize> = j1.iter().chain(&j2).copied().collect();
            let lhs = p.s_subset(&union).unwrap();
            let rhs = p.s_subset(&j1).unwrap()
                + p.s_subset(&j2).unwrap()
                + p.s_split(&j1, &j2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn complement_symmetry_small_n() {
        for n in 2..=5usize {
            let p = crate::sampling::random_kinematic_point(n, &mut crate::sampling::rng(n as u64));
            let size = n + 2;
            for mask in 1u32..(1 << size) - 1 {
                let j: Vec<usize> = (0..size).filter(|i| mask & (1 << i) != 0).collect();
                let jc: Vec<usize> = (0..size).filter(|i| mask & (1 << i) == 0).collect();
                assert_eq!(p.s_subset(&j).unwrap(), p.s_subset(&jc).unwrap());
            }
        }
    }

    #[test]
    fn validation_rejects_broken_row() {
        let p = KinematicPoint::complete(3, &[ri(1), ri(0), ri(0)], &[ri(0), ri(0), ri(-1)])
            .unwrap();
        let mut entries = p.entries().to_vec();
        entries[1][2] = ri(7);
        entries[2][1] = ri(7);
        assert!(KinematicPoint::from_entries(3, entries).is_err());
    }

    #[test]
    fn labels_round_trip() {
        let n = 4;
        for idx in 0..n + 2 {
            assert_eq!(parse_label(&label_name(idx, n), n).unwrap(), idx);
        }
        assert!(parse_label("5", 4).is_err());
        assert!(parse_label("c", 4).is_err());
        assert!(parse_label("0", 4).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = KinematicPoint::complete(3, &[ri(-2), ri(-3), ri(-1)], &[ri(0), ri(2), ri(4)])
            .unwrap();
        let back = KinematicPoint::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn constant_matrix_subset_totals() {
        let d = ConstantMatrix::from_pairs(
            3,
            &[(1, 2, ri(2)), (2, 3, ri(1)), (1, 3, ri(3))],
        )
        .unwrap();
        assert_eq!(d.c_subset(&[1, 2, 3]), ri(6));
        assert_eq!(d.c_subset(&[2]), ri(0));
        assert_eq!(d.c_split(&[1, 2], &[3]), ri(4));
        let table = d.subset_totals();
        assert_eq!(table[0b111], ri(6));
        assert_eq!(table[0b011], ri(2));
        assert_eq!(table[0b110], ri(1));
        assert_eq!(table[0b101], ri(3));
        assert!(ConstantMatrix::from_pairs(3, &[(1, 1, ri(1))]).is_err());
        assert!(ConstantMatrix::from_pairs(3, &[(1, 2, ri(-1))]).is_err());
    }

    #[test]
    fn embed_x6_pattern() {
        let s = NearestNeighborPoint::new(vec![ri(1), ri(1), ri(1), ri(1)]).unwrap();
        let m = s.embed();
        assert_eq!(m[1][5], ri(-2)); // -(s12 + s23)
        assert_eq!(m[0][2], ri(0));
        assert_eq!(m[5][5], ri(4));
        assert!(validate_nearest_neighbor(&m));
        let inner: Vec<usize> = (0..3).collect();
        assert_eq!(subset_sum(&m, &inner), ri(2)); // s12 + s13 + s23 = 1 + 0 + 1
    }

    #[test]
    fn embed_x4_derived_values() {
        let s = NearestNeighborPoint::new(vec![ri(1), ri(2)]).unwrap();
        let m = s.embed();
        assert_eq!(m[0][3], ri(-1));
        assert_eq!(m[1][3], ri(-3));
        assert_eq!(m[2][3], ri(-2));
        assert_eq!(m[3][3], ri(3));
        assert!(validate_nearest_neighbor(&m));
    }

    #[test]
    fn embed_zero_point() {
        let s = NearestNeighborPoint::new(vec![ri(0), ri(0)]).unwrap();
        assert!(s.embed().iter().flatten().all(|e| e.is_zero()));
    }
}
