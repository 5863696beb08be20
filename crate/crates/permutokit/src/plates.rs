//! Translated permutohedral cones ("plates") indexed by ordered set
//! partitions, and the alternating sum that assembles the zonotope indicator
//! out of them.
//!
//! In slice coordinates `x_i = s_ai`, the plate of an ordered set partition
//! `(S_1, ..., S_k)` is the closed cone cut out by the flag
//! `x_{S_1 u ... u S_j} >= c_{S_1 u ... u S_j}` for `j < k` together with the
//! slice equality `x_{1...n} = c_{1...n}`.

use num_traits::Zero;

use crate::kinematics::ConstantMatrix;
use crate::rational::{sum_rats, Rat};
use crate::{Error, Result};

/// Largest ground-set size for which ordered set partitions are materialized
/// (Fubini numbers grow too fast beyond this).
pub const MAX_PARTITION_N: usize = 8;

/// An ordered list of disjoint nonempty blocks covering `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InconsistentInput("empty block".to_string()));
            }
            for &e in block {
                if e < 1 || e > n || seen[e] {
                    return Err(Error::InconsistentInput(format!(
                        "bad or repeated element {e}"
                    )));
                }
                seen[e] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::InconsistentInput(
                "blocks do not cover the ground set".to_string(),
            ));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Self { n, blocks })
    }

    /// Singleton blocks in the order given by `sigma`.
    pub fn from_permutation(sigma: &[usize]) -> Self {
        Self {
            n: sigma.len(),
            blocks: sigma.iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Bitmasks of the cumulative unions `S_1 u ... u S_j`, `j = 1..=k`.
    pub fn prefix_masks(&self) -> Vec<usize> {
        let mut acc = 0usize;
        self.blocks
            .iter()
            .map(|block| {
                for &e in block {
                    acc |= 1 << (e - 1);
                }
                acc
            })
            .collect()
    }
}

/// All ordered set partitions of `{1, ..., n}`, sorted by block count and
/// then lexicographically on the block lists. The count is the n-th Fubini
/// number.
pub fn enumerate_ordered_set_partitions(n: usize) -> Result<Vec<OrderedSetPartition>> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::OutOfRange {
            what: "ordered set partition ground-set size",
            value: n,
            max: MAX_PARTITION_N,
        });
    }
    let full = (1usize << n) - 1;
    let mut out: Vec<OrderedSetPartition> = Vec::new();
    let mut stack: Vec<Vec<usize>> = Vec::new();
    fn recurse(
        n: usize,
        remaining: usize,
        stack: &mut Vec<Vec<usize>>,
        out: &mut Vec<OrderedSetPartition>,
    ) {
        if remaining == 0 {
            out.push(OrderedSetPartition {
                n,
                blocks: stack.clone(),
            });
            return;
        }
        // Iterate over nonempty submasks of `remaining` as the next block.
        let mut sub = remaining;
        loop {
            let block: Vec<usize> = (0..n).filter(|i| sub & (1 << i) != 0).map(|i| i + 1).collect();
            stack.push(block);
            recurse(n, remaining & !sub, stack, out);
            stack.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & remaining;
            if sub == 0 {
                break;
            }
        }
    }
    recurse(n, full, &mut stack, &mut out);
    out.sort_by(|a, b| (a.len(), &a.blocks).cmp(&(b.len(), &b.blocks)));
    Ok(out)
}

/// A plate: the cone of an ordered set partition translated by the constants.
#[derive(Debug, Clone)]
pub struct Plate<'a> {
    pub partition: &'a OrderedSetPartition,
    pub constants: &'a ConstantMatrix,
}

impl Plate<'_> {
    /// Closed-cone membership of a slice point (boundary counts as inside).
    pub fn indicator(&self, x: &[Rat]) -> Result<bool> {
        let n = self.partition.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let c_table = self.constants.subset_totals();
        Ok(plate_indicator_with_tables(
            self.partition,
            &subset_coordinate_sums(x),
            &c_table,
        ))
    }
}

/// Coordinate subset sums `x_J` for every bitmask `J`.
pub fn subset_coordinate_sums(x: &[Rat]) -> Vec<Rat> {
    let n = x.len();
    let mut table = vec![Rat::zero(); 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        table[mask] = &table[mask & !(1 << low)] + &x[low];
    }
    table
}

/// Flag evaluation against precomputed subset tables.
pub fn plate_indicator_with_tables(
    partition: &OrderedSetPartition,
    x_table: &[Rat],
    c_table: &[Rat],
) -> bool {
    let masks = partition.prefix_masks();
    let k = masks.len();
    // The final flag line is the slice equality; the others are inequalities.
    for (j, &mask) in masks.iter().enumerate() {
        if j + 1 == k {
            if x_table[mask] != c_table[mask] {
                return false;
            }
        } else if x_table[mask] < c_table[mask] {
            return false;
        }
    }
    true
}

/// Translation vector of the plate of `sigma`: position `j` carries
/// `d_j = sum of c_{sigma_i, sigma_j} over i < j`.
pub fn translated_plate_params(constants: &ConstantMatrix, sigma: &[usize]) -> Vec<Rat> {
    (0..sigma.len())
        .map(|j| sum_rats((0..j).map(|i| constants.c(sigma[i], sigma[j]))))
        .collect()
}

/// The signed sum of plate indicators over all ordered set partitions,
/// `sum_T (-1)^(n - len(T)) [x in plate(T)]`. By the zonotopal alternating-sum
/// identity this reproduces the zonotope indicator on slice points.
pub fn alternating_sum_indicator(constants: &ConstantMatrix, x: &[Rat]) -> Result<i64> {
    let n = constants.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let partitions = enumerate_ordered_set_partitions(n)?;
    let x_table = subset_coordinate_sums(x);
    let c_table = constants.subset_totals();
    let mut total = 0i64;
    for p in &partitions {
        if plate_indicator_with_tables(p, &x_table, &c_table) {
            let sign = if (n - p.len()) % 2 == 0 { 1 } else { -1 };
            total += sign;
        }
    }
    Ok(total)
}

/// The canonical-form sum over all permutations:
/// `sum_sigma prod_{i=1}^{n-1} 1 / (x_{sigma_1..sigma_i} - c_{sigma_1..sigma_i})`.
///
/// Errors with a pole description when any denominator factor vanishes.
pub fn canonical_form_sum(constants: &ConstantMatrix, x: &[Rat]) -> Result<Rat> {
    use itertools::Itertools;
    let n = constants.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let x_table = subset_coordinate_sums(x);
    let c_table = constants.subset_totals();
    let mut total = Rat::zero();
    for sigma in (1..=n).permutations(n) {
        let mut mask = 0usize;
        let mut term = Rat::new(1.into(), 1.into());
        for &v in sigma.iter().take(n - 1) {
            mask |= 1 << (v - 1);
            let denom = &x_table[mask] - &c_table[mask];
            if denom.is_zero() {
                return Err(Error::Pole(format!(
                    "x_J = c_J on the prefix {sigma:?} at length {}",
                    mask.count_ones()
                )));
            }
            term /= denom;
        }
        total += term;
    }
    Ok(total)
}
