//! Closed forms of the biadjoint amplitude and its q-deformation on the
//! nearest-neighbor subspace, and the partial-triangulation sum they equal.
//!
//! The complex exponentials `e^{-2 pi i alpha' s}` are replaced by exact
//! rational `q`-variables throughout; a tree edge over the block `{i..j}`
//! telescopes to the product `q_i q_{i+1} ... q_{j-1}`. The only floating
//! point lives in [`alpha_limit_check`].

use num_traits::{One, Zero};

use crate::kinematics::NearestNeighborPoint;
use crate::rational::{format_rat, rat_to_f64, Rat};
use crate::roottrees::{enumerate_partial_trees, PartialTree};
use crate::{Error, Result};

pub const MAX_MIZERA_N: usize = 9;

/// Rational stand-ins for `q_i = e^{-2 pi i alpha' s_{i,i+1}}`, `i = 1..n-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoint {
    q: Vec<Rat>,
}

impl QPoint {
    pub fn new(q: Vec<Rat>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        for (i, qi) in q.iter().enumerate() {
            if qi.is_one() {
                return Err(Error::Pole(format!("q_{} = 1", i + 1)));
            }
        }
        Ok(Self { q })
    }

    pub fn n(&self) -> usize {
        self.q.len() + 2
    }

    pub fn q(&self) -> &[Rat] {
        &self.q
    }
}

/// `m` restricted to the nearest-neighbor subspace:
/// `(s_12 + ... + s_{n-2,n-1}) / (s_12 ... s_{n-2,n-1})`.
pub fn m_restricted(s: &NearestNeighborPoint) -> Result<Rat> {
    let mut num = Rat::zero();
    let mut den = Rat::one();
    for (i, v) in s.adjacent().iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Pole(format!("s_{{{},{}}} = 0", i + 1, i + 2)));
        }
        num += v;
        den *= v;
    }
    Ok(num / den)
}

/// The same amplitude as a sum over the root cone's boundary facets:
/// `sum_i 1 / (s_12 ... omit s_{i,i+1} ... s_{n-2,n-1})`.
pub fn m_facet_sum(s: &NearestNeighborPoint) -> Result<Rat> {
    let adj = s.adjacent();
    for (i, v) in adj.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Pole(format!("s_{{{},{}}} = 0", i + 1, i + 2)));
        }
    }
    let mut total = Rat::zero();
    for omit in 0..adj.len() {
        let mut term = Rat::one();
        for (i, v) in adj.iter().enumerate() {
            if i != omit {
                term /= v;
            }
        }
        total += term;
    }
    Ok(total)
}

/// The q-deformed amplitude: `(1 - q_1 q_2 ... q_{n-2}) / prod_i (1 - q_i)`.
/// A product of one over all `q_i` legitimately gives zero.
pub fn m_alpha_restricted(q: &QPoint) -> Result<Rat> {
    let mut prod = Rat::one();
    let mut den = Rat::one();
    for qi in q.q() {
        prod *= qi;
        den *= Rat::one() - qi;
    }
    Ok((Rat::one() - prod) / den)
}

/// A noncrossing set of polygon diagonals, normalized to nested-or-disjoint
/// contiguous blocks `{i..j}` of `{1, ..., n-1}` with `2 <= size <= n-2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolygonDiagonalSet {
    n: usize,
    blocks: Vec<(usize, usize)>,
}

impl PolygonDiagonalSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks as `(min, max)` pairs, sorted.
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    fn from_partial_tree(n: usize, tree: &PartialTree) -> Self {
        let blocks: Vec<(usize, usize)> = tree
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (1, n - 1))
            .collect();
        Self { n, blocks }
    }
}

/// All partial triangulations of the `n`-gon, encoded as block sets; in
/// bijection with the partial trees on `n - 1` leaves (mandatory edge
/// dropped). The maximal ones number `Catalan(n - 2)`.
pub fn enumerate_partial_triangulations(n: usize) -> Result<Vec<PolygonDiagonalSet>> {
    if !(4..=MAX_MIZERA_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "polygon size",
            value: n,
            max: MAX_MIZERA_N,
        });
    }
    let mut out: Vec<PolygonDiagonalSet> = enumerate_partial_trees(n - 1)?
        .iter()
        .map(|t| PolygonDiagonalSet::from_partial_tree(n, t))
        .collect();
    out.sort();
    Ok(out)
}

/// Product `q_i q_{i+1} ... q_{j-1}` attached to the block `{i..j}`.
fn block_product(q: &[Rat], block: (usize, usize)) -> Rat {
    let mut prod = Rat::one();
    for qk in &q[(block.0 - 1)..(block.1 - 1)] {
        prod *= qk;
    }
    prod
}

/// Mizera's inclusion-exclusion sum over partial triangulations:
/// `sum_T (-1)^((n-3) - |T|) prod_{B in T} 1/(1 - q_B)`.
///
/// Equals [`m_alpha_restricted`] exactly whenever no block product hits 1.
pub fn mizera_sum(n: usize, q: &QPoint) -> Result<Rat> {
    if q.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n - 2,
            got: q.q().len(),
        });
    }
    // Reject any pole up front, with the offending block named.
    for i in 1..n - 1 {
        for j in (i + 1)..n {
            if j - i <= n - 3 && j < n && block_product(q.q(), (i, j)).is_one() {
                return Err(Error::Pole(format!(
                    "block product q_{{{i}..{j}}} = 1"
                )));
            }
        }
    }
    let mut total = Rat::zero();
    for t in enumerate_partial_triangulations(n)? {
        let mut term = Rat::one();
        for &block in t.blocks() {
            term /= Rat::one() - block_product(q.q(), block);
        }
        if (n - 3 - t.size()) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Float-only consistency of the two closed forms as the deformation is
/// switched off: returns `| a^(n-3) * m_alpha(e^{-a s}) / m(s) - 1 |`.
pub fn alpha_limit_check(s: &NearestNeighborPoint, a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1e-2) {
        return Err(Error::InconsistentInput(format!(
            "deformation parameter {a} outside (0, 1e-2]"
        )));
    }
    let adj: Vec<f64> = s.adjacent().iter().map(rat_to_f64).collect();
    let n = s.n();
    let m_exact = rat_to_f64(&m_restricted(s)?);
    // 1 - e^{-a s} via exp_m1 to dodge cancellation.
    let numer = -(-a * adj.iter().sum::<f64>()).exp_m1();
    let denom: f64 = adj.iter().map(|si| -(-a * si).exp_m1()).product();
    let m_alpha = numer / denom;
    let ratio = a.powi(n as i32 - 3) * m_alpha / m_exact;
    Ok((ratio - 1.0).abs())
}

/// Failure payload formatting used by the check runners.
pub fn describe_q(q: &QPoint) -> String {
    let parts: Vec<String> = q.q().iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}
