//! Exact Laplace transforms of simplicial root cones and the identities the
//! tree triangulation induces.
//!
//! The continuous transform of a cone with generators `e_i - e_j` is
//! `prod 1/(y_i - y_j)`; the discrete (functional) transform is
//! `prod 1/(1 - x_i/x_j)`. Higher-codimension faces vanish under the
//! continuous transform but not the discrete one, which is why the
//! triangulation identity needs top cones only while the discrete identity
//! runs over all partial trees with alternating signs.

use num_traits::{One, Zero};

use crate::rational::{format_rat, Rat};
use crate::roottrees::{enumerate_partial_trees, enumerate_trees, PartialTree, SimplicialCone};
use crate::{Error, Result};

/// Continuous transform: `prod_a 1/(y_{i_a} - y_{j_a})`.
pub fn lt_continuous(cone: &SimplicialCone, y: &[Rat]) -> Result<Rat> {
    if y.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: y.len(),
        });
    }
    let mut acc = Rat::one();
    for &(i, j) in cone.generators() {
        let d = &y[i - 1] - &y[j - 1];
        if d.is_zero() {
            return Err(Error::Pole(format!("y_{i} = y_{j}")));
        }
        acc /= d;
    }
    Ok(acc)
}

/// One factor `1 - x_i/x_j`, with pole detection.
fn one_minus_ratio(x: &[Rat], i: usize, j: usize) -> Result<Rat> {
    if x[j - 1].is_zero() {
        return Err(Error::Pole(format!("x_{j} = 0")));
    }
    let v = Rat::one() - &x[i - 1] / &x[j - 1];
    if v.is_zero() {
        return Err(Error::Pole(format!("x_{i} = x_{j}")));
    }
    Ok(v)
}

/// Discrete transform: `prod_a 1/(1 - x_{i_a}/x_{j_a})`.
pub fn lt_discrete(cone: &SimplicialCone, x: &[Rat]) -> Result<Rat> {
    if x.len() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: x.len(),
        });
    }
    let mut acc = Rat::one();
    for &(i, j) in cone.generators() {
        acc /= one_minus_ratio(x, i, j)?;
    }
    Ok(acc)
}

/// Left side of the triangulation identity: `1 / prod_i (y_i - y_{i+1})`.
pub fn consecutive_product_continuous(y: &[Rat]) -> Result<Rat> {
    let mut acc = Rat::one();
    for i in 0..y.len() - 1 {
        let d = &y[i] - &y[i + 1];
        if d.is_zero() {
            return Err(Error::Pole(format!("y_{} = y_{}", i + 1, i + 2)));
        }
        acc /= d;
    }
    Ok(acc)
}

/// Left side of the discrete identity: `prod_i 1/(1 - x_i/x_{i+1})`.
pub fn consecutive_product_discrete(x: &[Rat]) -> Result<Rat> {
    let mut acc = Rat::one();
    for i in 1..x.len() {
        acc /= one_minus_ratio(x, i, i + 1)?;
    }
    Ok(acc)
}

/// `1/prod(y_i - y_{i+1}) = sum over full trees of their continuous
/// transforms`, exactly.
pub fn check_triangulation_identity(m: usize, y: &[Rat]) -> Result<bool> {
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: y.len(),
        });
    }
    let lhs = consecutive_product_continuous(y)?;
    let mut rhs = Rat::zero();
    for tree in enumerate_trees(m)? {
        rhs += lt_continuous(&tree.cone(), y)?;
    }
    Ok(lhs == rhs)
}

/// The sum of the `m` cyclic rotations of the consecutive-root product is
/// exactly zero (the rotated cones tile the whole space, which the
/// continuous transform kills).
pub fn check_cyclic_sum_vanishes(m: usize, y: &[Rat]) -> Result<bool> {
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: y.len(),
        });
    }
    let mut total = Rat::zero();
    for start in 0..m {
        let mut term = Rat::one();
        for step in 0..m - 1 {
            let i = (start + step) % m;
            let j = (start + step + 1) % m;
            let d = &y[i] - &y[j];
            if d.is_zero() {
                return Err(Error::Pole(format!("y_{} = y_{}", i + 1, j + 1)));
            }
            term /= d;
        }
        total += term;
    }
    Ok(total.is_zero())
}

/// Signed partial-tree sum of discrete transforms, `sign = (-1)^(m-1-k)`
/// with `k` the edge count (mandatory edge included).
pub fn partial_tree_discrete_sum(m: usize, x: &[Rat]) -> Result<Rat> {
    let mut total = Rat::zero();
    for tree in enumerate_partial_trees(m)? {
        let term = lt_discrete(&tree.cone(), x)?;
        if (m - 1 - tree.edge_count()) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `prod 1/(1 - x_i/x_{i+1}) = alternating partial-tree sum`, exactly.
pub fn check_discrete_inclusion_exclusion(m: usize, x: &[Rat]) -> Result<bool> {
    if x.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: x.len(),
        });
    }
    Ok(consecutive_product_discrete(x)? == partial_tree_discrete_sum(m, x)?)
}

/// The eleven terms of the five-point KLT diagonal after the top label has
/// been eliminated: a sign and the Mandelstam blocks, each block `{i..j}`
/// recorded as `(i, j)`.
pub fn klt_diagonal_terms() -> Vec<(i64, Vec<(usize, usize)>)> {
    vec![
        (1, vec![]),
        (-1, vec![(1, 2)]),
        (-1, vec![(2, 3)]),
        (-1, vec![(3, 4)]),
        (-1, vec![(1, 3)]),
        (-1, vec![(2, 4)]),
        (1, vec![(1, 2), (3, 4)]),
        (1, vec![(2, 3), (1, 3)]),
        (1, vec![(3, 4), (2, 4)]),
        (1, vec![(1, 3), (1, 2)]),
        (1, vec![(2, 4), (2, 3)]),
    ]
}

/// Verifies the five-point KLT diagonal against the partial-tree expansion
/// at a rational sample, term for term:
///
/// * each block factor `1/(1 - e^{...s_block})` becomes `1/(1 - x_i/x_j)`,
/// * multiplying a term by the mandatory factor `1/(1 - x_1/x_4)` lands
///   exactly on the discrete transform of the partial tree whose edges are
///   the blocks plus `(1, 4)`,
/// * the signs agree with `(-1)^(m-1-k)`,
/// * the eleven trees exhaust the partial trees of `m = 4`,
/// * and the signed total equals `prod 1/(1 - x_i/x_{i+1})`.
pub fn klt_diagonal_match(x: &[Rat]) -> Result<bool> {
    let m = 4usize;
    if x.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: x.len(),
        });
    }
    let mandatory = Rat::one() / one_minus_ratio(x, 1, m)?;
    let mut seen_trees: Vec<PartialTree> = Vec::new();
    let mut total = Rat::zero();
    for (sign, blocks) in klt_diagonal_terms() {
        let mut term = Rat::one();
        for &(i, j) in &blocks {
            term /= one_minus_ratio(x, i, j)?;
        }
        let mut edges: std::collections::BTreeSet<(usize, usize)> =
            blocks.iter().copied().collect();
        edges.insert((1, m));
        let tree = PartialTree::new(m, edges)?;
        let expected_sign = if (m - 1 - tree.edge_count()) % 2 == 0 {
            1
        } else {
            -1
        };
        if sign != expected_sign {
            return Ok(false);
        }
        if &term * &mandatory != lt_discrete(&tree.cone(), x)? {
            return Ok(false);
        }
        if seen_trees.contains(&tree) {
            return Ok(false);
        }
        seen_trees.push(tree);
        let signed = if sign > 0 { term } else { -term };
        total += signed * &mandatory;
    }
    seen_trees.sort();
    if seen_trees != enumerate_partial_trees(m)? {
        return Ok(false);
    }
    Ok(total == consecutive_product_discrete(x)?)
}

/// Pretty form of an exact value for failure reports.
pub fn describe(r: &Rat) -> String {
    format_rat(r)
}
