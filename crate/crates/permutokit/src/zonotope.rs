//! The zonotopal generalized permutohedron `Z_D`: Minkowski sum of the
//! dilated root segments `c_ij [e_i, e_j]`, equivalently the region
//! `x_J >= c_J` (all proper nonempty `J`) on the slice `x_{1...n} = c_{1...n}`.
//!
//! Both descriptions are implemented, along with the inversion-set map that
//! carries cube vertices onto polytope vertices and a brute-force vertex
//! oracle used to cross-validate the vertex formula.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::kinematics::ConstantMatrix;
use crate::plates::subset_coordinate_sums;
use crate::rational::{dot, format_rat, rat_int, Rat};
use crate::{Error, Result, SCHEMA};

/// Vertex enumeration refuses beyond this (n! growth).
pub const MAX_VERTEX_N: usize = 8;

/// The brute-force oracle scans all `2^(n choose 2)` cube vertices.
pub const MAX_ORACLE_N: usize = 4;

/// Index of the pair `(i, j)`, `1 <= i < j <= n`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i) - 1
}

/// All pairs `(i, j)` in the order used by `pair_index`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct Zonotope {
    constants: ConstantMatrix,
}

impl Zonotope {
    pub fn new(constants: ConstantMatrix) -> Self {
        Self { constants }
    }

    pub fn n(&self) -> usize {
        self.constants.n()
    }

    pub fn constants(&self) -> &ConstantMatrix {
        &self.constants
    }

    /// H-representation membership: `x_J >= c_J` for every proper nonempty
    /// `J` and equality on the full set.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let x_table = subset_coordinate_sums(x);
        let c_table = self.constants.subset_totals();
        let full = (1usize << n) - 1;
        if x_table[full] != c_table[full] {
            return Ok(false);
        }
        for mask in 1..full {
            if x_table[mask] < c_table[mask] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The vertex of the permutation `sigma`: coordinate `sigma_1` is zero and
    /// coordinate `sigma_j` carries `c_{sigma_1...sigma_{j-1} | sigma_j}`.
    pub fn vertex(&self, sigma: &[usize]) -> Vec<Rat> {
        let n = self.n();
        debug_assert_eq!(sigma.len(), n);
        let mut v = vec![Rat::zero(); n];
        for j in 1..n {
            let mut acc = Rat::zero();
            for &prev in &sigma[..j] {
                acc += self.constants.c(prev, sigma[j]);
            }
            v[sigma[j] - 1] = acc;
        }
        v
    }

    /// All vertices, deduplicated, in lexicographic order of the generating
    /// permutation. Degenerate constants may collapse some of the `n!`.
    pub fn vertices(&self) -> Result<Vec<Vec<Rat>>> {
        let n = self.n();
        if n > MAX_VERTEX_N {
            return Err(Error::OutOfRange {
                what: "zonotope vertex enumeration size",
                value: n,
                max: MAX_VERTEX_N,
            });
        }
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for sigma in (1..=n).permutations(n) {
            let v = self.vertex(&sigma);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Image of a cube point under the Minkowski parametrization: coordinate
    /// `j` receives `c_ij (1 - t_ij)` from pairs with `i < j` and `c_jk t_jk`
    /// from pairs with `k > j`. `t` is indexed per [`pair_index`].
    pub fn minkowski_sample(&self, t: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.n();
        let expected = n * (n - 1) / 2;
        if t.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: t.len(),
            });
        }
        if t.iter().any(|v| v < &Rat::zero() || v > &Rat::one()) {
            return Err(Error::InconsistentInput(
                "cube parameter outside [0,1]".to_string(),
            ));
        }
        let mut x = vec![Rat::zero(); n];
        for (idx, (i, j)) in pair_list(n).into_iter().enumerate() {
            let c = self.constants.c(i, j);
            x[i - 1] += c * &t[idx];
            x[j - 1] += c * (Rat::one() - &t[idx]);
        }
        Ok(x)
    }

    /// Brute-force vertex set: push all cube vertices through the Minkowski
    /// map and keep the images that uniquely maximize some braid-generic
    /// linear functional. Independent of [`Zonotope::vertex`].
    pub fn vertex_oracle(&self) -> Result<Vec<Vec<Rat>>> {
        let n = self.n();
        if n > MAX_ORACLE_N {
            return Err(Error::OutOfRange {
                what: "zonotope vertex oracle size",
                value: n,
                max: MAX_ORACLE_N,
            });
        }
        let num_pairs = n * (n - 1) / 2;
        let mut images: Vec<Vec<Rat>> = Vec::new();
        for bits in 0usize..(1 << num_pairs) {
            let t: Vec<Rat> = (0..num_pairs)
                .map(|k| {
                    if bits & (1 << k) != 0 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            let x = self.minkowski_sample(&t)?;
            if !images.contains(&x) {
                images.push(x);
            }
        }
        let mut verts: Vec<Vec<Rat>> = Vec::new();
        for ordering in (0..n).permutations(n) {
            // Distinct power weights inside the braid cone of this ordering.
            let mut w = vec![Rat::zero(); n];
            for (rank, &coord) in ordering.iter().enumerate() {
                w[coord] = rat_int((n as i64 + 1).pow((n - rank) as u32));
            }
            let mut best_x: Option<&Vec<Rat>> = None;
            let mut best_val = Rat::zero();
            let mut unique = true;
            for x in &images {
                let value = dot(&w, x);
                match best_x {
                    None => {
                        best_x = Some(x);
                        best_val = value;
                        unique = true;
                    }
                    Some(bx) => {
                        if value > best_val {
                            best_x = Some(x);
                            best_val = value;
                            unique = true;
                        } else if value == best_val && x != bx {
                            unique = false;
                        }
                    }
                }
            }
            if unique {
                if let Some(x) = best_x {
                    if !verts.contains(x) {
                        verts.push(x.clone());
                    }
                }
            }
        }
        verts.sort();
        Ok(verts)
    }

    pub fn to_json(&self) -> Result<Value> {
        let n = self.n();
        let vertices = self.vertices()?;
        let c_table = self.constants.subset_totals();
        let full = (1usize << n) - 1;
        let hrep: Vec<Value> = (1..full)
            .map(|mask| {
                let j: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                json!({ "J": j, "bound": format_rat(&c_table[mask]) })
            })
            .collect();
        Ok(json!({
            "schema": SCHEMA,
            "n": n,
            "D": self.constants.to_json()["c"],
            "vertices": vertices.iter()
                .map(|v| v.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "hrep": hrep,
            "equality": {
                "J": (1..=n).collect::<Vec<_>>(),
                "bound": format_rat(&c_table[full]),
            },
        }))
    }

    /// SVG of the hexagon (n = 3 only), projected onto the slice plane with
    /// `e_1 - e_2` horizontal.
    pub fn to_svg(&self) -> Result<String> {
        if self.n() != 3 {
            return Err(Error::OutOfRange {
                what: "zonotope SVG rendering size",
                value: self.n(),
                max: 3,
            });
        }
        let vertices = self.vertices()?;
        crate::svg::render_slice_polygon(&vertices, "zonotope")
    }
}

/// Cube vertex with `t_ij = 1` exactly when the pair `{i, j}` is inverted in
/// `sigma` (the larger label appears first).
pub fn inversion_param(sigma: &[usize]) -> Vec<Rat> {
    let n = sigma.len();
    let mut position = vec![0usize; n + 1];
    for (pos, &v) in sigma.iter().enumerate() {
        position[v] = pos;
    }
    pair_list(n)
        .into_iter()
        .map(|(i, j)| {
            if position[j] < position[i] {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect()
}

/// Supermodularity of the induced set function:
/// `c_I + c_J <= c_{I u J} + c_{I n J}` over all pairs of nonempty proper
/// subsets. Holds for every nonnegative constant matrix.
pub fn check_supermodularity(constants: &ConstantMatrix) -> Result<bool> {
    let n = constants.n();
    if n > 6 {
        return Err(Error::OutOfRange {
            what: "supermodularity scan size",
            value: n,
            max: 6,
        });
    }
    let table = constants.subset_totals();
    let full = (1usize << n) - 1;
    for i in 1..full {
        for j in 1..full {
            let lhs = &table[i] + &table[j];
            let rhs = &table[i | j] + &table[i & j];
            if lhs > rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, sum_rats};
    use crate::sampling;

    fn ri(v: i64) -> Rat {
        rat_int(v)
    }

    fn example() -> Zonotope {
        Zonotope::new(
            ConstantMatrix::from_pairs(3, &[(1, 2, ri(2)), (2, 3, ri(1)), (1, 3, ri(3))]).unwrap(),
        )
    }

    fn hexagon_213_vertices() -> Vec<Vec<Rat>> {
        [
            [0, 2, 4],
            [2, 0, 4],
            [5, 0, 1],
            [5, 1, 0],
            [3, 3, 0],
            [0, 3, 3],
        ]
        .iter()
        .map(|v| v.iter().map(|&k| ri(k)).collect())
        .collect()
    }

    fn as_sorted(mut vs: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
        vs.sort();
        vs
    }

    #[test]
    fn contains_examples() {
        let z = example();
        assert!(z.contains(&[ri(1), ri(2), ri(3)]).unwrap());
        assert!(!z.contains(&[ri(6), ri(0), ri(0)]).unwrap());
        assert!(z.contains(&[ri(1), ri(2)]).is_err());

        let point = Zonotope::new(ConstantMatrix::zero(3));
        assert!(point.contains(&[ri(0), ri(0), ri(0)]).unwrap());
        assert!(!point.contains(&[ri(1), ri(-1), ri(0)]).unwrap());
    }

    #[test]
    fn vertex_formula_examples() {
        let z = example();
        assert_eq!(z.vertex(&[1, 2, 3]), vec![ri(0), ri(2), ri(4)]);
        assert_eq!(z.vertex(&[2, 3, 1]), vec![ri(5), ri(0), ri(1)]);
        let point = Zonotope::new(ConstantMatrix::zero(3));
        assert_eq!(point.vertex(&[3, 1, 2]), vec![ri(0); 3]);
    }

    #[test]
    fn vertices_match_known_hexagon() {
        let z = example();
        assert_eq!(as_sorted(z.vertices().unwrap()), as_sorted(hexagon_213_vertices()));
    }

    #[test]
    fn unit_constants_give_standard_permutohedron() {
        let z = Zonotope::new(ConstantMatrix::from_upper(3, &vec![ri(1); 3]).unwrap());
        let expected: Vec<Vec<Rat>> = (0..3usize)
            .permutations(3)
            .map(|p| {
                let mut v = vec![ri(0); 3];
                for (rank, coord) in p.iter().enumerate() {
                    v[*coord] = ri(rank as i64);
                }
                v
            })
            .collect();
        assert_eq!(
            as_sorted(z.vertices().unwrap()),
            as_sorted(expected.into_iter().unique().collect())
        );
    }

    #[test]
    fn degenerate_constants_collapse() {
        let point = Zonotope::new(ConstantMatrix::zero(3));
        assert_eq!(point.vertices().unwrap(), vec![vec![ri(0); 3]]);
    }

    #[test]
    fn minkowski_endpoints() {
        let z = example();
        assert_eq!(
            z.minkowski_sample(&vec![ri(0); 3]).unwrap(),
            vec![ri(0), ri(2), ri(4)]
        );
        assert_eq!(
            z.minkowski_sample(&vec![ri(1); 3]).unwrap(),
            vec![ri(5), ri(1), ri(0)]
        );
        let zero = Zonotope::new(ConstantMatrix::zero(3));
        assert_eq!(
            zero.minkowski_sample(&vec![rat(1, 2); 3]).unwrap(),
            vec![ri(0); 3]
        );
        assert!(z.minkowski_sample(&vec![ri(2); 3]).is_err());
        assert!(z.minkowski_sample(&vec![ri(0); 2]).is_err());
    }

    #[test]
    fn inversion_params() {
        assert_eq!(inversion_param(&[1, 2, 3]), vec![ri(0); 3]);
        assert_eq!(inversion_param(&[3, 2, 1]), vec![ri(1); 3]);
        // sigma = (2,1,3): only the pair {1,2} is inverted.
        assert_eq!(inversion_param(&[2, 1, 3]), vec![ri(1), ri(0), ri(0)]);
        let z = example();
        assert_eq!(
            z.minkowski_sample(&inversion_param(&[2, 1, 3])).unwrap(),
            vec![ri(2), ri(0), ri(4)]
        );
    }

    #[test]
    fn inversion_param_hits_vertex_for_all_sigma() {
        let mut rng = sampling::rng(17);
        for n in 2..=4 {
            let z = Zonotope::new(sampling::random_nonneg_constants(n, &mut rng));
            for sigma in (1..=n).permutations(n) {
                assert_eq!(
                    z.minkowski_sample(&inversion_param(&sigma)).unwrap(),
                    z.vertex(&sigma)
                );
            }
        }
    }

    #[test]
    fn cube_samples_stay_inside() {
        let mut rng = sampling::rng(23);
        for n in 2..=4 {
            let z = Zonotope::new(sampling::random_nonneg_constants(n, &mut rng));
            for _ in 0..50 {
                let t: Vec<Rat> = (0..n * (n - 1) / 2)
                    .map(|_| sampling::rand_unit_rat(&mut rng))
                    .collect();
                let x = z.minkowski_sample(&t).unwrap();
                assert!(z.contains(&x).unwrap());
            }
        }
    }

    #[test]
    fn vertex_flag_equalities() {
        // v_sigma meets exactly the flag x_{sigma_1..sigma_j} = c_{...} with
        // equality when the constants are generic positive.
        let mut rng = sampling::rng(31);
        let z = Zonotope::new(sampling::random_positive_constants(4, &mut rng));
        let c_table = z.constants().subset_totals();
        for sigma in (1..=4usize).permutations(4) {
            let v = z.vertex(&sigma);
            assert!(z.contains(&v).unwrap());
            let x_table = subset_coordinate_sums(&v);
            let mut flag_masks = Vec::new();
            let mut mask = 0usize;
            for &s in &sigma {
                mask |= 1 << (s - 1);
                flag_masks.push(mask);
            }
            for m in 1usize..(1 << 4) - 1 {
                let tight = x_table[m] == c_table[m];
                assert_eq!(tight, flag_masks.contains(&m), "sigma {sigma:?} mask {m:b}");
            }
        }
    }

    #[test]
    fn vertex_coordinate_sums_lie_on_slice() {
        let mut rng = sampling::rng(41);
        for n in 2..=5 {
            let z = Zonotope::new(sampling::random_nonneg_constants(n, &mut rng));
            let total = z.constants().c_subset(&(1..=n).collect::<Vec<_>>());
            for v in z.vertices().unwrap() {
                assert_eq!(sum_rats(v.iter()), total);
            }
        }
    }

    #[test]
    fn oracle_matches_known_hexagon() {
        let z = example();
        assert_eq!(as_sorted(z.vertex_oracle().unwrap()), as_sorted(hexagon_213_vertices()));
        let point = Zonotope::new(ConstantMatrix::zero(3));
        assert_eq!(point.vertex_oracle().unwrap(), vec![vec![ri(0); 3]]);
    }

    #[test]
    fn oracle_matches_vertex_formula_on_random_generic_constants() {
        let mut rng = sampling::rng(53);
        for n in 2..=4 {
            let mut done = 0;
            while done < 5 {
                let z = Zonotope::new(sampling::random_positive_constants(n, &mut rng));
                let verts = z.vertices().unwrap();
                if verts.len() != (1..=n).product::<usize>() {
                    continue; // collided vertices: not generic, redraw
                }
                assert_eq!(as_sorted(verts), z.vertex_oracle().unwrap());
                done += 1;
            }
        }
    }

    #[test]
    fn supermodularity_cases() {
        let z = example();
        assert!(check_supermodularity(z.constants()).unwrap());
        assert!(check_supermodularity(&ConstantMatrix::zero(4)).unwrap());
        // Hand case I = {1,2}, J = {2,3}: 2 + 1 <= 6 + 0.
        let t = z.constants().subset_totals();
        assert_eq!(&t[0b011] + &t[0b110], ri(3));
        assert_eq!(&t[0b111] + &t[0b010], ri(6));
        let mut rng = sampling::rng(61);
        for n in 2..=5 {
            for _ in 0..10 {
                let d = sampling::random_nonneg_constants(n, &mut rng);
                assert!(check_supermodularity(&d).unwrap());
            }
        }
        assert!(check_supermodularity(&ConstantMatrix::zero(7)).is_err());
    }

    #[test]
    fn json_export_shape() {
        let z = example();
        let v = z.to_json().unwrap();
        assert_eq!(v["schema"], "permutokit/1");
        assert_eq!(v["hrep"].as_array().unwrap().len(), 6);
        assert_eq!(v["equality"]["bound"], "6");
        assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn svg_smoke() {
        let z = example();
        let svg = z.to_svg().unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polygon"));
        let big = Zonotope::new(ConstantMatrix::zero(4));
        assert!(big.to_svg().is_err());
    }
}
