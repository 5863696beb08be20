//! Named identity/property checks with seeded sampling and reproducible
//! reports. The CLI, the acceptance suite, and the browser demo all run
//! these same functions.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::amplitudes::{
    describe_q, m_alpha_restricted, m_facet_sum, m_restricted, mizera_sum, QPoint,
};
use crate::associahedron::{active_facets, AssocSpec};
use crate::kinematics::ConstantMatrix;
use crate::laplace::{
    check_cyclic_sum_vanishes, check_discrete_inclusion_exclusion, check_triangulation_identity,
    consecutive_product_continuous, consecutive_product_discrete, klt_diagonal_match,
    lt_continuous, partial_tree_discrete_sum,
};
use crate::plates::{
    canonical_form_sum, enumerate_ordered_set_partitions, plate_indicator_with_tables,
    subset_coordinate_sums,
};
use crate::rational::{format_rat, format_rat_vec, rat_int, Rat};
use crate::roottrees::{enumerate_partial_trees, enumerate_trees, tree_to_assoc_face};
use crate::sampling;
use crate::zonotope::{check_supermodularity, inversion_param, Zonotope};
use crate::{Error, Result, SCHEMA};

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one named check: parameters, sample count, failures, verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub schema: String,
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub samples: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl CheckReport {
    fn new(check: &str, seed: u64) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            check: check.to_string(),
            params: BTreeMap::new(),
            seed,
            samples: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            passed: false,
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn fail(&mut self, input: impl ToString, lhs: impl ToString, rhs: impl ToString) {
        self.failures.push(Failure {
            input: input.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    /// Seals the report; `passed` is true exactly when nothing failed.
    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn point_label(x: &[Rat]) -> String {
    format!("({})", format_rat_vec(x).join(", "))
}

/// Alternating plate sum vs H-representation membership, on a mix of
/// vertices, Minkowski-interior samples, and random slice points.
/// Edge-midpoint agreement is recorded as a note, not asserted.
pub fn check_alternating_sum(
    n: usize,
    num_d: usize,
    points_per_d: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("alternating-sum", seed)
        .param("n", n)
        .param("constant_draws", num_d)
        .param("points_per_draw", points_per_d);
    let mut rng = sampling::rng(seed);
    let partitions = enumerate_ordered_set_partitions(n)?;
    let mut boundary_hits = 0usize;
    let mut boundary_total = 0usize;
    for _ in 0..num_d {
        let d = sampling::random_nonneg_constants(n, &mut rng);
        let z = Zonotope::new(d.clone());
        let c_table = d.subset_totals();
        let total = c_table[(1 << n) - 1].clone();
        let verts = z.vertices()?;

        let mut points: Vec<Vec<Rat>> = verts.clone();
        let fill = points_per_d.saturating_sub(points.len());
        let interior_count = fill / 2;
        for _ in 0..interior_count {
            let t: Vec<Rat> = (0..n * (n - 1) / 2)
                .map(|_| sampling::rand_unit_rat(&mut rng))
                .collect();
            points.push(z.minkowski_sample(&t)?);
        }
        for _ in 0..(fill - interior_count) {
            points.push(sampling::random_slice_point(n, &total, &mut rng));
        }

        for x in &points {
            report.samples += 1;
            let x_table = subset_coordinate_sums(x);
            let mut signed = 0i64;
            for p in &partitions {
                if plate_indicator_with_tables(p, &x_table, &c_table) {
                    signed += if (n - p.len()) % 2 == 0 { 1 } else { -1 };
                }
            }
            let member = z.contains(x)? as i64;
            if signed != member {
                report.fail(point_label(x), signed, member);
            }
        }

        // Observational: relative interiors of positive-dimensional faces.
        let cap = verts.len().min(8);
        for i in 0..cap {
            for j in (i + 1)..cap {
                let mid: Vec<Rat> = verts[i]
                    .iter()
                    .zip(&verts[j])
                    .map(|(a, b)| (a + b) / rat_int(2))
                    .collect();
                let x_table = subset_coordinate_sums(&mid);
                let mut signed = 0i64;
                for p in &partitions {
                    if plate_indicator_with_tables(p, &x_table, &c_table) {
                        signed += if (n - p.len()) % 2 == 0 { 1 } else { -1 };
                    }
                }
                boundary_total += 1;
                if signed == z.contains(&mid)? as i64 {
                    boundary_hits += 1;
                }
            }
        }
    }
    report.notes.push(format!(
        "vertex-midpoint agreement (observational, includes face boundaries): {boundary_hits}/{boundary_total}"
    ));
    Ok(report.finish())
}

/// Supermodularity of `c_J` for random nonnegative constants.
pub fn check_supermodularity_random(n: usize, draws: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("supermodularity", seed)
        .param("n", n)
        .param("draws", draws);
    let mut rng = sampling::rng(seed);
    for _ in 0..draws {
        let d = sampling::random_nonneg_constants(n, &mut rng);
        report.samples += 1;
        if !check_supermodularity(&d)? {
            report.fail(format!("{:?}", d.to_json()), "supermodular", "violated");
        }
    }
    Ok(report.finish())
}

/// The three Minkowski-sum facts behind the zonotope theorem: cube samples
/// stay inside, inversion parameters hit the vertex formula, and (n <= 4)
/// the brute-force oracle reproduces the vertex set for generic constants.
pub fn check_minkowski(
    n: usize,
    num_d: usize,
    t_samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    use itertools::Itertools;
    let mut report = CheckReport::new("minkowski", seed)
        .param("n", n)
        .param("constant_draws", num_d)
        .param("cube_samples", t_samples);
    let mut rng = sampling::rng(seed);
    let factorial: usize = (1..=n).product();
    let mut produced = 0usize;
    while produced < num_d {
        let d = sampling::random_positive_constants(n, &mut rng);
        let z = Zonotope::new(d);
        let verts = z.vertices()?;
        if verts.len() != factorial {
            report
                .notes
                .push("skipped a constant draw with collided vertices".to_string());
            continue;
        }
        produced += 1;
        for sigma in (1..=n).permutations(n) {
            report.samples += 1;
            let via_cube = z.minkowski_sample(&inversion_param(&sigma))?;
            let direct = z.vertex(&sigma);
            if via_cube != direct {
                report.fail(format!("sigma {sigma:?}"), point_label(&via_cube), point_label(&direct));
            }
        }
        for _ in 0..t_samples {
            report.samples += 1;
            let t: Vec<Rat> = (0..n * (n - 1) / 2)
                .map(|_| sampling::rand_unit_rat(&mut rng))
                .collect();
            let x = z.minkowski_sample(&t)?;
            if !z.contains(&x)? {
                report.fail(point_label(&t), point_label(&x), "inside");
            }
        }
        if n <= crate::zonotope::MAX_ORACLE_N {
            report.samples += 1;
            let mut formula = verts.clone();
            formula.sort();
            let oracle = z.vertex_oracle()?;
            if formula != oracle {
                report.fail(
                    "vertex sets",
                    format!("{} formula vertices", formula.len()),
                    format!("{} oracle vertices", oracle.len()),
                );
            }
        }
    }
    Ok(report.finish())
}

/// Continuous triangulation identity at random generic points.
pub fn check_lt_triangulation(m: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("lt-triangulation", seed)
        .param("m", m)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let mut done = 0;
    while done < samples {
        let y = sampling::distinct_point(m, &mut rng);
        match check_triangulation_identity(m, &y) {
            Ok(true) => {}
            Ok(false) => {
                let lhs = consecutive_product_continuous(&y)?;
                let mut rhs = Rat::zero();
                for tree in enumerate_trees(m)? {
                    rhs += lt_continuous(&tree.cone(), &y)?;
                }
                report.fail(point_label(&y), format_rat(&lhs), format_rat(&rhs));
            }
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
        done += 1;
        report.samples += 1;
    }
    Ok(report.finish())
}

/// Cyclic sum of rotated consecutive-root products vanishes.
pub fn check_cyclic_sum(m: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("cyclic-sum", seed)
        .param("m", m)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let mut done = 0;
    while done < samples {
        let y = sampling::distinct_point(m, &mut rng);
        match check_cyclic_sum_vanishes(m, &y) {
            Ok(true) => {}
            Ok(false) => report.fail(point_label(&y), "nonzero", "0"),
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
        done += 1;
        report.samples += 1;
    }
    Ok(report.finish())
}

/// Discrete inclusion-exclusion over partial trees; at `m = 4` the eleven
/// KLT diagonal terms are also matched one by one.
pub fn check_discrete_ie(m: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("discrete-ie", seed)
        .param("m", m)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let mut done = 0;
    while done < samples {
        let x = sampling::distinct_nonzero_point(m, &mut rng);
        match check_discrete_inclusion_exclusion(m, &x) {
            Ok(true) => {}
            Ok(false) => {
                let lhs = consecutive_product_discrete(&x)?;
                let rhs = partial_tree_discrete_sum(m, &x)?;
                report.fail(point_label(&x), format_rat(&lhs), format_rat(&rhs));
            }
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
        if m == 4 {
            match klt_diagonal_match(&x) {
                Ok(true) => {}
                Ok(false) => report.fail(point_label(&x), "klt mismatch", "termwise match"),
                Err(Error::Pole(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        done += 1;
        report.samples += 1;
    }
    if m == 4 {
        report
            .notes
            .push("eleven-term KLT diagonal matched termwise at every sample".to_string());
    }
    Ok(report.finish())
}

/// Mizera's partial-triangulation sum vs the closed form.
pub fn check_mizera(n: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("mizera", seed)
        .param("n", n)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let mut done = 0;
    while done < samples {
        let q = QPoint::new(sampling::random_q_point(n - 2, &mut rng))?;
        let sum = match mizera_sum(n, &q) {
            Ok(v) => v,
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        };
        let closed = m_alpha_restricted(&q)?;
        if sum != closed {
            report.fail(describe_q(&q), format_rat(&sum), format_rat(&closed));
        }
        done += 1;
        report.samples += 1;
    }
    Ok(report.finish())
}

/// The two closed forms of the undeformed amplitude agree.
pub fn check_amplitude_m(n: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("amplitude-m", seed)
        .param("n", n)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let s = sampling::random_nearest_neighbor(n, &mut rng);
        let a = m_restricted(&s)?;
        let b = m_facet_sum(&s)?;
        report.samples += 1;
        if a != b {
            report.fail(point_label(s.adjacent()), format_rat(&a), format_rat(&b));
        }
    }
    Ok(report.finish())
}

/// Tree cones tile the root cone: every sampled point is covered, interiors
/// never overlap, and generic points land in exactly one interior.
pub fn check_partition(m: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("partition", seed)
        .param("m", m)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let trees = enumerate_trees(m)?;
    let cones: Vec<_> = trees.iter().map(|t| t.cone()).collect();
    let mut done = 0;
    while done < samples {
        // Every fourth draw zeroes one coefficient to probe the boundary.
        let boundary_draw = done % 4 == 3;
        let mut coeffs: Vec<Rat> = (0..m - 1)
            .map(|_| sampling::rand_positive_rat(&mut rng))
            .collect();
        if boundary_draw {
            let k = done % (m - 1);
            coeffs[k] = Rat::zero();
        }
        let mut v = vec![Rat::zero(); m];
        for (i, c) in coeffs.iter().enumerate() {
            v[i] += c;
            v[i + 1] -= c;
        }
        let mut member = 0usize;
        let mut interior = 0usize;
        for cone in &cones {
            let r = cone.contains(&v)?;
            member += r.member as usize;
            interior += r.interior as usize;
        }
        if member == 0 {
            report.fail(point_label(&v), "covered by 0 cones", ">= 1");
        }
        if interior > 1 {
            report.fail(point_label(&v), format!("interior to {interior}"), "<= 1");
        }
        if !boundary_draw && interior == 0 {
            // Generic draw landed on an internal wall; resample.
            report
                .notes
                .push(format!("wall hit at {} (resampled)", point_label(&v)));
            continue;
        }
        done += 1;
        report.samples += 1;
    }
    Ok(report.finish())
}

/// Inclusion-reversing bijection between partial trees and the faces of the
/// unit associahedron, checked vertex-set against vertex-set.
pub fn check_duality(m: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("duality", seed).param("m", m);
    let unit_pairs: Vec<(usize, usize, Rat)> = (1..=m)
        .flat_map(|i| ((i + 2)..=m).map(move |j| (i, j, rat_int(1))))
        .collect();
    let spec = AssocSpec::new(m, &unit_pairs)?;
    let vertices = spec.vertices()?;
    let facets: Vec<(usize, usize)> = spec.facets().into_iter().map(|(iv, _)| iv).collect();

    let face_vertices = |intervals: &[(usize, usize)]| -> Vec<usize> {
        vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                let active = active_facets(&spec, v);
                intervals.iter().all(|iv| active.contains(iv))
            })
            .map(|(idx, _)| idx)
            .collect()
    };

    // Geometric faces: nonempty vertex sets cut out by facet subsets.
    let mut geometric: Vec<Vec<usize>> = Vec::new();
    for bits in 0usize..(1 << facets.len()) {
        let chosen: Vec<(usize, usize)> = (0..facets.len())
            .filter(|k| bits & (1 << k) != 0)
            .map(|k| facets[k])
            .collect();
        let vs = face_vertices(&chosen);
        if !vs.is_empty() && !geometric.contains(&vs) {
            geometric.push(vs);
        }
    }
    geometric.sort();

    let partial = enumerate_partial_trees(m)?;
    let mut images: Vec<(usize, Vec<usize>)> = Vec::new(); // (non-mandatory edges, vertex set)
    for tree in &partial {
        report.samples += 1;
        let intervals = tree_to_assoc_face(tree);
        let vs = face_vertices(&intervals);
        if vs.is_empty() {
            report.fail(format!("{:?}", tree.edges()), "empty face", "nonempty");
        }
        images.push((intervals.len(), vs));
    }

    // Injectivity and surjectivity onto the geometric face set.
    let mut image_sets: Vec<Vec<usize>> = images.iter().map(|(_, v)| v.clone()).collect();
    image_sets.sort();
    let distinct = {
        let mut s = image_sets.clone();
        s.dedup();
        s.len()
    };
    if distinct != partial.len() {
        report.fail("injectivity", distinct, partial.len());
    }
    if image_sets != geometric {
        report.fail(
            "surjectivity",
            format!("{} images", image_sets.len()),
            format!("{} geometric faces", geometric.len()),
        );
    }

    // Cardinalities per codimension.
    for k in 0..m - 1 {
        let trees_k = partial.iter().filter(|t| t.edge_count() - 1 == k).count();
        let faces_k = images.iter().filter(|(codim, _)| *codim == k).count();
        if trees_k != faces_k {
            report.fail(format!("codim {k}"), trees_k, faces_k);
        }
    }

    // Inclusion reversal on all pairs.
    for (i, a) in partial.iter().enumerate() {
        for (j, b) in partial.iter().enumerate() {
            if i == j {
                continue;
            }
            let a_in_b = a.edges().is_subset(b.edges());
            let face_b_in_a = images[j].1.iter().all(|v| images[i].1.contains(v));
            if a_in_b != face_b_in_a {
                report.fail(
                    format!("{:?} vs {:?}", a.edges(), b.edges()),
                    format!("edge inclusion {a_in_b}"),
                    format!("face reverse-inclusion {face_b_in_a}"),
                );
            }
        }
    }
    Ok(report.finish())
}

/// The six-term canonical-form sum vanishes identically at zero constants on
/// the slice through the origin.
pub fn check_canonical_vanishing(samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("canonical-vanishing", seed)
        .param("n", 3)
        .param("samples", samples);
    let mut rng = sampling::rng(seed);
    let d = ConstantMatrix::zero(3);
    let zero = Rat::zero();
    let mut done = 0;
    while done < samples {
        let x = sampling::random_slice_point(3, &zero, &mut rng);
        if x.iter().any(|v| v.is_zero()) {
            continue;
        }
        let value = match canonical_form_sum(&d, &x) {
            Ok(v) => v,
            Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        };
        if !value.is_zero() {
            report.fail(point_label(&x), format_rat(&value), "0");
        }
        done += 1;
        report.samples += 1;
    }
    Ok(report.finish())
}

/// Every check at either full or reduced (`small`) sizes, in a fixed order.
pub fn run_all(small: bool, seed: u64) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let (d_draws, pts, samples) = if small { (4, 40, 25) } else { (20, 200, 100) };
    for n in 3..=4 {
        reports.push(check_alternating_sum(n, d_draws, pts, seed)?);
    }
    reports.push(check_canonical_vanishing(samples, seed)?);
    for n in 3..=if small { 4 } else { 10 } {
        reports.push(check_amplitude_m(n, samples, seed)?);
    }
    for m in 2..=if small { 4 } else { 6 } {
        reports.push(check_cyclic_sum(m, samples, seed)?);
    }
    for m in 2..=if small { 4 } else { 5 } {
        reports.push(check_discrete_ie(m, samples, seed)?);
    }
    for m in 3..=if small { 4 } else { 5 } {
        reports.push(check_duality(m, seed)?);
    }
    for m in 2..=if small { 4 } else { 6 } {
        reports.push(check_lt_triangulation(m, samples, seed)?);
    }
    for n in 2..=4 {
        reports.push(check_minkowski(n, if small { 5 } else { 20 }, samples / 5, seed)?);
    }
    for n in 4..=if small { 4 } else { 8 } {
        reports.push(check_mizera(n, samples, seed)?);
    }
    for m in 2..=if small { 4 } else { 6 } {
        reports.push(check_partition(m, samples, seed)?);
    }
    for n in 2..=if small { 4 } else { 5 } {
        reports.push(check_supermodularity_random(n, if small { 10 } else { 50 }, seed)?);
    }
    Ok(reports)
}

/// Wraps a report list into the versioned JSON envelope.
pub fn reports_to_json(reports: &[CheckReport]) -> Value {
    json!({
        "schema": SCHEMA,
        "passed": reports.iter().all(|r| r.passed),
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    })
}
