//! Browser demo bindings: three interactive views over the core library.
//!
//! Each function takes plain strings/integers from the page and returns a
//! JSON payload (with embedded SVG where relevant) for the static page in
//! `www/` to render. All geometry is computed exactly; the only floats are
//! the SVG screen coordinates.

use wasm_bindgen::prelude::*;

pub mod views {
    use permutokit::associahedron::AssocSpec;
    use permutokit::kinematics::ConstantMatrix;
    use permutokit::laplace::{consecutive_product_continuous, lt_continuous};
    use permutokit::rational::{format_rat, format_rat_vec, parse_rat, Rat};
    use permutokit::roottrees::enumerate_trees;
    use permutokit::sampling;
    use permutokit::zonotope::Zonotope;
    use permutokit::{Error, Result, SCHEMA};
    use serde_json::json;

    /// Hexagon explorer: H-rep, vertices, and SVG for three constants.
    pub fn zonotope_view(c12: &str, c23: &str, c13: &str) -> Result<String> {
        let d = ConstantMatrix::from_pairs(
            3,
            &[
                (1, 2, parse_rat(c12)?),
                (2, 3, parse_rat(c23)?),
                (1, 3, parse_rat(c13)?),
            ],
        )?;
        let z = Zonotope::new(d);
        let mut doc = z.to_json()?;
        doc["svg"] = json!(z.to_svg()?);
        Ok(doc.to_string())
    }

    /// Pentagon explorer: facets, vertices, and SVG for three constants.
    pub fn associahedron_view(c13: &str, c24: &str, c14: &str) -> Result<String> {
        let a = AssocSpec::new(
            4,
            &[
                (1, 3, parse_rat(c13)?),
                (2, 4, parse_rat(c24)?),
                (1, 4, parse_rat(c14)?),
            ],
        )?;
        let mut doc = a.to_json()?;
        doc["svg"] = json!(a.to_svg()?);
        Ok(doc.to_string())
    }

    /// Root-cone triangulation explorer: the trees for a given leaf count and
    /// the exact triangulation identity evaluated at a seeded chamber point.
    pub fn triangulation_view(m: usize, seed: u64) -> Result<String> {
        if !(2..=7).contains(&m) {
            return Err(Error::OutOfRange {
                what: "demo leaf count",
                value: m,
                max: 7,
            });
        }
        let mut rng = sampling::rng(seed);
        let y = sampling::decreasing_point(m, &mut rng);
        let trees = enumerate_trees(m)?;
        let mut sum = Rat::from_integer(0.into());
        let mut tree_docs = Vec::new();
        for tree in &trees {
            let value = lt_continuous(&tree.cone(), &y)?;
            sum += &value;
            tree_docs.push(json!({
                "edges": tree.edges().iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "laplace": format_rat(&value),
            }));
        }
        let lhs = consecutive_product_continuous(&y)?;
        let doc = json!({
            "schema": SCHEMA,
            "m": m,
            "count": trees.len(),
            "y": format_rat_vec(&y),
            "lhs": format_rat(&lhs),
            "sum": format_rat(&sum),
            "identity_holds": lhs == sum,
            "trees": tree_docs,
        });
        Ok(doc.to_string())
    }
}

fn to_js<T>(result: permutokit::Result<T>) -> Result<T, JsValue> {
    result.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn zonotope_view(c12: &str, c23: &str, c13: &str) -> Result<String, JsValue> {
    to_js(views::zonotope_view(c12, c23, c13))
}

#[wasm_bindgen]
pub fn associahedron_view(c13: &str, c24: &str, c14: &str) -> Result<String, JsValue> {
    to_js(views::associahedron_view(c13, c24, c14))
}

#[wasm_bindgen]
pub fn triangulation_view(m: u32, seed: u64) -> Result<String, JsValue> {
    to_js(views::triangulation_view(m as usize, seed))
}
