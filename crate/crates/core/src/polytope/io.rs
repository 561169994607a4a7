//! TOML polytope files:
//!
//! ```toml
//! ambient_dim = 2
//! vertices = [[0, 0], [0, 1], [1, 0], [1, 1]]
//!
//! [[facets]]
//! normal = [-1, 0]
//! offset = 0
//!
//! [[equalities]]
//! normal = [1, 1]
//! offset = 1
//! ```
//!
//! Vertices keep the order given in the file; that order is the default
//! vertex order downstream.

use super::PolytopeData;
use crate::error::{Error, Result};

pub fn read_polytope(text: &str) -> Result<PolytopeData> {
    toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(0);
        Error::Parse {
            line,
            message: e.message().to_string(),
        }
    })
}

pub fn write_polytope(data: &PolytopeData) -> String {
    let mut out = format!("ambient_dim = {}\n", data.ambient_dim);
    let list = |v: &[i64]| {
        let items: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("[{}]", items.join(", "))
    };
    out.push_str("vertices = [\n");
    for v in &data.vertices {
        out.push_str(&format!("    {},\n", list(v)));
    }
    out.push_str("]\n");
    for f in &data.facets {
        out.push_str(&format!(
            "\n[[facets]]\nnormal = {}\noffset = {}\n",
            list(&f.normal),
            f.offset
        ));
    }
    for e in &data.equalities {
        out.push_str(&format!(
            "\n[[equalities]]\nnormal = {}\noffset = {}\n",
            list(&e.normal),
            e.offset
        ));
    }
    out
}
