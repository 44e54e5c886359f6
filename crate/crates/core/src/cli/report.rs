//! JSON documents and DOT export.

use serde_json::{json, Value};

use crate::embedding::{classify, PlaneGraph};
use crate::fumcheck::{EdgeColoring, VertexColoring};

pub const SCHEMA: u32 = 1;

/// Fill colours for colours `1..=6`; larger colours wrap around.
pub const PALETTE: [&str; 6] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33",
];

fn palette(c: u32) -> &'static str {
    PALETTE[((c.max(1) - 1) % 6) as usize]
}

/// Wraps a payload into a versioned document.
pub fn document(mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("schema".into(), json!(SCHEMA));
    }
    body
}

pub fn error_document(code: &str, message: &str) -> Value {
    document(json!({ "error": { "code": code, "message": message } }))
}

pub fn faces_json(g: &PlaneGraph) -> Value {
    let faces: Vec<Value> = g
        .faces()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "index": i,
                "outer": f.is_outer(),
                "length": f.len(),
                "walk": f.darts().iter().map(|d| d.tail).collect::<Vec<_>>(),
                "vertices": f.vertices(),
            })
        })
        .collect();
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "faces": faces,
    })
}

pub fn classify_json(g: &PlaneGraph) -> Value {
    match classify(g) {
        Ok(c) => serde_json::to_value(c).expect("plain struct"),
        Err(_) => Value::Null,
    }
}

pub fn edge_coloring_json(c: &EdgeColoring) -> Value {
    let m: serde_json::Map<String, Value> = c
        .colors
        .iter()
        .map(|(e, &x)| (e.to_string(), json!(x)))
        .collect();
    Value::Object(m)
}

/// Undirected DOT graph with colours as labels and fills.
pub fn to_dot(g: &PlaneGraph, vc: Option<&VertexColoring>, ec: Option<&EdgeColoring>) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for v in 0..g.vertex_count() {
        match vc.and_then(|c| c.get(v)) {
            Some(c) => s.push_str(&format!(
                "  {v} [label=\"{v}:{c}\", fillcolor=\"{}\"];\n",
                palette(c)
            )),
            None => s.push_str(&format!("  {v};\n")),
        }
    }
    for &e in g.edges() {
        let outer = if g.is_outer_edge(e) {
            ", style=bold"
        } else {
            ""
        };
        match ec.and_then(|c| c.get(e)) {
            Some(c) => s.push_str(&format!(
                "  {} -- {} [label=\"{c}\", color=\"{}\"{outer}];\n",
                e.u(),
                e.v(),
                palette(c)
            )),
            None if outer.is_empty() => s.push_str(&format!("  {} -- {};\n", e.u(), e.v())),
            None => s.push_str(&format!("  {} -- {} [style=bold];\n", e.u(), e.v())),
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cycle;

    #[test]
    fn dot_mentions_colours() {
        let g = cycle(3);
        let c: VertexColoring = vec![1, 2, 7].into();
        let d = to_dot(&g, Some(&c), None);
        assert!(d.contains("2 [label=\"2:7\", fillcolor=\"#e41a1c\"]"));
        assert!(d.contains("0 -- 1"));
        assert!(d.starts_with("graph G {"));
    }

    #[test]
    fn documents_carry_schema() {
        let d = error_document("input_error", "x");
        assert_eq!(d["schema"], json!(1));
        assert_eq!(d["error"]["code"], json!("input_error"));
    }
}
