//! The weighted Farey graph and its DOT, JSON and SVG emitters.

use std::fmt::Write as _;

use qdeform_core::farey::{farey_decompose, stern_brocot_enum, ExtRational, FareyError};
use qdeform_core::qdeform::{DeformError, Flavor, Method, QRational, Session};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub value: ExtRational,
    pub right: QRational,
    pub left: QRational,
}

/// An edge between Farey neighbours. `l` is the index of the mediant of its
/// endpoints, so the edge weighs `q^l` in the right recursion and `q^-l` in
/// the left one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub l: i64,
}

#[derive(Clone, Debug)]
pub struct FareyGraph {
    pub depth: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

fn monomial(l: i64) -> String {
    match l {
        0 => "1".into(),
        1 => "q".into(),
        _ => format!("q^{l}"),
    }
}

impl Edge {
    pub fn weight_sharp(&self) -> String {
        monomial(self.l)
    }

    pub fn weight_flat(&self) -> String {
        monomial(-self.l)
    }
}

/// JSON view of an edge with its two weights spelled out.
struct EdgeOut<'a>(&'a Edge);

impl Serialize for EdgeOut<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Edge", 5)?;
        st.serialize_field("source", &self.0.source)?;
        st.serialize_field("target", &self.0.target)?;
        st.serialize_field("l", &self.0.l)?;
        st.serialize_field("weight_sharp", &self.0.weight_sharp())?;
        st.serialize_field("weight_flat", &self.0.weight_flat())?;
        st.end()
    }
}

/// `0`, `∞` and the Stern–Brocot nodes above `depth`, with every edge of
/// the Farey tessellation among them: `2^depth + 1` vertices and
/// `2^(depth+1) - 1` edges.
pub fn farey_graph(depth: u32) -> Result<FareyGraph, DeformError> {
    let mut values = vec![ExtRational::ZERO, ExtRational::INFINITY];
    if depth > 0 {
        values.extend(stern_brocot_enum(depth - 1));
    }
    let index = |x: ExtRational| {
        values
            .iter()
            .position(|&v| v == x)
            .expect("parent listed before child")
    };

    let mut edges = vec![Edge {
        source: 0,
        target: 1,
        l: edge_index(values[0], values[1])?,
    }];
    for (i, &x) in values.iter().enumerate().skip(2) {
        let d = farey_decompose(x)?;
        for parent in [d.left_parent, d.right_parent] {
            edges.push(Edge {
                source: index(parent),
                target: i,
                l: edge_index(parent, x)?,
            });
        }
    }

    let mut session = Session::new();
    let vertices = values
        .iter()
        .map(|&x| {
            Ok(Vertex {
                value: x,
                right: session.deform(x, Flavor::Sharp, Method::Matrix)?,
                left: session.deform(x, Flavor::Flat, Method::Matrix)?,
            })
        })
        .collect::<Result<_, DeformError>>()?;
    Ok(FareyGraph {
        depth,
        vertices,
        edges,
    })
}

fn edge_index(a: ExtRational, b: ExtRational) -> Result<i64, FareyError> {
    Ok(farey_decompose(a.mediant(b)?)?.l)
}

impl FareyGraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(EdgeOut).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph farey {\n  node [shape=circle, fontsize=10];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{i} [label=\"{}\", tooltip=\"right: {}\\nleft: {}\"];",
                v.value, v.right, v.left
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -- v{} [label=\"{}\", tooltip=\"l={}; flat: {}\"];",
                e.source,
                e.target,
                e.weight_sharp(),
                e.l,
                e.weight_flat()
            );
        }
        out.push_str("}\n");
        out
    }

    /// Upper half-plane picture: vertices on the real axis at `r/s`, edges
    /// as semicircles, edges to `∞` as vertical rays.
    pub fn to_svg(&self) -> String {
        const WIDTH: f64 = 800.0;
        const HEIGHT: f64 = 440.0;
        const MARGIN: f64 = 40.0;
        let baseline = HEIGHT - MARGIN;
        let max = self
            .vertices
            .iter()
            .filter(|v| !v.value.is_infinite())
            .map(|v| v.value.numer() as f64 / v.value.denom() as f64)
            .fold(1.0, f64::max);
        let scale = (WIDTH - 2.0 * MARGIN) / max;
        let x_of = |v: ExtRational| MARGIN + scale * v.numer() as f64 / v.denom() as f64;

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(
            out,
            "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" style=\"fill:#ffffff\"/>"
        );
        let _ = writeln!(
            out,
            "<line x1=\"0\" y1=\"{baseline:.2}\" x2=\"{WIDTH}\" y2=\"{baseline:.2}\" style=\"stroke:#999999;stroke-width:1\"/>"
        );
        for e in &self.edges {
            let (a, b) = (self.vertices[e.source].value, self.vertices[e.target].value);
            let label = e.weight_sharp();
            let (path, lx, ly) = match (a.is_infinite(), b.is_infinite()) {
                (false, false) => {
                    let (x1, x2) = (x_of(a).min(x_of(b)), x_of(a).max(x_of(b)));
                    let r = (x2 - x1) / 2.0;
                    (
                        format!(
                            "M {x1:.2} {baseline:.2} A {r:.2} {r:.2} 0 0 1 {x2:.2} {baseline:.2}"
                        ),
                        (x1 + x2) / 2.0,
                        baseline - r - 4.0,
                    )
                }
                _ => {
                    let x = if a.is_infinite() { x_of(b) } else { x_of(a) };
                    (
                        format!("M {x:.2} {baseline:.2} L {x:.2} {MARGIN:.2}"),
                        x + 4.0,
                        MARGIN + 12.0,
                    )
                }
            };
            let _ = writeln!(
                out,
                "<path d=\"{path}\" style=\"fill:none;stroke:#1f4e79;stroke-width:1.2\"><title>l={}</title></path>",
                e.l
            );
            let _ = writeln!(
                out,
                "<text x=\"{lx:.2}\" y=\"{ly:.2}\" style=\"font-family:monospace;font-size:10px;fill:#1f4e79\">{label}</text>"
            );
        }
        for v in &self.vertices {
            if v.value.is_infinite() {
                let _ = writeln!(
                    out,
                    "<text x=\"{:.2}\" y=\"{:.2}\" style=\"font-family:monospace;font-size:12px;fill:#000000\">1/0<title>{} | {}</title></text>",
                    WIDTH - MARGIN,
                    MARGIN - 10.0,
                    v.right,
                    v.left
                );
                continue;
            }
            let x = x_of(v.value);
            let _ = writeln!(
                out,
                "<circle cx=\"{x:.2}\" cy=\"{baseline:.2}\" r=\"3\" style=\"fill:#000000\"><title>{} | {}</title></circle>",
                v.right, v.left
            );
            let _ = writeln!(
                out,
                "<text x=\"{x:.2}\" y=\"{:.2}\" style=\"font-family:monospace;font-size:10px;fill:#000000;text-anchor:middle\">{}</text>",
                baseline + 16.0,
                v.value
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
