//! JSON, DOT and SVG renderings of graphs, point sets and fits.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::ehrhart::{FitReport, Sample};
use crate::error::{Error, Result};
use crate::firing::FiringGraph;
use crate::polytope::DiscretePermutohedron;
use crate::rootsys::RootSystem;
use crate::weight::Weight;

pub fn graph_json(g: &FiringGraph) -> Value {
    json!({
        "system": g.system,
        "params": {
            "kind": g.params.kind,
            "k_short": g.params.k.short,
            "k_long": g.params.k.long,
        },
        "vertices": g.vertices,
        "edges": g.edges,
    })
}

pub fn graph_dot(rs: &RootSystem, g: &FiringGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{} {} k={}\" {{", g.system, g.params.kind, g.params.k);
    for v in &g.vertices {
        let _ = writeln!(s, "  \"{v}\" [label=\"{v}\"];");
    }
    for e in &g.edges {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            g.vertices[e.s],
            g.vertices[e.t],
            rs.pos_roots[e.root].expansion()
        );
    }
    s.push_str("}\n");
    s
}

pub fn points_json(rs: &RootSystem, p: &DiscretePermutohedron) -> Value {
    json!({
        "system": rs.name(),
        "center": p.center,
        "vertices": p.points,
    })
}

fn samples_json(samples: &[Sample]) -> Value {
    Value::Array(samples.iter().map(|s| json!({"k": s.k, "count": s.count})).collect())
}

pub fn fit_json(r: &FitReport) -> Value {
    let monomials: Vec<Value> = r
        .polynomial
        .coeffs
        .iter()
        .map(|(exp, c)| json!({"exp": exp, "num": c.numer().to_string(), "den": c.denom().to_string()}))
        .collect();
    let mut v = json!({
        "system": r.system,
        "label": r.label,
        "kind": r.kind,
        "variables": r.polynomial.variables,
        "degree_bound": r.polynomial.degree_bound,
        "polynomial": r.polynomial.to_string(),
        "monomials": monomials,
        "integer": r.integer,
        "nonnegative": r.nonnegative,
        "samples": samples_json(&r.samples),
        "verified_at": samples_json(&r.verified_at),
        "tags": r.tags,
    });
    if let Some(k0) = &r.k0 {
        v["k0"] = json!({"k": k0.k, "count": k0.count});
    }
    v
}

/// Euclidean coordinates for a rank-2 weight: root coordinates pushed through
/// the Cholesky factor of the Gram matrix `(α_i, α_j)`.
pub struct Embedding {
    l: [[f64; 2]; 2],
}

impl Embedding {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        if rs.rank() != 2 {
            return Err(Error::RankMismatch { rank: 2, got: rs.rank() });
        }
        let g = |i: usize, j: usize| (rs.symmetrizer[j] * rs.cartan[i][j]) as f64;
        let l00 = g(0, 0).sqrt();
        let l10 = g(1, 0) / l00;
        let l11 = (g(1, 1) - l10 * l10).sqrt();
        Ok(Embedding {
            l: [[l00, 0.0], [l10, l11]],
        })
    }

    pub fn point(&self, rs: &RootSystem, w: &Weight) -> (f64, f64) {
        let x: Vec<f64> = rs
            .root_coords(w)
            .iter()
            .map(|r| r.to_f64().unwrap_or(0.0))
            .collect();
        // y = Lᵀ x
        let y0 = self.l[0][0] * x[0] + self.l[1][0] * x[1];
        let y1 = self.l[1][1] * x[1];
        (y0, y1)
    }
}

pub fn graph_svg(rs: &RootSystem, g: &FiringGraph) -> Result<String> {
    let emb = Embedding::new(rs)?;
    let pts: Vec<(f64, f64)> = g.vertices.iter().map(|v| emb.point(rs, v)).collect();
    let scale = 40.0;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let pad = 1.0;
    let width = (xmax - xmin + 2.0 * pad) * scale;
    let height = (ymax - ymin + 2.0 * pad) * scale;
    let tx = |x: f64| (x - xmin + pad) * scale;
    let ty = |y: f64| (ymax - y + pad) * scale;

    let mut has_out = vec![false; g.vertices.len()];
    for e in &g.edges {
        has_out[e.s] = true;
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    let _ = writeln!(s, "<title>{} {} k={}</title>", g.system, g.params.kind, g.params.k);
    s.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444\"/></marker></defs>\n",
    );
    for e in &g.edges {
        let (x1, y1) = (tx(pts[e.s].0), ty(pts[e.s].1));
        let (x2, y2) = (tx(pts[e.t].0), ty(pts[e.t].1));
        // stop short of the target dot
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let shrink = 4.0 / len;
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#444\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>",
            x1,
            y1,
            x2 - dx * shrink,
            y2 - dy * shrink
        );
    }
    for (i, v) in g.vertices.iter().enumerate() {
        let fill = if has_out[i] { "#ffffff" } else { "#c0392b" };
        let _ = writeln!(
            s,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{fill}\" stroke=\"#000\" stroke-width=\"0.8\"><title>{v}</title></circle>",
            tx(pts[i].0),
            ty(pts[i].1)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::firing::{build_graph, FiringParams, Region};
    use crate::limits::Limits;

    #[test]
    fn json_shape() {
        let a1 = RootSystem::from_spec("A1").unwrap();
        let g = build_graph(&a1, &Region::centered_box(1), &FiringParams::symmetric(0), &Limits::default()).unwrap();
        let v = graph_json(&g);
        assert_eq!(
            v,
            json!({
                "system": "A1",
                "params": {"kind": "symmetric", "k_short": 0, "k_long": 0},
                "vertices": [[-1], [0], [1]],
                "edges": [{"s": 0, "t": 2, "root": 0}],
            })
        );
    }

    #[test]
    fn dot_labels() {
        let a2 = RootSystem::from_spec("A2").unwrap();
        let g = build_graph(&a2, &Region::Box { lo: -1, hi: 0 }, &FiringParams::symmetric(0), &Limits::default()).unwrap();
        let d = graph_dot(&a2, &g);
        assert!(d.contains("\"-1,0\" [label=\"-1,0\"];"));
        assert!(d.contains("[label=\"a1\"]") || d.contains("[label=\"a2\"]") || g.edges.is_empty());
        assert!(d.starts_with("digraph") && d.ends_with("}\n"));
    }

    #[test]
    fn embedding_is_isometric() {
        for s in ["A2", "B2", "G2"] {
            let rs = RootSystem::from_spec(s).unwrap();
            let e = Embedding::new(&rs).unwrap();
            for idx in 0..rs.num_pos_roots() {
                let (x, y) = e.point(&rs, rs.root_weight(idx));
                let want = 2.0 * rs.root_norm(idx) as f64;
                assert!((x * x + y * y - want).abs() < 1e-9, "{s}");
            }
        }
        assert!(Embedding::new(&RootSystem::from_spec("A3").unwrap()).is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let a2 = RootSystem::from_spec("A2").unwrap();
        let g = build_graph(&a2, &Region::centered_box(2), &FiringParams::truncated(0), &Limits::default()).unwrap();
        let a = graph_svg(&a2, &g).unwrap();
        assert_eq!(a, graph_svg(&a2, &g).unwrap());
        assert_eq!(a.matches("<circle").count(), 25);
    }
}
