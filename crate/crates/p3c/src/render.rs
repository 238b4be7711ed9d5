//! SVG rendering: the input graph under a Tutte layout with one closed curve
//! per family cutset, drawn through the subdivision positions of its
//! canonical cycle.

use crate::bcs::{build_bcs, Origin};
use crate::cycles::{self, CutsetTriple};
use crate::error::P3cError;
use crate::planar::EmbeddedPlanarGraph;

const SIZE: f64 = 720.0;
const MARGIN: f64 = 40.0;

/// Tutte barycentric layout: the largest face (or the outer face hint) is
/// pinned to a regular polygon and every other vertex is relaxed to the
/// average of its neighbors.
pub fn tutte_layout(g: &EmbeddedPlanarGraph) -> Vec<(f64, f64)> {
    let outer = g
        .outer_face_hint
        .unwrap_or_else(|| {
            g.faces
                .iter()
                .max_by_key(|f| (f.len(), usize::MAX - f.id))
                .map(|f| f.id)
                .unwrap_or(0)
        });
    let ring: Vec<usize> = g.faces[outer].vertices().collect();
    let n = g.n();
    let r = SIZE / 2.0 - MARGIN;
    let mut pos = vec![(SIZE / 2.0, SIZE / 2.0); n];
    let mut fixed = vec![false; n];
    for (i, &v) in ring.iter().enumerate() {
        let ang = 2.0 * std::f64::consts::PI * i as f64 / ring.len() as f64;
        pos[v] = (SIZE / 2.0 + r * ang.cos(), SIZE / 2.0 + r * ang.sin());
        fixed[v] = true;
    }
    for _ in 0..600 {
        let mut shift: f64 = 0.0;
        for v in 0..n {
            if fixed[v] {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for &(w, _) in g.neighbors(v) {
                sx += pos[w].0;
                sy += pos[w].1;
            }
            let d = g.degree(v) as f64;
            let next = (sx / d, sy / d);
            shift = shift.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if shift < 1e-9 {
            break;
        }
    }
    pos
}

fn layout_degenerate(g: &EmbeddedPlanarGraph, pos: &[(f64, f64)]) -> bool {
    if pos.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return true;
    }
    for &(u, v) in &g.edges {
        let d = (pos[u].0 - pos[v].0).abs() + (pos[u].1 - pos[v].1).abs();
        if d < 1e-6 {
            return true;
        }
    }
    false
}

/// Render `g` and the cut curves of `cutsets` as a standalone SVG document.
/// On layout failure the plain graph is emitted with a warning comment.
pub fn render_svg(g: &EmbeddedPlanarGraph, cutsets: &[CutsetTriple]) -> Result<String, P3cError> {
    assert!(g.f() > 0, "trace faces before rendering");
    let pos = tutte_layout(g);
    let degenerate = layout_degenerate(g, &pos);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE
    ));
    if degenerate {
        svg.push_str("<!-- warning: degenerate layout; curves omitted -->\n");
    }
    for &(u, v) in &g.edges {
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#444\" stroke-width=\"1.2\"/>\n",
            pos[u].0, pos[u].1, pos[v].0, pos[v].1
        ));
    }

    if !degenerate && !cutsets.is_empty() {
        let bcs = build_bcs(g)?;
        // positions for subdivision nodes: vertex, edge midpoint, face centroid
        let node_pos = |node: usize| -> (f64, f64) {
            match bcs.origin(node) {
                Origin::Vertex(v) => pos[v],
                Origin::Edge(e) => {
                    let (u, v) = g.edges[e];
                    ((pos[u].0 + pos[v].0) / 2.0, (pos[u].1 + pos[v].1) / 2.0)
                }
                Origin::Face(f) => {
                    let vs: Vec<usize> = g.faces[f].vertices().collect();
                    let (mut cx, mut cy) = (0.0, 0.0);
                    for &v in &vs {
                        cx += pos[v].0;
                        cy += pos[v].1;
                    }
                    let c = (cx / vs.len() as f64, cy / vs.len() as f64);
                    // the outer face centroid sits inside the drawing; push
                    // its node outside the boundary polygon instead
                    let outer = g
                        .outer_face_hint
                        .unwrap_or_else(|| {
                            g.faces
                                .iter()
                                .max_by_key(|x| (x.len(), usize::MAX - x.id))
                                .map(|x| x.id)
                                .unwrap()
                        });
                    if f == outer {
                        (SIZE - MARGIN / 3.0, MARGIN / 3.0)
                    } else {
                        c
                    }
                }
            }
        };
        let colors = ["#d23b3b", "#3b62d2"];
        for (i, &t) in cutsets.iter().enumerate() {
            let cycle = cycles::cycle_of_cutset(&bcs, t)
                .map_err(|e| P3cError::Invalid(format!("cutset {t:?} not drawable: {e}")))?;
            let pts: Vec<(f64, f64)> = cycle.nodes.iter().map(|&x| node_pos(x)).collect();
            let mut d = format!("M {:.1} {:.1}", pts[0].0, pts[0].1);
            for p in &pts[1..] {
                d.push_str(&format!(" L {:.1} {:.1}", p.0, p.1));
            }
            d.push_str(" Z");
            svg.push_str(&format!(
                "<path class=\"cut-curve\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2.4\" stroke-dasharray=\"7,4\" opacity=\"0.85\"/>\n",
                d,
                colors[i % colors.len()]
            ));
        }
    }

    for v in 0..g.n() {
        svg.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"6\" fill=\"#f4c542\" stroke=\"#333\"/>\n",
            pos[v].0, pos[v].1
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" text-anchor=\"middle\" dy=\"3\">{}</text>\n",
            pos[v].0, pos[v].1, v
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
