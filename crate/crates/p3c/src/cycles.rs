//! Canonical and allowable 6-cycles of BCS(G): recognition, shifting, the
//! cutset correspondence, enumeration and cutset classification.
//!
//! A canonical cycle is an induced 6-cycle alternating between vertex nodes
//! and non-vertex nodes that routes adjacent cutset vertices through their
//! edge node and is not the neighbor set of a triangular face. Canonical
//! cycles are in bijection with the 3-cutsets of G.

use crate::bcs::{BcsGraph, Origin};
use crate::error::P3cError;
use crate::fasthash::FastMap;
use crate::orientation::DualTreeIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleKind {
    Canonical,
    Allowable,
    Plain,
}

/// A 6-cycle of BCS nodes in normal form: the lexicographically least
/// sequence over all rotations and reflections. Two cycles are equal iff
/// their keys are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SixCycle {
    pub nodes: [usize; 6],
}

impl SixCycle {
    pub fn new(nodes: [usize; 6]) -> Self {
        SixCycle {
            nodes: normalize(nodes),
        }
    }

    pub fn key(&self) -> [usize; 6] {
        self.nodes
    }
}

fn normalize(nodes: [usize; 6]) -> [usize; 6] {
    let mut best: Option<[usize; 6]> = None;
    for reflect in [false, true] {
        let base: [usize; 6] = if reflect {
            [nodes[5], nodes[4], nodes[3], nodes[2], nodes[1], nodes[0]]
        } else {
            nodes
        };
        for r in 0..6 {
            let mut cand = [0usize; 6];
            for i in 0..6 {
                cand[i] = base[(i + r) % 6];
            }
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Three G-vertex ids, sorted; deleting them disconnects G when produced
/// from a canonical cycle.
pub type CutsetTriple = [usize; 3];

fn is_six_cycle(bcs: &BcsGraph, nodes: &[usize; 6]) -> bool {
    let mut sorted = *nodes;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    (0..6).all(|i| bcs.has_edge(nodes[i], nodes[(i + 1) % 6]))
}

fn is_induced(bcs: &BcsGraph, nodes: &[usize; 6]) -> bool {
    for i in 0..6 {
        for d in 2..=3 {
            if d == 3 && i >= 3 {
                continue;
            }
            if bcs.has_edge(nodes[i], nodes[(i + d) % 6]) {
                return false;
            }
        }
    }
    true
}

/// Does a triangular face of G have boundary exactly {a, b, c}?
fn is_triangular_face(bcs: &BcsGraph, a: usize, b: usize, c: usize) -> bool {
    let Some(e) = bcs.g.edge_between(a, b) else {
        return false;
    };
    let (f1, f2) = bcs.g.faces_of_edge(e);
    let mut want = [a, b, c];
    want.sort_unstable();
    [f1, f2].iter().any(|&f| {
        let face = &bcs.g.faces[f];
        if face.len() != 3 {
            return false;
        }
        let mut vs: Vec<usize> = face.vertices().collect();
        vs.sort_unstable();
        vs == want
    })
}

/// Canonical cycle recognition.
pub fn is_canonical(bcs: &BcsGraph, c: &SixCycle) -> bool {
    let nodes = &c.nodes;
    if !is_six_cycle(bcs, nodes) || !is_induced(bcs, nodes) {
        return false;
    }
    // alternation between vertex nodes and non-vertex nodes
    let phase = if bcs.is_gvertex(nodes[0]) { 0 } else { 1 };
    for i in 0..6 {
        if bcs.is_gvertex(nodes[i]) != (i % 2 == phase % 2) {
            return false;
        }
    }
    // adjacent cutset vertices must be joined through their edge node
    let vpos = [phase % 2, phase % 2 + 2, phase % 2 + 4];
    for &p in &vpos {
        let u = nodes[p];
        let w = nodes[(p + 2) % 6];
        let mid = nodes[(p + 1) % 6];
        if let Some(e) = bcs.g.edge_between(u, w) {
            if mid != bcs.enode(e) {
                return false;
            }
        } else if let Origin::Edge(_) = bcs.origin(mid) {
            return false;
        }
    }
    // not the six neighbours of a triangular face
    let all_edges = vpos.iter().all(|&p| matches!(bcs.origin(nodes[(p + 1) % 6]), Origin::Edge(_)));
    if all_edges {
        let (a, b, c3) = (nodes[vpos[0]], nodes[vpos[1]], nodes[vpos[2]]);
        if is_triangular_face(bcs, a, b, c3) {
            return false;
        }
    }
    true
}

/// Allowable cycle recognition: induced 6-cycle avoiding the three forbidden
/// local configurations.
pub fn is_allowable(bcs: &BcsGraph, c: &SixCycle) -> bool {
    let nodes = &c.nodes;
    if !is_six_cycle(bcs, nodes) || !is_induced(bcs, nodes) {
        return false;
    }
    for i in 0..6 {
        let prev = nodes[(i + 5) % 6];
        let cur = nodes[i];
        let next = nodes[(i + 1) % 6];
        match (bcs.origin(prev), bcs.origin(cur), bcs.origin(next)) {
            // x - f - y with x, y adjacent vertices of the face f
            (Origin::Vertex(x), Origin::Face(_), Origin::Vertex(y)) => {
                if bcs.g.has_edge(x, y) {
                    return false;
                }
            }
            // f1 - x - f2 where f1, f2 are the two sides of an edge at x
            (Origin::Face(f1), Origin::Vertex(x), Origin::Face(f2)) => {
                for &(_, e) in bcs.g.neighbors(x) {
                    let (a, b) = bcs.g.faces_of_edge(e);
                    if (a, b) == (f1, f2) || (a, b) == (f2, f1) {
                        return false;
                    }
                }
            }
            _ => {}
        }
    }
    // all six nodes with a common neighbour
    let pivot = *nodes
        .iter()
        .min_by_key(|&&x| bcs.degree(x))
        .unwrap();
    for &(w, _) in &bcs.adj[pivot] {
        if nodes.iter().all(|&x| bcs.has_edge(w, x)) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct Shift {
    pub cycle: SixCycle,
    pub canonical: bool,
}

/// All shifts of an allowable cycle: every face-edge-face subpath is replaced
/// by one of the edge's endpoints (two choices each), then vertex-face-vertex
/// subpaths over a G-edge collapse onto the edge node. Each shift is either
/// canonical or the neighbor set of a triangular face.
pub fn shifts(bcs: &BcsGraph, c: &SixCycle) -> Vec<Shift> {
    debug_assert!(is_allowable(bcs, c));
    let nodes = c.nodes;
    let mut shiftable: Vec<(usize, usize, usize)> = Vec::new(); // (pos, endpoint u, endpoint v)
    for i in 0..6 {
        let prev = bcs.origin(nodes[(i + 5) % 6]);
        let cur = bcs.origin(nodes[i]);
        let next = bcs.origin(nodes[(i + 1) % 6]);
        if let (Origin::Face(_), Origin::Edge(e), Origin::Face(_)) = (prev, cur, next) {
            let (u, v) = bcs.g.edges[e];
            shiftable.push((i, u, v));
        }
    }
    let mut out: Vec<Shift> = Vec::new();
    for mask in 0..(1u32 << shiftable.len()) {
        let mut cand = nodes;
        for (bit, &(pos, u, v)) in shiftable.iter().enumerate() {
            cand[pos] = bcs.vnode(if mask >> bit & 1 == 0 { u } else { v });
        }
        // forced replacements: u - f - v over an edge uv becomes u - uv - v
        let mut replace: Vec<(usize, usize)> = Vec::new();
        for i in 0..6 {
            let prev = cand[(i + 5) % 6];
            let next = cand[(i + 1) % 6];
            if matches!(bcs.origin(cand[i]), Origin::Face(_))
                && bcs.is_gvertex(prev)
                && bcs.is_gvertex(next)
            {
                if let Some(e) = bcs.g.edge_between(prev, next) {
                    replace.push((i, bcs.enode(e)));
                }
            }
        }
        for (i, node) in replace {
            cand[i] = node;
        }
        if !is_six_cycle(bcs, &cand) {
            continue;
        }
        let cycle = SixCycle::new(cand);
        if out.iter().any(|s| s.cycle == cycle) {
            continue;
        }
        let canonical = is_canonical(bcs, &cycle);
        out.push(Shift { cycle, canonical });
    }
    out
}

/// The three G-vertices of a canonical cycle, sorted.
pub fn cutset_of(bcs: &BcsGraph, c: &SixCycle) -> CutsetTriple {
    let mut t: Vec<usize> = c
        .nodes
        .iter()
        .filter(|&&x| bcs.is_gvertex(x))
        .copied()
        .collect();
    debug_assert_eq!(t.len(), 3);
    t.sort_unstable();
    [t[0], t[1], t[2]]
}

/// The unique two-edge connection usable in a canonical cycle between two
/// G-vertices: their edge node when adjacent, else their unique shared face.
fn canonical_middle(bcs: &BcsGraph, u: usize, w: usize) -> Option<usize> {
    if let Some(e) = bcs.g.edge_between(u, w) {
        return Some(bcs.enode(e));
    }
    let mut found = None;
    for f in bcs.g.faces_around_vertex(u) {
        if bcs.g.faces[f].vertices().any(|x| x == w) {
            match found {
                None => found = Some(f),
                Some(prev) if prev == f => {}
                Some(prev) => panic!(
                    "non-adjacent vertices {u}, {w} share faces {prev} and {f}: input is not 3-connected"
                ),
            }
        }
    }
    found.map(|f| bcs.fnode(f))
}

/// The canonical cycle whose cutset is `t`, or an error if `t` does not
/// separate G.
pub fn cycle_of_cutset(bcs: &BcsGraph, t: CutsetTriple) -> Result<SixCycle, P3cError> {
    let [a, b, c] = t;
    let (Some(mab), Some(mbc), Some(mca)) = (
        canonical_middle(bcs, a, b),
        canonical_middle(bcs, b, c),
        canonical_middle(bcs, c, a),
    ) else {
        return Err(P3cError::NotACutset(t));
    };
    let nodes = [bcs.vnode(a), mab, bcs.vnode(b), mbc, bcs.vnode(c), mca];
    let cycle = SixCycle::new(nodes);
    if !is_six_cycle(bcs, &cycle.nodes) || !is_canonical(bcs, &cycle) {
        return Err(P3cError::NotACutset(t));
    }
    Ok(cycle)
}

/// List every canonical cycle of BCS(G), deduplicated and sorted by key.
///
/// Direct search: for each vertex, pair up the vertices reachable by a
/// canonical two-edge path. Worst case quadratic in the degree sums (wheels);
/// the pipeline only runs this on frameless pieces.
pub fn enumerate_canonical_cycles(bcs: &BcsGraph) -> Vec<SixCycle> {
    let n = bcs.n();
    let mut partners: Vec<FastMap<usize, usize>> = vec![FastMap::default(); n];
    for u in 0..n {
        for &(w, e) in bcs.g.neighbors(u) {
            partners[u].insert(w, bcs.enode(e));
        }
        for f in bcs.g.faces_around_vertex(u) {
            for w in bcs.g.faces[f].vertices() {
                if w != u && !bcs.g.has_edge(u, w) {
                    let prev = partners[u].insert(w, bcs.fnode(f));
                    assert!(
                        prev.is_none() || prev == Some(bcs.fnode(f)),
                        "non-adjacent vertices {u}, {w} share two faces: input is not 3-connected"
                    );
                }
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        let mut ps: Vec<usize> = partners[a].keys().copied().filter(|&x| x > a).collect();
        ps.sort_unstable();
        for (i, &b) in ps.iter().enumerate() {
            for &c in &ps[i + 1..] {
                let Some(&mbc) = partners[b].get(&c) else {
                    continue;
                };
                let nodes = [bcs.vnode(a), partners[a][&b], bcs.vnode(b), mbc, bcs.vnode(c), partners[a][&c]];
                if !is_six_cycle(bcs, &nodes) {
                    continue;
                }
                let cycle = SixCycle::new(nodes);
                if is_canonical(bcs, &cycle) {
                    out.push(cycle);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Is `t` the neighborhood of a degree-three vertex?
pub fn is_trivial_cutset(bcs: &BcsGraph, t: CutsetTriple) -> bool {
    for &w in &t {
        for &(u, _) in bcs.g.neighbors(w) {
            if bcs.g.degree(u) == 3 {
                let mut nb: Vec<usize> = bcs.g.neighbors(u).iter().map(|&(x, _)| x).collect();
                nb.sort_unstable();
                if nb == t {
                    return true;
                }
            }
        }
    }
    false
}

/// v-non-shiftability of a canonical cycle: the cutset avoids `v` and every
/// cutset vertex has at least two G-neighbors on or inside the cycle.
///
/// Requires `idx` rooted at a flag incident to `v`, so that `v` lies outside
/// every cycle that avoids it. Walks the neighbors of each cutset vertex with
/// early exit at two hits.
pub fn is_v_nonshiftable(bcs: &BcsGraph, idx: &DualTreeIndex, c: &SixCycle, v: usize) -> bool {
    debug_assert_eq!(
        bcs.flags[idx.outer_flag].v, v,
        "index must be rooted at a flag incident to v"
    );
    let cutset = cutset_of(bcs, c);
    if cutset.contains(&v) {
        return false;
    }
    for &w in &cutset {
        let mut hits = 0;
        for &(u, _) in bcs.g.neighbors(w) {
            if cutset.contains(&u) {
                hits += 1;
            } else {
                // u is off the cycle; any incident flag gives its side
                let flag = bcs.node_flag[bcs.vnode(u)];
                if idx.face_in_cycle(bcs, flag, &c.nodes) {
                    hits += 1;
                }
            }
            if hits >= 2 {
                break;
            }
        }
        if hits < 2 {
            return false;
        }
    }
    true
}
