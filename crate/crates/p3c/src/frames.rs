//! Frames: wheel-like structures of internally disjoint three-edge paths
//! between a vertex pole and a face pole. Big frames concentrate all the
//! non-laminar bulk of the cycle family; each one contributes an independent
//! nearly-maximal laminar selection of canonical cycles.

use std::collections::HashMap;

use crate::bcs::{BcsGraph, Origin};
use crate::cycles::{self, SixCycle};
use crate::decompose::Mode;
use crate::orientation::DualTreeIndex;

/// Frames with at least this many paths are "big".
pub const BIG_FRAME: usize = 10;

/// A maximal frame: a vertex pole, a face pole, and k internally disjoint
/// qualifying paths `a - x - y - b` in cyclic order around the vertex pole.
#[derive(Debug, Clone)]
pub struct Frame {
    pub pole_vertex: usize,
    pub pole_face: usize,
    pub paths: Vec<[usize; 4]>,
}

impl Frame {
    pub fn k(&self) -> usize {
        self.paths.len()
    }

    /// The 6-cycle through paths `i` and `j`.
    pub fn pair_cycle(&self, i: usize, j: usize) -> [usize; 6] {
        let [a, xi, yi, b] = self.paths[i];
        let [_, xj, yj, _] = self.paths[j];
        [a, xi, yi, b, yj, xj]
    }
}

#[derive(Debug, Clone)]
pub struct FrameScan {
    pub frames: Vec<Frame>,
    /// candidate paths generated before filtering
    pub candidates: usize,
    /// qualifying paths over all pole pairs
    pub qualifying: usize,
}

/// A frame path must be induced, alternate between vertex and non-vertex
/// nodes, and avoid the vertex-face-vertex and face-vertex-face triples
/// forbidden in allowable cycles. Works on original BCS node ids, so it also
/// qualifies candidate paths found inside cut pieces.
pub(crate) fn path_qualifies(bcs: &BcsGraph, a: usize, x: usize, y: usize, b: usize) -> bool {
    // patterns V-E-V-F and V-F-V-F; the middle y is always a vertex node
    if !bcs.is_gvertex(a) || !bcs.is_gvertex(y) || bcs.is_gvertex(x) {
        return false;
    }
    let Origin::Face(bf) = bcs.origin(b) else {
        return false;
    };
    // induced: the three non-consecutive pairs must be non-adjacent
    if bcs.has_edge(a, y) || bcs.has_edge(x, b) || bcs.has_edge(a, b) {
        return false;
    }
    if let Origin::Face(_) = bcs.origin(x) {
        // a - f - y with a, y adjacent vertices of f is forbidden
        if bcs.g.has_edge(a, y) {
            return false;
        }
    }
    // f - y - b where the two faces share an edge at y is forbidden
    if let Origin::Face(xf) = bcs.origin(x) {
        for &(_, e) in bcs.g.neighbors(y) {
            let (f1, f2) = bcs.g.faces_of_edge(e);
            if (f1, f2) == (xf, bf) || (f1, f2) == (bf, xf) {
                return false;
            }
        }
    }
    true
}

/// Find all maximal big frames of BCS(G).
///
/// Candidate paths are enumerated per pattern, filtered, and bucketed by pole
/// pair; a bucket of ten or more paths is a maximal big frame (maximality is
/// by exhaustion of candidates). Paths come out ordered by the rotation at
/// the vertex pole. A pole needs subdivision degree >= 10 on both ends, which
/// prunes the scan to vertices of degree >= 5 and faces of length >= 5.
pub fn find_maximal_big_frames(bcs: &BcsGraph) -> FrameScan {
    let g = &bcs.g;
    let mut candidates = 0usize;
    let mut buckets: HashMap<(usize, usize), Vec<[usize; 4]>> = HashMap::new();
    let mut push = |bcsref: &BcsGraph, cand: &mut usize, a: usize, x: usize, y: usize, b: usize| {
        *cand += 1;
        if path_qualifies(bcsref, a, x, y, b) {
            buckets.entry((a, b)).or_default().push([a, x, y, b]);
        }
    };

    // V-E-V-F: a - edge(ay) - y - face at y
    for e in 0..g.m() {
        let (u, v) = g.edges[e];
        for (a, y) in [(u, v), (v, u)] {
            if 2 * g.degree(a) < BIG_FRAME {
                continue;
            }
            for bf in g.faces_around_vertex(y) {
                if 2 * g.faces[bf].len() < BIG_FRAME {
                    continue;
                }
                push(bcs, &mut candidates, bcs.vnode(a), bcs.enode(e), bcs.vnode(y), bcs.fnode(bf));
            }
        }
    }
    // V-F-V-F: a - face - y - face, both faces at y
    for y in 0..g.n() {
        let around: Vec<usize> = g.faces_around_vertex(y).collect();
        for &xf in &around {
            for &bf in &around {
                if xf == bf || 2 * g.faces[bf].len() < BIG_FRAME {
                    continue;
                }
                for a in g.faces[xf].vertices() {
                    if a == y || 2 * g.degree(a) < BIG_FRAME {
                        continue;
                    }
                    push(bcs, &mut candidates, bcs.vnode(a), bcs.fnode(xf), bcs.vnode(y), bcs.fnode(bf));
                }
            }
        }
    }

    let qualifying = buckets.values().map(|v| v.len()).sum();
    let mut keys: Vec<(usize, usize)> = buckets
        .iter()
        .filter(|(_, v)| v.len() >= BIG_FRAME)
        .map(|(&k, _)| k)
        .collect();
    keys.sort_unstable();
    let mut frames = Vec::with_capacity(keys.len());
    for key in keys {
        let mut paths = buckets.remove(&key).unwrap();
        // internal disjointness: distinct interiors, guaranteed for
        // qualifying paths in a 3-connected input
        let mut interiors: Vec<usize> = paths.iter().flat_map(|p| [p[1], p[2]]).collect();
        interiors.sort_unstable();
        let before = interiors.len();
        interiors.dedup();
        assert_eq!(before, interiors.len(), "frame paths share interior nodes");
        // cyclic order around the vertex pole
        let pos: HashMap<usize, usize> = bcs.adj[key.0]
            .iter()
            .enumerate()
            .map(|(i, &(nb, _))| (nb, i))
            .collect();
        paths.sort_by_key(|p| pos[&p[1]]);
        frames.push(Frame {
            pole_vertex: key.0,
            pole_face: key.1,
            paths,
        });
    }
    FrameScan {
        frames,
        candidates,
        qualifying,
    }
}

/// The root cycle of a frame: the pair of consecutive paths whose wedge cycle
/// has the most flags strictly inside, i.e. the pair enclosing every other
/// path relative to the chosen outer flag. Returns the index of the first
/// path of the pair and the cycle itself.
pub fn root_cycle(bcs: &BcsGraph, idx: &DualTreeIndex, frame: &Frame) -> (usize, SixCycle) {
    let k = frame.k();
    let counts: Vec<usize> = (0..k)
        .map(|i| {
            let cyc = frame.pair_cycle(i, (i + 1) % k);
            idx.interior_face_count(bcs, &cyc)
                .expect("wedge cycles are simple")
                .1
        })
        .collect();
    let best = *counts.iter().max().unwrap();
    // only the wedge holding the outer flag can attain the maximum
    assert_eq!(counts.iter().filter(|&&c| c == best).count(), 1, "tied root wedge");
    let i = counts.iter().position(|&c| c == best).unwrap();
    (i, SixCycle::new(frame.pair_cycle(i, (i + 1) % k)))
}

/// The nearly-maximal laminar selection of canonical cycles for one big
/// frame: fix the path after the root pair, pair it with every path at least
/// five steps away in both cyclic directions, and shift each pair cycle
/// canonical. In NonShiftable mode only cycles passing the v-test are kept.
pub fn frame_cycle_selection(
    bcs: &BcsGraph,
    idx: &DualTreeIndex,
    frame: &Frame,
    mode: Mode,
    v: Option<usize>,
) -> Vec<SixCycle> {
    let k = frame.k();
    assert!(k >= BIG_FRAME, "selection needs a big frame");
    let (t, _) = root_cycle(bcs, idx, frame);
    let p = (t + 2) % k;
    let mut out: Vec<SixCycle> = Vec::new();
    for d in 5..=k - 5 {
        let q = (p + d) % k;
        let raw = frame.pair_cycle(p, q);
        let allowable = SixCycle::new(raw);
        debug_assert!(cycles::is_allowable(bcs, &allowable), "pair cycle must be allowable");
        for sh in cycles::shifts(bcs, &allowable) {
            assert!(sh.canonical, "far-apart pair shifts are canonical");
            let keep = match mode {
                Mode::All => true,
                Mode::Nontrivial => {
                    debug_assert!(!cycles::is_trivial_cutset(bcs, cycles::cutset_of(bcs, &sh.cycle)));
                    true
                }
                Mode::NonShiftable => {
                    cycles::is_v_nonshiftable(bcs, idx, &sh.cycle, v.expect("mode requires v"))
                }
            };
            if keep && !out.contains(&sh.cycle) {
                out.push(sh.cycle);
            }
        }
    }
    out.sort_unstable();
    out
}
