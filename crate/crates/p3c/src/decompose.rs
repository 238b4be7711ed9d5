//! The end-to-end pipeline: select laminar cycles per big frame, cut BCS(G)
//! along them, enumerate canonical cycles per piece, take a greedy maximal
//! independent set of the conflict graph, and build the tree decomposition.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bcs::{build_bcs, build_dual, BcsGraph, Origin};
use crate::cycles::{self, CutsetTriple, SixCycle};
use crate::error::P3cError;
use crate::fasthash::FastMap;
use crate::frames::{self, BIG_FRAME};
use crate::orientation::{build_index, DualTreeIndex, LaminarRelation};
use crate::planar::EmbeddedPlanarGraph;
use crate::treedec::{build_tree_decomposition, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Nontrivial,
    NonShiftable,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::All => write!(f, "all"),
            Mode::Nontrivial => write!(f, "nontrivial"),
            Mode::NonShiftable => write!(f, "nonshiftable"),
        }
    }
}

/// A piece of BCS(G) after cutting: a sub-surface rebuilt from a dual
/// component's flags, with fresh copies of boundary nodes and edges. Node and
/// flag ids are local; `orig_node` maps back to BCS(G).
#[derive(Debug, Clone)]
pub struct CutPiece {
    pub orig_node: Vec<usize>,
    pub adj: Vec<Vec<(usize, usize)>>,
    pub edge_count: usize,
    /// original flag ids whose dual component forms this piece
    pub flags: Vec<usize>,
}

impl CutPiece {
    pub fn node_count(&self) -> usize {
        self.orig_node.len()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// First crossing pair among `cycles`, searched through shared-node buckets
/// (crossing cycles always share a node). Gives up after `budget` pair tests
/// and reports nothing, which keeps the check linear at benchmark scale.
pub(crate) fn find_crossing_pair(
    bcs: &BcsGraph,
    idx: &DualTreeIndex,
    cycles: &[SixCycle],
    budget: usize,
) -> Option<(usize, usize)> {
    let mut buckets: FastMap<usize, Vec<usize>> = FastMap::default();
    for (i, c) in cycles.iter().enumerate() {
        for &x in &c.nodes {
            buckets.entry(x).or_default().push(i);
        }
    }
    let mut tested: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (_, members) in buckets {
        for ai in 0..members.len() {
            for bi in ai + 1..members.len() {
                let pair = (members[ai].min(members[bi]), members[ai].max(members[bi]));
                if pair.0 == pair.1 || !tested.insert(pair) {
                    continue;
                }
                if tested.len() > budget {
                    return None;
                }
                let rel = idx
                    .laminar_relation(bcs, &cycles[pair.0].nodes, &cycles[pair.1].nodes)
                    .expect("family cycles are simple");
                if rel == LaminarRelation::Crossing {
                    return Some(pair);
                }
            }
        }
    }
    None
}

/// Cut BCS(G) along every edge of the given laminar cycles.
///
/// The dual minus the cycles' dual edges falls into components; each becomes
/// a piece rebuilt from its flags, gluing flag corners and flag sides exactly
/// where the shared BCS edge was not cut. Boundary nodes are therefore copied
/// once per boundary arc, so pieces stay proper surfaces.
pub fn cut_along(
    bcs: &BcsGraph,
    idx: &DualTreeIndex,
    s: &[SixCycle],
) -> Result<Vec<CutPiece>, P3cError> {
    if let Some((i, j)) = find_crossing_pair(bcs, idx, s, 200_000) {
        return Err(P3cError::NotLaminar(format!(
            "cycles {:?} and {:?} cross",
            s[i].nodes, s[j].nodes
        )));
    }
    let mut removed = vec![false; bcs.edges.len()];
    for c in s {
        for i in 0..6 {
            let e = bcs
                .edge_between(c.nodes[i], c.nodes[(i + 1) % 6])
                .ok_or_else(|| P3cError::InvalidCycle("cut cycle edge missing".into()))?;
            removed[e] = true;
        }
    }

    let nf = bcs.flags.len();
    let mut comp = vec![usize::MAX; nf];
    let mut ncomp = 0;
    for start in 0..nf {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = ncomp;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for k in 0..3 {
                let e = bcs.flags[x].edges[k];
                if removed[e] {
                    continue;
                }
                let [a, b] = bcs.edge_flags[e];
                let y = if a == x { b } else { a };
                if comp[y] == usize::MAX {
                    comp[y] = ncomp;
                    stack.push(y);
                }
            }
        }
        ncomp += 1;
    }

    // glue flag corners and flag sides across uncut edges
    let mut corners = UnionFind::new(3 * nf);
    let mut sides = UnionFind::new(3 * nf);
    let corner_slot = |flag: usize, node: usize| -> usize {
        let pos = bcs.flags[flag].nodes.iter().position(|&x| x == node).unwrap();
        3 * flag + pos
    };
    let side_slot = |flag: usize, edge: usize| -> usize {
        let pos = bcs.flags[flag].edges.iter().position(|&x| x == edge).unwrap();
        3 * flag + pos
    };
    for (e, &rm) in removed.iter().enumerate() {
        if rm {
            continue;
        }
        let [g1, g2] = bcs.edge_flags[e];
        debug_assert_eq!(comp[g1], comp[g2]);
        let (p, q) = bcs.edges[e];
        corners.union(corner_slot(g1, p), corner_slot(g2, p));
        corners.union(corner_slot(g1, q), corner_slot(g2, q));
        sides.union(side_slot(g1, e), side_slot(g2, e));
    }

    // materialize pieces
    let mut flags_by_comp: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (fl, &c) in comp.iter().enumerate() {
        flags_by_comp[c].push(fl);
    }
    let mut node_of_root: FastMap<usize, usize> = FastMap::default();
    let mut edge_of_root: FastMap<usize, usize> = FastMap::default();
    let mut pieces = Vec::with_capacity(ncomp);
    for c in 0..ncomp {
        node_of_root.clear();
        edge_of_root.clear();
        let mut orig_node = Vec::new();
        let mut adj: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut edge_count = 0usize;
        for &fl in &flags_by_comp[c] {
            for k in 0..3 {
                let root = corners.find(3 * fl + k);
                node_of_root.entry(root).or_insert_with(|| {
                    orig_node.push(bcs.flags[fl].nodes[k]);
                    adj.push(Vec::new());
                    orig_node.len() - 1
                });
            }
        }
        for &fl in &flags_by_comp[c] {
            for k in 0..3 {
                let eroot = sides.find(3 * fl + k);
                if edge_of_root.contains_key(&eroot) {
                    continue;
                }
                let eid = edge_count;
                edge_count += 1;
                edge_of_root.insert(eroot, eid);
                let a = node_of_root[&corners.find(3 * fl + k)];
                let b = node_of_root[&corners.find(3 * fl + (k + 1) % 3)];
                adj[a].push((b, eid));
                adj[b].push((a, eid));
            }
        }
        pieces.push(CutPiece {
            orig_node,
            adj,
            edge_count,
            flags: flags_by_comp[c].clone(),
        });
    }
    debug_assert_eq!(pieces.iter().map(|p| p.flags.len()).sum::<usize>(), nf);
    Ok(pieces)
}

/// Canonical cycles living inside one piece, as global cycles.
///
/// Triples are assembled from two-edge connections present in the piece, so a
/// result can never cross a cut cycle; each candidate is then checked against
/// BCS(G) itself.
pub fn enumerate_in_piece(piece: &CutPiece, bcs: &BcsGraph) -> Vec<SixCycle> {
    let np = piece.node_count();
    // partner -> middle, per vertex-origin piece node
    let mut partners: Vec<FastMap<usize, usize>> = vec![FastMap::default(); np];
    for x in 0..np {
        if !bcs.is_gvertex(piece.orig_node[x]) {
            continue;
        }
        let gu = piece.orig_node[x];
        for &(m, _) in &piece.adj[x] {
            let mid_origin = bcs.origin(piece.orig_node[m]);
            for &(y, _) in &piece.adj[m] {
                if y == x || !bcs.is_gvertex(piece.orig_node[y]) {
                    continue;
                }
                let gy = piece.orig_node[y];
                let valid = match mid_origin {
                    Origin::Edge(_) => true,
                    Origin::Face(_) => !bcs.g.has_edge(gu, gy),
                    Origin::Vertex(_) => false,
                };
                if valid {
                    let prev = partners[x].insert(y, m);
                    debug_assert!(prev.is_none() || prev == Some(m));
                }
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..np {
        if partners[x].is_empty() {
            continue;
        }
        let gx = piece.orig_node[x];
        let mut ys: Vec<usize> = partners[x]
            .keys()
            .copied()
            .filter(|&y| piece.orig_node[y] > gx)
            .collect();
        ys.sort_unstable_by_key(|&y| (piece.orig_node[y], y));
        for (i, &y) in ys.iter().enumerate() {
            for &z in &ys[i + 1..] {
                if piece.orig_node[z] <= piece.orig_node[y] {
                    continue;
                }
                let Some(&myz) = partners[y].get(&z) else {
                    continue;
                };
                let local = [x, partners[x][&y], y, myz, z, partners[x][&z]];
                let mut distinct = local;
                distinct.sort_unstable();
                if distinct.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let global = [
                    piece.orig_node[local[0]],
                    piece.orig_node[local[1]],
                    piece.orig_node[local[2]],
                    piece.orig_node[local[3]],
                    piece.orig_node[local[4]],
                    piece.orig_node[local[5]],
                ];
                let mut gd = global;
                gd.sort_unstable();
                if gd.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let cycle = SixCycle::new(global);
                if cycles::is_canonical(bcs, &cycle) {
                    out.push(cycle);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Does the piece contain a big frame? Candidate paths are read off the piece
/// adjacency and qualified against BCS(G).
pub fn piece_has_big_frame(piece: &CutPiece, bcs: &BcsGraph) -> bool {
    let mut buckets: HashMap<(usize, usize), BTreeSet<(usize, usize)>> = HashMap::new();
    for a in 0..piece.node_count() {
        let ga = piece.orig_node[a];
        if !bcs.is_gvertex(ga) || bcs.degree(ga) < BIG_FRAME {
            continue;
        }
        for &(x, _) in &piece.adj[a] {
            for &(y, _) in &piece.adj[x] {
                if y == a || !bcs.is_gvertex(piece.orig_node[y]) {
                    continue;
                }
                for &(b, _) in &piece.adj[y] {
                    if b == x {
                        continue;
                    }
                    let gb = piece.orig_node[b];
                    if !matches!(bcs.origin(gb), Origin::Face(_)) || bcs.degree(gb) < BIG_FRAME {
                        continue;
                    }
                    if frames::path_qualifies(bcs, ga, piece.orig_node[x], piece.orig_node[y], gb) {
                        let set = buckets.entry((a, b)).or_default();
                        set.insert((x, y));
                        if set.len() >= BIG_FRAME {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PieceStat {
    pub piece_nodes: usize,
    pub cycles: usize,
    pub crossing_edges: usize,
}

/// Conflict graph over the canonical cycles of the pieces: one node per
/// distinct cycle, one edge per crossing pair. Pairs are discovered within
/// each piece through shared-node buckets; cycles confined to different
/// pieces cannot cross.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub cycles: Vec<SixCycle>,
    pub cutsets: Vec<CutsetTriple>,
    pub first_piece: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
    pub piece_stats: Vec<PieceStat>,
}

pub fn build_conflict_graph(
    bcs: &BcsGraph,
    idx: &DualTreeIndex,
    pieces: &[CutPiece],
    seeds: &[SixCycle],
) -> ConflictGraph {
    let mut index_of: FastMap<SixCycle, usize> = FastMap::default();
    let mut cycles_acc: Vec<SixCycle> = Vec::new();
    let mut first_piece_acc: Vec<usize> = Vec::new();
    let mut occurrences: Vec<Vec<usize>> = Vec::new(); // per piece: cycle indices
    for (p, piece) in pieces.iter().enumerate() {
        let found = enumerate_in_piece(piece, bcs);
        let mut local = Vec::with_capacity(found.len());
        for c in found {
            let ix = *index_of.entry(c).or_insert_with(|| {
                cycles_acc.push(c);
                first_piece_acc.push(p);
                cycles_acc.len() - 1
            });
            local.push(ix);
        }
        occurrences.push(local);
    }
    // cut cycles whose edges straddle several pieces (nested cuts sharing a
    // path) are not refound above; they are laminar with every survivor, so
    // they enter as isolated nodes
    for &c in seeds {
        index_of.entry(c).or_insert_with(|| {
            cycles_acc.push(c);
            first_piece_acc.push(usize::MAX);
            cycles_acc.len() - 1
        });
    }
    // re-sort by key for deterministic node order
    let mut order: Vec<usize> = (0..cycles_acc.len()).collect();
    order.sort_unstable_by_key(|&i| cycles_acc[i]);
    let mut rank = vec![0usize; cycles_acc.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let cycles: Vec<SixCycle> = order.iter().map(|&i| cycles_acc[i]).collect();
    let first_piece: Vec<usize> = order.iter().map(|&i| first_piece_acc[i]).collect();
    let cutsets: Vec<CutsetTriple> = cycles.iter().map(|c| cycles::cutset_of(bcs, c)).collect();

    let mut piece_stats: Vec<PieceStat> = pieces
        .iter()
        .map(|p| PieceStat {
            piece_nodes: p.node_count(),
            cycles: 0,
            crossing_edges: 0,
        })
        .collect();
    let data: Vec<_> = cycles
        .iter()
        .map(|c| idx.analyze_cycle(bcs, &c.nodes).expect("canonical cycles are simple"))
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (p, local) in occurrences.iter().enumerate() {
        piece_stats[p].cycles = local.len();
        let mut buckets: FastMap<usize, Vec<usize>> = FastMap::default();
        for &old_ix in local {
            let ix = rank[old_ix];
            for &node in &cycles[ix].nodes {
                buckets.entry(node).or_default().push(ix);
            }
        }
        let mut piece_pairs: Vec<(usize, usize)> = Vec::new();
        for (_, members) in buckets {
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let pair = (members[i].min(members[j]), members[i].max(members[j]));
                    if pair.0 != pair.1 {
                        piece_pairs.push(pair);
                    }
                }
            }
        }
        piece_pairs.sort_unstable();
        piece_pairs.dedup();
        for pair in piece_pairs {
            if idx.relation(&data[pair.0], &data[pair.1]) == LaminarRelation::Crossing {
                edges.push(pair);
                piece_stats[p].crossing_edges += 1;
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); cycles.len()];
    for &(i, j) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    ConflictGraph {
        cycles,
        cutsets,
        first_piece,
        edges,
        adj,
        piece_stats,
    }
}

/// Greedy maximal independent set of the eligible-induced subgraph, scanning
/// nodes in key order.
pub fn greedy_mis(cg: &ConflictGraph, eligible: &[bool]) -> Vec<usize> {
    let mut chosen = vec![false; cg.cycles.len()];
    let mut out = Vec::new();
    for i in 0..cg.cycles.len() {
        if !eligible[i] {
            continue;
        }
        if cg.adj[i].iter().any(|&j| chosen[j]) {
            continue;
        }
        chosen[i] = true;
        out.push(i);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Frame(usize),
    Piece(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyEntry {
    pub cutset: CutsetTriple,
    #[serde(skip)]
    pub cycle: SixCycle,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub frames: usize,
    pub pieces: usize,
    pub conflict_nodes: usize,
    pub conflict_edges: usize,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub mode: Mode,
    pub v: Option<usize>,
    pub family: Vec<FamilyEntry>,
    pub tree: TreeDecomposition,
    pub stats: Stats,
    pub piece_stats: Vec<PieceStat>,
    pub frame_info: Vec<(usize, usize, usize)>, // (pole_vertex, pole_face, k)
    /// candidate paths generated by the frame scan; quadratic on degrees, so
    /// the CLI warns when this exceeds 50 m
    pub frame_candidates: usize,
}

/// The full pipeline on a validated, face-traced, 3-connected input.
pub fn maximal_laminar_family(
    g: &EmbeddedPlanarGraph,
    mode: Mode,
    v: Option<usize>,
) -> Result<DecompositionResult, P3cError> {
    let start = Instant::now();
    assert!(g.f() > 0, "trace faces before decomposing");
    if mode == Mode::NonShiftable {
        let v = v.ok_or_else(|| P3cError::Invalid("nonshiftable mode needs a vertex".into()))?;
        if v >= g.n() {
            return Err(P3cError::Invalid(format!("vertex {v} out of range")));
        }
    }
    let bcs = build_bcs(g)?;
    let dual = build_dual(&bcs);
    let outer_flag = match (mode, v) {
        (Mode::NonShiftable, Some(v)) => (0..bcs.flags.len())
            .find(|&f| bcs.flags[f].v == v)
            .expect("every vertex has an incident flag"),
        _ => 0,
    };
    let idx = build_index(&bcs, &dual, outer_flag);

    // frame selections
    let scan = if g.n() > 4 {
        frames::find_maximal_big_frames(&bcs)
    } else {
        frames::FrameScan {
            frames: Vec::new(),
            candidates: 0,
            qualifying: 0,
        }
    };
    let mut family_map: HashMap<SixCycle, Provenance> = HashMap::new();
    for (i, frame) in scan.frames.iter().enumerate() {
        for c in frames::frame_cycle_selection(&bcs, &idx, frame, mode, v) {
            family_map.entry(c).or_insert(Provenance::Frame(i));
        }
    }
    let mut s_cycles: Vec<SixCycle> = family_map.keys().copied().collect();
    s_cycles.sort_unstable();

    let pieces = cut_along(&bcs, &idx, &s_cycles)?;
    let cg = build_conflict_graph(&bcs, &idx, &pieces, &s_cycles);

    let eligible: Vec<bool> = match mode {
        Mode::All => vec![true; cg.cycles.len()],
        Mode::Nontrivial => cg
            .cutsets
            .iter()
            .map(|&t| !cycles::is_trivial_cutset(&bcs, t))
            .collect(),
        Mode::NonShiftable => cg
            .cycles
            .iter()
            .map(|c| cycles::is_v_nonshiftable(&bcs, &idx, c, v.unwrap()))
            .collect(),
    };
    for c in &s_cycles {
        debug_assert!(eligible[cg.cycles.binary_search(c).expect("cut cycles are seeded")]);
    }
    let mis = greedy_mis(&cg, &eligible);
    for &i in &mis {
        family_map
            .entry(cg.cycles[i])
            .or_insert(Provenance::Piece(cg.first_piece[i]));
    }

    let mut family: Vec<FamilyEntry> = family_map
        .iter()
        .map(|(&cycle, &provenance)| FamilyEntry {
            cutset: cycles::cutset_of(&bcs, &cycle),
            cycle,
            provenance,
        })
        .collect();
    family.sort_unstable_by_key(|fe| fe.cycle);

    let family_cycles: Vec<SixCycle> = family.iter().map(|fe| fe.cycle).collect();
    let tree = build_tree_decomposition(&bcs, &idx, &family_cycles)?;

    let stats = Stats {
        frames: scan.frames.len(),
        pieces: pieces.len(),
        conflict_nodes: cg.cycles.len(),
        conflict_edges: cg.edges.len(),
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    Ok(DecompositionResult {
        mode,
        v,
        family,
        tree,
        stats,
        piece_stats: cg.piece_stats,
        frame_info: scan
            .frames
            .iter()
            .map(|f| (f.pole_vertex, f.pole_face, f.k()))
            .collect(),
        frame_candidates: scan.candidates,
    })
}
