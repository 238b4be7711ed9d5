//! The barycentric subdivision BCS(G) — the incidence graph of vertices,
//! edges and faces of the embedding — and its 3-regular dual of flags.

use std::fmt::Write as _;

use crate::error::P3cError;
use crate::fasthash::FastMap;
use crate::planar::EmbeddedPlanarGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

impl Origin {
    pub fn tag(self) -> char {
        match self {
            Origin::Vertex(_) => 'V',
            Origin::Edge(_) => 'E',
            Origin::Face(_) => 'F',
        }
    }

    pub fn id(self) -> usize {
        match self {
            Origin::Vertex(i) | Origin::Edge(i) | Origin::Face(i) => i,
        }
    }
}

/// A flag of G: an incident (vertex, edge, face) triple, which is a
/// triangular face of BCS(G).
#[derive(Debug, Clone, Copy)]
pub struct Flag {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    /// the three BCS nodes in trace order
    pub nodes: [usize; 3],
    /// the three BCS edges in trace order (edge i joins nodes i and i+1)
    pub edges: [usize; 3],
}

/// BCS(G). Node ids are dense: all vertex nodes first (= G vertex ids), then
/// edge nodes, then face nodes, so the origin test is a range check.
#[derive(Debug, Clone)]
pub struct BcsGraph {
    pub g: EmbeddedPlanarGraph,
    pub node_count: usize,
    /// adjacency in counterclockwise rotation order: (neighbor, bcs edge id)
    pub adj: Vec<Vec<(usize, usize)>>,
    pub edges: Vec<(usize, usize)>,
    edge_ix: FastMap<(u32, u32), u32>,
    pub flags: Vec<Flag>,
    /// the two flags of each BCS edge: [left of u->v, left of v->u]
    pub edge_flags: Vec<[usize; 2]>,
    /// flag on the left of each BCS dart (2e = u->v, 2e+1 = v->u)
    flag_of_dart: Vec<usize>,
    /// one incident flag per BCS node
    pub node_flag: Vec<usize>,
}

impl BcsGraph {
    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn m(&self) -> usize {
        self.g.m()
    }

    pub fn f(&self) -> usize {
        self.g.f()
    }

    pub fn vnode(&self, v: usize) -> usize {
        v
    }

    pub fn enode(&self, e: usize) -> usize {
        self.n() + e
    }

    pub fn fnode(&self, f: usize) -> usize {
        self.n() + self.m() + f
    }

    pub fn origin(&self, node: usize) -> Origin {
        let (n, m) = (self.n(), self.m());
        if node < n {
            Origin::Vertex(node)
        } else if node < n + m {
            Origin::Edge(node - n)
        } else {
            debug_assert!(node < self.node_count);
            Origin::Face(node - n - m)
        }
    }

    pub fn is_gvertex(&self, node: usize) -> bool {
        node < self.n()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_ix.contains_key(&(a.min(b) as u32, a.max(b) as u32))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_ix
            .get(&(a.min(b) as u32, a.max(b) as u32))
            .map(|&e| e as usize)
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    /// Flag on the left of the dart a -> b.
    pub fn flag_left_of(&self, a: usize, b: usize) -> usize {
        let e = self.edge_between(a, b).expect("dart over a BCS edge");
        if self.edges[e].0 == a {
            self.flag_of_dart[2 * e]
        } else {
            self.flag_of_dart[2 * e + 1]
        }
    }

    /// The two flags adjacent to a BCS edge, as (left of a->b, right of a->b).
    pub fn flags_of_dart(&self, a: usize, b: usize) -> (usize, usize) {
        let e = self.edge_between(a, b).expect("dart over a BCS edge");
        let [l, r] = self.edge_flags[e];
        if self.edges[e].0 == a {
            (l, r)
        } else {
            (r, l)
        }
    }
}

/// Build BCS(G). `g` must be validated, face-traced and 3-connected.
pub fn build_bcs(g: &EmbeddedPlanarGraph) -> Result<BcsGraph, P3cError> {
    assert!(g.f() > 0, "trace faces before building the subdivision");
    let (n, m, f) = (g.n(), g.m(), g.f());
    let node_count = n + m + f;
    let vnode = |v: usize| v;
    let enode = |e: usize| n + e;
    let fnode = |x: usize| n + m + x;

    // Rotations. At a vertex node: edge and face nodes interleaved per the
    // rotation of G. At an edge node (u,v): u, face left of v->u, v, face
    // left of u->v. At a face node: the boundary walk order.
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for v in 0..n {
        let mut r = Vec::with_capacity(2 * g.degree(v));
        for &e in &g.rotation[v] {
            r.push(enode(e));
            r.push(fnode(g.face_of_dart(v, e)));
        }
        rot[vnode(v)] = r;
    }
    for e in 0..m {
        let (u, v) = g.edges[e];
        let (fl, fr) = g.faces_of_edge(e); // left of u->v, left of v->u
        rot[enode(e)] = vec![vnode(u), fnode(fr), vnode(v), fnode(fl)];
    }
    for face in &g.faces {
        let mut r = Vec::with_capacity(2 * face.len());
        for &(v, e) in &face.boundary {
            r.push(vnode(v));
            r.push(enode(e));
        }
        rot[fnode(face.id)] = r;
    }

    // Dense BCS edge ids from the rotations.
    let mut edge_ix: FastMap<(u32, u32), u32> = FastMap::default();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (a, r) in rot.iter().enumerate() {
        for &b in r {
            let key = (a.min(b) as u32, a.max(b) as u32);
            edge_ix.entry(key).or_insert_with(|| {
                edges.push((a.min(b), a.max(b)));
                (edges.len() - 1) as u32
            });
        }
    }
    if edges.len() != 6 * m {
        return Err(P3cError::Invalid(format!(
            "subdivision has {} edges, expected {}",
            edges.len(),
            6 * m
        )));
    }
    let adj: Vec<Vec<(usize, usize)>> = rot
        .iter()
        .enumerate()
        .map(|(a, r)| {
            r.iter()
                .map(|&b| (b, edge_ix[&(a.min(b) as u32, a.max(b) as u32)] as usize))
                .collect()
        })
        .collect();

    // Trace BCS faces (flags) with the same predecessor rule as in G.
    let dart = |a: usize, b: usize, e: usize| -> usize {
        if edges[e].0 == a {
            2 * e
        } else {
            debug_assert_eq!((edges[e].0, edges[e].1), (b, a));
            2 * e + 1
        }
    };
    let mut flag_of_dart = vec![usize::MAX; 2 * edges.len()];
    let mut flags: Vec<Flag> = Vec::new();
    let pos_in_rot: Vec<FastMap<usize, usize>> = adj
        .iter()
        .map(|r| r.iter().enumerate().map(|(i, &(b, _))| (b, i)).collect())
        .collect();
    for e0 in 0..edges.len() {
        for d0 in [2 * e0, 2 * e0 + 1] {
            if flag_of_dart[d0] != usize::MAX {
                continue;
            }
            let id = flags.len();
            let mut nodes = Vec::new();
            let mut fedges = Vec::new();
            let mut d = d0;
            loop {
                flag_of_dart[d] = id;
                let e = d / 2;
                let (p, q) = edges[e];
                let (from, to) = if d % 2 == 0 { (p, q) } else { (q, p) };
                nodes.push(from);
                fedges.push(e);
                let r = &adj[to];
                let pos = pos_in_rot[to][&from];
                let (nb, ne) = r[(pos + r.len() - 1) % r.len()];
                d = dart(to, nb, ne);
                if d == d0 {
                    break;
                }
            }
            if nodes.len() != 3 {
                return Err(P3cError::Invalid(format!(
                    "subdivision face with {} sides; embedding inconsistent",
                    nodes.len()
                )));
            }
            let mut v = usize::MAX;
            let mut ee = usize::MAX;
            let mut ff = usize::MAX;
            for &x in &nodes {
                match origin_of(n, m, x) {
                    Origin::Vertex(i) => v = i,
                    Origin::Edge(i) => ee = i,
                    Origin::Face(i) => ff = i,
                }
            }
            if v == usize::MAX || ee == usize::MAX || ff == usize::MAX {
                return Err(P3cError::Invalid("flag without one node of each origin".into()));
            }
            flags.push(Flag {
                v,
                e: ee,
                f: ff,
                nodes: [nodes[0], nodes[1], nodes[2]],
                edges: [fedges[0], fedges[1], fedges[2]],
            });
        }
    }
    if flags.len() != 4 * m {
        return Err(P3cError::Invalid(format!(
            "subdivision has {} flags, expected {}",
            flags.len(),
            4 * m
        )));
    }

    let edge_flags: Vec<[usize; 2]> = (0..edges.len())
        .map(|e| [flag_of_dart[2 * e], flag_of_dart[2 * e + 1]])
        .collect();
    let mut node_flag = vec![usize::MAX; node_count];
    for (i, fl) in flags.iter().enumerate() {
        for &x in &fl.nodes {
            if node_flag[x] == usize::MAX {
                node_flag[x] = i;
            }
        }
    }

    Ok(BcsGraph {
        g: g.clone(),
        node_count,
        adj,
        edges,
        edge_ix,
        flags,
        edge_flags,
        flag_of_dart,
        node_flag,
    })
}

fn origin_of(n: usize, m: usize, node: usize) -> Origin {
    if node < n {
        Origin::Vertex(node)
    } else if node < n + m {
        Origin::Edge(node - n)
    } else {
        Origin::Face(node - n - m)
    }
}

/// The dual graph of BCS(G): one node per flag, one edge per BCS edge.
/// 3-regular and connected.
#[derive(Debug, Clone)]
pub struct DualGraph {
    /// per flag: (adjacent flag, shared BCS edge), three entries
    pub adj: Vec<[(usize, usize); 3]>,
}

pub fn build_dual(bcs: &BcsGraph) -> DualGraph {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(3); bcs.flags.len()];
    for (e, &[a, b]) in bcs.edge_flags.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    DualGraph {
        adj: adj
            .into_iter()
            .map(|v| {
                debug_assert_eq!(v.len(), 3);
                [v[0], v[1], v[2]]
            })
            .collect(),
    }
}

impl BcsGraph {
    /// Debug dump in the text graph format plus a `t <node> <V|E|F> <origin>`
    /// tag line per node.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.node_count, self.edges.len());
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "e {} {}", a, b);
        }
        for (a, r) in self.adj.iter().enumerate() {
            let mut line = format!("r {}", a);
            for &(_, e) in r {
                let _ = write!(line, " {}", e);
            }
            let _ = writeln!(out, "{}", line);
        }
        for node in 0..self.node_count {
            let o = self.origin(node);
            let _ = writeln!(out, "t {} {} {}", node, o.tag(), o.id());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn bcs_of(mut g: EmbeddedPlanarGraph) -> BcsGraph {
        if g.f() == 0 {
            g.trace_faces().unwrap();
        }
        build_bcs(&g).unwrap()
    }

    #[test]
    fn counts() {
        for (g, n, m, f) in [
            (generators::apollonian(4, 0).unwrap(), 4, 6, 4),
            (generators::cube(), 8, 12, 6),
            (generators::wheel(5).unwrap(), 6, 10, 6),
        ] {
            let bcs = bcs_of(g);
            assert_eq!((bcs.n(), bcs.m(), bcs.f()), (n, m, f));
            assert_eq!(bcs.node_count, n + m + f);
            assert_eq!(bcs.edges.len(), 6 * m);
            assert_eq!(bcs.flags.len(), 4 * m);
        }
    }

    #[test]
    fn edges_join_distinct_origins_and_flags_are_triples() {
        let bcs = bcs_of(generators::wheel(6).unwrap());
        for &(a, b) in &bcs.edges {
            assert_ne!(bcs.origin(a).tag(), bcs.origin(b).tag());
        }
        for fl in &bcs.flags {
            let tags: Vec<char> = fl.nodes.iter().map(|&x| bcs.origin(x).tag()).collect();
            let mut sorted = tags.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, vec!['E', 'F', 'V']);
        }
    }

    #[test]
    fn dual_is_cubic_and_connected() {
        for g in [generators::apollonian(4, 0).unwrap(), generators::wheel(5).unwrap()] {
            let bcs = bcs_of(g);
            let dual = build_dual(&bcs);
            assert_eq!(dual.adj.len(), bcs.flags.len());
            // connectivity
            let mut seen = vec![false; dual.adj.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut cnt = 1;
            while let Some(x) = stack.pop() {
                for &(y, _) in &dual.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        cnt += 1;
                        stack.push(y);
                    }
                }
            }
            assert_eq!(cnt, dual.adj.len());
        }
    }

    #[test]
    fn projecting_back_recovers_g() {
        let g = generators::wheel(7).unwrap();
        let bcs = bcs_of(g.clone());
        // every edge node is adjacent to exactly the two endpoints among vertex nodes
        for e in 0..bcs.m() {
            let node = bcs.enode(e);
            let mut vs: Vec<usize> = bcs.adj[node]
                .iter()
                .filter(|&&(b, _)| bcs.is_gvertex(b))
                .map(|&(b, _)| b)
                .collect();
            vs.sort_unstable();
            let (u, v) = g.edges[e];
            assert_eq!(vs, vec![u.min(v), u.max(v)]);
        }
        // no vertex-vertex adjacency survives
        for &(a, b) in &bcs.edges {
            assert!(!(bcs.is_gvertex(a) && bcs.is_gvertex(b)));
        }
    }

    #[test]
    fn dump_mentions_tags() {
        let bcs = bcs_of(generators::apollonian(4, 0).unwrap());
        let text = bcs.to_text();
        assert!(text.contains("t 0 V 0"));
        assert!(text.contains(&format!("t {} E 0", bcs.enode(0))));
        assert!(text.contains(&format!("t {} F 0", bcs.fnode(0))));
    }
}
