//! Embedded planar graphs given by rotation systems, plus parsing, face
//! tracing and a brute-force 3-connectivity check.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::P3cError;

/// A face of the embedding: a closed walk of (vertex, edge) incidences.
///
/// The walk is the orbit of the face permutation; entry `(v, e)` means the
/// boundary leaves `v` along `e`. Faces keep the region on the left of each
/// directed boundary edge.
#[derive(Debug, Clone)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<(usize, usize)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(v, _)| v)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|&(_, e)| e)
    }
}

/// An embedded planar graph: a simple graph together with a counterclockwise
/// cyclic order of incident edges at every vertex.
///
/// Faces are derived from the rotation system by [`EmbeddedPlanarGraph::trace_faces`];
/// construction does not compute an embedding, it only validates one.
#[derive(Debug, Clone)]
pub struct EmbeddedPlanarGraph {
    pub vertex_count: usize,
    /// Edge endpoints; the index in this list is the dense edge id.
    pub edges: Vec<(usize, usize)>,
    /// Counterclockwise cyclic sequence of incident edge ids per vertex.
    pub rotation: Vec<Vec<usize>>,
    /// Traced faces, empty until `trace_faces` runs.
    pub faces: Vec<Face>,
    pub outer_face_hint: Option<usize>,
    adj: Vec<Vec<(usize, usize)>>,
    edge_set: HashSet<(usize, usize)>,
    /// face id per dart; dart `2e` runs u -> v for edge `e = (u, v)`, dart `2e+1` runs v -> u.
    face_of_dart_: Vec<usize>,
    /// pending `o v e` hint, resolved to a face id during tracing
    hint_dart: Option<(usize, usize)>,
}

impl EmbeddedPlanarGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self, P3cError> {
        let mut g = EmbeddedPlanarGraph {
            vertex_count,
            edges,
            rotation,
            faces: Vec::new(),
            outer_face_hint: None,
            adj: Vec::new(),
            edge_set: HashSet::new(),
            face_of_dart_: Vec::new(),
            hint_dart: None,
        };
        g.validate_shape(0)?;
        g.rebuild_adjacency();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.vertex_count
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn f(&self) -> usize {
        self.faces.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Neighbors of `v` with the connecting edge id, in rotation order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set.contains(&(u.min(v), u.max(v)))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u]
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Face on the left of the dart leaving `v` along edge `e`.
    pub fn face_of_dart(&self, v: usize, e: usize) -> usize {
        self.face_of_dart_[self.dart_id(v, e)]
    }

    fn dart_id(&self, v: usize, e: usize) -> usize {
        if self.edges[e].0 == v {
            2 * e
        } else {
            debug_assert_eq!(self.edges[e].1, v);
            2 * e + 1
        }
    }

    /// Faces around `v` in rotation order; entry `i` is the face in the corner
    /// between `rotation[v][i]` and its cyclic successor.
    pub fn faces_around_vertex(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().map(move |&e| self.face_of_dart(v, e))
    }

    /// The two faces incident to edge `e` as (left of u->v, left of v->u).
    pub fn faces_of_edge(&self, e: usize) -> (usize, usize) {
        (self.face_of_dart_[2 * e], self.face_of_dart_[2 * e + 1])
    }

    fn rebuild_adjacency(&mut self) {
        self.adj = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| rot.iter().map(|&e| (self.other_endpoint(e, v), e)).collect())
            .collect();
        self.edge_set = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
    }

    fn validate_shape(&self, line_base: usize) -> Result<(), P3cError> {
        let n = self.vertex_count;
        let mut seen = HashSet::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(P3cError::parse(line_base, format!("edge {i} endpoint out of range")));
            }
            if u == v {
                return Err(P3cError::parse(line_base, format!("edge {i} is a loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(P3cError::parse(line_base, format!("duplicate edge {u} {v}")));
            }
        }
        if self.rotation.len() != n {
            return Err(P3cError::parse(line_base, "rotation count differs from vertex count".into()));
        }
        // every edge appears exactly once in the rotation of each endpoint
        let mut uses = vec![0usize; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut local = HashSet::new();
            for &e in rot {
                if e >= self.edges.len() {
                    return Err(P3cError::parse(line_base, format!("rotation of {v} mentions unknown edge {e}")));
                }
                let (a, b) = self.edges[e];
                if a != v && b != v {
                    return Err(P3cError::parse(line_base, format!("rotation of {v} mentions non-incident edge {e}")));
                }
                if !local.insert(e) {
                    return Err(P3cError::parse(line_base, format!("rotation of {v} repeats edge {e}")));
                }
                uses[e] += 1;
            }
        }
        if let Some(e) = uses.iter().position(|&c| c != 2) {
            return Err(P3cError::parse(line_base, format!("edge {e} does not appear in both endpoint rotations")));
        }
        Ok(())
    }

    /// Trace the faces of the rotation system and check Euler's formula.
    ///
    /// Uses the faces-on-the-left convention: the dart after arriving at `v`
    /// via edge `e` leaves along the predecessor of `e` in the rotation at `v`.
    pub fn trace_faces(&mut self) -> Result<(), P3cError> {
        let m = self.m();
        self.face_of_dart_ = vec![usize::MAX; 2 * m];
        self.faces.clear();
        for start in 0..2 * m {
            if self.face_of_dart_[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                self.face_of_dart_[d] = id;
                let e = d / 2;
                let (u, v) = self.edges[e];
                let (from, to) = if d % 2 == 0 { (u, v) } else { (v, u) };
                boundary.push((from, e));
                // next dart: predecessor of e in the rotation at the head
                let rot = &self.rotation[to];
                let pos = rot.iter().position(|&x| x == e).expect("validated rotation");
                let ne = rot[(pos + rot.len() - 1) % rot.len()];
                d = self.dart_id(to, ne);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { id, boundary });
        }
        let (n, f) = (self.n() as i64, self.faces.len() as i64);
        if n - m as i64 + f != 2 {
            return Err(P3cError::Invalid(format!(
                "not a planar embedding of a connected graph: n={} m={} f={}",
                n, m, f
            )));
        }
        if let Some((v, e)) = self.hint_dart {
            self.outer_face_hint = Some(self.face_of_dart(v, e));
        }
        Ok(())
    }

    /// Brute-force vertex connectivity >= 3: no vertex set of size <= 2
    /// disconnects the graph. Quadratic in n times a BFS; intended for desk
    /// scale (the CLI can skip it for large benchmark inputs).
    pub fn check_3_connectivity(&self) -> Result<bool, P3cError> {
        let n = self.n();
        if n < 4 {
            return Err(P3cError::Invalid("graph too small".into()));
        }
        if !self.connected_without(&[]) {
            return Ok(false);
        }
        for u in 0..n {
            if !self.connected_without(&[u]) {
                return Ok(false);
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if !self.connected_without(&[u, v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// BFS connectivity of the graph minus `removed` (true when at least one
    /// vertex remains and all remaining vertices are mutually reachable).
    pub fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.n();
        let mut dead = vec![false; n];
        for &v in removed {
            dead[v] = true;
        }
        let Some(start) = (0..n).find(|&v| !dead[v]) else {
            return false;
        };
        let mut seen = vec![false; n];
        let mut queue = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = queue.pop() {
            for &(w, _) in &self.adj[v] {
                if !dead[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push(w);
                }
            }
        }
        count == n - removed.len()
    }

    /// Connected components of the graph minus `removed`, as sorted vertex lists.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut dead = vec![false; n];
        for &v in removed {
            dead[v] = true;
        }
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if dead[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &(w, _) in &self.adj[v] {
                    if !dead[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Serialize to the text graph format; inverse of [`parse_graph`] on
    /// (edges, rotation).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n(), self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u, v);
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut line = format!("r {}", v);
            for &e in rot {
                let _ = write!(line, " {}", e);
            }
            let _ = writeln!(out, "{}", line);
        }
        if let Some((v, e)) = self.hint_dart {
            let _ = writeln!(out, "o {} {}", v, e);
        }
        out
    }
}

/// Parse the text graph format.
///
/// One record per line: `p <n> <m>`, then `e <u> <v>` per edge (0-based, edge
/// ids in file order), then `r <v> <e1> <e2> ...` per vertex with the
/// counterclockwise rotation over edge ids, optionally `o <vertex> <edge>`
/// marking the outer face by an incident dart. `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<EmbeddedPlanarGraph, P3cError> {
    let mut n: Option<usize> = None;
    let mut m = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut rotation: Vec<Option<Vec<usize>>> = Vec::new();
    let mut hint: Option<(usize, usize)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let kind = it.next().unwrap();
        let nums: Result<Vec<usize>, _> = it.map(|t| t.parse::<usize>()).collect();
        let nums = nums.map_err(|_| P3cError::parse(line_no, format!("malformed line: {raw}")))?;
        match kind {
            "p" => {
                if n.is_some() || nums.len() != 2 {
                    return Err(P3cError::parse(line_no, "bad p line".into()));
                }
                n = Some(nums[0]);
                m = nums[1];
                rotation = vec![None; nums[0]];
            }
            "e" => {
                let nv = n.ok_or_else(|| P3cError::parse(line_no, "e before p".into()))?;
                if nums.len() != 2 {
                    return Err(P3cError::parse(line_no, "bad e line".into()));
                }
                let (u, v) = (nums[0], nums[1]);
                if u >= nv || v >= nv {
                    return Err(P3cError::parse(line_no, format!("vertex out of range: {u} {v}")));
                }
                if u == v {
                    return Err(P3cError::parse(line_no, format!("loop edge at {u}")));
                }
                if edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u.min(v), u.max(v))) {
                    return Err(P3cError::parse(line_no, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            "r" => {
                let nv = n.ok_or_else(|| P3cError::parse(line_no, "r before p".into()))?;
                if nums.is_empty() {
                    return Err(P3cError::parse(line_no, "bad r line".into()));
                }
                let v = nums[0];
                if v >= nv {
                    return Err(P3cError::parse(line_no, format!("vertex out of range: {v}")));
                }
                for &e in &nums[1..] {
                    if e >= edges.len() {
                        return Err(P3cError::parse(line_no, format!("rotation mentions unknown edge {e}")));
                    }
                }
                if rotation[v].is_some() {
                    return Err(P3cError::parse(line_no, format!("duplicate rotation for {v}")));
                }
                rotation[v] = Some(nums[1..].to_vec());
            }
            "o" => {
                if nums.len() != 2 {
                    return Err(P3cError::parse(line_no, "bad o line".into()));
                }
                hint = Some((nums[0], nums[1]));
            }
            _ => return Err(P3cError::parse(line_no, format!("unknown record `{kind}`"))),
        }
    }

    let n = n.ok_or_else(|| P3cError::parse(0, "missing p line".into()))?;
    if edges.len() != m {
        return Err(P3cError::parse(0, format!("expected {} edges, found {}", m, edges.len())));
    }
    let rotation: Vec<Vec<usize>> = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| P3cError::parse(0, format!("missing rotation for {v}"))))
        .collect::<Result<_, _>>()?;
    if let Some((v, e)) = hint {
        if v >= n || e >= edges.len() || (edges[e].0 != v && edges[e].1 != v) {
            return Err(P3cError::parse(0, "bad outer face hint".into()));
        }
    }

    let mut g = EmbeddedPlanarGraph::new(n, edges, rotation)?;
    g.hint_dart = hint;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    pub fn k4_text() -> &'static str {
        // e0=(0,1) e1=(0,2) e2=(0,3) e3=(1,2) e4=(1,3) e5=(2,3)
        "p 4 6\n\
         e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n\
         r 0 0 2 1\n\
         r 1 3 4 0\n\
         r 2 1 5 3\n\
         r 3 5 2 4\n"
    }

    #[test]
    fn parse_k4() {
        let g = parse_graph(k4_text()).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
    }

    #[test]
    fn parse_wheel_roundtrip() {
        let w5 = generators::wheel(5).unwrap();
        assert_eq!((w5.n(), w5.m()), (6, 10));
        let text = w5.to_text();
        let mut re = parse_graph(&text).unwrap();
        assert_eq!(re.edges, w5.edges);
        assert_eq!(re.rotation, w5.rotation);
        re.trace_faces().unwrap();
        assert_eq!(re.f(), 6);
    }

    #[test]
    fn parse_rejects_loop() {
        let err = parse_graph("p 2 1\ne 1 1\nr 0\nr 1 0\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("loop"), "{msg}");
    }

    #[test]
    fn parse_rejects_duplicate_edge() {
        let err = parse_graph("p 3 2\ne 0 1\ne 1 0\nr 0 0\nr 1 0 1\nr 2\n").unwrap_err();
        assert!(err.to_string().contains("duplicate edge"));
    }

    #[test]
    fn parse_rejects_unknown_edge_in_rotation() {
        let err = parse_graph("p 3 2\ne 0 1\ne 1 2\nr 0 0\nr 1 0 1\nr 2 7\n").unwrap_err();
        assert!(err.to_string().contains("unknown edge 7"));
    }

    #[test]
    fn trace_k4_faces() {
        let mut g = parse_graph(k4_text()).unwrap();
        g.trace_faces().unwrap();
        assert_eq!(g.f(), 4);
        assert!(g.faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn trace_cube_faces() {
        let mut g = generators::cube();
        g.trace_faces().unwrap();
        assert_eq!(g.f(), 6);
        assert!(g.faces.iter().all(|f| f.len() == 4));
    }

    #[test]
    fn trace_wheel_faces() {
        let mut g = generators::wheel(5).unwrap();
        g.trace_faces().unwrap();
        assert_eq!(g.f(), 6);
        let mut lens: Vec<usize> = g.faces.iter().map(|f| f.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 3, 3, 3, 5]);
    }

    #[test]
    fn trace_rejects_inconsistent_rotation() {
        // reversing one rotation yields a genus-one system; Euler fails
        let mut g = parse_graph(k4_text()).unwrap();
        g.rotation[0].reverse();
        let err = g.trace_faces().unwrap_err();
        assert!(err.to_string().contains("not a planar embedding"));
    }

    #[test]
    fn incidence_sums() {
        for g in [generators::wheel(7).unwrap(), generators::cube(), generators::octahedron()] {
            let mut g = g;
            g.trace_faces().unwrap();
            let deg_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            let face_sum: usize = g.faces.iter().map(|f| f.len()).sum();
            assert_eq!(deg_sum, 2 * g.m());
            assert_eq!(face_sum, 2 * g.m());
        }
    }

    #[test]
    fn three_connectivity() {
        let mut k4 = parse_graph(k4_text()).unwrap();
        k4.trace_faces().unwrap();
        assert!(k4.check_3_connectivity().unwrap());

        let w5 = generators::wheel(5).unwrap();
        assert!(w5.check_3_connectivity().unwrap());

        // C5: every non-adjacent pair is a cutset
        let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let rotation: Vec<Vec<usize>> = (0..5).map(|i| vec![(i + 4) % 5, i]).collect();
        let mut c5 = EmbeddedPlanarGraph::new(5, edges, rotation).unwrap();
        c5.trace_faces().unwrap();
        assert_eq!(c5.f(), 2);
        assert!(!c5.check_3_connectivity().unwrap());

        let tiny = EmbeddedPlanarGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![vec![0, 2], vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(tiny.check_3_connectivity().is_err());
    }

    /// Menger-style oracle: max number of internally disjoint u-v paths via
    /// unit-capacity vertex-split max flow, independent of the deletion check.
    fn vertex_connectivity_at_least(g: &EmbeddedPlanarGraph, k: usize) -> bool {
        let n = g.n();
        for s in 0..n {
            for t in s + 1..n {
                if g.has_edge(s, t) {
                    continue;
                }
                if max_disjoint_paths(g, s, t, k) < k {
                    return false;
                }
            }
        }
        true
    }

    fn max_disjoint_paths(g: &EmbeddedPlanarGraph, s: usize, t: usize, cap: usize) -> usize {
        // node-split flow: node v -> v_in (2v), v_out (2v+1)
        let n = g.n();
        let mut capmat = std::collections::HashMap::<(usize, usize), i32>::new();
        for v in 0..n {
            let c = if v == s || v == t { cap as i32 } else { 1 };
            capmat.insert((2 * v, 2 * v + 1), c);
        }
        for &(u, v) in &g.edges {
            capmat.insert((2 * u + 1, 2 * v), 1);
            capmat.insert((2 * v + 1, 2 * u), 1);
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        loop {
            // BFS augmenting path
            let mut prev = vec![usize::MAX; 2 * n];
            prev[src] = src;
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                if x == dst {
                    break;
                }
                for (&(a, b), &c) in capmat.iter() {
                    if a == x && c > 0 && prev[b] == usize::MAX {
                        prev[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if prev[dst] == usize::MAX {
                return flow;
            }
            let mut x = dst;
            while x != src {
                let p = prev[x];
                *capmat.get_mut(&(p, x)).unwrap() -= 1;
                *capmat.entry((x, p)).or_insert(0) += 1;
                x = p;
            }
            flow += 1;
            if flow >= cap {
                return flow;
            }
        }
    }

    #[test]
    fn three_connectivity_matches_menger() {
        let mut graphs = vec![
            generators::wheel(5).unwrap(),
            generators::wheel(6).unwrap(),
            generators::prism_stack(2).unwrap(),
            generators::octahedron(),
            generators::cube(),
        ];
        for seed in 0..4 {
            graphs.push(generators::apollonian(8, seed).unwrap());
            graphs.push(generators::random_reduced(9, seed, 3).unwrap().0);
        }
        for g in &graphs {
            assert_eq!(
                g.check_3_connectivity().unwrap(),
                vertex_connectivity_at_least(g, 3)
            );
        }
    }
}
