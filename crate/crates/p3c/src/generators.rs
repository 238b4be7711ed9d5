//! Deterministic generators of embedded 3-connected planar test graphs.
//!
//! Randomized families use ChaCha8 seeded from a `u64`, so identical
//! parameters reproduce identical graphs byte for byte.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::P3cError;
use crate::planar::EmbeddedPlanarGraph;

/// Build an embedded graph from a full list of oriented face walks.
///
/// Every directed edge must occur in exactly one face walk; the rotation at
/// each vertex is chained from the face corners. This is the safest way to
/// write down an embedding by hand.
pub fn from_face_list(n: usize, faces: &[Vec<usize>]) -> Result<EmbeddedPlanarGraph, P3cError> {
    let mut edge_ix = std::collections::HashMap::<(usize, usize), usize>::new();
    let mut edges = Vec::new();
    for walk in faces {
        for i in 0..walk.len() {
            let (u, v) = (walk[i], walk[(i + 1) % walk.len()]);
            if u == v || u >= n || v >= n {
                return Err(P3cError::Invalid(format!("bad face walk edge {u}-{v}")));
            }
            edge_ix.entry((u.min(v), u.max(v))).or_insert_with(|| {
                edges.push((u.min(v), u.max(v)));
                edges.len() - 1
            });
        }
    }
    // corner (a, v, b): the walk arrives at v via av and leaves via vb, so in
    // the rotation at v, edge av is the counterclockwise successor of vb.
    let mut succ: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
    let mut dart_seen = std::collections::HashSet::<(usize, usize)>::new();
    for walk in faces {
        let k = walk.len();
        for i in 0..k {
            let (a, v, b) = (walk[i], walk[(i + 1) % k], walk[(i + 2) % k]);
            if !dart_seen.insert((a, v)) {
                return Err(P3cError::Invalid(format!("dart {a}->{v} in two faces")));
            }
            let e_in = edge_ix[&(a.min(v), a.max(v))];
            let e_out = edge_ix[&(v.min(b), v.max(b))];
            if succ[v].insert(e_out, e_in).is_some() {
                return Err(P3cError::Invalid(format!("inconsistent corners at {v}")));
            }
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let map = &succ[v];
        if map.is_empty() {
            return Err(P3cError::Invalid(format!("isolated vertex {v}")));
        }
        let start = *map.keys().min().unwrap();
        let mut rot = vec![start];
        let mut cur = map[&start];
        while cur != start {
            rot.push(cur);
            cur = *map
                .get(&cur)
                .ok_or_else(|| P3cError::Invalid(format!("broken rotation at {v}")))?;
        }
        if rot.len() != map.len() {
            return Err(P3cError::Invalid(format!("rotation at {v} is not a single cycle")));
        }
        rotation.push(rot);
    }
    let mut g = EmbeddedPlanarGraph::new(n, edges, rotation)?;
    g.trace_faces()?;
    if g.f() != faces.len() {
        return Err(P3cError::Invalid(format!(
            "face list traced to {} faces, expected {}",
            g.f(),
            faces.len()
        )));
    }
    Ok(g)
}

/// Wheel W_k: hub 0 joined to the rim cycle 1..=k. k+1 vertices, 2k edges.
pub fn wheel(k: usize) -> Result<EmbeddedPlanarGraph, P3cError> {
    if k < 4 {
        return Err(P3cError::Invalid(format!("wheel needs k >= 4, got {k}")));
    }
    let rim = |i: usize| 1 + (i % k);
    let mut faces: Vec<Vec<usize>> = (0..k).map(|i| vec![0, rim(i), rim(i + 1)]).collect();
    faces.push((0..k).rev().map(rim).collect());
    from_face_list(k + 1, &faces)
}

/// Stack of `levels` triangular prisms: rings of three vertices joined by
/// vertical edges. 3(levels+1) vertices, max degree 4; every internal ring is
/// a nontrivial 3-cutset.
pub fn prism_stack(levels: usize) -> Result<EmbeddedPlanarGraph, P3cError> {
    if levels < 1 {
        return Err(P3cError::Invalid("prism_stack needs levels >= 1".into()));
    }
    let vid = |ring: usize, j: usize| 3 * ring + (j % 3);
    let mut faces: Vec<Vec<usize>> = vec![vec![vid(0, 0), vid(0, 2), vid(0, 1)]];
    for i in 0..levels {
        for j in 0..3 {
            faces.push(vec![vid(i, j), vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j)]);
        }
    }
    faces.push(vec![vid(levels, 0), vid(levels, 1), vid(levels, 2)]);
    from_face_list(3 * (levels + 1), &faces)
}

/// The octahedron K_{2,2,2}; the smallest 3-connected planar graph with no
/// 3-cutsets besides K4.
pub fn octahedron() -> EmbeddedPlanarGraph {
    let faces = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 1],
        vec![5, 2, 1],
        vec![5, 3, 2],
        vec![5, 4, 3],
        vec![5, 1, 4],
    ];
    from_face_list(6, &faces).expect("static face list")
}

/// The cube Q3.
pub fn cube() -> EmbeddedPlanarGraph {
    let faces = vec![
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
        vec![4, 5, 6, 7],
        vec![3, 2, 1, 0],
    ];
    from_face_list(8, &faces).expect("static face list")
}

/// Random Apollonian network on `n` vertices: start from K4 and repeatedly
/// insert a vertex into a uniformly random triangular face. Maximal planar
/// and 3-connected; apollonian(4, _) is K4.
pub fn apollonian(n: usize, seed: u64) -> Result<EmbeddedPlanarGraph, P3cError> {
    if n < 4 {
        return Err(P3cError::Invalid(format!("apollonian needs n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // oriented triangles of K4 with vertices 0,1,2,3
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 3], [1, 2, 3], [2, 0, 3], [0, 2, 1]];
    for w in 4..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, w];
        faces.push([b, c, w]);
        faces.push([c, a, w]);
    }
    let walks: Vec<Vec<usize>> = faces.iter().map(|t| t.to_vec()).collect();
    from_face_list(n, &walks)
}

/// Apollonian network with up to `deletions` random edges removed, keeping the
/// graph 3-connected. Returns the graph and the number of deletions actually
/// performed (fewer when the budget is unsatisfiable).
pub fn random_reduced(
    n: usize,
    seed: u64,
    deletions: usize,
) -> Result<(EmbeddedPlanarGraph, usize), P3cError> {
    let base = apollonian(n, seed ^ 0x9e37_79b9_7f4a_7c15)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = base.edges.clone();
    let mut rotation = base.rotation.clone();
    let mut done = 0;
    let mut tries = 0;
    let max_tries = 20 * deletions + 20;
    while done < deletions && tries < max_tries {
        tries += 1;
        let e = rng.gen_range(0..edges.len());
        let (u, v) = edges[e];
        if rotation[u].len() <= 3 || rotation[v].len() <= 3 {
            continue;
        }
        // candidate graph without edge e (ids shift down past e)
        let cand_edges: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &p)| p)
            .collect();
        let remap = |x: usize| if x > e { x - 1 } else { x };
        let cand_rot: Vec<Vec<usize>> = rotation
            .iter()
            .map(|rot| rot.iter().filter(|&&x| x != e).map(|&x| remap(x)).collect())
            .collect();
        let mut cand = EmbeddedPlanarGraph::new(n, cand_edges, cand_rot)?;
        cand.trace_faces()?;
        if cand.check_3_connectivity()? {
            edges = cand.edges.clone();
            rotation = cand.rotation.clone();
            done += 1;
        }
    }
    let mut g = EmbeddedPlanarGraph::new(n, edges, rotation)?;
    g.trace_faces()?;
    Ok((g, done))
}
