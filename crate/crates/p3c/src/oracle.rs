//! Brute-force ground truth for 3-cutsets: enumeration, laminarity,
//! classification, maximality and tree-decomposition validation.
//!
//! Everything here recomputes components from scratch and shares no code with
//! the cycle/frame/decomposition pipeline; it exists to check that pipeline.

use serde::Serialize;

use crate::planar::EmbeddedPlanarGraph;
use crate::treedec::TreeDecomposition;

pub const EXHAUSTIVE_CAP: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct CutsetRecord {
    pub cutset: [usize; 3],
    pub components: Vec<Vec<usize>>,
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_nonshiftable: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: usize,
    pub cutset_count: usize,
    pub all_cutsets: Vec<CutsetRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaximalityVerdict {
    Maximal,
    NotLaminar([usize; 3], [usize; 3]),
    Counterexample([usize; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    All,
    Nontrivial,
    NonShiftable(usize),
}

fn triple_sorted(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// All 3-cutsets of `g` by exhaustive deletion, with the component partition
/// of `g - X` for each.
pub fn enumerate_all_3cutsets(g: &EmbeddedPlanarGraph) -> Vec<([usize; 3], Vec<Vec<usize>>)> {
    let n = g.n();
    assert!(n >= 4, "cutset enumeration needs n >= 4");
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let comps = g.components_without(&[a, b, c]);
                if comps.len() >= 2 {
                    assert_eq!(
                        comps.len(),
                        2,
                        "3-cutset {:?} of a 3-connected planar graph must leave exactly two components",
                        (a, b, c)
                    );
                    out.push(([a, b, c], comps));
                }
            }
        }
    }
    out
}

pub fn is_cutset(g: &EmbeddedPlanarGraph, x: [usize; 3]) -> bool {
    g.components_without(&x).len() >= 2
}

/// Symmetric laminarity test on cutsets: non-laminar when either cutset
/// separates two vertices of the other.
pub fn cutsets_laminar(g: &EmbeddedPlanarGraph, x: [usize; 3], y: [usize; 3]) -> bool {
    !separates(g, x, y) && !separates(g, y, x)
}

fn separates(g: &EmbeddedPlanarGraph, x: [usize; 3], y: [usize; 3]) -> bool {
    let comps = g.components_without(&x);
    let mut hit = usize::MAX;
    for &v in &y {
        if x.contains(&v) {
            continue;
        }
        let c = comps.iter().position(|c| c.binary_search(&v).is_ok()).unwrap();
        if hit == usize::MAX {
            hit = c;
        } else if hit != c {
            return true;
        }
    }
    false
}

/// Classify a cutset: trivial iff some component of `g - X` is a single
/// vertex (asserted equal to the degree-3-neighborhood definition), and
/// v-non-shiftable from the actual components when `v` is given.
pub fn classify_cutset(
    g: &EmbeddedPlanarGraph,
    x: [usize; 3],
    v: Option<usize>,
) -> (bool, Option<bool>) {
    let comps = g.components_without(&x);
    let trivial = comps.iter().any(|c| c.len() == 1);
    let by_neighborhood = (0..g.n()).any(|u| {
        g.degree(u) == 3 && {
            let mut nb: Vec<usize> = g.neighbors(u).iter().map(|&(w, _)| w).collect();
            nb.sort_unstable();
            nb == x
        }
    });
    assert_eq!(
        trivial, by_neighborhood,
        "single-vertex-component and degree-3-neighborhood definitions must agree on {x:?}"
    );
    let vns = v.map(|v| {
        if x.contains(&v) {
            return false;
        }
        let vcomp = comps
            .iter()
            .find(|c| c.binary_search(&v).is_ok())
            .expect("v survives deletion");
        x.iter().all(|&w| {
            g.neighbors(w)
                .iter()
                .filter(|&&(u, _)| vcomp.binary_search(&u).is_err())
                .count()
                >= 2
        })
    });
    (trivial, vns)
}

pub fn eligible(g: &EmbeddedPlanarGraph, x: [usize; 3], mode: OracleMode) -> bool {
    match mode {
        OracleMode::All => true,
        OracleMode::Nontrivial => !classify_cutset(g, x, None).0,
        OracleMode::NonShiftable(v) => classify_cutset(g, x, Some(v)).1 == Some(true),
    }
}

/// Component label per vertex in `g - x` (usize::MAX on deleted vertices).
fn component_labels(g: &EmbeddedPlanarGraph, x: [usize; 3]) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in 0..g.n() {
        if x.contains(&s) || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, _) in g.neighbors(v) {
                if !x.contains(&w) && label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

fn separates_by_labels(lx: &[usize], x: [usize; 3], y: [usize; 3]) -> bool {
    let mut hit = usize::MAX;
    for &v in &y {
        if x.contains(&v) {
            continue;
        }
        if hit == usize::MAX {
            hit = lx[v];
        } else if hit != lx[v] {
            return true;
        }
    }
    false
}

/// Check that `family` is pairwise laminar and that no further cutset of the
/// mode's class can be added. Exhaustive for n <= `exhaustive_cap`; above
/// that, tests `samples` random triples. Component labels per family member
/// are precomputed once, so large families stay cheap.
pub fn is_maximal_laminar(
    g: &EmbeddedPlanarGraph,
    family: &[[usize; 3]],
    mode: OracleMode,
    exhaustive_cap: usize,
    samples: usize,
    seed: u64,
) -> MaximalityVerdict {
    let labels: Vec<Vec<usize>> = family.iter().map(|&x| component_labels(g, x)).collect();
    for (i, &x) in family.iter().enumerate() {
        for (j, &y) in family.iter().enumerate().skip(i + 1) {
            if separates_by_labels(&labels[i], x, y) || separates_by_labels(&labels[j], y, x) {
                return MaximalityVerdict::NotLaminar(x, y);
            }
        }
    }
    let check = |x: [usize; 3]| -> Option<MaximalityVerdict> {
        if family.contains(&x) || !eligible_if_cutset(g, x, mode) {
            return None;
        }
        let lx = component_labels(g, x);
        let laminar_with_all = family.iter().enumerate().all(|(j, &y)| {
            !separates_by_labels(&lx, x, y) && !separates_by_labels(&labels[j], y, x)
        });
        if laminar_with_all {
            return Some(MaximalityVerdict::Counterexample(x));
        }
        None
    };
    if g.n() <= exhaustive_cap {
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                for c in b + 1..g.n() {
                    if let Some(v) = check([a, b, c]) {
                        return v;
                    }
                }
            }
        }
    } else {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = rng.gen_range(0..g.n());
            let b = rng.gen_range(0..g.n());
            let c = rng.gen_range(0..g.n());
            if a == b || b == c || a == c {
                continue;
            }
            if let Some(v) = check(triple_sorted(a, b, c)) {
                return v;
            }
        }
    }
    MaximalityVerdict::Maximal
}

fn eligible_if_cutset(g: &EmbeddedPlanarGraph, x: [usize; 3], mode: OracleMode) -> bool {
    is_cutset(g, x) && eligible(g, x, mode)
}

/// Cutset pairs where "X does not separate Y" holds in exactly one
/// direction. The pairwise laminarity used everywhere here is the symmetric
/// conjunction; this reports where a one-directional reading would differ.
pub fn one_directional_disagreements(
    g: &EmbeddedPlanarGraph,
) -> Vec<([usize; 3], [usize; 3])> {
    let cutsets: Vec<[usize; 3]> = enumerate_all_3cutsets(g).into_iter().map(|(t, _)| t).collect();
    let mut out = Vec::new();
    for (i, &x) in cutsets.iter().enumerate() {
        for &y in &cutsets[i + 1..] {
            if separates(g, x, y) != separates(g, y, x) {
                out.push((x, y));
            }
        }
    }
    out
}

/// All separating triangles: triangles of `g` that are not face boundaries.
pub fn separating_triangles(g: &EmbeddedPlanarGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &(u, v) in g.edges.iter() {
        for &(w, _) in g.neighbors(u) {
            if w > v && v > u && g.has_edge(v, w) && is_cutset(g, [u, v, w]) {
                out.push([u, v, w]);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeVerdict {
    Valid,
    Invalid(String),
}

/// Validate a tree decomposition of adhesion three against `g` and the family
/// its adhesions must realize: vertex coverage, edge coverage, per-vertex bag
/// connectivity, exact adhesions, and adhesion multiset == family multiset.
pub fn validate_tree_decomposition(
    g: &EmbeddedPlanarGraph,
    td: &TreeDecomposition,
    family: &[[usize; 3]],
) -> TreeVerdict {
    let nb = td.bags.len();
    if nb == 0 {
        return TreeVerdict::Invalid("no bags".into());
    }
    if td.edges.len() + 1 != nb {
        return TreeVerdict::Invalid(format!("{} bags, {} tree edges", nb, td.edges.len()));
    }
    let mut adj = vec![Vec::new(); nb];
    for e in &td.edges {
        if e.u >= nb || e.w >= nb {
            return TreeVerdict::Invalid(format!("tree edge {}-{} out of range", e.u, e.w));
        }
        adj[e.u].push(e.w);
        adj[e.w].push(e.u);
    }
    // connectivity of the tree itself
    let mut seen = vec![false; nb];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                cnt += 1;
                stack.push(y);
            }
        }
    }
    if cnt != nb {
        return TreeVerdict::Invalid("tree is disconnected".into());
    }
    // vertex coverage
    for v in 0..g.n() {
        if !td.bags.iter().any(|b| b.contains(&v)) {
            return TreeVerdict::Invalid(format!("vertex {v} in no bag"));
        }
    }
    // edge coverage
    for &(u, v) in &g.edges {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return TreeVerdict::Invalid(format!("edge {u}-{v} in no bag"));
        }
    }
    // per-vertex bag connectivity
    for v in 0..g.n() {
        let inbags: Vec<usize> = (0..nb).filter(|&i| td.bags[i].contains(&v)).collect();
        let mut seen = vec![false; nb];
        let mut stack = vec![inbags[0]];
        seen[inbags[0]] = true;
        let mut cnt = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && td.bags[y].contains(&v) {
                    seen[y] = true;
                    cnt += 1;
                    stack.push(y);
                }
            }
        }
        if cnt != inbags.len() {
            return TreeVerdict::Invalid(format!("bags of vertex {v} are disconnected"));
        }
    }
    // adhesions: stored set == bag intersection, size exactly 3
    let mut adhesions = Vec::new();
    for e in &td.edges {
        let inter: Vec<usize> = td.bags[e.u]
            .iter()
            .filter(|x| td.bags[e.w].contains(x))
            .copied()
            .collect();
        if inter.len() != 3 {
            return TreeVerdict::Invalid(format!(
                "adhesion of bags {}-{} has size {}",
                e.u,
                e.w,
                inter.len()
            ));
        }
        let stored = triple_sorted(e.adhesion[0], e.adhesion[1], e.adhesion[2]);
        if stored.to_vec() != inter {
            return TreeVerdict::Invalid(format!(
                "stored adhesion {:?} differs from intersection {:?}",
                stored, inter
            ));
        }
        adhesions.push(stored);
    }
    adhesions.sort_unstable();
    let mut fam: Vec<[usize; 3]> = family.to_vec();
    fam.sort_unstable();
    if adhesions != fam {
        return TreeVerdict::Invalid(format!(
            "adhesion multiset {:?} differs from family {:?}",
            adhesions, fam
        ));
    }
    TreeVerdict::Valid
}

pub fn report(g: &EmbeddedPlanarGraph, v: Option<usize>) -> OracleReport {
    let all = enumerate_all_3cutsets(g);
    let records = all
        .into_iter()
        .map(|(cutset, components)| {
            let (trivial, vns) = classify_cutset(g, cutset, v);
            CutsetRecord {
                cutset,
                components,
                trivial,
                v_nonshiftable: vns,
            }
        })
        .collect::<Vec<_>>();
    OracleReport {
        n: g.n(),
        m: g.m(),
        cutset_count: records.len(),
        all_cutsets: records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::planar::parse_graph;

    fn k4() -> EmbeddedPlanarGraph {
        let mut g = parse_graph(
            "p 4 6\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\nr 0 0 2 1\nr 1 3 4 0\nr 2 1 5 3\nr 3 5 2 4\n",
        )
        .unwrap();
        g.trace_faces().unwrap();
        g
    }

    #[test]
    fn k4_has_no_cutsets() {
        assert!(enumerate_all_3cutsets(&k4()).is_empty());
    }

    #[test]
    fn octahedron_has_no_cutsets() {
        assert!(enumerate_all_3cutsets(&generators::octahedron()).is_empty());
    }

    #[test]
    fn prism_cutsets_are_the_six_neighborhoods() {
        let g = generators::prism_stack(1).unwrap();
        let cuts = enumerate_all_3cutsets(&g);
        assert_eq!(cuts.len(), 6);
        for (x, comps) in &cuts {
            let (trivial, _) = classify_cutset(&g, *x, None);
            assert!(trivial);
            assert!(comps.iter().any(|c| c.len() == 1));
        }
    }

    #[test]
    fn wheel_cutset_counts() {
        for k in 4..=9 {
            let g = generators::wheel(k).unwrap();
            assert_eq!(enumerate_all_3cutsets(&g).len(), k * (k - 3) / 2, "W{k}");
        }
    }

    #[test]
    fn w5_laminarity_cases() {
        let g = generators::wheel(5).unwrap();
        // hub 0, rim 1..=5
        let x = [0, 1, 3];
        assert!(cutsets_laminar(&g, x, x));
        assert!(cutsets_laminar(&g, x, [0, 1, 4]));
        assert!(!cutsets_laminar(&g, x, [0, 2, 4]));
    }

    #[test]
    fn w7_classification() {
        let g = generators::wheel(7).unwrap();
        // {h,r1,r4} = {0,1,4} separates {2,3} from {5,6,7}
        let (trivial, _) = classify_cutset(&g, [0, 1, 4], None);
        assert!(!trivial);
        let (trivial, _) = classify_cutset(&g, [0, 1, 3], None);
        assert!(trivial); // neighborhood of r2

        // v-non-shiftability: X = {h,r3,r6}, v = r1
        let (_, vns) = classify_cutset(&g, [0, 3, 6], Some(1));
        assert_eq!(vns, Some(true));
        let (_, vns) = classify_cutset(&g, [0, 3, 6], Some(0));
        assert_eq!(vns, Some(false)); // v in X
    }

    #[test]
    fn maximality_verdicts() {
        let prism = generators::prism_stack(1).unwrap();
        let all: Vec<[usize; 3]> = enumerate_all_3cutsets(&prism).into_iter().map(|(x, _)| x).collect();
        // neighborhoods of adjacent vertices cross, so the full set is not laminar
        match is_maximal_laminar(&prism, &all, OracleMode::All, EXHAUSTIVE_CAP, 0, 0) {
            MaximalityVerdict::NotLaminar(_, _) => {}
            v => panic!("expected NotLaminar, got {v:?}"),
        }
        // one neighborhood per triangle, picked non-adjacent, is maximal
        let fam = [[1, 2, 3], [1, 3, 5]]; // N(0) and N(4)
        assert!(fam.iter().all(|&x| is_cutset(&prism, x)));
        assert_eq!(
            is_maximal_laminar(&prism, &fam, OracleMode::All, EXHAUSTIVE_CAP, 0, 0),
            MaximalityVerdict::Maximal
        );

        let w5 = generators::wheel(5).unwrap();
        match is_maximal_laminar(&w5, &[], OracleMode::All, EXHAUSTIVE_CAP, 0, 0) {
            MaximalityVerdict::Counterexample(_) => {}
            v => panic!("expected counterexample, got {v:?}"),
        }
        assert_eq!(
            is_maximal_laminar(&generators::octahedron(), &[], OracleMode::All, EXHAUSTIVE_CAP, 0, 0),
            MaximalityVerdict::Maximal
        );
    }

    #[test]
    fn trivial_definitions_agree_on_corpus() {
        let mut graphs = vec![
            generators::wheel(6).unwrap(),
            generators::prism_stack(3).unwrap(),
            generators::cube(),
        ];
        for seed in 0..6 {
            graphs.push(generators::apollonian(10, seed).unwrap());
        }
        for g in &graphs {
            for (x, _) in enumerate_all_3cutsets(g) {
                classify_cutset(g, x, Some(0)); // asserts internally
            }
        }
    }

    #[test]
    fn one_directional_laminarity_report() {
        // the symmetric definition is in force; this surfaces any pair where
        // a one-directional reading would disagree, rather than hiding it
        let mut seen = 0;
        for g in [
            generators::wheel(7).unwrap(),
            generators::prism_stack(3).unwrap(),
            generators::random_reduced(11, 1, 4).unwrap().0,
        ] {
            for (x, y) in one_directional_disagreements(&g) {
                println!("one-directional disagreement: {x:?} vs {y:?}");
                seen += 1;
            }
        }
        println!("one-directional disagreements across sample: {seen}");
    }

    #[test]
    fn tree_validator_catches_defects() {
        use crate::treedec::{TdEdge, TreeDecomposition};
        let g = k4();
        let ok = TreeDecomposition {
            bags: vec![vec![0, 1, 2, 3]],
            edges: vec![],
        };
        assert_eq!(validate_tree_decomposition(&g, &ok, &[]), TreeVerdict::Valid);
        // vertex 3 missing from every bag
        let missing = TreeDecomposition {
            bags: vec![vec![0, 1, 2]],
            edges: vec![],
        };
        match validate_tree_decomposition(&g, &missing, &[]) {
            TreeVerdict::Invalid(msg) => assert!(msg.contains("vertex 3")),
            v => panic!("{v:?}"),
        }
        // adhesion of the wrong size
        let w5 = generators::wheel(5).unwrap();
        let bad = TreeDecomposition {
            bags: vec![vec![0, 1, 2, 3], vec![0, 1, 3, 4, 5]],
            edges: vec![TdEdge { u: 0, w: 1, adhesion: [0, 1, 3] }],
        };
        match validate_tree_decomposition(&w5, &bad, &[[0, 1, 3]]) {
            TreeVerdict::Valid => {}
            v => panic!("expected the well-formed case to pass, got {v:?}"),
        }
        let wrong_adhesion = TreeDecomposition {
            bags: vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4, 5]],
            edges: vec![TdEdge { u: 0, w: 1, adhesion: [0, 1, 2] }],
        };
        assert_ne!(
            validate_tree_decomposition(&w5, &wrong_adhesion, &[[0, 1, 2]]),
            TreeVerdict::Valid
        );
    }

    #[test]
    fn separating_triangles_of_apollonian() {
        let g = generators::apollonian(9, 1).unwrap();
        let tri = separating_triangles(&g);
        let all: Vec<[usize; 3]> = enumerate_all_3cutsets(&g).into_iter().map(|(x, _)| x).collect();
        // in a maximal planar graph every 3-cutset is a separating triangle
        assert_eq!(tri, all);
    }
}
