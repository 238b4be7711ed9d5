//! Tree decompositions of adhesion three from a laminar family of canonical
//! cycles: one bag per cycle interior plus one bag for the outside, glued by
//! the nesting structure of the cycles.

use std::collections::BTreeSet;

use crate::fasthash::FastMap;

use serde::Serialize;

use crate::bcs::BcsGraph;
use crate::cycles::{self, SixCycle};
use crate::decompose::find_crossing_pair;
use crate::error::P3cError;
use crate::orientation::DualTreeIndex;

#[derive(Debug, Clone, Serialize)]
pub struct TdEdge {
    pub u: usize,
    pub w: usize,
    pub adhesion: [usize; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<TdEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parent {
    Root,
    Cycle(usize),
}

/// Build the tree decomposition for a pairwise laminar set of canonical
/// cycles.
///
/// Cycles are sorted by interior flag count; the per-edge lists of cycles
/// through each BCS edge split into at most two nested chains (one per side).
/// Parent cycles follow from five local rules: the component holding the
/// outer flag is a child of the root, a non-first chain member is a child of
/// its predecessor, the component hugging the innermost chain cycle from
/// inside is its child, and chain heads share their parent with the opposite
/// chain head or with the component on the uncovered side. Bags then collect
/// each cycle's three vertices (into its own and its parent's bag) and every
/// off-cycle vertex (into its component's parent bag).
pub fn build_tree_decomposition(
    bcs: &BcsGraph,
    idx: &DualTreeIndex,
    family: &[SixCycle],
) -> Result<TreeDecomposition, P3cError> {
    let n = bcs.n();
    if family.is_empty() {
        return Ok(TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        });
    }
    if let Some((i, j)) = find_crossing_pair(bcs, idx, family, 200_000) {
        return Err(P3cError::NotLaminar(format!(
            "cycles {:?} and {:?} cross",
            family[i].nodes, family[j].nodes
        )));
    }

    let nc = family.len();
    let mut interior = vec![0usize; nc];
    // per cycle, per dart: (bcs edge, inside flag)
    let mut darts: Vec<Vec<(usize, usize)>> = Vec::with_capacity(nc);
    for (i, c) in family.iter().enumerate() {
        let (_, count) = idx.interior_face_count(bcs, &c.nodes)?;
        interior[i] = count;
        let inside = idx.inside_adjacent_flags(bcs, &c.nodes)?;
        let mut d = Vec::with_capacity(6);
        for j in 0..6 {
            let e = bcs
                .edge_between(c.nodes[j], c.nodes[(j + 1) % 6])
                .expect("family cycles are simple");
            d.push((e, inside[j]));
        }
        darts.push(d);
    }

    // chains per (bcs edge, inside flag), sorted outermost (largest interior) first
    let mut chains: FastMap<usize, Vec<(usize, Vec<usize>)>> = FastMap::default();
    for (i, d) in darts.iter().enumerate() {
        for &(e, flag) in d {
            let entry = chains.entry(e).or_default();
            match entry.iter_mut().find(|(f, _)| *f == flag) {
                Some((_, list)) => list.push(i),
                None => entry.push((flag, vec![i])),
            }
        }
    }
    for lists in chains.values_mut() {
        debug_assert!(lists.len() <= 2);
        for (_, list) in lists.iter_mut() {
            list.sort_unstable_by(|&a, &b| interior[b].cmp(&interior[a]).then(a.cmp(&b)));
        }
    }

    // components of the dual after removing family edges
    let mut removed = vec![false; bcs.edges.len()];
    for d in &darts {
        for &(e, _) in d {
            removed[e] = true;
        }
    }
    let nf = bcs.flags.len();
    let mut comp = vec![usize::MAX; nf];
    let mut ncomp = 0usize;
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

    // items: cycles 0..nc, components nc..nc+ncomp
    let item_count = nc + ncomp;
    let mut explicit: Vec<Option<Parent>> = vec![None; item_count];
    let set_parent = |explicit: &mut Vec<Option<Parent>>, item: usize, p: Parent| {
        match explicit[item] {
            None => explicit[item] = Some(p),
            Some(prev) => debug_assert_eq!(prev, p, "conflicting parents for item {item}"),
        }
    };
    let mut same: Vec<(usize, usize)> = Vec::new();

    set_parent(&mut explicit, nc + comp[idx.outer_flag], Parent::Root);
    for (&e, lists) in &chains {
        for (flag, list) in lists {
            for w in list.windows(2) {
                set_parent(&mut explicit, w[1], Parent::Cycle(w[0]));
            }
            let innermost = *list.last().unwrap();
            set_parent(&mut explicit, nc + comp[*flag], Parent::Cycle(innermost));
        }
        match lists.len() {
            2 => same.push((lists[0].1[0], lists[1].1[0])),
            1 => {
                // the chain head shares its parent with the component on the
                // uncovered side of this edge
                let [f1, f2] = bcs.edge_flags[e];
                let other = if f1 == lists[0].0 { f2 } else { f1 };
                same.push((lists[0].1[0], nc + comp[other]));
            }
            _ => unreachable!(),
        }
    }

    // propagate parents across same-parent classes
    let mut uf: Vec<usize> = (0..item_count).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for &(a, b) in &same {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut class_parent: FastMap<usize, Parent> = FastMap::default();
    for item in 0..item_count {
        if let Some(p) = explicit[item] {
            let r = find(&mut uf, item);
            match class_parent.get(&r) {
                None => {
                    class_parent.insert(r, p);
                }
                Some(&prev) => debug_assert_eq!(prev, p, "parent disagreement in class {r}"),
            }
        }
    }
    let parent_of = |uf: &mut Vec<usize>, item: usize| -> Parent {
        let r = find(uf, item);
        *class_parent
            .get(&r)
            .unwrap_or_else(|| panic!("item {item} has no parent assignment"))
    };

    // bags: 0 = outside, 1 + i = interior of cycle i
    let bag_of = |p: Parent| -> usize {
        match p {
            Parent::Root => 0,
            Parent::Cycle(i) => 1 + i,
        }
    };
    let mut bags: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); 1 + nc];
    let mut on_cycle = vec![false; n];
    for (i, c) in family.iter().enumerate() {
        let t = cycles::cutset_of(bcs, c);
        let pb = bag_of(parent_of(&mut uf, i));
        for &x in &t {
            on_cycle[x] = true;
            bags[1 + i].insert(x);
            bags[pb].insert(x);
        }
    }
    for x in 0..n {
        if on_cycle[x] {
            continue;
        }
        let k = comp[bcs.node_flag[bcs.vnode(x)]];
        let pb = bag_of(parent_of(&mut uf, nc + k));
        bags[pb].insert(x);
    }

    let edges: Vec<TdEdge> = family
        .iter()
        .enumerate()
        .map(|(i, c)| TdEdge {
            u: bag_of(parent_of(&mut uf, i)),
            w: 1 + i,
            adhesion: cycles::cutset_of(bcs, c),
        })
        .collect();

    Ok(TreeDecomposition {
        bags: bags.into_iter().map(|b| b.into_iter().collect()).collect(),
        edges,
    })
}
