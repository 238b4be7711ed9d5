//! Dual-spanning-tree index over the flags of BCS(G): inside/outside
//! decisions, interior face counting, containment and laminarity of cycles.
//!
//! The inside of a cycle is the side not containing the chosen outer flag.
//! Interior counts are signed subtree sums over the tree edges crossed by the
//! cycle; containment uses preorder/postorder ancestor tests.

use std::collections::VecDeque;

use crate::bcs::{BcsGraph, DualGraph};
use crate::error::P3cError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaminarRelation {
    Equal,
    Disjoint,
    FirstContainsSecond,
    SecondContainsFirst,
    Crossing,
}

#[derive(Debug, Clone, Copy)]
enum EdgeOrient {
    NonTree,
    /// tree edge directed away from the root into `child`; `subtree` flags below
    Tree { child: usize, subtree: usize },
}

#[derive(Debug, Clone)]
pub struct DualTreeIndex {
    pub outer_flag: usize,
    pub parent: Vec<usize>,
    pre: Vec<usize>,
    post: Vec<usize>,
    orient: Vec<EdgeOrient>,
    pub flag_count: usize,
}

/// Per-cycle data for repeated laminarity queries.
#[derive(Debug, Clone)]
pub struct CycleData {
    edges: Vec<usize>,
    tree_children: Vec<usize>,
    pub inside_count: usize,
    inside_flags: Vec<usize>,
}

/// Build the index from a breadth-first spanning tree of the dual rooted at
/// `outer_flag`.
pub fn build_index(bcs: &BcsGraph, dual: &DualGraph, outer_flag: usize) -> DualTreeIndex {
    let nf = dual.adj.len();
    assert!(outer_flag < nf);
    let mut parent = vec![usize::MAX; nf];
    let mut parent_edge = vec![usize::MAX; nf];
    let mut order = Vec::with_capacity(nf);
    let mut seen = vec![false; nf];
    let mut queue = VecDeque::from([outer_flag]);
    seen[outer_flag] = true;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &(y, e) in &dual.adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                parent_edge[y] = e;
                queue.push_back(y);
            }
        }
    }
    assert_eq!(order.len(), nf, "dual graph must be connected");

    let mut subtree = vec![1usize; nf];
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            subtree[parent[x]] += subtree[x];
        }
    }
    let mut orient = vec![EdgeOrient::NonTree; bcs.edges.len()];
    for x in 0..nf {
        if parent_edge[x] != usize::MAX {
            orient[parent_edge[x]] = EdgeOrient::Tree {
                child: x,
                subtree: subtree[x],
            };
        }
    }

    // pre/post order by iterative DFS over tree children
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for &x in &order {
        if parent[x] != usize::MAX {
            children[parent[x]].push(x);
        }
    }
    let mut pre = vec![0usize; nf];
    let mut post = vec![0usize; nf];
    let mut pre_t = 0;
    let mut post_t = 0;
    let mut stack = vec![(outer_flag, false)];
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            post[x] = post_t;
            post_t += 1;
            continue;
        }
        pre[x] = pre_t;
        pre_t += 1;
        stack.push((x, true));
        for &c in children[x].iter().rev() {
            stack.push((c, false));
        }
    }

    DualTreeIndex {
        outer_flag,
        parent,
        pre,
        post,
        orient,
        flag_count: nf,
    }
}

impl DualTreeIndex {
    /// x is an ancestor of y (or equal) in the dual spanning tree.
    pub fn is_ancestor(&self, x: usize, y: usize) -> bool {
        self.pre[x] <= self.pre[y] && self.post[x] >= self.post[y]
    }

    pub fn pre_order(&self, x: usize) -> usize {
        self.pre[x]
    }

    pub fn post_order(&self, x: usize) -> usize {
        self.post[x]
    }

    fn check_cycle(&self, bcs: &BcsGraph, cycle: &[usize]) -> Result<(), P3cError> {
        if cycle.len() < 3 {
            return Err(P3cError::InvalidCycle("fewer than three nodes".into()));
        }
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cycle.len() {
            return Err(P3cError::InvalidCycle("repeated node".into()));
        }
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if bcs.edge_between(a, b).is_none() {
                return Err(P3cError::InvalidCycle(format!("{a} and {b} are not adjacent")));
            }
        }
        Ok(())
    }

    /// Which geometric side of the traversal of `cycle` is the inside (the
    /// side without the outer flag), and how many flags lie strictly inside.
    pub fn interior_face_count(
        &self,
        bcs: &BcsGraph,
        cycle: &[usize],
    ) -> Result<(Side, usize), P3cError> {
        self.check_cycle(bcs, cycle)?;
        let mut sum: i64 = 0;
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let e = bcs.edge_between(a, b).unwrap();
            if let EdgeOrient::Tree { child, subtree } = self.orient[e] {
                let (left, right) = bcs.flags_of_dart(a, b);
                if child == left {
                    sum += subtree as i64;
                } else {
                    debug_assert_eq!(child, right);
                    sum -= subtree as i64;
                }
            }
        }
        assert!(sum != 0, "a simple cycle encloses at least one flag");
        if sum > 0 {
            Ok((Side::Left, sum as usize))
        } else {
            Ok((Side::Right, (-sum) as usize))
        }
    }

    /// Is flag `f` strictly inside `cycle`? Counts cycle edges on the tree
    /// path from `f` to the root; odd means inside.
    pub fn face_in_cycle(&self, bcs: &BcsGraph, f: usize, cycle: &[usize]) -> bool {
        let mut crossings = 0usize;
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let e = bcs.edge_between(a, b).expect("cycle over BCS edges");
            if let EdgeOrient::Tree { child, .. } = self.orient[e] {
                if self.is_ancestor(child, f) {
                    crossings += 1;
                }
            }
        }
        crossings % 2 == 1
    }

    /// The flag adjacent to each cycle edge on the inside, in traversal order.
    pub fn inside_adjacent_flags(&self, bcs: &BcsGraph, cycle: &[usize]) -> Result<Vec<usize>, P3cError> {
        let (side, _) = self.interior_face_count(bcs, cycle)?;
        let mut out = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let (left, right) = bcs.flags_of_dart(a, b);
            out.push(if side == Side::Left { left } else { right });
        }
        Ok(out)
    }

    /// Precompute everything laminarity classification needs for one cycle:
    /// sorted edge ids, the tree-edge children crossed by the cycle, interior
    /// count and the inside-adjacent flags.
    pub fn analyze_cycle(&self, bcs: &BcsGraph, cycle: &[usize]) -> Result<CycleData, P3cError> {
        let (side, count) = self.interior_face_count(bcs, cycle)?;
        let mut edges = Vec::with_capacity(cycle.len());
        let mut tree_children = Vec::new();
        let mut inside_flags = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            let e = bcs.edge_between(a, b).unwrap();
            edges.push(e);
            if let EdgeOrient::Tree { child, .. } = self.orient[e] {
                tree_children.push(child);
            }
            let (left, right) = bcs.flags_of_dart(a, b);
            inside_flags.push(if side == Side::Left { left } else { right });
        }
        edges.sort_unstable();
        Ok(CycleData {
            edges,
            tree_children,
            inside_count: count,
            inside_flags,
        })
    }

    /// Is flag `f` strictly inside the analyzed cycle?
    pub fn flag_in(&self, data: &CycleData, f: usize) -> bool {
        data.tree_children
            .iter()
            .filter(|&&c| self.is_ancestor(c, f))
            .count()
            % 2
            == 1
    }

    /// Classification on precomputed cycle data; no hashing in the hot path.
    pub fn relation(&self, a: &CycleData, b: &CycleData) -> LaminarRelation {
        if a.edges == b.edges {
            return LaminarRelation::Equal;
        }
        // containment can only go from the larger interior to the smaller
        if a.inside_count > b.inside_count && b.inside_flags.iter().all(|&f| self.flag_in(a, f)) {
            return LaminarRelation::FirstContainsSecond;
        }
        if b.inside_count > a.inside_count && a.inside_flags.iter().all(|&f| self.flag_in(b, f)) {
            return LaminarRelation::SecondContainsFirst;
        }
        let meet = b.inside_flags.iter().any(|&f| self.flag_in(a, f))
            || a.inside_flags.iter().any(|&f| self.flag_in(b, f));
        if meet {
            LaminarRelation::Crossing
        } else {
            LaminarRelation::Disjoint
        }
    }

    /// Classify the interior flag sets of two simple cycles.
    pub fn laminar_relation(
        &self,
        bcs: &BcsGraph,
        c1: &[usize],
        c2: &[usize],
    ) -> Result<LaminarRelation, P3cError> {
        let a = self.analyze_cycle(bcs, c1)?;
        let b = self.analyze_cycle(bcs, c2)?;
        Ok(self.relation(&a, &b))
    }

    /// Containment test for cycles already known laminar: one inside-adjacent
    /// flag of each cycle is checked against the other.
    pub fn laminar_relation_assuming_laminar(
        &self,
        bcs: &BcsGraph,
        c1: &[usize],
        c2: &[usize],
    ) -> Result<LaminarRelation, P3cError> {
        if same_edge_set(bcs, c1, c2) {
            return Ok(LaminarRelation::Equal);
        }
        let f2 = self.inside_adjacent_flags(bcs, c2)?[0];
        if self.face_in_cycle(bcs, f2, c1) {
            return Ok(LaminarRelation::FirstContainsSecond);
        }
        let f1 = self.inside_adjacent_flags(bcs, c1)?[0];
        if self.face_in_cycle(bcs, f1, c2) {
            return Ok(LaminarRelation::SecondContainsFirst);
        }
        Ok(LaminarRelation::Disjoint)
    }
}

fn same_edge_set(bcs: &BcsGraph, c1: &[usize], c2: &[usize]) -> bool {
    if c1.len() != c2.len() {
        return false;
    }
    let collect = |c: &[usize]| -> Vec<usize> {
        let mut es: Vec<usize> = (0..c.len())
            .map(|i| bcs.edge_between(c[i], c[(i + 1) % c.len()]).expect("cycle edge"))
            .collect();
        es.sort_unstable();
        es
    };
    collect(c1) == collect(c2)
}
