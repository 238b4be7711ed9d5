//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figures (run with `--nocapture` to see them).

use std::sync::Mutex;
use std::time::Instant;

/// Criteria run one at a time: several are wall-clock bounds and must not
/// compete for cores with the other tests in this binary.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

use p3c::bcs::{build_bcs, build_dual, BcsGraph};
use p3c::cycles;
use p3c::decompose::{
    cut_along, maximal_laminar_family, piece_has_big_frame, DecompositionResult, Mode,
};
use p3c::frames;
use p3c::generators;
use p3c::oracle::{self, MaximalityVerdict, OracleMode, TreeVerdict};
use p3c::orientation::{build_index, DualTreeIndex};
use p3c::planar::EmbeddedPlanarGraph;

fn traced(mut g: EmbeddedPlanarGraph) -> EmbeddedPlanarGraph {
    if g.f() == 0 {
        g.trace_faces().unwrap();
    }
    g
}

/// The desk-scale corpus: K4, prism, octahedron, cube, W4-W9, Apollonian
/// networks up to n = 12 and fifty seeded reduced graphs up to n = 12.
fn corpus() -> Vec<(String, EmbeddedPlanarGraph)> {
    let mut out: Vec<(String, EmbeddedPlanarGraph)> = vec![
        ("K4".into(), traced(generators::apollonian(4, 0).unwrap())),
        ("prism".into(), traced(generators::prism_stack(1).unwrap())),
        ("octahedron".into(), traced(generators::octahedron())),
        ("cube".into(), traced(generators::cube())),
    ];
    for k in 4..=9 {
        out.push((format!("W{k}"), traced(generators::wheel(k).unwrap())));
    }
    for n in 5..=12 {
        out.push((
            format!("apollonian{n}"),
            traced(generators::apollonian(n, n as u64).unwrap()),
        ));
    }
    for seed in 0..50u64 {
        let n = 8 + (seed as usize % 5);
        let d = 2 + (seed as usize % 4);
        let (g, _) = generators::random_reduced(n, seed, d).unwrap();
        out.push((format!("reduced{n}s{seed}"), traced(g)));
    }
    out
}

fn modes_for(g: &EmbeddedPlanarGraph) -> Vec<(Mode, Option<usize>)> {
    let mut ms = vec![(Mode::All, None), (Mode::Nontrivial, None)];
    for v in 0..g.n() {
        ms.push((Mode::NonShiftable, Some(v)));
    }
    ms
}

fn oracle_mode(mode: Mode, v: Option<usize>) -> OracleMode {
    match mode {
        Mode::All => OracleMode::All,
        Mode::Nontrivial => OracleMode::Nontrivial,
        Mode::NonShiftable => OracleMode::NonShiftable(v.unwrap()),
    }
}

fn check_family_sound(g: &EmbeddedPlanarGraph, r: &DecompositionResult, name: &str) {
    let om = oracle_mode(r.mode, r.v);
    for fe in &r.family {
        assert!(oracle::is_cutset(g, fe.cutset), "{name}: {:?} not a cutset", fe.cutset);
        assert!(
            oracle::eligible(g, fe.cutset, om),
            "{name}: {:?} not in class {om:?}",
            fe.cutset
        );
    }
}

#[test]
fn criterion_1_oracle_equivalence_exhaustive() {
    let _guard = serial();
    let t0 = Instant::now();
    let mut runs = 0usize;
    let graphs = corpus();
    for (name, g) in &graphs {
        for (mode, v) in modes_for(g) {
            let r = maximal_laminar_family(g, mode, v).unwrap();
            check_family_sound(g, &r, name);
            let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
            let verdict = oracle::is_maximal_laminar(g, &fam, oracle_mode(mode, v), 13, 0, 0);
            assert_eq!(
                verdict,
                MaximalityVerdict::Maximal,
                "{name} mode {mode} v {v:?}: {verdict:?}"
            );
            runs += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 60.0, "criterion 1 took {secs:.1} s (limit 60 s)");
    println!(
        "[criterion 1] oracle equivalence: PASS ({} graphs, {} runs, {:.1} s)",
        graphs.len(),
        runs,
        secs
    );
}

#[test]
fn criterion_2_cycle_cutset_bijection() {
    let _guard = serial();
    for (name, g) in corpus() {
        let bcs = build_bcs(&g).unwrap();
        let found = cycles::enumerate_canonical_cycles(&bcs);
        let want = oracle::enumerate_all_3cutsets(&g);
        assert_eq!(found.len(), want.len(), "{name}");
        let mut from_cycles: Vec<[usize; 3]> =
            found.iter().map(|c| cycles::cutset_of(&bcs, c)).collect();
        from_cycles.sort_unstable();
        from_cycles.dedup();
        assert_eq!(from_cycles.len(), found.len(), "{name}: cutset_of not injective");
        let from_oracle: Vec<[usize; 3]> = want.iter().map(|&(t, _)| t).collect();
        assert_eq!(from_cycles, from_oracle, "{name}");
    }
    for k in 4..=9usize {
        let g = traced(generators::wheel(k).unwrap());
        let bcs = build_bcs(&g).unwrap();
        assert_eq!(cycles::enumerate_canonical_cycles(&bcs).len(), k * (k - 3) / 2, "W{k}");
        assert_eq!(oracle::enumerate_all_3cutsets(&g).len(), k * (k - 3) / 2, "W{k} oracle");
    }
    println!("[criterion 2] cycle/cutset bijection: PASS (corpus + wheel formula k=4..9)");
}

#[test]
fn criterion_3_tree_decompositions_validate() {
    let _guard = serial();
    let mut checked = 0usize;
    for (name, g) in corpus() {
        for (mode, v) in modes_for(&g) {
            let r = maximal_laminar_family(&g, mode, v).unwrap();
            let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
            let verdict = oracle::validate_tree_decomposition(&g, &r.tree, &fam);
            assert_eq!(verdict, TreeVerdict::Valid, "{name} mode {mode} v {v:?}");
            checked += 1;
        }
    }
    // 500 seeded reduced graphs up to n = 60
    for seed in 0..500u64 {
        let n = 8 + (seed as usize * 7919) % 53;
        let d = 3 + (seed as usize % 6);
        let (g, _) = generators::random_reduced(n, seed, d).unwrap();
        let g = traced(g);
        let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
        let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
        let verdict = oracle::validate_tree_decomposition(&g, &r.tree, &fam);
        assert_eq!(verdict, TreeVerdict::Valid, "reduced n={n} seed={seed}");
        checked += 1;
    }
    println!("[criterion 3] tree decompositions: PASS ({checked} results validated)");
}

fn frame_structure(k: usize) -> (BcsGraph, DualTreeIndex, frames::FrameScan) {
    let g = traced(generators::wheel(k).unwrap());
    let bcs = build_bcs(&g).unwrap();
    let dual = build_dual(&bcs);
    let idx = build_index(&bcs, &dual, 0);
    let scan = frames::find_maximal_big_frames(&bcs);
    (bcs, idx, scan)
}

#[test]
fn criterion_4_frame_behavior_on_wheels() {
    let _guard = serial();
    for k in [10usize, 11, 12, 13, 100, 500] {
        let (bcs, idx, scan) = frame_structure(k);
        assert_eq!(scan.frames.len(), 1, "wheel({k}) big frame count");
        assert_eq!(scan.frames[0].k(), k, "wheel({k}) path count");
        let sel = frames::frame_cycle_selection(&bcs, &idx, &scan.frames[0], Mode::All, None);
        let pieces = cut_along(&bcs, &idx, &sel).unwrap();
        for p in &pieces {
            assert!(!piece_has_big_frame(p, &bcs), "wheel({k}) piece keeps a big frame");
        }
    }
    // exhaustive maximality with frames active
    for k in [10usize, 11, 12, 13] {
        let g = traced(generators::wheel(k).unwrap());
        let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
        assert_eq!(r.stats.frames, 1);
        check_family_sound(&g, &r, &format!("W{k}"));
        let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
        assert_eq!(
            oracle::is_maximal_laminar(&g, &fam, OracleMode::All, 14, 0, 0),
            MaximalityVerdict::Maximal,
            "W{k}"
        );
    }
    // sampled maximality at k = 500
    let g = traced(generators::wheel(500).unwrap());
    let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
    check_family_sound(&g, &r, "W500");
    let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
    assert_eq!(
        oracle::is_maximal_laminar(&g, &fam, OracleMode::All, 0, 10_000, 42),
        MaximalityVerdict::Maximal,
        "W500 sampled"
    );
    println!("[criterion 4] frame behavior: PASS (k in {{10..13,100,500}}, exhaustive <= 13, sampled at 500)");
}

#[test]
fn criterion_5_maximal_planar_sanity() {
    let _guard = serial();
    for seed in 0..100u64 {
        let n = 10 + (seed as usize * 31) % 51; // 10..=60
        let g = traced(generators::apollonian(n, seed).unwrap());
        let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
        let mut fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
        fam.sort_unstable();
        let want = oracle::separating_triangles(&g);
        assert_eq!(fam, want, "apollonian n={n} seed={seed}");
    }
    println!("[criterion 5] maximal-planar sanity: PASS (100 Apollonian graphs, n <= 60)");
}

fn max_conflict_ratio(g: &EmbeddedPlanarGraph) -> f64 {
    let r = maximal_laminar_family(g, Mode::All, None).unwrap();
    r.piece_stats
        .iter()
        .map(|p| (p.cycles + p.crossing_edges) as f64 / p.piece_nodes as f64)
        .fold(0.0, f64::max)
}

#[test]
fn criterion_6_conflict_graph_sparsity() {
    let _guard = serial();
    let mut overall: f64 = 0.0;
    for (_, g) in corpus() {
        overall = overall.max(max_conflict_ratio(&g));
    }
    let sizes = [100usize, 1_000, 10_000];
    let mut by_size = Vec::new();
    for &n in &sizes {
        let g = traced(generators::prism_stack(n / 3 - 1).unwrap());
        let ratio = max_conflict_ratio(&g);
        overall = overall.max(ratio);
        by_size.push((n, ratio));
    }
    let r3 = by_size.iter().find(|(n, _)| *n == 1_000).unwrap().1;
    let r4 = by_size.iter().find(|(n, _)| *n == 10_000).unwrap().1;
    assert!(
        r4 <= 2.0 * r3,
        "conflict ratio grows: {r4:.3} at n=10^4 vs {r3:.3} at n=10^3"
    );
    println!(
        "[criterion 6] conflict-graph sparsity: PASS (c = {overall:.3}; ratio 10^4/10^3 = {:.2})",
        r4 / r3
    );
}

#[test]
fn criterion_7_scaling() {
    let _guard = serial();
    // bounded-degree family: near-linear scaling required
    let sizes = [1_000usize, 3_000, 10_000, 30_000, 100_000];
    let mut points = Vec::new();
    let mut largest_secs = 0.0;
    for &n in &sizes {
        let g = traced(generators::prism_stack(n / 3 - 1).unwrap());
        let t0 = Instant::now();
        let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
        let secs = t0.elapsed().as_secs_f64();
        assert!(!r.family.is_empty());
        points.push(((g.n() as f64).ln(), secs.max(1e-4).ln()));
        if n == 100_000 {
            largest_secs = secs;
        }
    }
    let slope = {
        let n = points.len() as f64;
        let (sx, sy): (f64, f64) = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    assert!(slope <= 1.2, "prism_stack log-log slope {slope:.3} > 1.2");
    assert!(largest_secs < 30.0, "n=10^5 took {largest_secs:.1} s (limit 30 s)");

    // unbounded degree: no linearity claim, but wheel n=2000 must finish fast
    // with correct output
    let g = traced(generators::wheel(1999).unwrap());
    let t0 = Instant::now();
    let r = maximal_laminar_family(&g, Mode::All, None).unwrap();
    let wheel_secs = t0.elapsed().as_secs_f64();
    assert!(wheel_secs < 10.0, "wheel n=2000 took {wheel_secs:.1} s (limit 10 s)");
    check_family_sound(&g, &r, "W1999");
    let fam: Vec<[usize; 3]> = r.family.iter().map(|f| f.cutset).collect();
    assert_eq!(
        oracle::is_maximal_laminar(&g, &fam, OracleMode::All, 0, 2_000, 7),
        MaximalityVerdict::Maximal
    );
    assert_eq!(
        oracle::validate_tree_decomposition(&g, &r.tree, &fam),
        TreeVerdict::Valid
    );
    println!(
        "[criterion 7] scaling: PASS (slope {slope:.2}, n=10^5 in {largest_secs:.1} s, wheel n=2000 in {wheel_secs:.1} s)"
    );
}

/// Flood-fill inside oracle on the dual, independent of the tree index.
fn flood_inside(bcs: &BcsGraph, outer: usize, cycle: &[usize]) -> Vec<bool> {
    let mut blocked = vec![false; bcs.edges.len()];
    for i in 0..cycle.len() {
        blocked[bcs.edge_between(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap()] = true;
    }
    let mut outside = vec![false; bcs.flags.len()];
    let mut stack = vec![outer];
    outside[outer] = true;
    while let Some(x) = stack.pop() {
        for k in 0..3 {
            let e = bcs.flags[x].edges[k];
            if blocked[e] {
                continue;
            }
            let [a, b] = bcs.edge_flags[e];
            let y = if a == x { b } else { a };
            if !outside[y] {
                outside[y] = true;
                stack.push(y);
            }
        }
    }
    outside.iter().map(|&o| !o).collect()
}

#[test]
fn criterion_8_orientation_probes() {
    let _guard = serial();
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut probes = 0usize;
    for (name, g) in corpus() {
        let bcs = build_bcs(&g).unwrap();
        let dual = build_dual(&bcs);
        let idx = build_index(&bcs, &dual, 0);
        // cycle pool: canonical cycles plus every flag triangle
        let mut pool: Vec<Vec<usize>> = cycles::enumerate_canonical_cycles(&bcs)
            .iter()
            .map(|c| c.nodes.to_vec())
            .collect();
        pool.extend(bcs.flags.iter().map(|f| f.nodes.to_vec()));
        let insides: Vec<Vec<bool>> = pool
            .iter()
            .map(|c| flood_inside(&bcs, idx.outer_flag, c))
            .collect();
        for (c, inside) in pool.iter().zip(&insides) {
            let want: usize = inside.iter().filter(|&&x| x).count();
            let (_, got) = idx.interior_face_count(&bcs, c).unwrap();
            assert_eq!(got, want, "{name}: interior count");
            assert_eq!(
                bcs.flags.len() - want,
                inside.iter().filter(|&&x| !x).count(),
                "{name}: inside + outside = total"
            );
        }
        for _ in 0..1000 {
            let ci = rng.gen_range(0..pool.len());
            let f = rng.gen_range(0..bcs.flags.len());
            assert_eq!(
                idx.face_in_cycle(&bcs, f, &pool[ci]),
                insides[ci][f],
                "{name}: flag {f} vs cycle {ci}"
            );
            probes += 1;
        }
    }
    println!("[criterion 8] orientation structures: PASS ({probes} probes against flood fill)");
}
