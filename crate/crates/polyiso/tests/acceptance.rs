//! Acceptance criteria. Each criterion prints one `[PASS]` or `[FAIL]` line;
//! the test fails if any criterion fails.

use std::cell::Cell;
use std::time::{Duration, Instant};

use polyiso_core::families::{cross_polytope, cube, polygon, prism, pyramid, simplex, truncate_vertex};
use polyiso_core::geometry::{affine_iso, congruent, AffineMapCertificate, PointSet};
use polyiso_core::graph::is_simple_polytope;
use polyiso_core::oracle::{oracle_graph_iso, oracle_incidence_iso};
use polyiso_core::reduction::{lambda_coordinates, lambda_incidence, stacked_dual};
use polyiso_core::simple_iso::EdgeBijections;
use polyiso_core::{
    isomorphic, self_dual, simple_isomorphism, FaceLattice, FlagGraph, IncidenceMatrix,
    InputGraph, IsoCertificate, LambdaConfig,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Counts every certificate produced across the criteria and how many of
/// them failed to re-verify.
#[derive(Default)]
struct Ledger {
    checked: Cell<usize>,
    failed: Cell<usize>,
}

impl Ledger {
    fn iso(&self, p: &IncidenceMatrix, q: &IncidenceMatrix, c: &Option<IsoCertificate>) -> bool {
        let Some(c) = c else { return false };
        self.record(c.verify(p, q))
    }

    fn affine(&self, vp: &PointSet, vq: &PointSet, c: &Option<AffineMapCertificate>, congruence: bool) -> bool {
        let Some(c) = c else { return false };
        self.record(if congruence { c.verify_congruence(vp, vq) } else { c.verify(vp, vq) })
    }

    fn record(&self, ok: bool) -> bool {
        self.checked.set(self.checked.get() + 1);
        if !ok {
            self.failed.set(self.failed.get() + 1);
        }
        true
    }
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} in {took:.2?}"))
    } else {
        Err(format!("{detail}, but took {took:.2?} (limit {limit:?})"))
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn shuffled(p: &IncidenceMatrix, rng: &mut ChaCha8Rng) -> IncidenceMatrix {
    let mut perm: Vec<usize> = (0..p.n_vertices()).collect();
    perm.shuffle(rng);
    let mut order: Vec<usize> = (0..p.n_facets()).collect();
    order.shuffle(rng);
    p.relabel_vertices(&perm).reorder_facets(&order)
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> InputGraph {
    let p = rng.gen_range(0.2..0.8);
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    InputGraph::new(n, edges).unwrap()
}

fn permuted(g: &InputGraph, rng: &mut ChaCha8Rng) -> InputGraph {
    let mut perm: Vec<usize> = (0..g.n_nodes()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// A random graph with the same node and edge counts as `g`.
fn same_size(g: &InputGraph, rng: &mut ChaCha8Rng) -> InputGraph {
    let n = g.n_nodes();
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    all.shuffle(rng);
    all.truncate(g.edges().len());
    InputGraph::new(n, all).unwrap()
}

fn graph(n: usize, edges: &[(usize, usize)]) -> InputGraph {
    InputGraph::new(n, edges.to_vec()).unwrap()
}

/// Named polytopes with at most 30 vertices plus facets.
fn small_fixtures() -> Vec<(String, IncidenceMatrix)> {
    let mut v: Vec<(String, IncidenceMatrix)> = (1..=4).map(|d| (format!("simplex{d}"), simplex(d))).collect();
    for k in 3..=10 {
        v.push((format!("{k}-gon"), polygon(k)));
    }
    v.push(("cube3".into(), cube(3)));
    v.push(("octahedron".into(), cross_polytope(3)));
    for k in 3..=9 {
        v.push((format!("prism{k}"), prism(&polygon(k))));
    }
    for k in [4, 5, 6] {
        v.push((format!("pyramid{k}"), pyramid(&polygon(k))));
    }
    v.push(("truncated-cube-corner".into(), truncate_vertex(&cube(3), 0).unwrap()));
    for (name, g) in [
        ("lambda(3,empty)", graph(3, &[])),
        ("lambda(3,edge)", graph(3, &[(0, 1)])),
        ("lambda(3,K3)", graph(3, &[(0, 1), (1, 2), (0, 2)])),
        ("lambda(4,empty)", graph(4, &[])),
        ("lambda(4,edge)", graph(4, &[(2, 3)])),
    ] {
        let p = lambda_incidence(&g).unwrap();
        v.push((format!("{name}*"), p.dual()));
        v.push((name.into(), p));
    }
    v.retain(|(_, p)| p.n_vertices() + p.n_facets() <= 30);
    v
}

fn ac1() -> Outcome {
    let start = Instant::now();
    for (edges, ell) in [(vec![], 6), (vec![(0, 1)], 8), (vec![(0, 1), (0, 2), (1, 2)], 12)] {
        let p = lambda_incidence(&graph(3, &edges)).unwrap();
        check(isomorphic(&p, &polygon(ell)).unwrap().is_some(), || {
            format!("Λ of 3-node graph with {} edges is not a {ell}-gon", edges.len())
        })?;
    }
    within(Duration::from_secs(1), start, "hexagon, octagon, 12-gon".into())
}

fn ac2(ledger: &Ledger) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut pairs, mut positives) = (0, 0);
    for k in 0..220 {
        let n = 3 + k % 5;
        let g = random_graph(n, &mut rng);
        let h = if k % 2 == 0 { permuted(&g, &mut rng) } else { random_graph(n, &mut rng) };
        let truth = oracle_graph_iso(&g, &h, 10).unwrap().is_some();
        let (lg, lh) = (lambda_incidence(&g).unwrap(), lambda_incidence(&h).unwrap());
        let (sg, sh) = (stacked_dual(&g).unwrap(), stacked_dual(&h).unwrap());
        let flag = isomorphic(&lg, &lh).unwrap();
        let flag_dual = isomorphic(&sg, &sh).unwrap();
        let simple = simple_isomorphism(&lg, &lh).unwrap();
        let decisions = [
            ledger.iso(&lg, &lh, &flag),
            ledger.iso(&sg, &sh, &flag_dual),
            ledger.iso(&lg, &lh, &simple),
        ];
        check(decisions.iter().all(|&d| d == truth), || {
            format!("disagreement on {g:?} vs {h:?}: oracle {truth}, [flag, flag dual, simple] {decisions:?}")
        })?;
        pairs += 1;
        positives += usize::from(truth);
    }
    within(
        Duration::from_secs(300),
        start,
        format!("{pairs} pairs on 3-7 nodes agree ({positives} isomorphic)"),
    )
}

fn ac3(ledger: &Ledger) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut fixtures = small_fixtures();
    let copies: Vec<_> = fixtures
        .iter()
        .map(|(name, p)| (format!("{name}'"), shuffled(p, &mut rng)))
        .collect();
    fixtures.extend(copies);
    let mut positives = 0;
    for (na, p) in &fixtures {
        for (nb, q) in &fixtures {
            let flag = isomorphic(p, q).unwrap();
            let oracle = oracle_incidence_iso(p, q, 30).unwrap();
            let (f, o) = (ledger.iso(p, q, &flag), ledger.iso(p, q, &oracle));
            check(f == o, || format!("{na} vs {nb}: flag {f}, oracle {o}"))?;
            positives += usize::from(f);
        }
    }
    let n = fixtures.len();
    within(
        Duration::from_secs(300),
        start,
        format!("{n} fixtures, {} ordered pairs agree ({positives} isomorphic)", n * n),
    )
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let mut fixtures = small_fixtures();
    fixtures.push(("cube4".into(), cube(4)));
    fixtures.push(("cross4".into(), cross_polytope(4)));
    fixtures.push(("lambda(5,path)".into(), lambda_incidence(&graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap()));
    let mut simple_count = 0;
    for (name, p) in &fixtures {
        let l = FaceLattice::build(p).unwrap();
        let d = l.dimension();
        let fg = FlagGraph::build(&l).unwrap();
        for c in 0..fg.len() {
            let flag = fg.flags().get(c);
            for i in 0..d {
                let x = fg.neighbor(c, i);
                let other = fg.flags().get(x);
                let differs: Vec<usize> = (0..d).filter(|&r| flag[r] != other[r]).collect();
                check(differs == [i] && fg.neighbor(x, i) == c, || {
                    format!("{name}: label {i} at flag {c} is not an involution changing rank {i}")
                })?;
            }
        }
        let ld = FaceLattice::build(&p.dual()).unwrap();
        let mut f = l.f_vector();
        f.reverse();
        check(ld.f_vector() == f, || format!("{name}: dual f-vector is not reversed"))?;
        check(ld.flag_count() == l.flag_count(), || format!("{name}: flag counts of P and P* differ"))?;
        if is_simple_polytope(p, d) {
            simple_count += 1;
            let b = EdgeBijections::compute(p).unwrap();
            for (v, w) in b.graph().edges() {
                for (u, img) in b.map(v, w).unwrap() {
                    check(b.psi(w, v, img) == Some(u), || {
                        format!("{name}: Ψ_(w,v)∘Ψ_(v,w) moves {u} on edge ({v},{w})")
                    })?;
                }
            }
        }
    }
    within(
        Duration::from_secs(120),
        start,
        format!("{} fixtures ({simple_count} simple)", fixtures.len()),
    )
}

fn ac5(ledger: &Ledger) -> Outcome {
    let (checked, failed) = (ledger.checked.get(), ledger.failed.get());
    if failed == 0 && checked > 0 {
        Ok(format!("{checked} certificates re-verified, 0 failures"))
    } else {
        Err(format!("{failed} of {checked} certificates failed to re-verify"))
    }
}

/// Incidences read off the tight inequalities.
fn tight_incidences(g: &InputGraph) -> (PointSet, IncidenceMatrix) {
    let (points, h) = lambda_coordinates(g, &LambdaConfig::default()).unwrap();
    let rows = h.tight_pattern(&points).unwrap();
    let p = IncidenceMatrix::new(points.len(), rows).unwrap();
    (points, p)
}

fn ac6(ledger: &Ledger) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut iso_pairs, mut non_iso_pairs) = (0, 0);
    while iso_pairs < 20 || non_iso_pairs < 20 {
        let n = 4 + (iso_pairs + non_iso_pairs) % 2;
        let g = random_graph(n, &mut rng);
        let want_iso = iso_pairs < 20 && (non_iso_pairs >= 20 || rng.gen_bool(0.5));
        let h = if want_iso { permuted(&g, &mut rng) } else { same_size(&g, &mut rng) };
        let truth = oracle_graph_iso(&g, &h, 10).unwrap().is_some();
        if truth != want_iso {
            continue;
        }
        let (vg, pg) = tight_incidences(&g);
        let (vh, ph) = tight_incidences(&h);
        let cong = ledger.affine(&vg, &vh, &congruent(&vg, &vh).unwrap(), true);
        let aff = ledger.affine(&vg, &vh, &affine_iso(&vg, &vh).unwrap(), false);
        let comb = ledger.iso(&pg, &ph, &isomorphic(&pg, &ph).unwrap());
        check(cong == truth && aff == truth && comb == truth, || {
            format!("{g:?} vs {h:?}: graphs {truth}, congruent {cong}, affine {aff}, combinatorial {comb}")
        })?;
        if truth {
            iso_pairs += 1;
        } else {
            non_iso_pairs += 1;
            check(vg.len() == vh.len(), || format!("{g:?} vs {h:?}: sizes differ"))?;
        }
    }
    within(
        Duration::from_secs(600),
        start,
        format!("{iso_pairs} isomorphic and {non_iso_pairs} non-isomorphic equal-size pairs"),
    )
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances: Vec<InputGraph> = Vec::new();
    for n in 3..=7 {
        instances.push(graph(n, &[]));
        let complete: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        instances.push(graph(n, &complete));
        for _ in 0..6 {
            instances.push(random_graph(n, &mut rng));
        }
    }
    for g in &instances {
        let n = g.n_nodes();
        let (points, h) = lambda_coordinates(g, &LambdaConfig::default()).unwrap();
        let pattern = h.tight_pattern(&points).unwrap();
        let p = lambda_incidence(g).unwrap();
        check(pattern.iter().map(Vec::as_slice).eq(p.facets()), || {
            format!("{g:?}: tight pattern differs from the incidences")
        })?;
        let mut tight = vec![0usize; points.len()];
        for &v in pattern.iter().flatten() {
            tight[v] += 1;
        }
        check(tight.iter().all(|&t| t == n - 1), || format!("{g:?}: a vertex is not on exactly n-1 facets"))?;
    }
    within(Duration::from_secs(120), start, format!("{} instances on 3-7 nodes", instances.len()))
}

fn ac8(ledger: &Ledger) -> Outcome {
    let start = Instant::now();
    for (name, p, expected) in [
        ("tetrahedron", simplex(3), true),
        ("square pyramid", pyramid(&polygon(4)), true),
        ("3-cube", cube(3), false),
        ("octahedron", cross_polytope(3), false),
    ] {
        let found = ledger.iso(&p, &p.dual(), &self_dual(&p).unwrap());
        check(found == expected, || format!("{name}: self-dual {found}, expected {expected}"))?;
    }
    within(Duration::from_secs(1), start, "tetrahedron, square pyramid yes; cube, octahedron no".into())
}

/// Fastest of several timed batches.
fn time_pair(p: &IncidenceMatrix, q: &IncidenceMatrix, expect: bool, ledger: &Ledger) -> Result<Duration, String> {
    let found = simple_isomorphism(p, q).unwrap();
    check(ledger.iso(p, q, &found) == expect, || "wrong decision".into())?;
    let mut reps = 1u32;
    loop {
        let t = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(simple_isomorphism(p, q).unwrap());
        }
        if t.elapsed() >= Duration::from_millis(50) {
            break;
        }
        reps *= 2;
    }
    let best = (0..5)
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                std::hint::black_box(simple_isomorphism(p, q).unwrap());
            }
            t.elapsed() / reps
        })
        .min()
        .unwrap();
    Ok(best)
}

fn ac9(ledger: &Ledger) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut times = Vec::new();
    for k in [10, 20, 40] {
        let p = prism(&polygon(k));
        // Same n, m and d, not isomorphic.
        let other = truncate_vertex(&prism(&polygon(k - 1)), 0).unwrap();
        let positive = time_pair(&p, &shuffled(&p, &mut rng), true, ledger)?;
        let negative = time_pair(&p, &shuffled(&other, &mut rng), false, ledger)?;
        times.push((k, positive + negative));
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1].1.as_secs_f64() / w[0].1.as_secs_f64()).collect();
    let detail = format!(
        "k=10,20,40 took {:?}; doubling ratios {:.2?} (limit 16)",
        times.iter().map(|t| t.1).collect::<Vec<_>>(),
        ratios
    );
    check(ratios.iter().all(|&r| r <= 16.0), || detail.clone())?;
    within(Duration::from_secs(60), start, detail)
}

#[test]
fn acceptance_criteria() {
    let ledger = Ledger::default();
    let results: Vec<(&str, &str, Outcome)> = vec![
        ("AC1", "Λ sizes for 3-node graphs", ac1()),
        ("AC2", "graph isomorphism ⇔ Λ isomorphism", ac2(&ledger)),
        ("AC3", "flag algorithm agrees with oracle", ac3(&ledger)),
        ("AC4", "structural invariants", ac4()),
        ("AC6", "congruence chain on Λ coordinates", ac6(&ledger)),
        ("AC7", "coordinates reproduce incidences", ac7()),
        ("AC8", "self-duality", ac8(&ledger)),
        ("AC9", "simple algorithm scaling", ac9(&ledger)),
    ];
    let ac5 = ("AC5", "certificates re-verify", ac5(&ledger));
    let mut all: Vec<_> = results.into_iter().chain(std::iter::once(ac5)).collect();
    all.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (id, title, outcome) in &all {
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {detail}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
