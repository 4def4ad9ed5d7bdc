#![allow(dead_code)]

use std::ops::ControlFlow;

use matroid_enum::applications::{build_cvc_instance, PhiTarget};
use matroid_enum::brute::{brute_common_independent, Mode};
use matroid_enum::exchange::build_exchange_digraph;
use matroid_enum::matching::TractablePair;
use matroid_enum::{Graph, Matroid, ElementSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_linear(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    let rows = rng.gen_range(1..=4.min(n.max(1)));
    let rows: Vec<String> = (0..rows)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect())
        .collect();
    Matroid::linear_gf2(&rows).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    let blocks = rng.gen_range(1..=3);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
    let caps: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=2)).collect();
    Matroid::partition_by_label(&labels, &caps).unwrap()
}

/// Random multigraph with `m` edges; loops and parallel edges allowed.
pub fn random_multigraph(rng: &mut ChaCha8Rng, vertices: usize, m: usize) -> Graph {
    let edges = (0..m)
        .map(|_| [rng.gen_range(0..vertices), rng.gen_range(0..vertices)])
        .collect();
    Graph::new(vertices, edges).unwrap()
}

pub fn random_graphic(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    let vertices = rng.gen_range(2..=5);
    Matroid::graphic(random_multigraph(rng, vertices, n)).unwrap()
}

pub fn random_uniform(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    Matroid::uniform(n, rng.gen_range(0..=n))
}

pub fn random_any(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
    match rng.gen_range(0..5) {
        0 => random_linear(rng, n),
        1 => random_partition(rng, n),
        2 => random_graphic(rng, n),
        3 => random_uniform(rng, n),
        _ => {
            let vertices = rng.gen_range(2..=4);
            Matroid::cographic(random_multigraph(rng, vertices, n)).unwrap()
        }
    }
}

/// The three families of the equivalence suite, cycling by index.
pub fn family_pair(rng: &mut ChaCha8Rng, index: usize) -> (Matroid, Matroid) {
    match index % 3 {
        0 => {
            let n = rng.gen_range(1..=8);
            (random_linear(rng, n), random_linear(rng, n))
        }
        1 => {
            let n = rng.gen_range(1..=10);
            (random_partition(rng, n), random_graphic(rng, n))
        }
        _ => {
            let n = rng.gen_range(1..=9);
            (random_uniform(rng, n), random_uniform(rng, n))
        }
    }
}

/// Random simple graph on `vertices` vertices with edge probability `p`.
pub fn random_simple_graph(rng: &mut ChaCha8Rng, vertices: usize, p: f64) -> Vec<[usize; 2]> {
    let mut edges = Vec::new();
    for u in 0..vertices {
        for v in u + 1..vertices {
            if rng.gen_bool(p) {
                edges.push([u, v]);
            }
        }
    }
    edges.shuffle(rng);
    edges
}

/// Random connected graph with maximum degree 3 on `vertices` vertices.
pub fn random_subcubic(rng: &mut ChaCha8Rng, vertices: usize) -> Graph {
    let mut degree = vec![0usize; vertices];
    let mut edges: Vec<[usize; 2]> = Vec::new();
    // Random spanning tree attaching each vertex to an earlier one with
    // spare degree.
    for v in 1..vertices {
        let options: Vec<usize> = (0..v).filter(|&u| degree[u] < 3).collect();
        let u = *options.choose(rng).expect("a path always has spare degree");
        edges.push([u, v]);
        degree[u] += 1;
        degree[v] += 1;
    }
    let extra = rng.gen_range(0..=vertices);
    for _ in 0..extra {
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        let (a, b) = (u.min(v), u.max(v));
        if a != b && degree[a] < 3 && degree[b] < 3 && !edges.contains(&[a, b]) && !edges.contains(&[b, a]) {
            edges.push([a, b]);
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    Graph::new(vertices, edges).unwrap()
}

pub fn collect(run: impl FnOnce(&mut dyn FnMut(&ElementSet) -> ControlFlow<()>)) -> Vec<ElementSet> {
    let mut out = Vec::new();
    run(&mut |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

pub fn sorted(mut v: Vec<ElementSet>) -> Vec<ElementSet> {
    v.sort();
    v
}

pub fn has_duplicates(v: &[ElementSet]) -> bool {
    let mut s = v.to_vec();
    s.sort();
    s.windows(2).any(|w| w[0] == w[1])
}

pub fn describe(p: &TractablePair) -> String {
    format!("{p:?}")
}

/// Checks, for every maximal common independent set `I`, `e ∈ I` and the
/// neighbourhoods of `e` in `D(I)`:
/// two out-neighbours replacing `e` are dependent in `m1`, two
/// in-neighbours replacing `e` are dependent in `m2`, and swapping `e`
/// for any other non-member breaks one of the matroids. Returns one line
/// per violation.
pub fn exchange_property_violations(m1: &Matroid, m2: &Matroid) -> Vec<String> {
    let mut violations = Vec::new();
    let ground = m1.ground().clone();
    for i in brute_common_independent(m1, m2, Mode::Maximal, 0).unwrap() {
        let d = build_exchange_digraph(m1, m2, &i).unwrap();
        for e in &i {
            let (outs, ins) = (d.out_elements(e), d.in_elements(e));
            let pairs = |set: &ElementSet| {
                let v = set.to_vec();
                let mut out = Vec::new();
                for (k, &a) in v.iter().enumerate() {
                    for &b in &v[k + 1..] {
                        out.push(i.without(e).with(a).with(b));
                    }
                }
                out
            };
            for x in pairs(&outs) {
                if m1.is_independent(&x) {
                    violations.push(format!("minus: I={i} e={e} {x} independent in M1"));
                }
            }
            for x in pairs(&ins) {
                if m2.is_independent(&x) {
                    violations.push(format!("plus: I={i} e={e} {x} independent in M2"));
                }
            }
            for f in ground.difference(&i.union(&outs).union(&ins)).iter() {
                let x = i.without(e).with(f);
                if m1.is_independent(&x) && m2.is_independent(&x) {
                    violations.push(format!("non: I={i} e={e} f={f} {x} common independent"));
                }
            }
        }
    }
    violations
}

/// Exhaustive check of the matching/non-separating-set correspondence
/// over all edge sets `M` of `H`: a matching maps into `V`, and when
/// `φ(M) ⊆ V`, `M` is a matching exactly when `φ(M)` is independent in `g`
/// with a connected complement. Returns one line per violation.
pub fn phi_violations(g: &Graph) -> Vec<String> {
    let inst = build_cvc_instance(g).unwrap();
    let h = inst.pair.edge_count();
    let mut violations = Vec::new();
    for mask in 0u64..1 << h {
        let m = ElementSet::from_mask(mask);
        let (vertices, edges) = inst.phi_set(&m);
        let matching = inst.pair.is_matching(&m);
        if matching && !edges.is_empty() {
            violations.push(format!("matching {m} maps onto edges {edges}"));
        }
        if edges.is_empty() {
            let independent = g.edges.iter().all(|&[a, b]| !(vertices.contains(a) && vertices.contains(b)));
            let rest = ElementSet::full(g.vertices).difference(&vertices);
            let removed: ElementSet = g
                .edges
                .iter()
                .enumerate()
                .filter(|(_, [a, b])| vertices.contains(*a) || vertices.contains(*b))
                .map(|(k, _)| k)
                .collect();
            let connected = rest.is_empty() || g.components_without(&removed) - vertices.len() == 1;
            if matching != (independent && connected) {
                violations.push(format!("M={m}: matching={matching}, independent={independent}, connected={connected}"));
            }
        }
    }
    for k in 0..h {
        let expected = if k < g.vertices { PhiTarget::Vertex(k) } else { PhiTarget::Edge(k - g.vertices) };
        if inst.phi(k) != expected {
            violations.push(format!("phi({k}) = {:?}", inst.phi(k)));
        }
    }
    violations
}
