//! Shared test corpus: checked-in `.uhg` files, generator instances and
//! seeded random hypergraphs, all with m in {2,3,4} and n <= 7.

#![allow(dead_code)]

use std::path::PathBuf;

use hyperee::read_hypergraph;
use hyperee_core::{gen_empty, gen_hyperpath, gen_hyperstar, UniformHypergraph};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn file_instances() -> Vec<(String, UniformHypergraph)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "uhg"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, read_hypergraph(&p).unwrap())
        })
        .collect()
}

pub fn generated_instances() -> Vec<(String, UniformHypergraph)> {
    let mut out = Vec::new();
    for (m, q) in [(2, 3), (2, 6), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)] {
        out.push((format!("hyperstar({m},{q})"), gen_hyperstar(m, q).unwrap()));
    }
    for (m, p) in [(2, 4), (2, 6), (3, 3), (4, 2)] {
        out.push((format!("hyperpath({m},{p})"), gen_hyperpath(m, p).unwrap()));
    }
    for (m, n) in [(2, 4), (3, 3), (3, 5), (4, 6)] {
        out.push((format!("empty({m},{n})"), gen_empty(m, n).unwrap()));
    }
    out
}

/// Uniformly chosen distinct `m`-subsets; edge counts kept small so that
/// every instance stays cheap for the trace series.
pub fn random_instances(count: usize, seed: u64) -> Vec<(String, UniformHypergraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = rng.gen_range(2..=4);
        let n = rng.gen_range(m..=7);
        let max_edges = if m == 2 { 8 } else { 4 };
        let target = rng.gen_range(1..=max_edges);
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for _ in 0..(target * 4) {
            if edges.len() == target {
                break;
            }
            let mut e = sample(&mut rng, n, m).into_vec();
            e.sort_unstable();
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
        let h = UniformHypergraph::new(m, n, edges).unwrap();
        out.push((
            format!("random#{}(m={m},n={n},|E|={})", out.len(), h.edge_count()),
            h,
        ));
    }
    out
}

pub fn corpus() -> Vec<(String, UniformHypergraph)> {
    let mut all = file_instances();
    all.extend(generated_instances());
    all.extend(random_instances(10, 0x5eed));
    all
}
