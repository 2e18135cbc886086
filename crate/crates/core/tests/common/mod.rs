#![allow(dead_code)]

use densest::fixtures::{gen_clique_plus_star, gen_erdos_renyi, gen_lemma5, GeneratedGraph};
use densest::Epsilon;

pub const PROBABILITIES: [f64; 4] = [0.1, 0.2, 0.3, 0.5];
pub const SIZES: [usize; 5] = [6, 9, 12, 15, 18];
pub const SEEDS_PER_PROBABILITY: u64 = 52;

/// Seeded G(n, p) graphs with n <= 18: 208 graphs.
pub fn small_corpus() -> Vec<GeneratedGraph> {
    let mut out = Vec::new();
    for (pi, &p) in PROBABILITIES.iter().enumerate() {
        for s in 0..SEEDS_PER_PROBABILITY {
            let n = SIZES[(s as usize) % SIZES.len()];
            out.push(gen_erdos_renyi(n, p, 1000 * s + pi as u64));
        }
    }
    out
}

pub fn fixture_graphs() -> Vec<GeneratedGraph> {
    let mut out: Vec<GeneratedGraph> = (1..=6).map(|k| gen_lemma5(k).unwrap()).collect();
    for (q, leaves) in [(5, 100), (2, 10), (4, 0), (6, 30), (10, 3), (3, 1)] {
        out.push(gen_clique_plus_star(q, leaves).unwrap());
    }
    out
}

pub fn eps(s: &str) -> Epsilon {
    s.parse().unwrap()
}

pub fn eps_all() -> Vec<Epsilon> {
    ["0", "1/10", "1/2", "1"].iter().map(|s| eps(s)).collect()
}

pub fn eps_positive() -> Vec<Epsilon> {
    ["1/10", "1/2", "1"].iter().map(|s| eps(s)).collect()
}
