#![allow(dead_code)]

use confluent_core::poset::Poset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random order on `n` elements: each forward pair `i < j` is related with probability `p`.
pub fn random_poset(n: usize, p: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_relations(&labels, &pairs).unwrap()
}

pub fn standard_example(k: usize) -> Poset {
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..k {
        labels.push(format!("a{i}"));
    }
    for j in 0..k {
        labels.push(format!("b{j}"));
    }
    for i in 0..k {
        for j in 0..k {
            if i != j {
                pairs.push((format!("a{i}"), format!("b{j}")));
            }
        }
    }
    Poset::from_relations(&labels, &pairs).unwrap()
}

pub fn k22() -> Poset {
    Poset::from_relations(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .unwrap()
}
