use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strip_ph::complex::{FilteredComplex, Level, Simplex};

pub const MAX_SIMPLICES: usize = 12;

/// A random valid filtration on 1–5 vertices with at most 12 simplices of
/// dimension at most 2. Ties in level are broken by dimension, then randomly.
pub fn random_complex(seed: u64) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=5usize);
    let mut entries: Vec<(Level, usize, u64, Simplex)> = Vec::new();
    let mut level_of = std::collections::HashMap::new();
    for v in 1..=k {
        let l = rng.gen_range(1..=4);
        level_of.insert(vec![v], l);
        entries.push((l, 0, rng.gen(), Simplex::vertex(v)));
    }
    let mut edges = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            if entries.len() < MAX_SIMPLICES && rng.gen_bool(0.6) {
                let l = rng.gen_range(1..=6).max(level_of[&vec![a]]).max(level_of[&vec![b]]);
                level_of.insert(vec![a, b], l);
                edges.push((a, b));
                entries.push((l, 1, rng.gen(), Simplex::new(vec![a, b]).unwrap()));
            }
        }
    }
    for &(a, b) in &edges {
        for c in b + 1..=k {
            let faces = [vec![a, b], vec![a, c], vec![b, c]];
            if entries.len() < MAX_SIMPLICES && faces.iter().all(|f| level_of.contains_key(f)) && rng.gen_bool(0.5) {
                let l = faces.iter().map(|f| level_of[f]).max().unwrap().max(rng.gen_range(1..=8));
                entries.push((l, 2, rng.gen(), Simplex::new(vec![a, b, c]).unwrap()));
            }
        }
    }
    entries.sort_by_key(|e| (e.0, e.1, e.2));
    let (simplices, levels) = entries.into_iter().map(|(l, _, _, s)| (s, l)).unzip();
    let complex = FilteredComplex::new(simplices, levels).unwrap();
    assert!(complex.validate().is_ok(), "generator produced an invalid filtration");
    complex
}
