#![allow(dead_code)]

use convex_braids::convex::{ConvexDisc, PunctureSet};
use convex_braids::presentations::twist_generators;
use convex_braids::words::{reduce, Generator, Letter, Word};
use proptest::prelude::*;

pub fn disc(n: usize) -> ConvexDisc {
    ConvexDisc::new(n).unwrap()
}

pub fn set(n: usize, xs: &[usize]) -> PunctureSet {
    disc(n).set(xs).unwrap()
}

/// Every rotation, swing and twist generator on `n` punctures.
pub fn all_generators(n: usize) -> Vec<Generator> {
    let d = disc(n);
    let mut out = Vec::new();
    for b in d.nonempty_subsets() {
        if b.len() >= 2 {
            out.push(Generator::rotation(b).unwrap());
        }
        out.push(Generator::swing(b).unwrap());
    }
    out.extend(twist_generators(d));
    out
}

pub fn word_strategy(gens: Vec<Generator>, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens.len(), any::<bool>()), 0..=max_len).prop_map(move |v| {
        reduce(v.into_iter().map(|(k, inv)| Letter {
            gen: gens[k],
            inverse: inv,
        }))
    })
}
