#![allow(dead_code)]

use liouville::{Rat, RootConfig};
use proptest::prelude::*;
use rand::Rng;

/// Nonzero rational with numerator and denominator bounded by `bound` in absolute value.
pub fn random_nonzero_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n != 0 {
            return Rat::ratio(n, d);
        }
    }
}

/// `count` pairwise distinct nonzero rationals.
pub fn random_distinct<R: Rng>(rng: &mut R, count: usize, bound: i64) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    while out.len() < count {
        let r = random_nonzero_rat(rng, bound);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

pub fn random_config<R: Rng>(rng: &mut R, max_q: usize, bound: i64) -> RootConfig {
    let q = rng.gen_range(1..=max_q);
    RootConfig::new(random_distinct(rng, q, bound)).expect("distinct nonzero roots")
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rat::ratio(n, d))
}

pub fn nonzero_small_rat() -> impl Strategy<Value = Rat> {
    (1i64..=20, 1i64..=12, any::<bool>()).prop_map(|(n, d, neg)| Rat::ratio(if neg { -n } else { n }, d))
}

pub fn distinct_rats(max_len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(nonzero_small_rat(), 1..=max_len).prop_map(|mut v| {
        let mut seen = Vec::new();
        v.retain(|r| {
            if seen.contains(r) {
                false
            } else {
                seen.push(r.clone());
                true
            }
        });
        v
    })
}

pub fn root_config(max_q: usize) -> impl Strategy<Value = RootConfig> {
    distinct_rats(max_q).prop_map(|v| RootConfig::new(v).unwrap())
}
