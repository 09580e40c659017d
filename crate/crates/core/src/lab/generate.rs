//! Ring generators for the fuzzer: systematic structural families and
//! seeded random tables.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fuzz::Family;
use crate::ring::{build_from_tables, build_modular, build_product, ElementId, Limits, RingSpec, StarRing, TableSpec};

/// Largest order the random-table family samples.
pub const RANDOM_TABLE_MAX_ORDER: usize = 8;

const MAX_ATTEMPTS: usize = 64;

/// Structural rings of order at most `max_order`, family by family, each
/// family in descending order.
pub fn structural_specs(max_order: usize, families: &[Family]) -> Vec<RingSpec> {
    let mut out = Vec::new();
    for family in families {
        match family {
            Family::Modular => out.extend((1..=max_order as u64).rev().map(RingSpec::modular)),
            Family::Product => {
                let mut factors = Vec::new();
                product_factors(max_order, 2, &mut Vec::new(), &mut factors);
                factors.sort_by(|a, b| {
                    let pa: usize = a.iter().product();
                    let pb: usize = b.iter().product();
                    pb.cmp(&pa).then_with(|| a.cmp(b))
                });
                out.extend(
                    factors
                        .into_iter()
                        .map(|f| RingSpec::product(f.into_iter().map(|n| RingSpec::modular(n as u64)))),
                );
            }
            Family::Matrix => {
                let mut found = Vec::new();
                for k in 2usize.. {
                    if 2usize.pow((k * k) as u32) > max_order {
                        break;
                    }
                    let mut n = 2usize;
                    while (n as u128).pow((k * k) as u32) <= max_order as u128 {
                        found.push(((n as u128).pow((k * k) as u32), n, k));
                        n += 1;
                    }
                }
                found.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
                out.extend(found.into_iter().map(|(_, n, k)| RingSpec::matrix(RingSpec::modular(n as u64), k)));
            }
            Family::RandomTable => {}
        }
    }
    out
}

// Non-decreasing factor lists of length 2 or 3, entries >= 2.
fn product_factors(max: usize, min_factor: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() >= 2 {
        out.push(cur.clone());
    }
    if cur.len() == 3 {
        return;
    }
    let prod: usize = cur.iter().product();
    let mut f = min_factor;
    while prod * f <= max {
        cur.push(f);
        product_factors(max, f, cur, out);
        cur.pop();
        f += 1;
    }
}

/// A validated random table: a small known ring, relabelled, with either
/// its own involution or a random candidate involution.
#[derive(Clone, Debug)]
pub struct RandomTable {
    pub spec: TableSpec,
    /// Label of the ring the table was derived from.
    pub source: String,
    /// Candidates discarded by validation before this one was accepted.
    pub rejected: usize,
}

/// The `index`-th random table for `seed`; independent of any other draw.
pub fn random_table_ring(seed: u64, index: u64, max_order: usize) -> Option<RandomTable> {
    let cap = max_order.min(RANDOM_TABLE_MAX_ORDER);
    let pool: Vec<&StarRing> = pool().iter().filter(|r| r.order() <= cap).collect();
    if pool.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let base = pool[rng.gen_range(0..pool.len())];
    let n = base.order();

    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm[1..].shuffle(&mut rng);
    let relabel = |x: ElementId| perm[x.index()];
    let mut add = vec![vec![0u32; n]; n];
    let mut mul = vec![vec![0u32; n]; n];
    let mut native_star = vec![0u32; n];
    for a in base.elements() {
        native_star[relabel(a) as usize] = relabel(base.star(a));
        for b in base.elements() {
            add[relabel(a) as usize][relabel(b) as usize] = relabel(base.add(a, b));
            mul[relabel(a) as usize][relabel(b) as usize] = relabel(base.mul(a, b));
        }
    }
    let one = relabel(base.one());
    let limits = Limits::default();
    let mut rejected = 0;
    for _ in 0..MAX_ATTEMPTS {
        let star = if rng.gen_bool(0.5) { native_star.clone() } else { random_involution(n, &mut rng) };
        let spec = TableSpec { order: n, add: add.clone(), mul: mul.clone(), star, zero: 0, one };
        if build_from_tables(&spec, &limits).is_ok() {
            return Some(RandomTable { spec, source: base.label().to_string(), rejected });
        }
        rejected += 1;
    }
    let spec = TableSpec { order: n, add, mul, star: native_star, zero: 0, one };
    Some(RandomTable { spec, source: base.label().to_string(), rejected })
}

// Involutive permutation fixing 0, with a random number of transpositions.
fn random_involution(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut star: Vec<u32> = (0..n as u32).collect();
    let mut rest: Vec<u32> = (1..n as u32).collect();
    rest.shuffle(rng);
    let swaps = rng.gen_range(0..=rest.len() / 2);
    for pair in rest.chunks_exact(2).take(swaps) {
        star[pair[0] as usize] = pair[1];
        star[pair[1] as usize] = pair[0];
    }
    star
}

fn pool() -> &'static [StarRing] {
    static POOL: OnceLock<Vec<StarRing>> = OnceLock::new();
    POOL.get_or_init(|| {
        let lim = Limits::default();
        let z = |n| build_modular(n, &lim).expect("small modular ring");
        let mut rings: Vec<StarRing> = (1..=8).map(z).collect();
        for parts in [vec![2, 2], vec![2, 3], vec![2, 4], vec![2, 2, 2]] {
            let parts: Vec<StarRing> = parts.into_iter().map(z).collect();
            rings.push(build_product(&parts, &lim).expect("small product"));
        }
        // Z_2[x]/(f) for every monic f of degree 2 and 3.
        for deg in 2..=3u32 {
            for low in 0..(1u32 << deg) {
                rings.push(binary_quotient(deg, low));
            }
        }
        rings.push(upper_triangular_z2());
        rings
    })
}

// Z_2[x]/(x^deg + low), elements as bit vectors of coefficients.
fn binary_quotient(deg: u32, low: u32) -> StarRing {
    let n = 1usize << deg;
    let mul = move |a: usize, b: usize| {
        let mut prod = 0usize;
        for i in 0..deg {
            if b >> i & 1 == 1 {
                prod ^= a << i;
            }
        }
        for i in (deg..2 * deg).rev() {
            if prod >> i & 1 == 1 {
                prod ^= (1 << i) | ((low as usize) << (i - deg));
            }
        }
        prod
    };
    StarRing::tabulate(format!("Z_2[x]/(deg {deg}, low {low:#b})"), n, 1, |a, b| a ^ b, mul, |a| a, None)
        .expect("polynomial quotient is a commutative ring")
}

// Upper triangular 2x2 over Z_2: (a, b, c) = [[a, b], [0, c]] as a + 2b + 4c,
// with the involution swapping the diagonal entries.
fn upper_triangular_z2() -> StarRing {
    let split = |x: usize| (x & 1, x >> 1 & 1, x >> 2 & 1);
    let pack = |a: usize, b: usize, c: usize| a | b << 1 | c << 2;
    StarRing::tabulate(
        "T_2(Z_2)",
        8,
        pack(1, 0, 1) as u32,
        |x, y| x ^ y,
        move |x, y| {
            let ((a, b, c), (d, e, f)) = (split(x), split(y));
            pack(a & d, (a & e) ^ (b & f), c & f)
        },
        move |x| {
            let (a, b, c) = split(x);
            pack(c, b, a)
        },
        None,
    )
    .expect("triangular ring with diagonal flip")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_descends() {
        let s = structural_specs(4, &[Family::Modular]);
        assert_eq!(s[0], RingSpec::modular(4));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn products_and_matrices() {
        let s = structural_specs(16, &[Family::Product]);
        assert_eq!(s[0], RingSpec::product([2, 2, 4].map(RingSpec::modular)));
        assert!(s.contains(&RingSpec::product([2, 8].map(RingSpec::modular))));
        assert!(s.iter().all(|p| p.predicted_order().unwrap() <= 16));
        let m = structural_specs(81, &[Family::Matrix]);
        assert_eq!(m, vec![RingSpec::matrix(RingSpec::modular(3), 2), RingSpec::matrix(RingSpec::modular(2), 2)]);
    }

    #[test]
    fn pool_is_valid() {
        assert!(pool().len() > 20);
        assert!(pool().iter().all(|r| r.order() <= RANDOM_TABLE_MAX_ORDER));
    }

    #[test]
    fn random_tables_are_valid_and_reproducible() {
        for i in 0..50 {
            let t = random_table_ring(7, i, 8).unwrap();
            assert!(build_from_tables(&t.spec, &Limits::default()).is_ok());
            let again = random_table_ring(7, i, 8).unwrap();
            assert_eq!(t.spec, again.spec);
        }
        assert!(random_table_ring(1, 0, 3).unwrap().spec.order <= 3);
    }
}
