//! Seeded generators for randomized campaigns.

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AbGroup, AbHom};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A group in invariant-factor form with order at most `order_cap` and every
/// factor at most `max_factor`.
pub fn random_group<R: Rng>(rng: &mut R, order_cap: u64, max_factor: u64) -> AbGroup {
    let rank = rng.gen_range(1..=3);
    let mut factors: Vec<u64> = Vec::new();
    for _ in 0..rank {
        let order: u64 = factors.iter().product();
        let options: Vec<u64> = match factors.last() {
            None => (2..=max_factor).filter(|&d| d <= order_cap).collect(),
            Some(&prev) => (1..)
                .map(|m| prev * m)
                .take_while(|&d| d <= max_factor)
                .filter(|&d| order * d <= order_cap)
                .collect(),
        };
        if options.is_empty() {
            break;
        }
        factors.push(options[rng.gen_range(0..options.len())]);
    }
    AbGroup::new(factors).expect("generated chain is valid")
}

/// A uniformly random homomorphism `g → h`.
pub fn random_hom<R: Rng>(rng: &mut R, g: &AbGroup, h: &AbGroup) -> AbHom {
    let matrix = h
        .factors()
        .iter()
        .map(|&e| {
            g.factors()
                .iter()
                .map(|&d| {
                    // Images of an order-d generator in ℤ/e are the multiples of e/gcd(d, e).
                    let g = d.gcd(&e);
                    (rng.gen_range(0..g) * (e / g)) as i64
                })
                .collect()
        })
        .collect();
    AbHom::new(g.clone(), h.clone(), matrix).expect("generated hom is well defined")
}

/// A random surjection, realized as the projection onto a random cokernel.
pub fn random_quotient<R: Rng>(rng: &mut R, g: &AbGroup, order_cap: u64, max_factor: u64) -> AbHom {
    let k = random_group(rng, order_cap, max_factor);
    let incl = super::kernel_with_inclusion(&random_hom(rng, g, &k)).1;
    super::cokernel_with_projection(&incl).1
}
