//! Parameter grids shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twheis::heisenberg::{lambda_norm, make_restricted_twisted, RestrictedTwisted};
use twheis::{Fe, Field};

pub const PRIMES: [u32; 3] = [3, 5, 7];
pub const DEGREES: [usize; 2] = [1, 2];
pub const MS: [usize; 3] = [1, 2, 3];
/// λ-vectors requested per (p, k, m); fewer exist for some small cases.
pub const LAMBDAS_PER_CELL: usize = 5;
pub const SEED: u64 = 0x7791_2024;

#[derive(Clone, Debug)]
pub struct Config {
    pub field: Field,
    pub m: usize,
    pub lambda: Vec<Fe>,
}

impl Config {
    pub fn label(&self) -> String {
        let lam: Vec<String> = self.lambda.iter().map(|&l| self.field.format(l)).collect();
        format!("GF({}) m={} lambda=({})", self.field.order(), self.m, lam.join(","))
    }
}

pub fn fields() -> Vec<Field> {
    let mut out = Vec::new();
    for p in PRIMES {
        for k in DEGREES {
            out.push(Field::new(p, k, None).unwrap());
        }
    }
    out
}

fn nonzero(f: &Field) -> Vec<Fe> {
    f.elements().filter(|x| !x.is_zero()).collect()
}

/// All `m`-tuples over `pool`, if there are at most `limit` of them.
fn all_tuples(pool: &[Fe], m: usize, limit: usize) -> Option<Vec<Vec<Fe>>> {
    let total = pool.len().checked_pow(m as u32)?;
    if total > limit {
        return None;
    }
    Some(
        (0..total)
            .map(|mut code| {
                (0..m)
                    .map(|_| {
                        let x = pool[code % pool.len()];
                        code /= pool.len();
                        x
                    })
                    .collect()
            })
            .collect(),
    )
}

fn push_unique(out: &mut Vec<Vec<Fe>>, v: Vec<Fe>) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// Pairwise non-coincident entries from `pool` (no λ_i = ±λ_j), if possible.
fn non_coincident(f: &Field, pool: &[Fe], m: usize) -> Option<Vec<Fe>> {
    let mut chosen: Vec<Fe> = Vec::new();
    for &x in pool {
        if chosen.iter().all(|&y| y != x && y != f.neg(x)) {
            chosen.push(x);
            if chosen.len() == m {
                return Some(chosen);
            }
        }
    }
    None
}

/// λ-vectors drawn from `pool` scaled by `scale`: the all-equal vector, an
/// alternating-sign vector, a non-coincident vector where one exists, then
/// seeded random fill. Uses every vector when at most `LAMBDAS_PER_CELL` exist.
fn lambda_cell(f: &Field, m: usize, pool: &[Fe], scale: Fe, rng: &mut ChaCha8Rng) -> Vec<Vec<Fe>> {
    let scaled = |v: Vec<Fe>| -> Vec<Fe> { v.into_iter().map(|x| f.mul(scale, x)).collect() };
    if let Some(all) = all_tuples(pool, m, LAMBDAS_PER_CELL) {
        return all.into_iter().map(scaled).collect();
    }
    let mut out = Vec::new();
    let one = f.one();
    push_unique(&mut out, scaled(vec![one; m]));
    push_unique(
        &mut out,
        scaled((0..m).map(|i| if i % 2 == 0 { one } else { f.neg(one) }).collect()),
    );
    if let Some(v) = non_coincident(f, pool, m) {
        push_unique(&mut out, scaled(v));
    }
    while out.len() < LAMBDAS_PER_CELL {
        let v: Vec<Fe> = (0..m).map(|_| *pool.choose(rng).unwrap()).collect();
        push_unique(&mut out, scaled(v));
    }
    out
}

/// The ordinary grid: every field GF(p^k), m ∈ {1,2,3}, arbitrary nonzero λ.
pub fn ordinary_grid() -> Vec<Config> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for f in fields() {
        let pool = nonzero(&f);
        for m in MS {
            let mut cell = lambda_cell(&f, m, &pool, f.one(), &mut rng);
            if let Some(x) = f.generator() {
                // an entry outside the prime field, usually breaking restrictability
                if m >= 2 {
                    let mut v = vec![f.one(); m];
                    v[m - 1] = x;
                    push_unique(&mut cell, v);
                }
            }
            out.extend(cell.into_iter().map(|lambda| Config {
                field: f.clone(),
                m,
                lambda,
            }));
        }
    }
    out
}

/// The restricted grid: restrictable λ (entries in `c · F_p^×`), each paired
/// with a seeded μ (the first λ of every cell gets μ = 0).
pub fn restricted_grid() -> Vec<RestrictedTwisted> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa5a5);
    let mut out = Vec::new();
    for f in fields() {
        let prime_pool: Vec<Fe> = (1..f.p() as i64).map(|a| f.from_int(a)).collect();
        for m in MS {
            let mut cell = if m == 1 {
                lambda_cell(&f, m, &nonzero(&f), f.one(), &mut rng)
            } else {
                let scale = f.generator().unwrap_or_else(|| f.one());
                lambda_cell(&f, m, &prime_pool, scale, &mut rng)
            };
            if let (Some(x), true) = (f.generator(), m >= 2) {
                push_unique(&mut cell, vec![f.add(x, f.one()); m]);
            }
            for (idx, lambda) in cell.into_iter().enumerate() {
                assert!(lambda_norm(&f, &lambda).is_some());
                let mu: Vec<Fe> = if idx == 0 {
                    vec![f.zero(); 2 * m + 2]
                } else {
                    (0..2 * m + 2).map(|_| f.random(&mut rng)).collect()
                };
                out.push(make_restricted_twisted(&f, m, &lambda, &mu).unwrap());
            }
        }
    }
    out
}

pub fn restricted_label(r: &RestrictedTwisted) -> String {
    let f = r.field();
    let fmt = |v: &[Fe]| v.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(",");
    format!(
        "GF({}) m={} lambda=({}) mu=({})",
        f.order(),
        r.m,
        fmt(&r.lambda),
        fmt(&r.mu)
    )
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED.wrapping_add(salt))
}

pub fn random_element(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    (0..n).map(|_| f.random(rng)).collect()
}
