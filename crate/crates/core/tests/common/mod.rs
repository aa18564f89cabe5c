#![allow(dead_code)]

pub mod instances;
pub mod oracle;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smoothlocus::poly::{Coefficient, FieldSpec, Monomial, PolyRing, Polynomial};
use smoothlocus::smoothness::Presentation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn qq(n: usize) -> PolyRing {
    PolyRing::new(FieldSpec::Rationals, n)
}

pub fn q(a: i64, b: i64) -> Coefficient {
    FieldSpec::Rationals
        .from_fraction(&a.into(), &b.into())
        .unwrap()
}

pub fn pres(field: FieldSpec, vars: &[&str], rels: Vec<Polynomial>) -> Presentation {
    Presentation::new(field, names(vars), rels).unwrap()
}

/// Up to `terms` random terms of degree ≤ `deg`, coefficients in [-3, 3].
pub fn random_poly(rng: &mut ChaCha8Rng, ring: PolyRing, deg: u32, terms: usize) -> Polynomial {
    let n = ring.nvars;
    let mut out = ring.zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut exps = vec![0u32; n];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            if n > 0 {
                exps[rng.gen_range(0..n)] += 1;
            }
        }
        let c = ring.field.from_i64(rng.gen_range(-3..=3));
        out = &out + &ring.monomial(Monomial(exps), c);
    }
    out
}

pub fn random_coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> Coefficient {
    match field {
        FieldSpec::Rationals => q(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        FieldSpec::PrimeField(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank by plain Gaussian elimination, kept separate from the library's.
pub fn naive_rank(rows: &[Vec<Coefficient>]) -> usize {
    let mut m: Vec<Vec<Coefficient>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &m[rank][c].inv().unwrap();
            for j in c..ncols {
                let t = &f * &m[rank][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        rank += 1;
    }
    rank
}

/// A named family of presentations with a rational parametrization of
/// some of its points.
pub struct Family {
    pub label: &'static str,
    pub pres: Presentation,
    pub point: fn(i64) -> Vec<Coefficient>,
}

pub fn circle(field: FieldSpec) -> Presentation {
    let r = PolyRing::new(field, 2);
    pres(
        field,
        &["x", "y"],
        vec![&(&r.var(0).pow(2) + &r.var(1).pow(2)) - &r.one()],
    )
}

pub fn cusp() -> Presentation {
    let r = qq(2);
    pres(
        r.field,
        &["x", "y"],
        vec![&r.var(1).pow(2) - &r.var(0).pow(3)],
    )
}

pub fn node() -> Presentation {
    let r = qq(2);
    pres(r.field, &["x", "y"], vec![&r.var(0) * &r.var(1)])
}

pub fn families() -> Vec<Family> {
    let r3 = qq(3);
    let (x, y, z) = (r3.var(0), r3.var(1), r3.var(2));
    vec![
        Family {
            label: "circle",
            pres: circle(FieldSpec::Rationals),
            // ((1 − t²)/(1 + t²), 2t/(1 + t²))
            point: |t| vec![q(1 - t * t, 1 + t * t), q(2 * t, 1 + t * t)],
        },
        Family {
            label: "cusp",
            pres: cusp(),
            point: |t| vec![q(t * t, 1), q(t * t * t, 1)],
        },
        Family {
            label: "node",
            pres: node(),
            point: |t| {
                if t % 2 == 0 {
                    vec![q(t, 1), q(0, 1)]
                } else {
                    vec![q(0, 1), q(t, 1)]
                }
            },
        },
        Family {
            label: "twisted cubic",
            pres: pres(
                r3.field,
                &["x", "y", "z"],
                vec![&y - &x.pow(2), &z - &x.pow(3)],
            ),
            point: |t| vec![q(t, 1), q(t * t, 1), q(t * t * t, 1)],
        },
        Family {
            label: "cone",
            pres: pres(
                r3.field,
                &["x", "y", "z"],
                vec![&(&x.pow(2) + &y.pow(2)) - &z.pow(2)],
            ),
            point: |t| vec![q(t * t - 1, 1), q(2 * t, 1), q(t * t + 1, 1)],
        },
        Family {
            label: "line pair in space",
            pres: pres(r3.field, &["x", "y", "z"], vec![&x * &y, z.clone()]),
            point: |t| {
                if t % 2 == 0 {
                    vec![q(t, 1), q(0, 1), q(0, 1)]
                } else {
                    vec![q(0, 1), q(t, 1), q(0, 1)]
                }
            },
        },
    ]
}
