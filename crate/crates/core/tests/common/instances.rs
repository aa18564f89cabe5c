//! Random square-zero lifting problems on standard-smooth charts.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use smoothlocus::lifting::{
    degree_filtration, lift_chain, make_algebra, AlgebraElement, AlgebraHom, NilpotentAlgebra,
    SquareZeroData,
};
use smoothlocus::poly::{Coefficient, FieldSpec, Monomial};
use smoothlocus::smoothness::{smooth_at_point, standard_smooth_charts, Presentation};

use super::{q, qq, random_poly};

pub struct LiftInstance {
    pub chart: Presentation,
    pub data: SquareZeroData,
    /// A hom into `A/Z`.
    pub hom: AlgebraHom,
    /// Random corrections in `Z` for the free variables.
    pub free: Vec<AlgebraElement>,
}

/// A random hypersurface or curve through a random rational point that is
/// smooth there, with one chart containing the point.
pub fn random_chart_point(r: &mut ChaCha8Rng) -> (Presentation, Vec<Coefficient>) {
    loop {
        let n = r.gen_range(2..=3);
        let c = if n == 3 { r.gen_range(1..=2) } else { 1 };
        let ring = qq(n);
        let pt: Vec<Coefficient> = (0..n)
            .map(|_| q(r.gen_range(-2..=2), r.gen_range(1..=2)))
            .collect();
        let rels = (0..c)
            .map(|_| {
                let g = random_poly(r, ring, 3, 4);
                let v = g.evaluate(&pt).unwrap();
                &g - &ring.constant(v)
            })
            .collect();
        let Ok(base) = Presentation::anonymous(ring, rels) else {
            continue;
        };
        if base.nrelators() != c || !smooth_at_point(&base, &pt).unwrap().smooth {
            continue;
        }
        let charts = standard_smooth_charts(&base).unwrap();
        let hits: Vec<_> = charts
            .into_iter()
            .filter_map(|ch| ch.lift_point(&pt).unwrap().map(|p| (ch, p)))
            .collect();
        if hits.is_empty() {
            continue;
        }
        let (ch, cpt) = hits.into_iter().nth(0).unwrap();
        return (ch.presentation, cpt);
    }
}

pub fn random_algebra(r: &mut ChaCha8Rng) -> NilpotentAlgebra {
    let f = FieldSpec::Rationals;
    match r.gen_range(0..4) {
        0 => make_algebra(f, 1, &[Monomial(vec![r.gen_range(2..=5)])]).unwrap(),
        1 => make_algebra(f, 2, &[Monomial(vec![2, 0]), Monomial(vec![0, 2])]).unwrap(),
        2 => make_algebra(
            f,
            2,
            &[
                Monomial(vec![3, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2]),
            ],
        )
        .unwrap(),
        _ => make_algebra(
            f,
            2,
            &[
                Monomial(vec![3, 0]),
                Monomial(vec![2, 1]),
                Monomial(vec![1, 2]),
                Monomial(vec![0, 3]),
            ],
        )
        .unwrap(),
    }
}

/// A random element of `A` with the given constant term.
pub fn random_element(
    r: &mut ChaCha8Rng,
    alg: &NilpotentAlgebra,
    constant: &Coefficient,
) -> AlgebraElement {
    let mut cs: Vec<Coefficient> = (0..alg.dim())
        .map(|_| q(r.gen_range(-3..=3), r.gen_range(1..=2)))
        .collect();
    cs[0] = constant.clone();
    alg.from_coeffs(cs).unwrap()
}

/// A random element of `Z`.
pub fn random_in_ideal(r: &mut ChaCha8Rng, data: &SquareZeroData) -> AlgebraElement {
    let alg = &data.algebra;
    let mut cs = vec![alg.field().zero(); alg.dim()];
    for &k in &data.z_basis {
        cs[k] = q(r.gen_range(-3..=3), r.gen_range(1..=3));
    }
    alg.from_coeffs(cs).unwrap()
}

/// Square-zero ideal `m^d` for a random admissible `d`.
pub fn random_square_zero(r: &mut ChaCha8Rng, alg: &NilpotentAlgebra) -> SquareZeroData {
    let top = alg.basis().iter().map(Monomial::degree).max().unwrap();
    let d = r.gen_range((top + 2) / 2..=top.max(1));
    let z = (0..alg.dim())
        .filter(|&k| alg.basis()[k].degree() >= d.max(1))
        .collect();
    SquareZeroData::new(alg.clone(), z).unwrap()
}

pub fn instance(r: &mut ChaCha8Rng, chart: &Presentation, cpt: &[Coefficient]) -> LiftInstance {
    let alg = random_algebra(r);
    let c = chart.nrelators();
    let point_alg = alg
        .quotient_by(
            &(0..alg.ngens())
                .map(|i| Monomial::var(alg.ngens(), i))
                .collect::<Vec<_>>(),
        )
        .unwrap();
    let start = AlgebraHom {
        images: cpt.iter().map(|v| point_alg.scalar(v.clone())).collect(),
    };
    let targets: Vec<AlgebraElement> = cpt[c..]
        .iter()
        .map(|v| random_element(r, &alg, v))
        .collect();
    let full = lift_chain(
        chart,
        &alg,
        &degree_filtration(&alg),
        &start,
        Some(&targets),
    )
    .unwrap();
    let data = random_square_zero(r, &alg);
    let quot = data.quotient().unwrap();
    let hom = AlgebraHom {
        images: full.images.iter().map(|a| alg.transfer(a, &quot)).collect(),
    };
    let free = (c..chart.nvars())
        .map(|_| random_in_ideal(r, &data))
        .collect();
    LiftInstance {
        chart: chart.clone(),
        data,
        hom,
        free,
    }
}

/// `count` instances spread over `count / per_chart` random charts.
pub fn instances(r: &mut ChaCha8Rng, count: usize, per_chart: usize) -> Vec<LiftInstance> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (chart, cpt) = random_chart_point(r);
        for _ in 0..per_chart.min(count - out.len()) {
            out.push(instance(r, &chart, &cpt));
        }
    }
    out
}
