//! The module of differentials `Ω_{S/k}` as the cokernel of the Jacobian,
//! and fiberwise checks at rational points.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groebner::{buchberger, GroebnerError, IdealBasis};
use crate::linalg::rank;
use crate::poly::{Coefficient, Monomial, MonomialOrder, PolyError, Polynomial};
use crate::smoothness::{
    check_on_variety, jacobian, smooth_at_point, Presentation, SmoothnessError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KaehlerError {
    #[error(transparent)]
    Smoothness(#[from] SmoothnessError),
    #[error("the presentation is not smooth at the given point")]
    NotSmoothAtPoint,
}

impl From<PolyError> for KaehlerError {
    fn from(e: PolyError) -> Self {
        KaehlerError::Smoothness(e.into())
    }
}

impl From<GroebnerError> for KaehlerError {
    fn from(e: GroebnerError) -> Self {
        KaehlerError::Smoothness(e.into())
    }
}

/// `Ω = S^n / (df_1, …, df_c)` on the symbols `dx_1..dx_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialModulePresentation {
    pub rank: usize,
    pub relation_rows: Vec<Vec<Polynomial>>,
    pub ambient: Presentation,
}

pub fn omega_presentation(pres: &Presentation) -> DifferentialModulePresentation {
    let jac = jacobian(pres);
    DifferentialModulePresentation {
        rank: pres.nvars(),
        relation_rows: (0..jac.rows()).map(|i| jac.row(i).to_vec()).collect(),
        ambient: pres.clone(),
    }
}

/// Gradient of `f`, a representative of `d(f mod I1)`.
pub fn universal_d(pres: &Presentation, f: &Polynomial) -> Result<Vec<Polynomial>, KaehlerError> {
    if f.ring() != pres.ring() {
        return Err(PolyError::AmbientMismatch.into());
    }
    Ok((0..pres.nvars())
        .map(|j| f.partial_derivative(j).expect("index in range"))
        .collect())
}

fn jacobian_rank_at(pres: &Presentation, point: &[Coefficient]) -> Result<usize, KaehlerError> {
    check_on_variety(pres, point)?;
    Ok(rank(&jacobian(pres).evaluate(point)?))
}

/// `dim_k Ω ⊗ κ(pt) = n − rank J(pt)`.
pub fn omega_fiber_dim(pres: &Presentation, point: &[Coefficient]) -> Result<usize, KaehlerError> {
    Ok(pres.nvars() - jacobian_rank_at(pres, point)?)
}

/// `dim_k I1 / m·I1` for the maximal ideal `m` of the point: the minimal
/// number of local generators of `I1` there.
pub fn conormal_fiber_dim(
    pres: &Presentation,
    point: &[Coefficient],
) -> Result<usize, KaehlerError> {
    check_on_variety(pres, point)?;
    let ring = pres.ring();
    if pres.nrelators() == 0 {
        return Ok(0);
    }
    let mut products = Vec::new();
    for j in 0..ring.nvars {
        let xj = &ring.var(j) - &ring.constant(point[j].clone());
        for f in pres.relators() {
            products.push(&xj * f);
        }
    }
    let gb = buchberger(&IdealBasis::new(ring, products)?, MonomialOrder::GrevLex);
    let residues = pres
        .relators()
        .iter()
        .map(|f| gb.normal_form(f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rank(&coefficient_matrix(&residues)))
}

/// Rows are the coefficient vectors of the polynomials over their joint
/// monomial support.
fn coefficient_matrix(polys: &[Polynomial]) -> Vec<Vec<Coefficient>> {
    let mut support: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = support.len();
            support.entry(m.clone()).or_insert(next);
        }
    }
    let Some(field) = polys.first().map(Polynomial::field) else {
        return Vec::new();
    };
    polys
        .iter()
        .map(|p| {
            let mut row = vec![field.zero(); support.len()];
            for (m, c) in p.terms() {
                row[support[m]] = c.clone();
            }
            row
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConormalReport {
    /// Rank of the Jacobian at the point.
    pub rank_r: usize,
    pub fiber_dim: usize,
    /// `dim_k I1 / m·I1`.
    pub conormal_dim: usize,
    /// `r + fiber_dim = n` and the conormal fiber has dimension `r`.
    pub split_ok: bool,
}

/// Fiber-level shadow of `0 → I/I² → Ω_P ⊗ S → Ω_S → 0` being split exact.
/// Only defined at smooth points.
pub fn conormal_check(
    pres: &Presentation,
    point: &[Coefficient],
) -> Result<ConormalReport, KaehlerError> {
    if !smooth_at_point(pres, point)?.smooth {
        return Err(KaehlerError::NotSmoothAtPoint);
    }
    let rank_r = jacobian_rank_at(pres, point)?;
    let fiber_dim = pres.nvars() - rank_r;
    let conormal_dim = conormal_fiber_dim(pres, point)?;
    Ok(ConormalReport {
        rank_r,
        fiber_dim,
        conormal_dim,
        split_ok: rank_r + fiber_dim == pres.nvars() && conormal_dim == rank_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_membership;
    use crate::poly::{FieldSpec, PolyRing};
    use crate::smoothness::standard_smooth_charts;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn q(a: i64, b: i64) -> Coefficient {
        FieldSpec::Rationals
            .from_fraction(&a.into(), &b.into())
            .unwrap()
    }

    fn plane() -> PolyRing {
        PolyRing::new(FieldSpec::Rationals, 2)
    }

    fn circle() -> Presentation {
        let r = plane();
        let f = &(&r.var(0).pow(2) + &r.var(1).pow(2)) - &r.one();
        Presentation::new(r.field, names(&["x", "y"]), vec![f]).unwrap()
    }

    fn cusp() -> Presentation {
        let r = plane();
        let f = &r.var(1).pow(2) - &r.var(0).pow(3);
        Presentation::new(r.field, names(&["x", "y"]), vec![f]).unwrap()
    }

    #[test]
    fn omega_examples() {
        let r = plane();
        let two = r.field.from_i64(2);
        let om = omega_presentation(&circle());
        assert_eq!(om.rank, 2);
        assert_eq!(
            om.relation_rows,
            vec![vec![r.var(0).scale(&two), r.var(1).scale(&two)]]
        );
        let free = Presentation::new(r.field, names(&["x", "y", "z"]), vec![]).unwrap();
        let om = omega_presentation(&free);
        assert_eq!((om.rank, om.relation_rows.len()), (3, 0));
        let om = omega_presentation(&cusp());
        assert_eq!(
            om.relation_rows[0][0],
            r.var(0).pow(2).scale(&r.field.from_i64(-3))
        );
    }

    #[test]
    fn d_examples() {
        let c = circle();
        let r = c.ring();
        let (x, y) = (r.var(0), r.var(1));
        let d = universal_d(&c, &(&x.pow(2) * &y)).unwrap();
        assert_eq!(d, vec![(&x * &y).scale(&r.field.from_i64(2)), x.pow(2)]);
        assert!(universal_d(&c, &r.from_i64(7))
            .unwrap()
            .iter()
            .all(Polynomial::is_zero));
        assert!(universal_d(&c, &PolyRing::new(r.field, 3).var(0)).is_err());
    }

    #[test]
    fn d_of_ideal_element_lies_in_relations() {
        let c = circle();
        let r = c.ring();
        let f = &c.relators()[0];
        let g = &(&r.var(0) * &r.var(1)) + &r.from_i64(3);
        let lhs = universal_d(&c, &(&g * f)).unwrap();
        let df = universal_d(&c, f).unwrap();
        for (a, b) in lhs.iter().zip(&df) {
            assert!(ideal_membership(&(a - &(&g * b)), &c.ideal()).unwrap());
        }
    }

    #[test]
    fn fiber_dims() {
        assert_eq!(omega_fiber_dim(&circle(), &[q(0, 1), q(1, 1)]).unwrap(), 1);
        assert_eq!(omega_fiber_dim(&cusp(), &[q(0, 1), q(0, 1)]).unwrap(), 2);
        let line = Presentation::new(FieldSpec::Rationals, names(&["x"]), vec![]).unwrap();
        assert_eq!(omega_fiber_dim(&line, &[q(5, 7)]).unwrap(), 1);
        assert!(omega_fiber_dim(&circle(), &[q(1, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn conormal_examples() {
        let rep = conormal_check(&circle(), &[q(3, 5), q(4, 5)]).unwrap();
        assert_eq!(
            rep,
            ConormalReport {
                rank_r: 1,
                fiber_dim: 1,
                conormal_dim: 1,
                split_ok: true
            }
        );

        let free = Presentation::new(FieldSpec::Rationals, names(&["x", "y"]), vec![]).unwrap();
        let rep = conormal_check(&free, &[q(2, 1), q(-1, 3)]).unwrap();
        assert_eq!((rep.rank_r, rep.fiber_dim, rep.split_ok), (0, 2, true));

        let charts = standard_smooth_charts(&cusp()).unwrap();
        let chart = charts.iter().find_map(|ch| {
            ch.lift_point(&[q(1, 1), q(1, 1)])
                .unwrap()
                .map(|p| (ch.presentation.clone(), p))
        });
        let (cp, pt) = chart.unwrap();
        let rep = conormal_check(&cp, &pt).unwrap();
        assert_eq!(rep.fiber_dim, 1);
        assert!(rep.split_ok);

        assert_eq!(
            conormal_check(&cusp(), &[q(0, 1), q(0, 1)]),
            Err(KaehlerError::NotSmoothAtPoint)
        );
    }

    #[test]
    fn conormal_dim_sees_non_reduced_generators() {
        // (x^2) at the origin of the line: rank 0 but one local generator
        let r = PolyRing::new(FieldSpec::Rationals, 1);
        let p = Presentation::new(r.field, names(&["x"]), vec![r.var(0).pow(2)]).unwrap();
        assert_eq!(conormal_fiber_dim(&p, &[q(0, 1)]).unwrap(), 1);
        assert_eq!(omega_fiber_dim(&p, &[q(0, 1)]).unwrap(), 1);
    }
}
