//! Jacobian smoothness machinery for `S = k[x1..xn]/(f1..fc)`.
//!
//! The smooth locus of `Spec S → Spec k` is the union, over every choice of
//! `c0` relators and `c0` variables (`0 ≤ c0 ≤ min(c, n)`, `C(n+c, c)`
//! choices in all), of the open sets `D(Δ) ∩ V((I0 : I1))ᶜ` on `V(I1)`, where
//! `Δ` is the chosen Jacobian minor, `I0` the ideal of the chosen relators
//! and `I1 = (f1..fc)`. Colon ideals are computed in the polynomial ring.
//!
//! The complement of the smooth locus is `V(N)` for the single ideal
//! `N = I1 + (Δ·g : every choice, every generator g of (I0 : I1))`.

mod presentation;

pub use presentation::Presentation;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::groebner::{
    self, colon, in_radical, is_unit_ideal, is_unit_in_quotient, GroebnerError, IdealBasis,
};
use crate::linalg::{determinant, select_pivots, PolyMatrix};
use crate::poly::{Coefficient, PolyError, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothnessError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("point is not on the variety: relator {} does not vanish", .0 + 1)]
    PointOffVariety(usize),
    #[error("choice {0:?} does not fit a {1}x{2} Jacobian")]
    InvalidChoice(Choice, usize, usize),
}

/// A square submatrix selection: sorted relator indices and sorted
/// variable indices of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Choice {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Choice {
    pub fn empty() -> Self {
        Choice {
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn fits(&self, c: usize, n: usize) -> bool {
        self.rows.len() == self.cols.len()
            && self.rows.iter().all(|&i| i < c)
            && self.cols.iter().all(|&j| j < n)
            && self.rows.windows(2).all(|w| w[0] < w[1])
            && self.cols.windows(2).all(|w| w[0] < w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusPiece {
    pub choice: Choice,
    pub delta: Polynomial,
    /// Reduced GrevLex basis of `(I0 : I1)` in `P`.
    pub colon_gens: Vec<Polynomial>,
    /// No point of `V(I1)` lies in the piece: every `Δ·g` is in `√I1`.
    pub is_empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothLocusReport {
    /// One piece per choice, in canonical order.
    pub pieces: Vec<LocusPiece>,
    /// Reduced basis of `N`; its zero set is the non-smooth locus.
    pub non_smooth_ideal: IdealBasis,
    pub globally_smooth: bool,
    pub empty_scheme: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

pub fn jacobian(pres: &Presentation) -> PolyMatrix {
    let n = pres.nvars();
    let entries = pres
        .relators()
        .iter()
        .flat_map(|f| (0..n).map(move |j| f.partial_derivative(j).expect("index in range")))
        .collect();
    PolyMatrix::new(pres.ring(), pres.nrelators(), n, entries)
}

/// All choices of equal-size row and column subsets, ordered by size, then
/// rows lexicographically, then columns.
pub fn enumerate_choices(c: usize, n: usize) -> Vec<Choice> {
    let mut out = Vec::new();
    for k in 0..=c.min(n) {
        for rows in (0..c).combinations(k) {
            for cols in (0..n).combinations(k) {
                out.push(Choice {
                    rows: rows.clone(),
                    cols,
                });
            }
        }
    }
    out
}

pub fn minor_det(jac: &PolyMatrix, choice: &Choice) -> Result<Polynomial, SmoothnessError> {
    if !choice.fits(jac.rows(), jac.cols()) {
        return Err(SmoothnessError::InvalidChoice(
            choice.clone(),
            jac.rows(),
            jac.cols(),
        ));
    }
    let sub = jac.submatrix(&choice.rows, &choice.cols)?;
    Ok(determinant(jac.ring(), &sub))
}

fn chosen_ideal(pres: &Presentation, rows: &[usize]) -> IdealBasis {
    let gens = rows.iter().map(|&i| pres.relators()[i].clone()).collect();
    IdealBasis::new(pres.ring(), gens).expect("relators share the ambient")
}

pub fn locus_piece(pres: &Presentation, choice: &Choice) -> Result<LocusPiece, SmoothnessError> {
    piece_with(pres, &jacobian(pres), choice)
}

fn piece_with(
    pres: &Presentation,
    jac: &PolyMatrix,
    choice: &Choice,
) -> Result<LocusPiece, SmoothnessError> {
    let delta = minor_det(jac, choice)?;
    let i1 = pres.ideal();
    let i0 = chosen_ideal(pres, &choice.rows);
    let colon_gens = colon(&i0, &i1)?.into_generators();
    let mut is_empty = true;
    if !delta.is_zero() {
        for g in &colon_gens {
            if !in_radical(&(&delta * g), &i1)? {
                is_empty = false;
                break;
            }
        }
    }
    Ok(LocusPiece {
        choice: choice.clone(),
        delta,
        colon_gens,
        is_empty,
    })
}

pub fn smooth_locus(pres: &Presentation) -> Result<SmoothLocusReport, SmoothnessError> {
    smooth_locus_with(pres, Parallelism::default())
}

pub fn smooth_locus_with(
    pres: &Presentation,
    parallelism: Parallelism,
) -> Result<SmoothLocusReport, SmoothnessError> {
    let jac = jacobian(pres);
    let choices = enumerate_choices(pres.nrelators(), pres.nvars());
    let pieces: Vec<LocusPiece> = match parallelism {
        Parallelism::Sequential => choices
            .iter()
            .map(|ch| piece_with(pres, &jac, ch))
            .collect::<Result<_, _>>()?,
        // collect keeps the canonical order regardless of completion order
        Parallelism::Parallel => choices
            .par_iter()
            .map(|ch| piece_with(pres, &jac, ch))
            .collect::<Result<_, _>>()?,
    };
    let n_gens = non_smooth_generators(pres, &pieces);
    let non_smooth_ideal = IdealBasis::new(pres.ring(), n_gens)?.canonical();
    let globally_smooth = is_unit_ideal(&non_smooth_ideal);
    let empty_scheme = is_unit_ideal(&pres.ideal());
    Ok(SmoothLocusReport {
        pieces,
        non_smooth_ideal,
        globally_smooth,
        empty_scheme,
    })
}

/// `I1` generators followed by the distinct nonzero products `Δ·g`.
fn non_smooth_generators(pres: &Presentation, pieces: &[LocusPiece]) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = pres.relators().to_vec();
    for p in pieces {
        for g in &p.colon_gens {
            let h = &p.delta * g;
            if !h.is_zero() && !gens.contains(&h) {
                gens.push(h);
            }
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `Σ cofactors_i · generators_i = 1`, with the generators of `N`.
    Unit {
        generators: Vec<Polynomial>,
        cofactors: Vec<Polynomial>,
    },
    /// Reduced basis of the proper ideal `N`.
    NonSmooth { basis: Vec<Polynomial> },
}

impl Certificate {
    /// Recomputes the certified identity.
    pub fn check(&self, ring: PolyRing) -> bool {
        match self {
            Certificate::Unit {
                generators,
                cofactors,
            } => generators
                .iter()
                .zip(cofactors)
                .fold(ring.zero(), |acc, (g, h)| &acc + &(g * h))
                .is_one(),
            Certificate::NonSmooth { basis } => !basis.iter().any(Polynomial::is_constant),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub empty_scheme: bool,
    pub certificate: Certificate,
}

pub fn is_smooth(pres: &Presentation) -> Result<SmoothnessVerdict, SmoothnessError> {
    let report = smooth_locus(pres)?;
    verdict_from(pres, &report)
}

pub fn verdict_from(
    pres: &Presentation,
    report: &SmoothLocusReport,
) -> Result<SmoothnessVerdict, SmoothnessError> {
    let certificate = if report.globally_smooth {
        let generators = non_smooth_generators(pres, &report.pieces);
        let cofactors = match generators.iter().position(Polynomial::is_constant) {
            Some(k) => {
                let inv = generators[k]
                    .constant_value()
                    .and_then(|c| c.inv())
                    .expect("unit");
                let ring = pres.ring();
                (0..generators.len())
                    .map(|i| {
                        if i == k {
                            ring.constant(inv.clone())
                        } else {
                            ring.zero()
                        }
                    })
                    .collect()
            }
            None => {
                let ideal = IdealBasis::new(pres.ring(), generators.clone())?;
                groebner::unit_certificate(&ideal).expect("N is the unit ideal")
            }
        };
        Certificate::Unit {
            generators,
            cofactors,
        }
    } else {
        Certificate::NonSmooth {
            basis: report.non_smooth_ideal.generators().to_vec(),
        }
    };
    Ok(SmoothnessVerdict {
        smooth: report.globally_smooth,
        empty_scheme: report.empty_scheme,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVerdict {
    pub smooth: bool,
    /// Maximal-rank choice at the point.
    pub choice: Choice,
    /// A generator of `(I0 : I1)` not vanishing at the point.
    pub witness: Option<Polynomial>,
}

/// Checks arity and field, then that every relator vanishes at `point`.
pub fn check_on_variety(pres: &Presentation, point: &[Coefficient]) -> Result<(), SmoothnessError> {
    for (i, f) in pres.relators().iter().enumerate() {
        if !f.evaluate(point)?.is_zero() {
            return Err(SmoothnessError::PointOffVariety(i));
        }
    }
    if pres.relators().is_empty() {
        // still validate the point against the ambient
        pres.ring().zero().evaluate(point)?;
    }
    Ok(())
}

/// Smoothness at a rational point from one maximal-rank choice of the
/// evaluated Jacobian: smooth iff some generator of `(I0 : I1)` is nonzero
/// at the point.
pub fn smooth_at_point(
    pres: &Presentation,
    point: &[Coefficient],
) -> Result<PointVerdict, SmoothnessError> {
    check_on_variety(pres, point)?;
    let jpt = jacobian(pres).evaluate(point)?;
    let sel = select_pivots(&jpt);
    let choice = Choice {
        rows: sel.rows,
        cols: sel.cols,
    };
    let i0 = chosen_ideal(pres, &choice.rows);
    let gens = colon(&i0, &pres.ideal())?.into_generators();
    let mut witness = None;
    for g in gens {
        if !g.evaluate(point)?.is_zero() {
            witness = Some(g);
            break;
        }
    }
    Ok(PointVerdict {
        smooth: witness.is_some(),
        choice,
        witness,
    })
}

/// `c ≤ n` and the leading `c × c` Jacobian minor is a unit of `S`.
pub fn is_standard_smooth(pres: &Presentation) -> Result<bool, SmoothnessError> {
    let (c, n) = (pres.nrelators(), pres.nvars());
    if c > n {
        return Ok(false);
    }
    let lead = Choice {
        rows: (0..c).collect(),
        cols: (0..c).collect(),
    };
    let det = minor_det(&jacobian(pres), &lead)?;
    Ok(is_unit_in_quotient(&det, &pres.ideal())?)
}

/// A standard-smooth presentation of the principal localization `S_h`,
/// `h = Δ·g`, for one piece and one colon generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub presentation: Presentation,
    pub origin_choice: Choice,
    /// `h = Δ·g` in the original ring.
    pub localized_element: Polynomial,
    /// Original variable `i` sits at chart position `var_map[i]`.
    pub var_map: Vec<usize>,
    /// Chart position of the inverse variable `w = 1/h`.
    pub inverse_var: usize,
}

impl Chart {
    /// Coordinates of an original point inside the chart, or `None` when the
    /// localized element vanishes there.
    pub fn lift_point(
        &self,
        point: &[Coefficient],
    ) -> Result<Option<Vec<Coefficient>>, SmoothnessError> {
        let h = self.localized_element.evaluate(point)?;
        let Some(w) = h.inv() else { return Ok(None) };
        let mut out = vec![w.clone(); point.len() + 1];
        for (i, c) in point.iter().enumerate() {
            out[self.var_map[i]] = c.clone();
        }
        out[self.inverse_var] = w;
        Ok(Some(out))
    }
}

pub fn standard_smooth_charts(pres: &Presentation) -> Result<Vec<Chart>, SmoothnessError> {
    charts_from(pres, &smooth_locus(pres)?)
}

/// Charts for every nonempty piece and every colon generator `g` with
/// `Δ·g ∉ √I1`. On `D(g)` the chosen relators already generate `I1`, so the
/// chart keeps only those plus `w·Δ·g − 1`. Variables are ordered chosen
/// columns, then `w`, then the rest, which makes the leading minor `Δ²·g`.
pub fn charts_from(
    pres: &Presentation,
    report: &SmoothLocusReport,
) -> Result<Vec<Chart>, SmoothnessError> {
    let i1 = pres.ideal();
    let n = pres.nvars();
    let mut charts = Vec::new();
    for piece in report.pieces.iter().filter(|p| !p.is_empty) {
        for g in &piece.colon_gens {
            let h = &piece.delta * g;
            if in_radical(&h, &i1)? {
                continue;
            }
            let k = piece.choice.size();
            let mut var_map = vec![0; n];
            for (pos, &j) in piece.choice.cols.iter().enumerate() {
                var_map[j] = pos;
            }
            let rest: Vec<usize> = (0..n).filter(|j| !piece.choice.cols.contains(j)).collect();
            for (pos, &j) in rest.iter().enumerate() {
                var_map[j] = k + 1 + pos;
            }
            let ring = pres.ring().extend(1);
            let mut names = vec![String::new(); n + 1];
            for (j, name) in pres.var_names().iter().enumerate() {
                names[var_map[j]] = name.clone();
            }
            names[k] = fresh_name(pres.var_names());
            let mut rels = Vec::with_capacity(k + 1);
            for &i in &piece.choice.rows {
                rels.push(pres.relators()[i].rename(ring, &var_map)?);
            }
            let w = ring.var(k);
            rels.push(&(&w * &h.rename(ring, &var_map)?) - &ring.one());
            let mut chart_pres = Presentation::new(pres.field(), names, rels)?;
            if let Some(name) = pres.name() {
                chart_pres = chart_pres.with_name(format!("{name}_chart{}", charts.len() + 1));
            }
            charts.push(Chart {
                presentation: chart_pres,
                origin_choice: piece.choice.clone(),
                localized_element: h,
                var_map,
                inverse_var: k,
            });
        }
    }
    Ok(charts)
}

fn fresh_name(names: &[String]) -> String {
    if !names.iter().any(|n| n == "w") {
        return "w".to_string();
    }
    (1..)
        .map(|i| format!("w{i}"))
        .find(|c| !names.contains(c))
        .expect("unbounded")
}
