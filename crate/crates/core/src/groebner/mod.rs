//! Reduced Gröbner bases by Buchberger's algorithm, and the ideal operations
//! built on them.
//!
//! Internally polynomials are handled as term vectors sorted *ascending* in
//! the working order, so the leading term sits at the end and reduction
//! steps pop it in O(1).

mod ideal;

pub use ideal::{
    colon, eliminate, ideal_membership, in_radical, intersect, is_unit_ideal, is_unit_in_quotient,
    sum, IdealBasis,
};

use std::cmp::Ordering;
use std::collections::HashSet;

use thiserror::Error;

use crate::poly::{Coefficient, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal error: colon generator not divisible by {0}")]
    ColonDivision(String),
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted ascending by
/// leading monomial in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    sorted: Vec<Vec<Term>>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading monomial of each element under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted
            .iter()
            .map(|t| t.last().expect("nonzero element").0.clone())
            .collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if p.ring() != self.ring {
            return Err(PolyError::AmbientMismatch.into());
        }
        let refs: Vec<&[Term]> = self.sorted.iter().map(Vec::as_slice).collect();
        let r = reduce_terms(to_ascending(p, self.order), &refs, self.order);
        Ok(from_ascending(self.ring, r))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// Remainder of `p` under multivariate division by `divisors` (in the given
/// order). When `divisors` is a Gröbner basis this is the normal form.
pub fn reduce(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<Polynomial, GroebnerError> {
    if divisors.iter().any(|d| d.ring() != p.ring()) {
        return Err(PolyError::AmbientMismatch.into());
    }
    let sorted: Vec<Vec<Term>> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| to_ascending(d, order))
        .collect();
    let refs: Vec<&[Term]> = sorted.iter().map(Vec::as_slice).collect();
    Ok(from_ascending(
        p.ring(),
        reduce_terms(to_ascending(p, order), &refs, order),
    ))
}

pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    g.normal_form(p)
}

/// S-polynomial of two nonzero polynomials under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (fa, ga) = (to_ascending(f, order), to_ascending(g, order));
    let (fm, fc) = fa.last().expect("nonzero");
    let (gm, gc) = ga.last().expect("nonzero");
    let l = fm.lcm(gm);
    let a = scale_mul(&fa, &fc.inv().unwrap(), &fm.quotient_of(&l).unwrap());
    let s = sub_scaled(
        &a,
        &gc.inv().unwrap(),
        &gm.quotient_of(&l).unwrap(),
        &ga,
        order,
    );
    from_ascending(f.ring(), s)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &IdealBasis, order: MonomialOrder) -> GroebnerBasis {
    let ring = gens.ring();
    let elems = run_buchberger(ring, gens.generators(), order, false);
    let polys: Vec<Vec<Term>> = elems.into_iter().map(|e| e.poly).collect();
    finalize(ring, order, polys)
}

/// Cofactors `h` with `Σ h_i·gens_i = 1`, or `None` when the generated ideal
/// is proper. Built by tracking representations through Buchberger.
pub fn unit_certificate(gens: &IdealBasis) -> Option<Vec<Polynomial>> {
    let ring = gens.ring();
    let order = MonomialOrder::GrevLex;
    let g = gens.generators();
    let elems = run_buchberger(ring, g, order, true);
    let unit = elems
        .into_iter()
        .find(|e| e.poly.len() == 1 && e.poly[0].0.is_one())?;
    let c = unit.poly[0].1.inv().expect("nonzero constant");
    Some(unit.cof.iter().map(|h| h.scale(&c)).collect())
}

struct Elem {
    poly: Vec<Term>,
    // representation in terms of the input generators (empty when untracked)
    cof: Vec<Polynomial>,
}

impl Elem {
    fn lead(&self) -> &Term {
        self.poly.last().expect("nonzero element")
    }

    fn make_monic(&mut self) {
        let c = self.lead().1.inv().expect("nonzero leading coefficient");
        if !c.is_one() {
            for t in &mut self.poly {
                t.1 = &t.1 * &c;
            }
            for h in &mut self.cof {
                *h = h.scale(&c);
            }
        }
    }

    /// `self -= c * m * other`
    fn sub_scaled(&mut self, c: &Coefficient, m: &Monomial, other: &Elem, order: MonomialOrder) {
        self.poly = sub_scaled(&self.poly, c, m, &other.poly, order);
        for (h, o) in self.cof.iter_mut().zip(&other.cof) {
            *h = &*h - &o.mul_term(m, c);
        }
    }
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn run_buchberger(
    ring: PolyRing,
    gens: &[Polynomial],
    order: MonomialOrder,
    track: bool,
) -> Vec<Elem> {
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut inputs = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let cof = if track {
            (0..gens.len())
                .map(|k| if k == i { ring.one() } else { ring.zero() })
                .collect()
        } else {
            Vec::new()
        };
        inputs.push(Elem {
            poly: to_ascending(g, order),
            cof,
        });
    }
    // smaller inputs first keeps early reductions cheap
    inputs.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));

    for mut e in inputs {
        reduce_elem(&mut e, &basis, order);
        if e.poly.is_empty() {
            continue;
        }
        e.make_monic();
        let unit = e.lead().0.is_one();
        add_element(&mut basis, &mut pending, e);
        if unit {
            return basis;
        }
    }

    loop {
        let pick = pending.iter().copied().min_by(|a, b| {
            let la = basis[a.0].lead().0.lcm(&basis[a.1].lead().0);
            let lb = basis[b.0].lead().0.lcm(&basis[b.1].lead().0);
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| order.cmp(&la, &lb))
                .then_with(|| a.cmp(b))
        });
        let Some((i, j)) = pick else { break };
        pending.remove(&(i, j));

        let (mi, mj) = (&basis[i].lead().0, &basis[j].lead().0);
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&l)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }

        let mut s = spair(&basis[i], &basis[j], &l, ring, order, track);
        reduce_elem(&mut s, &basis, order);
        if s.poly.is_empty() {
            continue;
        }
        s.make_monic();
        let unit = s.lead().0.is_one();
        add_element(&mut basis, &mut pending, s);
        if unit {
            return basis;
        }
    }
    basis
}

fn add_element(basis: &mut Vec<Elem>, pending: &mut HashSet<(usize, usize)>, e: Elem) {
    let k = basis.len();
    basis.push(e);
    for i in 0..k {
        pending.insert((i, k));
    }
}

fn spair(
    a: &Elem,
    b: &Elem,
    l: &Monomial,
    ring: PolyRing,
    order: MonomialOrder,
    track: bool,
) -> Elem {
    // both elements are monic
    let ma = a.lead().0.quotient_of(l).expect("lcm");
    let mb = b.lead().0.quotient_of(l).expect("lcm");
    let one = ring.field.one();
    let mut s = Elem {
        poly: scale_mul(&a.poly, &one, &ma),
        cof: if track {
            a.cof.iter().map(|h| h.mul_term(&ma, &one)).collect()
        } else {
            Vec::new()
        },
    };
    s.sub_scaled(&one, &mb, b, order);
    s
}

/// Fully reduces `e` against `basis` (all elements monic).
fn reduce_elem(e: &mut Elem, basis: &[Elem], order: MonomialOrder) {
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = e.poly.last().cloned() {
        match basis.iter().find(|g| g.lead().0.divides(&m)) {
            Some(g) => {
                let q = g.lead().0.quotient_of(&m).unwrap();
                e.sub_scaled(&c, &q, g, order);
            }
            None => rem.push(e.poly.pop().unwrap()),
        }
    }
    rem.reverse();
    e.poly = rem;
}

fn reduce_terms(mut p: Vec<Term>, divisors: &[&[Term]], order: MonomialOrder) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        match divisors.iter().find(|g| g.last().unwrap().0.divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.last().unwrap();
                let q = gm.quotient_of(&m).unwrap();
                let coef = &c * &gc.inv().unwrap();
                p = sub_scaled(&p, &coef, &q, g, order);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    rem
}

fn finalize(ring: PolyRing, order: MonomialOrder, mut polys: Vec<Vec<Term>>) -> GroebnerBasis {
    polys.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for p in polys {
        let lm = &p.last().unwrap().0;
        if !minimal.iter().any(|q| q.last().unwrap().0.divides(lm)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let others: Vec<&[Term]> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, q)| q.as_slice())
            .collect();
        let mut tail = p.clone();
        let lead = tail.pop().unwrap();
        let mut r = reduce_terms(tail, &others, order);
        r.push(lead);
        reduced.push(r);
    }
    let elements = reduced
        .iter()
        .map(|t| from_ascending(ring, t.clone()))
        .collect();
    GroebnerBasis {
        ring,
        order,
        elements,
        sorted: reduced,
    }
}

pub(crate) fn to_ascending(p: &Polynomial, order: MonomialOrder) -> Vec<Term> {
    let mut t: Vec<Term> = p.terms().to_vec();
    if order == MonomialOrder::GrevLex {
        t.reverse();
    } else {
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    }
    t
}

pub(crate) fn from_ascending(ring: PolyRing, terms: Vec<Term>) -> Polynomial {
    Polynomial::from_terms(ring, terms).expect("terms from the same ambient")
}

fn scale_mul(p: &[Term], c: &Coefficient, m: &Monomial) -> Vec<Term> {
    p.iter().map(|(a, b)| (a.mul(m), b * c)).collect()
}

/// `p - c*m*g` for ascending term vectors.
fn sub_scaled(
    p: &[Term],
    c: &Coefficient,
    m: &Monomial,
    g: &[Term],
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| -> Term { (g[k].0.mul(m), &g[k].1 * c) };
    let mut gj = if g.is_empty() { None } else { Some(shifted(0)) };
    while i < p.len() {
        let Some(ref t) = gj else { break };
        match order.cmp(&p[i].0, &t.0) {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((t.0.clone(), -&t.1));
                j += 1;
                gj = (j < g.len()).then(|| shifted(j));
            }
            Ordering::Equal => {
                let v = &p[i].1 - &t.1;
                if !v.is_zero() {
                    out.push((t.0.clone(), v));
                }
                i += 1;
                j += 1;
                gj = (j < g.len()).then(|| shifted(j));
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    while let Some(t) = gj {
        out.push((t.0, -&t.1));
        j += 1;
        gj = (j < g.len()).then(|| shifted(j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FieldSpec;

    fn qq(n: usize) -> PolyRing {
        PolyRing::new(FieldSpec::Rationals, n)
    }

    fn ideal(ring: PolyRing, gens: Vec<Polynomial>) -> IdealBasis {
        IdealBasis::new(ring, gens).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = qq(2);
        let (x, y) = (r.var(0), r.var(1));
        let gx = buchberger(&ideal(r, vec![x.clone()]), MonomialOrder::GrevLex);
        assert!(gx.normal_form(&x.pow(2)).unwrap().is_zero());
        let p = &(&x * &y) + &r.one();
        assert_eq!(reduce(&p, &[], MonomialOrder::GrevLex).unwrap(), p);
        let circle = &(&x.pow(2) + &y.pow(2)) - &r.one();
        let nf = reduce(&circle, &[&x - &y], MonomialOrder::GrevLex).unwrap();
        assert_eq!(nf, &y.pow(2).scale(&r.field.from_i64(2)) - &r.one());
    }

    #[test]
    fn buchberger_examples() {
        let r = qq(2);
        let (x, y) = (r.var(0), r.var(1));
        let circle = &(&x.pow(2) + &y.pow(2)) - &r.one();
        let g = buchberger(&ideal(r, vec![circle, &x - &y]), MonomialOrder::GrevLex);
        let half = r.field.from_fraction(&2.into(), &4.into()).unwrap();
        assert_eq!(g.elements(), &[&x - &y, &y.pow(2) - &r.constant(half)]);
        assert!(buchberger(&ideal(r, vec![r.one()]), MonomialOrder::GrevLex).is_unit());
        assert!(buchberger(&ideal(r, vec![]), MonomialOrder::GrevLex).is_zero_ideal());
    }

    #[test]
    fn s_pairs_vanish_on_result() {
        let r = qq(3);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![&(&x * &y) - &z, &(&y * &z) - &x, &(&x * &z) - &y];
        for order in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Block(1),
        ] {
            let g = buchberger(&ideal(r, gens.clone()), order);
            for a in g.elements() {
                for b in g.elements() {
                    let s = s_polynomial(a, b, order);
                    assert!(reduce(&s, g.elements(), order).unwrap().is_zero());
                }
            }
            for f in &gens {
                assert!(g.contains(f).unwrap());
            }
        }
    }

    #[test]
    fn unit_certificate_reconstructs_one() {
        let r = qq(2);
        let (x, y) = (r.var(0), r.var(1));
        let circle = &(&x.pow(2) + &y.pow(2)) - &r.one();
        let two = r.field.from_i64(2);
        let gens = vec![circle, x.scale(&two), y.scale(&two)];
        let h = unit_certificate(&ideal(r, gens.clone())).expect("unit ideal");
        let total = h
            .iter()
            .zip(&gens)
            .fold(r.zero(), |acc, (a, b)| &acc + &(a * b));
        assert!(total.is_one());
        assert!(unit_certificate(&ideal(r, vec![x.pow(2), y])).is_none());
    }

    #[test]
    fn prime_field_basis() {
        let r = PolyRing::new(FieldSpec::prime(2).unwrap(), 2);
        let (x, y) = (r.var(0), r.var(1));
        // x^2 + y^2 + 1 = (x + y + 1)^2 over GF(2)
        let f = &(&x.pow(2) + &y.pow(2)) + &r.one();
        let g = buchberger(
            &ideal(r, vec![f.clone(), &(&x + &y) + &r.one()]),
            MonomialOrder::GrevLex,
        );
        assert_eq!(g.elements(), &[&(&x + &y) + &r.one()]);
    }
}
