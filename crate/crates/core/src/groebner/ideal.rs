use crate::poly::{Monomial, MonomialOrder, PolyError, PolyRing, Polynomial};

use super::{buchberger, GroebnerError};

/// Generators of an ideal of `k[x1..xn]`; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: PolyRing,
    gens: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ring: PolyRing, gens: Vec<Polynomial>) -> Result<Self, PolyError> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(PolyError::AmbientMismatch);
        }
        Ok(IdealBasis {
            ring,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: PolyRing) -> Self {
        IdealBasis {
            ring,
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: PolyRing) -> Self {
        IdealBasis {
            ring,
            gens: vec![ring.one()],
        }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Polynomial> {
        self.gens
    }

    /// Syntactically zero: no generators.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same ideal given by its reduced GrevLex basis.
    pub fn canonical(&self) -> IdealBasis {
        let g = buchberger(self, MonomialOrder::GrevLex);
        IdealBasis {
            ring: self.ring,
            gens: g.into_elements(),
        }
    }

    fn check(&self, other_ring: PolyRing) -> Result<(), GroebnerError> {
        if self.ring != other_ring {
            return Err(PolyError::AmbientMismatch.into());
        }
        Ok(())
    }
}

pub fn ideal_membership(p: &Polynomial, ideal: &IdealBasis) -> Result<bool, GroebnerError> {
    ideal.check(p.ring())?;
    if p.is_zero() {
        return Ok(true);
    }
    buchberger(ideal, MonomialOrder::GrevLex).contains(p)
}

/// `1 ∈ I`, i.e. `V(I)` is empty.
pub fn is_unit_ideal(ideal: &IdealBasis) -> bool {
    if ideal.gens.iter().any(|g| g.is_constant()) {
        return true;
    }
    buchberger(ideal, MonomialOrder::GrevLex).is_unit()
}

pub fn sum(a: &IdealBasis, b: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    a.check(b.ring)?;
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    Ok(IdealBasis { ring: a.ring, gens })
}

/// `I ∩ k[x_{k+1}..x_n]`, still written in the full ring.
pub fn eliminate(ideal: &IdealBasis, k: usize) -> Result<IdealBasis, GroebnerError> {
    let n = ideal.ring.nvars;
    if k > n {
        return Err(PolyError::VariableOutOfRange { index: k, nvars: n }.into());
    }
    let order = if k == 0 {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::Block(k)
    };
    let g = buchberger(ideal, order);
    let gens = g
        .into_elements()
        .into_iter()
        .filter(|p| (0..k).all(|j| !p.uses_var(j)))
        .collect();
    Ok(IdealBasis {
        ring: ideal.ring,
        gens,
    })
}

/// `I ∩ J` via elimination of `t` from `t·I + (1 − t)·J`.
pub fn intersect(a: &IdealBasis, b: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    a.check(b.ring)?;
    let ring = a.ring;
    if a.is_zero() || b.is_zero() {
        return Ok(IdealBasis::zero(ring));
    }
    if is_unit_ideal(a) {
        return Ok(b.clone());
    }
    if is_unit_ideal(b) {
        return Ok(a.clone());
    }
    let ext = ring.extend(1);
    let shift: Vec<usize> = (1..=ring.nvars).collect();
    let t = ext.var(0);
    let one_minus_t = &ext.one() - &t;
    let mut gens = Vec::with_capacity(a.gens.len() + b.gens.len());
    for f in &a.gens {
        gens.push(&t * &f.rename(ext, &shift)?);
    }
    for g in &b.gens {
        gens.push(&one_minus_t * &g.rename(ext, &shift)?);
    }
    let elim = eliminate(&IdealBasis { ring: ext, gens }, 1)?;
    let gens = elim.gens.iter().map(|p| drop_leading(p, 1, ring)).collect();
    Ok(IdealBasis { ring, gens })
}

fn drop_leading(p: &Polynomial, k: usize, ring: PolyRing) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| (Monomial(m.0[k..].to_vec()), c.clone()));
    Polynomial::from_terms(ring, terms).expect("projection stays in ambient")
}

/// `(I : J) = { g | g·J ⊆ I }`, returned as its reduced GrevLex basis.
/// `(I : (0))` is the unit ideal.
pub fn colon(i: &IdealBasis, j: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    i.check(j.ring)?;
    let ring = i.ring;
    let gb_i = buchberger(i, MonomialOrder::GrevLex);
    let mut acc: Option<IdealBasis> = None;
    for f in &j.gens {
        if gb_i.contains(f)? {
            continue;
        }
        if i.is_zero() {
            // k[x] is a domain
            return Ok(IdealBasis::zero(ring));
        }
        let principal = IdealBasis {
            ring,
            gens: vec![f.clone()],
        };
        let meet = intersect(i, &principal)?;
        let mut quot = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            let q = g
                .div_exact(f)
                .map_err(|_| GroebnerError::ColonDivision(f.to_string()))?;
            quot.push(q);
        }
        let piece = IdealBasis { ring, gens: quot };
        acc = Some(match acc {
            None => piece,
            Some(prev) => intersect(&prev, &piece)?,
        });
    }
    Ok(match acc {
        None => IdealBasis::unit(ring),
        Some(ideal) => ideal.canonical(),
    })
}

/// Whether `f` is a unit of `k[x]/I`, i.e. `1 ∈ I + (f)`.
pub fn is_unit_in_quotient(f: &Polynomial, ideal: &IdealBasis) -> Result<bool, GroebnerError> {
    ideal.check(f.ring())?;
    let mut gens = ideal.gens.clone();
    gens.push(f.clone());
    Ok(is_unit_ideal(&IdealBasis::new(ideal.ring, gens)?))
}

/// Radical membership `f ∈ √I`, by the Rabinowitsch test `1 ∈ I + (w·f − 1)`.
pub fn in_radical(f: &Polynomial, ideal: &IdealBasis) -> Result<bool, GroebnerError> {
    ideal.check(f.ring())?;
    let ring = ideal.ring;
    let ext = ring.extend(1);
    let keep: Vec<usize> = (0..ring.nvars).collect();
    let mut gens = Vec::with_capacity(ideal.gens.len() + 1);
    for g in &ideal.gens {
        gens.push(g.rename(ext, &keep)?);
    }
    let w = ext.var(ring.nvars);
    gens.push(&(&w * &f.rename(ext, &keep)?) - &ext.one());
    Ok(is_unit_ideal(&IdealBasis { ring: ext, gens }))
}
