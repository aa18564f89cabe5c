use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::{Coefficient, FieldSpec, Monomial, MonomialOrder, PolyError};

/// Ambient polynomial ring `k[x1..xn]`, addressed by variable index only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub nvars: usize,
}

impl PolyRing {
    pub fn new(field: FieldSpec, nvars: usize) -> Self {
        PolyRing { field, nvars }
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: *self,
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Coefficient) -> Polynomial {
        assert!(
            self.field.contains(&c),
            "constant outside the ambient field"
        );
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: *self,
            terms: vec![(Monomial::one(self.nvars), c)],
        }
    }

    pub fn from_i64(&self, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    /// The variable `x_j`. Panics when `j` is out of range.
    pub fn var(&self, j: usize) -> Polynomial {
        assert!(j < self.nvars, "variable index {j} out of range");
        Polynomial {
            ring: *self,
            terms: vec![(Monomial::var(self.nvars, j), self.field.one())],
        }
    }

    pub fn monomial(&self, m: Monomial, c: Coefficient) -> Polynomial {
        Polynomial::from_terms(*self, [(m, c)]).expect("monomial in ambient")
    }

    /// The same ring with `extra` variables appended.
    pub fn extend(&self, extra: usize) -> PolyRing {
        PolyRing {
            field: self.field,
            nvars: self.nvars + extra,
        }
    }
}

/// A term `(monomial, coefficient)`.
pub type Term = (Monomial, Coefficient);

/// Sparse multivariate polynomial. Terms are stored with nonzero
/// coefficients, distinct monomials, sorted by descending GrevLex, so
/// equality of polynomials is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

fn desc(a: &Term, b: &Term) -> Ordering {
    MonomialOrder::GrevLex.cmp(&b.0, &a.0)
}

impl Polynomial {
    pub fn from_terms<I>(ring: PolyRing, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = Term>,
    {
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars {
                return Err(PolyError::ArityMismatch {
                    expected: ring.nvars,
                    found: m.nvars(),
                });
            }
            if !ring.field.contains(&c) {
                return Err(PolyError::FieldMismatch);
            }
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: PolyRing, acc: HashMap<Monomial, Coefficient>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(desc);
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    /// Terms in descending GrevLex order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Coefficient> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Coefficient {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Leading term under GrevLex.
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Whether variable `j` occurs in some term.
    pub fn uses_var(&self, j: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[j] > 0)
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring != other.ring {
            Err(PolyError::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let mut acc: HashMap<Monomial, Coefficient> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(self.ring, acc))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match MonomialOrder::GrevLex.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), if negate { -&b.1 } else { b.1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.1 - &b.1 } else { &a.1 + &b.1 };
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial {
            ring: self.ring,
            terms,
        }
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect();
        Polynomial {
            ring: self.ring,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the GrevLex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative with respect to `x_j`.
    pub fn partial_derivative(&self, j: usize) -> Result<Polynomial, PolyError> {
        if j >= self.ring.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: j,
                nvars: self.ring.nvars,
            });
        }
        let f = self.ring.field;
        // exponent factors vanish in positive characteristic
        let terms = self.terms.iter().filter(|(m, _)| m.0[j] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[j];
            e[j] -= 1;
            (Monomial(e), c * &f.from_i64(k as i64))
        });
        Polynomial::from_terms(self.ring, terms)
    }

    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Coefficient, PolyError> {
        if point.len() != self.ring.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.ring.nvars,
                found: point.len(),
            });
        }
        if point.iter().any(|c| !self.ring.field.contains(c)) {
            return Err(PolyError::FieldMismatch);
        }
        let f = self.ring.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact division `self / d`; fails unless `d` divides `self` in `k[x]`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q = lm.quotient_of(m).ok_or(PolyError::InexactDivision)?;
            let qc = c * &lc_inv;
            rem = &rem - &d.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        // quotient terms come out in strictly descending order
        Ok(Polynomial {
            ring: self.ring,
            terms: quot,
        })
    }

    /// Moves the polynomial into `target`, sending `x_i` to `x_{map[i]}`.
    /// `map` must be injective.
    pub fn rename(&self, target: PolyRing, map: &[usize]) -> Result<Polynomial, PolyError> {
        if map.len() != self.ring.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.ring.nvars,
                found: map.len(),
            });
        }
        if target.field != self.ring.field {
            return Err(PolyError::FieldMismatch);
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.nvars) {
            return Err(PolyError::VariableOutOfRange {
                index: bad,
                nvars: target.nvars,
            });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Renders with the given variable names (needs one name per variable).
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names: Some(names),
        }
    }
}

/// Canonical printer: descending GrevLex, `*` between factors, integer or
/// `a/b` coefficients.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: Option<&'a [String]>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match self.names {
                    Some(n) => n[j].clone(),
                    None => format!("x{}", j + 1),
                };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay {
            poly: self,
            names: None,
        }
        .fmt(f)
    }
}

macro_rules! poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ambient mismatch")
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).expect("polynomial ambient mismatch")
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial {
            ring: self.ring,
            terms,
        }
    }
}
