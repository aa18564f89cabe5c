//! Square-zero lifting into finite-dimensional nilpotent test algebras.
//!
//! Test algebras are monomial truncations `A = k[e1..em]/M`. A hom
//! `S → A/Z` with `Z² = 0` is deformed to `S → A` by solving the linear
//! system `J(a)·z = −f(a)` over `A`, which has a unique solution in the
//! pivot coordinates when the leading Jacobian minor is a unit of `S`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::poly::{
    Coefficient, FieldSpec, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial,
};
use crate::smoothness::{is_standard_smooth, Presentation, SmoothnessError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Smoothness(#[from] SmoothnessError),
    #[error("generator e{} is not nilpotent: no pure power of it is forbidden", .0 + 1)]
    InfiniteBasis(usize),
    #[error("the truncation forbids 1, so the algebra is zero")]
    ZeroAlgebra,
    #[error("monomial is not a basis element of the algebra")]
    NotInBasis,
    #[error("element has zero constant term and is not a unit")]
    NotAUnit,
    #[error("the given ideal is not a square-zero ideal")]
    NotSquareZero,
    #[error("the presentation is not standard smooth")]
    NotStandardSmooth,
    #[error("not a homomorphism: relator {} does not map to zero", .0 + 1)]
    InvalidHom(usize),
    #[error("free correction for variable {} does not lie in the square-zero ideal", .0 + 1)]
    FreeCorrectionNotInIdeal(usize),
    #[error("the lifting system is singular")]
    SingularSystem,
    #[error("ideal chain must be decreasing and end at zero")]
    InvalidChain,
}

/// An element of a [`NilpotentAlgebra`], as coordinates on its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<Coefficient>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    /// Coefficient of the basis monomial `1`.
    pub fn constant_term(&self) -> &Coefficient {
        &self.coeffs[0]
    }
}

/// `k[e1..em]/M` for a monomial ideal `M` containing a power of every `ei`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    field: FieldSpec,
    ngens: usize,
    forbidden: Vec<Monomial>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    table: Vec<Vec<Option<usize>>>,
    names: Vec<String>,
}

pub fn make_algebra(
    field: FieldSpec,
    m: usize,
    forbidden: &[Monomial],
) -> Result<NilpotentAlgebra, LiftingError> {
    NilpotentAlgebra::new(field, m, forbidden.to_vec())
}

impl NilpotentAlgebra {
    pub fn new(field: FieldSpec, m: usize, forbidden: Vec<Monomial>) -> Result<Self, LiftingError> {
        if let Some(bad) = forbidden.iter().find(|f| f.nvars() != m) {
            return Err(PolyError::ArityMismatch {
                expected: m,
                found: bad.nvars(),
            }
            .into());
        }
        if forbidden.iter().any(Monomial::is_one) {
            return Err(LiftingError::ZeroAlgebra);
        }
        let mut bounds = Vec::with_capacity(m);
        for i in 0..m {
            let pure = forbidden
                .iter()
                .filter(|f| f.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|f| f.0[i])
                .min();
            bounds.push(pure.ok_or(LiftingError::InfiniteBasis(i))?);
        }
        let mut basis = vec![Monomial::one(m)];
        for i in 0..m {
            let mut next = Vec::new();
            for b in &basis {
                for e in 0..bounds[i] {
                    let mut v = b.0.clone();
                    v[i] = e;
                    next.push(Monomial(v));
                }
            }
            basis = next;
        }
        basis.retain(|b| !forbidden.iter().any(|f| f.divides(b)));
        basis.sort_by(|a, b| MonomialOrder::GrevLex.cmp(a, b));
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(k, b)| (b.clone(), k))
            .collect();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| index.get(&a.mul(b)).copied())
                    .collect()
            })
            .collect();
        let names = (1..=m).map(|i| format!("e{i}")).collect();
        Ok(NilpotentAlgebra {
            field,
            ngens: m,
            forbidden,
            basis,
            index,
            table,
            names,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.ngens, "one name per generator");
        self.names = names;
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn forbidden(&self) -> &[Monomial] {
        &self.forbidden
    }

    /// Basis monomials, ascending; `1` is at index 0.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the product of two basis monomials, `None` when it is in `M`.
    pub fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i][j]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: Coefficient) -> AlgebraElement {
        let mut a = self.zero();
        a.coeffs[0] = c;
        a
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        let mut a = self.zero();
        a.coeffs[k] = self.field.one();
        a
    }

    /// The class of `e_i`; zero if `e_i` itself is forbidden.
    pub fn generator(&self, i: usize) -> AlgebraElement {
        match self.index_of(&Monomial::var(self.ngens, i)) {
            Some(k) => self.basis_element(k),
            None => self.zero(),
        }
    }

    pub fn from_coeffs(&self, coeffs: Vec<Coefficient>) -> Result<AlgebraElement, LiftingError> {
        if coeffs.len() != self.dim() {
            return Err(PolyError::ArityMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            }
            .into());
        }
        if coeffs.iter().any(|c| !self.field.contains(c)) {
            return Err(PolyError::FieldMismatch.into());
        }
        Ok(AlgebraElement { coeffs })
    }

    /// Image of a polynomial in `k[e1..em]`.
    pub fn from_polynomial(&self, p: &Polynomial) -> Result<AlgebraElement, LiftingError> {
        if p.nvars() != self.ngens {
            return Err(PolyError::ArityMismatch {
                expected: self.ngens,
                found: p.nvars(),
            }
            .into());
        }
        if p.field() != self.field {
            return Err(PolyError::FieldMismatch.into());
        }
        let mut a = self.zero();
        for (m, c) in p.terms() {
            if let Some(k) = self.index_of(m) {
                a.coeffs[k] = c.clone();
            }
        }
        Ok(a)
    }

    pub fn to_polynomial(&self, a: &AlgebraElement) -> Polynomial {
        let ring = PolyRing::new(self.field, self.ngens);
        let terms = self.basis.iter().cloned().zip(a.coeffs.iter().cloned());
        Polynomial::from_terms(ring, terms).expect("basis monomials fit the ring")
    }

    pub fn display<'a>(&'a self, a: &'a AlgebraElement) -> impl fmt::Display + 'a {
        ElementDisplay {
            algebra: self,
            element: a,
        }
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: a.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if let Some(k) = self.table[i][j] {
                    out.coeffs[k] = &out.coeffs[k] + &(x * y);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &AlgebraElement, e: u32) -> AlgebraElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `f(images)`, with one image per variable of `f`.
    pub fn eval_poly(
        &self,
        f: &Polynomial,
        images: &[AlgebraElement],
    ) -> Result<AlgebraElement, LiftingError> {
        if images.len() != f.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: f.nvars(),
                found: images.len(),
            }
            .into());
        }
        if f.field() != self.field {
            return Err(PolyError::FieldMismatch.into());
        }
        let mut powers: Vec<Vec<AlgebraElement>> =
            images.iter().map(|a| vec![self.one(), a.clone()]).collect();
        let mut out = self.zero();
        for (m, c) in f.terms() {
            let mut t = self.scalar(c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[j].len() <= e {
                    let next = self.mul(powers[j].last().expect("nonempty"), &images[j]);
                    powers[j].push(next);
                }
                if e > 0 {
                    t = self.mul(&t, &powers[j][e]);
                }
            }
            out = self.add(&out, &t);
        }
        Ok(out)
    }

    /// `A / (span of the given monomials and their multiples)`.
    pub fn quotient_by(&self, monomials: &[Monomial]) -> Result<NilpotentAlgebra, LiftingError> {
        let mut forbidden = self.forbidden.clone();
        forbidden.extend(monomials.iter().cloned());
        Ok(
            NilpotentAlgebra::new(self.field, self.ngens, forbidden)?
                .with_names(self.names.clone()),
        )
    }

    /// Moves an element between truncations of the same `k[e1..em]`,
    /// dropping monomials absent from the target.
    pub fn transfer(&self, a: &AlgebraElement, target: &NilpotentAlgebra) -> AlgebraElement {
        let mut out = target.zero();
        for (m, c) in self.basis.iter().zip(&a.coeffs) {
            if let Some(k) = target.index_of(m) {
                out.coeffs[k] = c.clone();
            }
        }
        out
    }
}

struct ElementDisplay<'a> {
    algebra: &'a NilpotentAlgebra,
    element: &'a AlgebraElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.algebra.to_polynomial(self.element);
        write!(f, "{}", p.display(&self.algebra.names))
    }
}

/// `u⁻¹·Σ nᵏ` for `a = u·(1 − n)` with `n` nilpotent.
pub fn invert_unit(
    alg: &NilpotentAlgebra,
    a: &AlgebraElement,
) -> Result<AlgebraElement, LiftingError> {
    let u_inv = a.constant_term().inv().ok_or(LiftingError::NotAUnit)?;
    let n = alg.sub(&alg.one(), &alg.scale(&u_inv, a));
    let mut sum = alg.one();
    let mut p = n.clone();
    while !p.is_zero() {
        sum = alg.add(&sum, &p);
        p = alg.mul(&p, &n);
    }
    Ok(alg.scale(&u_inv, &sum))
}

/// An ideal `Z` of a test algebra spanned by basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroData {
    pub algebra: NilpotentAlgebra,
    /// Indices into the algebra basis spanning `Z`, ascending.
    pub z_basis: Vec<usize>,
}

impl SquareZeroData {
    pub fn new(algebra: NilpotentAlgebra, mut z_basis: Vec<usize>) -> Result<Self, LiftingError> {
        z_basis.sort_unstable();
        z_basis.dedup();
        if z_basis.iter().any(|&k| k >= algebra.dim()) {
            return Err(LiftingError::NotInBasis);
        }
        Ok(SquareZeroData { algebra, z_basis })
    }

    pub fn from_monomials(
        algebra: NilpotentAlgebra,
        monomials: &[Monomial],
    ) -> Result<Self, LiftingError> {
        let idx = monomials
            .iter()
            .map(|m| algebra.index_of(m).ok_or(LiftingError::NotInBasis))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra, idx)
    }

    pub fn z_monomials(&self) -> Vec<Monomial> {
        self.z_basis
            .iter()
            .map(|&k| self.algebra.basis[k].clone())
            .collect()
    }

    /// Whether `a` lies in `Z`.
    pub fn contains(&self, a: &AlgebraElement) -> bool {
        a.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || self.z_basis.binary_search(&k).is_ok())
    }

    pub fn quotient(&self) -> Result<NilpotentAlgebra, LiftingError> {
        self.algebra.quotient_by(&self.z_monomials())
    }
}

/// `Z` is an ideal and `Z·Z = 0`, read off the multiplication table.
pub fn check_square_zero(data: &SquareZeroData) -> bool {
    let alg = &data.algebra;
    let in_z = |k: usize| data.z_basis.binary_search(&k).is_ok();
    data.z_basis.iter().all(|&z| {
        (0..alg.dim()).all(|b| alg.product_index(z, b).map_or(true, in_z))
            && data
                .z_basis
                .iter()
                .all(|&w| alg.product_index(z, w).is_none())
    })
}

/// Images of the source variables in some test algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    pub images: Vec<AlgebraElement>,
}

/// Every relator maps to zero in `alg` under `hom`.
pub fn verify_hom(
    pres: &Presentation,
    alg: &NilpotentAlgebra,
    hom: &AlgebraHom,
) -> Result<bool, LiftingError> {
    Ok(first_nonvanishing(pres, alg, &hom.images)?.is_none())
}

fn first_nonvanishing(
    pres: &Presentation,
    alg: &NilpotentAlgebra,
    images: &[AlgebraElement],
) -> Result<Option<usize>, LiftingError> {
    if images.len() != pres.nvars() {
        return Err(PolyError::ArityMismatch {
            expected: pres.nvars(),
            found: images.len(),
        }
        .into());
    }
    for (i, f) in pres.relators().iter().enumerate() {
        if !alg.eval_poly(f, images)?.is_zero() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Lifts `hom: S → A/Z` to `S → A`. The first `c` variables are solved
/// for; variable `j ≥ c` receives the correction `free[j − c]` (default
/// zero), which must lie in `Z`.
pub fn lift_hom(
    pres: &Presentation,
    data: &SquareZeroData,
    hom: &AlgebraHom,
    free: Option<&[AlgebraElement]>,
) -> Result<AlgebraHom, LiftingError> {
    if !is_standard_smooth(pres)? {
        return Err(LiftingError::NotStandardSmooth);
    }
    lift_unchecked(pres, data, hom, free)
}

fn lift_unchecked(
    pres: &Presentation,
    data: &SquareZeroData,
    hom: &AlgebraHom,
    free: Option<&[AlgebraElement]>,
) -> Result<AlgebraHom, LiftingError> {
    if !check_square_zero(data) {
        return Err(LiftingError::NotSquareZero);
    }
    let alg = &data.algebra;
    let quot = data.quotient()?;
    if let Some(i) = first_nonvanishing(pres, &quot, &hom.images)? {
        return Err(LiftingError::InvalidHom(i));
    }
    let (c, n) = (pres.nrelators(), pres.nvars());
    let mut base: Vec<AlgebraElement> = hom.images.iter().map(|a| quot.transfer(a, alg)).collect();
    if let Some(free) = free {
        if free.len() != n - c {
            return Err(PolyError::ArityMismatch {
                expected: n - c,
                found: free.len(),
            }
            .into());
        }
        for (k, z) in free.iter().enumerate() {
            if z.coeffs.len() != alg.dim() || !data.contains(z) {
                return Err(LiftingError::FreeCorrectionNotInIdeal(c + k));
            }
            base[c + k] = alg.add(&base[c + k], z);
        }
    }
    // Z² = 0 makes f(a + z) = f(a) + J(a)·z exact
    let rhs: Vec<AlgebraElement> = pres
        .relators()
        .iter()
        .map(|f| alg.eval_poly(f, &base).map(|v| alg.neg(&v)))
        .collect::<Result<_, _>>()?;
    let mut jac = Vec::with_capacity(c);
    for f in pres.relators() {
        let mut row = Vec::with_capacity(c);
        for j in 0..c {
            row.push(alg.eval_poly(&f.partial_derivative(j)?, &base)?);
        }
        jac.push(row);
    }
    let det = det_over(alg, &jac);
    let det_inv = invert_unit(alg, &det).map_err(|_| LiftingError::SingularSystem)?;
    let adj = adjugate(alg, &jac);
    let mut images = base;
    for j in 0..c {
        let mut zj = alg.zero();
        for (i, b) in rhs.iter().enumerate() {
            zj = alg.add(&zj, &alg.mul(&adj[j][i], b));
        }
        let zj = alg.mul(&det_inv, &zj);
        images[j] = alg.add(&images[j], &zj);
    }
    let out = AlgebraHom { images };
    if !verify_hom(pres, alg, &out)? {
        return Err(LiftingError::SingularSystem);
    }
    Ok(out)
}

fn det_over(alg: &NilpotentAlgebra, m: &[Vec<AlgebraElement>]) -> AlgebraElement {
    match m.len() {
        0 => alg.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = alg.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = alg.mul(&m[0][j], &det_over(alg, &minor(m, 0, j)));
                acc = if j % 2 == 0 {
                    alg.add(&acc, &t)
                } else {
                    alg.sub(&acc, &t)
                };
            }
            acc
        }
    }
}

fn minor(m: &[Vec<AlgebraElement>], r: usize, c: usize) -> Vec<Vec<AlgebraElement>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect()
}

/// `adj[j][i] = (−1)^{i+j} det(minor(i, j))`.
fn adjugate(alg: &NilpotentAlgebra, m: &[Vec<AlgebraElement>]) -> Vec<Vec<AlgebraElement>> {
    let n = m.len();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let d = det_over(alg, &minor(m, i, j));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        alg.neg(&d)
                    }
                })
                .collect()
        })
        .collect()
}

/// The filtration `m ⊃ m² ⊃ … ⊃ 0` of `A` by degree, as a chain of ideals
/// given by basis indices. Each step is square-zero relative to the next.
pub fn degree_filtration(alg: &NilpotentAlgebra) -> Vec<Vec<usize>> {
    let top = alg.basis.iter().map(Monomial::degree).max().unwrap_or(0);
    (1..=top + 1)
        .map(|d| {
            (0..alg.dim())
                .filter(|&k| alg.basis[k].degree() >= d)
                .collect()
        })
        .collect()
}

/// Lifts `hom: S → A/Z_1` along a decreasing chain `Z_1 ⊃ Z_2 ⊃ … ⊃ Z_r = 0`
/// with `Z_i² ⊆ Z_{i+1}`, one square-zero step at a time. When `free_targets`
/// is given, variable `j ≥ c` ends at `free_targets[j − c]`, which must
/// reduce to its starting image modulo `Z_1`.
pub fn lift_chain(
    pres: &Presentation,
    alg: &NilpotentAlgebra,
    chain: &[Vec<usize>],
    hom: &AlgebraHom,
    free_targets: Option<&[AlgebraElement]>,
) -> Result<AlgebraHom, LiftingError> {
    if !is_standard_smooth(pres)? {
        return Err(LiftingError::NotStandardSmooth);
    }
    let Some(first) = chain.first() else {
        return Err(LiftingError::InvalidChain);
    };
    if !chain.last().is_some_and(Vec::is_empty)
        || chain
            .windows(2)
            .any(|w| !w[1].iter().all(|k| w[0].contains(k)))
    {
        return Err(LiftingError::InvalidChain);
    }
    let monos = |ids: &[usize]| {
        ids.iter()
            .map(|&k| alg.basis[k].clone())
            .collect::<Vec<_>>()
    };
    let c = pres.nrelators();
    let mut current = alg.quotient_by(&monos(first))?;
    let mut images = hom.images.clone();
    for w in chain.windows(2) {
        let next = alg.quotient_by(&monos(&w[1]))?;
        let step_z: Vec<Monomial> = monos(&w[0])
            .into_iter()
            .filter(|m| next.index_of(m).is_some())
            .collect();
        let data = SquareZeroData::from_monomials(next.clone(), &step_z)?;
        let free = free_targets.map(|targets| {
            targets
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    next.sub(
                        &alg.transfer(t, &next),
                        &current.transfer(&images[c + k], &next),
                    )
                })
                .collect::<Vec<_>>()
        });
        let lifted = lift_unchecked(pres, &data, &AlgebraHom { images }, free.as_deref())?;
        images = lifted.images;
        current = next;
    }
    Ok(AlgebraHom { images })
}
