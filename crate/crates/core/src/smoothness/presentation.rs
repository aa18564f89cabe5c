use std::collections::HashSet;

use crate::groebner::IdealBasis;
use crate::poly::{FieldSpec, PolyRing, Polynomial};

use super::SmoothnessError;

/// `S = k[x1..xn]/(f1..fc)`. Zero relators are dropped on construction;
/// `n = 0` and `c = 0` are both allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: PolyRing,
    relators: Vec<Polynomial>,
    var_names: Vec<String>,
    name: Option<String>,
}

impl Presentation {
    pub fn new(
        field: FieldSpec,
        var_names: Vec<String>,
        relators: Vec<Polynomial>,
    ) -> Result<Self, SmoothnessError> {
        let ring = PolyRing::new(field, var_names.len());
        let mut seen = HashSet::new();
        for v in &var_names {
            if !seen.insert(v.as_str()) {
                return Err(SmoothnessError::DuplicateVariable(v.clone()));
            }
        }
        if relators.iter().any(|f| f.ring() != ring) {
            return Err(SmoothnessError::Poly(
                crate::poly::PolyError::AmbientMismatch,
            ));
        }
        let relators = relators.into_iter().filter(|f| !f.is_zero()).collect();
        Ok(Presentation {
            ring,
            relators,
            var_names,
            name: None,
        })
    }

    /// Presentation with default variable names `x1..xn`.
    pub fn anonymous(ring: PolyRing, relators: Vec<Polynomial>) -> Result<Self, SmoothnessError> {
        let names = (1..=ring.nvars).map(|i| format!("x{i}")).collect();
        Self::new(ring.field, names, relators)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    /// Number of variables `n`.
    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    /// Number of relators `c`.
    pub fn nrelators(&self) -> usize {
        self.relators.len()
    }

    pub fn relators(&self) -> &[Polynomial] {
        &self.relators
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// The defining ideal `I1 = (f1..fc)` of `P`.
    pub fn ideal(&self) -> IdealBasis {
        IdealBasis::new(self.ring, self.relators.clone()).expect("relators share the ambient")
    }

    /// Renumbers variables and relators: variable `i` moves to position
    /// `var_perm[i]`, relator `k` to position `rel_perm[k]`.
    pub fn permuted(
        &self,
        var_perm: &[usize],
        rel_perm: &[usize],
    ) -> Result<Self, SmoothnessError> {
        let n = self.nvars();
        let mut names = vec![String::new(); n];
        for (i, &p) in var_perm.iter().enumerate() {
            names[p] = self.var_names[i].clone();
        }
        let mut rels = vec![self.ring.zero(); self.relators.len()];
        for (k, &p) in rel_perm.iter().enumerate() {
            rels[p] = self.relators[k].rename(self.ring, var_perm)?;
        }
        let mut out = Presentation::new(self.field(), names, rels)?;
        out.name = self.name.clone();
        Ok(out)
    }
}
