//! Ideal membership by bounded-degree cofactor search: `f ∈ I` is certified
//! when `f = Σ h_i·g_i` with `deg(h_i·g_i) ≤ D`, a finite linear system.

use smoothlocus::poly::{Monomial, Polynomial};

use super::naive_rank;

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for _ in 0..d {
        let mut next = out.clone();
        for m in &out {
            for j in 0..n {
                let mut e = m.0.clone();
                e[j] += 1;
                next.push(Monomial(e));
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out.retain(|m| m.degree() <= d);
    out
}

fn coefficient_row(p: &Polynomial, support: &[Monomial]) -> Vec<smoothlocus::poly::Coefficient> {
    let field = p.field();
    let mut row = vec![field.zero(); support.len()];
    for (m, c) in p.terms() {
        let k = support
            .binary_search(m)
            .expect("degree bound covers the support");
        row[k] = c.clone();
    }
    row
}

/// Whether `f` has a representation in `gens` within total degree `d`.
pub fn certifies_membership(f: &Polynomial, gens: &[Polynomial], d: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    if f.total_degree().unwrap() > d {
        return false;
    }
    let n = f.nvars();
    let support = monomials_up_to(n, d);
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        if dg > d {
            continue;
        }
        for m in monomials_up_to(n, d - dg) {
            let shifted = g.mul_term(&m, &f.field().one());
            rows.push(coefficient_row(&shifted, &support));
        }
    }
    let base = naive_rank(&rows);
    rows.push(coefficient_row(f, &support));
    naive_rank(&rows) == base
}
