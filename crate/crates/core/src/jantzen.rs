//! The Jantzen sum formula
//! Σ_{i>0} ch Δ(λ)^i = Σ_{α∈Φ+} Σ_{0<mp<⟨λ+ρ,α∨⟩} ν_p(mp)·χ(s_{α,mp}·λ)
//! in the Euler-characteristic basis, and its rewrite in the simple-character
//! basis through a decomposition table.
//!
//! The (α, m) double loop is evaluated exactly as written; no case analysis
//! is applied to the terms. Every term is straightened into canonical form
//! and like terms are combined.

use std::collections::BTreeMap;

use crate::charalg::ChiSum;
use crate::decomp::DecompositionBranchSet;
use crate::error::{Result, WeylError};
use crate::rootsys::{RootSystem, Weight};
use crate::weylact::dot_reflect;

/// p-adic valuation of a positive integer.
pub fn nu_p(p: u64, n: i64) -> i64 {
    debug_assert!(n > 0);
    let p = p as i64;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Jantzen sum formula for Δ(λ) at the prime p, as a canonical χ-sum.
///
/// Terms are accumulated through χ(s_{α,mp}·λ) = −χ(λ − mpα); the dot-action
/// route is available as [`jsf_via_dot_action`] and the two must agree.
pub fn jsf(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<ChiSum> {
    jsf_inner(rs, lambda, p, false)
}

/// Same sum evaluated through the affine dot reflections themselves.
pub fn jsf_via_dot_action(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<ChiSum> {
    jsf_inner(rs, lambda, p, true)
}

fn jsf_inner(rs: &RootSystem, lambda: &Weight, p: u64, via_dot: bool) -> Result<ChiSum> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let rho = rs.rho();
    let lam_rho = lambda.checked_add(&rho)?;
    let mut sum = ChiSum::new(rs.id());
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let ceiling = rs.pairing_root(lam_rho.coords(), idx);
        let alpha = rs.weight(&root.omega)?;
        let mut m: i64 = 1;
        loop {
            let mp = m.checked_mul(p as i64).ok_or(WeylError::Overflow)?;
            if mp >= ceiling {
                break;
            }
            let val = nu_p(p, mp);
            if via_dot {
                let term = dot_reflect(rs, lambda, &alpha, m, p)?;
                sum.add_chi(rs, &term, val)?;
            } else {
                let term = lambda.checked_sub(&alpha.checked_scale(mp)?)?;
                sum.add_chi(rs, &term, -val)?;
            }
            m += 1;
        }
    }
    Ok(sum)
}

/// Rewrites the sum formula in the simple-character basis through the
/// decomposition tables of one branch set: χ(μ) = Σ_ν [Δ(μ):L(ν)] ch L(ν).
/// Returns one coefficient map per branch.
pub fn jsf_in_simple_basis(
    rs: &RootSystem,
    lambda: &Weight,
    p: u64,
    ctx: &DecompositionBranchSet,
) -> Result<Vec<BTreeMap<Weight, i64>>> {
    let sum = jsf(rs, lambda, p)?;
    let mut out = Vec::with_capacity(ctx.branches.len());
    for branch in &ctx.branches {
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (mu, c) in sum.terms() {
            let table = branch.table_of(mu).ok_or_else(|| {
                WeylError::MissingDecompositionData(format!("{} at p={}", mu, p))
            })?;
            for (nu, mult) in table {
                let e = acc.entry(nu.clone()).or_insert(0);
                *e = c
                    .checked_mul(*mult)
                    .and_then(|cv| e.checked_add(cv))
                    .ok_or(WeylError::Overflow)?;
            }
        }
        acc.retain(|_, v| *v != 0);
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn low_alcove_is_empty() {
        let a1 = RootSystem::get(Family::A, 1).unwrap();
        assert!(jsf(&a1, &a1.zero_weight(), 2).unwrap().is_empty());
        let c3 = RootSystem::get(Family::C, 3).unwrap();
        for coords in [[0, 0, 0], [0, 0, 2]] {
            let lam = c3.weight(&coords).unwrap();
            assert!(jsf(&c3, &lam, 3).unwrap().is_empty(), "λ = {lam}");
        }
    }

    #[test]
    fn c3_first_rows() {
        let c3 = RootSystem::get(Family::C, 3).unwrap();
        let lam = c3.weight(&[1, 0, 1]).unwrap();
        let sum = jsf(&c3, &lam, 3).unwrap();
        let expect: Vec<(Vec<i64>, i64)> = vec![(vec![0, 1, 0], 1), (vec![0, 0, 0], -1)];
        let got: Vec<(Vec<i64>, i64)> = sum
            .terms_canonical(&c3)
            .into_iter()
            .map(|(w, v)| (w.coords().to_vec(), v))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn both_routes_agree() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        for coords in [[0, 2, 0], [1, 1, 1], [2, 1, 2], [1, 2, 0]] {
            let lam = b3.weight(&coords).unwrap();
            assert_eq!(
                jsf(&b3, &lam, 2).unwrap(),
                jsf_via_dot_action(&b3, &lam, 2).unwrap()
            );
        }
    }
}
