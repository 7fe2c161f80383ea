//! Good-filtration and good-(p,r)-filtration certificates, Frobenius-kernel
//! Hom-character extraction, and candidate-weight window enumeration.
//!
//! The filtration test expands a weight-form character greedily from its
//! canonical-maximal support weight in a unitriangular basis (either ∇ or
//! ∇^{(p,r)}), so the coefficients are unique; a certificate is the list of
//! nonnegative coefficients and an obstruction is the first negative one.

use crate::charalg::{frobenius_twist, nabla_character, tensor, VirtualCharacter};
use crate::decomp::{steinberg_split, SimpleSource};
use crate::error::{Result, WeylError};
use crate::rootsys::{RootSystem, Weight};
use crate::weylact::is_linked;

/// Which unitriangular basis the filtration test expands against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationBasis {
    Nabla,
    NablaPr { p: u64, r: u32 },
}

/// Outcome of a filtration test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationOutcome {
    /// Basis factors (μ, multiplicity ≥ 1) in canonical order, top first;
    /// they reconstruct the input exactly.
    Certificate(Vec<(Weight, i64)>),
    /// First negative expansion coefficient under the canonical order.
    Obstruction { witness: Weight, coefficient: i64 },
}

impl FiltrationOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, FiltrationOutcome::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&[(Weight, i64)]> {
        match self {
            FiltrationOutcome::Certificate(c) => Some(c),
            _ => None,
        }
    }
}

/// Character of ∇^{(p,r)}(μ) = L(μ0) ⊗ ∇(μ1)^{(r)}.
pub fn nabla_pr_character(
    rs: &RootSystem,
    mu: &Weight,
    p: u64,
    r: u32,
    chars: &dyn SimpleSource,
) -> Result<VirtualCharacter> {
    let (m0, m1) = steinberg_split(rs, mu, p, r)?;
    let l0 = chars.simple_character(rs, &m0)?;
    let q = (p as u64)
        .checked_pow(r)
        .ok_or(WeylError::Overflow)?;
    let twisted = frobenius_twist(&nabla_character(rs, &m1)?, q)?;
    tensor(rs, &l0, &twisted)
}

/// Greedy unitriangular expansion of a weight-form character in the chosen
/// basis. `chars` is only consulted for the ∇^{(p,r)} basis.
pub fn good_filtration_test(
    rs: &RootSystem,
    c: &VirtualCharacter,
    basis: FiltrationBasis,
    chars: Option<&dyn SimpleSource>,
) -> Result<FiltrationOutcome> {
    c.expect_form(crate::charalg::Form::Weight)?;
    let mut residual = c.clone();
    let mut certificate = Vec::new();
    while let Some(top) = residual.top(rs) {
        let v = residual.coeff(&top);
        if v < 0 {
            return Ok(FiltrationOutcome::Obstruction {
                witness: top,
                coefficient: v,
            });
        }
        let basis_char = match basis {
            FiltrationBasis::Nabla => nabla_character(rs, &top)?,
            FiltrationBasis::NablaPr { p, r } => {
                let chars = chars.ok_or_else(|| {
                    WeylError::MissingDecompositionData(
                        "∇^{(p,r)} basis requires simple characters".into(),
                    )
                })?;
                nabla_pr_character(rs, &top, p, r, chars)?
            }
        };
        residual.sub_assign_scaled(&basis_char, v)?;
        certificate.push((top, v));
    }
    Ok(FiltrationOutcome::Certificate(certificate))
}

/// Untwisted character of Hom over the r-th Frobenius kernel from the
/// projective cover of σ into a module with the given composition factors:
/// Σ over factors μ with Steinberg split μ = σ + p^r μ1 of mult · ch L(μ1).
pub fn hom_character(
    rs: &RootSystem,
    factors: &[(Weight, i64)],
    sigma: &Weight,
    p: u64,
    r: u32,
    chars: &dyn SimpleSource,
) -> Result<VirtualCharacter> {
    if !rs.is_restricted(sigma, p, r)? {
        return Err(WeylError::NotRestricted(sigma.to_string()));
    }
    let mut acc = VirtualCharacter::zero(rs.id(), crate::charalg::Form::Weight);
    for (mu, mult) in factors {
        let (m0, m1) = steinberg_split(rs, mu, p, r)?;
        if &m0 == sigma {
            let l1 = chars.simple_character(rs, &m1)?;
            acc.sub_assign_scaled(&l1, -mult)?;
        }
    }
    Ok(acc)
}

/// All dominant γ with p·γ ≤ bound (and floor ≤ p·γ when a floor is given),
/// optionally filtered by linkage to a target, in canonical order, top
/// first.
pub fn candidate_gammas(
    rs: &RootSystem,
    p: u64,
    bound: &Weight,
    floor: Option<&Weight>,
    link_target: Option<&Weight>,
) -> Result<Vec<Weight>> {
    rs.check_system(bound)?;
    if !bound.is_dominant() {
        return Err(WeylError::NotDominant(bound.to_string()));
    }
    let p_i = p as i64;
    let mut out = Vec::new();
    for mu in rs.dominant_weights_below(bound)? {
        if !mu.coords().iter().all(|c| c % p_i == 0) {
            continue;
        }
        if let Some(f) = floor {
            if !rs.dominance_leq(f, &mu)? {
                continue;
            }
        }
        let gamma = Weight::new(rs.id(), mu.coords().iter().map(|c| c / p_i).collect());
        if let Some(t) = link_target {
            if !is_linked(rs, &gamma, t, p)? {
                continue;
            }
        }
        out.push(gamma);
    }
    Ok(out)
}

/// True iff λ + pω_i = μ + α_i and ⟨λ, α_i∨⟩ = 0.
pub fn second_method_predicate(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
    i: usize,
    p: u64,
) -> Result<bool> {
    rs.check_system(lambda)?;
    rs.check_system(mu)?;
    if i >= rs.rank() {
        return Err(WeylError::BadRank {
            expected: rs.rank(),
            got: i,
        });
    }
    if lambda.coords()[i] != 0 {
        return Ok(false);
    }
    let lhs = lambda.checked_add(&rs.fundamental_weight(i).checked_scale(p as i64)?)?;
    let rhs = mu.checked_add(&rs.simple_root(i))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn nabla_character_certifies_itself() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let lam = b3.weight(&[0, 2, 0]).unwrap();
        let c = nabla_character(&b3, &lam).unwrap();
        let out = good_filtration_test(&b3, &c, FiltrationBasis::Nabla, None).unwrap();
        assert_eq!(
            out,
            FiltrationOutcome::Certificate(vec![(lam, 1)])
        );
    }

    #[test]
    fn candidate_gammas_g2() {
        let g2 = RootSystem::get(Family::G, 2).unwrap();
        let bound = g2.weight(&[2, 1]).unwrap();
        let got = candidate_gammas(&g2, 2, &bound, None, None).unwrap();
        let mut coords: Vec<Vec<i64>> = got.iter().map(|w| w.coords().to_vec()).collect();
        coords.sort();
        assert_eq!(coords, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn candidate_gammas_bn_floor() {
        for n in [3usize, 4, 5] {
            let bn = RootSystem::get(Family::B, n).unwrap();
            let mut bound = vec![0i64; n];
            bound[0] = 2;
            bound[1] = 1;
            let bound = bn.weight(&bound).unwrap();
            let mut floor = vec![0i64; n];
            floor[0] = 2;
            let floor = bn.weight(&floor).unwrap();
            let got = candidate_gammas(&bn, 2, &bound, Some(&floor), None).unwrap();
            let mut coords: Vec<Vec<i64>> = got.iter().map(|w| w.coords().to_vec()).collect();
            coords.sort();
            let mut om1 = vec![0i64; n];
            om1[0] = 1;
            let mut om2 = vec![0i64; n];
            om2[1] = 1;
            assert_eq!(coords, vec![om2, om1]);
        }
    }

    #[test]
    fn second_method_examples() {
        for n in [3usize, 4, 5] {
            let bn = RootSystem::get(Family::B, n).unwrap();
            let rho = bn.rho();
            let om1 = bn.fundamental_weight(0);
            let om2 = bn.fundamental_weight(1);
            let lam = rho.checked_sub(&om1).unwrap().checked_sub(&om2).unwrap();
            let mu = rho.checked_sub(&om1).unwrap();
            assert!(second_method_predicate(&bn, &lam, &mu, 0, 2).unwrap());
            assert!(!second_method_predicate(&bn, &mu, &mu, 0, 2).unwrap());
            assert!(!second_method_predicate(&bn, &rho, &mu, 0, 2).unwrap());
        }
    }
}
