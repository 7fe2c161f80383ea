//! Formal character algebra: Freudenthal multiplicities for induced-module
//! characters, Weyl dimensions, full orbit expansions, tensor products by
//! Brauer–Klimyk, Frobenius twists, Euler characteristics and baby-Verma
//! characters.
//!
//! A [`VirtualCharacter`] stores dominant weights only; the value at a
//! dominant μ is the full multiplicity of the μ weight space, and every
//! non-dominant weight inherits the value of its dominant W-representative.
//! Each character carries a form tag. Weight form is the common currency;
//! ∇-form and L-form hold coefficients in a module-character basis and mixing
//! forms in arithmetic is rejected.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Result, WeylError};
use crate::rootsys::{Family, RootSystem, SystemId, Weight, ORBIT_GUARD};
use crate::weylact::{dominant_representative, orbit_coords, straighten};

/// Interpretation of the coefficient map of a [`VirtualCharacter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Dominant-weight multiplicities of the underlying W-symmetric function.
    Weight,
    /// Coefficients in the basis of induced-module characters ch ∇(μ).
    Nabla,
    /// Coefficients in the basis of simple characters ch L(μ).
    Simple,
}

impl Form {
    fn name(self) -> &'static str {
        match self {
            Form::Weight => "weight",
            Form::Nabla => "nabla",
            Form::Simple => "simple",
        }
    }
}

/// Finitely supported integer combination over dominant weights, with a form
/// tag. See the module docs for the weight-form convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCharacter {
    sys: SystemId,
    form: Form,
    support: BTreeMap<Weight, i64>,
}

impl VirtualCharacter {
    pub fn zero(sys: SystemId, form: Form) -> VirtualCharacter {
        VirtualCharacter {
            sys,
            form,
            support: BTreeMap::new(),
        }
    }

    pub fn from_map(sys: SystemId, form: Form, support: BTreeMap<Weight, i64>) -> VirtualCharacter {
        let mut c = VirtualCharacter { sys, form, support };
        c.support.retain(|_, v| *v != 0);
        c
    }

    pub fn sys(&self) -> SystemId {
        self.sys
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn support(&self) -> &BTreeMap<Weight, i64> {
        &self.support
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.support.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn expect_form(&self, form: Form) -> Result<()> {
        if self.form != form {
            return Err(WeylError::FormMismatch {
                expected: form.name(),
                got: self.form.name(),
            });
        }
        Ok(())
    }

    fn expect_compatible(&self, other: &VirtualCharacter) -> Result<()> {
        if self.sys != other.sys {
            return Err(WeylError::SystemMismatch(
                self.sys.to_string(),
                other.sys.to_string(),
            ));
        }
        other.expect_form(self.form)
    }

    pub fn add_assign(&mut self, other: &VirtualCharacter) -> Result<()> {
        self.expect_compatible(other)?;
        for (w, v) in &other.support {
            let e = self.support.entry(w.clone()).or_insert(0);
            *e = e.checked_add(*v).ok_or(WeylError::Overflow)?;
            if *e == 0 {
                self.support.remove(w);
            }
        }
        Ok(())
    }

    pub fn sub_assign_scaled(&mut self, other: &VirtualCharacter, k: i64) -> Result<()> {
        self.expect_compatible(other)?;
        for (w, v) in &other.support {
            let e = self.support.entry(w.clone()).or_insert(0);
            *e = v
                .checked_mul(k)
                .and_then(|kv| e.checked_sub(kv))
                .ok_or(WeylError::Overflow)?;
            if *e == 0 {
                self.support.remove(w);
            }
        }
        Ok(())
    }

    /// All coefficients nonnegative: the character of an actual module.
    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&v| v >= 0)
    }

    /// Sum of full-orbit weight multiplicities (the dimension) for a
    /// weight-form character.
    pub fn dimension(&self, rs: &RootSystem) -> Result<i64> {
        self.expect_form(Form::Weight)?;
        let mut total: i128 = 0;
        for (w, v) in &self.support {
            let orbit_len = orbit_coords(rs, w.coords())?.len() as i128;
            total += orbit_len * (*v as i128);
        }
        i64::try_from(total).map_err(|_| WeylError::Overflow)
    }

    /// Support entries sorted by the canonical total order, top first.
    pub fn terms_canonical(&self, rs: &RootSystem) -> Vec<(Weight, i64)> {
        let mut terms: Vec<(Weight, i64)> = self
            .support
            .iter()
            .map(|(w, v)| (w.clone(), *v))
            .collect();
        terms.sort_by_key(|(w, _)| rs.canonical_key(w));
        terms
    }

    /// Canonically maximal support weight, if any.
    pub fn top(&self, rs: &RootSystem) -> Option<Weight> {
        rs.canonical_max(self.support.keys()).cloned()
    }
}

/// Finitely supported sum Σ cμ·χ(μ) over dominant weights in the
/// Euler-characteristic basis, kept in canonical normal form (every term
/// straightened, zero coefficients dropped).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChiSum {
    sys: Option<SystemId>,
    terms: BTreeMap<Weight, i64>,
}

impl ChiSum {
    pub fn new(sys: SystemId) -> ChiSum {
        ChiSum {
            sys: Some(sys),
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Adds c·χ(μ) for arbitrary μ, straightening first.
    pub fn add_chi(&mut self, rs: &RootSystem, mu: &Weight, c: i64) -> Result<()> {
        let st = straighten(rs, mu)?;
        if st.sign == 0 || c == 0 {
            return Ok(());
        }
        let dom = st.dominant.unwrap();
        let e = self.terms.entry(dom.clone()).or_insert(0);
        *e = c
            .checked_mul(st.sign)
            .and_then(|cv| e.checked_add(cv))
            .ok_or(WeylError::Overflow)?;
        if *e == 0 {
            self.terms.remove(&dom);
        }
        Ok(())
    }

    /// Terms sorted in the canonical order, top weight first.
    pub fn terms_canonical(&self, rs: &RootSystem) -> Vec<(Weight, i64)> {
        let mut terms: Vec<(Weight, i64)> = self.terms.iter().map(|(w, v)| (w.clone(), *v)).collect();
        terms.sort_by_key(|(w, _)| rs.canonical_key(w));
        terms
    }

    /// Weight-form character Σ cμ·ch ∇(μ).
    pub fn to_weight_form(&self, rs: &RootSystem) -> Result<VirtualCharacter> {
        let mut acc = VirtualCharacter::zero(rs.id(), Form::Weight);
        for (w, v) in &self.terms {
            let nab = nabla_character(rs, w)?;
            acc.sub_assign_scaled(&nab, -*v)?;
        }
        Ok(acc)
    }
}

/// χ(μ) as a one- or zero-term sum in the Euler-characteristic basis.
pub fn chi(rs: &RootSystem, mu: &Weight) -> Result<ChiSum> {
    let mut s = ChiSum::new(rs.id());
    s.add_chi(rs, mu, 1)?;
    Ok(s)
}

fn nabla_cache(
) -> &'static Mutex<HashMap<(SystemId, Vec<i64>), Arc<BTreeMap<Weight, i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(SystemId, Vec<i64>), Arc<BTreeMap<Weight, i64>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dominant weight multiplicities of the induced module ∇(λ), computed by
/// Freudenthal's recursion in exact integer arithmetic. Cached per
/// `(system, λ)`.
pub fn nabla_character(rs: &RootSystem, lambda: &Weight) -> Result<VirtualCharacter> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let key = (rs.id(), lambda.coords().to_vec());
    if let Some(m) = nabla_cache().lock().unwrap().get(&key) {
        return Ok(VirtualCharacter::from_map(rs.id(), Form::Weight, (**m).clone()));
    }
    let support = freudenthal(rs, lambda)?;
    let arc = Arc::new(support.clone());
    nabla_cache().lock().unwrap().insert(key, arc);
    Ok(VirtualCharacter::from_map(rs.id(), Form::Weight, support))
}

fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    let rho = rs.rho();
    let lam_rho = lambda.checked_add(&rho)?;
    let ht_lambda = rs.height_scaled(lambda);
    // descending: λ first, so everything above μ is known when μ is reached
    let window = rs.dominant_weights_below(lambda)?;
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut out = BTreeMap::new();
    mult.insert(lambda.coords().to_vec(), 1);
    out.insert(lambda.clone(), 1);

    let norm_lam = rs.form_scaled(lam_rho.coords(), lam_rho.coords());
    for mu in window.iter().skip(1) {
        let mu_rho = mu.checked_add(&rho)?;
        let denom = norm_lam - rs.form_scaled(mu_rho.coords(), mu_rho.coords());
        assert!(denom > 0);
        let mut num: i128 = 0;
        let ht_mu = rs.height_scaled(mu);
        for root in rs.positive_roots() {
            let ht_alpha = rs.height_scaled(&Weight::new(rs.id(), root.omega.clone()));
            let mut nu = mu.coords().to_vec();
            let mut ht_nu = ht_mu;
            loop {
                for (x, a) in nu.iter_mut().zip(&root.omega) {
                    *x += a;
                }
                ht_nu += ht_alpha;
                if ht_nu > ht_lambda {
                    break;
                }
                let dom = dominant_representative(rs, &nu);
                if let Some(&m) = mult.get(&dom) {
                    num += (m as i128) * rs.form_scaled(&nu, &root.omega);
                }
            }
        }
        let twice = num.checked_mul(2).ok_or(WeylError::Overflow)?;
        assert_eq!(twice % denom, 0, "Freudenthal division must be exact");
        let m = twice / denom;
        let m = i64::try_from(m).map_err(|_| WeylError::Overflow)?;
        if m != 0 {
            mult.insert(mu.coords().to_vec(), m);
            out.insert(mu.clone(), m);
        }
    }
    Ok(out)
}

/// Weyl dimension formula, exact.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<i64> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let rho = rs.rho();
    let lam_rho = lambda.checked_add(&rho)?;
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for (i, _) in rs.positive_roots().iter().enumerate() {
        num = num
            .checked_mul(rs.pairing_root(lam_rho.coords(), i) as i128)
            .ok_or(WeylError::Overflow)?;
        den = den
            .checked_mul(rs.pairing_root(rho.coords(), i) as i128)
            .ok_or(WeylError::Overflow)?;
        let g = gcd(num.unsigned_abs(), den.unsigned_abs());
        num /= g as i128;
        den /= g as i128;
    }
    assert_eq!(den, 1);
    i64::try_from(num).map_err(|_| WeylError::Overflow)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// Expands a weight-form character to the full multiset of weights.
pub fn full_weights(rs: &RootSystem, c: &VirtualCharacter) -> Result<BTreeMap<Weight, i64>> {
    c.expect_form(Form::Weight)?;
    rs_check(rs, c)?;
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    let mut total = 0usize;
    for (w, v) in c.support() {
        let orbit = orbit_coords(rs, w.coords())?;
        total += orbit.len();
        if total > ORBIT_GUARD {
            return Err(WeylError::OrbitTooLarge { guard: ORBIT_GUARD });
        }
        // orbits of distinct dominant weights are disjoint
        for coords in orbit {
            out.insert(Weight::new(rs.id(), coords), *v);
        }
    }
    Ok(out)
}

fn rs_check(rs: &RootSystem, c: &VirtualCharacter) -> Result<()> {
    if c.sys() != rs.id() {
        return Err(WeylError::SystemMismatch(
            rs.id().to_string(),
            c.sys().to_string(),
        ));
    }
    Ok(())
}

/// Rewrites a weight-form character in the χ-basis by greedy unitriangular
/// subtraction from the canonical-maximal support weight.
pub fn to_chi_basis(rs: &RootSystem, c: &VirtualCharacter) -> Result<ChiSum> {
    c.expect_form(Form::Weight)?;
    rs_check(rs, c)?;
    let mut residual = c.clone();
    let mut out = ChiSum::new(rs.id());
    while let Some(top) = residual.top(rs) {
        let v = residual.coeff(&top);
        out.add_chi(rs, &top, v)?;
        residual.sub_assign_scaled(&nabla_character(rs, &top)?, v)?;
    }
    Ok(out)
}

/// Character of the tensor product of two weight-form characters, by
/// Brauer–Klimyk: expand the smaller factor to full weights, shift the
/// χ-expansion of the other by each weight and straighten.
pub fn tensor(rs: &RootSystem, a: &VirtualCharacter, b: &VirtualCharacter) -> Result<VirtualCharacter> {
    a.expect_form(Form::Weight)?;
    b.expect_form(Form::Weight)?;
    rs_check(rs, a)?;
    rs_check(rs, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(VirtualCharacter::zero(rs.id(), Form::Weight));
    }
    let (expand, keep) = {
        let da = a.dimension(rs)?.unsigned_abs();
        let db = b.dimension(rs)?.unsigned_abs();
        if da <= db {
            (a, b)
        } else {
            (b, a)
        }
    };
    let chi_form = to_chi_basis(rs, keep)?;
    let expanded = full_weights(rs, expand)?;
    let mut acc = ChiSum::new(rs.id());
    for (mu, cmu) in chi_form.terms() {
        for (nu, m) in &expanded {
            let shifted = mu.checked_add(nu)?;
            let coeff = cmu.checked_mul(*m).ok_or(WeylError::Overflow)?;
            acc.add_chi(rs, &shifted, coeff)?;
        }
    }
    acc.to_weight_form(rs)
}

/// Scales every support weight by q = p^r; multiplicities unchanged.
pub fn frobenius_twist(c: &VirtualCharacter, q: u64) -> Result<VirtualCharacter> {
    c.expect_form(Form::Weight)?;
    let mut support = BTreeMap::new();
    for (w, v) in c.support() {
        support.insert(w.checked_scale(q as i64)?, *v);
    }
    Ok(VirtualCharacter::from_map(c.sys(), Form::Weight, support))
}

/// True iff μ+ρ has two ε-coordinates of equal absolute value (types B and C
/// only); a sufficient condition for χ(μ) = 0.
pub fn chi_vanishing_epsilon_test(rs: &RootSystem, mu: &Weight) -> Result<bool> {
    if !matches!(rs.family(), Family::B | Family::C) {
        return Err(WeylError::UnsupportedFamily {
            expected: "B, C",
            got: rs.family().to_string(),
        });
    }
    let shifted = mu.checked_add(&rs.rho())?;
    let eps = rs.omega_to_epsilon(&shifted)?;
    let n = eps.doubled.len();
    for i in 0..n {
        for j in i + 1..n {
            if eps.doubled[i].abs() == eps.doubled[j].abs() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Full weight multiset of the baby-Verma character
/// e(λ)·Π_{α>0}(1 + e(−α) + … + e(−(p^r−1)α)).
pub fn zprime_character(
    rs: &RootSystem,
    lambda: &Weight,
    p: u64,
    r: u32,
) -> Result<BTreeMap<Weight, i64>> {
    rs.check_system(lambda)?;
    let q = (p as i64).checked_pow(r).ok_or(WeylError::Overflow)?;
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    acc.insert(lambda.coords().to_vec(), 1);
    for root in rs.positive_roots() {
        if acc.len().saturating_mul(q as usize) > ORBIT_GUARD {
            return Err(WeylError::OrbitTooLarge { guard: ORBIT_GUARD });
        }
        let mut next: HashMap<Vec<i64>, i64> = HashMap::with_capacity(acc.len() * q as usize);
        for (w, m) in &acc {
            let mut shifted = w.clone();
            for k in 0..q {
                if k > 0 {
                    for (x, a) in shifted.iter_mut().zip(&root.omega) {
                        *x -= a;
                    }
                }
                let e = next.entry(shifted.clone()).or_insert(0);
                *e = e.checked_add(*m).ok_or(WeylError::Overflow)?;
            }
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .map(|(c, m)| (Weight::new(rs.id(), c), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> Arc<RootSystem> {
        RootSystem::get(Family::B, 3).unwrap()
    }

    #[test]
    fn nabla_small_cases() {
        let rs = b3();
        let c = nabla_character(&rs, &rs.zero_weight()).unwrap();
        assert_eq!(c.support().len(), 1);
        assert_eq!(c.coeff(&rs.zero_weight()), 1);

        let om1 = rs.fundamental_weight(0);
        let c = nabla_character(&rs, &om1).unwrap();
        assert_eq!(c.coeff(&om1), 1);
        assert_eq!(c.coeff(&rs.zero_weight()), 1);
        assert_eq!(c.support().len(), 2);
        assert_eq!(c.dimension(&rs).unwrap(), 7);
        assert_eq!(weyl_dimension(&rs, &om1).unwrap(), 7);

        let c3 = RootSystem::get(Family::C, 3).unwrap();
        let om2 = c3.fundamental_weight(1);
        let c = nabla_character(&c3, &om2).unwrap();
        assert!(c.coeff(&om2) == 1 && c.coeff(&c3.zero_weight()) > 0);
    }

    #[test]
    fn steinberg_dimension_identity() {
        let rs = b3();
        let st = rs.weight(&[1, 1, 1]).unwrap();
        assert_eq!(weyl_dimension(&rs, &st).unwrap(), 512); // 2^{|Φ+|}
    }

    #[test]
    fn full_weights_examples() {
        let rs = b3();
        let om1 = rs.fundamental_weight(0);
        let fw = full_weights(&rs, &nabla_character(&rs, &om1).unwrap()).unwrap();
        assert_eq!(fw.values().sum::<i64>(), 7);
        assert_eq!(fw.len(), 7);

        let a1 = RootSystem::get(Family::A, 1).unwrap();
        let c = nabla_character(&a1, &a1.weight(&[2]).unwrap()).unwrap();
        let fw = full_weights(&a1, &c).unwrap();
        assert_eq!(fw.len(), 3);
        assert!(fw.values().all(|&v| v == 1));
    }

    #[test]
    fn tensor_clebsch_gordan() {
        let a1 = RootSystem::get(Family::A, 1).unwrap();
        let v = nabla_character(&a1, &a1.weight(&[1]).unwrap()).unwrap();
        let t = tensor(&a1, &v, &v).unwrap();
        let mut expect = nabla_character(&a1, &a1.weight(&[2]).unwrap()).unwrap();
        expect
            .add_assign(&nabla_character(&a1, &a1.zero_weight()).unwrap())
            .unwrap();
        assert_eq!(t, expect);

        // tensoring with the trivial character is the identity
        let rs = b3();
        let c = nabla_character(&rs, &rs.weight(&[0, 1, 0]).unwrap()).unwrap();
        let triv = nabla_character(&rs, &rs.zero_weight()).unwrap();
        assert_eq!(tensor(&rs, &c, &triv).unwrap(), c);
    }

    #[test]
    fn twist_scales_support() {
        let rs = b3();
        let c = nabla_character(&rs, &rs.weight(&[0, 1, 0]).unwrap()).unwrap();
        let t = frobenius_twist(&c, 2).unwrap();
        assert_eq!(t.top(&rs).unwrap(), rs.weight(&[0, 2, 0]).unwrap());
        let dim = |x: &VirtualCharacter| x.dimension(&rs).unwrap();
        assert_eq!(dim(&c), dim(&t));
    }

    #[test]
    fn chi_straightening() {
        let rs = b3();
        let dom = rs.weight(&[0, 1, 0]).unwrap();
        let s = chi(&rs, &dom).unwrap();
        assert_eq!(s.coeff(&dom), 1);
        let wall = rs.weight(&[-1, 1, 0]).unwrap();
        assert!(chi(&rs, &wall).unwrap().is_empty());
    }

    #[test]
    fn epsilon_vanishing() {
        let rs = b3();
        // μ+ρ with ε-coordinates (3,3,1)
        let e = crate::rootsys::EpsilonCoords {
            sys: rs.id(),
            doubled: vec![6, 6, 2],
        };
        let shifted = rs.epsilon_to_omega(&e).unwrap();
        let mu = shifted.checked_sub(&rs.rho()).unwrap();
        assert!(chi_vanishing_epsilon_test(&rs, &mu).unwrap());
        assert!(chi(&rs, &mu).unwrap().is_empty());
        // μ+ρ = (4,3,1) does not vanish
        let e = crate::rootsys::EpsilonCoords {
            sys: rs.id(),
            doubled: vec![8, 6, 2],
        };
        let shifted = rs.epsilon_to_omega(&e).unwrap();
        let mu = shifted.checked_sub(&rs.rho()).unwrap();
        assert!(!chi_vanishing_epsilon_test(&rs, &mu).unwrap());
        assert!(!chi(&rs, &mu).unwrap().is_empty());
    }

    #[test]
    fn zprime_examples() {
        let a1 = RootSystem::get(Family::A, 1).unwrap();
        let om = a1.weight(&[1]).unwrap();
        let z = zprime_character(&a1, &om, 2, 1).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.get(&om), Some(&1));
        assert_eq!(z.get(&a1.weight(&[-1]).unwrap()), Some(&1));

        // ch Ẑ′_1((p−1)ρ) = ch St_1
        let rs = b3();
        let st = rs.weight(&[1, 1, 1]).unwrap();
        let z = zprime_character(&rs, &st, 2, 1).unwrap();
        assert_eq!(z.values().sum::<i64>(), 512);
        let nab = full_weights(&rs, &nabla_character(&rs, &st).unwrap()).unwrap();
        assert_eq!(z, nab);
    }
}
