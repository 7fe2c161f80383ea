//! Decomposition-number solver.
//!
//! For a dominant λ the solver walks the linkage class below λ bottom-up and
//! determines each table [Δ(μ):L(ν)] from the Jantzen sum formula rewritten
//! in the simple-character basis:
//!
//! * the sum-formula coefficient s_ν bounds the multiplicity,
//!   1 ≤ [Δ(μ):L(ν)] ≤ s_ν, and s_ν = 0 forces the entry to vanish;
//! * for non-restricted μ the simple character is the Steinberg product of
//!   its split parts, which pins the whole table by unitriangular
//!   subtraction;
//! * simple characters recorded in the literature fixture table pin a table
//!   the same way;
//! * every surviving candidate must leave χ(μ) − Σ m_ν·ch L(ν) a genuine
//!   character: nonnegative everywhere with coefficient 1 at μ.
//!
//! Where the constraints do not single out one table, the solver keeps every
//! consistent assignment as a separate branch rather than guessing.

use std::collections::BTreeMap;

use crate::charalg::{frobenius_twist, nabla_character, tensor, weyl_dimension, VirtualCharacter};
use crate::error::{Result, WeylError};
use crate::fixtures;
use crate::jantzen::jsf;
use crate::rootsys::{RootSystem, SystemId, Weight};
use crate::weylact::orbit_coords;

/// Hard cap on surviving branches (distinct tables for the requested λ).
pub const BRANCH_CAP: usize = 64;
/// Guard on in-flight joint states across the window.
const STATE_GUARD: usize = 4096;
/// Guard on the raw assignment enumeration for one weight.
const ASSIGNMENT_GUARD: i128 = 100_000;

/// One consistent assignment of decomposition tables and simple characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompBranch {
    /// [Δ(λ):L(μ)] for the requested λ, including the entry at λ itself.
    pub table: BTreeMap<Weight, i64>,
    /// Provenance for every entry that was not forced outright.
    pub constraints: Vec<String>,
    tables: BTreeMap<Weight, BTreeMap<Weight, i64>>,
    simples: BTreeMap<Weight, VirtualCharacter>,
}

impl DecompBranch {
    /// Weight-form simple character of μ in this branch.
    pub fn simple(&self, mu: &Weight) -> Result<&VirtualCharacter> {
        self.simples
            .get(mu)
            .ok_or_else(|| WeylError::MissingDecompositionData(mu.to_string()))
    }

    /// Full decomposition row of Δ(μ), if μ was solved along the way.
    pub fn table_of(&self, mu: &Weight) -> Option<&BTreeMap<Weight, i64>> {
        self.tables.get(mu)
    }

    pub fn solved_weights(&self) -> impl Iterator<Item = &Weight> {
        self.simples.keys()
    }
}

/// The branch set for one (system, p, λ).
#[derive(Debug, Clone)]
pub struct DecompositionBranchSet {
    pub system: SystemId,
    pub p: u64,
    pub lambda: Weight,
    pub branches: Vec<DecompBranch>,
}

impl DecompositionBranchSet {
    /// Projection of the branch set onto one table entry.
    pub fn entry_values(&self, mu: &Weight) -> Vec<i64> {
        let mut vals: Vec<i64> = self
            .branches
            .iter()
            .map(|b| b.table.get(mu).copied().unwrap_or(0))
            .collect();
        vals.sort_unstable();
        vals.dedup();
        vals
    }
}

/// Unique decomposition λ = λ0 + p^r λ1 with λ0 restricted.
pub fn steinberg_split(rs: &RootSystem, lambda: &Weight, p: u64, r: u32) -> Result<(Weight, Weight)> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let q = (p as i64).checked_pow(r).ok_or(WeylError::Overflow)?;
    let mut c0 = Vec::with_capacity(lambda.rank());
    let mut c1 = Vec::with_capacity(lambda.rank());
    for &c in lambda.coords() {
        c0.push(c % q);
        c1.push(c / q);
    }
    Ok((Weight::new(rs.id(), c0), Weight::new(rs.id(), c1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct State {
    tables: BTreeMap<Weight, BTreeMap<Weight, i64>>,
    simples: BTreeMap<Weight, VirtualCharacter>,
    notes: Vec<String>,
}

impl State {
    fn new() -> State {
        State {
            tables: BTreeMap::new(),
            simples: BTreeMap::new(),
            notes: Vec::new(),
        }
    }
}

/// Computes the branch set of decomposition tables for Δ(λ) at p.
pub fn solve_decomposition(
    rs: &RootSystem,
    lambda: &Weight,
    p: u64,
) -> Result<DecompositionBranchSet> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let mut states = vec![State::new()];
    ensure_weight(rs, p, lambda, &mut states)?;

    // Branches are the distinct tables for λ; states that agree on the table
    // but differ in sub-window entries collapse to one representative.
    let mut branches: Vec<DecompBranch> = Vec::new();
    let mut shared: Vec<usize> = Vec::new();
    for st in states {
        let table = st.tables.get(lambda).expect("target solved").clone();
        if let Some(pos) = branches.iter().position(|b| b.table == table) {
            shared[pos] += 1;
            continue;
        }
        branches.push(DecompBranch {
            table,
            constraints: st.notes.clone(),
            tables: st.tables,
            simples: st.simples,
        });
        shared.push(1);
    }
    for (b, n) in branches.iter_mut().zip(&shared) {
        if *n > 1 {
            b.constraints.push(format!(
                "{n} consistent sub-window assignments share this table; one representative context retained"
            ));
        }
    }
    if branches.len() > BRANCH_CAP {
        return Err(WeylError::BranchExplosion(BRANCH_CAP));
    }
    debug_assert!(!branches.is_empty());
    for b in &branches {
        check_branch_invariants(rs, lambda, b)?;
    }
    Ok(DecompositionBranchSet {
        system: rs.id(),
        p,
        lambda: lambda.clone(),
        branches,
    })
}

fn check_branch_invariants(rs: &RootSystem, lambda: &Weight, b: &DecompBranch) -> Result<()> {
    assert_eq!(b.table.get(lambda), Some(&1), "unitriangular at the top");
    let mut total: i128 = 0;
    for (mu, m) in &b.table {
        assert!(*m >= 0);
        assert!(mu.is_dominant());
        let lchar = b.simple(mu)?;
        assert_eq!(lchar.coeff(mu), 1, "simple character normalised at {mu}");
        assert!(lchar.is_effective(), "simple character nonnegative at {mu}");
        total += (*m as i128) * (lchar.dimension(rs)? as i128);
    }
    assert_eq!(
        total,
        weyl_dimension(rs, lambda)? as i128,
        "dimension identity for Δ({lambda})"
    );
    Ok(())
}

/// Dominant weights ≤ top in its linkage class, ascending canonical order.
fn linkage_window(rs: &RootSystem, p: u64, top: &Weight) -> Result<Vec<Weight>> {
    let rho = rs.rho();
    let shifted = top.checked_add(&rho)?;
    let orbit = orbit_coords(rs, shifted.coords())?;
    let p_i = p as i64;
    let mut out: Vec<Weight> = Vec::new();
    for mu in rs.dominant_weights_below(top)? {
        let mu_rho = mu.checked_add(&rho)?;
        let linked = orbit.iter().any(|v| {
            let diff: Vec<i64> = mu_rho.coords().iter().zip(v).map(|(a, b)| a - b).collect();
            match rs.root_coords_exact(&diff) {
                Some(rc) => rc.iter().all(|x| x % p_i == 0),
                None => false,
            }
        });
        if linked {
            out.push(mu);
        }
    }
    out.reverse(); // dominant_weights_below is descending; we solve bottom-up
    Ok(out)
}

/// Ensures every state has solved μ (and therefore its whole window).
fn ensure_weight(rs: &RootSystem, p: u64, mu: &Weight, states: &mut Vec<State>) -> Result<()> {
    if states.iter().all(|st| st.simples.contains_key(mu)) {
        return Ok(());
    }
    let window = linkage_window(rs, p, mu)?;
    for nu in &window {
        let mut next: Vec<State> = Vec::new();
        for st in states.drain(..) {
            if st.simples.contains_key(nu) {
                next.push(st);
            } else {
                next.extend(solve_one(rs, p, nu, st)?);
            }
            if next.len() > STATE_GUARD {
                return Err(WeylError::BranchExplosion(STATE_GUARD));
            }
        }
        dedupe_states(&mut next);
        if next.is_empty() {
            return Err(WeylError::InconsistentDecomposition(nu.to_string()));
        }
        *states = next;
    }
    Ok(())
}

fn dedupe_states(states: &mut Vec<State>) {
    let mut seen: Vec<(BTreeMap<Weight, BTreeMap<Weight, i64>>, BTreeMap<Weight, VirtualCharacter>)> =
        Vec::new();
    states.retain(|st| {
        let key = (st.tables.clone(), st.simples.clone());
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
}

fn solve_one(rs: &RootSystem, p: u64, nu: &Weight, st: State) -> Result<Vec<State>> {
    // Steinberg prerequisites first; they may live in other linkage classes.
    let restricted = rs.is_restricted(nu, p, 1)?;
    let mut pre = vec![st];
    let split = if restricted {
        None
    } else {
        let (n0, n1) = steinberg_split(rs, nu, p, 1)?;
        ensure_weight(rs, p, &n0, &mut pre)?;
        ensure_weight(rs, p, &n1, &mut pre)?;
        Some((n0, n1))
    };
    let mut out = Vec::new();
    for st in pre {
        out.extend(finish_weight(rs, p, nu, st, &split)?);
    }
    Ok(out)
}

/// Sum-formula coefficients s_ν for Δ(μ) in the simple basis of a state.
fn sum_formula_simple(
    rs: &RootSystem,
    p: u64,
    mu: &Weight,
    st: &State,
) -> Result<Option<BTreeMap<Weight, i64>>> {
    let sum = jsf(rs, mu, p)?;
    let mut s: BTreeMap<Weight, i64> = BTreeMap::new();
    for (w, c) in sum.terms() {
        let table = st
            .tables
            .get(w)
            .ok_or_else(|| WeylError::MissingDecompositionData(w.to_string()))?;
        for (u, m) in table {
            let e = s.entry(u.clone()).or_insert(0);
            *e = c
                .checked_mul(*m)
                .and_then(|cv| e.checked_add(cv))
                .ok_or(WeylError::Overflow)?;
        }
    }
    s.retain(|_, v| *v != 0);
    if s.values().any(|&v| v < 0) {
        // the sum of Jantzen-layer characters must itself be a character
        return Ok(None);
    }
    Ok(Some(s))
}

/// The special isogeny pairs where Premet's weight-set theorem fails.
fn is_special_pair(family: crate::rootsys::Family, p: u64) -> bool {
    use crate::rootsys::Family::*;
    matches!((family, p), (B, 2) | (C, 2) | (F, 2) | (G, 3))
}

fn finish_weight(
    rs: &RootSystem,
    p: u64,
    nu: &Weight,
    mut st: State,
    split: &Option<(Weight, Weight)>,
) -> Result<Vec<State>> {
    let s = match sum_formula_simple(rs, p, nu, &st)? {
        Some(s) => s,
        None => return Ok(Vec::new()),
    };
    let chi_nu = nabla_character(rs, nu)?;
    // Premet: for restricted ν away from the special pairs, L(ν) has the
    // same weight set as ∇(ν), so every dominant weight below ν must keep a
    // strictly positive multiplicity.
    let premet_floor: Option<Vec<Weight>> =
        if rs.is_restricted(nu, p, 1)? && !is_special_pair(rs.family(), p) {
            Some(rs.dominant_weights_below(nu)?)
        } else {
            None
        };
    let premet_ok = |cand: &VirtualCharacter| -> bool {
        match &premet_floor {
            Some(below) => below.iter().all(|m| cand.coeff(m) >= 1),
            None => true,
        }
    };

    let determined: Option<(VirtualCharacter, String)> =
        if let Some(fx) = fixtures::simple_character_fixture(rs, p, nu) {
            Some((fx.character, format!("ch L({nu}) from fixture: {}", fx.source)))
        } else if let Some((n0, n1)) = split {
            let l0 = st.simples.get(n0).expect("split part solved").clone();
            let l1 = st.simples.get(n1).expect("split part solved").clone();
            let lchar = tensor(rs, &l0, &frobenius_twist(&l1, p)?)?;
            Some((
                lchar,
                format!("ch L({nu}) = ch L({n0}) · ch L({n1})^({p}) by the Steinberg tensor identity"),
            ))
        } else {
            None
        };

    match determined {
        Some((lchar, why)) => {
            // unitriangular extraction of χ(ν) − ch L(ν) over known simples
            let mut residual = chi_nu.clone();
            residual.sub_assign_scaled(&lchar, 1)?;
            let mut m: BTreeMap<Weight, i64> = BTreeMap::new();
            while let Some(top) = residual.top(rs) {
                let c = residual.coeff(&top);
                if c < 0 {
                    return Ok(Vec::new());
                }
                let known = match st.simples.get(&top) {
                    Some(k) => k.clone(),
                    None => return Ok(Vec::new()),
                };
                residual.sub_assign_scaled(&known, c)?;
                m.insert(top, c);
            }
            if !bounds_ok(&m, &s) || !premet_ok(&lchar) {
                return Ok(Vec::new());
            }
            st.notes.push(why);
            commit(&mut st, nu, lchar, m);
            Ok(vec![st])
        }
        None => {
            let vars: Vec<(Weight, i64)> = s.iter().map(|(w, v)| (w.clone(), *v)).collect();
            let raw_count: i128 = vars.iter().map(|(_, v)| *v as i128).product();
            if raw_count > ASSIGNMENT_GUARD {
                return Err(WeylError::BranchExplosion(BRANCH_CAP));
            }
            let free: Vec<&(Weight, i64)> = vars.iter().filter(|(_, v)| *v > 1).collect();
            let mut out = Vec::new();
            let mut assignment: Vec<i64> = vars.iter().map(|_| 1).collect();
            loop {
                // candidate ch L(ν) under this assignment
                let mut cand = chi_nu.clone();
                let mut ok = true;
                for ((w, _), m) in vars.iter().zip(&assignment) {
                    let known = st.simples.get(w).expect("window prefix solved");
                    cand.sub_assign_scaled(known, *m)?;
                }
                if cand.coeff(nu) != 1 || !cand.is_effective() || !premet_ok(&cand) {
                    ok = false;
                }
                if ok {
                    let mut st2 = st.clone();
                    if !free.is_empty() {
                        for ((w, bound), m) in vars.iter().zip(&assignment) {
                            if *bound > 1 {
                                st2.notes.push(format!(
                                    "[Δ({nu}):L({w})] = {m} chosen from 1..={bound} (sum-formula bound)"
                                ));
                            }
                        }
                    }
                    let m: BTreeMap<Weight, i64> = vars
                        .iter()
                        .zip(&assignment)
                        .map(|((w, _), m)| (w.clone(), *m))
                        .collect();
                    commit(&mut st2, nu, cand, m);
                    out.push(st2);
                }
                // odometer over 1..=s_w
                let mut pos = 0;
                loop {
                    if pos == vars.len() {
                        return Ok(out);
                    }
                    if assignment[pos] < vars[pos].1 {
                        assignment[pos] += 1;
                        break;
                    }
                    assignment[pos] = 1;
                    pos += 1;
                }
            }
        }
    }
}

fn bounds_ok(m: &BTreeMap<Weight, i64>, s: &BTreeMap<Weight, i64>) -> bool {
    // 1 ≤ m_ν ≤ s_ν when s_ν ≥ 1, and m_ν = 0 when s_ν = 0
    for (w, mv) in m {
        let sv = s.get(w).copied().unwrap_or(0);
        if *mv > sv || (*mv == 0) != (sv == 0) {
            return false;
        }
    }
    for (w, sv) in s {
        if *sv >= 1 && m.get(w).copied().unwrap_or(0) == 0 {
            return false;
        }
    }
    true
}

fn commit(st: &mut State, nu: &Weight, lchar: VirtualCharacter, m: BTreeMap<Weight, i64>) {
    let mut table = m;
    table.retain(|_, v| *v != 0);
    table.insert(nu.clone(), 1);
    st.tables.insert(nu.clone(), table);
    st.simples.insert(nu.clone(), lchar);
}

/// Weight-form simple characters of λ across all branches, deduplicated.
pub fn simple_character(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<Vec<VirtualCharacter>> {
    let set = solve_decomposition(rs, lambda, p)?;
    let mut out: Vec<VirtualCharacter> = Vec::new();
    for b in &set.branches {
        let c = b.simple(lambda)?.clone();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Greedy unitriangular expansion of a weight-form character in the simple
/// basis supplied by `chars`. Coefficients may be negative for virtual
/// inputs.
pub fn to_simple_basis(
    rs: &RootSystem,
    c: &VirtualCharacter,
    chars: &dyn SimpleSource,
) -> Result<BTreeMap<Weight, i64>> {
    let mut residual = c.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = residual.top(rs) {
        let v = residual.coeff(&top);
        let known = chars.simple_character(rs, &top)?;
        residual.sub_assign_scaled(&known, v)?;
        out.insert(top, v);
    }
    Ok(out)
}

/// Source of branch-consistent simple characters.
pub trait SimpleSource {
    fn simple_character(&self, rs: &RootSystem, mu: &Weight) -> Result<VirtualCharacter>;
}

impl SimpleSource for DecompBranch {
    fn simple_character(&self, _rs: &RootSystem, mu: &Weight) -> Result<VirtualCharacter> {
        self.simple(mu).cloned()
    }
}

/// Solves on demand and insists the character is branch-independent.
pub struct AutoSolve {
    pub p: u64,
    cache: std::sync::Mutex<BTreeMap<Weight, VirtualCharacter>>,
}

impl AutoSolve {
    pub fn new(p: u64) -> AutoSolve {
        AutoSolve {
            p,
            cache: std::sync::Mutex::new(BTreeMap::new()),
        }
    }
}

impl SimpleSource for AutoSolve {
    fn simple_character(&self, rs: &RootSystem, mu: &Weight) -> Result<VirtualCharacter> {
        if let Some(c) = self.cache.lock().unwrap().get(mu) {
            return Ok(c.clone());
        }
        let chars = simple_character(rs, mu, self.p)?;
        if chars.len() != 1 {
            return Err(WeylError::MissingDecompositionData(format!(
                "{} has {} branch-distinct simple characters at p = {}",
                mu,
                chars.len(),
                self.p
            )));
        }
        let c = chars.into_iter().next().unwrap();
        self.cache.lock().unwrap().insert(mu.clone(), c.clone());
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn steinberg_split_examples() {
        let c3 = RootSystem::get(Family::C, 3).unwrap();
        let w = c3.weight(&[0, 3, 0]).unwrap();
        let (a, b) = steinberg_split(&c3, &w, 3, 1).unwrap();
        assert_eq!(a, c3.zero_weight());
        assert_eq!(b, c3.weight(&[0, 1, 0]).unwrap());

        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let w = b3.weight(&[0, 2, 0]).unwrap();
        let (a, b) = steinberg_split(&b3, &w, 2, 1).unwrap();
        assert_eq!(a, b3.zero_weight());
        assert_eq!(b, b3.weight(&[0, 1, 0]).unwrap());

        let r = b3.weight(&[1, 1, 1]).unwrap();
        let (a, b) = steinberg_split(&b3, &r, 2, 1).unwrap();
        assert_eq!(a, r);
        assert!(b.is_zero());
    }

    #[test]
    fn trivial_decomposition() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let set = solve_decomposition(&b3, &b3.zero_weight(), 2).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].table.len(), 1);
    }

    #[test]
    fn b3_nabla_omega2_three_factors() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let om2 = b3.fundamental_weight(1);
        let set = solve_decomposition(&b3, &om2, 2).unwrap();
        assert_eq!(set.branches.len(), 1);
        let t = &set.branches[0].table;
        assert_eq!(t.get(&om2), Some(&1));
        assert_eq!(t.get(&b3.fundamental_weight(0)), Some(&1));
        assert_eq!(t.get(&b3.zero_weight()), Some(&1));
        assert_eq!(t.len(), 3);
    }
}
