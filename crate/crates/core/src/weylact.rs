//! Finite and affine Weyl-group actions: reflections, the dot action,
//! straightening with sign, orbits, −w0 and the linkage relation.
//!
//! Straightening walks μ+ρ into the dominant chamber by simple reflections,
//! flipping the sign once per reflection that moves the weight. A zero
//! pairing against a simple coroot anywhere on the walk means μ+ρ sits on a
//! reflection hyperplane and the Euler characteristic vanishes.

use crate::error::{Result, WeylError};
use crate::rootsys::{RootSystem, Weight, ORBIT_GUARD};
use std::collections::HashSet;

/// Result of straightening a weight under the dot action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightenResult {
    /// −1, 0 or +1.
    pub sign: i64,
    /// The dominant representative of the dot orbit; absent iff `sign == 0`.
    pub dominant: Option<Weight>,
}

/// Affine dot reflection `s_{α,mp}·λ = λ − (⟨λ+ρ, α∨⟩ − mp)·α`.
pub fn dot_reflect(rs: &RootSystem, lambda: &Weight, alpha: &Weight, m: i64, p: u64) -> Result<Weight> {
    rs.check_system(lambda)?;
    let idx = rs.root_index(alpha)?;
    let lam_rho = lambda.checked_add(&rs.rho())?;
    let level = rs.pairing_root(lam_rho.coords(), idx) - m * p as i64;
    lambda.checked_sub(&alpha.checked_scale(level)?)
}

/// Straightens μ under the dot action.
pub fn straighten(rs: &RootSystem, mu: &Weight) -> Result<StraightenResult> {
    rs.check_system(mu)?;
    let rho = rs.rho();
    let shifted = mu.checked_add(&rho)?;
    let mut v = shifted.coords().to_vec();
    let mut sign = 1i64;
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    loop {
        if v.iter().any(|&c| c == 0) {
            return Ok(StraightenResult { sign: 0, dominant: None });
        }
        // reflect at the most negative coordinate
        let mut worst: Option<usize> = None;
        for i in 0..n {
            if v[i] < 0 && worst.map_or(true, |w| v[i] < v[w]) {
                worst = Some(i);
            }
        }
        match worst {
            None => {
                let dom = Weight::new(rs.id(), v.clone());
                let dom = dom.checked_sub(&rho)?;
                return Ok(StraightenResult { sign, dominant: Some(dom) });
            }
            Some(i) => {
                let c = v[i];
                for (j, x) in v.iter_mut().enumerate() {
                    *x -= c * cartan[j][i];
                }
                sign = -sign;
            }
        }
    }
}

/// Dominant representative of the ordinary (non-dot) W-orbit.
pub fn dominant_representative(rs: &RootSystem, coords: &[i64]) -> Vec<i64> {
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    let mut v = coords.to_vec();
    loop {
        let mut moved = false;
        for i in 0..n {
            if v[i] < 0 {
                let c = v[i];
                for (j, x) in v.iter_mut().enumerate() {
                    *x -= c * cartan[j][i];
                }
                moved = true;
            }
        }
        if !moved {
            return v;
        }
    }
}

/// Full ordinary W-orbit of λ, without duplicates.
pub fn orbit(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    rs.check_system(lambda)?;
    let coords = orbit_coords(rs, lambda.coords())?;
    Ok(coords.into_iter().map(|c| Weight::new(rs.id(), c)).collect())
}

pub(crate) fn orbit_coords(rs: &RootSystem, start: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = vec![start.to_vec()];
    seen.insert(start.to_vec());
    let mut out = Vec::new();
    while let Some(v) = queue.pop() {
        out.push(v.clone());
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut w = v.clone();
            let c = w[i];
            for (j, x) in w.iter_mut().enumerate() {
                *x -= c * cartan[j][i];
            }
            if seen.insert(w.clone()) {
                if seen.len() > ORBIT_GUARD {
                    return Err(WeylError::OrbitTooLarge { guard: ORBIT_GUARD });
                }
                queue.push(w);
            }
        }
    }
    Ok(out)
}

/// Ordinary W-orbit of a regular weight together with the determinant
/// (−1)^{ℓ(w)} of the element producing each point. Requires trivial
/// stabiliser, i.e. no vanishing pairing against any positive root.
pub(crate) fn signed_orbit_regular(rs: &RootSystem, start: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<(Vec<i64>, i64)> = vec![(start.to_vec(), 1)];
    seen.insert(start.to_vec());
    let mut out = Vec::new();
    while let Some((v, sign)) = queue.pop() {
        out.push((v.clone(), sign));
        for i in 0..n {
            assert!(v[i] != 0, "signed orbit requires a regular start weight");
            let mut w = v.clone();
            let c = w[i];
            for (j, x) in w.iter_mut().enumerate() {
                *x -= c * cartan[j][i];
            }
            if seen.insert(w.clone()) {
                if seen.len() > ORBIT_GUARD {
                    return Err(WeylError::OrbitTooLarge { guard: ORBIT_GUARD });
                }
                queue.push((w, -sign));
            }
        }
    }
    Ok(out)
}

/// −w0·λ for dominant λ; dominant and involutive.
pub fn minus_w0(rs: &RootSystem, lambda: &Weight) -> Result<Weight> {
    rs.check_system(lambda)?;
    if !lambda.is_dominant() {
        return Err(WeylError::NotDominant(lambda.to_string()));
    }
    let neg: Vec<i64> = lambda.coords().iter().map(|c| -c).collect();
    Ok(Weight::new(rs.id(), dominant_representative(rs, &neg)))
}

/// Linkage at the prime p: true iff μ lies in the orbit of λ under the
/// affine Weyl group generated by the reflections `s_{α,mp}`.
///
/// That group is W ⋉ pℤΦ, so the test is exact: some w ∈ W must satisfy
/// μ + ρ ≡ w(λ + ρ) modulo p times the root lattice.
pub fn is_linked(rs: &RootSystem, lambda: &Weight, mu: &Weight, p: u64) -> Result<bool> {
    rs.check_system(lambda)?;
    rs.check_system(mu)?;
    if lambda == mu {
        return Ok(true);
    }
    let rho = rs.rho();
    let a = lambda.checked_add(&rho)?;
    let b = mu.checked_add(&rho)?;
    let p = p as i64;
    for v in orbit_coords(rs, a.coords())? {
        let diff: Vec<i64> = b.coords().iter().zip(&v).map(|(x, y)| x - y).collect();
        if let Some(rc) = rs.root_coords_exact(&diff) {
            if rc.iter().all(|&x| x % p == 0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    #[test]
    fn dot_reflect_a1() {
        let a1 = RootSystem::get(Family::A, 1).unwrap();
        let lam = a1.weight(&[2]).unwrap();
        let alpha = a1.simple_root(0);
        // ⟨λ+ρ, α∨⟩ = 3, mp = 2: 2 − (3−2)·2 = 0
        let r = dot_reflect(&a1, &lam, &alpha, 1, 2).unwrap();
        assert_eq!(r, a1.zero_weight());
        // level zero fixes λ
        let fixed = dot_reflect(&a1, &lam, &alpha, 3, 1).unwrap();
        assert_eq!(fixed, lam);
    }

    #[test]
    fn straighten_cases() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let dom = b3.weight(&[1, 0, 2]).unwrap();
        let r = straighten(&b3, &dom).unwrap();
        assert_eq!(r.sign, 1);
        assert_eq!(r.dominant.unwrap(), dom);

        // ⟨μ, α∨⟩ = −1 lies on a wall
        let wall = b3.weight(&[-1, 1, 0]).unwrap();
        let r = straighten(&b3, &wall).unwrap();
        assert_eq!(r.sign, 0);
        assert!(r.dominant.is_none());

        // one finite dot reflection of a dominant weight picks up a −1
        let lam = b3.weight(&[0, 1, 0]).unwrap();
        let s = dot_reflect(&b3, &lam, &b3.simple_root(0), 0, 2).unwrap();
        let r = straighten(&b3, &s).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.dominant.unwrap(), lam);
    }

    #[test]
    fn orbit_sizes() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        assert_eq!(orbit(&b3, &b3.zero_weight()).unwrap().len(), 1);
        assert_eq!(orbit(&b3, &b3.fundamental_weight(0)).unwrap().len(), 6);
        assert_eq!(orbit(&b3, &b3.rho()).unwrap().len(), 48);
    }

    #[test]
    fn minus_w0_cases() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        for coords in [[1, 0, 2], [0, 1, 0], [3, 1, 1]] {
            let w = b3.weight(&coords).unwrap();
            assert_eq!(minus_w0(&b3, &w).unwrap(), w);
        }
        let a2 = RootSystem::get(Family::A, 2).unwrap();
        let w1 = a2.fundamental_weight(0);
        let w2 = a2.fundamental_weight(1);
        assert_eq!(minus_w0(&a2, &w1).unwrap(), w2);
        assert_eq!(minus_w0(&a2, &w2).unwrap(), w1);
        assert_eq!(minus_w0(&a2, &a2.zero_weight()).unwrap(), a2.zero_weight());
        let bad = a2.weight(&[-1, 0]).unwrap();
        assert!(matches!(minus_w0(&a2, &bad), Err(WeylError::NotDominant(_))));
    }

    #[test]
    fn linkage_examples() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let lam = b3.weight(&[0, 2, 0]).unwrap();
        assert!(is_linked(&b3, &lam, &lam, 2).unwrap());
        assert!(is_linked(&b3, &lam, &b3.zero_weight(), 2).unwrap());
        let d4 = RootSystem::get(Family::D, 4).unwrap();
        let om2 = d4.fundamental_weight(1);
        assert!(is_linked(&d4, &om2, &d4.zero_weight(), 2).unwrap());
    }
}
