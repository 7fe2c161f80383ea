//! Independent reference implementations used by the test suite.
//!
//! Everything here recomputes a quantity along a different algebraic route
//! than the production code: weight multiplicities via the Weyl character
//! formula with a Kostant-partition count instead of Freudenthal, positive
//! roots via closure under all root reflections instead of simple ones, and
//! tensor products by direct weight convolution instead of Brauer–Klimyk.
//! Production paths must never call into this module.

use std::collections::{BTreeMap, HashMap};

use crate::charalg::{full_weights, Form, VirtualCharacter};
use crate::error::Result;
use crate::rootsys::{Family, RootSystem, Weight};
use crate::weylact::{dominant_representative, signed_orbit_regular};

/// Number of positive roots by brute-force closure of the simple roots under
/// reflections in every root found so far, working purely from the Cartan
/// matrix.
pub fn reflection_closure_positive_count(family: Family, rank: usize) -> Result<usize> {
    let rs = RootSystem::get(family, rank)?;
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    let d = rs.simple_root_lengths();

    // vectors in simple-root coordinates
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        })
        .collect();
    let form = |a: &[i64], b: &[i64]| -> i64 {
        let mut t = 0;
        for i in 0..n {
            for j in 0..n {
                t += a[i] * b[j] * d[j] * cartan[j][i];
            }
        }
        t
    };
    loop {
        let mut added = false;
        let snapshot = roots.clone();
        for beta in &snapshot {
            let bb = form(beta, beta);
            for gamma in &snapshot {
                // s_β(γ) = γ − 2(γ,β)/(β,β) β
                let c = 2 * form(gamma, beta) / bb;
                let refl: Vec<i64> = gamma
                    .iter()
                    .zip(beta)
                    .map(|(g, b)| g - c * b)
                    .collect();
                if !roots.contains(&refl) {
                    roots.push(refl);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    Ok(roots
        .iter()
        .filter(|v| v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0))
        .count())
}

/// Weight multiplicity of μ in ∇(λ) via the Weyl character formula:
/// Σ_{w∈W} (−1)^{ℓ(w)} P(w(λ+ρ) − (μ+ρ)), with P the Kostant partition
/// function evaluated by explicit enumeration.
pub fn kostant_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<i64> {
    let rho = rs.rho();
    let lam_rho = lambda.checked_add(&rho)?;
    let mu_rho = mu.checked_add(&rho)?;
    let roots: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| r.in_simple_roots.clone())
        .collect();
    let mut memo: HashMap<(usize, Vec<i64>), i64> = HashMap::new();
    let mut total: i64 = 0;
    for (v, sign) in signed_orbit_regular(rs, lam_rho.coords())? {
        let diff: Vec<i64> = v.iter().zip(mu_rho.coords()).map(|(a, b)| a - b).collect();
        if let Some(rc) = rs.root_coords_exact(&diff) {
            if rc.iter().all(|&x| x >= 0) {
                total += sign * partitions(&roots, &rc, roots.len(), &mut memo);
            }
        }
    }
    Ok(total)
}

/// Number of ways to write `target` (simple-root coordinates) as an
/// ℕ-combination of the first `k` positive roots.
fn partitions(
    roots: &[Vec<i64>],
    target: &[i64],
    k: usize,
    memo: &mut HashMap<(usize, Vec<i64>), i64>,
) -> i64 {
    if target.iter().all(|&x| x == 0) {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let key = (k, target.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut count = partitions(roots, target, k - 1, memo);
    let root = &roots[k - 1];
    let reduced: Vec<i64> = target.iter().zip(root).map(|(t, r)| t - r).collect();
    if reduced.iter().all(|&x| x >= 0) {
        count += partitions(roots, &reduced, k, memo);
    }
    memo.insert(key, count);
    count
}

/// Tensor-product character by direct convolution of full weight multisets.
pub fn tensor_direct(
    rs: &RootSystem,
    a: &VirtualCharacter,
    b: &VirtualCharacter,
) -> Result<VirtualCharacter> {
    let fa = full_weights(rs, a)?;
    let fb = full_weights(rs, b)?;
    let mut dominant: BTreeMap<Weight, i64> = BTreeMap::new();
    for (wa, ma) in &fa {
        for (wb, mb) in &fb {
            let sum = wa.checked_add(wb)?;
            if sum.is_dominant() {
                *dominant.entry(sum).or_insert(0) += ma * mb;
            }
        }
    }
    Ok(VirtualCharacter::from_map(rs.id(), Form::Weight, dominant))
}

/// All dominant weights of the system with scaled height at most
/// `max_height_scaled` (inclusive), by box enumeration over ω-coordinates.
pub fn dominant_weights_up_to_height(rs: &RootSystem, max_height_scaled: i64) -> Vec<Weight> {
    let n = rs.rank();
    // heights of fundamental weights are positive, so coordinates are bounded
    let fund_ht: Vec<i64> = (0..n)
        .map(|i| rs.height_scaled(&rs.fundamental_weight(i)))
        .collect();
    let bound: Vec<i64> = fund_ht.iter().map(|h| max_height_scaled / h).collect();
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    'outer: loop {
        let w = Weight::new(rs.id(), k.clone());
        if rs.height_scaled(&w) <= max_height_scaled {
            out.push(w);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break 'outer;
            }
            if k[pos] < bound[pos] {
                k[pos] += 1;
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
    out
}

/// Sanity helper: asserts that `mu` really is below `lambda` by solving the
/// simple-root coordinate system exactly.
pub fn verify_below(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    let diff = match lambda.checked_sub(mu) {
        Ok(d) => d,
        Err(_) => return false,
    };
    match rs.root_coords_exact(diff.coords()) {
        Some(rc) => rc.iter().all(|&x| x >= 0),
        None => false,
    }
}

/// Dominant representative exposed for tests.
pub fn dominant_rep(rs: &RootSystem, w: &Weight) -> Weight {
    Weight::new(rs.id(), dominant_representative(rs, w.coords()))
}
