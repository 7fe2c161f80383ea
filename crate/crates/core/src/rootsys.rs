//! Root-system data for the finite families A–G: Cartan matrices, positive
//! roots with their coroots, fundamental-weight arithmetic, basis
//! conversions and dominance-order enumeration.
//!
//! Weights live in the fundamental-weight (ω) basis as integer vectors, so
//! dominance is simply coordinatewise nonnegativity and pairing against a
//! simple coroot reads off a coordinate. Roots are generated by reflection
//! closure from the Bourbaki Cartan matrix; each positive root carries its
//! expansion in simple roots and in simple coroots, which makes every
//! pairing ⟨λ, α∨⟩ an exact integer dot product.
//!
//! Types B, C and D additionally expose the ε-basis as a conversion view.
//! ε-coordinates of spin weights are half-integers, so the view stores
//! doubled values and all round trips stay exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeylError};

/// Hard cap on Weyl-orbit and product expansions. Full E8 orbits exceed it
/// and come back as an explicit error instead of exhausting memory.
pub const ORBIT_GUARD: usize = 10_000_000;

/// Simple-root family label, Bourbaki numbering throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Identity of a root system; two weights interoperate only when their
/// `SystemId`s agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemId {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl SystemId {
    /// Parses labels like `B3` or `e6`.
    pub fn parse(s: &str) -> Option<SystemId> {
        let mut chars = s.chars();
        let family = Family::from_letter(chars.next()?)?;
        let rank: usize = chars.as_str().parse().ok()?;
        Some(SystemId { family, rank })
    }
}

/// Integer weight in ω-coordinates, tagged with its root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    sys: SystemId,
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(sys: SystemId, coords: Vec<i64>) -> Weight {
        Weight { sys, coords }
    }

    pub fn sys(&self) -> SystemId {
        self.sys
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Dominance in the ω-basis is coordinatewise nonnegativity.
    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        self.same_system(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(WeylError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(self.sys, coords))
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        self.same_system(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b).ok_or(WeylError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(self.sys, coords))
    }

    pub fn checked_scale(&self, k: i64) -> Result<Weight> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(k).ok_or(WeylError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(self.sys, coords))
    }

    pub fn same_system(&self, other: &Weight) -> Result<()> {
        if self.sys != other.sys {
            return Err(WeylError::SystemMismatch(
                self.sys.to_string(),
                other.sys.to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// ε-basis view of a B/C/D weight; stores 2× the ε-coordinates so spin
/// weights stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCoords {
    pub sys: SystemId,
    pub doubled: Vec<i64>,
}

/// One positive root, carried in every basis the engine needs.
#[derive(Debug, Clone)]
pub struct Root {
    /// ω-coordinates.
    pub omega: Vec<i64>,
    /// Expansion in simple roots (nonnegative integers).
    pub in_simple_roots: Vec<i64>,
    /// Expansion of the coroot in simple coroots (nonnegative integers).
    pub coroot: Vec<i64>,
    /// Half the squared length, normalised so short roots have value 1.
    pub length2_half: i64,
    /// Sum of simple-root coefficients.
    pub height: i64,
}

/// Immutable root-system datum. Construct through [`RootSystem::get`], which
/// caches one instance per `(family, rank)`.
#[derive(Debug)]
pub struct RootSystem {
    id: SystemId,
    /// `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots (1 for short).
    d: Vec<i64>,
    det: i64,
    /// Adjugate of the Cartan matrix: `adj * cartan = det * I`.
    adj: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    root_lookup: HashMap<Vec<i64>, usize>,
    rho: Weight,
    highest_short: usize,
    coxeter_number: i64,
}

fn registry() -> &'static Mutex<HashMap<SystemId, Arc<RootSystem>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<SystemId, Arc<RootSystem>>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the cache) the root system of the given type.
pub fn build_root_system(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
    RootSystem::get(family, rank)
}

impl RootSystem {
    pub fn get(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
        let id = SystemId { family, rank };
        if let Some(rs) = registry().lock().unwrap().get(&id) {
            return Ok(rs.clone());
        }
        let built = Arc::new(RootSystem::build(family, rank)?);
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(id).or_insert(built).clone())
    }

    fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !valid {
            return Err(WeylError::InvalidFamilyRank {
                family: family.letter(),
                rank,
            });
        }
        let id = SystemId { family, rank };
        let (cartan, d) = cartan_and_lengths(family, rank);
        let (det, adj) = invert_scaled(&cartan);
        assert!(det > 0, "Cartan determinant must be positive");

        let mut rs = RootSystem {
            id,
            cartan,
            d,
            det,
            adj,
            positive_roots: Vec::new(),
            root_lookup: HashMap::new(),
            rho: Weight::new(id, vec![1; rank]),
            highest_short: 0,
            coxeter_number: 0,
        };
        rs.generate_roots();
        rs.coxeter_number = {
            let alpha0 = rs.positive_roots[rs.highest_short].coroot.clone();
            let rho = rs.rho.coords().to_vec();
            alpha0
                .iter()
                .zip(&rho)
                .map(|(c, r)| c * r)
                .sum::<i64>()
                + 1
        };
        Ok(rs)
    }

    /// Reflection closure of the simple roots; fills the positive-root table.
    fn generate_roots(&mut self) {
        let n = self.rank();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let alpha: Vec<i64> = (0..n).map(|j| self.cartan[j][i]).collect();
            if seen.insert(alpha.clone(), ()).is_none() {
                queue.push(alpha);
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..n {
                let w = self.simple_reflect_coords(&v, i);
                if seen.insert(w.clone(), ()).is_none() {
                    queue.push(w);
                }
            }
        }

        let mut roots = Vec::new();
        for omega in seen.keys() {
            if let Some(rc) = self.root_coords_exact(omega) {
                if rc.iter().all(|&x| x >= 0) && rc.iter().any(|&x| x > 0) {
                    let d_alpha = self.form_half(&rc);
                    let coroot: Vec<i64> = rc
                        .iter()
                        .enumerate()
                        .map(|(i, &k)| {
                            let num = k * self.d[i];
                            assert_eq!(num % d_alpha, 0, "coroot coefficients must be integral");
                            num / d_alpha
                        })
                        .collect();
                    roots.push(Root {
                        omega: omega.clone(),
                        height: rc.iter().sum(),
                        in_simple_roots: rc,
                        coroot,
                        length2_half: d_alpha,
                    });
                }
            }
        }
        roots.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then_with(|| a.in_simple_roots.cmp(&b.in_simple_roots))
        });
        for (idx, r) in roots.iter().enumerate() {
            self.root_lookup.insert(r.omega.clone(), idx);
        }

        // The highest short root is the unique short root of maximal height.
        let min_d = roots.iter().map(|r| r.length2_half).min().unwrap();
        let mut best: Option<usize> = None;
        for (idx, r) in roots.iter().enumerate() {
            if r.length2_half == min_d {
                match best {
                    None => best = Some(idx),
                    Some(b) => {
                        if r.height > roots[b].height {
                            best = Some(idx)
                        }
                    }
                }
            }
        }
        self.highest_short = best.unwrap();
        self.positive_roots = roots;
        assert!(
            self.positive_roots[self.highest_short]
                .omega
                .iter()
                .all(|&c| c >= 0),
            "highest short root must be dominant"
        );
    }

    /// `(α, α)/2` of a vector given in simple-root coordinates.
    fn form_half(&self, rc: &[i64]) -> i64 {
        // (α_i, α_j) = d_j * cartan[j][i]
        let n = self.rank();
        let mut total = 0i64;
        for i in 0..n {
            for j in 0..n {
                total += rc[i] * rc[j] * self.d[j] * self.cartan[j][i];
            }
        }
        assert_eq!(total % 2, 0);
        total / 2
    }

    fn simple_reflect_coords(&self, v: &[i64], i: usize) -> Vec<i64> {
        let c = v[i];
        v.iter()
            .enumerate()
            .map(|(j, &x)| x - c * self.cartan[j][i])
            .collect()
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn family(&self) -> Family {
        self.id.family
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Half squared lengths of the simple roots, short = 1.
    pub fn simple_root_lengths(&self) -> &[i64] {
        &self.d
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| self.simple_root(i)).collect()
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let coords = (0..self.rank()).map(|j| self.cartan[j][i]).collect();
        Weight::new(self.id, coords)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Weight::new(self.id, coords)
    }

    pub fn rho(&self) -> Weight {
        self.rho.clone()
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::new(self.id, vec![0; self.rank()])
    }

    pub fn weight(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.rank() {
            return Err(WeylError::BadRank {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(Weight::new(self.id, coords.to_vec()))
    }

    pub fn highest_short_root(&self) -> Weight {
        Weight::new(self.id, self.positive_roots[self.highest_short].omega.clone())
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn check_system(&self, w: &Weight) -> Result<()> {
        if w.sys() != self.id {
            return Err(WeylError::SystemMismatch(
                self.id.to_string(),
                w.sys().to_string(),
            ));
        }
        Ok(())
    }

    /// Index of a positive root given by its ω-coordinates.
    pub fn root_index(&self, alpha: &Weight) -> Result<usize> {
        self.check_system(alpha)?;
        self.root_lookup
            .get(alpha.coords())
            .copied()
            .ok_or_else(|| WeylError::NotAPositiveRoot(alpha.to_string()))
    }

    /// ⟨λ, α∨⟩ for a positive root α.
    pub fn pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<i64> {
        self.check_system(lambda)?;
        let idx = self.root_index(alpha)?;
        Ok(self.pairing_root(lambda.coords(), idx))
    }

    pub(crate) fn pairing_root(&self, coords: &[i64], root_idx: usize) -> i64 {
        self.positive_roots[root_idx]
            .coroot
            .iter()
            .zip(coords)
            .map(|(c, x)| c * x)
            .sum()
    }

    /// Simple-root coordinates of `v` if they are integral.
    pub fn root_coords_exact(&self, v: &[i64]) -> Option<Vec<i64>> {
        let scaled = self.mat_apply(&self.adj, v);
        let mut out = Vec::with_capacity(v.len());
        for s in scaled {
            if s % self.det != 0 {
                return None;
            }
            out.push(s / self.det);
        }
        Some(out)
    }

    /// det·(simple-root coordinates of v); always integral.
    pub fn root_coords_scaled(&self, v: &[i64]) -> Vec<i64> {
        self.mat_apply(&self.adj, v)
    }

    fn mat_apply(&self, m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Height of a weight in the simple-root basis, scaled by det(Cartan) so
    /// it stays integral. Refines dominance within a coset of the root
    /// lattice.
    pub fn height_scaled(&self, w: &Weight) -> i64 {
        self.root_coords_scaled(w.coords()).iter().sum()
    }

    /// Sort key for the canonical total order: descending scaled height,
    /// ties broken by ascending lexicographic ω-coordinates.
    pub fn canonical_key(&self, w: &Weight) -> (i64, Vec<i64>) {
        (-self.height_scaled(w), w.coords().to_vec())
    }

    pub fn sort_canonical(&self, ws: &mut [Weight]) {
        ws.sort_by_key(|w| self.canonical_key(w));
    }

    /// Maximal element of a nonempty set under the canonical total order.
    pub fn canonical_max<'a, I: IntoIterator<Item = &'a Weight>>(&self, it: I) -> Option<&'a Weight> {
        it.into_iter().min_by_key(|w| self.canonical_key(w))
    }

    /// True iff `lo ≤ hi` in dominance order (difference in ℕΔ).
    pub fn dominance_leq(&self, lo: &Weight, hi: &Weight) -> Result<bool> {
        let diff = hi.checked_sub(lo)?;
        Ok(match self.root_coords_exact(diff.coords()) {
            Some(rc) => rc.iter().all(|&x| x >= 0),
            None => false,
        })
    }

    /// det·(λ, μ) for the W-invariant form normalised so short roots have
    /// squared length 2.
    pub fn form_scaled(&self, a: &[i64], b: &[i64]) -> i128 {
        let rb = self.root_coords_scaled(b);
        a.iter()
            .enumerate()
            .map(|(j, &x)| (self.d[j] as i128) * (x as i128) * (rb[j] as i128))
            .sum()
    }

    /// All dominant μ with λ − μ ∈ ℕΔ, sorted descending in the canonical
    /// order (λ itself first).
    ///
    /// Enumerates the integer box 0 ≤ k ≤ root-coords(λ); any dominant
    /// weight below λ has λ − μ with coefficients inside that box because
    /// dominant weights have nonnegative simple-root coordinates.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.check_system(lambda)?;
        if !lambda.is_dominant() {
            return Err(WeylError::NotDominant(lambda.to_string()));
        }
        let n = self.rank();
        let scaled = self.root_coords_scaled(lambda.coords());
        let bound: Vec<i64> = scaled.iter().map(|&s| s / self.det).collect();
        let cells: i128 = bound.iter().map(|&b| b as i128 + 1).product();
        if cells > ORBIT_GUARD as i128 {
            return Err(WeylError::OrbitTooLarge { guard: ORBIT_GUARD });
        }

        let mut out = Vec::new();
        let mut k = vec![0i64; n];
        loop {
            // μ = λ − Σ k_i α_i
            let mut coords = lambda.coords().to_vec();
            let mut dominant = true;
            for (j, c) in coords.iter_mut().enumerate() {
                for (i, &ki) in k.iter().enumerate() {
                    *c -= ki * self.cartan[j][i];
                }
                if *c < 0 {
                    dominant = false;
                }
            }
            if dominant {
                out.push(Weight::new(self.id, coords));
            }
            // odometer over the box
            let mut pos = 0;
            loop {
                if pos == n {
                    self.sort_canonical(&mut out);
                    return Ok(out);
                }
                if k[pos] < bound[pos] {
                    k[pos] += 1;
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    /// True iff every ω-coordinate of λ is < p^r.
    pub fn is_restricted(&self, lambda: &Weight, p: u64, r: u32) -> Result<bool> {
        self.check_system(lambda)?;
        let q = (p as i64)
            .checked_pow(r)
            .ok_or(WeylError::Overflow)?;
        Ok(lambda.coords().iter().all(|&c| c < q))
    }

    /// ω → ε conversion for B, C, D, with doubled storage.
    pub fn omega_to_epsilon(&self, w: &Weight) -> Result<EpsilonCoords> {
        self.check_system(w)?;
        let n = self.rank();
        let c = w.coords();
        let doubled = match self.family() {
            Family::B => (0..n)
                .map(|k| {
                    let mut v = c[n - 1];
                    if k < n - 1 {
                        v += 2 * c[k..n - 1].iter().sum::<i64>();
                    }
                    v
                })
                .collect(),
            Family::C => (0..n).map(|k| 2 * c[k..n].iter().sum::<i64>()).collect(),
            Family::D => (0..n)
                .map(|k| {
                    if k < n - 1 {
                        let mut v = c[n - 1] + c[n - 2];
                        if k < n - 2 {
                            v += 2 * c[k..n - 2].iter().sum::<i64>();
                        }
                        v
                    } else {
                        c[n - 1] - c[n - 2]
                    }
                })
                .collect(),
            other => {
                return Err(WeylError::UnsupportedFamily {
                    expected: "B, C, D",
                    got: other.to_string(),
                })
            }
        };
        Ok(EpsilonCoords {
            sys: self.id,
            doubled,
        })
    }

    /// ε → ω conversion; errors if the doubled coordinates are not those of
    /// an integral weight of the system.
    pub fn epsilon_to_omega(&self, e: &EpsilonCoords) -> Result<Weight> {
        if e.sys != self.id {
            return Err(WeylError::SystemMismatch(
                self.id.to_string(),
                e.sys.to_string(),
            ));
        }
        let n = self.rank();
        if e.doubled.len() != n {
            return Err(WeylError::BadRank {
                expected: n,
                got: e.doubled.len(),
            });
        }
        let d = &e.doubled;
        let half = |x: i64| -> Result<i64> {
            if x % 2 != 0 {
                Err(WeylError::InvalidEpsilon)
            } else {
                Ok(x / 2)
            }
        };
        let coords = match self.family() {
            Family::B => {
                let mut c = Vec::with_capacity(n);
                for k in 0..n - 1 {
                    c.push(half(d[k] - d[k + 1])?);
                }
                c.push(d[n - 1]);
                c
            }
            Family::C => {
                let mut c = Vec::with_capacity(n);
                for k in 0..n - 1 {
                    c.push(half(d[k] - d[k + 1])?);
                }
                c.push(half(d[n - 1])?);
                c
            }
            Family::D => {
                let mut c = Vec::with_capacity(n);
                for k in 0..n - 2 {
                    c.push(half(d[k] - d[k + 1])?);
                }
                c.push(half(d[n - 2] - d[n - 1])?);
                c.push(half(d[n - 2] + d[n - 1])?);
                c
            }
            other => {
                return Err(WeylError::UnsupportedFamily {
                    expected: "B, C, D",
                    got: other.to_string(),
                })
            }
        };
        Ok(Weight::new(self.id, coords))
    }
}

/// Bourbaki Cartan matrix (convention `cartan[i][j] = ⟨α_j, α_i∨⟩`) together
/// with the half squared lengths of the simple roots.
fn cartan_and_lengths(family: Family, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let d: Vec<i64> = match family {
        Family::A => {
            edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1)));
            vec![1; n]
        }
        Family::B => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Family::C => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Family::D => {
            edges.extend((0..n - 2).map(|i| (i, i + 1)));
            edges.push((n - 3, n - 1));
            vec![1; n]
        }
        Family::E => {
            // Nodes 0-based: α1 α2 α3 ... ; chain α1-α3-α4-α5-... , α2 on α4.
            edges.push((0, 2));
            edges.push((2, 3));
            edges.push((1, 3));
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            vec![1; n]
        }
        Family::F => {
            edges.extend((0..3).map(|i| (i, i + 1)));
            vec![2, 2, 1, 1]
        }
        Family::G => {
            edges.push((0, 1));
            vec![1, 3]
        }
    };
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        cartan[i][i] = 2;
    }
    for (i, j) in edges {
        // For a Dynkin-diagram edge, (α_i, α_j) = −max(d_i, d_j).
        let ip = -d[i].max(d[j]);
        cartan[i][j] = ip / d[i];
        cartan[j][i] = ip / d[j];
    }
    (cartan, d)
}

/// Determinant and adjugate of a small integer matrix, by cofactor
/// expansion; exact for the rank ≤ 8 Cartan matrices used here.
fn invert_scaled(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let det = determinant(m);
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor = minor_matrix(m, j, i);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * determinant(&minor);
        }
    }
    // sanity: adj * m = det * I
    for i in 0..n {
        for j in 0..n {
            let v: i64 = (0..n).map(|k| adj[i][k] * m[k][j]).sum();
            assert_eq!(v, if i == j { det } else { 0 });
        }
    }
    (det, adj)
}

fn minor_matrix(m: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != skip_col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0i64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * determinant(&minor_matrix(m, 0, j));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> Arc<RootSystem> {
        RootSystem::get(f, n).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(Family::A, 1).positive_roots().len(), 1);
        assert_eq!(rs(Family::A, 3).positive_roots().len(), 6);
        assert_eq!(rs(Family::B, 3).positive_roots().len(), 9);
        assert_eq!(rs(Family::C, 3).positive_roots().len(), 9);
        assert_eq!(rs(Family::D, 4).positive_roots().len(), 12);
        assert_eq!(rs(Family::G, 2).positive_roots().len(), 6);
        assert_eq!(rs(Family::F, 4).positive_roots().len(), 24);
        assert_eq!(rs(Family::E, 6).positive_roots().len(), 36);
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(rs(Family::G, 2).coxeter_number(), 6);
        assert_eq!(rs(Family::B, 3).coxeter_number(), 6);
        assert_eq!(rs(Family::C, 3).coxeter_number(), 6);
        assert_eq!(rs(Family::D, 4).coxeter_number(), 6);
        assert_eq!(rs(Family::F, 4).coxeter_number(), 12);
        assert_eq!(rs(Family::E, 8).coxeter_number(), 30);
        assert_eq!(rs(Family::A, 4).coxeter_number(), 5);
    }

    #[test]
    fn invalid_family_rank_rejected() {
        assert!(matches!(
            RootSystem::get(Family::D, 3),
            Err(WeylError::InvalidFamilyRank { .. })
        ));
        assert!(matches!(
            RootSystem::get(Family::E, 9),
            Err(WeylError::InvalidFamilyRank { .. })
        ));
        assert!(matches!(
            RootSystem::get(Family::F, 5),
            Err(WeylError::InvalidFamilyRank { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        let b3 = rs(Family::B, 3);
        let rho = b3.rho();
        for alpha in b3.simple_roots() {
            assert_eq!(b3.pairing(&rho, &alpha).unwrap(), 1);
        }
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.pairing(&g2.rho(), &g2.highest_short_root()).unwrap(), 5);
        let two_omega2 = b3.weight(&[0, 2, 0]).unwrap();
        assert_eq!(b3.pairing(&two_omega2, &b3.simple_root(1)).unwrap(), 2);
    }

    #[test]
    fn system_mismatch_detected() {
        let b3 = rs(Family::B, 3);
        let c3 = rs(Family::C, 3);
        let w = c3.rho();
        assert!(matches!(
            b3.pairing(&w, &b3.simple_root(0)),
            Err(WeylError::SystemMismatch(..))
        ));
    }

    #[test]
    fn epsilon_examples() {
        let b3 = rs(Family::B, 3);
        // 2ρ − ω1 has ε-coordinates (4, 3, 1).
        let w = b3.weight(&[1, 2, 2]).unwrap();
        let e = b3.omega_to_epsilon(&w).unwrap();
        assert_eq!(e.doubled, vec![8, 6, 2]);
        // ω3 is the spin weight (1/2, 1/2, 1/2).
        let spin = b3.fundamental_weight(2);
        let e = b3.omega_to_epsilon(&spin).unwrap();
        assert_eq!(e.doubled, vec![1, 1, 1]);
        assert_eq!(b3.epsilon_to_omega(&e).unwrap(), spin);
        // zero round trip
        let z = b3.zero_weight();
        let e = b3.omega_to_epsilon(&z).unwrap();
        assert_eq!(e.doubled, vec![0, 0, 0]);
        assert_eq!(b3.epsilon_to_omega(&e).unwrap(), z);
        // unsupported family
        let a2 = rs(Family::A, 2);
        assert!(matches!(
            a2.omega_to_epsilon(&a2.rho()),
            Err(WeylError::UnsupportedFamily { .. })
        ));
    }

    #[test]
    fn dominant_weights_below_b3() {
        let b3 = rs(Family::B, 3);
        let lam = b3.weight(&[0, 2, 0]).unwrap();
        let got = b3.dominant_weights_below(&lam).unwrap();
        let expect: Vec<Weight> = [
            [0, 2, 0],
            [1, 0, 2],
            [1, 1, 0],
            [0, 0, 2],
            [2, 0, 0],
            [0, 1, 0],
            [1, 0, 0],
            [0, 0, 0],
        ]
        .iter()
        .map(|c| b3.weight(&c[..]).unwrap())
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn dominant_weights_below_small() {
        let a1 = rs(Family::A, 1);
        let lam = a1.weight(&[2]).unwrap();
        let got = a1.dominant_weights_below(&lam).unwrap();
        assert_eq!(got, vec![a1.weight(&[2]).unwrap(), a1.weight(&[0]).unwrap()]);
        let zero = a1.zero_weight();
        assert_eq!(a1.dominant_weights_below(&zero).unwrap(), vec![zero.clone()]);
        let neg = a1.weight(&[-1]).unwrap();
        assert!(matches!(
            a1.dominant_weights_below(&neg),
            Err(WeylError::NotDominant(_))
        ));
    }

    #[test]
    fn restricted_examples() {
        let b3 = rs(Family::B, 3);
        assert!(b3.is_restricted(&b3.weight(&[1, 1, 1]).unwrap(), 2, 1).unwrap());
        let c3 = rs(Family::C, 3);
        assert!(c3.is_restricted(&c3.weight(&[2, 1, 2]).unwrap(), 3, 1).unwrap());
        assert!(!c3.is_restricted(&c3.weight(&[0, 3, 0]).unwrap(), 3, 1).unwrap());
    }
}
