//! Levi restriction of characters and the propagation bookkeeping that lifts
//! low-rank failures to higher rank.
//!
//! A subset J of simple roots is materialised as a standalone root system of
//! the matching abstract type, with an explicit index map back into the
//! ambient system, so every other module works unchanged on the Levi side.
//! Type identification reads the Dynkin subdiagram off the Cartan submatrix
//! and relabels per Bourbaki; the rank-2 double-edge diagram and the A3/D3
//! coincidence are canonicalised to B2 and A3 respectively.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::charalg::{full_weights, nabla_character, tensor, Form, VirtualCharacter};
use crate::decomp::SimpleSource;
use crate::error::{Result, WeylError};
use crate::filtrate::{good_filtration_test, FiltrationBasis, FiltrationOutcome};
use crate::rootsys::{Family, RootSystem, SystemId, Weight};

/// A Levi subsystem realised as a standalone root system.
#[derive(Debug, Clone)]
pub struct LeviEmbedding {
    pub ambient: SystemId,
    pub subsystem: Arc<RootSystem>,
    /// `map[i]` is the ambient simple index realising the i-th Levi simple root.
    pub map: Vec<usize>,
}

impl LeviEmbedding {
    /// J-coordinates of an ambient weight, as a Levi weight.
    pub fn restrict_weight(&self, w: &Weight) -> Weight {
        let coords = self.map.iter().map(|&a| w.coords()[a]).collect();
        Weight::new(self.subsystem.id(), coords)
    }
}

/// Identifies the abstract type of the subdiagram spanned by `j` (0-based
/// ambient simple indices) and returns it with its Bourbaki relabeling.
pub fn identify_levi(rs: &RootSystem, j: &[usize]) -> Result<LeviEmbedding> {
    let mut j: Vec<usize> = j.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.is_empty() || j.iter().any(|&i| i >= rs.rank()) {
        return Err(WeylError::BadRank {
            expected: rs.rank(),
            got: j.last().copied().unwrap_or(0),
        });
    }
    let cartan = rs.cartan_matrix();
    let k = j.len();
    // adjacency with bond multiplicities
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut bonds: Vec<(usize, usize, i64)> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let m = cartan[j[a]][j[b]] * cartan[j[b]][j[a]];
            if m != 0 {
                adj[a].push(b);
                adj[b].push(a);
                bonds.push((a, b, m));
            }
        }
    }
    // connectivity
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(WeylError::DisconnectedLevi);
    }

    let order = classify(rs, &j, &adj, &bonds)?;
    let (family, rank) = order.0;
    let local_order = order.1;
    let subsystem = RootSystem::get(family, rank)?;
    let map: Vec<usize> = local_order.iter().map(|&a| j[a]).collect();
    // The relabeled Cartan submatrix must equal the subsystem's matrix.
    let sub = subsystem.cartan_matrix();
    for a in 0..k {
        for b in 0..k {
            assert_eq!(
                sub[a][b], cartan[map[a]][map[b]],
                "Levi relabeling must reproduce the {family}{rank} Cartan matrix"
            );
        }
    }
    Ok(LeviEmbedding {
        ambient: rs.id(),
        subsystem,
        map,
    })
}

/// Returns ((family, rank), ordering of local indices realising Bourbaki).
fn classify(
    rs: &RootSystem,
    j: &[usize],
    adj: &[Vec<usize>],
    bonds: &[(usize, usize, i64)],
) -> Result<((Family, usize), Vec<usize>)> {
    let k = j.len();
    let cartan = rs.cartan_matrix();
    if k == 1 {
        return Ok(((Family::A, 1), vec![0]));
    }
    let triple: Vec<&(usize, usize, i64)> = bonds.iter().filter(|(_, _, m)| *m == 3).collect();
    let double: Vec<&(usize, usize, i64)> = bonds.iter().filter(|(_, _, m)| *m == 2).collect();
    if !triple.is_empty() {
        // G2: the short root u satisfies cartan[u][v] = −3
        let &(a, b, _) = triple[0];
        let (short, long) = if cartan[j[a]][j[b]] == -3 { (a, b) } else { (b, a) };
        return Ok(((Family::G, 2), vec![short, long]));
    }
    let degree: Vec<usize> = adj.iter().map(|n| n.len()).collect();
    let branch: Vec<usize> = (0..k).filter(|&x| degree[x] >= 3).collect();

    if !double.is_empty() {
        // B, C or F4: the diagram is a path with one double bond.
        let &(u, v, _) = double[0];
        let path = path_order(adj)?;
        let path = orient_path_for_double(path, u, v);
        let (pu, pv) = (path[path.len() - 2], path[path.len() - 1]);
        let end_is_short = cartan[j[pv]][j[pu]] == -2; // ⟨α_pu, α_pv∨⟩ = −2 iff pv short
        let middle = path.len() >= 3 && !is_edge(&path, u, v, path.len() - 2, path.len() - 1);
        if middle {
            // double bond not at the end after orientation: F4 shape
            return classify_f4(rs, j, adj, bonds);
        }
        if k == 2 {
            // rank-2 double bond: canonicalise to B2 (long root first)
            let (long, short) = if end_is_short { (pu, pv) } else { (pv, pu) };
            return Ok(((Family::B, 2), vec![long, short]));
        }
        if end_is_short {
            return Ok(((Family::B, k), path));
        }
        return Ok(((Family::C, k), path));
    }

    if branch.is_empty() {
        // simply laced path: A_k; tie-break on the smaller ambient endpoint
        let path = path_order(adj)?;
        let rev: Vec<usize> = path.iter().rev().copied().collect();
        let amb: Vec<usize> = path.iter().map(|&x| j[x]).collect();
        let amb_rev: Vec<usize> = rev.iter().map(|&x| j[x]).collect();
        let chosen = if amb <= amb_rev { path } else { rev };
        return Ok(((Family::A, k), chosen));
    }

    // simply laced with one branch node: D or E
    if branch.len() != 1 {
        return Err(WeylError::DisconnectedLevi);
    }
    let c = branch[0];
    let mut arms: Vec<Vec<usize>> = Vec::new();
    for &start in &adj[c] {
        let mut arm = vec![start];
        let mut prev = c;
        let mut cur = start;
        loop {
            let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = next[0];
                    arm.push(cur);
                }
                _ => return Err(WeylError::DisconnectedLevi),
            }
        }
        arms.push(arm);
    }
    arms.sort_by_key(|a| (a.len(), a.iter().map(|&x| j[x]).collect::<Vec<_>>()));
    match arms.len() {
        3 => {}
        _ => return Err(WeylError::DisconnectedLevi),
    }
    let (l0, l1, l2) = (arms[0].len(), arms[1].len(), arms[2].len());
    if l0 == 1 && l1 == 1 {
        // D_{l2+3}: tail from far end, then branch node, then the two leaves
        let n = l2 + 3;
        let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
        order.push(c);
        order.push(arms[0][0]);
        order.push(arms[1][0]);
        return Ok(((Family::D, n), order));
    }
    if l0 == 1 && l1 == 2 && (2..=4).contains(&l2) {
        // E_{l2+4}: α2 = short arm leaf, α4 = branch, α3,α1 = middle arm,
        // α5.. = tail arm outward.
        let n = l2 + 4;
        let mut order = vec![arms[1][1], arms[0][0], arms[1][0], c];
        order.extend(arms[2].iter().copied());
        return Ok(((Family::E, n), order));
    }
    Err(WeylError::DisconnectedLevi)
}

fn is_edge(path: &[usize], u: usize, v: usize, i: usize, l: usize) -> bool {
    (path[i] == u && path[l] == v) || (path[i] == v && path[l] == u)
}

fn classify_f4(
    rs: &RootSystem,
    j: &[usize],
    adj: &[Vec<usize>],
    bonds: &[(usize, usize, i64)],
) -> Result<((Family, usize), Vec<usize>)> {
    if j.len() != 4 {
        return Err(WeylError::DisconnectedLevi);
    }
    let cartan = rs.cartan_matrix();
    let path = path_order(adj)?;
    let &(u, v, _) = bonds.iter().find(|(_, _, m)| *m == 2).unwrap();
    // orient so that the long side of the double bond comes first
    let (p1, p2) = (path[1], path[2]);
    debug_assert!(is_edge(&path, u, v, 1, 2));
    let long_first = cartan[j[p2]][j[p1]] == -2; // p2 short ⟹ p1 long
    let order = if long_first {
        path
    } else {
        path.into_iter().rev().collect()
    };
    Ok(((Family::F, 4), order))
}

/// Orders a path graph's vertices endpoint to endpoint.
fn path_order(adj: &[Vec<usize>]) -> Result<Vec<usize>> {
    let k = adj.len();
    let ends: Vec<usize> = (0..k).filter(|&x| adj[x].len() <= 1).collect();
    if k == 1 {
        return Ok(vec![0]);
    }
    if ends.len() != 2 || adj.iter().any(|n| n.len() > 2) {
        return Err(WeylError::DisconnectedLevi);
    }
    let mut order = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while order.len() < k {
        let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
        order.push(next);
        prev = cur;
        cur = next;
    }
    Ok(order)
}

/// Rotates a path so the double bond sits between the last two entries.
fn orient_path_for_double(path: Vec<usize>, u: usize, v: usize) -> Vec<usize> {
    let l = path.len();
    if l >= 2 && is_edge(&path, u, v, 0, 1) {
        return path.into_iter().rev().collect();
    }
    let _ = (u, v, l);
    path
}

/// Restricts a weight-form character to the Levi of J. The result is a
/// weight-form character over the standalone subsystem.
pub fn restrict_character(
    rs: &RootSystem,
    c: &VirtualCharacter,
    j: &[usize],
) -> Result<(VirtualCharacter, LeviEmbedding)> {
    c.expect_form(Form::Weight)?;
    let emb = identify_levi(rs, j)?;
    // unique dominance-maximal support weight
    let support: Vec<&Weight> = c.support().keys().collect();
    let mut maxima: Vec<&Weight> = Vec::new();
    'outer: for w in &support {
        for other in &support {
            if other != w && rs.dominance_leq(w, other)? {
                continue 'outer;
            }
        }
        maxima.push(w);
    }
    if maxima.len() != 1 {
        return Err(WeylError::AmbiguousTopWeight);
    }
    let top = maxima[0].clone();

    let in_j = |delta: &[i64]| -> bool {
        match rs.root_coords_exact(delta) {
            Some(rc) => rc
                .iter()
                .enumerate()
                .all(|(i, &x)| x >= 0 && (x == 0 || j.contains(&i))),
            None => false,
        }
    };

    let mut levi_full: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in full_weights(rs, c)? {
        let delta = top.checked_sub(&nu)?;
        if in_j(delta.coords()) {
            let lw = emb.restrict_weight(&nu);
            *levi_full.entry(lw).or_insert(0) += m;
        }
    }
    let dominant: BTreeMap<Weight, i64> = levi_full
        .into_iter()
        .filter(|(w, _)| w.is_dominant())
        .collect();
    Ok((
        VirtualCharacter::from_map(emb.subsystem.id(), Form::Weight, dominant),
        emb,
    ))
}

/// Verifies restrict(∇(λ) ⊗ ∇(μ)) = restrict(∇(λ)) ⊗ restrict(∇(μ)).
pub fn restrict_tensor_check(rs: &RootSystem, lambda: &Weight, mu: &Weight, j: &[usize]) -> Result<bool> {
    let a = nabla_character(rs, lambda)?;
    let b = nabla_character(rs, mu)?;
    let prod = tensor(rs, &a, &b)?;
    let (lhs, emb) = restrict_character(rs, &prod, j)?;
    let (ra, _) = restrict_character(rs, &a, j)?;
    let (rb, _) = restrict_character(rs, &b, j)?;
    let rhs = tensor(&emb.subsystem, &ra, &rb)?;
    Ok(lhs == rhs)
}

/// Outcome of the Levi multiplicity comparison for good (p,r)-filtrations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JqLeviReport {
    pub ambient_multiplicity: i64,
    pub levi_multiplicity: i64,
    pub pass: bool,
}

/// Compares [∇(λ) : ∇^{(p,r)}(μ)] with its Levi counterpart when
/// λ − μ ∈ ℕJ. Errors with `NoCertificate` when either expansion is
/// obstructed; a Levi obstruction against an ambient certificate is flagged
/// CRITICAL in the error detail because restriction must preserve good
/// (p,r)-filtrations.
pub fn jq_levi_multiplicity_check(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
    j: &[usize],
    p: u64,
    r: u32,
    ambient_chars: &dyn SimpleSource,
    levi_chars: &dyn SimpleSource,
) -> Result<JqLeviReport> {
    let diff = lambda.checked_sub(mu)?;
    let emb = identify_levi(rs, j)?;
    let supported = match rs.root_coords_exact(diff.coords()) {
        Some(rc) => rc
            .iter()
            .enumerate()
            .all(|(i, &x)| x >= 0 && (x == 0 || j.contains(&i))),
        None => false,
    };
    if !supported {
        return Err(WeylError::MissingDecompositionData(format!(
            "λ − μ = {diff} is not a nonnegative J-combination"
        )));
    }
    let big = nabla_character(rs, lambda)?;
    let basis = FiltrationBasis::NablaPr { p, r };
    let big_out = good_filtration_test(rs, &big, basis, Some(ambient_chars))?;
    let (levi_char, _) = restrict_character(rs, &big, j)?;
    let levi_out = good_filtration_test(&emb.subsystem, &levi_char, basis, Some(levi_chars))?;
    match (&big_out, &levi_out) {
        (FiltrationOutcome::Certificate(bc), FiltrationOutcome::Certificate(lc)) => {
            let bm = bc
                .iter()
                .find(|(w, _)| w == mu)
                .map(|(_, m)| *m)
                .unwrap_or(0);
            let mu_j = emb.restrict_weight(mu);
            let lm = lc
                .iter()
                .find(|(w, _)| *w == mu_j)
                .map(|(_, m)| *m)
                .unwrap_or(0);
            Ok(JqLeviReport {
                ambient_multiplicity: bm,
                levi_multiplicity: lm,
                pass: bm == lm,
            })
        }
        (FiltrationOutcome::Certificate(_), FiltrationOutcome::Obstruction { witness, coefficient }) => {
            Err(WeylError::NoCertificate {
                side: "levi",
                detail: format!(
                    "CRITICAL: Levi side obstructed at {witness} (coefficient {coefficient}) while the ambient side certifies; restriction must preserve good (p,r)-filtrations"
                ),
            })
        }
        (FiltrationOutcome::Obstruction { witness, coefficient }, _) => Err(WeylError::NoCertificate {
            side: "ambient",
            detail: format!("obstructed at {witness} (coefficient {coefficient})"),
        }),
    }
}

/// Identifier for a low-rank failure used as a propagation seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationBase {
    /// B3, p = 2, pattern (1,1,1).
    B3Ones,
    /// B_m, p = 2, pattern (1,1,0,…,0); a direct family of seeds.
    BnOneOneZero,
    /// C3, p = 3, pattern (2,2,2).
    C3Twos,
    /// C3, p = 3, pattern (1,2,2).
    C3OneTwoTwo,
    /// D4, p = 2, pattern (1,1,1,1).
    D4Ones,
    /// G2, p = 2, pattern (1,1).
    G2Ones,
}

impl PropagationBase {
    pub fn parse(s: &str) -> Option<PropagationBase> {
        match s {
            "B3_111" => Some(PropagationBase::B3Ones),
            "B_110" | "Bn_110" => Some(PropagationBase::BnOneOneZero),
            "C3_222" => Some(PropagationBase::C3Twos),
            "C3_122" => Some(PropagationBase::C3OneTwoTwo),
            "D4_1111" => Some(PropagationBase::D4Ones),
            "G2_11" => Some(PropagationBase::G2Ones),
            _ => None,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            PropagationBase::B3Ones => "B3_111",
            PropagationBase::BnOneOneZero => "B_110",
            PropagationBase::C3Twos => "C3_222",
            PropagationBase::C3OneTwoTwo => "C3_122",
            PropagationBase::D4Ones => "D4_1111",
            PropagationBase::G2Ones => "G2_11",
        }
    }

    fn p(&self) -> u64 {
        match self {
            PropagationBase::C3Twos | PropagationBase::C3OneTwoTwo => 3,
            _ => 2,
        }
    }
}

/// One slot of a λ-pattern: a pinned coordinate or a free restricted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternSlot {
    Fixed(i64),
    Wild,
}

impl std::fmt::Display for PatternSlot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternSlot::Fixed(v) => write!(f, "{v}"),
            PatternSlot::Wild => write!(f, "*"),
        }
    }
}

/// One (family, rank, p, λ-pattern) row produced by Levi propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationRow {
    pub family: Family,
    pub rank: usize,
    pub p: u64,
    pub pattern: Vec<PatternSlot>,
    /// 1-based ambient indices of the Levi subset, empty for a direct seed.
    pub levi: Vec<usize>,
    pub base: String,
}

impl PropagationRow {
    pub fn pattern_string(&self) -> String {
        let parts: Vec<String> = self.pattern.iter().map(|s| s.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn pattern_row(
    ambient: &RootSystem,
    j0: &[usize],
    base_pattern: &[i64],
    base_type: (Family, usize),
    p: u64,
    base_id: &str,
) -> Result<PropagationRow> {
    let emb = identify_levi(ambient, j0)?;
    if (emb.subsystem.family(), emb.subsystem.rank()) != base_type {
        return Err(WeylError::NoEmbedding {
            base: format!("{}{}", base_type.0, base_type.1),
            ambient: ambient.id().to_string(),
        });
    }
    let mut pattern = vec![PatternSlot::Wild; ambient.rank()];
    for (levi_i, &amb_i) in emb.map.iter().enumerate() {
        pattern[amb_i] = PatternSlot::Fixed(base_pattern[levi_i]);
    }
    Ok(PropagationRow {
        family: ambient.family(),
        rank: ambient.rank(),
        p,
        pattern,
        levi: emb.map.iter().map(|&i| i + 1).collect(),
        base: base_id.to_string(),
    })
}

/// λ-pattern rows obtained by embedding the base failure as a Levi of the
/// ambient system.
pub fn levi_propagation(
    base: PropagationBase,
    family: Family,
    rank: usize,
) -> Result<Vec<PropagationRow>> {
    let ambient = RootSystem::get(family, rank)?;
    let p = base.p();
    let no_embedding = || WeylError::NoEmbedding {
        base: base.id().to_string(),
        ambient: ambient.id().to_string(),
    };
    let rows = match base {
        PropagationBase::B3Ones => match family {
            Family::B if rank >= 3 => {
                let j: Vec<usize> = vec![rank - 3, rank - 2, rank - 1];
                vec![pattern_row(&ambient, &j, &[1, 1, 1], (Family::B, 3), p, base.id())?]
            }
            Family::F => vec![pattern_row(&ambient, &[0, 1, 2], &[1, 1, 1], (Family::B, 3), p, base.id())?],
            _ => return Err(no_embedding()),
        },
        PropagationBase::BnOneOneZero => match family {
            Family::B if rank >= 3 => {
                // ones at positions k, k+1 (1-based) and zeros after, for every k ≤ n−2
                let mut rows = Vec::new();
                for k in 1..=rank - 2 {
                    let j: Vec<usize> = (k - 1..rank).collect();
                    let m = rank - k + 1;
                    let mut pat = vec![1i64, 1];
                    pat.extend(std::iter::repeat(0).take(m - 2));
                    rows.push(pattern_row(&ambient, &j, &pat, (Family::B, m), p, base.id())?);
                }
                rows
            }
            Family::F => vec![pattern_row(&ambient, &[0, 1, 2], &[1, 1, 0], (Family::B, 3), p, base.id())?],
            _ => return Err(no_embedding()),
        },
        PropagationBase::C3Twos | PropagationBase::C3OneTwoTwo => {
            let pat: [i64; 3] = if base == PropagationBase::C3Twos {
                [2, 2, 2]
            } else {
                [1, 2, 2]
            };
            match family {
                Family::C if rank >= 3 => {
                    let j: Vec<usize> = vec![rank - 3, rank - 2, rank - 1];
                    vec![pattern_row(&ambient, &j, &pat, (Family::C, 3), p, base.id())?]
                }
                Family::F => vec![pattern_row(&ambient, &[1, 2, 3], &pat, (Family::C, 3), p, base.id())?],
                _ => return Err(no_embedding()),
            }
        }
        PropagationBase::D4Ones => match family {
            Family::D if rank >= 4 => {
                let j: Vec<usize> = vec![rank - 4, rank - 3, rank - 2, rank - 1];
                vec![pattern_row(&ambient, &j, &[1, 1, 1, 1], (Family::D, 4), p, base.id())?]
            }
            Family::E => vec![pattern_row(
                &ambient,
                &[1, 2, 3, 4],
                &[1, 1, 1, 1],
                (Family::D, 4),
                p,
                base.id(),
            )?],
            _ => return Err(no_embedding()),
        },
        PropagationBase::G2Ones => match family {
            Family::G => vec![PropagationRow {
                family,
                rank,
                p,
                pattern: vec![PatternSlot::Fixed(1), PatternSlot::Fixed(1)],
                levi: vec![],
                base: base.id().to_string(),
            }],
            _ => return Err(no_embedding()),
        },
    };
    Ok(rows)
}

/// All propagation rows for the standard ambient list (B/C up to `max_bc`,
/// D up to `max_d`, E6–E8, F4, G2), with the two F4 rows at p = 2 merged
/// over the free third slot.
pub fn propagation_table(max_bc: usize, max_d: usize) -> Result<Vec<PropagationRow>> {
    let mut rows = Vec::new();
    for n in 3..=max_bc {
        rows.extend(levi_propagation(PropagationBase::B3Ones, Family::B, n)?);
        rows.extend(levi_propagation(PropagationBase::BnOneOneZero, Family::B, n)?);
        rows.extend(levi_propagation(PropagationBase::C3Twos, Family::C, n)?);
        rows.extend(levi_propagation(PropagationBase::C3OneTwoTwo, Family::C, n)?);
    }
    for n in 4..=max_d {
        rows.extend(levi_propagation(PropagationBase::D4Ones, Family::D, n)?);
    }
    for n in 6..=8 {
        rows.extend(levi_propagation(PropagationBase::D4Ones, Family::E, n)?);
    }
    rows.extend(levi_propagation(PropagationBase::B3Ones, Family::F, 4)?);
    rows.extend(levi_propagation(PropagationBase::BnOneOneZero, Family::F, 4)?);
    rows.extend(levi_propagation(PropagationBase::C3Twos, Family::F, 4)?);
    rows.extend(levi_propagation(PropagationBase::C3OneTwoTwo, Family::F, 4)?);
    rows.extend(levi_propagation(PropagationBase::G2Ones, Family::G, 2)?);
    merge_complete_slots(&mut rows);
    Ok(rows)
}

/// Merges row pairs identical except in one slot whose fixed values exhaust
/// all p-restricted values; the slot becomes a wildcard. At p = 2 this folds
/// (1,1,1,*) and (1,1,0,*) into (1,1,*,*).
fn merge_complete_slots(rows: &mut Vec<PropagationRow>) {
    'again: loop {
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if rows[a].family != rows[b].family
                    || rows[a].rank != rows[b].rank
                    || rows[a].p != rows[b].p
                {
                    continue;
                }
                let pa = &rows[a].pattern;
                let pb = &rows[b].pattern;
                let diffs: Vec<usize> = (0..pa.len()).filter(|&i| pa[i] != pb[i]).collect();
                if diffs.len() != 1 {
                    continue;
                }
                let i = diffs[0];
                let vals: Vec<i64> = [pa[i], pb[i]]
                    .iter()
                    .filter_map(|s| match s {
                        PatternSlot::Fixed(v) => Some(*v),
                        PatternSlot::Wild => None,
                    })
                    .collect();
                let p = rows[a].p as i64;
                let complete = vals.len() == 2 && {
                    let mut v = vals.clone();
                    v.sort_unstable();
                    v == (0..p).collect::<Vec<_>>()
                };
                if complete {
                    let mut merged = rows[a].clone();
                    merged.pattern[i] = PatternSlot::Wild;
                    merged.base = format!("{}+{}", rows[a].base, rows[b].base);
                    rows.remove(b);
                    rows.remove(a);
                    rows.push(merged);
                    continue 'again;
                }
            }
        }
        return;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identify_standard_levis() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let emb = identify_levi(&b3, &[1, 2]).unwrap();
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::B, rank: 2 });
        assert_eq!(emb.map, vec![1, 2]);

        let c3 = RootSystem::get(Family::C, 3).unwrap();
        let emb = identify_levi(&c3, &[1, 2]).unwrap();
        // canonicalised to B2 with the long root first
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::B, rank: 2 });
        assert_eq!(emb.map, vec![2, 1]);

        let d4 = RootSystem::get(Family::D, 4).unwrap();
        let emb = identify_levi(&d4, &[0, 1, 2]).unwrap();
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::A, rank: 3 });

        let f4 = RootSystem::get(Family::F, 4).unwrap();
        let emb = identify_levi(&f4, &[1, 2, 3]).unwrap();
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::C, rank: 3 });
        // the ordering swap: the C3 chain starts at the short end, ambient α4
        assert_eq!(emb.map, vec![3, 2, 1]);

        let emb = identify_levi(&f4, &[0, 1, 2]).unwrap();
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::B, rank: 3 });
        assert_eq!(emb.map, vec![0, 1, 2]);

        let e6 = RootSystem::get(Family::E, 6).unwrap();
        let emb = identify_levi(&e6, &[1, 2, 3, 4]).unwrap();
        assert_eq!(emb.subsystem.id(), SystemId { family: Family::D, rank: 4 });

        assert!(matches!(
            identify_levi(&d4, &[0, 3]),
            Err(WeylError::DisconnectedLevi)
        ));
    }

    #[test]
    fn restrict_trivialities() {
        let b3 = RootSystem::get(Family::B, 3).unwrap();
        let c = nabla_character(&b3, &b3.zero_weight()).unwrap();
        let (r, emb) = restrict_character(&b3, &c, &[1, 2]).unwrap();
        assert_eq!(r.coeff(&emb.subsystem.zero_weight()), 1);
        assert_eq!(r.support().len(), 1);
        // J = all indices is the identity up to relabeling
        let lam = b3.weight(&[0, 1, 0]).unwrap();
        let c = nabla_character(&b3, &lam).unwrap();
        let (r, emb) = restrict_character(&b3, &c, &[0, 1, 2]).unwrap();
        assert_eq!(emb.subsystem.id(), b3.id());
        assert_eq!(r, c);
    }

    #[test]
    fn propagation_examples() {
        let rows = levi_propagation(PropagationBase::C3Twos, Family::F, 4).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].pattern_string(), "(*,2,2,2)");
        let rows = levi_propagation(PropagationBase::C3OneTwoTwo, Family::F, 4).unwrap();
        assert_eq!(rows[0].pattern_string(), "(*,2,2,1)");
        let rows = levi_propagation(PropagationBase::D4Ones, Family::E, 6).unwrap();
        assert_eq!(rows[0].pattern_string(), "(*,1,1,1,1,*)");
        let rows = levi_propagation(PropagationBase::B3Ones, Family::B, 3).unwrap();
        assert_eq!(rows[0].pattern_string(), "(1,1,1)");
        assert!(matches!(
            levi_propagation(PropagationBase::D4Ones, Family::F, 4),
            Err(WeylError::NoEmbedding { .. })
        ));
    }
}
