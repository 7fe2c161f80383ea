//! Development probe: prints solver output for the key windows.

use weylforge::charalg::VirtualCharacter;
use weylforge::decomp::solve_decomposition;
use weylforge::jantzen::{jsf, jsf_in_simple_basis};
use weylforge::rootsys::{Family, RootSystem};

fn show(rs: &std::sync::Arc<RootSystem>, coords: &[i64], p: u64) {
    let lam = rs.weight(coords).unwrap();
    println!("==== {}{} p={} λ={}", rs.family(), rs.rank(), p, lam);
    let sum = jsf(rs, &lam, p).unwrap();
    let terms: Vec<String> = sum
        .terms_canonical(rs)
        .iter()
        .map(|(w, c)| format!("{c}·χ{w}"))
        .collect();
    println!("  JSF: {}", if terms.is_empty() { "∅".into() } else { terms.join(" + ") });
    match solve_decomposition(rs, &lam, p) {
        Ok(set) => {
            println!("  branches: {}", set.branches.len());
            for (i, b) in set.branches.iter().enumerate() {
                let row: Vec<String> = b
                    .table
                    .iter()
                    .map(|(w, m)| format!("L{w}:{m}"))
                    .collect();
                println!("   [{i}] {}", row.join(", "));
                for c in &b.constraints {
                    println!("       note: {c}");
                }
                let dims: Vec<String> = b
                    .table
                    .keys()
                    .map(|w| {
                        let d = b.simple(w).unwrap().dimension(rs).unwrap();
                        format!("dim L{w}={d}")
                    })
                    .collect();
                println!("       {}", dims.join(", "));
            }
            match jsf_in_simple_basis(rs, &lam, p, &set) {
                Ok(ls) => {
                    for (i, s) in ls.iter().enumerate() {
                        let row: Vec<String> = s.iter().map(|(w, m)| format!("L{w}:{m}")).collect();
                        println!("   JSF-L[{i}]: {}", row.join(", "));
                    }
                }
                Err(e) => println!("   JSF-L error: {e}"),
            }
        }
        Err(e) => println!("  solve error: {e}"),
    }
    let _ = VirtualCharacter::zero(rs.id(), weylforge::charalg::Form::Weight);
}

fn main() {
    let b3 = RootSystem::get(Family::B, 3).unwrap();
    for coords in [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 2],
        [2, 0, 0],
        [1, 1, 0],
        [1, 0, 2],
        [0, 2, 0],
    ] {
        show(&b3, &coords, 2);
    }
    let c3 = RootSystem::get(Family::C, 3).unwrap();
    for coords in [
        [0, 1, 0],
        [1, 0, 1],
        [0, 0, 2],
        [1, 1, 1],
        [0, 3, 0],
        [2, 0, 2],
        [2, 1, 2],
    ] {
        show(&c3, &coords, 3);
    }
    for coords in [[1, 0, 0], [0, 1, 1], [2, 1, 1], [1, 3, 0], [3, 2, 0], [2, 2, 1]] {
        show(&c3, &coords, 3);
    }
}
