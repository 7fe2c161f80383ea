//! Development probe for the D4 and G2 scenario windows.

use weylforge::decomp::solve_decomposition;
use weylforge::filtrate::candidate_gammas;
use weylforge::rootsys::{Family, RootSystem};

fn main() {
    let d4 = RootSystem::get(Family::D, 4).unwrap();
    let p = 2;
    let bound = d4.rho().checked_add(&d4.fundamental_weight(1)).unwrap();
    let om2 = d4.fundamental_weight(1);
    let cands = candidate_gammas(&d4, p, &bound, None, Some(&om2)).unwrap();
    println!(
        "D4 candidates: {:?}",
        cands.iter().map(|w| format!("{w}")).collect::<Vec<_>>()
    );
    for gamma in &cands {
        match solve_decomposition(&d4, gamma, p) {
            Ok(set) => {
                println!("Δ({gamma}): {} branch(es)", set.branches.len());
                for b in set.branches.iter().take(3) {
                    let row: Vec<String> = b.table.iter().map(|(w, m)| format!("L{w}:{m}")).collect();
                    println!("    {}", row.join(", "));
                }
            }
            Err(e) => println!("Δ({gamma}): error {e}"),
        }
    }
    // windows for the tensor check
    for coords in [[1i64, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0]] {
        let w = d4.weight(&coords).unwrap();
        match solve_decomposition(&d4, &w, p) {
            Ok(set) => {
                println!("Δ({w}): {} branch(es)", set.branches.len());
                for b in set.branches.iter().take(4) {
                    let row: Vec<String> = b.table.iter().map(|(x, m)| format!("L{x}:{m}")).collect();
                    let dims: Vec<String> = b
                        .table
                        .keys()
                        .map(|x| format!("{}", b.simple(x).unwrap().dimension(&d4).unwrap()))
                        .collect();
                    println!("    {} dims {}", row.join(", "), dims.join(","));
                }
            }
            Err(e) => println!("Δ({w}): error {e}"),
        }
    }
    let g2 = RootSystem::get(Family::G, 2).unwrap();
    for coords in [[0i64, 0], [1, 0], [0, 1], [1, 1], [2, 0]] {
        let w = g2.weight(&coords).unwrap();
        match solve_decomposition(&g2, &w, 2) {
            Ok(set) => {
                println!("G2 Δ({w}): {} branch(es)", set.branches.len());
                for b in set.branches.iter().take(4) {
                    let row: Vec<String> = b.table.iter().map(|(x, m)| format!("L{x}:{m}")).collect();
                    println!("    {}", row.join(", "));
                }
            }
            Err(e) => println!("G2 Δ({w}): error {e}"),
        }
    }
}
