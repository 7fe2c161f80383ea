//! Development probe: do the windows of class members just above (1,1,1)
//! pin the ambiguous sub-entries?

use weylforge::decomp::solve_decomposition;
use weylforge::rootsys::{Family, RootSystem};
use weylforge::weylact::is_linked;

fn main() {
    let rs = RootSystem::get(Family::C, 3).unwrap();
    let p = 3;
    let anchor = rs.weight(&[1, 1, 1]).unwrap();
    let w101 = rs.weight(&[1, 0, 1]).unwrap();
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            for c in 0..=3i64 {
                let w = rs.weight(&[a, b, c]).unwrap();
                if !is_linked(&rs, &anchor, &w, p).unwrap() {
                    continue;
                }
                if rs.height_scaled(&w) > rs.height_scaled(&rs.weight(&[2, 1, 2]).unwrap()) {
                    continue;
                }
                match solve_decomposition(&rs, &w, p) {
                    Ok(set) => {
                        // what do this window's branches say about [Δ(1,1,1):L(1,0,1)]?
                        let mut vals: Vec<i64> = set
                            .branches
                            .iter()
                            .filter_map(|br| br.table_of(&anchor).map(|t| t.get(&w101).copied().unwrap_or(0)))
                            .collect();
                        vals.sort_unstable();
                        vals.dedup();
                        println!(
                            "probe {w}: {} branches, [Δ(1,1,1):L(1,0,1)] ∈ {:?}",
                            set.branches.len(),
                            vals
                        );
                    }
                    Err(e) => println!("probe {w}: error {e}"),
                }
            }
        }
    }
}
