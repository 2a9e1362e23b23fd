//! A four-outcome POVM on the third party that rules out two states per
//! outcome, and its reconstruction from vertex covers of the constraints.

use opsdisc::cert::constraint_pairs;
use opsdisc::family::family_eq11;
use opsdisc::measurement::{apply, eq12_povm, hitting_set_povm, preserves_orthogonality};

fn main() -> opsdisc::Result<()> {
    let set = family_eq11();
    let m = eq12_povm();
    println!("completeness residual {:.2e}", m.completeness_residual());
    for o in 0..m.outcomes() {
        let upd = apply(&set, &m, o)?;
        let (ok, _) = preserves_orthogonality(&set, &m, o)?;
        let left: Vec<usize> = upd.kept.iter().map(|j| j + 1).collect();
        println!(
            "{}: states {left:?} remain, orthogonality kept: {ok}",
            m.labels()[o]
        );
    }
    let pairs = constraint_pairs(&set, 2);
    let h = hitting_set_povm(&set, 2, &pairs).expect("covers resolve the identity");
    let worst = h
        .elements()
        .iter()
        .map(|e| {
            m.elements()
                .iter()
                .map(|f| (e - f).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    println!(
        "cover construction: {} outcomes, distance {worst:.1e}",
        h.outcomes()
    );
    Ok(())
}
