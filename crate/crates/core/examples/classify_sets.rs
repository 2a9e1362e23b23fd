//! Orthogonality graphs, relation vectors and structural patterns.

use opsdisc::commands::demo_set;
use opsdisc::graph::{canonical_form, classify, compute_graph, relation_vector};
use opsdisc::states::local_rank;

fn main() -> opsdisc::Result<()> {
    for name in ["eq3", "eq10", "eq11", "theorem4-3"] {
        let set = demo_set(name)?;
        let g = compute_graph(&set)?;
        let case = classify(&g)?;
        let ranks: Vec<usize> = (0..set.parties())
            .map(|p| local_rank(&set, p))
            .collect::<Result<_, _>>()?;
        println!(
            "{name}: vector {:?}, pattern {}, local ranks {ranks:?}",
            relation_vector(&g).counts,
            case.pattern.name()
        );
        for p in 0..g.parties() {
            let edges: Vec<_> = g.edges(p).iter().map(|&(a, b)| (a + 1, b + 1)).collect();
            println!("  party {} edges {edges:?}", p + 1);
        }
    }
    // relabeling states and swapping parties does not change the class
    let g = compute_graph(&demo_set("eq3")?)?;
    let h = g.relabeled(&[2, 0, 4, 1, 3], &[1, 0]);
    assert_eq!(canonical_form(&g), canonical_form(&h));
    println!("relabeled double cycle has the same canonical key");
    Ok(())
}
