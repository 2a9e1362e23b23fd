//! Protocol search over random five-state bipartite structures.

use std::collections::BTreeMap;

use opsdisc::generate::{generate_from_graph, random_graph_with_counts};
use opsdisc::graph::classify;
use opsdisc::synthesis::{synthesize, Options};

fn main() -> opsdisc::Result<()> {
    for counts in [[9, 1], [8, 2], [7, 3], [6, 4], [5, 5]] {
        let mut tally: BTreeMap<(String, &str), usize> = BTreeMap::new();
        for seed in 0..12 {
            let g = random_graph_with_counts(5, &counts, seed)?;
            let pattern = classify(&g)?.pattern.name().to_string();
            let set = generate_from_graph(&g, Some(&[4, 4]), seed, 1e-9)
                .or_else(|_| generate_from_graph(&g, None, seed, 1e-9))?;
            let verdict = synthesize(&set, &Options::default())?;
            *tally.entry((pattern, verdict.name())).or_default() += 1;
        }
        println!("{counts:?}:");
        for ((pattern, verdict), n) in tally {
            println!("  {pattern:<15} {verdict:<27} {n}");
        }
    }
    Ok(())
}
