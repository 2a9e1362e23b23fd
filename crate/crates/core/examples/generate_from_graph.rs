//! Realizing a prescribed orthogonality graph with random kets.

use opsdisc::generate::generate_from_graph;
use opsdisc::graph::{classify, compute_graph, parse_edge_spec};
use opsdisc::states::local_rank;

fn main() -> opsdisc::Result<()> {
    // state 5 is orthogonal to every other state on the first party
    let g = parse_edge_spec(5, 2, "1:1-5,2-5,3-5,4-5,1-2;2:1-3,1-4,2-3,2-4,3-4")?;
    for dims in [[3, 4], [5, 5]] {
        let set = generate_from_graph(&g, Some(&dims), 42, 1e-9)?;
        assert_eq!(compute_graph(&set)?, g);
        println!(
            "dims {dims:?}: pattern {}, local ranks ({}, {})",
            classify(&g)?.pattern.name(),
            local_rank(&set, 0)?,
            local_rank(&set, 1)?
        );
    }
    // three mutually orthogonal kets cannot live in two dimensions
    let tri = parse_edge_spec(3, 2, "1:1-2,1-3,2-3")?;
    match generate_from_graph(&tri, Some(&[2, 2]), 1, 1e-9) {
        Err(e) => println!("triangle in C^2: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
