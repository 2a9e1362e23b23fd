//! Building protocols by hand and simulating them exactly.

use opsdisc::family::family_eq11;
use opsdisc::linalg::{basis, from_reals};
use opsdisc::measurement::{complete_local_discrimination, eq12_povm, projective_split};
use opsdisc::protocol::{simulate, ProtocolNode, Rule};

fn main() -> opsdisc::Result<()> {
    let set = family_eq11();

    // Charlie's first outcome leaves states 1, 2, 3. Bob then finds state 1
    // on |0>, and Alice separates 2 from 3. The other outcomes are left open.
    let bob = projective_split(1, &basis(3, 0))?;
    let alice = complete_local_discrimination(&set.subset(&[1, 2]), 0)?;
    let first = ProtocolNode::step(
        bob,
        Rule::Isolating,
        vec![
            ProtocolNode::identified(0),
            ProtocolNode::step(
                alice,
                Rule::CompleteLocal,
                vec![
                    ProtocolNode::identified(1),
                    ProtocolNode::identified(2),
                    ProtocolNode::ambiguous(vec![]),
                ],
            ),
        ],
    );
    let protocol = ProtocolNode::step(
        eq12_povm(),
        Rule::Given,
        vec![
            first,
            ProtocolNode::ambiguous(vec![0, 2, 3]),
            ProtocolNode::ambiguous(vec![0, 1, 4]),
            ProtocolNode::ambiguous(vec![0, 3, 4]),
        ],
    );
    let r = simulate(&protocol, &set, None)?;
    for (j, paths) in r.paths.iter().enumerate() {
        for p in paths {
            println!(
                "state {}: outcomes {:?} p = {:.4} {:?}",
                j + 1,
                p.path,
                p.probability,
                p.outcome
            );
        }
    }
    println!("success {:.4?}, overall {:.4}", r.success, r.overall);

    // Projecting Alice on |0> + |1> destroys orthogonality the other
    // parties relied on; the simulator reports the offending pairs.
    let bad = projective_split(0, &from_reals(&[1.0, 1.0, 0.0]))?;
    let protocol = ProtocolNode::step(
        bad,
        Rule::Given,
        vec![
            ProtocolNode::ambiguous((0..5).collect()),
            ProtocolNode::ambiguous((0..5).collect()),
        ],
    );
    let r = simulate(&protocol, &set, None)?;
    let lost: Vec<_> = r.violations.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    println!("orthogonality lost between {lost:?}");
    Ok(())
}
