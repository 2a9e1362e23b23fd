//! Orthogonality-preserving measurement spaces and certificates.

use opsdisc::cert::{analyze, certify_indistinguishable, witness_measurement, TrivialityVerdict};
use opsdisc::family::{family_eq11, family_eq3};
use opsdisc::linalg::c;
use opsdisc::measurement::{apply, preserves_all};

fn main() -> opsdisc::Result<()> {
    let set = family_eq3(c(0.8, 0.3), c(-1.2, 0.5), c(1.5, 0.0), c(0.4, -0.9))?;
    let cert = certify_indistinguishable(&set)?.expect("the simple double cycle is certified");
    for pc in &cert.parties {
        println!(
            "party {}: {} constraints, space dimension {}, residuals {:.1e} / {:.1e}",
            pc.space.party + 1,
            pc.space.constraint_pairs.len(),
            pc.space.basis.len(),
            pc.constraint_residual,
            pc.proportionality_residual
        );
    }
    assert!(cert.recheck(&set));

    // an extra dimension adds freedom, but none of it acts on the kets' span
    let wide = set.embed_party(0, 4)?;
    let (space, verdict) = analyze(&wide)?.remove(0);
    println!(
        "embedded party 1: dimension {}, {}",
        space.basis.len(),
        verdict.name()
    );

    // the perfectly distinguishable tripartite set has an informative party
    let set = family_eq11();
    for (space, verdict) in analyze(&set)? {
        println!("tripartite party {}: {}", space.party + 1, verdict.name());
        if let TrivialityVerdict::Informative { witness, pair } = verdict {
            let m = witness_measurement(space.party, &witness)?;
            assert!(preserves_all(&set, &m)?);
            let p = apply(&set, &m, 0)?.probabilities;
            println!(
                "  witness separates states {} and {}: {:.3} vs {:.3}",
                pair.0 + 1,
                pair.1 + 1,
                p[pair.0],
                p[pair.1]
            );
        }
    }
    Ok(())
}
