//! Serializing state sets, protocols and reports.

use opsdisc::commands::{classify_set, synthesize_set};
use opsdisc::family::family_eq11;
use opsdisc::io::{parse_protocol, parse_state_set, protocol_to_json, state_set_to_json};
use opsdisc::protocol::simulate;
use opsdisc::synthesis::{synthesize, Options};

fn main() -> opsdisc::Result<()> {
    let set = family_eq11();
    let text = state_set_to_json(&set);
    assert_eq!(parse_state_set(&text)?, set);
    println!("state set: {} bytes, round trip exact", text.len());

    let verdict = synthesize(&set, &Options::default())?;
    let protocol = verdict.protocol().expect("perfect protocol");
    let ptext = protocol_to_json(protocol);
    let back = parse_protocol(&ptext)?;
    assert_eq!(protocol_to_json(&back), ptext);
    let r = simulate(&back, &set, None)?;
    println!(
        "protocol: {} steps, replayed success {:?}",
        back.count_steps(),
        r.success
    );

    print!("{}", classify_set(&set)?.to_text());
    let report = synthesize_set(&set, &Options::default())?;
    assert_eq!(
        report.to_json(),
        synthesize_set(&set, &Options::default())?.to_json()
    );
    println!("report: {} bytes, reproducible", report.to_json().len());
    Ok(())
}
