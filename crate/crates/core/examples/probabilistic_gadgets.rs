//! First-party measurements that identify one state of the double cycle with
//! nonzero probability, compared with their closed forms and with the search.

use opsdisc::commands::{theorem4_params, theorem4_protocol};
use opsdisc::family::family_eq2;
use opsdisc::protocol::simulate;
use opsdisc::synthesis::{synthesize, Options};

fn main() -> opsdisc::Result<()> {
    for case in 1..=3u8 {
        let p = theorem4_params(case)?;
        let set = family_eq2(&p)?;
        let gadget = simulate(&theorem4_protocol(&set, &p, case)?, &set, None)?;
        let (b, c, d, e, g) = (p.b, p.c(), p.d, p.e(), p.g);
        let closed = match case {
            1 => d.norm_sqr() / (5.0 * (1.0 + b.norm_sqr() + c.norm_sqr() + d.norm_sqr())),
            2 => g.norm_sqr() / (5.0 * (1.0 + e.norm_sqr() + g.norm_sqr())),
            _ => {
                let db = d.norm_sqr() + b.norm_sqr();
                (d.norm_sqr() / db
                    + (d - g * b).norm_sqr() / (db * (1.0 + e.norm_sqr() + g.norm_sqr())))
                    / 5.0
            }
        };
        let best = synthesize(&set, &Options::default())?;
        println!(
            "case {case}: gadget {:.6} (closed form {closed:.6}), search {} {:.6}",
            gadget.overall,
            best.name(),
            best.report().map_or(0.0, |r| r.overall)
        );
    }
    Ok(())
}
