//! Measures random states with the qutrit MUBs and the Hesse SIC and reports
//! how close the uncertainty relations come to being tight.

use icdiag::harness::{default_alphas, test_states};
use icdiag::quantum::{mub_set, sic_povm};
use icdiag::relations::{certify, EntropyKind, Target};

fn main() -> icdiag::error::Result<()> {
    let states = test_states(3, 2000, 7)?;
    let alphas = default_alphas();
    let mubs = mub_set(3, 4)?;
    let sic = sic_povm(3)?;
    for (name, target) in [("4 MUBs", Target::Set(&mubs)), ("SIC", Target::Single(&sic))] {
        let cert = certify(target, &states, &alphas)?;
        println!("{name}: {} reports, min slack {:.3e}, passed {}", cert.reports.len(), cert.min_slack, cert.passed);
        for a in &alphas {
            let tightest = cert
                .reports
                .iter()
                .filter(|r| r.kind == EntropyKind::Tsallis && r.alpha == a.value())
                .filter_map(|r| r.slack)
                .fold(f64::INFINITY, f64::min);
            println!("  alpha {:.2}: tightest Tsallis slack {tightest:.4}", a.value());
        }
    }
    Ok(())
}
