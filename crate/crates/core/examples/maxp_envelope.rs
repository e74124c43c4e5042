//! Range of the maximal probability at fixed index of coincidence, and the
//! distributions that attain both ends.

use icdiag::bounds::{maxp_lower, maxp_upper};
use icdiag::entropy::{coincidence, max_probability};
use icdiag::harness::{extremal_maxp, extremal_maxp_upper};

fn main() -> icdiag::error::Result<()> {
    let n = 5;
    println!("{:>6} {:>10} {:>10}", "I", "lower", "upper");
    for j in 0..=8 {
        let x = 0.2 + 0.1 * j as f64;
        println!("{x:>6.2} {:>10.6} {:>10.6}", maxp_lower(x)?, maxp_upper(x, n)?);
    }
    let low = extremal_maxp(2, 0.7236, n)?;
    let high = extremal_maxp_upper(0.57947, n)?;
    for (name, p) in [("clustered", low), ("flat tail", high)] {
        let i = coincidence(&p);
        println!(
            "{name}: I = {i:.6}, p_max = {:.6}, envelope = [{:.6}, {:.6}]",
            max_probability(&p),
            maxp_lower(i)?,
            maxp_upper(i, n)?
        );
    }
    Ok(())
}
