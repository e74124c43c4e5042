//! Tsallis and Rényi lower bounds for each family as the state gets purer.

use icdiag::entropy::EntropyOrder;
use icdiag::relations::{min_entropy_sandwich, renyi_bound, tsallis_bound, ScenarioParams};

fn main() -> icdiag::error::Result<()> {
    let d = 3;
    let alpha = EntropyOrder::new(1.5)?;
    println!("{:>7} {:>9} {:>9} {:>9} {:>9} {:>9}", "purity", "mub", "mum", "etf", "sic", "gsic");
    for j in 0..=6 {
        let pur = 1.0 / 3.0 + (2.0 / 3.0) * j as f64 / 6.0;
        let rows = [
            ScenarioParams::mub(d, 4, pur)?,
            ScenarioParams::mum(d, 4, 0.5, pur)?,
            ScenarioParams::etf(d, 4, pur)?,
            ScenarioParams::sic(d, pur)?,
            ScenarioParams::gsic(d, 0.08, pur)?,
        ];
        let vals = rows
            .iter()
            .map(|p| tsallis_bound(p, alpha).map(|b| format!("{:>9.5}", b.bound)))
            .collect::<icdiag::error::Result<Vec<_>>>()?;
        println!("{pur:>7.4} {}", vals.join(" "));
    }
    let p = ScenarioParams::sic(2, 1.0)?;
    println!("qubit SIC, pure state: Renyi-1.5 bound {:.6}", renyi_bound(&p, alpha)?.bound);
    let s = min_entropy_sandwich(&ScenarioParams::gsic(2, 0.2, 0.9)?)?;
    println!("general SIC min-entropy in [{:.6}, {:.6}]", s.lower, s.upper);
    Ok(())
}
