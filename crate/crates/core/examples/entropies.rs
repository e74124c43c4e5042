//! Tsallis, Rényi and min-entropies of a distribution across orders.
//!
//! cargo run --example entropies -- 0.5,0.3,0.2

use icdiag::entropy::{coincidence, min_entropy, renyi, shannon, tsallis, Distribution, EntropyOrder};

fn main() -> icdiag::error::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "0.5,0.3,0.2".into());
    let p = Distribution::parse_list(&arg)?;
    println!("P = {:?}", p.probs());
    println!("I(P) = {:.6}  Shannon = {:.6}  R_inf = {:.6}", coincidence(&p), shannon(&p), min_entropy(&p));
    println!("{:>6} {:>12} {:>12}", "alpha", "tsallis", "renyi");
    for i in 0..=8 {
        let a = EntropyOrder::new(0.25 * i as f64)?;
        println!("{:>6.2} {:>12.6} {:>12.6}", a.value(), tsallis(&p, a), renyi(&p, a));
    }
    Ok(())
}
