//! The polygonal bound against the Jensen curve, and a random check of the
//! inequality it certifies.

use icdiag::bounds::{smooth_bound, PolygonalBound};
use icdiag::entropy::{coincidence, tsallis, EntropyOrder};
use icdiag::harness::sample_simplex;

fn main() -> icdiag::error::Result<()> {
    let alpha = EntropyOrder::new(0.8)?;
    let n = 5;
    let poly = PolygonalBound::new(alpha, n)?;
    for s in poly.segments() {
        println!("k={} a={:.6} b={:.6}", s.k, s.a, s.b);
    }
    println!("{:>8} {:>10} {:>10} {:>3}", "I", "jensen", "polygon", "k");
    for j in 0..=16 {
        let x = 0.2 + 0.05 * j as f64;
        let b = poly.tsallis(x)?;
        println!("{x:>8.3} {:>10.6} {:>10.6} {:>3}", smooth_bound(x, alpha)?, b.value, b.k);
    }
    let worst = sample_simplex(n, 50_000, 1)?
        .iter()
        .map(|p| tsallis(p, alpha) - poly.tsallis(coincidence(p)).map(|b| b.value).unwrap_or(f64::NAN))
        .fold(f64::INFINITY, f64::min);
    println!("smallest H - L over 50000 samples: {worst:.3e}");
    Ok(())
}
