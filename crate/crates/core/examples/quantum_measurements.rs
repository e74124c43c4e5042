//! Builds the measurement catalogue and prints the validation of each entry.

use icdiag::quantum::{
    etf_simplex, etf_validate, general_sic, mub_set, mum_kappa_max, mum_set, sic_povm,
    simplex_frame,
};

fn main() -> icdiag::error::Result<()> {
    for d in [2, 3] {
        let mubs = mub_set(d, d + 1)?;
        println!("d={d}: {} MUBs, cross deviation {:.1e}", mubs.len(), mubs.cross_deviation()?);

        let kmax = mum_kappa_max(d)?;
        let mums = mum_set(d, kmax)?;
        println!("d={d}: MUMs up to kappa = {kmax:.6}, cross deviation {:.1e}", mums.cross_deviation()?);

        let sic = sic_povm(d)?;
        let r = sic.validate();
        println!("d={d}: SIC with {} elements, valid = {}, gram deviation {:.1e}", sic.len(), r.valid, r.gram_deviation.unwrap_or(0.0));

        let theta = 0.5 * ((d as f64).powi(-3) + (d as f64).powi(-2));
        let g = general_sic(d, theta)?;
        println!("d={d}: general SIC theta = {theta:.5}, valid = {}", g.validate().valid);

        let report = etf_validate(&simplex_frame(d)?);
        println!("d={d}: simplex frame n = {}, c = {:.6}, ETF = {}", report.n, report.measured_c, report.is_etf);
        println!("d={d}: simplex POVM valid = {}", etf_simplex(d)?.validate().valid);
    }
    Ok(())
}
