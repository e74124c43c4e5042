//! Rank-one SIC-POVMs for `d ∈ {2, 3}` and general SIC-POVMs built from them.

use std::f64::consts::PI;

use super::matrix::{c, normalized, ComplexMatrix, Ket};
use super::povm::{Family, Povm};
use crate::error::{Error, Result};

/// Tetrahedron (`d = 2`) or Hesse Weyl–Heisenberg orbit (`d = 3`) vectors.
pub fn sic_vectors(d: usize) -> Result<Vec<Ket>> {
    match d {
        2 => {
            let top = Ket::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
            let (ch, sh) = ((1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt());
            let mut v = vec![top];
            for m in 0..3 {
                let phi = 2.0 * PI * m as f64 / 3.0;
                v.push(Ket::from_vec(vec![c(ch, 0.0), c(sh * phi.cos(), sh * phi.sin())]));
            }
            Ok(v)
        }
        3 => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let fiducial = [c(0.0, 0.0), c(s, 0.0), c(-s, 0.0)];
            let mut v = Vec::with_capacity(9);
            for a in 0..3 {
                for b in 0..3 {
                    // X^a Z^b |φ⟩: (X^a Z^b φ)_j = ω^{b(j-a)} φ_{j-a}
                    v.push(Ket::from_fn(3, |j, _| {
                        let src = (j + 3 - a) % 3;
                        let ang = 2.0 * PI * (b * src) as f64 / 3.0;
                        fiducial[src] * c(ang.cos(), ang.sin())
                    }));
                }
            }
            Ok(v)
        }
        _ => Err(Error::UnsupportedDimension {
            d,
            reason: "built-in SIC fiducials exist for d = 2 and d = 3; supply a frame file".into(),
        }),
    }
}

/// `N_j = |φ_j⟩⟨φ_j|/d` from `d²` unit vectors with squared overlaps `1/(d+1)`.
pub fn sic_from_vectors(d: usize, vectors: &[Ket]) -> Result<Povm> {
    if vectors.len() != d * d {
        return Err(Error::InvalidMeasurement(format!(
            "a SIC in d = {d} needs {} vectors, got {}",
            d * d,
            vectors.len()
        )));
    }
    let elems = vectors
        .iter()
        .map(|v| {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
            Ok(ComplexMatrix::projector(&normalized(v.clone())?).scale(1.0 / d as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    Povm::new(d, elems, Family::Sic)
}

pub fn sic_povm(d: usize) -> Result<Povm> {
    sic_from_vectors(d, &sic_vectors(d)?)
}

fn check_theta(d: usize, theta: f64) -> Result<()> {
    let df = d as f64;
    let (lo, hi) = (1.0 / (df * df * df), 1.0 / (df * df));
    if !(theta > lo) || theta > hi + 1e-15 {
        return Err(Error::Domain(format!(
            "theta must lie in (1/d^3, 1/d^2] = ({lo}, {hi}] for d = {d}, got {theta}"
        )));
    }
    Ok(())
}

/// General SIC `Λ_j = μ N_j + (1 - μ) 𝟙/d²` with `μ = √((θd³ - 1)/(d - 1))`.
pub fn general_sic_from(sic: &Povm, theta: f64) -> Result<Povm> {
    if sic.family() != Family::Sic {
        return Err(Error::InvalidMeasurement(
            "general SIC construction needs a rank-one SIC-POVM".into(),
        ));
    }
    let d = sic.d();
    check_theta(d, theta)?;
    let df = d as f64;
    let mu = ((theta * df.powi(3) - 1.0) / (df - 1.0)).clamp(0.0, 1.0).sqrt();
    let flat = ComplexMatrix::identity(d).scale((1.0 - mu) / (df * df));
    let elems = sic
        .elements()
        .iter()
        .map(|n| &n.scale(mu) + &flat)
        .collect();
    Povm::new(d, elems, Family::Gsic { theta })
}

pub fn general_sic(d: usize, theta: f64) -> Result<Povm> {
    check_theta(d, theta)?;
    general_sic_from(&sic_povm(d)?, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::coincidence;
    use crate::quantum::{born_probabilities, DensityMatrix};

    fn overlaps(v: &[Ket]) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.push(v[i].dotc(&v[j]).norm_sqr());
            }
        }
        out
    }

    #[test]
    fn tetrahedron_overlaps() {
        let v = sic_vectors(2).unwrap();
        assert_eq!(v.len(), 4);
        for o in overlaps(&v) {
            assert!((o - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hesse_overlaps() {
        let v = sic_vectors(3).unwrap();
        assert_eq!(v.len(), 9);
        for o in overlaps(&v) {
            assert!((o - 0.25).abs() < 1e-12);
        }
        assert!(sic_povm(3).is_ok());
        assert!(sic_povm(4).is_err());
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let sic = sic_povm(2).unwrap();
        let p = born_probabilities(&sic, &DensityMatrix::maximally_mixed(2)).unwrap();
        for q in p.probs() {
            assert!((q - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn pure_qubit_coincidence_is_one_third() {
        let sic = sic_povm(2).unwrap();
        let ket = Ket::from_vec(vec![c(0.8, 0.0), c(0.36, 0.48)]);
        let rho = DensityMatrix::pure(&ket).unwrap();
        let p = born_probabilities(&sic, &rho).unwrap();
        assert!((coincidence(&p) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn general_sic_gram_conditions() {
        let g = general_sic(2, 0.25).unwrap();
        let sic = sic_povm(2).unwrap();
        for (a, b) in g.elements().iter().zip(sic.elements()) {
            assert!(a.max_abs_diff(b) < 1e-14);
        }
        let g = general_sic(2, 0.2).unwrap();
        let report = g.validate();
        assert!(report.valid, "{:?}", report.issues);
        for e in g.elements() {
            assert!((e.trace_product(e).re - 0.2).abs() < 1e-12);
        }
        assert!(general_sic(2, 0.125).is_err());
        assert!(general_sic(2, 0.3).is_err());
        assert!(general_sic(3, 0.05).is_ok());
    }
}
