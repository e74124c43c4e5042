//! Bounds on the information diagram `(I(P), H_α(P))`.
//!
//! The polygonal bound `L_α` joins the points `(1/k, ln_α k)` of the uniform
//! distributions `U_k` by straight segments `a_{αk} - b_{αk} x`. It lies above
//! the Jensen curve `x ↦ ln_α(1/x)` and below every attainable Tsallis
//! entropy for `α ∈ [0, 2]`. The maximal probability at fixed coincidence is
//! bracketed exactly by [`maxp_lower`] and [`maxp_upper`].
//!
//! [`phi`], its derivatives, [`inflection_xi`] and [`lemma_g`] describe the
//! mixtures `x U_k + (1 - x) U_{k+1}` that realize the polygon; they are used
//! to check the polygon's structure numerically.

use serde::Serialize;

use crate::entropy::{
    coincidence, eta_unchecked, ln_alpha_unchecked, tsallis, tsallis_to_renyi, Distribution,
    EntropyOrder, SHANNON_SWITCH,
};
use crate::error::{domain, Result};

/// Slack allowed on abscissae that come out of floating-point coincidence
/// computations; values within it are clamped into the domain.
pub const ABSCISSA_TOL: f64 = 1e-12;

/// Both envelopes have square-root singularities where `kx = 1`, so a few ulps
/// of rounding in `x` would move them by `~1e-8`. Radicands below this count
/// as zero.
pub const BREAKPOINT_SNAP: f64 = 64.0 * f64::EPSILON;

fn snapped(r: f64) -> f64 {
    if r <= BREAKPOINT_SNAP {
        0.0
    } else {
        r
    }
}

/// One segment `x ↦ a - b x` of the polygonal line, joining
/// `(1/(k+1), ln_α(k+1))` and `(1/k, ln_α k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolygonalCoefficients {
    pub k: usize,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
}

impl PolygonalCoefficients {
    pub fn eval(&self, x: f64) -> f64 {
        self.a - self.b * x
    }
}

/// A bound value and the segment index that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub k: usize,
}

fn check_polygon_order(alpha: EntropyOrder) -> Result<()> {
    alpha.check_within(0.0, 2.0).map(|_| ())
}

/// `a_{αk} = (k+1) ln_α(k+1) - k ln_α k`, `b_{αk} = k(k+1)[ln_α(k+1) - ln_α k]`.
pub fn coefficients(alpha: EntropyOrder, k: usize) -> Result<PolygonalCoefficients> {
    check_polygon_order(alpha)?;
    if k == 0 {
        return Err(domain("segment index k must be >= 1"));
    }
    Ok(coefficients_unchecked(alpha.value(), k))
}

fn coefficients_unchecked(alpha: f64, k: usize) -> PolygonalCoefficients {
    let kf = k as f64;
    let lk = ln_alpha_unchecked(kf, alpha);
    let lk1 = ln_alpha_unchecked(kf + 1.0, alpha);
    PolygonalCoefficients {
        k,
        a: (kf + 1.0) * lk1 - kf * lk,
        b: kf * (kf + 1.0) * (lk1 - lk),
        alpha,
    }
}

/// The polygonal bound for distributions on `n` outcomes, with its segment
/// table precomputed. Use this in loops; the free functions build one per call.
#[derive(Debug, Clone)]
pub struct PolygonalBound {
    alpha: EntropyOrder,
    n: usize,
    segments: Vec<PolygonalCoefficients>,
}

impl PolygonalBound {
    pub fn new(alpha: EntropyOrder, n: usize) -> Result<Self> {
        check_polygon_order(alpha)?;
        if n < 2 {
            return Err(domain(format!("support size n must be >= 2, got {n}")));
        }
        let segments = (1..n)
            .map(|k| coefficients_unchecked(alpha.value(), k))
            .collect();
        Ok(Self { alpha, n, segments })
    }

    pub fn alpha(&self) -> EntropyOrder {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[PolygonalCoefficients] {
        &self.segments
    }

    fn clamp_abscissa(&self, x: f64) -> Result<f64> {
        let lo = 1.0 / self.n as f64;
        if !x.is_finite() || x < lo - ABSCISSA_TOL || x > 1.0 + ABSCISSA_TOL {
            return Err(domain(format!(
                "coincidence abscissa must lie in [1/n, 1] = [{lo}, 1] for n = {}, got {x}",
                self.n
            )));
        }
        Ok(x.clamp(lo, 1.0))
    }

    /// `max_{1 ≤ k ≤ n-1} (a_{αk} - b_{αk} x)` by exhaustive scan.
    pub fn tsallis(&self, x: f64) -> Result<BoundValue> {
        let x = self.clamp_abscissa(x)?;
        let mut best = BoundValue {
            value: f64::NEG_INFINITY,
            k: 0,
        };
        for seg in &self.segments {
            let v = seg.eval(x);
            if v > best.value {
                best = BoundValue { value: v, k: seg.k };
            }
        }
        Ok(best)
    }

    /// The same bound evaluated on the segment `k = ⌊1/x⌋` that contains `x`.
    pub fn tsallis_by_segment(&self, x: f64) -> Result<BoundValue> {
        let x = self.clamp_abscissa(x)?;
        let k = ((1.0 / x).floor() as usize).clamp(1, self.n - 1);
        let seg = &self.segments[k - 1];
        Ok(BoundValue {
            value: seg.eval(x),
            k,
        })
    }

    /// Rényi counterpart `ln[1 + (1-α) L_α(x)]/(1-α)`.
    pub fn renyi(&self, x: f64) -> Result<BoundValue> {
        let t = self.tsallis(x)?;
        Ok(BoundValue {
            value: tsallis_to_renyi(t.value, self.alpha)?,
            k: t.k,
        })
    }
}

/// `L_α(x)` on `n` outcomes, with the maximizing segment.
pub fn polygonal_tsallis_bound(x: f64, alpha: EntropyOrder, n: usize) -> Result<BoundValue> {
    PolygonalBound::new(alpha, n)?.tsallis(x)
}

/// Rényi form of [`polygonal_tsallis_bound`].
pub fn polygonal_renyi_bound(x: f64, alpha: EntropyOrder, n: usize) -> Result<BoundValue> {
    PolygonalBound::new(alpha, n)?.renyi(x)
}

/// The Jensen bound `ln_α(1/x)`.
pub fn smooth_bound(x: f64, alpha: EntropyOrder) -> Result<f64> {
    check_polygon_order(alpha)?;
    if !(x > 0.0) || x > 1.0 + ABSCISSA_TOL {
        return Err(domain(format!("smooth bound needs 0 < x <= 1, got {x}")));
    }
    Ok(ln_alpha_unchecked(1.0 / x.min(1.0), alpha.value()))
}

/// Lower envelope `Λ_p` of the maximal probability at coincidence `x`:
/// `(1/k)(1 + √((kx - 1)/(k - 1)))` on `[1/k, 1/(k-1)]`.
pub fn maxp_lower(x: f64) -> Result<f64> {
    if !(x > 0.0) || x > 1.0 + ABSCISSA_TOL {
        return Err(domain(format!(
            "max-probability lower bound needs 0 < x <= 1, got {x}"
        )));
    }
    let x = x.min(1.0);
    let k = ((1.0 / x).ceil() as usize).max(2);
    let kf = k as f64;
    let rad = snapped(kf * x - 1.0) / (kf - 1.0);
    Ok((1.0 + rad.sqrt()) / kf)
}

/// Upper envelope `(1/n)(1 + √(n-1) √(nx - 1))` of the maximal probability.
pub fn maxp_upper(x: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(domain(format!("support size n must be >= 2, got {n}")));
    }
    let nf = n as f64;
    if !x.is_finite() || x < 1.0 / nf - ABSCISSA_TOL || x > 1.0 + ABSCISSA_TOL {
        return Err(domain(format!(
            "max-probability upper bound needs x in [1/n, 1] = [{}, 1], got {x}",
            1.0 / nf
        )));
    }
    let x = x.clamp(1.0 / nf, 1.0);
    let rad = snapped(nf * x - 1.0);
    Ok((1.0 + (nf - 1.0).sqrt() * rad.sqrt()) / nf)
}

/// `F_{αk}(P) = H_α(P) - a_{αk} + b_{αk} I(P)`; non-negative for every `P`.
pub fn f_functional(p: &Distribution, alpha: EntropyOrder, k: usize) -> Result<f64> {
    let c = coefficients(alpha, k)?;
    Ok(tsallis(p, alpha) - c.a + c.b * coincidence(p))
}

fn check_mixture_weight(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("mixture weight x must lie in [0, 1], got {x}")));
    }
    Ok(())
}

fn check_open_order(alpha: EntropyOrder) -> Result<f64> {
    let a = alpha.value();
    if !(a > 0.0 && a < 2.0) {
        return Err(domain(format!("alpha must lie in (0, 2), got {a}")));
    }
    Ok(a)
}

fn check_k(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(domain("segment index k must be >= 1"));
    }
    Ok(k as f64)
}

/// `Φ_{αk}(x) = F_{αk}(x U_k + (1-x) U_{k+1})`, from the closed-form entropy
/// and coincidence of the mixture.
pub fn phi(x: f64, alpha: EntropyOrder, k: usize) -> Result<f64> {
    check_mixture_weight(x)?;
    let c = coefficients(alpha, k)?;
    let kf = k as f64;
    let big = (kf + x) / (kf * (kf + 1.0));
    let small = (1.0 - x) / (kf + 1.0);
    let h = kf * eta_unchecked(big, alpha.value()) + eta_unchecked(small, alpha.value());
    let ic = (kf + x * x) / (kf * (kf + 1.0));
    Ok(h - c.a + c.b * ic)
}

/// `Φ'_{αk}(x)`. Returns `-∞` at `x = 1` for `α ≤ 1`, where the derivative diverges.
pub fn phi_prime(x: f64, alpha: EntropyOrder, k: usize) -> Result<f64> {
    check_mixture_weight(x)?;
    let a = check_open_order(alpha)?;
    let kf = check_k(k)?;
    let delta = ln_alpha_unchecked(kf + 1.0, a) - ln_alpha_unchecked(kf, a);
    let entropy_part = if (a - 1.0).abs() < SHANNON_SWITCH {
        if x == 1.0 {
            f64::NEG_INFINITY
        } else {
            (kf * (1.0 - x) / (kf + x)).ln() / (kf + 1.0)
        }
    } else {
        let bracket = kf.powf(1.0 - a) * (kf + x).powf(a - 1.0) - (1.0 - x).powf(a - 1.0);
        a / (1.0 - a) * bracket / (kf + 1.0).powf(a)
    };
    Ok(entropy_part + 2.0 * x * delta)
}

/// `Φ''_{αk}(x)`; `-∞` at `x = 1`.
pub fn phi_double_prime(x: f64, alpha: EntropyOrder, k: usize) -> Result<f64> {
    check_mixture_weight(x)?;
    let a = check_open_order(alpha)?;
    let kf = check_k(k)?;
    let delta = ln_alpha_unchecked(kf + 1.0, a) - ln_alpha_unchecked(kf, a);
    let bracket = kf.powf(1.0 - a) * (kf + x).powf(a - 2.0) + (1.0 - x).powf(a - 2.0);
    Ok(2.0 * delta - a / (kf + 1.0).powf(a) * bracket)
}

/// Inflection point `ξ_{αk} = (2 b_{αk}/α)^{1/(α-2)}` of `f_{αk}(x) = η_α(x) - a x + b x²`.
pub fn inflection_xi(alpha: EntropyOrder, k: usize) -> Result<f64> {
    let a = check_open_order(alpha)?;
    let c = coefficients(alpha, k)?;
    Ok((2.0 * c.b / a).powf(1.0 / (a - 2.0)))
}

/// `g_k(α) = α/(k+1) + 2(1 + 1/k)^{1-α} - 2`, positive on `(1, 2)` and zero at 2.
pub fn lemma_g(alpha: EntropyOrder, k: usize) -> Result<f64> {
    let a = alpha.value();
    if !(a > 1.0 && a <= 2.0) {
        return Err(domain(format!("lemma_g needs alpha in (1, 2], got {a}")));
    }
    let kf = check_k(k)?;
    Ok(a / (kf + 1.0) + 2.0 * (1.0 + 1.0 / kf).powf(1.0 - a) - 2.0)
}
