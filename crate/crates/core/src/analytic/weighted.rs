use super::{check_alpha, two_path, RelativeDensity, SpaceSlitConfig};
use crate::error::Result;
use crate::units::Momentum;

/// Momentum pattern of slits with amplitudes `α` and `1-α`,
/// `(2α-1)² + 4α(1-α) cos²[(p a/ħ - φ)/2]`. Its maximum is 1 for every α.
pub fn weighted_slit_momentum_density(p: Momentum, cfg: &SpaceSlitConfig) -> RelativeDensity {
    two_path(cfg.alpha, p.internal() * cfg.separation.internal() - cfg.phase)
}

/// Fringe visibility `(Imax - Imin)/(Imax + Imin) = 4α(1-α) / (1 + (2α-1)²)`.
pub fn fringe_visibility(alpha: f64) -> Result<f64> {
    let alpha = check_alpha(alpha)?;
    let d = 2.0 * alpha - 1.0;
    Ok(4.0 * alpha * (1.0 - alpha) / (1.0 + d * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::space_slit_momentum_density;
    use crate::units::Length;
    use std::f64::consts::PI;

    #[test]
    fn equal_weights_recover_the_symmetric_pattern() {
        let cfg = SpaceSlitConfig::new(Length::nm(100.0), 0.4, 0.5).unwrap();
        for k in 0..500 {
            let p = Momentum::from_internal(-0.1 + 4e-4 * k as f64);
            let w = weighted_slit_momentum_density(p, &cfg).value();
            let c = (0.5 * (p.internal() * cfg.separation().internal() - cfg.phase())).cos();
            assert!((w - c * c).abs() < 1e-15);
            assert_eq!(w, space_slit_momentum_density(p, &cfg).value());
        }
    }

    #[test]
    fn quarter_weight_contrast() {
        let cfg = SpaceSlitConfig::new(Length::nm(100.0), 0.0, 0.25).unwrap();
        let zero = Momentum::from_internal(PI / cfg.separation().internal());
        let min = weighted_slit_momentum_density(zero, &cfg).value();
        let max = weighted_slit_momentum_density(Momentum::from_internal(0.0), &cfg).value();
        assert!((min / max - 0.25).abs() < 1e-15);
        assert!((fringe_visibility(0.25).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn visibility_endpoints() {
        assert_eq!(fringe_visibility(0.5).unwrap(), 1.0);
        assert_eq!(fringe_visibility(0.0).unwrap(), 0.0);
        assert_eq!(fringe_visibility(1.0).unwrap(), 0.0);
        assert!(fringe_visibility(1.01).is_err());
    }
}
