//! Time-dependent oscillator families: mass, stiffness, frequency, damping.
//!
//! All shipped families share omega(t) = omega0*t0/t and differ in how the
//! 1/t dependence is split between the mass and the stiffness:
//!
//! | family             | m(t)          | k(t)          | gamma(t) |
//! |--------------------|---------------|---------------|----------|
//! | `CaseA`            | m0*t/t0       | k0*t0/t       | 1/t      |
//! | `CaseB`            | m0            | k0*(t0/t)^2   | 0        |
//! | `CaseC`            | m0*(t/t0)^2   | k0            | 2/t      |
//! | `ConstantBaseline` | m0            | k0            | 0        |
//!
//! `UserDefined` accepts arbitrary positive coefficient callbacks and gets
//! its damping rate from a central finite difference of ln m(t).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Coefficient callback for user-defined families.
pub type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The oscillator family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Linear mass growth, inverse stiffness decay; exactly log-periodic.
    CaseA,
    /// Constant mass, inverse-square stiffness decay; growing amplitude.
    CaseB,
    /// Quadratic mass growth, constant stiffness; decaying amplitude.
    CaseC,
    /// The textbook oscillator with constant coefficients.
    ConstantBaseline,
    /// Arbitrary positive m(t), k(t) callbacks.
    UserDefined,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::CaseA => "case-a",
            Family::CaseB => "case-b",
            Family::CaseC => "case-c",
            Family::ConstantBaseline => "constant",
            Family::UserDefined => "user-defined",
        }
    }

    /// Time coefficients of A/B/C are singular at t = 0, so queries must
    /// stay at t > 0. The baseline is regular everywhere, but we keep one
    /// domain rule for all shipped families.
    fn requires_positive_time(self) -> bool {
        true
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "case-a" | "a" => Ok(Family::CaseA),
            "case-b" | "b" => Ok(Family::CaseB),
            "case-c" | "c" => Ok(Family::CaseC),
            "constant" | "constant-baseline" => Ok(Family::ConstantBaseline),
            "user-defined" | "user" => Ok(Family::UserDefined),
            other => Err(Error::Config(format!(
                "unknown family `{other}` (expected case-a, case-b, case-c, constant, user-defined)"
            ))),
        }
    }
}

/// An immutable parametric oscillator: the family plus its reference scales.
///
/// Constructed once, then shared freely; every query is a pure function of
/// `(self, t)`.
#[derive(Clone)]
pub struct OscillatorSpec {
    family: Family,
    m0: f64,
    k0: f64,
    t0: f64,
    omega0: f64,
    hbar: f64,
    user: Option<UserCoefficients>,
}

#[derive(Clone)]
struct UserCoefficients {
    mass: Coefficient,
    stiffness: Coefficient,
}

impl fmt::Debug for OscillatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OscillatorSpec")
            .field("family", &self.family)
            .field("m0", &self.m0)
            .field("k0", &self.k0)
            .field("t0", &self.t0)
            .field("omega0", &self.omega0)
            .field("hbar", &self.hbar)
            .finish()
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            message: format!("must be positive and finite, got {value}"),
        })
    }
}

impl OscillatorSpec {
    /// Builds a shipped family with hbar = 1.
    pub fn new(family: Family, m0: f64, k0: f64, t0: f64) -> Result<Self> {
        Self::with_hbar(family, m0, k0, t0, 1.0)
    }

    /// Builds a shipped family with an explicit action scale.
    pub fn with_hbar(family: Family, m0: f64, k0: f64, t0: f64, hbar: f64) -> Result<Self> {
        if family == Family::UserDefined {
            return Err(Error::InvalidParameter {
                name: "family",
                message: "use OscillatorSpec::user_defined for callback families".into(),
            });
        }
        require_positive("m0", m0)?;
        require_positive("k0", k0)?;
        require_positive("t0", t0)?;
        require_positive("hbar", hbar)?;
        Ok(OscillatorSpec {
            family,
            m0,
            k0,
            t0,
            omega0: (k0 / m0).sqrt(),
            hbar,
            user: None,
        })
    }

    /// Builds a family from coefficient callbacks; m0 and k0 are taken as the
    /// callback values at the reference time t0.
    pub fn user_defined(
        mass: Coefficient,
        stiffness: Coefficient,
        t0: f64,
        hbar: f64,
    ) -> Result<Self> {
        require_positive("t0", t0)?;
        require_positive("hbar", hbar)?;
        let m0 = mass(t0);
        let k0 = stiffness(t0);
        require_positive("m(t0)", m0)?;
        require_positive("k(t0)", k0)?;
        Ok(OscillatorSpec {
            family: Family::UserDefined,
            m0,
            k0,
            t0,
            omega0: (k0 / m0).sqrt(),
            hbar,
            user: Some(UserCoefficients { mass, stiffness }),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn m0(&self) -> f64 {
        self.m0
    }
    pub fn k0(&self) -> f64 {
        self.k0
    }
    pub fn t0(&self) -> f64 {
        self.t0
    }
    /// Reference angular frequency sqrt(k0/m0).
    pub fn omega0(&self) -> f64 {
        self.omega0
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if self.family.requires_positive_time() && !(t.is_finite() && t > 0.0) {
            return Err(Error::NonPositiveTime { t });
        }
        Ok(())
    }

    /// m(t).
    pub fn mass(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match self.family {
            Family::CaseA => self.m0 * t / self.t0,
            Family::CaseB | Family::ConstantBaseline => self.m0,
            Family::CaseC => self.m0 * (t / self.t0).powi(2),
            Family::UserDefined => (self.user.as_ref().unwrap().mass)(t),
        })
    }

    /// k(t).
    pub fn stiffness(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match self.family {
            Family::CaseA => self.k0 * self.t0 / t,
            Family::CaseB => self.k0 * (self.t0 / t).powi(2),
            Family::CaseC | Family::ConstantBaseline => self.k0,
            Family::UserDefined => (self.user.as_ref().unwrap().stiffness)(t),
        })
    }

    /// omega(t) = sqrt(k(t)/m(t)); equals omega0*t0/t for the shipped
    /// log-periodic families.
    pub fn omega(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match self.family {
            Family::CaseA | Family::CaseB | Family::CaseC => self.omega0 * self.t0 / t,
            Family::ConstantBaseline => self.omega0,
            Family::UserDefined => (self.stiffness(t)? / self.mass(t)?).sqrt(),
        })
    }

    /// Damping rate gamma(t) = d/dt ln m(t).
    ///
    /// User-defined families use a central finite difference with a
    /// scale-invariant step, everything else is closed-form.
    pub fn gamma(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match self.family {
            Family::CaseA => 1.0 / t,
            Family::CaseB | Family::ConstantBaseline => 0.0,
            Family::CaseC => 2.0 / t,
            Family::UserDefined => {
                let h = (1e-6 * t).max(1e-9);
                let up = self.mass(t + h)?;
                let down = self.mass(t - h)?;
                (up.ln() - down.ln()) / (2.0 * h)
            }
        })
    }

    /// 4*omega0^2*t0^2 - 1, the regularity parameter of the square-root
    /// closed forms. Positive values give the oscillatory branch.
    pub fn discriminant(&self) -> f64 {
        4.0 * self.omega0.powi(2) * self.t0.powi(2) - 1.0
    }

    /// Errors unless the discriminant is strictly positive. Called before
    /// every CaseB/CaseC closed form.
    pub fn require_positive_discriminant(&self) -> Result<f64> {
        let d = self.discriminant();
        if d > 0.0 {
            Ok(d)
        } else {
            Err(Error::NonPositiveDiscriminant { value: d })
        }
    }

    /// JSON provenance block embedded in every report.
    pub fn provenance(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.label(),
            "m0": self.m0,
            "k0": self.k0,
            "t0": self.t0,
            "omega0": self.omega0,
            "hbar": self.hbar,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family) -> OscillatorSpec {
        OscillatorSpec::new(family, 1.0, 100.0, 1.0).unwrap()
    }

    #[test]
    fn mass_anchors() {
        assert_eq!(spec(Family::CaseA).mass(1.0).unwrap(), 1.0);
        assert_eq!(spec(Family::CaseC).mass(3.0).unwrap(), 9.0);
        let b = OscillatorSpec::new(Family::CaseB, 2.0, 100.0, 1.0).unwrap();
        assert_eq!(b.mass(17.0).unwrap(), 2.0);
    }

    #[test]
    fn stiffness_anchors() {
        assert_eq!(spec(Family::CaseB).stiffness(2.0).unwrap(), 25.0);
        assert_eq!(spec(Family::CaseA).stiffness(1.0).unwrap(), 100.0);
        let c = OscillatorSpec::new(Family::CaseC, 1.0, 5.0, 1.0).unwrap();
        assert_eq!(c.stiffness(40.0).unwrap(), 5.0);
    }

    #[test]
    fn omega_anchors() {
        assert_eq!(spec(Family::CaseA).omega(1.0).unwrap(), 10.0);
        assert_eq!(spec(Family::CaseB).omega(4.0).unwrap(), 2.5);
        assert!((spec(Family::CaseC).omega(10.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_is_the_damping_coefficient_of_the_equation_of_motion() {
        assert_eq!(spec(Family::CaseA).gamma(2.0).unwrap(), 0.5);
        assert_eq!(spec(Family::CaseB).gamma(7.0).unwrap(), 0.0);
        assert_eq!(spec(Family::CaseC).gamma(4.0).unwrap(), 0.5);
    }

    #[test]
    fn omega_squared_times_mass_equals_stiffness() {
        for family in [
            Family::CaseA,
            Family::CaseB,
            Family::CaseC,
            Family::ConstantBaseline,
        ] {
            let s = spec(family);
            for &t in &[0.3, 1.0, 2.7, 31.0, 100.0] {
                let lhs = s.omega(t).unwrap().powi(2) * s.mass(t).unwrap();
                let rhs = s.stiffness(t).unwrap();
                assert!(
                    ((lhs - rhs) / rhs).abs() < 1e-12,
                    "{family:?} t={t}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn omega0_squared_times_m0_matches_k0() {
        let s = spec(Family::CaseA);
        assert!((s.omega0().powi(2) * s.m0() - s.k0()).abs() / s.k0() < 1e-12);
    }

    #[test]
    fn nonpositive_time_is_rejected() {
        for family in [Family::CaseA, Family::CaseB, Family::CaseC] {
            let s = spec(family);
            for t in [0.0, -1.0, f64::NAN] {
                assert!(matches!(s.mass(t), Err(Error::NonPositiveTime { .. })));
                assert!(matches!(s.gamma(t), Err(Error::NonPositiveTime { .. })));
            }
        }
    }

    #[test]
    fn invalid_scales_are_rejected() {
        assert!(OscillatorSpec::new(Family::CaseA, 0.0, 1.0, 1.0).is_err());
        assert!(OscillatorSpec::new(Family::CaseA, 1.0, -2.0, 1.0).is_err());
        assert!(OscillatorSpec::new(Family::CaseA, 1.0, 1.0, 0.0).is_err());
        assert!(OscillatorSpec::with_hbar(Family::CaseA, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn discriminant_at_plot_parameters() {
        // omega0*t0 = 10 gives 4*100 - 1.
        assert_eq!(spec(Family::CaseB).discriminant(), 399.0);
        let narrow = OscillatorSpec::new(Family::CaseB, 1.0, 0.16, 1.0).unwrap(); // omega0*t0 = 0.4
        assert!(matches!(
            narrow.require_positive_discriminant(),
            Err(Error::NonPositiveDiscriminant { .. })
        ));
    }

    #[test]
    fn user_defined_gamma_matches_closed_form_by_finite_difference() {
        // Same coefficients as CaseA, supplied as callbacks.
        let user = OscillatorSpec::user_defined(
            Arc::new(|t| t),
            Arc::new(|t| 100.0 / t),
            1.0,
            1.0,
        )
        .unwrap();
        let closed = spec(Family::CaseA);
        for &t in &[1.0, 3.0, 10.0, 100.0] {
            let num = user.gamma(t).unwrap();
            let exact = closed.gamma(t).unwrap();
            assert!(
                ((num - exact) / exact).abs() < 1e-6,
                "t={t}: {num} vs {exact}"
            );
        }
    }

    #[test]
    fn family_labels_parse_back() {
        for family in [
            Family::CaseA,
            Family::CaseB,
            Family::CaseC,
            Family::ConstantBaseline,
        ] {
            let parsed: Family = family.label().parse().unwrap();
            assert_eq!(parsed, family);
        }
        assert!("case-d".parse::<Family>().is_err());
    }
}
