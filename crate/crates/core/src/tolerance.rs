use std::fmt;
use std::str::FromStr;

/// Numerical tolerances shared by every operation on a POVM.
///
/// All values are absolute except `rank`, which is relative to the largest
/// eigenvalue (or singular value) of the matrix being ranked.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// max |A - A*| entry.
    pub hermitian: f64,
    /// Lowest admissible eigenvalue is `-psd`.
    pub psd: f64,
    /// max |sum M_j - I| entry.
    pub sum: f64,
    /// Relative cutoff for numerical rank.
    pub rank: f64,
    /// Reconstruction error for spectral vectors and dilations.
    pub recon: f64,
    /// Minimum eigenvalue for an operator to count as invertible.
    pub inv: f64,
    /// Isometry defect of a dilation.
    pub iso: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-9,
            psd: 1e-9,
            sum: 1e-9,
            rank: 1e-8,
            recon: 1e-7,
            inv: 1e-10,
            iso: 1e-9,
        }
    }
}

impl Tolerances {
    /// Every epsilon of the default profile divided by 100.
    pub fn strict() -> Self {
        Self::default().scaled(0.01)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances {
            hermitian: self.hermitian * factor,
            psd: self.psd * factor,
            sum: self.sum * factor,
            rank: self.rank * factor,
            recon: self.recon * factor,
            inv: self.inv * factor,
            iso: self.iso * factor,
        }
    }

    pub fn from_profile(profile: ToleranceProfile) -> Self {
        match profile {
            ToleranceProfile::Default => Self::default(),
            ToleranceProfile::Strict => Self::strict(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ToleranceProfile {
    #[default]
    Default,
    Strict,
}

impl FromStr for ToleranceProfile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "default" => Ok(ToleranceProfile::Default),
            "strict" => Ok(ToleranceProfile::Strict),
            other => Err(format!(
                "unknown tolerance profile `{other}` (expected default|strict)"
            )),
        }
    }
}

impl fmt::Display for ToleranceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToleranceProfile::Default => f.write_str("default"),
            ToleranceProfile::Strict => f.write_str("strict"),
        }
    }
}
