use serde::Serialize;

use super::curve::Curve;
use crate::error::{Error, Result};

/// The two built-in linear systems.
///
/// * `Hyperplane`: restrictions of the coordinate functions of the ambient
///   P^r, `dim V = r + 1`.
/// * `Canonical`: the differentials `x^i dx / y`, `i = 0..g-1`, on a
///   hyperelliptic curve `y^2 = f(x)`, `dim V = g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearSystem {
    Hyperplane,
    Canonical,
}

impl LinearSystem {
    pub fn dim_v(&self, curve: &Curve) -> Result<usize> {
        match (self, curve) {
            (LinearSystem::Canonical, Curve::Hyperelliptic(h)) => Ok(h.genus()),
            (LinearSystem::Canonical, other) => Err(Error::UnsupportedSystem(format!(
                "canonical system is only modelled on hyperelliptic curves, not {}",
                other.kind()
            ))),
            (LinearSystem::Hyperplane, Curve::Hyperelliptic(_)) => Err(Error::UnsupportedSystem(
                "the hyperelliptic model is not embedded; use the canonical system".into(),
            )),
            (LinearSystem::Hyperplane, c) => Ok(c.ambient().expect("embedded model") + 1),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LinearSystem::Hyperplane => "hyperplane",
            LinearSystem::Canonical => "canonical",
        }
    }
}

impl std::str::FromStr for LinearSystem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hyperplane" => Ok(LinearSystem::Hyperplane),
            "canonical" => Ok(LinearSystem::Canonical),
            other => Err(format!("unknown system `{other}` (expected hyperplane or canonical)")),
        }
    }
}
