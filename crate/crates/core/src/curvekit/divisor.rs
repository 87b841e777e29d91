use std::fmt;

use serde::Serialize;

use super::point::CurvePoint;
use crate::error::{Error, Result};

/// A finite formal sum `Σ m_i p_i` of distinct points with positive
/// multiplicities; as a scheme on a smooth curve, the curvilinear scheme of
/// length `m_i` at each `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    entries: Vec<(CurvePoint, u32)>,
}

impl Divisor {
    pub fn new(entries: Vec<(CurvePoint, u32)>) -> Result<Self> {
        for (i, (p, m)) in entries.iter().enumerate() {
            if *m == 0 {
                return Err(Error::InvalidDivisor(format!("zero multiplicity at {p}")));
            }
            if entries[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::InvalidDivisor(format!("repeated point {p}")));
            }
        }
        Ok(Divisor { entries })
    }

    /// The reduced divisor `p_1 + … + p_x`.
    pub fn reduced(points: Vec<CurvePoint>) -> Result<Self> {
        Self::new(points.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn entries(&self) -> &[(CurvePoint, u32)] {
        &self.entries
    }

    pub fn points(&self) -> impl Iterator<Item = &CurvePoint> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ m_i`.
    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m == 1)
    }

    /// `2Z`: every multiplicity doubled.
    pub fn doubled(&self) -> Divisor {
        Divisor {
            entries: self.entries.iter().map(|(p, m)| (p.clone(), 2 * m)).collect(),
        }
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.points().any(|q| q == p)
    }

    /// Adds a new point with multiplicity one.
    pub fn with_point(&self, p: CurvePoint) -> Result<Divisor> {
        let mut entries = self.entries.clone();
        entries.push((p, 1));
        Divisor::new(entries)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{m}*{p}") })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (p, m) in &self.entries {
            seq.serialize_element(&serde_json::json!({ "point": p.to_string(), "mult": m }))?;
        }
        seq.end()
    }
}

/// `serialize_with` helper: the display string, for tabular records.
pub fn as_display<S: serde::Serializer>(d: &Divisor, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeats_and_zero_multiplicity() {
        let p = CurvePoint::t_int(0);
        assert!(Divisor::new(vec![(p.clone(), 1), (p.clone(), 2)]).is_err());
        assert!(Divisor::new(vec![(p, 0)]).is_err());
    }

    #[test]
    fn doubling_and_degree() {
        let z = Divisor::new(vec![(CurvePoint::t_int(0), 2), (CurvePoint::t_int(1), 1)]).unwrap();
        assert_eq!(z.degree(), 3);
        assert!(!z.is_reduced());
        assert_eq!(z.doubled().degree(), 6);
        assert_eq!(z.to_string(), "[2*t=0, t=1]");
    }
}
