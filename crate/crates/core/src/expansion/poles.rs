use std::fmt;

use crate::dirichlet::SeriesSpec;
use crate::error::{Error, Result};
use crate::C64;

/// Which factor of `Γ(s) Π_j ζ(a a_j s + b_j + b)` is singular at a pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleSource {
    /// Γ at `-n`.
    Gamma(u64),
    /// Zeta factor `j` (0-based).
    Zeta(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: C64,
    pub multiplicity: usize,
    pub provenance: Vec<PoleSource>,
}

impl Pole {
    pub fn gamma_index(&self) -> Option<u64> {
        self.provenance.iter().find_map(|p| match p {
            PoleSource::Gamma(n) => Some(*n),
            PoleSource::Zeta(_) => None,
        })
    }

    pub fn has_zeta_factor(&self, j: usize) -> bool {
        self.provenance.contains(&PoleSource::Zeta(j))
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.location, self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleEnumeration {
    /// Ordered by decreasing real part.
    pub poles: Vec<Pole>,
    /// Candidates closer than `10·tol` that were not merged.
    pub warnings: Vec<String>,
}

/// Poles of `Γ(s) Π_j ζ(a a_j s + b_j + b)`: the points `(1 - b - b_j)/(a a_j)`
/// and `0, -1, …, -N`, clustered within `tol`.  A cluster containing a Γ pole
/// sits exactly on the integer.
pub fn enumerate_poles(spec: &SeriesSpec, n: usize, tol: f64) -> Result<PoleEnumeration> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("pole tolerance {tol} must be positive")));
    }
    let mut candidates: Vec<(C64, PoleSource)> = (0..=n as u64)
        .map(|k| (C64::new(-(k as f64), 0.0), PoleSource::Gamma(k)))
        .collect();
    for (j, f) in spec.factors().iter().enumerate() {
        let loc = (C64::new(1.0, 0.0) - spec.b() - f.b) / (spec.a() * f.a as f64);
        candidates.push((loc, PoleSource::Zeta(j)));
    }

    let mut poles: Vec<Pole> = Vec::new();
    let mut warnings = Vec::new();
    for (loc, source) in candidates {
        let mut joined = false;
        for pole in poles.iter_mut() {
            let d = (pole.location - loc).norm();
            if d < tol {
                pole.multiplicity += 1;
                pole.provenance.push(source);
                if let PoleSource::Gamma(k) = source {
                    pole.location = C64::new(-(k as f64), 0.0);
                }
                joined = true;
                break;
            } else if d < 10.0 * tol {
                warnings.push(format!(
                    "near-degenerate poles at {} and {} (distance {d:e}); treated as distinct",
                    pole.location, loc
                ));
            }
        }
        if !joined {
            poles.push(Pole {
                location: loc,
                multiplicity: 1,
                provenance: vec![source],
            });
        }
    }
    poles.sort_by(|a, b| {
        b.location
            .re
            .total_cmp(&a.location.re)
            .then(b.location.im.total_cmp(&a.location.im))
    });
    Ok(PoleEnumeration { poles, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn summary(e: &PoleEnumeration) -> Vec<(f64, usize)> {
        e.poles.iter().map(|p| (p.location.re, p.multiplicity)).collect()
    }

    #[test]
    fn simple_theta_poles() {
        let spec = SeriesSpec::zeta(2.0, c(0.0)).unwrap();
        let e = enumerate_poles(&spec, 2, 1e-9).unwrap();
        assert_eq!(summary(&e), vec![(0.5, 1), (0.0, 1), (-1.0, 1), (-2.0, 1)]);
        assert!(e.warnings.is_empty());
    }

    #[test]
    fn double_pole_at_zero() {
        let spec = SeriesSpec::zeta(2.0, c(1.0)).unwrap();
        let e = enumerate_poles(&spec, 1, 1e-9).unwrap();
        assert_eq!(summary(&e), vec![(0.0, 2), (-1.0, 1)]);
        assert_eq!(e.poles[0].gamma_index(), Some(0));
        assert!(e.poles[0].has_zeta_factor(0));
    }

    #[test]
    fn two_double_poles() {
        let spec = SeriesSpec::zeta_zeta_shift(2.0, c(1.0), c(-2.0)).unwrap();
        let e = enumerate_poles(&spec, 2, 1e-9).unwrap();
        assert_eq!(summary(&e), vec![(0.0, 2), (-1.0, 2), (-2.0, 1)]);
    }

    #[test]
    fn zeta_squared_double_pole() {
        let spec = SeriesSpec::zeta_squared(1.0, c(0.0)).unwrap();
        let e = enumerate_poles(&spec, 0, 1e-9).unwrap();
        assert_eq!(summary(&e), vec![(1.0, 2), (0.0, 1)]);
        assert_eq!(e.poles[0].gamma_index(), None);
    }

    #[test]
    fn triple_pole() {
        let spec = SeriesSpec::zeta_squared(2.0, c(1.0)).unwrap();
        let e = enumerate_poles(&spec, 2, 1e-9).unwrap();
        assert_eq!(summary(&e), vec![(0.0, 3), (-1.0, 1), (-2.0, 1)]);
    }

    #[test]
    fn near_coincidence_snaps_or_warns() {
        let snapped = SeriesSpec::zeta(2.0, c(1.0 + 1e-10)).unwrap();
        let e = enumerate_poles(&snapped, 1, 1e-9).unwrap();
        assert_eq!(e.poles[0].location, c(0.0));
        assert_eq!(e.poles[0].multiplicity, 2);

        let warned = SeriesSpec::zeta(2.0, c(1.0 + 1e-8)).unwrap();
        let e = enumerate_poles(&warned, 1, 1e-9).unwrap();
        assert_eq!(e.poles.len(), 3);
        assert_eq!(e.warnings.len(), 1);
        assert!(enumerate_poles(&warned, 1, 0.0).is_err());
    }
}
