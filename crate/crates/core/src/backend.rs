use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::genfun::{build_d1, TruncatedSeries};
use crate::glass3::closed_n3;
use crate::recursion::PathCounter;
use crate::words::{dp_n, oracle_n, ReflectionVector};

/// The interchangeable ways of computing `N(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountBackend {
    /// Lists every word.
    Oracle,
    /// Multiset dynamic program.
    Dp,
    /// Vector recursion.
    Recursion,
    /// Series coefficient of `D^n_1`.
    Gf,
    /// Three-plate closed form.
    Closed3,
}

impl CountBackend {
    pub const ALL: [CountBackend; 5] = [
        CountBackend::Oracle,
        CountBackend::Dp,
        CountBackend::Recursion,
        CountBackend::Gf,
        CountBackend::Closed3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountBackend::Oracle => "oracle",
            CountBackend::Dp => "dp",
            CountBackend::Recursion => "recursion",
            CountBackend::Gf => "gf",
            CountBackend::Closed3 => "closed3",
        }
    }

    /// Why this backend cannot count `v`, if it cannot.
    pub fn incompatibility(self, v: &ReflectionVector) -> Option<&'static str> {
        match self {
            CountBackend::Closed3 if v.n() != 3 => Some("closed form covers exactly 3 plates"),
            CountBackend::Gf if v.n() < 2 => Some("generating function needs at least 2 plates"),
            _ => None,
        }
    }

    pub fn check(self, v: &ReflectionVector) -> Result<()> {
        match self.incompatibility(v) {
            None => Ok(()),
            Some(reason) => Err(Error::BackendIncompatible {
                backend: self.name().to_string(),
                vector: v.to_string(),
                reason: reason.to_string(),
            }),
        }
    }

    pub fn count(self, v: &ReflectionVector) -> Result<BigUint> {
        Engine::new(self).count(v)
    }
}

impl fmt::Display for CountBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CountBackend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown backend {s:?}")))
    }
}

/// A backend plus whatever it caches between queries: the recursion memo,
/// or one expanded series per plate count.
#[derive(Debug)]
pub struct Engine {
    backend: CountBackend,
    recursion: PathCounter,
    series: HashMap<usize, TruncatedSeries>,
}

impl Engine {
    pub fn new(backend: CountBackend) -> Self {
        Self {
            backend,
            recursion: PathCounter::new(),
            series: HashMap::new(),
        }
    }

    pub fn backend(&self) -> CountBackend {
        self.backend
    }

    /// Expands `D^n_1` once up to `bound`, so later queries of lower total
    /// reuse it.
    pub fn prepare_series(&mut self, n: usize, bound: u64) -> Result<()> {
        let stale = self.series.get(&n).is_none_or(|s| s.bound() < bound);
        if stale {
            let s = build_d1(n)?.series(bound)?;
            self.series.insert(n, s);
        }
        Ok(())
    }

    pub fn count(&mut self, v: &ReflectionVector) -> Result<BigUint> {
        self.backend.check(v)?;
        Ok(match self.backend {
            CountBackend::Oracle => oracle_n(v),
            CountBackend::Dp => dp_n(v),
            CountBackend::Recursion => self.recursion.count(v),
            CountBackend::Closed3 => {
                let c = v.counts();
                closed_n3(u64::from(c[0]), u64::from(c[1]), u64::from(c[2]))
            }
            CountBackend::Gf => {
                let total = v.total();
                let have = self.series.get(&v.n()).map_or(0, |s| s.bound());
                if !self.series.contains_key(&v.n()) || have < total {
                    self.prepare_series(v.n(), total.max(2 * have))?;
                }
                let coeff = self.series[&v.n()]
                    .coeff(v.counts())
                    .expect("series expanded past the requested total");
                coeff.to_biguint().expect("path counts are nonnegative")
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(c: &[u32]) -> ReflectionVector {
        ReflectionVector::new(c.to_vec())
    }

    #[test]
    fn names_round_trip() {
        for b in CountBackend::ALL {
            assert_eq!(b.name().parse::<CountBackend>().unwrap(), b);
        }
        assert!("fast".parse::<CountBackend>().is_err());
    }

    #[test]
    fn all_backends_agree() {
        let v = rv(&[2, 1, 1]);
        for b in CountBackend::ALL {
            assert_eq!(b.count(&v).unwrap(), BigUint::from(2u32), "{b}");
        }
    }

    #[test]
    fn incompatible_requests() {
        let four = rv(&[1, 1, 1, 1]);
        assert!(matches!(
            CountBackend::Closed3.count(&four),
            Err(Error::BackendIncompatible { .. })
        ));
        assert!(CountBackend::Gf.count(&rv(&[2])).is_err());
        assert_eq!(
            CountBackend::Dp.count(&rv(&[2])).unwrap(),
            BigUint::from(0u32)
        );
    }

    #[test]
    fn series_cache_grows() {
        let mut e = Engine::new(CountBackend::Gf);
        assert_eq!(e.count(&rv(&[1, 1, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(e.count(&rv(&[7, 5, 7])).unwrap(), BigUint::from(840u32));
        assert_eq!(e.count(&rv(&[0, 0, 0])).unwrap(), BigUint::from(1u32));
    }
}
