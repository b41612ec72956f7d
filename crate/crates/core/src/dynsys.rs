use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of point indices, kept sorted.
pub type PointSet = BTreeSet<usize>;

/// A finite dynamical system: points 0..n acted on by a bijection sigma.
///
/// Orbits are precomputed at construction, so iterated application runs in
/// constant time and periodic sets never walk the map more than once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynSystem {
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    orbit_id: Vec<usize>,
    orbit_pos: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

/// Finite-system reading of the standard dynamical predicates. With the
/// discrete topology an orbit is dense exactly when it is everything, so
/// both predicates collapse to "X is a single orbit".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DynamicsPredicates {
    pub minimal: bool,
    pub topologically_transitive: bool,
}

impl DynSystem {
    /// Validates that sigma is a bijection of 0..sigma.len(). The error
    /// names the first offending index.
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::EmptySystem);
        }
        let mut seen_at: Vec<Option<usize>> = vec![None; n];
        for (position, &image) in sigma.iter().enumerate() {
            if image >= n {
                return Err(Error::ImageOutOfRange {
                    position,
                    image,
                    size: n,
                });
            }
            if let Some(first) = seen_at[image] {
                return Err(Error::NotBijective {
                    image,
                    first,
                    second: position,
                });
            }
            seen_at[image] = Some(position);
        }
        let mut sigma_inv = vec![0; n];
        for (position, &image) in sigma.iter().enumerate() {
            sigma_inv[image] = position;
        }
        let mut orbit_id = vec![usize::MAX; n];
        let mut orbit_pos = vec![0; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_id[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut x = start;
            loop {
                orbit_id[x] = id;
                orbit_pos[x] = orbit.len();
                orbit.push(x);
                x = sigma[x];
                if x == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        Ok(DynSystem {
            sigma,
            sigma_inv,
            orbit_id,
            orbit_pos,
            orbits,
        })
    }

    /// The identity system on n points.
    pub fn identity(n: usize) -> Result<Self> {
        DynSystem::new((0..n).collect())
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point: x,
                size: self.size(),
            })
        }
    }

    pub fn check_points(&self, set: &PointSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&x) => self.check_point(x),
            None => Ok(()),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.sigma[x]
    }

    pub fn apply_inv(&self, x: usize) -> usize {
        self.sigma_inv[x]
    }

    /// sigma^k(x) for any integer k, via the point's orbit.
    pub fn apply_pow(&self, k: i64, x: usize) -> usize {
        let orbit = &self.orbits[self.orbit_id[x]];
        let len = orbit.len() as i64;
        let idx = (self.orbit_pos[x] as i64 + k).rem_euclid(len);
        orbit[idx as usize]
    }

    /// Points fixed by sigma^n. The exponent must be nonzero; every point
    /// would trivially qualify at n = 0.
    pub fn per(&self, n: i64) -> Result<PointSet> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok((0..self.size())
            .filter(|&x| self.apply_pow(n, x) == x)
            .collect())
    }

    /// Points moved by sigma^n: the complement of `per(n)`.
    pub fn sep(&self, n: i64) -> Result<PointSet> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok((0..self.size())
            .filter(|&x| self.apply_pow(n, x) != x)
            .collect())
    }

    /// Points with infinite orbit. Every orbit of a finite system has length
    /// at most the number of points, so this is the empty set.
    pub fn per_infinity(&self) -> PointSet {
        PointSet::new()
    }

    /// The partition into cycles, each listed from its smallest point in
    /// sigma order; cycles are ordered by smallest point.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> &[usize] {
        &self.orbits[self.orbit_id[x]]
    }

    pub fn orbit_len(&self, x: usize) -> usize {
        self.orbit_of(x).len()
    }

    /// Least common multiple of the orbit lengths: the order of sigma.
    pub fn orbit_lcm(&self) -> i64 {
        self.orbits
            .iter()
            .fold(1i64, |acc, orbit| acc.lcm(&(orbit.len() as i64)))
    }

    /// Whether sigma maps the set onto itself.
    pub fn is_invariant(&self, set: &PointSet) -> Result<bool> {
        self.check_points(set)?;
        Ok(set.iter().all(|&x| set.contains(&self.apply(x))))
    }

    pub fn predicates(&self) -> DynamicsPredicates {
        let single_orbit = self.orbits.len() == 1;
        DynamicsPredicates {
            minimal: single_orbit,
            topologically_transitive: single_orbit,
        }
    }

    /// Cycle notation, e.g. `(0 1)(2)`.
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        for orbit in &self.orbits {
            out.push('(');
            for (i, x) in orbit.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for DynSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points, sigma = {}", self.size(), self.cycle_notation())
    }
}

#[derive(Serialize, Deserialize)]
struct SystemSpec {
    points: usize,
    sigma: Vec<usize>,
}

impl Serialize for DynSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SystemSpec {
            points: self.size(),
            sigma: self.sigma.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DynSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let spec = SystemSpec::deserialize(deserializer)?;
        if spec.points != spec.sigma.len() {
            return Err(D::Error::custom(format!(
                "points is {} but sigma lists {} images",
                spec.points,
                spec.sigma.len()
            )));
        }
        DynSystem::new(spec.sigma).map_err(|e| D::Error::custom(e.to_string()))
    }
}
