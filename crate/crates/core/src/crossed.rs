use std::collections::BTreeMap;
use std::fmt;

use crate::dynsys::DynSystem;
use crate::error::{Error, Result};
use crate::funcalg::{format_coeff_times, DegreeRule, Func, GradedSubspace};
use crate::idealwin::DegreeWindow;
use crate::scalar::Scalar;

/// An element of the crossed product: a finitely supported sum of terms
/// f * d^n with function coefficients f and integer degrees n.
///
/// Multiplication twists by the induced automorphism: (f d^n)(g d^m) =
/// f . sigma_action(g, n) d^(n+m). Terms are kept sorted by degree and
/// coefficients are never zero, so equality is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    size: usize,
    terms: Vec<(i64, Func)>,
}

impl CrossedElement {
    pub fn zero(size: usize) -> Self {
        CrossedElement {
            size,
            terms: Vec::new(),
        }
    }

    /// f * d^degree, dropping the term if f is zero.
    pub fn monomial(degree: i64, f: Func) -> Self {
        let size = f.len();
        let terms = if f.is_zero() { vec![] } else { vec![(degree, f)] };
        CrossedElement { size, terms }
    }

    /// The multiplicative unit: the constant one at degree zero.
    pub fn unit(size: usize) -> Self {
        CrossedElement::monomial(0, Func::one(size))
    }

    /// d^n itself: the constant one at degree n.
    pub fn delta_pow(size: usize, n: i64) -> Self {
        CrossedElement::monomial(n, Func::one(size))
    }

    /// Collects terms, merging repeated degrees and dropping zeros.
    pub fn from_terms(size: usize, terms: Vec<(i64, Func)>) -> Result<Self> {
        let mut acc: BTreeMap<i64, Func> = BTreeMap::new();
        for (degree, f) in terms {
            if f.len() != size {
                return Err(Error::LengthMismatch {
                    expected: size,
                    actual: f.len(),
                });
            }
            match acc.entry(degree) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(f);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get() + &f;
                    *e.get_mut() = merged;
                }
            }
        }
        Ok(CrossedElement {
            size,
            terms: acc.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> &[(i64, Func)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.iter().map(|(n, _)| *n).collect()
    }

    /// Lowest and highest degree present, if any.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        match (self.terms.first(), self.terms.last()) {
            (Some((lo, _)), Some((hi, _))) => Some((*lo, *hi)),
            _ => None,
        }
    }

    pub fn coefficient(&self, degree: i64) -> Func {
        self.coefficient_ref(degree)
            .cloned()
            .unwrap_or_else(|| Func::zero(self.size))
    }

    pub fn coefficient_ref(&self, degree: i64) -> Option<&Func> {
        self.terms
            .binary_search_by_key(&degree, |(n, _)| *n)
            .ok()
            .map(|idx| &self.terms[idx].1)
    }

    /// Number of nonzero coefficient functions: the termination measure for
    /// the commutant reduction.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn check_against(&self, sys: &DynSystem) -> Result<()> {
        if self.size == sys.size() {
            Ok(())
        } else {
            Err(Error::SystemMismatch {
                left: self.size,
                right: sys.size(),
            })
        }
    }

    pub fn scale(&self, c: &Scalar) -> CrossedElement {
        if c.is_zero() {
            return CrossedElement::zero(self.size);
        }
        CrossedElement {
            size: self.size,
            terms: self
                .terms
                .iter()
                .map(|(n, f)| (*n, f.scale(c)))
                .collect(),
        }
    }

    /// Twisted convolution, the product of the crossed product.
    pub fn conv(&self, sys: &DynSystem, other: &CrossedElement) -> Result<CrossedElement> {
        self.check_against(sys)?;
        other.check_against(sys)?;
        let mut acc: BTreeMap<i64, Func> = BTreeMap::new();
        for (n, f) in &self.terms {
            for (m, g) in &other.terms {
                let degree = n.checked_add(*m).ok_or(Error::DegreeOverflow {
                    limit: i64::MAX,
                })?;
                let coeff = f * &g.sigma_action(sys, *n);
                if coeff.is_zero() {
                    continue;
                }
                match acc.entry(degree) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let merged = e.get() + &coeff;
                        *e.get_mut() = merged;
                    }
                }
            }
        }
        Ok(CrossedElement {
            size: self.size,
            terms: acc.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        })
    }

    pub fn commutator(&self, sys: &DynSystem, other: &CrossedElement) -> Result<CrossedElement> {
        Ok(&self.conv(sys, other)? - &other.conv(sys, self)?)
    }

    pub fn pow(&self, sys: &DynSystem, k: u32) -> Result<CrossedElement> {
        let mut acc = CrossedElement::unit(self.size);
        for _ in 0..k {
            acc = acc.conv(sys, self)?;
        }
        Ok(acc)
    }

    /// Whether each degree-n coefficient is supported on the points fixed
    /// by sigma^n. Those are exactly the elements commuting with every
    /// coefficient function.
    pub fn in_commutant(&self, sys: &DynSystem) -> Result<bool> {
        self.check_against(sys)?;
        for (n, f) in &self.terms {
            if *n == 0 {
                continue;
            }
            if !f.supported_in(&sys.per(*n)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the element lies in the coefficient algebra: degree 0 only.
    pub fn in_coefficient_algebra(&self) -> bool {
        self.terms.iter().all(|(n, _)| *n == 0)
    }

    /// Whether every coefficient lies in the graded subspace's slice at its
    /// degree.
    pub fn in_graded(&self, sys: &DynSystem, graded: &GradedSubspace) -> Result<bool> {
        self.check_against(sys)?;
        for (n, f) in &self.terms {
            if !graded.slice(sys, *n)?.contains(f) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::ops::Add for &CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: &CrossedElement) -> CrossedElement {
        assert_eq!(self.size, rhs.size, "elements over different systems");
        let mut acc: BTreeMap<i64, Func> = self.terms.iter().cloned().collect();
        for (n, f) in &rhs.terms {
            match acc.entry(*n) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(f.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get() + f;
                    *e.get_mut() = merged;
                }
            }
        }
        CrossedElement {
            size: self.size,
            terms: acc.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        }
    }
}

impl std::ops::Add for CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: CrossedElement) -> CrossedElement {
        &self + &rhs
    }
}

impl std::ops::Sub for &CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: &CrossedElement) -> CrossedElement {
        self + &(-rhs)
    }
}

impl std::ops::Sub for CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: CrossedElement) -> CrossedElement {
        &self - &rhs
    }
}

impl std::ops::Neg for &CrossedElement {
    type Output = CrossedElement;
    fn neg(self) -> CrossedElement {
        CrossedElement {
            size: self.size,
            terms: self.terms.iter().map(|(n, f)| (*n, -f)).collect(),
        }
    }
}

impl std::ops::Neg for CrossedElement {
    type Output = CrossedElement;
    fn neg(self) -> CrossedElement {
        -&self
    }
}

impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, coeff) in &self.terms {
            let text = format_term(coeff, *n);
            if first {
                write!(f, "{text}")?;
                first = false;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

fn format_term(coeff: &Func, degree: i64) -> String {
    let delta = match degree {
        0 => String::new(),
        1 => "*d".to_string(),
        n => format!("*d^{n}"),
    };
    let support = coeff.support();
    if support.len() == 1 {
        let x = *support.iter().next().unwrap();
        let body = format_coeff_times(coeff.get(x), &format!("e{x}"));
        format!("{body}{delta}")
    } else if delta.is_empty() {
        coeff.to_string()
    } else {
        format!("({coeff}){delta}")
    }
}

/// The commutant of the coefficient algebra, as a graded rule over a
/// window: full at degree 0, supported on the degree-n fixed points at
/// degree n.
pub fn commutant_window(window: DegreeWindow) -> GradedSubspace {
    GradedSubspace::new(DegreeRule::Commutant, window)
}

/// Outcome of asking whether the coefficient algebra is maximal abelian.
/// Over a finite system some power of sigma fixes a point, so the answer is
/// always no, witnessed by a commuting element outside the algebra.
#[derive(Debug, Clone)]
pub struct MaximalAbelianReport {
    pub holds: bool,
    pub witness: Option<CrossedElement>,
}

pub fn is_maximal_abelian(sys: &DynSystem) -> MaximalAbelianReport {
    let smallest = sys
        .orbits()
        .iter()
        .map(|orbit| (orbit.len(), orbit[0]))
        .min()
        .expect("systems are nonempty");
    let (len, point) = smallest;
    let witness = CrossedElement::monomial(len as i64, Func::point_mass(sys.size(), point));
    MaximalAbelianReport {
        holds: false,
        witness: Some(witness),
    }
}
