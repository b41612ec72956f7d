use std::collections::BTreeMap;
use std::fmt;

use crate::dynsys::{DynSystem, PointSet};
use crate::error::{Error, Result};
use crate::idealwin::DegreeWindow;
use crate::linalg::{nullspace, Row, RowSpace};
use crate::scalar::Scalar;

/// A function on the points of a system: one scalar value per point.
///
/// These are the coefficients of crossed product elements. The pointwise
/// operations make them a commutative algebra; sigma acts on them by
/// composition with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Func {
    values: Vec<Scalar>,
}

impl Func {
    pub fn from_values(values: Vec<Scalar>) -> Self {
        Func { values }
    }

    pub fn zero(size: usize) -> Self {
        Func {
            values: vec![Scalar::zero(); size],
        }
    }

    pub fn constant(size: usize, c: Scalar) -> Self {
        Func {
            values: vec![c; size],
        }
    }

    pub fn one(size: usize) -> Self {
        Func::constant(size, Scalar::one())
    }

    /// The indicator of a single point.
    pub fn point_mass(size: usize, x: usize) -> Self {
        assert!(x < size, "point {x} out of range for {size} points");
        let mut f = Func::zero(size);
        f.values[x] = Scalar::one();
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> &Scalar {
        &self.values[x]
    }

    pub fn set(&mut self, x: usize, v: Scalar) {
        self.values[x] = v;
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn check_against(&self, sys: &DynSystem) -> Result<()> {
        if self.len() == sys.size() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: sys.size(),
                actual: self.len(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> PointSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(x, _)| x)
            .collect()
    }

    pub fn supported_in(&self, set: &PointSet) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(x, v)| v.is_zero() || set.contains(&x))
    }

    pub fn scale(&self, c: &Scalar) -> Func {
        Func {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The automorphism induced by sigma, iterated k times: the value at x
    /// is read off at sigma^-k(x), so point masses move forward along
    /// orbits.
    pub fn sigma_action(&self, sys: &DynSystem, k: i64) -> Func {
        assert_eq!(self.len(), sys.size(), "function over the wrong system");
        Func {
            values: (0..self.len())
                .map(|x| self.values[sys.apply_pow(-k, x)].clone())
                .collect(),
        }
    }

    pub(crate) fn as_row(&self) -> Row {
        self.values.clone()
    }

    /// Parses `e0`, `2*e1 - e0`, `(1+i)*e2`, `1/2` (a constant), `0`.
    pub fn parse(text: &str, size: usize) -> Result<Func> {
        let parsed = crate::funcalg::parse_func_literal(text, size)?;
        Ok(parsed)
    }
}

macro_rules! func_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &Func {
            type Output = Func;
            fn $method(self, rhs: &Func) -> Func {
                assert_eq!(self.len(), rhs.len(), "function length mismatch");
                Func {
                    values: self
                        .values
                        .iter()
                        .zip(&rhs.values)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
        impl std::ops::$trait for Func {
            type Output = Func;
            fn $method(self, rhs: Func) -> Func {
                (&self).$method(&rhs)
            }
        }
    };
}

func_binop!(Add, add, +);
func_binop!(Sub, sub, -);
func_binop!(Mul, mul, *);

impl std::ops::Neg for &Func {
    type Output = Func;
    fn neg(self) -> Func {
        Func {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl std::ops::Neg for Func {
    type Output = Func;
    fn neg(self) -> Func {
        -&self
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (x, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let text = format_coeff_times(v, &format!("e{x}"));
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

/// Renders `c * sym` compactly: drops a unit coefficient, parenthesizes
/// coefficients with an interior sign.
pub(crate) fn format_coeff_times(c: &Scalar, sym: &str) -> String {
    if c.is_one() {
        return sym.to_string();
    }
    if (-c).is_one() {
        return format!("-{sym}");
    }
    let text = c.to_string();
    let needs_parens = text[1..].contains('+') || text[1..].contains('-');
    if needs_parens {
        format!("({text})*{sym}")
    } else {
        format!("{text}*{sym}")
    }
}

fn parse_func_literal(text: &str, size: usize) -> Result<Func> {
    use crate::scalar::ScalarParser;
    let bytes = text.as_bytes();
    let mut out = Func::zero(size);
    let mut pos = 0usize;
    let mut first_term = true;
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            if first_term {
                return Err(Error::ScalarParse {
                    offset: pos,
                    message: "empty function literal".to_string(),
                });
            }
            break;
        }
        let mut sign = Scalar::one();
        if !first_term {
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -Scalar::one();
                    pos += 1;
                }
                _ => {
                    return Err(Error::ScalarParse {
                        offset: pos,
                        message: "expected `+` or `-` between terms".to_string(),
                    })
                }
            }
        } else if bytes[pos] == b'-' {
            sign = -Scalar::one();
            pos += 1;
        }
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            return Err(Error::ScalarParse {
                offset: pos,
                message: "expected a term".to_string(),
            });
        }
        // Optional coefficient, then optional `*`, then `e<index>`; a term
        // with no `e` part is a constant.
        let (coeff, after) = if bytes[pos] == b'e' || bytes[pos] == b'(' {
            if bytes[pos] == b'(' {
                let close = find_close_paren(bytes, pos).ok_or(Error::ScalarParse {
                    offset: pos,
                    message: "unclosed parenthesis".to_string(),
                })?;
                let inner = std::str::from_utf8(&bytes[pos + 1..close]).unwrap();
                let c: Scalar = inner.parse().map_err(|e| shift_offset(e, pos + 1))?;
                (c, close + 1)
            } else {
                (Scalar::one(), pos)
            }
        } else {
            let rest = std::str::from_utf8(&bytes[pos..]).unwrap();
            let mut p = ScalarParser::new(rest);
            let c = p.parse_scalar().map_err(|e| shift_offset(e, pos))?;
            (c, pos + p.position())
        };
        pos = after;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
        }
        if pos < bytes.len() && bytes[pos] == b'e' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(Error::ScalarParse {
                    offset: pos,
                    message: "expected a point index after `e`".to_string(),
                });
            }
            let idx: usize = std::str::from_utf8(&bytes[start..pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::ScalarParse {
                    offset: start,
                    message: "point index too large".to_string(),
                })?;
            if idx >= size {
                return Err(Error::PointOutOfRange {
                    point: idx,
                    size,
                });
            }
            let updated = out.get(idx) + &(&sign * &coeff);
            out.set(idx, updated);
        } else {
            // Constant term.
            let c = &sign * &coeff;
            for x in 0..size {
                let updated = out.get(x) + &c;
                out.set(x, updated);
            }
        }
        first_term = false;
    }
    Ok(out)
}

pub(crate) fn find_close_paren(bytes: &[u8], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub(crate) fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::ScalarParse { offset, message } => Error::ScalarParse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// Whether functions vanishing on S must vanish everywhere. With finitely
/// many points every nonempty proper subset misses some point mass, so this
/// holds exactly for S = X; the empty set is excluded by convention.
pub fn is_domain_of_uniqueness(sys: &DynSystem, s: &PointSet) -> Result<bool> {
    sys.check_points(s)?;
    Ok(!s.is_empty() && s.len() == sys.size())
}

/// Checks, point by point, that the coefficient algebra separates points
/// and carries a nonzero function vanishing off any given nonempty set.
/// Point masses witness both; this runs the check literally so each system
/// records the hypothesis rather than assuming it.
pub fn coefficient_algebra_hypotheses(sys: &DynSystem) -> bool {
    let n = sys.size();
    for x in 0..n {
        let e = Func::point_mass(n, x);
        if e.is_zero() || !e.supported_in(&PointSet::from([x])) {
            return false;
        }
        for y in 0..n {
            if x != y && e.get(x) == e.get(y) {
                return false;
            }
        }
    }
    true
}

/// A subspace of the coefficient functions, held as a canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSubspace {
    space: RowSpace,
}

impl CoeffSubspace {
    pub fn zero(ambient: usize) -> Self {
        CoeffSubspace {
            space: RowSpace::new(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        CoeffSubspace {
            space: RowSpace::from_rows(ambient, crate::linalg::identity(ambient)),
        }
    }

    /// Functions supported inside the given set.
    pub fn from_support(ambient: usize, support: &PointSet) -> Self {
        let rows = support
            .iter()
            .map(|&x| Func::point_mass(ambient, x).as_row());
        CoeffSubspace {
            space: RowSpace::from_rows(ambient, rows),
        }
    }

    pub fn from_spanning(ambient: usize, funcs: &[Func]) -> Result<Self> {
        let mut space = RowSpace::new(ambient);
        for f in funcs {
            if f.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    actual: f.len(),
                });
            }
            space.insert(f.as_row());
        }
        Ok(CoeffSubspace { space })
    }

    pub fn ambient(&self) -> usize {
        self.space.ncols()
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn contains(&self, f: &Func) -> bool {
        assert_eq!(f.len(), self.ambient(), "function over the wrong system");
        self.space.contains(&f.as_row())
    }

    pub fn basis(&self) -> Vec<Func> {
        self.space
            .rows()
            .iter()
            .map(|r| Func::from_values(r.clone()))
            .collect()
    }

    /// Coordinate vectors of the functionals vanishing on this subspace.
    pub fn annihilators(&self) -> Vec<Vec<Scalar>> {
        nullspace(self.space.rows(), self.ambient())
    }

    pub fn intersect(&self, other: &CoeffSubspace) -> CoeffSubspace {
        assert_eq!(self.ambient(), other.ambient());
        let mut constraints = self.annihilators();
        constraints.extend(other.annihilators());
        let basis = nullspace(&constraints, self.ambient());
        CoeffSubspace {
            space: RowSpace::from_rows(self.ambient(), basis),
        }
    }

    pub fn sum(&self, other: &CoeffSubspace) -> CoeffSubspace {
        assert_eq!(self.ambient(), other.ambient());
        let mut space = self.space.clone();
        for row in other.space.rows() {
            space.insert(row.clone());
        }
        CoeffSubspace { space }
    }
}

/// Degree-indexed families of coefficient subspaces, given by a rule that
/// makes sense at every degree. These describe the graded shape of the
/// standard subalgebras: the coefficient algebra itself, the commutant, and
/// the algebras built between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeRule {
    /// Full at degree 0, zero elsewhere.
    CoefficientAlgebra,
    /// Full at degree 0; at degree n, functions supported on the points
    /// fixed by sigma^n.
    Commutant,
    /// At every degree, functions vanishing on the given set.
    Kernel(PointSet),
    /// Full at degree 0; at degree k, functions supported on the
    /// intersection of the given invariant set with the degree-k fixed
    /// points.
    AvoidingBetween { invariant_set: PointSet },
    /// Full at degree 0; at degree k, functions supported on the degree-k
    /// fixed points and vanishing at the base point.
    IntersectingBetween { base_point: usize },
}

/// A rule plus a window on which it is meant to be materialized, with
/// optional cached slices. Cached slices must agree with the rule; the
/// cache only short-circuits recomputation.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    rule: DegreeRule,
    window: DegreeWindow,
    overrides: BTreeMap<i64, CoeffSubspace>,
}

impl GradedSubspace {
    pub fn new(rule: DegreeRule, window: DegreeWindow) -> Self {
        GradedSubspace {
            rule,
            window,
            overrides: BTreeMap::new(),
        }
    }

    pub fn rule(&self) -> &DegreeRule {
        &self.rule
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    /// Caches a slice after checking it against the rule.
    pub fn with_override(mut self, sys: &DynSystem, degree: i64, slice: CoeffSubspace) -> Result<Self> {
        let by_rule = self.slice(sys, degree)?;
        if by_rule != slice {
            return Err(Error::Precondition(format!(
                "override at degree {degree} disagrees with the rule"
            )));
        }
        self.overrides.insert(degree, slice);
        Ok(self)
    }

    /// The subspace at one degree. Defined for every degree, not only those
    /// inside the window.
    pub fn slice(&self, sys: &DynSystem, degree: i64) -> Result<CoeffSubspace> {
        if let Some(cached) = self.overrides.get(&degree) {
            return Ok(cached.clone());
        }
        let n = sys.size();
        Ok(match &self.rule {
            DegreeRule::CoefficientAlgebra => {
                if degree == 0 {
                    CoeffSubspace::full(n)
                } else {
                    CoeffSubspace::zero(n)
                }
            }
            DegreeRule::Commutant => {
                if degree == 0 {
                    CoeffSubspace::full(n)
                } else {
                    CoeffSubspace::from_support(n, &sys.per(degree)?)
                }
            }
            DegreeRule::Kernel(s) => {
                sys.check_points(s)?;
                let complement: PointSet = (0..n).filter(|x| !s.contains(x)).collect();
                CoeffSubspace::from_support(n, &complement)
            }
            DegreeRule::AvoidingBetween { invariant_set } => {
                sys.check_points(invariant_set)?;
                if degree == 0 {
                    CoeffSubspace::full(n)
                } else {
                    let per = sys.per(degree)?;
                    let both: PointSet = invariant_set.intersection(&per).copied().collect();
                    CoeffSubspace::from_support(n, &both)
                }
            }
            DegreeRule::IntersectingBetween { base_point } => {
                sys.check_point(*base_point)?;
                if degree == 0 {
                    CoeffSubspace::full(n)
                } else {
                    let mut per = sys.per(degree)?;
                    per.remove(base_point);
                    CoeffSubspace::from_support(n, &per)
                }
            }
        })
    }

    pub fn materialize(&self, sys: &DynSystem) -> Result<BTreeMap<i64, CoeffSubspace>> {
        let mut out = BTreeMap::new();
        for degree in self.window.iter() {
            out.insert(degree, self.slice(sys, degree)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap01_fix2() -> DynSystem {
        DynSystem::new(vec![1, 0, 2]).unwrap()
    }

    fn three_cycle() -> DynSystem {
        DynSystem::new(vec![1, 2, 0]).unwrap()
    }

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn sigma_action_moves_point_masses_forward() {
        let sys = three_cycle();
        let e0 = Func::point_mass(3, 0);
        assert_eq!(e0.sigma_action(&sys, 1), Func::point_mass(3, 1));
        assert_eq!(e0.sigma_action(&sys, -1), Func::point_mass(3, 2));
        assert_eq!(e0.sigma_action(&sys, 3), e0);
    }

    #[test]
    fn sigma_action_is_an_automorphism() {
        let sys = swap01_fix2();
        let f = Func::from_values(vec![s("1+i"), s("2"), s("-1/3")]);
        let g = Func::from_values(vec![s("i"), s("0"), s("5/2")]);
        for k in -3..=3 {
            let lhs = (&f * &g).sigma_action(&sys, k);
            let rhs = &f.sigma_action(&sys, k) * &g.sigma_action(&sys, k);
            assert_eq!(lhs, rhs);
            assert_eq!(f.sigma_action(&sys, k).sigma_action(&sys, -k), f);
        }
    }

    #[test]
    fn support_and_pointwise_ops() {
        let f = Func::from_values(vec![s("1"), s("0"), s("-i")]);
        assert_eq!(f.support(), PointSet::from([0, 2]));
        assert!(f.supported_in(&PointSet::from([0, 1, 2])));
        assert!(!f.supported_in(&PointSet::from([0, 1])));
        let g = Func::point_mass(3, 2);
        assert_eq!((&f * &g).support(), PointSet::from([2]));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn uniqueness_domains_are_everything() {
        let sys = swap01_fix2();
        assert!(is_domain_of_uniqueness(&sys, &PointSet::from([0, 1, 2])).unwrap());
        assert!(!is_domain_of_uniqueness(&sys, &PointSet::from([0, 1])).unwrap());
        assert!(!is_domain_of_uniqueness(&sys, &PointSet::new()).unwrap());
        assert!(is_domain_of_uniqueness(&sys, &PointSet::from([9])).is_err());
        assert!(coefficient_algebra_hypotheses(&sys));
    }

    #[test]
    fn coeff_subspace_basics() {
        let full = CoeffSubspace::full(3);
        let sup = CoeffSubspace::from_support(3, &PointSet::from([0, 2]));
        assert_eq!(full.dim(), 3);
        assert_eq!(sup.dim(), 2);
        assert!(sup.contains(&Func::point_mass(3, 0)));
        assert!(!sup.contains(&Func::point_mass(3, 1)));
        let anns = sup.annihilators();
        assert_eq!(anns.len(), 1);
        for b in sup.basis() {
            let dot = b
                .values()
                .iter()
                .zip(&anns[0])
                .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y));
            assert!(dot.is_zero());
        }
        let other = CoeffSubspace::from_support(3, &PointSet::from([1, 2]));
        let meet = sup.intersect(&other);
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&Func::point_mass(3, 2)));
        assert_eq!(sup.sum(&other).dim(), 3);
    }

    #[test]
    fn graded_rules_slice_correctly() {
        let sys = swap01_fix2();
        let window = DegreeWindow::new(-2, 2).unwrap();
        let a = GradedSubspace::new(DegreeRule::CoefficientAlgebra, window);
        assert_eq!(a.slice(&sys, 0).unwrap().dim(), 3);
        assert_eq!(a.slice(&sys, 1).unwrap().dim(), 0);

        let c = GradedSubspace::new(DegreeRule::Commutant, window);
        assert_eq!(c.slice(&sys, 0).unwrap().dim(), 3);
        assert_eq!(c.slice(&sys, 1).unwrap().dim(), 1);
        assert_eq!(c.slice(&sys, 2).unwrap().dim(), 3);
        assert!(c.slice(&sys, 1).unwrap().contains(&Func::point_mass(3, 2)));

        let k = GradedSubspace::new(DegreeRule::Kernel(PointSet::from([2])), window);
        assert_eq!(k.slice(&sys, 0).unwrap().dim(), 2);
        assert_eq!(k.slice(&sys, -2).unwrap().dim(), 2);

        let ident = DynSystem::identity(4).unwrap();
        let c_ident = GradedSubspace::new(DegreeRule::Commutant, window);
        for d in window.iter() {
            assert_eq!(c_ident.slice(&ident, d).unwrap().dim(), 4);
        }
    }

    #[test]
    fn overrides_must_match_the_rule() {
        let sys = swap01_fix2();
        let window = DegreeWindow::new(-1, 1).unwrap();
        let c = GradedSubspace::new(DegreeRule::Commutant, window);
        let good = c
            .clone()
            .with_override(&sys, 1, CoeffSubspace::from_support(3, &PointSet::from([2])));
        assert!(good.is_ok());
        let bad = c.with_override(&sys, 1, CoeffSubspace::full(3));
        assert!(bad.is_err());
    }

    #[test]
    fn func_literals_parse_and_display() {
        assert_eq!(Func::parse("e0", 3).unwrap(), Func::point_mass(3, 0));
        assert_eq!(
            Func::parse("2*e1 - e0", 3).unwrap(),
            Func::from_values(vec![s("-1"), s("2"), s("0")])
        );
        assert_eq!(
            Func::parse("(1+i)*e2", 3).unwrap(),
            Func::from_values(vec![s("0"), s("0"), s("1+i")])
        );
        assert_eq!(Func::parse("1/2", 2).unwrap(), Func::constant(2, s("1/2")));
        assert_eq!(Func::parse("0", 2).unwrap(), Func::zero(2));
        assert_eq!(Func::parse("e0+e0", 2).unwrap().get(0), &s("2"));
        assert!(Func::parse("e9", 3).is_err());
        assert!(Func::parse("", 3).is_err());
        assert!(Func::parse("e0 ++ e1", 3).is_err());

        for text in ["e0", "2*e0 + e1", "(1+i)*e2", "-e1", "1/2*e0 - i*e2"] {
            let f = Func::parse(text, 3).unwrap();
            assert_eq!(Func::parse(&f.to_string(), 3).unwrap(), f);
        }
    }
}
