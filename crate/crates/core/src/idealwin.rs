use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::crossed::CrossedElement;
use crate::dynsys::{DynSystem, PointSet};
use crate::error::{Error, Result};
use crate::funcalg::{CoeffSubspace, Func, GradedSubspace};
use crate::linalg::{nullspace, Row, RowSpace};
use crate::scalar::Scalar;

/// A closed interval of degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeWindow {
    lo: i64,
    hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedWindow { lo, hi });
        }
        Ok(DegreeWindow { lo, hi })
    }

    /// The smallest window containing all the given degrees.
    pub fn hull<I: IntoIterator<Item = i64>>(degrees: I) -> Option<Self> {
        let mut iter = degrees.into_iter();
        let first = iter.next()?;
        let (mut lo, mut hi) = (first, first);
        for d in iter {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Some(DegreeWindow { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, degree: i64) -> bool {
        self.lo <= degree && degree <= self.hi
    }

    pub fn contains_window(&self, other: &DegreeWindow) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Extends this window just enough to cover another.
    pub fn merge(&self, other: &DegreeWindow) -> DegreeWindow {
        DegreeWindow {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl std::fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// A linear subspace of the elements supported inside a degree window,
/// held as a canonical basis over the flattened coordinates
/// (degree - lo) * size + point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceWindow {
    window: DegreeWindow,
    size: usize,
    space: RowSpace,
}

impl SubspaceWindow {
    pub fn empty(size: usize, window: DegreeWindow) -> Self {
        SubspaceWindow {
            window,
            size,
            space: RowSpace::new(window.len() * size),
        }
    }

    pub fn from_elements<'a, I>(size: usize, window: DegreeWindow, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a CrossedElement>,
    {
        let mut out = SubspaceWindow::empty(size, window);
        for el in elements {
            out.insert(el)?;
        }
        Ok(out)
    }

    /// Adds an element's row; errors if its support leaves the window.
    pub fn insert(&mut self, element: &CrossedElement) -> Result<bool> {
        let row = self.flatten(element)?;
        Ok(self.space.insert(row))
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub(crate) fn flatten(&self, element: &CrossedElement) -> Result<Row> {
        if element.size() != self.size {
            return Err(Error::SystemMismatch {
                left: element.size(),
                right: self.size,
            });
        }
        let mut row = vec![Scalar::zero(); self.window.len() * self.size];
        for (degree, f) in element.terms() {
            if !self.window.contains(*degree) {
                return Err(Error::OutsideWindow {
                    degree: *degree,
                    lo: self.window.lo,
                    hi: self.window.hi,
                });
            }
            let base = (degree - self.window.lo) as usize * self.size;
            for x in 0..self.size {
                row[base + x] = f.get(x).clone();
            }
        }
        Ok(row)
    }

    pub(crate) fn unflatten(&self, row: &[Scalar]) -> CrossedElement {
        let mut terms = Vec::new();
        for (offset, degree) in self.window.iter().enumerate() {
            let base = offset * self.size;
            let f = Func::from_values(row[base..base + self.size].to_vec());
            if !f.is_zero() {
                terms.push((degree, f));
            }
        }
        CrossedElement::from_terms(self.size, terms).expect("lengths agree by construction")
    }

    pub fn basis(&self) -> Vec<CrossedElement> {
        self.space.rows().iter().map(|r| self.unflatten(r)).collect()
    }

    /// True membership for elements supported inside the window; an element
    /// reaching outside cannot be certified here and yields false.
    pub fn contains_element(&self, element: &CrossedElement) -> bool {
        match self.flatten(element) {
            Ok(row) => self.space.contains(&row),
            Err(_) => false,
        }
    }

    pub(crate) fn coords_of(&self, element: &CrossedElement) -> Option<Vec<Scalar>> {
        let row = self.flatten(element).ok()?;
        self.space.coords_of(&row)
    }

    pub fn contains_subspace(&self, other: &SubspaceWindow) -> bool {
        other
            .basis()
            .iter()
            .all(|el| self.contains_element(el))
    }

    /// Intersection with another subspace over the same window.
    pub fn intersect(&self, other: &SubspaceWindow) -> SubspaceWindow {
        assert_eq!(self.window, other.window, "windows differ");
        assert_eq!(self.size, other.size, "sizes differ");
        let ncols = self.window.len() * self.size;
        let mut constraints = nullspace(self.space.rows(), ncols);
        constraints.extend(nullspace(other.space.rows(), ncols));
        let rows = nullspace(&constraints, ncols);
        SubspaceWindow {
            window: self.window,
            size: self.size,
            space: RowSpace::from_rows(ncols, rows),
        }
    }

    /// The subset of this space supported on the given degrees alone,
    /// solved for in span coordinates.
    pub fn restrict_to_degrees(&self, degrees: &BTreeSet<i64>) -> SubspaceWindow {
        let dim = self.dim();
        let mut constraints: Vec<Row> = Vec::new();
        for (offset, degree) in self.window.iter().enumerate() {
            if degrees.contains(&degree) {
                continue;
            }
            let base = offset * self.size;
            for x in 0..self.size {
                let col = base + x;
                let row: Row = self.space.rows().iter().map(|r| r[col].clone()).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    constraints.push(row);
                }
            }
        }
        let combos = nullspace(&constraints, dim);
        let mut out = SubspaceWindow::empty(self.size, self.window);
        for combo in combos {
            let mut row = vec![Scalar::zero(); self.window.len() * self.size];
            for (c, basis_row) in combo.iter().zip(self.space.rows()) {
                if c.is_zero() {
                    continue;
                }
                for (slot, v) in row.iter_mut().zip(basis_row) {
                    *slot = &*slot + &(c * v);
                }
            }
            out.space.insert(row);
        }
        out
    }

    /// The coefficient functions of elements of this space supported at a
    /// single degree. This is the degree slice in the strict sense: what
    /// the subspace holds at that degree alone, not a projection.
    pub fn slice(&self, degree: i64) -> CoeffSubspace {
        if !self.window.contains(degree) {
            return CoeffSubspace::zero(self.size);
        }
        let only = self.restrict_to_degrees(&BTreeSet::from([degree]));
        let funcs: Vec<Func> = only
            .basis()
            .iter()
            .map(|el| el.coefficient(degree))
            .collect();
        CoeffSubspace::from_spanning(self.size, &funcs).expect("sizes agree by construction")
    }

    /// Intersection with a graded subspace, via per-degree annihilator
    /// constraints on span coordinates.
    pub fn intersect_with_graded(
        &self,
        sys: &DynSystem,
        graded: &GradedSubspace,
    ) -> Result<SubspaceWindow> {
        if sys.size() != self.size {
            return Err(Error::SystemMismatch {
                left: self.size,
                right: sys.size(),
            });
        }
        let dim = self.dim();
        let mut constraints: Vec<Row> = Vec::new();
        for (offset, degree) in self.window.iter().enumerate() {
            let slice = graded.slice(sys, degree)?;
            let base = offset * self.size;
            for ann in slice.annihilators() {
                // Constraint on combo coords: sum_k combo_k <ann, basis_k at degree> = 0.
                let row: Row = self
                    .space
                    .rows()
                    .iter()
                    .map(|r| {
                        ann.iter()
                            .enumerate()
                            .fold(Scalar::zero(), |acc, (x, a)| &acc + &(a * &r[base + x]))
                    })
                    .collect();
                if row.iter().any(|v| !v.is_zero()) {
                    constraints.push(row);
                }
            }
        }
        let combos = nullspace(&constraints, dim);
        let mut out = SubspaceWindow::empty(self.size, self.window);
        for combo in combos {
            let mut row = vec![Scalar::zero(); self.window.len() * self.size];
            for (c, basis_row) in combo.iter().zip(self.space.rows()) {
                if c.is_zero() {
                    continue;
                }
                for (slot, v) in row.iter_mut().zip(basis_row) {
                    *slot = &*slot + &(c * v);
                }
            }
            out.space.insert(row);
        }
        Ok(out)
    }
}

/// One windowed product: left and right point-mass monomial multipliers
/// around a generator. `None` means no multiplier on that side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplierProduct {
    pub generator: usize,
    pub left: Option<(usize, i64)>,
    pub right: Option<(usize, i64)>,
}

/// An explicit combination of windowed products; the certificate that an
/// element belongs to the generated window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCertificate {
    pub combination: Vec<(Scalar, MultiplierProduct)>,
}

/// Membership in a generated window. A no answer only means the candidate
/// is not reachable inside this window; larger windows may still contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Yes(WindowCertificate),
    NotInWindow,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// The portion of a two-sided ideal visible inside a degree window: the
/// span of all products (point-mass monomial) * generator * (point-mass
/// monomial) with multiplier degrees from `mult_window` and product support
/// inside `target`, together with one certificate per basis element.
#[derive(Debug, Clone)]
pub struct GeneratedIdealWindow {
    subspace: SubspaceWindow,
    certificates: Vec<WindowCertificate>,
    generators: Vec<CrossedElement>,
    mult_window: DegreeWindow,
}

/// Computes the product described by a `MultiplierProduct` tag, from
/// scratch, by convolution.
pub fn realize_product(
    sys: &DynSystem,
    generators: &[CrossedElement],
    tag: &MultiplierProduct,
) -> Result<CrossedElement> {
    let g = &generators[tag.generator];
    let mut acc = match tag.left {
        Some((x, i)) => {
            CrossedElement::monomial(i, Func::point_mass(sys.size(), x)).conv(sys, g)?
        }
        None => g.clone(),
    };
    if let Some((y, j)) = tag.right {
        acc = acc.conv(
            sys,
            &CrossedElement::monomial(j, Func::point_mass(sys.size(), y)),
        )?;
    }
    Ok(acc)
}

/// Row space that remembers, for every basis row, an expression of it as a
/// combination of inserted candidates.
struct TrackedRowSpace {
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    exprs: Vec<BTreeMap<usize, Scalar>>,
}

impl TrackedRowSpace {
    fn new(ncols: usize) -> Self {
        TrackedRowSpace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            exprs: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: Row, candidate: usize) -> bool {
        let mut expr = BTreeMap::from([(candidate, Scalar::one())]);
        for k in 0..self.rows.len() {
            let p = self.pivots[k];
            if !row[p].is_zero() {
                let c = row[p].clone();
                for j in p..self.ncols {
                    row[j] = &row[j] - &(&c * &self.rows[k][j]);
                }
                expr_axpy(&mut expr, &(-&c), &self.exprs[k]);
            }
        }
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("pivot is nonzero");
        for v in row.iter_mut().skip(p) {
            *v = &*v * &inv;
        }
        for c in expr.values_mut() {
            *c = &*c * &inv;
        }
        expr.retain(|_, c| !c.is_zero());
        for k in 0..self.rows.len() {
            if !self.rows[k][p].is_zero() {
                let c = self.rows[k][p].clone();
                for j in p..self.ncols {
                    self.rows[k][j] = &self.rows[k][j] - &(&c * &row[j]);
                }
                let expr_clone = expr.clone();
                expr_axpy(&mut self.exprs[k], &(-&c), &expr_clone);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, row);
        self.pivots.insert(at, p);
        self.exprs.insert(at, expr);
        true
    }
}

fn expr_axpy(target: &mut BTreeMap<usize, Scalar>, coeff: &Scalar, other: &BTreeMap<usize, Scalar>) {
    for (id, c) in other {
        let add = coeff * c;
        match target.entry(*id) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !add.is_zero() {
                    e.insert(add);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get() + &add;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }
}

/// Dedup key: the candidate row scaled so its first nonzero entry is one.
fn direction_key(row: &[Scalar]) -> Option<Vec<(usize, Scalar)>> {
    let first = row.iter().position(|v| !v.is_zero())?;
    let inv = row[first].inv().expect("nonzero entry");
    Some(
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v * &inv))
            .collect(),
    )
}

impl GeneratedIdealWindow {
    pub fn subspace(&self) -> &SubspaceWindow {
        &self.subspace
    }

    pub fn window(&self) -> DegreeWindow {
        self.subspace.window()
    }

    pub fn mult_window(&self) -> DegreeWindow {
        self.mult_window
    }

    pub fn generators(&self) -> &[CrossedElement] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn certificates(&self) -> &[WindowCertificate] {
        &self.certificates
    }

    /// Re-derives every basis element from its certificate by fresh
    /// convolutions and compares.
    pub fn verify_certificates(&self, sys: &DynSystem) -> Result<()> {
        let basis = self.subspace.basis();
        for (index, (el, cert)) in basis.iter().zip(&self.certificates).enumerate() {
            let mut acc = CrossedElement::zero(self.subspace.size());
            for (c, tag) in &cert.combination {
                let prod = realize_product(sys, &self.generators, tag)?;
                acc = &acc + &prod.scale(c);
            }
            if &acc != el {
                return Err(Error::BadWindowCertificate { index });
            }
        }
        Ok(())
    }

    /// Membership with a certificate on yes. Sound but window-bounded: a
    /// yes is a verified containment, a no only says the window was not
    /// enough.
    pub fn membership(&self, element: &CrossedElement) -> Membership {
        let Some(coords) = self.subspace.coords_of(element) else {
            return Membership::NotInWindow;
        };
        let mut combo: BTreeMap<MultiplierProductKey, (Scalar, MultiplierProduct)> =
            BTreeMap::new();
        for (coord, cert) in coords.iter().zip(&self.certificates) {
            if coord.is_zero() {
                continue;
            }
            for (c, tag) in &cert.combination {
                let key = MultiplierProductKey::from(tag);
                let add = coord * c;
                match combo.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert((add, tag.clone()));
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        e.get_mut().0 = &e.get().0 + &add;
                    }
                }
            }
        }
        let combination: Vec<(Scalar, MultiplierProduct)> = combo
            .into_values()
            .filter(|(c, _)| !c.is_zero())
            .collect();
        Membership::Yes(WindowCertificate { combination })
    }

    /// Intersection of the window with the coefficient algebra: elements of
    /// the generated span supported at degree zero.
    pub fn intersect_coefficient_algebra(&self) -> CoeffSubspace {
        self.subspace.slice(0)
    }
}

/// Orderable mirror of `MultiplierProduct` for deterministic combination of
/// certificates.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct MultiplierProductKey {
    generator: usize,
    left: Option<(usize, i64)>,
    right: Option<(usize, i64)>,
}

impl From<&MultiplierProduct> for MultiplierProductKey {
    fn from(tag: &MultiplierProduct) -> Self {
        MultiplierProductKey {
            generator: tag.generator,
            left: tag.left,
            right: tag.right,
        }
    }
}

/// Spans the window of the two-sided ideal generated by `generators`.
///
/// Products enumerated: each generator bare, with one point-mass monomial
/// multiplier on either side, and with one on both sides; multiplier
/// degrees range over `mult_window`. Products whose support leaves
/// `target` are discarded, so the result is monotone in both windows.
/// Multiplier points are enumerated only where the product can be nonzero;
/// zero products are skipped either way, so the pruning is lossless.
pub fn generate_ideal_window(
    sys: &DynSystem,
    generators: &[CrossedElement],
    mult_window: DegreeWindow,
    target: DegreeWindow,
) -> Result<GeneratedIdealWindow> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    for (index, g) in generators.iter().enumerate() {
        g.check_against(sys)?;
        if g.is_zero() {
            return Err(Error::ZeroGenerator { index });
        }
    }
    let size = sys.size();
    let probe = SubspaceWindow::empty(size, target);
    let ncols = target.len() * size;
    let mut tracked = TrackedRowSpace::new(ncols);
    let mut seen: HashMap<Vec<(usize, Scalar)>, ()> = HashMap::new();
    let mut tags: Vec<MultiplierProduct> = Vec::new();

    let offer = |tracked: &mut TrackedRowSpace,
                     tags: &mut Vec<MultiplierProduct>,
                     seen: &mut HashMap<Vec<(usize, Scalar)>, ()>,
                     product: &CrossedElement,
                     tag: MultiplierProduct|
     -> Result<()> {
        if product.is_zero() {
            return Ok(());
        }
        if let Some((lo, hi)) = product.degree_bounds() {
            if !target.contains(lo) || !target.contains(hi) {
                return Ok(());
            }
        }
        let row = probe.flatten(product)?;
        let key = direction_key(&row).expect("nonzero product");
        if seen.contains_key(&key) {
            return Ok(());
        }
        seen.insert(key, ());
        let id = tags.len();
        tags.push(tag);
        tracked.insert(row, id);
        Ok(())
    };

    'all: for (t, g) in generators.iter().enumerate() {
        offer(
            &mut tracked,
            &mut tags,
            &mut seen,
            g,
            MultiplierProduct {
                generator: t,
                left: None,
                right: None,
            },
        )?;
        if tracked.rank() == ncols {
            break 'all;
        }
        // Right-only products.
        for j in mult_window.iter() {
            for y in right_candidates(sys, g) {
                let right = CrossedElement::monomial(j, Func::point_mass(size, y));
                let prod = g.conv(sys, &right)?;
                offer(
                    &mut tracked,
                    &mut tags,
                    &mut seen,
                    &prod,
                    MultiplierProduct {
                        generator: t,
                        left: None,
                        right: Some((y, j)),
                    },
                )?;
                if tracked.rank() == ncols {
                    break 'all;
                }
            }
        }
        // Left-only and two-sided products.
        for i in mult_window.iter() {
            for x in left_candidates(sys, g, i) {
                let left = CrossedElement::monomial(i, Func::point_mass(size, x));
                let lprod = left.conv(sys, g)?;
                if lprod.is_zero() {
                    continue;
                }
                offer(
                    &mut tracked,
                    &mut tags,
                    &mut seen,
                    &lprod,
                    MultiplierProduct {
                        generator: t,
                        left: Some((x, i)),
                        right: None,
                    },
                )?;
                if tracked.rank() == ncols {
                    break 'all;
                }
                for j in mult_window.iter() {
                    for y in right_candidates(sys, &lprod) {
                        let right = CrossedElement::monomial(j, Func::point_mass(size, y));
                        let prod = lprod.conv(sys, &right)?;
                        offer(
                            &mut tracked,
                            &mut tags,
                            &mut seen,
                            &prod,
                            MultiplierProduct {
                                generator: t,
                                left: Some((x, i)),
                                right: Some((y, j)),
                            },
                        )?;
                        if tracked.rank() == ncols {
                            break 'all;
                        }
                    }
                }
            }
        }
    }

    let mut subspace = SubspaceWindow::empty(size, target);
    let mut certificates = Vec::new();
    for (row, expr) in tracked.rows.iter().zip(&tracked.exprs) {
        let element = probe.unflatten(row);
        let grew = subspace.insert(&element)?;
        debug_assert!(grew, "tracked rows are independent");
        certificates.push(WindowCertificate {
            combination: expr
                .iter()
                .map(|(id, c)| (c.clone(), tags[*id].clone()))
                .collect(),
        });
    }
    // TrackedRowSpace and SubspaceWindow both keep canonical form, so rows
    // land in the same order and certificates stay aligned.
    debug_assert_eq!(
        subspace.space.rows(),
        tracked.rows.as_slice(),
        "canonical bases agree"
    );
    Ok(GeneratedIdealWindow {
        subspace,
        certificates,
        generators: generators.to_vec(),
        mult_window,
    })
}

/// Points x for which e_x d^i times the element can be nonzero: the images
/// under sigma^i of the coefficient supports.
fn left_candidates(sys: &DynSystem, element: &CrossedElement, i: i64) -> PointSet {
    let mut out = PointSet::new();
    for (_, f) in element.terms() {
        for x in f.support() {
            out.insert(sys.apply_pow(i, x));
        }
    }
    out
}

/// Points y for which the element times e_y d^j can be nonzero: preimages
/// of each coefficient support under the coefficient's own degree.
fn right_candidates(sys: &DynSystem, element: &CrossedElement) -> PointSet {
    let mut out = PointSet::new();
    for (m, f) in element.terms() {
        for x in f.support() {
            out.insert(sys.apply_pow(-*m, x));
        }
    }
    out
}

/// Whether F can be written as a sum of pairs b d^i + b d^(n+i). Solves the
/// telescoping recurrence b_k = F_k - b_(k-n) along every residue class
/// mod n; the class admits a finitely supported solution exactly when the
/// final b vanishes.
pub fn paired_form_check(element: &CrossedElement, n: i64) -> bool {
    paired_form_witness(element, n).is_some()
}

/// The pairing coefficients b_i when F = sum of b_i d^i + b_i d^(n+i).
pub fn paired_form_witness(element: &CrossedElement, n: i64) -> Option<Vec<(i64, Func)>> {
    assert!(n >= 1, "pair step must be positive");
    if element.is_zero() {
        return Some(Vec::new());
    }
    let size = element.size();
    let (lo, hi) = element.degree_bounds().expect("nonzero element");
    let mut witness = Vec::new();
    // Walk each residue class of degrees mod n in increasing order.
    for r in 0..n {
        let mut start = lo;
        while start.rem_euclid(n) != r {
            start += 1;
        }
        if start > hi {
            continue;
        }
        let mut b = Func::zero(size);
        let mut k = start;
        while k <= hi {
            b = &element.coefficient(k) - &b;
            if !b.is_zero() {
                witness.push((k, b.clone()));
            }
            k += n;
        }
        // A nonzero tail would need pairs reaching past every degree of F.
        if !b.is_zero() {
            return None;
        }
    }
    witness.sort_by_key(|(k, _)| *k);
    Some(witness)
}
