//! Finite magmas given by Cayley tables, and the loop engine built on them.
//!
//! A [`CayleyTable`] is any closed binary operation on `0..n`. A [`Loop`] is a
//! table that has been checked to be a Latin square with two-sided identity
//! at index 0; it carries precomputed division tables so that `left_div` and
//! `right_div` are single lookups.

mod io;
mod subset;

pub use io::{FormatError, TableFile};
pub use subset::Subset;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perms::Permutation;

/// Largest order for which every check stays exhaustive.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be between 1 and {MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("expected {expected} cells, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("cell ({row},{col}) holds {value}, outside 0..{n}")]
    CellOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("table is not a quasigroup (row or column {0} repeats an entry)")]
    NotQuasigroup(usize),
    #[error("index 0 is not a two-sided identity")]
    NoIdentity,
    #[error("not a group: operation is not associative")]
    NotGroup,
    #[error("subset is not a subloop")]
    NotSubloop,
    #[error("subset is not a normal subloop")]
    NotNormal,
    #[error("coset product is ill-defined: {0}")]
    IllDefinedQuotient(String),
    #[error("subset refers to a table of order {subset}, expected {table}")]
    ForeignSubset { subset: usize, table: usize },
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
}

/// Result of scanning a table against the quasigroup/loop/group axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopFlags {
    pub quasigroup: bool,
    /// Some element is a two-sided identity (not necessarily index 0).
    pub has_identity: bool,
    pub is_loop: bool,
    pub associative: bool,
    pub commutative: bool,
}

/// A binary operation on `0..n`, stored row-major: `cells[a*n + b] = a·b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<usize>,
}

impl CayleyTable {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, TableError> {
        if n == 0 || n > MAX_ORDER {
            return Err(TableError::BadOrder(n));
        }
        if cells.len() != n * n {
            return Err(TableError::Shape {
                expected: n * n,
                got: cells.len(),
            });
        }
        if let Some(pos) = cells.iter().position(|&c| c >= n) {
            return Err(TableError::CellOutOfRange {
                row: pos / n,
                col: pos % n,
                value: cells[pos],
                n,
            });
        }
        Ok(CayleyTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(TableError::Shape {
                expected: n,
                got: bad.len(),
            });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let cells = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(n, cells)
    }

    /// Addition table of the integers mod `n`.
    pub fn cyclic(n: usize) -> Result<Self, TableError> {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn flags(&self) -> LoopFlags {
        let n = self.n;
        let quasigroup = self.first_non_latin_line().is_none();
        let is_identity = |e: usize| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x);
        let has_identity = (0..n).any(is_identity);
        let is_loop = quasigroup && is_identity(0);
        let mut associative = true;
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        associative = false;
                        break 'outer;
                    }
                }
            }
        }
        let commutative = (0..n).all(|a| (a + 1..n).all(|b| self.get(a, b) == self.get(b, a)));
        LoopFlags {
            quasigroup,
            has_identity,
            is_loop,
            associative,
            commutative,
        }
    }

    fn first_non_latin_line(&self) -> Option<usize> {
        let n = self.n;
        for line in 0..n {
            let mut row_seen = 0u64;
            let mut col_seen = 0u64;
            for k in 0..n {
                row_seen |= 1u64 << self.get(line, k);
                col_seen |= 1u64 << self.get(k, line);
            }
            let full = full_mask(n);
            if row_seen != full || col_seen != full {
                return Some(line);
            }
        }
        None
    }

    /// The table transported along `f`: `(f a)·(f b) = f(a·b)`.
    pub fn relabel(&self, f: &Permutation) -> CayleyTable {
        let n = self.n;
        assert_eq!(f.degree(), n, "relabeling degree must match table order");
        let mut cells = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[f.apply(a) * n + f.apply(b)] = f.apply(self.get(a, b));
            }
        }
        CayleyTable { n, cells }
    }

    /// If some index `e != 0` is a two-sided identity, swap the labels `0`
    /// and `e` so that the identity sits at index 0.
    pub fn with_identity_first(self) -> CayleyTable {
        let n = self.n;
        let e = (0..n).find(|&e| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x));
        match e {
            Some(e) if e != 0 => {
                let mut images: Vec<usize> = (0..n).collect();
                images.swap(0, e);
                let f = Permutation::from_images(images).expect("transposition");
                self.relabel(&f)
            }
            _ => self,
        }
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A Cayley table known to be a loop with identity 0.
#[derive(Clone, Debug)]
pub struct Loop {
    table: CayleyTable,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    associative: bool,
    commutative: bool,
}

impl PartialEq for Loop {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for Loop {}

impl Loop {
    pub fn new(table: CayleyTable) -> Result<Self, TableError> {
        if let Some(line) = table.first_non_latin_line() {
            return Err(TableError::NotQuasigroup(line));
        }
        let flags = table.flags();
        if !flags.is_loop {
            return Err(TableError::NoIdentity);
        }
        let n = table.n;
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table.get(a, x);
                ldiv[a * n + b] = x;
                let b = table.get(x, a);
                rdiv[a * n + b] = x;
            }
        }
        Ok(Loop {
            table,
            ldiv,
            rdiv,
            associative: flags.associative,
            commutative: flags.commutative,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self, TableError> {
        Loop::new(CayleyTable::cyclic(n)?)
    }

    /// Direct product with pair `(a, b)` encoded as `b * |self| + a`.
    pub fn direct_product(&self, other: &Loop) -> Result<Loop, TableError> {
        let (n, m) = (self.order(), other.order());
        let t = CayleyTable::from_fn(n * m, |x, y| {
            let (a1, b1) = (x % n, x / n);
            let (a2, b2) = (y % n, y / n);
            other.mul(b1, b2) * n + self.mul(a1, a2)
        })?;
        Loop::new(t)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.n
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_group(&self) -> bool {
        self.associative
    }

    pub fn require_group(&self) -> Result<(), TableError> {
        if self.associative {
            Ok(())
        } else {
            Err(TableError::NotGroup)
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    /// The unique `x` with `a·x = b`.
    #[inline]
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order() + b]
    }

    /// The unique `x` with `x·a = b`.
    #[inline]
    pub fn right_div(&self, a: usize, b: usize) -> usize {
        self.rdiv[a * self.order() + b]
    }

    /// `x` with `x·a = 0`.
    pub fn left_inverse(&self, a: usize) -> usize {
        self.right_div(a, 0)
    }

    /// `x` with `a·x = 0`.
    pub fn right_inverse(&self, a: usize) -> usize {
        self.left_div(a, 0)
    }

    /// Does `x⁻¹·(x·y) = y` hold for all `x, y`, with `x⁻¹` the left inverse?
    pub fn has_left_inverse_property(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| {
            let xl = self.left_inverse(x);
            (0..n).all(|y| self.mul(xl, self.mul(x, y)) == y)
        })
    }

    pub fn associates(&self, a: usize, b: usize, c: usize) -> bool {
        self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.order())
    }

    pub fn trivial_subset(&self) -> Subset {
        Subset::from_members(self.order(), [0]).expect("0 is in range")
    }

    fn check_subset(&self, s: &Subset) -> Result<(), TableError> {
        if s.universe() != self.order() {
            return Err(TableError::ForeignSubset {
                subset: s.universe(),
                table: self.order(),
            });
        }
        Ok(())
    }

    /// Least subloop containing `seed` (plus the identity).
    ///
    /// For finite loops closure under multiplication already implies closure
    /// under both divisions; divisions are added anyway so the fixpoint does
    /// not rely on that.
    pub fn subloop_generated(&self, seed: impl IntoIterator<Item = usize>) -> Subset {
        let n = self.order();
        let mut mask = 1u64;
        for x in seed {
            assert!(x < n, "seed element {x} out of range");
            mask |= 1u64 << x;
        }
        loop {
            let mut next = mask;
            for a in bits(mask) {
                for b in bits(mask) {
                    next |= 1u64 << self.mul(a, b);
                    next |= 1u64 << self.left_div(a, b);
                    next |= 1u64 << self.right_div(a, b);
                }
            }
            if next == mask {
                return Subset::from_mask(n, mask);
            }
            mask = next;
        }
    }

    pub fn is_subloop(&self, s: &Subset) -> bool {
        if self.check_subset(s).is_err() || !s.contains(0) {
            return false;
        }
        s.iter().all(|a| {
            s.iter().all(|b| {
                s.contains(self.mul(a, b))
                    && s.contains(self.left_div(a, b))
                    && s.contains(self.right_div(a, b))
            })
        })
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        self.is_subloop(s)
            && s.iter()
                .all(|a| s.iter().all(|b| s.iter().all(|c| self.associates(a, b, c))))
    }

    fn left_coset_mask(&self, x: usize, s: &Subset) -> u64 {
        s.iter().fold(0, |m, e| m | 1u64 << self.mul(x, e))
    }

    fn right_coset_mask(&self, x: usize, s: &Subset) -> u64 {
        s.iter().fold(0, |m, e| m | 1u64 << self.mul(e, x))
    }

    /// `xS = Sx`, `(xS)y = x(Sy)` and `(Sx)y = S(xy)` for all `x, y`.
    pub fn is_normal_subloop(&self, s: &Subset) -> Result<bool, TableError> {
        if !self.is_subloop(s) {
            return Err(TableError::NotSubloop);
        }
        let n = self.order();
        for x in 0..n {
            if self.left_coset_mask(x, s) != self.right_coset_mask(x, s) {
                return Ok(false);
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                let mut xs_y = 0u64;
                let mut x_sy = 0u64;
                let mut sx_y = 0u64;
                for e in s.iter() {
                    xs_y |= 1u64 << self.mul(self.mul(x, e), y);
                    x_sy |= 1u64 << self.mul(x, self.mul(e, y));
                    sx_y |= 1u64 << self.mul(self.mul(e, x), y);
                }
                if xs_y != x_sy || sx_y != self.right_coset_mask(xy, s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Cosets of a normal subloop, ordered by their least element (so the
    /// identity coset is first).
    pub fn cosets(&self, s: &Subset) -> Vec<Subset> {
        let n = self.order();
        let mut covered = 0u64;
        let mut out = Vec::new();
        for x in 0..n {
            if covered & (1u64 << x) != 0 {
                continue;
            }
            let m = self.left_coset_mask(x, s);
            covered |= m;
            out.push(Subset::from_mask(n, m));
        }
        out
    }

    /// The quotient loop `L/S` on cosets, indexed by [`Loop::cosets`].
    pub fn quotient(&self, s: &Subset) -> Result<Loop, TableError> {
        if !self.is_normal_subloop(s)? {
            return Err(TableError::NotNormal);
        }
        let n = self.order();
        let cosets = self.cosets(s);
        let mut covered = 0u64;
        for c in &cosets {
            if covered & c.mask() != 0 {
                return Err(TableError::IllDefinedQuotient("cosets overlap".to_string()));
            }
            covered |= c.mask();
        }
        if covered != full_mask(n) {
            return Err(TableError::IllDefinedQuotient(
                "cosets do not cover the loop".to_string(),
            ));
        }
        let mut class_of = vec![0; n];
        for (i, c) in cosets.iter().enumerate() {
            for x in c.iter() {
                class_of[x] = i;
            }
        }
        let k = cosets.len();
        let mut cells = vec![usize::MAX; k * k];
        for x in 0..n {
            for y in 0..n {
                let (i, j) = (class_of[x], class_of[y]);
                let z = class_of[self.mul(x, y)];
                let cell = &mut cells[i * k + j];
                if *cell == usize::MAX {
                    *cell = z;
                } else if *cell != z {
                    return Err(TableError::IllDefinedQuotient(format!(
                        "cosets {i} and {j} multiply to more than one coset"
                    )));
                }
            }
        }
        Loop::new(CayleyTable::new(k, cells)?)
    }

    /// The subloop `s` as a loop in its own right; index `i` corresponds to
    /// the `i`-th smallest member.
    pub fn restrict(&self, s: &Subset) -> Result<Loop, TableError> {
        if !self.is_subloop(s) {
            return Err(TableError::NotSubloop);
        }
        let members = s.members();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let k = members.len();
        let t = CayleyTable::from_fn(k, |i, j| pos[self.mul(members[i], members[j])])?;
        Loop::new(t)
    }

    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.order()).map(|y| self.mul(x, y)).collect())
            .expect("rows of a loop are permutations")
    }

    pub fn right_translation(&self, x: usize) -> Permutation {
        Permutation::from_images((0..self.order()).map(|y| self.mul(y, x)).collect())
            .expect("columns of a loop are permutations")
    }

    /// Per element, the cycle types of `y ↦ x·y` and `y ↦ y·x`.
    pub fn translation_cycle_types(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        (0..self.order())
            .map(|x| {
                (
                    self.left_translation(x).cycle_type(),
                    self.right_translation(x).cycle_type(),
                )
            })
            .collect()
    }

    /// Relabel by a bijection fixing 0.
    pub fn relabel(&self, f: &Permutation) -> Result<Loop, TableError> {
        if f.apply(0) != 0 {
            return Err(TableError::NoIdentity);
        }
        Loop::new(self.table.relabel(f))
    }

    /// Every subloop, smallest first (ties broken by member mask).
    pub fn all_subloops(&self) -> Vec<Subset> {
        let n = self.order();
        let mut found = vec![self.trivial_subset()];
        let mut seen = std::collections::HashSet::from([1u64]);
        let mut i = 0;
        while i < found.len() {
            let s = found[i].clone();
            for x in 0..n {
                if s.contains(x) {
                    continue;
                }
                let t = self.subloop_generated(s.iter().chain([x]));
                if seen.insert(t.mask()) {
                    found.push(t);
                }
            }
            i += 1;
        }
        found.sort_by_key(|s| (s.len(), s.mask()));
        found
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl TryFrom<CayleyTable> for Loop {
    type Error = TableError;
    fn try_from(t: CayleyTable) -> Result<Self, Self::Error> {
        Loop::new(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Loop {
        Loop::cyclic(n).unwrap()
    }

    /// S_3 as permutations of three points, identity first.
    pub(crate) fn s3() -> Loop {
        let perms: Vec<Permutation> = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ]
        .into_iter()
        .map(|v| Permutation::from_images(v).unwrap())
        .collect();
        let idx = |p: &Permutation| perms.iter().position(|q| q == p).unwrap();
        Loop::new(
            CayleyTable::from_fn(6, |a, b| idx(&perms[a].compose(&perms[b]).unwrap())).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn flags_of_cyclic_group() {
        let f = CayleyTable::cyclic(4).unwrap().flags();
        assert!(f.quasigroup && f.is_loop && f.associative && f.commutative);
    }

    #[test]
    fn repeated_row_entry_is_not_quasigroup() {
        let t = CayleyTable::from_rows(&[vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]]).unwrap();
        let f = t.flags();
        assert!(!f.quasigroup && !f.is_loop);
        assert_eq!(Loop::new(t), Err(TableError::NotQuasigroup(1)));
    }

    #[test]
    fn out_of_range_cell() {
        assert!(matches!(
            CayleyTable::from_rows(&[vec![0, 1], vec![1, 2]]),
            Err(TableError::CellOutOfRange { value: 2, .. })
        ));
        assert_eq!(CayleyTable::new(0, vec![]), Err(TableError::BadOrder(0)));
    }

    #[test]
    fn identity_is_moved_to_front() {
        // Z_3 with labels rotated so the identity is 1
        let t = CayleyTable::from_fn(3, |a, b| (a + b + 2) % 3).unwrap();
        assert!(t.flags().has_identity);
        assert!(!t.flags().is_loop);
        assert!(t.with_identity_first().flags().is_loop);
    }

    #[test]
    fn divisions_and_inverses() {
        let l = z(5);
        assert_eq!(l.left_div(2, 0), 3);
        for b in 0..5 {
            assert_eq!(l.left_div(0, b), b);
        }
        let g = s3();
        for a in 0..6 {
            assert_eq!(g.left_inverse(a), g.right_inverse(a));
            assert_eq!(g.mul(g.left_inverse(a), a), 0);
        }
        assert_eq!(g.left_inverse(0), 0);
        assert!(g.has_left_inverse_property());
        assert!(z(9).has_left_inverse_property());
    }

    #[test]
    fn generated_subloops() {
        let l = z(9);
        assert_eq!(l.subloop_generated([]).members(), vec![0]);
        assert_eq!(l.subloop_generated([3]).members(), vec![0, 3, 6]);
        assert_eq!(l.subloop_generated([2]).len(), 9);
        assert!(l.is_subgroup(&l.trivial_subset()));
        assert!(!l.is_subloop(&Subset::from_members(9, [0, 3]).unwrap()));
    }

    #[test]
    fn normality_and_quotients() {
        let g = s3();
        let full = g.full_subset();
        assert!(g.is_normal_subloop(&full).unwrap());
        assert!(g.is_normal_subloop(&g.trivial_subset()).unwrap());
        assert_eq!(g.quotient(&full).unwrap().order(), 1);
        assert_eq!(g.quotient(&g.trivial_subset()).unwrap(), g);
        // a transposition subgroup is not normal, A_3 is
        let t = g.subloop_generated([1]);
        assert!(!g.is_normal_subloop(&t).unwrap());
        assert_eq!(g.quotient(&t), Err(TableError::NotNormal));
        let a3 = g.subloop_generated([4]);
        assert_eq!(a3.len(), 3);
        assert!(g.is_normal_subloop(&a3).unwrap());
        let q = g.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(
            g.is_normal_subloop(&Subset::from_members(6, [0, 1, 2]).unwrap()),
            Err(TableError::NotSubloop)
        );
    }

    #[test]
    fn translations() {
        let types = z(4).translation_cycle_types();
        assert_eq!(types[0], (vec![1, 1, 1, 1], vec![1, 1, 1, 1]));
        assert_eq!(types[1], (vec![4], vec![4]));
    }

    #[test]
    fn all_subloops_of_z12() {
        // one subgroup per divisor of 12
        assert_eq!(z(12).all_subloops().len(), 6);
        assert_eq!(s3().all_subloops().len(), 6);
    }

    #[test]
    fn restrict_renumbers() {
        let l = z(9);
        let s = l.subloop_generated([3]);
        assert_eq!(l.restrict(&s).unwrap(), z(3));
    }

    #[test]
    fn direct_product_order() {
        let p = z(3).direct_product(&z(3)).unwrap();
        assert_eq!(p.order(), 9);
        assert!(p.is_group() && p.is_commutative());
    }
}
