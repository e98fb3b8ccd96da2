//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..n`. Validation re-indexes the identity to
//! `0`, so every [`FiniteGroup`] has identity `0`. Abelian groups are written
//! additively in reports, general groups multiplicatively; internally the
//! operation is always [`FiniteGroup::mul`].

mod abelian;
mod action;
pub mod catalog;
mod construct;
mod hom;
mod structure;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::limits::BudgetExceeded;

pub use abelian::{AbelianDecomposition, decompose_abelian};
pub use action::{AbelianAction, Action, ActionError};
pub use construct::{direct_product, semidirect_product, PairGroup, Pullback, Quotient, Subgroup};
pub use hom::{enumerate_homs, enumerate_homs_with, HomError, HomSearch, Homomorphism};
pub use structure::{structure_of, structure_of_with, GroupStructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

struct GroupData {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    abelian: bool,
    generators: OnceLock<Vec<usize>>,
    elem_orders: OnceLock<Vec<usize>>,
}

/// A validated finite group. Cloning is cheap (shared table).
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    /// Validates a square table and returns the group with its identity moved to index 0.
    ///
    /// Fails with the first violation found: identity, then inverses, then associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_relabeled(rows).map(|(g, _)| g)
    }

    /// Like [`FiniteGroup::from_table`], also returning `relabel[old] = new`.
    pub fn from_table_relabeled(rows: &[Vec<usize>]) -> Result<(Self, Vec<usize>), GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: n });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row: r, col: c, value: v });
            }
        }
        let at = |a: usize, b: usize| rows[a][b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| at(x, y) == identity && at(y, x) == identity) {
                return Err(GroupError::NoInverse(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        // swap identity into slot 0
        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.swap(0, identity);
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel[a] * n + relabel[b]] = relabel[at(a, b)];
            }
        }
        Ok((Self::from_flat_unchecked(n, table), relabel))
    }

    /// Builds a group from a flat table already known to satisfy the axioms with identity 0.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b;
                    break;
                }
            }
        }
        let abelian =
            (0..order).all(|a| (0..a).all(|b| table[a * order + b] == table[b * order + a]));
        FiniteGroup(Arc::new(GroupData {
            order,
            table,
            inverse,
            abelian,
            generators: OnceLock::new(),
            elem_orders: OnceLock::new(),
        }))
    }

    /// Builds a group from an operation on `0..order` known to be a group law with identity 0.
    pub(crate) fn from_fn_unchecked(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b));
            }
        }
        Self::from_flat_unchecked(order, table)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.0.abelian
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.0.elem_orders.get_or_init(|| {
            (0..self.order())
                .map(|x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })[x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        self.0.table.chunks(n).map(|r| r.to_vec()).collect()
    }

    /// Deterministic generating set: repeatedly the smallest element not yet generated.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| {
            let n = self.order();
            let mut inside = vec![false; n];
            inside[0] = true;
            let mut gens = Vec::new();
            for x in 0..n {
                if !inside[x] {
                    gens.push(x);
                    let closed = self.closure(&gens);
                    for y in closed {
                        inside[y] = true;
                    }
                }
            }
            gens
        })
    }

    /// Elements of the subgroup generated by `gens`, in BFS order from the identity.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                    queue.push_back(b);
                }
            }
        }
        out
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in elems {
            member[x] = true;
        }
        member[0]
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in elems {
            member[x] = true;
        }
        self.is_subgroup(elems)
            && self.elements().all(|g| elems.iter().all(|&n| member[self.conj(g, n)]))
    }

    pub(crate) fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other) || (self.order() == other.order() && self.0.table == other.0.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}", self.order())?;
        if self.is_abelian() {
            write!(f, ", abelian")?;
        }
        write!(f, ")")
    }
}
