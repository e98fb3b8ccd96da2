use thiserror::Error;

use super::{enumerate_homs_with, structure_of_with, FiniteGroup, Homomorphism};
use crate::limits::{BudgetExceeded, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("module group is not abelian")]
    NotAbelian,
    #[error("action table has {got} rows of length {len}, expected {rows} rows of length {expected}")]
    Shape { got: usize, len: usize, rows: usize, expected: usize },
    #[error("act({0}, -) is not an automorphism")]
    NotAutomorphism(usize),
    #[error("act({0}·{1}, -) differs from act({0}, act({1}, -))")]
    NotFunctorial(usize, usize),
}

/// A left action of `actor` on `target` by group automorphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct Action {
    actor: FiniteGroup,
    target: FiniteGroup,
    table: Vec<usize>,
}

impl std::fmt::Debug for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.table.chunks(self.target.order())).finish()
    }
}

impl Action {
    /// `rows[c]` is the map `act(c, -)`.
    pub fn new(actor: &FiniteGroup, target: &FiniteGroup, rows: &[Vec<usize>]) -> Result<Self, ActionError> {
        let n = target.order();
        if rows.len() != actor.order() || rows.iter().any(|r| r.len() != n) {
            return Err(ActionError::Shape {
                got: rows.len(),
                len: rows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
                rows: actor.order(),
                expected: n,
            });
        }
        for (c, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &b in row {
                if b >= n || std::mem::replace(&mut seen[b], true) {
                    return Err(ActionError::NotAutomorphism(c));
                }
            }
            for x in target.elements() {
                for y in target.elements() {
                    if row[target.mul(x, y)] != target.mul(row[x], row[y]) {
                        return Err(ActionError::NotAutomorphism(c));
                    }
                }
            }
        }
        for c in actor.elements() {
            for d in actor.elements() {
                let cd = actor.mul(c, d);
                if target.elements().any(|b| rows[cd][b] != rows[c][rows[d][b]]) {
                    return Err(ActionError::NotFunctorial(c, d));
                }
            }
        }
        if target.elements().any(|b| rows[0][b] != b) {
            // unreachable for bijective functorial rows, kept as a guard
            return Err(ActionError::NotFunctorial(0, 0));
        }
        Ok(Self::from_fn_unchecked(actor, target, |c, b| rows[c][b]))
    }

    pub(crate) fn from_fn_unchecked(
        actor: &FiniteGroup,
        target: &FiniteGroup,
        act: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut table = Vec::with_capacity(actor.order() * target.order());
        for c in actor.elements() {
            for b in target.elements() {
                table.push(act(c, b));
            }
        }
        Action { actor: actor.clone(), target: target.clone(), table }
    }

    pub fn trivial(actor: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self::from_fn_unchecked(actor, target, |_, b| b)
    }

    /// Conjugation action of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        Self::from_fn_unchecked(g, g, |x, y| g.conj(x, y))
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    #[inline]
    pub fn act(&self, c: usize, b: usize) -> usize {
        self.table[c * self.target.order() + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.target.order()).map(<[usize]>::to_vec).collect()
    }

    /// The action of `psi.source()` given by `(c′, b) ↦ act(ψ(c′), b)`.
    pub fn pullback(&self, psi: &Homomorphism) -> Action {
        debug_assert!(psi.target() == &self.actor);
        Self::from_fn_unchecked(psi.source(), &self.target, |c, b| self.act(psi.apply(c), b))
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().all(|c| self.target.elements().all(|b| self.act(c, b) == b))
    }

    /// Every action of `actor` on `target`, one per homomorphism into `Aut(target)`.
    pub fn all(actor: &FiniteGroup, target: &FiniteGroup, limits: &Limits) -> Result<Vec<Action>, BudgetExceeded> {
        let st = structure_of_with(target, limits)?;
        Ok(enumerate_homs_with(actor, &st.automorphisms, limits)?
            .into_iter()
            .map(|rho| Self::from_fn_unchecked(actor, target, |c, b| st.eval(rho.apply(c), b)))
            .collect())
    }
}

/// A module over `actor`: an action on an abelian group.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianAction(Action);

impl std::fmt::Debug for AbelianAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AbelianAction{:?}", self.0)
    }
}

impl AbelianAction {
    pub fn new(actor: &FiniteGroup, module: &FiniteGroup, rows: &[Vec<usize>]) -> Result<Self, ActionError> {
        if !module.is_abelian() {
            return Err(ActionError::NotAbelian);
        }
        Action::new(actor, module, rows).map(AbelianAction)
    }

    pub fn from_action(action: Action) -> Result<Self, ActionError> {
        if action.target.is_abelian() {
            Ok(AbelianAction(action))
        } else {
            Err(ActionError::NotAbelian)
        }
    }

    pub fn trivial(actor: &FiniteGroup, module: &FiniteGroup) -> Result<Self, ActionError> {
        Self::from_action(Action::trivial(actor, module))
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.0.actor
    }

    pub fn module(&self) -> &FiniteGroup {
        &self.0.target
    }

    #[inline]
    pub fn act(&self, c: usize, b: usize) -> usize {
        self.0.act(c, b)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    pub fn as_action(&self) -> &Action {
        &self.0
    }

    pub fn pullback(&self, psi: &Homomorphism) -> AbelianAction {
        AbelianAction(self.0.pullback(psi))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }
}
