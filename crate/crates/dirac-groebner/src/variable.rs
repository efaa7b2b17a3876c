//! Variable registry for a single analysis problem.
//!
//! Every polynomial refers to variables by index into one shared
//! [`VariableTable`]. A table is built from the declared generalized
//! coordinates: for each coordinate `x` it registers the velocity `dx` and
//! the conjugate momentum `p_x` alongside `x` itself. Multipliers and the
//! auxiliary variable used by radical-membership tests are appended later;
//! extension never invalidates existing indices, so polynomials built over
//! the original table remain valid over the extended one.
//!
//! Precedence (used by every monomial order) ranks kinds as
//! auxiliary > velocities > momenta > coordinates > multipliers,
//! with declaration order breaking ties inside a kind.

use std::fmt;
use std::sync::Arc;

use crate::error::TableError;

/// What role a variable plays in the Hamiltonian formalism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// Radical-membership test helper; highest precedence, never reported.
    Auxiliary,
    Velocity,
    Momentum,
    Coordinate,
    /// Lagrange multiplier attached to a primary constraint; lowest precedence.
    Multiplier,
}

pub const ALL_KINDS: [VarKind; 5] = [
    VarKind::Auxiliary,
    VarKind::Velocity,
    VarKind::Momentum,
    VarKind::Coordinate,
    VarKind::Multiplier,
];

/// Index of a variable in its [`VariableTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub(crate) usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct VarInfo {
    name: String,
    kind: VarKind,
}

/// Ordered registry of the variables of one problem.
#[derive(Debug)]
pub struct VariableTable {
    vars: Vec<VarInfo>,
    n_coords: usize,
    /// Variable indices sorted from highest to lowest precedence.
    by_precedence: Vec<VarId>,
}

impl VariableTable {
    /// Builds the phase-space table for the given generalized coordinates.
    ///
    /// Registers `d<name>` (velocity) and `p_<name>` (momentum) for each
    /// coordinate; names must not collide.
    pub fn for_coordinates<S: AsRef<str>>(coords: &[S]) -> Result<Arc<Self>, TableError> {
        if coords.is_empty() {
            return Err(TableError::NoCoordinates);
        }
        let mut vars = Vec::with_capacity(3 * coords.len());
        for c in coords {
            vars.push(VarInfo {
                name: format!("d{}", c.as_ref()),
                kind: VarKind::Velocity,
            });
        }
        for c in coords {
            vars.push(VarInfo {
                name: format!("p_{}", c.as_ref()),
                kind: VarKind::Momentum,
            });
        }
        for c in coords {
            vars.push(VarInfo {
                name: c.as_ref().to_owned(),
                kind: VarKind::Coordinate,
            });
        }
        Self::build(vars, coords.len())
    }

    fn build(vars: Vec<VarInfo>, n_coords: usize) -> Result<Arc<Self>, TableError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(TableError::DuplicateSymbol(v.name.clone()));
            }
        }
        let mut by_precedence: Vec<VarId> = (0..vars.len()).map(VarId).collect();
        by_precedence.sort_by_key(|v| (vars[v.0].kind, v.0));
        Ok(Arc::new(VariableTable {
            vars,
            n_coords,
            by_precedence,
        }))
    }

    /// New table with `count` fresh multiplier variables appended.
    ///
    /// Names are `u1, u2, ...`, primed on collision with user symbols.
    pub fn extend_with_multipliers(
        self: &Arc<Self>,
        count: usize,
    ) -> (Arc<Self>, Vec<VarId>) {
        let mut vars = self.vars.clone();
        let mut ids = Vec::with_capacity(count);
        for k in 1..=count {
            let name = Self::fresh_name(&vars, &format!("u{k}"));
            ids.push(VarId(vars.len()));
            vars.push(VarInfo {
                name,
                kind: VarKind::Multiplier,
            });
        }
        let table = Self::build(vars, self.n_coords).expect("fresh names are unique");
        (table, ids)
    }

    /// New table with one auxiliary variable appended (radical tests).
    pub fn extend_with_auxiliary(self: &Arc<Self>) -> (Arc<Self>, VarId) {
        let mut vars = self.vars.clone();
        let name = Self::fresh_name(&vars, "t");
        let id = VarId(vars.len());
        vars.push(VarInfo {
            name,
            kind: VarKind::Auxiliary,
        });
        let table = Self::build(vars, self.n_coords).expect("fresh names are unique");
        (table, id)
    }

    fn fresh_name(vars: &[VarInfo], base: &str) -> String {
        let mut name = base.to_owned();
        while vars.iter().any(|v| v.name == name) {
            name.push('\'');
        }
        name
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Number of generalized coordinates (= momenta = velocities).
    pub fn n_coordinates(&self) -> usize {
        self.n_coords
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v.0].name
    }

    pub fn kind(&self, v: VarId) -> VarKind {
        self.vars[v.0].kind
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(VarId)
    }

    /// Velocity of the `i`-th coordinate.
    pub fn velocity(&self, i: usize) -> VarId {
        assert!(i < self.n_coords);
        VarId(i)
    }

    /// Momentum conjugate to the `i`-th coordinate.
    pub fn momentum(&self, i: usize) -> VarId {
        assert!(i < self.n_coords);
        VarId(self.n_coords + i)
    }

    /// The `i`-th coordinate.
    pub fn coordinate(&self, i: usize) -> VarId {
        assert!(i < self.n_coords);
        VarId(2 * self.n_coords + i)
    }

    /// `(momentum, coordinate)` pairs, in declaration order.
    pub fn canonical_pairs(&self) -> impl Iterator<Item = (VarId, VarId)> + '_ {
        (0..self.n_coords).map(|i| (self.momentum(i), self.coordinate(i)))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.vars.len()).map(VarId)
    }

    pub fn vars_of_kind(&self, kind: VarKind) -> Vec<VarId> {
        self.vars()
            .filter(move |v| self.kind(*v) == kind)
            .collect()
    }

    /// Variables from highest to lowest precedence.
    pub fn by_precedence(&self) -> &[VarId] {
        &self.by_precedence
    }

    /// True when `self`'s registry is an initial segment of `other`'s, so
    /// indices mean the same variables in both.
    pub fn is_prefix_of(&self, other: &VariableTable) -> bool {
        self.vars.len() <= other.vars.len() && self.vars == other.vars[..self.vars.len()]
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .by_precedence
            .iter()
            .map(|v| self.name(*v))
            .collect();
        write!(f, "{}", names.join(" > "))
    }
}

/// Picks the finer of two compatible tables; panics when the tables are
/// unrelated (polynomials from different problems).
pub(crate) fn unify<'a>(
    a: &'a Arc<VariableTable>,
    b: &'a Arc<VariableTable>,
) -> &'a Arc<VariableTable> {
    if Arc::ptr_eq(a, b) || b.is_prefix_of(a) {
        a
    } else if a.is_prefix_of(b) {
        b
    } else {
        panic!("polynomials over unrelated variable tables");
    }
}
