//! Finite monoids given by their Cayley tables.
//!
//! Elements are indexed `0..n`. The identity may sit at any index; the
//! serialized form conventionally puts it at 0 but nothing here relies on it.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Display hint: whether the operation is rendered as `+` or `·`.
///
/// Purely cosmetic. Two monoids that differ only in notation compare equal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    #[default]
    Additive,
    Multiplicative,
}

impl Notation {
    pub fn symbol(self) -> &'static str {
        match self {
            Notation::Additive => "+",
            Notation::Multiplicative => "·",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("monoid has no elements")]
    Empty,
    #[error("{labels} element labels for a table with {rows} rows")]
    LabelCount { labels: usize, rows: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("identity index {0} is out of range")]
    IdentityOutOfRange(usize),
    #[error("entry {value} at ({row}, {col}) is out of range")]
    IndexOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity law fails at element {0}")]
    IdentityLawFails(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
}

/// A validated finite monoid.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    name: String,
    elements: Vec<String>,
    identity: usize,
    table: Vec<usize>,
    notation: Notation,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.identity == other.identity
            && self.elements == other.elements
            && self.table == other.table
    }
}

impl Eq for FiniteMonoid {}

impl std::hash::Hash for FiniteMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.elements.hash(state);
        self.identity.hash(state);
        self.table.hash(state);
    }
}

impl FiniteMonoid {
    /// Validates a raw table. Checks run in a fixed order: shape, index
    /// range, unit laws, then associativity in lexicographic `(i, j, k)` order.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        identity: usize,
        rows: &[Vec<usize>],
    ) -> Result<Self, MonoidError> {
        let n = rows.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        if elements.len() != n {
            return Err(MonoidError::LabelCount { labels: elements.len(), rows: n });
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &elements {
            if !seen.insert(label.as_str()) {
                return Err(MonoidError::DuplicateLabel(label.clone()));
            }
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MonoidError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        Self::from_flat(name, elements, identity, table)
    }

    /// Same as [`FiniteMonoid::new`] for a row-major flat table.
    pub fn from_flat(
        name: impl Into<String>,
        elements: Vec<String>,
        identity: usize,
        table: Vec<usize>,
    ) -> Result<Self, MonoidError> {
        let n = elements.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        if table.len() != n * n {
            return Err(MonoidError::NotSquare { row: 0, len: table.len() / n.max(1), expected: n });
        }
        if identity >= n {
            return Err(MonoidError::IdentityOutOfRange(identity));
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(MonoidError::IndexOutOfRange { row: pos / n, col: pos % n, value: table[pos] });
        }
        let monoid = FiniteMonoid { name: name.into(), elements, identity, table, notation: Notation::default() };
        if let Some(i) = monoid.identity_violation() {
            return Err(MonoidError::IdentityLawFails(i));
        }
        if let Some((i, j, k)) = monoid.associativity_violation() {
            return Err(MonoidError::NonAssociative(i, j, k));
        }
        Ok(monoid)
    }

    /// Builds a monoid with labels `"0".."n-1"`.
    pub fn with_numeric_labels(
        name: impl Into<String>,
        identity: usize,
        rows: &[Vec<usize>],
    ) -> Result<Self, MonoidError> {
        let elements = (0..rows.len()).map(|i| i.to_string()).collect();
        Self::new(name, elements, identity, rows)
    }

    fn identity_violation(&self) -> Option<usize> {
        let e = self.identity;
        (0..self.order()).find(|&i| self.op(e, i) != i || self.op(i, e) != i)
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                let ij = self.op(i, j);
                for k in 0..n {
                    if self.op(ij, k) != self.op(i, self.op(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn notation(&self) -> Notation {
        self.notation
    }

    /// Row-major flat table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_notation(mut self, notation: Notation) -> Self {
        self.notation = notation;
        self
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.op(i, j) == self.op(j, i)))
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).any(|b| self.op(a, b) == self.identity && self.op(b, a) == self.identity))
    }

    /// `a + a + ... + a` (`times` copies), the identity for `times == 0`.
    pub fn power(&self, a: usize, times: usize) -> usize {
        (0..times).fold(self.identity, |acc, _| self.op(acc, a))
    }

    /// Cartesian product with componentwise operation. Elements are ordered
    /// by `(right, left)` index so that fibres over `right` are contiguous;
    /// element `(l, r)` has index `r * |left| + l`.
    pub fn product(left: &FiniteMonoid, right: &FiniteMonoid) -> FiniteMonoid {
        let (nl, nr) = (left.order(), right.order());
        let n = nl * nr;
        let mut elements = Vec::with_capacity(n);
        for r in 0..nr {
            for l in 0..nl {
                elements.push(format!("({},{})", left.label(l), right.label(r)));
            }
        }
        let mut table = vec![0; n * n];
        for i in 0..n {
            let (li, ri) = (i % nl, i / nl);
            for j in 0..n {
                let (lj, rj) = (j % nl, j / nl);
                table[i * n + j] = right.op(ri, rj) * nl + left.op(li, lj);
            }
        }
        FiniteMonoid {
            name: format!("{}x{}", left.name, right.name),
            elements,
            identity: right.identity * nl + left.identity,
            table,
            notation: Notation::Additive,
        }
    }

    /// Relabels along a bijection: element `i` of `self` becomes element
    /// `perm[i]` of the result. Labels travel with their elements.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteMonoid, MonoidError> {
        let n = self.order();
        let mut elements = vec![String::new(); n];
        let mut table = vec![0; n * n];
        for i in 0..n {
            elements[perm[i]] = self.elements[i].clone();
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.op(i, j)];
            }
        }
        let m = FiniteMonoid::from_flat(self.name.clone(), elements, perm[self.identity], table)?;
        Ok(m.with_notation(self.notation))
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.elements.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        write!(f, "{:>width$} |", self.notation.symbol())?;
        for l in &self.elements {
            write!(f, " {l:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((width + 1) * (self.order() + 1) + 1))?;
        for i in 0..self.order() {
            write!(f, "{:>width$} |", self.elements[i])?;
            for j in 0..self.order() {
                write!(f, " {:>width$}", self.elements[self.op(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
