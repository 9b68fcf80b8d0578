//! The sparse-set representation of a finite integer domain.
//!
//! A domain over the universe `[0, n)` is stored as two mutually inverse
//! permutation arrays plus a size bound. `dom` keeps the current members in
//! its prefix `[0, size)` and the removed values in its suffix `[size, n)`;
//! `map[v]` is the index of `v` in `dom`. Membership is `map[v] < size`,
//! removal is at most one swap plus a decrement, and restoring an earlier
//! state after backtracking is a single write to `size`.

use std::fmt;

/// Error raised by the checked domain operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    /// The universe bound must be at least 1.
    #[error("universe must be non-empty")]
    EmptyUniverse,
    /// A value fell outside `[0, n)`.
    #[error("value {value} outside universe [0, {universe})")]
    OutOfUniverse { value: usize, universe: usize },
    /// The operation requires its value to be a current member.
    #[error("value {value} is not a member of the domain")]
    NotAMember { value: usize },
    /// An array index fell outside `[0, n)`.
    #[error("index {index} outside universe [0, {universe})")]
    IndexOutOfRange { index: usize, universe: usize },
}

/// Label identifying one checkable invariant. The structural labels are
/// reported by [`SparseSet::check_invariants`]; the remaining labels are
/// produced by the lockstep oracle when a simulation property fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantLabel {
    /// Every `dom` entry lies in `[0, n)`.
    Inv1,
    /// Every `map` entry lies in `[0, n)`.
    Inv2,
    /// `dom` and `map` compose to the identity (`map[dom[i]] = i`).
    Inv4,
    /// `map` and `dom` compose to the identity (`dom[map[v]] = v`).
    Inv5,
    /// `size` lies in `[0, n]`.
    SizeRange,
    /// `dom` and `map` are mutually inverse permutations.
    Inverse,
    /// The concrete member set equals the abstract model set.
    Gluing,
    /// A removal strictly decreased `size`.
    SizeDecrease,
    /// A removal left `dom` untouched at indices at or beyond the old size.
    SuffixFrame,
    /// A restored domain's member set equals the set recorded at its mark.
    RestoreSoundness,
}

impl fmt::Display for InvariantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            InvariantLabel::Inv1 => "inv1",
            InvariantLabel::Inv2 => "inv2",
            InvariantLabel::Inv4 => "inv4",
            InvariantLabel::Inv5 => "inv5",
            InvariantLabel::SizeRange => "size-range",
            InvariantLabel::Inverse => "inverse",
            InvariantLabel::Gluing => "gluing",
            InvariantLabel::SizeDecrease => "size-decrease",
            InvariantLabel::SuffixFrame => "suffix-frame",
            InvariantLabel::RestoreSoundness => "restore-soundness",
        };
        f.write_str(name)
    }
}

/// One detected invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantViolation {
    pub label: InvariantLabel,
    pub detail: String,
}

/// Result of checking a [`SparseSet`]'s structural invariants.
///
/// An empty report means every invariant holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    violations: Vec<InvariantViolation>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[InvariantViolation] {
        &self.violations
    }

    fn push(&mut self, label: InvariantLabel, detail: String) {
        self.violations.push(InvariantViolation { label, detail });
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("all invariants hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.label, v.detail)?;
        }
        Ok(())
    }
}

/// A finite subset of `[0, n)` with O(1) membership, removal, singleton
/// binding, and restore.
///
/// The checked operations ([`remove`](Self::remove), [`bind`](Self::bind),
/// [`contains`](Self::contains)) verify their preconditions and report
/// [`DomainError`] on violation. The `_unchecked` variants skip the guards
/// for hot paths; calling one with a violated precondition may panic or
/// leave the set in an inconsistent (but memory-safe) state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSet {
    dom: Vec<usize>,
    map: Vec<usize>,
    size: usize,
}

impl SparseSet {
    /// Creates the full domain `{0, 1, ..., n-1}`. Both arrays start as the
    /// identity permutation. Fails for `n = 0`: the universe bound must be a
    /// non-zero natural.
    pub fn new_full(n: usize) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::EmptyUniverse);
        }
        Ok(SparseSet {
            dom: (0..n).collect(),
            map: (0..n).collect(),
            size: n,
        })
    }

    /// The universe bound `n`. Values range over `[0, n)`.
    #[inline]
    pub fn universe(&self) -> usize {
        self.dom.len()
    }

    /// Number of current members.
    #[inline]
    pub fn len(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Membership test: `map[v] < size`.
    ///
    /// Fails when `v` is outside the universe.
    pub fn contains(&self, v: usize) -> Result<bool, DomainError> {
        if v >= self.universe() {
            return Err(DomainError::OutOfUniverse {
                value: v,
                universe: self.universe(),
            });
        }
        Ok(self.map[v] < self.size)
    }

    /// Membership test without the range guard. Panics if `v >= n`.
    #[inline]
    pub fn contains_unchecked(&self, v: usize) -> bool {
        self.map[v] < self.size
    }

    /// Removes `v` from the domain.
    ///
    /// The member at `dom[map[v]]` is exchanged with the last member at
    /// `dom[size - 1]` and `size` is decremented, so the removed value lands
    /// just past the new prefix. When `v` already sits in the last member
    /// slot the swap is skipped; the resulting state is identical since a
    /// self-swap changes nothing.
    ///
    /// Fails when `v` is outside the universe or not a current member.
    pub fn remove(&mut self, v: usize) -> Result<(), DomainError> {
        if v >= self.universe() {
            return Err(DomainError::OutOfUniverse {
                value: v,
                universe: self.universe(),
            });
        }
        if self.map[v] >= self.size {
            return Err(DomainError::NotAMember { value: v });
        }
        self.remove_unchecked(v);
        Ok(())
    }

    /// [`remove`](Self::remove) without the guards. The caller must ensure
    /// `v` is a current member; otherwise the set becomes inconsistent.
    #[inline]
    pub fn remove_unchecked(&mut self, v: usize) {
        debug_assert!(self.contains_unchecked(v));
        let i = self.map[v];
        let last = self.size - 1;
        if i != last {
            self.swap_at(i, last);
        }
        self.size = last;
    }

    /// Restricts the domain to the singleton `{v}` by moving `v` to the
    /// front of `dom` and setting `size` to 1.
    ///
    /// Fails when `v` is outside the universe or not a current member:
    /// binding to an absent value would make the domain inconsistent.
    pub fn bind(&mut self, v: usize) -> Result<(), DomainError> {
        if v >= self.universe() {
            return Err(DomainError::OutOfUniverse {
                value: v,
                universe: self.universe(),
            });
        }
        if self.map[v] >= self.size {
            return Err(DomainError::NotAMember { value: v });
        }
        self.bind_unchecked(v);
        Ok(())
    }

    /// [`bind`](Self::bind) without the guards. The caller must ensure `v`
    /// is a current member.
    #[inline]
    pub fn bind_unchecked(&mut self, v: usize) {
        debug_assert!(self.contains_unchecked(v));
        let i = self.map[v];
        if i != 0 {
            self.swap_at(i, 0);
        }
        self.size = 1;
    }

    /// Current members, in `dom`-prefix order.
    ///
    /// The order is an implementation artifact of earlier removals and is
    /// not stable across operation sequences; treat the slice as a set.
    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.dom[..self.size]
    }

    /// Iterates the current members in `dom`-prefix order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members().iter().copied()
    }

    /// The full `dom` array: members in `[0, size)`, removed values in
    /// `[size, n)`.
    #[inline]
    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    /// The full `map` array; `map[v]` is the index of `v` in `dom`.
    #[inline]
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Exchanges the `dom` entries at `i` and `j` and re-points the two
    /// affected `map` entries, preserving the inverse invariant. `size` is
    /// untouched. The range-checked face of [`SparseSet::swap_at`]; only
    /// test code needs the checks, the operations use `swap_at` directly.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn swap_entries(&mut self, i: usize, j: usize) -> Result<(), DomainError> {
        let n = self.universe();
        for index in [i, j] {
            if index >= n {
                return Err(DomainError::IndexOutOfRange { index, universe: n });
            }
        }
        self.swap_at(i, j);
        Ok(())
    }

    fn swap_at(&mut self, i: usize, j: usize) {
        self.dom.swap(i, j);
        self.map[self.dom[i]] = i;
        self.map[self.dom[j]] = j;
    }

    /// Resets `size` to an earlier, larger value. Sound because no operation
    /// disturbs `dom` entries at indices at or beyond the current size, so
    /// the prefix `[0, saved)` still holds exactly the members recorded at
    /// the mark.
    pub(crate) fn restore_size(&mut self, saved: usize) {
        debug_assert!(saved >= self.size && saved <= self.universe());
        self.size = saved;
    }

    /// Builds a set directly from its parts, without validation. Test and
    /// fault-injection plumbing.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn from_raw_parts(dom: Vec<usize>, map: Vec<usize>, size: usize) -> Self {
        SparseSet { dom, map, size }
    }

    /// Mutable access to the raw parts, for fault injection.
    pub(crate) fn raw_parts_mut(&mut self) -> (&mut [usize], &mut [usize], &mut usize) {
        (&mut self.dom, &mut self.map, &mut self.size)
    }

    /// Checks every structural invariant and reports each violation by
    /// label. All checks run in O(n); a healthy set allocates nothing.
    ///
    /// Labels: `inv1`/`inv2` (array entries in range), `size-range`
    /// (`size <= n`), `inv4`/`inv5` (the two compositions are the
    /// identity), `inverse` (`dom` and `map` are permutations).
    pub fn check_invariants(&self) -> Diagnostics {
        let n = self.universe();
        let mut diag = Diagnostics::default();

        for (i, &v) in self.dom.iter().enumerate() {
            if v >= n {
                diag.push(
                    InvariantLabel::Inv1,
                    format!("dom[{i}] = {v} outside [0, {n})"),
                );
            }
        }
        for (v, &i) in self.map.iter().enumerate() {
            if i >= n {
                diag.push(
                    InvariantLabel::Inv2,
                    format!("map[{v}] = {i} outside [0, {n})"),
                );
            }
        }
        if self.size > n {
            diag.push(
                InvariantLabel::SizeRange,
                format!("size = {} exceeds universe {n}", self.size),
            );
        }
        for (i, &v) in self.dom.iter().enumerate() {
            if v < n && self.map[v] != i {
                diag.push(
                    InvariantLabel::Inv4,
                    format!("map[dom[{i}]] = map[{v}] = {} but expected {i}", self.map[v]),
                );
            }
        }
        for (v, &i) in self.map.iter().enumerate() {
            if i < n && self.dom[i] != v {
                diag.push(
                    InvariantLabel::Inv5,
                    format!("dom[map[{v}]] = dom[{i}] = {} but expected {v}", self.dom[i]),
                );
            }
        }
        // Injectivity of dom; with inv1 this makes dom (and so map) a
        // permutation of [0, n).
        let mut seen_at = vec![usize::MAX; n];
        for (i, &v) in self.dom.iter().enumerate() {
            if v >= n {
                continue;
            }
            if seen_at[v] != usize::MAX {
                diag.push(
                    InvariantLabel::Inverse,
                    format!("dom not injective: dom[{}] = dom[{i}] = {v}", seen_at[v]),
                );
            } else {
                seen_at[v] = i;
            }
        }
        diag
    }
}
