//! Seeded bugs: deliberately broken variants of `remove` and `bind`.
//!
//! Each variant reproduces a mistake that is easy to make when hand-coding
//! the swap-based representation. The lockstep checker must flag every one
//! of them; if a seeded bug survives exhaustive checking, the checker is
//! too weak, not the representation too strong.

use std::str::FromStr;

use crate::sparse_set::{DomainError, SparseSet};

/// A deliberately broken implementation choice, selectable at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeededBug {
    /// `remove` swaps the dense array and fixes the removed value's inverse
    /// entry, but forgets the entry for the value swapped into its place.
    SkipMapUpdate,
    /// `remove` decrements the size by two instead of one, silently
    /// dropping an extra member.
    DoubleDecrement,
    /// The swap helper exchanges the dense entries but never touches the
    /// inverse array.
    SwapOnlyDom,
    /// `bind` sets the size to one without first swapping the bound value
    /// to the front.
    BindWithoutSwap,
}

impl SeededBug {
    pub const ALL: [SeededBug; 4] = [
        SeededBug::SkipMapUpdate,
        SeededBug::DoubleDecrement,
        SeededBug::SwapOnlyDom,
        SeededBug::BindWithoutSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeededBug::SkipMapUpdate => "skip-map-update",
            SeededBug::DoubleDecrement => "double-decrement",
            SeededBug::SwapOnlyDom => "swap-only-dom",
            SeededBug::BindWithoutSwap => "bind-without-swap",
        }
    }
}

impl FromStr for SeededBug {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeededBug::ALL
            .into_iter()
            .find(|bug| bug.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = SeededBug::ALL.iter().map(|b| b.name()).collect();
                format!("unknown bug `{s}` (expected one of: {})", names.join(", "))
            })
    }
}

impl std::fmt::Display for SeededBug {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// `remove` with the given bug injected. Guards match the real operation;
/// only the update is wrong (and only for remove-related bugs).
pub(crate) fn faulty_remove(
    set: &mut SparseSet,
    value: usize,
    bug: SeededBug,
) -> Result<(), DomainError> {
    if value >= set.universe() {
        return Err(DomainError::OutOfUniverse {
            value,
            universe: set.universe(),
        });
    }
    if !set.contains_unchecked(value) {
        return Err(DomainError::NotAMember { value });
    }
    if bug == SeededBug::BindWithoutSwap {
        set.remove_unchecked(value);
        return Ok(());
    }
    let (dom, map, size) = set.raw_parts_mut();
    let i = map[value];
    let last = *size - 1;
    match bug {
        SeededBug::SkipMapUpdate => {
            if i != last {
                dom.swap(i, last);
                map[value] = last;
                // forgot: map[dom[i]] = i
            }
            *size = last;
        }
        SeededBug::SwapOnlyDom => {
            if i != last {
                dom.swap(i, last);
            }
            *size = last;
        }
        SeededBug::DoubleDecrement => {
            if i != last {
                dom.swap(i, last);
                map[dom[i]] = i;
                map[dom[last]] = last;
            }
            *size = size.saturating_sub(2);
        }
        SeededBug::BindWithoutSwap => unreachable!("handled above"),
    }
    Ok(())
}

/// `bind` with the given bug injected.
pub(crate) fn faulty_bind(
    set: &mut SparseSet,
    value: usize,
    bug: SeededBug,
) -> Result<(), DomainError> {
    if value >= set.universe() {
        return Err(DomainError::OutOfUniverse {
            value,
            universe: set.universe(),
        });
    }
    if !set.contains_unchecked(value) {
        return Err(DomainError::NotAMember { value });
    }
    if bug == SeededBug::BindWithoutSwap {
        let (_, _, size) = set.raw_parts_mut();
        *size = 1;
    } else {
        set.bind_unchecked(value);
    }
    Ok(())
}
