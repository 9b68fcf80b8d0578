//! The representation itself: two mutually inverse arrays and a size.
//!
//! `dom` lists the universe with the current members packed into the
//! prefix `[0, size)`; `map[v]` says where `v` sits in `dom`. Membership
//! is one array read, removal is at most one swap, binding is at most one
//! swap — and nothing beyond the prefix is ever cleaned up.

use sparse_domain::{DomainError, SparseSet};

fn show(label: &str, s: &SparseSet) {
    println!(
        "{label:<24} dom = {:?}  map = {:?}  size = {}  members = {:?}",
        s.dom(),
        s.map(),
        s.len(),
        s.members()
    );
}

fn main() {
    // A fresh domain over {0, .., 4}: both arrays are the identity.
    let mut s = SparseSet::new_full(5).unwrap();
    show("new_full(5)", &s);
    assert_eq!(s.dom(), &[0, 1, 2, 3, 4]);
    assert_eq!(s.map(), &[0, 1, 2, 3, 4]);

    // Membership is a single comparison: map[v] < size.
    assert!(s.contains(2).unwrap());
    assert_eq!(
        s.contains(7),
        Err(DomainError::OutOfUniverse { value: 7, universe: 5 })
    );

    // Removing 2 swaps it with the last member and shrinks the prefix.
    // The value is still in dom — just beyond size, which is what makes
    // restoration trivial later.
    s.remove(2).unwrap();
    show("remove(2)", &s);
    assert_eq!(s.dom(), &[0, 1, 4, 3, 2]);
    assert_eq!(s.len(), 4);
    assert!(!s.contains(2).unwrap());

    // Removing the value that already sits at the end of the prefix
    // skips the swap entirely: only size moves.
    s.remove(3).unwrap();
    show("remove(3) (fast path)", &s);
    assert_eq!(s.dom(), &[0, 1, 4, 3, 2]);
    assert_eq!(s.len(), 3);

    // Removing a non-member is a precondition error, state untouched.
    assert_eq!(s.remove(2), Err(DomainError::NotAMember { value: 2 }));

    // bind collapses the domain to a singleton: one swap to the front,
    // then size = 1.
    s.bind(4).unwrap();
    show("bind(4)", &s);
    assert_eq!(s.members(), &[4]);
    assert_eq!(s.len(), 1);

    // Every operation preserved the structural invariants: entries in
    // range, size within bounds, and the two arrays inverse to each other.
    let diagnostics = s.check_invariants();
    assert!(diagnostics.is_ok());
    println!("check_invariants: {diagnostics}");
}
