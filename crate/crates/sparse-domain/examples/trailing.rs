//! Backtracking with a trail: mark, mutate, pop.
//!
//! Because remove/bind only ever swap inside the member prefix, every
//! value removed since a mark is still parked right behind it. Restoring
//! is therefore a single size write per touched domain — no copies, no
//! per-value undo log.

use sparse_domain::{SparseSet, Trail};

fn members(s: &SparseSet) -> Vec<usize> {
    let mut m = s.members().to_vec();
    m.sort_unstable();
    m
}

fn main() {
    let mut s = SparseSet::new_full(8).unwrap();
    let mut trail = Trail::new();

    // Open a choice point, then shrink the domain.
    let outer = trail.push_frame();
    trail.record(0, &s).unwrap(); // first touch under this frame
    s.remove(3).unwrap();
    s.remove(0).unwrap();
    s.remove(6).unwrap();
    println!("after 3 removals: members = {:?}", members(&s));
    assert_eq!(s.len(), 5);

    // A nested choice point; record is per frame, so the first mutation
    // under the inner frame records again.
    let inner = trail.push_frame();
    trail.record(0, &s).unwrap();
    s.bind(5).unwrap();
    println!("after bind(5):    members = {:?}", members(&s));
    assert_eq!(s.len(), 1);

    // Pop the inner frame: back to the five members — the bind is gone.
    trail.pop_frame(inner, std::slice::from_mut(&mut s)).unwrap();
    println!("pop inner:        members = {:?}", members(&s));
    assert_eq!(members(&s), vec![1, 2, 4, 5, 7]);

    // Pop the outer frame: the full domain again. Note the arrays were
    // never copied; both pops just moved `size` back.
    trail.pop_frame(outer, std::slice::from_mut(&mut s)).unwrap();
    println!("pop outer:        members = {:?}", members(&s));
    assert_eq!(s.len(), 8);
    assert!(s.check_invariants().is_ok());

    // One trail serves many domains; only touched domains are recorded.
    let mut xs: Vec<SparseSet> = (0..3).map(|_| SparseSet::new_full(4).unwrap()).collect();
    let frame = trail.push_frame();
    trail.record(0, &xs[0]).unwrap();
    xs[0].remove(1).unwrap();
    trail.record(2, &xs[2]).unwrap();
    xs[2].bind(3).unwrap();
    println!(
        "three domains mid-frame: {:?}",
        xs.iter().map(members).collect::<Vec<_>>()
    );
    trail.pop_frame(frame, &mut xs).unwrap();
    println!(
        "after pop:               {:?}",
        xs.iter().map(members).collect::<Vec<_>>()
    );
    for x in &xs {
        assert_eq!(x.len(), 4);
    }

    // Record is idempotent within a frame: one mark per domain per frame,
    // however many operations follow.
    let frame = trail.push_frame();
    for v in [0, 1, 2] {
        trail.record(0, &xs[0]).unwrap();
        xs[0].remove(v).unwrap();
    }
    assert_eq!(trail.mark_count(), 1);
    trail.pop_frame(frame, &mut xs).unwrap();
    assert_eq!(xs[0].len(), 4);
    println!("one frame, three removals, one mark — restored to {:?}", members(&xs[0]));
}
