//! A small forward-checking backtracking solver.
//!
//! This is the consumer the representation exists for: search binds one
//! variable per level under a trail frame, propagation prunes neighbour
//! domains through binary constraints, and backtracking is a single
//! [`Trail::pop_frame`]. The solver is deliberately plain (static variable
//! order, no heuristics) so that its answers are easy to cross-check
//! against exhaustive enumeration.

use crate::sparse_set::SparseSet;
use crate::trail::Trail;

/// A binary constraint between two variables `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryConstraint {
    /// `x_a != x_b`.
    NotEqual,
    /// `x_a != x_b + k`.
    NotEqualOffset(isize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Constraint {
    a: usize,
    b: usize,
    kind: BinaryConstraint,
}

impl Constraint {
    fn holds(&self, xa: usize, xb: usize) -> bool {
        match self.kind {
            BinaryConstraint::NotEqual => xa != xb,
            BinaryConstraint::NotEqualOffset(k) => xa as isize != xb as isize + k,
        }
    }

    /// Given that one endpoint was bound to `value`, returns the other
    /// endpoint and the value now forbidden there, if any.
    fn forbidden(&self, var: usize, value: usize) -> Option<(usize, isize)> {
        let v = value as isize;
        match self.kind {
            BinaryConstraint::NotEqual if self.a == var => Some((self.b, v)),
            BinaryConstraint::NotEqual if self.b == var => Some((self.a, v)),
            // x_a != x_b + k, x_a bound: x_b may not be value - k.
            BinaryConstraint::NotEqualOffset(k) if self.a == var => Some((self.b, v - k)),
            // x_a != x_b + k, x_b bound: x_a may not be value + k.
            BinaryConstraint::NotEqualOffset(k) if self.b == var => Some((self.a, v + k)),
            _ => None,
        }
    }
}

/// Outcome of one propagation round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    /// Every touched domain is still non-empty.
    Consistent,
    /// Some domain lost its last member; the branch is dead.
    WipedOut,
}

/// A constraint satisfaction problem over `num_vars` variables, each
/// ranging over `[0, universe)`.
#[derive(Debug, Clone)]
pub struct Csp {
    num_vars: usize,
    universe: usize,
    constraints: Vec<Constraint>,
}

impl Csp {
    pub fn new(num_vars: usize, universe: usize) -> Csp {
        assert!(universe >= 1, "variables need a non-empty universe");
        Csp {
            num_vars,
            universe,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Adds `x_a != x_b`.
    pub fn add_not_equal(&mut self, a: usize, b: usize) {
        self.push_constraint(a, b, BinaryConstraint::NotEqual);
    }

    /// Adds `x_a != x_b + k`.
    pub fn add_not_equal_offset(&mut self, a: usize, b: usize, k: isize) {
        self.push_constraint(a, b, BinaryConstraint::NotEqualOffset(k));
    }

    fn push_constraint(&mut self, a: usize, b: usize, kind: BinaryConstraint) {
        assert!(a < self.num_vars && b < self.num_vars, "variable out of range");
        assert_ne!(a, b, "binary constraints need two distinct variables");
        self.constraints.push(Constraint { a, b, kind });
    }

    /// The k-queens problem: one variable per row holding the queen's
    /// column; distinct columns and distinct diagonals.
    pub fn nqueens(k: usize) -> Csp {
        assert!(k >= 1, "the board needs at least one row");
        let mut csp = Csp::new(k, k);
        for i in 0..k {
            for j in i + 1..k {
                let d = (j - i) as isize;
                csp.add_not_equal(i, j);
                csp.add_not_equal_offset(i, j, d);
                csp.add_not_equal_offset(i, j, -d);
            }
        }
        csp
    }

    /// Whether a complete assignment satisfies every constraint.
    pub fn is_satisfied(&self, assignment: &[usize]) -> bool {
        assignment.len() == self.num_vars
            && assignment.iter().all(|&v| v < self.universe)
            && self
                .constraints
                .iter()
                .all(|c| c.holds(assignment[c.a], assignment[c.b]))
    }

    /// Depth-first search with forward checking; returns the first
    /// solution in static variable order, if any.
    pub fn solve_first(&self) -> Option<Vec<usize>> {
        let mut search = Search::new(self, 1, true);
        search.run();
        search.first
    }

    /// Counts every solution. Search order does not affect the count, so
    /// this doubles as an end-to-end correctness probe for the
    /// representation underneath.
    pub fn count_solutions(&self) -> u64 {
        let mut search = Search::new(self, u64::MAX, false);
        search.run();
        // Trail hygiene: a finished search has popped every frame, so the
        // domains must be back to full.
        debug_assert!(search.domains.iter().all(|d| d.len() == self.universe));
        search.solutions
    }
}

/// Binds `var := value` and prunes neighbour domains by forward checking.
///
/// Records every touched domain on the trail when a frame is open, so a
/// later `pop_frame` undoes the whole round, including partial pruning
/// done before a wipeout was discovered. Binding a value that has already
/// been pruned from `var`'s own domain reports [`Propagation::WipedOut`].
pub fn propagate(
    csp: &Csp,
    domains: &mut [SparseSet],
    trail: &mut Trail,
    var: usize,
    value: usize,
) -> Propagation {
    assert_eq!(domains.len(), csp.num_vars, "one domain per variable");
    assert!(var < csp.num_vars, "variable out of range");
    assert!(value < csp.universe, "value outside the universe");

    if !domains[var].contains_unchecked(value) {
        return Propagation::WipedOut;
    }
    if trail.depth() > 0 {
        trail.record(var, &domains[var]).expect("a frame is open");
    }
    domains[var].bind_unchecked(value);

    for c in &csp.constraints {
        let Some((other, forbidden)) = c.forbidden(var, value) else {
            continue;
        };
        if forbidden < 0 || forbidden as usize >= csp.universe {
            continue;
        }
        let forbidden = forbidden as usize;
        let d = &mut domains[other];
        if d.contains_unchecked(forbidden) {
            if trail.depth() > 0 {
                trail.record(other, d).expect("a frame is open");
            }
            d.remove_unchecked(forbidden);
            if d.is_empty() {
                return Propagation::WipedOut;
            }
        }
    }
    Propagation::Consistent
}

struct Search<'a> {
    csp: &'a Csp,
    domains: Vec<SparseSet>,
    trail: Trail,
    limit: u64,
    solutions: u64,
    capture: bool,
    first: Option<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(csp: &'a Csp, limit: u64, capture: bool) -> Search<'a> {
        let domains = (0..csp.num_vars)
            .map(|_| SparseSet::new_full(csp.universe).expect("universe checked in Csp::new"))
            .collect();
        Search {
            csp,
            domains,
            trail: Trail::new(),
            limit,
            solutions: 0,
            capture,
            first: None,
        }
    }

    fn run(&mut self) {
        self.step(0);
    }

    fn step(&mut self, var: usize) {
        debug_assert!(self.domains.iter().all(|d| d.check_invariants().is_ok()));
        if var == self.csp.num_vars {
            self.solutions += 1;
            if self.capture && self.first.is_none() {
                self.first = Some(self.domains.iter().map(|d| d.members()[0]).collect());
            }
            return;
        }
        // Pop restores the domain between candidates, so this snapshot of
        // the current members stays valid for the whole loop.
        let candidates: Vec<usize> = self.domains[var].iter().collect();
        for value in candidates {
            let token = self.trail.push_frame();
            let outcome = propagate(self.csp, &mut self.domains, &mut self.trail, var, value);
            if outcome == Propagation::Consistent {
                self.step(var + 1);
            }
            self.trail
                .pop_frame(token, &mut self.domains)
                .expect("frames pop in LIFO order");
            if self.solutions >= self.limit {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_equal_over_two_values_has_two_solutions() {
        let mut csp = Csp::new(2, 2);
        csp.add_not_equal(0, 1);
        assert_eq!(csp.count_solutions(), 2);
        let solution = csp.solve_first().unwrap();
        assert!(csp.is_satisfied(&solution));
    }

    #[test]
    fn offset_constraint_counts_match_direct_enumeration() {
        // x0 != x1 + 1 over [0, 3): forbidden pairs are (1, 0) and (2, 1).
        let mut csp = Csp::new(2, 3);
        csp.add_not_equal_offset(0, 1, 1);
        assert_eq!(csp.count_solutions(), 9 - 2);
    }

    #[test]
    fn unsatisfiable_problems_return_none() {
        let mut csp = Csp::new(2, 1);
        csp.add_not_equal(0, 1);
        assert_eq!(csp.solve_first(), None);
        assert_eq!(csp.count_solutions(), 0);
    }

    #[test]
    fn zero_variable_problems_have_the_empty_solution() {
        let csp = Csp::new(0, 1);
        assert_eq!(csp.count_solutions(), 1);
        assert_eq!(csp.solve_first(), Some(Vec::new()));
    }

    #[test]
    fn nqueens_counts_are_the_classic_sequence() {
        let expected = [(1, 1), (2, 0), (3, 0), (4, 2), (5, 10), (6, 4), (7, 40), (8, 92)];
        for (k, count) in expected {
            assert_eq!(Csp::nqueens(k).count_solutions(), count, "k = {k}");
        }
    }

    #[test]
    fn first_four_queens_solution_is_deterministic() {
        let solution = Csp::nqueens(4).solve_first().unwrap();
        assert_eq!(solution, vec![1, 3, 0, 2]);
        assert!(Csp::nqueens(4).is_satisfied(&solution));
    }

    #[test]
    fn solutions_satisfy_the_problem() {
        for k in [1, 4, 5, 6, 8] {
            let csp = Csp::nqueens(k);
            let solution = csp.solve_first().expect("these sizes are solvable");
            assert!(csp.is_satisfied(&solution), "k = {k}");
        }
    }

    #[test]
    fn is_satisfied_rejects_bad_assignments() {
        let csp = Csp::nqueens(4);
        assert!(!csp.is_satisfied(&[0, 1, 2, 3]));  // shared diagonal
        assert!(!csp.is_satisfied(&[1, 3, 0]));     // wrong arity
        assert!(!csp.is_satisfied(&[1, 3, 0, 4]));  // value out of range
    }

    #[test]
    fn propagate_prunes_exactly_the_incompatible_values() {
        let csp = {
            let mut csp = Csp::new(2, 4);
            csp.add_not_equal(0, 1);
            csp.add_not_equal_offset(1, 0, 2); // x1 != x0 + 2
            csp
        };
        let mut domains = vec![
            SparseSet::new_full(4).unwrap(),
            SparseSet::new_full(4).unwrap(),
        ];
        let mut trail = Trail::new();
        let outcome = propagate(&csp, &mut domains, &mut trail, 0, 1);
        assert_eq!(outcome, Propagation::Consistent);
        assert_eq!(domains[0].members(), &[1]);
        // x1 loses 1 (not-equal) and 3 (offset).
        let mut left: Vec<usize> = domains[1].iter().collect();
        left.sort_unstable();
        assert_eq!(left, vec![0, 2]);
    }

    #[test]
    fn propagate_reports_wipeout_on_a_pruned_value() {
        let csp = Csp::new(1, 2);
        let mut domains = vec![SparseSet::new_full(2).unwrap()];
        domains[0].remove(1).unwrap();
        let mut trail = Trail::new();
        assert_eq!(
            propagate(&csp, &mut domains, &mut trail, 0, 1),
            Propagation::WipedOut
        );
    }

    #[test]
    fn a_popped_frame_undoes_partial_pruning_after_wipeout() {
        // x1 ranges over a single value shared with x0: binding x0 to it
        // wipes x1 out after some pruning already happened.
        let mut csp = Csp::new(2, 2);
        csp.add_not_equal(0, 1);
        let mut domains = vec![
            SparseSet::new_full(2).unwrap(),
            SparseSet::new_full(2).unwrap(),
        ];
        domains[1].remove(0).unwrap();
        let before: Vec<SparseSet> = domains.clone();
        let mut trail = Trail::new();
        let token = trail.push_frame();
        assert_eq!(
            propagate(&csp, &mut domains, &mut trail, 0, 1),
            Propagation::WipedOut
        );
        trail.pop_frame(token, &mut domains).unwrap();
        // Restore guarantees the member set; order within the prefix may
        // differ from before the frame.
        let sorted = |d: &SparseSet| {
            let mut m = d.members().to_vec();
            m.sort_unstable();
            m
        };
        assert_eq!(sorted(&domains[0]), sorted(&before[0]));
        assert_eq!(sorted(&domains[1]), sorted(&before[1]));
    }

    #[test]
    fn counting_twice_gives_the_same_answer() {
        // Search restores every domain it touches; a second pass over the
        // same problem must agree with the first.
        let csp = Csp::nqueens(5);
        assert_eq!(csp.count_solutions(), csp.count_solutions());
    }
}
