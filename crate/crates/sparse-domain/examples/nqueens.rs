//! The consumer's view: a forward-checking backtracking solver.
//!
//! Each row of the board is a variable whose sparse-set domain holds the
//! still-possible columns. Binding a queen prunes neighbour domains
//! through the column and diagonal constraints; a dead branch is undone
//! by popping one trail frame, whatever was pruned underneath it.

use sparse_domain::solver::Csp;

fn print_board(columns: &[usize]) {
    let k = columns.len();
    for &col in columns {
        let mut row = String::new();
        for c in 0..k {
            row.push_str(if c == col { " Q" } else { " ." });
        }
        println!("{row}");
    }
}

fn main() {
    // First solution for the classic 8×8 board.
    let csp = Csp::nqueens(8);
    let solution = csp.solve_first().expect("8-queens is solvable");
    assert!(csp.is_satisfied(&solution));
    println!("first 8-queens solution, columns {solution:?}:");
    print_board(&solution);

    // Counting visits the whole search tree: every dead end is one
    // pop_frame, so this is the trail's endurance test.
    println!();
    for k in 1..=8 {
        let count = Csp::nqueens(k).count_solutions();
        println!("{k}-queens: {count} solutions");
    }
    assert_eq!(Csp::nqueens(8).count_solutions(), 92);

    // The same machinery accepts arbitrary binary constraints. A little
    // scheduling problem: three slots, x0 != x1, x1 != x2, and x2 must
    // not be exactly one later than x0.
    let mut csp = Csp::new(3, 3);
    csp.add_not_equal(0, 1);
    csp.add_not_equal(1, 2);
    csp.add_not_equal_offset(2, 0, 1); // x2 != x0 + 1
    println!();
    println!(
        "custom problem: {} of 27 assignments satisfy it; first = {:?}",
        csp.count_solutions(),
        csp.solve_first().expect("satisfiable")
    );
}
