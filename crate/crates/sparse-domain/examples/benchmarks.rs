//! The measurement harness: is membership/removal really flat across
//! universe sizes, and is restore really independent of how much was
//! removed?
//!
//! Numbers here come from a debug build and a shared machine — treat the
//! ratios as the signal, not the absolute nanoseconds. The reported table
//! can also be produced by `sparse-domain bench --csv out.csv`.

use sparse_domain::bench::{bench_ops, bench_restore};

fn main() {
    let seed = 7;

    // contains/remove across a 64× spread of universe sizes.
    let small_n = 1 << 10;
    let large_n = 1 << 16;
    let mut report = bench_ops(small_n, 50_000, seed);
    report.merge(bench_ops(large_n, 50_000, seed));

    // restore after wildly different amounts of work, plus the snapshot
    // baseline that has to copy the arrays back.
    let restore_n = 1 << 16;
    for removed in [10, 1_000, 10_000] {
        report.merge(bench_restore(restore_n, removed, seed));
    }

    print!("{}", report.to_table());
    println!();

    let ratio = |op: &str| {
        let s = report.find("sparse", op, small_n).unwrap().ns_per_op();
        let l = report.find("sparse", op, large_n).unwrap().ns_per_op();
        l / s
    };
    println!(
        "sparse contains: n = 2^10 -> 2^16 changes ns/op by {:.2}x",
        ratio("contains")
    );
    println!(
        "sparse remove:   n = 2^10 -> 2^16 changes ns/op by {:.2}x",
        ratio("remove")
    );

    let restores: Vec<f64> = report
        .rows()
        .iter()
        .filter(|r| r.representation == "sparse" && r.op == "restore")
        .map(|r| r.ns_per_op())
        .collect();
    let spread = restores.iter().cloned().fold(0.0f64, f64::max)
        / restores.iter().cloned().fold(f64::INFINITY, f64::min);
    println!(
        "sparse restore:  removed = 10 -> 10,000 changes ns/op by {spread:.2}x \
         (the snapshot rows above pay the full copy either way)"
    );
}
