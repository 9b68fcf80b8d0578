//! Measurement harness for the performance claims: constant-time
//! membership and removal, and restore cost independent of how much was
//! removed.
//!
//! Baselines are a hand-rolled bitset (also O(1), kept as a sanity
//! reference) and `std::collections::HashSet`; for restore, the baseline
//! is a full array snapshot copied back. Every stream is generated from a
//! seed, every representation is cross-checked to hold the same member set
//! before any timing starts, and each measurement is the median of five
//! runs after a warmup. All loops call the guardless hot-path entry points
//! so the comparison is like with like (the baselines validate nothing
//! either).
//!
//! Timings carry `Instant` overhead per timed section; it is identical
//! across rows, so the ratios the harness exists for are unaffected.

use std::collections::HashSet;
use std::hint::black_box;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sparse_set::SparseSet;
use crate::trail::Trail;

/// Header of the CSV emitted by [`BenchReport::to_csv`].
pub const CSV_HEADER: &str = "representation,op,n,ops,total_ns,ns_per_op";

/// One timed measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub representation: &'static str,
    pub op: &'static str,
    /// Universe size the structure was built over.
    pub n: usize,
    /// Number of operations the timing covers.
    pub ops: u64,
    /// Median wall time for the whole stream, in nanoseconds.
    pub total_ns: u128,
}

impl BenchRow {
    pub fn ns_per_op(&self) -> f64 {
        self.total_ns as f64 / self.ops as f64
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3}",
            self.representation,
            self.op,
            self.n,
            self.ops,
            self.total_ns,
            self.ns_per_op()
        )
    }
}

/// A batch of measurements, printable as CSV or an aligned table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchReport {
    rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn rows(&self) -> &[BenchRow] {
        &self.rows
    }

    pub fn merge(&mut self, other: BenchReport) {
        self.rows.extend(other.rows);
    }

    /// Finds the row for a (representation, op, n) triple; handy for ratio
    /// checks over merged reports.
    pub fn find(&self, representation: &str, op: &str, n: usize) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.representation == representation && r.op == op && r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<16} {:<10} {:>9} {:>10} {:>14} {:>12}\n",
            "representation", "op", "n", "ops", "total_ns", "ns_per_op"
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:<16} {:<10} {:>9} {:>10} {:>14} {:>12.3}\n",
                row.representation,
                row.op,
                row.n,
                row.ops,
                row.total_ns,
                row.ns_per_op()
            ));
        }
        out
    }
}

/// Runs `body` six times and reports the median of the last five.
fn median_of_five(mut body: impl FnMut() -> u128) -> u128 {
    body(); // warmup
    let mut samples: Vec<u128> = (0..5).map(|_| body()).collect();
    samples.sort_unstable();
    samples[2]
}

/// Fixed-width bitset over `[0, n)`; the classic alternative domain
/// representation, also O(1) per operation.
struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    fn full(n: usize) -> BitSet {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if n % 64 != 0 {
            *words.last_mut().expect("n >= 1") = (1u64 << (n % 64)) - 1;
        }
        BitSet { words, len: n }
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.words[v >> 6] >> (v & 63) & 1 != 0
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        let word = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        if *word & bit != 0 {
            *word &= !bit;
            self.len -= 1;
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.words.len() * 64)
            .filter(|&v| self.contains(v))
            .collect()
    }
}

/// Times `contains` and `remove` streams over the sparse set, the bitset,
/// and the hash set. The streams are deterministic in `seed`; `ops` sets
/// the query count, and removals run in whole passes over the universe so
/// their recorded op count is rounded up to a multiple of `n`.
pub fn bench_ops(n: usize, ops: u64, seed: u64) -> BenchReport {
    assert!(n >= 1, "universe must be non-empty");
    assert!(ops >= 1, "need at least one operation");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Shared state for `contains`: the first half of a random permutation
    // removed, so queries mix hits and misses.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let (gone, kept) = order.split_at(n / 2);

    let mut sparse = SparseSet::new_full(n).expect("n >= 1");
    let mut bits = BitSet::full(n);
    let mut hash: HashSet<usize> = (0..n).collect();
    for &v in gone {
        sparse.remove_unchecked(v);
        bits.remove(v);
        hash.remove(&v);
    }

    // Cross-check: all three representations hold the same member set.
    let mut expected = kept.to_vec();
    expected.sort_unstable();
    let mut sparse_members = sparse.members().to_vec();
    sparse_members.sort_unstable();
    assert_eq!(sparse_members, expected, "sparse members diverged");
    assert_eq!(bits.members(), expected, "bitset members diverged");
    let mut hash_members: Vec<usize> = hash.iter().copied().collect();
    hash_members.sort_unstable();
    assert_eq!(hash_members, expected, "hash-set members diverged");

    let queries: Vec<usize> = (0..ops).map(|_| rng.gen_range(0..n)).collect();

    // Cross-check the query stream too: identical hit counts everywhere.
    let hits: u64 = queries.iter().filter(|&&q| hash.contains(&q)).count() as u64;
    let sparse_hits: u64 = queries.iter().filter(|&&q| sparse.contains_unchecked(q)).count() as u64;
    let bits_hits: u64 = queries.iter().filter(|&&q| bits.contains(q)).count() as u64;
    assert_eq!((sparse_hits, bits_hits), (hits, hits), "hit counts diverged");

    let mut report = BenchReport::default();

    let time_contains = |count: &mut dyn FnMut() -> u64| {
        median_of_five(|| {
            let start = Instant::now();
            black_box(count());
            start.elapsed().as_nanos()
        })
    };
    report.rows.push(BenchRow {
        representation: "sparse",
        op: "contains",
        n,
        ops,
        total_ns: time_contains(&mut || {
            queries.iter().filter(|&&q| sparse.contains_unchecked(q)).count() as u64
        }),
    });
    report.rows.push(BenchRow {
        representation: "bitset",
        op: "contains",
        n,
        ops,
        total_ns: time_contains(&mut || {
            queries.iter().filter(|&&q| bits.contains(q)).count() as u64
        }),
    });
    report.rows.push(BenchRow {
        representation: "hashset",
        op: "contains",
        n,
        ops,
        total_ns: time_contains(&mut || {
            queries.iter().filter(|&&q| hash.contains(&q)).count() as u64
        }),
    });

    // `remove` drains a full universe per pass; resets are untimed.
    let passes = ops.div_ceil(n as u64);
    let remove_ops = passes * n as u64;
    let full_sparse = SparseSet::new_full(n).expect("n >= 1");
    let full_hash: HashSet<usize> = (0..n).collect();

    report.rows.push(BenchRow {
        representation: "sparse",
        op: "remove",
        n,
        ops: remove_ops,
        total_ns: median_of_five(|| {
            let mut total = 0u128;
            for _ in 0..passes {
                let mut s = full_sparse.clone();
                let start = Instant::now();
                for &v in &order {
                    s.remove_unchecked(v);
                }
                total += start.elapsed().as_nanos();
                black_box(s.len());
            }
            total
        }),
    });
    report.rows.push(BenchRow {
        representation: "bitset",
        op: "remove",
        n,
        ops: remove_ops,
        total_ns: median_of_five(|| {
            let mut total = 0u128;
            for _ in 0..passes {
                let mut b = BitSet::full(n);
                let start = Instant::now();
                for &v in &order {
                    b.remove(v);
                }
                total += start.elapsed().as_nanos();
                black_box(b.len);
            }
            total
        }),
    });
    report.rows.push(BenchRow {
        representation: "hashset",
        op: "remove",
        n,
        ops: remove_ops,
        total_ns: median_of_five(|| {
            let mut total = 0u128;
            for _ in 0..passes {
                let mut h = full_hash.clone();
                let start = Instant::now();
                for &v in &order {
                    h.remove(&v);
                }
                total += start.elapsed().as_nanos();
                black_box(h.len());
            }
            total
        }),
    });

    report
}

/// Times restoring a domain after `removed` removals: the trail's
/// size-write restore against a full-copy snapshot baseline.
///
/// Snapshot creation and the removals themselves are untimed; only the
/// restore is on the clock, which is exactly the asymmetry the sparse set
/// exists to exploit. Each timed restore is preceded by an untimed
/// quiesce scan plus warm passes over the same code path (nested
/// mark/pops for the trail, a first copy-back for the snapshot): without
/// them, a ~50 ns restore measured right after streaming megabytes of
/// removals reports the cache state the removals left behind — pending
/// writebacks and evicted lines — not the restore's own work.
pub fn bench_restore(n: usize, removed: usize, seed: u64) -> BenchReport {
    assert!(n >= 1, "universe must be non-empty");
    assert!(removed < n, "cannot remove the whole universe and restore it");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    order.truncate(removed);

    // The restore rows for one universe exist to be compared across
    // `removed` values, so every row gets the same number of timed pops:
    // scaling by n alone keeps big-universe setups interactive without
    // starving any one row of samples.
    let iterations = (20_000_000 / (n as u64 + 1)).clamp(60, 400);

    // A large removal stream leaves megabytes of dirty cache lines whose
    // writebacks bleed into whatever runs next, inflating small-`removed`
    // vs large-`removed` comparisons. Scanning a scratch buffer sized to
    // the dirtied footprint evicts them on untimed time; the warm cycles
    // afterwards re-heat the pop path, so every row times its pop against
    // the same quiet machine state.
    let scratch = vec![1u64; (2 * n).clamp(1 << 13, 1 << 18)];
    let quiesce = |scratch: &[u64]| {
        let mut acc = 0u64;
        for w in scratch {
            acc = acc.wrapping_add(*w);
        }
        black_box(acc);
    };

    let mut report = BenchReport::default();

    let mut set = SparseSet::new_full(n).expect("n >= 1");
    let mut trail = Trail::new();
    report.rows.push(BenchRow {
        representation: "sparse",
        op: "restore",
        n,
        ops: iterations,
        total_ns: median_of_five(|| {
            let mut total = 0u128;
            for _ in 0..iterations {
                let token = trail.push_frame();
                if !order.is_empty() {
                    trail.record(0, &set).expect("frame just opened");
                }
                for &v in &order {
                    set.remove_unchecked(v);
                }
                quiesce(&scratch);
                // Warm cycles: nested one-mark frames popped untimed walk
                // the exact path the timed pop is about to take.
                for _ in 0..4 {
                    let warm = trail.push_frame();
                    trail.record(0, &set).expect("frame just opened");
                    set.remove_unchecked(set.members()[0]);
                    trail
                        .pop_frame(warm, std::slice::from_mut(&mut set))
                        .expect("token is innermost");
                }
                let start = Instant::now();
                trail
                    .pop_frame(token, std::slice::from_mut(&mut set))
                    .expect("token is innermost");
                total += start.elapsed().as_nanos();
                black_box(set.len());
            }
            assert_eq!(set.len(), n, "restore must return the set to full");
            total
        }),
    });

    let mut set = SparseSet::new_full(n).expect("n >= 1");
    let snapshot = set.clone();
    report.rows.push(BenchRow {
        representation: "snapshot",
        op: "restore",
        n,
        ops: iterations,
        total_ns: median_of_five(|| {
            let mut total = 0u128;
            for _ in 0..iterations {
                for &v in &order {
                    set.remove_unchecked(v);
                }
                quiesce(&scratch);
                // In-place copy-back: the honest memcpy restore, with no
                // allocator traffic on the clock. The copy is idempotent,
                // so the first pass doubles as the warm pass and the
                // second is timed.
                for pass in 0..2 {
                    let (dom, map, size) = set.raw_parts_mut();
                    let start = Instant::now();
                    dom.copy_from_slice(snapshot.dom());
                    map.copy_from_slice(snapshot.map());
                    *size = snapshot.len();
                    if pass == 1 {
                        total += start.elapsed().as_nanos();
                    }
                    black_box(set.len());
                }
            }
            assert_eq!(set.len(), n, "restore must return the set to full");
            total
        }),
    });

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_report_has_six_labelled_rows() {
        let report = bench_ops(64, 500, 1);
        let labels: Vec<(&str, &str)> = report
            .rows()
            .iter()
            .map(|r| (r.representation, r.op))
            .collect();
        assert_eq!(
            labels,
            vec![
                ("sparse", "contains"),
                ("bitset", "contains"),
                ("hashset", "contains"),
                ("sparse", "remove"),
                ("bitset", "remove"),
                ("hashset", "remove"),
            ]
        );
        for row in report.rows() {
            assert_eq!(row.n, 64);
            assert!(row.ops >= 500);
        }
    }

    #[test]
    fn csv_has_the_documented_header_and_shape() {
        let report = bench_ops(32, 100, 7);
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("representation,op,n,ops,total_ns,ns_per_op"));
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 6, "line: {line}");
            let total: u128 = fields[4].parse().expect("total_ns is integral");
            let ops: f64 = fields[3].parse().expect("ops is integral");
            let ns_per_op: f64 = fields[5].parse().expect("ns_per_op is a float");
            let recomputed = total as f64 / ops;
            assert!((ns_per_op - recomputed).abs() <= 0.001 * recomputed.max(1.0));
        }
    }

    #[test]
    fn row_shape_is_deterministic_in_the_seed() {
        let strip = |r: &BenchReport| -> Vec<(&str, &str, usize, u64)> {
            r.rows()
                .iter()
                .map(|row| (row.representation, row.op, row.n, row.ops))
                .collect()
        };
        assert_eq!(strip(&bench_ops(128, 300, 9)), strip(&bench_ops(128, 300, 9)));
    }

    #[test]
    fn restore_report_compares_trail_and_snapshot() {
        let report = bench_restore(256, 100, 3);
        let labels: Vec<(&str, &str)> = report
            .rows()
            .iter()
            .map(|r| (r.representation, r.op))
            .collect();
        assert_eq!(labels, vec![("sparse", "restore"), ("snapshot", "restore")]);
    }

    #[test]
    fn restoring_nothing_is_cheaper_than_copying_everything() {
        // removed = 0: the trail restore is a frame discard, while the
        // snapshot baseline still copies two arrays. Margin is orders of
        // magnitude, so this is safe to assert even on a noisy machine.
        let report = bench_restore(4096, 0, 5);
        let sparse = report.find("sparse", "restore", 4096).unwrap();
        let snapshot = report.find("snapshot", "restore", 4096).unwrap();
        assert!(
            sparse.ns_per_op() <= snapshot.ns_per_op(),
            "trail restore {} ns/op vs snapshot {} ns/op",
            sparse.ns_per_op(),
            snapshot.ns_per_op()
        );
    }

    #[test]
    fn merge_and_find_work_across_reports() {
        let mut all = bench_restore(64, 10, 1);
        all.merge(bench_restore(128, 10, 1));
        assert!(all.find("sparse", "restore", 64).is_some());
        assert!(all.find("sparse", "restore", 128).is_some());
        assert!(all.find("sparse", "restore", 256).is_none());
    }

    #[test]
    fn table_is_aligned_and_complete() {
        let report = bench_restore(64, 10, 2);
        let table = report.to_table();
        assert!(table.starts_with("representation"));
        assert_eq!(table.lines().count(), 1 + report.rows().len());
    }
}
