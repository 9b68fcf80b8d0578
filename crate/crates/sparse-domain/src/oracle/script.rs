//! Operation scripts: the replay format for lockstep checking.
//!
//! A script fixes a universe bound and a sequence of domain operations.
//! Scripts drive [`run_script`](super::run_script), come from three sources
//! (hand-written text, exhaustive enumeration, seeded random generation),
//! and serialize to a line-oriented text format:
//!
//! ```text
//! universe 5
//! remove 2
//! bind 4
//! mark
//! pop
//! ```

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One domain operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    /// Remove a member value.
    Remove(usize),
    /// Restrict the domain to a singleton.
    Bind(usize),
    /// Open a trail frame (choice point).
    MarkFrame,
    /// Pop the innermost trail frame, restoring the domain.
    PopFrame,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Remove(v) => write!(f, "remove {v}"),
            Op::Bind(v) => write!(f, "bind {v}"),
            Op::MarkFrame => f.write_str("mark"),
            Op::PopFrame => f.write_str("pop"),
        }
    }
}

/// Error raised when building, parsing, or replaying a script.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    /// The first line of a script must be `universe <n>`.
    #[error("script must start with a `universe <n>` line")]
    MissingUniverse,
    /// The universe bound must be at least 1.
    #[error("script universe must be at least 1")]
    EmptyUniverse,
    /// A line did not parse as an operation.
    #[error("line {line}: cannot parse `{content}`")]
    Malformed { line: usize, content: String },
    /// An operation references a value outside the script's universe.
    #[error("value {value} outside script universe [0, {universe})")]
    ValueOutOfUniverse { value: usize, universe: usize },
    /// During replay, an operation's guard did not hold: removing or
    /// binding a non-member, or popping with no open frame.
    #[error("step {step}: guard violated for `{op}`")]
    GuardViolated { step: usize, op: Op },
}

/// A serialized sequence of domain operations over a fixed universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpScript {
    n: usize,
    ops: Vec<Op>,
}

impl OpScript {
    /// Builds a script, validating that the universe is non-empty and that
    /// every referenced value lies inside it.
    pub fn new(n: usize, ops: Vec<Op>) -> Result<Self, ScriptError> {
        if n == 0 {
            return Err(ScriptError::EmptyUniverse);
        }
        for op in &ops {
            if let Op::Remove(v) | Op::Bind(v) = *op {
                if v >= n {
                    return Err(ScriptError::ValueOutOfUniverse {
                        value: v,
                        universe: n,
                    });
                }
            }
        }
        Ok(OpScript { n, ops })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Parses the text format. Blank lines are ignored; everything else
    /// must be a `universe` header or one operation per line.
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let mut n: Option<usize> = None;
        let mut ops = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let malformed = || ScriptError::Malformed {
                line: idx + 1,
                content: line.to_string(),
            };
            let mut tokens = line.split_whitespace();
            let head = tokens.next().expect("non-empty line has a token");
            let arg = tokens.next();
            if tokens.next().is_some() {
                return Err(malformed());
            }
            let parse_value = |arg: Option<&str>| -> Result<usize, ScriptError> {
                arg.and_then(|a| a.parse().ok()).ok_or_else(malformed)
            };
            if n.is_none() {
                if head != "universe" {
                    return Err(ScriptError::MissingUniverse);
                }
                n = Some(parse_value(arg)?);
                continue;
            }
            let op = match (head, arg) {
                ("remove", a) => Op::Remove(parse_value(a)?),
                ("bind", a) => Op::Bind(parse_value(a)?),
                ("mark", None) => Op::MarkFrame,
                ("pop", None) => Op::PopFrame,
                _ => return Err(malformed()),
            };
            ops.push(op);
        }
        let n = n.ok_or(ScriptError::MissingUniverse)?;
        OpScript::new(n, ops)
    }
}

impl FromStr for OpScript {
    type Err = ScriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OpScript::parse(s)
    }
}

impl fmt::Display for OpScript {
    /// Renders the text format; inverse of [`OpScript::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {}", self.n)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Exhaustively enumerates every guard-respecting, non-empty script over
/// universe `n` with length at most `max_len`, shortest first.
///
/// Guard-respecting means each `remove`/`bind` targets a current member of
/// the abstract domain at that point and each `pop` has an open frame to
/// close. Panics if `n` is 0 or exceeds 64 (exhaustive checking is a
/// small-universe tool).
pub fn enumerate_scripts(n: usize, max_len: usize) -> ScriptEnumerator {
    assert!(n >= 1, "universe must be non-empty");
    assert!(n <= 64, "exhaustive enumeration supports universes up to 64");
    let root = EnumNode {
        ops: Vec::new(),
        members: full_mask(n),
        stack: Vec::new(),
    };
    ScriptEnumerator {
        n,
        max_len,
        depth: 0,
        level: vec![root],
        // Skip the root itself: the empty script checks nothing.
        cursor: 1,
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone)]
struct EnumNode {
    ops: Vec<Op>,
    /// Bitmask of current abstract members.
    members: u64,
    /// Abstract member snapshots for each open frame.
    stack: Vec<u64>,
}

/// Iterator produced by [`enumerate_scripts`]. Works breadth-first so
/// scripts come out in length order: the first failing script reported by a
/// caller scanning in order is length-minimal.
pub struct ScriptEnumerator {
    n: usize,
    max_len: usize,
    depth: usize,
    level: Vec<EnumNode>,
    cursor: usize,
}

impl ScriptEnumerator {
    fn expand_level(&mut self) {
        let mut next = Vec::new();
        for node in &self.level {
            let mut child = |op: Op, members: u64, stack: Vec<u64>| {
                let mut ops = node.ops.clone();
                ops.push(op);
                next.push(EnumNode {
                    ops,
                    members,
                    stack,
                });
            };
            for v in 0..self.n {
                if node.members & (1 << v) != 0 {
                    child(Op::Remove(v), node.members & !(1 << v), node.stack.clone());
                    child(Op::Bind(v), 1 << v, node.stack.clone());
                }
            }
            {
                let mut stack = node.stack.clone();
                stack.push(node.members);
                child(Op::MarkFrame, node.members, stack);
            }
            if let Some((&restored, rest)) = node.stack.split_last() {
                child(Op::PopFrame, restored, rest.to_vec());
            }
        }
        self.level = next;
        self.cursor = 0;
        self.depth += 1;
    }
}

impl Iterator for ScriptEnumerator {
    type Item = OpScript;

    fn next(&mut self) -> Option<OpScript> {
        loop {
            if let Some(node) = self.level.get(self.cursor) {
                self.cursor += 1;
                return Some(OpScript {
                    n: self.n,
                    ops: node.ops.clone(),
                });
            }
            if self.depth >= self.max_len || self.level.is_empty() {
                return None;
            }
            self.expand_level();
        }
    }
}

/// Maximum frame-nesting depth produced by [`random_script`].
pub const MAX_RANDOM_FRAME_DEPTH: usize = 8;

/// Generates a guard-respecting script of exactly `len` operations over
/// universe `n`, deterministically from `seed`.
///
/// The generator tracks the abstract member set itself, so the scripts it
/// produces are legal by construction regardless of the library code they
/// later exercise. Frame nesting is capped at
/// [`MAX_RANDOM_FRAME_DEPTH`]. Panics if `n` is 0.
pub fn random_script(seed: u64, n: usize, len: usize) -> OpScript {
    assert!(n >= 1, "universe must be non-empty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<usize> = (0..n).collect();
    let mut snaps: Vec<Vec<usize>> = Vec::new();
    let mut ops = Vec::with_capacity(len);

    // (kind, weight); weights favour removal runs with regular mark/pop
    // churn so restores happen often.
    const REMOVE: usize = 0;
    const BIND: usize = 1;
    const MARK: usize = 2;
    const POP: usize = 3;
    const WEIGHTS: [(usize, u32); 4] = [(REMOVE, 50), (BIND, 6), (MARK, 22), (POP, 22)];

    while ops.len() < len {
        let mut total = 0;
        let mut legal = [(0usize, 0u32); 4];
        let mut count = 0;
        for &(kind, weight) in &WEIGHTS {
            // Two coupled rules keep long scripts doing real work instead
            // of degenerating into frame churn over an empty domain:
            // marks never capture an empty member set, so every pop
            // restores at least one member; and the last member is only
            // removed when a pop can bring members back.
            let ok = match kind {
                REMOVE => members.len() > 1 || (members.len() == 1 && !snaps.is_empty()),
                BIND => !members.is_empty(),
                MARK => !members.is_empty() && snaps.len() < MAX_RANDOM_FRAME_DEPTH,
                POP => !snaps.is_empty(),
                _ => unreachable!(),
            };
            if ok {
                legal[count] = (kind, weight);
                count += 1;
                total += weight;
            }
        }
        let mut pick = rng.gen_range(0..total);
        let kind = legal[..count]
            .iter()
            .find(|&&(_, w)| {
                if pick < w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .expect("weights cover the draw")
            .0;
        match kind {
            REMOVE => {
                let idx = rng.gen_range(0..members.len());
                let v = members.swap_remove(idx);
                ops.push(Op::Remove(v));
            }
            BIND => {
                let idx = rng.gen_range(0..members.len());
                let v = members[idx];
                members.clear();
                members.push(v);
                ops.push(Op::Bind(v));
            }
            MARK => {
                snaps.push(members.clone());
                ops.push(Op::MarkFrame);
            }
            POP => {
                members = snaps.pop().expect("pop only legal with open frame");
                ops.push(Op::PopFrame);
            }
            _ => unreachable!(),
        }
    }
    OpScript { n, ops }
}
