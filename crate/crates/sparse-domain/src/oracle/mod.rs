//! Lockstep checking of the sparse-set representation against a trivially
//! correct model.
//!
//! The model ([`AbstractDomain`]) is an ordered set with no clever
//! structure: remove is set difference, bind is singleton restriction,
//! backtracking is an explicit snapshot. [`run_script`] replays an
//! [`OpScript`] against both the model and a real [`SparseSet`] (with a
//! [`Trail`] for mark/pop), and after every step checks:
//!
//! - the structural invariants of the concrete representation
//!   ([`SparseSet::check_invariants`]);
//! - the *gluing* relation: the concrete member prefix, read as a set,
//!   equals the model;
//! - after a remove: the size strictly decreased and the array slots at or
//!   beyond the pre-operation size did not change;
//! - after a pop: the restored member set equals the set at the matching
//!   mark.
//!
//! Scripts come from [`enumerate_scripts`] (exhaustive, small universes) or
//! [`random_script`] (seeded, large universes), and [`run_script_with_bug`]
//! re-runs the same harness over deliberately broken operations to confirm
//! the checks actually bite.

mod mutation;
mod script;

pub use mutation::SeededBug;
pub use script::{
    enumerate_scripts, random_script, Op, OpScript, ScriptEnumerator, ScriptError,
    MAX_RANDOM_FRAME_DEPTH,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::sparse_set::{DomainError, InvariantLabel, SparseSet};
use crate::trail::{FrameToken, Trail};

/// The specification-level view of a domain: a plain set of values drawn
/// from `[0, universe)`. Operations are functional so callers can keep
/// snapshots without extra machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDomain {
    n: usize,
    values: BTreeSet<usize>,
}

impl AbstractDomain {
    /// The full domain `{0, …, n-1}`.
    pub fn full(n: usize) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::EmptyUniverse);
        }
        Ok(AbstractDomain {
            n,
            values: (0..n).collect(),
        })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, value: usize) -> bool {
        self.values.contains(&value)
    }

    /// Set difference with `{value}`; `value` must be a member.
    pub fn remove(&self, value: usize) -> Result<Self, DomainError> {
        self.guard(value)?;
        let mut next = self.clone();
        next.values.remove(&value);
        Ok(next)
    }

    /// Restriction to `{value}`; `value` must be a member.
    pub fn bind(&self, value: usize) -> Result<Self, DomainError> {
        self.guard(value)?;
        Ok(AbstractDomain {
            n: self.n,
            values: [value].into_iter().collect(),
        })
    }

    /// Members in ascending order.
    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().copied()
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.values().collect()
    }

    fn guard(&self, value: usize) -> Result<(), DomainError> {
        if value >= self.n {
            return Err(DomainError::OutOfUniverse {
                value,
                universe: self.n,
            });
        }
        if !self.values.contains(&value) {
            return Err(DomainError::NotAMember { value });
        }
        Ok(())
    }
}

/// The gluing relation between representation and model: the concrete
/// member prefix, read as a set, is exactly the abstract domain.
///
/// Reads the prefix defensively (a corrupted prefix may contain
/// duplicates), so this holds iff the two describe the same set *and* the
/// concrete size is honest.
pub fn gluing_check(set: &SparseSet, domain: &AbstractDomain) -> bool {
    if set.universe() != domain.universe() {
        return false;
    }
    let concrete: BTreeSet<usize> = set.members().iter().copied().collect();
    set.len() == concrete.len() && concrete == domain.values
}

/// A copy of the concrete representation at the moment a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteSnapshot {
    pub dom: Vec<usize>,
    pub map: Vec<usize>,
    pub size: usize,
}

impl ConcreteSnapshot {
    fn capture(set: &SparseSet) -> Self {
        ConcreteSnapshot {
            dom: set.dom().to_vec(),
            map: set.map().to_vec(),
            size: set.len(),
        }
    }
}

/// A failed check, with enough context to reproduce and diagnose it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Zero-based index of the offending operation in the script.
    pub step: usize,
    /// The operation that exposed the problem.
    pub op: Op,
    /// Which check failed.
    pub label: InvariantLabel,
    /// Human-readable specifics.
    pub detail: String,
    /// Concrete state just after the operation.
    pub concrete: ConcreteSnapshot,
    /// Abstract members just after the operation, ascending.
    pub abstract_values: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "step {} (`{}`): {} violated", self.step, self.op, self.label)?;
        writeln!(f, "  detail: {}", self.detail)?;
        writeln!(
            f,
            "  concrete: size={} dom={:?} map={:?}",
            self.concrete.size, self.concrete.dom, self.concrete.map
        )?;
        write!(f, "  abstract: {:?}", self.abstract_values)
    }
}

/// Outcome of replaying a script: either every check passed after every
/// step, or the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(Box<Violation>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(v) => Some(v),
        }
    }
}

/// Replays `script` against the real representation and the model in
/// lockstep, checking after every step.
///
/// `Err` means the script itself is ill-formed for replay (an operation's
/// guard did not hold in the model); `Ok(Verdict::Violation)` means the
/// script is fine and the representation misbehaved.
pub fn run_script(script: &OpScript) -> Result<Verdict, ScriptError> {
    run_lockstep(script, None)
}

/// Like [`run_script`], but routes `remove`/`bind` through a deliberately
/// broken implementation. Used to demonstrate that the checks catch the
/// classic ways of getting this data structure wrong.
pub fn run_script_with_bug(script: &OpScript, bug: SeededBug) -> Result<Verdict, ScriptError> {
    run_lockstep(script, Some(bug))
}

fn violation(
    step: usize,
    op: Op,
    label: InvariantLabel,
    detail: String,
    set: &SparseSet,
    model: &AbstractDomain,
) -> Result<Verdict, ScriptError> {
    Ok(Verdict::Violation(Box::new(Violation {
        step,
        op,
        label,
        detail,
        concrete: ConcreteSnapshot::capture(set),
        abstract_values: model.to_sorted_vec(),
    })))
}

fn run_lockstep(script: &OpScript, bug: Option<SeededBug>) -> Result<Verdict, ScriptError> {
    let n = script.universe();
    let mut concrete = SparseSet::new_full(n).expect("script universes are non-empty");
    let mut model = AbstractDomain::full(n).expect("script universes are non-empty");
    let mut trail = Trail::new();
    let mut frames: Vec<(FrameToken, AbstractDomain)> = Vec::new();

    for (step, &op) in script.ops().iter().enumerate() {
        match op {
            Op::Remove(value) => {
                if !model.contains(value) {
                    return Err(ScriptError::GuardViolated { step, op });
                }
                let pre_size = concrete.len();
                let pre_suffix = concrete.dom()[pre_size..].to_vec();
                if trail.depth() > 0 {
                    trail.record(0, &concrete).expect("a frame is open");
                }
                let result = match bug {
                    None => concrete.remove(value),
                    Some(bug) => mutation::faulty_remove(&mut concrete, value, bug),
                };
                model = model.remove(value).expect("guard checked above");
                if let Err(e) = result {
                    return violation(
                        step,
                        op,
                        InvariantLabel::Gluing,
                        format!("concrete remove rejected a legal operation: {e}"),
                        &concrete,
                        &model,
                    );
                }
                if let Some(first) = concrete.check_invariants().violations().first() {
                    return violation(step, op, first.label, first.detail.clone(), &concrete, &model);
                }
                if concrete.len() >= pre_size {
                    return violation(
                        step,
                        op,
                        InvariantLabel::SizeDecrease,
                        format!("size was {pre_size} before, {} after", concrete.len()),
                        &concrete,
                        &model,
                    );
                }
                if concrete.dom()[pre_size..] != pre_suffix[..] {
                    return violation(
                        step,
                        op,
                        InvariantLabel::SuffixFrame,
                        format!("array slots at or beyond the pre-operation size {pre_size} changed"),
                        &concrete,
                        &model,
                    );
                }
                if !gluing_check(&concrete, &model) {
                    return violation(
                        step,
                        op,
                        InvariantLabel::Gluing,
                        "concrete member set diverged from the abstract domain".to_string(),
                        &concrete,
                        &model,
                    );
                }
            }
            Op::Bind(value) => {
                if !model.contains(value) {
                    return Err(ScriptError::GuardViolated { step, op });
                }
                if trail.depth() > 0 {
                    trail.record(0, &concrete).expect("a frame is open");
                }
                let result = match bug {
                    None => concrete.bind(value),
                    Some(bug) => mutation::faulty_bind(&mut concrete, value, bug),
                };
                model = model.bind(value).expect("guard checked above");
                if let Err(e) = result {
                    return violation(
                        step,
                        op,
                        InvariantLabel::Gluing,
                        format!("concrete bind rejected a legal operation: {e}"),
                        &concrete,
                        &model,
                    );
                }
                if let Some(first) = concrete.check_invariants().violations().first() {
                    return violation(step, op, first.label, first.detail.clone(), &concrete, &model);
                }
                if !gluing_check(&concrete, &model) {
                    return violation(
                        step,
                        op,
                        InvariantLabel::Gluing,
                        "concrete member set diverged from the abstract domain".to_string(),
                        &concrete,
                        &model,
                    );
                }
            }
            Op::MarkFrame => {
                let token = trail.push_frame();
                frames.push((token, model.clone()));
            }
            Op::PopFrame => {
                let Some((token, snapshot)) = frames.pop() else {
                    return Err(ScriptError::GuardViolated { step, op });
                };
                trail
                    .pop_frame(token, std::slice::from_mut(&mut concrete))
                    .expect("frames pop in LIFO order");
                model = snapshot;
                if let Some(first) = concrete.check_invariants().violations().first() {
                    return violation(step, op, first.label, first.detail.clone(), &concrete, &model);
                }
                if !gluing_check(&concrete, &model) {
                    return violation(
                        step,
                        op,
                        InvariantLabel::RestoreSoundness,
                        "restored member set differs from the set at the matching mark"
                            .to_string(),
                        &concrete,
                        &model,
                    );
                }
            }
        }
    }
    Ok(Verdict::Ok)
}
