//! The lockstep oracle: replaying a script against the abstract model.
//!
//! The model is a plain ordered set — remove is set difference, bind is
//! singleton restriction, backtracking is an explicit snapshot. After
//! every operation the runner checks the concrete structure, the gluing
//! relation (prefix-as-set equals model), strict size decrease and the
//! frozen suffix on remove, and restore soundness on pop.

use sparse_domain::oracle::{gluing_check, run_script, AbstractDomain, OpScript, ScriptError, Verdict};
use sparse_domain::SparseSet;

fn main() {
    // Scripts have a line-oriented text form, so failures are trivially
    // reproducible from a file or a shell heredoc.
    let text = "\
universe 6
mark
remove 2
remove 5
mark
bind 1
pop
remove 0
pop
remove 3
";
    let script: OpScript = text.parse().unwrap();
    println!("script ({} ops over universe {}):", script.len(), script.universe());
    print!("{script}");

    match run_script(&script).unwrap() {
        Verdict::Ok => println!("verdict: ok — every check passed after every step"),
        Verdict::Violation(v) => {
            println!("verdict: violation\n{v}");
            std::process::exit(1);
        }
    }

    // Guard violations are the script's fault, not the library's; the
    // runner reports them as errors, distinct from violations.
    let bad: OpScript = "universe 2\nremove 0\nremove 0\n".parse().unwrap();
    match run_script(&bad) {
        Err(ScriptError::GuardViolated { step, op }) => {
            println!("illegal script rejected at step {step}: `{op}` has no guard")
        }
        other => unreachable!("expected a guard error, got {other:?}"),
    }

    // The pieces are usable on their own: drive a concrete set and the
    // model side by side and ask whether the gluing relation holds.
    let mut concrete = SparseSet::new_full(4).unwrap();
    let mut model = AbstractDomain::full(4).unwrap();
    concrete.remove(1).unwrap();
    model = model.remove(1).unwrap();
    assert!(gluing_check(&concrete, &model));
    println!(
        "manual lockstep: members {:?} glue to model {:?}",
        concrete.members(),
        model.to_sorted_vec()
    );

    // Let the sides diverge and the relation notices immediately.
    concrete.remove(3).unwrap();
    assert!(!gluing_check(&concrete, &model));
    println!("after an unmirrored remove, gluing_check = false");
}
