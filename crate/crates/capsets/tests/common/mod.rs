//! Shared helpers for the acceptance suite: a small complete DPLL
//! solver used when no external SAT solver is installed, plus glue for
//! running whichever solver is available over the DIMACS pipeline.

use std::io::Write;
use std::process::{Command, Stdio};

use capsets::satgen::{emit_dimacs, CnfFormula, VarMap};

/// Complete DPLL with unit propagation. Returns a total satisfying
/// assignment (index v-1 holds variable v) or None when unsatisfiable.
/// Intended for the small acceptance instances only.
pub fn dpll(f: &CnfFormula) -> Option<Vec<bool>> {
    fn solve(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
        // Unit propagation to fixpoint; a falsified clause is a conflict.
        loop {
            let mut changed = false;
            for clause in clauses {
                let mut satisfied = false;
                let mut unassigned = None;
                let mut open = 0;
                for &lit in clause {
                    match assign[lit.unsigned_abs() as usize - 1] {
                        Some(v) => {
                            if v == (lit > 0) {
                                satisfied = true;
                                break;
                            }
                        }
                        None => {
                            open += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => {
                        let lit = unassigned.expect("one open literal");
                        assign[lit.unsigned_abs() as usize - 1] = Some(lit > 0);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        match assign.iter().position(Option::is_none) {
            None => true,
            Some(var) => {
                for val in [false, true] {
                    let mut trial = assign.clone();
                    trial[var] = Some(val);
                    if solve(clauses, &mut trial) {
                        *assign = trial;
                        return true;
                    }
                }
                false
            }
        }
    }

    let mut assign = vec![None; f.num_vars()];
    if solve(f.clauses(), &mut assign) {
        Some(assign.into_iter().map(|a| a.unwrap_or(false)).collect())
    } else {
        None
    }
}

/// Renders a total assignment as signed model literals 1..=n.
pub fn model_lits(assignment: &[bool]) -> Vec<i32> {
    assignment
        .iter()
        .enumerate()
        .map(|(i, &v)| if v { i as i32 + 1 } else { -(i as i32 + 1) })
        .collect()
}

/// Formats an assignment (or unsatisfiability) in SAT-competition
/// output style, to exercise the real solver-output parser.
pub fn solver_style_output(result: Option<&[bool]>) -> String {
    match result {
        None => "s UNSATISFIABLE\n".to_string(),
        Some(assignment) => {
            let mut out = String::from("s SATISFIABLE\nv");
            for lit in model_lits(assignment) {
                out.push_str(&format!(" {lit}"));
            }
            out.push_str(" 0\n");
            out
        }
    }
}

/// Looks for an installed external SAT solver that follows the standard
/// stdout conventions (`s` status line, `v` model lines).
pub fn find_external_solver() -> Option<String> {
    for name in [
        "cadical",
        "kissat",
        "picosat",
        "lingeling",
        "cryptominisat5",
    ] {
        let probe = Command::new(name)
            .arg("--version")
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .status();
        if matches!(probe, Ok(s) if s.success()) {
            return Some(name.to_string());
        }
    }
    None
}

/// Solves `f` end to end through the DIMACS text format: an external
/// solver when one is installed, the built-in DPLL otherwise. Returns
/// the solver-style output text and a label naming the solver used.
pub fn solve_via_dimacs(f: &CnfFormula, map: &VarMap) -> (String, String) {
    if let Some(solver) = find_external_solver() {
        let dir = tempfile::tempdir().expect("tempdir");
        let path = dir.path().join("instance.cnf");
        std::fs::write(&path, emit_dimacs(f, map)).expect("write cnf");
        let out = Command::new(&solver)
            .arg(&path)
            .output()
            .expect("solver runs");
        // Exit codes 10/20 are the conventional SAT/UNSAT statuses.
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        if text.contains("s SATISFIABLE") || text.contains("s UNSATISFIABLE") {
            return (text, solver);
        }
        // Fall through when the solver produced something unexpected.
        let _ = std::io::stderr()
            .write_all(format!("unexpected output from {solver}; using DPLL\n").as_bytes());
    }
    let result = dpll(f);
    (
        solver_style_output(result.as_deref()),
        "built-in DPLL".to_string(),
    )
}
