//! CNF generation for complete constant-weight admissible sets.
//!
//! "Does I(m,w) exist?" becomes a SAT instance: fix the C(m,w) supports;
//! each nonzero cell needs only one boolean (true = digit 2, false =
//! digit 1) since nonzero digits take two values. Pair variables record
//! per-coordinate equality between two supports, and the triple
//! condition becomes one clause per support triple that is not already
//! exempt. Solvers stay out of process: this module emits DIMACS,
//! parses solver output, and decodes models back into verified sets.
//! An independent backtracking oracle cross-checks satisfiability on
//! small instances.
//!
//! Encoding layout (fixed, so emitted instances are byte-reproducible):
//!
//! * supports in lexicographic order, indexed from 0;
//! * cell variable ids first: support i, position p (within the sorted
//!   support) gets id i·w + p + 1;
//! * then pair variable ids, ordered by (i, j, shared coordinate k) with
//!   i < j, each defined by four clauses making it biconditional with
//!   "the two cells at k are equal";
//! * per-support-triple clauses: a triple with some coordinate in
//!   exactly one support is exempt (that column is {0,0,nonzero});
//!   otherwise one clause disjoins the negated pair variables over the
//!   coordinates lying in exactly two of the three supports, asking some
//!   column to be {0,1,2};
//! * finally the optional symmetry-breaking profile clauses, interpreted
//!   positionally per support vector: "the first two nonzero entries"
//!   are the cells at the two smallest support coordinates, and rules
//!   conditioned on a coordinate range fire only when the relevant
//!   support position's coordinate falls in that range.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::patterns::{
    binomial_usize, is_constant_weight, sign_patterns, supports_lex, ConstWeightVerdict, Masks,
    PatternSet, Role,
};
use crate::set::VectorSet;
use crate::vector::TernaryVector;

/// Largest number of supports an instance may have; beyond this the
/// encoding itself (quadratically many pair variables) is impractical.
const MAX_SUPPORTS: usize = 100_000;

/// Symmetry-breaking constraint profiles. Each is tied to the instance
/// family it was tuned for; compatibility only requires that the support
/// positions a profile references exist (first two, last three, etc.),
/// so profiles can also be exercised on smaller instances.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ConstraintProfile {
    #[default]
    None,
    /// Tuned for I(11,7): first two nonzero entries differ; at least one
    /// 1 and one 2 among the 4th-6th nonzero entries; third nonzero
    /// entry is 1 and fourth is 2 whenever the entry's coordinate is at
    /// most 7.
    I11x7,
    /// Tuned for I(11,6): first two nonzero entries differ; at least one
    /// 1 and one 2 among the last three nonzero entries; third nonzero
    /// entry is 1 whenever its coordinate is at most 7.
    I11x6,
    /// Tuned for I(10,6): second nonzero entry is 1 and third is 2
    /// whenever the entry's coordinate is at most 6; the last two
    /// nonzero entries are not both 2.
    I10x6,
}

impl ConstraintProfile {
    /// Smallest weight for which every referenced support position
    /// exists.
    fn min_weight(self) -> usize {
        match self {
            ConstraintProfile::None => 1,
            ConstraintProfile::I11x7 => 6,
            ConstraintProfile::I11x6 => 3,
            ConstraintProfile::I10x6 => 3,
        }
    }

    fn check_compatible(self, m: usize, w: usize) -> Result<()> {
        if w < self.min_weight() {
            return Err(Error::ProfileIncompatible {
                profile: self.to_string(),
                m,
                w,
                why: format!(
                    "profile references support positions up to {}, but w = {w}",
                    self.min_weight()
                ),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ConstraintProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConstraintProfile::None => "none",
            ConstraintProfile::I11x7 => "i11_7",
            ConstraintProfile::I11x6 => "i11_6",
            ConstraintProfile::I10x6 => "i10_6",
        };
        write!(f, "{name}")
    }
}

impl FromStr for ConstraintProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ConstraintProfile::None),
            "i11_7" => Ok(ConstraintProfile::I11x7),
            "i11_6" => Ok(ConstraintProfile::I11x6),
            "i10_6" => Ok(ConstraintProfile::I10x6),
            other => Err(Error::Domain(format!(
                "unknown profile `{other}` (expected none, i11_7, i11_6 or i10_6)"
            ))),
        }
    }
}

/// Variable layout of one instance.
#[derive(Clone, Debug)]
pub struct VarMap {
    m: usize,
    w: usize,
    profile: ConstraintProfile,
    supports: Vec<Vec<usize>>,
    /// (support i, support j, coordinate k) -> pair variable id, i < j.
    pair_index: BTreeMap<(usize, usize, usize), usize>,
    num_cell_vars: usize,
    num_vars: usize,
}

impl VarMap {
    fn build(m: usize, w: usize, profile: ConstraintProfile) -> VarMap {
        let supports = supports_lex(m, w);
        let num_cell_vars = supports.len() * w;
        let mut pair_index = BTreeMap::new();
        let mut next = num_cell_vars + 1;
        for i in 0..supports.len() {
            for j in i + 1..supports.len() {
                for &k in &supports[i] {
                    if supports[j].contains(&k) {
                        pair_index.insert((i, j, k), next);
                        next += 1;
                    }
                }
            }
        }
        VarMap {
            m,
            w,
            profile,
            supports,
            pair_index,
            num_cell_vars,
            num_vars: next - 1,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn profile(&self) -> ConstraintProfile {
        self.profile
    }

    /// Supports in lexicographic order, 1-based coordinates ascending.
    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_cell_vars(&self) -> usize {
        self.num_cell_vars
    }

    /// Cell variable for support `i` at 0-based support position `pos`.
    pub fn cell_var_at(&self, i: usize, pos: usize) -> usize {
        debug_assert!(pos < self.w);
        i * self.w + pos + 1
    }

    /// Cell variable for support `i` at coordinate `k`, if k is in the
    /// support.
    pub fn cell_var(&self, i: usize, k: usize) -> Option<usize> {
        let pos = self.supports[i].iter().position(|&c| c == k)?;
        Some(self.cell_var_at(i, pos))
    }

    /// Pair variable for supports i < j at shared coordinate k.
    pub fn pair_var(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        self.pair_index.get(&(i, j, k)).copied()
    }
}

/// A CNF formula with positive variable count and well-formed clauses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// Appends a clause, enforcing the structural invariants: nonempty,
    /// literals in range, no literal together with its negation.
    pub fn push(&mut self, clause: Vec<i32>) {
        assert!(!clause.is_empty(), "empty clause");
        for &lit in &clause {
            assert!(lit != 0 && lit.unsigned_abs() as usize <= self.num_vars);
            assert!(!clause.contains(&-lit), "contradictory clause");
        }
        self.clauses.push(clause);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }
}

/// Encodes the instance "a complete constant-weight admissible set of
/// length m and weight w exists" with the given symmetry-breaking
/// profile. Returns the formula and its variable layout.
pub fn encode(m: usize, w: usize, profile: ConstraintProfile) -> Result<(CnfFormula, VarMap)> {
    if w < 1 || w > m {
        return Err(Error::Domain(format!(
            "encode needs 1 <= w <= m, got m={m}, w={w}"
        )));
    }
    if m > 64 || binomial_usize(m, w) > MAX_SUPPORTS {
        return Err(Error::Domain(format!(
            "instance ({m},{w}) is too large to encode"
        )));
    }
    profile.check_compatible(m, w)?;
    let map = VarMap::build(m, w, profile);
    let mut f = CnfFormula::new(map.num_vars);

    // (a) Pair-variable definitions: p <-> (a <-> b), four clauses each.
    // BTreeMap iteration order is (i, j, k) ascending.
    for (&(i, j, k), &p) in &map.pair_index {
        let a = map.cell_var(i, k).expect("k in support i") as i32;
        let b = map.cell_var(j, k).expect("k in support j") as i32;
        let p = p as i32;
        f.push(vec![-p, -a, b]);
        f.push(vec![-p, a, -b]);
        f.push(vec![p, a, b]);
        f.push(vec![p, -a, -b]);
    }

    // (b) Triple clauses over support masks.
    let masks: Vec<u64> = map
        .supports
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &c| acc | 1 << (c - 1)))
        .collect();
    let n = masks.len();
    for i in 0..n {
        for j in i + 1..n {
            let ab = masks[i] & masks[j];
            for k in j + 1..n {
                let all = ab & masks[k];
                let exactly_one = (masks[i] ^ masks[j] ^ masks[k]) & !all;
                if exactly_one != 0 {
                    // Some column is {0,0,nonzero}; the triple condition
                    // holds regardless of the digits.
                    continue;
                }
                let in_two = (ab | (masks[i] & masks[k]) | (masks[j] & masks[k])) & !all;
                if in_two == 0 {
                    return Err(Error::EncoderBug(format!(
                        "supports {:?}, {:?}, {:?} admit no useful column: \
                         the instance would be trivially unsatisfiable",
                        map.supports[i], map.supports[j], map.supports[k]
                    )));
                }
                let mut clause = Vec::with_capacity(in_two.count_ones() as usize);
                let mut bits = in_two;
                while bits != 0 {
                    let coord = bits.trailing_zeros() as usize + 1;
                    bits &= bits - 1;
                    let cbit = 1u64 << (coord - 1);
                    let pv = if masks[i] & cbit != 0 && masks[j] & cbit != 0 {
                        map.pair_var(i, j, coord)
                    } else if masks[i] & cbit != 0 {
                        map.pair_var(i, k, coord)
                    } else {
                        map.pair_var(j, k, coord)
                    }
                    .expect("coordinate shared by exactly these two supports");
                    clause.push(-(pv as i32));
                }
                f.push(clause);
            }
        }
    }

    // (c) Profile clauses, per support in order.
    for (i, support) in map.supports.iter().enumerate() {
        let cell = |pos: usize| map.cell_var_at(i, pos) as i32;
        match profile {
            ConstraintProfile::None => {}
            ConstraintProfile::I11x7 => {
                // (i) first two nonzero entries differ.
                f.push(vec![cell(0), cell(1)]);
                f.push(vec![-cell(0), -cell(1)]);
                // (ii) a 1 and a 2 among the 4th-6th nonzero entries.
                f.push(vec![cell(3), cell(4), cell(5)]);
                f.push(vec![-cell(3), -cell(4), -cell(5)]);
                // (iii) third nonzero entry is 1 when its coordinate is
                // at most 7.
                if support[2] <= 7 {
                    f.push(vec![-cell(2)]);
                }
                // (iv) fourth nonzero entry is 2 when its coordinate is
                // at most 7.
                if support[3] <= 7 {
                    f.push(vec![cell(3)]);
                }
            }
            ConstraintProfile::I11x6 => {
                let w = map.w;
                f.push(vec![cell(0), cell(1)]);
                f.push(vec![-cell(0), -cell(1)]);
                // (ii) a 1 and a 2 among the last three nonzero entries.
                f.push(vec![cell(w - 3), cell(w - 2), cell(w - 1)]);
                f.push(vec![-cell(w - 3), -cell(w - 2), -cell(w - 1)]);
                if support[2] <= 7 {
                    f.push(vec![-cell(2)]);
                }
            }
            ConstraintProfile::I10x6 => {
                let w = map.w;
                // (i) second nonzero entry is 1 when its coordinate is
                // at most 6.
                if support[1] <= 6 {
                    f.push(vec![-cell(1)]);
                }
                // (ii) third nonzero entry is 2 when its coordinate is
                // at most 6.
                if support[2] <= 6 {
                    f.push(vec![cell(2)]);
                }
                // (iii) the vector does not end in two 2s.
                f.push(vec![-cell(w - 2), -cell(w - 1)]);
            }
        }
    }

    Ok((f, map))
}

/// Serialises the formula in DIMACS CNF, byte-identical across runs:
/// comment lines recording the tool version and instance, the standard
/// header, then one clause per line terminated by 0.
pub fn emit_dimacs(f: &CnfFormula, map: &VarMap) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "c capsets satgen v{}\n",
        env!("CARGO_PKG_VERSION")
    ));
    out.push_str(&format!(
        "c instance m={} w={} profile={}\n",
        map.m, map.w, map.profile
    ));
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.num_clauses()));
    for clause in f.clauses() {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}

/// A parsed solver response.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolverResponse {
    /// `s SATISFIABLE` with the model literals (or a bare literal list).
    Satisfiable(Vec<i32>),
    /// `s UNSATISFIABLE`.
    Unsatisfiable,
}

/// Parses SAT-competition solver output: an `s` status line with the
/// model on `v` lines of signed integers terminated by 0. A bare
/// whitespace-separated integer list (comment lines ignored) is accepted
/// as a fallback model format.
pub fn parse_solver_output(text: &str) -> Result<SolverResponse> {
    let mut status: Option<&str> = None;
    let mut model: Vec<i32> = Vec::new();
    let mut saw_model_lines = false;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim());
        } else if let Some(rest) = line.strip_prefix("v ") {
            saw_model_lines = true;
            for tok in rest.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("bad literal `{tok}` in solver output"),
                })?;
                if lit != 0 {
                    model.push(lit);
                }
            }
        }
    }
    match status {
        Some("SATISFIABLE") => {
            if !saw_model_lines {
                return Err(Error::Parse {
                    line: 0,
                    msg: "satisfiable but no model (`v`) lines".into(),
                });
            }
            Ok(SolverResponse::Satisfiable(model))
        }
        Some("UNSATISFIABLE") => Ok(SolverResponse::Unsatisfiable),
        Some(other) => Err(Error::Parse {
            line: 0,
            msg: format!("unrecognised solver status `{other}`"),
        }),
        None => {
            // Fallback: a bare integer list.
            let mut lits = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('c') {
                    continue;
                }
                for tok in line.split_whitespace() {
                    let lit: i32 = tok.parse().map_err(|_| Error::Parse {
                        line: 0,
                        msg: format!(
                            "solver output is neither status lines nor a literal list \
                                      (offending token `{tok}`)"
                        ),
                    })?;
                    if lit != 0 {
                        lits.push(lit);
                    }
                }
            }
            if lits.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    msg: "empty solver output".into(),
                });
            }
            Ok(SolverResponse::Satisfiable(lits))
        }
    }
}

/// Decodes a model into the pattern set it denotes: for support i, digit
/// 2 at coordinate k when the cell variable is true, digit 1 when false,
/// digit 0 off-support. The result is verified as a complete
/// constant-weight admissible set before being returned; a verification
/// failure is an encoder bug, never a silently wrong set.
///
/// Pair variables in the model are ignored (their values are determined
/// by the cells); every cell variable must be assigned.
pub fn decode_model(model: &[i32], map: &VarMap) -> Result<PatternSet> {
    let mut assignment: Vec<Option<bool>> = vec![None; map.num_vars + 1];
    for &lit in model {
        let var = lit.unsigned_abs() as usize;
        if var == 0 || var > map.num_vars {
            continue;
        }
        assignment[var] = Some(lit > 0);
    }
    let mut set = VectorSet::new(map.m);
    for (i, support) in map.supports.iter().enumerate() {
        let mut digits = vec![0u8; map.m];
        for (pos, &coord) in support.iter().enumerate() {
            let var = map.cell_var_at(i, pos);
            let value = assignment[var].ok_or(Error::IncompleteAssignment { var })?;
            digits[coord - 1] = if value { 2 } else { 1 };
        }
        set.insert(TernaryVector::new(digits)?)?;
    }
    let ps = PatternSet::new(set);
    match is_constant_weight(&ps, map.m, map.w) {
        ConstWeightVerdict::Pass => Ok(PatternSet::with_role(
            ps.into_set(),
            Role::ConstantWeight { m: map.m, w: map.w },
        )),
        v => Err(Error::EncoderBug(format!(
            "decoded model fails verification: {}",
            v.describe()
        ))),
    }
}

/// Evaluates the formula under a total assignment (index v-1 holds the
/// value of variable v).
pub fn evaluate(f: &CnfFormula, assignment: &[bool]) -> Result<bool> {
    if assignment.len() != f.num_vars() {
        return Err(Error::Domain(format!(
            "assignment covers {} variables, formula has {}",
            assignment.len(),
            f.num_vars()
        )));
    }
    Ok(f.clauses().iter().all(|clause| {
        clause.iter().any(|&lit| {
            let v = assignment[lit.unsigned_abs() as usize - 1];
            if lit > 0 {
                v
            } else {
                !v
            }
        })
    }))
}

/// The total assignment induced by a known certificate: cell variables
/// from the digits, pair variables from per-coordinate equality. The
/// set must consist of exactly the map's supports with weight w each.
pub fn induced_assignment(s: &PatternSet, map: &VarMap) -> Result<Vec<bool>> {
    let mut by_support: BTreeMap<Vec<usize>, &TernaryVector> = BTreeMap::new();
    for v in s.iter() {
        by_support.insert(v.support(), v);
    }
    let mut assignment = vec![false; map.num_vars];
    for (i, support) in map.supports.iter().enumerate() {
        let v = by_support.get(support).ok_or_else(|| {
            Error::Domain(format!("certificate has no vector on support {support:?}"))
        })?;
        for (pos, &coord) in support.iter().enumerate() {
            assignment[map.cell_var_at(i, pos) - 1] = v.digit(coord) == 2;
        }
    }
    for (&(i, j, k), &p) in &map.pair_index {
        let a = assignment[map.cell_var(i, k).expect("shared") - 1];
        let b = assignment[map.cell_var(j, k).expect("shared") - 1];
        assignment[p - 1] = a == b;
    }
    Ok(assignment)
}

/// Verdict of the independent brute-force oracle.
#[derive(Clone, Debug)]
pub enum OracleOutcome {
    /// A verified I(m,w).
    Found(PatternSet),
    /// The full search tree was exhausted: no I(m,w) exists.
    Nonexistent,
    /// The node budget ran out before the tree was exhausted.
    Inconclusive,
}

/// Independent existence check by deterministic backtracking over sign
/// assignments, support by support, pruning on the first violated
/// triple. Pruning preserves completeness (a violated triple can never
/// be repaired by later choices), so a fully explored tree proves
/// nonexistence.
///
/// Instances with at most 30 cells are searched without any budget;
/// larger ones carry a node budget whose exhaustion is reported as
/// inconclusive, distinct from proven nonexistence.
pub fn brute_force_admissible(m: usize, w: usize) -> Result<OracleOutcome> {
    if w < 1 || w > m {
        return Err(Error::Domain(format!(
            "oracle needs 1 <= w <= m, got m={m}, w={w}"
        )));
    }
    let supports = supports_lex(m, w);
    let cells = supports.len() * w;
    let budget: Option<u64> = if cells <= 30 { None } else { Some(20_000_000) };
    let patterns = sign_patterns(w);

    struct Search<'a> {
        m: usize,
        supports: &'a [Vec<usize>],
        patterns: &'a [Vec<u8>],
        chosen: Vec<TernaryVector>,
        masks: Vec<Masks>,
        nodes: u64,
        budget: Option<u64>,
    }

    enum SearchResult {
        Found,
        Exhausted,
        BudgetHit,
    }

    impl Search<'_> {
        fn run(&mut self) -> SearchResult {
            let idx = self.chosen.len();
            if idx == self.supports.len() {
                return SearchResult::Found;
            }
            for signs in self.patterns {
                self.nodes += 1;
                if let Some(cap) = self.budget {
                    if self.nodes > cap {
                        return SearchResult::BudgetHit;
                    }
                }
                let mut digits = vec![0u8; self.m];
                for (pos, &coord) in self.supports[idx].iter().enumerate() {
                    digits[coord - 1] = signs[pos];
                }
                let cand = TernaryVector::new(digits).expect("digits in range");
                let cm = Masks::of(&cand);
                let ok = (0..idx).all(|i| {
                    (i + 1..idx).all(|j| {
                        crate::patterns::triple_condition(&self.masks[i], &self.masks[j], &cm)
                    })
                });
                if !ok {
                    continue;
                }
                self.chosen.push(cand);
                self.masks.push(cm);
                match self.run() {
                    SearchResult::Found => return SearchResult::Found,
                    SearchResult::BudgetHit => return SearchResult::BudgetHit,
                    SearchResult::Exhausted => {
                        self.chosen.pop();
                        self.masks.pop();
                    }
                }
            }
            SearchResult::Exhausted
        }
    }

    let mut search = Search {
        m,
        supports: &supports,
        patterns: &patterns,
        chosen: Vec::with_capacity(supports.len()),
        masks: Vec::with_capacity(supports.len()),
        nodes: 0,
        budget,
    };
    match search.run() {
        SearchResult::Found => {
            let set = VectorSet::from_vectors(m, search.chosen)?;
            let ps = PatternSet::new(set);
            match is_constant_weight(&ps, m, w) {
                ConstWeightVerdict::Pass => Ok(OracleOutcome::Found(PatternSet::with_role(
                    ps.into_set(),
                    Role::ConstantWeight { m, w },
                ))),
                v => Err(Error::EncoderBug(format!(
                    "oracle produced an invalid set: {}",
                    v.describe()
                ))),
            }
        }
        SearchResult::Exhausted => Ok(OracleOutcome::Nonexistent),
        SearchResult::BudgetHit => Ok(OracleOutcome::Inconclusive),
    }
}
