//! Admissible sets over {0,1,2}^m: verifiers, builders and products.
//!
//! Admissible sets steer the extended product of cap sets: the pattern
//! vector picks which factor of an extendable collection supplies each
//! coordinate block. Two conditions define admissibility:
//!
//! * pair condition — for distinct s, s' there is a coordinate where s is
//!   zero and s' is not, and a coordinate where s' is zero and s is not;
//! * triple condition — for any three distinct elements some coordinate
//!   shows the value multiset {0,1,2}, {0,0,1} or {0,0,2}.
//!
//! The recursive variant strengthens the pair condition (a {0,1} and a
//! {0,2} coordinate, or a common zero) and is what allows an extension
//! step to be iterated.
//!
//! Verifiers return explicit verdicts with counterexamples rather than
//! booleans, and the counterexample returned is always the first one in
//! lexicographic element order, so failures are stable and reportable.

use crate::error::{Error, Result};
use crate::set::VectorSet;
use crate::vector::TernaryVector;

/// Role a [`PatternSet`] has been certified for.
///
/// A role is only ever attached by the corresponding `certify_*`
/// constructor after the matching verifier has passed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Admissible,
    RecursivelyAdmissible,
    /// Complete constant-weight admissible set: C(m,w) vectors of weight
    /// w, one per support.
    ConstantWeight {
        m: usize,
        w: usize,
    },
    /// Component of a certified meta triple.
    MetaComponent,
}

/// A set of pattern vectors over {0,1,2}^m, optionally carrying a
/// certified role.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternSet {
    elems: VectorSet,
    role: Option<Role>,
}

impl PatternSet {
    /// Wraps a vector set without attaching any role.
    pub fn new(elems: VectorSet) -> Self {
        PatternSet { elems, role: None }
    }

    /// Length m of the pattern vectors.
    pub fn m(&self) -> usize {
        self.elems.dim()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// True when the set has no elements.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The underlying vector set.
    pub fn set(&self) -> &VectorSet {
        &self.elems
    }

    /// Consumes the wrapper and returns the underlying set.
    pub fn into_set(self) -> VectorSet {
        self.elems
    }

    /// Elements in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &TernaryVector> {
        self.elems.iter()
    }

    /// Elements collected in lexicographic order.
    pub fn to_vec(&self) -> Vec<TernaryVector> {
        self.elems.to_vec()
    }

    /// The certified role, if any.
    pub fn declared_role(&self) -> Option<Role> {
        self.role
    }

    /// Runs [`is_admissible`] and attaches [`Role::Admissible`] on pass.
    pub fn certify_admissible(mut self) -> Result<Self> {
        match is_admissible(&self) {
            AdmissibleVerdict::Pass => {
                self.role = Some(Role::Admissible);
                Ok(self)
            }
            v => Err(Error::NotAdmissible(v.describe())),
        }
    }

    /// Runs [`is_recursively_admissible`] and attaches the role on pass.
    pub fn certify_recursively_admissible(mut self) -> Result<Self> {
        match is_recursively_admissible(&self) {
            RecAdmissibleVerdict::Pass => {
                self.role = Some(Role::RecursivelyAdmissible);
                Ok(self)
            }
            v => Err(Error::NotRecursivelyAdmissible(v.describe())),
        }
    }

    /// Runs [`is_constant_weight`] and attaches the role on pass.
    pub fn certify_constant_weight(mut self, m: usize, w: usize) -> Result<Self> {
        match is_constant_weight(&self, m, w) {
            ConstWeightVerdict::Pass => {
                self.role = Some(Role::ConstantWeight { m, w });
                Ok(self)
            }
            v => Err(Error::NotAdmissible(v.describe())),
        }
    }

    pub(crate) fn with_role(elems: VectorSet, role: Role) -> Self {
        PatternSet {
            elems,
            role: Some(role),
        }
    }
}

/// Per-vector coordinate masks, one bit per coordinate, used to make the
/// O(|S|^3) triple loop cheap. Coordinate k (1-based) maps to bit k-1 of
/// word (k-1)/64.
#[derive(Clone, Debug)]
pub(crate) struct Masks {
    pub zeros: Vec<u64>,
    pub ones: Vec<u64>,
    pub twos: Vec<u64>,
}

impl Masks {
    pub fn of(v: &TernaryVector) -> Self {
        let words = v.len().div_ceil(64);
        let mut zeros = vec![0u64; words];
        let mut ones = vec![0u64; words];
        let mut twos = vec![0u64; words];
        for (i, d) in v.digits().iter().enumerate() {
            let bit = 1u64 << (i % 64);
            match d {
                0 => zeros[i / 64] |= bit,
                1 => ones[i / 64] |= bit,
                _ => twos[i / 64] |= bit,
            }
        }
        Masks { zeros, ones, twos }
    }
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn intersects3(a: &[u64], b: &[u64], c: &[u64]) -> bool {
    a.iter().zip(b).zip(c).any(|((x, y), z)| x & y & z != 0)
}

/// True when s and s' satisfy the admissibility pair condition: a
/// coordinate with s zero and s' nonzero, and one the other way round.
pub(crate) fn pair_condition(a: &Masks, b: &Masks) -> bool {
    let b_nz: Vec<u64> = b.ones.iter().zip(&b.twos).map(|(x, y)| x | y).collect();
    let a_nz: Vec<u64> = a.ones.iter().zip(&a.twos).map(|(x, y)| x | y).collect();
    intersects(&a.zeros, &b_nz) && intersects(&b.zeros, &a_nz)
}

/// True when some coordinate of (x, y, z) carries the value multiset
/// {0,1,2}, {0,0,1} or {0,0,2}.
pub(crate) fn triple_condition(x: &Masks, y: &Masks, z: &Masks) -> bool {
    // {0,0,1} and {0,0,2}: two zeros and one nonzero.
    intersects3(&x.zeros, &y.zeros, &z.ones)
        || intersects3(&x.zeros, &y.ones, &z.zeros)
        || intersects3(&x.ones, &y.zeros, &z.zeros)
        || intersects3(&x.zeros, &y.zeros, &z.twos)
        || intersects3(&x.zeros, &y.twos, &z.zeros)
        || intersects3(&x.twos, &y.zeros, &z.zeros)
        // {0,1,2}: all three values present.
        || intersects3(&x.zeros, &y.ones, &z.twos)
        || intersects3(&x.zeros, &y.twos, &z.ones)
        || intersects3(&x.ones, &y.zeros, &z.twos)
        || intersects3(&x.twos, &y.zeros, &z.ones)
        || intersects3(&x.ones, &y.twos, &z.zeros)
        || intersects3(&x.twos, &y.ones, &z.zeros)
}

/// True when s and s' satisfy the recursive pair clause: a {0,1}
/// coordinate and a {0,2} coordinate (clause i), or a common zero
/// (clause ii).
pub(crate) fn recursive_pair_condition(a: &Masks, b: &Masks) -> bool {
    let has_01 = intersects(&a.zeros, &b.ones) || intersects(&a.ones, &b.zeros);
    let has_02 = intersects(&a.zeros, &b.twos) || intersects(&a.twos, &b.zeros);
    (has_01 && has_02) || intersects(&a.zeros, &b.zeros)
}

/// Outcome of an admissibility check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AdmissibleVerdict {
    Pass,
    /// Distinct x, y violating the pair condition.
    PairCounterexample {
        x: TernaryVector,
        y: TernaryVector,
    },
    /// Distinct x, y, z with no coordinate showing an allowed multiset.
    TripleCounterexample {
        x: TernaryVector,
        y: TernaryVector,
        z: TernaryVector,
    },
}

impl AdmissibleVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, AdmissibleVerdict::Pass)
    }

    /// One-line human-readable description.
    pub fn describe(&self) -> String {
        match self {
            AdmissibleVerdict::Pass => "pass".into(),
            AdmissibleVerdict::PairCounterexample { x, y } => {
                format!("pair condition fails for {x}, {y}")
            }
            AdmissibleVerdict::TripleCounterexample { x, y, z } => {
                format!("triple condition fails for {x}, {y}, {z}")
            }
        }
    }
}

/// Checks admissibility. Sets of size at most 1 pass vacuously.
pub fn is_admissible(s: &PatternSet) -> AdmissibleVerdict {
    let elems = s.to_vec();
    let masks: Vec<Masks> = elems.iter().map(Masks::of).collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if !pair_condition(&masks[i], &masks[j]) {
                return AdmissibleVerdict::PairCounterexample {
                    x: elems[i].clone(),
                    y: elems[j].clone(),
                };
            }
        }
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            for k in j + 1..elems.len() {
                if !triple_condition(&masks[i], &masks[j], &masks[k]) {
                    return AdmissibleVerdict::TripleCounterexample {
                        x: elems[i].clone(),
                        y: elems[j].clone(),
                        z: elems[k].clone(),
                    };
                }
            }
        }
    }
    AdmissibleVerdict::Pass
}

/// Outcome of a recursive-admissibility check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecAdmissibleVerdict {
    Pass,
    /// Fewer than two elements.
    TooSmall {
        len: usize,
    },
    /// Plain admissibility already fails.
    NotAdmissible(AdmissibleVerdict),
    /// Distinct x, y with neither recursive pair clause satisfied.
    PairCounterexample {
        x: TernaryVector,
        y: TernaryVector,
    },
}

impl RecAdmissibleVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, RecAdmissibleVerdict::Pass)
    }

    pub fn describe(&self) -> String {
        match self {
            RecAdmissibleVerdict::Pass => "pass".into(),
            RecAdmissibleVerdict::TooSmall { len } => {
                format!("needs at least 2 elements, found {len}")
            }
            RecAdmissibleVerdict::NotAdmissible(v) => format!("not admissible: {}", v.describe()),
            RecAdmissibleVerdict::PairCounterexample { x, y } => {
                format!("recursive pair clause fails for {x}, {y}")
            }
        }
    }
}

/// Checks recursive admissibility: admissible, at least two elements, and
/// every distinct pair has a {0,1} and a {0,2} coordinate or a common
/// zero.
pub fn is_recursively_admissible(s: &PatternSet) -> RecAdmissibleVerdict {
    if s.len() < 2 {
        return RecAdmissibleVerdict::TooSmall { len: s.len() };
    }
    match is_admissible(s) {
        AdmissibleVerdict::Pass => {}
        v => return RecAdmissibleVerdict::NotAdmissible(v),
    }
    let elems = s.to_vec();
    let masks: Vec<Masks> = elems.iter().map(Masks::of).collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if !recursive_pair_condition(&masks[i], &masks[j]) {
                return RecAdmissibleVerdict::PairCounterexample {
                    x: elems[i].clone(),
                    y: elems[j].clone(),
                };
            }
        }
    }
    RecAdmissibleVerdict::Pass
}

/// Outcome of a complete constant-weight check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstWeightVerdict {
    Pass,
    NotAdmissible(AdmissibleVerdict),
    /// |S| differs from C(m,w).
    WrongCount {
        expected: usize,
        found: usize,
    },
    /// Some element has the wrong length.
    WrongLength {
        x: TernaryVector,
        expected: usize,
    },
    /// Some element has the wrong weight.
    WrongWeight {
        x: TernaryVector,
        expected: usize,
    },
    /// Two elements share a support.
    DuplicateSupport {
        x: TernaryVector,
        y: TernaryVector,
    },
}

impl ConstWeightVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ConstWeightVerdict::Pass)
    }

    pub fn describe(&self) -> String {
        match self {
            ConstWeightVerdict::Pass => "pass".into(),
            ConstWeightVerdict::NotAdmissible(v) => format!("not admissible: {}", v.describe()),
            ConstWeightVerdict::WrongCount { expected, found } => {
                format!("expected C(m,w) = {expected} elements, found {found}")
            }
            ConstWeightVerdict::WrongLength { x, expected } => {
                format!("element {x} does not have length {expected}")
            }
            ConstWeightVerdict::WrongWeight { x, expected } => {
                format!("element {x} does not have weight {expected}")
            }
            ConstWeightVerdict::DuplicateSupport { x, y } => {
                format!("elements {x} and {y} share a support")
            }
        }
    }
}

/// Checks that `s` is a complete constant-weight admissible set I(m,w):
/// admissible, C(m,w) elements of weight w, pairwise distinct supports
/// (hence every w-subset of coordinates occurs exactly once).
pub fn is_constant_weight(s: &PatternSet, m: usize, w: usize) -> ConstWeightVerdict {
    let expected = binomial_usize(m, w);
    if s.m() != m {
        if let Some(x) = s.iter().next() {
            return ConstWeightVerdict::WrongLength {
                x: x.clone(),
                expected: m,
            };
        }
    }
    if s.len() != expected {
        return ConstWeightVerdict::WrongCount {
            expected,
            found: s.len(),
        };
    }
    let elems = s.to_vec();
    for x in &elems {
        if x.weight() != w {
            return ConstWeightVerdict::WrongWeight {
                x: x.clone(),
                expected: w,
            };
        }
    }
    let mut supports: Vec<(Vec<usize>, &TernaryVector)> =
        elems.iter().map(|x| (x.support(), x)).collect();
    supports.sort();
    for pair in supports.windows(2) {
        if pair[0].0 == pair[1].0 {
            return ConstWeightVerdict::DuplicateSupport {
                x: pair[0].1.clone(),
                y: pair[1].1.clone(),
            };
        }
    }
    match is_admissible(s) {
        AdmissibleVerdict::Pass => ConstWeightVerdict::Pass,
        v => ConstWeightVerdict::NotAdmissible(v),
    }
}

/// C(m,w) narrowed to usize; instance sizes in this crate stay far below
/// usize range (the largest generated instance has C(11,7) * 7 cells).
pub(crate) fn binomial_usize(m: usize, w: usize) -> usize {
    if w > m {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..w.min(m - w) {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Builds the chain set: m vectors of length m, where vector k has 0 at
/// coordinate k, 1 at every earlier coordinate and 2 at every later one.
/// It is recursively admissible and complete of weight m-1.
pub fn build_chain(m: usize) -> Result<PatternSet> {
    if m < 2 {
        return Err(Error::Domain(format!("chain needs m >= 2, got {m}")));
    }
    let mut set = VectorSet::new(m);
    for k in 0..m {
        let digits: Vec<u8> = (0..m)
            .map(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 2,
            })
            .collect();
        set.insert(TernaryVector::new(digits)?)?;
    }
    let ps = PatternSet::new(set).certify_recursively_admissible()?;
    match is_constant_weight(&ps, m, m - 1) {
        ConstWeightVerdict::Pass => Ok(PatternSet::with_role(
            ps.into_set(),
            Role::ConstantWeight { m, w: m - 1 },
        )),
        v => Err(Error::NotAdmissible(v.describe())),
    }
}

/// All w-subsets of {1..m} in lexicographic order.
pub(crate) fn supports_lex(m: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial_usize(m, w));
    let mut cur: Vec<usize> = (1..=w).collect();
    if w == 0 {
        out.push(Vec::new());
        return out;
    }
    if w > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        // Advance to the next combination in lexicographic order.
        let mut i = w;
        while i > 0 && cur[i - 1] == m - (w - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..w {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn vector_on_support(m: usize, support: &[usize], signs: &[u8]) -> TernaryVector {
    let mut digits = vec![0u8; m];
    for (pos, &coord) in support.iter().enumerate() {
        digits[coord - 1] = signs[pos];
    }
    TernaryVector::new(digits).expect("digits in range")
}

/// Searches for a complete constant-weight admissible set of weight 2 or
/// 3 by deterministic backtracking: supports in lexicographic order, sign
/// patterns per support in lexicographic digit order (1 before 2), with
/// incremental triple-condition pruning.
///
/// Distinct equal-weight supports satisfy the pair condition
/// automatically, so only the triple condition constrains the search.
pub fn build_low_weight(m: usize, w: usize) -> Result<PatternSet> {
    if !(w == 2 || w == 3) {
        return Err(Error::Domain(format!(
            "low-weight builder supports w in {{2, 3}}, got {w}"
        )));
    }
    if m <= w {
        return Err(Error::Domain(format!(
            "low-weight builder needs m > w, got m={m}, w={w}"
        )));
    }
    let supports = supports_lex(m, w);
    let patterns: Vec<Vec<u8>> = sign_patterns(w);
    let mut chosen: Vec<TernaryVector> = Vec::with_capacity(supports.len());
    let mut chosen_masks: Vec<Masks> = Vec::with_capacity(supports.len());
    let mut nodes: u64 = 0;
    const NODE_BUDGET: u64 = 50_000_000;

    fn rec(
        supports: &[Vec<usize>],
        patterns: &[Vec<u8>],
        m: usize,
        chosen: &mut Vec<TernaryVector>,
        chosen_masks: &mut Vec<Masks>,
        nodes: &mut u64,
    ) -> Result<bool> {
        let idx = chosen.len();
        if idx == supports.len() {
            return Ok(true);
        }
        for signs in patterns {
            *nodes += 1;
            if *nodes > NODE_BUDGET {
                return Err(Error::SearchExhausted(format!(
                    "low-weight backtracking exceeded {NODE_BUDGET} nodes"
                )));
            }
            let cand = vector_on_support(m, &supports[idx], signs);
            let cm = Masks::of(&cand);
            let ok = (0..idx).all(|i| {
                (i + 1..idx).all(|j| triple_condition(&chosen_masks[i], &chosen_masks[j], &cm))
            });
            if !ok {
                continue;
            }
            chosen.push(cand);
            chosen_masks.push(cm);
            if rec(supports, patterns, m, chosen, chosen_masks, nodes)? {
                return Ok(true);
            }
            chosen.pop();
            chosen_masks.pop();
        }
        Ok(false)
    }

    let found = rec(
        &supports,
        &patterns,
        m,
        &mut chosen,
        &mut chosen_masks,
        &mut nodes,
    )?;
    if !found {
        return Err(Error::SearchExhausted(format!(
            "no complete weight-{w} admissible set of length {m} found by exhaustive backtracking"
        )));
    }
    let set = VectorSet::from_vectors(m, chosen)?;
    let ps = PatternSet::new(set);
    match is_constant_weight(&ps, m, w) {
        ConstWeightVerdict::Pass => Ok(PatternSet::with_role(
            ps.into_set(),
            Role::ConstantWeight { m, w },
        )),
        v => Err(Error::NotAdmissible(format!(
            "backtracking produced an invalid set: {}",
            v.describe()
        ))),
    }
}

/// The 2^w sign patterns over a support, in lexicographic digit order
/// with 1 before 2.
pub(crate) fn sign_patterns(w: usize) -> Vec<Vec<u8>> {
    (0..1u32 << w)
        .map(|mask| {
            (0..w)
                .map(|i| if mask >> (w - 1 - i) & 1 == 1 { 2 } else { 1 })
                .collect()
        })
        .collect()
}

/// Direct product of admissible sets: all concatenations, length
/// m_s + m_t, size |s| * |t|. The product of admissible sets is again
/// admissible; inputs that fail the verifier are rejected.
pub fn product_admissible(s: &PatternSet, t: &PatternSet) -> Result<PatternSet> {
    for side in [s, t] {
        if let v @ (AdmissibleVerdict::PairCounterexample { .. }
        | AdmissibleVerdict::TripleCounterexample { .. }) = is_admissible(side)
        {
            return Err(Error::NotAdmissible(v.describe()));
        }
    }
    let mut out = VectorSet::new(s.m() + t.m());
    for x in s.iter() {
        for y in t.iter() {
            out.insert(x.concat(y))?;
        }
    }
    Ok(PatternSet::with_role(out, Role::Admissible))
}

/// Swaps digits 1 and 2 in every element. All admissibility verdicts are
/// invariant under this relabeling.
pub fn swap_colors(s: &PatternSet) -> PatternSet {
    let mut out = VectorSet::new(s.m());
    for x in s.iter() {
        out.insert(x.swap_colors()).expect("same dim");
    }
    PatternSet {
        elems: out,
        role: s.role,
    }
}
