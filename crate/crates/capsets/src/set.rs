//! Finite sets of equal-length ternary vectors, with file I/O.
//!
//! The on-disk format is one vector per line, exactly `n` characters from
//! {0, 1, 2}. Blank lines and lines starting with `#` are ignored; the
//! dimension is inferred from the first data line and enforced on the rest.
//! Admissible-set files may carry a header comment `# admissible m=<m> w=<w>`
//! which, when present, is validated against the parsed contents.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::vector::TernaryVector;

/// A duplicate-free set of [`TernaryVector`]s sharing one dimension.
///
/// Elements are kept in lexicographic order, so iteration, counterexample
/// selection and serialisation are deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorSet {
    dim: usize,
    elems: BTreeSet<TernaryVector>,
}

/// The optional `# admissible m=<m> w=<w>` header of an admissible-set file.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdmissibleHeader {
    pub m: usize,
    pub w: usize,
}

impl VectorSet {
    /// The empty set of the given dimension.
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            elems: BTreeSet::new(),
        }
    }

    /// Collects vectors into a set, rejecting any with the wrong dimension.
    /// Duplicates are merged (this is a set, not a multiset).
    pub fn from_vectors<I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = TernaryVector>,
    {
        let mut set = Self::new(dim);
        for v in vectors {
            set.insert(v)?;
        }
        Ok(set)
    }

    /// Parses every string as a vector of the given dimension.
    pub fn from_strs(dim: usize, strs: &[&str]) -> Result<Self> {
        Self::from_vectors(
            dim,
            strs.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?,
        )
    }

    /// Inserts one vector; `Ok(true)` if it was new.
    pub fn insert(&mut self, v: TernaryVector) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self.elems.insert(v))
    }

    /// Common length of all elements.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// True when the set has no elements.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, v: &TernaryVector) -> bool {
        self.elems.contains(v)
    }

    /// Elements in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &TernaryVector> {
        self.elems.iter()
    }

    /// Elements collected into a vector, lexicographically ordered.
    pub fn to_vec(&self) -> Vec<TernaryVector> {
        self.elems.iter().cloned().collect()
    }

    /// Set intersection (same dimension assumed by construction).
    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            elems: self.elems.intersection(&other.elems).cloned().collect(),
        }
    }

    /// Set union; errors if dimensions differ.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            elems: self.elems.union(&other.elems).cloned().collect(),
        })
    }

    /// True if the two sets share no element.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.elems.is_disjoint(&other.elems)
    }

    /// If every element has the same weight, returns it.
    pub fn uniform_weight(&self) -> Option<usize> {
        let mut it = self.iter();
        let w = it.next()?.weight();
        it.all(|v| v.weight() == w).then_some(w)
    }

    /// Parses the line-oriented file format from a string.
    ///
    /// Returns the set together with the admissible header if one was
    /// present. A present header is validated: `m` must equal the inferred
    /// dimension and every vector must have weight `w`.
    pub fn parse(text: &str) -> Result<(Self, Option<AdmissibleHeader>)> {
        let mut header = None;
        let mut set: Option<VectorSet> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if header.is_none() && set.is_none() {
                    header = parse_admissible_header(rest);
                }
                continue;
            }
            let v: TernaryVector = line.parse().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("{e}"),
            })?;
            match &mut set {
                None => {
                    let mut s = VectorSet::new(v.len());
                    s.insert(v)?;
                    set = Some(s);
                }
                Some(s) => {
                    s.insert(v).map_err(|e| Error::Parse {
                        line: idx + 1,
                        msg: format!("{e}"),
                    })?;
                }
            }
        }
        let set = set.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "no data lines in input".into(),
        })?;
        if let Some(h) = header {
            if h.m != set.dim() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!(
                        "header claims m={} but vectors have length {}",
                        h.m,
                        set.dim()
                    ),
                });
            }
            if let Some(v) = set.iter().find(|v| v.weight() != h.w) {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("header claims w={} but {v} has weight {}", h.w, v.weight()),
                });
            }
        }
        Ok((set, header))
    }

    /// Reads and parses a file in the line-oriented format.
    pub fn read_file(path: impl AsRef<Path>) -> Result<(Self, Option<AdmissibleHeader>)> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serialises the set, one vector per line in lexicographic order.
    ///
    /// When `admissible_header` is set and every element shares one weight,
    /// the `# admissible m=<m> w=<w>` header line is emitted first.
    pub fn to_file_string(&self, admissible_header: bool) -> String {
        let mut out = String::new();
        if admissible_header {
            if let Some(w) = self.uniform_weight() {
                out.push_str(&format!("# admissible m={} w={}\n", self.dim, w));
            }
        }
        for v in self.iter() {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Writes [`Self::to_file_string`] to a file.
    pub fn write_file(&self, path: impl AsRef<Path>, admissible_header: bool) -> Result<()> {
        std::fs::write(path, self.to_file_string(admissible_header))?;
        Ok(())
    }
}

impl fmt::Display for VectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

fn parse_admissible_header(comment: &str) -> Option<AdmissibleHeader> {
    let body = comment.trim();
    let rest = body.strip_prefix("admissible")?.trim();
    let mut m = None;
    let mut w = None;
    for part in rest.split_whitespace() {
        if let Some(val) = part.strip_prefix("m=") {
            m = val.parse().ok();
        } else if let Some(val) = part.strip_prefix("w=") {
            w = val.parse().ok();
        }
    }
    Some(AdmissibleHeader { m: m?, w: w? })
}
