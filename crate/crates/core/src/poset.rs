//! Finite posets over labeled elements, stored as a dense `≤` bit matrix.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Ordinal of an element inside its poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

/// Cover pairs `(lower, upper)`.
pub type CoverSet = BTreeSet<(ElementId, ElementId)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: BitMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub minimal: BTreeSet<ElementId>,
    pub maximal: BTreeSet<ElementId>,
    pub least: Option<ElementId>,
    pub greatest: Option<ElementId>,
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs`, each read as `u ≤ v`.
    pub fn from_relations<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_labels(&labels)?;
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_owned()))
        };
        let mut leq = BitMatrix::identity(labels.len());
        for (u, v) in pairs {
            leq.set(lookup(u.as_ref())?, lookup(v.as_ref())?);
        }
        leq.close_transitively();
        let n = labels.len();
        for i in 0..n {
            for j in leq.row_ones(i) {
                if j != i && leq.get(j, i) {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Poset { labels, index, leq })
    }

    /// Wraps a relation already known to be a partial order.
    pub(crate) fn from_matrix_unchecked(labels: Vec<String>, leq: BitMatrix) -> Result<Self> {
        debug_assert_eq!(labels.len(), leq.size());
        let index = index_labels(&labels)?;
        Ok(Poset { labels, index, leq })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels[e.0]
    }

    pub fn id_of(&self, label: &str) -> Option<ElementId> {
        self.index.get(label).copied().map(ElementId)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.len()).map(ElementId)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq.get(a.0, b.0)
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.leq
    }

    /// The cover pairs: `(a, b)` with `a < b` and nothing strictly between.
    pub fn transitive_reduction(&self) -> CoverSet {
        let n = self.len();
        let mut covers = CoverSet::new();
        let mut strict = self.leq.clone();
        for i in 0..n {
            strict.clear(i, i);
        }
        let words = n.div_ceil(64);
        let mut implied = vec![0u64; words];
        for a in 0..n {
            implied.iter_mut().for_each(|w| *w = 0);
            for x in strict.row_ones(a) {
                for (acc, w) in implied.iter_mut().zip(strict.row(x)) {
                    *acc |= w;
                }
            }
            for (k, w) in strict.row(a).iter().enumerate() {
                let mut bits = w & !implied[k];
                while bits != 0 {
                    let b = k * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    covers.insert((ElementId(a), ElementId(b)));
                }
            }
        }
        covers
    }

    pub fn extremes(&self) -> Extremes {
        let n = self.len();
        let mut minimal = BTreeSet::new();
        let mut maximal = BTreeSet::new();
        let mut least = None;
        let mut greatest = None;
        for a in 0..n {
            let below = (0..n).filter(|&b| self.leq.get(b, a)).count();
            let above = self.leq.row_count(a);
            if below == 1 {
                minimal.insert(ElementId(a));
            }
            if above == 1 {
                maximal.insert(ElementId(a));
            }
            if above == n {
                least = Some(ElementId(a));
            }
            if below == n {
                greatest = Some(ElementId(a));
            }
        }
        Extremes {
            minimal,
            maximal,
            least,
            greatest,
        }
    }

    /// Same elements under another label order; returns `None` when the label sets differ.
    pub fn relabel_as(&self, labels: &[String]) -> Option<Poset> {
        if labels.len() != self.len() {
            return None;
        }
        let map: Vec<usize> = labels
            .iter()
            .map(|l| self.index.get(l).copied())
            .collect::<Option<_>>()?;
        let mut leq = BitMatrix::new(labels.len());
        for (i, &oi) in map.iter().enumerate() {
            for (j, &oj) in map.iter().enumerate() {
                if self.leq.get(oi, oj) {
                    leq.set(i, j);
                }
            }
        }
        Poset::from_matrix_unchecked(labels.to_vec(), leq).ok()
    }

    /// Order-equality by label, independent of element numbering.
    pub fn same_order_as(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let Some(map) = self
            .labels
            .iter()
            .map(|l| other.index.get(l).copied())
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq.get(i, j) == other.leq.get(map[i], map[j])))
    }

    /// Renders the cover pairs in the edge-list format, with isolated elements as `node` lines.
    pub fn to_edge_list(&self) -> String {
        let covers = self.transitive_reduction();
        let mut out = String::new();
        let mut touched = vec![false; self.len()];
        for &(a, b) in &covers {
            touched[a.0] = true;
            touched[b.0] = true;
        }
        for (i, l) in self.labels.iter().enumerate() {
            if !touched[i] {
                let _ = writeln!(out, "node {l}");
            }
        }
        for (a, b) in covers {
            let _ = writeln!(out, "{} {}", self.label(a), self.label(b));
        }
        out
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<_> = self
            .transitive_reduction()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.label(a), self.label(b)))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// Parses the edge-list format: `u v` per line meaning `u ≤ v`, `node u` for
/// isolated elements, `#` to end of line is a comment. Labels are ordered by first appearance.
pub fn parse_edge_list(text: &str) -> Result<Poset> {
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<String, ()> = HashMap::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut note = |l: &str, labels: &mut Vec<String>| {
        if seen.insert(l.to_owned(), ()).is_none() {
            labels.push(l.to_owned());
        }
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["node", u] => note(u, &mut labels),
            [u, v] => {
                note(u, &mut labels);
                note(v, &mut labels);
                pairs.push(((*u).to_owned(), (*v).to_owned()));
            }
            _ => {
                return Err(Error::Format {
                    line: lineno + 1,
                    message: format!("expected `u v` or `node u`, found `{}`", line.trim()),
                })
            }
        }
    }
    Poset::from_relations(&labels, &pairs)
}
