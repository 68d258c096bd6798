//! The odd-cover data model: bicliques, tricliques, covers, verification,
//! and the word encoding.
//!
//! A cover is an ordered list of bicliques on subsets of `1..=n`. The word
//! encoding assigns each vertex a string over `{0,1,ε}` of length equal to
//! the cover size: coordinate `j` is `0` inside `X_j`, `1` inside `Y_j`, and
//! `ε` outside the biclique. Covers and codes convert losslessly in both
//! directions, and the incidence-matrix route gives a second, independent way
//! to check a cover against a graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::graph::Graph;

/// Default cap on reported mismatches in a verification report.
pub const DEFAULT_MISMATCH_CAP: usize = 100;

/// A complete bipartite graph given by its two disjoint partite sets of
/// 1-based vertices. Either side may be empty, in which case the biclique
/// contributes no edges.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Biclique {
    #[serde(rename = "X")]
    pub x: BTreeSet<usize>,
    #[serde(rename = "Y")]
    pub y: BTreeSet<usize>,
}

impl Biclique {
    pub fn new(
        x: impl IntoIterator<Item = usize>,
        y: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let b = Self {
            x: x.into_iter().collect(),
            y: y.into_iter().collect(),
        };
        if let Some(&v) = b.x.intersection(&b.y).next() {
            return Err(Error::InvalidCover(format!(
                "vertex {v} appears on both sides of a biclique"
            )));
        }
        Ok(b)
    }

    pub fn is_edgeless(&self) -> bool {
        self.x.is_empty() || self.y.is_empty()
    }

    /// Edges as ordered pairs `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.x
            .iter()
            .flat_map(|&u| self.y.iter().map(move |&v| (u.min(v), u.max(v))))
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        (self.x.contains(&u) && self.y.contains(&v)) || (self.x.contains(&v) && self.y.contains(&u))
    }
}

/// A complete tripartite graph on three pairwise disjoint vertex sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triclique {
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
    pub z: BTreeSet<usize>,
}

impl Triclique {
    pub fn new(
        x: impl IntoIterator<Item = usize>,
        y: impl IntoIterator<Item = usize>,
        z: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let t = Self {
            x: x.into_iter().collect(),
            y: y.into_iter().collect(),
            z: z.into_iter().collect(),
        };
        for (a, b) in [(&t.x, &t.y), (&t.x, &t.z), (&t.y, &t.z)] {
            if let Some(&v) = a.intersection(b).next() {
                return Err(Error::InvalidCover(format!(
                    "vertex {v} appears in two parts of a triclique"
                )));
            }
        }
        Ok(t)
    }

    /// Splits into `(X, Y ∪ Z)` and `(Y, Z)`, two edge-disjoint bicliques
    /// whose union (and hence symmetric difference) is the triclique.
    pub fn split(&self) -> (Biclique, Biclique) {
        let first = Biclique {
            x: self.x.clone(),
            y: self.y.union(&self.z).copied().collect(),
        };
        let second = Biclique {
            x: self.y.clone(),
            y: self.z.clone(),
        };
        (first, second)
    }
}

/// An ordered collection of bicliques over the ground set `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OddCover {
    pub n: usize,
    pub bicliques: Vec<Biclique>,
}

impl OddCover {
    pub fn new(n: usize, bicliques: Vec<Biclique>) -> Result<Self> {
        let cover = Self { n, bicliques };
        cover.validate()?;
        Ok(cover)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bicliques: Vec::new(),
        }
    }

    /// Number of bicliques.
    pub fn cardinality(&self) -> usize {
        self.bicliques.len()
    }

    /// Checks ground-set membership and per-biclique disjointness; used
    /// after deserializing untrusted input.
    pub fn validate(&self) -> Result<()> {
        for (i, b) in self.bicliques.iter().enumerate() {
            if let Some(&v) = b.x.intersection(&b.y).next() {
                return Err(Error::InvalidCover(format!(
                    "vertex {v} on both sides of biclique {i}"
                )));
            }
            for &v in b.x.iter().chain(&b.y) {
                if v == 0 || v > self.n {
                    return Err(Error::InvalidCover(format!(
                        "vertex {v} of biclique {i} outside 1..={}",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// The GF(2) sum of the bicliques' adjacency matrices.
    pub fn xor_adjacency(&self) -> Gf2Matrix {
        let mut rows: Vec<Gf2Vector> = (0..self.n).map(|_| Gf2Vector::zeros(self.n)).collect();
        for b in &self.bicliques {
            let xm = Gf2Vector::from_support(self.n, b.x.iter().map(|&v| v - 1));
            let ym = Gf2Vector::from_support(self.n, b.y.iter().map(|&v| v - 1));
            for &u in &b.x {
                rows[u - 1].xor_assign(&ym);
            }
            for &u in &b.y {
                rows[u - 1].xor_assign(&xm);
            }
        }
        Gf2Matrix::from_rows(rows)
    }

    /// Compares the GF(2) sum of the bicliques against `A(g)`, reporting up
    /// to `DEFAULT_MISMATCH_CAP` mismatched pairs.
    pub fn verify(&self, g: &Graph) -> Result<VerifyReport> {
        self.verify_with_cap(g, DEFAULT_MISMATCH_CAP)
    }

    pub fn verify_with_cap(&self, g: &Graph, cap: usize) -> Result<VerifyReport> {
        if self.n != g.n() {
            return Err(Error::GroundSetMismatch {
                cover: self.n,
                graph: g.n(),
            });
        }
        let sum = self.xor_adjacency();
        let mut mismatches = Vec::new();
        let mut truncated = false;
        'scan: for u in 0..self.n {
            let defect = sum.row(u).xor(g.adjacency().row(u));
            for v in defect.ones() {
                if v <= u {
                    continue;
                }
                if mismatches.len() == cap {
                    truncated = true;
                    break 'scan;
                }
                let times_covered = self
                    .bicliques
                    .iter()
                    .filter(|b| b.contains_edge(u + 1, v + 1))
                    .count();
                mismatches.push(Mismatch {
                    u: u + 1,
                    v: v + 1,
                    times_covered,
                });
            }
        }
        Ok(VerifyReport {
            ok: mismatches.is_empty() && !truncated,
            mismatches,
            truncated,
            cardinality: self.cardinality(),
            rank_lower_bound: g.rank2().div_ceil(2),
        })
    }

    /// Word encoding: coordinate `j` of vertex `v` is `0` when `v ∈ X_j`,
    /// `1` when `v ∈ Y_j`, and `ε` otherwise.
    pub fn encode(&self) -> CoverCode {
        let k = self.bicliques.len();
        let mut words = vec![vec![Symbol::Eps; k]; self.n];
        for (j, b) in self.bicliques.iter().enumerate() {
            for &v in &b.x {
                words[v - 1][j] = Symbol::Zero;
            }
            for &v in &b.y {
                words[v - 1][j] = Symbol::One;
            }
        }
        CoverCode { k, words }
    }

    /// Deletes all vertices outside `keep` from every partite set and
    /// renumbers the survivors in increasing order. The biclique count is
    /// preserved, so restricting a verified cover of `g` yields a cover of
    /// the induced subgraph of the same cardinality.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Result<Self> {
        if let Some(&v) = keep.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::InvalidArgument(format!(
                "kept vertex {v} outside 1..={}",
                self.n
            )));
        }
        let renumber: std::collections::HashMap<usize, usize> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i + 1))
            .collect();
        let bicliques = self
            .bicliques
            .iter()
            .map(|b| Biclique {
                x: b.x.iter().filter_map(|v| renumber.get(v)).copied().collect(),
                y: b.y.iter().filter_map(|v| renumber.get(v)).copied().collect(),
            })
            .collect();
        Ok(Self {
            n: keep.len(),
            bicliques,
        })
    }

    /// Extends a cover of `G - v` to a cover of `G`, given a set `S` of
    /// `G`-vertices whose neighborhoods XOR to `N(v)`: `v` joins every
    /// partite set meeting `S` oddly.
    ///
    /// The input cover is on the ground set of `G - v` (old vertex `w` names
    /// `G`-vertex `w` when `w < v` and `w + 1` otherwise); `S` and the result
    /// use `G`-labels. Fails, reporting the first offending biclique, if some
    /// biclique meets `S` oddly on both sides.
    pub fn extend_by_parity(&self, s: &BTreeSet<usize>, v: usize) -> Result<Self> {
        let n = self.n + 1;
        if v == 0 || v > n {
            return Err(Error::InvalidArgument(format!(
                "new vertex {v} outside 1..={n}"
            )));
        }
        if s.contains(&v) {
            return Err(Error::InvalidArgument(format!("S contains new vertex {v}")));
        }
        if let Some(&w) = s.iter().find(|&&w| w == 0 || w > n) {
            return Err(Error::InvalidArgument(format!(
                "S contains vertex {w} outside 1..={n}"
            )));
        }
        let relabel = |w: usize| if w < v { w } else { w + 1 };
        let mut bicliques = Vec::with_capacity(self.bicliques.len());
        for (i, b) in self.bicliques.iter().enumerate() {
            let mut x: BTreeSet<usize> = b.x.iter().map(|&w| relabel(w)).collect();
            let mut y: BTreeSet<usize> = b.y.iter().map(|&w| relabel(w)).collect();
            let x_odd = x.intersection(s).count() % 2 == 1;
            let y_odd = y.intersection(s).count() % 2 == 1;
            if x_odd && y_odd {
                return Err(Error::OddOddBiclique { index: i });
            }
            if x_odd {
                x.insert(v);
            }
            if y_odd {
                y.insert(v);
            }
            bicliques.push(Biclique { x, y });
        }
        Ok(Self { n, bicliques })
    }

    /// Drops bicliques with an empty side; they contribute no edges.
    pub fn without_edgeless(&self) -> Self {
        Self {
            n: self.n,
            bicliques: self
                .bicliques
                .iter()
                .filter(|b| !b.is_edgeless())
                .cloned()
                .collect(),
        }
    }
}

/// Symbols of the word alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symbol {
    Zero,
    One,
    Eps,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Eps => 'ε',
        }
    }

    /// Parses a word; `e`, `*`, and `ε` all denote the blank symbol.
    pub fn parse_word(text: &str) -> Result<Vec<Symbol>> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                'ε' | 'e' | '*' => Ok(Symbol::Eps),
                other => Err(Error::InvalidArgument(format!(
                    "invalid word symbol {other:?}"
                ))),
            })
            .collect()
    }
}

/// Per-vertex words over `{0,1,ε}`, one coordinate per biclique.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverCode {
    pub k: usize,
    pub words: Vec<Vec<Symbol>>,
}

impl CoverCode {
    pub fn new(k: usize, words: Vec<Vec<Symbol>>) -> Result<Self> {
        if let Some(bad) = words.iter().position(|w| w.len() != k) {
            return Err(Error::InvalidArgument(format!(
                "word of vertex {} has length {}, expected {k}",
                bad + 1,
                words[bad].len()
            )));
        }
        Ok(Self { k, words })
    }

    pub fn word_string(&self, v: usize) -> String {
        self.words[v - 1].iter().map(|s| s.as_char()).collect()
    }

    /// Inverts the encoding: coordinate `j` becomes the biclique whose `X`
    /// side holds the vertices with `0` there and whose `Y` side holds those
    /// with `1`.
    pub fn decode(&self) -> OddCover {
        let n = self.words.len();
        let mut bicliques = vec![
            Biclique {
                x: BTreeSet::new(),
                y: BTreeSet::new(),
            };
            self.k
        ];
        for (i, word) in self.words.iter().enumerate() {
            for (j, sym) in word.iter().enumerate() {
                match sym {
                    Symbol::Zero => {
                        bicliques[j].x.insert(i + 1);
                    }
                    Symbol::One => {
                        bicliques[j].y.insert(i + 1);
                    }
                    Symbol::Eps => {}
                }
            }
        }
        OddCover { n, bicliques }
    }

    /// The `n x 2k` incidence matrix with coordinate pairs `(1,0)`, `(0,1)`,
    /// `(0,0)` for `0`, `1`, `ε`. It satisfies
    /// `M (⊕ H2) Mᵀ = A(decode(self))`.
    pub fn incidence_matrix(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.words.len(), 2 * self.k);
        for (i, word) in self.words.iter().enumerate() {
            for (j, sym) in word.iter().enumerate() {
                match sym {
                    Symbol::Zero => m.set(i, 2 * j, true),
                    Symbol::One => m.set(i, 2 * j + 1, true),
                    Symbol::Eps => {}
                }
            }
        }
        m
    }
}

impl fmt::Debug for CoverCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoverCode(k={}, [", self.k)?;
        for v in 1..=self.words.len() {
            if v > 1 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.word_string(v))?;
        }
        write!(f, "])")
    }
}

/// A single mismatched pair from verification, with the number of bicliques
/// covering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub u: usize,
    pub v: usize,
    pub times_covered: usize,
}

/// Outcome of checking a cover against a graph.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub mismatches: Vec<Mismatch>,
    /// True when the mismatch list was cut off at the cap.
    pub truncated: bool,
    pub cardinality: usize,
    /// `⌈r2(G)/2⌉`, the rank lower bound on the size of any odd cover of `G`.
    pub rank_lower_bound: usize,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok,
            "mismatches": self
                .mismatches
                .iter()
                .map(|m| serde_json::json!([m.u, m.v]))
                .collect::<Vec<_>>(),
            "cardinality": self.cardinality,
            "rank_lower_bound": self.rank_lower_bound,
        })
    }
}
