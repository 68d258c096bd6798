//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors pack 64 coordinates per machine word; addition is XOR. The module
//! provides rank by in-place Gaussian elimination, a canonical XOR-subset
//! solver, and the symplectic decomposition of symmetric zero-diagonal
//! matrices into rank-two pair updates, which is the algebraic engine behind
//! the rank lower bound and the rank-based cover construction.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A vector over GF(2), packed 64 bits per word.
///
/// Bits at positions `>= len` are kept zero so that whole-word operations
/// (XOR, popcount) need no masking.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    /// The zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// A vector with ones exactly at the given (0-based) positions.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i);
        } else {
            self.clear(i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place addition over GF(2).
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor_assign");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the coordinatewise product, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| Gf2Vector::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(data: Vec<Gf2Vector>) -> Self {
        let cols = data.first().map_or(0, Gf2Vector::len);
        assert!(
            data.iter().all(|r| r.len() == cols),
            "rows of unequal length"
        );
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// The direct sum of `k` copies of the 2x2 swap block.
    pub fn h2_blocks(k: usize) -> Self {
        let mut m = Self::zeros(2 * k, 2 * k);
        for t in 0..k {
            m.set(2 * t, 2 * t + 1, true);
            m.set(2 * t + 1, 2 * t, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].assign(j, value);
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i].flip(j);
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut Gf2Vector {
        &mut self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vector::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// First entry `(i, j)` with `A[i][j] != A[j][i]`, if any.
    fn symmetry_defect(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((self.rows.min(self.cols), 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                out.set(j, i, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let bt = other.transpose();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                if self.data[i].dot(bt.row(j)) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Rank over GF(2), by Gaussian elimination on a copy of the rows.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let (pivot, rest) = rows.split_at_mut(r + 1);
            let pivot = &pivot[r];
            for row in rest {
                if row.get(col) {
                    row.xor_assign(pivot);
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        r
    }

    /// For an `n x 2k` matrix `M` with columns in consecutive pairs, computes
    /// `M (⊕ H2) Mᵀ` where `H2` is the 2x2 swap block. Entry `(i, j)` is the
    /// parity of pairs whose two coordinates are opposed between row `i` and
    /// row `j`.
    pub fn symplectic_gram(&self) -> Self {
        assert!(self.cols % 2 == 0, "column count must be even");
        let k = self.cols / 2;
        // Split each row into the vector of first (x) and second (y) pair
        // coordinates so that the Gram entry is dot(x_i, y_j) ^ dot(y_i, x_j).
        let mut xs = Vec::with_capacity(self.rows);
        let mut ys = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut x = Gf2Vector::zeros(k);
            let mut y = Gf2Vector::zeros(k);
            for j in row.ones() {
                if j % 2 == 0 {
                    x.set(j / 2);
                } else {
                    y.set(j / 2);
                }
            }
            xs.push(x);
            ys.push(y);
        }
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in (i + 1)..self.rows {
                if xs[i].dot(&ys[j]) ^ ys[i].dot(&xs[j]) {
                    out.set(i, j, true);
                    out.set(j, i, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}:", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Finds a set `S` of row indices whose XOR equals `target`, or `None` if
/// `target` lies outside the row space.
///
/// The returned set is canonical: after row-echelon reduction of the linear
/// system, every free variable is set to zero, so equal inputs always produce
/// the same `S`.
pub fn solve_subset(rows: &Gf2Matrix, target: &Gf2Vector) -> Option<BTreeSet<usize>> {
    assert_eq!(
        rows.cols(),
        target.len(),
        "target length must equal the column count"
    );
    let r = rows.rows();
    // One equation per column: sum over chosen rows of their bit in that
    // column equals the target bit. Unknown j is "row j chosen".
    let mut eqs: Vec<Gf2Vector> = (0..rows.cols())
        .map(|c| {
            let mut eq = Gf2Vector::zeros(r + 1);
            for j in 0..r {
                if rows.get(j, c) {
                    eq.set(j);
                }
            }
            if target.get(c) {
                eq.set(r);
            }
            eq
        })
        .collect();

    let mut pivot_of_var = vec![usize::MAX; r];
    let mut next = 0;
    for (var, slot) in pivot_of_var.iter_mut().enumerate() {
        let Some(p) = (next..eqs.len()).find(|&i| eqs[i].get(var)) else {
            continue;
        };
        eqs.swap(next, p);
        let pivot = eqs[next].clone();
        for (i, eq) in eqs.iter_mut().enumerate() {
            if i != next && eq.get(var) {
                eq.xor_assign(&pivot);
            }
        }
        *slot = next;
        next += 1;
    }
    // Rows past the pivots must have vanished entirely for consistency.
    if eqs[next..].iter().any(|eq| eq.get(r)) {
        return None;
    }
    let solution: BTreeSet<usize> = (0..r)
        .filter(|&var| pivot_of_var[var] != usize::MAX && eqs[pivot_of_var[var]].get(r))
        .collect();
    Some(solution)
}

/// A decomposition of a symmetric zero-diagonal matrix `A` into rank-two
/// updates: `A = Σ_t (x_t y_tᵀ + y_t x_tᵀ)` with `rank(A)/2` pairs.
///
/// Laying the pairs out as consecutive columns of a matrix `M` gives
/// `A = M (⊕ H2) Mᵀ`.
#[derive(Clone, Debug)]
pub struct SymplecticDecomposition {
    n: usize,
    pairs: Vec<(Gf2Vector, Gf2Vector)>,
}

impl SymplecticDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Gf2Vector, Gf2Vector)] {
        &self.pairs
    }

    /// Computes `Σ_t (x_t y_tᵀ + y_t x_tᵀ)`.
    pub fn reassemble(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.n, self.n);
        for (x, y) in &self.pairs {
            for i in 0..self.n {
                if x.get(i) {
                    out.row_mut(i).xor_assign(y);
                }
                if y.get(i) {
                    out.row_mut(i).xor_assign(x);
                }
            }
        }
        out
    }

    /// The `n x 2k` matrix whose column pair `(2t, 2t+1)` is `(x_t, y_t)`.
    pub fn to_incidence(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.n, 2 * self.pairs.len());
        for (t, (x, y)) in self.pairs.iter().enumerate() {
            for i in 0..self.n {
                if x.get(i) {
                    m.set(i, 2 * t, true);
                }
                if y.get(i) {
                    m.set(i, 2 * t + 1, true);
                }
            }
        }
        m
    }
}

/// Decomposes a symmetric zero-diagonal matrix into `rank/2` symplectic
/// pairs.
///
/// The elimination repeatedly takes the lexicographically least entry
/// `(p, q)` with `p < q` and `B[p][q] = 1`, emits the pair of columns
/// `(B e_p, B e_q)`, and subtracts their rank-two update. Each step zeroes
/// rows `p` and `q`, preserves symmetry and the zero diagonal, and lowers the
/// rank by exactly two, so the procedure is deterministic and terminates with
/// the zero matrix.
pub fn symplectic_decompose(a: &Gf2Matrix) -> Result<SymplecticDecomposition> {
    if let Some((i, j)) = a.symmetry_defect() {
        return Err(Error::NotSymmetric(i, j));
    }
    if let Some(i) = (0..a.rows()).find(|&i| a.get(i, i)) {
        return Err(Error::NonzeroDiagonal(i));
    }
    let n = a.rows();
    let mut b = a.clone();
    let mut pairs = Vec::new();
    // By symmetry and the zero diagonal, the least nonzero row has all its
    // support strictly to the right of the diagonal.
    while let Some(p) = (0..n).find(|&i| !b.row(i).is_zero()) {
        let q = b.row(p).first_one().expect("nonzero row");
        debug_assert!(q > p);
        // Column q and column p of the symmetric B; in this order the pair
        // puts p on the X side of the associated triclique.
        let x = b.row(q).clone();
        let y = b.row(p).clone();
        for i in 0..n {
            if x.get(i) {
                b.row_mut(i).xor_assign(&y);
            }
            if y.get(i) {
                b.row_mut(i).xor_assign(&x);
            }
        }
        debug_assert!(b.row(p).is_zero() && b.row(q).is_zero());
        pairs.push((x, y));
    }
    Ok(SymplecticDecomposition { n, pairs })
}
