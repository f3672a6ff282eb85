//! Packed binary vectors and incidence matrices.
//!
//! Vectors are stored as little-endian `u64` words with the unused high bits
//! of the last word kept at zero, so equality, hashing and the boolean
//! operations below all work a word at a time.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = u64::BITS as usize;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A binary vector of fixed length `>= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The all-zero vector of length `len`.
    ///
    /// # Panics
    ///
    /// Panics if `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "bit vectors have length >= 1");
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The vector of length `len` with ones exactly at `indices` (0-based).
    pub fn from_indices<I>(len: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if len == 0 {
            return Err(Error::domain("bit vectors have length >= 1"));
        }
        let mut v = Self::zeros(len);
        for i in indices {
            if i >= len {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: len,
                });
            }
            v.set(i);
        }
        Ok(v)
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i);
            }
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Bit `i` (0-based).
    ///
    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the ones, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Dimension {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check_len(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_words(self.len, words))
    }

    /// Componentwise disjunction `x ∨ y`.
    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    /// Componentwise conjunction `x ∧ y`.
    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    /// Componentwise inhibition `x \ y`: 1 exactly where `x` is 1 and `y` is 0.
    pub fn inhibit(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `x` covers `y` iff `x ∨ y = x`, i.e. the support of `y` lies inside
    /// the support of `x`.
    pub fn covers(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| b & !a == 0))
    }

    /// `x ∧ y = 0`.
    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0))
    }

    pub(crate) fn or_assign_words(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn and_assign_words(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::domain("empty bit string"));
        }
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i),
                other => {
                    return Err(Error::domain(format!(
                        "illegal character {other:?} at position {}",
                        i + 1
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// An `N x t` binary incidence matrix. Row `n` is the pool `G_n`, column `u`
/// is the codeword `x(u)`.
///
/// Stored column-major: every property checker and decoder works on
/// codewords, and rows are only needed for I/O and deduplication.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    num_rows: usize,
    columns: Vec<BitVector>,
}

impl BinaryCode {
    pub fn from_columns(columns: Vec<BitVector>) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::domain("a code needs at least one column"));
        };
        let num_rows = first.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != num_rows) {
            return Err(Error::Dimension {
                expected: num_rows,
                found: bad.len(),
            });
        }
        Ok(Self { num_rows, columns })
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::domain("a code needs at least one row"));
        };
        let num_cols = first.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != num_cols) {
            return Err(Error::Dimension {
                expected: num_cols,
                found: bad.len(),
            });
        }
        let mut columns = vec![BitVector::zeros(rows.len()); num_cols];
        for (n, row) in rows.iter().enumerate() {
            for u in row.ones() {
                columns[u].set(n);
            }
        }
        Ok(Self {
            num_rows: rows.len(),
            columns,
        })
    }

    /// Builds the matrix entry by entry from `f(row, col)`.
    ///
    /// # Panics
    ///
    /// Panics if either dimension is zero.
    pub fn from_fn(
        num_rows: usize,
        num_cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        assert!(num_cols >= 1, "a code needs at least one column");
        let columns = (0..num_cols)
            .map(|u| BitVector::from_fn(num_rows, |n| f(n, u)))
            .collect();
        Self { num_rows, columns }
    }

    /// Number of tests `N`.
    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    /// Number of samples `t`.
    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    /// Codeword `x(u)`.
    ///
    /// # Panics
    ///
    /// Panics if `u >= t`.
    pub fn column(&self, u: usize) -> &BitVector {
        &self.columns[u]
    }

    pub fn columns(&self) -> &[BitVector] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    /// Row `n` as a length-`t` vector.
    pub fn row(&self, n: usize) -> BitVector {
        BitVector::from_fn(self.num_cols(), |u| self.columns[u].get(n))
    }

    pub fn rows(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.num_rows).map(|n| self.row(n))
    }

    pub(crate) fn check_index(&self, u: usize) -> Result<()> {
        if u >= self.num_cols() {
            return Err(Error::IndexOutOfRange {
                index: u,
                bound: self.num_cols(),
            });
        }
        Ok(())
    }

    /// `V(X, τ)`: the disjunction of the selected codewords; the zero vector
    /// for `τ = ∅`.
    pub fn disjunction_over(&self, tau: &[usize]) -> Result<BitVector> {
        let mut acc = BitVector::zeros(self.num_rows);
        for &u in tau {
            self.check_index(u)?;
            acc.or_assign_words(&self.columns[u]);
        }
        Ok(acc)
    }

    /// `Λ(X, τ)`: the conjunction of the selected codewords. The empty
    /// conjunction is rejected.
    pub fn conjunction_over(&self, tau: &[usize]) -> Result<BitVector> {
        let (&first, rest) = tau
            .split_first()
            .ok_or_else(|| Error::domain("conjunction over an empty column set is undefined"))?;
        self.check_index(first)?;
        let mut acc = self.columns[first].clone();
        for &u in rest {
            self.check_index(u)?;
            acc.and_assign_words(&self.columns[u]);
        }
        Ok(acc)
    }

    /// The `N x |keep|` matrix of the selected columns, in the given order.
    pub fn restrict_columns(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::domain("column selection is empty"));
        }
        let mut seen = vec![false; self.num_cols()];
        for &u in keep {
            self.check_index(u)?;
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::domain(format!("column {} selected twice", u + 1)));
            }
        }
        Ok(Self {
            num_rows: self.num_rows,
            columns: keep.iter().map(|&u| self.columns[u].clone()).collect(),
        })
    }

    /// Serializes in the code file format: a header line `N t` followed by
    /// one line of `t` characters per row.
    pub fn to_text(&self) -> String {
        let t = self.num_cols();
        let mut out = String::with_capacity((t + 1) * (self.num_rows + 1));
        out.push_str(&format!("{} {}\n", self.num_rows, t));
        for n in 0..self.num_rows {
            out.extend(
                self.columns
                    .iter()
                    .map(|c| if c.get(n) { '1' } else { '0' }),
            );
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryCode {}x{}", self.num_rows, self.num_cols())?;
        for row in self.rows() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Parses `"<a> <b>"`-style header lines of positive integers.
pub(crate) fn parse_header(line: &str, expected: usize, what: &str) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::format(1, format!("header must be \"{what}\"")));
    }
    fields
        .iter()
        .map(|f| match f.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(Error::format(
                1,
                format!("header field {f:?} is not a positive integer"),
            )),
        })
        .collect()
}

impl FromStr for BinaryCode {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::format(1, "empty file"))?;
        let dims = parse_header(header, 2, "N t")?;
        let (num_rows, num_cols) = (dims[0], dims[1]);
        let mut rows = Vec::with_capacity(num_rows);
        for n in 0..num_rows {
            let line_no = n + 2;
            let line = lines.next().ok_or_else(|| {
                Error::format(line_no, format!("expected {num_rows} rows, found {n}"))
            })?;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.len() != num_cols {
                return Err(Error::format(
                    line_no,
                    format!(
                        "row has {} characters, expected {num_cols}",
                        line.chars().count()
                    ),
                ));
            }
            let mut row = BitVector::zeros(num_cols);
            for (u, b) in line.bytes().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => row.set(u),
                    _ => {
                        return Err(Error::format(
                            line_no,
                            format!("illegal character at column {}", u + 1),
                        ))
                    }
                }
            }
            rows.push(row);
        }
        for (extra, line) in lines.enumerate() {
            if !line.trim().is_empty() {
                return Err(Error::format(
                    num_rows + 2 + extra,
                    "unexpected content after last row",
                ));
            }
        }
        Self::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn truth_tables() {
        assert_eq!(bv("011").or(&bv("101")).unwrap(), bv("111"));
        assert_eq!(bv("011").and(&bv("101")).unwrap(), bv("001"));
        assert_eq!(bv("110").inhibit(&bv("011")).unwrap(), bv("100"));
        assert!(bv("101").covers(&bv("001")).unwrap());
        assert!(!bv("01").covers(&bv("10")).unwrap());
    }

    #[test]
    fn identities() {
        let x = bv("1011001");
        let zero = BitVector::zeros(7);
        assert_eq!(x.or(&zero).unwrap(), x);
        assert_eq!(x.and(&x).unwrap(), x);
        assert_eq!(x.and(&zero).unwrap(), zero);
        assert_eq!(x.inhibit(&zero).unwrap(), x);
        assert_eq!(x.inhibit(&x).unwrap(), zero);
        assert!(x.covers(&x).unwrap());
    }

    #[test]
    fn length_mismatch_is_a_dimension_error() {
        let e = Error::Dimension {
            expected: 2,
            found: 3,
        };
        assert_eq!(bv("01").or(&bv("011")), Err(e.clone()));
        assert_eq!(bv("01").and(&bv("011")), Err(e.clone()));
        assert_eq!(bv("01").inhibit(&bv("011")), Err(e.clone()));
        assert_eq!(bv("01").covers(&bv("011")), Err(e));
    }

    #[test]
    fn ones_and_multiword_tail() {
        let v = BitVector::from_indices(130, [0, 63, 64, 129]).unwrap();
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.count_ones(), 4);
        assert_eq!(v.to_string().parse::<BitVector>().unwrap(), v);
        assert!(BitVector::from_indices(3, [3]).is_err());
    }

    #[test]
    fn parse_small_file() {
        let x: BinaryCode = "2 3\n101\n010\n".parse().unwrap();
        assert_eq!((x.num_rows(), x.num_cols()), (2, 3));
        assert_eq!(x.row(0), bv("101"));
        assert_eq!(x.row(1), bv("010"));
        assert_eq!(x.column(0), &bv("10"));
        assert_eq!(x.to_text(), "2 3\n101\n010\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "2 3\n10\n010\n".parse::<BinaryCode>().unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
        let err = "2 3\n101\n0x0\n".parse::<BinaryCode>().unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
        let err = "2 x\n101\n010\n".parse::<BinaryCode>().unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }), "{err}");
        let err = "3 3\n101\n010\n".parse::<BinaryCode>().unwrap_err();
        assert!(matches!(err, Error::Format { line: 4, .. }), "{err}");
        let err = "1 3\n101\n010\n".parse::<BinaryCode>().unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");
        assert!("".parse::<BinaryCode>().is_err());
    }

    #[test]
    fn disjunction_and_conjunction_over_sets() {
        let x: BinaryCode = "3 3\n100\n010\n001\n".parse().unwrap();
        assert!(x.disjunction_over(&[]).unwrap().is_zero());
        assert_eq!(x.disjunction_over(&[1]).unwrap(), *x.column(1));
        assert_eq!(x.disjunction_over(&[0, 2]).unwrap(), bv("101"));
        assert_eq!(x.conjunction_over(&[1]).unwrap(), *x.column(1));
        assert_eq!(x.conjunction_over(&[0, 1]).unwrap(), bv("000"));
        assert!(matches!(x.conjunction_over(&[]), Err(Error::Domain(_))));
        assert!(matches!(
            x.disjunction_over(&[3]),
            Err(Error::IndexOutOfRange { index: 3, bound: 3 })
        ));
    }

    #[test]
    fn restriction() {
        let x: BinaryCode = "2 3\n101\n011\n".parse().unwrap();
        assert_eq!(x.restrict_columns(&[0, 1, 2]).unwrap(), x);
        let y = x.restrict_columns(&[2, 0]).unwrap();
        assert_eq!(y.to_text(), "2 2\n11\n10\n");
        assert!(x.restrict_columns(&[]).is_err());
        assert!(x.restrict_columns(&[1, 1]).is_err());
        assert!(x.restrict_columns(&[5]).is_err());
    }

    fn pair_strategy() -> impl Strategy<Value = (BitVector, BitVector)> {
        (1usize..200).prop_flat_map(|len| {
            (
                proptest::collection::vec(any::<bool>(), len),
                proptest::collection::vec(any::<bool>(), len),
            )
                .prop_map(|(a, b)| {
                    (
                        BitVector::from_fn(a.len(), |i| a[i]),
                        BitVector::from_fn(b.len(), |i| b[i]),
                    )
                })
        })
    }

    fn code_strategy() -> impl Strategy<Value = BinaryCode> {
        (1usize..8, 1usize..12).prop_flat_map(|(n, t)| {
            proptest::collection::vec(any::<bool>(), n * t)
                .prop_map(move |bits| BinaryCode::from_fn(n, t, |r, c| bits[r * t + c]))
        })
    }

    proptest! {
        #[test]
        fn cover_or_and_agree((x, y) in pair_strategy()) {
            let covers = x.covers(&y).unwrap();
            prop_assert_eq!(covers, x.or(&y).unwrap() == x);
            prop_assert_eq!(covers, x.and(&y).unwrap() == y);
        }

        #[test]
        fn inhibition_extremes((x, y) in pair_strategy()) {
            let inh = x.inhibit(&y).unwrap();
            prop_assert_eq!(inh.is_zero(), y.covers(&x).unwrap());
            prop_assert_eq!(inh == x, x.and(&y).unwrap().is_zero());
        }

        #[test]
        fn disjunction_is_a_union_homomorphism(
            x in code_strategy(),
            a in proptest::collection::vec(0usize..12, 0..5),
            b in proptest::collection::vec(0usize..12, 0..5),
        ) {
            let t = x.num_cols();
            let a: Vec<_> = a.into_iter().filter(|&u| u < t).collect();
            let b: Vec<_> = b.into_iter().filter(|&u| u < t).collect();
            let union: Vec<_> = a.iter().chain(&b).copied().collect();
            let lhs = x.disjunction_over(&union).unwrap();
            let rhs = x.disjunction_over(&a).unwrap().or(&x.disjunction_over(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn restriction_commutes_with_column_access(x in code_strategy(), seed in any::<u64>()) {
            let t = x.num_cols();
            let mut keep: Vec<usize> = (0..t).collect();
            // cheap deterministic shuffle
            let mut s = seed | 1;
            for i in (1..t).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                keep.swap(i, (s % (i as u64 + 1)) as usize);
            }
            keep.truncate(1 + (seed as usize % t));
            let y = x.restrict_columns(&keep).unwrap();
            for (j, &u) in keep.iter().enumerate() {
                prop_assert_eq!(y.column(j), x.column(u));
            }
        }

        #[test]
        fn text_round_trip(x in code_strategy()) {
            let text = x.to_text();
            let back: BinaryCode = text.parse().unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, x);
        }
    }
}
