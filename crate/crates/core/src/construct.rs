//! Code constructions: trivial codes, identity codes, extended Reed-Solomon
//! codes, concatenation, row deduplication, and the two small codes used as
//! reference points (`eq8`, a 9x12 superimposed 2-code, and `c4`, a 3x8
//! quaternary separating (2,2)-code).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::bitcore::{parse_header, BinaryCode, BitVector};
use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::galois::Field;

/// An `N x t` matrix over the alphabet `{1, ..., q}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QaryCode {
    num_rows: usize,
    num_cols: usize,
    q: u32,
    // row-major
    entries: Vec<u32>,
}

impl QaryCode {
    pub fn new(num_rows: usize, num_cols: usize, q: u32, entries: Vec<u32>) -> Result<Self> {
        if num_rows == 0 || num_cols == 0 {
            return Err(Error::domain(
                "a q-ary code needs at least one row and one column",
            ));
        }
        if q < 2 {
            return Err(Error::domain("alphabet size must be at least 2"));
        }
        if entries.len() != num_rows * num_cols {
            return Err(Error::Dimension {
                expected: num_rows * num_cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|&&v| v == 0 || v > q) {
            return Err(Error::domain(format!("symbol {bad} outside 1..={q}")));
        }
        Ok(Self {
            num_rows,
            num_cols,
            q,
            entries,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.q
    }

    /// Symbol `x_n(u)` in `1..=q`.
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.num_cols + col]
    }

    pub fn row(&self, n: usize) -> &[u32] {
        &self.entries[n * self.num_cols..(n + 1) * self.num_cols]
    }

    pub fn column(&self, u: usize) -> Vec<u32> {
        (0..self.num_rows).map(|n| self.get(n, u)).collect()
    }

    /// The first `k` rows.
    pub fn take_rows(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.num_rows {
            return Err(Error::domain(format!(
                "cannot keep {k} of {} rows",
                self.num_rows
            )));
        }
        Ok(Self {
            num_rows: k,
            num_cols: self.num_cols,
            q: self.q,
            entries: self.entries[..k * self.num_cols].to_vec(),
        })
    }

    pub fn restrict_columns(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::domain("column selection is empty"));
        }
        if let Some(&bad) = keep.iter().find(|&&u| u >= self.num_cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: self.num_cols,
            });
        }
        if !keep.iter().all_unique() {
            return Err(Error::domain("column selected twice"));
        }
        let entries = (0..self.num_rows)
            .flat_map(|n| keep.iter().map(move |&u| self.get(n, u)))
            .collect();
        Ok(Self {
            num_rows: self.num_rows,
            num_cols: keep.len(),
            q: self.q,
            entries,
        })
    }

    /// Serializes as a header `N t q` and `N` lines of `t` space-separated
    /// symbols.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.num_rows, self.num_cols, self.q);
        for n in 0..self.num_rows {
            out.push_str(&self.row(n).iter().join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for QaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for QaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QaryCode {}x{} over [{}]",
            self.num_rows, self.num_cols, self.q
        )
    }
}

impl FromStr for QaryCode {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::format(1, "empty file"))?;
        let dims = parse_header(header, 3, "N t q")?;
        let (num_rows, num_cols) = (dims[0], dims[1]);
        let q = u32::try_from(dims[2]).map_err(|_| Error::format(1, "alphabet too large"))?;
        if q < 2 {
            return Err(Error::format(1, "alphabet size must be at least 2"));
        }
        let mut entries = Vec::with_capacity(num_rows * num_cols);
        for n in 0..num_rows {
            let line_no = n + 2;
            let line = lines.next().ok_or_else(|| {
                Error::format(line_no, format!("expected {num_rows} rows, found {n}"))
            })?;
            let before = entries.len();
            for field in line.split_whitespace() {
                match field.parse::<u32>() {
                    Ok(v) if (1..=q).contains(&v) => entries.push(v),
                    _ => {
                        return Err(Error::format(
                            line_no,
                            format!("symbol {field:?} is not in 1..={q}"),
                        ))
                    }
                }
            }
            if entries.len() - before != num_cols {
                return Err(Error::format(
                    line_no,
                    format!(
                        "row has {} symbols, expected {num_cols}",
                        entries.len() - before
                    ),
                ));
            }
        }
        for (extra, line) in lines.enumerate() {
            if !line.trim().is_empty() {
                return Err(Error::format(
                    num_rows + 2 + extra,
                    "unexpected content after last row",
                ));
            }
        }
        Self::new(num_rows, num_cols, q, entries)
    }
}

/// Parameters `(q, k, n)` of an MDS code, with distance `d = n - k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdsParams {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub d: usize,
}

impl MdsParams {
    pub fn new(q: u32, k: usize, n: usize) -> Self {
        Self {
            q,
            k,
            n,
            d: n + 1 - k,
        }
    }
}

/// The trivial superimposed `(s, l)`-code of size `t`, of length
/// `min{C(t,s), C(t,l)}`.
///
/// If `C(t,l) <= C(t,s)` the rows are all weight-`l` vectors, otherwise all
/// vectors with exactly `s` zeros. Rows are ordered lexicographically by the
/// support (respectively the zero set), so the first row of `trivial(4,2,2)`
/// is `1100`.
pub fn trivial_code(t: usize, s: usize, l: usize) -> Result<BinaryCode> {
    if s == 0 || l == 0 || s + l > t {
        return Err(Error::domain(format!(
            "need s, l >= 1 and s + l <= t, got s={s}, l={l}, t={t}"
        )));
    }
    let (tt, ss, ll) = (t as u64, s as u64, l as u64);
    let by_ones = binomial(tt, ll) <= binomial(tt, ss);
    let len = binomial(tt, ll).min(binomial(tt, ss));
    if len > 1 << 24 {
        return Err(Error::TooLarge(format!(
            "trivial code would have {len} rows"
        )));
    }
    let weight = if by_ones { l } else { s };
    let rows: Vec<BitVector> = (0..t)
        .combinations(weight)
        .map(|set| {
            if by_ones {
                BitVector::from_fn(t, |u| set.contains(&u))
            } else {
                BitVector::from_fn(t, |u| !set.contains(&u))
            }
        })
        .collect();
    BinaryCode::from_rows(&rows)
}

/// The `t x t` identity matrix: the trivial superimposed `(t-1)`-code.
pub fn identity_code(t: usize) -> Result<BinaryCode> {
    if t < 2 {
        return Err(Error::domain("identity code needs t >= 2"));
    }
    Ok(BinaryCode::from_fn(t, t, |n, u| n == u))
}

/// The extended Reed-Solomon code over `GF(q)` with `k = lambda + 1`:
/// parameters `(q, lambda+1, q+1)`.
///
/// Columns are the `q^(lambda+1)` polynomials `c_0 + c_1 x + ... + c_lambda x^lambda`,
/// ordered lexicographically by `(c_0, ..., c_lambda)` in canonical element
/// order. Row `i < q` holds the evaluation at field element `i`; row `q`
/// holds the leading coefficient `c_lambda`. Symbols are shifted to `1..=q`.
pub fn reed_solomon(q: u32, lambda: usize) -> Result<(QaryCode, MdsParams)> {
    let field = Field::new(q)?;
    if lambda == 0 || lambda as u64 >= u64::from(q) {
        return Err(Error::domain(format!(
            "need 1 <= lambda <= q-1, got lambda={lambda}, q={q}"
        )));
    }
    let k = lambda + 1;
    let n = q as usize + 1;
    let t = u64::from(q)
        .checked_pow(k as u32)
        .filter(|&t| t <= 1 << 24 && t * n as u64 <= 1 << 28)
        .ok_or_else(|| Error::TooLarge(format!("Reed-Solomon code with q={q}, lambda={lambda}")))?
        as usize;

    let mut entries = vec![0u32; n * t];
    let mut coeffs = vec![0u32; k];
    for u in 0..t {
        let mut rest = u;
        for c in coeffs.iter_mut().rev() {
            *c = (rest % q as usize) as u32;
            rest /= q as usize;
        }
        for x in 0..q {
            entries[x as usize * t + u] = field.eval_poly(&coeffs, x) + 1;
        }
        entries[q as usize * t + u] = coeffs[lambda] + 1;
    }
    let code = QaryCode::new(n, t, q, entries)?;
    Ok((code, MdsParams::new(q, k, n)))
}

/// Replaces each symbol `θ` of `external` by the `θ`-th codeword of
/// `internal`. Block `n` (rows `n*N'..(n+1)*N'`) of column `u` is codeword
/// number `x_n(u)` of the internal code.
pub fn concatenate(external: &QaryCode, internal: &BinaryCode) -> Result<BinaryCode> {
    let q = external.alphabet_size() as usize;
    if internal.num_cols() != q {
        return Err(Error::Dimension {
            expected: q,
            found: internal.num_cols(),
        });
    }
    let inner_rows = internal.num_rows();
    let columns = (0..external.num_cols())
        .map(|u| {
            let mut col = BitVector::zeros(external.num_rows() * inner_rows);
            for n in 0..external.num_rows() {
                let symbol = external.get(n, u) as usize - 1;
                for j in internal.column(symbol).ones() {
                    col.set(n * inner_rows + j);
                }
            }
            col
        })
        .collect();
    BinaryCode::from_columns(columns)
}

/// Drops repeated rows, keeping the first occurrence of each.
pub fn dedupe_rows(x: &BinaryCode) -> BinaryCode {
    let mut seen = HashSet::new();
    let rows: Vec<BitVector> = x.rows().filter(|r| seen.insert(r.clone())).collect();
    BinaryCode::from_rows(&rows).expect("a nonempty code keeps at least one row")
}

/// Number of external rows the Reed-Solomon concatenation keeps: `s*l*lambda + 1`.
pub fn external_length(s: usize, l: usize, lambda: usize) -> usize {
    s * l * lambda + 1
}

/// Length `N1 * (s*l*lambda + 1)` of the Reed-Solomon concatenated code
/// built on an internal code of length `n1`.
pub fn concatenated_length(n1: usize, s: usize, l: usize, lambda: usize) -> usize {
    n1 * external_length(s, l, lambda)
}

/// Superimposed `(s, l)`-code of size `q^(lambda+1)` and length
/// `N1 * (s*l*lambda + 1)`: the first `s*l*lambda + 1` rows of
/// `reed_solomon(q, lambda)` concatenated with `internal`.
///
/// `internal` must be a superimposed `(s, l)`-code of size `q`; this function
/// does not check that.
pub fn concatenated_reed_solomon(
    s: usize,
    l: usize,
    lambda: usize,
    q: u32,
    internal: &BinaryCode,
) -> Result<BinaryCode> {
    if s == 0 || l == 0 || lambda == 0 {
        return Err(Error::domain("s, l and lambda must be positive"));
    }
    let needed = s * l * lambda;
    if (q as usize) < needed {
        return Err(Error::domain(format!(
            "need q >= s*l*lambda = {needed}, got q={q}"
        )));
    }
    if internal.num_cols() != q as usize {
        return Err(Error::Dimension {
            expected: q as usize,
            found: internal.num_cols(),
        });
    }
    let (rs, _) = reed_solomon(q, lambda)?;
    let external = rs.take_rows(external_length(s, l, lambda))?;
    concatenate(&external, internal)
}

const EQ8: [&str; 9] = [
    "001111000000",
    "001000111000",
    "001000000111",
    "010100100100",
    "010010010010",
    "010001001001",
    "100100001010",
    "100010100001",
    "100001010100",
];

const C4: [[u32; 8]; 3] = [
    [4, 2, 3, 1, 2, 4, 1, 3],
    [2, 4, 1, 3, 2, 4, 1, 3],
    [1, 1, 2, 2, 3, 3, 4, 4],
];

/// The 9x12 superimposed 2-code; also an inhibitory (1,1)-code.
pub fn builtin_eq8() -> BinaryCode {
    let rows: Vec<BitVector> = EQ8.iter().map(|r| r.parse().unwrap()).collect();
    BinaryCode::from_rows(&rows).unwrap()
}

/// The 3x8 quaternary separating (2,2)-code.
pub fn builtin_c4() -> QaryCode {
    QaryCode::new(3, 8, 4, C4.iter().flatten().copied().collect()).unwrap()
}

pub const BUILTIN_NAMES: [&str; 2] = ["eq8", "c4"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Binary(BinaryCode),
    Qary(QaryCode),
}

pub fn builtin(name: &str) -> Result<Builtin> {
    match name {
        "eq8" => Ok(Builtin::Binary(builtin_eq8())),
        "c4" => Ok(Builtin::Qary(builtin_c4())),
        other => Err(Error::domain(format!(
            "unknown built-in code {other:?}; known: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}
