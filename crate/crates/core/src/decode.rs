//! Decoders for the three test models.
//!
//! Each decoder assumes the matching code property (superimposed `s`-code,
//! superimposed `(s, l)`-code, inhibitory `(s, iota)`-code) and does not check
//! it. Under that assumption the output is exactly the hidden structure; on
//! other inputs the output is still well defined.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::bitcore::{BinaryCode, BitVector};
use crate::combinat::{try_for_each_combination, SubsetsUpTo};
use crate::error::{Error, Result};
use crate::models::{Complex, DefectiveSet, ResultVector};

fn check_rows(x: &BinaryCode, r: &ResultVector) -> Result<()> {
    if r.len() != x.num_rows() {
        return Err(Error::Dimension {
            expected: x.num_rows(),
            found: r.len(),
        });
    }
    Ok(())
}

/// Disjunct model: the samples whose codewords are covered by `r`.
pub fn decode_disjunct(x: &BinaryCode, r: &ResultVector, s: usize) -> Result<DefectiveSet> {
    check_rows(x, r)?;
    let t = x.num_cols();
    if s == 0 || s >= t {
        return Err(Error::domain(format!("need 0 < s < t, got s={s}, t={t}")));
    }
    let members = (0..t)
        .filter(|&u| r.covers(x.column(u)).expect("lengths checked"))
        .collect();
    DefectiveSet::new(t, members)
}

/// Superset model.
///
/// A candidate part `P` (`1 <= |P| <= l`) is of class alpha when `r` covers
/// `Λ(X, P)`, meaning `P` contains some hidden part; otherwise it is of
/// class beta. The hidden parts are exactly the alpha candidates whose proper
/// subsets are all beta. Since alpha is closed under supersets, it is enough
/// to look at the subsets one element smaller, which were classified
/// earlier because candidates are visited by increasing size.
pub fn decode_superset(x: &BinaryCode, r: &ResultVector, s: usize, l: usize) -> Result<Complex> {
    check_rows(x, r)?;
    let t = x.num_cols();
    if s == 0 || l == 0 || s + l > t {
        return Err(Error::domain(format!(
            "need s, l >= 1 and s + l <= t, got s={s}, l={l}, t={t}"
        )));
    }
    let mut alpha: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut parts = Vec::new();
    let universe: Vec<usize> = (0..t).collect();
    for size in 1..=l {
        let _ = try_for_each_combination::<()>(&universe, size, |cand| {
            let is_alpha = r
                .covers(&x.conjunction_over(cand).expect("indices in range"))
                .expect("lengths checked");
            if is_alpha {
                let minimal = (0..size).all(|skip| {
                    let sub: Vec<usize> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &u)| u)
                        .collect();
                    sub.is_empty() || !alpha[&sub]
                });
                if minimal {
                    parts.push(cand.to_vec());
                }
            }
            if size < l {
                alpha.insert(cand.to_vec(), is_alpha);
            }
            ControlFlow::Continue(())
        });
    }
    Complex::new(t, parts)
}

/// Which inhibitor sets the acceptability search tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InhibitorSearch {
    /// Only columns whose codeword is disjoint from `r`.
    Pruned,
    /// Every column other than the sample itself.
    Exhaustive,
}

/// Whether sample `u` is `iota`-acceptable for `r`: some `I'` not containing
/// `u` with `|I'| <= iota` makes `r` cover `x(u) \ V(X, I')`. Returns the
/// first such `I'` (smallest size, then lexicographic).
pub fn acceptable_witness(
    x: &BinaryCode,
    r: &ResultVector,
    u: usize,
    iota: usize,
    search: InhibitorSearch,
) -> Result<Option<Vec<usize>>> {
    check_rows(x, r)?;
    x.check_index(u)?;
    let target = x.column(u);
    let candidates: Vec<usize> = (0..x.num_cols())
        .filter(|&v| v != u)
        .filter(|&v| match search {
            InhibitorSearch::Pruned => x.column(v).is_disjoint(r).expect("lengths checked"),
            InhibitorSearch::Exhaustive => true,
        })
        .collect();
    for size in 0..=iota.min(candidates.len()) {
        let flow = try_for_each_combination(&candidates, size, |inhib| {
            let blocked = x.disjunction_over(inhib).expect("indices in range");
            let residue = target.inhibit(&blocked).expect("same length");
            if r.covers(&residue).expect("lengths checked") {
                ControlFlow::Break(inhib.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(found) = flow {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Inhibitor model: the `iota`-acceptable samples.
pub fn decode_inhibitor(
    x: &BinaryCode,
    r: &ResultVector,
    s: usize,
    iota: usize,
) -> Result<DefectiveSet> {
    decode_inhibitor_with(x, r, s, iota, InhibitorSearch::Pruned)
}

pub fn decode_inhibitor_with(
    x: &BinaryCode,
    r: &ResultVector,
    s: usize,
    iota: usize,
    search: InhibitorSearch,
) -> Result<DefectiveSet> {
    check_rows(x, r)?;
    let t = x.num_cols();
    if s == 0 || s + iota > t {
        return Err(Error::domain(format!(
            "need s >= 1 and s + iota <= t, got s={s}, iota={iota}, t={t}"
        )));
    }
    let mut members = Vec::new();
    for u in 0..t {
        if acceptable_witness(x, r, u, iota, search)?.is_some() {
            members.push(u);
        }
    }
    DefectiveSet::new(t, members)
}

/// All result vectors reachable as `V(X, p)` for `|p| <= s`, paired with `p`;
/// the table a generic disjunct-design decoder would search.
pub fn disjunct_lookup_table(x: &BinaryCode, s: usize) -> HashMap<BitVector, Vec<DefectiveSet>> {
    let mut table: HashMap<BitVector, Vec<DefectiveSet>> = HashMap::new();
    for members in SubsetsUpTo::of_range(x.num_cols(), s) {
        let r = x.disjunction_over(&members).expect("indices in range");
        let p = DefectiveSet::new(x.num_cols(), members).expect("valid subset");
        table.entry(r).or_default().push(p);
    }
    table
}
