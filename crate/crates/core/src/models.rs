//! Hidden instances and the result vectors they produce under the three
//! test models.
//!
//! * disjunct: `r = V(X, p)`;
//! * superset: `r = ∨_{P ∈ p} Λ(X, P)`, i.e. test `n` is positive iff some
//!   part lies entirely inside pool `G_n`;
//! * inhibitor: `r = V(X, p) \ V(X, I)`.
//!
//! Text formats (all 1-based): a defective set is `"1,5,7"` (empty string for
//! the empty set), a complex is `"1,2;3"`, an inhibitor instance is `"p|I"`
//! such as `"3|5"` or `"2,4|"`.

use std::fmt;

use crate::bitcore::{BinaryCode, BitVector};
use crate::combinat::SubsetsUpTo;
use crate::error::{Error, Result};

/// The length-`N` vector of test outcomes.
pub type ResultVector = BitVector;

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted ascending
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn normalize(t: usize, mut members: Vec<usize>) -> Result<Vec<usize>> {
    members.sort_unstable();
    if let Some(&bad) = members.iter().find(|&&u| u >= t) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            bound: t,
        });
    }
    if members.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("duplicate sample in set"));
    }
    Ok(members)
}

fn parse_index_list(text: &str, t: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let members = text
        .split(',')
        .map(|f| match f.trim().parse::<usize>() {
            Ok(v) if (1..=t).contains(&v) => Ok(v - 1),
            Ok(v) => Err(Error::domain(format!("sample {v} outside 1..={t}"))),
            Err(_) => Err(Error::domain(format!("bad sample index {f:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    normalize(t, members)
}

struct IndexList<'a>(&'a [usize]);

impl fmt::Display for IndexList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", u + 1)?;
        }
        Ok(())
    }
}

fn check_population(x: &BinaryCode, t: usize) -> Result<()> {
    if x.num_cols() != t {
        return Err(Error::Dimension {
            expected: x.num_cols(),
            found: t,
        });
    }
    Ok(())
}

/// A defective subset `p` of the population `{0, ..., t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefectiveSet {
    population: usize,
    members: Vec<usize>,
}

impl DefectiveSet {
    pub fn new(population: usize, members: Vec<usize>) -> Result<Self> {
        Ok(Self {
            population,
            members: normalize(population, members)?,
        })
    }

    pub fn empty(population: usize) -> Self {
        Self {
            population,
            members: Vec::new(),
        }
    }

    pub fn parse(text: &str, population: usize) -> Result<Self> {
        Ok(Self {
            population,
            members: parse_index_list(text, population)?,
        })
    }

    pub fn population(&self) -> usize {
        self.population
    }

    /// Members, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.binary_search(&u).is_ok()
    }
}

impl fmt::Display for DefectiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        IndexList(&self.members).fmt(f)
    }
}

/// A complex: an antichain of nonempty subsets of the population.
///
/// Kept canonical: each part ascending, parts in lexicographic order. The
/// empty complex is allowed and produces the all-zero result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complex {
    population: usize,
    parts: Vec<Vec<usize>>,
}

impl Complex {
    pub fn new(population: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut parts = parts
            .into_iter()
            .map(|p| {
                if p.is_empty() {
                    Err(Error::domain("complex parts must be nonempty"))
                } else {
                    normalize(population, p)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        parts.sort();
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if a == b {
                    return Err(Error::domain(format!("part {{{}}} repeated", IndexList(a))));
                }
                if is_subset(a, b) || is_subset(b, a) {
                    return Err(Error::domain(format!(
                        "parts {{{}}} and {{{}}} are nested; a complex must be an antichain",
                        IndexList(a),
                        IndexList(b)
                    )));
                }
            }
        }
        Ok(Self { population, parts })
    }

    pub fn empty(population: usize) -> Self {
        Self {
            population,
            parts: Vec::new(),
        }
    }

    /// The complex `{{u} : u ∈ p}`.
    pub fn singletons(p: &DefectiveSet) -> Self {
        Self {
            population: p.population,
            parts: p.members.iter().map(|&u| vec![u]).collect(),
        }
    }

    pub fn parse(text: &str, population: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty(population));
        }
        let parts = text
            .split(';')
            .map(|part| {
                let p = parse_index_list(part, population)?;
                if p.is_empty() {
                    return Err(Error::domain("complex parts must be nonempty"));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(population, parts)
    }

    pub fn population(&self) -> usize {
        self.population
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_part_len(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            IndexList(part).fmt(f)?;
        }
        Ok(())
    }
}

/// A defective set together with a disjoint set of inhibitors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InhibitorInstance {
    population: usize,
    defectives: Vec<usize>,
    inhibitors: Vec<usize>,
}

impl InhibitorInstance {
    pub fn new(population: usize, defectives: Vec<usize>, inhibitors: Vec<usize>) -> Result<Self> {
        let defectives = normalize(population, defectives)?;
        let inhibitors = normalize(population, inhibitors)?;
        if defectives.is_empty() {
            return Err(Error::domain(
                "an inhibitor instance needs at least one defective",
            ));
        }
        if let Some(u) = defectives
            .iter()
            .find(|u| inhibitors.binary_search(u).is_ok())
        {
            return Err(Error::domain(format!(
                "sample {} is both defective and an inhibitor",
                u + 1
            )));
        }
        Ok(Self {
            population,
            defectives,
            inhibitors,
        })
    }

    pub fn parse(text: &str, population: usize) -> Result<Self> {
        let (p, i) = text
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::domain("inhibitor instance must look like \"p|I\""))?;
        Self::new(
            population,
            parse_index_list(p, population)?,
            parse_index_list(i, population)?,
        )
    }

    pub fn population(&self) -> usize {
        self.population
    }

    pub fn defectives(&self) -> &[usize] {
        &self.defectives
    }

    pub fn inhibitors(&self) -> &[usize] {
        &self.inhibitors
    }

    pub fn defective_set(&self) -> DefectiveSet {
        DefectiveSet {
            population: self.population,
            members: self.defectives.clone(),
        }
    }
}

impl fmt::Display for InhibitorInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}",
            IndexList(&self.defectives),
            IndexList(&self.inhibitors)
        )
    }
}

/// Disjunct model: `r = ∨_{u ∈ p} x(u)`.
pub fn result_disjunct(x: &BinaryCode, p: &DefectiveSet) -> Result<ResultVector> {
    check_population(x, p.population)?;
    x.disjunction_over(&p.members)
}

/// Superset model: `r = ∨_{P ∈ p} Λ(X, P)`.
pub fn result_superset(x: &BinaryCode, p: &Complex) -> Result<ResultVector> {
    check_population(x, p.population)?;
    let mut r = BitVector::zeros(x.num_rows());
    for part in &p.parts {
        r.or_assign_words(&x.conjunction_over(part)?);
    }
    Ok(r)
}

/// Inhibitor model: `r = V(X, p) \ V(X, I)`.
pub fn result_inhibitor(x: &BinaryCode, inst: &InhibitorInstance) -> Result<ResultVector> {
    check_population(x, inst.population)?;
    x.disjunction_over(&inst.defectives)?
        .inhibit(&x.disjunction_over(&inst.inhibitors)?)
}

/// All defective sets with `|p| <= s`, including the empty set, in
/// lexicographic order of their sorted member lists. Requires `0 < s < t`.
pub fn enumerate_defective_sets(t: usize, s: usize) -> Result<impl Iterator<Item = DefectiveSet>> {
    if s == 0 || s >= t {
        return Err(Error::domain(format!("need 0 < s < t, got s={s}, t={t}")));
    }
    Ok(
        SubsetsUpTo::of_range(t, s).map(move |members| DefectiveSet {
            population: t,
            members,
        }),
    )
}

/// All complexes with at most `s` parts, each of size at most `l`, in
/// lexicographic order of their canonical part lists. The empty complex comes
/// first. Requires `s, l >= 1` and `s + l <= t`.
pub fn enumerate_complexes(t: usize, s: usize, l: usize) -> Result<Complexes> {
    if s == 0 || l == 0 || s + l > t {
        return Err(Error::domain(format!(
            "need s, l >= 1 and s + l <= t, got s={s}, l={l}, t={t}"
        )));
    }
    // Candidate parts in lexicographic order; part order then equals the
    // lexicographic order on complexes.
    let candidates: Vec<Vec<usize>> = SubsetsUpTo::of_range(t, l).skip(1).collect();
    Ok(Complexes {
        population: t,
        max_parts: s,
        candidates,
        stack: Vec::new(),
        started: false,
        finished: false,
    })
}

/// Stream of complexes; see [`enumerate_complexes`]. Prefixes that are not
/// antichains are pruned since no extension can repair them.
#[derive(Debug, Clone)]
pub struct Complexes {
    population: usize,
    max_parts: usize,
    candidates: Vec<Vec<usize>>,
    stack: Vec<usize>,
    started: bool,
    finished: bool,
}

impl Complexes {
    fn compatible(&self, idx: usize) -> bool {
        let part = &self.candidates[idx];
        self.stack.iter().all(|&j| {
            let other = &self.candidates[j];
            !is_subset(other, part) && !is_subset(part, other)
        })
    }

    // Smallest compatible candidate index >= from, if any.
    fn next_compatible(&self, from: usize) -> Option<usize> {
        (from..self.candidates.len()).find(|&i| self.compatible(i))
    }

    fn advance(&mut self) -> bool {
        if self.stack.len() < self.max_parts {
            let from = self.stack.last().map_or(0, |&i| i + 1);
            if let Some(i) = self.next_compatible(from) {
                self.stack.push(i);
                return true;
            }
        }
        while let Some(last) = self.stack.pop() {
            if let Some(i) = self.next_compatible(last + 1) {
                self.stack.push(i);
                return true;
            }
        }
        false
    }
}

impl Iterator for Complexes {
    type Item = Complex;

    fn next(&mut self) -> Option<Complex> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.finished = true;
            return None;
        }
        Some(Complex {
            population: self.population,
            parts: self
                .stack
                .iter()
                .map(|&i| self.candidates[i].clone())
                .collect(),
        })
    }
}

/// All pairs `(p, I)` with `1 <= |p| <= s`, `|I| <= iota`, `p ∩ I = ∅`,
/// ordered by `p` then `I` (both lexicographic). Requires `s >= 1` and
/// `s + iota <= t`.
pub fn enumerate_pi(
    t: usize,
    s: usize,
    iota: usize,
) -> Result<impl Iterator<Item = InhibitorInstance>> {
    if s == 0 || s + iota > t {
        return Err(Error::domain(format!(
            "need s >= 1 and s + iota <= t, got s={s}, iota={iota}, t={t}"
        )));
    }
    Ok(SubsetsUpTo::of_range(t, s).skip(1).flat_map(move |p| {
        let rest: Vec<usize> = (0..t).filter(|u| p.binary_search(u).is_err()).collect();
        SubsetsUpTo::new(rest, iota).map(move |inhibitors| InhibitorInstance {
            population: t,
            defectives: p.clone(),
            inhibitors,
        })
    }))
}
