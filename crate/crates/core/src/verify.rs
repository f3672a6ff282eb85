//! Property checkers for pooling designs.
//!
//! The exhaustive checkers all reduce to one kernel: for every pair of
//! disjoint column sets `(S, L)` of full size, look for a row that
//! separates them. `L` runs in the outer loop, `S` over the complement of
//! `L` in the inner loop, both in lexicographic order. Padding shows that
//! checking `|S| = s`, `|L| = l` is enough whenever `s + l <= t`. The outer
//! loop is split into chunks that fan out over the current rayon pool; the
//! reported violation is always the first one in enumeration order, so
//! results do not depend on the number of workers.
//!
//! The `oracle_*` functions are brute-force checks of the design
//! definitions themselves (injectivity of the result map) and share no code
//! with the kernel.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitcore::{BinaryCode, BitVector};
use crate::combinat::{binomial, binomial_sum, try_for_each_combination};
use crate::construct::QaryCode;
use crate::error::{Error, Result};
use crate::models::{
    enumerate_complexes, enumerate_defective_sets, enumerate_pi, result_disjunct, result_inhibitor,
    result_superset, Complex, DefectiveSet, InhibitorInstance,
};

const OUTER_CHUNK: usize = 512;
const TRIAL_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized { seed: u64, trials: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Randomized { seed, trials } => {
                write!(f, "randomized(seed={seed},trials={trials})")
            }
        }
    }
}

/// A hidden instance appearing in a design-oracle collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Defective(DefectiveSet),
    Complex(Complex),
    Inhibitor(InhibitorInstance),
}

impl Instance {
    fn result(&self, x: &BinaryCode) -> Result<BitVector> {
        match self {
            Instance::Defective(p) => result_disjunct(x, p),
            Instance::Complex(c) => result_superset(x, c),
            Instance::Inhibitor(i) => result_inhibitor(x, i),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Defective(p) => write!(f, "{{{p}}}"),
            Instance::Complex(c) => write!(f, "{{{c}}}"),
            Instance::Inhibitor(i) => write!(f, "{{{i}}}"),
        }
    }
}

/// Counterexample to a property. Indices are 0-based; `Display` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `x(sample)` is covered by `V(X, defectives)`.
    Covered {
        defectives: Vec<usize>,
        sample: usize,
    },
    /// No row is all-ones on `ones` and all-zeros on `zeros`.
    Unseparated { zeros: Vec<usize>, ones: Vec<usize> },
    /// No row of a q-ary code has disjoint symbol sets on `zeros` (S) and `ones` (L).
    QaryUnseparated { zeros: Vec<usize>, ones: Vec<usize> },
    /// Two codewords closer than required.
    Distance {
        first: usize,
        second: usize,
        distance: usize,
    },
    /// Code size differs from `q^k`.
    Size { expected: u64, found: usize },
    /// Two instances that must be told apart share a result vector.
    Collision {
        first: Instance,
        second: Instance,
        result: BitVector,
    },
}

struct Indices<'a>(&'a [usize]);

impl fmt::Display for Indices<'_> {
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

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Covered { defectives, sample } => {
                write!(f, "p={{{}}};u={}", Indices(defectives), sample + 1)
            }
            Witness::Unseparated { zeros, ones } | Witness::QaryUnseparated { zeros, ones } => {
                write!(f, "S={{{}}};L={{{}}}", Indices(zeros), Indices(ones))
            }
            Witness::Distance {
                first,
                second,
                distance,
            } => {
                write!(
                    f,
                    "columns={},{};distance={distance}",
                    first + 1,
                    second + 1
                )
            }
            Witness::Size { expected, found } => write!(f, "size={found};expected={expected}"),
            Witness::Collision {
                first,
                second,
                result,
            } => {
                write!(f, "{first}~{second};r={result}")
            }
        }
    }
}

fn hamming(x: &QaryCode, a: usize, b: usize) -> usize {
    (0..x.num_rows())
        .filter(|&n| x.get(n, a) != x.get(n, b))
        .count()
}

impl Witness {
    /// Re-checks a binary witness straight from the definitions, in `O(N)`
    /// vector operations. Witness kinds that do not apply to binary codes
    /// return `false`.
    pub fn confirms_binary(&self, x: &BinaryCode) -> bool {
        let check = || -> Result<bool> {
            Ok(match self {
                Witness::Covered { defectives, sample } => {
                    !defectives.contains(sample)
                        && x.disjunction_over(defectives)?.covers(x.column(*sample))?
                }
                Witness::Unseparated { zeros, ones } => {
                    !ones.is_empty()
                        && zeros.iter().all(|u| !ones.contains(u))
                        && x.disjunction_over(zeros)?
                            .covers(&x.conjunction_over(ones)?)?
                }
                Witness::Collision {
                    first,
                    second,
                    result,
                } => {
                    let distinct = match (first, second) {
                        (Instance::Inhibitor(a), Instance::Inhibitor(b)) => {
                            a.defectives() != b.defectives()
                        }
                        (a, b) => a != b,
                    };
                    distinct && &first.result(x)? == result && &second.result(x)? == result
                }
                _ => false,
            })
        };
        check().unwrap_or(false)
    }

    /// Re-checks a q-ary witness against `x`.
    pub fn confirms_qary(&self, x: &QaryCode) -> bool {
        match self {
            Witness::QaryUnseparated { zeros, ones } => {
                let in_range = zeros.iter().chain(ones).all(|&u| u < x.num_cols());
                in_range
                    && zeros.iter().all(|u| !ones.contains(u))
                    && (0..x.num_rows()).all(|n| {
                        ones.iter()
                            .any(|&a| zeros.iter().any(|&b| x.get(n, a) == x.get(n, b)))
                    })
            }
            Witness::Distance {
                first,
                second,
                distance,
            } => {
                *first < x.num_cols()
                    && *second < x.num_cols()
                    && hamming(x, *first, *second) == *distance
            }
            Witness::Size { found, .. } => *found == x.num_cols(),
            _ => false,
        }
    }
}

/// Outcome of a property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Pairs or instances examined, up to and including the first violation.
    pub pairs_checked: u64,
    pub mode: Mode,
}

impl VerifyReport {
    fn new(property: String, witness: Option<Witness>, pairs_checked: u64, mode: Mode) -> Self {
        Self {
            property,
            holds: witness.is_none(),
            witness,
            pairs_checked,
            mode,
        }
    }

    /// `HOLDS` or `FAILS witness=...`.
    pub fn verdict(&self) -> String {
        match &self.witness {
            None => "HOLDS".to_owned(),
            Some(w) => format!("FAILS witness={w}"),
        }
    }

    /// Multi-line human-readable detail.
    pub fn detail(&self) -> String {
        let mut out = format!(
            "property: {}\nresult: {}\nchecked: {}\nmode: {}\n",
            self.property,
            if self.holds { "holds" } else { "fails" },
            self.pairs_checked,
            self.mode
        );
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.verdict())
    }
}

fn check_sl_bounds(t: usize, s: usize, l: usize) -> Result<()> {
    if s == 0 || l == 0 || s + l > t {
        return Err(Error::domain(format!(
            "need s, l >= 1 and s + l <= t, got s={s}, l={l}, t={t}"
        )));
    }
    Ok(())
}

struct Violation {
    zeros: Vec<usize>,
    ones: Vec<usize>,
}

/// Runs the `(S, L)` kernel. Returns the number of pairs examined and the
/// first unseparated pair, if any.
fn search_pairs<P, Prep, Sep>(
    t: usize,
    s: usize,
    l: usize,
    prepare: Prep,
    separated: Sep,
) -> (u64, Option<Violation>)
where
    P: Send,
    Prep: Fn(&[usize]) -> P + Sync,
    Sep: Fn(&P, &[usize]) -> bool + Sync,
{
    let per_outer = binomial((t - l) as u64, s as u64);
    let total_outer = binomial(t as u64, l as u64);
    let mut outer = (0..t).combinations(l);
    let mut base = 0u64;
    loop {
        let chunk: Vec<Vec<usize>> = outer.by_ref().take(OUTER_CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let hit = chunk.par_iter().enumerate().find_map_first(|(i, ones)| {
            let prep = prepare(ones);
            let complement: Vec<usize> = (0..t).filter(|u| !ones.contains(u)).collect();
            let mut j = 0u64;
            let flow = try_for_each_combination(&complement, s, |zeros| {
                if separated(&prep, zeros) {
                    j += 1;
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(zeros.to_vec())
                }
            });
            match flow {
                ControlFlow::Break(zeros) => Some((i as u64, j, zeros, ones.clone())),
                ControlFlow::Continue(()) => None,
            }
        });
        if let Some((i, j, zeros, ones)) = hit {
            let checked = (base + i) * per_outer + j + 1;
            return (checked, Some(Violation { zeros, ones }));
        }
        base += chunk.len() as u64;
    }
    (total_outer.saturating_mul(per_outer), None)
}

fn binary_kernel(x: &BinaryCode, s: usize, l: usize) -> (u64, Option<Violation>) {
    let cols = x.columns();
    search_pairs(
        x.num_cols(),
        s,
        l,
        |ones| x.conjunction_over(ones).expect("indices in range"),
        |conj, zeros| {
            conj.words().iter().enumerate().any(|(w, &c)| {
                c != 0 && c & !zeros.iter().fold(0u64, |acc, &u| acc | cols[u].words()[w]) != 0
            })
        },
    )
}

/// Superimposed `s`-code: no codeword is covered by the disjunction of any
/// `s` others. Requires `0 < s < t`.
pub fn is_superimposed(x: &BinaryCode, s: usize) -> Result<VerifyReport> {
    let t = x.num_cols();
    if s == 0 || s >= t {
        return Err(Error::domain(format!("need 0 < s < t, got s={s}, t={t}")));
    }
    let (checked, v) = binary_kernel(x, s, 1);
    let witness = v.map(|v| Witness::Covered {
        defectives: v.zeros,
        sample: v.ones[0],
    });
    Ok(VerifyReport::new(
        format!("superimposed(s={s})"),
        witness,
        checked,
        Mode::Exhaustive,
    ))
}

/// Superimposed `(s, l)`-code: for all disjoint `S`, `L` with `|S| <= s`,
/// `|L| <= l` some row is 1 on all of `L` and 0 on all of `S`.
pub fn is_superimposed_sl(x: &BinaryCode, s: usize, l: usize) -> Result<VerifyReport> {
    check_sl_bounds(x.num_cols(), s, l)?;
    let (checked, v) = binary_kernel(x, s, l);
    let witness = v.map(|v| Witness::Unseparated {
        zeros: v.zeros,
        ones: v.ones,
    });
    Ok(VerifyReport::new(
        format!("superimposed(s={s},l={l})"),
        witness,
        checked,
        Mode::Exhaustive,
    ))
}

/// Inhibitory `(s, iota)`-code, i.e. a superimposed `(s + iota)`-code.
pub fn is_inhibitory_code(x: &BinaryCode, s: usize, iota: usize) -> Result<VerifyReport> {
    let t = x.num_cols();
    if s == 0 || s + iota > t {
        return Err(Error::domain(format!(
            "need s >= 1 and s + iota <= t, got s={s}, iota={iota}, t={t}"
        )));
    }
    // A disjunction can only involve the t-1 columns other than u.
    let mut report = is_superimposed(x, (s + iota).min(t - 1))?;
    report.property = format!("inhibitory(s={s},iota={iota})");
    Ok(report)
}

/// q-ary separating `(s, l)`-code: for all disjoint `S`, `L` some row has
/// disjoint symbol sets on `S` and `L`.
pub fn is_separating(x: &QaryCode, s: usize, l: usize) -> Result<VerifyReport> {
    check_sl_bounds(x.num_cols(), s, l)?;
    let rows = x.num_rows();
    let (checked, v) = search_pairs(
        x.num_cols(),
        s,
        l,
        |ones| -> Vec<Vec<u32>> {
            (0..rows)
                .map(|n| ones.iter().map(|&u| x.get(n, u)).collect())
                .collect()
        },
        |l_symbols, zeros| {
            l_symbols
                .iter()
                .enumerate()
                .any(|(n, syms)| zeros.iter().all(|&u| !syms.contains(&x.get(n, u))))
        },
    );
    let witness = v.map(|v| Witness::QaryUnseparated {
        zeros: v.zeros,
        ones: v.ones,
    });
    Ok(VerifyReport::new(
        format!("separating(s={s},l={l})"),
        witness,
        checked,
        Mode::Exhaustive,
    ))
}

/// Minimum pairwise Hamming distance between columns, with the first
/// (lexicographically smallest) pair attaining it.
pub fn min_distance_pair(x: &QaryCode) -> Result<(usize, usize, usize)> {
    let t = x.num_cols();
    if t < 2 {
        return Err(Error::domain("minimum distance needs at least two columns"));
    }
    let cols: Vec<Vec<u32>> = (0..t).map(|u| x.column(u)).collect();
    let best = (0..t - 1)
        .into_par_iter()
        .filter_map(|a| {
            (a + 1..t)
                .map(|b| {
                    let d = cols[a].iter().zip(&cols[b]).filter(|(p, q)| p != q).count();
                    (d, a, b)
                })
                .min()
        })
        .min()
        .expect("t >= 2");
    Ok(best)
}

pub fn min_distance(x: &QaryCode) -> Result<usize> {
    min_distance_pair(x).map(|(d, _, _)| d)
}

/// MDS check: size `q^k` and distance `n - k + 1`.
pub fn is_mds(x: &QaryCode, k: usize) -> Result<VerifyReport> {
    if k == 0 || k > x.num_rows() {
        return Err(Error::domain(format!(
            "need 1 <= k <= n, got k={k}, n={}",
            x.num_rows()
        )));
    }
    let property = format!("mds(k={k})");
    let expected = u64::from(x.alphabet_size()).checked_pow(k as u32);
    if expected != Some(x.num_cols() as u64) {
        let witness = Witness::Size {
            expected: expected.unwrap_or(u64::MAX),
            found: x.num_cols(),
        };
        return Ok(VerifyReport::new(
            property,
            Some(witness),
            0,
            Mode::Exhaustive,
        ));
    }
    let (d, a, b) = min_distance_pair(x)?;
    let t = x.num_cols() as u64;
    let witness = (d != x.num_rows() + 1 - k).then_some(Witness::Distance {
        first: a,
        second: b,
        distance: d,
    });
    Ok(VerifyReport::new(
        property,
        witness,
        t * (t - 1) / 2,
        Mode::Exhaustive,
    ))
}

/// Whether an MDS code with parameters `(q, k, n)` is guaranteed to be a
/// separating `(s, l)`-code: `n >= s*l*(k-1) + 1` and `q^k >= s + l`.
pub fn mds_separation_applies(q: u64, k: u32, n: u64, s: u64, l: u64) -> bool {
    let length_ok = match (s * l).checked_mul(u64::from(k.saturating_sub(1))) {
        Some(v) => n > v,
        None => false,
    };
    let size_ok = q.checked_pow(k).is_none_or(|size| size >= s + l);
    k >= 1 && length_ok && size_ok
}

/// Size guards for the brute-force design oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_population: usize,
    pub max_instances: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_population: 24,
            max_instances: 1_000_000,
        }
    }
}

impl OracleLimits {
    fn check(&self, t: usize, instances: u64) -> Result<()> {
        if t > self.max_population {
            return Err(Error::TooLarge(format!(
                "t={t} exceeds the oracle limit {}",
                self.max_population
            )));
        }
        if instances > self.max_instances {
            return Err(Error::TooLarge(format!(
                "{instances} instances exceed the oracle limit {}",
                self.max_instances
            )));
        }
        Ok(())
    }
}

/// Injectivity of `instance -> result` over a stream. `same_class` decides
/// whether two instances are allowed to collide.
fn injectivity<I>(
    x: &BinaryCode,
    property: String,
    instances: I,
    same_class: impl Fn(&Instance, &Instance) -> bool,
) -> Result<VerifyReport>
where
    I: Iterator<Item = Instance>,
{
    let mut seen: HashMap<BitVector, Instance> = HashMap::new();
    let mut checked = 0u64;
    for inst in instances {
        checked += 1;
        let r = inst.result(x)?;
        match seen.get(&r) {
            Some(prev) if !same_class(prev, &inst) => {
                let witness = Witness::Collision {
                    first: prev.clone(),
                    second: inst,
                    result: r,
                };
                return Ok(VerifyReport::new(
                    property,
                    Some(witness),
                    checked,
                    Mode::Exhaustive,
                ));
            }
            Some(_) => {}
            None => {
                seen.insert(r, inst);
            }
        }
    }
    Ok(VerifyReport::new(property, None, checked, Mode::Exhaustive))
}

/// Brute-force disjunct `s`-design check: distinct sets with `|p| <= s`
/// give distinct results.
pub fn oracle_disjunct_design(x: &BinaryCode, s: usize) -> Result<VerifyReport> {
    oracle_disjunct_design_with(x, s, &OracleLimits::default())
}

pub fn oracle_disjunct_design_with(
    x: &BinaryCode,
    s: usize,
    limits: &OracleLimits,
) -> Result<VerifyReport> {
    let t = x.num_cols();
    let sets = enumerate_defective_sets(t, s)?;
    limits.check(t, binomial_sum(t as u64, 0, s as u64))?;
    injectivity(
        x,
        format!("disjunct-design(s={s})"),
        sets.map(Instance::Defective),
        |a, b| a == b,
    )
}

/// Brute-force superset `(s, l)`-design check over all valid complexes.
pub fn oracle_superset_design(x: &BinaryCode, s: usize, l: usize) -> Result<VerifyReport> {
    oracle_superset_design_with(x, s, l, &OracleLimits::default())
}

pub fn oracle_superset_design_with(
    x: &BinaryCode,
    s: usize,
    l: usize,
    limits: &OracleLimits,
) -> Result<VerifyReport> {
    let t = x.num_cols();
    let complexes = enumerate_complexes(t, s, l)?;
    let parts = binomial_sum(t as u64, 1, l as u64);
    limits.check(t, binomial_sum(parts, 0, s as u64))?;
    injectivity(
        x,
        format!("superset-design(s={s},l={l})"),
        complexes.map(Instance::Complex),
        |a, b| a == b,
    )
}

/// Brute-force inhibitory `(s, iota)`-design check: pairs with different
/// defective sets give different results; pairs sharing `p` may collide.
pub fn oracle_inhibitory_design(x: &BinaryCode, s: usize, iota: usize) -> Result<VerifyReport> {
    oracle_inhibitory_design_with(x, s, iota, &OracleLimits::default())
}

pub fn oracle_inhibitory_design_with(
    x: &BinaryCode,
    s: usize,
    iota: usize,
    limits: &OracleLimits,
) -> Result<VerifyReport> {
    let t = x.num_cols();
    let pairs = enumerate_pi(t, s, iota)?;
    let size = (1..=s as u64).fold(0u64, |acc, a| {
        acc.saturating_add(binomial(t as u64, a).saturating_mul(binomial_sum(
            t as u64 - a,
            0,
            iota as u64,
        )))
    });
    limits.check(t, size)?;
    injectivity(
        x,
        format!("inhibitor-design(s={s},iota={iota})"),
        pairs.map(Instance::Inhibitor),
        |a, b| match (a, b) {
            (Instance::Inhibitor(a), Instance::Inhibitor(b)) => a.defectives() == b.defectives(),
            _ => false,
        },
    )
}

/// Random disjoint `(S, L)` pair for trial `trial`, drawn from its own
/// ChaCha stream so trials can run in any order.
pub fn sample_pair(
    t: usize,
    s: usize,
    l: usize,
    seed: u64,
    trial: u64,
) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut zeros = sample(&mut rng, t, s).into_vec();
    zeros.sort_unstable();
    loop {
        let mut ones = sample(&mut rng, t, l).into_vec();
        if ones.iter().all(|u| zeros.binary_search(u).is_err()) {
            ones.sort_unstable();
            return (zeros, ones);
        }
    }
}

/// Randomized `(s, l)` check on `trials` seeded random pairs.
pub fn spot_check_sl(
    x: &BinaryCode,
    s: usize,
    l: usize,
    trials: u64,
    seed: u64,
) -> Result<VerifyReport> {
    let t = x.num_cols();
    check_sl_bounds(t, s, l)?;
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let separated = |zeros: &[usize], ones: &[usize]| {
        let conj = x.conjunction_over(ones).expect("indices in range");
        !x.disjunction_over(zeros)
            .expect("indices in range")
            .covers(&conj)
            .expect("same length")
    };
    let mode = Mode::Randomized { seed, trials };
    let property = format!("superimposed(s={s},l={l})");
    let mut start = 0;
    while start < trials {
        let end = (start + TRIAL_CHUNK).min(trials);
        let hit = (start..end).into_par_iter().find_map_first(|trial| {
            let (zeros, ones) = sample_pair(t, s, l, seed, trial);
            (!separated(&zeros, &ones)).then_some((trial, zeros, ones))
        });
        if let Some((trial, zeros, ones)) = hit {
            let witness = Witness::Unseparated { zeros, ones };
            return Ok(VerifyReport::new(property, Some(witness), trial + 1, mode));
        }
        start = end;
    }
    Ok(VerifyReport::new(property, None, trials, mode))
}
