//! Seeded Monte-Carlo round trips: draw a hidden instance, compute its
//! result vector, decode, compare.
//!
//! Trial `i` draws from ChaCha8 stream `i` under the given seed, so reports
//! are identical for any thread count.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitcore::BinaryCode;
use crate::decode::{decode_disjunct, decode_inhibitor, decode_superset};
use crate::error::{Error, Result};
use crate::models::{
    result_disjunct, result_inhibitor, result_superset, Complex, DefectiveSet, InhibitorInstance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Disjunct { s: usize },
    Superset { s: usize, l: usize },
    Inhibitor { s: usize, iota: usize },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Disjunct { .. } => "disjunct",
            Model::Superset { .. } => "superset",
            Model::Inhibitor { .. } => "inhibitor",
        }
    }

    fn validate(&self, t: usize) -> Result<()> {
        let ok = match *self {
            Model::Disjunct { s } => s > 0 && s < t,
            Model::Superset { s, l } => s > 0 && l > 0 && s + l <= t,
            Model::Inhibitor { s, iota } => s > 0 && s + iota <= t,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("bounds {self} invalid for t={t}")))
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Disjunct { s } => write!(f, "disjunct(s={s})"),
            Model::Superset { s, l } => write!(f, "superset(s={s},l={l})"),
            Model::Inhibitor { s, iota } => write!(f, "inhibitor(s={s},iota={iota})"),
        }
    }
}

fn sorted_sample(rng: &mut ChaCha8Rng, t: usize, k: usize) -> Vec<usize> {
    let mut v = sample(rng, t, k).into_vec();
    v.sort_unstable();
    v
}

/// Uniform size in `0..=s`, then a uniform subset of that size.
pub fn random_defective_set(rng: &mut ChaCha8Rng, t: usize, s: usize) -> DefectiveSet {
    let k = rng.random_range(0..=s);
    DefectiveSet::new(t, sorted_sample(rng, t, k)).expect("distinct in-range sample")
}

/// Uniform part count in `0..=s`, each part of uniform size in `1..=l`;
/// redrawn until the parts form an antichain.
pub fn random_complex(rng: &mut ChaCha8Rng, t: usize, s: usize, l: usize) -> Complex {
    let k = rng.random_range(0..=s);
    loop {
        let parts = (0..k)
            .map(|_| {
                let size = rng.random_range(1..=l);
                sorted_sample(rng, t, size)
            })
            .collect();
        if let Ok(c) = Complex::new(t, parts) {
            return c;
        }
    }
}

/// `|p|` uniform in `1..=s`, `|I|` uniform in `0..=iota`, drawn jointly
/// without replacement.
pub fn random_inhibitor_instance(
    rng: &mut ChaCha8Rng,
    t: usize,
    s: usize,
    iota: usize,
) -> InhibitorInstance {
    let a = rng.random_range(1..=s);
    let b = rng.random_range(0..=iota);
    let drawn = sample(rng, t, a + b).into_vec();
    InhibitorInstance::new(t, drawn[..a].to_vec(), drawn[a..].to_vec())
        .expect("disjoint by construction")
}

/// First failing trial of a simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    pub instance: String,
    pub result: String,
    pub decoded: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub model: Model,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub first_failure: Option<Failure>,
}

impl SimulationReport {
    pub fn failures(&self) -> u64 {
        self.trials - self.successes
    }
}

impl fmt::Display for SimulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model: {}", self.model)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "successes: {}", self.successes)?;
        writeln!(f, "failures: {}", self.failures())?;
        if let Some(fail) = &self.first_failure {
            writeln!(
                f,
                "first_failure: trial={} instance={:?} result={} decoded={:?}",
                fail.trial, fail.instance, fail.result, fail.decoded
            )?;
        }
        Ok(())
    }
}

fn run_trial(x: &BinaryCode, model: Model, seed: u64, trial: u64) -> Result<Option<Failure>> {
    let t = x.num_cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (instance, result, decoded, ok) = match model {
        Model::Disjunct { s } => {
            let p = random_defective_set(&mut rng, t, s);
            let r = result_disjunct(x, &p)?;
            let d = decode_disjunct(x, &r, s)?;
            let ok = d == p;
            (p.to_string(), r, d.to_string(), ok)
        }
        Model::Superset { s, l } => {
            let p = random_complex(&mut rng, t, s, l);
            let r = result_superset(x, &p)?;
            let d = decode_superset(x, &r, s, l)?;
            let ok = d == p;
            (p.to_string(), r, d.to_string(), ok)
        }
        Model::Inhibitor { s, iota } => {
            let inst = random_inhibitor_instance(&mut rng, t, s, iota);
            let r = result_inhibitor(x, &inst)?;
            let d = decode_inhibitor(x, &r, s, iota)?;
            let ok = d.members() == inst.defectives();
            (inst.to_string(), r, d.to_string(), ok)
        }
    };
    Ok((!ok).then(|| Failure {
        trial,
        instance,
        result: result.to_string(),
        decoded,
    }))
}

/// Runs `trials` seeded round trips of `model` against `x`.
pub fn simulate(x: &BinaryCode, model: Model, trials: u64, seed: u64) -> Result<SimulationReport> {
    model.validate(x.num_cols())?;
    let outcomes: Vec<Option<Failure>> = (0..trials)
        .into_par_iter()
        .map(|trial| run_trial(x, model, seed, trial))
        .collect::<Result<_>>()?;
    let failures = outcomes.iter().filter(|o| o.is_some()).count() as u64;
    Ok(SimulationReport {
        model,
        seed,
        trials,
        successes: trials - failures,
        first_failure: outcomes.into_iter().flatten().next(),
    })
}
