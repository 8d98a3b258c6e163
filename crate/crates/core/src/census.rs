//! Exhaustive enumeration of filling permutations for small `n`, orbit
//! counting under the twist group, and census files.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::filling::{opp, tau_apply, validate, FillingPermutation};
use crate::perm::Permutation;
use crate::surgery::{find_decompositions, SurgeryError};
use crate::twist::{self, TwistError, TwistGroup};

pub const DEFAULT_MAX_N: usize = 7;
pub const MAX_N_ENV: &str = "FILLPERM_MAX_N";

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("n={n} exceeds the census bound {max} (set {MAX_N_ENV} to raise it)")]
    BoundExceeded { n: usize, max: usize },
    #[error("n must be positive")]
    ZeroN,
    #[error("orbit counting needs odd n, got {n}")]
    EvenN { n: usize },
    #[error("the bound is defined only for genus above 2, got {g}")]
    Domain { g: usize },
    #[error("invalid {MAX_N_ENV} value {0:?}")]
    BadEnv(String),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error("census file line {line}: {source}")]
    Parse { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The enumeration bound, from the environment when set.
pub fn configured_max_n() -> Result<usize, CensusError> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CensusError::BadEnv(v)),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

#[derive(Clone)]
struct Search {
    n: usize,
    single_cycle: bool,
    sigma: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl Search {
    fn new(n: usize, single_cycle: bool) -> Self {
        Search {
            n,
            single_cycle,
            sigma: vec![0; 4 * n + 1],
            used: vec![false; 4 * n + 1],
            trail: Vec::with_capacity(4 * n),
        }
    }

    /// Sets `σ(e) = f` and everything it forces through `σ(Q^N(f)) = τ(e)`.
    fn assign(&mut self, e: usize, f: usize) -> bool {
        let mut pending = vec![(e, f)];
        while let Some((e, f)) = pending.pop() {
            if self.sigma[e] != 0 {
                if self.sigma[e] != f {
                    return false;
                }
                continue;
            }
            if self.used[f] {
                return false;
            }
            self.sigma[e] = f;
            self.used[f] = true;
            self.trail.push(e);
            if self.single_cycle && self.closes_short_cycle(e) {
                return false;
            }
            pending.push((opp(f, self.n), tau_apply(e, self.n)));
        }
        true
    }

    fn closes_short_cycle(&self, e: usize) -> bool {
        let m = 4 * self.n;
        let mut x = self.sigma[e];
        let mut len = 1;
        while x != 0 && x != e {
            x = self.sigma[x];
            len += 1;
        }
        x == e && len < m
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail is longer than mark");
            self.used[self.sigma[e]] = false;
            self.sigma[e] = 0;
        }
    }

    fn candidates(&self, e: usize) -> Vec<usize> {
        let start = if e % 2 == 1 { 2 } else { 1 };
        (start..=4 * self.n).step_by(2).filter(|&f| !self.used[f]).collect()
    }

    fn solve(&mut self, out: &mut Vec<Permutation>) {
        let Some(e) = (1..=4 * self.n).find(|&e| self.sigma[e] == 0) else {
            out.push(Permutation::from_images(self.sigma[1..].to_vec()).expect("complete assignment"));
            return;
        };
        for f in self.candidates(e) {
            let mark = self.trail.len();
            if self.assign(e, f) {
                self.solve(out);
            }
            self.undo(mark);
        }
    }
}

/// Every filling permutation on `4n` symbols, sorted, optionally only single cycles.
pub fn enumerate_filling(n: usize, single_cycle: bool) -> Result<Vec<Permutation>, CensusError> {
    enumerate_filling_bounded(n, single_cycle, configured_max_n()?)
}

pub fn enumerate_filling_bounded(n: usize, single_cycle: bool, max_n: usize) -> Result<Vec<Permutation>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroN);
    }
    if n > max_n {
        return Err(CensusError::BoundExceeded { n, max: max_n });
    }
    let root = Search::new(n, single_cycle);
    let mut out: Vec<Permutation> = root
        .candidates(1)
        .into_par_iter()
        .flat_map_iter(|f| {
            let mut s = root.clone();
            let mut found = Vec::new();
            if s.assign(1, f) {
                s.solve(&mut found);
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

/// One twist-group orbit of solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub c: usize,
    pub genus: usize,
    pub canonical_form: Vec<usize>,
    pub orbit_size_raw: usize,
    pub decomposable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub raw_count: usize,
    pub records: Vec<CensusRecord>,
}

impl Census {
    pub fn orbit_count(&self) -> usize {
        self.records.len()
    }
}

/// Groups solutions into twist-group orbits, sorted by canonical form.
pub fn classify(n: usize, solutions: &[Permutation]) -> Result<Census, CensusError> {
    let group = TwistGroup::new(n)?;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut records = Vec::new();
    for sigma in solutions {
        if seen.contains(sigma) {
            continue;
        }
        let fp = validate(sigma.clone(), Some(n)).expect("enumerated solutions validate");
        let orbit = group.orbit(&fp)?;
        seen.extend(orbit.iter().cloned());
        let canonical = orbit[0].clone();
        let rep = validate(canonical.clone(), Some(n)).expect("conjugates validate");
        let decomposable = rep.is_minimal() && !find_decompositions(&rep)?.is_empty();
        records.push(CensusRecord {
            n,
            c: rep.region_count(),
            genus: rep.genus(),
            canonical_form: canonical.images().to_vec(),
            orbit_size_raw: orbit.len(),
            decomposable,
        });
    }
    records.sort_by(|a, b| a.canonical_form.cmp(&b.canonical_form));
    Ok(Census {
        n,
        raw_count: solutions.len(),
        records,
    })
}

pub fn census(n: usize, single_cycle: bool) -> Result<Census, CensusError> {
    let solutions = enumerate_filling(n, single_cycle)?;
    classify(n, &solutions)
}

/// Number of minimal filling pairs of genus `(n+1)/2` up to homeomorphism.
pub fn count_orbits(n: usize) -> Result<Census, CensusError> {
    if n.is_multiple_of(2) {
        return Err(CensusError::EvenN { n });
    }
    census(n, true)
}

/// Whether conjugating any solution by any generator lands back in the set.
pub fn is_closed_under_twists(n: usize, solutions: &[Permutation]) -> bool {
    let g = twist::generators(n);
    let set: HashSet<&Permutation> = solutions.iter().collect();
    solutions.par_iter().all(|s| {
        [&g.kappa, &g.delta, &g.eta, &g.mu]
            .iter()
            .all(|t| set.contains(&s.conjugate_by(t)))
    })
}

/// `2^{2g-2} (4g-5) (2g-3)!`.
pub fn upper_bound(g: usize) -> Result<BigUint, CensusError> {
    if g <= 2 {
        return Err(CensusError::Domain { g });
    }
    let factorial: BigUint = (1..=(2 * g - 3) as u64).map(BigUint::from).product();
    Ok((BigUint::from(1u8) << (2 * g - 2)) * BigUint::from(4 * g - 5) * factorial)
}

pub fn write_census<W: Write>(mut w: W, records: &[CensusRecord]) -> Result<(), CensusError> {
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(std::io::Error::from)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_census<R: BufRead>(r: R) -> Result<Vec<CensusRecord>, CensusError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| CensusError::Parse { line: i + 1, source })?);
    }
    Ok(out)
}

/// Validates a record's canonical form.
pub fn record_permutation(r: &CensusRecord) -> Option<FillingPermutation> {
    let sigma = Permutation::from_images(r.canonical_form.clone()).ok()?;
    validate(sigma, Some(r.n)).ok()
}
