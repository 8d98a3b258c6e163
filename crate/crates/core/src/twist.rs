//! The relabeling group generated by `κ, δ, η, μ` and conjugacy inside it.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::filling::FillingPermutation;
use crate::perm::Permutation;

pub const DEFAULT_MAX_N: usize = 16;
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("n={n} exceeds the twist group bound {max}")]
    NTooLarge { n: usize, max: usize },
    #[error("twist group closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("intersection counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("group built for n={group} used with n={input}")]
    WrongGroup { group: usize, input: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub kappa: Permutation,
    pub delta: Permutation,
    pub eta: Permutation,
    pub mu: Permutation,
}

fn from_cycles(n: usize, cycles: Vec<Vec<usize>>) -> Permutation {
    Permutation::from_cycles(4 * n, &cycles).expect("generator cycles are disjoint and in range")
}

/// `κ` cycles the positive and the negative odd labels forward.
pub fn kappa(n: usize) -> Permutation {
    from_cycles(
        n,
        vec![(1..2 * n).step_by(2).collect(), (2 * n + 1..4 * n).step_by(2).collect()],
    )
}

/// `δ` cycles the positive and the negative even labels forward.
pub fn delta(n: usize) -> Permutation {
    from_cycles(
        n,
        vec![
            (2..=2 * n).step_by(2).collect(),
            (2 * n + 2..=4 * n).step_by(2).collect(),
        ],
    )
}

/// Swaps each `α` label with `β` label: `(1,2)(3,4)..(4n-1,4n)`.
pub fn mu(n: usize) -> Permutation {
    from_cycles(n, (1..=2 * n).map(|i| vec![2 * i - 1, 2 * i]).collect())
}

/// `(2i-1, 2i-1+2n)` for each `i`. Conjugating by it does not preserve the
/// defining equation once `n > 2`; see [`eta`] for the group generator.
pub fn literal_eta(n: usize) -> Permutation {
    from_cycles(n, (1..=n).map(|i| vec![2 * i - 1, 2 * i - 1 + 2 * n]).collect())
}

/// Reverses `α`: arc `i` goes to the negative copy of arc `n+1-i`.
pub fn eta(n: usize) -> Permutation {
    from_cycles(
        n,
        (1..=n)
            .map(|i| vec![2 * i - 1, 2 * (n + 1 - i) - 1 + 2 * n])
            .filter(|c| c[0] != c[1])
            .collect(),
    )
}

/// Generators with `η` replaced by its printed form.
pub fn printed_generators(n: usize) -> Generators {
    Generators {
        kappa: kappa(n),
        delta: delta(n),
        eta: literal_eta(n),
        mu: mu(n),
    }
}

/// Generators of the group actually used for orbit tests.
pub fn generators(n: usize) -> Generators {
    Generators {
        kappa: kappa(n),
        delta: delta(n),
        eta: eta(n),
        mu: mu(n),
    }
}

/// All elements of `⟨κ, δ, η, μ⟩` on `4n` symbols, sorted by one-line form.
#[derive(Clone, Debug)]
pub struct TwistGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl TwistGroup {
    pub fn new(n: usize) -> Result<Self, TwistError> {
        Self::with_limits(n, DEFAULT_MAX_N, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_limits(n: usize, max_n: usize, cap: usize) -> Result<Self, TwistError> {
        if n > max_n {
            return Err(TwistError::NTooLarge { n, max: max_n });
        }
        let g = generators(n);
        let gens = [g.kappa, g.delta, g.eta, g.mu];
        let id = Permutation::identity(4 * n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for h in &gens {
                    let y = h * x;
                    if !seen.contains(&y) {
                        if seen.len() >= cap {
                            return Err(TwistError::GroupTooLarge { cap });
                        }
                        seen.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(TwistGroup { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    fn check(&self, fp: &FillingPermutation) -> Result<(), TwistError> {
        if fp.n() != self.n {
            return Err(TwistError::WrongGroup {
                group: self.n,
                input: fp.n(),
            });
        }
        Ok(())
    }

    /// Some `t` with `t ∘ σ1 ∘ t⁻¹ = σ2`, the least in one-line order.
    pub fn are_equivalent(
        &self,
        fp1: &FillingPermutation,
        fp2: &FillingPermutation,
    ) -> Result<Option<Equivalence>, TwistError> {
        if fp1.n() != fp2.n() {
            return Err(TwistError::SizeMismatch {
                left: fp1.n(),
                right: fp2.n(),
            });
        }
        self.check(fp1)?;
        let (s1, s2) = (fp1.sigma(), fp2.sigma());
        let witness = self
            .elements
            .par_iter()
            .find_first(|t| (1..=s1.size()).all(|e| t.apply(s1.apply(e)) == s2.apply(t.apply(e))))
            .cloned();
        Ok(witness.map(|witness| Equivalence {
            witness,
            orbit_certified: fp1.is_minimal() && fp2.is_minimal(),
        }))
    }

    /// Least one-line form over the conjugacy class `{t ∘ σ ∘ t⁻¹}`.
    pub fn canonical_form(&self, fp: &FillingPermutation) -> Result<Permutation, TwistError> {
        self.check(fp)?;
        Ok(self
            .elements
            .par_iter()
            .map(|t| fp.sigma().conjugate_by(t))
            .min()
            .expect("group contains the identity"))
    }

    /// The distinct conjugates of `fp`, sorted.
    pub fn orbit(&self, fp: &FillingPermutation) -> Result<Vec<Permutation>, TwistError> {
        self.check(fp)?;
        let mut out: Vec<Permutation> = self.elements.iter().map(|t| fp.sigma().conjugate_by(t)).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// A conjugating witness. `orbit_certified` is false when either input is not
/// minimal: the witness then shows equivalent labelings but its absence would
/// not prove the surfaces differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub witness: Permutation,
    pub orbit_certified: bool,
}

pub fn twist_group(n: usize) -> Result<TwistGroup, TwistError> {
    TwistGroup::new(n)
}

pub fn are_equivalent(fp1: &FillingPermutation, fp2: &FillingPermutation) -> Result<Option<Equivalence>, TwistError> {
    if fp1.n() != fp2.n() {
        return Err(TwistError::SizeMismatch {
            left: fp1.n(),
            right: fp2.n(),
        });
    }
    TwistGroup::new(fp1.n())?.are_equivalent(fp1, fp2)
}

pub fn canonical_form(fp: &FillingPermutation) -> Result<Permutation, TwistError> {
    TwistGroup::new(fp.n())?.canonical_form(fp)
}
