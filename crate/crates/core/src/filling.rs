//! Filling permutations: the fixed permutations `Q` and `τ`, the defining
//! equation, edge labels, genus, vertices, green vertices and `Z_k` pieces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillingError {
    #[error("intersection count must be positive")]
    ZeroIntersections,
    #[error("size {size} is not a multiple of 4")]
    SizeNotMultipleOf4 { size: usize },
    #[error("size {size} does not match n={n} (expected {})", 4 * n)]
    SizeMismatch { size: usize, n: usize },
    #[error("alternation fails at {symbol}: it maps to {image} of the same parity")]
    AlternationViolation { symbol: usize, image: usize },
    #[error("defining equation fails at {symbol}")]
    EquationViolation { symbol: usize },
    #[error("symbol {symbol} is outside 1..={}", 4 * n)]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("arc index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid type {quad:?}: entries must be even, at least 4, and sum to a multiple of 8")]
    InvalidType { quad: [usize; 4] },
}

/// `Q = (1,2,..,4n)`.
pub fn big_q(n: usize) -> Permutation {
    let m = 4 * n;
    Permutation::from_images((1..=m).map(|e| e % m + 1).collect()).expect("shift is a bijection")
}

/// `Q^{2n}` as a permutation: every symbol goes to its opposite.
pub fn opposite_map(n: usize) -> Permutation {
    Permutation::from_images((1..=4 * n).map(|e| opp(e, n)).collect()).expect("opposite is a bijection")
}

/// `τ`: positive odds and evens cycle forward, negative odds and evens backward.
pub fn tau(n: usize) -> Permutation {
    Permutation::from_images((1..=4 * n).map(|e| tau_apply(e, n)).collect()).expect("tau is a bijection")
}

pub(crate) fn tau_apply(e: usize, n: usize) -> usize {
    if e <= 2 * n {
        if e + 2 > 2 * n {
            e + 2 - 2 * n
        } else {
            e + 2
        }
    } else if e < 2 * n + 3 {
        e + 2 * n - 2
    } else {
        e - 2
    }
}

/// `τ^m(e)`.
pub(crate) fn tau_power(e: usize, m: usize, n: usize) -> usize {
    let m = m % n;
    if e <= 2 * n {
        (e - 1 + 2 * m) % (2 * n) + 1
    } else {
        let off = e - 2 * n - 1;
        (off + 2 * n * m - 2 * m) % (2 * n) + 2 * n + 1
    }
}

/// Unchecked opposite: `((e + 2n - 1) mod 4n) + 1`.
pub(crate) fn opp(e: usize, n: usize) -> usize {
    (e + 2 * n - 1) % (4 * n) + 1
}

pub(crate) fn is_positive(e: usize, n: usize) -> bool {
    e <= 2 * n
}

pub fn opposite(e: usize, n: usize) -> Result<usize, FillingError> {
    check_symbol(e, n)?;
    Ok(opp(e, n))
}

fn check_symbol(e: usize, n: usize) -> Result<(), FillingError> {
    if e == 0 || e > 4 * n {
        Err(FillingError::SymbolOutOfRange { symbol: e, n })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curve {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

/// Decoded meaning of an edge symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeInfo {
    pub curve: Curve,
    pub index: usize,
    pub orientation: Orientation,
}

pub fn edge_info(e: usize, n: usize) -> Result<EdgeInfo, FillingError> {
    check_symbol(e, n)?;
    let (orientation, base) = if e <= 2 * n {
        (Orientation::Positive, e)
    } else {
        (Orientation::Negative, e - 2 * n)
    };
    let curve = if base % 2 == 1 { Curve::Alpha } else { Curve::Beta };
    Ok(EdgeInfo {
        curve,
        index: base.div_ceil(2),
        orientation,
    })
}

pub fn edge_number(info: EdgeInfo, n: usize) -> Result<usize, FillingError> {
    if info.index == 0 || info.index > n {
        return Err(FillingError::IndexOutOfRange { index: info.index, n });
    }
    let base = match info.curve {
        Curve::Alpha => 2 * info.index - 1,
        Curve::Beta => 2 * info.index,
    };
    Ok(match info.orientation {
        Orientation::Positive => base,
        Orientation::Negative => base + 2 * n,
    })
}

/// Region sizes around a green vertex, kept in the lexicographically least rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZType {
    quad: [usize; 4],
}

impl ZType {
    pub fn new(quad: [usize; 4]) -> Result<Self, FillingError> {
        let sum: usize = quad.iter().sum();
        if quad.iter().any(|&q| q % 2 == 1 || q < 4) || !sum.is_multiple_of(8) || sum < 16 {
            return Err(FillingError::InvalidType { quad });
        }
        Ok(ZType {
            quad: canonical_rotation(quad),
        })
    }

    pub fn quad(&self) -> [usize; 4] {
        self.quad
    }

    /// Piece genus `k` with `r+s+t+u = 8k+8`.
    pub fn k(&self) -> usize {
        self.quad.iter().sum::<usize>() / 8 - 1
    }
}

pub fn canonical_rotation<T: Ord + Copy>(quad: [T; 4]) -> [T; 4] {
    (0..4)
        .map(|r| [quad[r], quad[(r + 1) % 4], quad[(r + 2) % 4], quad[(r + 3) % 4]])
        .min()
        .expect("four rotations")
}

/// A permutation known to satisfy the filling conditions for `n` intersections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FillingPermutation {
    n: usize,
    sigma: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInfo {
    pub n: usize,
    pub genus: usize,
    pub region_count: usize,
    pub regions: Vec<Vec<usize>>,
    pub vertices: Vec<[usize; 4]>,
    pub green_vertices: Vec<[usize; 4]>,
}

/// Checks alternation and `σ(Q^N(σ(e))) = τ(e)`. With `n = None` it is read off the size.
pub fn validate(sigma: Permutation, n: Option<usize>) -> Result<FillingPermutation, FillingError> {
    let size = sigma.size();
    if !size.is_multiple_of(4) {
        return Err(FillingError::SizeNotMultipleOf4 { size });
    }
    let n = match n {
        Some(0) => return Err(FillingError::ZeroIntersections),
        Some(n) if 4 * n != size => return Err(FillingError::SizeMismatch { size, n }),
        Some(n) => n,
        None if size == 0 => return Err(FillingError::ZeroIntersections),
        None => size / 4,
    };
    for e in 1..=size {
        let image = sigma.apply(e);
        if (image + e).is_multiple_of(2) {
            return Err(FillingError::AlternationViolation { symbol: e, image });
        }
    }
    for e in 1..=size {
        if sigma.apply(opp(sigma.apply(e), n)) != tau_apply(e, n) {
            return Err(FillingError::EquationViolation { symbol: e });
        }
    }
    Ok(FillingPermutation { n, sigma })
}

impl FillingPermutation {
    pub fn parse(text: &str, n: usize) -> Result<Self, crate::Error> {
        let sigma = Permutation::parse_cycles(text, 4 * n)?;
        Ok(validate(sigma, Some(n))?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        4 * self.n
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn into_sigma(self) -> Permutation {
        self.sigma
    }

    pub fn apply(&self, e: usize) -> usize {
        self.sigma.apply(e)
    }

    pub fn opposite(&self, e: usize) -> usize {
        opp(e, self.n)
    }

    pub fn regions(&self) -> Vec<Vec<usize>> {
        self.sigma.cycles()
    }

    pub fn region_count(&self) -> usize {
        self.sigma.cycle_count()
    }

    pub fn genus(&self) -> usize {
        (self.n + 2 - self.region_count()) / 2
    }

    pub fn is_minimal(&self) -> bool {
        self.region_count() == 1
    }

    /// Orbit of `e` under `Q^N ∘ σ`, starting at `e`.
    pub fn vertex_orbit(&self, e: usize) -> [usize; 4] {
        let mut orbit = [e; 4];
        for i in 1..4 {
            orbit[i] = opp(self.apply(orbit[i - 1]), self.n);
        }
        orbit
    }

    /// All `n` vertices, each listed in orbit order from its least left edge.
    pub fn vertices(&self) -> Vec<[usize; 4]> {
        let mut seen = vec![false; self.size() + 1];
        let mut out = Vec::with_capacity(self.n);
        for e in 1..=self.size() {
            if seen[e] {
                continue;
            }
            let orbit = self.vertex_orbit(e);
            for &f in &orbit {
                seen[f] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn region_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.size() + 1];
        for (r, cycle) in self.regions().iter().enumerate() {
            for &e in cycle {
                index[e] = r;
            }
        }
        index
    }

    pub fn green_vertices(&self) -> Vec<[usize; 4]> {
        let index = self.region_index();
        let count = self.region_count();
        self.vertices()
            .into_iter()
            .filter(|v| {
                let mut hit: Vec<usize> = v.iter().map(|&e| index[e]).collect();
                hit.sort_unstable();
                hit.dedup();
                hit.len() == count
            })
            .collect()
    }

    pub fn surface_info(&self) -> SurfaceInfo {
        SurfaceInfo {
            n: self.n,
            genus: self.genus(),
            region_count: self.region_count(),
            regions: self.regions(),
            vertices: self.vertices(),
            green_vertices: self.green_vertices(),
        }
    }

    /// Whether the orbit of `2n-1` is `{2n-1, 2n, 2n+1, 2n+2}`.
    pub fn is_green_normalized(&self) -> bool {
        let n = self.n;
        let mut orbit = self.vertex_orbit(2 * n - 1);
        orbit.sort_unstable();
        orbit == [2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2]
    }

    pub fn is_z_piece(&self, k: usize) -> bool {
        self.n == 2 * k + 2 && self.genus() == k && self.region_count() == 4 && !self.green_vertices().is_empty()
    }

    /// Region sizes met by the green vertex orbit, in orbit order.
    /// Uses the orbit of `2n-1` when normalized, else the first green vertex.
    pub fn z_type(&self) -> Option<ZType> {
        if self.region_count() != 4 {
            return None;
        }
        let orbit = if self.is_green_normalized() {
            self.vertex_orbit(2 * self.n - 1)
        } else {
            *self.green_vertices().first()?
        };
        let sizes = self.sigma.cycles();
        let index = self.region_index();
        let quad = orbit.map(|e| sizes[index[e]].len());
        ZType::new(quad).ok()
    }

    pub fn conjugate_by(&self, t: &Permutation) -> Result<FillingPermutation, FillingError> {
        validate(self.sigma.conjugate_by(t), Some(self.n))
    }
}
