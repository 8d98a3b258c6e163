use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{require_minimal, verify_separating, CycleIndex, SurgeryError};
use crate::filling::{is_positive, opp, tau_power, FillingPermutation};

/// A witness that a minimal `F_g` splits as `F_l # Z_k`: anchors where the
/// separating curve crosses the polygon, and the region sizes `(r,s,t,u)` of
/// the cut-off piece, listed in anchor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub k: usize,
    pub l: usize,
    pub x: usize,
    pub a: usize,
    pub y: usize,
    pub b: usize,
    #[serde(rename = "type")]
    pub quad: [usize; 4],
}

impl Decomposition {
    pub fn anchors(&self) -> [usize; 4] {
        [self.x, self.a, self.y, self.b]
    }

    /// Rotates anchors and type together so that `x` is the positive odd anchor.
    pub fn canonical(self, n: usize) -> Self {
        let anchors = self.anchors();
        let r = (0..4)
            .find(|&r| anchors[r] % 2 == 1 && is_positive(anchors[r], n))
            .unwrap_or(0);
        let at = |i: usize| (anchors[(r + i) % 4], self.quad[(r + i) % 4]);
        let (x, p) = at(0);
        let (a, q) = at(1);
        let (y, s) = at(2);
        let (b, t) = at(3);
        Decomposition {
            x,
            a,
            y,
            b,
            quad: [p, q, s, t],
            ..self
        }
    }

    /// Reads the type off the anchors: each run goes from an anchor to the
    /// opposite of the next one. Fails unless the result satisfies the conditions.
    pub fn from_anchors(fp: &FillingPermutation, k: usize, anchors: [usize; 4]) -> Result<Self, SurgeryError> {
        require_minimal(fp)?;
        for &e in &anchors {
            if e == 0 || e > fp.size() {
                return Err(SurgeryError::AnchorOutOfRange {
                    symbol: e,
                    size: fp.size(),
                });
            }
        }
        let n = fp.n();
        let index = CycleIndex::new(fp);
        let m = index.len();
        let quad: [usize; 4] = std::array::from_fn(|c| {
            let end = opp(anchors[(c + 1) % 4], n);
            (index.pos(end) + m - index.pos(anchors[c])) % m + 1
        });
        if !check_decomposition(fp, anchors, k, quad)? {
            return Err(SurgeryError::InvalidDecomposition);
        }
        let [x, a, y, b] = anchors;
        Ok(Decomposition {
            k,
            l: fp.genus() - k,
            x,
            a,
            y,
            b,
            quad,
        })
    }

    /// Pieces of genus one fall outside the worked cases and are reported with a flag.
    pub fn is_genus_one_piece(&self) -> bool {
        self.k == 1
    }

    fn sort_key(&self) -> (usize, [usize; 4], usize, usize, usize, usize) {
        (self.k, self.quad, self.x, self.a, self.y, self.b)
    }
}

/// All ordered quadruples of even parts at least 4 summing to `8k+8`.
pub fn type_compositions(k: usize) -> Vec<[usize; 4]> {
    let total = 8 * k + 8;
    let mut out = Vec::new();
    for r in (4..total).step_by(2) {
        for s in (4..total.saturating_sub(r)).step_by(2) {
            for t in (4..total.saturating_sub(r + s)).step_by(2) {
                let u = total - r - s - t;
                if u >= 4 {
                    out.push([r, s, t, u]);
                }
            }
        }
    }
    out
}

fn validate_params(fp: &FillingPermutation, k: usize, quad: [usize; 4]) -> Result<usize, SurgeryError> {
    require_minimal(fp)?;
    let g = fp.genus();
    if g < 2 {
        return Err(SurgeryError::GenusTooSmall { genus: g });
    }
    if k == 0 || k >= g {
        return Err(SurgeryError::KOutOfRange { k, max: g - 1 });
    }
    if quad.iter().any(|&q| q % 2 == 1 || q < 4) || quad.iter().sum::<usize>() != 8 * k + 8 {
        return Err(SurgeryError::InvalidType { quad, k });
    }
    Ok(g)
}

pub fn check_decomposition(
    fp: &FillingPermutation,
    anchors: [usize; 4],
    k: usize,
    quad: [usize; 4],
) -> Result<bool, SurgeryError> {
    let g = validate_params(fp, k, quad)?;
    for &e in &anchors {
        if e == 0 || e > fp.size() {
            return Err(SurgeryError::AnchorOutOfRange {
                symbol: e,
                size: fp.size(),
            });
        }
    }
    let index = CycleIndex::new(fp);
    Ok(check_with(&index, fp.n(), g, anchors, k, quad))
}

fn check_with(index: &CycleIndex, n: usize, g: usize, anchors: [usize; 4], k: usize, quad: [usize; 4]) -> bool {
    let [x, a, y, b] = anchors;
    let [r, s, t, u] = quad;
    let condition_one = opp(index.step(x, r - 1), n) == a
        && opp(index.step(a, s - 1), n) == y
        && opp(index.step(y, t - 1), n) == b
        && opp(index.step(b, u - 1), n) == x
        && opp(tau_power(x, 2 * k + 1, n), n) == y
        && opp(tau_power(a, 2 * k + 1, n), n) == b;
    if !condition_one {
        return false;
    }
    if k == g - 1 {
        return true;
    }
    // An anchor starting inside another anchor's run must have its own run nested in it.
    let m = index.len();
    let pairs = [(x, r), (a, s), (y, t), (b, u)];
    for &(v, p) in &pairs {
        for &(w, q) in &pairs {
            if v == w {
                continue;
            }
            let i = (index.pos(w) + m - index.pos(v)) % m;
            if i >= 1 && i < p - 1 {
                let end = index.step(v, p - 1);
                let j = (index.pos(end) + m - index.pos(w)) % m;
                if !(q - 1 < j && j < m) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every decomposition of a minimal `fp`, canonically rotated and sorted by
/// `(k, type, x)`. Candidates must satisfy both conditions and also separate.
pub fn find_decompositions(fp: &FillingPermutation) -> Result<Vec<Decomposition>, SurgeryError> {
    require_minimal(fp)?;
    let g = fp.genus();
    if g < 2 {
        return Ok(Vec::new());
    }
    let n = fp.n();
    let index = CycleIndex::new(fp);
    let jobs: Vec<(usize, [usize; 4])> = (1..g)
        .flat_map(|k| type_compositions(k).into_iter().map(move |q| (k, q)))
        .collect();
    let found: BTreeSet<Decomposition> = jobs
        .par_iter()
        .flat_map_iter(|&(k, quad)| {
            let index = &index;
            (1..=fp.size()).filter_map(move |x| {
                let [r, s, t, _] = quad;
                let a = opp(index.step(x, r - 1), n);
                let y = opp(index.step(a, s - 1), n);
                let b = opp(index.step(y, t - 1), n);
                check_with(index, n, g, [x, a, y, b], k, quad).then(|| {
                    Decomposition {
                        k,
                        l: g - k,
                        x,
                        a,
                        y,
                        b,
                        quad,
                    }
                    .canonical(n)
                })
            })
        })
        .collect();
    let mut out = Vec::with_capacity(found.len());
    for d in found {
        if verify_separating(fp, &d)? {
            out.push(d);
        }
    }
    out.sort_by_key(|d| d.sort_key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn compositions_are_complete() {
        assert_eq!(type_compositions(1), vec![[4, 4, 4, 4]]);
        // parts 4 + 2m_i with m_1+..+m_4 = 4k-4
        for k in 1..5 {
            let m = 4 * k - 4;
            let expect = (m + 1) * (m + 2) * (m + 3) / 6;
            assert_eq!(type_compositions(k).len(), expect);
        }
    }

    #[test]
    fn wrong_exponents_fail() {
        let f6 = fixtures::sigma_f6();
        assert!(check_decomposition(&f6, [3, 38, 39, 2], 3, [12, 4, 12, 4]).unwrap());
        assert!(!check_decomposition(&f6, [3, 38, 39, 2], 3, [4, 12, 12, 4]).unwrap());
        assert!(check_decomposition(&f6, [23, 38, 1, 16], 5, [28, 6, 10, 4]).unwrap());
    }

    #[test]
    fn parameter_errors() {
        let f6 = fixtures::sigma_f6();
        assert!(matches!(
            check_decomposition(&f6, [3, 38, 39, 2], 3, [12, 4, 12, 5]),
            Err(SurgeryError::InvalidType { .. })
        ));
        assert!(matches!(
            check_decomposition(&f6, [3, 38, 39, 2], 6, [12, 4, 12, 28]),
            Err(SurgeryError::KOutOfRange { .. })
        ));
        assert!(matches!(
            find_decompositions(&fixtures::zeta()),
            Err(SurgeryError::NotMinimal { .. })
        ));
        assert!(find_decompositions(&fixtures::torus()).unwrap().is_empty());
    }

    #[test]
    fn canonical_rotation_moves_positive_odd_first() {
        let d = Decomposition {
            k: 5,
            l: 1,
            x: 23,
            a: 38,
            y: 1,
            b: 16,
            quad: [28, 6, 10, 4],
        }
        .canonical(11);
        assert_eq!((d.x, d.a, d.y, d.b, d.quad), (1, 16, 23, 38, [10, 4, 28, 6]));
    }
}
