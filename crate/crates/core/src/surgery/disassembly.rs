use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    assemble, attachment_site, check_decomposition, require_minimal, AttachmentSite, CycleIndex, Decomposition, Label,
    SurgeryError,
};
use crate::filling::{is_positive, opp, validate, FillingPermutation, ZType};
use crate::perm::Permutation;
use crate::twist;

/// An anchor copy; `decorated` marks the duplicate used when a piece of genus
/// `g-1` is cut out and each anchor is both the first and last entry of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedSymbol {
    pub symbol: usize,
    pub decorated: bool,
}

impl DecoratedSymbol {
    pub fn plain(symbol: usize) -> Self {
        DecoratedSymbol {
            symbol,
            decorated: false,
        }
    }
}

impl fmt::Display for DecoratedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.decorated {
            write!(f, "{}'", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

/// The piece runs and the remaining cycle, still in the original labels.
/// When `k = g-1` the remainder is the torus `(1,2,3,4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub i: usize,
    pub j: usize,
    pub piece_cycles: Vec<Vec<DecoratedSymbol>>,
    pub remainder: Vec<usize>,
    pub remainder_is_torus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disassembly {
    pub piece: FillingPermutation,
    pub remainder: FillingPermutation,
    pub site: AttachmentSite,
}

/// Outcome of cutting out a piece and gluing it back: with
/// `t = κ^kappa_power ∘ δ^delta_power` the reassembled permutation equals
/// `t ∘ σ ∘ t⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub reassembled: FillingPermutation,
    pub kappa_power: usize,
    pub delta_power: usize,
    pub piece_mirrored: bool,
}

fn verified(fp: &FillingPermutation, d: &Decomposition) -> Result<usize, SurgeryError> {
    if !check_decomposition(fp, d.anchors(), d.k, d.quad)? {
        return Err(SurgeryError::InvalidDecomposition);
    }
    let g = fp.genus();
    if d.l != g - d.k {
        return Err(SurgeryError::InvalidDecomposition);
    }
    Ok(g)
}

pub fn extract(fp: &FillingPermutation, d: &Decomposition) -> Result<Extraction, SurgeryError> {
    let g = verified(fp, d)?;
    let n = fp.n();
    let index = CycleIndex::new(fp);
    let anchors = d.anchors();
    let mut runs: Vec<Vec<usize>> = anchors
        .iter()
        .zip(d.quad)
        .map(|(&v, len)| (0..len).map(|m| index.step(v, m)).collect())
        .collect();
    let pick = |odd: bool| {
        anchors
            .iter()
            .copied()
            .find(|&e| (e % 2 == 1) == odd && is_positive(e, n))
            .ok_or(SurgeryError::InvalidDecomposition)
    };
    let (i, j) = (pick(true)?, pick(false)?);
    let first = runs
        .iter()
        .position(|r| *r.last().expect("runs are nonempty") == opp(i, n))
        .ok_or_else(|| SurgeryError::Internal("no run ends at the opposite of i".to_string()))?;
    runs.rotate_left(first);

    let top = d.k == g - 1;
    let piece_cycles = runs
        .iter()
        .map(|run| {
            let last = run.len() - 1;
            run.iter()
                .enumerate()
                .map(|(pos, &e)| DecoratedSymbol {
                    symbol: e,
                    decorated: top && ((pos == 0 && !is_positive(e, n)) || (pos == last && is_positive(e, n))),
                })
                .collect()
        })
        .collect();
    let remainder = if top {
        vec![1, 2, 3, 4]
    } else {
        let mut interior = vec![false; fp.size() + 1];
        for run in &runs {
            for &e in &run[1..run.len() - 1] {
                interior[e] = true;
            }
        }
        index.cycle().iter().copied().filter(|&e| !interior[e]).collect()
    };
    Ok(Extraction {
        i,
        j,
        piece_cycles,
        remainder,
        remainder_is_torus: top,
    })
}

/// Relabeling back to standalone labels when `k < g-1`.
pub fn disassembly_map(g: usize, k: usize, i: usize, j: usize, label: Label) -> Result<usize, SurgeryError> {
    let l = g - k;
    let gap = |symbol: String| SurgeryError::CaseGap {
        map: "disassembly map",
        symbol,
    };
    match label {
        Label::Host(v) => {
            if v > 4 * g - 2 {
                let inner = disassembly_map(g, k, i, j, Label::Host(v + 2 - 4 * g))?;
                return Ok(inner + 4 * l - 2);
            }
            if v % 2 == 1 {
                if (i + 4).saturating_sub(4 * l).max(1) <= v && v <= i {
                    return Ok(v - (i + 3).saturating_sub(4 * l));
                }
                if i + 4 * k + 2 <= v && v + 3 <= 4 * g {
                    return Ok(v - 4 * k);
                }
            } else {
                if (j + 4).saturating_sub(4 * l).max(2) <= v && v <= j {
                    return Ok(v - (j + 2).saturating_sub(4 * l));
                }
                if j + 4 * k + 2 <= v && v + 2 <= 4 * g {
                    return Ok(v - 4 * k);
                }
            }
            Err(gap(format!("host {v}")))
        }
        Label::Piece(w) => {
            if w > 4 * g - 2 {
                let inner = disassembly_map(g, k, i, j, Label::Piece(w + 2 - 4 * g))?;
                return inner.checked_sub(4 * k + 4).ok_or_else(|| gap(format!("piece {w}")));
            }
            if w % 2 == 1 {
                if i <= w && w <= (i + 4 * k + 2).min(4 * g - 3) {
                    return Ok(w - i + 4 * k + 5);
                }
                if w >= 1 && w + 4 * l <= i + 4 {
                    return Ok(w + 4 * (k + g) + 3 - i);
                }
            } else {
                if j <= w && w <= (j + 4 * k + 2).min(4 * g - 2) {
                    return Ok(w - j + 4 * k + 6);
                }
                if w >= 2 && w + 4 * l <= j + 4 {
                    return Ok(w + 4 * (k + g) + 4 - j);
                }
            }
            Err(gap(format!("piece {w}")))
        }
    }
}

/// Relabeling of piece runs when `k = g-1`; decorated copies go to the ends of the blocks.
pub fn decorated_disassembly_map(k: usize, i: usize, j: usize, s: DecoratedSymbol) -> Result<usize, SurgeryError> {
    let n = 2 * k + 1;
    let w = s.symbol;
    let gap = || SurgeryError::CaseGap {
        map: "decorated disassembly map",
        symbol: s.to_string(),
    };
    if s.decorated {
        return match w {
            _ if w == i => Ok(8 * k + 7),
            _ if w == j => Ok(8 * k + 8),
            _ if w == opp(i, n) => Ok(4 * k + 3),
            _ if w == opp(j, n) => Ok(4 * k + 4),
            _ => Err(gap()),
        };
    }
    let result = if w % 2 == 1 {
        if i <= w && w <= 4 * k + 1 {
            w + 4 * k + 5 - i
        } else if 1 <= w && w + 2 <= i {
            w + 8 * k + 7 - i
        } else if i + 4 * k + 2 <= w && w <= 8 * k + 3 {
            w - i - 4 * k - 1
        } else if 4 * k + 3 <= w && w <= i + 4 * k {
            w + 1 - i
        } else {
            return Err(gap());
        }
    } else if j <= w && w <= 4 * k + 2 {
        w + 4 * k + 6 - j
    } else if 2 <= w && w + 2 <= j {
        w + 8 * k + 8 - j
    } else if j + 4 * k + 2 <= w && w <= 8 * k + 4 {
        w - j - 4 * k
    } else if 4 * k + 4 <= w && w <= j + 4 * k {
        w + 2 - j
    } else {
        return Err(gap());
    };
    Ok(result)
}

fn permutation_from_cycles(size: usize, cycles: &[Vec<usize>], what: &str) -> Result<Permutation, SurgeryError> {
    let mut seen = vec![false; size + 1];
    for &e in cycles.iter().flatten() {
        if e == 0 || e > size || seen[e] {
            return Err(SurgeryError::Internal(format!("{what} labels are not a bijection")));
        }
        seen[e] = true;
    }
    if seen[1..].iter().any(|&s| !s) {
        return Err(SurgeryError::Internal(format!("{what} labels do not cover 1..={size}")));
    }
    Permutation::from_cycles(size, cycles).map_err(|e| SurgeryError::Internal(e.to_string()))
}

pub fn disassemble(fp: &FillingPermutation, d: &Decomposition) -> Result<Disassembly, SurgeryError> {
    let g = verified(fp, d)?;
    let ext = extract(fp, d)?;
    let (k, l) = (d.k, d.l);
    let (i, j) = (ext.i, ext.j);

    let piece_labels: Vec<Vec<usize>> = ext
        .piece_cycles
        .iter()
        .map(|c| {
            c.iter()
                .map(|&s| {
                    if ext.remainder_is_torus {
                        decorated_disassembly_map(k, i, j, s)
                    } else {
                        disassembly_map(g, k, i, j, Label::Piece(s.symbol))
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let piece_sigma = permutation_from_cycles(8 * k + 8, &piece_labels, "piece")?.inverse();
    let piece =
        validate(piece_sigma, Some(2 * k + 2)).map_err(|e| SurgeryError::Internal(format!("piece invalid: {e}")))?;
    if !piece.is_z_piece(k) || piece.z_type() != Some(ZType::new(d.quad)?) {
        return Err(SurgeryError::Internal(
            "piece is not a Z piece of the stated type".to_string(),
        ));
    }

    let (remainder_cycle, site) = if ext.remainder_is_torus {
        (vec![1, 2, 3, 4], AttachmentSite { i: 1, j: 2 })
    } else {
        let relabel = |v| disassembly_map(g, k, i, j, Label::Host(v));
        let cycle = ext
            .remainder
            .iter()
            .map(|&v| relabel(v))
            .collect::<Result<Vec<_>, _>>()?;
        (
            cycle,
            AttachmentSite {
                i: relabel(i)?,
                j: relabel(j)?,
            },
        )
    };
    let remainder_sigma = permutation_from_cycles(8 * l - 4, &[remainder_cycle], "remainder")?;
    let remainder = validate(remainder_sigma, Some(2 * l - 1))
        .map_err(|e| SurgeryError::Internal(format!("remainder invalid: {e}")))?;
    require_minimal(&remainder)?;
    Ok(Disassembly { piece, remainder, site })
}

/// Cuts the piece out, glues it back at the induced site and finds the
/// `κ^p δ^q` relating the result to the original.
pub fn round_trip_check(fp: &FillingPermutation, d: &Decomposition) -> Result<RoundTrip, SurgeryError> {
    let parts = disassemble(fp, d)?;
    let site = attachment_site(&parts.remainder, parts.site.i)?;
    if site != parts.site {
        return Err(SurgeryError::Internal(format!(
            "induced site {:?} disagrees with the remainder's vertex {:?}",
            parts.site, site
        )));
    }
    let glued = assemble(&parts.remainder, &parts.piece, site)?;
    let n = fp.n();
    let (kappa, delta) = (twist::kappa(n), twist::delta(n));
    let mut kp = Permutation::identity(4 * n);
    for p in 0..n {
        let mut t = kp.clone();
        for q in 0..n {
            if fp.sigma().conjugate_by(&t) == *glued.result.sigma() {
                return Ok(RoundTrip {
                    reassembled: glued.result,
                    kappa_power: p,
                    delta_power: q,
                    piece_mirrored: glued.piece_mirrored,
                });
            }
            t = &t * &delta;
        }
        kp = &kp * &kappa;
    }
    Err(SurgeryError::NoConjugacyFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn decorated_ends() {
        assert_eq!(
            decorated_disassembly_map(
                5,
                1,
                16,
                DecoratedSymbol {
                    symbol: 1,
                    decorated: true
                }
            ),
            Ok(47)
        );
        assert_eq!(
            decorated_disassembly_map(
                5,
                1,
                16,
                DecoratedSymbol {
                    symbol: 16,
                    decorated: true
                }
            ),
            Ok(48)
        );
    }

    #[test]
    fn f6_genus_three_split() {
        let f6 = fixtures::sigma_f6();
        let d = Decomposition {
            k: 3,
            l: 3,
            x: 3,
            a: 38,
            y: 39,
            b: 2,
            quad: [12, 4, 12, 4],
        };
        let parts = disassemble(&f6, &d).unwrap();
        assert_eq!(parts.piece, fixtures::sigma_z());
        assert_eq!(parts.remainder, fixtures::sigma_f());
        assert_eq!(parts.site, AttachmentSite { i: 3, j: 2 });
        let rt = round_trip_check(&f6, &d).unwrap();
        assert_eq!((rt.kappa_power, rt.delta_power), (0, 0));
    }
}
