use serde::{Deserialize, Serialize};

use super::{require_minimal, SurgeryError};
use crate::filling::{opp, validate, FillingPermutation};
use crate::perm::Permutation;
use crate::twist;

/// The host vertex removed during assembly, named by its positive odd and
/// positive even left edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AttachmentSite {
    pub i: usize,
    pub j: usize,
}

/// Cyclic order of a vertex orbit. `Direct` means the orbit of the odd anchor
/// visits the even anchor next; `Mirrored` means it visits the opposite of the
/// next odd label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Handedness {
    Direct,
    Mirrored,
}

/// A symbol of the host (`v`) or of the piece (`w`) before relabeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Host(usize),
    Piece(usize),
}

fn wrap_positive(e: usize, n: usize) -> usize {
    if e > 2 * n {
        e - 2 * n
    } else {
        e
    }
}

pub fn attachment_site(host: &FillingPermutation, i: usize) -> Result<AttachmentSite, SurgeryError> {
    require_minimal(host)?;
    let n = host.n();
    let fail = |reason: &str| SurgeryError::NotAVertexAnchor {
        i,
        reason: reason.to_string(),
    };
    if i == 0 || i > 2 * n || i.is_multiple_of(2) {
        return Err(fail("not a positive odd symbol"));
    }
    let orbit = host.vertex_orbit(i);
    let evens: Vec<usize> = orbit.iter().copied().filter(|&e| e % 2 == 0 && e <= 2 * n).collect();
    let [j] = evens[..] else {
        return Err(fail("vertex needs exactly one positive even left edge"));
    };
    let mut expected = [i, j, opp(wrap_positive(i + 2, n), n), opp(wrap_positive(j + 2, n), n)];
    let mut got = orbit;
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return Err(fail("orbit is not {i, j, opposite(i+2), opposite(j+2)}"));
    }
    Ok(AttachmentSite { i, j })
}

pub fn site_handedness(host: &FillingPermutation, site: AttachmentSite) -> Handedness {
    if host.vertex_orbit(site.i)[1] == site.j {
        Handedness::Direct
    } else {
        Handedness::Mirrored
    }
}

/// Handedness of the normalized green vertex, or `None` if the piece is not normalized.
pub fn piece_handedness(piece: &FillingPermutation) -> Option<Handedness> {
    if !piece.is_green_normalized() {
        return None;
    }
    let n = piece.n();
    Some(if piece.vertex_orbit(2 * n - 1)[1] == 2 * n {
        Handedness::Direct
    } else {
        Handedness::Mirrored
    })
}

/// Relabeling used when gluing a `Z_k` piece into an `F_l` at `site`.
pub fn assembly_map(k: usize, l: usize, site: AttachmentSite, label: Label) -> Result<usize, SurgeryError> {
    let g = k + l;
    let m = 8 * g - 4;
    let AttachmentSite { i, j } = site;
    let gap = |symbol: String| SurgeryError::CaseGap {
        map: "assembly map",
        symbol,
    };
    match label {
        Label::Host(v) => {
            if v == 0 || v > 8 * l - 4 {
                return Err(gap(format!("host {v}")));
            }
            if v > 4 * l - 2 {
                return Ok(assembly_map(k, l, site, Label::Host(v + 2 - 4 * l))? + 4 * g - 2);
            }
            if (v % 2 == 1 && v <= i) || (v % 2 == 0 && v <= j) {
                Ok(v)
            } else {
                Ok(v + 4 * k)
            }
        }
        Label::Piece(w) => {
            if w == 0 || w > 8 * k + 8 {
                return Err(gap(format!("piece {w}")));
            }
            if l == 1 {
                if w == 4 * g - 1 || w == 4 * g {
                    return Ok(w);
                }
                if w == 8 * g - 1 {
                    return Ok(1);
                }
                if w == 8 * g {
                    return Ok(2);
                }
            }
            // Overflow wraps inside the block the label was sent to.
            if w <= 4 * k + 4 {
                let r = if w % 2 == 1 {
                    w + i + 4 * g - 3
                } else {
                    w + j + 4 * g - 4
                };
                Ok(if r > m { r - (4 * g - 2) } else { r })
            } else {
                let r = if w % 2 == 1 {
                    w + i - 4 * k - 5
                } else {
                    w + j - 4 * k - 6
                };
                Ok(if r > 4 * g - 2 { r - (4 * g - 2) } else { r })
            }
        }
    }
}

/// Cycles of `σ_z⁻¹`, chained so that reading them forward each next cycle of
/// `σ_z` starts at the opposite of the previous one's last entry. The first
/// returned cycle ends with 1.
pub fn arrange_piece_cycles(piece: &FillingPermutation) -> Result<Vec<Vec<usize>>, SurgeryError> {
    let fail = |reason: &str| SurgeryError::ArrangementImpossible {
        reason: reason.to_string(),
    };
    if piece.region_count() != 4 {
        return Err(fail("piece must have four regions"));
    }
    if !piece.is_green_normalized() {
        return Err(fail("piece is not green-normalized"));
    }
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(4);
    let mut start = 1;
    for _ in 0..4 {
        let cycle = piece.sigma().cycle_of(start);
        if out.iter().any(|c| c.contains(&start)) {
            return Err(fail("chain revisits a cycle"));
        }
        start = piece.opposite(*cycle.last().expect("cycles are nonempty"));
        out.push(cycle);
    }
    if start != 1 {
        return Err(fail("chain does not close at 1"));
    }
    Ok(out
        .into_iter()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect())
}

/// Result of gluing. `piece_mirrored` records that the piece was conjugated by
/// `μ` so that its green vertex matches the handedness of the site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub result: FillingPermutation,
    pub piece_mirrored: bool,
}

pub fn assemble(
    host: &FillingPermutation,
    piece: &FillingPermutation,
    site: AttachmentSite,
) -> Result<Assembly, SurgeryError> {
    require_minimal(host)?;
    let l = host.genus();
    if piece.n() % 2 == 1 || piece.n() < 4 {
        return Err(SurgeryError::NotAZPiece {
            k: 0,
            reason: format!("n={} is not 2k+2 with k >= 1", piece.n()),
        });
    }
    let k = (piece.n() - 2) / 2;
    if !piece.is_z_piece(k) {
        return Err(SurgeryError::NotAZPiece {
            k,
            reason: "needs genus k, four regions and a green vertex".to_string(),
        });
    }
    let expected = attachment_site(host, site.i)?;
    if expected.j != site.j {
        return Err(SurgeryError::NotAVertexAnchor {
            i: site.i,
            reason: format!("paired even edge is {}, not {}", expected.j, site.j),
        });
    }
    let piece_hand = piece_handedness(piece).ok_or_else(|| SurgeryError::ArrangementImpossible {
        reason: "piece is not green-normalized".to_string(),
    })?;
    let mirrored = l > 1 && piece_hand != site_handedness(host, site);
    let oriented;
    let piece = if mirrored {
        oriented = piece.conjugate_by(&twist::mu(piece.n()))?;
        &oriented
    } else {
        piece
    };

    let g = k + l;
    let m = 8 * g - 4;
    let mut images = vec![0usize; m];
    for v in 1..=host.size() {
        let from = assembly_map(k, l, site, Label::Host(v))?;
        let to = assembly_map(k, l, site, Label::Host(host.apply(v)))?;
        images[from - 1] = to;
    }
    for cycle in arrange_piece_cycles(piece)? {
        let relabeled = cycle
            .iter()
            .map(|&w| assembly_map(k, l, site, Label::Piece(w)))
            .collect::<Result<Vec<_>, _>>()?;
        let (first, last) = (relabeled[0], relabeled[relabeled.len() - 1]);
        if l > 1 && images[first - 1] != last {
            return Err(SurgeryError::SpliceMismatch { symbol: first });
        }
        for pair in relabeled.windows(2) {
            images[pair[0] - 1] = pair[1];
        }
    }
    if let Some(pos) = images.iter().position(|&e| e == 0) {
        return Err(SurgeryError::Internal(format!("symbol {} left unassigned", pos + 1)));
    }
    let sigma = Permutation::from_images(images)
        .map_err(|e| SurgeryError::Internal(format!("splice is not a bijection: {e}")))?;
    let result = validate(sigma, Some(2 * g - 1))
        .map_err(|e| SurgeryError::Internal(format!("assembled permutation invalid: {e}")))?;
    if !result.is_minimal() {
        return Err(SurgeryError::Internal(
            "assembled permutation is not minimal".to_string(),
        ));
    }
    Ok(Assembly {
        result,
        piece_mirrored: mirrored,
    })
}
