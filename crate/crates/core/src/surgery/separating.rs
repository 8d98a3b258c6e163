//! Direct check that the curve described by a decomposition cuts the surface
//! into two pieces, one of which is the four cordoned-off regions.

use super::{require_minimal, CycleIndex, Decomposition, SurgeryError};
use crate::filling::{opp, FillingPermutation};

/// Each polygon edge spans this many units along the boundary circle.
const EDGE: usize = 12;
const TERMINAL_OFFSET: usize = 4;
const INITIAL_OFFSET: usize = 8;

#[derive(Clone, Copy)]
struct ChordEnd {
    at: usize,
    initial: bool,
    chord: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Builds the four chords `x→ā, a→ȳ, y→b̄, b→x̄` inside the polygon, cuts it
/// into regions and glues the pieces back along opposite edges. True when the
/// result has two components and one of them is exactly the cordoned regions.
pub fn verify_separating(fp: &FillingPermutation, d: &Decomposition) -> Result<bool, SurgeryError> {
    require_minimal(fp)?;
    let n = fp.n();
    let index = CycleIndex::new(fp);
    let circle = EDGE * index.len();
    let initial = d.anchors();
    let terminal = [opp(d.a, n), opp(d.y, n), opp(d.b, n), opp(d.x, n)];

    let mut ends: Vec<ChordEnd> = Vec::with_capacity(8);
    for c in 0..4 {
        ends.push(ChordEnd {
            at: EDGE * index.pos(initial[c]) + INITIAL_OFFSET,
            initial: true,
            chord: c,
        });
        ends.push(ChordEnd {
            at: EDGE * index.pos(terminal[c]) + TERMINAL_OFFSET,
            initial: false,
            chord: c,
        });
    }
    ends.sort_by_key(|e| e.at);
    let p = ends.len();
    let mut start_of = [[0usize; 2]; 4];
    for (m, e) in ends.iter().enumerate() {
        start_of[e.chord][e.initial as usize] = m;
    }

    let ccw = |from: usize, to: usize| (to + circle - from) % circle;
    let strictly_inside = |from: usize, to: usize, q: usize| q != from && ccw(from, q) < ccw(from, to);
    for c1 in 0..4 {
        for c2 in c1 + 1..4 {
            let (a1, b1) = (ends[start_of[c1][1]].at, ends[start_of[c1][0]].at);
            let (a2, b2) = (ends[start_of[c2][1]].at, ends[start_of[c2][0]].at);
            if strictly_inside(a1, b1, a2) != strictly_inside(a1, b1, b2) {
                return Err(SurgeryError::ChordsCross);
            }
        }
    }

    // Boundary arc m runs from ends[m] to ends[m+1]. A region follows an arc to
    // its end, crosses the chord there, and continues on the arc leaving the partner.
    let mut region = vec![usize::MAX; p];
    let mut regions = 0;
    for first in 0..p {
        if region[first] != usize::MAX {
            continue;
        }
        let mut m = first;
        while region[m] == usize::MAX {
            region[m] = regions;
            let end = ends[(m + 1) % p];
            m = start_of[end.chord][(!end.initial) as usize];
        }
        regions += 1;
    }
    let cordoned: Vec<usize> = (0..4).map(|c| region[start_of[c][1]]).collect();
    let mut distinct = cordoned.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if regions != 5 || distinct.len() != 4 {
        return Ok(false);
    }

    let cuts: Vec<usize> = ends.iter().map(|e| e.at).collect();
    let arc_of = |q: usize| match cuts.binary_search(&q) {
        Ok(m) => m,
        Err(0) => p - 1,
        Err(m) => m - 1,
    };
    let mut uf = UnionFind::new(regions);
    for &e in index.cycle() {
        let base = EDGE * index.pos(e);
        let mirror = EDGE * index.pos(opp(e, n));
        let mut bounds = vec![0, EDGE];
        for &c in &cuts {
            if c > base && c < base + EDGE {
                bounds.push(c - base);
            }
            if c > mirror && c < mirror + EDGE {
                bounds.push(EDGE - (c - mirror));
            }
        }
        bounds.sort_unstable();
        bounds.dedup();
        for w in bounds.windows(2) {
            let mid = (w[0] + w[1]) / 2;
            let here = region[arc_of(base + mid)];
            let there = region[arc_of(mirror + EDGE - mid)];
            uf.union(here, there);
        }
    }
    let roots: Vec<usize> = (0..regions).map(|r| uf.find(r)).collect();
    let mut components = roots.clone();
    components.sort_unstable();
    components.dedup();
    if components.len() != 2 {
        return Ok(false);
    }
    let root = roots[cordoned[0]];
    let component: Vec<usize> = (0..regions).filter(|&r| roots[r] == root).collect();
    Ok(component == distinct)
}
