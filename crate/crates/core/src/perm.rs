//! Permutations of `{1..M}` with cycle-notation parsing and formatting.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("symbol {symbol} repeated at offset {offset}")]
    RepeatedSymbol { symbol: usize, offset: usize },
    #[error("symbol {symbol} at offset {offset} is outside 1..={size}")]
    OutOfRange { symbol: usize, offset: usize, size: usize },
    #[error("malformed cycle notation at offset {offset}: {reason}")]
    Malformed { offset: usize, reason: String },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection: {symbol} is hit twice")]
    NotBijective { symbol: usize },
}

/// A bijection of `{1..size}`. Symbol `e` maps to `images[e - 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            images: (1..=size).collect(),
        }
    }

    /// Builds a permutation from its one-line form `[p(1), p(2), ..]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let size = images.len();
        let mut hit = vec![false; size + 1];
        for (offset, &symbol) in images.iter().enumerate() {
            if symbol == 0 || symbol > size {
                return Err(PermError::OutOfRange { symbol, offset, size });
            }
            if hit[symbol] {
                return Err(PermError::NotBijective { symbol });
            }
            hit[symbol] = true;
        }
        Ok(Permutation { images })
    }

    /// The product `c1 ∘ c2 ∘ ..` of the given cycles, so the last cycle acts first.
    /// Symbols may not repeat inside one cycle; different cycles may overlap.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut offset = 0;
        let mut factors = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            factors.push(single_cycle(size, cycle, |i| offset + i)?);
            offset += cycle.len();
        }
        Ok(product(size, factors))
    }

    /// Parses text such as `(1,2,3)(4,5)`; symbols outside every cycle are fixed.
    pub fn parse_cycles(text: &str, size: usize) -> Result<Self, PermError> {
        let parsed = scan_cycles(text)?;
        let mut factors = Vec::with_capacity(parsed.len());
        for (cycle, offsets) in &parsed {
            factors.push(single_cycle(size, cycle, |i| offsets[i])?);
        }
        Ok(product(size, factors))
    }

    /// Cycles as written, checked for syntax and for repeats inside a cycle.
    pub fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
        let parsed = scan_cycles(text)?;
        for (cycle, offsets) in &parsed {
            for (i, symbol) in cycle.iter().enumerate() {
                if symbol == &0 {
                    return Err(PermError::OutOfRange {
                        symbol: 0,
                        offset: offsets[i],
                        size: 0,
                    });
                }
                if cycle[..i].contains(symbol) {
                    return Err(PermError::RepeatedSymbol {
                        symbol: *symbol,
                        offset: offsets[i],
                    });
                }
            }
        }
        Ok(parsed.into_iter().map(|(c, _)| c).collect())
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of `e`. Panics if `e` is not in `1..=size`.
    pub fn apply(&self, e: usize) -> usize {
        self.images[e - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self ∘ other`, i.e. `e ↦ self(other(e))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.size() != other.size() {
            return Err(PermError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&e| self.apply(e)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let mut result = Permutation::identity(self.size());
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut exp = k.unsigned_abs();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        result
    }

    /// `e` moved `k` steps along its own cycle, without building the power.
    pub fn iterate(&self, e: usize, k: usize) -> usize {
        (0..k).fold(e, |x, _| self.apply(x))
    }

    /// `t ∘ self ∘ t⁻¹`.
    pub fn conjugate_by(&self, t: &Permutation) -> Permutation {
        let mut images = vec![0; self.size()];
        for e in 1..=self.size() {
            images[t.apply(e) - 1] = t.apply(self.apply(e));
        }
        Permutation { images }
    }

    /// Disjoint cycles, each starting at its least symbol, sorted by that symbol.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size() + 1];
        let mut out = Vec::new();
        for start in 1..=self.size() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut e = self.apply(start);
            while e != start {
                seen[e] = true;
                cycle.push(e);
                e = self.apply(e);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// The cycle through `e`, starting at `e`.
    pub fn cycle_of(&self, e: usize) -> Vec<usize> {
        let mut cycle = vec![e];
        let mut x = self.apply(e);
        while x != e {
            cycle.push(x);
            x = self.apply(x);
        }
        cycle
    }

    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u128)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Canonical cycle notation: fixed points omitted, identity as `()`.
    pub fn format_cycles(&self) -> String {
        self.to_string()
    }

    pub fn to_record(&self) -> PermRecord {
        PermRecord {
            size: self.size(),
            cycles: self.cycles().into_iter().filter(|c| c.len() > 1).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "{}", format_cycle(&c))?;
        }
        Ok(())
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Same as [`Permutation::compose`]; panics on a size mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation sizes differ")
    }
}

/// `(a,b,c)` for a single cycle.
pub fn format_cycle<T: fmt::Display>(cycle: &[T]) -> String {
    let body: Vec<String> = cycle.iter().map(|e| e.to_string()).collect();
    format!("({})", body.join(","))
}

/// Structured form used by file I/O.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRecord {
    pub size: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl TryFrom<PermRecord> for Permutation {
    type Error = PermError;

    fn try_from(record: PermRecord) -> Result<Self, PermError> {
        Permutation::from_cycles(record.size, &record.cycles)
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn single_cycle(size: usize, cycle: &[usize], offset_of: impl Fn(usize) -> usize) -> Result<Permutation, PermError> {
    let mut images: Vec<usize> = (1..=size).collect();
    let mut seen = vec![false; size + 1];
    for (i, &symbol) in cycle.iter().enumerate() {
        if symbol == 0 || symbol > size {
            return Err(PermError::OutOfRange {
                symbol,
                offset: offset_of(i),
                size,
            });
        }
        if seen[symbol] {
            return Err(PermError::RepeatedSymbol {
                symbol,
                offset: offset_of(i),
            });
        }
        seen[symbol] = true;
    }
    for (i, &symbol) in cycle.iter().enumerate() {
        images[symbol - 1] = cycle[(i + 1) % cycle.len()];
    }
    Ok(Permutation { images })
}

fn product(size: usize, factors: Vec<Permutation>) -> Permutation {
    factors.iter().fold(Permutation::identity(size), |acc, c| &acc * c)
}

type ScannedCycle = (Vec<usize>, Vec<usize>);

fn scan_cycles(text: &str) -> Result<Vec<ScannedCycle>, PermError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let malformed = |offset: usize, reason: &str| PermError::Malformed {
        offset,
        reason: reason.to_string(),
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(out);
        }
        if bytes[pos] != b'(' {
            return Err(malformed(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        let mut offsets = Vec::new();
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b')' {
            pos += 1;
            out.push((cycle, offsets));
            continue;
        }
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(malformed(pos, "expected a symbol"));
            }
            let symbol = text[start..pos]
                .parse::<usize>()
                .map_err(|_| malformed(start, "symbol too large"))?;
            cycle.push(symbol);
            offsets.push(start);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(_) => return Err(malformed(pos, "expected ',' or ')'")),
                None => return Err(malformed(pos, "unclosed cycle")),
            }
        }
        out.push((cycle, offsets));
    }
}
