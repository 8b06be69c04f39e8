use std::cmp::Ordering;
use std::fmt;

use crate::superalgebra::{LatticeVec, LieSuperalgebra, Parity};

/// Creation mode `b(−depth)` with `depth ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub depth: u32,
    pub index: u32,
}

impl Mode {
    pub fn new(index: usize, depth: u32) -> Self {
        Mode { depth, index: index as u32 }
    }
}

impl Ord for Mode {
    /// Canonical order: larger depth first, then smaller basis index.
    fn cmp(&self, other: &Self) -> Ordering {
        other.depth.cmp(&self.depth).then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonically ordered product of creation modes applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(pub(crate) Vec<Mode>);

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Sorts `modes` into canonical order. Returns `None` when an odd mode
    /// would repeat (such a product is not a PBW monomial).
    pub fn from_modes(alg: &LieSuperalgebra, mut modes: Vec<Mode>) -> Option<Self> {
        modes.sort();
        let repeated_odd = modes.windows(2).any(|w| w[0] == w[1] && alg.parity(w[0].index as usize).is_odd());
        (!repeated_odd).then_some(PbwMonomial(modes))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|m| m.depth).sum()
    }

    pub fn charge(&self, alg: &LieSuperalgebra) -> LatticeVec {
        self.0.iter().fold(LatticeVec::zero(alg.rank()), |acc, m| acc.add(alg.weight(m.index as usize)))
    }

    pub fn parity(&self, alg: &LieSuperalgebra) -> Parity {
        self.0.iter().fold(Parity::Even, |acc, m| acc + alg.parity(m.index as usize))
    }

    /// Leading factor and the remaining monomial.
    pub fn split_first(&self) -> Option<(Mode, PbwMonomial)> {
        let (first, rest) = self.0.split_first()?;
        Some((*first, PbwMonomial(rest.to_vec())))
    }

    pub(crate) fn prepend(&self, m: Mode) -> PbwMonomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(m);
        v.extend_from_slice(&self.0);
        PbwMonomial(v)
    }

    /// Stable key such as `b17(-3)·b2(-1)^2`; the vacuum is `1`.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`PbwMonomial::key`].
    pub fn parse_key(s: &str) -> Option<Self> {
        if s == "1" {
            return Some(PbwMonomial::vacuum());
        }
        let mut modes = Vec::new();
        for factor in s.split('·') {
            let (body, power) = match factor.split_once(")^") {
                Some((b, p)) => (format!("{b})"), p.parse::<usize>().ok()?),
                None => (factor.to_string(), 1),
            };
            let body = body.strip_prefix('b')?;
            let (idx, rest) = body.split_once("(-")?;
            let depth: u32 = rest.strip_suffix(')')?.parse().ok()?;
            let index: u32 = idx.parse().ok()?;
            if depth == 0 {
                return None;
            }
            modes.extend(std::iter::repeat_n(Mode { depth, index }, power));
        }
        let sorted = modes.windows(2).all(|w| w[0] <= w[1]);
        sorted.then_some(PbwMonomial(modes))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let m = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == m {
                j += 1;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "b{}(-{})", m.index, m.depth)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_key() {
        let m = PbwMonomial(vec![Mode::new(17, 3), Mode::new(2, 1), Mode::new(2, 1)]);
        assert_eq!(m.key(), "b17(-3)·b2(-1)^2");
        assert_eq!(PbwMonomial::parse_key(&m.key()), Some(m.clone()));
        assert_eq!(PbwMonomial::parse_key("1"), Some(PbwMonomial::vacuum()));
        // out of canonical order
        assert_eq!(PbwMonomial::parse_key("b2(-1)·b17(-3)"), None);
        assert_eq!(m.weight(), 5);
    }

    #[test]
    fn mode_order_depth_dominates() {
        assert!(Mode::new(5, 2) < Mode::new(0, 1));
        assert!(Mode::new(0, 2) < Mode::new(5, 2));
    }
}
