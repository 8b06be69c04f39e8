use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PbwMonomial;
use crate::{Error, Result, Q};

/// Sparse rational combination of PBW monomials.
///
/// The truncation flag is set when a contribution above the working cutoff
/// was discarded; it is sticky through all arithmetic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State {
    terms: BTreeMap<PbwMonomial, Q>,
    truncated: bool,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn vacuum() -> Self {
        State::monomial(PbwMonomial::vacuum())
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Q::one());
        State { terms, truncated: false }
    }

    pub(crate) fn truncated_zero() -> Self {
        State { terms: BTreeMap::new(), truncated: true }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PbwMonomial, Q)>) -> Self {
        let mut s = State::zero();
        for (m, x) in terms {
            s.add_term(m, x);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: PbwMonomial, x: Q) {
        if x.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += s·other`.
    pub fn add_scaled(&mut self, other: &State, s: &Q) {
        self.truncated |= other.truncated;
        if s.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * s);
        }
    }

    pub fn scaled(&self, s: &Q) -> State {
        let mut out = State { terms: BTreeMap::new(), truncated: self.truncated };
        out.add_scaled(self, s);
        out
    }

    pub fn plus(&self, other: &State) -> State {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn minus(&self, other: &State) -> State {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// Common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|m| m.weight());
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    /// Coefficient `c` with `self = c·other`, if proportional.
    pub fn ratio_to(&self, other: &State) -> Option<Q> {
        if other.is_zero() {
            return self.is_zero().then(Q::zero);
        }
        let (m, x) = other.terms.iter().next()?;
        let c = self.coeff(m) / x;
        let diff = self.minus(&other.scaled(&c));
        diff.is_zero().then_some(c)
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            truncated: self.truncated,
            terms: self.terms.iter().map(|(m, x)| (m.key(), x.numer().to_string(), x.denom().to_string())).collect(),
        }
    }

    pub fn from_json(j: &StateJson) -> Result<State> {
        let mut s = State::zero();
        for (k, num, den) in &j.terms {
            let m =
                PbwMonomial::parse_key(k).ok_or_else(|| Error::InvalidArgument(format!("bad monomial key `{k}`")))?;
            let num = num.parse().map_err(|_| Error::InvalidArgument(format!("bad numerator `{num}`")))?;
            let den: num_bigint::BigInt =
                den.parse().map_err(|_| Error::InvalidArgument(format!("bad denominator `{den}`")))?;
            if den.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            s.add_term(m, Q::new(num, den));
        }
        s.truncated = j.truncated;
        Ok(s)
    }
}

/// Serialized state: `(monomial key, numerator, denominator)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub truncated: bool,
    pub terms: Vec<(String, String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vacuum::Mode;
    use crate::{q, q_frac};

    #[test]
    fn flag_is_sticky_and_zeros_vanish() {
        let m = PbwMonomial(vec![Mode::new(0, 1)]);
        let a = State::monomial(m.clone());
        let mut t = State::truncated_zero();
        t.add_scaled(&a, &q(2));
        assert!(t.is_truncated());
        t.add_scaled(&a, &q(-2));
        assert!(t.is_zero());
        assert!(t.is_truncated());
        assert!(t.plus(&State::zero()).is_truncated());
    }

    #[test]
    fn json_round_trip() {
        let s = State::from_terms([
            (PbwMonomial(vec![Mode::new(3, 2), Mode::new(1, 1)]), q_frac(-3, 4)),
            (PbwMonomial::vacuum(), q(5)),
        ]);
        let j = s.to_json();
        assert_eq!(State::from_json(&j).unwrap(), s);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("b3(-2)·b1(-1)"));
    }
}
