//! Planar-order axioms and conjugate orders on arbitrary finite posets.
//!
//! (P1): `x1 → x2` implies `x1 ≺ x2`.
//! (P2): `x1 ≺ x2 ≺ x3` and `x1 → x3` imply `x1 → x2` or `x2 → x3`.
//!
//! The conjugate relation of `(→, ≺)` is `x < y` iff `x ≺ y` and `x ↛ y`.
//! A linear order is planar exactly when this relation is a strict order
//! conjugate to `→`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::poset::{FinitePoset, LinearOrder, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order and poset range over different elements: {0}")]
    ElementMismatch(#[from] PosetError),
}

/// A binary relation on a finite set of identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    m: Vec<bool>,
}

impl Relation {
    pub fn new<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut m = vec![false; n * n];
        for (a, b) in pairs {
            let (a, b): (String, String) = (a.into(), b.into());
            let ia = *index.get(&a).ok_or(PosetError::UnknownElement(a))?;
            let ib = *index.get(&b).ok_or(PosetError::UnknownElement(b))?;
            m[ia * n + ib] = true;
        }
        Ok(Self { elements, index, m })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn holds(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&a), Some(&b)) => self.m[a * self.elements.len() + b],
            _ => false,
        }
    }

    /// Related pairs in element index order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let n = self.elements.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.m[a * n + b] {
                    out.push((self.elements[a].clone(), self.elements[b].clone()));
                }
            }
        }
        out
    }

    pub fn pair_count(&self) -> usize {
        self.m.iter().filter(|&&b| b).count()
    }
}

/// Every pair `(x1, x2)` with `x1 → x2` but `x2 ≺ x1`, sorted by the ranks
/// of `(x1, x2)`.
pub fn check_p1(poset: &FinitePoset, ord: &LinearOrder) -> Result<Vec<(String, String)>, OrderError> {
    let seq = ord.indices_in(poset)?;
    let ids = poset.elements();
    let mut out = Vec::new();
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[..i] {
            // b precedes a in the order
            if poset.lt(a, b) {
                out.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    out.sort_by_key(|(a, b)| (ord.rank(a), ord.rank(b)));
    Ok(out)
}

/// Every triple `(x1, x2, x3)` in ascending order position with `x1 → x3`,
/// `x1 ↛ x2` and `x2 ↛ x3`, in lexicographic rank order.
pub fn check_p2(poset: &FinitePoset, ord: &LinearOrder) -> Result<Vec<(String, String, String)>, OrderError> {
    let seq = ord.indices_in(poset)?;
    let ids = poset.elements();
    let n = seq.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (seq[i], seq[j], seq[k]);
                if poset.lt(a, c) && !poset.lt(a, b) && !poset.lt(b, c) {
                    out.push((ids[a].clone(), ids[b].clone(), ids[c].clone()));
                }
            }
        }
    }
    Ok(out)
}

/// (P1) on an index sequence: `seq[p]` is the poset element at position `p`.
pub fn p1_holds(poset: &FinitePoset, seq: &[usize]) -> bool {
    seq.iter()
        .enumerate()
        .all(|(i, &a)| seq[..i].iter().all(|&b| !poset.lt(a, b)))
}

/// (P2) on an index sequence.
pub fn p2_holds(poset: &FinitePoset, seq: &[usize]) -> bool {
    (2..seq.len()).all(|k| p2_holds_at(poset, seq, k))
}

/// (P2) restricted to triples whose last element sits at position `k`.
/// A prefix of length `k + 1` has no (P2) violation iff this holds for every
/// position up to `k`.
#[inline]
pub(crate) fn p2_holds_at(poset: &FinitePoset, seq: &[usize], k: usize) -> bool {
    let c = seq[k];
    for i in 0..k {
        let a = seq[i];
        if !poset.lt(a, c) {
            continue;
        }
        for &b in &seq[i + 1..k] {
            if !poset.lt(a, b) && !poset.lt(b, c) {
                return false;
            }
        }
    }
    true
}

/// `x < y` iff `x ≺ y` and `x ↛ y`.
pub fn conjugate_relation(poset: &FinitePoset, ord: &LinearOrder) -> Result<Relation, OrderError> {
    let seq = ord.indices_in(poset)?;
    let ids = poset.elements();
    let n = ids.len();
    let mut m = vec![false; n * n];
    for (i, &a) in seq.iter().enumerate() {
        for &b in &seq[i + 1..] {
            if !poset.lt(a, b) {
                m[a * n + b] = true;
            }
        }
    }
    let index = ids.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(Relation {
        elements: ids.to_vec(),
        index,
        m,
    })
}

/// Why a candidate relation is not a conjugate order of a base poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugateWitness {
    Reflexive(String),
    /// Both `(a, b)` and `(b, a)` are in the candidate.
    Symmetric(String, String),
    /// `(a, b)` and `(b, c)` are in the candidate but `(a, c)` is not.
    Intransitive(String, String, String),
    /// The pair is comparable in neither relation.
    Neither(String, String),
    /// The pair is comparable in both relations.
    Both(String, String),
}

impl fmt::Display for ConjugateWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Reflexive(a) => write!(f, "candidate relates {a} to itself"),
            Self::Symmetric(a, b) => write!(f, "candidate relates {a} and {b} both ways"),
            Self::Intransitive(a, b, c) => write!(f, "candidate has {a} < {b} < {c} but not {a} < {c}"),
            Self::Neither(a, b) => write!(f, "{a} and {b} are comparable in neither order"),
            Self::Both(a, b) => write!(f, "{a} and {b} are comparable in both orders"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugateVerdict {
    Conjugate,
    Fails(ConjugateWitness),
}

impl ConjugateVerdict {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Self::Conjugate)
    }
}

/// Checks that `candidate` is a strict order and that every pair of distinct
/// elements is comparable in exactly one of `base` and `candidate`.
pub fn check_conjugate(base: &FinitePoset, candidate: &Relation) -> Result<ConjugateVerdict, OrderError> {
    let n = base.len();
    if candidate.elements.len() != n {
        let missing = base
            .elements()
            .iter()
            .find(|e| !candidate.index.contains_key(*e))
            .or_else(|| candidate.elements.iter().find(|e| base.index_of(e).is_none()))
            .cloned()
            .unwrap_or_default();
        return Err(PosetError::UnknownElement(missing).into());
    }
    // cand[i * n + j]: candidate relation in base index space
    let mut cand = vec![false; n * n];
    for (ci, e) in candidate.elements.iter().enumerate() {
        let bi = base.index_of(e).ok_or_else(|| PosetError::UnknownElement(e.clone()))?;
        for (cj, f) in candidate.elements.iter().enumerate() {
            if candidate.m[ci * n + cj] {
                let bj = base.index_of(f).ok_or_else(|| PosetError::UnknownElement(f.clone()))?;
                cand[bi * n + bj] = true;
            }
        }
    }
    let ids = base.elements();
    let c = |a: usize, b: usize| cand[a * n + b];

    for (a, id) in ids.iter().enumerate() {
        if c(a, a) {
            return Ok(ConjugateVerdict::Fails(ConjugateWitness::Reflexive(id.clone())));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if c(a, b) && c(b, a) {
                return Ok(ConjugateVerdict::Fails(ConjugateWitness::Symmetric(
                    ids[a].clone(),
                    ids[b].clone(),
                )));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !c(a, b) {
                continue;
            }
            for k in 0..n {
                if c(b, k) && !c(a, k) {
                    return Ok(ConjugateVerdict::Fails(ConjugateWitness::Intransitive(
                        ids[a].clone(),
                        ids[b].clone(),
                        ids[k].clone(),
                    )));
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let in_base = base.comparable(a, b);
            let in_cand = c(a, b) || c(b, a);
            let pair = (ids[a].clone(), ids[b].clone());
            match (in_base, in_cand) {
                (false, false) => return Ok(ConjugateVerdict::Fails(ConjugateWitness::Neither(pair.0, pair.1))),
                (true, true) => return Ok(ConjugateVerdict::Fails(ConjugateWitness::Both(pair.0, pair.1))),
                _ => {}
            }
        }
    }
    Ok(ConjugateVerdict::Conjugate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePoset {
        FinitePoset::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    fn order(ids: &[&str]) -> LinearOrder {
        LinearOrder::new(ids.iter().copied()).unwrap()
    }

    #[test]
    fn p1_examples() {
        assert!(check_p1(&chain3(), &order(&["a", "b", "c"])).unwrap().is_empty());
        let ab = FinitePoset::new(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(
            check_p1(&ab, &order(&["b", "a"])).unwrap(),
            vec![("a".to_string(), "b".to_string())]
        );
    }

    #[test]
    fn p2_examples() {
        let p = FinitePoset::new(["a", "b", "c"], [("a", "c")]).unwrap();
        assert_eq!(
            check_p2(&p, &order(&["a", "b", "c"])).unwrap(),
            vec![("a".to_string(), "b".to_string(), "c".to_string())]
        );
        assert!(check_p2(&p, &order(&["a", "c", "b"])).unwrap().is_empty());
    }

    #[test]
    fn mismatched_order_is_an_error() {
        let err = check_p1(&chain3(), &order(&["a", "b"])).unwrap_err();
        assert!(matches!(err, OrderError::ElementMismatch(_)));
        assert!(check_p2(&chain3(), &order(&["a", "b", "x"])).is_err());
        assert!(conjugate_relation(&chain3(), &order(&["a"])).is_err());
    }

    #[test]
    fn conjugate_relation_examples() {
        let rel = conjugate_relation(&chain3(), &order(&["a", "b", "c"])).unwrap();
        assert!(rel.pairs().is_empty());
        let anti = FinitePoset::new(["a", "b"], []).unwrap();
        let rel = conjugate_relation(&anti, &order(&["a", "b"])).unwrap();
        assert_eq!(rel.pairs(), vec![("a".to_string(), "b".to_string())]);
    }

    #[test]
    fn check_conjugate_examples() {
        let empty = Relation::new(["a", "b", "c"], []).unwrap();
        assert!(check_conjugate(&chain3(), &empty).unwrap().is_conjugate());

        let anti = FinitePoset::new(["a", "b"], []).unwrap();
        let empty2 = Relation::new(["a", "b"], []).unwrap();
        assert_eq!(
            check_conjugate(&anti, &empty2).unwrap(),
            ConjugateVerdict::Fails(ConjugateWitness::Neither("a".into(), "b".into()))
        );
    }

    #[test]
    fn check_conjugate_witnesses() {
        let anti = FinitePoset::new(["a", "b", "c"], []).unwrap();
        let refl = Relation::new(["a", "b", "c"], [("a", "a")]).unwrap();
        assert_eq!(
            check_conjugate(&anti, &refl).unwrap(),
            ConjugateVerdict::Fails(ConjugateWitness::Reflexive("a".into()))
        );
        let sym = Relation::new(["a", "b", "c"], [("a", "b"), ("b", "a")]).unwrap();
        assert!(matches!(
            check_conjugate(&anti, &sym).unwrap(),
            ConjugateVerdict::Fails(ConjugateWitness::Symmetric(..))
        ));
        let intrans = Relation::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            check_conjugate(&anti, &intrans).unwrap(),
            ConjugateVerdict::Fails(ConjugateWitness::Intransitive("a".into(), "b".into(), "c".into()))
        );
        let both = Relation::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(check_conjugate(&chain3(), &both).unwrap() != ConjugateVerdict::Conjugate);
        let other = Relation::new(["a", "b", "x"], []).unwrap();
        assert!(check_conjugate(&chain3(), &other).is_err());
    }

    #[test]
    fn candidate_element_order_is_irrelevant() {
        let anti = FinitePoset::new(["a", "b"], []).unwrap();
        let rel = Relation::new(["b", "a"], [("b", "a")]).unwrap();
        assert!(check_conjugate(&anti, &rel).unwrap().is_conjugate());
    }

    #[test]
    fn index_predicates_match_reports() {
        let p = FinitePoset::new(["a", "b", "c"], [("a", "c")]).unwrap();
        assert!(!p2_holds(&p, &[0, 1, 2]));
        assert!(p2_holds(&p, &[0, 2, 1]));
        assert!(p1_holds(&p, &[1, 0, 2]));
        assert!(!p1_holds(&p, &[2, 1, 0]));
    }
}
