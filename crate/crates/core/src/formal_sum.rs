//! Finite formal integer combinations of class keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the free abelian group on `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K, weight: i64) -> Self {
        let mut s = Self::new();
        s.add_term(key, weight);
        s
    }

    pub fn add_term(&mut self, key: K, weight: i64) {
        if weight == 0 {
            return;
        }
        let w = self.terms.entry(key.clone()).or_insert(0);
        *w += weight;
        if *w == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_sum(&mut self, other: &Self, factor: i64) {
        for (k, w) in &other.terms {
            self.add_term(k.clone(), w * factor);
        }
    }

    pub fn weight(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> + '_ {
        self.terms.iter().map(|(k, &w)| (k, w))
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::new();
        out.add_sum(self, factor);
        out
    }

    /// Pushes the sum forward along `f`, merging weights of keys with equal images.
    pub fn map_keys<K2: Ord + Clone, F: FnMut(&K) -> K2>(&self, mut f: F) -> FormalSum<K2> {
        let mut out = FormalSum::new();
        for (k, w) in self.iter() {
            out.add_term(f(k), w);
        }
        out
    }
}

impl<K: Ord + Clone> Add for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out.add_sum(rhs, 1);
        out
    }
}

impl<K: Ord + Clone> Sub for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out.add_sum(rhs, -1);
        out
    }
}

impl<K: Ord + Clone> Neg for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        self.scale(-1)
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, w)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = if w < 0 { '-' } else { '+' };
            write!(f, "{sign}{}·{{{k}}}", w.unsigned_abs())?;
        }
        Ok(())
    }
}

/// Key of a flat class, carried at two tiers.
///
/// `raw` is the serialized diagram after greedy simplification; `fingerprint`
/// is a string of computable invariants of the class. Ordering and display
/// use `raw` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub raw: String,
    pub fingerprint: String,
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

/// Outcome of comparing two sums of flat classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every raw key and weight agrees.
    Equal,
    /// The fingerprint projections differ, so the sums differ.
    Distinct,
    /// Not decided by the available invariants.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::Distinct => "DISTINCT",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

pub fn fingerprint_projection(sum: &FormalSum<ClassKey>) -> FormalSum<String> {
    sum.map_keys(|k| k.fingerprint.clone())
}

pub fn compare(a: &FormalSum<ClassKey>, b: &FormalSum<ClassKey>) -> Verdict {
    if a.map_keys(|k| k.raw.clone()) == b.map_keys(|k| k.raw.clone()) {
        Verdict::Equal
    } else if fingerprint_projection(a) != fingerprint_projection(b) {
        Verdict::Distinct
    } else {
        Verdict::Unknown
    }
}
