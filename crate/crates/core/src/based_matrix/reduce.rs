use super::{BasedMatrix, Flavor};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// A primitive matrix up to the size-preserving moves: the canonical forms
/// of every member of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveClass {
    members: BTreeMap<String, BasedMatrix>,
}

impl PrimitiveClass {
    fn new(orbit: Vec<BasedMatrix>) -> Self {
        PrimitiveClass { members: orbit.into_iter().map(|m| (m.canonical_key(), m)).collect() }
    }

    pub fn members(&self) -> BTreeSet<&String> {
        self.members.keys().collect()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &BasedMatrix> {
        self.members.values()
    }

    /// The member with the smallest key.
    pub fn representative(&self) -> &BasedMatrix {
        self.members.values().next().expect("a class has members")
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn size(&self) -> usize {
        self.representative().n()
    }

    pub fn key(&self) -> String {
        self.members.keys().cloned().collect::<Vec<_>>().join(" | ")
    }

    /// Largest possible orbit for a flavor: the Whitney move doubles it on
    /// framed matrices and D12/D21 double it on singular ones.
    pub fn max_members(flavor: Flavor, singular: bool) -> usize {
        let f = if flavor == Flavor::Framed { 2 } else { 1 };
        f * if singular { 2 } else { 1 }
    }
}

impl fmt::Display for PrimitiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl BasedMatrix {
    fn first_contracted(&self) -> Option<BasedMatrix> {
        self.contractions().first().map(|c| self.contract(c).expect("listed contraction is legal"))
    }

    fn all_contracted(&self) -> Vec<BasedMatrix> {
        self.contractions().iter().map(|c| self.contract(c).expect("listed contraction is legal")).collect()
    }

    /// Canonical forms reachable through size-preserving moves, in BFS order.
    pub fn residual_orbit(&self) -> Vec<BasedMatrix> {
        let start = self.canonical_form();
        let mut seen = BTreeSet::from([start.canonical_key()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            for r in m.residuals() {
                let next = m.apply_residual(&r).expect("listed move is legal").canonical_form();
                if seen.insert(next.canonical_key()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out
    }

    /// Deterministic reduction: contract greedily; when stuck, look through
    /// the size-preserving orbit for a member that contracts.
    pub fn reduce_to_primitive(&self) -> PrimitiveClass {
        let mut cur = self.clone();
        loop {
            if let Some(next) = cur.first_contracted() {
                cur = next;
                continue;
            }
            let orbit = cur.residual_orbit();
            match orbit.iter().find_map(|m| m.first_contracted()) {
                Some(next) => cur = next,
                None => return PrimitiveClass::new(orbit),
            }
        }
    }

    /// Reduction with random choices of contraction and orbit member.
    pub fn reduce_randomized<R: Rng>(&self, rng: &mut R) -> PrimitiveClass {
        let mut cur = self.clone();
        loop {
            let mut options = cur.all_contracted();
            if options.is_empty() {
                let orbit = cur.residual_orbit();
                options = orbit.iter().flat_map(|m| m.all_contracted()).collect();
                if options.is_empty() {
                    return PrimitiveClass::new(orbit);
                }
            }
            cur = options.choose(rng).expect("nonempty").clone();
        }
    }

    /// Every primitive class reachable by any sequence of contractions and
    /// size-preserving moves. Exponential; meant for small matrices.
    pub fn reduce_exhaustive(&self) -> BTreeSet<PrimitiveClass> {
        let mut out = BTreeSet::new();
        let start = self.canonical_form();
        let mut seen = BTreeSet::from([start.canonical_key()]);
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            let orbit = m.residual_orbit();
            let next: Vec<BasedMatrix> = orbit.iter().flat_map(|o| o.all_contracted()).collect();
            if next.is_empty() {
                out.insert(PrimitiveClass::new(orbit));
            }
            for k in next {
                let k = k.canonical_form();
                if seen.insert(k.canonical_key()) {
                    queue.push_back(k);
                }
            }
        }
        out
    }

    /// Primitive: no contraction applies anywhere in the orbit.
    pub fn is_primitive(&self) -> bool {
        self.residual_orbit().iter().all(|m| m.contractions().is_empty())
    }
}
