//! Gauss diagrams of closed and long virtual knots.
//!
//! A diagram with `m` arrows has `2m` endpoint slots numbered `0..2m`.
//! Closed diagrams read the slots cyclically; long diagrams read them
//! linearly, with the basepoint sitting before slot 0. An arrow runs from
//! the overcrossing endpoint (tail) to the undercrossing endpoint (head).

mod moves;
mod normal;
mod parse;
mod two;

pub use moves::{KinkDir, Move, MoveKind, MoveOptions};
pub use two::{ArrowTag, ComponentOrder, Endpoint, TwoArrow, TwoComponentDiagram, TwoKind};

use std::fmt;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Closed,
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Framing {
    Framed,
    Unframed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Closed => "closed",
            Kind::Long => "long",
        })
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Framing::Framed => "framed",
            Framing::Unframed => "unframed",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("label `{0}` has its {1} endpoint twice")]
    EndpointUsedTwice(String, &'static str),
    #[error("label `{0}` has {1} endpoint(s), expected 2")]
    LabelCount(String, usize),
    #[error("sign on a flat diagram (label `{0}`)")]
    SignOnFlat(String),
    #[error("missing sign on label `{0}` in a signed diagram")]
    MissingSign(String),
    #[error("endpoints of label `{0}` disagree on {1}")]
    InconsistentLabel(String, &'static str),
    #[error("invalid endpoint layout: {0}")]
    InvalidLayout(String),
    #[error("no arrow with id {0}")]
    NoSuchArrow(usize),
    #[error("arrow {0} is singular")]
    SingularArrow(usize),
    #[error("arrow {0} is not singular")]
    NotSingular(usize),
    #[error("arrow {0} is not an inter-component arrow")]
    NotInter(usize),
    #[error("operation requires a {0} diagram")]
    WrongKind(&'static str),
    #[error("diagrams of different categories")]
    CategoryMismatch,
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

/// One arrow of a Gauss diagram. `sign` is `None` exactly when the diagram is flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: Option<Sign>,
    pub singular: bool,
}

impl Arrow {
    /// Tail of the arrow after flattening (negative arrows reverse).
    pub fn flat_tail(&self) -> usize {
        if self.sign == Some(Sign::Neg) {
            self.head
        } else {
            self.tail
        }
    }

    pub fn flat_head(&self) -> usize {
        if self.sign == Some(Sign::Neg) {
            self.tail
        } else {
            self.head
        }
    }

    pub fn sign_value(&self) -> i64 {
        self.sign.map_or(1, Sign::value)
    }
}

/// A validated Gauss diagram. Values are immutable; every operation returns a new diagram.
///
/// Equality compares the serialized normal form, so closed diagrams that
/// differ by a rotation or by arrow numbering are equal.
#[derive(Clone, Debug)]
pub struct GaussDiagram {
    kind: Kind,
    framing: Framing,
    flat: bool,
    arrows: Vec<Arrow>,
}

impl GaussDiagram {
    pub fn new(kind: Kind, framing: Framing, flat: bool, arrows: Vec<Arrow>) -> Result<Self, DiagramError> {
        let d = GaussDiagram { kind, framing, flat, arrows };
        d.validate()?;
        Ok(d)
    }

    pub fn empty(kind: Kind, framing: Framing) -> Self {
        GaussDiagram { kind, framing, flat: false, arrows: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(kind: Kind, framing: Framing, flat: bool, arrows: Vec<Arrow>) -> Self {
        let d = GaussDiagram { kind, framing, flat, arrows };
        debug_assert!(d.validate().is_ok(), "{:?}", d.validate());
        d
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let n = self.num_slots();
        let mut seen = vec![false; n];
        for (i, a) in self.arrows.iter().enumerate() {
            for p in [a.tail, a.head] {
                if p >= n {
                    return Err(DiagramError::InvalidLayout(format!("arrow {i} uses slot {p} of {n}")));
                }
                if seen[p] {
                    return Err(DiagramError::InvalidLayout(format!("slot {p} used twice")));
                }
                seen[p] = true;
            }
            if self.flat != a.sign.is_none() {
                return Err(DiagramError::InvalidLayout(format!("arrow {i} sign does not match flatness")));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn framing(&self) -> Framing {
        self.framing
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> Result<&Arrow, DiagramError> {
        self.arrows.get(id).ok_or(DiagramError::NoSuchArrow(id))
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn num_slots(&self) -> usize {
        2 * self.arrows.len()
    }

    pub fn singular_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].singular).collect()
    }

    pub fn classical_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| !self.arrows[i].singular).collect()
    }

    pub fn is_singular(&self) -> bool {
        self.arrows.iter().any(|a| a.singular)
    }

    pub fn writhe(&self) -> i64 {
        self.arrows.iter().filter(|a| !a.singular).map(Arrow::sign_value).sum()
    }

    /// For every slot, the arrow occupying it and whether it is that arrow's head.
    pub fn slot_owners(&self) -> Vec<(usize, bool)> {
        let mut owners = vec![(usize::MAX, false); self.num_slots()];
        for (i, a) in self.arrows.iter().enumerate() {
            owners[a.tail] = (i, false);
            owners[a.head] = (i, true);
        }
        owners
    }

    /// The slot following `p` along the core, if any.
    pub fn next_slot(&self, p: usize) -> Option<usize> {
        let n = self.num_slots();
        match self.kind {
            Kind::Long if p + 1 < n => Some(p + 1),
            Kind::Long => None,
            Kind::Closed => Some((p + 1) % n),
        }
    }

    /// Whether `p` and `q` are consecutive slots, in either order.
    pub fn adjacent(&self, p: usize, q: usize) -> bool {
        p != q && (self.next_slot(p) == Some(q) || self.next_slot(q) == Some(p))
    }

    /// Number of gaps where endpoints may be inserted.
    pub fn num_gaps(&self) -> usize {
        match self.kind {
            Kind::Long => self.num_slots() + 1,
            Kind::Closed => self.num_slots().max(1),
        }
    }

    pub fn with_framing(&self, framing: Framing) -> GaussDiagram {
        GaussDiagram { framing, ..self.clone() }
    }

    /// Reverses every negative arrow and erases signs. Singular marks are kept.
    pub fn flatten(&self) -> GaussDiagram {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { tail: a.flat_tail(), head: a.flat_head(), sign: None, singular: a.singular })
            .collect();
        GaussDiagram { arrows, flat: true, ..self.clone() }
    }

    /// Marks the classical arrow `c` as a double point; its sign is kept.
    pub fn glue(&self, c: usize) -> Result<GaussDiagram, DiagramError> {
        let a = self.arrow(c)?;
        if a.singular {
            return Err(DiagramError::SingularArrow(c));
        }
        let mut out = self.clone();
        out.arrows[c].singular = true;
        Ok(out)
    }

    /// Resolves the double point `c` into a crossing of sign `sign`.
    ///
    /// The stored sign of a singular arrow records its flat direction, so
    /// resolving to the opposite sign is a crossing change of the stored arrow.
    pub fn resolve(&self, c: usize, sign: Sign) -> Result<GaussDiagram, DiagramError> {
        let a = *self.arrow(c)?;
        if !a.singular {
            return Err(DiagramError::NotSingular(c));
        }
        let mut out = self.clone();
        let r = &mut out.arrows[c];
        r.singular = false;
        match a.sign {
            None => {}
            Some(s) if s == sign => {}
            Some(_) => {
                std::mem::swap(&mut r.tail, &mut r.head);
                r.sign = Some(sign);
            }
        }
        Ok(out)
    }

    /// All `2^k` resolutions of the singular arrows with the product of the chosen signs.
    pub fn resolutions(&self) -> Result<Vec<(i64, GaussDiagram)>, DiagramError> {
        if self.flat {
            return Err(DiagramError::WrongKind("signed"));
        }
        let sing = self.singular_arrows();
        let mut out = Vec::with_capacity(1 << sing.len());
        for mask in 0u32..(1u32 << sing.len()) {
            let mut d = self.clone();
            let mut weight = 1;
            for (bit, &c) in sing.iter().enumerate() {
                let s = if mask & (1 << bit) == 0 { Sign::Pos } else { Sign::Neg };
                weight *= s.value();
                d = d.resolve(c, s)?;
            }
            out.push((weight, d));
        }
        Ok(out)
    }

    /// Long knot `self` followed by long knot `other`.
    pub fn connected_sum(&self, other: &GaussDiagram) -> Result<GaussDiagram, DiagramError> {
        if self.kind != Kind::Long || other.kind != Kind::Long {
            return Err(DiagramError::WrongKind("long"));
        }
        if self.framing != other.framing || self.flat != other.flat {
            return Err(DiagramError::CategoryMismatch);
        }
        let off = self.num_slots();
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| Arrow { tail: a.tail + off, head: a.head + off, ..*a }));
        Ok(GaussDiagram { arrows, ..self.clone() })
    }

    /// Moves the basepoint of a long diagram forward by `slots` endpoints.
    pub fn move_basepoint(&self, slots: i64) -> Result<GaussDiagram, DiagramError> {
        if self.kind != Kind::Long {
            return Err(DiagramError::WrongKind("long"));
        }
        let n = self.num_slots() as i64;
        if n == 0 {
            return Ok(self.clone());
        }
        let shift = |p: usize| (p as i64 - slots).rem_euclid(n) as usize;
        let arrows = self.arrows.iter().map(|a| Arrow { tail: shift(a.tail), head: shift(a.head), ..*a }).collect();
        Ok(GaussDiagram { arrows, ..self.clone() })
    }

    pub fn closure(&self) -> Result<GaussDiagram, DiagramError> {
        if self.kind != Kind::Long {
            return Err(DiagramError::WrongKind("long"));
        }
        Ok(GaussDiagram { kind: Kind::Closed, ..self.clone() })
    }

    /// Inserts endpoints at `gap` and returns the shifted arrows.
    pub(crate) fn shifted_arrows(&self, gaps: &[(usize, usize)]) -> Vec<Arrow> {
        let shift = |p: usize| p + gaps.iter().filter(|&&(g, _)| p >= g).map(|&(_, k)| k).sum::<usize>();
        self.arrows.iter().map(|a| Arrow { tail: shift(a.tail), head: shift(a.head), ..*a }).collect()
    }

    /// Removes the listed arrows and renumbers the remaining slots.
    pub(crate) fn without_arrows(&self, ids: &[usize]) -> GaussDiagram {
        let n = self.num_slots();
        let mut removed = vec![false; n];
        for &i in ids {
            removed[self.arrows[i].tail] = true;
            removed[self.arrows[i].head] = true;
        }
        let mut newpos = vec![0; n];
        let mut k = 0;
        for p in 0..n {
            newpos[p] = k;
            if !removed[p] {
                k += 1;
            }
        }
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|(i, _)| !ids.contains(i))
            .map(|(_, a)| Arrow { tail: newpos[a.tail], head: newpos[a.head], ..*a })
            .collect();
        GaussDiagram { arrows, ..self.clone() }
    }

    /// Adds a singular kink next to the basepoint (before slot 0).
    pub fn add_glued_kink(&self) -> Result<GaussDiagram, DiagramError> {
        self.add_glued_kink_at(0, KinkDir::Forward)
    }

    /// Adds a singular kink with flat direction `dir` at `gap`.
    pub fn add_glued_kink_at(&self, gap: usize, dir: KinkDir) -> Result<GaussDiagram, DiagramError> {
        if self.framing != Framing::Unframed {
            return Err(DiagramError::WrongKind("unframed"));
        }
        if self.is_singular() {
            return Err(DiagramError::IllegalMove("diagram already singular".into()));
        }
        let mut d = self.apply_move(&Move::R1Add { gap, dir, sign: Sign::Pos })?;
        let id = d.arrows.len() - 1;
        d.arrows[id].singular = true;
        Ok(d)
    }

    /// Smooths the classical arrow `c` into a two-component diagram.
    ///
    /// Component 0 is the arc from the flat tail of `c` to its flat head (the
    /// right-hand curve), component 1 the complementary arc. For long input
    /// the component through the basepoint is open and keeps the linear order.
    pub fn smooth(&self, c: usize) -> Result<TwoComponentDiagram, DiagramError> {
        let a = *self.arrow(c)?;
        if a.singular {
            return Err(DiagramError::SingularArrow(c));
        }
        let n = self.num_slots();
        let (ft, fh) = (a.flat_tail(), a.flat_head());
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut v = Vec::new();
            let mut p = (from + 1) % n;
            while p != to {
                v.push(p);
                p = (p + 1) % n;
            }
            v
        };
        let mut comps = [walk(ft, fh), walk(fh, ft)];
        let open = match self.kind {
            Kind::Closed => None,
            Kind::Long => {
                let o = if ft > fh { 0 } else { 1 };
                comps[o].sort_unstable();
                Some(o)
            }
        };
        let mut place = vec![Endpoint { comp: 0, pos: 0 }; n];
        for (ci, comp) in comps.iter().enumerate() {
            for (k, &p) in comp.iter().enumerate() {
                place[p] = Endpoint { comp: ci, pos: k };
            }
        }
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != c)
            .map(|(_, x)| TwoArrow { tail: place[x.tail], head: place[x.head], sign: x.sign, singular: x.singular })
            .collect();
        let kind = if open.is_some() { TwoKind::Tangle } else { TwoKind::Link };
        Ok(TwoComponentDiagram::from_parts_unchecked(
            kind,
            self.framing,
            self.flat,
            [comps[0].len(), comps[1].len()],
            open,
            arrows,
        ))
    }

    /// `self` together with an unlinked closed unknot as component 1.
    pub fn add_disjoint_unknot(&self) -> TwoComponentDiagram {
        let n = self.num_slots();
        let arrows = self
            .arrows
            .iter()
            .map(|x| TwoArrow {
                tail: Endpoint { comp: 0, pos: x.tail },
                head: Endpoint { comp: 0, pos: x.head },
                sign: x.sign,
                singular: x.singular,
            })
            .collect();
        let (kind, open) = match self.kind {
            Kind::Closed => (TwoKind::Link, None),
            Kind::Long => (TwoKind::Tangle, Some(0)),
        };
        TwoComponentDiagram::from_parts_unchecked(kind, self.framing, self.flat, [n, 0], open, arrows)
    }

    /// Token sequence of the normal form: labels by first appearance,
    /// minimal rotation for closed diagrams.
    fn normal_tokens(&self) -> Vec<parse::Token> {
        let n = self.num_slots();
        let owners = self.slot_owners();
        let tokens_from = |start: usize| -> Vec<parse::Token> {
            let mut label = vec![0usize; self.arrows.len()];
            let mut next = 1;
            let mut out = Vec::with_capacity(n);
            for k in 0..n {
                let p = (start + k) % n;
                let (id, is_head) = owners[p];
                if label[id] == 0 {
                    label[id] = next;
                    next += 1;
                }
                let a = &self.arrows[id];
                out.push(parse::Token { label: label[id], under: is_head, sign: a.sign, singular: a.singular });
            }
            out
        };
        match self.kind {
            Kind::Long => tokens_from(0),
            Kind::Closed => {
                let mut best: Option<Vec<parse::Token>> = None;
                for (start, owner) in owners.iter().enumerate() {
                    // The minimum always starts with an over endpoint.
                    if owner.1 {
                        continue;
                    }
                    let t = tokens_from(start);
                    if best.as_ref().is_none_or(|b| t < *b) {
                        best = Some(t);
                    }
                }
                best.unwrap_or_default()
            }
        }
    }

    /// Header line prefix, e.g. `closed framed flat`.
    pub fn header(&self) -> String {
        let mut h = format!("{} {}", self.kind, self.framing);
        if self.flat {
            h.push_str(" flat");
        }
        h
    }

    /// Token list of the normal form without the header.
    pub fn code(&self) -> String {
        self.normal_tokens().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.code();
        if code.is_empty() {
            f.write_str(&self.header())
        } else {
            write!(f, "{} {}", self.header(), code)
        }
    }
}

impl PartialEq for GaussDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.framing == other.framing
            && self.flat == other.flat
            && self.arrows.len() == other.arrows.len()
            && self.normal_tokens() == other.normal_tokens()
    }
}

impl Eq for GaussDiagram {}

impl Hash for GaussDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.framing.hash(state);
        self.flat.hash(state);
        self.normal_tokens().hash(state);
    }
}

pub use parse::{parse_gauss_code, parse_lines};

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn flatten_reverses_negative_arrows() {
        let k = d("long unframed O1- U1-");
        let f = k.flatten();
        assert_eq!(f.arrows()[0].tail, 1);
        assert_eq!(f.arrows()[0].head, 0);
        assert_eq!(f.to_string(), "long unframed flat U1 O1");
        let p = d("closed framed O1+ U2+ U1+ O2+").flatten();
        assert_eq!(p.to_string(), "closed framed flat O1 O2 U1 U2");
    }

    #[test]
    fn glue_resolve_round_trip() {
        let k = d("closed unframed O1+ U2- U1+ O2-");
        for c in 0..2 {
            let g = k.glue(c).unwrap();
            let s = k.arrows()[c].sign.unwrap();
            assert_eq!(g.resolve(c, s).unwrap(), k);
            let cc = k.apply_move(&Move::CrossingChange { arrow: c }).unwrap();
            assert_eq!(g.resolve(c, s.flip()).unwrap(), cc);
            assert_eq!(cc.flatten(), k.flatten());
        }
    }

    #[test]
    fn basepoint_and_closure() {
        let k = d("long unframed O1+ U2- U1+ O2- O3+ U3+");
        assert_eq!(k.move_basepoint(0).unwrap(), k);
        assert_eq!(k.move_basepoint(6).unwrap(), k);
        for s in -7..8 {
            assert_eq!(k.move_basepoint(s).unwrap().closure().unwrap(), k.closure().unwrap());
        }
    }

    #[test]
    fn connected_sum_with_empty() {
        let k = d("long framed O1+ U2- U1+ O2-");
        let e = GaussDiagram::empty(Kind::Long, Framing::Framed);
        assert_eq!(k.connected_sum(&e).unwrap(), k);
        assert_eq!(e.connected_sum(&k).unwrap(), k);
        assert_eq!(k.connected_sum(&k).unwrap().num_arrows(), 4);
        assert!(k.connected_sum(&k.with_framing(Framing::Unframed)).is_err());
    }

    #[test]
    fn smoothing_a_kink_gives_unlinked_components() {
        let k = d("closed unframed O1+ U1+");
        let t = k.smooth(0).unwrap();
        assert_eq!(t.arrows().len(), 0);
        assert_eq!(t.lens(), [0, 0]);
        let k = d("long framed O2+ O1+ U1+ U2+");
        let t = k.smooth(0).unwrap();
        assert!(t.arrows().iter().all(|_| true));
        assert_eq!(t.inter_arrows().len(), 0);
    }

    #[test]
    fn glued_kink_is_singular_and_annihilating() {
        let k = d("closed unframed O1+ U2+ U1+ O2+");
        let g = k.add_glued_kink().unwrap();
        assert_eq!(g.num_arrows(), 3);
        assert_eq!(g.singular_arrows().len(), 1);
        assert!(k.with_framing(Framing::Framed).add_glued_kink().is_err());
    }
}
