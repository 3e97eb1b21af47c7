//! Two-component diagrams produced by smoothing a crossing.

use super::{Arrow, DiagramError, Framing, GaussDiagram, Kind, Sign};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoKind {
    /// Two closed components.
    Link,
    /// One open component (through the basepoint) and one closed component.
    Tangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub comp: usize,
    pub pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoArrow {
    pub tail: Endpoint,
    pub head: Endpoint,
    pub sign: Option<Sign>,
    pub singular: bool,
}

impl TwoArrow {
    pub fn flat_tail(&self) -> Endpoint {
        if self.sign == Some(Sign::Neg) {
            self.head
        } else {
            self.tail
        }
    }

    pub fn flat_head(&self) -> Endpoint {
        if self.sign == Some(Sign::Neg) {
            self.tail
        } else {
            self.head
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowTag {
    Intra(usize),
    Inter,
}

/// Which component counts as the first one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentOrder {
    /// Component 0, the right-hand curve of the smoothing.
    RightFirst,
    /// The open component of a tangle.
    LongFirst,
    /// Component 1.
    RightSecond,
}

/// Two components with endpoint sequences of lengths `lens`; positions on a
/// closed component are cyclic, on the open component linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoComponentDiagram {
    kind: TwoKind,
    framing: Framing,
    flat: bool,
    lens: [usize; 2],
    open: Option<usize>,
    arrows: Vec<TwoArrow>,
}

impl TwoComponentDiagram {
    pub fn new(
        kind: TwoKind,
        framing: Framing,
        flat: bool,
        lens: [usize; 2],
        open: Option<usize>,
        arrows: Vec<TwoArrow>,
    ) -> Result<Self, DiagramError> {
        let t = TwoComponentDiagram { kind, framing, flat, lens, open, arrows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_parts_unchecked(
        kind: TwoKind,
        framing: Framing,
        flat: bool,
        lens: [usize; 2],
        open: Option<usize>,
        arrows: Vec<TwoArrow>,
    ) -> Self {
        let t = TwoComponentDiagram { kind, framing, flat, lens, open, arrows };
        debug_assert!(t.validate().is_ok(), "{:?}", t.validate());
        t
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::InvalidLayout(m));
        match (self.kind, self.open) {
            (TwoKind::Link, None) => {}
            (TwoKind::Tangle, Some(o)) if o < 2 => {}
            _ => return bad("component kinds do not match the diagram kind".into()),
        }
        let mut seen = [vec![false; self.lens[0]], vec![false; self.lens[1]]];
        for a in &self.arrows {
            for e in [a.tail, a.head] {
                if e.comp > 1 || e.pos >= self.lens[e.comp] || seen[e.comp][e.pos] {
                    return bad(format!("endpoint {e:?} out of range or reused"));
                }
                seen[e.comp][e.pos] = true;
            }
            if self.flat != a.sign.is_none() {
                return bad("sign does not match flatness".into());
            }
        }
        if seen.iter().flatten().any(|&s| !s) {
            return bad("unused endpoint slot".into());
        }
        Ok(())
    }

    pub fn kind(&self) -> TwoKind {
        self.kind
    }

    pub fn framing(&self) -> Framing {
        self.framing
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    pub fn lens(&self) -> [usize; 2] {
        self.lens
    }

    pub fn open_component(&self) -> Option<usize> {
        self.open
    }

    pub fn arrows(&self) -> &[TwoArrow] {
        &self.arrows
    }

    pub fn tag(&self, i: usize) -> ArrowTag {
        let a = &self.arrows[i];
        if a.tail.comp == a.head.comp {
            ArrowTag::Intra(a.tail.comp)
        } else {
            ArrowTag::Inter
        }
    }

    pub fn inter_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.tag(i) == ArrowTag::Inter).collect()
    }

    pub fn flatten(&self) -> TwoComponentDiagram {
        let arrows = self
            .arrows
            .iter()
            .map(|a| TwoArrow { tail: a.flat_tail(), head: a.flat_head(), sign: None, singular: a.singular })
            .collect();
        TwoComponentDiagram { arrows, flat: true, ..self.clone() }
    }

    pub fn first_component(&self, order: ComponentOrder) -> Result<usize, DiagramError> {
        match order {
            ComponentOrder::RightFirst => Ok(0),
            ComponentOrder::RightSecond => Ok(1),
            ComponentOrder::LongFirst => self.open.ok_or(DiagramError::WrongKind("tangle")),
        }
    }

    /// Sign of an inter arrow: +1 when its flat tail lies on the first component.
    pub fn inter_sign(&self, i: usize, first: usize) -> i64 {
        if self.arrows[i].flat_tail().comp == first {
            1
        } else {
            -1
        }
    }

    /// Signed count of arrows from the first component to the second.
    pub fn intersection_index(&self, order: ComponentOrder) -> Result<i64, DiagramError> {
        let first = self.first_component(order)?;
        Ok(self.inter_arrows().into_iter().map(|i| self.inter_sign(i, first)).sum())
    }

    /// Smooths the inter arrow `x`, joining both components into one.
    pub fn join_at(&self, x: usize) -> Result<GaussDiagram, DiagramError> {
        if x >= self.arrows.len() {
            return Err(DiagramError::NoSuchArrow(x));
        }
        if self.tag(x) != ArrowTag::Inter {
            return Err(DiagramError::NotInter(x));
        }
        let a = &self.arrows[x];
        let at = |c: usize| if a.tail.comp == c { a.tail.pos } else { a.head.pos };
        let rotated = |c: usize| -> Vec<Endpoint> {
            let len = self.lens[c];
            (1..len).map(|k| Endpoint { comp: c, pos: (at(c) + k) % len }).collect()
        };
        let (order, kind): (Vec<Endpoint>, Kind) = match self.open {
            None => {
                let mut v = rotated(0);
                v.extend(rotated(1));
                (v, Kind::Closed)
            }
            Some(o) => {
                let c = 1 - o;
                let io = at(o);
                let mut v: Vec<Endpoint> = (0..io).map(|pos| Endpoint { comp: o, pos }).collect();
                v.extend(rotated(c));
                v.extend((io + 1..self.lens[o]).map(|pos| Endpoint { comp: o, pos }));
                (v, Kind::Long)
            }
        };
        let mut newpos = [vec![0; self.lens[0]], vec![0; self.lens[1]]];
        for (k, e) in order.iter().enumerate() {
            newpos[e.comp][e.pos] = k;
        }
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != x)
            .map(|(_, b)| Arrow {
                tail: newpos[b.tail.comp][b.tail.pos],
                head: newpos[b.head.comp][b.head.pos],
                sign: b.sign,
                singular: b.singular,
            })
            .collect();
        Ok(GaussDiagram::from_parts_unchecked(kind, self.framing, self.flat, arrows))
    }
}

impl fmt::Display for TwoComponentDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TwoKind::Link => "link",
            TwoKind::Tangle => "tangle",
        };
        write!(f, "{kind} {}", self.framing)?;
        if self.flat {
            f.write_str(" flat")?;
        }
        for c in 0..2 {
            let mut toks = vec![String::new(); self.lens[c]];
            for (i, a) in self.arrows.iter().enumerate() {
                for (e, under) in [(a.tail, false), (a.head, true)] {
                    if e.comp == c {
                        let sign = match a.sign {
                            Some(Sign::Pos) => "+",
                            Some(Sign::Neg) => "-",
                            None => "",
                        };
                        let star = if a.singular { "*" } else { "" };
                        toks[e.pos] = format!("{star}{}{}{sign}", if under { "U" } else { "O" }, i + 1);
                    }
                }
            }
            let open = if self.open == Some(c) { "open" } else { "closed" };
            write!(f, " {open}[{}]", toks.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn swapping_order_negates_index() {
        let k = d("closed unframed O1+ O2+ U1+ O3- U2+ U3-");
        for c in 0..3 {
            let t = k.smooth(c).unwrap();
            let a = t.intersection_index(ComponentOrder::RightFirst).unwrap();
            let b = t.intersection_index(ComponentOrder::RightSecond).unwrap();
            assert_eq!(a, -b);
        }
        assert!(k.smooth(0).unwrap().intersection_index(ComponentOrder::LongFirst).is_err());
    }

    #[test]
    fn long_smoothing_keeps_open_component_linear() {
        let k = d("long unframed O1+ O2+ U1+ U2+");
        let t = k.smooth(0).unwrap();
        assert_eq!(t.kind(), TwoKind::Tangle);
        let o = t.open_component().unwrap();
        // The arc 0 -> 2 does not contain the basepoint.
        assert_eq!(o, 1);
        assert_eq!(t.lens(), [1, 1]);
        assert_eq!(t.inter_arrows(), vec![0]);
    }

    #[test]
    fn join_inverts_smoothing_arrow_count() {
        let k = d("closed framed O1+ U2- O3+ U1+ O2- U3+");
        for c in 0..3 {
            let t = k.smooth(c).unwrap();
            for x in t.inter_arrows() {
                let j = t.join_at(x).unwrap();
                assert_eq!(j.num_arrows(), 1);
                assert_eq!(j.kind(), Kind::Closed);
            }
        }
    }
}
