//! Greedy simplification and serialization of flat one- and two-component
//! diagrams, used as the raw tier of class keys.

use super::{Framing, GaussDiagram, Kind, TwoComponentDiagram};

type End = (usize, usize);
/// Label, under endpoint, singular.
type Token = (usize, bool, bool);

#[derive(Clone, Copy, Debug)]
struct CArrow {
    tail: End,
    head: End,
    singular: bool,
}

/// Flat arrows on one or two curves. Framed curves remember the parity of
/// the kinks removed from each component.
#[derive(Clone, Debug)]
pub(crate) struct Curves {
    name: &'static str,
    framed: bool,
    lens: Vec<usize>,
    open: Vec<bool>,
    arrows: Vec<CArrow>,
    parity: Vec<u8>,
    unordered: bool,
}

impl Curves {
    pub fn from_diagram(d: &GaussDiagram) -> Curves {
        let arrows = d
            .arrows()
            .iter()
            .map(|a| CArrow { tail: (0, a.flat_tail()), head: (0, a.flat_head()), singular: a.singular })
            .collect();
        Curves {
            name: match d.kind() {
                Kind::Closed => "closed",
                Kind::Long => "long",
            },
            framed: d.framing() == Framing::Framed,
            lens: vec![d.num_slots()],
            open: vec![d.kind() == Kind::Long],
            arrows,
            parity: vec![0],
            unordered: false,
        }
    }

    pub fn from_two(t: &TwoComponentDiagram) -> Curves {
        let arrows = t
            .arrows()
            .iter()
            .map(|a| {
                let (ft, fh) = (a.flat_tail(), a.flat_head());
                CArrow { tail: (ft.comp, ft.pos), head: (fh.comp, fh.pos), singular: a.singular }
            })
            .collect();
        let open = t.open_component();
        Curves {
            name: if open.is_some() { "tangle" } else { "link" },
            framed: t.framing() == Framing::Framed,
            lens: t.lens().to_vec(),
            open: (0..2).map(|c| open == Some(c)).collect(),
            arrows,
            parity: vec![0, 0],
            unordered: open.is_none(),
        }
    }

    fn next(&self, e: End) -> Option<End> {
        let (c, p) = e;
        let len = self.lens[c];
        if self.open[c] {
            (p + 1 < len).then_some((c, p + 1))
        } else {
            Some((c, (p + 1) % len))
        }
    }

    fn adjacent(&self, a: End, b: End) -> bool {
        a != b && (self.next(a) == Some(b) || self.next(b) == Some(a))
    }

    fn remove(&mut self, ids: &[usize]) {
        let mut removed: Vec<Vec<bool>> = self.lens.iter().map(|&l| vec![false; l]).collect();
        for &i in ids {
            let a = self.arrows[i];
            removed[a.tail.0][a.tail.1] = true;
            removed[a.head.0][a.head.1] = true;
        }
        let newpos: Vec<Vec<usize>> = removed
            .iter()
            .map(|r| {
                let mut k = 0;
                r.iter()
                    .map(|&gone| {
                        let p = k;
                        if !gone {
                            k += 1;
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        for (c, r) in removed.iter().enumerate() {
            self.lens[c] -= r.iter().filter(|&&g| g).count();
        }
        let mut keep = Vec::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            if !ids.contains(&i) {
                keep.push(CArrow {
                    tail: (a.tail.0, newpos[a.tail.0][a.tail.1]),
                    head: (a.head.0, newpos[a.head.0][a.head.1]),
                    singular: a.singular,
                });
            }
        }
        self.arrows = keep;
    }

    fn find_kink(&self) -> Option<usize> {
        (0..self.arrows.len()).find(|&i| {
            let a = &self.arrows[i];
            !a.singular && a.tail.0 == a.head.0 && self.adjacent(a.tail, a.head)
        })
    }

    fn find_bigon(&self) -> Option<(usize, usize)> {
        let m = self.arrows.len();
        for i in 0..m {
            if self.arrows[i].singular {
                continue;
            }
            for j in i + 1..m {
                let (x, y) = (&self.arrows[i], &self.arrows[j]);
                if !y.singular && self.adjacent(x.tail, y.head) && self.adjacent(x.head, y.tail) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Removes kinks and bigons until none is left. Each pass removes at
    /// least one arrow, so at most `m` passes run.
    pub fn simplify(&mut self) {
        loop {
            if let Some(i) = self.find_kink() {
                let c = self.arrows[i].tail.0;
                self.remove(&[i]);
                if self.framed {
                    self.parity[c] ^= 1;
                }
            } else if let Some((i, j)) = self.find_bigon() {
                self.remove(&[i, j]);
            } else {
                break;
            }
        }
    }

    fn tokens(&self, order: &[usize], starts: &[usize]) -> Vec<Token> {
        let mut at: Vec<Vec<(usize, bool)>> = self.lens.iter().map(|&l| vec![(0, false); l]).collect();
        for (i, a) in self.arrows.iter().enumerate() {
            at[a.tail.0][a.tail.1] = (i, false);
            at[a.head.0][a.head.1] = (i, true);
        }
        let mut label = vec![0; self.arrows.len()];
        let mut next = 1;
        let mut out = Vec::with_capacity(2 * self.arrows.len());
        for (k, &c) in order.iter().enumerate() {
            let len = self.lens[c];
            for j in 0..len {
                let (i, under) = at[c][(starts[k] + j) % len];
                if label[i] == 0 {
                    label[i] = next;
                    next += 1;
                }
                out.push((label[i], under, self.arrows[i].singular));
            }
        }
        out
    }

    /// Serialized normal form: minimum over component orders (links only)
    /// and rotations of closed components.
    pub fn key(&self) -> String {
        let orders: Vec<Vec<usize>> = match self.lens.len() {
            1 => vec![vec![0]],
            _ if self.unordered => vec![vec![0, 1], vec![1, 0]],
            _ => {
                let o = self.open.iter().position(|&x| x).unwrap_or(0);
                vec![vec![o, 1 - o]]
            }
        };
        let mut best: Option<(Vec<usize>, Vec<Token>, Vec<u8>)> = None;
        for order in orders {
            let rots: Vec<Vec<usize>> = order
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    if self.open[c] || self.lens[c] == 0 {
                        return vec![0];
                    }
                    let all: Vec<usize> = (0..self.lens[c]).collect();
                    if k > 0 {
                        return all;
                    }
                    // The first token carries label 1; an over endpoint sorts first.
                    let tails: Vec<usize> =
                        all.iter().copied().filter(|&p| self.arrows.iter().any(|a| a.tail == (c, p))).collect();
                    if tails.is_empty() {
                        all
                    } else {
                        tails
                    }
                })
                .collect();
            let lens: Vec<usize> = order.iter().map(|&c| self.lens[c]).collect();
            let par: Vec<u8> = order.iter().map(|&c| self.parity[c]).collect();
            let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
            for r in &rots {
                combos = combos
                    .into_iter()
                    .flat_map(|c| {
                        r.iter().map(move |&x| {
                            let mut c2 = c.clone();
                            c2.push(x);
                            c2
                        })
                    })
                    .collect();
            }
            for starts in combos {
                let toks = self.tokens(&order, &starts);
                let better = match &best {
                    None => true,
                    Some((bl, bt, bp)) => (&lens, &toks, &par) < (bl, bt, bp),
                };
                if better {
                    best = Some((lens.clone(), toks, par.clone()));
                }
            }
        }
        let (lens, toks, par) = best.expect("at least one candidate");
        let mut s = format!("{} {}", self.name, if self.framed { "framed" } else { "unframed" });
        let mut it = toks.iter();
        for l in &lens {
            let body: Vec<String> = it
                .by_ref()
                .take(*l)
                .map(|&(lab, under, sing)| {
                    format!("{}{}{lab}", if sing { "*" } else { "" }, if under { "U" } else { "O" })
                })
                .collect();
            s.push_str(&format!(" [{}]", body.join(" ")));
        }
        if self.framed {
            let p: Vec<String> = par.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(" k={}", p.join(",")));
        }
        s
    }
}

impl GaussDiagram {
    /// Raw class key: the flattened diagram after greedy removal of kinks
    /// and bigons, serialized in normal form.
    pub fn flat_class_key(&self) -> String {
        let mut c = Curves::from_diagram(self);
        c.simplify();
        c.key()
    }
}

impl TwoComponentDiagram {
    pub fn flat_class_key(&self) -> String {
        let mut c = Curves::from_two(self);
        c.simplify();
        c.key()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn kinks_and_bigons_vanish() {
        assert_eq!(d("closed unframed O1+ U1+").flat_class_key(), "closed unframed []");
        assert_eq!(d("closed framed O1+ U1+").flat_class_key(), "closed framed [] k=1");
        assert_eq!(d("closed framed O1+ U1+ O2- U2-").flat_class_key(), "closed framed [] k=0");
        assert_eq!(d("long unframed O1+ O2- U1+ U2-").flat_class_key(), "long unframed []");
    }

    #[test]
    fn key_ignores_crossing_changes_and_rotation() {
        let a = d("closed unframed O1+ O2+ U1+ U2+");
        let b = d("closed unframed U1+ U2- O1+ O2-");
        assert_eq!(a.flat_class_key(), b.flat_class_key());
        assert_eq!(a.flatten().flat_class_key(), a.flat_class_key());
    }

    #[test]
    fn link_key_is_symmetric_in_components() {
        let k = d("closed unframed O1+ O2+ U1+ O3+ U2+ U3+");
        let t = k.smooth(0).unwrap();
        assert!(t.flat_class_key().starts_with("link unframed"));
    }
}
