//! Reidemeister moves, the framed double-kink move, crossing changes and
//! the moves of singular diagrams, expressed on Gauss diagrams.

use super::{Arrow, DiagramError, Framing, GaussDiagram, Kind, Sign};

/// Flat direction of a kink: `Forward` when the flat tail immediately precedes the flat head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KinkDir {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    FR1Add,
    FR1Remove,
    R2Add,
    R2Remove,
    R3,
    CrossingChange,
    SingularSlide,
    SingularitySwitch,
}

/// A move together with its site.
///
/// Added arrows receive the next free ids; signs are ignored on flat diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// Unframed only: a kink at `gap`.
    R1Add {
        gap: usize,
        dir: KinkDir,
        sign: Sign,
    },
    R1Remove {
        arrow: usize,
    },
    /// Framed only: two consecutive kinks with the same flat direction and
    /// opposite signs; the first gets `sign`.
    FR1Add {
        gap: usize,
        dir: KinkDir,
        sign: Sign,
    },
    FR1Remove {
        first: usize,
        second: usize,
    },
    /// Two arrows `x` (sign `sign`) and `y` (opposite sign) with tails
    /// inserted at `tail_gap` in the order `x, y` and heads at `head_gap`,
    /// in the order `x, y` when `parallel`. `heads_first` orders the two
    /// blocks when the gaps coincide.
    R2Add {
        tail_gap: usize,
        head_gap: usize,
        parallel: bool,
        sign: Sign,
        heads_first: bool,
    },
    R2Remove {
        a: usize,
        b: usize,
    },
    /// The three arrows and the first slot of each of the three strands,
    /// ascending; the strands tell apart the two ways a triangle whose six
    /// endpoints are consecutive on a closed core can be read.
    R3 {
        arrows: [usize; 3],
        strands: [usize; 3],
    },
    CrossingChange {
        arrow: usize,
    },
    /// Third strand sliding past a double point.
    SingularSlide {
        arrows: [usize; 3],
        strands: [usize; 3],
    },
    /// Flat singular diagrams: moves the double point to the other crossing of a bigon.
    SingularitySwitch {
        singular: usize,
        partner: usize,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::FR1Add { .. } => MoveKind::FR1Add,
            Move::FR1Remove { .. } => MoveKind::FR1Remove,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R3 { .. } => MoveKind::R3,
            Move::CrossingChange { .. } => MoveKind::CrossingChange,
            Move::SingularSlide { .. } => MoveKind::SingularSlide,
            Move::SingularitySwitch { .. } => MoveKind::SingularitySwitch,
        }
    }

    /// The move undoing `self` when applied to `before.apply_move(self)`.
    pub fn inverse(&self, before: &GaussDiagram) -> Result<Move, DiagramError> {
        let m = before.num_arrows();
        Ok(match *self {
            Move::R1Add { .. } => Move::R1Remove { arrow: m },
            Move::FR1Add { .. } => Move::FR1Remove { first: m, second: m + 1 },
            Move::R2Add { .. } => Move::R2Remove { a: m, b: m + 1 },
            Move::R1Remove { arrow } => {
                let a = before.arrow(arrow)?;
                let (gap, _) = before.reinsertion_gap(&[a.tail, a.head])?;
                let dir = before.kink_dir(arrow).ok_or_else(|| illegal("not a kink"))?;
                Move::R1Add { gap, dir, sign: a.sign.unwrap_or(Sign::Pos) }
            }
            Move::FR1Remove { first, second } => {
                let (x, _) = if before.consecutive_kinks(first, second) { (first, second) } else { (second, first) };
                let a = before.arrow(first)?;
                let b = before.arrow(second)?;
                let (gap, _) = before.reinsertion_gap(&[a.tail, a.head, b.tail, b.head])?;
                let dir = before.shared_kink_dir(first, second).ok_or_else(|| illegal("not a kink pair"))?;
                Move::FR1Add { gap, dir, sign: before.arrows[x].sign.unwrap_or(Sign::Pos) }
            }
            Move::R2Remove { a, b } => before.r2_reinsertion(a, b)?,
            Move::R3 { .. } | Move::CrossingChange { .. } | Move::SingularSlide { .. } => *self,
            Move::SingularitySwitch { singular, partner } => {
                Move::SingularitySwitch { singular: partner, partner: singular }
            }
        })
    }
}

/// Which move families `legal_moves` enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveOptions {
    pub additions: bool,
    pub crossing_changes: bool,
}

impl Default for MoveOptions {
    fn default() -> Self {
        MoveOptions { additions: true, crossing_changes: false }
    }
}

fn illegal(msg: &str) -> DiagramError {
    DiagramError::IllegalMove(msg.to_string())
}

/// A short arc of the core holding two consecutive endpoints, `first` before `second`.
#[derive(Clone, Copy, Debug)]
struct Strand {
    first: usize,
    second: usize,
}

/// Three strands pairwise crossing once: `strands[0]` meets arrows 0 and 1,
/// `strands[1]` arrows 1 and 2, `strands[2]` arrows 0 and 2.
#[derive(Clone, Copy, Debug)]
struct Triangle {
    arrows: [usize; 3],
    strands: [Strand; 3],
}

impl Triangle {
    fn strand_key(&self) -> [usize; 3] {
        let mut k = self.strands.map(|s| s.first);
        k.sort_unstable();
        k
    }
}

const STRAND_ARROWS: [[usize; 2]; 3] = [[0, 1], [1, 2], [0, 2]];

impl GaussDiagram {
    pub(crate) fn kink_dirs(&self, a: usize) -> (bool, bool) {
        let x = &self.arrows[a];
        let (ft, fh) = (x.flat_tail(), x.flat_head());
        (self.next_slot(ft) == Some(fh), self.next_slot(fh) == Some(ft))
    }

    pub fn kink_dir(&self, a: usize) -> Option<KinkDir> {
        match self.kink_dirs(a) {
            (true, _) => Some(KinkDir::Forward),
            (false, true) => Some(KinkDir::Backward),
            _ => None,
        }
    }

    fn shared_kink_dir(&self, a: usize, b: usize) -> Option<KinkDir> {
        let (fa, ba) = self.kink_dirs(a);
        let (fb, bb) = self.kink_dirs(b);
        if fa && fb {
            Some(KinkDir::Forward)
        } else if ba && bb {
            Some(KinkDir::Backward)
        } else {
            None
        }
    }

    fn pair_start(&self, a: usize) -> Option<usize> {
        let x = &self.arrows[a];
        if self.next_slot(x.tail) == Some(x.head) {
            Some(x.tail)
        } else if self.next_slot(x.head) == Some(x.tail) {
            Some(x.head)
        } else {
            None
        }
    }

    fn consecutive_kinks(&self, a: usize, b: usize) -> bool {
        let starts = |x: usize| {
            let ar = &self.arrows[x];
            [ar.tail, ar.head]
                .into_iter()
                .filter(move |&p| self.next_slot(p) == Some(if p == ar.tail { ar.head } else { ar.tail }))
        };
        starts(a).any(|pa| {
            let second = self.next_slot(pa).and_then(|q| self.next_slot(q));
            second.is_some_and(|s| starts(b).any(|pb| pb == s))
        })
    }

    fn is_fr1_pair(&self, a: usize, b: usize) -> bool {
        if a == b || self.arrows[a].singular || self.arrows[b].singular {
            return false;
        }
        if self.pair_start(a).is_none() || self.pair_start(b).is_none() {
            return false;
        }
        if let (Some(sa), Some(sb)) = (self.arrows[a].sign, self.arrows[b].sign) {
            if sa == sb {
                return false;
            }
        }
        self.shared_kink_dir(a, b).is_some() && (self.consecutive_kinks(a, b) || self.consecutive_kinks(b, a))
    }

    /// Bigon shape: `x` and `y` run between the same two short arcs in
    /// opposite flat directions.
    fn bigon(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let (a, b) = (&self.arrows[x], &self.arrows[y]);
        self.adjacent(a.flat_tail(), b.flat_head()) && self.adjacent(a.flat_head(), b.flat_tail())
    }

    fn is_r2_pair(&self, x: usize, y: usize) -> bool {
        let (a, b) = (&self.arrows[x], &self.arrows[y]);
        if a.singular || b.singular {
            return false;
        }
        if let (Some(sa), Some(sb)) = (a.sign, b.sign) {
            if sa == sb {
                return false;
            }
        }
        self.bigon(x, y)
    }

    fn triangles(&self, ids: [usize; 3]) -> Vec<Triangle> {
        let [a, b, c] = ids;
        if a == b || b == c || a == c {
            return Vec::new();
        }
        let ends = |i: usize, head: bool| if head { self.arrows[i].head } else { self.arrows[i].tail };
        let strand = |p: usize, q: usize| -> Option<Strand> {
            if self.next_slot(p) == Some(q) {
                Some(Strand { first: p, second: q })
            } else if self.next_slot(q) == Some(p) {
                Some(Strand { first: q, second: p })
            } else {
                None
            }
        };
        let mut out = Vec::new();
        for mask in 0..8u8 {
            let (ea, eb, ec) = (mask & 1 != 0, mask & 2 != 0, mask & 4 != 0);
            let s_ab = strand(ends(a, ea), ends(b, eb));
            let s_bc = strand(ends(b, !eb), ends(c, !ec));
            let s_ac = strand(ends(a, !ea), ends(c, ec));
            if let (Some(s0), Some(s1), Some(s2)) = (s_ab, s_bc, s_ac) {
                out.push(Triangle { arrows: ids, strands: [s0, s1, s2] });
            }
        }
        out
    }

    /// Checks the oriented R3 pattern for the given arrow signs, where a
    /// negative sign means the over/under roles are the reverse of the flat
    /// arrow. Returns the roles `[tm, tb, mb]` as positions in `t.arrows`.
    fn r3_roles(&self, t: &Triangle, signs: [Sign; 3]) -> Option<[usize; 3]> {
        let over_end = |k: usize| {
            let a = &self.arrows[t.arrows[k]];
            if signs[k] == Sign::Pos {
                a.flat_tail()
            } else {
                a.flat_head()
            }
        };
        let owner = |p: usize| {
            (0..3).find(|&k| self.arrows[t.arrows[k]].tail == p || self.arrows[t.arrows[k]].head == p).unwrap()
        };
        let mut by_tails: [Option<usize>; 3] = [None; 3];
        for (si, s) in t.strands.iter().enumerate() {
            let tails = [s.first, s.second].iter().filter(|&&p| over_end(owner(p)) == p).count();
            if by_tails[tails].is_some() {
                return None;
            }
            by_tails[tails] = Some(si);
        }
        let (b, m, top) = (by_tails[0]?, by_tails[1]?, by_tails[2]?);
        let shared = |s1: usize, s2: usize| {
            let [p, q] = STRAND_ARROWS[s1];
            if STRAND_ARROWS[s2].contains(&p) {
                p
            } else {
                q
            }
        };
        let tm = shared(top, m);
        let tb = shared(top, b);
        let mb = shared(m, b);
        let first_is = |s: usize, k: usize| owner(t.strands[s].first) == k;
        let o_t = first_is(top, tm);
        let o_m = first_is(m, tm);
        let o_b = first_is(b, tb);
        let valid = o_m == (o_t ^ (signs[tb] != signs[mb])) && o_b == (o_t ^ (signs[tm] != signs[mb]));
        valid.then_some([tm, tb, mb])
    }

    /// All sign vectors to test: the actual signs, or every lift of a flat triple.
    fn sign_choices(&self, ids: [usize; 3]) -> Vec<[Sign; 3]> {
        if self.flat {
            (0..8u8)
                .map(|m| {
                    let s = |bit: u8| if m & bit == 0 { Sign::Pos } else { Sign::Neg };
                    [s(1), s(2), s(4)]
                })
                .collect()
        } else {
            vec![ids.map(|i| self.arrows[i].sign.unwrap_or(Sign::Pos))]
        }
    }

    /// Valid triangles on `ids`, one per way of reading the strands.
    fn find_r3(&self, ids: [usize; 3], slide: bool) -> Vec<Triangle> {
        let sing: Vec<usize> = (0..3).filter(|&k| self.arrows[ids[k]].singular).collect();
        if slide != (sing.len() == 1) || (!slide && !sing.is_empty()) {
            return Vec::new();
        }
        let mut out: Vec<Triangle> = Vec::new();
        for t in self.triangles(ids) {
            if out.iter().any(|u| u.strand_key() == t.strand_key()) {
                continue;
            }
            let valid = self.sign_choices(ids).into_iter().any(|signs| {
                // A double point may only be passed by the strand not through it.
                matches!(self.r3_roles(&t, signs), Some([_, tb, _]) if !(slide && tb == sing[0]))
            });
            if valid {
                out.push(t);
            }
        }
        out
    }

    fn r3_site(&self, ids: [usize; 3], strands: [usize; 3], slide: bool) -> Option<Triangle> {
        self.find_r3(ids, slide).into_iter().find(|t| t.strand_key() == strands)
    }

    fn swap_strands(&self, t: &Triangle) -> GaussDiagram {
        let mut out = self.clone();
        for s in &t.strands {
            for a in out.arrows.iter_mut() {
                for p in [&mut a.tail, &mut a.head] {
                    if *p == s.first {
                        *p = s.second;
                    } else if *p == s.second {
                        *p = s.first;
                    }
                }
            }
        }
        out
    }

    fn new_arrow(&self, flat_tail: usize, flat_head: usize, sign: Sign) -> Arrow {
        if self.flat {
            Arrow { tail: flat_tail, head: flat_head, sign: None, singular: false }
        } else if sign == Sign::Pos {
            Arrow { tail: flat_tail, head: flat_head, sign: Some(sign), singular: false }
        } else {
            Arrow { tail: flat_head, head: flat_tail, sign: Some(sign), singular: false }
        }
    }

    fn check_gap(&self, gap: usize) -> Result<(), DiagramError> {
        if gap > self.num_slots() {
            return Err(illegal("gap out of range"));
        }
        Ok(())
    }

    fn kink_at(&self, p: usize, dir: KinkDir, sign: Sign) -> Arrow {
        match dir {
            KinkDir::Forward => self.new_arrow(p, p + 1, sign),
            KinkDir::Backward => self.new_arrow(p + 1, p, sign),
        }
    }

    /// Gap at which endpoints occupying `slots` (consecutive) would be
    /// re-inserted after removal, up to rotation of closed diagrams.
    fn reinsertion_gap(&self, slots: &[usize]) -> Result<(usize, usize), DiagramError> {
        let n = self.num_slots();
        let wraps = self.kind == Kind::Closed && slots.contains(&0) && slots.contains(&(n - 1)) && slots.len() < n;
        let start = if wraps {
            let mut p = 0;
            while slots.contains(&((p + n - 1) % n)) {
                p = (p + n - 1) % n;
            }
            p
        } else {
            *slots.iter().min().ok_or_else(|| illegal("empty site"))?
        };
        let gap = if wraps { 0 } else { start };
        Ok((gap, start))
    }

    fn r2_reinsertion(&self, a: usize, b: usize) -> Result<Move, DiagramError> {
        if !self.is_r2_pair(a, b) {
            return Err(illegal("not an R2 pair"));
        }
        let n = self.num_slots();
        // Lift: `a` keeps its sign (positive if flat), `b` gets the other.
        let sa = self.arrows[a].sign.unwrap_or(Sign::Pos);
        let lifted = |i: usize| if i == a { sa } else { sa.flip() };
        let over = |i: usize| {
            let x = &self.arrows[i];
            if lifted(i) == Sign::Pos {
                x.flat_tail()
            } else {
                x.flat_head()
            }
        };
        let under = |i: usize| {
            let x = &self.arrows[i];
            if lifted(i) == Sign::Pos {
                x.flat_head()
            } else {
                x.flat_tail()
            }
        };
        let block_start = |p: usize, q: usize| if self.next_slot(p) == Some(q) { p } else { q };
        let tails = block_start(over(a), over(b));
        let heads = block_start(under(a), under(b));
        let rot = if self.kind == Kind::Closed && (tails == n - 1 || heads == n - 1) { 1 } else { 0 };
        let r = |p: usize| (p + rot) % n;
        let removed = [over(a), over(b), under(a), under(b)].map(r);
        let gap_of = |p: usize| r(p) - removed.iter().filter(|&&q| q < r(p)).count();
        let x = if over(a) == tails { a } else { b };
        let parallel = (under(x) == heads) == (over(x) == tails);
        let (tail_gap, head_gap) = (gap_of(tails), gap_of(heads));
        Ok(Move::R2Add {
            tail_gap,
            head_gap,
            parallel,
            sign: lifted(x),
            heads_first: tail_gap == head_gap && r(heads) < r(tails),
        })
    }

    /// Applies `m`, checking its site conditions.
    pub fn apply_move(&self, m: &Move) -> Result<GaussDiagram, DiagramError> {
        let arrow_ok = |i: usize| self.arrow(i).map(|_| ());
        match *m {
            Move::R1Add { gap, dir, sign } => {
                if self.framing != Framing::Unframed {
                    return Err(illegal("R1 in the framed category"));
                }
                self.check_gap(gap)?;
                let mut arrows = self.shifted_arrows(&[(gap, 2)]);
                arrows.push(self.kink_at(gap, dir, sign));
                Ok(GaussDiagram { arrows, ..self.clone() })
            }
            Move::R1Remove { arrow } => {
                arrow_ok(arrow)?;
                if self.framing != Framing::Unframed {
                    return Err(illegal("R1 in the framed category"));
                }
                if self.arrows[arrow].singular || self.kink_dir(arrow).is_none() {
                    return Err(illegal("not a classical kink"));
                }
                Ok(self.without_arrows(&[arrow]))
            }
            Move::FR1Add { gap, dir, sign } => {
                if self.framing != Framing::Framed {
                    return Err(illegal("FR1 in the unframed category"));
                }
                self.check_gap(gap)?;
                let mut arrows = self.shifted_arrows(&[(gap, 4)]);
                arrows.push(self.kink_at(gap, dir, sign));
                arrows.push(self.kink_at(gap + 2, dir, sign.flip()));
                Ok(GaussDiagram { arrows, ..self.clone() })
            }
            Move::FR1Remove { first, second } => {
                arrow_ok(first)?;
                arrow_ok(second)?;
                if self.framing != Framing::Framed {
                    return Err(illegal("FR1 in the unframed category"));
                }
                if !self.is_fr1_pair(first, second) {
                    return Err(illegal("not a cancelling kink pair"));
                }
                Ok(self.without_arrows(&[first, second]))
            }
            Move::R2Add { tail_gap, head_gap, parallel, sign, heads_first } => {
                self.check_gap(tail_gap)?;
                self.check_gap(head_gap)?;
                let tails_lead = tail_gap < head_gap || (tail_gap == head_gap && !heads_first);
                let (t0, h0) = if tails_lead { (tail_gap, head_gap + 2) } else { (tail_gap + 2, head_gap) };
                let mut arrows = self.shifted_arrows(&[(tail_gap, 2), (head_gap, 2)]);
                let (hx, hy) = if parallel { (h0, h0 + 1) } else { (h0 + 1, h0) };
                let gauss = |tail: usize, head: usize, s: Sign| {
                    if s == Sign::Pos {
                        self.new_arrow(tail, head, s)
                    } else {
                        self.new_arrow(head, tail, s)
                    }
                };
                arrows.push(gauss(t0, hx, sign));
                arrows.push(gauss(t0 + 1, hy, sign.flip()));
                Ok(GaussDiagram { arrows, ..self.clone() })
            }
            Move::R2Remove { a, b } => {
                arrow_ok(a)?;
                arrow_ok(b)?;
                if !self.is_r2_pair(a, b) {
                    return Err(illegal("not an R2 pair"));
                }
                Ok(self.without_arrows(&[a, b]))
            }
            Move::R3 { arrows, strands } => {
                arrows.iter().try_for_each(|&i| arrow_ok(i))?;
                let t = self.r3_site(arrows, strands, false).ok_or_else(|| illegal("not an R3 site"))?;
                Ok(self.swap_strands(&t))
            }
            Move::SingularSlide { arrows, strands } => {
                arrows.iter().try_for_each(|&i| arrow_ok(i))?;
                let t = self.r3_site(arrows, strands, true).ok_or_else(|| illegal("not a singular slide site"))?;
                Ok(self.swap_strands(&t))
            }
            Move::CrossingChange { arrow } => {
                arrow_ok(arrow)?;
                let a = self.arrows[arrow];
                let Some(s) = a.sign else {
                    return Err(illegal("crossing change on a flat diagram"));
                };
                if a.singular {
                    return Err(DiagramError::SingularArrow(arrow));
                }
                let mut out = self.clone();
                out.arrows[arrow] = Arrow { tail: a.head, head: a.tail, sign: Some(s.flip()), singular: false };
                Ok(out)
            }
            Move::SingularitySwitch { singular, partner } => {
                arrow_ok(singular)?;
                arrow_ok(partner)?;
                if !self.flat {
                    return Err(illegal("singularity switch needs a flat diagram"));
                }
                if !self.arrows[singular].singular || self.arrows[partner].singular || !self.bigon(singular, partner) {
                    return Err(illegal("not a singular bigon"));
                }
                let mut out = self.clone();
                out.arrows[singular].singular = false;
                out.arrows[partner].singular = true;
                Ok(out)
            }
        }
    }

    /// Every legal move instance, grouped by kind in `MoveKind` order and
    /// ordered lexicographically by site within each group.
    pub fn legal_moves_by_kind(&self, opts: MoveOptions) -> Vec<(MoveKind, Vec<Move>)> {
        let m = self.num_arrows();
        let gaps = self.num_gaps();
        let signs: &[Sign] = if self.flat { &[Sign::Pos] } else { &[Sign::Pos, Sign::Neg] };
        let dirs = [KinkDir::Forward, KinkDir::Backward];
        let unframed = self.framing == Framing::Unframed;
        let mut groups: Vec<(MoveKind, Vec<Move>)> = Vec::new();
        let mut push = |k: MoveKind, v: Vec<Move>| {
            if !v.is_empty() {
                groups.push((k, v));
            }
        };

        if opts.additions && unframed {
            let mut v = Vec::new();
            for gap in 0..gaps {
                for &dir in &dirs {
                    for &sign in signs {
                        v.push(Move::R1Add { gap, dir, sign });
                    }
                }
            }
            push(MoveKind::R1Add, v);
        }
        if unframed {
            let v = (0..m)
                .filter(|&a| !self.arrows[a].singular && self.kink_dir(a).is_some())
                .map(|arrow| Move::R1Remove { arrow })
                .collect();
            push(MoveKind::R1Remove, v);
        }
        if opts.additions && !unframed {
            let mut v = Vec::new();
            for gap in 0..gaps {
                for &dir in &dirs {
                    for &sign in signs {
                        v.push(Move::FR1Add { gap, dir, sign });
                    }
                }
            }
            push(MoveKind::FR1Add, v);
        }
        if !unframed {
            let mut v = Vec::new();
            for a in 0..m {
                for b in a + 1..m {
                    if self.is_fr1_pair(a, b) {
                        v.push(Move::FR1Remove { first: a, second: b });
                    }
                }
            }
            push(MoveKind::FR1Remove, v);
        }
        if opts.additions {
            let mut v = Vec::new();
            for tail_gap in 0..gaps {
                for head_gap in 0..gaps {
                    for parallel in [false, true] {
                        for &sign in signs {
                            for heads_first in [false, true] {
                                if heads_first && tail_gap != head_gap {
                                    continue;
                                }
                                v.push(Move::R2Add { tail_gap, head_gap, parallel, sign, heads_first });
                            }
                        }
                    }
                }
            }
            push(MoveKind::R2Add, v);
        }
        let mut v = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if self.is_r2_pair(a, b) {
                    v.push(Move::R2Remove { a, b });
                }
            }
        }
        push(MoveKind::R2Remove, v);

        let mut r3 = Vec::new();
        let mut slides = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let ids = [a, b, c];
                    for t in self.find_r3(ids, false) {
                        r3.push(Move::R3 { arrows: ids, strands: t.strand_key() });
                    }
                    for t in self.find_r3(ids, true) {
                        slides.push(Move::SingularSlide { arrows: ids, strands: t.strand_key() });
                    }
                }
            }
        }
        push(MoveKind::R3, r3);
        if opts.crossing_changes && !self.flat {
            let v = (0..m).filter(|&a| !self.arrows[a].singular).map(|arrow| Move::CrossingChange { arrow }).collect();
            push(MoveKind::CrossingChange, v);
        }
        push(MoveKind::SingularSlide, slides);
        if self.flat {
            let mut v = Vec::new();
            for singular in self.singular_arrows() {
                for partner in 0..m {
                    if !self.arrows[partner].singular && self.bigon(singular, partner) {
                        v.push(Move::SingularitySwitch { singular, partner });
                    }
                }
            }
            push(MoveKind::SingularitySwitch, v);
        }
        groups
    }

    pub fn legal_moves(&self, opts: MoveOptions) -> Vec<Move> {
        self.legal_moves_by_kind(opts).into_iter().flat_map(|(_, v)| v).collect()
    }
}
