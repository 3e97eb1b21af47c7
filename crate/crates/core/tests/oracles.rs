//! Independent re-derivations checked against the engine: Reidemeister III
//! from plane geometry, smoothing by walking the smoothed curve, and the
//! first row of the based matrix from smoothing indices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vknot_core::based_matrix;
use vknot_core::diagram::{Arrow, Framing, GaussDiagram, Kind, Move, MoveOptions, Sign};
use vknot_core::harness::random_diagram_with;
use vknot_core::invariants::crossing_indices;

#[derive(Clone, Copy)]
struct Tok {
    label: usize,
    over: bool,
    sign: Sign,
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Three oriented lines at distinct heights bounding a triangle. Line 2 sits
/// at offset `c`; moving it from `c = 1` to `c = -1` is a third
/// Reidemeister move. Returns each strand's crossings in travel order, as
/// tokens labelled `base + k` for the crossings of lines (0,1), (0,2), (1,2).
fn strands(orient: [i64; 3], heights: [usize; 3], c: i64, base: usize, reversed: [bool; 3]) -> [Vec<Tok>; 3] {
    let dirs = [(orient[0], 0), (0, orient[1]), (orient[2], -orient[2])];
    let points = [(0, 0), (c, 0), (0, c)];
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut out: [Vec<(i64, Tok)>; 3] = Default::default();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let (over, under) = if heights[i] > heights[j] { (i, j) } else { (j, i) };
        let sign = if cross(dirs[over], dirs[under]) > 0 { Sign::Pos } else { Sign::Neg };
        for line in [i, j] {
            let t = points[k].0 * dirs[line].0 + points[k].1 * dirs[line].1;
            out[line].push((t, Tok { label: base + k, over: line == over, sign }));
        }
    }
    let mut k = 0;
    out.map(|mut v| {
        v.sort_by_key(|&(t, _)| t);
        let mut toks: Vec<Tok> = v.into_iter().map(|(_, tok)| tok).collect();
        if reversed[k] {
            toks.reverse();
        }
        k += 1;
        toks
    })
}

/// Diagram whose core runs through `items` in order.
fn assemble(kind: Kind, framing: Framing, items: &[Vec<Tok>], labels: usize) -> GaussDiagram {
    let toks: Vec<Tok> = items.iter().flatten().copied().collect();
    let mut tail = vec![0; labels];
    let mut head = vec![0; labels];
    let mut sign = vec![Sign::Pos; labels];
    for (p, t) in toks.iter().enumerate() {
        if t.over {
            tail[t.label] = p;
        } else {
            head[t.label] = p;
        }
        sign[t.label] = t.sign;
    }
    let arrows =
        (0..labels).map(|l| Arrow { tail: tail[l], head: head[l], sign: Some(sign[l]), singular: false }).collect();
    GaussDiagram::new(kind, framing, false, arrows).expect("assembled diagram is valid")
}

fn base_items(rng: &mut ChaCha8Rng, m: usize) -> Vec<Vec<Tok>> {
    let mut items = Vec::new();
    for label in 0..m {
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        items.push(vec![Tok { label, over: true, sign }]);
        items.push(vec![Tok { label, over: false, sign }]);
    }
    items
}

fn r3_images(d: &GaussDiagram, ids: [usize; 3]) -> Vec<GaussDiagram> {
    d.legal_moves(MoveOptions { additions: false, crossing_changes: false })
        .into_iter()
        .filter(|m| matches!(m, Move::R3 { arrows, .. } if *arrows == ids))
        .map(|m| d.apply_move(&m).expect("legal move applies"))
        .collect()
}

#[test]
fn third_move_matches_plane_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..600 {
        let kind = if round % 2 == 0 { Kind::Closed } else { Kind::Long };
        let framing = if round % 4 < 2 { Framing::Framed } else { Framing::Unframed };
        let m = rng.gen_range(0..4);
        let orient = [0; 3].map(|_| if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut heights = [0, 1, 2];
        heights.shuffle(&mut rng);
        let before = strands(orient, heights, 1, m, [false; 3]);
        let after = strands(orient, heights, -1, m, [false; 3]);
        let partial = strands(orient, heights, 1, m, [true, true, false]);

        let mut order: Vec<usize> = (0..2 * m + 3).collect();
        order.shuffle(&mut rng);
        let base = base_items(&mut rng, m);
        let items = |tri: &[Vec<Tok>; 3]| -> Vec<Vec<Tok>> {
            order.iter().map(|&k| if k < 2 * m { base[k].clone() } else { tri[k - 2 * m].clone() }).collect()
        };
        let d0 = assemble(kind, framing, &items(&before), m + 3);
        let d1 = assemble(kind, framing, &items(&after), m + 3);
        let bad = assemble(kind, framing, &items(&partial), m + 3);
        let ids = [m, m + 1, m + 2];

        let images = r3_images(&d0, ids);
        assert!(images.contains(&d1), "{d0}");
        assert!(!images.contains(&bad));
        assert!(r3_images(&d1, ids).contains(&d0));

        let flat_images = r3_images(&d0.flatten(), ids);
        assert!(flat_images.contains(&d1.flatten()), "flat {d0}");
    }
}

/// Every local configuration of three strands crossing pairwise, laid out
/// on a long core with separators so that the strands are the only reading.
/// The engine must accept exactly the configurations some triangle of lines
/// in the plane produces.
#[test]
fn third_move_validity_is_exactly_planar() {
    let framing = Framing::Unframed;
    // Separator arrows 3 and 4: tails between the blocks, heads at the end.
    let sep = |label| vec![Tok { label, over: true, sign: Sign::Pos }];
    let sep_heads =
        vec![Tok { label: 3, over: false, sign: Sign::Pos }, Tok { label: 4, over: false, sign: Sign::Pos }];
    let layout = |blocks: [Vec<Tok>; 3], perm: &[usize]| -> GaussDiagram {
        let items = vec![
            blocks[perm[0]].clone(),
            sep(3),
            blocks[perm[1]].clone(),
            sep(4),
            blocks[perm[2]].clone(),
            sep_heads.clone(),
        ];
        assemble(Kind::Long, framing, &items, 5)
    };
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut planar = Vec::new();
    for bits in 0..8 {
        let orient = [0, 1, 2].map(|k| if bits >> k & 1 == 1 { 1 } else { -1 });
        for heights in perms {
            for perm in &perms {
                planar.push(layout(strands(orient, heights, 1, 0, [false; 3]), perm));
                planar.push(layout(strands(orient, heights, -1, 0, [false; 3]), perm));
            }
        }
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut accepted = 0;
    for code in 0..(1 << 9) {
        let bit = |k: usize| code >> k & 1 == 1;
        let mut blocks: [Vec<Tok>; 3] = Default::default();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let sign = if bit(k) { Sign::Pos } else { Sign::Neg };
            let i_over = bit(3 + k);
            blocks[i].push(Tok { label: k, over: i_over, sign });
            blocks[j].push(Tok { label: k, over: !i_over, sign });
        }
        for (line, b) in blocks.iter_mut().enumerate() {
            if bit(6 + line) {
                b.reverse();
            }
        }
        for perm in &perms {
            let d = layout(blocks.clone(), perm);
            let engine = !r3_images(&d, [0, 1, 2]).is_empty();
            let geometric = planar.contains(&d);
            assert_eq!(engine, geometric, "{d}");
            accepted += usize::from(engine);
        }
    }
    assert!(accepted > 0);
}

/// Components of the smoothing at `c`, found by travelling along the
/// smoothed curve: on reaching an endpoint of `c`, continue after the other
/// one. Returns the right-hand curve (closed) or the open curve (long) first.
fn walk_components(d: &GaussDiagram, c: usize) -> [Vec<usize>; 2] {
    let n = d.num_slots();
    let closed = d.kind() == Kind::Closed;
    let (ft, fh) = (d.arrows()[c].flat_tail(), d.arrows()[c].flat_head());
    let advance = |mut q: usize| -> Option<usize> {
        loop {
            if closed {
                q %= n;
            } else if q >= n {
                return None;
            }
            if q == ft || q == fh {
                q = if q == ft { fh } else { ft } + 1;
                continue;
            }
            return Some(q);
        }
    };
    let cycle = |start: usize| -> Vec<usize> {
        let mut v = vec![start];
        let mut p = advance(start + 1).expect("closed curve");
        while p != start {
            v.push(p);
            p = advance(p + 1).expect("closed curve");
        }
        v
    };
    if closed {
        let from = |x: usize| {
            let s = (x + 1) % n;
            if s == ft || s == fh {
                Vec::new()
            } else {
                cycle(s)
            }
        };
        [from(ft), from(fh)]
    } else {
        let mut open = Vec::new();
        let mut p = advance(0);
        while let Some(q) = p {
            open.push(q);
            p = advance(q + 1);
        }
        let rest = (0..n).find(|&q| q != ft && q != fh && !open.contains(&q));
        [open, rest.map(cycle).unwrap_or_default()]
    }
}

fn rotations_equal(a: &[(usize, bool)], b: &[(usize, bool)]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter())))
}

#[test]
fn smoothing_matches_curve_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..800 {
        let kind = if round % 2 == 0 { Kind::Closed } else { Kind::Long };
        let n = rng.gen_range(1..8);
        let d = random_diagram_with(&mut rng, kind, Framing::Framed, n, false);
        for c in 0..n {
            let t = d.smooth(c).unwrap();
            assert_eq!(t.arrows().len(), n - 1);
            let owners = d.slot_owners();
            let ids: Vec<usize> = (0..n).filter(|&x| x != c).collect();
            let seq_of = |comp: usize| -> Vec<(usize, bool)> {
                let mut v = vec![(0, false); t.lens()[comp]];
                for (k, a) in t.arrows().iter().enumerate() {
                    for (e, under) in [(a.tail, false), (a.head, true)] {
                        if e.comp == comp {
                            v[e.pos] = (ids[k], under);
                        }
                    }
                }
                v
            };
            let walked = walk_components(&d, c).map(|cp| cp.iter().map(|&p| owners[p]).collect::<Vec<_>>());
            let first = t.open_component().unwrap_or(0);
            if kind == Kind::Long {
                assert_eq!(walked[0], seq_of(first), "{d} at {c}");
            }
            assert!(rotations_equal(&walked[0], &seq_of(first)), "{d} at {c}");
            assert!(rotations_equal(&walked[1], &seq_of(1 - first)), "{d} at {c}");
        }
    }
}

#[test]
fn first_matrix_row_is_the_smoothing_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..500 {
        let kind = if round % 2 == 0 { Kind::Closed } else { Kind::Long };
        let n = rng.gen_range(0..9);
        let d = random_diagram_with(&mut rng, kind, Framing::Unframed, n, true);
        let m = based_matrix::build(&d).unwrap();
        for ci in crossing_indices(&d) {
            assert_eq!(m.entry(ci.arrow + 1, 0), ci.right, "{d}");
        }
    }
}

/// `b(e, f)` counted by walking both arcs explicitly.
fn pairing_by_walk(d: &GaussDiagram, e: usize, f: usize) -> i64 {
    let n = d.num_slots();
    let arc = |from: usize, to: usize| -> Vec<bool> {
        let mut v = vec![false; n];
        let mut p = (from + 1) % n;
        while p != to {
            v[p] = true;
            p = (p + 1) % n;
        }
        v
    };
    let ends = |x: usize| (d.arrows()[x].flat_tail(), d.arrows()[x].flat_head());
    let (a, b) = ends(e);
    let first = arc(a, b);
    let second = if e == f { arc(b, a) } else { arc(ends(f).0, ends(f).1) };
    let mut k = 0;
    for x in 0..d.num_arrows() {
        let (t, h) = ends(x);
        k += i64::from(first[t] && second[h]) - i64::from(first[h] && second[t]);
    }
    if e != f {
        let (c, dd) = ends(f);
        k += match (first[c], first[dd]) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        };
    }
    k
}

#[test]
fn matrix_entries_match_arc_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for round in 0..400 {
        let kind = if round % 2 == 0 { Kind::Closed } else { Kind::Long };
        let n = rng.gen_range(0..8);
        let d = random_diagram_with(&mut rng, kind, Framing::Framed, n, true);
        let m = based_matrix::build(&d).unwrap();
        for e in 0..n {
            assert_eq!(m.entry(e + 1, 0), pairing_by_walk(&d, e, e));
            for f in 0..n {
                if e != f {
                    assert_eq!(m.entry(e + 1, f + 1), pairing_by_walk(&d, e, f), "{d} ({e},{f})");
                }
            }
        }
    }
}
