//! Seeded randomized checks: random diagrams, move walks, invariance of the
//! invariants, order-one vanishing, based-matrix homology and the
//! telescoping identity along crossing-change paths.
//!
//! Every sample draws from its own ChaCha8 stream, selected by
//! `(check << 48) | (category << 40) | sample`, so a sample replays alone.

use crate::based_matrix::{self, BasedMatrix, Extension, Flavor, PrimitiveClass};
use crate::diagram::{Arrow, Framing, GaussDiagram, Kind, Move, MoveOptions, Sign};
use crate::invariants::{self, Invariant};
use crate::poly::LaurentPolynomial;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    ClosedFramed,
    ClosedUnframed,
    LongFramed,
    LongUnframed,
}

impl Category {
    pub const ALL: [Category; 4] =
        [Category::ClosedFramed, Category::ClosedUnframed, Category::LongFramed, Category::LongUnframed];

    pub fn kind(self) -> Kind {
        match self {
            Category::ClosedFramed | Category::ClosedUnframed => Kind::Closed,
            Category::LongFramed | Category::LongUnframed => Kind::Long,
        }
    }

    pub fn framing(self) -> Framing {
        match self {
            Category::ClosedFramed | Category::LongFramed => Framing::Framed,
            Category::ClosedUnframed | Category::LongUnframed => Framing::Unframed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::ClosedFramed => "closed-framed",
            Category::ClosedUnframed => "closed-unframed",
            Category::LongFramed => "long-framed",
            Category::LongUnframed => "long-unframed",
        }
    }

    fn index(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown category `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Pt,
    PtOrdered,
    PtMod2,
    S,
    G,
    BmHomology,
    OrderOne,
    Telescope,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Pt,
        Check::PtOrdered,
        Check::PtMod2,
        Check::S,
        Check::G,
        Check::BmHomology,
        Check::OrderOne,
        Check::Telescope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Pt => "pt",
            Check::PtOrdered => "pt-ordered",
            Check::PtMod2 => "pt-mod2",
            Check::S => "S",
            Check::G => "G",
            Check::BmHomology => "bm-homology",
            Check::OrderOne => "order-one",
            Check::Telescope => "telescope",
        }
    }

    fn index(self) -> u64 {
        self as u64
    }

    pub fn applies_to(self, c: Category) -> bool {
        self != Check::PtOrdered || c.kind() == Kind::Long
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_arrows: usize,
    /// Moves per walk; also the length bound of crossing-change paths.
    pub steps: usize,
    /// Samples per check and category.
    pub samples: usize,
    pub categories: Vec<Category>,
    pub checks: Vec<Check>,
    /// Run only this sample index.
    pub only_sample: Option<usize>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 1,
            max_arrows: 8,
            steps: 50,
            samples: 1000,
            categories: Category::ALL.to_vec(),
            checks: Check::ALL.to_vec(),
            only_sample: None,
        }
    }
}

impl FuzzConfig {
    fn sample_ids(&self) -> Vec<usize> {
        match self.only_sample {
            Some(s) => vec![s],
            None => (0..self.samples).collect(),
        }
    }

    /// Command line that replays one sample.
    pub fn replay_command(&self, check: Check, category: Category, sample: usize) -> String {
        format!(
            "vknot fuzz --seed {} --steps {} --max-arrows {} --checks {check} --categories {category} --sample {sample}",
            self.seed, self.steps, self.max_arrows
        )
    }
}

pub fn rng_for(seed: u64, check: Check, category: Category, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((check.index() << 48) | (category.index() << 40) | sample as u64);
    rng
}

/// Uniformly random interleaving of `arrows` labeled arrows with random
/// directions and signs.
pub fn random_diagram_with<R: Rng>(
    rng: &mut R,
    kind: Kind,
    framing: Framing,
    arrows: usize,
    flat: bool,
) -> GaussDiagram {
    let mut slots: Vec<usize> = (0..arrows).flat_map(|i| [i, i]).collect();
    slots.shuffle(rng);
    let mut first: Vec<Option<usize>> = vec![None; arrows];
    let mut out: Vec<Option<Arrow>> = vec![None; arrows];
    for (p, &i) in slots.iter().enumerate() {
        match first[i] {
            None => first[i] = Some(p),
            Some(q) => {
                let (tail, head) = if rng.gen_bool(0.5) { (q, p) } else { (p, q) };
                let sign = (!flat).then(|| if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg });
                out[i] = Some(Arrow { tail, head, sign, singular: false });
            }
        }
    }
    let arrows = out.into_iter().map(|a| a.expect("both endpoints placed")).collect();
    GaussDiagram::new(kind, framing, flat, arrows).expect("random diagrams are valid")
}

/// Random signed diagram with at most `max_arrows` arrows.
pub fn random_diagram<R: Rng>(rng: &mut R, category: Category, max_arrows: usize) -> GaussDiagram {
    let n = rng.gen_range(0..=max_arrows);
    random_diagram_with(rng, category.kind(), category.framing(), n, false)
}

/// One step of a walk: a uniformly chosen move kind, then a uniformly
/// chosen site. Additions stop once the diagram holds `cap` arrows.
pub fn random_move<R: Rng>(rng: &mut R, d: &GaussDiagram, crossing_changes: bool, cap: usize) -> Option<Move> {
    let opts = MoveOptions { additions: d.num_arrows() < cap, crossing_changes };
    let groups = d.legal_moves_by_kind(opts);
    let (_, moves) = groups.choose(rng)?;
    moves.choose(rng).cloned()
}

/// The diagrams visited by a walk of at most `steps` moves, with the move
/// leading to each.
pub fn random_walk<R: Rng>(
    rng: &mut R,
    start: &GaussDiagram,
    steps: usize,
    crossing_changes: bool,
    cap: usize,
) -> Result<Vec<(Move, GaussDiagram)>, String> {
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some(m) = random_move(rng, &cur, crossing_changes, cap) else { break };
        let next = cur.apply_move(&m).map_err(|e| format!("legal move {m:?} failed on {cur}: {e}"))?;
        next.validate().map_err(|e| format!("move {m:?} on {cur} produced an invalid diagram: {e}"))?;
        out.push((m, next.clone()));
        cur = next;
    }
    Ok(out)
}

fn walk_cap(cfg: &FuzzConfig) -> usize {
    cfg.max_arrows + 4
}

fn check_poly_walk<R: Rng>(
    rng: &mut R,
    cfg: &FuzzConfig,
    category: Category,
    inv: impl Fn(&GaussDiagram) -> Result<LaurentPolynomial, invariants::InvariantError>,
    crossing_changes: bool,
) -> Result<(), String> {
    let d0 = random_diagram(rng, category, cfg.max_arrows);
    let v0 = inv(&d0).map_err(|e| e.to_string())?;
    let mut prev = d0.clone();
    for (k, (m, d)) in random_walk(rng, &d0, cfg.steps, crossing_changes, walk_cap(cfg))?.into_iter().enumerate() {
        let v = inv(&d).map_err(|e| e.to_string())?;
        if v != v0 {
            return Err(format!("move {k} {m:?}: {prev} -> {d}: value {v0} became {v} (start {d0})"));
        }
        prev = d;
    }
    Ok(())
}

fn check_sum_walk<R: Rng>(
    rng: &mut R,
    cfg: &FuzzConfig,
    category: Category,
    inv: impl Fn(&GaussDiagram) -> Result<crate::FormalSum<String>, invariants::InvariantError>,
) -> Result<(), String> {
    let d0 = random_diagram(rng, category, cfg.max_arrows);
    let walk = random_walk(rng, &d0, cfg.steps, false, walk_cap(cfg))?;
    let Some((_, end)) = walk.last() else { return Ok(()) };
    let (a, b) = (inv(&d0).map_err(|e| e.to_string())?, inv(end).map_err(|e| e.to_string())?);
    if a != b {
        return Err(format!("{d0} -> {end}: {a} became {b}"));
    }
    Ok(())
}

fn random_extension<R: Rng>(rng: &mut R, m: &BasedMatrix) -> Extension {
    let unframed = m.flavor() == Flavor::Unframed;
    match rng.gen_range(0..3) {
        0 if unframed => Extension::M1,
        1 if unframed => Extension::M2,
        0 => Extension::HatM1,
        1 => Extension::HatM2,
        _ => Extension::M3 { values: (0..m.n()).map(|_| rng.gen_range(-2..=2)).collect() },
    }
}

fn same_class(a: &PrimitiveClass, b: &PrimitiveClass) -> bool {
    a.members().iter().any(|k| b.members().contains(k))
}

fn check_bm_homology<R: Rng>(rng: &mut R, cfg: &FuzzConfig, category: Category, sample: usize) -> Result<(), String> {
    let n = rng.gen_range(0..=cfg.max_arrows);
    let mut d = random_diagram_with(rng, category.kind(), category.framing(), n, true);
    if sample % 2 == 1 && n > 0 {
        d = d.glue(rng.gen_range(0..n)).map_err(|e| e.to_string())?;
    }
    let class_of = |d: &GaussDiagram| -> Result<PrimitiveClass, String> {
        Ok(based_matrix::build(d).map_err(|e| e.to_string())?.reduce_to_primitive())
    };
    let bound = |c: &PrimitiveClass, m: &BasedMatrix| -> Result<(), String> {
        if c.len() > PrimitiveClass::max_members(m.flavor(), m.is_singular()) {
            return Err(format!("primitive class with {} members: {c}", c.len()));
        }
        Ok(())
    };
    let m0 = based_matrix::build(&d).map_err(|e| e.to_string())?;
    let c0 = m0.reduce_to_primitive();
    bound(&c0, &m0)?;

    let mut m = c0.representative().clone();
    for _ in 0..rng.gen_range(1..=3) {
        m = m.extend(&random_extension(rng, &m)).map_err(|e| e.to_string())?;
        if let Some(r) = m.residuals().choose(rng).copied() {
            m = m.apply_residual(&r).map_err(|e| e.to_string())?;
        }
    }
    let back = m.reduce_to_primitive();
    if back != c0 {
        return Err(format!("extensions of {d} reduce to {back} instead of {c0}"));
    }

    let mut prev = (d.clone(), c0);
    for (m, next) in random_walk(rng, &d, cfg.steps.min(20), false, walk_cap(cfg))? {
        let c = class_of(&next)?;
        if !same_class(&prev.1, &c) {
            return Err(format!("move {m:?}: {} -> {next}: classes {} and {c}", prev.0, prev.1));
        }
        prev = (next, c);
    }
    Ok(())
}

fn check_order_one<R: Rng>(rng: &mut R, cfg: &FuzzConfig, category: Category) -> Result<(), String> {
    let n = rng.gen_range(2..=cfg.max_arrows.max(2));
    let d = random_diagram_with(rng, category.kind(), category.framing(), n, false);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let g = d.glue(ids[0]).and_then(|g| g.glue(ids[1])).map_err(|e| e.to_string())?;
    let mut invs = vec![Invariant::Pt, Invariant::Smoothing, Invariant::Glueing];
    if category.kind() == Kind::Long {
        invs.push(Invariant::PtOrdered);
    }
    for inv in invs {
        let v = invariants::vassiliev_extend(inv, &g).map_err(|e| e.to_string())?;
        if !v.is_zero() {
            return Err(format!("{inv} of {g}: {v}"));
        }
    }
    Ok(())
}

fn check_telescope<R: Rng>(rng: &mut R, cfg: &FuzzConfig, category: Category) -> Result<(), String> {
    let n = rng.gen_range(1..=cfg.max_arrows.max(1));
    let k0 = random_diagram_with(rng, category.kind(), category.framing(), n, false);
    let len = rng.gen_range(1..=cfg.steps.clamp(1, 2 * n));
    let mut k = k0.clone();
    let mut by_resolution = LaurentPolynomial::zero();
    let mut by_class = LaurentPolynomial::zero();
    for _ in 0..len {
        let c = rng.gen_range(0..n);
        let glued = k.glue(c).map_err(|e| e.to_string())?;
        k = k.apply_move(&Move::CrossingChange { arrow: c }).map_err(|e| e.to_string())?;
        let sgn = k.arrows()[c].sign_value();
        let ext = invariants::vassiliev_extend(Invariant::Pt, &glued).map_err(|e| e.to_string())?;
        let invariants::InvariantValue::Poly(p) = ext else { unreachable!("polynomial invariant") };
        by_resolution += &p.scale(sgn);
        by_class += &invariants::pt_derivative(&glued).map_err(|e| e.to_string())?.scale(sgn);
    }
    let pt = |d: &GaussDiagram| invariants::pt(d).map_err(|e| e.to_string());
    let lhs = pt(&k)? - pt(&k0)?;
    if lhs != by_resolution || lhs != by_class {
        return Err(format!("{k0} -> {k}: difference {lhs}, resolutions {by_resolution}, flat classes {by_class}"));
    }
    Ok(())
}

/// Runs one sample of one check; `Err` carries the counterexample.
pub fn run_sample(cfg: &FuzzConfig, check: Check, category: Category, sample: usize) -> Result<(), String> {
    let mut rng = rng_for(cfg.seed, check, category, sample);
    let rng = &mut rng;
    match check {
        Check::Pt => check_poly_walk(rng, cfg, category, invariants::pt, false),
        Check::PtOrdered => check_poly_walk(rng, cfg, category, invariants::pt_ordered, false),
        Check::PtMod2 => check_poly_walk(rng, cfg, category, invariants::pt_mod2, true),
        Check::S => check_sum_walk(rng, cfg, category, invariants::smoothing_fingerprints),
        Check::G => check_sum_walk(rng, cfg, category, invariants::glueing_fingerprints),
        Check::BmHomology => check_bm_homology(rng, cfg, category, sample),
        Check::OrderOne => check_order_one(rng, cfg, category),
        Check::Telescope => check_telescope(rng, cfg, category),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub sample: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSummary {
    pub check: Check,
    pub category: Category,
    /// `None` when the check does not apply to the category.
    pub samples: Option<usize>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub config: FuzzConfig,
    pub summaries: Vec<CheckSummary>,
}

impl Report {
    pub fn failure_count(&self) -> usize {
        self.summaries.iter().map(|s| s.failures.len()).sum()
    }

    pub fn is_ok(&self) -> bool {
        self.failure_count() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "fuzz seed={} steps={} max-arrows={} samples={}", c.seed, c.steps, c.max_arrows, c.samples)?;
        for s in &self.summaries {
            match s.samples {
                None => writeln!(f, "{} {}: not applicable", s.check, s.category)?,
                Some(n) => writeln!(f, "{} {}: {n} samples, {} failures", s.check, s.category, s.failures.len())?,
            }
            for x in &s.failures {
                writeln!(f, "FAIL {} {} sample {}: {}", s.check, s.category, x.sample, x.detail)?;
                writeln!(f, "  replay: {}", c.replay_command(s.check, s.category, x.sample))?;
            }
        }
        write!(f, "result: {} failures", self.failure_count())
    }
}

/// Runs every selected check on every selected category. Samples run in
/// parallel; results are merged in sample order.
pub fn run_checks(cfg: &FuzzConfig) -> Report {
    let ids = cfg.sample_ids();
    let mut summaries = Vec::new();
    for &check in &cfg.checks {
        for &category in &cfg.categories {
            if !check.applies_to(category) {
                summaries.push(CheckSummary { check, category, samples: None, failures: Vec::new() });
                continue;
            }
            let failures = ids
                .par_iter()
                .map(|&s| run_sample(cfg, check, category, s).err().map(|detail| Failure { sample: s, detail }))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
            summaries.push(CheckSummary { check, category, samples: Some(ids.len()), failures });
        }
    }
    Report { config: cfg.clone(), summaries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_diagrams_replay() {
        let a = random_diagram(&mut rng_for(1, Check::Pt, Category::LongFramed, 3), Category::LongFramed, 6);
        let b = random_diagram(&mut rng_for(1, Check::Pt, Category::LongFramed, 3), Category::LongFramed, 6);
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.num_arrows() <= 6);
        assert!(a.validate().is_ok());
    }

    #[test]
    fn small_report_is_deterministic() {
        let cfg = FuzzConfig { samples: 4, steps: 5, max_arrows: 4, ..Default::default() };
        let a = run_checks(&cfg);
        assert!(a.is_ok(), "{a}");
        assert_eq!(a.to_string(), run_checks(&cfg).to_string());
    }

    #[test]
    fn names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        for c in Category::ALL {
            assert_eq!(c.name().parse::<Category>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }
}
