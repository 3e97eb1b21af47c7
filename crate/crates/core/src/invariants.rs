//! Intersection indices, the polynomial invariants `p_t`, `p̄_t` and
//! `p_t mod 2`, the smoothing invariant `S`, the glueing invariant `G` and
//! their extension to singular diagrams.

use crate::based_matrix::{self, MatrixError};
use crate::diagram::{ComponentOrder, DiagramError, Framing, GaussDiagram, Kind, TwoComponentDiagram, TwoKind};
use crate::formal_sum::{ClassKey, FormalSum};
use crate::poly::LaurentPolynomial;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{0} is not defined on singular diagrams; use the singular extension")]
    Singular(&'static str),
    #[error("expected exactly one double point, found {0}")]
    DoublePoints(usize),
    #[error("the ordered polynomial is only defined for long knots")]
    NotLong,
}

/// Intersection indices of the smoothing at one classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingIndex {
    pub arrow: usize,
    /// Index with the right-hand curve (tail to head arc) first.
    pub right: i64,
    /// Index with the open component first; long diagrams only.
    pub long: Option<i64>,
}

/// Index of the smoothing at arrow `c`, right-hand curve first, computed
/// directly on the endpoint sequence. Singular arrows are read as crossings.
fn right_index(d: &GaussDiagram, c: usize) -> i64 {
    let arrows = d.arrows();
    let (ft, fh) = (arrows[c].flat_tail(), arrows[c].flat_head());
    let in_right = |p: usize| if ft < fh { ft < p && p < fh } else { p > ft || p < fh };
    let mut right = 0;
    for (x, b) in arrows.iter().enumerate() {
        if x == c {
            continue;
        }
        let (t, h) = (in_right(b.flat_tail()), in_right(b.flat_head()));
        if t != h {
            right += if t { 1 } else { -1 };
        }
    }
    right
}

/// Index of the smoothing at every classical crossing.
pub fn crossing_indices(d: &GaussDiagram) -> Vec<CrossingIndex> {
    d.classical_arrows()
        .into_iter()
        .map(|c| {
            let right = right_index(d, c);
            let a = &d.arrows()[c];
            let long = match d.kind() {
                Kind::Closed => None,
                Kind::Long if a.flat_tail() > a.flat_head() => Some(right),
                Kind::Long => Some(-right),
            };
            CrossingIndex { arrow: c, right, long }
        })
        .collect()
}

fn term(framing: Framing, exp: i64) -> LaurentPolynomial {
    let mono = LaurentPolynomial::monomial(1, exp as i32);
    match framing {
        Framing::Framed => mono,
        Framing::Unframed => mono - LaurentPolynomial::constant(1),
    }
}

fn require_nonsingular(d: &GaussDiagram, what: &'static str) -> Result<(), InvariantError> {
    if d.is_singular() {
        Err(InvariantError::Singular(what))
    } else {
        Ok(())
    }
}

/// `Σ sgn(c) t^|i(c)|` (framed) or `Σ sgn(c) (t^|i(c)| - 1)` (unframed).
/// Flat diagrams are read with every sign positive.
pub fn pt(d: &GaussDiagram) -> Result<LaurentPolynomial, InvariantError> {
    require_nonsingular(d, "p_t")?;
    let mut p = LaurentPolynomial::zero();
    for ci in crossing_indices(d) {
        p += &term(d.framing(), ci.right.abs()).scale(d.arrows()[ci.arrow].sign_value());
    }
    Ok(p)
}

/// Ordered polynomial of a long knot: signed exponents with the open component first.
pub fn pt_ordered(d: &GaussDiagram) -> Result<LaurentPolynomial, InvariantError> {
    require_nonsingular(d, "the ordered polynomial")?;
    if d.kind() != Kind::Long {
        return Err(InvariantError::NotLong);
    }
    let mut p = LaurentPolynomial::zero();
    for ci in crossing_indices(d) {
        let i = ci.long.expect("long diagram");
        p += &term(d.framing(), i).scale(d.arrows()[ci.arrow].sign_value());
    }
    Ok(p)
}

/// `p_t` with coefficients reduced mod 2; a homotopy invariant.
pub fn pt_mod2(d: &GaussDiagram) -> Result<LaurentPolynomial, InvariantError> {
    Ok(pt(d)?.reduce_mod2())
}

/// First derivative of `p_t` at a diagram with one double point, read off
/// its flat class alone: `2 t^|i|` framed, `2 (t^|i| - 1)` unframed, where
/// `i` is the index of the smoothing at the double point.
pub fn pt_derivative(g: &GaussDiagram) -> Result<LaurentPolynomial, InvariantError> {
    let sing = g.singular_arrows();
    if sing.len() != 1 {
        return Err(InvariantError::DoublePoints(sing.len()));
    }
    Ok(term(g.framing(), right_index(g, sing[0]).abs()).scale(2))
}

/// Key of a flat one-component class: greedy normal form and `p_t mod 2`.
pub fn knot_class_key(k: &GaussDiagram) -> ClassKey {
    let flat = k.flatten();
    let pt2 = pt_mod2(&flat).expect("non-singular by construction");
    ClassKey { raw: flat.flat_class_key(), fingerprint: format!("pt2={pt2}") }
}

/// `B = Σ_x sgn(x) [K_x]` over the inter-component arrows `x`.
pub fn bracket_b(t: &TwoComponentDiagram, order: ComponentOrder) -> Result<FormalSum<ClassKey>, InvariantError> {
    let first = t.first_component(order)?;
    let flat = t.flatten();
    let mut sum = FormalSum::new();
    for x in flat.inter_arrows() {
        sum.add_term(knot_class_key(&flat.join_at(x)?), flat.inter_sign(x, first));
    }
    Ok(sum)
}

/// `p_t mod 2` applied linearly to `B`. The ordering only flips signs, so it
/// does not affect the value.
pub fn bracket_b_mod2(t: &TwoComponentDiagram) -> Result<LaurentPolynomial, InvariantError> {
    let flat = t.flatten();
    let mut p = LaurentPolynomial::zero();
    for x in flat.inter_arrows() {
        p += &pt(&flat.join_at(x)?)?;
    }
    Ok(p.reduce_mod2())
}

/// Fingerprint of a flat two-component class: `|i|`, the signed index of a
/// tangle with its open component first, and `p_t mod 2 ∘ B` under both orderings.
pub fn two_component_fingerprint(t: &TwoComponentDiagram) -> Result<String, InvariantError> {
    let i = t.intersection_index(ComponentOrder::RightFirst)?;
    let b = bracket_b_mod2(t)?.to_string();
    let mut s = format!("i={} B=[{b};{b}]", i.abs());
    if t.kind() == TwoKind::Tangle {
        s.push_str(&format!(" il={}", t.intersection_index(ComponentOrder::LongFirst)?));
    }
    Ok(s)
}

pub fn two_component_key(t: &TwoComponentDiagram) -> Result<ClassKey, InvariantError> {
    Ok(ClassKey { raw: t.flat_class_key(), fingerprint: two_component_fingerprint(t)? })
}

/// Fingerprint of a flat singular class: its primitive based-matrix class.
pub fn singular_fingerprint(g: &GaussDiagram) -> Result<String, InvariantError> {
    let m = based_matrix::build(&g.flatten())?;
    Ok(format!("sbm:{}", m.reduce_to_primitive().key()))
}

pub fn singular_key(g: &GaussDiagram) -> Result<ClassKey, InvariantError> {
    Ok(ClassKey { raw: g.flatten().flat_class_key(), fingerprint: singular_fingerprint(g)? })
}

/// Weighted smoothings making up `S`, including the unframed normalization term.
pub fn smoothing_terms(d: &GaussDiagram) -> Result<Vec<(i64, TwoComponentDiagram)>, InvariantError> {
    require_nonsingular(d, "S")?;
    let mut out = Vec::new();
    for c in d.classical_arrows() {
        out.push((d.arrows()[c].sign_value(), d.smooth(c)?.flatten()));
    }
    if d.framing() == Framing::Unframed && d.writhe() != 0 {
        out.push((-d.writhe(), d.flatten().add_disjoint_unknot()));
    }
    Ok(out)
}

/// Weighted glued diagrams making up `G`, including the unframed normalization term.
pub fn glueing_terms(d: &GaussDiagram) -> Result<Vec<(i64, GaussDiagram)>, InvariantError> {
    require_nonsingular(d, "G")?;
    let mut out = Vec::new();
    for c in d.classical_arrows() {
        out.push((d.arrows()[c].sign_value(), d.glue(c)?.flatten()));
    }
    if d.framing() == Framing::Unframed && d.writhe() != 0 {
        out.push((-d.writhe(), d.flatten().add_glued_kink()?));
    }
    Ok(out)
}

/// `S(K) = Σ sgn(c) [K^c_sm]`, minus `writhe · [K⁰_link]` when unframed.
pub fn smoothing_invariant(d: &GaussDiagram) -> Result<FormalSum<ClassKey>, InvariantError> {
    let mut s = FormalSum::new();
    for (w, t) in smoothing_terms(d)? {
        s.add_term(two_component_key(&t)?, w);
    }
    Ok(s)
}

/// `S` projected to fingerprints, skipping the raw normal forms.
pub fn smoothing_fingerprints(d: &GaussDiagram) -> Result<FormalSum<String>, InvariantError> {
    let mut s = FormalSum::new();
    for (w, t) in smoothing_terms(d)? {
        s.add_term(two_component_fingerprint(&t)?, w);
    }
    Ok(s)
}

/// `G(K) = Σ sgn(c) [K^c_glue]`, minus `writhe · [K⁰_sing]` when unframed.
pub fn glueing_invariant(d: &GaussDiagram) -> Result<FormalSum<ClassKey>, InvariantError> {
    let mut s = FormalSum::new();
    for (w, g) in glueing_terms(d)? {
        s.add_term(singular_key(&g)?, w);
    }
    Ok(s)
}

pub fn glueing_fingerprints(d: &GaussDiagram) -> Result<FormalSum<String>, InvariantError> {
    let mut s = FormalSum::new();
    for (w, g) in glueing_terms(d)? {
        s.add_term(singular_fingerprint(&g)?, w);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Pt,
    PtOrdered,
    PtMod2,
    Smoothing,
    Glueing,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Pt => "pt",
            Invariant::PtOrdered => "pt-ordered",
            Invariant::PtMod2 => "pt-mod2",
            Invariant::Smoothing => "S",
            Invariant::Glueing => "G",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Poly(LaurentPolynomial),
    Sum(FormalSum<ClassKey>),
}

impl InvariantValue {
    pub fn is_zero(&self) -> bool {
        match self {
            InvariantValue::Poly(p) => p.is_zero(),
            InvariantValue::Sum(s) => s.is_zero(),
        }
    }

    fn add_scaled(&mut self, other: &InvariantValue, w: i64) {
        match (self, other) {
            (InvariantValue::Poly(a), InvariantValue::Poly(b)) => *a += &b.scale(w),
            (InvariantValue::Sum(a), InvariantValue::Sum(b)) => a.add_sum(b, w),
            _ => unreachable!("values of one invariant share a type"),
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Poly(p) => p.fmt(f),
            InvariantValue::Sum(s) => s.fmt(f),
        }
    }
}

/// Value of `inv` on a non-singular diagram.
pub fn evaluate(inv: Invariant, d: &GaussDiagram) -> Result<InvariantValue, InvariantError> {
    Ok(match inv {
        Invariant::Pt => InvariantValue::Poly(pt(d)?),
        Invariant::PtOrdered => InvariantValue::Poly(pt_ordered(d)?),
        Invariant::PtMod2 => InvariantValue::Poly(pt_mod2(d)?),
        Invariant::Smoothing => InvariantValue::Sum(smoothing_invariant(d)?),
        Invariant::Glueing => InvariantValue::Sum(glueing_invariant(d)?),
    })
}

/// Alternating sum of `inv` over all resolutions of the singular arrows:
/// each resolution is weighted by the product of its chosen signs.
/// On a non-singular diagram this is `inv` itself.
pub fn vassiliev_extend(inv: Invariant, d: &GaussDiagram) -> Result<InvariantValue, InvariantError> {
    let mut total: Option<InvariantValue> = None;
    for (w, r) in d.resolutions()? {
        let v = evaluate(inv, &r)?;
        match &mut total {
            None => total = Some(v.clone_scaled(w)),
            Some(t) => t.add_scaled(&v, w),
        }
    }
    Ok(total.expect("at least one resolution"))
}

impl InvariantValue {
    fn clone_scaled(&self, w: i64) -> InvariantValue {
        match self {
            InvariantValue::Poly(p) => InvariantValue::Poly(p.scale(w)),
            InvariantValue::Sum(s) => InvariantValue::Sum(s.scale(w)),
        }
    }
}
