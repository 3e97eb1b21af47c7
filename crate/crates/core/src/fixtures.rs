//! Reference diagrams and matrices with their published values, and a suite
//! that recomputes every value.

use crate::based_matrix::{self, BasedMatrix};
use crate::diagram::{parse_lines, ComponentOrder, GaussDiagram};
use crate::formal_sum::{self, FormalSum};
use crate::invariants::{self, Invariant, InvariantValue};
use crate::poly::LaurentPolynomial;
use std::fmt;

pub const GLUE_PAIR_CLOSED_FRAMED: &str = include_str!("../fixtures/glue_pair_closed_framed.gauss");
pub const GLUED_STRINGS_CLOSED_FRAMED: &str = include_str!("../fixtures/glued_strings_closed_framed.gauss");
pub const GLUE_PAIR_LONG_UNFRAMED: &str = include_str!("../fixtures/glue_pair_long_unframed.gauss");
pub const GLUE_PAIR_LONG_FRAMED: &str = include_str!("../fixtures/glue_pair_long_framed.gauss");
pub const SINGULAR_DERIVATIVE_LONG_UNFRAMED: &str = include_str!("../fixtures/singular_derivative_long_unframed.gauss");
pub const SINGULAR_DERIVATIVE_LONG_FRAMED: &str = include_str!("../fixtures/singular_derivative_long_framed.gauss");
pub const ORDERED_PAIR_LONG_UNFRAMED: &str = include_str!("../fixtures/ordered_pair_long_unframed.gauss");
pub const SEPARATOR_CLOSED_FRAMED: &str = include_str!("../fixtures/separator_closed_framed.gauss");
pub const SEPARATOR_LONG_UNFRAMED: &str = include_str!("../fixtures/separator_long_unframed.gauss");
pub const EMPTY: &str = include_str!("../fixtures/empty.gauss");
pub const MATRIX_CLOSED_FRAMED_GLUE_FIRST: &str = include_str!("../fixtures/matrix_closed_framed_glue_first.json");
pub const MATRIX_CLOSED_FRAMED_GLUE_SECOND: &str = include_str!("../fixtures/matrix_closed_framed_glue_second.json");
pub const MATRIX_LONG_UNFRAMED_GLUE_LEFT: &str = include_str!("../fixtures/matrix_long_unframed_glue_left.json");
pub const MATRIX_LONG_UNFRAMED_GLUE_RIGHT: &str = include_str!("../fixtures/matrix_long_unframed_glue_right.json");

/// Arrow ids of the fixture diagrams are their labels minus one.
pub fn arrow(label: usize) -> usize {
    label - 1
}

pub fn diagrams(text: &str) -> Vec<GaussDiagram> {
    parse_lines(text).expect("fixture diagrams parse")
}

pub fn matrix(json: &str) -> BasedMatrix {
    BasedMatrix::from_json(json).expect("fixture matrices parse")
}

/// Based matrix of `d` glued at the arrow with `label`.
pub fn glued_matrix(d: &GaussDiagram, label: usize) -> BasedMatrix {
    based_matrix::build(&d.glue(arrow(label)).expect("classical arrow").flatten()).expect("one singular arrow")
}

/// `p_t mod 2 ∘ B` and the intersection index of the smoothing at `label`.
pub fn separator_value(d: &GaussDiagram, label: usize) -> (LaurentPolynomial, i64, Option<i64>) {
    let t = d.smooth(arrow(label)).expect("classical arrow");
    let b = invariants::bracket_b_mod2(&t).expect("flat smoothing");
    let i = t.intersection_index(ComponentOrder::RightFirst).expect("two components");
    let il = t.intersection_index(ComponentOrder::LongFirst).ok();
    (b, i, il)
}

fn poly(inv: Invariant, d: &GaussDiagram) -> LaurentPolynomial {
    match invariants::vassiliev_extend(inv, d).expect("fixture evaluates") {
        InvariantValue::Poly(p) => p,
        InvariantValue::Sum(_) => unreachable!("polynomial invariant"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl FixtureCheck {
    fn new(name: &'static str, expected: impl ToString, actual: impl ToString) -> Self {
        FixtureCheck { name, expected: expected.to_string(), actual: actual.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for FixtureCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: expected {}, got {}", self.name, self.expected, self.actual)
    }
}

fn homology_word(a: &BasedMatrix, b: &BasedMatrix) -> &'static str {
    match a.homologous(b) {
        Ok(true) => "HOMOLOGOUS",
        Ok(false) => "NOT HOMOLOGOUS",
        Err(_) => "INCOMPARABLE",
    }
}

fn primitive_word(m: &BasedMatrix) -> &'static str {
    if m.is_primitive() {
        "primitive"
    } else {
        "not primitive"
    }
}

/// Recomputes every reference value.
pub fn run_suite() -> Vec<FixtureCheck> {
    let mut out = Vec::new();

    let closed = diagrams(GLUE_PAIR_CLOSED_FRAMED);
    let strings = diagrams(GLUED_STRINGS_CLOSED_FRAMED);
    let first = matrix(MATRIX_CLOSED_FRAMED_GLUE_FIRST);
    let second = matrix(MATRIX_CLOSED_FRAMED_GLUE_SECOND);
    out.push(FixtureCheck::new("closed framed glue at 3", first.to_json(), glued_matrix(&closed[0], 3).to_json()));
    out.push(FixtureCheck::new("closed framed glue at 4", second.to_json(), glued_matrix(&closed[0], 4).to_json()));
    let built: Vec<BasedMatrix> = strings.iter().map(|s| based_matrix::build(s).expect("glued string")).collect();
    out.push(FixtureCheck::new("closed framed glued string 3", first.to_json(), built[0].to_json()));
    out.push(FixtureCheck::new("closed framed glued string 4", second.to_json(), built[1].to_json()));
    out.push(FixtureCheck::new("closed framed glue matrices primitive", "primitive", primitive_word(&first)));
    out.push(FixtureCheck::new("closed framed glue matrices primitive", "primitive", primitive_word(&second)));
    out.push(FixtureCheck::new("closed framed glue matrices", "NOT HOMOLOGOUS", homology_word(&first, &second)));
    let s = formal_sum::compare(
        &invariants::smoothing_invariant(&closed[0]).expect("S"),
        &invariants::smoothing_invariant(&closed[1]).expect("S"),
    );
    out.push(FixtureCheck::new("closed framed glue pair S", "EQUAL", s));
    let g_diff = &invariants::glueing_fingerprints(&closed[0]).expect("G")
        - &invariants::glueing_fingerprints(&closed[1]).expect("G");
    let mut g_expected = FormalSum::new();
    let key = |label| invariants::singular_fingerprint(&closed[0].glue(arrow(label)).expect("glue")).expect("key");
    g_expected.add_term(key(3), -2);
    g_expected.add_term(key(4), 2);
    out.push(FixtureCheck::new("closed framed glue pair G difference", g_expected, g_diff));

    let long = diagrams(GLUE_PAIR_LONG_UNFRAMED);
    let left = matrix(MATRIX_LONG_UNFRAMED_GLUE_LEFT);
    let right = matrix(MATRIX_LONG_UNFRAMED_GLUE_RIGHT);
    out.push(FixtureCheck::new("long unframed glue at 3", left.to_json(), glued_matrix(&long[0], 3).to_json()));
    out.push(FixtureCheck::new("long unframed glue at 4", right.to_json(), glued_matrix(&long[0], 4).to_json()));
    out.push(FixtureCheck::new("long unframed glue matrices primitive", "primitive", primitive_word(&left)));
    out.push(FixtureCheck::new("long unframed glue matrices primitive", "primitive", primitive_word(&right)));
    out.push(FixtureCheck::new("long unframed glue matrices", "NOT HOMOLOGOUS", homology_word(&left, &right)));

    let long_framed = diagrams(GLUE_PAIR_LONG_FRAMED);
    let (a, b) = (glued_matrix(&long_framed[0], 3), glued_matrix(&long_framed[0], 4));
    out.push(FixtureCheck::new("long framed glue matrices", "NOT HOMOLOGOUS", homology_word(&a, &b)));

    for (name, text) in [
        ("long unframed singular derivative", SINGULAR_DERIVATIVE_LONG_UNFRAMED),
        ("long framed singular derivative", SINGULAR_DERIVATIVE_LONG_FRAMED),
    ] {
        let d = &diagrams(text)[0];
        out.push(FixtureCheck::new(name, "-2 + 2t^2", poly(Invariant::Pt, d)));
    }

    let pair = diagrams(ORDERED_PAIR_LONG_UNFRAMED);
    let diff = |inv| poly(inv, &pair[0]) - poly(inv, &pair[1]);
    out.push(FixtureCheck::new("ordered pair ordered difference", "2t^-2 - 2t^2", diff(Invariant::PtOrdered)));
    out.push(FixtureCheck::new("ordered pair unordered difference", "0", diff(Invariant::Pt)));

    let sep = &diagrams(SEPARATOR_CLOSED_FRAMED)[0];
    out.push(FixtureCheck::new("closed framed separator at positive crossing", "0", separator_value(sep, 5).0));
    out.push(FixtureCheck::new("closed framed separator at negative crossing", "t + t^3", separator_value(sep, 1).0));
    let (i5, i1) = (separator_value(sep, 5).1, separator_value(sep, 1).1);
    out.push(FixtureCheck::new("closed framed separator indices", "1 1", format!("{} {}", i5.abs(), i1.abs())));
    let sep = &diagrams(SEPARATOR_LONG_UNFRAMED)[0];
    out.push(FixtureCheck::new("long separator at positive crossing", "0", separator_value(sep, 5).0));
    out.push(FixtureCheck::new("long separator at negative crossing", "t^2", separator_value(sep, 2).0));
    let (il5, il2) = (separator_value(sep, 5).2, separator_value(sep, 2).2);
    out.push(FixtureCheck::new(
        "long separator indices",
        "-2 -2",
        format!("{} {}", il5.unwrap_or(0), il2.unwrap_or(0)),
    ));

    out.push(FixtureCheck::new("empty long knot", "0", poly(Invariant::Pt, &diagrams(EMPTY)[0])));
    out
}
