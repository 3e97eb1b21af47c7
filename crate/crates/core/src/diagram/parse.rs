//! Text form of Gauss diagrams.
//!
//! One diagram per line: a header `closed|long framed|unframed [flat]`
//! followed by tokens `O<label><sign>` / `U<label><sign>`, with a leading
//! `*` on both endpoints of a singular arrow. Signs are omitted on flat
//! diagrams. Arrow ids follow the sorted order of the labels (numerically
//! when both labels are numbers).

use super::{Arrow, DiagramError, Framing, GaussDiagram, Kind, Sign};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Token {
    pub label: usize,
    pub under: bool,
    pub sign: Option<Sign>,
    pub singular: bool,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.singular {
            f.write_str("*")?;
        }
        f.write_str(if self.under { "U" } else { "O" })?;
        write!(f, "{}", self.label)?;
        match self.sign {
            Some(Sign::Pos) => f.write_str("+"),
            Some(Sign::Neg) => f.write_str("-"),
            None => Ok(()),
        }
    }
}

struct RawToken<'a> {
    label: &'a str,
    under: bool,
    sign: Option<Sign>,
    singular: bool,
}

fn lex(tok: &str) -> Result<RawToken<'_>, DiagramError> {
    let bad = || DiagramError::MalformedToken(tok.to_string());
    let (singular, rest) = match tok.strip_prefix('*') {
        Some(r) => (true, r),
        None => (false, tok),
    };
    let under = match rest.chars().next() {
        Some('O') => false,
        Some('U') => true,
        _ => return Err(bad()),
    };
    let rest = &rest[1..];
    let (label, sign) = match rest.chars().last() {
        Some('+') => (&rest[..rest.len() - 1], Some(Sign::Pos)),
        Some('-') => (&rest[..rest.len() - 1], Some(Sign::Neg)),
        _ => (rest, None),
    };
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad());
    }
    Ok(RawToken { label, under, sign, singular })
}

fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

#[derive(Default)]
struct Ends {
    over: Option<usize>,
    under: Option<usize>,
    sign: Option<Option<Sign>>,
    singular: Option<bool>,
}

fn build(tokens: &[&str], kind: Kind, framing: Framing, flat: Option<bool>) -> Result<GaussDiagram, DiagramError> {
    let lexed = tokens.iter().map(|t| lex(t)).collect::<Result<Vec<_>, _>>()?;
    let flat = flat.unwrap_or(!lexed.is_empty() && lexed.iter().all(|t| t.sign.is_none()));
    let mut by_label: BTreeMap<&str, Ends> = BTreeMap::new();
    for (pos, t) in lexed.iter().enumerate() {
        if flat && t.sign.is_some() {
            return Err(DiagramError::SignOnFlat(t.label.to_string()));
        }
        if !flat && t.sign.is_none() {
            return Err(DiagramError::MissingSign(t.label.to_string()));
        }
        let e = by_label.entry(t.label).or_default();
        let slot = if t.under { &mut e.under } else { &mut e.over };
        if slot.is_some() {
            let which = if t.under { "under" } else { "over" };
            return Err(DiagramError::EndpointUsedTwice(t.label.to_string(), which));
        }
        *slot = Some(pos);
        if *e.sign.get_or_insert(t.sign) != t.sign {
            return Err(DiagramError::InconsistentLabel(t.label.to_string(), "sign"));
        }
        if *e.singular.get_or_insert(t.singular) != t.singular {
            return Err(DiagramError::InconsistentLabel(t.label.to_string(), "singular mark"));
        }
    }
    let mut labels: Vec<&str> = by_label.keys().copied().collect();
    labels.sort_by(|a, b| label_order(a, b));
    let mut arrows = Vec::with_capacity(labels.len());
    for l in labels {
        let e = &by_label[l];
        match (e.over, e.under) {
            (Some(tail), Some(head)) => {
                arrows.push(Arrow { tail, head, sign: e.sign.flatten(), singular: e.singular.unwrap_or(false) })
            }
            _ => return Err(DiagramError::LabelCount(l.to_string(), 1)),
        }
    }
    GaussDiagram::new(kind, framing, flat, arrows)
}

/// Parses a bare token list. The diagram is flat when no token carries a sign.
pub fn parse_gauss_code(text: &str, kind: Kind, framing: Framing) -> Result<GaussDiagram, DiagramError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    build(&tokens, kind, framing, None)
}

/// Parses one diagram per line, skipping blank lines and `#` comments.
pub fn parse_lines(text: &str) -> Result<Vec<GaussDiagram>, DiagramError> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::parse).collect()
}

impl FromStr for GaussDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let kind = match words.first() {
            Some(&"closed") => Kind::Closed,
            Some(&"long") => Kind::Long,
            _ => return Err(DiagramError::MalformedHeader("expected `closed` or `long`".into())),
        };
        let framing = match words.get(1) {
            Some(&"framed") => Framing::Framed,
            Some(&"unframed") => Framing::Unframed,
            _ => return Err(DiagramError::MalformedHeader("expected `framed` or `unframed`".into())),
        };
        let (flat, start) = if words.get(2) == Some(&"flat") { (true, 3) } else { (false, 2) };
        build(&words[start..], kind, framing, Some(flat))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_positive_arrows() {
        let d = parse_gauss_code("O1+ U2+ U1+ O2+", Kind::Closed, Framing::Unframed).unwrap();
        assert_eq!(d.num_arrows(), 2);
        assert!(d.arrows().iter().all(|a| a.sign == Some(Sign::Pos)));
        assert!(!d.is_flat());
    }

    #[test]
    fn empty_and_single_kink() {
        let e = parse_gauss_code("", Kind::Closed, Framing::Unframed).unwrap();
        assert_eq!(e.num_arrows(), 0);
        let k = parse_gauss_code("O1+ U1+", Kind::Long, Framing::Framed).unwrap();
        assert_eq!(k.num_arrows(), 1);
        assert_eq!(k.writhe(), 1);
    }

    #[test]
    fn errors() {
        let p = |s: &str| s.parse::<GaussDiagram>();
        assert!(matches!(p("closed unframed O1+ X2+"), Err(DiagramError::MalformedToken(_))));
        assert!(matches!(p("closed unframed O1+ O1+"), Err(DiagramError::EndpointUsedTwice(..))));
        assert!(matches!(p("closed unframed O1+ U1+ O2+"), Err(DiagramError::LabelCount(..))));
        assert!(matches!(p("closed unframed flat O1+ U1+"), Err(DiagramError::SignOnFlat(_))));
        assert!(matches!(p("closed unframed O1 U1"), Err(DiagramError::MissingSign(_))));
        assert!(matches!(p("closed unframed O1+ U1-"), Err(DiagramError::InconsistentLabel(..))));
        assert!(matches!(p("closed unframed *O1+ U1+"), Err(DiagramError::InconsistentLabel(..))));
        assert!(matches!(p("twisted unframed"), Err(DiagramError::MalformedHeader(_))));
        assert!(matches!(p("closed"), Err(DiagramError::MalformedHeader(_))));
    }

    #[test]
    fn labels_sort_numerically() {
        let d: GaussDiagram = "long unframed O10+ O2- U10+ U2-".parse().unwrap();
        assert_eq!(d.arrows()[0].tail, 1);
        assert_eq!(d.arrows()[0].sign, Some(Sign::Neg));
        assert_eq!(d.arrows()[1].sign, Some(Sign::Pos));
    }

    #[test]
    fn serialization_round_trips() {
        for s in [
            "closed unframed O1+ U2- U1+ O2-",
            "long framed *O1+ U2- *U1+ O2-",
            "closed framed flat O1 O2 U1 U2",
            "long unframed",
        ] {
            let d: GaussDiagram = s.parse().unwrap();
            let again: GaussDiagram = d.to_string().parse().unwrap();
            assert_eq!(again, d);
            assert_eq!(again.to_string(), d.to_string());
        }
    }

    #[test]
    fn closed_normal_form_is_rotation_invariant() {
        let a: GaussDiagram = "closed unframed O1+ U2+ U1+ O2+".parse().unwrap();
        let b: GaussDiagram = "closed unframed U2+ U1+ O2+ O1+".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
        let c: GaussDiagram = "long unframed U2+ U1+ O2+ O1+".parse().unwrap();
        let e: GaussDiagram = "long unframed O1+ U2+ U1+ O2+".parse().unwrap();
        assert_ne!(c, e);
    }
}
