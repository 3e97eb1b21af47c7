use super::{BasedMatrix, Flavor, MatrixError};
use crate::diagram::{Framing, GaussDiagram};

/// Whether `p` lies strictly inside the cyclic arc running from `a` to `b`.
fn inside(p: usize, a: usize, b: usize, n: usize) -> bool {
    let off = |x: usize| (x + n - a) % n;
    p != a && off(p) < off(b)
}

/// Based matrix of a flat string with at most one singular arrow.
///
/// Elements: `s`, the classical arrows in id order, then the singular arrow.
/// For an arrow `e = (a, b)` the arc `(ab)` runs from its tail to its head.
pub fn build(alpha: &GaussDiagram) -> Result<BasedMatrix, MatrixError> {
    if !alpha.is_flat() {
        return Err(MatrixError::NonFlat);
    }
    let sing = alpha.singular_arrows();
    if sing.len() > 1 {
        return Err(MatrixError::TooManySingular(sing.len()));
    }
    let n = alpha.num_slots();
    let mut order: Vec<usize> = (0..alpha.num_arrows()).filter(|i| !sing.contains(i)).collect();
    order.extend(&sing);
    let ends: Vec<(usize, usize)> = alpha.arrows().iter().map(|a| (a.flat_tail(), a.flat_head())).collect();

    // Signed count of arrows running from the first arc into the second.
    let cross = |(a, b): (usize, usize), (c, d): (usize, usize)| -> i64 {
        let mut k = 0;
        for &(t, h) in &ends {
            if inside(t, a, b, n) && inside(h, c, d, n) {
                k += 1;
            }
            if inside(h, a, b, n) && inside(t, c, d, n) {
                k -= 1;
            }
        }
        k
    };

    let m = order.len() + 1;
    let mut rows = vec![vec![0i64; m]; m];
    for (i, &e) in order.iter().enumerate() {
        let (a, b) = ends[e];
        let v = cross((a, b), (b, a));
        rows[i + 1][0] = v;
        rows[0][i + 1] = -v;
        for (j, &f) in order.iter().enumerate().skip(i + 1) {
            let (c, d) = ends[f];
            let eps = match (inside(c, a, b, n), inside(d, a, b, n)) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            };
            let v = cross((a, b), (c, d)) + eps;
            rows[i + 1][j + 1] = v;
            rows[j + 1][i + 1] = -v;
        }
    }
    let flavor = match alpha.framing() {
        Framing::Framed => Flavor::Framed,
        Framing::Unframed => Flavor::Unframed,
    };
    BasedMatrix::new(flavor, !sing.is_empty(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcs_are_cyclic_and_open() {
        assert!(inside(1, 0, 2, 4));
        assert!(!inside(0, 0, 2, 4));
        assert!(!inside(2, 0, 2, 4));
        assert!(inside(0, 3, 1, 4));
        assert!(!inside(2, 3, 1, 4));
    }

    #[test]
    fn single_kink_gives_zero_row() {
        let d: GaussDiagram = "closed unframed flat O1 U1".parse().unwrap();
        let m = build(&d).unwrap();
        assert_eq!(m.rows(), &[vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn needs_flat_input() {
        let d: GaussDiagram = "closed unframed O1+ U1+".parse().unwrap();
        assert_eq!(build(&d), Err(MatrixError::NonFlat));
    }
}
