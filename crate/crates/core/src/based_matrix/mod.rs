//! Based matrices and singular based matrices of flat strings, with their
//! elementary extensions, reduction to primitive form, canonical forms and
//! homology test.
//!
//! A matrix is stored with the distinguished element `s` at index 0 and,
//! for singular matrices, the double point `d` at index `n - 1`.

mod build;
mod canon;
mod reduce;

pub use build::build;
pub use reduce::PrimitiveClass;

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Unframed,
    Framed,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("invalid matrix JSON: {0}")]
    Json(String),
    #[error("invalid matrix: {0}")]
    Invalid(String),
    #[error("matrices of different flavor or singularity")]
    Mismatch,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("based matrices need a flat string")]
    NonFlat,
    #[error("at most one singular arrow is supported, found {0}")]
    TooManySingular(usize),
}

fn illegal<T>(msg: &str) -> Result<T, MatrixError> {
    Err(MatrixError::IllegalMove(msg.to_string()))
}

/// Skew-symmetric integer matrix over a ground set `{s} ∪ G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasedMatrix {
    flavor: Flavor,
    singular: bool,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    flavor: Flavor,
    singular: bool,
    n: usize,
    rows: Vec<Vec<i64>>,
}

/// Single-row moves that add one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Unframed: an annihilating element.
    M1,
    /// Unframed: a core element.
    M2,
    /// Any flavor: a complementary pair `g1, g2` with `b(g1, h) = values[h]`
    /// for every old element `h`; then `b(g1, g2) = values[0]`.
    M3 { values: Vec<i64> },
    /// Framed: two annihilating elements.
    HatM1,
    /// Framed: two core elements.
    HatM2,
}

/// Inverses of the extensions, at a site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contraction {
    M1 { g: usize },
    M2 { g: usize },
    M3 { g1: usize, g2: usize },
    HatM1 { g1: usize, g2: usize },
    HatM2 { g1: usize, g2: usize },
}

/// Moves that keep the size of the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Residual {
    /// Framed: an annihilating element becomes a core element.
    Whitney { g: usize },
    /// Framed: a core element becomes an annihilating element.
    WhitneyInverse { g: usize },
    /// Singular: `g` with `row g + row d = row s` becomes the double point.
    Switch { g: usize },
    /// Singular: an annihilating-like `d` becomes core-like.
    D12,
    /// Singular: a core-like `d` becomes annihilating-like.
    D21,
}

/// Element types of a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub annihilating: Vec<usize>,
    pub core: Vec<usize>,
    pub complementary: Vec<(usize, usize)>,
    /// The row of `s` is zero, so core and annihilating coincide.
    pub s_annihilating: bool,
    pub d_annihilating_like: bool,
    pub d_core_like: bool,
}

impl BasedMatrix {
    pub fn new(flavor: Flavor, singular: bool, rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let bad = |m: String| Err(MatrixError::Invalid(m));
        if n == 0 {
            return bad("the ground set must contain s".into());
        }
        if singular && n < 2 {
            return bad("a singular matrix needs s and d".into());
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return bad(format!("row {i} has length {} instead of {n}", r.len()));
            }
            for (j, &x) in r.iter().enumerate() {
                if x.checked_neg() != Some(rows[j][i]) {
                    return bad(format!("entries ({i},{j}) and ({j},{i}) are not opposite"));
                }
            }
        }
        Ok(BasedMatrix { flavor, singular, rows })
    }

    pub(crate) fn from_fn(flavor: Flavor, singular: bool, n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        let m = BasedMatrix { flavor, singular, rows };
        debug_assert!(m.is_skew());
        m
    }

    fn is_skew(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.rows[i][j] == -self.rows[j][i]))
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixError> {
        let j: MatrixJson = serde_json::from_str(text).map_err(|e| MatrixError::Json(e.to_string()))?;
        if j.n != j.rows.len() {
            return Err(MatrixError::Invalid(format!("n = {} but {} rows", j.n, j.rows.len())));
        }
        BasedMatrix::new(j.flavor, j.singular, j.rows)
    }

    pub fn to_json(&self) -> String {
        let j = MatrixJson { flavor: self.flavor, singular: self.singular, n: self.n(), rows: self.rows.clone() };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn d_index(&self) -> Option<usize> {
        self.singular.then(|| self.n() - 1)
    }

    /// Indices of the elements other than `s` and `d`.
    pub fn middle(&self) -> std::ops::Range<usize> {
        1..self.n() - usize::from(self.singular)
    }

    pub fn is_annihilating_row(&self, g: usize) -> bool {
        self.rows[g].iter().all(|&x| x == 0)
    }

    pub fn is_core_row(&self, g: usize) -> bool {
        self.rows[g] == self.rows[0]
    }

    pub fn is_complementary(&self, g1: usize, g2: usize) -> bool {
        g1 != g2 && (0..self.n()).all(|h| self.rows[g1][h].checked_add(self.rows[g2][h]) == Some(self.rows[0][h]))
    }

    pub fn classify(&self) -> Classification {
        let mid: Vec<usize> = self.middle().collect();
        let mut c = Classification {
            annihilating: mid.iter().copied().filter(|&g| self.is_annihilating_row(g)).collect(),
            core: mid.iter().copied().filter(|&g| self.is_core_row(g)).collect(),
            s_annihilating: self.is_annihilating_row(0),
            ..Default::default()
        };
        for (k, &g1) in mid.iter().enumerate() {
            for &g2 in &mid[k + 1..] {
                if self.is_complementary(g1, g2) {
                    c.complementary.push((g1, g2));
                }
            }
        }
        if let Some(d) = self.d_index() {
            c.d_annihilating_like = self.is_annihilating_row(d);
            c.d_core_like = self.is_core_row(d);
        }
        c
    }

    /// Inserts `k` new elements just before `d` (or at the end).
    /// `vs_old[j][h]` is `b(new_j, old_h)`; `vs_new[j][l]` is `b(new_j, new_l)`.
    fn inserted(&self, vs_old: &[Vec<i64>], vs_new: &[Vec<i64>]) -> BasedMatrix {
        let n = self.n();
        let k = vs_old.len();
        let base = n - usize::from(self.singular);
        // What each new index refers to: Ok(old index) or Err(new element).
        let at = |i: usize| -> Result<usize, usize> {
            if i < base {
                Ok(i)
            } else if i < base + k {
                Err(i - base)
            } else {
                Ok(n - 1)
            }
        };
        BasedMatrix::from_fn(self.flavor, self.singular, n + k, |i, j| match (at(i), at(j)) {
            (Ok(a), Ok(b)) => self.rows[a][b],
            (Err(a), Ok(b)) => vs_old[a][b],
            (Ok(a), Err(b)) => -vs_old[b][a],
            (Err(a), Err(b)) => vs_new[a][b],
        })
    }

    fn removed(&self, ids: &[usize]) -> BasedMatrix {
        let keep: Vec<usize> = (0..self.n()).filter(|i| !ids.contains(i)).collect();
        BasedMatrix::from_fn(self.flavor, self.singular, keep.len(), |i, j| self.rows[keep[i]][keep[j]])
    }

    /// Reorders the ground set: new index `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BasedMatrix {
        BasedMatrix::from_fn(self.flavor, self.singular, perm.len(), |i, j| self.rows[perm[i]][perm[j]])
    }

    fn require(&self, flavor: Flavor, what: &str) -> Result<(), MatrixError> {
        if self.flavor == flavor {
            Ok(())
        } else {
            illegal(&format!("{what} is not a move of the {:?} flavor", self.flavor))
        }
    }

    fn require_middle(&self, gs: &[usize]) -> Result<(), MatrixError> {
        let mid = self.middle();
        if gs.iter().all(|g| mid.contains(g)) && (gs.len() < 2 || gs[0] != gs[1]) {
            Ok(())
        } else {
            illegal("site must consist of distinct elements other than s and d")
        }
    }

    pub fn extend(&self, ext: &Extension) -> Result<BasedMatrix, MatrixError> {
        let n = self.n();
        let zero = vec![0; n];
        let s_row = self.rows[0].clone();
        Ok(match ext {
            Extension::M1 => {
                self.require(Flavor::Unframed, "M1")?;
                self.inserted(&[zero], &[vec![0]])
            }
            Extension::M2 => {
                self.require(Flavor::Unframed, "M2")?;
                self.inserted(&[s_row], &[vec![0]])
            }
            Extension::HatM1 => {
                self.require(Flavor::Framed, "framed M1")?;
                self.inserted(&[zero.clone(), zero], &[vec![0, 0], vec![0, 0]])
            }
            Extension::HatM2 => {
                self.require(Flavor::Framed, "framed M2")?;
                self.inserted(&[s_row.clone(), s_row], &[vec![0, 0], vec![0, 0]])
            }
            Extension::M3 { values } => {
                if values.len() != n {
                    return illegal("M3 needs one value per existing element");
                }
                let second: Vec<i64> = (0..n).map(|h| s_row[h] - values[h]).collect();
                let v = values[0];
                self.inserted(&[values.clone(), second], &[vec![0, v], vec![-v, 0]])
            }
        })
    }

    pub fn contract(&self, c: &Contraction) -> Result<BasedMatrix, MatrixError> {
        match *c {
            Contraction::M1 { g } => {
                self.require(Flavor::Unframed, "M1")?;
                self.require_middle(&[g])?;
                if !self.is_annihilating_row(g) {
                    return illegal("element is not annihilating");
                }
                Ok(self.removed(&[g]))
            }
            Contraction::M2 { g } => {
                self.require(Flavor::Unframed, "M2")?;
                self.require_middle(&[g])?;
                if !self.is_core_row(g) {
                    return illegal("element is not a core element");
                }
                Ok(self.removed(&[g]))
            }
            Contraction::HatM1 { g1, g2 } => {
                self.require(Flavor::Framed, "framed M1")?;
                self.require_middle(&[g1, g2])?;
                if !self.is_annihilating_row(g1) || !self.is_annihilating_row(g2) {
                    return illegal("elements are not both annihilating");
                }
                Ok(self.removed(&[g1, g2]))
            }
            Contraction::HatM2 { g1, g2 } => {
                self.require(Flavor::Framed, "framed M2")?;
                self.require_middle(&[g1, g2])?;
                if !self.is_core_row(g1) || !self.is_core_row(g2) {
                    return illegal("elements are not both core elements");
                }
                Ok(self.removed(&[g1, g2]))
            }
            Contraction::M3 { g1, g2 } => {
                self.require_middle(&[g1, g2])?;
                if !self.is_complementary(g1, g2) {
                    return illegal("elements are not complementary");
                }
                Ok(self.removed(&[g1, g2]))
            }
        }
    }

    fn with_row(&self, g: usize, row: &[i64]) -> BasedMatrix {
        BasedMatrix::from_fn(self.flavor, self.singular, self.n(), |i, j| {
            if i == g {
                row[j]
            } else if j == g {
                -row[i]
            } else {
                self.rows[i][j]
            }
        })
    }

    fn core_row_for(&self, g: usize) -> Vec<i64> {
        let mut r = self.rows[0].clone();
        r[g] = 0;
        r
    }

    pub fn apply_residual(&self, r: &Residual) -> Result<BasedMatrix, MatrixError> {
        let zero = vec![0; self.n()];
        match *r {
            Residual::Whitney { g } => {
                self.require(Flavor::Framed, "the Whitney move")?;
                self.require_middle(&[g])?;
                if !self.is_annihilating_row(g) {
                    return illegal("element is not annihilating");
                }
                Ok(self.with_row(g, &self.core_row_for(g)))
            }
            Residual::WhitneyInverse { g } => {
                self.require(Flavor::Framed, "the Whitney move")?;
                self.require_middle(&[g])?;
                if !self.is_core_row(g) {
                    return illegal("element is not a core element");
                }
                Ok(self.with_row(g, &zero))
            }
            Residual::Switch { g } => {
                let Some(d) = self.d_index() else {
                    return illegal("the switch needs a singular matrix");
                };
                self.require_middle(&[g])?;
                if !self.is_complementary(g, d) {
                    return illegal("rows of g and d do not add up to the row of s");
                }
                let mut perm: Vec<usize> = (0..self.n()).collect();
                perm.swap(g, d);
                Ok(self.permuted(&perm))
            }
            Residual::D12 => {
                let Some(d) = self.d_index() else {
                    return illegal("D12 needs a singular matrix");
                };
                if !self.is_annihilating_row(d) {
                    return illegal("d is not annihilating-like");
                }
                Ok(self.with_row(d, &self.core_row_for(d)))
            }
            Residual::D21 => {
                let Some(d) = self.d_index() else {
                    return illegal("D21 needs a singular matrix");
                };
                if !self.is_core_row(d) {
                    return illegal("d is not core-like");
                }
                Ok(self.with_row(d, &zero))
            }
        }
    }

    /// Every legal contraction, in a fixed order.
    pub fn contractions(&self) -> Vec<Contraction> {
        let c = self.classify();
        let mut out = Vec::new();
        match self.flavor {
            Flavor::Unframed => {
                out.extend(c.annihilating.iter().map(|&g| Contraction::M1 { g }));
                out.extend(c.core.iter().map(|&g| Contraction::M2 { g }));
            }
            Flavor::Framed => {
                for (k, &g1) in c.annihilating.iter().enumerate() {
                    for &g2 in &c.annihilating[k + 1..] {
                        out.push(Contraction::HatM1 { g1, g2 });
                    }
                }
                for (k, &g1) in c.core.iter().enumerate() {
                    for &g2 in &c.core[k + 1..] {
                        out.push(Contraction::HatM2 { g1, g2 });
                    }
                }
            }
        }
        out.extend(c.complementary.iter().map(|&(g1, g2)| Contraction::M3 { g1, g2 }));
        out
    }

    /// Every legal size-preserving move.
    pub fn residuals(&self) -> Vec<Residual> {
        let mut out = Vec::new();
        if self.flavor == Flavor::Framed {
            for g in self.middle() {
                if self.is_annihilating_row(g) {
                    out.push(Residual::Whitney { g });
                }
                if self.is_core_row(g) {
                    out.push(Residual::WhitneyInverse { g });
                }
            }
        }
        if let Some(d) = self.d_index() {
            for g in self.middle() {
                if self.is_complementary(g, d) {
                    out.push(Residual::Switch { g });
                }
            }
            if self.is_annihilating_row(d) {
                out.push(Residual::D12);
            }
            if self.is_core_row(d) {
                out.push(Residual::D21);
            }
        }
        out
    }

    /// Whether both matrices reduce to the same primitive class.
    pub fn homologous(&self, other: &BasedMatrix) -> Result<bool, MatrixError> {
        if self.flavor != other.flavor || self.singular != other.singular {
            return Err(MatrixError::Mismatch);
        }
        let a = self.reduce_to_primitive();
        let b = other.reduce_to_primitive();
        Ok(a.members().iter().any(|k| b.members().contains(k)))
    }
}

impl fmt::Display for BasedMatrix {
    /// Rows as right-aligned integer columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>w$}")).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}
