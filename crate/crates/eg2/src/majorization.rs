//! Vector majorization, the matrix classes behind the chain-majorization
//! statements (permutation, doubly stochastic, T-transform), membership in
//! the oppositely-ordered classes S_n / T_n, and stepwise verification of
//! supplied T-transform chains.
//!
//! Majorization follows the standard convention: after sorting both vectors
//! in nonincreasing order, the majorizing vector has greater-or-equal prefix
//! sums and an equal total.

use crate::error::{Error, Result};

/// Comparison slack for prefix sums, membership products and entry checks;
/// scaled by the magnitude of the quantities involved. T-transform
/// arithmetic introduces rounding at this scale.
pub const MAJORIZATION_TOL: f64 = 1e-12;

fn check_finite(name: &'static str, v: &[f64]) -> Result<()> {
    for &e in v {
        if !e.is_finite() {
            return Err(Error::NonFiniteEntry { name, value: e });
        }
    }
    Ok(())
}

/// True iff `y` majorizes `x`: equal totals and the largest-first prefix
/// sums of `y` dominate those of `x`, both within a scaled `1e-12` slack.
pub fn majorizes(y: &[f64], x: &[f64]) -> Result<bool> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x.len(),
        });
    }
    check_finite("majorizes argument", y)?;
    check_finite("majorizes argument", x)?;
    let mut ys = y.to_vec();
    let mut xs = x.to_vec();
    ys.sort_by(|a, b| b.partial_cmp(a).unwrap());
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut py = 0.0;
    let mut px = 0.0;
    for i in 0..ys.len() {
        py += ys[i];
        px += xs[i];
        let slack = MAJORIZATION_TOL * 1f64.max(py.abs()).max(px.abs());
        if i + 1 < ys.len() {
            if py < px - slack {
                return Ok(false);
            }
        } else if (py - px).abs() > slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A dense square matrix of reals (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected square matrix, got {n} rows")));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        check_finite("matrix entry", &data)?;
        Ok(SquareMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        SquareMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    /// True iff entries are 0/1 (within 1e-12) with exactly one unit per row
    /// and per column.
    pub fn is_permutation(&self) -> bool {
        let tol = MAJORIZATION_TOL;
        let mut col_ones = vec![0usize; self.n];
        for r in 0..self.n {
            let mut row_ones = 0usize;
            for (c, ones) in col_ones.iter_mut().enumerate() {
                let v = self.get(r, c);
                if (v - 1.0).abs() <= tol {
                    row_ones += 1;
                    *ones += 1;
                } else if v.abs() > tol {
                    return false;
                }
            }
            if row_ones != 1 {
                return false;
            }
        }
        col_ones.iter().all(|&c| c == 1)
    }

    /// True iff all entries are >= -tol and every row and column sums to 1
    /// within tol.
    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        if self.data.iter().any(|&v| v < -tol) {
            return false;
        }
        for r in 0..self.n {
            let sum: f64 = (0..self.n).map(|c| self.get(r, c)).sum();
            if (sum - 1.0).abs() > tol {
                return false;
            }
        }
        for c in 0..self.n {
            let sum: f64 = (0..self.n).map(|r| self.get(r, c)).sum();
            if (sum - 1.0).abs() > tol {
                return false;
            }
        }
        true
    }
}

/// A single T-transform `w I + (1-w) P` where `P` swaps coordinates `i`
/// and `j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTransform {
    n: usize,
    i: usize,
    j: usize,
    w: f64,
}

impl TTransform {
    pub fn new(n: usize, i: usize, j: usize, w: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTransform(format!("order {n} < 2")));
        }
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidTransform(format!(
                "coordinates ({i}, {j}) invalid for order {n}"
            )));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidTransform(format!("weight {w} outside [0, 1]")));
        }
        Ok(TTransform { n, i, j, w })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coordinates(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn weight(&self) -> f64 {
        self.w
    }

    /// The explicit matrix `w I + (1-w) P^{(i,j)}`.
    pub fn matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::identity(self.n);
        let (i, j, w) = (self.i, self.j, self.w);
        m.data[i * self.n + i] = w;
        m.data[j * self.n + j] = w;
        m.data[i * self.n + j] = 1.0 - w;
        m.data[j * self.n + i] = 1.0 - w;
        m
    }
}

/// The 2 x n matrix `[alpha-row; theta-row]` of positive parameters used in
/// the chain-majorization statements.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMatrix {
    alphas: Vec<f64>,
    thetas: Vec<f64>,
}

impl ParamMatrix {
    pub fn new(alphas: Vec<f64>, thetas: Vec<f64>) -> Result<Self> {
        if alphas.len() != thetas.len() {
            return Err(Error::LengthMismatch {
                left: alphas.len(),
                right: thetas.len(),
            });
        }
        if alphas.len() < 2 {
            return Err(Error::Shape("parameter matrix needs n >= 2".into()));
        }
        for &v in alphas.iter().chain(thetas.iter()) {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "parameter matrix entry",
                    value: v,
                });
            }
        }
        Ok(ParamMatrix { alphas, thetas })
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Row-wise majorization: this matrix majorizes `other` in both rows.
    pub fn row_majorizes(&self, other: &ParamMatrix) -> Result<bool> {
        if self.order() != other.order() {
            return Err(Error::LengthMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(majorizes(&self.alphas, &other.alphas)?
            && majorizes(&self.thetas, &other.thetas)?)
    }

    /// Membership in S_n: all entries positive and the rows oppositely
    /// ordered, `(alpha_i - alpha_j)(theta_i - theta_j) <= 0` for all pairs.
    pub fn in_s_n(&self) -> bool {
        let n = self.order();
        for i in 0..n {
            for j in (i + 1)..n {
                let prod = (self.alphas[i] - self.alphas[j]) * (self.thetas[i] - self.thetas[j]);
                let scale = 1f64
                    .max(self.alphas[i].abs().max(self.alphas[j].abs()))
                    .max(self.thetas[i].abs().max(self.thetas[j].abs()));
                if prod > MAJORIZATION_TOL * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Membership in T_n: the S_n pairwise condition plus every alpha >= 1.
    pub fn in_t_n(&self) -> bool {
        self.in_s_n() && self.alphas.iter().all(|&a| a >= 1.0 - MAJORIZATION_TOL)
    }

    /// Right-multiply by an arbitrary square matrix (used to check matrix
    /// majorization against a supplied doubly stochastic P).
    pub fn mul_square(&self, m: &SquareMatrix) -> Result<ParamMatrix> {
        let n = self.order();
        if m.order() != n {
            return Err(Error::OrderMismatch {
                transform: m.order(),
                matrix: n,
            });
        }
        let mul_row = |row: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|c| (0..n).map(|k| row[k] * m.get(k, c)).sum())
                .collect()
        };
        ParamMatrix::new(mul_row(&self.alphas), mul_row(&self.thetas))
    }
}

/// Right-multiplies `a` by each transform in sequence. A T-transform only
/// mixes columns `i` and `j`, so each step is the two-column convex
/// combination; rows stay positive and keep their sums.
pub fn apply_transforms(a: &ParamMatrix, ts: &[TTransform]) -> Result<ParamMatrix> {
    let n = a.order();
    let mut alphas = a.alphas.clone();
    let mut thetas = a.thetas.clone();
    for t in ts {
        if t.order() != n {
            return Err(Error::OrderMismatch {
                transform: t.order(),
                matrix: n,
            });
        }
        let (i, j, w) = (t.i, t.j, t.w);
        for row in [&mut alphas, &mut thetas] {
            let (vi, vj) = (row[i], row[j]);
            row[i] = w * vi + (1.0 - w) * vj;
            row[j] = w * vj + (1.0 - w) * vi;
        }
    }
    ParamMatrix::new(alphas, thetas)
}

/// Solve `b = a (w I + (1-w) P)` for `w` on 2 x 2 matrices. Requires all
/// four entries to be consistent within 1e-10; returns `None` when no such
/// `w` in [0, 1] exists. Identical columns in `a` resolve to `w = 1`.
pub fn recover_t_transform_2x2(a: &ParamMatrix, b: &ParamMatrix) -> Result<Option<f64>> {
    if a.order() != 2 || b.order() != 2 {
        return Err(Error::Shape("recover_t_transform_2x2 needs 2x2 matrices".into()));
    }
    const CONSISTENCY: f64 = 1e-10;
    let rows_a = [a.alphas(), a.thetas()];
    let rows_b = [b.alphas(), b.thetas()];

    // Candidate w from the entry with the widest column gap.
    let mut best: Option<(f64, f64)> = None; // (|gap|, w)
    for (ra, rb) in rows_a.iter().zip(rows_b.iter()) {
        let gap = ra[0] - ra[1];
        if gap.abs() > best.map_or(0.0, |(g, _)| g) {
            let w = (rb[0] - ra[1]) / gap;
            best = Some((gap.abs(), w));
        }
    }
    let w = match best {
        // Both rows have identical columns: a is fixed by every transform.
        None => return Ok(Some(1.0)),
        Some((gap, _)) if gap <= MAJORIZATION_TOL => return Ok(Some(1.0)),
        Some((_, w)) => w,
    };
    if !(-CONSISTENCY..=1.0 + CONSISTENCY).contains(&w) {
        return Ok(None);
    }
    let w = w.clamp(0.0, 1.0);
    for (ra, rb) in rows_a.iter().zip(rows_b.iter()) {
        let e0 = w * ra[0] + (1.0 - w) * ra[1];
        let e1 = w * ra[1] + (1.0 - w) * ra[0];
        if (e0 - rb[0]).abs() > CONSISTENCY * 1f64.max(rb[0].abs())
            || (e1 - rb[1]).abs() > CONSISTENCY * 1f64.max(rb[1].abs())
        {
            return Ok(None);
        }
    }
    Ok(Some(w))
}

/// Which membership class a chain is verified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    /// S_n: oppositely ordered rows, positive entries.
    S,
    /// T_n: additionally every alpha >= 1.
    T,
}

impl MatrixClass {
    pub fn contains(&self, m: &ParamMatrix) -> bool {
        match self {
            MatrixClass::S => m.in_s_n(),
            MatrixClass::T => m.in_t_n(),
        }
    }
}

/// One applied transform with the resulting matrix and its membership flag.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub transform: TTransform,
    pub matrix: ParamMatrix,
    pub member: bool,
}

/// Stepwise record of a verified T-transform chain. `all_members` holds iff
/// the initial matrix and every intermediate product up to step k-1 belong
/// to the chosen class (the final product is recorded but not required).
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub class: MatrixClass,
    pub initial: ParamMatrix,
    pub initial_member: bool,
    pub steps: Vec<ChainStep>,
    pub all_members: bool,
}

impl ChainReport {
    pub fn final_matrix(&self) -> &ParamMatrix {
        self.steps.last().map_or(&self.initial, |s| &s.matrix)
    }
}

/// Applies the transforms one by one, recording each intermediate matrix
/// and its membership in `class`.
pub fn verify_chain_path(
    a: &ParamMatrix,
    ts: &[TTransform],
    class: MatrixClass,
) -> Result<ChainReport> {
    let initial_member = class.contains(a);
    let mut current = a.clone();
    let mut steps = Vec::with_capacity(ts.len());
    for t in ts {
        current = apply_transforms(&current, std::slice::from_ref(t))?;
        steps.push(ChainStep {
            transform: *t,
            matrix: current.clone(),
            member: class.contains(&current),
        });
    }
    // Membership is hypothesised for A and the first k-1 products only.
    let all_members = initial_member
        && steps
            .iter()
            .take(steps.len().saturating_sub(1))
            .all(|s| s.member);
    Ok(ChainReport {
        class,
        initial: a.clone(),
        initial_member,
        steps,
        all_members,
    })
}
