use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::algebra::{Parity, RingKind, Scalar};
use crate::error::{domain, Error, Result};

/// A rectangular matrix over a coefficient ring whose row and column indices
/// carry a parity.
///
/// Products are plain row-by-column with the ring product; the Grassmann
/// parity of each entry is carried by the entry itself.
#[derive(Clone, PartialEq)]
pub struct GradedMatrix<R> {
    rows: Sig,
    cols: Sig,
    data: SmallVec<[R; 9]>,
}

type Sig = SmallVec<[Parity; 4]>;

fn sign<R: Scalar>(x: R, negative: bool) -> R {
    if negative {
        -x
    } else {
        x
    }
}

impl<R: Scalar> GradedMatrix<R> {
    pub fn new(rows: Vec<Parity>, cols: Vec<Parity>, data: Vec<R>) -> Result<Self> {
        if data.len() != rows.len() * cols.len() {
            return domain(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows.len(),
                cols.len()
            ));
        }
        Ok(Self { rows: rows.into(), cols: cols.into(), data: data.into() })
    }

    pub fn from_fn(rows: Vec<Parity>, cols: Vec<Parity>, f: impl FnMut(usize, usize) -> R) -> Self {
        Self::build(rows.into(), cols.into(), f)
    }

    fn build(rows: Sig, cols: Sig, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let (n, m) = (rows.len(), cols.len());
        let mut data = SmallVec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Ungraded matrix (all indices even) from nested rows.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return domain("ragged rows");
        }
        Self::new(
            vec![Parity::Even; n],
            vec![Parity::Even; m],
            rows.into_iter().flatten().collect(),
        )
    }

    pub fn zeros(rows: Vec<Parity>, cols: Vec<Parity>) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(sig: Vec<Parity>) -> Self {
        Self::from_fn(sig.clone(), sig, |i, j| if i == j { R::one() } else { R::zero() })
    }

    /// Column vector with the given row parities and an even column.
    pub fn column(rows: Vec<Parity>, entries: Vec<R>) -> Result<Self> {
        Self::new(rows, vec![Parity::Even], entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_parities(&self) -> &[Parity] {
        &self.rows
    }

    pub fn col_parities(&self) -> &[Parity] {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        let m = self.cols.len();
        self.data[i * m + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> GradedMatrix<S> {
        GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Whether every nonzero entry `(i, j)` has Grassmann parity `|i| + |j|`.
    pub fn is_homogeneous(&self) -> bool {
        (0..self.nrows()).all(|i| {
            (0..self.ncols()).all(|j| {
                let x = self.get(i, j);
                x.is_zero() || x.homogeneous_parity() == Some(self.rows[i] + self.cols[j])
            })
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return domain(format!(
                "signature mismatch in product: {:?} vs {:?}",
                self.cols, other.rows
            ));
        }
        let k = self.cols.len();
        Ok(Self::build(self.rows.clone(), other.cols.clone(), |i, j| {
            (0..k).fold(R::zero(), |acc, l| acc + self.get(i, l).clone() * other.get(l, j).clone())
        }))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return domain("signature mismatch in elementwise operation");
        }
        Ok(Self {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, other: &Self, s: f64) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return domain("signature mismatch in elementwise operation");
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x = x.clone() + y.scale(s);
        }
        Ok(())
    }

    /// `c · M` with the scalar on the left of every entry.
    pub fn left_scale(&self, c: &R) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    /// `M · c` with the scalar on the right of every entry.
    pub fn right_scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x.scale(s))
    }

    /// `Σᵢ Mᵢᵢ`.
    pub fn trace(&self) -> Result<R> {
        if !self.is_square() {
            return domain("trace of a non-square signature");
        }
        Ok((0..self.nrows()).fold(R::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    /// `Str M = Σᵢ (−1)^{|i|} Mᵢᵢ`.
    pub fn super_trace(&self) -> Result<R> {
        if !self.is_square() {
            return domain("supertrace of a non-square signature");
        }
        Ok((0..self.nrows()).fold(R::zero(), |acc, i| {
            acc + sign(self.get(i, i).clone(), self.rows[i].is_odd())
        }))
    }

    /// `(M†)ᵢⱼ = (−1)^{|j|(|i|+|j|)} (Mⱼᵢ)∘`.
    ///
    /// Reduces to the conjugate transpose when all indices are even.
    pub fn super_dagger(&self) -> Self {
        Self::build(self.cols.clone(), self.rows.clone(), |i, j| {
            let (pi, pj) = (self.cols[i].bit(), self.rows[j].bit());
            sign(self.get(j, i).conj(), pj * (pi ^ pj) == 1)
        })
    }

    /// `(Mˢᵗ)ᵢⱼ = (−1)^{|j|(|i|+|j|)} Mⱼᵢ`.
    pub fn super_transpose(&self) -> Self {
        Self::build(self.cols.clone(), self.rows.clone(), |i, j| {
            let (pi, pj) = (self.cols[i].bit(), self.rows[j].bit());
            sign(self.get(j, i).clone(), pj * (pi ^ pj) == 1)
        })
    }

    pub fn transpose(&self) -> Self {
        Self::build(self.cols.clone(), self.rows.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.max_abs()))
    }

    /// Entrywise sup-norm distance; `∞` on signature mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.try_sub(other).map_or(f64::INFINITY, |d| d.max_abs())
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<R>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Berezinian `det(E − B D⁻¹ C) / det(D)`, with `E` the even-even block,
    /// `D` the odd-odd block and `B`, `C` the mixed blocks.
    ///
    /// Only defined over commutative even entries (complex or Grassmann).
    pub fn super_determinant(&self) -> Result<R> {
        if !self.is_square() {
            return domain("superdeterminant of a non-square signature");
        }
        if R::KIND == RingKind::Quaternion {
            return domain("superdeterminant needs a commutative coefficient ring");
        }
        let even: Vec<usize> = (0..self.nrows()).filter(|&i| !self.rows[i].is_odd()).collect();
        let odd: Vec<usize> = (0..self.nrows()).filter(|&i| self.rows[i].is_odd()).collect();
        let e = self.block(&even, &even);
        let b = self.block(&even, &odd);
        let c = self.block(&odd, &even);
        let d = self.block(&odd, &odd);
        let d_inv = invert_commutative(&d)?;
        let schur: Vec<Vec<R>> = (0..even.len())
            .map(|i| {
                (0..even.len())
                    .map(|j| {
                        let mut corr = R::zero();
                        for k in 0..odd.len() {
                            for l in 0..odd.len() {
                                corr = corr
                                    + b[i][k].clone() * d_inv[k][l].clone() * c[l][j].clone();
                            }
                        }
                        e[i][j].clone() - corr
                    })
                    .collect()
            })
            .collect();
        let det_d = det_commutative(&d);
        Ok(det_commutative(&schur) * det_d.inverse()?)
    }

    /// Matrix exponential by scaling and squaring of the Taylor series.
    ///
    /// Entries may carry nilpotent souls; the series is summed in the full
    /// coefficient ring so non-commuting body and soul parts are handled.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_square() {
            return domain("exponential of a non-square signature");
        }
        let n = self.nrows();
        let norm = self.data.iter().map(|x| x.body().max_abs()).fold(0.0, f64::max) * n as f64;
        let mut squarings = 0u32;
        while norm / f64::from(1u32 << squarings.min(30)) > 0.25 && squarings < 60 {
            squarings += 1;
        }
        let scaled = self.scale(0.5f64.powi(squarings as i32));
        let mut result = Self::identity(self.rows.to_vec());
        let mut term = Self::identity(self.rows.to_vec());
        let mut converged = false;
        for k in 1..=80 {
            term = term.matmul(&scaled)?.scale(1.0 / k as f64);
            result = result.try_add(&term)?;
            if term.max_abs() <= 1e-18 * result.max_abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric("exponential series did not converge".into()));
        }
        for _ in 0..squarings {
            result = result.matmul(&result)?;
        }
        Ok(result)
    }
}

/// Determinant by cofactor expansion; entries must commute.
fn det_commutative<R: Scalar>(m: &[Vec<R>]) -> R {
    match m.len() {
        0 => R::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        n => (0..n).fold(R::zero(), |acc, j| {
            let minor: Vec<Vec<R>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = m[0][j].clone() * det_commutative(&minor);
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        }),
    }
}

/// Inverse through the adjugate; entries must commute.
fn invert_commutative<R: Scalar>(m: &[Vec<R>]) -> Result<Vec<Vec<R>>> {
    let n = m.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let det = det_commutative(m);
    if det.body().max_abs() == 0.0 {
        return Err(Error::Singular("block with vanishing body determinant".into()));
    }
    let det_inv = det.inverse()?;
    if n == 1 {
        return Ok(vec![vec![det_inv]]);
    }
    let cof = |i: usize, j: usize| -> R {
        let minor: Vec<Vec<R>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
            .collect();
        let d = det_commutative(&minor);
        if (i + j).is_multiple_of(2) {
            d
        } else {
            -d
        }
    };
    Ok((0..n)
        .map(|i| (0..n).map(|j| cof(j, i) * det_inv.clone()).collect())
        .collect())
}

impl<R: Scalar> fmt::Debug for GradedMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig: String = self.rows.iter().map(|p| if p.is_odd() { '1' } else { '0' }).collect();
        writeln!(f, "GradedMatrix[{}x{} rows={sig}]", self.nrows(), self.ncols())?;
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Scalar> Mul for &GradedMatrix<R> {
    type Output = GradedMatrix<R>;

    /// Panics on signature mismatch; use [`GradedMatrix::matmul`] for a checked product.
    fn mul(self, rhs: Self) -> GradedMatrix<R> {
        self.matmul(rhs).expect("graded matrix product")
    }
}

impl<R: Scalar> Add for &GradedMatrix<R> {
    type Output = GradedMatrix<R>;
    fn add(self, rhs: Self) -> GradedMatrix<R> {
        self.try_add(rhs).expect("graded matrix sum")
    }
}

impl<R: Scalar> Sub for &GradedMatrix<R> {
    type Output = GradedMatrix<R>;
    fn sub(self, rhs: Self) -> GradedMatrix<R> {
        self.try_sub(rhs).expect("graded matrix difference")
    }
}

impl<R: Scalar> Neg for &GradedMatrix<R> {
    type Output = GradedMatrix<R>;
    fn neg(self) -> GradedMatrix<R> {
        self.map(|x| -x.clone())
    }
}
