use num_complex::Complex64;

use super::{GradedForm, Var};
use crate::algebra::{Parity, Scalar};
use crate::error::{domain, Result};
use crate::supermatrix::GradedMatrix;

/// Which trace `trace_form` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMode {
    /// `Σ Mᵢᵢ`.
    Plain,
    /// `Σ (−1)^{|i|} Mᵢᵢ`.
    Super,
    /// Plain trace followed by the ring trace on every coefficient
    /// (`tr_ℍ(q) = 2 r₀` for quaternions).
    Quaternionic,
}

/// Matrix of forms with graded row and column indices.
#[derive(Clone, PartialEq, Debug)]
pub struct FormMatrix<R: Scalar> {
    rows: Vec<Parity>,
    cols: Vec<Parity>,
    data: Vec<GradedForm<R>>,
}

impl<R: Scalar> FormMatrix<R> {
    pub fn new(rows: Vec<Parity>, cols: Vec<Parity>, data: Vec<GradedForm<R>>) -> Result<Self> {
        if data.len() != rows.len() * cols.len() {
            return domain(format!("{}x{} form matrix needs {} entries, got {}", rows.len(), cols.len(), rows.len() * cols.len(), data.len()));
        }
        Ok(FormMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: Vec<Parity>, cols: Vec<Parity>, mut f: impl FnMut(usize, usize) -> GradedForm<R>) -> Self {
        let data = (0..rows.len()).flat_map(|i| (0..cols.len()).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        FormMatrix { rows, cols, data }
    }

    /// Degree-zero constant matrix.
    pub fn from_matrix(m: &GradedMatrix<R>) -> Self {
        Self::from_fn(m.row_parities().to_vec(), m.col_parities().to_vec(), |i, j| GradedForm::constant(m.get(i, j).clone()))
    }

    pub fn identity(sig: Vec<Parity>) -> Self {
        Self::from_fn(sig.clone(), sig, |i, j| if i == j { GradedForm::real(1.0) } else { GradedForm::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &GradedForm<R> {
        &self.data[i * self.cols.len() + j]
    }

    pub fn entries(&self) -> &[GradedForm<R>] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&GradedForm<R>) -> GradedForm<R>) -> Self {
        FormMatrix { rows: self.rows.clone(), cols: self.cols.clone(), data: self.data.iter().map(f).collect() }
    }

    /// Matrix product with entries multiplied by the graded wedge.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return domain(format!("cannot multiply {}x{} by {}x{} form matrices", self.nrows(), self.ncols(), other.nrows(), other.ncols()));
        }
        let n = self.cols.len();
        Ok(Self::from_fn(self.rows.clone(), other.cols.clone(), |i, j| {
            (0..n).fold(GradedForm::zero(), |acc, k| acc + self.get(i, k).wedge(other.get(k, j)))
        }))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return domain("form matrix shapes differ");
        }
        Ok(FormMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn d(&self) -> Self {
        self.map(GradedForm::d)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|f| f.scale(s))
    }

    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<GradedForm<R>>) -> Self {
        self.map(|f| f.substitute(map))
    }

    pub fn trace_form(&self, mode: TraceMode) -> Result<GradedForm<R>> {
        if self.rows.len() != self.cols.len() {
            return domain("trace of a non-square form matrix");
        }
        let mut t = GradedForm::zero();
        for i in 0..self.rows.len() {
            let e = self.get(i, i).clone();
            t = match (mode, self.rows[i]) {
                (TraceMode::Super, Parity::Odd) => t - e,
                _ => t + e,
            };
        }
        Ok(match mode {
            TraceMode::Quaternionic => t.map_coeffs(Scalar::ring_trace),
            _ => t,
        })
    }

    /// `(Mˢᵗ)ᵢⱼ = (−1)^{|j|(|i|+|j|)} Mⱼᵢ`; plain transpose when all indices are even.
    pub fn super_transpose(&self) -> Self {
        Self::from_fn(self.cols.clone(), self.rows.clone(), |i, j| {
            let e = self.get(j, i).clone();
            if self.rows[j].is_odd() && (self.cols[i] + self.rows[j]).is_odd() {
                -e
            } else {
                e
            }
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    /// Evaluates a degree-zero form matrix at a point.
    pub fn evaluate<S: Scalar>(&self, lift: impl Fn(&R) -> S + Copy, value: impl Fn(Var) -> S + Copy) -> Result<GradedMatrix<S>> {
        let data = self.data.iter().map(|f| f.evaluate(lift, value)).collect::<Result<Vec<_>>>()?;
        GradedMatrix::new(self.rows.clone(), self.cols.clone(), data)
    }

    pub fn body_project(&self) -> FormMatrix<Complex64> {
        FormMatrix { rows: self.rows.clone(), cols: self.cols.clone(), data: self.data.iter().map(GradedForm::body_project).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GrassmannAlgebra, Quaternion};
    use crate::forms::random_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = GradedForm<Complex64>;

    #[test]
    fn trace_of_scaled_identity() {
        let f = F::x(0) * F::var(Var::DX(1));
        let m = FormMatrix::identity(vec![Parity::Even; 3]).map(|e| e.wedge(&f));
        assert_eq!(m.trace_form(TraceMode::Plain).unwrap(), f.scale(3.0));
        let s = FormMatrix::identity(vec![Parity::Odd, Parity::Even, Parity::Even]).map(|e| e.wedge(&f));
        assert_eq!(s.trace_form(TraceMode::Super).unwrap(), f);
    }

    #[test]
    fn quaternionic_trace_kills_imaginary() {
        type Q = GradedForm<Quaternion>;
        let m = FormMatrix::new(
            vec![Parity::Even; 2],
            vec![Parity::Even; 2],
            vec![Q::word(Quaternion::i(), &[Var::DX(0)]), Q::zero(), Q::zero(), Q::word(Quaternion::k(), &[Var::DX(1)])],
        )
        .unwrap();
        assert!(m.trace_form(TraceMode::Quaternionic).unwrap().is_empty());
        let one = FormMatrix::<Quaternion>::identity(vec![Parity::Even; 2]);
        assert_eq!(one.trace_form(TraceMode::Quaternionic).unwrap(), Q::real(4.0));
    }

    #[test]
    fn non_square_trace_and_shape_errors() {
        let m = FormMatrix::<Complex64>::new(vec![Parity::Even], vec![Parity::Even; 2], vec![F::zero(), F::zero()]).unwrap();
        assert!(m.trace_form(TraceMode::Plain).is_err());
        assert!(m.wedge(&m).is_err());
        let dx = FormMatrix::new(vec![Parity::Even], vec![Parity::Even], vec![F::var(Var::DX(1))]).unwrap();
        assert!(dx.wedge(&dx).unwrap().get(0, 0).is_empty());
    }

    #[test]
    fn wedge_associative_on_random_matrices() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let sig = vec![Parity::Odd, Parity::Even];
        for _ in 0..20 {
            let mut gen = || FormMatrix::from_fn(sig.clone(), sig.clone(), |_, _| random_form(&mut rng, &alg, 2));
            let (a, b, c) = (gen(), gen(), gen());
            let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            assert!(l.max_abs_diff(&r) < 1e-12);
        }
    }
}
