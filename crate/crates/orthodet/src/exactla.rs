//! Exact dense linear algebra and univariate polynomials over a field
//! element type (ℚ or ℚ(√d)).
//!
//! Determinants use fraction-free Bareiss elimination; characteristic
//! polynomials use the division-free Faddeev–LeVerrier recursion (integer
//! divisions only, exact in characteristic zero).

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::numfield::{FieldDescriptor, FieldElement, NumFieldError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("matrix is not square")]
    NonSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("polynomial is not a perfect square")]
    NotPerfectSquare,
    #[error("polynomial must be monic of even degree")]
    BadPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] NumFieldError),
}

/// Dense row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldDescriptor,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldDescriptor,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field(), field, "entry field mismatch");
                entries.push(e);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(rows_data: Vec<Vec<FieldElement>>, field: FieldDescriptor) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows, cols, field, |i, j| rows_data[i][j].clone())
    }

    pub fn zero(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        Matrix::from_fn(rows, cols, field, |_, _| FieldElement::zero(field))
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        Matrix::from_fn(n, n, field, |i, j| {
            if i == j {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| -self.get(i, j))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, self.field, |i, j| {
            let mut acc = FieldElement::zero(self.field);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j) * c)
    }

    pub fn scale_rat(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j).scale(c))
    }

    pub fn trace(&self) -> FieldElement {
        assert!(self.is_square());
        let mut t = FieldElement::zero(self.field);
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows, self.field)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.transpose() == self.neg()
    }

    /// Exact determinant by fraction-free Bareiss elimination with row
    /// swaps on zero pivots.
    pub fn det(&self) -> Result<FieldElement, LaError> {
        if !self.is_square() {
            return Err(LaError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(FieldElement::one(self.field));
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = FieldElement::one(self.field);
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !a.get(i, k).is_zero());
                match swap {
                    None => return Ok(FieldElement::zero(self.field)),
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a.get(k, j).clone();
                            a.set(k, j, a.get(i, j).clone());
                            a.set(i, j, tmp);
                        }
                        sign = -sign;
                    }
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    a.set(i, j, &num / &prev);
                }
                a.set(i, k, FieldElement::zero(self.field));
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign < 0 { -&d } else { d })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, LaError> {
        if !self.is_square() {
            return Err(LaError::NonSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Matrix::identity(n, self.field);
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or(LaError::Singular)?;
            if pivot_row != k {
                for j in 0..n {
                    let (x, y) = (a.get(k, j).clone(), a.get(pivot_row, j).clone());
                    a.set(k, j, y);
                    a.set(pivot_row, j, x);
                    let (x, y) = (b.get(k, j).clone(), b.get(pivot_row, j).clone());
                    b.set(k, j, y);
                    b.set(pivot_row, j, x);
                }
            }
            let inv = a.get(k, k).inv().unwrap();
            for j in 0..n {
                a.set(k, j, &(a.get(k, j).clone()) * &inv);
                b.set(k, j, &(b.get(k, j).clone()) * &inv);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    a.set(i, j, &(a.get(i, j).clone()) - &(&f * a.get(k, j)));
                    b.set(i, j, &(b.get(i, j).clone()) - &(&f * b.get(k, j)));
                }
            }
        }
        Ok(b)
    }

    /// Row echelon reduction in place; returns pivot columns.
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let p = match (row..self.rows).find(|&i| !self.get(i, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if p != row {
                for j in 0..self.cols {
                    let (x, y) = (self.get(row, j).clone(), self.get(p, j).clone());
                    self.set(row, j, y);
                    self.set(p, j, x);
                }
            }
            let inv = self.get(row, col).inv().unwrap();
            for j in 0..self.cols {
                self.set(row, j, &(self.get(row, j).clone()) * &inv);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let f = self.get(i, col).clone();
                for j in 0..self.cols {
                    let v = &(self.get(i, j).clone()) - &(&f * self.get(row, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        a.row_reduce().len()
    }

    /// Basis of the right null space {x : M·x = 0}, as column vectors.
    pub fn null_space(&self) -> Vec<Matrix> {
        let mut a = self.clone();
        let pivots = a.row_reduce();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = Matrix::zero(self.cols, 1, self.field);
            v.set(free, 0, FieldElement::one(self.field));
            for (r, &pc) in pivots.iter().enumerate() {
                v.set(pc, 0, -a.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left null space {v : v·M = 0}, as 1×rows row vectors.
    pub fn left_kernel(&self) -> Vec<Matrix> {
        self.transpose()
            .null_space()
            .into_iter()
            .map(|c| c.transpose())
            .collect()
    }

    /// Characteristic polynomial det(X·I − M) by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Result<Polynomial, LaError> {
        if !self.is_square() {
            return Err(LaError::NonSquare);
        }
        let n = self.rows;
        let mut coeffs = vec![FieldElement::zero(self.field); n + 1];
        coeffs[n] = FieldElement::one(self.field);
        let mut aux = Matrix::identity(n, self.field);
        for k in 1..=n {
            let m = self.mul(&aux);
            let c = m
                .trace()
                .scale(&(-Rational::new(BigInt::one(), BigInt::from(k as i64))));
            coeffs[n - k] = c.clone();
            aux = m;
            for i in 0..n {
                aux.set(i, i, &(aux.get(i, i).clone()) + &c);
            }
        }
        Ok(Polynomial::new(coeffs, self.field))
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.field, b.field);
        Matrix::from_fn(a.rows + b.rows, a.cols + b.cols, a.field, |i, j| {
            if i < a.rows && j < a.cols {
                a.get(i, j).clone()
            } else if i >= a.rows && j >= a.cols {
                b.get(i - a.rows, j - a.cols).clone()
            } else {
                FieldElement::zero(a.field)
            }
        })
    }

    /// The 2n×2n block anti-diagonal [[0, I], [I, 0]].
    pub fn block_swap(n: usize, field: FieldDescriptor) -> Matrix {
        Matrix::from_fn(2 * n, 2 * n, field, |i, j| {
            if j == (i + n) % (2 * n) {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        })
    }
}

// ---------------------------------------------------------------------------

/// Univariate polynomial, lowest degree first; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
    field: FieldDescriptor,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>, field: FieldDescriptor) -> Self {
        while coeffs.last().map_or(false, FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, field }
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn from_ints(cs: &[i64], field: FieldDescriptor) -> Self {
        Polynomial::new(
            cs.iter().map(|&c| FieldElement::integer(c, field)).collect(),
            field,
        )
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, FieldElement::is_one)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert_eq!(x.field(), self.field, "field mismatch in evaluation");
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect(),
            self.field,
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out, self.field)
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1.
    pub fn companion(&self) -> Result<Matrix, LaError> {
        if !self.is_monic() || self.degree() == Some(0) {
            return Err(LaError::BadPolynomial);
        }
        let n = self.degree().unwrap();
        Ok(Matrix::from_fn(n, n, self.field, |i, j| {
            if j == n - 1 {
                -&self.coeff(i)
            } else if i == j + 1 {
                FieldElement::one(self.field)
            } else {
                FieldElement::zero(self.field)
            }
        }))
    }

    /// The unique monic p with p² = self, by matching coefficients from the
    /// top; the final full product check catches every failure mode.
    pub fn sqrt(&self) -> Result<Polynomial, LaError> {
        let deg = self.degree().ok_or(LaError::BadPolynomial)?;
        if !self.is_monic() || deg % 2 != 0 || deg == 0 {
            return Err(LaError::BadPolynomial);
        }
        let m = deg / 2;
        let two_inv = Rational::new(BigInt::one(), BigInt::from(2));
        let mut p = vec![FieldElement::zero(self.field); m + 1];
        p[m] = FieldElement::one(self.field);
        for j in 1..=m {
            // coefficient of X^(2m-j) in p² is 2·p[m-j] + Σ_{0<i<j} p[m-i]p[m-j+i]
            let mut s = FieldElement::zero(self.field);
            for i in 1..j {
                s = &s + &(&p[m - i] * &p[m - j + i]);
            }
            p[m - j] = (&self.coeff(2 * m - j) - &s).scale(&two_inv);
        }
        let cand = Polynomial::new(p, self.field);
        if cand.mul(&cand) == *self {
            Ok(cand)
        } else {
            Err(LaError::NotPerfectSquare)
        }
    }

    /// Parse "x^2-5*x-2" style text, coefficients rational or quadratic
    /// like "3/2*sqrt(5)*x^2"; terms joined by top-level '+' and '-'.
    pub fn parse(s: &str, field: Option<FieldDescriptor>) -> Result<Polynomial, LaError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaError::Parse("empty polynomial".into()));
        }
        // split into signed terms at top-level +/- (not inside parentheses,
        // not the exponent of sqrt coefficients like "+2" in "9+4*sqrt(5)")
        let bytes = compact.as_bytes();
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        let mut sign = 1i64;
        let mut i = 0usize;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b'+' | b'-' if depth == 0 && i > 0 => {
                    terms.push((sign, compact[start..i].to_string()));
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                    start = i + 1;
                }
                b'-' if depth == 0 && i == 0 => {
                    sign = -1;
                    start = 1;
                }
                _ => {}
            }
            i += 1;
        }
        terms.push((sign, compact[start..].to_string()));

        let mut parts: Vec<(usize, FieldElement)> = Vec::new();
        let mut seen_field = field;
        for (sg, t) in &terms {
            if t.is_empty() {
                return Err(LaError::Parse(format!("dangling sign in {s:?}")));
            }
            let (coeff_str, power) = match t.find('x') {
                None => (t.as_str(), 0usize),
                Some(xi) => {
                    let after = &t[xi + 1..];
                    let power = if let Some(e) = after.strip_prefix('^') {
                        e.parse::<usize>()
                            .map_err(|_| LaError::Parse(format!("bad exponent in {t:?}")))?
                    } else if after.is_empty() {
                        1
                    } else {
                        return Err(LaError::Parse(format!("bad term {t:?}")));
                    };
                    let c = t[..xi].strip_suffix('*').unwrap_or(&t[..xi]);
                    (if c.is_empty() { "1" } else { c }, power)
                }
            };
            let coeff_str = coeff_str
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coeff_str);
            let c = crate::numfield::parse_field_element(coeff_str, seen_field)?;
            if seen_field.is_none() && !c.field().is_rational() {
                seen_field = Some(c.field());
            }
            let c = if *sg < 0 { -&c } else { c };
            parts.push((power, c));
        }
        let f = seen_field.unwrap_or_else(FieldDescriptor::rational);
        let deg = parts.iter().map(|(p, _)| *p).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::zero(f); deg + 1];
        for (p, c) in parts {
            let c = c.promote(f)?;
            coeffs[p] = &coeffs[p] + &c;
        }
        Ok(Polynomial::new(coeffs, f))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(rows.len(), rows[0].len(), q(), |i, j| {
            FieldElement::from_int(rows[i][j])
        })
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        Matrix::from_fn(n, n, q(), |_, _| FieldElement::from_int(rng.gen_range(-5..=5)))
    }

    #[test]
    fn det_examples() {
        assert!(Matrix::identity(3, q()).det().unwrap().is_one());
        assert_eq!(
            m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]).det().unwrap(),
            FieldElement::from_int(6)
        );
        assert!(m(&[&[1, 2], &[2, 4]]).det().unwrap().is_zero());
        assert_eq!(Matrix::zero(2, 3, q()).det(), Err(LaError::NonSquare));
        // zero pivot forces a row swap
        assert_eq!(
            m(&[&[0, 1], &[1, 0]]).det().unwrap(),
            FieldElement::from_int(-1)
        );
    }

    #[test]
    fn charpoly_examples() {
        let p = Polynomial::from_ints(&[-2, -5, 1], q()); // X² − 5X − 2
        let c = p.companion().unwrap();
        assert_eq!(c.charpoly().unwrap(), p);
        assert_eq!(
            m(&[&[0, -1], &[1, 0]]).charpoly().unwrap(),
            Polynomial::from_ints(&[1, 0, 1], q())
        );
        assert_eq!(
            Matrix::identity(2, q()).charpoly().unwrap(),
            Polynomial::from_ints(&[1, -2, 1], q())
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zero(2, 2, q()).left_kernel().len(), 2);
        assert!(Matrix::identity(3, q()).left_kernel().is_empty());
        let k = m(&[&[1, 2], &[2, 4]]).left_kernel();
        assert_eq!(k.len(), 1);
        assert!(k[0].mul(&m(&[&[1, 2], &[2, 4]])).is_zero());
    }

    #[test]
    fn poly_sqrt_examples() {
        let p = Polynomial::from_ints(&[-2, -5, 1], q());
        assert_eq!(p.mul(&p).sqrt().unwrap(), p);
        assert_eq!(
            Polynomial::from_ints(&[1, 0, 1], q()).sqrt(),
            Err(LaError::NotPerfectSquare)
        );
        assert_eq!(
            Polynomial::from_ints(&[0, 0, 0, 0, 1], q()).sqrt().unwrap(),
            Polynomial::from_ints(&[0, 0, 1], q())
        );
        assert_eq!(
            Polynomial::from_ints(&[1, 1], q()).sqrt(),
            Err(LaError::BadPolynomial)
        );
    }

    #[test]
    fn poly_eval_examples() {
        let p = Polynomial::from_ints(&[1, 1, 1, 1, 1, 1, 1], q());
        assert_eq!(p.eval(&FieldElement::from_int(1)), FieldElement::from_int(7));
        assert_eq!(p.eval(&FieldElement::from_int(-1)), FieldElement::from_int(1));
        let p = Polynomial::from_ints(&[1, 0, 1], q());
        assert_eq!(p.eval(&FieldElement::from_int(-1)), FieldElement::from_int(2));
        assert!(Polynomial::zero(q()).eval(&FieldElement::from_int(9)).is_zero());
    }

    #[test]
    fn poly_parse() {
        assert_eq!(
            Polynomial::parse("x^6+x^5+x^4+x^3+x^2+x+1", None).unwrap(),
            Polynomial::from_ints(&[1, 1, 1, 1, 1, 1, 1], q())
        );
        assert_eq!(
            Polynomial::parse("x^2 - 5*x - 2", None).unwrap(),
            Polynomial::from_ints(&[-2, -5, 1], q())
        );
        let f5 = FieldDescriptor::quadratic(5).unwrap();
        let p = Polynomial::parse("x^2-(-1/2+1/2*sqrt(5))*x+1", None).unwrap();
        assert_eq!(p.field(), f5);
        assert_eq!(
            p.coeff(1),
            -&FieldElement::new(
                Rational::new(BigInt::from(-1), BigInt::from(2)),
                Rational::new(BigInt::from(1), BigInt::from(2)),
                f5
            )
        );
        assert!(Polynomial::parse("x^+", None).is_err());
    }

    #[test]
    fn det_multiplicative_and_transpose_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let a = random_matrix(&mut rng, n);
            let b = random_matrix(&mut rng, n);
            let da = a.det().unwrap();
            assert_eq!(a.mul(&b).det().unwrap(), &da * &b.det().unwrap());
            assert_eq!(a.transpose().det().unwrap(), da);
        }
    }

    #[test]
    fn charpoly_similarity_invariant_and_constant_term() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(1..=5);
            let a = random_matrix(&mut rng, n);
            let t = random_matrix(&mut rng, n);
            if t.det().unwrap().is_zero() {
                continue;
            }
            done += 1;
            let conj = t.mul(&a).mul(&t.inverse().unwrap());
            let p = a.charpoly().unwrap();
            assert_eq!(conj.charpoly().unwrap(), p);
            let expected = if n % 2 == 0 {
                a.det().unwrap()
            } else {
                -&a.det().unwrap()
            };
            assert_eq!(p.coeff(0), expected);
        }
    }

    #[test]
    fn poly_sqrt_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let deg = rng.gen_range(1..=6);
            let mut cs: Vec<FieldElement> = (0..deg)
                .map(|_| FieldElement::from_int(rng.gen_range(-4..=4)))
                .collect();
            cs.push(FieldElement::one(q()));
            let p = Polynomial::new(cs, q());
            assert_eq!(p.mul(&p).sqrt().unwrap(), p);
        }
    }

    #[test]
    fn kernel_dimension_matches_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let a = Matrix::from_fn(rows, cols, q(), |_, _| {
                FieldElement::from_int(rng.gen_range(-2..=2))
            });
            let k = a.left_kernel();
            assert_eq!(k.len(), rows - a.rank());
            for v in &k {
                assert!(v.mul(&a).is_zero());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let mut done = 0;
        while done < 20 {
            let n = rng.gen_range(1..=5);
            let a = random_matrix(&mut rng, n);
            if a.det().unwrap().is_zero() {
                continue;
            }
            done += 1;
            assert!(a.mul(&a.inverse().unwrap()).is_identity());
        }
    }
}
