//! Dense complex matrices and the plain-text matrix format.

use std::fmt::Write as _;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cr, Real, C};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// wrong entry counts and non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::EntryCount {
                rows: r,
                cols: c,
                expected: c,
                got: bad.len(),
            });
        }
        Self::from_vec(r, c, rows.concat())
    }

    /// Builds a real-valued matrix from nested rows.
    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let rows: Vec<Vec<C<T>>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| cr(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| C::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    /// Square matrix with the given diagonal.
    pub fn from_diagonal(diag: &[C<T>]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { C::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C<T>] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[C<T>]) {
        assert_eq!(values.len(), self.rows, "column length");
        for (i, &v) in values.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Sum of squared moduli of the entries.
    pub fn norm_sqr(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn frobenius_norm(&self) -> T {
        // scaled accumulation keeps tiny and huge entries representable
        let scale = self
            .data
            .iter()
            .fold(T::zero(), |m, z| m.max(z.re.abs()).max(z.im.abs()));
        if scale == T::zero() {
            return T::zero();
        }
        let sum = self.data.iter().fold(T::zero(), |acc, z| {
            let (a, b) = (z.re / scale, z.im / scale);
            acc + a * a + b * b
        });
        scale * sum.sqrt()
    }

    /// Hilbert-Schmidt inner product `Tr(self† other)`.
    pub fn inner(&self, other: &Self) -> C<T> {
        assert_eq!(self.shape(), other.shape(), "inner product shape");
        self.data
            .iter()
            .zip(&other.data)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Matrix product; panics on inner-dimension mismatch.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul inner dimension");
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![C::<T>::zero(); n * p];
        for i in 0..n {
            let out_row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * p..(k + 1) * p];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o = *o + a * b;
                }
            }
        }
        Self {
            rows: n,
            cols: p,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(C::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `‖M − Mᵀ‖_F`, `‖M + Mᵀ‖_F` or `‖M − M†‖_F` depending on `kind`.
    fn asymmetry(&self, kind: Symmetry) -> T {
        let n = self.rows;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                let b = self[(j, i)];
                let d = match kind {
                    Symmetry::Symmetric => a - b,
                    Symmetry::Antisymmetric => a + b,
                    Symmetry::Hermitian => a - b.conj(),
                };
                acc = acc + d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Relative deviation from the requested symmetry, `‖M ∓ M^(T|†)‖_F / ‖M‖_F`
    /// (zero for the zero matrix).
    pub fn relative_asymmetry(&self, kind: Symmetry) -> Result<T> {
        self.require_square()?;
        let norm = self.frobenius_norm();
        let dev = self.asymmetry(kind);
        Ok(if norm == T::zero() { dev } else { dev / norm })
    }

    /// Validates the symmetry within `tol` (relative) and returns the
    /// projection onto it: `(M+Mᵀ)/2`, `(M−Mᵀ)/2` or `(M+M†)/2`.
    pub fn project_symmetry(&self, kind: Symmetry, tol: T) -> Result<Self> {
        let dev = self.relative_asymmetry(kind)?;
        if !(dev <= tol) {
            return Err(Error::structure(kind.name(), dev));
        }
        let half = T::lit(0.5);
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            let a = self[(i, j)];
            let b = self[(j, i)];
            match kind {
                Symmetry::Symmetric => (a + b) * half,
                Symmetry::Antisymmetric => (a - b) * half,
                Symmetry::Hermitian => (a + b.conj()) * half,
            }
        }))
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Writes the matrix in the text format read by [`ComplexMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|z| format_complex(*z)).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses the text format: a `rows cols` header followed by `rows*cols`
    /// whitespace-separated entries such as `0.5-0.5i`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text, 0);
        Self::parse_lines(&mut lines)
    }

    /// Parses from an iterator of `(line_number, content)` pairs, consuming
    /// exactly the header and the entries.
    pub(crate) fn parse_lines<'a>(
        lines: &mut impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<Self> {
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing matrix header \"rows cols\"".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                message: format!("invalid dimension {s:?}"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected \"rows cols\", found {header:?}"),
            });
        }
        let rows = parse_dim(dims[0])?;
        let cols = parse_dim(dims[1])?;
        if rows == 0 || cols == 0 {
            return Err(Error::Parse {
                line: hline,
                message: format!("matrix dimensions must be positive, found {rows}x{cols}"),
            });
        }
        let expected = rows * cols;
        let mut data = Vec::with_capacity(expected);
        let mut last_line = hline;
        while data.len() < expected {
            let Some((line, content)) = lines.next() else {
                return Err(Error::Parse {
                    line: last_line,
                    message: format!("expected {expected} entries, found {}", data.len()),
                });
            };
            last_line = line;
            for token in content.split_whitespace() {
                if data.len() == expected {
                    return Err(Error::Parse {
                        line,
                        message: format!("more than {expected} entries"),
                    });
                }
                let z = parse_complex::<T>(token).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("invalid complex entry {token:?}"),
                })?;
                data.push(z);
            }
        }
        Self::from_vec(rows, cols, data).map_err(|e| Error::Parse {
            line: last_line,
            message: e.to_string(),
        })
    }
}

/// Which structural symmetry a square matrix is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Hermitian,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
            Symmetry::Hermitian => "Hermitian",
        }
    }
}

/// `‖A − B‖_F`.
pub fn frobenius_distance<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok((a - b).frobenius_norm())
}

/// True iff `‖U†U − I‖_F ≤ tol`.
pub fn is_unitary<T: Real>(u: &ComplexMatrix<T>, tol: T) -> Result<bool> {
    u.require_square()?;
    let gram = u.adjoint().matmul(u);
    let dev = frobenius_distance(&gram, &ComplexMatrix::identity(u.rows()))?;
    Ok(dev <= tol)
}

/// Yields `(1-based line number, content)` for lines that are not blank
/// once comments are stripped.
pub(crate) fn significant_lines(text: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(move |(k, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((k + 1 + offset, content))
    })
}

pub(crate) fn parse_complex<T: Real>(token: &str) -> Option<C<T>> {
    let z: Complex<f64> = token.parse().ok()?;
    let z = Complex::new(T::from_f64(z.re)?, T::from_f64(z.im)?);
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

pub(crate) fn format_complex<T: Real>(z: C<T>) -> String {
    // adding zero turns −0 into +0
    let (re, im) = (z.re + T::zero(), z.im + T::zero());
    let sign = if im < T::zero() { '-' } else { '+' };
    format!("{}{}{}i", re, sign, im.abs())
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

macro_rules! elementwise {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a, T: Real> $tr<&'a ComplexMatrix<T>> for &'a ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;

            fn $method(self, rhs: &'a ComplexMatrix<T>) -> ComplexMatrix<T> {
                assert_eq!(self.shape(), rhs.shape(), "elementwise shape");
                ComplexMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a $op *b).collect(),
                }
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl<'a, T: Real> Mul<&'a ComplexMatrix<T>> for &'a ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: &'a ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}
