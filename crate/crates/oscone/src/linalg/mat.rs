//! Dense complex matrices, row-major storage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::LinalgError;

/// Dense complex matrix over a real scalar `S`, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> CMat<S> {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<S>>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                context: format!("{}x{} matrix needs {} entries, got {}", rows, cols, rows * cols, data.len()),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NotFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(S::zero(), S::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(S::one(), S::zero());
        }
        m
    }

    /// Matrix unit e_ij (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Complex::new(S::one(), S::zero());
        m
    }

    pub fn diag(entries: &[Complex<S>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries
            .iter()
            .map(|&x| Complex::new(S::of(x), S::zero()))
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex<S>] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|z| z.conj()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Complex<S> {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex<S>) -> Self {
        let data = self.data.iter().map(|&z| z * c).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_re(&self, c: S) -> Self {
        self.scale(Complex::new(c, S::zero()))
    }

    /// Frobenius inner product tr(A* B), conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<S> {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> S {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(S::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn hermitian_defect(&self) -> S {
        debug_assert!(self.is_square());
        (self - &self.dagger()).norm()
    }

    pub fn is_hermitian(&self, tol: S) -> bool {
        self.is_square() && self.hermitian_defect() <= tol * S::one().max(self.norm())
    }

    /// Hermitian part (A + A*)/2.
    pub fn hermitize(&self) -> Self {
        (self + &self.dagger()).scale_re(S::of(0.5))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == S::zero() && a.im == S::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Commutator AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Kronecker product; block (i,j) of the result is a_ij * B.
    pub fn kron(&self, other: &Self) -> Self {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(ar * br, ac * bc);
        for i in 0..ar {
            for j in 0..ac {
                let a = self[(i, j)];
                if a.re == S::zero() && a.im == S::zero() {
                    continue;
                }
                for p in 0..br {
                    for q in 0..bc {
                        out[(i * br + p, j * bc + q)] = a * other[(p, q)];
                    }
                }
            }
        }
        out
    }

    /// Contiguous submatrix with the given row/column ranges (half-open).
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out[(i - r0, j - c0)] = self[(i, j)];
            }
        }
        out
    }

    /// Writes `sub` into self at offset (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, sub: &Self) {
        assert!(r0 + sub.rows <= self.rows && c0 + sub.cols <= self.cols);
        for i in 0..sub.rows {
            for j in 0..sub.cols {
                self[(r0 + i, c0 + j)] = sub[(i, j)];
            }
        }
    }

    /// Direct sum of square blocks along the diagonal.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square());
            out.set_block(off, off, b);
            off += b.rows;
        }
        out
    }

    pub fn max_abs(&self) -> S {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(S::zero(), |a, b| a.max(b))
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for CMat<S> {
    type Output = Complex<S>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<S> {
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for CMat<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<S> {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Add for &CMat<S> {
    type Output = CMat<S>;
    fn add(self, rhs: Self) -> CMat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(&a, &b)| a + b)
            .collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }
}

impl<S: Scalar> Sub for &CMat<S> {
    type Output = CMat<S>;
    fn sub(self, rhs: Self) -> CMat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }
}

impl<S: Scalar> Neg for &CMat<S> {
    type Output = CMat<S>;
    fn neg(self) -> CMat<S> {
        let data = self.data.iter().map(|&a| -a).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }
}

impl<S: Scalar> Mul for &CMat<S> {
    type Output = CMat<S>;
    fn mul(self, rhs: Self) -> CMat<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> fmt::Debug for CMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// JSON form: {"rows":r,"cols":c,"data":[[re,im],...]} row-major.

impl<S: Scalar> Serialize for CMat<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        struct Entries<'a, S: Scalar>(&'a [Complex<S>]);
        impl<'a, S: Scalar> Serialize for Entries<'a, S> {
            fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for z in self.0 {
                    let re = z.re.to_f64().unwrap_or(f64::NAN);
                    let im = z.im.to_f64().unwrap_or(f64::NAN);
                    seq.serialize_element(&[re, im])?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("CMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("data", &Entries(&self.data))?;
        st.end()
    }
}

impl<'de, S: Scalar> Deserialize<'de> for CMat<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            data: Pairs,
        }
        struct Pairs(Vec<(f64, f64)>);
        impl<'de> Deserialize<'de> for Pairs {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct V;
                impl<'de> Visitor<'de> for V {
                    type Value = Pairs;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("a list of [re, im] pairs")
                    }
                    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Pairs, A::Error> {
                        let mut out = Vec::new();
                        while let Some(pair) = seq.next_element::<[f64; 2]>()? {
                            out.push((pair[0], pair[1]));
                        }
                        Ok(Pairs(out))
                    }
                }
                deserializer.deserialize_seq(V)
            }
        }
        let raw = Raw::deserialize(deserializer)?;
        let data: Vec<Complex<S>> = raw
            .data
            .0
            .iter()
            .map(|&(re, im)| Complex::new(S::of(re), S::of(im)))
            .collect();
        CMat::new(raw.rows, raw.cols, data).map_err(|e| de::Error::custom(e.to_string()))
    }
}
