//! Real polynomials with root finding, resultants, and discriminants.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` multiplies `x^k`.
//! Roots are computed as eigenvalues of the balanced companion matrix via the
//! Francis double-shift QR iteration, which keeps complex conjugate pairs
//! exactly conjugate and needs no external solver. The resultant is the
//! determinant of the Sylvester matrix (rows of `p` first), and the
//! discriminant follows from it in the usual way.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

#[cfg(not(feature = "std"))]
use crate::math::FloatFuncs;

/// Coefficients with absolute value at or below this are trimmed from the
/// high-degree end during construction.
const TRIM_EPS: f64 = 1e-14;

/// Relative tolerance used to declare a subdiagonal entry negligible during
/// the QR iteration.
const QR_EPS: f64 = f64::EPSILON;

/// Maximum QR iterations allowed per eigenvalue before giving up.
const QR_MAX_ITERS: usize = 60;

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyError {
    /// The operation is undefined for this input (zero polynomial where a
    /// nonzero one is required, or degree too low for a discriminant).
    Degenerate {
        /// What was attempted.
        operation: &'static str,
        /// Degree of the offending polynomial (`None` for the zero polynomial).
        degree: Option<usize>,
    },
    /// The eigenvalue iteration failed to converge.
    Unconverged {
        /// Degree of the polynomial whose roots were requested.
        degree: usize,
    },
}

impl core::fmt::Display for PolyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolyError::Degenerate { operation, degree } => match degree {
                Some(d) => write!(f, "{operation} is undefined for degree {d}"),
                None => write!(f, "{operation} is undefined for the zero polynomial"),
            },
            PolyError::Unconverged { degree } => {
                write!(f, "root iteration failed to converge at degree {degree}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// A polynomial with real coefficients, stored in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming high-degree
    /// coefficients with absolute value at or below `1e-14`.
    ///
    /// The zero polynomial is representable: an empty slice, or one whose
    /// coefficients all trim away, yields it.
    pub fn new(coeffs: &[f64]) -> Self {
        let mut end = coeffs.len();
        while end > 0 && coeffs[end - 1].abs() <= TRIM_EPS {
            end -= 1;
        }
        if end == 0 {
            return Self { coeffs: vec![0.0] };
        }
        Self {
            coeffs: coeffs[..end].to_vec(),
        }
    }

    /// The coefficients in ascending order. The zero polynomial reports `[0.0]`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient. Zero only for the zero polynomial.
    pub fn leading_coefficient(&self) -> f64 {
        *self.coeffs.last().expect("coefficient storage is never empty")
    }

    /// Evaluates at a real point by Horner's scheme.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at a complex point by Horner's scheme.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// The formal derivative. The derivative of a constant (or of the zero
    /// polynomial) is the zero polynomial.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self { coeffs: vec![0.0] };
        }
        let d: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Self::new(&d)
    }

    /// All complex roots, with multiplicity, as eigenvalues of the balanced
    /// companion matrix.
    ///
    /// Roots of the zero polynomial (and of nonzero constants) are undefined
    /// and degenerate respectively: the zero polynomial errors, a nonzero
    /// constant returns an empty list. Complex roots come out in exactly
    /// conjugate pairs; the list is sorted by real part, then imaginary part,
    /// so repeated calls are deterministic.
    pub fn roots(&self) -> Result<Vec<Complex64>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Degenerate {
                operation: "roots",
                degree: None,
            });
        }
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return Ok(Vec::new());
        }
        // Closed forms for low degrees avoid iteration entirely.
        if n == 1 {
            let root = -self.coeffs[0] / self.coeffs[1];
            return Ok(vec![Complex64::new(root, 0.0)]);
        }
        let lead = self.leading_coefficient();
        let mut companion = vec![0.0; n * n];
        // Subdiagonal ones; last column holds the negated monic coefficients.
        for i in 1..n {
            companion[i * n + (i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[i * n + (n - 1)] = -self.coeffs[i] / lead;
        }
        balance(&mut companion, n);
        let mut roots = hessenberg_eigenvalues(companion, n)?;
        roots.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .expect("eigenvalues are finite")
        });
        Ok(roots)
    }

    /// Resultant of `self` and `other`, as the determinant of the Sylvester
    /// matrix with the rows built from `self` placed first.
    ///
    /// With that row order the value satisfies
    /// `Res(p, q) = lc(p)^(deg q) * prod q(r_i)` over the roots `r_i` of `p`;
    /// in particular `Res(x - a, x - b) = a - b`. Errors if either input is
    /// the zero polynomial.
    pub fn resultant(&self, other: &RealPolynomial) -> Result<f64, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::Degenerate {
                operation: "resultant",
                degree: None,
            });
        }
        let m = self.coeffs.len() - 1;
        let n = other.coeffs.len() - 1;
        if m == 0 {
            return Ok(powi(self.coeffs[0], n as i32));
        }
        if n == 0 {
            return Ok(powi(other.coeffs[0], m as i32));
        }
        let size = m + n;
        let mut s = vec![0.0; size * size];
        // n shifted copies of self's coefficients, highest degree first.
        for row in 0..n {
            for (k, &c) in self.coeffs.iter().rev().enumerate() {
                s[row * size + row + k] = c;
            }
        }
        // m shifted copies of other's coefficients below them.
        for row in 0..m {
            for (k, &c) in other.coeffs.iter().rev().enumerate() {
                s[(n + row) * size + row + k] = c;
            }
        }
        Ok(determinant(s, size))
    }

    /// Discriminant: `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)` for degree `n`.
    ///
    /// Requires degree at least 2; lower degrees error. The result vanishes
    /// exactly when the polynomial has a repeated complex root.
    pub fn discriminant(&self) -> Result<f64, PolyError> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            other => {
                return Err(PolyError::Degenerate {
                    operation: "discriminant",
                    degree: other,
                })
            }
        };
        let res = self.resultant(&self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * res / self.leading_coefficient())
    }
}

/// Integer power that works without the standard library.
fn powi(base: f64, exp: i32) -> f64 {
    #[cfg(feature = "std")]
    {
        base.powi(exp)
    }
    #[cfg(not(feature = "std"))]
    {
        FloatFuncs::powi(base, exp)
    }
}

/// Determinant by LU decomposition with partial pivoting. A singular matrix
/// yields zero.
fn determinant(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > pivot_abs {
                pivot_abs = v;
                pivot_row = row;
            }
        }
        if pivot_abs == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in col..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det *= pivot;
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            if factor != 0.0 {
                for k in col + 1..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

/// Balances a matrix by diagonal similarity transforms so that row and column
/// norms match, which sharply improves eigenvalue accuracy for companion
/// matrices with coefficients of mixed scale. Powers of two only, so no
/// rounding is introduced.
fn balance(a: &mut [f64], n: usize) {
    const RADIX: f64 = 2.0;
    let sq = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c_scaled = c;
                while c_scaled < g {
                    f *= RADIX;
                    c_scaled *= sq;
                }
                g = r * RADIX;
                while c_scaled > g {
                    f /= RADIX;
                    c_scaled /= sq;
                }
                if (c_scaled + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i * n + j] *= g;
                    }
                    for j in 0..n {
                        a[j * n + i] *= f;
                    }
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Copies the sign of `b` onto the magnitude of `a`.
fn sign_of(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of a real upper Hessenberg matrix by the Francis double-shift
/// QR iteration with deflation, as in the classic EISPACK `hqr` routine.
fn hessenberg_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<Complex64>, PolyError> {
    let mut roots: Vec<Complex64> = Vec::with_capacity(n);
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i * n + j].abs();
        }
    }
    if anorm == 0.0 {
        // The zero matrix: every eigenvalue is zero.
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            // Hunt for a negligible subdiagonal entry to split the problem.
            let mut l = nn;
            while l >= 1 {
                let s = a[idx(l - 1, l - 1, n)].abs() + a[idx(l, l, n)].abs();
                let s = if s == 0.0 { anorm } else { s };
                if a[idx(l, l - 1, n)].abs() <= QR_EPS * s {
                    a[idx(l, l - 1, n)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = a[idx(nn, nn, n)];
            if l == nn {
                // A single real eigenvalue has deflated out.
                roots.push(Complex64::new(x + t, 0.0));
                nn -= 1;
                break;
            }
            let y = a[idx(nn - 1, nn - 1, n)];
            let w = a[idx(nn, nn - 1, n)] * a[idx(nn - 1, nn, n)];
            if l == nn - 1 {
                // A 2x2 block has deflated out: solve it in closed form.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let x = x + t;
                if q >= 0.0 {
                    let z = p + sign_of(z, p);
                    roots.push(Complex64::new(x + z, 0.0));
                    if z != 0.0 {
                        roots.push(Complex64::new(x - w / z, 0.0));
                    } else {
                        roots.push(Complex64::new(x + z, 0.0));
                    }
                } else {
                    roots.push(Complex64::new(x + p, z));
                    roots.push(Complex64::new(x + p, -z));
                }
                nn -= 2;
                break;
            }
            if its == QR_MAX_ITERS {
                return Err(PolyError::Unconverged { degree: n });
            }
            let (mut x, mut y, mut w) = (x, y, w);
            if its == 10 || its == 20 || its == 30 || its == 40 || its == 50 {
                // Exceptional shift to break out of cycling.
                t += x;
                for i in 0..=nn {
                    a[idx(i, i, n)] -= x;
                }
                let s = a[idx(nn, nn - 1, n)].abs() + a[idx(nn - 1, nn - 2, n)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // Look for two consecutive small subdiagonal elements from which
            // to start the implicit double shift.
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = (0.0, 0.0, 0.0);
            while m >= l {
                let z = a[idx(m, m, n)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[idx(m + 1, m, n)] + a[idx(m, m + 1, n)];
                q = a[idx(m + 1, m + 1, n)] - z - rr - ss;
                r = a[idx(m + 2, m + 1, n)];
                let scale = p.abs() + q.abs() + r.abs();
                p /= scale;
                q /= scale;
                r /= scale;
                if m == l {
                    break;
                }
                let u = a[idx(m, m - 1, n)].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a[idx(m - 1, m - 1, n)].abs() + z.abs() + a[idx(m + 1, m + 1, n)].abs());
                if u <= QR_EPS * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[idx(i, i - 2, n)] = 0.0;
                if i != m + 2 {
                    a[idx(i, i - 3, n)] = 0.0;
                }
            }
            // Chase the bulge down the Hessenberg band.
            let mut k = m;
            while k <= nn - 1 {
                if k != m {
                    p = a[idx(k, k - 1, n)];
                    q = a[idx(k + 1, k - 1, n)];
                    r = if k != nn - 1 { a[idx(k + 2, k - 1, n)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign_of((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[idx(k, k - 1, n)] = -a[idx(k, k - 1, n)];
                        }
                    } else {
                        a[idx(k, k - 1, n)] = -s * x;
                    }
                    p += s;
                    let px = p / s;
                    let qy = q / s;
                    let rz = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = a[idx(k, j, n)] + q * a[idx(k + 1, j, n)];
                        if k != nn - 1 {
                            pp += r * a[idx(k + 2, j, n)];
                            a[idx(k + 2, j, n)] -= pp * rz;
                        }
                        a[idx(k + 1, j, n)] -= pp * qy;
                        a[idx(k, j, n)] -= pp * px;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = px * a[idx(i, k, n)] + qy * a[idx(i, k + 1, n)];
                        if k != nn - 1 {
                            pp += rz * a[idx(i, k + 2, n)];
                            a[idx(i, k + 2, n)] -= pp * r;
                        }
                        a[idx(i, k + 1, n)] -= pp * q;
                        a[idx(i, k, n)] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(roots)
}

/// Row-major indexing with signed indices, which the QR loops use freely.
#[inline]
fn idx(i: isize, j: isize, n: usize) -> usize {
    debug_assert!(i >= 0 && j >= 0);
    i as usize * n + j as usize
}
