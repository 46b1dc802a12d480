//! Signature vectors and the linear-form algebra used by the closed-form
//! counting routes.
//!
//! A *signature vector* `x = (x_0, …, x_d)` assigns a weight to each possible
//! subgraph degree of a vertex of degree `d`.  The closed-form routes rest on
//! three families of objects in the coefficient space:
//!
//! * the forms `Q_(k)` with coefficients from `(1+iz)^r (1-iz)^{d-r}`,
//!   `r = (d-k)/2`, which are left eigenvectors of the tridiagonal
//!   derivation matrix [`clement_matrix`] with eigenvalue `k·i`;
//! * the rotation matrices `R_t` acting on signature vectors, exact for
//!   multiples of `π/4` (a power of `√2` times an integer matrix) and
//!   floating-point otherwise;
//! * the nonnegative vectors [`s_vector`] (right kernel of the derivation
//!   matrix) and their alternating twins [`c_vector`] (the middle column of
//!   the `π/4` rotation), at which the subgraph sum counts Eulerian
//!   orientations and half-graphs respectively.

use crate::exact::{binomial, rational_to_f64, GaussianRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Errors from signature and rotation constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("degree {d} requires an even degree")]
    EvenDegreeRequired { d: usize },
    #[error("index {k} has the wrong parity for degree {d}")]
    IndexParity { d: usize, k: i64 },
    #[error("index {k} is out of range for degree {d}")]
    IndexRange { d: usize, k: i64 },
    #[error("expected a vector of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
}

/// Weights `(x_0, …, x_d)` for the possible subgraph degrees of a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureVector {
    entries: Vec<GaussianRational>,
}

impl SignatureVector {
    /// Builds a signature from `d + 1` entries.  Panics on an empty vector.
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        assert!(!entries.is_empty(), "a signature has at least one entry");
        Self { entries }
    }

    pub fn from_rationals(entries: Vec<Rational>) -> Self {
        Self::new(entries.into_iter().map(crate::exact::real).collect())
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> &GaussianRational {
        &self.entries[k]
    }

    /// Real parts as floats; `None` if any entry has an imaginary part.
    pub fn to_floats(&self) -> Option<Vec<f64>> {
        self.entries
            .iter()
            .map(|z| z.im.is_zero().then(|| rational_to_f64(&z.re)))
            .collect()
    }
}

/// A linear form `b_0 x_0 + … + b_d x_d` on signature vectors of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<GaussianRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Evaluates the form at a signature vector of matching degree.
    pub fn evaluate(&self, x: &SignatureVector) -> Result<GaussianRational, SignatureError> {
        if x.degree() != self.degree() {
            return Err(SignatureError::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (b, x) in self.coeffs.iter().zip(x.entries()) {
            if !b.is_zero() && !x.is_zero() {
                acc += b * x;
            }
        }
        Ok(acc)
    }

    /// The derivation `b ↦ b · A` acting on coefficient rows, where `A` is
    /// [`clement_matrix`]: `(b·A)_j = (d-j+1) b_{j-1} - (j+1) b_{j+1}`.
    pub fn derivation(&self) -> LinearForm {
        let d = self.degree();
        let coeff = |j: usize| -> GaussianRational {
            let mut acc = GaussianRational::zero();
            if j >= 1 {
                acc += &self.coeffs[j - 1] * &crate::exact::gauss_ints((d - j + 1) as i64, 0);
            }
            if j < d {
                acc -= &self.coeffs[j + 1] * &crate::exact::gauss_ints((j + 1) as i64, 0);
            }
            acc
        };
        LinearForm::new((0..=d).map(coeff).collect())
    }
}

/// Ascending coefficients of `(cos·x − sin)^r (sin·x + cos)^{d−r}`, the row
/// polynomial shared by every rotation-matrix construction.
fn rotation_row<T>(d: usize, r: usize, cos: &T, sin: &T) -> Vec<T>
where
    T: Clone + num_traits::NumAssign + std::ops::Neg<Output = T>,
{
    let mut poly = vec![T::one()];
    let multiply = |poly: &[T], constant: &T, linear: &T| {
        let mut out = vec![T::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            out[i] += c.clone() * constant.clone();
            out[i + 1] += c.clone() * linear.clone();
        }
        out
    };
    for _ in 0..r {
        poly = multiply(&poly, &(-sin.clone()), cos);
    }
    for _ in 0..(d - r) {
        poly = multiply(&poly, cos, sin);
    }
    poly
}

/// The coefficient row of the form `Q_(k)` of degree `d`: ascending
/// coefficients of `(1+iz)^r (1-iz)^{d-r}` with `r = (d-k)/2`.  Requires
/// `|k| ≤ d` and `k ≡ d (mod 2)`.
pub fn q_coefficients(d: usize, k: i64) -> Result<LinearForm, SignatureError> {
    if k.unsigned_abs() as usize > d {
        return Err(SignatureError::IndexRange { d, k });
    }
    if (k.rem_euclid(2) as usize) != d % 2 {
        return Err(SignatureError::IndexParity { d, k });
    }
    let r = ((d as i64 - k) / 2) as usize;
    // (1+iz)^r (1-iz)^{d-r} expanded by convolution over Gaussian integers.
    let i = GaussianRational::i();
    let mut poly = vec![GaussianRational::one()];
    let multiply = |poly: &[GaussianRational], linear: &GaussianRational| {
        let mut out = vec![GaussianRational::zero(); poly.len() + 1];
        for (idx, c) in poly.iter().enumerate() {
            out[idx] += c;
            out[idx + 1] += c * linear;
        }
        out
    };
    for _ in 0..r {
        poly = multiply(&poly, &i);
    }
    for _ in 0..(d - r) {
        poly = multiply(&poly, &(-i.clone()));
    }
    Ok(LinearForm::new(poly))
}

/// The `(d+1)×(d+1)` tridiagonal derivation matrix: superdiagonal
/// `A[k][k+1] = d-k`, subdiagonal `A[k][k-1] = -k`, zero elsewhere.
pub fn clement_matrix(d: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; d + 1]; d + 1];
    for k in 0..d {
        m[k][k + 1] = (d - k) as i64;
    }
    for k in 1..=d {
        m[k][k - 1] = -(k as i64);
    }
    m
}

/// An angle, kept exact when it is a multiple of `π/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `k · π/4`.
    QuarterPi(i64),
    /// Arbitrary angle in radians (floating point).
    Radians(f64),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match *self {
            Angle::QuarterPi(k) => k as f64 * std::f64::consts::FRAC_PI_4,
            Angle::Radians(t) => t,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::QuarterPi(0) => write!(f, "0"),
            Angle::QuarterPi(k) => {
                let sign = if k < 0 { "-" } else { "" };
                let (num, den) = (k.unsigned_abs(), 4u64);
                let g = num_integer::gcd(num, den);
                let (num, den) = (num / g, den / g);
                let coeff = if num == 1 { String::new() } else { num.to_string() };
                if den == 1 {
                    write!(f, "{sign}{coeff}pi")
                } else {
                    write!(f, "{sign}{coeff}pi/{den}")
                }
            }
            Angle::Radians(t) => write!(f, "{t}"),
        }
    }
}

/// Parses `0`, `pi`, `-pi/2`, `3pi/4`, `2pi`, … exactly; anything else is
/// read as a decimal angle in radians.  Returns `None` for unparsable text.
pub fn parse_angle(text: &str) -> Option<Angle> {
    let text = text.trim();
    if let Some(idx) = text.find("pi") {
        let (coeff, den) = (&text[..idx], &text[idx + 2..]);
        let num: i64 = match coeff {
            "" => 1,
            "-" => -1,
            c => c.parse().ok()?,
        };
        let den: i64 = match den.strip_prefix('/') {
            None if den.is_empty() => 1,
            None => return None,
            Some(d) => d.parse().ok()?,
        };
        if den <= 0 {
            return None;
        }
        if (4 * num) % den == 0 {
            return Some(Angle::QuarterPi(4 * num / den));
        }
        return Some(Angle::Radians(num as f64 * std::f64::consts::PI / den as f64));
    }
    if let Ok(k) = text.parse::<i64>() {
        // A plain integer is radians only when nonzero; "0" stays exact.
        if k == 0 {
            return Some(Angle::QuarterPi(0));
        }
        return Some(Angle::Radians(k as f64));
    }
    text.parse::<f64>().ok().map(Angle::Radians)
}

/// Rotation matrix on degree-`d` signatures, exact when the angle is a
/// multiple of `π/4`.
#[derive(Debug, Clone, PartialEq)]
pub enum RotationMatrix {
    Exact(ExactRotation),
    Float(FloatRotation),
}

/// Builds the rotation matrix for the angle, choosing the exact
/// representation for multiples of `π/4`.
pub fn rotation_matrix(d: usize, angle: Angle) -> RotationMatrix {
    match angle {
        Angle::QuarterPi(k) => RotationMatrix::Exact(ExactRotation::quarter_pi_multiple(d, k)),
        Angle::Radians(t) => RotationMatrix::Float(FloatRotation::new(d, t)),
    }
}

/// The `π/4` rotation (the scaled Krawtchouk matrix): row `r` holds
/// `(√2)^{-d}` times the ascending coefficients of `(x-1)^r (x+1)^{d-r}`.
pub fn krawtchouk_matrix(d: usize) -> ExactRotation {
    ExactRotation::quarter_pi_multiple(d, 1)
}

/// A matrix of the form `(√2)^e · M` with `M` integral — the exact value of
/// a rotation by a multiple of `π/4`.  Kept normalized (some entry odd, or
/// `e = 0` for the zero matrix), which makes equality canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRotation {
    d: usize,
    entries: Vec<BigInt>,
    sqrt2_exp: i64,
}

impl ExactRotation {
    /// The exact rotation by `k · π/4` on degree-`d` signatures.
    pub fn quarter_pi_multiple(d: usize, k: i64) -> Self {
        let k = k.rem_euclid(8);
        // cos and sin of k·π/4 as c/(√2)^s with integer c.
        let (cos, sin, exp) = match k {
            0 => (1, 0, 0i64),
            1 => (1, 1, -1),
            2 => (0, 1, 0),
            3 => (-1, 1, -1),
            4 => (-1, 0, 0),
            5 => (-1, -1, -1),
            6 => (0, -1, 0),
            _ => (1, -1, -1),
        };
        let mut entries = Vec::with_capacity((d + 1) * (d + 1));
        for r in 0..=d {
            entries.extend(rotation_row(d, r, &BigInt::from(cos), &BigInt::from(sin)));
        }
        let mut out = Self { d, entries, sqrt2_exp: exp * d as i64 };
        out.normalize();
        out
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// The integer matrix `M` in `(√2)^e · M`.
    pub fn integer_entries(&self) -> Vec<Vec<BigInt>> {
        (0..=self.d)
            .map(|r| self.entries[r * (self.d + 1)..(r + 1) * (self.d + 1)].to_vec())
            .collect()
    }

    /// The exponent `e` in `(√2)^e · M`.
    pub fn sqrt2_exp(&self) -> i64 {
        self.sqrt2_exp
    }

    /// Entry `(r, j)` as a rational; `None` when the scale is an odd power
    /// of `√2` (irrational entries).
    pub fn rational_entries(&self) -> Option<Vec<Vec<Rational>>> {
        if self.sqrt2_exp % 2 != 0 {
            return None;
        }
        let scale = crate::exact::pow2(self.sqrt2_exp / 2);
        Some(
            self.integer_entries()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| Rational::from_integer(v) * &scale)
                        .collect()
                })
                .collect(),
        )
    }

    /// Column `j` as rationals (requires an even `√2` exponent).
    pub fn rational_column(&self, j: usize) -> Option<Vec<Rational>> {
        let rows = self.rational_entries()?;
        Some(rows.into_iter().map(|row| row[j].clone()).collect())
    }

    /// Exact matrix product (rotations compose by adding angles).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.d, rhs.d, "rotation degrees differ");
        let n = self.d + 1;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        let mut out = Self { d: self.d, entries, sqrt2_exp: self.sqrt2_exp + rhs.sqrt2_exp };
        out.normalize();
        out
    }

    pub fn is_identity(&self) -> bool {
        let n = self.d + 1;
        self.sqrt2_exp == 0
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let e = &self.entries[i * n + j];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Divides out powers of 2 (each worth `(√2)^2`) until some entry is
    /// odd; the zero matrix normalizes to exponent 0.
    fn normalize(&mut self) {
        if self.entries.iter().all(Zero::is_zero) {
            self.sqrt2_exp = 0;
            return;
        }
        let two = BigInt::from(2);
        while self.entries.iter().all(|e| (e % &two).is_zero()) {
            for e in &mut self.entries {
                *e /= 2;
            }
            self.sqrt2_exp += 2;
        }
    }
}

/// Floating-point rotation matrix for arbitrary angles.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatRotation {
    d: usize,
    t: f64,
    rows: Vec<Vec<f64>>,
}

impl FloatRotation {
    pub fn new(d: usize, t: f64) -> Self {
        let (sin, cos) = t.sin_cos();
        let rows = (0..=d).map(|r| rotation_row(d, r, &cos, &sin)).collect();
        Self { d, t, rows }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn angle(&self) -> f64 {
        self.t
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Matrix-vector product `R_t · x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.d + 1, "vector length must be d + 1");
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Entrywise product of two float rotations (same degree).
    pub fn mul(&self, rhs: &Self) -> Vec<Vec<f64>> {
        assert_eq!(self.d, rhs.d, "rotation degrees differ");
        let n = self.d + 1;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * rhs.rows[k][j]).sum())
                    .collect()
            })
            .collect()
    }
}

/// Row `r` of `R_t` applied to a float signature: the rotated coordinate
/// `â_r(t) = Σ_j [x^j](cos t · x − sin t)^r (sin t · x + cos t)^{d−r} · x_j`.
pub fn a_hat(d: usize, r: usize, t: f64, x: &[f64]) -> f64 {
    assert!(r <= d, "row index exceeds degree");
    assert_eq!(x.len(), d + 1, "vector length must be d + 1");
    let (sin, cos) = t.sin_cos();
    rotation_row(d, r, &cos, &sin)
        .iter()
        .zip(x)
        .map(|(a, b)| a * b)
        .sum()
}

/// The nonnegative kernel vector of the derivation matrix:
/// `s_k = C(d, d/2) · C(d/2, k/2) / (2^{d/2} · C(d, k))` for even `k`, zero
/// for odd `k`.  Requires even `d`.
pub fn s_vector(d: usize) -> Result<SignatureVector, SignatureError> {
    if !d.is_multiple_of(2) {
        return Err(SignatureError::EvenDegreeRequired { d });
    }
    let top = binomial(d as u64, d as u64 / 2);
    let scale = BigInt::one() << (d / 2);
    let entries = (0..=d)
        .map(|k| {
            if k % 2 != 0 {
                return Rational::zero();
            }
            let num = &top * binomial(d as u64 / 2, k as u64 / 2);
            let den = &scale * binomial(d as u64, k as u64);
            Rational::new(num, den)
        })
        .collect();
    Ok(SignatureVector::from_rationals(entries))
}

/// The alternating twin of [`s_vector`]: `c_k = (-1)^{k/2} s_k` for even
/// `k`, zero for odd `k`.  Equals the middle column of the `π/4` rotation.
pub fn c_vector(d: usize) -> Result<SignatureVector, SignatureError> {
    let s = s_vector(d)?;
    let entries = s
        .entries()
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 && (k / 2) % 2 == 1 { -v.clone() } else { v.clone() })
        .collect();
    Ok(SignatureVector::new(entries))
}

/// The rescaled kernel vector `s'_{2t} = C(d/2, t) / C(d, 2t)` (odd entries
/// zero), whose rotated coordinates are constant in the angle.
pub fn s_prime_vector(d: usize) -> Result<SignatureVector, SignatureError> {
    if !d.is_multiple_of(2) {
        return Err(SignatureError::EvenDegreeRequired { d });
    }
    let entries = (0..=d)
        .map(|k| {
            if k % 2 != 0 {
                return Rational::zero();
            }
            Rational::new(binomial(d as u64 / 2, k as u64 / 2), binomial(d as u64, k as u64))
        })
        .collect();
    Ok(SignatureVector::from_rationals(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gauss_ints, rational, real};

    fn gi(re: i64, im: i64) -> GaussianRational {
        gauss_ints(re, im)
    }

    #[test]
    fn q_coefficients_match_hand_expansion_for_degree_three() {
        let cases: [(i64, [GaussianRational; 4]); 4] = [
            (3, [gi(1, 0), gi(0, -3), gi(-3, 0), gi(0, 1)]),
            (1, [gi(1, 0), gi(0, -1), gi(1, 0), gi(0, -1)]),
            (-1, [gi(1, 0), gi(0, 1), gi(1, 0), gi(0, 1)]),
            (-3, [gi(1, 0), gi(0, 3), gi(-3, 0), gi(0, -1)]),
        ];
        for (k, expected) in cases {
            let q = q_coefficients(3, k).unwrap();
            assert_eq!(q.coeffs(), &expected, "k = {k}");
        }
    }

    #[test]
    fn q_coefficients_degree_two_middle_form() {
        let q = q_coefficients(2, 0).unwrap();
        assert_eq!(q.coeffs(), &[gi(1, 0), gi(0, 0), gi(1, 0)]);
    }

    #[test]
    fn q_constant_coefficient_is_always_one() {
        for d in 0..=9usize {
            for k in (-(d as i64)..=d as i64).filter(|k| k.rem_euclid(2) as usize == d % 2) {
                assert_eq!(q_coefficients(d, k).unwrap().coeffs()[0], gi(1, 0));
            }
        }
    }

    #[test]
    fn q_coefficients_reject_bad_indices() {
        assert_eq!(q_coefficients(3, 2), Err(SignatureError::IndexParity { d: 3, k: 2 }));
        assert_eq!(q_coefficients(3, 5), Err(SignatureError::IndexRange { d: 3, k: 5 }));
        assert_eq!(q_coefficients(2, -1), Err(SignatureError::IndexParity { d: 2, k: -1 }));
    }

    #[test]
    fn clement_matrix_degree_three() {
        assert_eq!(
            clement_matrix(3),
            vec![
                vec![0, 3, 0, 0],
                vec![-1, 0, 2, 0],
                vec![0, -2, 0, 1],
                vec![0, 0, -3, 0],
            ]
        );
        assert_eq!(clement_matrix(1), vec![vec![0, 1], vec![-1, 0]]);
    }

    /// Multiplies a coefficient row by the derivation matrix the slow way.
    fn row_times_clement(form: &LinearForm) -> Vec<GaussianRational> {
        let d = form.degree();
        let a = clement_matrix(d);
        (0..=d)
            .map(|j| {
                let mut acc = GaussianRational::zero();
                for (row, coeff) in a.iter().zip(form.coeffs()) {
                    if row[j] != 0 {
                        acc += coeff * &gi(row[j], 0);
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn q_rows_are_eigenvectors_of_the_derivation() {
        for d in 0..=10usize {
            for k in (-(d as i64)..=d as i64).filter(|k| k.rem_euclid(2) as usize == d % 2) {
                let q = q_coefficients(d, k).unwrap();
                let eigen: Vec<_> = q.coeffs().iter().map(|c| c * &gi(0, k)).collect();
                assert_eq!(row_times_clement(&q), eigen, "d = {d}, k = {k}");
                // The derivation shortcut agrees with the explicit product.
                assert_eq!(q.derivation().coeffs(), &eigen[..], "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn krawtchouk_degree_four_matches_hand_scaled_matrix() {
        let k = krawtchouk_matrix(4);
        let expected: Vec<Vec<i64>> = vec![
            vec![1, 4, 6, 4, 1],
            vec![-1, -2, 0, 2, 1],
            vec![1, 0, -2, 0, 1],
            vec![-1, 2, 0, -2, 1],
            vec![1, -4, 6, -4, 1],
        ];
        assert_eq!(k.sqrt2_exp(), -4);
        let entries = k.integer_entries();
        for (r, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(entries[r][j], BigInt::from(v), "entry ({r}, {j})");
            }
        }
        // Even exponent: entries are rational, scaled by 2^{-2}.
        let rows = k.rational_entries().unwrap();
        assert_eq!(rows[0][0], rational(1, 4));
        assert_eq!(rows[2][2], rational(-1, 2));
    }

    #[test]
    fn krawtchouk_odd_degree_stays_irrational() {
        let k = krawtchouk_matrix(3);
        assert_eq!(k.sqrt2_exp(), -3);
        assert!(k.rational_entries().is_none());
        // Row 0 is (x+1)^3.
        assert_eq!(k.integer_entries()[0], [1, 3, 3, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn exact_rotations_satisfy_the_group_law() {
        for d in 0..=6usize {
            for a in -4i64..=8 {
                for b in -3i64..=5 {
                    let lhs = ExactRotation::quarter_pi_multiple(d, a)
                        .mul(&ExactRotation::quarter_pi_multiple(d, b));
                    let rhs = ExactRotation::quarter_pi_multiple(d, a + b);
                    assert_eq!(lhs, rhs, "d = {d}, a = {a}, b = {b}");
                }
            }
        }
    }

    #[test]
    fn exact_rotation_identities() {
        for d in 0..=8usize {
            assert!(ExactRotation::quarter_pi_multiple(d, 0).is_identity());
            assert!(ExactRotation::quarter_pi_multiple(d, 8).is_identity());
            let quarter = ExactRotation::quarter_pi_multiple(d, 1);
            let mut power = ExactRotation::quarter_pi_multiple(d, 0);
            for _ in 0..8 {
                power = power.mul(&quarter);
            }
            assert!(power.is_identity(), "R_{{π/4}}^8 at d = {d}");
        }
    }

    #[test]
    fn krawtchouk_middle_column_is_the_alternating_vector() {
        for d in (2..=12usize).step_by(2) {
            let column = krawtchouk_matrix(d).rational_column(d / 2).unwrap();
            let c = c_vector(d).unwrap();
            let expected: Vec<_> = column.into_iter().map(real).collect();
            assert_eq!(c.entries(), &expected[..], "d = {d}");
        }
    }

    #[test]
    fn kernel_vector_small_degrees() {
        let s4 = s_vector(4).unwrap();
        let expected4: Vec<_> = [(3, 2), (0, 1), (1, 2), (0, 1), (3, 2)]
            .map(|(n, d)| real(rational(n, d)))
            .to_vec();
        assert_eq!(s4.entries(), &expected4[..]);

        let s6 = s_vector(6).unwrap();
        let expected6: Vec<_> = [(5, 2), (0, 1), (1, 2), (0, 1), (1, 2), (0, 1), (5, 2)]
            .map(|(n, d)| real(rational(n, d)))
            .to_vec();
        assert_eq!(s6.entries(), &expected6[..]);

        let c8 = c_vector(8).unwrap();
        let expected8: Vec<_> = [
            (35, 8),
            (0, 1),
            (-5, 8),
            (0, 1),
            (3, 8),
            (0, 1),
            (-5, 8),
            (0, 1),
            (35, 8),
        ]
        .map(|(n, d)| real(rational(n, d)))
        .to_vec();
        assert_eq!(c8.entries(), &expected8[..]);

        assert_eq!(s_vector(3), Err(SignatureError::EvenDegreeRequired { d: 3 }));
    }

    #[test]
    fn kernel_vector_is_annihilated_by_the_derivation() {
        for d in (2..=12usize).step_by(2) {
            let s = s_vector(d).unwrap();
            let a = clement_matrix(d);
            for (row, entries) in a.iter().enumerate() {
                let mut acc = GaussianRational::zero();
                for (j, &entry) in entries.iter().enumerate() {
                    if entry != 0 {
                        acc += s.get(j) * &gi(entry, 0);
                    }
                }
                assert!(acc.is_zero(), "d = {d}, row {row}");
            }
        }
    }

    #[test]
    fn q_forms_vanish_on_the_kernel_vector_except_the_middle_one() {
        for d in (2..=12usize).step_by(2) {
            let s = s_vector(d).unwrap();
            let s_prime = s_prime_vector(d).unwrap();
            for k in (-(d as i64)..=d as i64).filter(|k| k % 2 == 0) {
                let q = q_coefficients(d, k).unwrap();
                let value = q.evaluate(&s).unwrap();
                if k != 0 {
                    assert!(value.is_zero(), "d = {d}, k = {k}");
                }
                // The middle form takes the value 2^d / C(d, d/2) at the
                // rescaled vector.
                if k == 0 {
                    let at_prime = q.evaluate(&s_prime).unwrap();
                    let expected = real(Rational::new(
                        BigInt::one() << d,
                        binomial(d as u64, d as u64 / 2),
                    ));
                    assert_eq!(at_prime, expected, "d = {d}");
                }
            }
        }
    }

    #[test]
    fn float_rotation_at_zero_is_the_identity() {
        let r = FloatRotation::new(5, 0.0);
        for (i, row) in r.rows().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn float_rotations_compose_by_adding_angles() {
        let (d, t1, t2) = (6, 0.37, -1.91);
        let lhs = FloatRotation::new(d, t1).mul(&FloatRotation::new(d, t2));
        let rhs = FloatRotation::new(d, t1 + t2);
        for (i, row) in lhs.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!((v - rhs.rows()[i][j]).abs() <= 1e-12, "({i}, {j})");
            }
        }
    }

    #[test]
    fn a_hat_at_zero_reads_off_the_coordinate() {
        let x = [0.25, -1.5, 3.0, 0.5];
        for r in 0..=3 {
            assert_eq!(a_hat(3, r, 0.0, &x), x[r]);
        }
    }

    #[test]
    fn a_hat_is_constant_on_the_rescaled_kernel_vector() {
        for d in [4usize, 6] {
            let x = s_prime_vector(d).unwrap().to_floats().unwrap();
            for r in 0..=d {
                for t in [0.1, 0.77, 2.3, -1.2] {
                    let drift = (a_hat(d, r, t, &x) - x[r]).abs();
                    assert!(drift <= 1e-12, "d = {d}, r = {r}, t = {t}: drift {drift}");
                }
            }
        }
    }

    #[test]
    fn a_hat_satisfies_the_rotation_derivative() {
        // d/dt â_r(t) = (d-r) â_{r+1}(t) - r â_{r-1}(t), checked by central
        // differences (O(h²) error).
        let d = 5;
        let x = [1.0, -0.5, 2.0, 0.25, -1.0, 0.75];
        let h = 1e-5;
        for r in 0..=d {
            for t in [0.0, 0.4, 1.3] {
                let numeric = (a_hat(d, r, t + h, &x) - a_hat(d, r, t - h, &x)) / (2.0 * h);
                let upper = if r < d { (d - r) as f64 * a_hat(d, r + 1, t, &x) } else { 0.0 };
                let lower = if r > 0 { r as f64 * a_hat(d, r - 1, t, &x) } else { 0.0 };
                assert!((numeric - (upper - lower)).abs() <= 1e-6, "r = {r}, t = {t}");
            }
        }
    }

    #[test]
    fn angle_parsing_and_display() {
        assert_eq!(parse_angle("pi/4"), Some(Angle::QuarterPi(1)));
        assert_eq!(parse_angle("-pi/2"), Some(Angle::QuarterPi(-2)));
        assert_eq!(parse_angle("3pi/4"), Some(Angle::QuarterPi(3)));
        assert_eq!(parse_angle("2pi"), Some(Angle::QuarterPi(8)));
        assert_eq!(parse_angle("0"), Some(Angle::QuarterPi(0)));
        match parse_angle("pi/3") {
            Some(Angle::Radians(t)) => {
                assert!((t - std::f64::consts::FRAC_PI_3).abs() < 1e-15)
            }
            other => panic!("pi/3 is not a quarter-pi multiple: {other:?}"),
        }
        assert_eq!(parse_angle("0.25"), Some(Angle::Radians(0.25)));
        assert_eq!(parse_angle("pi/0"), None);
        assert_eq!(parse_angle("abc"), None);

        assert_eq!(Angle::QuarterPi(1).to_string(), "pi/4");
        assert_eq!(Angle::QuarterPi(-2).to_string(), "-pi/2");
        assert_eq!(Angle::QuarterPi(8).to_string(), "2pi");
        assert_eq!(Angle::QuarterPi(0).to_string(), "0");
    }

    #[test]
    fn linear_form_evaluation_checks_degree() {
        let q = q_coefficients(2, 0).unwrap();
        let x = SignatureVector::new(vec![gi(1, 0), gi(5, 0), gi(2, 0)]);
        assert_eq!(q.evaluate(&x).unwrap(), gi(3, 0));
        let short = SignatureVector::new(vec![gi(1, 0)]);
        assert_eq!(
            q.evaluate(&short),
            Err(SignatureError::DegreeMismatch { expected: 2, found: 0 })
        );
    }
}
