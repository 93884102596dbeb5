//! The spectral-parameter matrix of the E1 map and its zero-curvature identity.
//!
//! `W(xi1, xi2, beta; lambda) = [[xi1, -xi1*xi2], [1, lambda - beta - xi2]]` is
//! kept as its two coefficient matrices in `lambda`, so products are compared
//! coefficientwise instead of at sample values of `lambda`.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::scalar::{div, Scalar};
use crate::ybmaps::YbPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Scalar> Mat2<T> {
    pub fn zero() -> Self {
        Mat2([[T::zero(), T::zero()], [T::zero(), T::zero()]])
    }
}

impl<T: Scalar> Add for &Mat2<T> {
    type Output = Mat2<T>;

    fn add(self, rhs: Self) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0].clone() + b[0][0].clone(),
                a[0][1].clone() + b[0][1].clone(),
            ],
            [
                a[1][0].clone() + b[1][0].clone(),
                a[1][1].clone() + b[1][1].clone(),
            ],
        ])
    }
}

impl<T: Scalar> Mul for &Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Self) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        let entry =
            |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

/// A 2x2 matrix polynomial of degree at most 1: `c0 + lambda * c1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxMatrix<T> {
    pub c0: Mat2<T>,
    pub c1: Mat2<T>,
}

impl<T: Scalar> LaxMatrix<T> {
    /// Coefficients of `self(lambda) * rhs(lambda)`, lowest degree first.
    pub fn product(&self, rhs: &Self) -> [Mat2<T>; 3] {
        [
            &self.c0 * &rhs.c0,
            &(&self.c0 * &rhs.c1) + &(&self.c1 * &rhs.c0),
            &self.c1 * &rhs.c1,
        ]
    }

    pub fn at(&self, lambda: &T) -> Mat2<T> {
        let scaled = Mat2(self.c1.0.clone().map(|row| row.map(|e| e * lambda.clone())));
        &self.c0 + &scaled
    }
}

pub fn lax_w<T: Scalar>(xi1: &T, xi2: &T, beta: &T) -> LaxMatrix<T> {
    let (o, z) = (T::one, T::zero);
    LaxMatrix {
        c0: Mat2([
            [xi1.clone(), -(xi1.clone() * xi2.clone())],
            [o(), -(beta.clone() + xi2.clone())],
        ]),
        c1: Mat2([[z(), z()], [z(), o()]]),
    }
}

fn pair<T: Scalar>(pt: &YbPoint<T>, name: &str) -> Result<[T; 2]> {
    match pt.components() {
        [a, b] => Ok([a.clone(), b.clone()]),
        other => Err(Error::Shape(format!(
            "{name} needs 2 components, got {}",
            other.len()
        ))),
    }
}

/// Whether `W(y, beta2) W(x, beta1) = W(p, beta1) W(q, beta2)` identically in `lambda`.
pub fn check_zero_curvature<T: Scalar>(
    x: &YbPoint<T>,
    y: &YbPoint<T>,
    p: &YbPoint<T>,
    q: &YbPoint<T>,
    beta1: &T,
    beta2: &T,
) -> Result<bool> {
    let [x, y, p, q] = [pair(x, "x")?, pair(y, "y")?, pair(p, "p")?, pair(q, "q")?];
    let lhs = lax_w(&y[0], &y[1], beta2).product(&lax_w(&x[0], &x[1], beta1));
    let rhs = lax_w(&p[0], &p[1], beta1).product(&lax_w(&q[0], &q[1], beta2));
    Ok(lhs == rhs)
}

/// The linear fractional action `z -> (a z + b) / (c z + d)`.
pub fn moebius_action<T: Scalar>(m: &Mat2<T>, z: &T) -> Result<T> {
    let [[a, b], [c, d]] = &m.0;
    div(
        a.clone() * z.clone() + b.clone(),
        c.clone() * z.clone() + d.clone(),
        "c*z + d",
    )
}

/// First component of the E1 map's `p`, written as a fractional linear image of `x1`.
pub fn moebius_p1<T: Scalar>(x1: &T, y1: &T, y2: &T, beta1: &T, beta2: &T) -> Result<T> {
    let d = x1.clone() - y2.clone();
    div(
        y1.clone() * d.clone(),
        d + beta1.clone() - beta2.clone(),
        "x1 - y2 + beta1 - beta2",
    )
}
