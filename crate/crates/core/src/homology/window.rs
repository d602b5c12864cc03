use std::fmt;

use crate::error::{Error, Result};

/// Finite truncation of a differential polynomial algebra.
///
/// * `max_poly_degree`: number of factors, not counting order-zero
///   coordinates `x^μ` or inverse powers of invertible generators;
/// * `max_derivative_order`: total number of derivatives in a monomial;
/// * `max_x_degree`: degree in the order-zero coordinates;
/// * `max_gamma_inverse_depth`: largest inverse power (localized spaces only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub max_poly_degree: u32,
    pub max_derivative_order: u32,
    pub max_x_degree: u32,
    pub max_gamma_inverse_depth: u32,
}

impl Window {
    pub fn new(d: u32, l: u32, x: u32, g: u32) -> Self {
        Window { max_poly_degree: d, max_derivative_order: l, max_x_degree: x, max_gamma_inverse_depth: g }
    }

    /// Parses `D,L,X,G`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidArgument(format!("window `{s}` must have the form D,L,X,G")));
        }
        let mut v = [0u32; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("window entry `{p}` is not a non-negative integer")))?;
        }
        Ok(Window::new(v[0], v[1], v[2], v[3]))
    }

    /// Every cap raised by `m`.
    pub fn enlarged(&self, m: u32) -> Self {
        Window::new(
            self.max_poly_degree + m,
            self.max_derivative_order + m,
            self.max_x_degree + m,
            self.max_gamma_inverse_depth + m,
        )
    }

    pub fn contains(&self, other: &Window) -> bool {
        self.max_poly_degree >= other.max_poly_degree
            && self.max_derivative_order >= other.max_derivative_order
            && self.max_x_degree >= other.max_x_degree
            && self.max_gamma_inverse_depth >= other.max_gamma_inverse_depth
    }

    pub fn join(&self, other: &Window) -> Self {
        Window::new(
            self.max_poly_degree.max(other.max_poly_degree),
            self.max_derivative_order.max(other.max_derivative_order),
            self.max_x_degree.max(other.max_x_degree),
            self.max_gamma_inverse_depth.max(other.max_gamma_inverse_depth),
        )
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.max_poly_degree, self.max_derivative_order, self.max_x_degree, self.max_gamma_inverse_depth
        )
    }
}
