//! Finite-difference realizations of the torus prequantization operators.
//!
//! Sections over the torus are sampled on `[0,1)^2` with spacing `1/M`.
//! They satisfy `phi(x+1, y) = e^{2 pi i y} phi(x, y)` and are periodic in
//! `y`, so the x-difference wraps with a phase and the y-difference wraps
//! plainly. Both differences are second-order centered stencils.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalg::DiffRing;
use crate::poly::Poly;
use crate::scalars::{Bindings, Param};

pub type GridField = Vec<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Polynomial over the torus coefficient ring with numeric coefficients,
/// evaluated at points `(x, y)`.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Complex64, Vec<u32>)>,
}

impl CompiledPoly {
    /// `p` must live in [`DiffRing::torus`]; `pi` is bound automatically.
    pub fn new(p: &Poly, bindings: &Bindings) -> Result<Self> {
        let b = bindings.clone().with_pi();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            terms.push((c.eval_c64(&b)?, m.clone()));
        }
        Ok(CompiledPoly { terms })
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let vals = [
            x,
            y,
            (2.0 * PI * x).cos(),
            (2.0 * PI * x).sin(),
            (2.0 * PI * y).cos(),
            (2.0 * PI * y).sin(),
        ];
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, m) in &self.terms {
            let mut t = *c;
            for (v, &e) in vals.iter().zip(m) {
                if e > 0 {
                    t *= v.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

/// Uniform `M x M` grid on the unit square.
#[derive(Clone, Copy, Debug)]
pub struct TorusGrid {
    pub m: usize,
}

/// `a D_y + b D_x + c` with pointwise coefficient arrays.
#[derive(Clone, Debug)]
pub struct TorusOperator {
    pub dy: GridField,
    pub dx: GridField,
    pub mult: GridField,
}

impl TorusGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 64 {
            return Err(Error::GridTooSmall { got: m, min: 64 });
        }
        Ok(TorusGrid { m })
    }

    pub fn h(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        i as f64 * self.h()
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn sample(&self, f: impl Fn(f64, f64) -> Complex64) -> GridField {
        let mut out = Vec::with_capacity(self.m * self.m);
        for i in 0..self.m {
            for j in 0..self.m {
                out.push(f(self.coord(i), self.coord(j)));
            }
        }
        out
    }

    /// Centered x-difference with the quasi-periodic wrap.
    pub fn dx(&self, phi: &[Complex64]) -> GridField {
        let m = self.m;
        let inv = 1.0 / (2.0 * self.h());
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for j in 0..m {
            let phase = (2.0 * PI * I * self.coord(j)).exp();
            for i in 0..m {
                let right = if i + 1 == m {
                    phase * phi[self.idx(0, j)]
                } else {
                    phi[self.idx(i + 1, j)]
                };
                let left = if i == 0 {
                    phi[self.idx(m - 1, j)] / phase
                } else {
                    phi[self.idx(i - 1, j)]
                };
                out[self.idx(i, j)] = (right - left) * inv;
            }
        }
        out
    }

    /// Centered y-difference, periodic.
    pub fn dy(&self, phi: &[Complex64]) -> GridField {
        let m = self.m;
        let inv = 1.0 / (2.0 * self.h());
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for j in 0..m {
                let up = phi[self.idx(i, (j + 1) % m)];
                let down = phi[self.idx(i, (j + m - 1) % m)];
                out[self.idx(i, j)] = (up - down) * inv;
            }
        }
        out
    }

    /// `Q(f) = -i hbar f_x D_y - f_x x + i hbar f_y D_x + f` for `f` in
    /// the torus coefficient ring.
    pub fn prequantize(&self, ring: &DiffRing, f: &Poly, hbar: f64) -> Result<TorusOperator> {
        let b = Bindings::new().float(Param::Hbar, hbar);
        let fx = CompiledPoly::new(&ring.derive(0, f), &b)?;
        let fy = CompiledPoly::new(&ring.derive(1, f), &b)?;
        let f0 = CompiledPoly::new(f, &b)?;
        let ih = I * hbar;
        Ok(TorusOperator {
            dy: self.sample(|x, y| -ih * fx.eval(x, y)),
            dx: self.sample(|x, y| ih * fy.eval(x, y)),
            mult: self.sample(|x, y| f0.eval(x, y) - fx.eval(x, y) * x),
        })
    }

    pub fn apply(&self, op: &TorusOperator, phi: &[Complex64]) -> GridField {
        let dy = self.dy(phi);
        let dx = self.dx(phi);
        (0..phi.len())
            .map(|k| op.dy[k] * dy[k] + op.dx[k] * dx[k] + op.mult[k] * phi[k])
            .collect()
    }

    /// Largest `|a - b|` over rows with `margin <= i < M - margin`.
    pub fn interior_sup(&self, a: &[Complex64], b: &[Complex64], margin: usize) -> f64 {
        let mut s: f64 = 0.0;
        for i in margin..self.m - margin {
            for j in 0..self.m {
                let k = self.idx(i, j);
                s = s.max((a[k] - b[k]).norm());
            }
        }
        s
    }

    pub fn interior_max(&self, a: &[Complex64], margin: usize) -> f64 {
        let zero = vec![Complex64::new(0.0, 0.0); a.len()];
        self.interior_sup(a, &zero, margin)
    }
}

/// `sum_{|k| <= 8} F(x + k) e^{-2 pi i k y}` for a rapidly decaying `F`.
pub fn section_sample(x: f64, y: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
    (-8i32..=8)
        .map(|k| f(x + k as f64) * (-2.0 * PI * I * (k as f64) * y).exp())
        .sum()
}

/// Quasi-periodic section built from a function on the line.
pub fn zak_section(grid: &TorusGrid, psi: impl Fn(f64) -> Complex64) -> GridField {
    grid.sample(|x, y| section_sample(x, y, &psi))
}

/// Uniform grid on `[-L, L]` with spacing `1/M`, functions vanishing outside.
#[derive(Clone, Copy, Debug)]
pub struct LineGrid {
    pub m: usize,
    pub half_width: usize,
}

impl LineGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 64 {
            return Err(Error::GridTooSmall { got: m, min: 64 });
        }
        Ok(LineGrid { m, half_width: 8 })
    }

    pub fn h(&self) -> f64 {
        1.0 / self.m as f64
    }

    pub fn len(&self) -> usize {
        2 * self.half_width * self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.h() - self.half_width as f64
    }

    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> GridField {
        (0..self.len()).map(|i| f(self.x(i))).collect()
    }

    fn at(&self, psi: &[Complex64], i: isize) -> Complex64 {
        if i < 0 || i as usize >= psi.len() {
            Complex64::new(0.0, 0.0)
        } else {
            psi[i as usize]
        }
    }

    pub fn derivative(&self, psi: &[Complex64]) -> GridField {
        let inv = 1.0 / (2.0 * self.h());
        (0..psi.len() as isize)
            .map(|i| (self.at(psi, i + 1) - self.at(psi, i - 1)) * inv)
            .collect()
    }

    /// `A_{+}` (sign = +1) or `A_{-}`: `e^{+-2 pi i x}(1 -+ 2 pi i x) psi`.
    pub fn a(&self, sign: f64, psi: &[Complex64]) -> GridField {
        (0..psi.len())
            .map(|i| {
                let x = self.x(i);
                (sign * 2.0 * PI * I * x).exp() * (1.0 - sign * 2.0 * PI * I * x) * psi[i]
            })
            .collect()
    }

    /// `B_{+}` (sign = +1) or `B_{-}`: `(1 -+ 2 pi hbar d/dx) psi(x +- 1)`.
    pub fn b(&self, sign: f64, hbar: f64, psi: &[Complex64]) -> GridField {
        let shift = sign as isize * self.m as isize;
        let shifted: GridField = (0..psi.len() as isize)
            .map(|i| self.at(psi, i + shift))
            .collect();
        let d = self.derivative(&shifted);
        shifted
            .iter()
            .zip(&d)
            .map(|(s, ds)| s - sign * 2.0 * PI * hbar * ds)
            .collect()
    }

    pub fn sup_diff(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_on_constant_function() {
        let ring = DiffRing::torus();
        let grid = TorusGrid::new(64).unwrap();
        let q = grid
            .prequantize(&ring, &ring.ring.named("cx"), 1.0)
            .unwrap();
        let one = grid.sample(|_, _| Complex64::new(1.0, 0.0));
        let out = grid.apply(&q, &one);
        let expected = grid.sample(|x, _| {
            Complex64::new(
                (2.0 * PI * x).cos() + 2.0 * PI * x * (2.0 * PI * x).sin(),
                0.0,
            )
        });
        assert!(grid.interior_sup(&out, &expected, 0) < 1e-12);
    }

    #[test]
    fn twisted_wrap_is_exact_for_sections() {
        let grid = TorusGrid::new(64).unwrap();
        let psi = |x: f64| Complex64::new((-x * x).exp(), 0.0);
        let phi = zak_section(&grid, psi);
        let d = grid.dx(&phi);
        let exact = grid.sample(|x, y| {
            section_sample(x, y, |t| Complex64::new(-2.0 * t * (-t * t).exp(), 0.0))
        });
        // second order everywhere, including the wrapped columns
        let err = grid.interior_sup(&d, &exact, 0);
        assert!(err < 50.0 * grid.h() * grid.h(), "{err}");
    }

    #[test]
    fn multiplication_pair_is_exact() {
        let g = LineGrid::new(64).unwrap();
        let psi = g.sample(|x| Complex64::new((-x * x).exp(), 0.0));
        let lhs = g.a(-1.0, &g.a(1.0, &psi));
        let rhs: GridField = (0..psi.len())
            .map(|i| psi[i] * (1.0 + 4.0 * PI * PI * g.x(i).powi(2)))
            .collect();
        assert!(g.sup_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            TorusGrid::new(32),
            Err(Error::GridTooSmall { .. })
        ));
    }
}
