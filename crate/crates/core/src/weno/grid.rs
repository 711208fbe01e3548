use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    #[default]
    Periodic,
}

/// Uniform grid, node `i` at `x_left + i dx`, `dx = (x_right - x_left)/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub x_left: T,
    pub x_right: T,
    pub n: usize,
    pub dx: T,
    pub boundary: Boundary,
}

impl<T: Real> Grid<T> {
    pub fn new(x_left: T, x_right: T, n: usize) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::Grid(format!("need at least {MIN_NODES} nodes, got {n}")));
        }
        if !(x_left.is_finite() && x_right.is_finite() && x_right > x_left) {
            return Err(Error::Grid(format!("bad extent [{x_left}, {x_right}]")));
        }
        Ok(Self {
            x_left,
            x_right,
            n,
            dx: (x_right - x_left) / lit(n as f64),
            boundary: Boundary::Periodic,
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> T {
        self.x_left + lit::<T>(i as f64) * self.dx
    }

    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Index of the node nearest to `x`, clamped to the grid.
    pub fn nearest(&self, x: T) -> usize {
        let k = ((x - self.x_left) / self.dx).round().to_f64().unwrap_or(0.0);
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Solution samples `u(x_i, t)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    pub grid: Grid<T>,
    pub t: T,
    pub u: Vec<T>,
}

impl<T: Real> Field<T> {
    /// Validates length, finiteness and nonnegativity.
    pub fn new(grid: Grid<T>, t: T, u: Vec<T>) -> Result<Self> {
        if u.len() != grid.n {
            return Err(Error::Grid(format!("{} values for {} nodes", u.len(), grid.n)));
        }
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::Instability {
                node: i,
                t: t.to_f64().unwrap_or(f64::NAN),
            });
        }
        if let Some(i) = u.iter().position(|v| *v < T::zero()) {
            return Err(Error::Grid(format!("negative value {} at node {i}", u[i])));
        }
        Ok(Self { grid, t, u })
    }

    /// Samples `f` at the nodes, flooring at zero.
    pub fn from_fn<F: Fn(T) -> T>(grid: Grid<T>, t: T, f: F) -> Result<Self> {
        let u = grid.nodes().map(|x| f(x).max(T::zero())).collect();
        Self::new(grid, t, u)
    }

    pub fn zeros(grid: Grid<T>, t: T) -> Self {
        Self {
            grid,
            t,
            u: vec![T::zero(); grid.n],
        }
    }

    /// `sum u_i dx`.
    pub fn mass(&self) -> T {
        self.u.iter().fold(T::zero(), |acc, &v| acc + v) * self.grid.dx
    }

    pub fn max(&self) -> T {
        self.u.iter().fold(T::zero(), |acc, &v| acc.max(v))
    }

    /// Periodic shift by `k` cells to the right.
    pub fn shifted(&self, k: usize) -> Self {
        let mut u = self.u.clone();
        u.rotate_right(k % self.grid.n);
        Self { u, ..self.clone() }
    }
}
