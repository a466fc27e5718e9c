use crate::error::{Error, Result};

/// Uniform mesh of the rectangle `[x_l, x_r] × [y_l, y_r]` with `nx × ny`
/// intervals. Only the `(nx − 1) × (ny − 1)` interior nodes carry unknowns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x_l: f64,
    pub x_r: f64,
    pub y_l: f64,
    pub y_r: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(bounds: [f64; 4], nx: usize, ny: usize) -> Result<Self> {
        let [x_l, x_r, y_l, y_r] = bounds;
        if !bounds.iter().all(|b| b.is_finite()) {
            return Err(Error::InvalidParameter("grid bounds must be finite".into()));
        }
        if !(x_r > x_l && y_r > y_l) {
            return Err(Error::InvalidParameter(
                "grid bounds must satisfy x_R > x_L and y_R > y_L".into(),
            ));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidParameter(
                "grid needs at least 2 intervals per direction".into(),
            ));
        }
        Ok(GridSpec {
            x_l,
            x_r,
            y_l,
            y_r,
            nx,
            ny,
        })
    }

    /// Square mesh with `n` intervals per direction.
    pub fn square(bounds: [f64; 4], n: usize) -> Result<Self> {
        Self::new(bounds, n, n)
    }

    pub fn hx(&self) -> f64 {
        (self.x_r - self.x_l) / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_r - self.y_l) / self.ny as f64
    }

    /// x-coordinate of node `i`, `0 ≤ i ≤ nx`.
    pub fn x(&self, i: usize) -> f64 {
        self.x_l + i as f64 * self.hx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_l + j as f64 * self.hy()
    }

    pub fn interior_shape(&self) -> (usize, usize) {
        (self.nx - 1, self.ny - 1)
    }

    pub fn bounds(&self) -> [f64; 4] {
        [self.x_l, self.x_r, self.y_l, self.y_r]
    }
}

/// Uniform time mesh `t_k = k τ`, `τ = T / M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t_final: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, steps: usize) -> Result<Self> {
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParameter("final time must be positive".into()));
        }
        Ok(TimeGrid { t_final, steps })
    }

    pub fn tau(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.t_final / self.steps as f64
        }
    }

    pub fn t(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t_final
        } else {
            k as f64 * self.tau()
        }
    }

    /// Index `k` with `t_k = t`, if `t` lies on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        if self.steps == 0 {
            return (t == 0.0).then_some(0);
        }
        let k = (t / self.tau()).round();
        if k < 0.0 || k > self.steps as f64 {
            return None;
        }
        let k = k as usize;
        ((self.t(k) - t).abs() <= 1e-9 * self.t_final.max(1.0)).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_widths_and_interior() {
        let g = GridSpec::new([0.0, 1.0, -1.0, 1.0], 4, 8).unwrap();
        assert_eq!(g.hx(), 0.25);
        assert_eq!(g.hy(), 0.25);
        assert_eq!(g.interior_shape(), (3, 7));
        assert_eq!(g.x(4), 1.0);
    }

    #[test]
    fn invalid_grids() {
        assert!(GridSpec::new([1.0, 0.0, 0.0, 1.0], 4, 4).is_err());
        assert!(GridSpec::new([0.0, 1.0, 0.0, 1.0], 1, 4).is_err());
    }

    #[test]
    fn time_grid_ends_at_t() {
        let tg = TimeGrid::new(0.1, 3).unwrap();
        assert_eq!(tg.t(3), 0.1);
        assert_eq!(tg.index_of(0.1), Some(3));
        assert_eq!(tg.index_of(0.05), None);
        assert!(TimeGrid::new(0.0, 3).is_err());
    }
}
