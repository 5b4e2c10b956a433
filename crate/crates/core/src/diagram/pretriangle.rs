use super::periodic::{PeriodicDiagram, Step};
use super::position::Position;
use super::weak::{check_weak_square, WeakSquareFailure};
use crate::error::Result;
use crate::module::Quadrangle;
use crate::stable::StableMorphism;

/// A unit cell `A = β/α`, `B = (β+1)/α`, `C = β/(α+1)`, `D = (β+1)/(α+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub corner: Position,
}

impl Cell {
    pub fn corners(&self) -> [Position; 4] {
        let Position { beta, alpha } = self.corner;
        [
            self.corner,
            Position::new(beta + 1, alpha),
            Position::new(beta, alpha + 1),
            Position::new(beta + 1, alpha + 1),
        ]
    }

    pub fn label(&self, period: i64) -> String {
        let c = self.corners();
        format!("({}, {}, {}, {})", c[0].label(period), c[1].label(period), c[2].label(period), c[3].label(period))
    }

    pub fn quadrangle(&self, d: &PeriodicDiagram) -> Result<Quadrangle<StableMorphism>> {
        let [a, b, c, _] = self.corners();
        Quadrangle::new(
            d.unit_arrow(a, Step::Right)?,
            d.unit_arrow(a, Step::Up)?,
            d.unit_arrow(b, Step::Up)?,
            d.unit_arrow(c, Step::Right)?,
        )
    }
}

/// Outcome of [`check_periodic_pretriangle`].
#[derive(Debug, Clone)]
pub struct PretriangleReport {
    pub cells_checked: usize,
    /// First failing cell and the reason.
    pub failure: Option<(Cell, String)>,
}

impl PretriangleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Unit cells whose four corners lie in the fundamental triangle, followed
/// by one cell that crosses the rightmost column.
pub fn pretriangle_cells(n: usize) -> Vec<Cell> {
    let big_n = n as i64 + 1;
    let mut cells = Vec::new();
    for alpha in 0..big_n - 1 {
        for beta in alpha + 1..big_n {
            cells.push(Cell { corner: Position::new(beta, alpha) });
        }
    }
    if big_n >= 3 {
        cells.push(Cell { corner: Position::new(big_n, 1) });
    }
    cells
}

/// Checks that every cell commutes and is a weak square. Structural
/// invariants are guaranteed by construction of the diagram.
pub fn check_periodic_pretriangle(d: &PeriodicDiagram) -> Result<PretriangleReport> {
    let cells = pretriangle_cells(d.n());
    let period = d.period();
    for cell in &cells {
        let q = cell.quadrangle(d)?;
        if q.b.compose(&q.d)? != q.c.compose(&q.e)? {
            return Ok(PretriangleReport {
                cells_checked: cells.len(),
                failure: Some((*cell, format!("cell {} does not commute", cell.label(period)))),
            });
        }
    }
    for cell in &cells {
        let q = cell.quadrangle(d)?;
        if let Some(why) = check_weak_square(&q)? {
            let reason = match why {
                WeakSquareFailure::NotCommutative => "does not commute".to_string(),
                WeakSquareFailure::WeakKernel { t } => {
                    format!("is not a weak pullback against Z/p^{t}")
                }
                WeakSquareFailure::WeakCokernel { t } => {
                    format!("is not a weak pushout against Z/p^{t}")
                }
            };
            return Ok(PretriangleReport {
                cells_checked: cells.len(),
                failure: Some((*cell, format!("cell {} {reason}", cell.label(period)))),
            });
        }
    }
    Ok(PretriangleReport { cells_checked: cells.len(), failure: None })
}

pub fn is_periodic_pretriangle(d: &PeriodicDiagram) -> Result<bool> {
    Ok(check_periodic_pretriangle(d)?.passed())
}
