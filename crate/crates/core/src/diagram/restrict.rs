use super::periodic::{DiagramBuilder, PeriodicDiagram, Step};
use super::position::Position;
use crate::error::{contract, Result};
use crate::stable::Triangle;

/// Pulls `d` back along the periodic monotone injection that misses `k`:
/// `[0, n-1] -> [0, n] \ {k}`, extended by `a + t n -> d(a) + t (n + 1)`.
pub fn restrict(d: &PeriodicDiagram, k: usize) -> Result<PeriodicDiagram> {
    let n = d.n();
    if k > n {
        return contract(format!("cannot drop vertex {k} of a diagram with n = {n}"));
    }
    if n < 2 {
        return contract("restriction needs n >= 2");
    }
    let (small, big) = (n as i64, d.period());
    let map = |v: i64| {
        let (t, r) = (v.div_euclid(small), v.rem_euclid(small));
        let base = if r < k as i64 { r } else { r + 1 };
        base + t * big
    };
    let image = |p: Position| Position::new(map(p.beta), map(p.alpha));

    let mut builder = DiagramBuilder::new(d.ctx(), n - 1);
    for b in 0..=small {
        for a in 0..=b {
            let p = Position::new(b, a);
            builder.object(p, d.object_at(image(p))?);
        }
    }
    for b in 0..=small {
        for a in 0..=b {
            let p = Position::new(b, a);
            for step in [Step::Right, Step::Up] {
                let q = step.target(p);
                if q.in_triangle(small) {
                    let f = d.arrow(image(p), image(q))?;
                    builder.arrow(p, q, f.matrix().clone())?;
                }
            }
        }
    }
    builder.build()
}

/// Reads the triangle `X_{1/0} -> X_{2/0} -> X_{2/1} -> X_{3/1}` off a
/// diagram with `n = 2`.
pub fn triangle_of(d: &PeriodicDiagram) -> Result<Triangle> {
    if d.n() != 2 {
        return contract(format!("triangle_of needs n = 2, got {}", d.n()));
    }
    let p = Position::new;
    Triangle::new(d.arrow(p(1, 0), p(2, 0))?, d.arrow(p(2, 0), p(2, 1))?, d.arrow(p(2, 1), p(3, 1))?)
}
