use std::collections::BTreeMap;

use super::position::Position;
use crate::arith::Matrix;
use crate::error::{contract, OctaError, Result};
use crate::module::{Context, FpObject};
use crate::stable::{shift_by, shift_morphism, shift_object_by, StableMorphism};

/// Direction of a unit arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// `β/α -> (β+1)/α`
    Right,
    /// `β/α -> β/(α+1)`
    Up,
}

impl Step {
    pub fn target(self, p: Position) -> Position {
        match self {
            Step::Right => Position::new(p.beta + 1, p.alpha),
            Step::Up => Position::new(p.beta, p.alpha + 1),
        }
    }

    fn flipped(self) -> Step {
        match self {
            Step::Right => Step::Up,
            Step::Up => Step::Right,
        }
    }
}

/// A periodic diagram of stable objects on the strip, stored on the
/// fundamental triangle `0 <= α <= β <= n + 1`.
///
/// Positions outside the triangle are resolved by translation
/// (`X_{P+period} = X_P^{+1}`) and by the flip rule
/// `X_{(β+period)/α} = X_{α/β}^{+1}` for `0 <= β <= α`, which exchanges
/// right and up arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicDiagram {
    ctx: Context,
    n: usize,
    /// `objects[β][α]`, `α <= β`.
    objects: Vec<Vec<FpObject>>,
    /// `right[β][α]` for `β < n + 1`.
    right: Vec<Vec<StableMorphism>>,
    /// `up[β][α]` for `α < β`.
    up: Vec<Vec<StableMorphism>>,
}

impl PeriodicDiagram {
    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n + 1`, the translation length.
    pub fn period(&self) -> i64 {
        self.n as i64 + 1
    }

    /// Positions of the fundamental triangle, by column then row.
    pub fn triangle_positions(&self) -> Vec<Position> {
        let big_n = self.period();
        (0..=big_n).flat_map(|b| (0..=b).map(move |a| Position::new(b, a))).collect()
    }

    /// Unit arrows with both ends in the fundamental triangle.
    pub fn unit_arrows(&self) -> Vec<(Position, Step)> {
        let big_n = self.period();
        let mut out = Vec::new();
        for p in self.triangle_positions() {
            if p.beta < big_n {
                out.push((p, Step::Right));
            }
            if p.alpha < p.beta {
                out.push((p, Step::Up));
            }
        }
        out
    }

    /// Object at a triangle position.
    pub fn object(&self, p: Position) -> &FpObject {
        assert!(p.in_triangle(self.period()), "{} is outside the fundamental triangle", p.label(self.period()));
        &self.objects[p.beta as usize][p.alpha as usize]
    }

    /// Stored unit arrow leaving a triangle position.
    pub fn stored_arrow(&self, p: Position, step: Step) -> &StableMorphism {
        let (b, a) = (p.beta as usize, p.alpha as usize);
        match step {
            Step::Right => &self.right[b][a],
            Step::Up => &self.up[b][a],
        }
    }

    /// Reduces `p` to a triangle position, returning it with the number of
    /// shifts to apply and whether the flip exchanged the axes.
    pub(crate) fn resolve(&self, p: Position) -> Result<(Position, i64, bool)> {
        let big_n = self.period();
        if !p.in_strip(big_n) {
            return contract(format!("{} violates the strip condition", p.label(big_n)));
        }
        let t = p.alpha.div_euclid(big_n);
        let q = p.translate(-t, big_n);
        if q.beta <= big_n {
            Ok((q, t, false))
        } else {
            Ok((Position::new(q.alpha, q.beta - big_n), t + 1, true))
        }
    }

    /// Object at any strip position.
    pub fn object_at(&self, p: Position) -> Result<FpObject> {
        let (q, shifts, _) = self.resolve(p)?;
        Ok(shift_object_by(self.object(q), shifts))
    }

    /// Unit arrow leaving any strip position.
    pub fn unit_arrow(&self, p: Position, step: Step) -> Result<StableMorphism> {
        let big_n = self.period();
        let target = step.target(p);
        if !target.in_strip(big_n) {
            return contract(format!("{} -> {} leaves the strip", p.label(big_n), target.label(big_n)));
        }
        let t = p.alpha.div_euclid(big_n);
        let q = p.translate(-t, big_n);
        if q.beta < big_n || (q.beta == big_n && step == Step::Up) {
            Ok(shift_by(self.stored_arrow(q, step), t))
        } else {
            let flipped = Position::new(q.alpha, q.beta - big_n);
            Ok(shift_by(self.stored_arrow(flipped, step.flipped()), t + 1))
        }
    }

    /// Composite arrow `P -> Q` for `P <= Q` in the strip order.
    pub fn arrow(&self, from: Position, to: Position) -> Result<StableMorphism> {
        let big_n = self.period();
        if !from.in_strip(big_n) || !to.in_strip(big_n) || from.beta > to.beta || from.alpha > to.alpha {
            return contract(format!("no arrow {} -> {}", from.label(big_n), to.label(big_n)));
        }
        let mut cur = from;
        let mut acc = StableMorphism::identity(&self.ctx, &self.object_at(from)?);
        while cur != to {
            let step = if cur.beta < to.beta && cur.beta < cur.alpha + big_n { Step::Right } else { Step::Up };
            acc = acc.compose(&self.unit_arrow(cur, step)?)?;
            cur = step.target(cur);
        }
        Ok(acc)
    }

    /// Replaces one stored arrow, revalidating the structure.
    pub fn with_arrow(&self, p: Position, step: Step, f: StableMorphism) -> Result<PeriodicDiagram> {
        let mut d = self.clone();
        let (b, a) = (p.beta as usize, p.alpha as usize);
        match step {
            Step::Right => d.right[b][a] = f,
            Step::Up => d.up[b][a] = f,
        }
        d.validate()?;
        Ok(d)
    }

    /// Structural invariants: zero objects on the diagonal and at `0+/0`,
    /// arrows between the stored objects, and the rightmost column equal to
    /// the shifted bottom row (objects and arrows).
    pub fn validate(&self) -> Result<()> {
        let big_n = self.period();
        let label = |p: Position| p.label(big_n);
        for p in self.triangle_positions() {
            let x = self.object(p);
            if x.m() != self.ctx.m() {
                return contract(format!("object at {} lives over the wrong ring", label(p)));
            }
            if (p.alpha == p.beta || p == Position::new(big_n, 0)) && !x.is_stably_zero() {
                return contract(format!("object at {} must be zero, found {x}", label(p)));
            }
        }
        for (p, step) in self.unit_arrows() {
            let f = self.stored_arrow(p, step);
            let q = step.target(p);
            if f.source() != self.object(p) || f.target() != self.object(q) {
                return contract(format!("arrow {} -> {} has the wrong ends", label(p), label(q)));
            }
        }
        for i in 0..=big_n {
            let col = Position::new(big_n, i);
            let base = Position::new(i, 0);
            if *self.object(col) != self.object(base).shift() {
                return contract(format!(
                    "object at {} is {} but the shift of {} at {} is {}",
                    label(col),
                    self.object(col),
                    self.object(base),
                    label(base),
                    self.object(base).shift()
                ));
            }
        }
        for i in 0..big_n {
            let col = Position::new(big_n, i);
            let base = Position::new(i, 0);
            if *self.stored_arrow(col, Step::Up) != shift_morphism(self.stored_arrow(base, Step::Right)) {
                return contract(format!(
                    "arrow {} -> {} is not the shift of {} -> {}",
                    label(col),
                    label(Step::Up.target(col)),
                    label(base),
                    label(Step::Right.target(base))
                ));
            }
        }
        Ok(())
    }
}

/// Assembles a [`PeriodicDiagram`] from objects and unit arrows given on the
/// fundamental triangle. Diagonal objects and `0+/0` default to zero,
/// missing arrows to the zero map.
#[derive(Debug, Clone)]
pub struct DiagramBuilder {
    ctx: Context,
    n: usize,
    objects: BTreeMap<Position, FpObject>,
    arrows: BTreeMap<(Position, Step), Matrix<i64>>,
}

impl DiagramBuilder {
    pub fn new(ctx: &Context, n: usize) -> Self {
        DiagramBuilder { ctx: *ctx, n, objects: BTreeMap::new(), arrows: BTreeMap::new() }
    }

    pub fn period(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn object(&mut self, p: Position, x: FpObject) -> &mut Self {
        self.objects.insert(p, x);
        self
    }

    pub fn object_exponents(&mut self, p: Position, exps: &[u32]) -> Result<&mut Self> {
        let x = FpObject::from_exponents(&self.ctx, exps)?;
        Ok(self.object(p, x))
    }

    /// Sets the unit arrow `from -> to`, which must be a right or up step.
    pub fn arrow(&mut self, from: Position, to: Position, matrix: Matrix<i64>) -> Result<&mut Self> {
        let step = if Step::Right.target(from) == to {
            Step::Right
        } else if Step::Up.target(from) == to {
            Step::Up
        } else {
            return contract(format!(
                "{} -> {} is not a unit arrow",
                from.label(self.period()),
                to.label(self.period())
            ));
        };
        self.arrows.insert((from, step), matrix);
        Ok(self)
    }

    pub fn arrow_rows(&mut self, from: Position, to: Position, rows: Vec<Vec<i64>>) -> Result<&mut Self> {
        let matrix = if rows.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
        self.arrow(from, to, matrix)
    }

    pub fn build(&self) -> Result<PeriodicDiagram> {
        let big_n = self.period();
        let ctx = self.ctx;
        let label = |p: Position| p.label(big_n);
        if self.n < 1 {
            return contract("periodic diagrams need n >= 1");
        }
        for p in self.objects.keys() {
            if !p.in_triangle(big_n) {
                return contract(format!("object given at {} outside the fundamental triangle", label(*p)));
            }
        }
        let mut objects = Vec::new();
        for b in 0..=big_n {
            let mut col = Vec::new();
            for a in 0..=b {
                let p = Position::new(b, a);
                let x = match self.objects.get(&p) {
                    Some(x) => x.clone(),
                    None if a == b || (b == big_n && a == 0) => FpObject::zero(&ctx),
                    None => return contract(format!("missing object at {}", label(p))),
                };
                col.push(x);
            }
            objects.push(col);
        }
        let mut used = 0;
        let mut morphism = |p: Position, step: Step| -> Result<StableMorphism> {
            let q = step.target(p);
            let (s, t) = (&objects[p.beta as usize][p.alpha as usize], &objects[q.beta as usize][q.alpha as usize]);
            match self.arrows.get(&(p, step)) {
                None => Ok(StableMorphism::zero(&ctx, s, t)),
                Some(m) => {
                    used += 1;
                    let m = if m.rows() == 0 && s.is_empty() { Matrix::zeros(0, t.len()) } else { m.clone() };
                    StableMorphism::from_matrix(&ctx, s, t, m)
                        .map_err(|e| OctaError::Contract(format!("arrow {} -> {}: {e}", label(p), label(q))))
                }
            }
        };
        let mut right = Vec::new();
        let mut up = Vec::new();
        for b in 0..=big_n {
            let mut r_col = Vec::new();
            let mut u_col = Vec::new();
            for a in 0..=b {
                let p = Position::new(b, a);
                if b < big_n {
                    r_col.push(morphism(p, Step::Right)?);
                }
                if a < b {
                    u_col.push(morphism(p, Step::Up)?);
                }
            }
            right.push(r_col);
            up.push(u_col);
        }
        if used != self.arrows.len() {
            let stray = self
                .arrows
                .keys()
                .find(|(p, step)| !(p.in_triangle(big_n) && step.target(*p).in_triangle(big_n)))
                .expect("an unused arrow lies outside the triangle");
            return contract(format!(
                "arrow {} -> {} is outside the fundamental triangle",
                label(stray.0),
                label(stray.1.target(stray.0))
            ));
        }
        let d = PeriodicDiagram { ctx, n: self.n, objects, right, up };
        d.validate()?;
        Ok(d)
    }
}
