use super::periodic::{DiagramBuilder, PeriodicDiagram, Step};
use super::position::Position;
use crate::error::{contract, OctaError, Result};
use crate::module::{
    distinguished_ses, extend_along_mono, is_pure_square, solve_right_factor, Context, EMorphism, FpObject, Level,
    Quadrangle,
};
use crate::stable::{shift_morphism, StableMorphism};

/// A diagram of modules (not stable classes) on the fundamental triangle
/// `0 <= α <= β <= n + 1`, with unit arrows right and up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ELevelDiagram {
    ctx: Context,
    n: usize,
    objects: Vec<Vec<FpObject>>,
    right: Vec<Vec<EMorphism>>,
    up: Vec<Vec<EMorphism>>,
}

impl ELevelDiagram {
    /// All arrows start out as zero maps.
    pub fn new(ctx: &Context, n: usize, mut object: impl FnMut(Position) -> FpObject) -> Result<Self> {
        if n < 1 {
            return contract("diagrams need n >= 1");
        }
        let big_n = n as i64 + 1;
        let objects: Vec<Vec<FpObject>> =
            (0..=big_n).map(|b| (0..=b).map(|a| object(Position::new(b, a))).collect()).collect();
        if objects.iter().flatten().any(|x| x.m() != ctx.m()) {
            return contract("object built for a different context");
        }
        let obj = |b: i64, a: i64| &objects[b as usize][a as usize];
        let right =
            (0..big_n).map(|b| (0..=b).map(|a| EMorphism::zero(ctx, obj(b, a), obj(b + 1, a))).collect()).collect();
        let up =
            (0..=big_n).map(|b| (0..b).map(|a| EMorphism::zero(ctx, obj(b, a), obj(b, a + 1))).collect()).collect();
        Ok(ELevelDiagram { ctx: *ctx, n, objects, right, up })
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> i64 {
        self.n as i64 + 1
    }

    pub fn object(&self, p: Position) -> &FpObject {
        assert!(p.in_triangle(self.period()), "{} is outside the fundamental triangle", p.label(self.period()));
        &self.objects[p.beta as usize][p.alpha as usize]
    }

    pub fn arrow(&self, p: Position, step: Step) -> &EMorphism {
        let (b, a) = (p.beta as usize, p.alpha as usize);
        match step {
            Step::Right => &self.right[b][a],
            Step::Up => &self.up[b][a],
        }
    }

    /// Sets the unit arrow leaving `p` in direction `step`.
    pub fn set_arrow(&mut self, p: Position, step: Step, rows: Vec<Vec<i64>>) -> Result<&mut Self> {
        let big_n = self.period();
        let q = step.target(p);
        if !p.in_triangle(big_n) || !q.in_triangle(big_n) {
            return contract(format!("{} -> {} leaves the fundamental triangle", p.label(big_n), q.label(big_n)));
        }
        let f = EMorphism::from_rows(&self.ctx, self.object(p), self.object(q), rows)
            .map_err(|e| OctaError::Contract(format!("arrow {} -> {}: {e}", p.label(big_n), q.label(big_n))))?;
        let (b, a) = (p.beta as usize, p.alpha as usize);
        match step {
            Step::Right => self.right[b][a] = f,
            Step::Up => self.up[b][a] = f,
        }
        Ok(self)
    }

    /// Composite `from -> to` inside the triangle, right steps first.
    pub fn composite(&self, from: Position, to: Position) -> Result<EMorphism> {
        let big_n = self.period();
        if !from.in_triangle(big_n) || !to.in_triangle(big_n) || from.beta > to.beta || from.alpha > to.alpha {
            return contract(format!("no arrow {} -> {}", from.label(big_n), to.label(big_n)));
        }
        let mut acc = EMorphism::identity(&self.ctx, self.object(from));
        let mut cur = from;
        while cur != to {
            let step = if cur.beta < to.beta { Step::Right } else { Step::Up };
            acc = acc.compose(self.arrow(cur, step))?;
            cur = step.target(cur);
        }
        Ok(acc)
    }

    /// Checks the box property: every unit cell is a commuting pure square,
    /// and the diagonal objects and `0+/0` are bijective.
    pub fn check_box(&self) -> Result<()> {
        let big_n = self.period();
        for a in 0..=big_n {
            let p = Position::new(a, a);
            if !self.object(p).is_bijective() {
                return contract(format!("object at {} is not bijective", p.label(big_n)));
            }
        }
        let corner = Position::new(big_n, 0);
        if !self.object(corner).is_bijective() {
            return contract(format!("object at {} is not bijective", corner.label(big_n)));
        }
        for b in 1..big_n {
            for a in 0..b {
                let p = Position::new(b, a);
                let q = Quadrangle::new(
                    self.arrow(p, Step::Right).clone(),
                    self.arrow(p, Step::Up).clone(),
                    self.arrow(Step::Right.target(p), Step::Up).clone(),
                    self.arrow(Step::Up.target(p), Step::Right).clone(),
                )?;
                let pure = is_pure_square(&q).unwrap_or(false);
                if !pure {
                    return contract(format!(
                        "square with lower left corner {} is not a commuting pure square",
                        p.label(big_n)
                    ));
                }
            }
        }
        Ok(())
    }

    /// The stable diagram with the same objects and maps, read as is.
    pub fn stable_image(&self) -> Result<PeriodicDiagram> {
        self.to_periodic(|_| Ok(None))
    }

    /// Builds the stable diagram. `column(i)` may override the object at
    /// `0+/i` and the arrow entering it from the left.
    fn to_periodic(
        &self,
        mut column: impl FnMut(i64) -> Result<Option<(FpObject, StableMorphism)>>,
    ) -> Result<PeriodicDiagram> {
        let big_n = self.period();
        let mut builder = DiagramBuilder::new(&self.ctx, self.n);
        let mut arrows = Vec::new();
        for b in 0..=big_n {
            for a in 0..=b {
                let p = Position::new(b, a);
                builder.object(p, stable_core(&self.ctx, self.object(p)));
                if b < big_n {
                    arrows.push((p, Step::Right, strip(&self.ctx, &StableMorphism::new(self.arrow(p, Step::Right)))));
                }
                if a < b {
                    arrows.push((p, Step::Up, strip(&self.ctx, &StableMorphism::new(self.arrow(p, Step::Up)))));
                }
            }
        }
        for i in 1..big_n {
            if let Some((x, into)) = column(i)? {
                let col = Position::new(big_n, i);
                builder.object(col, stable_core(&self.ctx, &x));
                let into = strip(&self.ctx, &into);
                for (p, step, f) in arrows.iter_mut() {
                    if step.target(*p) == col && *step == Step::Right {
                        *f = into.clone();
                    }
                }
            }
        }
        // The column's up arrows are forced by periodicity.
        for i in 0..big_n {
            let base = strip(&self.ctx, &StableMorphism::new(self.arrow(Position::new(i, 0), Step::Right)));
            for (p, step, f) in arrows.iter_mut() {
                if *p == Position::new(big_n, i) && *step == Step::Up {
                    *f = shift_morphism(&base);
                }
            }
        }
        for (p, step, f) in arrows {
            builder.arrow(p, step.target(p), f.matrix().clone())?;
        }
        builder.build()
    }
}

/// Drops the stably zero summands (`Z/p^0` and `Z/p^m`).
fn stable_core(ctx: &Context, x: &FpObject) -> FpObject {
    let exps: Vec<u32> = x.exponents().iter().copied().filter(|&e| e > 0 && e < ctx.m()).collect();
    FpObject::from_exponents(ctx, &exps).expect("exponents come from a valid object")
}

/// Restricts a stable map to the summands kept by [`stable_core`].
fn strip(ctx: &Context, f: &StableMorphism) -> StableMorphism {
    let keep = |x: &FpObject| -> Vec<usize> {
        x.exponents().iter().enumerate().filter(|(_, &e)| e > 0 && e < ctx.m()).map(|(i, _)| i).collect()
    };
    let (rows, cols) = (keep(f.source()), keep(f.target()));
    let entries: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| f.entry(r, c)).collect()).collect();
    let (s, t) = (stable_core(ctx, f.source()), stable_core(ctx, f.target()));
    StableMorphism::from_rows(ctx, &s, &t, entries).expect("restriction of a well-defined map")
}

/// Replaces the rightmost column of an E-level diagram in the box class by
/// the shifted bottom row.
///
/// For each `i` the column sequence
/// `X_{i/0} -(x, x)-> X_{i/i} ⊕ X_{0+/0} -(x, -x)-> X_{0+/i}` is compared
/// with the chosen sequence of `X_{i/0}`: the comparison `τ_i` satisfies
/// `(d; -e) · τ_i = β · epi` where `β` extends the chosen mono along the
/// column mono. The arrow into `0+/i` is then followed by `τ_i`. Stably
/// zero summands are dropped throughout.
pub fn standardize_column(d: &ELevelDiagram) -> Result<PeriodicDiagram> {
    d.check_box()?;
    let taus = column_comparisons(d)?;
    let big_n = d.period();
    d.to_periodic(|i| {
        let tau = &taus[i as usize - 1];
        let into = d.arrow(Position::new(big_n - 1, i), Step::Right).compose(tau)?;
        Ok(Some((tau.target().clone(), StableMorphism::new(&into))))
    })
}

/// The comparison maps `τ_i : X_{0+/i} -> X_{i/0}^{+1}` for `i = 1..=n`.
pub fn column_comparisons(d: &ELevelDiagram) -> Result<Vec<EMorphism>> {
    let big_n = d.period();
    let ctx = *d.ctx();
    let p = Position::new;
    (1..big_n)
        .map(|i| {
            let b = d.composite(p(i, 0), p(i, i))?;
            let c = d.composite(p(i, 0), p(big_n, 0))?;
            let dd = d.composite(p(i, i), p(big_n, i))?;
            let e = d.composite(p(big_n, 0), p(big_n, i))?;
            let ses = distinguished_ses(&ctx, d.object(p(i, 0)));
            let beta = extend_along_mono(&EMorphism::pair(&b, &c)?, &ses.mono)?;
            let rhs = beta.compose(&ses.epi)?;
            solve_right_factor(&EMorphism::copair(&dd, &e.neg())?, &rhs, Level::Exact)?.ok_or_else(|| {
                OctaError::Contract(format!(
                    "column sequence ending at {} is not short exact",
                    p(big_n, i).label(big_n)
                ))
            })
        })
        .collect()
}
