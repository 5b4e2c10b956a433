//! Generators for the worked diagrams over `Z/p^{2n}`: the inflated
//! triangle `Y`, the `n`-triangle `X` and its perturbation `X̃`, and the
//! explicit isomorphisms between their restrictions.

use std::fmt;
use std::str::FromStr;

use crate::diagram::{restrict, DiagramBuilder, DiagramIso, ELevelDiagram, PeriodicDiagram, Position, Step};
use crate::error::{contract, OctaError, Result};
use crate::module::{Context, FpObject};
use crate::stable::StableMorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GalleryKey {
    Y,
    X,
    Xtilde,
    OctX,
    OctXtilde,
}

impl GalleryKey {
    pub const ALL: [GalleryKey; 5] =
        [GalleryKey::Y, GalleryKey::X, GalleryKey::Xtilde, GalleryKey::OctX, GalleryKey::OctXtilde];

    pub fn name(self) -> &'static str {
        match self {
            GalleryKey::Y => "Y",
            GalleryKey::X => "X",
            GalleryKey::Xtilde => "Xtilde",
            GalleryKey::OctX => "OctX",
            GalleryKey::OctXtilde => "OctXtilde",
        }
    }
}

impl fmt::Display for GalleryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GalleryKey {
    type Err = OctaError;

    fn from_str(s: &str) -> Result<Self> {
        GalleryKey::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| OctaError::Contract(format!("unknown gallery diagram {s:?}")))
    }
}

/// The ring `Z/p^{2n}` all gallery diagrams live over.
pub fn gallery_context(n: usize, p: i64) -> Result<Context> {
    if n < 3 {
        return contract(format!("gallery diagrams need n >= 3, got {n}"));
    }
    Context::new(p, 2 * n as u32)
}

/// The E-level diagram behind `Y` on the triangle of size `2n - 1`:
/// `Z/p^{j-i}` at `j/i`, right arrows `p` (`-p` into the rightmost column
/// above the bottom row), up arrows `1` (`-1` leaving `0+/0`).
pub fn gen_y(n: usize, p: i64) -> Result<ELevelDiagram> {
    let ctx = gallery_context(n, p)?;
    let top = 2 * n as i64;
    let mut d = ELevelDiagram::new(&ctx, 2 * n - 1, |q| {
        FpObject::cyclic(&ctx, (q.beta - q.alpha) as u32).expect("exponent at most 2n")
    })?;
    for b in 0..=top {
        for a in 0..=b {
            let q = Position::new(b, a);
            if b < top && b > a {
                let v = if b + 1 == top && a >= 1 { -p } else { p };
                d.set_arrow(q, Step::Right, vec![vec![v]])?;
            }
            if a < b {
                let v = if b == top && a == 0 { -1 } else { 1 };
                d.set_arrow(q, Step::Up, vec![vec![v]])?;
            }
        }
    }
    Ok(d)
}

fn x_builder(n: usize, p: i64) -> Result<DiagramBuilder> {
    let ctx = gallery_context(n, p)?;
    let (n_i, big_n) = (n as i64, n as i64 + 1);
    let m = 2 * n_i;
    let pw = |k: i64| p.pow(k as u32);
    let pos = Position::new;
    let mut b = DiagramBuilder::new(&ctx, n);
    for j in 1..=n_i {
        b.object_exponents(pos(j, 0), &[n as u32])?;
        b.object_exponents(pos(big_n, j), &[n as u32])?;
        for i in 1..j {
            b.object_exponents(pos(j, i), &[(j - i) as u32, (m - j + i) as u32])?;
        }
    }
    for j in 1..n_i {
        b.arrow_rows(pos(j, 0), pos(j + 1, 0), vec![vec![p]])?;
        b.arrow_rows(pos(big_n, j), pos(big_n, j + 1), vec![vec![p]])?;
    }
    for j in 2..=n_i {
        b.arrow_rows(pos(j, 0), pos(j, 1), vec![vec![1, pw(n_i - j + 1)]])?;
    }
    for j in 2..=n_i {
        for i in 1..j {
            if j < n_i {
                b.arrow_rows(pos(j, i), pos(j + 1, i), vec![vec![p, 0], vec![0, 1]])?;
            } else {
                b.arrow_rows(pos(j, i), pos(big_n, i), vec![vec![-pw(i)], vec![1]])?;
            }
            if i + 1 < j {
                b.arrow_rows(pos(j, i), pos(j, i + 1), vec![vec![1, 0], vec![0, p]])?;
            }
        }
    }
    Ok(b)
}

/// The `n`-triangle `X` over `Z/p^{2n}`.
pub fn gen_x(n: usize, p: i64) -> Result<PeriodicDiagram> {
    x_builder(n, p)?.build()
}

/// `X̃`: as `X`, except `(n-1)/1 -> n/1` is `[[p, 0], [p^{n-3}, 1]]` and
/// `n/1 -> n/2` is `[[1, 0], [-p^{n-3}, p]]`.
pub fn gen_xtilde(n: usize, p: i64) -> Result<PeriodicDiagram> {
    let mut b = x_builder(n, p)?;
    let n_i = n as i64;
    let q = p.pow(n as u32 - 3);
    let pos = Position::new;
    b.arrow_rows(pos(n_i - 1, 1), pos(n_i, 1), vec![vec![p, 0], vec![q, 1]])?;
    b.arrow_rows(pos(n_i, 1), pos(n_i, 2), vec![vec![1, 0], vec![-q, p]])?;
    b.build()
}

/// The octahedron `X` for `n = 3`.
pub fn oct_x(p: i64) -> Result<PeriodicDiagram> {
    gen_x(3, p)
}

/// The octahedron `X̃` for `n = 3`.
pub fn oct_xtilde(p: i64) -> Result<PeriodicDiagram> {
    gen_xtilde(3, p)
}

/// Periodic stable diagram for a gallery key; `Y` is given by its stable
/// image on the triangle of size `2n - 1`.
pub fn gallery_diagram(key: GalleryKey, n: usize, p: i64) -> Result<PeriodicDiagram> {
    let octahedron = |n: usize| {
        if n == 3 {
            Ok(())
        } else {
            contract(format!("{key} is defined for n = 3 only"))
        }
    };
    match key {
        GalleryKey::Y => gen_y(n, p)?.stable_image(),
        GalleryKey::X => gen_x(n, p),
        GalleryKey::Xtilde => gen_xtilde(n, p),
        GalleryKey::OctX => octahedron(n).and_then(|_| oct_x(p)),
        GalleryKey::OctXtilde => octahedron(n).and_then(|_| oct_xtilde(p)),
    }
}

/// Explicit isomorphism `restrict(X, k) -> restrict(X̃, k)`.
///
/// Identity for `k ∈ {1, n}`. For `k = 0` the component at `(n-1)/0` is
/// `[[1, 0], [p^{n-3}, 1]]`. For `2 <= k <= n-1` the component at `j/i`,
/// `1 <= i < k <= j <= n-1`, `j/i != (n-1)/1`, is `[[1, 0], [-p^{j-1-i}, 1]]`.
/// All other components are identities.
pub fn restriction_witness_iso(k: usize, n: usize, p: i64) -> Result<DiagramIso> {
    if k > n {
        return contract(format!("k = {k} exceeds n = {n}"));
    }
    let x = restrict(&gen_x(n, p)?, k)?;
    let ctx = *x.ctx();
    let mut iso = DiagramIso::identity(&x);
    let (n_i, k_i) = (n as i64, k as i64);
    let mut set = |pos: Position, rows: Vec<Vec<i64>>| -> Result<()> {
        let obj = x.object(pos);
        let f = StableMorphism::from_rows(&ctx, obj, obj, rows)?;
        iso = std::mem::replace(&mut iso, DiagramIso::new(0, Default::default())).with_component(pos, f);
        Ok(())
    };
    if k == 0 {
        set(Position::new(n_i - 1, 0), vec![vec![1, 0], vec![p.pow(n as u32 - 3), 1]])?;
    } else if k < n {
        for i in 1..k_i {
            for j in k_i..n_i {
                if (j, i) != (n_i - 1, 1) {
                    set(Position::new(j, i), vec![vec![1, 0], vec![-p.pow((j - 1 - i) as u32), 1]])?;
                }
            }
        }
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(d: &PeriodicDiagram, from: (i64, i64), to: (i64, i64)) -> Vec<Vec<i64>> {
        d.arrow(Position::new(from.0, from.1), Position::new(to.0, to.1)).unwrap().matrix().to_rows()
    }

    #[test]
    fn octahedron_x_matches_display() {
        let x = oct_x(2).unwrap();
        assert_eq!(x.object(Position::new(2, 1)).exponents(), &[1, 5]);
        assert_eq!(x.object(Position::new(3, 1)).exponents(), &[2, 4]);
        assert_eq!(rows(&x, (2, 1), (3, 1)), vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(rows(&x, (2, 0), (2, 1)), vec![vec![1, 4]]);
        assert_eq!(rows(&x, (3, 0), (3, 1)), vec![vec![1, 2]]);
        // -p reduces to p^2 - p = 2 on Z/p^2 -> Z/p^3 at p = 2
        assert_eq!(rows(&x, (3, 1), (4, 1)), vec![vec![6], vec![1]]);
    }

    #[test]
    fn octahedron_xtilde_differs_in_two_maps() {
        let (x, xt) = (oct_x(3).unwrap(), oct_xtilde(3).unwrap());
        assert_eq!(rows(&xt, (2, 1), (3, 1)), vec![vec![3, 0], vec![1, 1]]);
        assert_eq!(rows(&xt, (3, 1), (3, 2)), vec![vec![1, 0], vec![2, 3]]);
        let differing: Vec<_> =
            x.unit_arrows().into_iter().filter(|(q, s)| x.stored_arrow(*q, *s) != xt.stored_arrow(*q, *s)).collect();
        assert_eq!(differing.len(), 2);
    }

    #[test]
    fn y_corner() {
        let y = gen_y(3, 2).unwrap();
        let q = |b, a| Position::new(b, a);
        assert_eq!(y.object(q(1, 0)).exponents(), &[1]);
        assert_eq!(y.arrow(q(5, 1), Step::Right).entry(0, 0), 32 - 2);
        assert_eq!(y.arrow(q(6, 0), Step::Up).entry(0, 0), 32 - 1);
        y.check_box().unwrap();
    }

    #[test]
    fn keys_round_trip() {
        for k in GalleryKey::ALL {
            assert_eq!(k.name().parse::<GalleryKey>().unwrap(), k);
        }
        assert!("Z".parse::<GalleryKey>().is_err());
        assert!(gallery_diagram(GalleryKey::OctX, 4, 2).is_err());
    }
}
