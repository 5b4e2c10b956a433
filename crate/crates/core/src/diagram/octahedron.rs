use super::periodic::PeriodicDiagram;
use super::position::Position;
use super::pretriangle::{check_periodic_pretriangle, PretriangleReport};
use super::restrict::{restrict, triangle_of};
use crate::error::{contract, Result};
use crate::stable::{is_distinguished, DistinguishedReport, StableMorphism, Triangle};

/// One restricted triangle of an octahedron and its verdict.
#[derive(Debug, Clone)]
pub struct RestrictionCheck {
    pub k: usize,
    pub triangle: Triangle,
    pub report: DistinguishedReport,
}

#[derive(Debug, Clone)]
pub struct OctahedronReport {
    pub pretriangle: PretriangleReport,
    pub restrictions: Vec<RestrictionCheck>,
}

impl OctahedronReport {
    pub fn passed(&self) -> bool {
        self.pretriangle.passed() && self.restrictions.iter().all(|r| r.report.distinguished)
    }
}

/// A periodic 3-pretriangle all four of whose restrictions are distinguished.
pub fn check_verdier_octahedron(d: &PeriodicDiagram) -> Result<OctahedronReport> {
    if d.n() != 3 {
        return contract(format!("octahedra have n = 3, got n = {}", d.n()));
    }
    let pretriangle = check_periodic_pretriangle(d)?;
    let mut restrictions = Vec::new();
    for k in 0..=3 {
        let triangle = triangle_of(&restrict(d, k)?)?;
        let report = is_distinguished(&triangle)?;
        restrictions.push(RestrictionCheck { k, triangle, report });
    }
    Ok(OctahedronReport { pretriangle, restrictions })
}

pub fn is_verdier_octahedron(d: &PeriodicDiagram) -> Result<bool> {
    Ok(check_verdier_octahedron(d)?.passed())
}

/// The two further triangles attached to an octahedron:
///
/// `X_{2/0} -> X_{2/1} ⊕ X_{3/0} -> X_{3/1} -> X_{4/2}` and
/// `X_{2/0} -> X_{3/1} -> X_{3/2} ⊕ X_{4/1} -> X_{4/2}`,
///
/// with a minus sign on the second component of the split map in each.
pub fn bbd_extra_triangles(d: &PeriodicDiagram) -> Result<(Triangle, Triangle)> {
    if d.n() != 3 {
        return contract(format!("octahedra have n = 3, got n = {}", d.n()));
    }
    let p = Position::new;
    let a = |from: Position, to: Position| d.arrow(from, to);

    let first = Triangle::new(
        StableMorphism::pair(&a(p(2, 0), p(2, 1))?, &a(p(2, 0), p(3, 0))?.neg())?,
        StableMorphism::copair(&a(p(2, 1), p(3, 1))?, &a(p(3, 0), p(3, 1))?)?,
        a(p(3, 1), p(4, 2))?,
    )?;
    let second = Triangle::new(
        a(p(2, 0), p(3, 1))?,
        StableMorphism::pair(&a(p(3, 1), p(3, 2))?, &a(p(3, 1), p(4, 1))?.neg())?,
        StableMorphism::copair(&a(p(3, 2), p(4, 2))?, &a(p(4, 1), p(4, 2))?)?,
    )?;
    Ok((first, second))
}
