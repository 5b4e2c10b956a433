use super::cone::{cone, Triangle};
use super::iso::{is_stable_iso_by_residues, stable_inverse};
use super::morphism::{stable_hom_for_each, StableMorphism};
use super::solve::{solve_stable, Constraint};
use crate::error::Result;

/// Outcome of [`is_distinguished`].
#[derive(Debug, Clone)]
pub struct DistinguishedReport {
    pub distinguished: bool,
    /// Why the triangle was rejected.
    pub failure: Option<String>,
    /// A stable isomorphism `w : cone(f).Z -> Z` making the comparison commute.
    pub fill_in: Option<StableMorphism>,
    pub cone: Option<Triangle>,
}

impl DistinguishedReport {
    fn rejected(reason: impl Into<String>, cone: Option<Triangle>) -> Self {
        DistinguishedReport { distinguished: false, failure: Some(reason.into()), fill_in: None, cone }
    }
}

/// Decides whether `t` is isomorphic to the standard cone triangle on its
/// first map, through a comparison that is the identity on `X` and `Y`.
///
/// The third component `w` of such a comparison solves a linear system. If
/// `t` is distinguished, every solution is an isomorphism; if it is not,
/// none is. So one solution decides the question.
pub fn is_distinguished(t: &Triangle) -> Result<DistinguishedReport> {
    let names = ["f·g", "g·h", "h·f^{+1}"];
    for (name, comp) in names.iter().zip(t.composites()?) {
        if !comp.is_zero() {
            return Ok(DistinguishedReport::rejected(format!("composite {name} is not stably zero"), None));
        }
    }
    let c = cone(&t.f)?;
    let ctx = *t.f.ctx();
    let w = solve_stable(&ctx, c.z(), t.z(), &[Constraint::Left(&c.g, &t.g), Constraint::Right(&t.h, &c.h)])?;
    let Some(w) = w else {
        return Ok(DistinguishedReport::rejected("no comparison map from the cone triangle", Some(c)));
    };
    if stable_inverse(&w)?.is_none() {
        return Ok(DistinguishedReport::rejected(format!("comparison map {w} is not invertible"), Some(c)));
    }
    Ok(DistinguishedReport { distinguished: true, failure: None, fill_in: Some(w), cone: Some(c) })
}

/// The same decision by enumerating every stable `w : cone(f).Z -> Z`;
/// only usable for small hom-sets.
pub fn is_distinguished_by_enumeration(t: &Triangle) -> Result<bool> {
    if t.composites()?.iter().any(|c| !c.is_zero()) {
        return Ok(false);
    }
    let c = cone(&t.f)?;
    let ctx = *t.f.ctx();
    let mut found = false;
    let mut error = None;
    stable_hom_for_each(&ctx, c.z(), t.z(), |w| {
        let fits = c.g.compose(&w).map(|v| v == t.g).and_then(|a| Ok(a && w.compose(&t.h)? == c.h));
        match fits {
            Ok(true) => found = is_stable_iso_by_residues(&w),
            Ok(false) => {}
            Err(e) => error = Some(e),
        }
        !found && error.is_none()
    })?;
    match error {
        Some(e) => Err(e),
        None => Ok(found),
    }
}
