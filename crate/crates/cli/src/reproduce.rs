//! Every check on the built-in diagrams for one `(n, p)`.

use anyhow::Result;
use octa_core::diagram::{
    bbd_extra_triangles, check_diagram_iso, check_periodic_pretriangle, check_verdier_octahedron, column_comparisons,
    find_periodic_isos, restrict, standardize_column, DiagramIso, Position, SearchMode, SearchOptions, SearchStatus,
};
use octa_core::gallery::{gen_x, gen_xtilde, gen_y, restriction_witness_iso};
use octa_core::stable::{is_distinguished, StableMorphism, Triangle};
use serde_json::{json, Value};

use crate::report::{distinguished_json, iso_json, pretriangle_json, Report, Status};

pub fn run(n: usize, p: i64, budget: Option<u64>, parallel: bool) -> Result<Report> {
    let x = gen_x(n, p)?;
    let xt = gen_xtilde(n, p)?;
    let period = x.period();
    let options = |mode| SearchOptions::new(mode).budget(budget).parallel(parallel);
    let mut report = Report::new("reproduce");

    report.run("y-box-standardization", || {
        let y = gen_y(n, p)?;
        if let Err(e) = y.check_box() {
            return Ok((Status::Fail, json!({ "box": e.to_string() })));
        }
        let standardized = standardize_column(&y)?;
        let unchanged = standardized == y.stable_image()?;
        let pre = check_periodic_pretriangle(&standardized)?;
        let comparisons: Vec<_> =
            column_comparisons(&y)?.iter().map(|t| StableMorphism::new(t).matrix().to_rows()).collect();
        let payload = json!({
            "box": "ok",
            "standardization_unchanged": unchanged,
            "column_comparisons": comparisons,
            "pretriangle": pretriangle_json(&pre, standardized.period()),
        });
        Ok((Status::from_bool(unchanged && pre.passed()), payload))
    })?;

    for (name, d) in [("pretriangle-X", &x), ("pretriangle-Xtilde", &xt)] {
        report.run(name, || {
            let r = check_periodic_pretriangle(d)?;
            Ok((Status::from_bool(r.passed()), pretriangle_json(&r, period)))
        })?;
    }

    report.run("restrictions-isomorphic", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for k in 0..=n {
            let (rx, rxt) = (restrict(&x, k)?, restrict(&xt, k)?);
            let witness = restriction_witness_iso(k, n, p)?;
            let failure = check_diagram_iso(&rx, &rxt, &witness)?;
            ok &= failure.is_none();
            rows.push(json!({
                "k": k,
                "verified": failure.is_none(),
                "failure": failure,
                "equal": rx == rxt,
                "witness": iso_json(&witness, &rx),
            }));
        }
        Ok((Status::from_bool(ok), json!({ "restrictions": rows })))
    })?;

    report.run("x-xtilde-not-isomorphic", || {
        let search = find_periodic_isos(&x, &xt, options(SearchMode::All))?;
        let control = find_periodic_isos(&x, &x, options(SearchMode::First))?;
        let status = if !search.isos.is_empty() || (control.isos.is_empty() && control.status == SearchStatus::Complete)
        {
            Status::Fail
        } else if search.status == SearchStatus::Inconclusive || control.status == SearchStatus::Inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let candidates: Vec<_> =
            search.candidates.iter().map(|(q, c)| json!({ "position": q.label(period), "count": c })).collect();
        let payload = json!({
            "isos_found": search.isos.len(),
            "complete": search.status == SearchStatus::Complete,
            "nodes": search.nodes,
            "candidates": candidates,
            "self_iso_found": !control.isos.is_empty(),
            "self_iso_nodes": control.nodes,
        });
        Ok((status, payload))
    })?;

    if n != 3 {
        return Ok(report);
    }

    report.run("octahedra", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (name, d) in [("X", &x), ("Xtilde", &xt)] {
            let r = check_verdier_octahedron(d)?;
            ok &= r.passed();
            let restrictions: Vec<_> = r.restrictions.iter().map(|c| distinguished_json(&c.report)).collect();
            rows.push(json!({
                "diagram": name,
                "pretriangle": pretriangle_json(&r.pretriangle, period),
                "restrictions": restrictions,
            }));
        }
        Ok((Status::from_bool(ok), Value::Array(rows)))
    })?;

    report.run("octahedra-not-isomorphic", || {
        let self_iso = find_periodic_isos(&x, &x, options(SearchMode::First))?;
        let cross = find_periodic_isos(&x, &xt, options(SearchMode::First))?;
        if self_iso.status == SearchStatus::Inconclusive || cross.status == SearchStatus::Inconclusive {
            return Ok((Status::Inconclusive, json!({ "nodes": self_iso.nodes + cross.nodes })));
        }
        let congruence = self_iso.isos.first().map(|iso| bottom_row_congruence(iso, p));
        let holds = matches!(congruence, Some(Ok(_)));
        let payload = json!({
            "self_witness": self_iso.isos.first().map(|i| iso_json(i, &x)),
            "bottom_row_units": congruence.as_ref().map(|c| match c {
                Ok(u) | Err(u) => json!(u),
            }),
            "bottom_row_congruent_mod_p2": holds,
            "cross_isos_found": cross.isos.len(),
        });
        Ok((Status::from_bool(holds && cross.isos.is_empty()), payload))
    })?;

    report.run("extra-triangles", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (name, d) in [("X", &x), ("Xtilde", &xt)] {
            let (t1, t2) = bbd_extra_triangles(d)?;
            let r1 = is_distinguished(&t1)?;
            let r2 = is_distinguished(&t2)?;
            ok &= r1.distinguished && r2.distinguished;
            // The rotated triangle needs a sign on its last map.
            let t1_signed = Triangle::new(t1.f.clone(), t1.g.clone(), t1.h.neg())?;
            let signed = is_distinguished(&t1_signed)?;
            rows.push(json!({
                "diagram": name,
                "first": distinguished_json(&r1),
                "second": distinguished_json(&r2),
                "first_with_negated_third_map": signed.distinguished,
            }));
        }
        Ok((Status::from_bool(ok), Value::Array(rows)))
    })?;

    Ok(report)
}

/// Scalars of a self-isomorphism at `1/0, 2/0, 3/0`: `Ok` when they agree
/// mod `p^2`, `Err` otherwise.
fn bottom_row_congruence(iso: &DiagramIso, p: i64) -> std::result::Result<Vec<i64>, Vec<i64>> {
    let units: Vec<i64> =
        (1..=3).map(|j| iso.component(Position::new(j, 0)).map_or(0, |f: &StableMorphism| f.entry(0, 0))).collect();
    let q = p * p;
    if units.iter().all(|u| (u - units[0]).rem_euclid(q) == 0) {
        Ok(units)
    } else {
        Err(units)
    }
}
