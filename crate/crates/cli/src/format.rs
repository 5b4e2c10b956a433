//! The JSON diagram file: header `p`, `m`, `n`, objects by position and
//! unit arrows keyed `"P->Q"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context as _, Result};
use octa_core::diagram::{DiagramBuilder, PeriodicDiagram, Position};
use octa_core::module::Context;
use octa_core::Matrix;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    p: i64,
    m: u32,
    n: usize,
    objects: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<i64>>>,
}

/// Parses a diagram file. Matrix entries are reduced to canonical residues;
/// missing arrows are zero, missing objects only allowed where the diagram
/// is forced to vanish.
pub fn parse_diagram(text: &str) -> Result<PeriodicDiagram> {
    let raw: RawDiagram = serde_json::from_str(text).context("malformed diagram file")?;
    let ctx = Context::new(raw.p, raw.m).map_err(|e| anyhow!("header: {e}"))?;
    let mut builder = DiagramBuilder::new(&ctx, raw.n);
    let period = builder.period();

    let mut sizes = BTreeMap::new();
    for (label, exps) in &raw.objects {
        let pos = Position::parse(label, period).map_err(|e| anyhow!("objects: {e}"))?;
        builder.object_exponents(pos, exps).map_err(|e| anyhow!("object {label}: {e}"))?;
        sizes.insert(pos, exps.iter().filter(|&&e| e > 0).count());
    }
    for (key, rows) in &raw.maps {
        let (from, to) = key.split_once("->").ok_or_else(|| anyhow!("map key {key:?} is not of the form P->Q"))?;
        let from = Position::parse(from.trim(), period).map_err(|e| anyhow!("map {key}: {e}"))?;
        let to = Position::parse(to.trim(), period).map_err(|e| anyhow!("map {key}: {e}"))?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            bail!("map {key}: rows of different lengths");
        }
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, sizes.get(&to).copied().unwrap_or(0))
        } else {
            Matrix::from_rows(rows.clone())
        };
        builder.arrow(from, to, matrix).map_err(|e| anyhow!("map {key}: {e}"))?;
    }
    builder.build().map_err(|e| anyhow!("{e}"))
}

pub fn load_diagram(path: &std::path::Path) -> Result<PeriodicDiagram> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_diagram(&text).with_context(|| format!("loading {}", path.display()))
}

/// Canonical text of a diagram: sorted keys, one entry per line, canonical
/// residues. Forced-zero objects and arrows touching a zero object are left
/// out; everything else is written, zero maps included.
pub fn emit_diagram(d: &PeriodicDiagram) -> String {
    let period = d.period();
    let mut objects = BTreeMap::new();
    for pos in d.triangle_positions() {
        if pos.alpha == pos.beta || (pos.beta == period && pos.alpha == 0) {
            continue;
        }
        objects.insert(pos.label(period), d.object(pos).exponents().to_vec());
    }
    let mut maps = BTreeMap::new();
    for (pos, step) in d.unit_arrows() {
        let to = step.target(pos);
        let f = d.stored_arrow(pos, step);
        if f.source().is_empty() || f.target().is_empty() {
            continue;
        }
        maps.insert(format!("{}->{}", pos.label(period), to.label(period)), f.matrix().to_rows());
    }

    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"m\": {},", d.ctx().m());
    out.push_str("  \"maps\": {");
    write_entries(&mut out, maps.iter().map(|(k, v)| (k, to_json(v))));
    out.push_str("},\n");
    let _ = writeln!(out, "  \"n\": {},", d.n());
    out.push_str("  \"objects\": {");
    write_entries(&mut out, objects.iter().map(|(k, v)| (k, to_json(v))));
    out.push_str("},\n");
    let _ = writeln!(out, "  \"p\": {}", d.ctx().p());
    out.push_str("}\n");
    out
}

fn write_entries<'a>(out: &mut String, entries: impl Iterator<Item = (&'a String, String)>) {
    let mut first = true;
    for (k, v) in entries {
        out.push_str(if first { "\n" } else { ",\n" });
        first = false;
        let _ = write!(out, "    {}: {v}", serde_json::to_string(k).expect("string keys serialize"));
    }
    if !first {
        out.push_str("\n  ");
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use octa_core::gallery::{gallery_diagram, GalleryKey};

    #[test]
    fn gallery_round_trip_is_byte_identical() {
        for key in GalleryKey::ALL {
            let d = gallery_diagram(key, 3, 2).unwrap();
            let text = emit_diagram(&d);
            let back = parse_diagram(&text).unwrap();
            assert_eq!(back, d, "{key}");
            assert_eq!(emit_diagram(&back), text, "{key}");
        }
    }

    #[test]
    fn output_is_valid_sorted_json() {
        let text = emit_diagram(&gallery_diagram(GalleryKey::OctX, 3, 3).unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["m", "maps", "n", "objects", "p"]);
    }

    #[test]
    fn negative_entries_are_reduced() {
        let text = r#"{"p": 2, "m": 4, "n": 2,
            "objects": {"1/0": [2], "2/0": [2], "2/1": [2], "3/1": [2], "3/2": [2]},
            "maps": {"1/0->2/0": [[-1]], "0+/1->0+/2": [[-5]]}}"#;
        let d = parse_diagram(text).unwrap();
        let f = d.stored_arrow(Position::new(1, 0), octa_core::diagram::Step::Right);
        assert_eq!(f.entry(0, 0), 3);
    }

    #[test]
    fn loader_names_the_bad_position() {
        let text = r#"{"p": 2, "m": 4, "n": 2, "objects": {"1/0": [2], "2/0": [5]}, "maps": {}}"#;
        let err = format!("{:#}", parse_diagram(text).unwrap_err());
        assert!(err.contains("2/0"), "{err}");
        let text = r#"{"p": 2, "m": 4, "n": 2, "objects": {"1/0": [2]}, "maps": {}}"#;
        let err = format!("{:#}", parse_diagram(text).unwrap_err());
        assert!(err.contains("missing object"), "{err}");
        let text = r#"{"p": 4, "m": 4, "n": 2, "objects": {}, "maps": {}}"#;
        assert!(parse_diagram(text).is_err());
    }
}
