use crate::error::{contract, OctaError, Result};

/// A position `β/α` of the periodic strip, with `α <= β <= α + n + 1`.
///
/// Coordinates are absolute integers; the translation adds `n + 1` to both.
/// The fundamental triangle is `0 <= α <= β <= n + 1`, where `β = n + 1` is
/// written `0+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub beta: i64,
    pub alpha: i64,
}

impl Position {
    pub const fn new(beta: i64, alpha: i64) -> Self {
        Position { beta, alpha }
    }

    pub fn in_strip(&self, period: i64) -> bool {
        self.alpha <= self.beta && self.beta <= self.alpha + period
    }

    pub fn in_triangle(&self, period: i64) -> bool {
        0 <= self.alpha && self.alpha <= self.beta && self.beta <= period
    }

    /// Translate `k` periods.
    pub fn translate(&self, k: i64, period: i64) -> Self {
        Position { beta: self.beta + k * period, alpha: self.alpha + k * period }
    }

    /// Label such as `2/1`, `0+/1` or `1+2/3` for period `period`.
    pub fn label(&self, period: i64) -> String {
        format!("{}/{}", coordinate_label(self.beta, period), coordinate_label(self.alpha, period))
    }

    /// Parses a label produced by [`Position::label`].
    pub fn parse(label: &str, period: i64) -> Result<Self> {
        let (b, a) = label.split_once('/').ok_or_else(|| bad_label(label))?;
        Ok(Position { beta: parse_coordinate(b, period, label)?, alpha: parse_coordinate(a, period, label)? })
    }
}

fn coordinate_label(v: i64, period: i64) -> String {
    let t = v.div_euclid(period);
    let r = v.rem_euclid(period);
    match t {
        0 => format!("{r}"),
        1 => format!("{r}+"),
        _ => format!("{r}+{t}"),
    }
}

fn bad_label(label: &str) -> OctaError {
    OctaError::Contract(format!("malformed position label {label:?}"))
}

fn parse_coordinate(s: &str, period: i64, label: &str) -> Result<i64> {
    let s = s.trim();
    let (r, t) = match s.split_once('+') {
        None => (s, 0),
        Some((r, "")) => (r, 1),
        Some((r, t)) => (r, t.parse::<i64>().map_err(|_| bad_label(label))?),
    };
    let r: i64 = r.parse().map_err(|_| bad_label(label))?;
    if !(0..period).contains(&r) && t != 0 {
        return contract(format!("position label {label:?} has residue outside [0, {period})"));
    }
    Ok(r + t * period)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let period = 4;
        for (pos, label) in [
            (Position::new(2, 1), "2/1"),
            (Position::new(4, 1), "0+/1"),
            (Position::new(5, 2), "1+/2"),
            (Position::new(9, 8), "1+2/0+2"),
            (Position::new(4, 4), "0+/0+"),
        ] {
            assert_eq!(pos.label(period), label);
            assert_eq!(Position::parse(label, period).unwrap(), pos);
        }
        assert!(Position::parse("2-1", period).is_err());
        assert!(Position::parse("x/1", period).is_err());
    }

    #[test]
    fn strip_and_triangle() {
        assert!(Position::new(4, 0).in_triangle(4));
        assert!(!Position::new(5, 1).in_triangle(4));
        assert!(Position::new(5, 1).in_strip(4));
        assert!(!Position::new(6, 1).in_strip(4));
    }
}
