//! Boundary constants imported from the unperturbed collar computation.
//!
//! The subterms of the boundary term Φ that depend on q₋₂(D⁻¹) or on the
//! metric derivative h'(0) are cited values, never rederived: they load
//! from a flat key/value text file, one constant per line,
//! `name = rational * pi^a * hp0^b * omega3^c`.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::sym::{ScalarPoly, Symbol, Q};

/// Bundled default fixture file.
pub const DEFAULT_FIXTURES: &str = include_str!("../fixtures/boundary.fixtures");

#[derive(Debug, Clone)]
pub struct FixtureSet {
    entries: BTreeMap<String, ScalarPoly>,
}

impl FixtureSet {
    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.splitn(2, '=');
            let name = parts.next().unwrap_or("").trim();
            let rhs = parts.next().ok_or(CoreError::FixtureParse {
                line: lineno + 1,
                msg: "expected `name = value`".into(),
            })?;
            if name.is_empty() {
                return Err(CoreError::FixtureParse {
                    line: lineno + 1,
                    msg: "empty fixture name".into(),
                });
            }
            let value = parse_value(rhs, lineno + 1)?;
            entries.insert(name.to_string(), value);
        }
        Ok(FixtureSet { entries })
    }

    pub fn bundled() -> Self {
        FixtureSet::parse(DEFAULT_FIXTURES).expect("bundled fixture file parses")
    }

    pub fn get(&self, name: &str) -> Result<&ScalarPoly, CoreError> {
        self.entries
            .get(name)
            .ok_or_else(|| CoreError::MissingFixture(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }
}

fn parse_value(rhs: &str, line: usize) -> Result<ScalarPoly, CoreError> {
    let mut acc = ScalarPoly::one();
    let mut saw_factor = false;
    for token in rhs.split('*').map(str::trim).filter(|t| !t.is_empty()) {
        saw_factor = true;
        if token
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+')
        {
            let r = parse_rational(token).ok_or_else(|| CoreError::FixtureParse {
                line,
                msg: format!("bad rational `{token}`"),
            })?;
            acc = acc.scale(&r);
            continue;
        }
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let exp: i32 = e.trim().parse().map_err(|_| CoreError::FixtureParse {
                    line,
                    msg: format!("bad exponent `{e}`"),
                })?;
                (b.trim(), exp)
            }
            None => (token, 1),
        };
        let sym = match base {
            "pi" => Symbol::Pi,
            "hp0" => Symbol::HPrime0,
            "omega3" => Symbol::Omega3,
            other => {
                return Err(CoreError::FixtureParse {
                    line,
                    msg: format!("unknown factor `{other}`"),
                })
            }
        };
        acc = &acc * &ScalarPoly::var_pow(sym, exp);
    }
    if !saw_factor {
        return Err(CoreError::FixtureParse {
            line,
            msg: "empty value".into(),
        });
    }
    Ok(acc)
}

fn parse_rational(token: &str) -> Option<Q> {
    let mut it = token.splitn(2, '/');
    let num: i64 = it.next()?.trim().parse().ok()?;
    let den: i64 = match it.next() {
        Some(d) => d.trim().parse().ok()?,
        None => 1,
    };
    if den == 0 {
        return None;
    }
    Some(crate::sym::q(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{q, vars};

    #[test]
    fn bundled_fixtures_parse_to_expected_values() {
        let f = FixtureSet::bundled();
        let unit = ScalarPoly::pi_pow(1) * vars::hp0() * vars::omega3();
        assert_eq!(f.get("term_a_ii").unwrap(), &unit.scale(&q(-3, 8)));
        assert_eq!(f.get("term_a_iii").unwrap(), &unit.scale(&q(3, 8)));
        assert_eq!(f.get("term_b_pure").unwrap(), &unit.scale(&q(9, 8)));
        assert_eq!(f.get("term_c_pure").unwrap(), &unit.scale(&q(-9, 8)));
        assert_eq!(f.get("term_b_fg").unwrap(), &unit.scale(&q(9, 8)));
        assert_eq!(f.get("term_c_fg").unwrap(), &unit.scale(&q(-9, 8)));
    }

    #[test]
    fn missing_fixture_is_an_error() {
        let f = FixtureSet::bundled();
        assert!(matches!(
            f.get("term_xyz"),
            Err(CoreError::MissingFixture(_))
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "term_a = 3/8 * zeta";
        match FixtureSet::parse(bad) {
            Err(CoreError::FixtureParse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
