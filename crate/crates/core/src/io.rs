//! JSON file formats for games and distributions.
//!
//! Game file:
//!
//! ```json
//! {"name": "pd", "players": 2, "actions": [["c","d"],["c","d"]],
//!  "payoffs": [["2","0","3","1"], ["2","3","0","1"]]}
//! ```
//!
//! `payoffs[i][k]` is player `i`'s payoff at the profile with lexicographic
//! index `k`. Entries are `"p/q"` strings or finite decimal strings; plain JSON
//! integers are accepted on input. Output is always canonical: lowest terms,
//! `"p/q"` (or `"p"` for integers), two-space pretty printing, trailing newline.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Serialize, Deserialize)]
struct GameFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    players: usize,
    actions: Vec<Vec<String>>,
    payoffs: Vec<Vec<Value>>,
}

pub(crate) fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Format(format!(
            "payoff {other} must be a \"p/q\" or decimal string (JSON floats are not exact)"
        ))),
    }
}

pub fn load_game(bytes: &[u8]) -> Result<Game> {
    let file: GameFile =
        serde_json::from_slice(bytes).map_err(|e| Error::Format(format!("game file: {e}")))?;
    if file.players != file.actions.len() {
        return Err(Error::Shape(format!(
            "\"players\" is {} but {} action lists were given",
            file.players,
            file.actions.len()
        )));
    }
    let payoffs = file
        .payoffs
        .iter()
        .map(|row| row.iter().map(rational_from_value).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Game::new(file.name, file.actions, payoffs)
}

pub fn save_game(game: &Game) -> Vec<u8> {
    let file = GameFile {
        name: game.name().map(str::to_string),
        players: game.num_players(),
        actions: game.action_labels().to_vec(),
        payoffs: game
            .payoff_rows()
            .iter()
            .map(|row| row.iter().map(|r| Value::String(format_rational(r))).collect())
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("game serializes");
    out.push(b'\n');
    out
}

pub fn read_game(path: impl AsRef<Path>) -> Result<Game> {
    load_game(&std::fs::read(path)?)
}

pub fn write_game(path: impl AsRef<Path>, game: &Game) -> Result<()> {
    std::fs::write(path, save_game(game))?;
    Ok(())
}

/// The game file format as a JSON value, for embedding in reports.
pub fn game_to_json(game: &Game) -> Value {
    serde_json::from_slice(&save_game(game)).expect("game file is JSON")
}

pub fn game_from_json(v: &Value) -> Result<Game> {
    load_game(&serde_json::to_vec(v)?)
}

/// `{"<profile index>": "<p/q>", ...}`
pub fn distribution_to_json(mu: &JointDistribution) -> Value {
    Value::Object(
        mu.iter()
            .map(|(k, w)| (k.to_string(), Value::String(format_rational(w))))
            .collect(),
    )
}

pub fn distribution_from_json(v: &Value) -> Result<JointDistribution> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Format("distribution must be a JSON object".into()))?;
    let entries = obj
        .iter()
        .map(|(k, w)| {
            let idx = k
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("profile key `{k}` is not an index")))?;
            Ok((idx, rational_from_value(w)?))
        })
        .collect::<Result<BTreeMap<usize, Rational>>>()?;
    JointDistribution::new(entries)
}

pub fn rationals_to_json(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(|r| Value::String(format_rational(r))).collect())
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Format("expected an array of rationals".into()))?
        .iter()
        .map(rational_from_value)
        .collect()
}

/// Serde adapter storing a rational as its canonical string.
pub(crate) mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        super::rational_from_value(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals as strings.
pub(crate) mod rational_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::Rational;

    pub fn serialize<S: Serializer>(r: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&super::rationals_to_json(r), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        super::rationals_from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const CANONICAL: &str = r#"{
  "name": "sample",
  "players": 2,
  "actions": [
    [
      "x",
      "y"
    ],
    [
      "l",
      "r"
    ]
  ],
  "payoffs": [
    [
      "3/5",
      "1",
      "-2",
      "0"
    ],
    [
      "1/4",
      "0",
      "7/3",
      "-1/2"
    ]
  ]
}
"#;

    #[test]
    fn canonical_roundtrip_is_bit_exact() {
        let g = load_game(CANONICAL.as_bytes()).unwrap();
        assert_eq!(String::from_utf8(save_game(&g)).unwrap(), CANONICAL);
    }

    #[test]
    fn decimal_payoffs_are_exact() {
        let src = r#"{"players": 2, "actions": [["a","b"],["a","b"]],
            "payoffs": [["0.25","3/5",1,"-0.5"],["0","0","0","0"]]}"#;
        let g = load_game(src.as_bytes()).unwrap();
        assert_eq!(g.payoff_at(0, 0), &rat(1, 4));
        assert_eq!(g.payoff_at(0, 1), &rat(3, 5));
        assert_eq!(g.payoff_at(0, 2), &rat(1, 1));
        assert_eq!(g.payoff_at(0, 3), &rat(-1, 2));
        // Non-canonical input normalizes on output.
        let out = String::from_utf8(save_game(&g)).unwrap();
        assert!(out.contains("\"1/4\""));
        assert!(!out.contains("\"name\""));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(load_game(b"{not json"), Err(Error::Format(_))));
        let bad_payoff = r#"{"players": 1, "actions": [["a","b"]], "payoffs": [["1/0","1"]]}"#;
        assert!(matches!(load_game(bad_payoff.as_bytes()), Err(Error::ParseRational(_))));
        let float = r#"{"players": 1, "actions": [["a","b"]], "payoffs": [[0.1, "1"]]}"#;
        assert!(matches!(load_game(float.as_bytes()), Err(Error::Format(_))));
        let shape = r#"{"players": 2, "actions": [["a","b"],["a","b"]], "payoffs": [["1","1","1"],["1","1","1","1"]]}"#;
        assert!(matches!(load_game(shape.as_bytes()), Err(Error::Shape(_))));
        let players = r#"{"players": 3, "actions": [["a","b"],["a","b"]], "payoffs": []}"#;
        assert!(matches!(load_game(players.as_bytes()), Err(Error::Shape(_))));
    }

    #[test]
    fn distribution_json_roundtrip() {
        let mu = JointDistribution::new([(0, rat(1, 3)), (5, rat(2, 3))]).unwrap();
        let v = distribution_to_json(&mu);
        assert_eq!(v.to_string(), r#"{"0":"1/3","5":"2/3"}"#);
        assert_eq!(distribution_from_json(&v).unwrap(), mu);
    }
}
