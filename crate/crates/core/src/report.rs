//! Machine-readable analysis reports and their independent re-verification.
//!
//! A report embeds the game it describes, so [`verify_report`] needs nothing
//! but the serialized JSON.

use std::time::Instant;

use serde_json::{json, Value};

use crate::certify::{
    certify_unique_ircp, certify_unique_pure_cce, classify_unique_cce, is_gue, is_matching_pennies_type,
    is_quasi_strict, is_strict_fractional_gue, CceClassification, Certification, Refutation, UniquenessCertificate,
};
use crate::error::{Error, Result};
use crate::game::{Game, JointDistribution, Profile};
use crate::io::{distribution_from_json, distribution_to_json, game_from_json, game_to_json};
use crate::polytope::{build, enumerate_pure_ne, mixed_ne_2x2, Concept, Singleton};

/// Which solution concepts to analyze; `ne` is handled separately since its
/// set is not a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub ne: bool,
    pub polytopes: Vec<Concept>,
    pub check_unique: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { ne: true, polytopes: vec![Concept::Ce, Concept::Cce, Concept::Ircp], check_unique: true }
    }
}

impl AnalysisOptions {
    /// Parses `"ne,ce,cce,ircp"`.
    pub fn parse_concepts(list: &str, check_unique: bool) -> Result<Self> {
        let mut opts = AnalysisOptions { ne: false, polytopes: Vec::new(), check_unique };
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == "ne" {
                opts.ne = true;
            } else {
                let c: Concept = name.parse()?;
                if !opts.polytopes.contains(&c) {
                    opts.polytopes.push(c);
                }
            }
        }
        Ok(opts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConceptResult {
    pub concept: Concept,
    pub outcome: Singleton,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GueFlags {
    pub profile: Profile,
    pub gue: bool,
    pub strict_fractional: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub game: Game,
    pub pure_ne: Option<Vec<(Profile, bool)>>,
    /// Equilibria of a nondegenerate 2x2 game, when applicable.
    pub ne_2x2: Option<Vec<JointDistribution>>,
    pub concepts: Vec<ConceptResult>,
    pub ircp_certification: Option<Certification>,
    pub cce_certification: Option<Certification>,
    pub classification: Option<CceClassification>,
    pub gue: Vec<GueFlags>,
    pub elapsed_ms: u128,
}

pub fn analyze(game: &Game, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let pure = enumerate_pure_ne(game);
    let ne_2x2 = if opts.ne && game.shape() == [2, 2] { mixed_ne_2x2(game).ok() } else { None };
    let mut concepts = Vec::new();
    for &c in &opts.polytopes {
        concepts.push(ConceptResult { concept: c, outcome: build(game, c).is_singleton()? });
    }
    let (mut ircp, mut cce, mut classification, mut gue) = (None, None, None, Vec::new());
    if opts.check_unique {
        ircp = Some(certify_unique_ircp(game)?);
        cce = Some(certify_unique_pure_cce(game)?);
        classification = Some(classify_unique_cce(game)?);
        for (p, _) in &pure {
            gue.push(GueFlags { profile: p.clone(), gue: is_gue(game, p)?, strict_fractional: is_strict_fractional_gue(game, p)? });
        }
    }
    Ok(AnalysisReport {
        game: game.clone(),
        pure_ne: opts.ne.then_some(pure),
        ne_2x2,
        concepts,
        ircp_certification: ircp,
        cce_certification: cce,
        classification,
        gue,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn singleton_json(s: &Singleton) -> Value {
    match s {
        Singleton::Singleton(mu) => json!({"singleton": true, "member": distribution_to_json(mu)}),
        Singleton::NotSingleton(a, b) => {
            json!({"singleton": false, "witnesses": [distribution_to_json(a), distribution_to_json(b)]})
        }
    }
}

pub fn classification_to_json(c: &CceClassification) -> Value {
    match c {
        CceClassification::UniquePure { a_star, certificate } => {
            json!({"variant": "unique_pure", "a_star": a_star.actions(), "certificate": certificate.to_json()})
        }
        CceClassification::UniqueMixed2x2 { players, subgame, ne } => json!({
            "variant": "unique_mixed_2x2",
            "players": [players.0, players.1],
            "ne": distribution_to_json(ne),
            "subgame": game_to_json(subgame),
        }),
        CceClassification::NotUnique(r) => json!({"variant": "not_unique", "refutation": r.to_json()}),
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": "analysis",
            "game": game_to_json(&self.game),
            "concepts": self.concepts.iter().map(|c| {
                let mut o = singleton_json(&c.outcome);
                o["concept"] = json!(c.concept.name());
                o
            }).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed_ms as u64,
        });
        if let Some(pure) = &self.pure_ne {
            v["pure_ne"] = pure
                .iter()
                .map(|(p, strict)| json!({"profile": p.actions(), "strict": strict}))
                .collect::<Vec<_>>()
                .into();
        }
        if let Some(ne) = &self.ne_2x2 {
            v["ne_2x2"] = ne.iter().map(distribution_to_json).collect::<Vec<_>>().into();
        }
        if let Some(c) = &self.ircp_certification {
            v["ircp_certification"] = c.to_json();
        }
        if let Some(c) = &self.cce_certification {
            v["cce_certification"] = c.to_json();
        }
        if let Some(c) = &self.classification {
            v["classification"] = classification_to_json(c);
        }
        if !self.gue.is_empty() {
            v["gue"] = self
                .gue
                .iter()
                .map(|g| json!({"profile": g.profile.actions(), "gue": g.gue, "strict_fractional": g.strict_fractional}))
                .collect::<Vec<_>>()
                .into();
        }
        v
    }
}

/// Outcome of re-checking a report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, what: &str, r: Result<bool>) {
        self.checks += 1;
        match r {
            Ok(true) => {}
            Ok(false) => self.failures.push(what.to_string()),
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }
}

fn profile_from_json(v: &Value) -> Result<Profile> {
    v.as_array()
        .ok_or_else(|| Error::Format("profile must be an array".into()))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Format("bad profile entry".into())))
        .collect::<Result<Vec<_>>>()
        .map(Profile)
}

fn check_certification(game: &Game, v: &Value) -> Result<bool> {
    if v.get("witnesses").is_some() {
        Refutation::from_json(v)?.verify(game)?;
        return Ok(true);
    }
    if let Some(mu) = v.get("unique_mixed") {
        let mu = distribution_from_json(mu)?;
        return Ok(build(game, Concept::Cce).is_singleton()? == Singleton::Singleton(mu));
    }
    UniquenessCertificate::from_json(game, v)?.verify(game)?;
    Ok(true)
}

fn check_classification(game: &Game, v: &Value) -> Result<bool> {
    match v["variant"].as_str() {
        Some("unique_pure") => {
            let cert = UniquenessCertificate::from_json(game, &v["certificate"])?;
            cert.verify(game)?;
            Ok(cert.concept == Concept::Cce && cert.a_star == profile_from_json(&v["a_star"])?)
        }
        Some("unique_mixed_2x2") => {
            let ne = distribution_from_json(&v["ne"])?;
            let sub = game_from_json(&v["subgame"])?;
            let (p, q, rebuilt) = crate::certify::induced_subgame(game, &ne)?;
            let players = (v["players"][0].as_u64(), v["players"][1].as_u64());
            Ok(players == (Some(p as u64), Some(q as u64))
                && rebuilt == sub
                && is_matching_pennies_type(&sub)
                && is_quasi_strict(game, &ne)?
                && build(game, Concept::Cce).is_singleton()? == Singleton::Singleton(ne))
        }
        Some("not_unique") => {
            Refutation::from_json(&v["refutation"])?.verify(game)?;
            Ok(true)
        }
        other => Err(Error::Format(format!("unknown classification variant {other:?}"))),
    }
}

fn check_concept(game: &Game, v: &Value) -> Result<bool> {
    let concept: Concept = v["concept"].as_str().ok_or_else(|| Error::Format("concept name missing".into()))?.parse()?;
    let spec = build(game, concept);
    if v["singleton"].as_bool() == Some(true) {
        let mu = distribution_from_json(&v["member"])?;
        Ok(spec.is_singleton()? == Singleton::Singleton(mu))
    } else {
        let w = v["witnesses"].as_array().filter(|w| w.len() == 2).ok_or_else(|| Error::Format("two witnesses expected".into()))?;
        Refutation { concept, witness_a: distribution_from_json(&w[0])?, witness_b: distribution_from_json(&w[1])?, reason: String::new() }
            .verify(game)?;
        Ok(true)
    }
}

/// Re-checks every embedded claim of an analysis report, a certification
/// output (`{"kind": "certification", "game": ..., "certification": ...}`) or
/// a dynamics report. Contest reports are re-discretized from their spec.
pub fn verify_report(v: &Value) -> Result<VerifySummary> {
    if v["kind"].as_str() == Some("contest") {
        return verify_contest(v);
    }
    let game = game_from_json(&v["game"])?;
    let mut s = VerifySummary::default();
    match v["kind"].as_str() {
        Some("analysis") => {
            if let Some(pure) = v.get("pure_ne").and_then(Value::as_array) {
                let claimed: Result<Vec<(Profile, bool)>> = pure
                    .iter()
                    .map(|p| Ok((profile_from_json(&p["profile"])?, p["strict"].as_bool().unwrap_or(false))))
                    .collect();
                s.record("pure Nash list", claimed.map(|c| c == enumerate_pure_ne(&game)));
            }
            if let Some(ne) = v.get("ne_2x2").and_then(Value::as_array) {
                let claimed: Result<Vec<JointDistribution>> = ne.iter().map(distribution_from_json).collect();
                s.record("2x2 equilibria", claimed.and_then(|c| Ok(c == mixed_ne_2x2(&game)?)));
            }
            for c in v["concepts"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
                let name = format!("{} polytope claim", c["concept"].as_str().unwrap_or("?"));
                s.record(&name, check_concept(&game, c));
            }
            for key in ["ircp_certification", "cce_certification"] {
                if let Some(c) = v.get(key) {
                    s.record(key, check_certification(&game, c));
                }
            }
            if let Some(c) = v.get("classification") {
                s.record("classification", check_classification(&game, c));
            }
            for g in v.get("gue").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
                let r = profile_from_json(&g["profile"]).and_then(|p| {
                    Ok(g["gue"].as_bool() == Some(is_gue(&game, &p)?)
                        && g["strict_fractional"].as_bool() == Some(is_strict_fractional_gue(&game, &p)?))
                });
                s.record("GUE flags", r);
            }
        }
        Some("certification") => s.record("certification", check_certification(&game, &v["certification"])),
        Some("dynamics") => {
            let r = distribution_from_json(&v["run"]["empirical"]).map(|mu| {
                let n = game.num_players();
                let ext = (0..n).map(|i| crate::dynamics::external_regret(&game, i, &mu)).max().unwrap();
                v["run"]["max_external_regret"].as_str() == Some(crate::rational::format_rational(&ext).as_str())
            });
            s.record("empirical regret", r);
        }
        other => return Err(Error::Format(format!("unknown report kind {other:?}"))),
    }
    Ok(s)
}

fn rational_list(v: &Value) -> Result<Vec<crate::Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Format("expected a list of rationals".into()))?
        .iter()
        .map(|x| crate::rational::parse_rational(x.as_str().ok_or_else(|| Error::Format("rational must be a string".into()))?))
        .collect()
}

fn verify_contest(v: &Value) -> Result<VerifySummary> {
    use crate::contest::{discretize, verify_prop3, ContestSpec};
    let spec = ContestSpec::from_json(&serde_json::to_vec(&v["spec"])?)?;
    let grids: Vec<Vec<crate::Rational>> = v["grids"]
        .as_array()
        .ok_or_else(|| Error::Format("contest report lacks grids".into()))?
        .iter()
        .map(rational_list)
        .collect::<Result<_>>()?;
    let mut s = VerifySummary::default();
    if let Some(p) = v.get("prop3") {
        let r = rational_list(&p["anchor"]).and_then(|a| verify_prop3(&spec, &a, &grids)).map(|r| p["passes"].as_bool() == Some(r.passes()));
        s.record("prop3 verdict", r);
    }
    if let Some(c) = v.get("certification") {
        let game = discretize(&spec, &grids)?;
        s.record("discretized game", game_from_json(&v["game"]).map(|g| g.payoff_rows() == game.payoff_rows()));
        s.record("certification", check_certification(&game, c));
    }
    Ok(s)
}
