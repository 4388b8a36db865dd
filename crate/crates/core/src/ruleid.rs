//! Stable string identifiers for every voting rule the crate exposes,
//! plus one dispatch point that routes an election to the right tally.

use std::fmt;
use std::str::FromStr;

use crate::alliance::{self, BaseRule};
use crate::election::{AllianceStructure, Election};
use crate::error::{Error, Result};
use crate::experiment::{self, PrimaryMode};
use crate::laminar;
use crate::rules::{self, TallyResult};

#[derive(Debug, Clone, PartialEq)]
pub enum RuleId {
    Plurality,
    Borda,
    Scoring(Vec<f64>),
    Copeland,
    Maximin,
    Stv,
    Schulze,
    Iw(BaseRule),
    Sw(BaseRule),
    LaminarIw(BaseRule),
    LaminarSw(BaseRule),
    WithPrimaries { base: Box<RuleId>, mode: PrimaryMode },
}

impl RuleId {
    /// All identifiers without parameters, for help texts and sweeps.
    pub fn fixed_ids() -> Vec<RuleId> {
        use BaseRule::*;
        let mut ids = vec![
            RuleId::Plurality,
            RuleId::Borda,
            RuleId::Copeland,
            RuleId::Maximin,
            RuleId::Stv,
            RuleId::Schulze,
        ];
        for b in [Plurality, Maximin, Schulze] {
            ids.push(RuleId::Iw(b));
            ids.push(RuleId::Sw(b));
        }
        for b in [Plurality, Maximin] {
            ids.push(RuleId::LaminarIw(b));
            ids.push(RuleId::LaminarSw(b));
        }
        ids
    }

    /// True for rules that read the alliance structure.
    pub fn is_alliance_aware(&self) -> bool {
        matches!(
            self,
            RuleId::Iw(_) | RuleId::Sw(_) | RuleId::LaminarIw(_) | RuleId::LaminarSw(_)
        )
    }

    pub fn tally(&self, e: &Election) -> Result<TallyResult> {
        match self {
            RuleId::Plurality => rules::plurality(e),
            RuleId::Borda => rules::borda(e),
            RuleId::Scoring(v) => rules::positional(e, v),
            RuleId::Copeland => rules::copeland(e),
            RuleId::Maximin => rules::maximin(e),
            RuleId::Stv => rules::stv(e),
            RuleId::Schulze => rules::schulze(e),
            RuleId::Iw(b) => match e.alliances() {
                AllianceStructure::Partition(_) => alliance::iw_winner(e, *b),
                AllianceStructure::Laminar(_) => laminar::laminar_iw_winner(e, *b),
            },
            RuleId::Sw(b) => match e.alliances() {
                AllianceStructure::Partition(_) => alliance::sw_winner(e, *b),
                AllianceStructure::Laminar(_) => laminar::laminar_sw_winner(e, *b),
            },
            RuleId::LaminarIw(b) => laminar::laminar_iw_winner(&as_laminar(e)?, *b),
            RuleId::LaminarSw(b) => laminar::laminar_sw_winner(&as_laminar(e)?, *b),
            RuleId::WithPrimaries { base, mode } => {
                experiment::tally_with_primaries(e, base, *mode)
            }
        }
    }

    pub fn winner(&self, e: &Election) -> Result<usize> {
        Ok(self.tally(e)?.winner)
    }
}

fn as_laminar(e: &Election) -> Result<Election> {
    match e.alliances() {
        AllianceStructure::Laminar(_) => Ok(e.clone()),
        AllianceStructure::Partition(_) => e.closed_laminar(),
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Plurality => write!(f, "plurality"),
            RuleId::Borda => write!(f, "borda"),
            RuleId::Scoring(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "scoring:{}", parts.join(","))
            }
            RuleId::Copeland => write!(f, "copeland"),
            RuleId::Maximin => write!(f, "maximin"),
            RuleId::Stv => write!(f, "stv"),
            RuleId::Schulze => write!(f, "schulze"),
            RuleId::Iw(b) => write!(f, "iw-{b}"),
            RuleId::Sw(b) => write!(f, "sw-{b}"),
            RuleId::LaminarIw(b) => write!(f, "laminar-iw-{b}"),
            RuleId::LaminarSw(b) => write!(f, "laminar-sw-{b}"),
            RuleId::WithPrimaries { base, mode } => write!(f, "{base}+primaries:{mode}"),
        }
    }
}

fn parse_base(s: &str) -> Result<BaseRule> {
    match s {
        "plurality" => Ok(BaseRule::Plurality),
        "maximin" => Ok(BaseRule::Maximin),
        "schulze" => Ok(BaseRule::Schulze),
        _ => Err(Error::UnknownRule(s.to_string())),
    }
}

fn parse_laminar_base(s: &str) -> Result<BaseRule> {
    match parse_base(s)? {
        BaseRule::Schulze => Err(Error::UnknownRule(
            "laminar variants are defined for plurality and maximin only".into(),
        )),
        b => Ok(b),
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        if let Some((rule, primaries)) = s.split_once('+') {
            let mode = primaries
                .strip_prefix("primaries:")
                .ok_or_else(|| Error::UnknownRule(s.to_string()))?
                .parse::<PrimaryMode>()?;
            let base: RuleId = rule.parse()?;
            if base.is_alliance_aware() || matches!(base, RuleId::WithPrimaries { .. }) {
                return Err(Error::UnknownRule(format!(
                    "{s}: primaries compose with standard rules only"
                )));
            }
            return Ok(RuleId::WithPrimaries { base: Box::new(base), mode });
        }
        if let Some(vector) = s.strip_prefix("scoring:") {
            let v: std::result::Result<Vec<f64>, _> =
                vector.split(',').map(|x| x.trim().parse::<f64>()).collect();
            return match v {
                Ok(v) if !v.is_empty() => Ok(RuleId::Scoring(v)),
                _ => Err(Error::UnknownRule(s.to_string())),
            };
        }
        match s {
            "plurality" => Ok(RuleId::Plurality),
            "borda" => Ok(RuleId::Borda),
            "copeland" => Ok(RuleId::Copeland),
            "maximin" => Ok(RuleId::Maximin),
            "stv" => Ok(RuleId::Stv),
            "schulze" => Ok(RuleId::Schulze),
            _ => {
                if let Some(b) = s.strip_prefix("laminar-iw-") {
                    Ok(RuleId::LaminarIw(parse_laminar_base(b)?))
                } else if let Some(b) = s.strip_prefix("laminar-sw-") {
                    Ok(RuleId::LaminarSw(parse_laminar_base(b)?))
                } else if let Some(b) = s.strip_prefix("iw-") {
                    Ok(RuleId::Iw(parse_base(b)?))
                } else if let Some(b) = s.strip_prefix("sw-") {
                    Ok(RuleId::Sw(parse_base(b)?))
                } else {
                    Err(Error::UnknownRule(s.to_string()))
                }
            }
        }
    }
}
