//! Textual rule specifications.
//!
//! A spec is a rule name optionally followed by `:` and comma-separated
//! `key=value` parameters. A comma-separated item without `=` continues the
//! previous value, so list values read naturally: `remark3:i=1,Rstar=a|b|c,Bstar=a,b`
//! or `quota:q=1,2,2,2,2,2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleSpec {
    Comajority,
    /// One quota (uniform) or one per bipartition in canonical order.
    Quota(Vec<usize>),
    Dictator(usize),
    InverseDictator(usize),
    Stalemate,
    Constant(String),
    Borda,
    BordaProjective(usize),
    Remark3 {
        i: usize,
        rstar: String,
        bstar: Vec<String>,
    },
    Unanimity,
    LexTop(String),
    PairThenThird,
    /// Principal filters at minimal majority coalitions, assigned cyclically.
    Collegial,
    /// Majority filters except empty filters on every bipartition refined by `R`.
    Biased(String),
}

impl RuleSpec {
    /// Every spec name accepted by the parser.
    pub const NAMES: [&'static str; 14] = [
        "comajority",
        "quota",
        "dictator",
        "inverse",
        "stalemate",
        "constant",
        "borda",
        "bordaproj",
        "remark3",
        "un",
        "lextop",
        "fstar",
        "collegial",
        "biased",
    ];
}

struct Params {
    spec: String,
    items: Vec<(String, String)>,
}

impl Params {
    fn parse(spec: &str, text: &str) -> Result<Params> {
        let mut items: Vec<(String, String)> = Vec::new();
        for token in text.split(',') {
            match token.split_once('=') {
                Some((k, v)) => items.push((k.trim().to_string(), v.trim().to_string())),
                None => match items.last_mut() {
                    Some((_, v)) => {
                        v.push(',');
                        v.push_str(token.trim());
                    }
                    None => return Err(Error::Parse(format!("`{spec}`: expected key=value, got `{token}`"))),
                },
            }
        }
        Ok(Params {
            spec: spec.to_string(),
            items,
        })
    }

    fn none() -> Params {
        Params {
            spec: String::new(),
            items: Vec::new(),
        }
    }

    fn take(&mut self, key: &str) -> Result<String> {
        let pos = self
            .items
            .iter()
            .position(|(k, _)| k == key)
            .ok_or_else(|| Error::Parse(format!("`{}`: missing parameter `{key}`", self.spec)))?;
        Ok(self.items.remove(pos).1)
    }

    fn take_usize(&mut self, key: &str) -> Result<usize> {
        let v = self.take(key)?;
        v.parse().map_err(|_| {
            Error::Parse(format!(
                "`{}`: `{key}` must be a nonnegative integer, got `{v}`",
                self.spec
            ))
        })
    }

    fn finish(self) -> Result<()> {
        match self.items.first() {
            Some((k, _)) => Err(Error::Parse(format!("`{}`: unknown parameter `{k}`", self.spec))),
            None => Ok(()),
        }
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<RuleSpec> {
        let text = text.trim();
        let (name, mut params) = match text.split_once(':') {
            Some((name, rest)) => (name.trim(), Params::parse(text, rest)?),
            None => (text, Params::none()),
        };
        params.spec = text.to_string();
        let spec = match name {
            "comajority" => RuleSpec::Comajority,
            "quota" => {
                let q = params.take("q")?;
                let qs = q
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("`{text}`: bad quota list `{q}`")))?;
                RuleSpec::Quota(qs)
            }
            "dictator" => RuleSpec::Dictator(params.take_usize("i")?),
            "inverse" => RuleSpec::InverseDictator(params.take_usize("i")?),
            "stalemate" => RuleSpec::Stalemate,
            "constant" => RuleSpec::Constant(params.take("R")?),
            "borda" => RuleSpec::Borda,
            "bordaproj" => RuleSpec::BordaProjective(params.take_usize("i")?),
            "remark3" => RuleSpec::Remark3 {
                i: params.take_usize("i")?,
                rstar: params.take("Rstar")?,
                bstar: params.take("Bstar")?.split(',').map(|s| s.trim().to_string()).collect(),
            },
            "un" => RuleSpec::Unanimity,
            "lextop" => RuleSpec::LexTop(params.take("x")?),
            "fstar" => RuleSpec::PairThenThird,
            "collegial" => RuleSpec::Collegial,
            "biased" => RuleSpec::Biased(params.take("R")?),
            other => {
                return Err(Error::Parse(format!(
                    "unknown rule `{other}`; expected one of {}",
                    RuleSpec::NAMES.join(", ")
                )))
            }
        };
        params.finish()?;
        Ok(spec)
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::Comajority => write!(f, "comajority"),
            RuleSpec::Quota(qs) => {
                let qs: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
                write!(f, "quota:q={}", qs.join(","))
            }
            RuleSpec::Dictator(i) => write!(f, "dictator:i={i}"),
            RuleSpec::InverseDictator(i) => write!(f, "inverse:i={i}"),
            RuleSpec::Stalemate => write!(f, "stalemate"),
            RuleSpec::Constant(r) => write!(f, "constant:R={r}"),
            RuleSpec::Borda => write!(f, "borda"),
            RuleSpec::BordaProjective(i) => write!(f, "bordaproj:i={i}"),
            RuleSpec::Remark3 { i, rstar, bstar } => {
                write!(f, "remark3:i={i},Rstar={rstar},Bstar={}", bstar.join(","))
            }
            RuleSpec::Unanimity => write!(f, "un"),
            RuleSpec::LexTop(x) => write!(f, "lextop:x={x}"),
            RuleSpec::PairThenThird => write!(f, "fstar"),
            RuleSpec::Collegial => write!(f, "collegial"),
            RuleSpec::Biased(r) => write!(f, "biased:R={r}"),
        }
    }
}
