//! JSON file formats for automata, reduction artifacts and PCP instances.

use std::collections::BTreeMap;
use std::fmt;

use autfree_core::pcp::{pad_to_epcp, EpcpInstance, PcpInstance, Tile};
use autfree_core::{RawAutomaton, RawTransition, Transducer, ValidationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Invalid(Box<ValidationReport>),
    Instance(autfree_core::Error),
    Io(String, std::io::Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed JSON: {e}"),
            FormatError::Invalid(r) => write!(f, "invalid automaton: {r}"),
            FormatError::Instance(e) => write!(f, "{e}"),
            FormatError::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TransitionDoc {
    pub from: String,
    #[serde(rename = "in")]
    pub input: String,
    #[serde(rename = "out")]
    pub output: String,
    pub to: String,
}

/// `{"states": [...], "alphabet": [...], "transitions": [...]}`. Extra
/// fields such as the `symbols` table of a reduction are ignored on input.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct AutomatonDoc {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<BTreeMap<String, String>>,
}

impl AutomatonDoc {
    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| RawTransition::new(&t.from, &t.input, &t.output, &t.to))
                .collect(),
        }
    }

    /// Canonical form: declared orders kept, transitions sorted by
    /// `(from, in)`.
    pub fn from_transducer(t: &Transducer) -> Self {
        let mut transitions: Vec<TransitionDoc> = t
            .to_raw()
            .transitions
            .into_iter()
            .map(|r| TransitionDoc { from: r.from, input: r.input, output: r.output, to: r.to })
            .collect();
        transitions.sort_by(|a, b| (&a.from, &a.input).cmp(&(&b.from, &b.input)));
        AutomatonDoc { states: t.states().to_vec(), alphabet: t.alphabet().to_vec(), transitions, symbols: None }
    }
}

pub fn parse_raw(text: &str) -> Result<RawAutomaton, FormatError> {
    let doc: AutomatonDoc = serde_json::from_str(text)?;
    Ok(doc.to_raw())
}

pub fn parse_automaton(text: &str) -> Result<Transducer, FormatError> {
    Transducer::from_raw(&parse_raw(text)?).map_err(|r| FormatError::Invalid(Box::new(r)))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_automaton(t: &Transducer) -> String {
    to_json(&AutomatonDoc::from_transducer(t))
}

pub fn write_artifact(t: &Transducer, symbols: &[(&'static str, String)]) -> String {
    let mut doc = AutomatonDoc::from_transducer(t);
    doc.symbols = Some(symbols.iter().map(|(k, v)| (k.to_string(), v.clone())).collect());
    to_json(&doc)
}

/// A tile component: either a string or an explicit list of symbols.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum TileWord {
    Text(String),
    Symbols(Vec<String>),
}

impl TileWord {
    /// Strings are split at commas if they contain one, otherwise into
    /// single characters.
    pub fn symbols(&self) -> Vec<String> {
        match self {
            TileWord::Symbols(v) => v.clone(),
            TileWord::Text(s) if s.contains(',') => s.split(',').map(|p| p.trim().to_string()).collect(),
            TileWord::Text(s) => s.chars().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TileDoc {
    pub phi: TileWord,
    pub psi: TileWord,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub lambda: Vec<String>,
    pub tiles: Vec<TileDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_sharp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_r: Option<String>,
    /// Present for padded (EPCP) instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padding: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Pcp(PcpInstance),
    Epcp(EpcpInstance),
}

impl InstanceDoc {
    fn tiles(&self) -> Vec<Tile> {
        self.tiles.iter().map(|t| Tile { phi: t.phi.symbols(), psi: t.psi.symbols() }).collect()
    }

    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let err = FormatError::Instance;
        match &self.padding {
            None => {
                if self.len.is_some() {
                    return Err(err(autfree_core::Error::InvalidInstance("`len` needs `padding`".into())));
                }
                let mut inst = PcpInstance::new(self.lambda.clone(), self.tiles()).map_err(err)?;
                inst.lambda_sharp = self.lambda_sharp.clone();
                inst.lambda_r = self.lambda_r.clone();
                inst.special_symbols().map_err(err)?;
                Ok(Instance::Pcp(inst))
            }
            Some(e) => {
                let inst = EpcpInstance::new(self.lambda.clone(), e.clone(), self.tiles()).map_err(err)?;
                if let Some(l) = self.len {
                    if l != inst.len() {
                        return Err(err(autfree_core::Error::InvalidInstance(format!(
                            "tiles have length {}, not {l}",
                            inst.len()
                        ))));
                    }
                }
                Ok(Instance::Epcp(inst))
            }
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    doc.to_instance()
}

impl Instance {
    /// The padded instance; plain instances are padded with `padding`.
    pub fn to_epcp(&self, padding: &str) -> Result<EpcpInstance, FormatError> {
        match self {
            Instance::Epcp(e) => Ok(e.clone()),
            Instance::Pcp(p) => pad_to_epcp(p, padding).map_err(FormatError::Instance),
        }
    }
}
