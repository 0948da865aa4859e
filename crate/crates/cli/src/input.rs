use serde::de::DeserializeOwned;

use lasker_core::doc::{self, IdealDoc, MsetDoc};
use lasker_core::lab::CorpusSpec;
use lasker_core::ring::{construct_ring_with, BuildOptions};
use lasker_core::{Error, Ideal, MultiplicativeSet, Ring, RingSpec};

use crate::Cli;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: 64,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Document(_) => 64,
            Error::PostVerification(_) | Error::NoSaturatingElement => 1,
            _ => 65,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// A document given inline (`--x`) or as a file (`--x-file`).
pub struct Source<'a> {
    name: &'static str,
    inline: &'a Option<String>,
    file: &'a Option<String>,
}

impl<'a> Source<'a> {
    pub fn new(name: &'static str, inline: &'a Option<String>, file: &'a Option<String>) -> Self {
        Source { name, inline, file }
    }

    fn text(&self) -> Result<Option<String>, CliError> {
        match (self.inline, self.file) {
            (Some(_), Some(_)) => Err(CliError::parse(format!(
                "give --{0} or --{0}-file, not both",
                self.name
            ))),
            (Some(s), None) => Ok(Some(s.clone())),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(Some)
                .map_err(|e| CliError::parse(format!("cannot read {path}: {e}"))),
            (None, None) => Ok(None),
        }
    }
}

pub fn optional_document<T: DeserializeOwned>(src: &Source) -> Result<Option<T>, CliError> {
    src.text()?
        .map(|t| {
            serde_json::from_str(&t).map_err(|e| CliError::parse(format!("--{}: {e}", src.name)))
        })
        .transpose()
}

pub fn document<T: DeserializeOwned>(src: &Source) -> Result<T, CliError> {
    optional_document(src)?.ok_or_else(|| CliError::parse(format!("--{} is required", src.name)))
}

pub fn ring(src: &Source, opts: &BuildOptions) -> Result<Ring, CliError> {
    let spec: RingSpec = document(src)?;
    Ok(construct_ring_with(&spec, opts)?)
}

pub fn mset(ring: &Ring, src: &Source) -> Result<MultiplicativeSet, CliError> {
    match optional_document::<MsetDoc>(src)? {
        Some(d) => Ok(doc::mset_from_doc(ring, &d)?),
        None => Ok(MultiplicativeSet::trivial(ring)),
    }
}

pub fn optional_ideal(ring: &Ring, src: &Source) -> Result<Option<Ideal>, CliError> {
    optional_document::<IdealDoc>(src)?
        .map(|d| doc::ideal_from_doc(ring, &d).map_err(CliError::from))
        .transpose()
}

pub fn ideal(ring: &Ring, src: &Source) -> Result<Ideal, CliError> {
    optional_ideal(ring, src)?.ok_or_else(|| CliError::parse("--ideal is required"))
}

/// `default`, `empty`, inline JSON or a path, with `--seed` and `--cap`
/// applied on top.
pub fn corpus_spec(arg: &str, cli: &Cli) -> Result<CorpusSpec, CliError> {
    let mut spec = match arg {
        "default" => CorpusSpec::default(),
        "empty" => CorpusSpec::empty(),
        text => {
            let body = if text.trim_start().starts_with('{') {
                text.to_string()
            } else {
                std::fs::read_to_string(text)
                    .map_err(|e| CliError::parse(format!("cannot read corpus {text}: {e}")))?
            };
            serde_json::from_str(&body).map_err(|e| CliError::parse(format!("--corpus: {e}")))?
        }
    };
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    if let Some(cap) = cli.cap {
        spec.size_cap = cap;
    }
    Ok(spec)
}
