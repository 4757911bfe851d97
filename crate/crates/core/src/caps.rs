//! Desk-scale limits for the exponential routines.
//!
//! Every limit can be raised through the `EQBCAST_CAPS` environment variable,
//! a comma separated list of `key=value` pairs, e.g.
//! `EQBCAST_CAPS=vc=24,cover=18,lp=18,exhaustive=26`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Max vertex count for exact vertex cover.
    pub exact_vertex_cover: usize,
    /// Max vertex count for every other exact cover kind.
    pub exact_cover: usize,
    /// Max vertex count for the boundary programs (2^n - 2 subsets).
    pub lp_boundary: usize,
    /// Max log2 of the number of assignments in an exhaustive protocol check.
    pub exhaustive_log2: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exact_vertex_cover: 20,
            exact_cover: 16,
            lp_boundary: 16,
            exhaustive_log2: 24,
        }
    }
}

impl Caps {
    pub const ENV: &'static str = "EQBCAST_CAPS";

    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad caps entry `{item}`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad caps value in `{item}`")))?;
            match key.trim() {
                "vc" => caps.exact_vertex_cover = value,
                "cover" => caps.exact_cover = value,
                "lp" => caps.lp_boundary = value,
                "exhaustive" => caps.exhaustive_log2 = value,
                other => return Err(Error::Parse(format!("unknown caps key `{other}`"))),
            }
        }
        Ok(caps)
    }

    /// Defaults overridden by `EQBCAST_CAPS` when it is set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(Self::ENV) {
            Ok(spec) => Caps::parse(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}
