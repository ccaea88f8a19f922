//! Assembles the root system, multiplicities and base point from the global
//! flags. Exactly one root-system source (--type or --custom) must be given.

use std::collections::BTreeMap;
use std::path::PathBuf;

use sorbit::rat::{parse_rat, rat_int, Rat};
use sorbit::{parse_label, Error, MultiplicitySpec, Result, RootSystem, WeylGroup};

#[derive(clap::Args, Clone)]
pub struct GlobalOpts {
    /// Cartan type, combined like `B3` (or a bare letter with --rank)
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub cartan_type: Option<String>,

    /// Rank, when --type carries only the family letter
    #[arg(long, global = true)]
    pub rank: Option<usize>,

    /// Custom root-system JSON file (see the schema in the README)
    #[arg(long, global = true, value_name = "PATH")]
    pub custom: Option<PathBuf>,

    /// Uniform root multiplicity
    #[arg(long, global = true)]
    pub m: Option<u32>,

    /// Multiplicity table JSON file: {"<coords csv>": m, ...}
    #[arg(long = "mult-table", global = true, value_name = "PATH")]
    pub mult_table: Option<PathBuf>,

    /// Base point as comma-separated simple-root values, e.g. `1,0,3/2`
    /// (default: all ones, a regular point)
    #[arg(long, global = true, value_name = "CSV")]
    pub x0: Option<String>,

    /// Degree cap for graded computations (default N + 2)
    #[arg(long, global = true)]
    pub cap: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: crate::output::OutputFormat,

    /// Seed for the randomized identity checks in `verify`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

pub struct Context {
    pub rs: RootSystem,
    pub weyl: WeylGroup,
    pub cap: usize,
    pub seed: u64,
}

impl GlobalOpts {
    pub fn build_system(&self) -> Result<RootSystem> {
        let mut rs = match (&self.cartan_type, &self.custom) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "give exactly one of --type and --custom".into(),
                ))
            }
            (None, None) => {
                return Err(Error::InvalidInput(
                    "no root system given: use --type (e.g. --type B3) or --custom <path>".into(),
                ))
            }
            (Some(label), None) => {
                let (family, rank) = match (parse_label(label), self.rank) {
                    (Ok(pair), None) => pair,
                    (Ok(pair), Some(r)) if pair.1 == r => pair,
                    (Ok(pair), Some(r)) => {
                        return Err(Error::InvalidInput(format!(
                            "--type {label} fixes rank {}, but --rank {r} was given",
                            pair.1
                        )))
                    }
                    (Err(_), Some(r)) => {
                        let family = label
                            .trim()
                            .chars()
                            .next()
                            .and_then(sorbit::Family::from_char)
                            .ok_or_else(|| Error::UnsupportedType(label.clone()))?;
                        if label.trim().len() != 1 {
                            return Err(Error::UnsupportedType(label.clone()));
                        }
                        (family, r)
                    }
                    (Err(e), None) => return Err(e),
                };
                RootSystem::new(family, rank)?
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                })?;
                RootSystem::from_json(&text)?
            }
        };
        match (self.m, &self.mult_table) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "give at most one of --m and --mult-table".into(),
                ))
            }
            (Some(m), None) => rs.attach_multiplicities(&MultiplicitySpec::Uniform(m))?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                })?;
                let raw: BTreeMap<String, u32> = serde_json::from_str(&text)
                    .map_err(|e| Error::InvalidInput(format!("multiplicity table: {e}")))?;
                let mut table = BTreeMap::new();
                for (key, m) in raw {
                    let coords: Vec<i64> = key
                        .split(',')
                        .map(|p| {
                            p.trim().parse().map_err(|_| {
                                Error::InvalidInput(format!("bad root key {key:?}"))
                            })
                        })
                        .collect::<Result<_>>()?;
                    table.insert(coords, m);
                }
                rs.attach_multiplicities(&MultiplicitySpec::Table(table))?;
            }
            (None, None) => {}
        }
        Ok(rs)
    }

    pub fn build(&self) -> Result<Context> {
        let rs = self.build_system()?;
        let weyl = WeylGroup::enumerate(&rs)?;
        let cap = self.cap.unwrap_or(rs.num_positive_roots() + 2);
        Ok(Context {
            rs,
            weyl,
            cap,
            seed: self.seed,
        })
    }

    /// Base point values; defaults to the all-ones regular point.
    pub fn x0(&self, rank: usize) -> Result<Vec<Rat>> {
        let Some(text) = &self.x0 else {
            return Ok(vec![rat_int(1); rank]);
        };
        let values: Vec<Rat> = text
            .split(',')
            .map(parse_rat)
            .collect::<Result<_>>()?;
        if values.len() != rank {
            return Err(Error::InvalidInput(format!(
                "--x0 has {} values, rank is {rank}",
                values.len()
            )));
        }
        Ok(values)
    }
}

/// Parses a 1-based comma-separated index list (empty string means empty).
pub fn parse_indices(text: &str, rank: usize, what: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            let i: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad {what} index {p:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::InvalidInput(format!(
                    "{what} index {i} out of range 1..={rank}"
                )));
            }
            Ok(i - 1)
        })
        .collect()
}
