//! Corpus description (TOML) and the graph stream it expands to.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use spectral_gate_core::Multigraph;
use thiserror::Error;

use crate::formats::{parse_graph6, FormatError};
use crate::generate::{self, GenerateError, MAX_ENUMERATION_ORDER};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Format {
        path: PathBuf,
        line: usize,
        #[source]
        source: FormatError,
    },
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("source {source_index}: {error}")]
    Generate {
        source_index: usize,
        #[source]
        error: GenerateError,
    },
}

/// One producer of graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Source {
    /// graph6 / sparse6 file, one graph per line; blank lines are skipped.
    File { path: PathBuf },
    /// Every connected labeled simple graph with `n_min <= n <= n_max`.
    Enumerate {
        n_max: usize,
        #[serde(default = "default_n_min")]
        n_min: usize,
    },
    /// `count` simple `d`-regular graphs; with `n_max`, each order is drawn
    /// uniformly from the feasible values in `n..=n_max`.
    RandomRegular {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_max: Option<usize>,
        d: usize,
        count: usize,
        seed: u64,
    },
    Gnp { n: usize, p: f64, count: usize, seed: u64 },
    RandomMultigraph {
        n: usize,
        max_mult: u32,
        edge_factor: f64,
        count: usize,
        seed: u64,
    },
    /// A named family: `complete`, `cycle`, `path`, `star`, `bridged_cliques`
    /// (these take `n`), `petersen`, `pappus`.
    Family {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
}

fn default_n_min() -> usize {
    2
}

impl Source {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Source::RandomRegular { seed, .. } | Source::Gnp { seed, .. } | Source::RandomMultigraph { seed, .. } => {
                Some(*seed)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Filters {
    /// Drop disconnected graphs instead of recording them unevaluated.
    pub connected_only: bool,
    /// Drop graphs with minimum degree below this floor.
    pub min_degree: u64,
    /// Keep only graphs in the two-minimum-cut class.
    pub g_class_only: bool,
}

impl Default for Filters {
    fn default() -> Self {
        Self {
            connected_only: true,
            min_degree: 0,
            g_class_only: false,
        }
    }
}

/// Everything a sweep needs: where graphs come from, which to keep, and what
/// to evaluate on them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    pub name: Option<String>,
    pub sources: Vec<Source>,
    pub filters: Filters,
    /// Condition ids; empty selects the whole catalog.
    pub conditions: Vec<String>,
    pub k: Vec<u64>,
    /// Include one record per graph in the report.
    pub emit_records: bool,
    /// Evaluate the structural cut-profile statements.
    pub structural: bool,
    /// Check the spectral and cut-size lemmas on every graph.
    pub lemmas: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            name: None,
            sources: Vec::new(),
            filters: Filters::default(),
            conditions: Vec::new(),
            k: vec![2, 3],
            emit_records: true,
            structural: true,
            lemmas: true,
        }
    }
}

impl CorpusSpec {
    pub fn from_toml(text: &str) -> Result<Self, CorpusError> {
        let spec: Self = toml::from_str(text).map_err(|e| CorpusError::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Reads a TOML spec; relative `file` sources resolve against the spec's
    /// directory.
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_owned(),
            source,
        })?;
        let mut spec = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for s in &mut spec.sources {
            if let Source::File { path } = s {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let bad = |m: String| Err(CorpusError::Spec(m));
        if self.k.iter().any(|&k| k < 2) {
            return bad("k values must be at least 2".into());
        }
        for id in &self.conditions {
            spectral_gate_core::theorems::find_condition(id).map_err(|e| CorpusError::Spec(e.to_string()))?;
        }
        for (i, s) in self.sources.iter().enumerate() {
            match s {
                Source::Enumerate { n_max, n_min } if *n_max > MAX_ENUMERATION_ORDER || n_min > n_max || *n_min < 2 => {
                    return bad(format!(
                        "source {i}: enumerate needs 2 <= n_min <= n_max <= {MAX_ENUMERATION_ORDER}"
                    ));
                }
                Source::RandomRegular { n, n_max: Some(m), .. } if m < n => {
                    return bad(format!("source {i}: n_max below n"));
                }
                Source::Gnp { p, .. } if !(0.0..=1.0).contains(p) => {
                    return bad(format!("source {i}: p outside [0, 1]"));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn seeds(&self) -> Vec<u64> {
        self.sources.iter().filter_map(Source::seed).collect()
    }
}

/// A graph together with where it came from.
#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub source: usize,
    pub index: usize,
    pub graph: Multigraph,
}

type ItemIter = Box<dyn Iterator<Item = Result<CorpusItem, CorpusError>> + Send>;

/// Lazily expands every source in order. Generated graphs are produced on
/// demand so exhaustive sources never sit in memory all at once.
pub fn stream(spec: &CorpusSpec) -> Result<impl Iterator<Item = Result<CorpusItem, CorpusError>> + Send, CorpusError> {
    spec.validate()?;
    let mut parts: Vec<ItemIter> = Vec::new();
    for (si, source) in spec.sources.iter().cloned().enumerate() {
        parts.push(source_iter(si, source)?);
    }
    Ok(parts.into_iter().flatten())
}

fn tag(source: usize) -> impl Fn((usize, Multigraph)) -> CorpusItem {
    move |(index, graph)| CorpusItem { source, index, graph }
}

fn source_iter(si: usize, source: Source) -> Result<ItemIter, CorpusError> {
    let gen_err = move |error| CorpusError::Generate { source_index: si, error };
    Ok(match source {
        Source::File { path } => {
            let file = File::open(&path).map_err(|e| CorpusError::Io {
                path: path.clone(),
                source: e,
            })?;
            let mut index = 0usize;
            Box::new(BufReader::new(file).lines().enumerate().filter_map(move |(line_no, line)| {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => {
                        return Some(Err(CorpusError::Io {
                            path: path.clone(),
                            source: e,
                        }))
                    }
                };
                if line.trim().is_empty() {
                    return None;
                }
                let item = parse_graph6(&line)
                    .map(|graph| CorpusItem {
                        source: si,
                        index,
                        graph,
                    })
                    .map_err(|source| CorpusError::Format {
                        path: path.clone(),
                        line: line_no + 1,
                        source,
                    });
                index += 1;
                Some(item)
            }))
        }
        Source::Enumerate { n_max, n_min } => {
            let mut iters = Vec::new();
            for n in n_min..=n_max {
                iters.push(generate::enumerate_connected(n).map_err(gen_err)?);
            }
            Box::new(iters.into_iter().flatten().enumerate().map(tag(si)).map(Ok))
        }
        Source::RandomRegular {
            n,
            n_max,
            d,
            count,
            seed,
        } => {
            let orders: Vec<usize> = (n..=n_max.unwrap_or(n)).filter(|m| m * d % 2 == 0 && d < *m).collect();
            if orders.is_empty() {
                return Err(gen_err(GenerateError::Infeasible {
                    n,
                    d,
                    reason: "no feasible order in range",
                }));
            }
            let mut rng = generate::rng(seed);
            Box::new((0..count).map(move |index| {
                let order = if orders.len() == 1 {
                    orders[0]
                } else {
                    orders[rng.gen_range(0..orders.len())]
                };
                generate::random_regular(order, d, &mut rng)
                    .map(|graph| CorpusItem {
                        source: si,
                        index,
                        graph,
                    })
                    .map_err(gen_err)
            }))
        }
        Source::Gnp { n, p, count, seed } => {
            let mut rng = generate::rng(seed);
            Box::new((0..count).map(move |index| {
                generate::gnp(n, p, &mut rng)
                    .map(|graph| CorpusItem {
                        source: si,
                        index,
                        graph,
                    })
                    .map_err(gen_err)
            }))
        }
        Source::RandomMultigraph {
            n,
            max_mult,
            edge_factor,
            count,
            seed,
        } => {
            let mut rng = generate::rng(seed);
            Box::new((0..count).map(move |index| {
                generate::random_multigraph(n, max_mult, edge_factor, &mut rng)
                    .map(|graph| CorpusItem {
                        source: si,
                        index,
                        graph,
                    })
                    .map_err(gen_err)
            }))
        }
        Source::Family { name, n } => {
            let graph = family(&name, n).map_err(gen_err)?;
            Box::new(std::iter::once(Ok(CorpusItem {
                source: si,
                index: 0,
                graph,
            })))
        }
    })
}

/// Builds a named family member.
pub fn family(name: &str, n: Option<usize>) -> Result<Multigraph, GenerateError> {
    let need = || n.ok_or(GenerateError::Parameter("this family needs n"));
    match name {
        "complete" => generate::complete(need()?),
        "cycle" => generate::cycle(need()?),
        "path" => generate::path(need()?),
        "star" => generate::star(need()?),
        "bridged_cliques" => generate::bridged_cliques(need()?),
        "petersen" => Ok(generate::petersen()),
        "pappus" => Ok(generate::pappus()),
        _ => Err(GenerateError::Parameter("unknown family")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tagged_sources() {
        let spec = CorpusSpec::from_toml(
            r#"
            name = "demo"
            k = [2]
            conditions = ["THM-3.1"]

            [filters]
            min_degree = 3

            [[sources]]
            kind = "enumerate"
            n_max = 4

            [[sources]]
            kind = "random_regular"
            n = 10
            n_max = 16
            d = 3
            count = 5
            seed = 42

            [[sources]]
            kind = "family"
            name = "pappus"
            "#,
        )
        .unwrap();
        assert_eq!(spec.sources.len(), 3);
        assert!(spec.filters.connected_only);
        assert_eq!(spec.seeds(), vec![42]);
        let items: Vec<_> = stream(&spec).unwrap().collect::<Result<_, _>>().unwrap();
        assert_eq!(items.len(), 1 + 4 + 38 + 5 + 1);
        assert!(items[44..49].iter().all(|it| it.graph.is_regular() && it.graph.vertex_count() % 2 == 0));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(CorpusSpec::from_toml("k = [1]").is_err());
        assert!(CorpusSpec::from_toml("conditions = [\"THM-0.0\"]").is_err());
        assert!(CorpusSpec::from_toml("[[sources]]\nkind = \"enumerate\"\nn_max = 9").is_err());
        assert!(CorpusSpec::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn empty_spec_streams_nothing() {
        let spec = CorpusSpec::default();
        assert_eq!(stream(&spec).unwrap().count(), 0);
    }
}
