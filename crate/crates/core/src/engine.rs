//! Breadth-first successive substitution search.
//!
//! Each level replaces every live form by its `n!` weighted difference
//! substitutions. Trivially positive children are certified and dropped; the
//! first trivially negative child (in lexicographic `(parent chain, index)`
//! order) yields a counterexample at the image of the barycenter under the
//! child's chain. An empty frontier proves nonnegativity on the orthant.
//!
//! Children are generated in parallel but merged in order before any
//! scanning, so the verdict does not depend on the thread count.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdsError};
use crate::polynomial::{Form, NegativityMode, Point};
use crate::rational::binomial_table;
use crate::substitution::{apply_sds, factorial, Chain, PwnTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub max_depth: u32,
    pub negativity_mode: NegativityMode,
    pub dedup: bool,
    pub root_check: bool,
    pub node_budget: usize,
    pub emit_certificate: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_depth: 30,
            negativity_mode: NegativityMode::Value,
            dedup: true,
            root_check: true,
            node_budget: 1_000_000,
            emit_certificate: false,
        }
    }
}

impl EngineConfig {
    /// Semantics of the reference program: all-negative-coefficient test, no
    /// root check, no deduplication.
    pub fn compat() -> Self {
        EngineConfig {
            negativity_mode: NegativityMode::Coeffs,
            dedup: false,
            root_check: false,
            ..Self::default()
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        if self.max_depth == 0 {
            return Err(SdsError::InvalidConfig("max_depth must be at least 1".into()));
        }
        let branching = factorial(nvars).unwrap_or(u128::MAX);
        if (self.node_budget as u128) < branching {
            return Err(SdsError::InvalidConfig(format!(
                "node_budget {} is below n! = {branching}",
                self.node_budget
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub chain: Chain,
    pub form: Form,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    PositiveSemidefinite {
        depth: u32,
        certificate: Option<Vec<CertificateEntry>>,
    },
    Counterexample {
        chain: Chain,
        point: Point,
        value: BigRational,
    },
    Inconclusive {
        depth_reached: u32,
        live_forms: usize,
    },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::PositiveSemidefinite { .. } => "positive_semidefinite",
            Verdict::Counterexample { .. } => "counterexample",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            Verdict::PositiveSemidefinite { depth, .. } => *depth,
            Verdict::Counterexample { chain, .. } => chain.len() as u32,
            Verdict::Inconclusive { depth_reached, .. } => *depth_reached,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    /// Parent forms replaced by their children.
    pub forms_expanded: u64,
    /// Trivially positive children discarded.
    pub forms_pruned: u64,
    /// Children dropped as exact duplicates of an earlier frontier form.
    pub duplicates_collapsed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub stats: EngineStats,
}

/// The `n!` children of `f` in lexicographic permutation order, paired with
/// their 1-based indices.
pub fn expand_once(f: &Form) -> Result<Vec<(usize, Form)>> {
    let table = PwnTable::new(f.nvars())?;
    let binomials = binomial_table(f.degree() as usize);
    Ok((1..=table.len())
        .map(|k| (k, apply_sds(f, table.permutation(k), &binomials)))
        .collect())
}

pub fn yys_decide(f: &Form, cfg: &EngineConfig) -> Result<Decision> {
    let n = f.nvars();
    if n < 2 {
        return Err(SdsError::InvalidConfig(
            "the engine needs at least two variables".into(),
        ));
    }
    cfg.validate(n)?;
    let mut stats = EngineStats::default();
    let done = |verdict| {
        Ok(Decision {
            verdict,
            stats: EngineStats::default(),
        })
    };

    if cfg.root_check && f.is_trivially_negative(cfg.negativity_mode) {
        let point = Point::barycenter(n);
        let value = f.evaluate(&point)?;
        return done(Verdict::Counterexample {
            chain: Chain::empty(),
            point,
            value,
        });
    }
    if f.is_trivially_positive() {
        let certificate = cfg.emit_certificate.then(|| {
            vec![CertificateEntry {
                chain: Chain::empty(),
                form: f.clone(),
            }]
        });
        return done(Verdict::PositiveSemidefinite {
            depth: 0,
            certificate,
        });
    }

    let table = PwnTable::new(n)?;
    let binomials = binomial_table(f.degree() as usize);
    let branching = table.len();

    let mut frontier: Vec<(Chain, Form)> = vec![(Chain::empty(), f.clone())];
    let mut leaves: BTreeMap<Chain, Form> = BTreeMap::new();
    let mut aliases: Vec<(Chain, Chain)> = Vec::new();
    let mut depth = 0u32;

    loop {
        if depth >= cfg.max_depth || frontier.len().saturating_mul(branching) > cfg.node_budget {
            return Ok(Decision {
                verdict: Verdict::Inconclusive {
                    depth_reached: depth,
                    live_forms: frontier.len(),
                },
                stats,
            });
        }

        let expanded: Vec<Vec<Form>> = frontier
            .par_iter()
            .map(|(_, form)| {
                (1..=branching)
                    .map(|k| apply_sds(form, table.permutation(k), &binomials))
                    .collect()
            })
            .collect();
        depth += 1;
        stats.forms_expanded += frontier.len() as u64;

        let children: Vec<(Chain, Form)> = frontier
            .iter()
            .zip(expanded)
            .flat_map(|((chain, _), forms)| {
                forms
                    .into_iter()
                    .enumerate()
                    .map(move |(i, form)| (chain.extended(i + 1), form))
            })
            .collect();

        if let Some((chain, _)) = children
            .iter()
            .find(|(_, form)| form.is_trivially_negative(cfg.negativity_mode))
        {
            let point = table.compose(chain)?.apply(&Point::barycenter(n))?;
            let value = f.evaluate(&point)?;
            return Ok(Decision {
                verdict: Verdict::Counterexample {
                    chain: chain.clone(),
                    point,
                    value,
                },
                stats,
            });
        }

        let mut keep = vec![false; children.len()];
        {
            let mut seen: HashMap<&Form, usize> = HashMap::new();
            for (idx, (chain, form)) in children.iter().enumerate() {
                if form.is_trivially_positive() {
                    stats.forms_pruned += 1;
                    continue;
                }
                if cfg.dedup {
                    if let Some(&first) = seen.get(form) {
                        stats.duplicates_collapsed += 1;
                        if cfg.emit_certificate {
                            aliases.push((chain.clone(), children[first].0.clone()));
                        }
                        continue;
                    }
                    seen.insert(form, idx);
                }
                keep[idx] = true;
            }
        }

        let mut next = Vec::new();
        for ((chain, form), live) in children.into_iter().zip(keep) {
            if live {
                next.push((chain, form));
            } else if cfg.emit_certificate && form.is_trivially_positive() {
                leaves.insert(chain, form);
            }
        }
        frontier = next;

        if frontier.is_empty() {
            let certificate = cfg.emit_certificate.then(|| {
                resolve_aliases(&mut leaves, &aliases);
                leaves
                    .into_iter()
                    .map(|(chain, form)| CertificateEntry { chain, form })
                    .collect()
            });
            return Ok(Decision {
                verdict: Verdict::PositiveSemidefinite { depth, certificate },
                stats,
            });
        }
    }
}

/// Copies the certified subtree of each canonical chain under its collapsed
/// duplicate. Aliases are recorded level by level, so walking them in reverse
/// resolves deeper duplicates before any subtree that contains them is copied.
fn resolve_aliases(leaves: &mut BTreeMap<Chain, Form>, aliases: &[(Chain, Chain)]) {
    for (dup, canonical) in aliases.iter().rev() {
        let copied: Vec<(Chain, Form)> = leaves
            .range(canonical.clone()..)
            .take_while(|(chain, _)| chain.starts_with(canonical))
            .map(|(chain, form)| {
                let suffix = Chain::new(chain.steps()[canonical.len()..].to_vec());
                (dup.concat(&suffix), form.clone())
            })
            .collect();
        leaves.extend(copied);
    }
}

/// Checks a positivity certificate against `f` from scratch:
/// every entry's form is recomputed by expanding `f` under the chain's
/// composed matrix, every form is trivially positive, and the chains are the
/// leaves of a complete `n!`-ary tree.
pub fn verify_certificate(f: &Form, cert: &[CertificateEntry]) -> bool {
    if cert.is_empty() {
        return false;
    }
    let n = f.nvars();
    let Ok(table) = PwnTable::new(n) else {
        return false;
    };
    if cert
        .iter()
        .any(|e| e.chain.validate(n).is_err() || !e.form.is_trivially_positive())
    {
        return false;
    }
    let recomputed_ok = cert.par_iter().all(|entry| {
        table
            .compose(&entry.chain)
            .and_then(|m| f.substitute_linear(&m))
            .is_ok_and(|g| g == entry.form)
    });
    if !recomputed_ok {
        return false;
    }
    let chains: HashSet<&[usize]> = cert.iter().map(|e| e.chain.steps()).collect();
    if chains.len() != cert.len() {
        return false;
    }
    let max_len = cert.iter().map(|e| e.chain.len()).max().unwrap_or(0);
    let mut reached = 0usize;
    let mut prefix = Vec::new();
    covers(&chains, &mut prefix, max_len, table.len(), &mut reached) && reached == chains.len()
}

fn covers(
    chains: &HashSet<&[usize]>,
    prefix: &mut Vec<usize>,
    max_len: usize,
    branching: usize,
    reached: &mut usize,
) -> bool {
    if chains.contains(prefix.as_slice()) {
        *reached += 1;
        return true;
    }
    if prefix.len() >= max_len {
        return false;
    }
    for k in 1..=branching {
        prefix.push(k);
        let ok = covers(chains, prefix, max_len, branching, reached);
        prefix.pop();
        if !ok {
            return false;
        }
    }
    true
}
