use std::collections::BTreeMap;

use crate::atlas::Atlas;
use crate::error::{Error, Result};

use super::presentation::{DescentPresentation, Resolved};

/// A smooth compactification `X̄` of `X` with normal crossing boundary
/// `Y_1 ∪ ... ∪ Y_n`. Strata `Y_I` are keyed by sorted 1-based index sets;
/// absent sets are empty strata. Restrictions `H(Y_J) -> H(Y_I)` for
/// `J = I - {i}` default to the atlas rule when not named.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCConfiguration {
    pub ambient: String,
    pub components: usize,
    pub strata: BTreeMap<Vec<usize>, String>,
    pub maps: BTreeMap<(Vec<usize>, Vec<usize>), String>,
}

impl NCConfiguration {
    pub fn new(ambient: &str, components: usize) -> Self {
        NCConfiguration { ambient: ambient.into(), components, strata: BTreeMap::new(), maps: BTreeMap::new() }
    }

    pub fn stratum(mut self, subset: &[usize], atom: &str) -> Self {
        self.strata.insert(subset.to_vec(), atom.into());
        self
    }

    pub fn restriction(mut self, from: &[usize], to: &[usize], map: &str) -> Self {
        self.maps.insert((from.to_vec(), to.to_vec()), map.into());
        self
    }

    fn atom_of(&self, subset: &[usize]) -> Option<&str> {
        if subset.is_empty() {
            Some(&self.ambient)
        } else {
            self.strata.get(subset).map(String::as_str)
        }
    }
}

fn show(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
    format!("Y_{{{}}}", inner.join(","))
}

/// The strata complex: column `r` is `⊕_{|I| = r} M(Y_I)` in lexicographic
/// order of `I`, and the entry from `I - {i_k}` to `I` is `(-1)^k` times
/// the restriction.
pub fn build_from_ncc(cfg: &NCConfiguration, atlas: &Atlas) -> Result<DescentPresentation> {
    let dim = atlas.atom(&cfg.ambient)?.dim;
    for (subset, atom) in &cfg.strata {
        let sorted = subset.windows(2).all(|w| w[0] < w[1]);
        if subset.is_empty() || !sorted || subset.iter().any(|&i| i == 0 || i > cfg.components) {
            return Err(Error::Validation(format!(
                "stratum {} is not a nonempty increasing subset of 1..={}",
                show(subset),
                cfg.components
            )));
        }
        let d = atlas.atom(atom)?.dim;
        if d + subset.len() as u32 != dim {
            return Err(Error::Validation(format!(
                "stratum {} = `{atom}` has dimension {d}, expected {}",
                show(subset),
                dim as i64 - subset.len() as i64
            )));
        }
        for k in 0..subset.len() {
            let mut face = subset.clone();
            face.remove(k);
            if cfg.atom_of(&face).is_none() {
                return Err(Error::Validation(format!(
                    "stratum {} is nonempty but {} is empty",
                    show(subset),
                    show(&face)
                )));
            }
        }
    }
    for i in 1..=cfg.components {
        if !cfg.strata.contains_key(&vec![i]) {
            return Err(Error::Validation(format!("component {} has no atom", show(&[i]))));
        }
    }
    for (from, to) in cfg.maps.keys() {
        if cfg.atom_of(from).is_none() || cfg.atom_of(to).is_none() {
            return Err(Error::Validation(format!("restriction {} -> {} between empty strata", show(from), show(to))));
        }
    }

    let depth = cfg.strata.keys().map(Vec::len).max().unwrap_or(0);
    let mut subsets: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for r in 1..=depth {
        subsets.push(cfg.strata.keys().filter(|s| s.len() == r).cloned().collect());
    }
    let columns: Vec<Vec<String>> = subsets
        .iter()
        .map(|col| col.iter().map(|s| cfg.atom_of(s).expect("listed strata exist").to_string()).collect())
        .collect();

    let mut entries: Vec<Vec<Resolved>> = Vec::new();
    for r in 1..=depth {
        let mut list = Vec::new();
        for (to, subset) in subsets[r].iter().enumerate() {
            for k in 1..=r {
                let mut face = subset.clone();
                face.remove(k - 1);
                let from = subsets[r - 1].iter().position(|s| *s == face).expect("faces of strata are strata");
                let (src, dst) = (&columns[r - 1][from], &columns[r][to]);
                let named = match cfg.maps.get(&(face.clone(), subset.clone())) {
                    Some(name) => atlas.map(name)?,
                    None => atlas.default_restriction(src, dst)?,
                };
                if &named.source != src || &named.target != dst {
                    return Err(Error::Validation(format!(
                        "restriction {} -> {} goes {} -> {}, expected {src} -> {dst}",
                        show(&face),
                        show(subset),
                        named.source,
                        named.target
                    )));
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                list.push(Resolved { from, to, map: named.morphism.scale(sign) });
            }
        }
        entries.push(list);
    }
    let label = |c: usize, k: usize| show(&subsets[c][k]);
    DescentPresentation::assemble(dim, &columns, entries, atlas, &label)
}
