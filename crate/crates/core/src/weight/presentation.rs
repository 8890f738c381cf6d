use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atlas::{Atlas, NamedMap};
use crate::complex::{AbComplex, BlockComplex, ChainMap, GradedMorphism, GradedSum};
use crate::error::{Error, Result};

/// One summand `M(Y)` of a column, with `dim Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Summand {
    pub name: String,
    pub dim: u32,
}

/// A differential (or chain-map) entry: `sign` times the named map from
/// summand `from` of one column to summand `to` of the next.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub from: usize,
    pub to: usize,
    #[serde(default = "one")]
    pub sign: i64,
    pub map: String,
}

fn one() -> i64 {
    1
}

impl Entry {
    pub fn new(from: usize, to: usize, sign: i64, map: &str) -> Self {
        Entry { from, to, sign, map: map.to_string() }
    }
}

/// A bounded complex of formal motive terms, starting at column 0, with its
/// realization over the integers.
#[derive(Clone, Debug)]
pub struct DescentPresentation {
    dim: u32,
    columns: Vec<Vec<Summand>>,
    realization: AbComplex,
    // Summand decomposition of each realized column, when the presentation
    // was assembled from atoms.
    sums: Option<Vec<GradedSum>>,
}

pub(crate) struct Resolved {
    pub from: usize,
    pub to: usize,
    pub map: GradedMorphism,
}

impl DescentPresentation {
    /// Assembles a presentation from atom names and named-map entries.
    pub fn from_entries(
        dim: u32,
        columns: Vec<Vec<String>>,
        differentials: Vec<Vec<Entry>>,
        atlas: &Atlas,
    ) -> Result<Self> {
        let label = |c: usize, k: usize| format!("column {c} summand {k} (`{}`)", columns[c][k]);
        let resolved = resolve_entries(&columns, &differentials, atlas)?;
        Self::assemble(dim, &columns, resolved, atlas, &label)
    }

    pub(crate) fn assemble(
        dim: u32,
        columns: &[Vec<String>],
        entries: Vec<Vec<Resolved>>,
        atlas: &Atlas,
        label: &dyn Fn(usize, usize) -> String,
    ) -> Result<Self> {
        check_squares(&entries, label)?;
        let mut formal = Vec::new();
        let mut blocks = BlockComplex::new(0);
        for (c, col) in columns.iter().enumerate() {
            let mut groups = Vec::new();
            let mut summands = Vec::new();
            for name in col {
                let r = atlas.atom(name)?;
                groups.push(r.cohomology);
                summands.push(Summand { name: name.clone(), dim: r.dim });
            }
            blocks.push_column(groups);
            formal.push(summands);
            for e in entries.get(c).into_iter().flatten() {
                blocks.arrow(c as i32, e.from, e.to, e.map.clone());
            }
        }
        let assembled = blocks.assemble()?;
        let p = DescentPresentation { dim, columns: formal, realization: assembled.complex, sums: Some(assembled.sums) };
        p.check_ladder()?;
        Ok(p)
    }

    /// Wraps an already realized complex. Nonzero columns below 0 are
    /// rejected; the complex is re-indexed from column 0.
    pub fn from_realization(dim: u32, columns: Vec<Vec<Summand>>, realization: &AbComplex) -> Result<Self> {
        if let Some((lo, _)) = realization.support() {
            if lo < 0 {
                return Err(Error::InvalidComplex(format!("nonzero column {lo} below column 0")));
            }
        }
        let end = realization.end().max(columns.len() as i32).max(0);
        let cols = (0..end).map(|i| realization.column(i)).collect();
        let diffs = (0..end - 1).map(|i| realization.differential(i)).collect();
        let realization = AbComplex::new(0, cols, diffs)?;
        let mut columns = columns;
        columns.resize(end as usize, Vec::new());
        let p = DescentPresentation { dim, columns, realization, sums: None };
        p.check_ladder()?;
        Ok(p)
    }

    /// `k <= dim X` and `dim (column i) <= dim X - i`.
    fn check_ladder(&self) -> Result<()> {
        let last = self.columns.iter().rposition(|c| !c.is_empty());
        if let Some(k) = last {
            if k as u32 > self.dim {
                return Err(Error::Validation(format!(
                    "presentation of a {}-dimensional variety has a nonzero column {k}",
                    self.dim
                )));
            }
        }
        for (i, col) in self.columns.iter().enumerate() {
            for s in col {
                if s.dim + i as u32 > self.dim {
                    return Err(Error::Validation(format!(
                        "dimension ladder: `{}` of dimension {} in column {i} exceeds {} - {i}",
                        s.name, s.dim, self.dim
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<Summand>] {
        &self.columns
    }

    pub fn realization(&self) -> &AbComplex {
        &self.realization
    }

    /// Builds the chain map given by entries from column `i` of `self` to
    /// column `i` of `target`. Both presentations must have been assembled
    /// from atoms.
    pub fn map_to(&self, target: &DescentPresentation, entries: &[Vec<Entry>], atlas: &Atlas) -> Result<ChainMap> {
        let (Some(src), Some(dst)) = (&self.sums, &target.sums) else {
            return Err(Error::Validation("maps by entries need presentations assembled from atoms".into()));
        };
        if entries.len() > self.columns.len().max(target.columns.len()) {
            return Err(Error::Validation("map entries for a column beyond both presentations".into()));
        }
        let mut components = BTreeMap::new();
        for (c, list) in entries.iter().enumerate() {
            let (Some(s), Some(t)) = (src.get(c), dst.get(c)) else {
                if list.is_empty() {
                    continue;
                }
                return Err(Error::Validation(format!("map entries in column {c}, which is empty on one side")));
            };
            let names = |p: &DescentPresentation| p.columns[c].iter().map(|s| s.name.clone()).collect::<Vec<_>>();
            let (sn, tn) = (names(self), names(target));
            let mut total = GradedMorphism::zero(&s.group, &t.group);
            for (k, e) in list.iter().enumerate() {
                let m = resolve(&sn, &tn, e, atlas, &|| format!("map entry {k} in column {c}"))?;
                let piece = t.injection(e.to).compose(&m.compose(&s.projection(e.from)));
                total = total.add(&piece);
            }
            components.insert(c as i32, total);
        }
        ChainMap::new(self.realization.clone(), target.realization.clone(), components)
    }
}

fn resolve(
    sources: &[String],
    targets: &[String],
    e: &Entry,
    atlas: &Atlas,
    at: &dyn Fn() -> String,
) -> Result<GradedMorphism> {
    let (Some(s), Some(t)) = (sources.get(e.from), targets.get(e.to)) else {
        return Err(Error::Validation(format!("{}: summand index out of range", at())));
    };
    let NamedMap { source, target, morphism } = atlas.map(&e.map)?;
    if &source != s || &target != t {
        return Err(Error::Validation(format!(
            "{}: map `{}` goes {source} -> {target} but connects {s} -> {t}",
            at(),
            e.map
        )));
    }
    Ok(morphism.scale(e.sign))
}

pub(crate) fn resolve_entries(
    columns: &[Vec<String>],
    differentials: &[Vec<Entry>],
    atlas: &Atlas,
) -> Result<Vec<Vec<Resolved>>> {
    if differentials.len() + 1 > columns.len().max(1) {
        return Err(Error::Validation(format!(
            "{} differential lists for {} columns",
            differentials.len(),
            columns.len()
        )));
    }
    let mut out = Vec::new();
    for (c, list) in differentials.iter().enumerate() {
        let mut resolved = Vec::new();
        for e in list {
            let at = || format!("differential entry {} -> {} out of column {c}", e.from, e.to);
            let map = resolve(&columns[c], &columns[c + 1], e, atlas, &at)?;
            resolved.push(Resolved { from: e.from, to: e.to, map });
        }
        out.push(resolved);
    }
    Ok(out)
}

/// `d∘d = 0` summand by summand, so failures can be reported with their
/// source and target summands.
fn check_squares(entries: &[Vec<Resolved>], label: &dyn Fn(usize, usize) -> String) -> Result<()> {
    for c in 0..entries.len().saturating_sub(1) {
        let mut paths: BTreeMap<(usize, usize), GradedMorphism> = BTreeMap::new();
        for e in &entries[c] {
            for f in entries[c + 1].iter().filter(|f| f.from == e.to) {
                let piece = f.map.compose(&e.map);
                let sum = match paths.remove(&(e.from, f.to)) {
                    Some(p) => p.add(&piece),
                    None => piece,
                };
                paths.insert((e.from, f.to), sum);
            }
        }
        for ((a, b), m) in paths {
            if let Some((n, _)) = m.support().next() {
                return Err(Error::NonzeroComposition(format!(
                    "d∘d from {} to {} in degree {n}",
                    label(c, a),
                    label(c + 2, b)
                )));
            }
        }
    }
    Ok(())
}

impl fmt::Display for DescentPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|col| {
                if col.is_empty() {
                    return "0".to_string();
                }
                let mut parts: Vec<(String, usize)> = Vec::new();
                for s in col {
                    match parts.last_mut() {
                        Some((n, k)) if *n == s.name => *k += 1,
                        _ => parts.push((s.name.clone(), 1)),
                    }
                }
                parts
                    .into_iter()
                    .map(|(n, k)| if k == 1 { format!("M({n})") } else { format!("{k} M({n})") })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "{}", cols.join(" -> "))
    }
}
