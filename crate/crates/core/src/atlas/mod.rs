//! Realization data: integral cohomology and Hodge numbers of smooth
//! projective atoms, named maps between their cohomologies, and the Kummer
//! surface dataset.

mod kummer;
mod record;

use std::collections::BTreeMap;

use crate::abelian::IntMatrix;
use crate::complex::{GradedGroup, GradedMorphism};
use crate::error::{Error, Result};
use crate::motive::{Poly, Realization};

pub use kummer::{
    exceptional_lattice_index, kummer_presentation, kummer_restriction, reed_muller_code, LatticeIndex,
    KUMMER_CURVES,
};
pub use record::AtomRecord;

/// The fixed built-in atoms together with small members of the `P<n>` and
/// `C<g>` families.
pub const STANDARD_ATOMS: &[&str] =
    &["pt", "P1", "P2", "P3", "P4", "C0", "C2", "C3", "E", "AbelianSurface", "K3", "Enriques"];

/// A homomorphism `H^*(source) -> H^*(target)` between atom cohomologies,
/// typically a restriction (pullback).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub morphism: GradedMorphism,
}

/// Built-in atoms and maps, plus user-supplied ones. User maps shadow
/// built-in map names; atom names are unique.
#[derive(Clone, Debug, Default)]
pub struct Atlas {
    atoms: BTreeMap<String, AtomRecord>,
    maps: BTreeMap<String, NamedMap>,
}

impl Atlas {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(&self, name: &str) -> Result<AtomRecord> {
        if let Some(r) = self.atoms.get(name) {
            return Ok(r.clone());
        }
        record::builtin(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn cohomology(&self, name: &str) -> Result<GradedGroup> {
        Ok(self.atom(name)?.cohomology)
    }

    pub fn user_atoms(&self) -> impl Iterator<Item = &AtomRecord> {
        self.atoms.values()
    }

    pub fn add_atom(&mut self, record: AtomRecord) -> Result<()> {
        if record::builtin(&record.name).is_some() || self.atoms.contains_key(&record.name) {
            return Err(Error::InvalidAtom { atom: record.name, reason: "name already registered".into() });
        }
        self.atoms.insert(record.name.clone(), record);
        Ok(())
    }

    pub fn add_map(&mut self, name: &str, map: NamedMap) -> Result<()> {
        let (s, t) = (self.cohomology(&map.source)?, self.cohomology(&map.target)?);
        if map.morphism.source() != &s || map.morphism.target() != &t {
            return Err(Error::InvalidMorphism(format!(
                "map `{name}` does not go from H^*({}) to H^*({})",
                map.source, map.target
            )));
        }
        self.maps.insert(name.to_string(), map);
        Ok(())
    }

    /// Resolves a map name. Built-in families:
    /// `id:X`, `point:X` (restriction to a point of the first component),
    /// `const:X` (pullback along `X -> pt`), `linear:Pn>Pm` (restriction to
    /// a linear subspace, `m <= n`), `kummer:E<i>` for `1 <= i <= 16`.
    pub fn map(&self, name: &str) -> Result<NamedMap> {
        if let Some(m) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let unknown = || Error::UnknownMap(name.to_string());
        let (family, arg) = name.split_once(':').ok_or_else(unknown)?;
        match family {
            "id" => {
                let h = self.cohomology(arg)?;
                Ok(NamedMap { source: arg.into(), target: arg.into(), morphism: GradedMorphism::identity(&h) })
            }
            "point" | "const" => {
                let r = self.atom(arg)?;
                let pt = self.cohomology("pt")?;
                let mut row = vec![0i64; r.components];
                let deg0 = if family == "point" {
                    row[0] = 1;
                    IntMatrix::from_rows(&[row])
                } else {
                    IntMatrix::from_rows(&vec![vec![1]; r.components])
                };
                let (s, t, src, dst) = if family == "point" {
                    (arg, "pt", r.cohomology, pt)
                } else {
                    ("pt", arg, pt, r.cohomology)
                };
                let morphism = GradedMorphism::from_matrices(src, dst, BTreeMap::from([(0, deg0)]))?;
                Ok(NamedMap { source: s.into(), target: t.into(), morphism })
            }
            "linear" => {
                let (a, b) = arg.split_once('>').ok_or_else(unknown)?;
                let m = match (crate::motive::builtin_projective(a), crate::motive::builtin_projective(b)) {
                    (Some(n), Some(m)) if m <= n => m,
                    _ => return Err(unknown()),
                };
                let (src, dst) = (self.cohomology(a)?, self.cohomology(b)?);
                let mats = (0..=m).map(|i| (2 * i as i32, IntMatrix::identity(1))).collect();
                Ok(NamedMap { source: a.into(), target: b.into(), morphism: GradedMorphism::from_matrices(src, dst, mats)? })
            }
            "kummer" => {
                let i: usize = arg.strip_prefix('E').and_then(|i| i.parse().ok()).ok_or_else(unknown)?;
                if !(1..=KUMMER_CURVES).contains(&i) || arg != format!("E{i}") {
                    return Err(unknown());
                }
                let row = kummer_restriction().select_rows(&[i - 1]);
                let (src, dst) = (self.cohomology("K3")?, self.cohomology("P1")?);
                let mats = BTreeMap::from([(0, IntMatrix::identity(1)), (2, row)]);
                Ok(NamedMap { source: "K3".into(), target: "P1".into(), morphism: GradedMorphism::from_matrices(src, dst, mats)? })
            }
            _ => Err(unknown()),
        }
    }

    /// The map used when a configuration leaves a restriction unspecified:
    /// identity, restriction to a point, or a linear restriction.
    pub fn default_restriction(&self, source: &str, target: &str) -> Result<NamedMap> {
        let name = if source == target {
            format!("id:{source}")
        } else if target == "pt" {
            format!("point:{source}")
        } else {
            format!("linear:{source}>{target}")
        };
        self.map(&name).map_err(|_| {
            Error::UnknownMap(format!("no restriction specified from `{source}` to `{target}` and no default applies"))
        })
    }
}

impl Realization for Atlas {
    fn poincare(&self, atom: &str) -> Result<Poly<u32>> {
        self.atom(atom)
            .map(|r| r.poincare())
            .map_err(|_| Error::MissingData { atom: atom.into(), what: "Betti numbers".into() })
    }

    fn hodge(&self, atom: &str) -> Result<Poly<(u32, u32)>> {
        self.atom(atom)
            .map(|r| r.hodge_poly())
            .map_err(|_| Error::MissingData { atom: atom.into(), what: "Hodge numbers".into() })
    }
}
