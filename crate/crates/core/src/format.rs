//! JSON input documents and the built-in demo datasets.
//!
//! Matrices are arrays of rows. A graded group is an object keyed by degree
//! with `{"rank": r, "torsion": [d, ...]}` values; a graded map is an object
//! keyed by degree with a matrix per degree, absent degrees being zero.
//! Map matrices act on the canonical generators of each group (free
//! generators first, then torsion by increasing order).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::abelian::{FinAbGroup, IntMatrix};
use crate::atlas::{kummer_presentation, Atlas, AtomRecord, NamedMap};
use crate::blowup::{blowup_p2_point, blowup_p3_line, ChowData, ChowLevel, SquareMaps};
use crate::complex::{AbComplex, GradedGroup, GradedMorphism};
use crate::error::{Error, Result};
use crate::motive::VarietyExpr;
use crate::weight::{build_from_ncc, mayer_vietoris_closed, open_closed, product, DescentPresentation, Entry, NCConfiguration};

/// Parses a JSON document; failures carry line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let msg = e.to_string();
        let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
        Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
    })
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    fn group(&self) -> Result<FinAbGroup> {
        FinAbGroup::new(self.rank, self.torsion.iter().map(|&d| BigInt::from(d)).collect())
    }
}

fn graded(spec: &BTreeMap<i32, GroupSpec>) -> Result<GradedGroup> {
    let mut out = GradedGroup::zero();
    for (&n, g) in spec {
        out.set(n, g.group()?);
    }
    Ok(out)
}

/// A matrix with a known shape; `[]` is accepted for any shape with no rows
/// and is read as zero when rows are expected.
fn matrix(rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<IntMatrix> {
    let (r, c) = shape;
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(r, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        let found = rows.iter().map(|row| row.len().to_string()).collect::<Vec<_>>().join(", ");
        return Err(Error::Dimension(format!("{what}: expected {r} rows of length {c}, found rows of length [{found}]")));
    }
    Ok(IntMatrix::from_rows(rows))
}

fn graded_map(
    source: &GradedGroup,
    target: &GradedGroup,
    degrees: &BTreeMap<i32, Vec<Vec<i64>>>,
    what: &str,
) -> Result<GradedMorphism> {
    let mut mats = BTreeMap::new();
    for (&n, rows) in degrees {
        let shape = (target.get(n).num_generators(), source.get(n).num_generators());
        mats.insert(n, matrix(rows, shape, &format!("{what}, degree {n}"))?);
    }
    GradedMorphism::from_matrices(source.clone(), target.clone(), mats)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub name: String,
    pub dim: u32,
    #[serde(default = "one")]
    pub components: usize,
    pub cohomology: BTreeMap<i32, GroupSpec>,
    /// `[p, q, h^{p,q}]` triples; absent pairs are zero.
    pub hodge: Vec<[u64; 3]>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degrees: BTreeMap<i32, Vec<Vec<i64>>>,
}

/// User atoms and named maps.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasFile {
    #[serde(default)]
    pub atoms: Vec<AtomSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

impl AtlasFile {
    /// Registers the atoms, then the maps, in file order.
    pub fn load_into(&self, atlas: &mut Atlas) -> Result<()> {
        for a in &self.atoms {
            let hodge = a.hodge.iter().map(|&[p, q, h]| ((p as u32, q as u32), h)).collect();
            atlas.add_atom(AtomRecord::new(&a.name, a.dim, a.components, graded(&a.cohomology)?, hodge)?)?;
        }
        for m in &self.maps {
            let (s, t) = (atlas.cohomology(&m.source)?, atlas.cohomology(&m.target)?);
            let morphism = graded_map(&s, &t, &m.degrees, &format!("map `{}`", m.name))?;
            atlas.add_map(&m.name, NamedMap { source: m.source.clone(), target: m.target.clone(), morphism })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub subset: Vec<usize>,
    pub atom: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionSpec {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub map: String,
}

/// A presentation document, tagged by `kind`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PresentationSpec {
    Presentation {
        dim: u32,
        columns: Vec<Vec<String>>,
        #[serde(default)]
        differentials: Vec<Vec<Entry>>,
    },
    Ncc {
        ambient: String,
        components: usize,
        strata: Vec<StratumSpec>,
        #[serde(default)]
        maps: Vec<RestrictionSpec>,
    },
    OpenClosed {
        complete: Box<PresentationSpec>,
        closed: Box<PresentationSpec>,
        restriction: Vec<Vec<Entry>>,
    },
    MayerVietoris {
        first: Box<PresentationSpec>,
        second: Box<PresentationSpec>,
        intersection: Box<PresentationSpec>,
        restrict_first: Vec<Vec<Entry>>,
        restrict_second: Vec<Vec<Entry>>,
    },
    Product {
        left: Box<PresentationSpec>,
        right: Box<PresentationSpec>,
    },
    Demo {
        name: String,
    },
}

impl PresentationSpec {
    pub fn build(&self, atlas: &Atlas) -> Result<DescentPresentation> {
        match self {
            PresentationSpec::Presentation { dim, columns, differentials } => {
                DescentPresentation::from_entries(*dim, columns.clone(), differentials.clone(), atlas)
            }
            PresentationSpec::Ncc { ambient, components, strata, maps } => {
                let mut cfg = NCConfiguration::new(ambient, *components);
                for s in strata {
                    if cfg.strata.contains_key(&s.subset) {
                        return Err(Error::Validation(format!("stratum {:?} given twice", s.subset)));
                    }
                    cfg = cfg.stratum(&s.subset, &s.atom);
                }
                for m in maps {
                    cfg = cfg.restriction(&m.from, &m.to, &m.map);
                }
                build_from_ncc(&cfg, atlas)
            }
            PresentationSpec::OpenClosed { complete, closed, restriction } => {
                let (x, t) = (complete.build(atlas)?, closed.build(atlas)?);
                let r = x.map_to(&t, restriction, atlas)?;
                open_closed(&x, &t, &r)
            }
            PresentationSpec::MayerVietoris { first, second, intersection, restrict_first, restrict_second } => {
                let (a, b, ab) = (first.build(atlas)?, second.build(atlas)?, intersection.build(atlas)?);
                let ra = a.map_to(&ab, restrict_first, atlas)?;
                let rb = b.map_to(&ab, restrict_second, atlas)?;
                mayer_vietoris_closed(&a, &b, &ab, &ra, &rb)
            }
            PresentationSpec::Product { left, right } => product(&left.build(atlas)?, &right.build(atlas)?),
            PresentationSpec::Demo { name } => demo_presentation(name, atlas),
        }
    }
}

/// A bounded complex of graded groups: `columns[k]` sits in column
/// `start + k`, `differentials[k]` leaves it.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default)]
    pub start: i32,
    pub columns: Vec<BTreeMap<i32, GroupSpec>>,
    #[serde(default)]
    pub differentials: Vec<BTreeMap<i32, Vec<Vec<i64>>>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<AbComplex> {
        let columns = self.columns.iter().map(graded).collect::<Result<Vec<_>>>()?;
        if self.differentials.len() > columns.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} differentials for {} columns",
                self.differentials.len(),
                columns.len()
            )));
        }
        let mut diffs = Vec::new();
        for k in 0..columns.len().saturating_sub(1) {
            let empty = BTreeMap::new();
            let degrees = self.differentials.get(k).unwrap_or(&empty);
            let what = format!("differential out of column {}", self.start + k as i32);
            diffs.push(graded_map(&columns[k], &columns[k + 1], degrees, &what)?);
        }
        AbComplex::new(self.start, columns, diffs)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareSpec {
    pub f: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
    pub i: Vec<Vec<i64>>,
    pub j: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChowLevelSpec {
    pub p: u32,
    #[serde(default)]
    pub x: Vec<String>,
    #[serde(default)]
    pub y: Vec<String>,
    #[serde(default)]
    pub x_prime: Vec<String>,
    #[serde(default)]
    pub y_prime: Vec<String>,
    pub push: SquareSpec,
    #[serde(default)]
    pub pull: Option<SquareSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChowFile {
    pub levels: Vec<ChowLevelSpec>,
}

impl ChowFile {
    pub fn build(&self) -> Result<ChowData> {
        let mut levels = Vec::new();
        for l in &self.levels {
            let (x, y, xp, yp) = (l.x.len(), l.y.len(), l.x_prime.len(), l.y_prime.len());
            let p = l.p;
            let at = |name: &str| format!("A_{p}: {name}");
            let push = SquareMaps {
                f: matrix(&l.push.f, (x, xp), &at("f_*"))?,
                g: matrix(&l.push.g, (y, yp), &at("g_*"))?,
                i: matrix(&l.push.i, (x, y), &at("i_*"))?,
                j: matrix(&l.push.j, (xp, yp), &at("j_*"))?,
            };
            let pull = match &l.pull {
                None => None,
                Some(s) => Some(SquareMaps {
                    f: matrix(&s.f, (xp, x), &at("f^*"))?,
                    g: matrix(&s.g, (yp, y), &at("g^*"))?,
                    i: matrix(&s.i, (y, x), &at("i^*"))?,
                    j: matrix(&s.j, (yp, xp), &at("j^*"))?,
                }),
            };
            levels.push(ChowLevel {
                p,
                x: l.x.clone(),
                y: l.y.clone(),
                x_prime: l.x_prime.clone(),
                y_prime: l.y_prime.clone(),
                push,
                pull,
            });
        }
        ChowData::new(levels)
    }
}

/// Names accepted after `demo:`.
pub const DEMOS: &[&str] = &["cstar", "affine-plane", "nodal-cubic", "kummer", "kummer-x-enriques"];

/// Chow datasets accepted after `demo:` by the blow-up checker.
pub const CHOW_DEMOS: &[&str] = &["blowup-p2-point", "blowup-p3-line"];

fn unknown_demo(name: &str, known: &[&str]) -> Error {
    Error::Validation(format!("unknown demo `{name}`; known: {}", known.join(", ")))
}

/// The variety behind a demo, as an expression.
pub fn demo_expr(name: &str) -> Result<VarietyExpr> {
    use VarietyExpr as V;
    let points = |k: usize| (1..k).fold(V::Point, |acc, _| V::union(acc, V::Point));
    let kummer = || {
        let curves = (1..16).fold(V::Proj { n: 1 }, |acc, _| V::union(acc, V::Proj { n: 1 }));
        V::union(V::complement(V::atom("K3", 2), curves), points(16))
    };
    Ok(match name {
        "cstar" => V::complement(V::Proj { n: 1 }, points(2)),
        "affine-plane" => V::Affine { n: 2 },
        "nodal-cubic" => V::union(V::complement(V::Proj { n: 1 }, points(2)), V::Point),
        "kummer" => kummer(),
        "kummer-x-enriques" => V::product(kummer(), V::atom("Enriques", 2)),
        _ => return Err(unknown_demo(name, DEMOS)),
    })
}

fn single(name: &str, atlas: &Atlas) -> Result<DescentPresentation> {
    let dim = atlas.atom(name)?.dim;
    DescentPresentation::from_entries(dim, vec![vec![name.into()]], vec![], atlas)
}

/// The descent presentation behind a demo.
pub fn demo_presentation(name: &str, atlas: &Atlas) -> Result<DescentPresentation> {
    match name {
        "cstar" => build_from_ncc(&NCConfiguration::new("P1", 2).stratum(&[1], "pt").stratum(&[2], "pt"), atlas),
        "affine-plane" => {
            let (p2, p1) = (single("P2", atlas)?, single("P1", atlas)?);
            let r = p2.map_to(&p1, &[vec![Entry::new(0, 0, 1, "linear:P2>P1")]], atlas)?;
            open_closed(&p2, &p1, &r)
        }
        "nodal-cubic" => {
            let entries = vec![
                Entry::new(0, 0, 1, "point:P1"),
                Entry::new(0, 1, 1, "point:P1"),
                Entry::new(1, 0, -1, "id:pt"),
                Entry::new(1, 1, -1, "id:pt"),
            ];
            let columns = vec![vec!["P1".into(), "pt".into()], vec!["pt".into(), "pt".into()]];
            DescentPresentation::from_entries(1, columns, vec![entries], atlas)
        }
        "kummer" => kummer_presentation(atlas),
        "kummer-x-enriques" => product(&kummer_presentation(atlas)?, &single("Enriques", atlas)?),
        _ => Err(unknown_demo(name, DEMOS)),
    }
}

pub fn demo_chow(name: &str) -> Result<ChowData> {
    match name {
        "blowup-p2-point" => Ok(blowup_p2_point()),
        "blowup-p3-line" => Ok(blowup_p3_line()),
        _ => Err(unknown_demo(name, CHOW_DEMOS)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::class_of;
    use crate::weight::{virtual_betti_consistency, weight_table, Coefficients};

    #[test]
    fn demos_agree_with_their_classes() {
        let atlas = Atlas::new();
        for name in DEMOS {
            let w = demo_presentation(name, &atlas).unwrap();
            let c = class_of(&demo_expr(name).unwrap()).unwrap();
            virtual_betti_consistency(&w, &c, &atlas).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(class_of(&demo_expr("nodal-cubic").unwrap()).unwrap().to_string(), "L");
    }

    #[test]
    fn presentation_documents() {
        let atlas = Atlas::new();
        let text = r#"{
            "kind": "open_closed",
            "complete": {"kind": "presentation", "dim": 1, "columns": [["P1"]]},
            "closed": {"kind": "presentation", "dim": 0, "columns": [["pt"]]},
            "restriction": [[{"from": 0, "to": 0, "map": "point:P1"}]]
        }"#;
        let w = parse::<PresentationSpec>(text).unwrap().build(&atlas).unwrap();
        let t = weight_table(&w, Coefficients::Integers);
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.entry(0, 2), FinAbGroup::free(1));

        let ncc = r#"{"kind": "ncc", "ambient": "P1", "components": 2,
            "strata": [{"subset": [1], "atom": "pt"}, {"subset": [2], "atom": "pt"}]}"#;
        let w = parse::<PresentationSpec>(ncc).unwrap().build(&atlas).unwrap();
        assert_eq!(w.to_string(), "M(P1) -> 2 M(pt)");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse::<PresentationSpec>("{\n  \"kind\": \"presentation\",\n  \"dim\": x\n}").unwrap_err();
        assert!(err.is_parse());
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse::<PresentationSpec>(r#"{"kind": "nope"}"#).unwrap_err();
        assert!(err.is_parse());
    }

    #[test]
    fn atlas_documents() {
        let text = r#"{
            "atoms": [{"name": "TwoPoints", "dim": 0, "components": 2,
                       "cohomology": {"0": {"rank": 2}}, "hodge": [[0, 0, 2]]}],
            "maps": [{"name": "first", "source": "TwoPoints", "target": "pt", "degrees": {"0": [[1, 0]]}}]
        }"#;
        let mut atlas = Atlas::new();
        parse::<AtlasFile>(text).unwrap().load_into(&mut atlas).unwrap();
        assert_eq!(atlas.atom("TwoPoints").unwrap().components, 2);
        assert!(atlas.map("first").is_ok());

        let bad = r#"{"maps": [{"name": "m", "source": "pt", "target": "P1", "degrees": {"0": [[1, 2]]}}]}"#;
        let err = parse::<AtlasFile>(bad).unwrap().load_into(&mut Atlas::new()).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)), "{err}");
    }

    #[test]
    fn complex_documents() {
        let text = r#"{"start": 0,
            "columns": [{"0": {"rank": 1}}, {"0": {"rank": 1}}, {"0": {"torsion": [2]}}],
            "differentials": [{"0": [[2]]}, {"0": [[1]]}]}"#;
        let c = parse::<ComplexFile>(text).unwrap().build().unwrap();
        assert!(c.is_acyclic());
        let bad = r#"{"columns": [{"0": {"rank": 1}}, {"0": {"rank": 1}}, {"0": {"rank": 1}}],
            "differentials": [{"0": [[1]]}, {"0": [[1]]}]}"#;
        assert!(matches!(parse::<ComplexFile>(bad).unwrap().build(), Err(Error::NonzeroComposition(_))));
    }

    #[test]
    fn chow_documents() {
        let text = r#"{"levels": [
            {"p": 0, "x": ["pt"], "y": ["pt"], "x_prime": ["pt"], "y_prime": ["pt"],
             "push": {"f": [[1]], "g": [[1]], "i": [[1]], "j": [[1]]}},
            {"p": 1, "x": ["h"], "x_prime": ["h", "e"], "y_prime": ["E"],
             "push": {"f": [[1, 0]], "g": [], "i": [[]], "j": [[0], [1]]}}
        ]}"#;
        let data = parse::<ChowFile>(text).unwrap().build().unwrap();
        assert_eq!(data.levels().len(), 2);
        assert_eq!(data.levels()[1].push, demo_chow("blowup-p2-point").unwrap().levels()[1].push);
    }
}
