use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::class::{builtin_projective, MotiveClass};

/// Constructive description of a variety. Closedness of complement parts
/// and local triviality of fibrations are asserted by the author of the
/// expression, not checked.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VarietyExpr {
    /// A smooth projective atom. `dim` may be omitted when an atlas is
    /// available to supply it.
    Atom {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<u32>,
    },
    Empty,
    Point,
    Affine {
        n: u32,
    },
    Proj {
        n: u32,
    },
    #[serde(alias = "disjoint_union")]
    Union {
        left: Box<VarietyExpr>,
        right: Box<VarietyExpr>,
    },
    Product {
        left: Box<VarietyExpr>,
        right: Box<VarietyExpr>,
    },
    Complement {
        ambient: Box<VarietyExpr>,
        closed: Box<VarietyExpr>,
    },
    Cone {
        base: Box<VarietyExpr>,
    },
    ProjBundle {
        base: Box<VarietyExpr>,
        rank: u32,
    },
    Blowup {
        ambient: Box<VarietyExpr>,
        center: Box<VarietyExpr>,
        codim: u32,
    },
    Fibration {
        fiber: Box<VarietyExpr>,
        base: Box<VarietyExpr>,
    },
}

/// Dimension bookkeeping. The empty variety is compatible with every
/// dimension; atoms without a declared dimension are `Unknown` and skip the
/// checks they take part in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dimension {
    Empty,
    Known(u32),
    Unknown,
}

impl Dimension {
    fn plus(self, other: Dimension) -> Dimension {
        match (self, other) {
            (Dimension::Empty, _) | (_, Dimension::Empty) => Dimension::Empty,
            (Dimension::Known(a), Dimension::Known(b)) => Dimension::Known(a + b),
            _ => Dimension::Unknown,
        }
    }

    fn max(self, other: Dimension) -> Dimension {
        match (self, other) {
            (Dimension::Empty, d) | (d, Dimension::Empty) => d,
            (Dimension::Known(a), Dimension::Known(b)) => Dimension::Known(a.max(b)),
            _ => Dimension::Unknown,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "-inf"),
            Dimension::Known(d) => write!(f, "{d}"),
            Dimension::Unknown => write!(f, "?"),
        }
    }
}

fn boxed(e: VarietyExpr) -> Box<VarietyExpr> {
    Box::new(e)
}

impl VarietyExpr {
    pub fn atom(name: &str, dim: u32) -> Self {
        VarietyExpr::Atom { name: name.to_string(), dim: Some(dim) }
    }

    pub fn union(a: VarietyExpr, b: VarietyExpr) -> Self {
        VarietyExpr::Union { left: boxed(a), right: boxed(b) }
    }

    pub fn product(a: VarietyExpr, b: VarietyExpr) -> Self {
        VarietyExpr::Product { left: boxed(a), right: boxed(b) }
    }

    pub fn complement(ambient: VarietyExpr, closed: VarietyExpr) -> Self {
        VarietyExpr::Complement { ambient: boxed(ambient), closed: boxed(closed) }
    }

    pub fn cone(base: VarietyExpr) -> Self {
        VarietyExpr::Cone { base: boxed(base) }
    }

    pub fn proj_bundle(base: VarietyExpr, rank: u32) -> Self {
        VarietyExpr::ProjBundle { base: boxed(base), rank }
    }

    pub fn blowup(ambient: VarietyExpr, center: VarietyExpr, codim: u32) -> Self {
        VarietyExpr::Blowup { ambient: boxed(ambient), center: boxed(center), codim }
    }

    pub fn fibration(fiber: VarietyExpr, base: VarietyExpr) -> Self {
        VarietyExpr::Fibration { fiber: boxed(fiber), base: boxed(base) }
    }

    /// Checks dimension bookkeeping and returns the dimension.
    pub fn dimension(&self) -> Result<Dimension> {
        use Dimension::*;
        Ok(match self {
            VarietyExpr::Atom { name, dim } => match (dim, builtin_projective(name)) {
                (Some(d), Some(n)) if *d != n => {
                    return Err(Error::Dimension(format!("atom `{name}` declared with dimension {d}, expected {n}")))
                }
                (Some(d), _) => Known(*d),
                (None, Some(n)) => Known(n),
                (None, None) => Unknown,
            },
            VarietyExpr::Empty => Empty,
            VarietyExpr::Point => Known(0),
            VarietyExpr::Affine { n } | VarietyExpr::Proj { n } => Known(*n),
            VarietyExpr::Union { left, right } => left.dimension()?.max(right.dimension()?),
            VarietyExpr::Product { left, right } => left.dimension()?.plus(right.dimension()?),
            VarietyExpr::Fibration { fiber, base } => fiber.dimension()?.plus(base.dimension()?),
            VarietyExpr::Complement { ambient, closed } => {
                let (x, y) = (ambient.dimension()?, closed.dimension()?);
                match (x, y) {
                    (Known(a), Known(b)) if b > a => {
                        return Err(Error::Dimension(format!(
                            "closed part of dimension {b} inside ambient of dimension {a}"
                        )))
                    }
                    (Empty, Known(b)) => {
                        return Err(Error::Dimension(format!("closed part of dimension {b} inside the empty variety")))
                    }
                    _ => x,
                }
            }
            VarietyExpr::Cone { base } => match base.dimension()? {
                Empty => Known(0),
                d => d.plus(Known(1)),
            },
            VarietyExpr::ProjBundle { base, rank } => {
                if *rank == 0 {
                    return Err(Error::Dimension("projective bundle of rank 0".into()));
                }
                base.dimension()?.plus(Known(rank - 1))
            }
            VarietyExpr::Blowup { ambient, center, codim } => {
                if *codim == 0 {
                    return Err(Error::Dimension("blow-up with codimension 0".into()));
                }
                let (x, y) = (ambient.dimension()?, center.dimension()?);
                if let (Known(a), Known(b)) = (x, y) {
                    if b + codim != a {
                        return Err(Error::Dimension(format!(
                            "center of dimension {b} and codimension {codim} in ambient of dimension {a}"
                        )));
                    }
                }
                if let (Empty, Known(_)) = (x, y) {
                    return Err(Error::Dimension("blow-up of the empty variety along a nonempty center".into()));
                }
                x
            }
        })
    }

    /// Fills in missing atom dimensions.
    pub fn resolve_dims(&mut self, lookup: &impl Fn(&str) -> Result<u32>) -> Result<()> {
        match self {
            VarietyExpr::Atom { name, dim } => {
                let known = lookup(name)?;
                match dim {
                    Some(d) if *d != known => {
                        return Err(Error::Dimension(format!(
                            "atom `{name}` declared with dimension {d} but has dimension {known}"
                        )))
                    }
                    _ => *dim = Some(known),
                }
            }
            VarietyExpr::Empty | VarietyExpr::Point | VarietyExpr::Affine { .. } | VarietyExpr::Proj { .. } => {}
            VarietyExpr::Union { left: a, right: b }
            | VarietyExpr::Product { left: a, right: b }
            | VarietyExpr::Complement { ambient: a, closed: b }
            | VarietyExpr::Blowup { ambient: a, center: b, .. }
            | VarietyExpr::Fibration { fiber: a, base: b } => {
                a.resolve_dims(lookup)?;
                b.resolve_dims(lookup)?;
            }
            VarietyExpr::Cone { base } | VarietyExpr::ProjBundle { base, .. } => base.resolve_dims(lookup)?,
        }
        Ok(())
    }
}

/// `[X]` by structural recursion over the scissor, product and blow-up
/// rules. Dimension bookkeeping is checked first.
pub fn class_of(e: &VarietyExpr) -> Result<MotiveClass> {
    e.dimension()?;
    Ok(class_rec(e))
}

fn class_rec(e: &VarietyExpr) -> MotiveClass {
    let l = MotiveClass::lefschetz(1);
    let one = MotiveClass::one();
    match e {
        VarietyExpr::Atom { name, .. } => MotiveClass::atom(name),
        VarietyExpr::Empty => MotiveClass::zero(),
        VarietyExpr::Point => one,
        VarietyExpr::Affine { n } => MotiveClass::lefschetz(*n),
        VarietyExpr::Proj { n } => MotiveClass::projective(*n),
        VarietyExpr::Union { left, right } => &class_rec(left) + &class_rec(right),
        VarietyExpr::Product { left, right } => &class_rec(left) * &class_rec(right),
        VarietyExpr::Fibration { fiber, base } => &class_rec(fiber) * &class_rec(base),
        VarietyExpr::Complement { ambient, closed } => &class_rec(ambient) - &class_rec(closed),
        VarietyExpr::Cone { base } => {
            let y = class_rec(base);
            &(&one + &(&y * &l)) - &y
        }
        VarietyExpr::ProjBundle { base, rank } => &class_rec(base) * &MotiveClass::projective(rank - 1),
        VarietyExpr::Blowup { ambient, center, codim } => {
            let y = class_rec(center);
            &(&class_rec(ambient) - &y) + &(&y * &MotiveClass::projective(codim - 1))
        }
    }
}
