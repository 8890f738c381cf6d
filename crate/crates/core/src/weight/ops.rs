use crate::complex::{tensor_complex, AbComplex, ChainMap};
use crate::error::{Error, Result};

use super::presentation::{DescentPresentation, Summand};

fn check_endpoints(map: &ChainMap, source: &DescentPresentation, target: &DescentPresentation, what: &str) -> Result<()> {
    if map.source() != source.realization() || map.target() != target.realization() {
        return Err(Error::NotChainMap(format!("{what} does not connect the given presentations")));
    }
    Ok(())
}

/// `cone(f)[-1]`: column `i` is `source^i + target^{i-1}`.
fn fiber(f: &ChainMap, dim: u32, source_cols: Vec<Vec<Summand>>, target: &DescentPresentation) -> Result<DescentPresentation> {
    let realization: AbComplex = f.cone().shift(-1);
    let len = source_cols.len().max(target.columns().len() + 1);
    let mut columns = source_cols;
    columns.resize(len, Vec::new());
    for (i, col) in target.columns().iter().enumerate() {
        columns[i + 1].extend(col.iter().cloned());
    }
    DescentPresentation::from_realization(dim, columns, &realization)
}

/// `W(X - T)` from `W(X)`, `W(T)` and the restriction `W(X) -> W(T)`, as
/// the shifted cone of the restriction.
pub fn open_closed(
    complete: &DescentPresentation,
    closed: &DescentPresentation,
    restriction: &ChainMap,
) -> Result<DescentPresentation> {
    check_endpoints(restriction, complete, closed, "restriction")?;
    fiber(restriction, complete.dim(), complete.columns().to_vec(), closed)
}

/// `W(A ∪ B)` for closed `A`, `B`, as the shifted cone of
/// `W(A) + W(B) -> W(A ∩ B)`, `(a, b) -> r_A(a) - r_B(b)`.
pub fn mayer_vietoris_closed(
    a: &DescentPresentation,
    b: &DescentPresentation,
    ab: &DescentPresentation,
    restrict_a: &ChainMap,
    restrict_b: &ChainMap,
) -> Result<DescentPresentation> {
    check_endpoints(restrict_a, a, ab, "restriction from the first part")?;
    check_endpoints(restrict_b, b, ab, "restriction from the second part")?;
    let (_, _, projections) = AbComplex::direct_sum(&[a.realization(), b.realization()]);
    let diff = restrict_a.compose(&projections[0]).add(&restrict_b.compose(&projections[1]).neg());
    let len = a.columns().len().max(b.columns().len());
    let mut cols: Vec<Vec<Summand>> = vec![Vec::new(); len];
    for p in [a, b] {
        for (i, col) in p.columns().iter().enumerate() {
            cols[i].extend(col.iter().cloned());
        }
    }
    fiber(&diff, a.dim().max(b.dim()), cols, ab)
}

fn product_name(a: &str, b: &str) -> String {
    match (a, b) {
        ("pt", _) => b.to_string(),
        (_, "pt") => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

/// `W(X × Y) = W(X) ⊗ W(Y)`, realized by the Künneth tensor product.
pub fn product(x: &DescentPresentation, y: &DescentPresentation) -> Result<DescentPresentation> {
    let realization = tensor_complex(x.realization(), y.realization());
    let len = (x.columns().len() + y.columns().len()).saturating_sub(1);
    let mut columns: Vec<Vec<Summand>> = vec![Vec::new(); len];
    for (i, ci) in x.columns().iter().enumerate() {
        for (j, dj) in y.columns().iter().enumerate() {
            for s in ci {
                for t in dj {
                    columns[i + j].push(Summand { name: product_name(&s.name, &t.name), dim: s.dim + t.dim });
                }
            }
        }
    }
    DescentPresentation::from_realization(x.dim() + y.dim(), columns, &realization)
}
