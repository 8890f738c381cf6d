//! Chain-level models of graded groups and their tensor products, with
//! homology computed directly from the differentials.

use motivic::abelian::{homology_at, AbMorphism, FinAbGroup, IntMatrix};
use motivic::complex::GradedGroup;
use num_bigint::BigInt;

/// A bounded complex of free groups `Z^{ranks[k]}` in degree `start + k`.
pub struct FreeModel {
    start: i32,
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
}

impl FreeModel {
    fn rank(&self, n: i32) -> usize {
        usize::try_from(n - self.start).ok().and_then(|k| self.ranks.get(k)).copied().unwrap_or(0)
    }

    fn d(&self, n: i32) -> IntMatrix {
        let k = n - self.start;
        if k >= 0 && (k as usize) < self.d.len() {
            self.d[k as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(n + 1), self.rank(n))
        }
    }

    pub fn homology(&self, n: i32) -> FinAbGroup {
        let free = |r| FinAbGroup::free(r);
        let before = AbMorphism::new(free(self.rank(n - 1)), free(self.rank(n)), self.d(n - 1)).unwrap();
        let after = AbMorphism::new(free(self.rank(n)), free(self.rank(n + 1)), self.d(n)).unwrap();
        homology_at(&before, &after).unwrap()
    }
}

/// `Z/d` in degree `n` is `Z --d--> Z` in degrees `n-1, n`; free
/// generators sit alone in degree `n`.
pub fn model(g: &GradedGroup) -> FreeModel {
    let lo = g.degrees().min().unwrap_or(0) - 1;
    let hi = g.degrees().max().unwrap_or(0);
    let mut ranks = Vec::new();
    let mut d = Vec::new();
    for n in lo..=hi {
        let here = g.get(n);
        let next = g.get(n + 1);
        // Basis in degree n: generators of G^n, then relation generators
        // for the torsion of G^{n+1}.
        ranks.push(here.num_generators() + next.torsion().len());
        if n < hi {
            let after = g.get(n + 1);
            let mut m = IntMatrix::zeros(after.num_generators() + g.get(n + 2).torsion().len(), ranks[ranks.len() - 1]);
            for (k, order) in after.torsion().iter().enumerate() {
                m[(after.rank() + k, here.num_generators() + k)] = order.clone();
            }
            d.push(m);
        }
    }
    FreeModel { start: lo, ranks, d }
}

/// Total complex of the tensor product, `d = d_A ⊗ 1 + (-1)^p 1 ⊗ d_B`.
pub fn tensor(a: &FreeModel, b: &FreeModel) -> FreeModel {
    let start = a.start + b.start;
    let end = a.start + a.ranks.len() as i32 + b.start + b.ranks.len() as i32 - 1;
    let blocks = |m: i32| -> Vec<(i32, i32, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for p in a.start..a.start + a.ranks.len() as i32 {
            let q = m - p;
            let size = a.rank(p) * b.rank(q);
            if size > 0 {
                out.push((p, q, offset));
                offset += size;
            }
        }
        out
    };
    let size = |m: i32| (a.start..a.start + a.ranks.len() as i32).map(|p| a.rank(p) * b.rank(m - p)).sum::<usize>();
    let ranks: Vec<usize> = (start..end).map(size).collect();
    let mut d = Vec::new();
    for m in start..end - 1 {
        let mut out = IntMatrix::zeros(size(m + 1), size(m));
        let targets = blocks(m + 1);
        let find = |p: i32| targets.iter().find(|(tp, _, _)| *tp == p).map(|t| t.2);
        for (p, q, col) in blocks(m) {
            if let Some(row) = find(p + 1) {
                out.set_block(row, col, &a.d(p).kronecker(&IntMatrix::identity(b.rank(q))));
            }
            if let Some(row) = find(p) {
                let sign = BigInt::from(if p.rem_euclid(2) == 0 { 1 } else { -1 });
                out.set_block(row, col, &IntMatrix::identity(a.rank(p)).kronecker(&b.d(q)).scale(&sign));
            }
        }
        d.push(out);
    }
    FreeModel { start, ranks, d }
}
