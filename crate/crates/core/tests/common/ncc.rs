//! Normal-crossing compactifications paired with an independent
//! expression for the open variety.

use motivic::motive::VarietyExpr as V;
use motivic::weight::NCConfiguration;

pub fn points(k: usize) -> V {
    (0..k).fold(V::Empty, |acc, _| V::union(acc, V::Point))
}

pub fn punctured_line(k: usize) -> V {
    V::complement(V::Proj { n: 1 }, points(k))
}

/// `P^2` minus `k` lines in general position.
pub fn plane_minus_lines(k: usize) -> (NCConfiguration, V) {
    let mut cfg = NCConfiguration::new("P2", k);
    for i in 1..=k {
        cfg = cfg.stratum(&[i], "P1");
    }
    for i in 1..=k {
        for j in i + 1..=k {
            cfg = cfg.stratum(&[i, j], "pt");
        }
    }
    // The arrangement is the vertices plus each line minus its vertices.
    let vertices = k * (k.saturating_sub(1)) / 2;
    let arrangement = (0..k).fold(points(vertices), |acc, _| V::union(acc, punctured_line(k - 1)));
    (cfg, V::complement(V::Proj { n: 2 }, arrangement))
}

pub fn configurations() -> Vec<(&'static str, NCConfiguration, V)> {
    let mut out = vec![
        ("C*", NCConfiguration::new("P1", 2).stratum(&[1], "pt").stratum(&[2], "pt"), punctured_line(2)),
        ("A1", NCConfiguration::new("P1", 1).stratum(&[1], "pt"), V::Affine { n: 1 }),
        ("A2", NCConfiguration::new("P2", 1).stratum(&[1], "P1"), V::Affine { n: 2 }),
    ];
    for k in 1..=3 {
        let (cfg, e) = plane_minus_lines(k);
        out.push(("P2 minus lines", cfg, e));
    }
    out
}
