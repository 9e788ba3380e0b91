#![allow(dead_code)]

use chromlag::ribbon::{presets, Multigraph, RibbonGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Tetrahedron followed by `steps` blow-ups at random vertices.
pub fn random_blowup(rng: &mut ChaCha8Rng, steps: usize) -> RibbonGraph {
    let mut g = presets::tetrahedron();
    for _ in 0..steps {
        let v = rng.gen_range(0..g.num_vertices());
        g = g.blow_up(v).unwrap();
    }
    g
}

/// Proper colorings of a multigraph with `k` colors, by plain enumeration.
pub fn count_colorings(g: &Multigraph, k: u64) -> u64 {
    fn rec(g: &Multigraph, k: u64, colors: &mut Vec<u64>) -> u64 {
        let v = colors.len();
        if v == g.vertex_count {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            let clash = g.edges.iter().any(|&(a, b)| {
                (a == v && b < v && colors[b] == c) || (b == v && a < v && colors[a] == c) || (a == v && b == v)
            });
            if !clash {
                colors.push(c);
                total += rec(g, k, colors);
                colors.pop();
            }
        }
        total
    }
    rec(g, k, &mut Vec::new())
}

/// Face colorings by points of the projective line over F_q, modulo PGL2.
pub fn moduli_count_oracle(g: &RibbonGraph, q: u64) -> (u64, u64) {
    let n = count_colorings(&g.dual(), q + 1);
    let order = q * q * q - q;
    (n / order, n % order)
}
