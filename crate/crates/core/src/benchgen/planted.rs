use rand::seq::index::sample;
use rand::Rng;

use super::BenchError;
use crate::formula::{bits_msb_first, Circuit, CircuitBuilder, GateRef, Specification, Var};
use crate::oracle::stream;

#[derive(Clone, Debug)]
pub struct PlantedCover {
    pub spec: Specification,
    /// Distinct targets `t_1..t_k`.
    pub targets: Vec<Vec<bool>>,
    /// Number of leading input bits the partition reads.
    pub prefix_bits: usize,
}

impl PlantedCover {
    /// Index of the cell holding `x`.
    pub fn cell(&self, x: &[bool]) -> usize {
        let d = self.prefix_bits;
        let prefix = x[..d].iter().fold(0usize, |a, &b| (a << 1) | b as usize);
        prefix * self.targets.len() >> d
    }
}

/// `F(x, y) = ⋁_j (y = t_j ∧ x ∈ cell_j)`, the cells splitting the
/// `2^d` prefixes of length `d = ⌈log2 k⌉` as evenly as possible
/// (prefix `p` goes to cell `⌊p·k / 2^d⌋`).
pub fn gen_planted_cover(n: usize, m: usize, k: usize, seed: u64) -> Result<PlantedCover, BenchError> {
    if k == 0 || m == 0 || m > 63 || n > 63 || (k as u128) > 1u128 << m || (k as u128) > 1u128 << n {
        return Err(BenchError::InvalidParams(format!(
            "need 1 <= k <= min(2^m, 2^n), got n={n}, m={m}, k={k}"
        )));
    }
    let d = (usize::BITS - (k - 1).leading_zeros()) as usize;
    let mut rng = stream(seed, "planted", 0);
    let targets: Vec<Vec<bool>> = if m <= 20 {
        sample(&mut rng, 1 << m, k)
            .into_iter()
            .map(|v| bits_msb_first(v as u64, m))
            .collect()
    } else {
        let mut t: Vec<Vec<bool>> = Vec::new();
        while t.len() < k {
            let v = bits_msb_first(rng.random::<u64>() & ((1 << m) - 1), m);
            if !t.contains(&v) {
                t.push(v);
            }
        }
        t
    };
    let xs: Vec<Var> = (1..=n as u32).map(Var::new).collect();
    let ys: Vec<Var> = (n as u32 + 1..=(n + m) as u32).map(Var::new).collect();
    let mut b = CircuitBuilder::new();
    let mut cells: Vec<Vec<GateRef>> = vec![Vec::new(); k];
    for p in 0..1usize << d {
        let g = b.equals_const(&xs[..d], &bits_msb_first(p as u64, d));
        cells[p * k >> d].push(g);
    }
    let terms: Vec<GateRef> = cells
        .into_iter()
        .zip(&targets)
        .map(|(prefixes, t)| {
            let inside = b.or_all(prefixes);
            let is_t = b.equals_const(&ys, t);
            b.and(inside, is_t)
        })
        .collect();
    let f = b.or_all(terms);
    let spec = Specification::from_circuit(xs, ys, b.finish1(f))?;
    Ok(PlantedCover {
        spec,
        targets,
        prefix_bits: d,
    })
}

/// A single-output specification `Y_1 ↔ g(X)` for a random circuit `g` of
/// exactly `gates` gates over `n` inputs, each gate reading earlier nodes.
/// Returns the specification and `g`.
pub fn gen_planted_function(n: usize, gates: usize, seed: u64) -> Result<(Specification, Circuit), BenchError> {
    if n == 0 || gates == 0 {
        return Err(BenchError::InvalidParams("need n >= 1 and at least one gate".into()));
    }
    let mut rng = stream(seed, "planted-function", 0);
    let xs: Vec<Var> = (1..=n as u32).map(Var::new).collect();
    let y = Var::new(n as u32 + 1);
    let mut raw = CircuitBuilder::raw();
    let mut nodes: Vec<GateRef> = xs.iter().map(|&v| raw.input(v)).collect();
    for j in 0..gates {
        // The newest node is always read so that no gate is dead.
        let last = nodes[nodes.len() - 1];
        let other = nodes[rng.random_range(0..nodes.len() - usize::from(j > 0 || n > 1))];
        let g = match rng.random_range(0..4) {
            0 => raw.not(last),
            1 => raw.and(other, last),
            2 => raw.or(other, last),
            _ => raw.xor(other, last),
        };
        nodes.push(g);
    }
    let target = raw.finish1(nodes[nodes.len() - 1]);
    let mut b = CircuitBuilder::new();
    let out = b.import1(&target, |b, v| b.input(v));
    let gy = b.input(y);
    let f = b.xnor(gy, out);
    let spec = Specification::from_circuit(xs, vec![y], b.finish1(f))?;
    Ok((spec, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cells_split_on_first_bit() {
        let pc = gen_planted_cover(3, 2, 2, 1).unwrap();
        assert_eq!(pc.prefix_bits, 1);
        for x in 0..8u64 {
            let xb = bits_msb_first(x, 3);
            let cell = pc.cell(&xb);
            assert_eq!(cell, xb[0] as usize);
            for (j, t) in pc.targets.iter().enumerate() {
                assert_eq!(pc.spec.eval(&xb, t), j == cell);
            }
        }
    }

    #[test]
    fn planted_function_has_exact_size() {
        for seed in 0..20 {
            let (_, g) = gen_planted_function(3, 4, seed).unwrap();
            assert_eq!(g.size(), 4);
        }
    }
}
