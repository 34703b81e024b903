use super::SynthError;
use crate::formula::{bits_msb_first, CircuitBuilder, GateRef, SkolemVector, Specification};

/// Constant in the documented size bound `C · |F| · m · 2^(2m)`.
pub const LEX_SIZE_CONSTANT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LexConfig {
    /// Refuse specifications with more outputs than this.
    pub max_outputs: usize,
}

impl Default for LexConfig {
    fn default() -> Self {
        LexConfig { max_outputs: 16 }
    }
}

/// `C · max(|F|, 1) · m · 2^(2m)`.
pub fn lex_size_bound(spec: &Specification) -> u128 {
    let m = spec.m() as u32;
    LEX_SIZE_CONSTANT as u128 * spec.matrix().size().max(1) as u128 * m as u128 * (1u128 << (2 * m))
}

/// Skolem functions selecting the lexicographically smallest satisfying
/// output (`Y_1` most significant), built from the specification alone:
/// `f_i = ⋁_{b: b_i = 1} F(X, b) ∧ ⋀_{b' < b} ¬F(X, b')`.
pub fn synth_lex(spec: &Specification, cfg: &LexConfig) -> Result<SkolemVector, SynthError> {
    let m = spec.m();
    if m > cfg.max_outputs {
        return Err(SynthError::TooManyOutputs {
            m,
            limit: cfg.max_outputs,
        });
    }
    let candidates: Vec<Vec<bool>> = (0..1u64 << m).map(|b| bits_msb_first(b, m)).collect();
    Ok(select_first(spec, &candidates))
}

/// For each input, the first candidate (in the given order) satisfying F.
pub(crate) fn select_first(spec: &Specification, candidates: &[Vec<bool>]) -> SkolemVector {
    let m = spec.m();
    let mut b = CircuitBuilder::new();
    let mut ones: Vec<Vec<GateRef>> = vec![Vec::new(); m];
    let mut seen_any = b.constant(false);
    for y in candidates {
        let f = spec.restrict_outputs_into(&mut b, y);
        let none_before = b.not(seen_any);
        let first = b.and(f, none_before);
        seen_any = b.or(seen_any, f);
        for (i, &bit) in y.iter().enumerate() {
            if bit {
                ones[i].push(first);
            }
        }
    }
    let outs: Vec<GateRef> = ones.into_iter().map(|g| b.or_all(g)).collect();
    let all = b.finish(outs);
    let psis = (0..m).map(|i| all.cone(i)).collect();
    SkolemVector::new(spec.inputs().to_vec(), spec.outputs().to_vec(), psis)
        .expect("functions read inputs only")
}
