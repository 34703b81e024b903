use std::collections::HashMap;

use super::interpolant::{extract_interpolant, refute_instance, InterpolationInstance};
use super::proof::ProofOutcome;
use super::InterpError;
use crate::formula::{
    assert_value, encode_gates, Circuit, CircuitBuilder, Cnf, Encoded, GateRef, SkolemVector, Specification, Var,
};
use crate::oracle::solver::Limits;

#[derive(Clone, Debug)]
pub struct SlivovskyResult {
    pub vector: SkolemVector,
    /// Per output, in output order.
    pub interpolant_sizes: Vec<usize>,
    pub proof_lengths: Vec<usize>,
}

/// Builds Skolem functions from the last output to the first. For output
/// `i`, with the later outputs replaced by their functions, `φ0` is `¬F` with
/// `Y_i = 0` and `φ1` is `¬F` with `Y_i = 1`, each over its own Tseitin
/// auxiliaries and sharing `C = X ∪ Y_{<i}`; the interpolant of a refutation
/// of `φ0 ∧ φ1` is the function for `Y_i`. A satisfiable pair means some
/// `(x, y_{<i})` admits no value for `Y_i`.
pub fn slivovsky_synth(spec: &Specification, limits: &Limits) -> Result<SlivovskyResult, InterpError> {
    let m = spec.m();
    let outputs = spec.outputs();
    let mut psis: Vec<Option<Circuit>> = vec![None; m];
    let mut sizes = vec![0; m];
    let mut lengths = vec![0; m];
    for i in (0..m).rev() {
        let c: Vec<Var> = spec.inputs().iter().chain(&outputs[..i]).copied().collect();
        let g0 = with_bit_fixed(spec, &psis, i, false);
        let g1 = with_bit_fixed(spec, &psis, i, true);
        let base = spec.num_vars();
        let (phi0, a) = negated(&g0, base);
        let (phi1, b) = negated(&g1, phi0.num_vars().max(base));
        let inst = InterpolationInstance::new(phi0, phi1, a, b, c.clone())?;
        match refute_instance(&inst, limits)? {
            ProofOutcome::Sat(model) => {
                return Err(InterpError::Inapplicable {
                    bit: i + 1,
                    witness: model.project(&c),
                })
            }
            ProofOutcome::Unsat(proof) => {
                let interp = extract_interpolant(&inst, &proof)?;
                sizes[i] = interp.size();
                lengths[i] = proof.len();
                psis[i] = Some(interp);
            }
        }
    }
    let vector = SkolemVector::new(
        spec.inputs().to_vec(),
        outputs.to_vec(),
        psis.into_iter().map(|p| p.expect("every output processed")).collect(),
    )?;
    Ok(SlivovskyResult {
        vector,
        interpolant_sizes: sizes,
        proof_lengths: lengths,
    })
}

/// `F` over `X ∪ Y_{<i}` with `Y_i = bit` and each later output computed
/// by its function.
fn with_bit_fixed(spec: &Specification, psis: &[Option<Circuit>], i: usize, bit: bool) -> Circuit {
    let outputs = spec.outputs();
    let mut b = CircuitBuilder::new();
    let mut bound: HashMap<Var, GateRef> = HashMap::new();
    let yi = b.constant(bit);
    bound.insert(outputs[i], yi);
    for j in i + 1..outputs.len() {
        let psi = psis[j].as_ref().expect("later outputs come first");
        let g = b.import1(psi, |b, v| bound.get(&v).copied().unwrap_or_else(|| b.input(v)));
        bound.insert(outputs[j], g);
    }
    let out = b.import1(spec.matrix(), |b, v| bound.get(&v).copied().unwrap_or_else(|| b.input(v)));
    b.finish1(out)
}

/// Tseitin CNF of `¬g`, auxiliaries numbered above `base`. Returns the CNF
/// and its auxiliaries.
fn negated(g: &Circuit, base: u32) -> (Cnf, Vec<Var>) {
    let mut cnf = Cnf::new(base);
    let gates = encode_gates(&mut cnf, g, |v| Encoded::Lit(v.positive()));
    assert_value(&mut cnf, gates[g.output().index()], false);
    let aux = (base + 1..=cnf.num_vars()).map(Var::new).collect();
    (cnf, aux)
}
