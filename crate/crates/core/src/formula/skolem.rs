use std::collections::HashMap;

use super::{
    emit_aiger_ascii, emit_gatelist, parse_aiger_ascii, parse_gatelist, Circuit, CircuitBuilder,
    FormulaError, GateRef, Var,
};

/// One circuit per output. `ψ_i` may read the inputs and the outputs `Y_j`
/// with `j < i`; anything else is rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemVector {
    inputs: Vec<Var>,
    outputs: Vec<Var>,
    psis: Vec<Circuit>,
}

impl SkolemVector {
    pub fn new(
        inputs: Vec<Var>,
        outputs: Vec<Var>,
        psis: Vec<Circuit>,
    ) -> Result<SkolemVector, FormulaError> {
        if psis.len() != outputs.len() {
            return Err(FormulaError::Malformed(format!(
                "{} functions for {} outputs",
                psis.len(),
                outputs.len()
            )));
        }
        let xs: std::collections::HashSet<Var> = inputs.iter().copied().collect();
        for (i, psi) in psis.iter().enumerate() {
            for v in psi.inputs() {
                if xs.contains(&v) || outputs[..i].contains(&v) {
                    continue;
                }
                if outputs[i..].contains(&v) {
                    return Err(FormulaError::CyclicDependency { output: i + 1, var: v });
                }
                return Err(FormulaError::UndeclaredVariable { var: v, line: None });
            }
        }
        Ok(SkolemVector {
            inputs,
            outputs,
            psis,
        })
    }

    /// Constant functions.
    pub fn constants(inputs: Vec<Var>, outputs: Vec<Var>, bits: &[bool]) -> SkolemVector {
        let psis = bits.iter().map(|&b| Circuit::constant(b)).collect();
        SkolemVector::new(inputs, outputs, psis).expect("constants have no dependencies")
    }

    pub fn inputs(&self) -> &[Var] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Var] {
        &self.outputs
    }

    pub fn psis(&self) -> &[Circuit] {
        &self.psis
    }

    pub fn psi(&self, i: usize) -> &Circuit {
        &self.psis[i]
    }

    /// Total gate count over all functions.
    pub fn size(&self) -> usize {
        self.psis.iter().map(Circuit::size).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.psis.iter().map(Circuit::size).collect()
    }

    /// Output bits for input bits `x` (in input order).
    pub fn eval(&self, x: &[bool]) -> Vec<bool> {
        let mut val: HashMap<Var, bool> = self.inputs.iter().copied().zip(x.iter().copied()).collect();
        let mut out = Vec::with_capacity(self.psis.len());
        for (psi, &y) in self.psis.iter().zip(&self.outputs) {
            let b = psi.eval1(|v| val[&v]);
            val.insert(y, b);
            out.push(b);
        }
        out
    }

    /// Builds every function inside `b`, with later outputs reading the gates
    /// of earlier ones. Inputs are bound through `input`.
    pub fn build_into(
        &self,
        b: &mut CircuitBuilder,
        mut input: impl FnMut(&mut CircuitBuilder, Var) -> GateRef,
    ) -> Vec<GateRef> {
        let mut built: HashMap<Var, GateRef> = HashMap::new();
        let mut out = Vec::with_capacity(self.psis.len());
        for (psi, &y) in self.psis.iter().zip(&self.outputs) {
            let g = b.import1(psi, |b, v| match built.get(&v) {
                Some(&g) => g,
                None => input(b, v),
            });
            built.insert(y, g);
            out.push(g);
        }
        out
    }

    /// All outputs as one multi-output circuit over the inputs only.
    pub fn composed(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        let outs = self.build_into(&mut b, |b, v| b.input(v));
        b.finish(outs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkolemFormat {
    GateList,
    AigerAscii,
}

pub fn emit_skolem(v: &SkolemVector, format: SkolemFormat) -> String {
    match format {
        SkolemFormat::GateList => emit_gatelist(v),
        SkolemFormat::AigerAscii => emit_aiger_ascii(v),
    }
}

/// Parses either format; variables are bound to `inputs` and `outputs` by
/// position.
pub fn parse_skolem(
    text: &str,
    format: SkolemFormat,
    inputs: &[Var],
    outputs: &[Var],
) -> Result<SkolemVector, FormulaError> {
    match format {
        SkolemFormat::GateList => parse_gatelist(text, inputs, outputs),
        SkolemFormat::AigerAscii => parse_aiger_ascii(text, inputs, outputs),
    }
}
