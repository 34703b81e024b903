use std::fmt;

use super::{Lit, Var};

/// A partial or total map from variables to bits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// A total assignment over `1..=values.len()`.
    pub fn from_model(values: &[bool]) -> Assignment {
        let mut a = Assignment::new();
        for (i, &b) in values.iter().enumerate() {
            a.set(Var::new(i as u32 + 1), b);
        }
        a
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Assignment {
        let mut a = Assignment::new();
        for (v, b) in pairs {
            a.set(v, b);
        }
        a
    }

    /// Assigns `vars[i] := bits[i]`.
    pub fn from_bits(vars: &[Var], bits: &[bool]) -> Assignment {
        assert_eq!(vars.len(), bits.len());
        Assignment::from_pairs(vars.iter().copied().zip(bits.iter().copied()))
    }

    pub fn set(&mut self, var: Var, value: bool) {
        let i = var.index();
        if self.values.len() <= i {
            self.values.resize(i + 1, None);
        }
        self.values[i] = Some(value);
    }

    pub fn unset(&mut self, var: Var) {
        if let Some(slot) = self.values.get_mut(var.index()) {
            *slot = None;
        }
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(var.index()).copied().flatten()
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| lit.apply(v))
    }

    pub fn is_assigned(&self, var: Var) -> bool {
        self.get(var).is_some()
    }

    pub fn covers(&self, vars: &[Var]) -> bool {
        vars.iter().all(|&v| self.is_assigned(v))
    }

    /// Values of `vars`, in order. Panics if one is unassigned.
    pub fn bits(&self, vars: &[Var]) -> Vec<bool> {
        vars.iter()
            .map(|&v| self.get(v).unwrap_or_else(|| panic!("variable {v} unassigned")))
            .collect()
    }

    /// Restriction to `vars`.
    pub fn project(&self, vars: &[Var]) -> Assignment {
        Assignment::from_pairs(vars.iter().filter_map(|&v| self.get(v).map(|b| (v, b))))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| (Var::new(i as u32), b)))
    }

    pub fn len(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, b) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", if b { v.id() as i64 } else { -(v.id() as i64) })?;
        }
        Ok(())
    }
}

/// Bits of `value` as a vector of length `width`, most significant first.
pub fn bits_msb_first(value: u64, width: usize) -> Vec<bool> {
    (0..width).map(|i| (value >> (width - 1 - i)) & 1 == 1).collect()
}

/// Inverse of [`bits_msb_first`].
pub fn value_msb_first(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_and_bits() {
        let a = Assignment::from_model(&[true, false, true]);
        let vars = [Var::new(3), Var::new(1)];
        assert_eq!(a.bits(&vars), vec![true, true]);
        let p = a.project(&[Var::new(2)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.get(Var::new(2)), Some(false));
        assert_eq!(p.get(Var::new(1)), None);
    }

    #[test]
    fn msb_round_trip() {
        assert_eq!(bits_msb_first(6, 4), vec![false, true, true, false]);
        assert_eq!(value_msb_first(&bits_msb_first(45, 8)), 45);
    }
}
