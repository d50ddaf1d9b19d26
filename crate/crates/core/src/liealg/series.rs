use super::LieAlgebra;
use crate::linalg::Subspace;

/// `γ_1 = g, γ_{i+1} = [g, γ_i]`, stopping before the first repeat.
pub fn lower_central_series(g: &LieAlgebra) -> Vec<Subspace> {
    descend(g, |cur| g.bracket_span(&g.full(), cur))
}

/// `g^(0) = g, g^(i+1) = [g^(i), g^(i)]`, stopping before the first repeat.
pub fn derived_series(g: &LieAlgebra) -> Vec<Subspace> {
    descend(g, |cur| g.bracket_span(cur, cur))
}

fn descend(g: &LieAlgebra, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    if g.dim() == 0 {
        return Vec::new();
    }
    let mut out = vec![g.full()];
    loop {
        let next = step(out.last().expect("nonempty"));
        if next.dim() == out.last().expect("nonempty").dim() {
            return out;
        }
        out.push(next);
    }
}

/// `Z_0 = 0`, `Z_{i+1}` the preimage of the centre of `g / Z_i`.
pub fn upper_central_series(g: &LieAlgebra) -> Vec<Subspace> {
    if g.dim() == 0 {
        return Vec::new();
    }
    let mut out = vec![Subspace::zero(g.dim())];
    loop {
        let cur = out.last().expect("nonempty");
        let (q, proj) = g.quotient(cur).expect("upper central terms are ideals");
        let next = proj.pullback(&q.center());
        if next.dim() == cur.dim() {
            return out;
        }
        out.push(next);
    }
}

pub fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

impl LieAlgebra {
    /// Nilpotency class `c` with `γ_{c+1} = 0`, if nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        terminal_index(&lower_central_series(self))
    }

    /// Class read off the upper central series (`Z_c = g`).
    pub fn nilpotency_class_upper(&self) -> Option<usize> {
        let ucs = upper_central_series(self);
        match ucs.last() {
            None => Some(0),
            Some(last) if last.is_full() => Some(ucs.len() - 1),
            Some(_) => None,
        }
    }

    /// Derived length `l` with `g^(l) = 0`, if solvable.
    pub fn derived_length(&self) -> Option<usize> {
        terminal_index(&derived_series(self))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_length().is_some()
    }
}

fn terminal_index(series: &[Subspace]) -> Option<usize> {
    match series.last() {
        None => Some(0),
        Some(last) if last.is_zero() => Some(series.len() - 1),
        Some(_) => None,
    }
}
