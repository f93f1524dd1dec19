use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{ri, rq, MultiPoly, VarSet, MAX_VARS};

/// A derivation `sum_j a_j D_j` of the polynomial ring in `x1..xn`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyDerivation {
    components: Vec<MultiPoly>,
}

/// The variable set `x1, ..., xn` used by all derivations on `n` variables.
pub fn cartan_vars(n: usize) -> VarSet {
    VarSet::indexed("x", n)
}

impl PolyDerivation {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.nvars() != n {
                return Err(Error::VariableMismatch);
            }
        }
        if components.windows(2).any(|w| w[0].vars() != w[1].vars()) {
            return Err(Error::VariableMismatch);
        }
        Ok(PolyDerivation { components })
    }

    pub fn zero(vars: &VarSet) -> Self {
        PolyDerivation { components: vec![MultiPoly::zero(vars); vars.len()] }
    }

    /// `a * D_j`, with `j` counted from 1.
    pub fn single(a: MultiPoly, j: usize) -> Self {
        let mut d = Self::zero(a.vars());
        d.components[j - 1] = a;
        d
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    /// The coefficient of `D_j`, with `j` counted from 1.
    pub fn component(&self, j: usize) -> &MultiPoly {
        &self.components[j - 1]
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(p.vars());
        for (i, a) in self.components.iter().enumerate() {
            let term = a.checked_mul(&p.derivative(i))?;
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    pub fn divergence(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.components[0].vars());
        for (i, a) in self.components.iter().enumerate() {
            out = &out + &a.derivative(i);
        }
        out
    }

    pub fn checked_add(&self, other: &PolyDerivation) -> Result<PolyDerivation> {
        if self.n() != other.n() {
            return Err(Error::VariableMismatch);
        }
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.checked_add(b)).collect::<Result<Vec<_>>>()?;
        Ok(PolyDerivation { components })
    }
}

impl fmt::Display for PolyDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| format!("({a})*D{}", j + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for PolyDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyDerivation({self})")
    }
}

/// Commutator of two derivations: the `j`-th component of `[d1, d2]` is
/// `d1(b_j) - d2(a_j)`.
pub fn der_bracket(d1: &PolyDerivation, d2: &PolyDerivation) -> Result<PolyDerivation> {
    if d1.n() != d2.n() || d1.components[0].vars() != d2.components[0].vars() {
        return Err(Error::VariableMismatch);
    }
    let components = d1
        .components
        .iter()
        .zip(&d2.components)
        .map(|(a, b)| d1.apply(b)?.checked_sub(&d2.apply(a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyDerivation { components })
}

/// Index partner and sign for the symplectic pairing on `x1..x_{2m}`.
pub fn pairing(j: usize, m: usize) -> (usize, i64) {
    if j <= m {
        (j + m, 1)
    } else {
        (j - m, -1)
    }
}

/// Hamiltonian derivation `D_H(p) = sum_j sigma(j) D_j(p) D_{j'}` on `x1..x_{2m}`.
pub fn dh_operator(p: &MultiPoly, m: usize) -> Result<PolyDerivation> {
    if p.nvars() != 2 * m {
        return Err(Error::VariableMismatch);
    }
    let mut d = PolyDerivation::zero(p.vars());
    for j in 1..=2 * m {
        let (jp, s) = pairing(j, m);
        let term = p.derivative(j - 1).scale(&ri(s));
        d.components[jp - 1] = &d.components[jp - 1] + &term;
    }
    Ok(d)
}

/// Contact derivation `D_K(p)` on `x1..x_{2m+1}`:
/// `p_j = x_j D_{2m+1}(p) + sigma(j') D_{j'}(p)` for `j <= 2m` and
/// `p_{2m+1} = 2p - sum_j sigma(j) x_j p_{j'}`.
pub fn dk_operator(p: &MultiPoly, m: usize) -> Result<PolyDerivation> {
    let n = 2 * m + 1;
    if m == 0 || p.nvars() != n {
        return Err(Error::VariableMismatch);
    }
    let vars = p.vars();
    let dlast = p.derivative(n - 1);
    let mut comps = Vec::with_capacity(n);
    for j in 1..=2 * m {
        let (jp, _) = pairing(j, m);
        let (_, s_jp) = pairing(jp, m);
        let xj = MultiPoly::var(vars, j - 1);
        let pj = &(&xj * &dlast) + &p.derivative(jp - 1).scale(&ri(s_jp));
        comps.push(pj);
    }
    let mut last = p.scale(&ri(2));
    for j in 1..=2 * m {
        let (jp, s) = pairing(j, m);
        let xj = MultiPoly::var(vars, j - 1);
        last = &last - &(&xj * &comps[jp - 1]).scale(&ri(s));
    }
    comps.push(last);
    PolyDerivation::new(comps)
}

/// `r x_j^{r-1} D_{j'} - (r-2) x_j^r D_{2m+1}`.
pub fn dk_closed_form(m: usize, j: usize, r: u32) -> PolyDerivation {
    let vars = cartan_vars(2 * m + 1);
    let xj = MultiPoly::var(&vars, j - 1);
    let mut d = PolyDerivation::zero(&vars);
    let (jp, _) = pairing(j, m);
    if r > 0 {
        d.components[jp - 1] = xj.pow(r - 1).scale(&ri(r as i64));
    }
    d.components[2 * m] = xj.pow(r).scale(&ri(2 - r as i64));
    d
}

/// The one-parameter abelian families inside the Cartan-type Lie algebras.
/// Indices are counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianFamily {
    /// `{x_i^r D_j}` in `W_n`, `i != j`.
    WnLine { n: usize, i: usize, j: usize },
    /// `{x_i^r D_j}` in `S_n`, `i != j`; membership means divergence zero.
    SnLine { n: usize, i: usize, j: usize },
    /// `{x_j^r D_{j'}}` in `H_{2m}`, `j <= m`.
    H2mLine { m: usize, j: usize },
    /// `{D_K(x_j^r)}` with `r >= 2` in `K_{2m+1}`, `j <= m`.
    KContact { m: usize, j: usize },
}

impl AbelianFamily {
    pub fn name(&self) -> &'static str {
        match self {
            AbelianFamily::WnLine { .. } => "Wn-line",
            AbelianFamily::SnLine { .. } => "Sn-line",
            AbelianFamily::H2mLine { .. } => "H2m-line",
            AbelianFamily::KContact { .. } => "K-contact",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::BadParams(s.to_string()));
        match *self {
            AbelianFamily::WnLine { n, i, j } | AbelianFamily::SnLine { n, i, j } => {
                if !(2..=MAX_VARS).contains(&n) {
                    return bad("n must lie in 2..=8");
                }
                if i == j || i == 0 || j == 0 || i > n || j > n {
                    return bad("need distinct indices i, j in 1..=n");
                }
            }
            AbelianFamily::H2mLine { m, j } => {
                if m == 0 || 2 * m > MAX_VARS || j == 0 || j > m {
                    return bad("need 1 <= j <= m and 2m <= 8");
                }
            }
            AbelianFamily::KContact { m, j } => {
                if m == 0 || 2 * m + 1 > MAX_VARS || j == 0 || j > m {
                    return bad("need 1 <= j <= m and 2m+1 <= 8");
                }
            }
        }
        Ok(())
    }

    /// The family element with exponent `r`, after checking that it lies in
    /// the ambient subalgebra.
    pub fn member(&self, r: u32) -> Result<PolyDerivation> {
        self.validate()?;
        match *self {
            AbelianFamily::WnLine { n, i, j } | AbelianFamily::SnLine { n, i, j } => {
                let vars = cartan_vars(n);
                let d = PolyDerivation::single(MultiPoly::var(&vars, i - 1).pow(r), j);
                if matches!(self, AbelianFamily::SnLine { .. }) && !d.divergence().is_zero() {
                    return Err(Error::ConstraintViolation("divergence is not zero".into()));
                }
                Ok(d)
            }
            AbelianFamily::H2mLine { m, j } => {
                let vars = cartan_vars(2 * m);
                let xj = MultiPoly::var(&vars, j - 1);
                let (jp, _) = pairing(j, m);
                let d = PolyDerivation::single(xj.pow(r), jp);
                let potential = xj.pow(r + 1).scale(&rq(1, r as i64 + 1));
                if dh_operator(&potential, m)? != d {
                    return Err(Error::ConstraintViolation("not a Hamiltonian derivation".into()));
                }
                Ok(d)
            }
            AbelianFamily::KContact { m, j } => {
                let vars = cartan_vars(2 * m + 1);
                dk_operator(&MultiPoly::var(&vars, j - 1).pow(r), m)
            }
        }
    }

    fn exponents(&self, bound: u32) -> std::ops::RangeInclusive<u32> {
        match self {
            AbelianFamily::KContact { .. } => 2..=bound,
            _ => 0..=bound,
        }
    }
}

/// True iff all pairwise brackets of family members with exponent at most
/// `bound` vanish.
pub fn verify_abelian_family(family: AbelianFamily, bound: u32) -> Result<bool> {
    if bound < 2 {
        return Err(Error::BadParams("bound must be at least 2".into()));
    }
    let members = family.exponents(bound).map(|r| family.member(r)).collect::<Result<Vec<_>>>()?;
    for (a, da) in members.iter().enumerate() {
        for db in &members[a + 1..] {
            if !der_bracket(da, db)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `D_K(x_j^r)` agrees with its closed form for all `r <= bound`.
pub fn verify_dk_closed_form(m: usize, j: usize, bound: u32) -> Result<bool> {
    AbelianFamily::KContact { m, j }.validate()?;
    let vars = cartan_vars(2 * m + 1);
    for r in 0..=bound {
        let p = MultiPoly::var(&vars, j - 1).pow(r);
        if dk_operator(&p, m)? != dk_closed_form(m, j, r) {
            return Ok(false);
        }
    }
    Ok(true)
}
