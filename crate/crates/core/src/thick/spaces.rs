use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dual::{dual_product, restrict, thick_mul, DualFn};
use crate::cone::{ConePoly, ConeRat};
use crate::divisor::{cleared_monomial, cleared_section};
use crate::error::{Error, Result};
use crate::exact::{nullspace, ri, Echelon, QMatrix, Rational, MAX_VARS};
use crate::skew::{skew_mul, vn_monomials, FTable, SkewElt};

/// The parameter `(u:v) = (1:-2)` of `r_0` on `C_r`.
pub fn r0_param() -> (Rational, Rational) {
    (ri(1), ri(-2))
}

/// A subspace of the sections in twist `n`, with a linearly independent basis.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub n: u32,
    pub basis: Vec<DualFn>,
    pub dim: usize,
    echelon: Echelon,
}

impl SectionSpace {
    pub fn empty(n: u32) -> Self {
        SectionSpace { n, basis: Vec::new(), dim: 0, echelon: Echelon::new(DualFn::coord_len(n)) }
    }

    /// The span of `gens`, keeping the independent members in order.
    pub fn span<'a, I: IntoIterator<Item = &'a DualFn>>(n: u32, gens: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for g in gens {
            s.push(g)?;
        }
        Ok(s)
    }

    /// Adds `g` to the spanning set; returns whether the dimension grew.
    pub fn push(&mut self, g: &DualFn) -> Result<bool> {
        if g.twist() != self.n {
            return Err(Error::TwistMismatch(format!("twist {} in a space of twist {}", g.twist(), self.n)));
        }
        let grew = self.echelon.insert_rational(&g.coords());
        if grew {
            self.basis.push(g.clone());
            self.dim += 1;
        }
        Ok(grew)
    }

    pub fn contains(&self, g: &DualFn) -> bool {
        g.twist() == self.n && self.echelon.contains_rational(&g.coords())
    }

    pub fn is_subspace_of(&self, other: &SectionSpace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &SectionSpace) -> bool {
        self.dim == other.dim && self.is_subspace_of(other)
    }

    /// Members `sum c_i b_i` for which every linear functional in
    /// `conditions` vanishes.
    pub fn subspace_where<F: Fn(&DualFn) -> Vec<Rational>>(&self, conditions: F) -> Result<SectionSpace> {
        if self.basis.is_empty() {
            return Ok(Self::empty(self.n));
        }
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(&conditions).collect();
        let rows = cols[0].len();
        if rows == 0 {
            return Ok(self.clone());
        }
        let mut m = QMatrix::zeros(rows, self.basis.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        let mut out = Self::empty(self.n);
        for kernel in nullspace(&m) {
            let mut acc = DualFn::zero(self.n);
            for (c, b) in kernel.iter().zip(&self.basis) {
                if !c.is_zero() {
                    acc = acc.checked_add(&b.scale(c))?;
                }
            }
            out.push(&acc)?;
        }
        Ok(out)
    }
}

/// Monomials `w^a x^b y^c z^d` of degree `n` with `c <= 1`, a basis of the
/// degree-`n` part of the coordinate ring of the cone.
pub fn cone_monomials(n: u32) -> Vec<ConePoly> {
    let mut out = Vec::new();
    for c in 0..=n.min(1) {
        for a in 0..=n - c {
            for b in 0..=n - c - a {
                let d = n - c - a - b;
                let mut m = [0u16; MAX_VARS];
                m[0] = a as u16;
                m[1] = b as u16;
                m[2] = c as u16;
                m[3] = d as u16;
                let p = crate::exact::MultiPoly::monomial(&crate::cone::cone_vars(), m, ri(1));
                out.push(crate::cone::reduce(&p));
            }
        }
    }
    out
}

/// The image of the degree-`n` forms in the sections of `M_n` on `2 C_r`.
pub fn h0m(n: u32) -> Result<SectionSpace> {
    if n == 0 {
        return Err(Error::BadParams("h0M needs n >= 1".into()));
    }
    let gens = cone_monomials(n).iter().map(restrict).collect::<Result<Vec<_>>>()?;
    SectionSpace::span(n, &gens)
}

fn g0_condition(g: &DualFn) -> Vec<Rational> {
    let (u, v) = r0_param();
    vec![g.g0_at(&u, &v)]
}

/// Sections of `I_{r_0} M_n`: `g0` vanishes at `(1:-2)`. Twist 0 gives the constants.
pub fn t_space(n: u32) -> Result<SectionSpace> {
    if n == 0 {
        return SectionSpace::span(0, &[DualFn::one()]);
    }
    h0m(n)?.subspace_where(g0_condition)
}

/// Multiples of `eps`: sections with `g0 = 0`.
pub fn j_space(n: u32) -> Result<SectionSpace> {
    if n == 0 {
        return Err(Error::BadParams("j_space needs n >= 1".into()));
    }
    h0m(n)?.subspace_where(|g| g.coords()[..2 * n as usize + 1].to_vec())
}

/// Multiples of `eps` whose `g1` also vanishes at `r_0`.
pub fn j_space_at_r0(n: u32) -> Result<SectionSpace> {
    let (u, v) = r0_param();
    j_space(n)?.subspace_where(|g| vec![g.g1_at(&u, &v)])
}

/// `U_n`: restrictions of the cleared spanning monomials of `V_{2n}`.
pub fn alpha_image(n: u32) -> Result<SectionSpace> {
    if n == 0 {
        return Err(Error::BadParams("alpha_image needs n >= 1".into()));
    }
    let ft = FTable::new(2 * n as usize);
    let mut gens = Vec::new();
    for seq in vn_monomials(2 * n as usize) {
        gens.push(restrict(&cleared_monomial(&ft, &seq, n as usize)?)?);
    }
    SectionSpace::span(n, &gens)
}

/// `alpha` applied to `g t^{2n}` with `g` in `V_{2n}`.
pub fn alpha(g: &ConeRat, n: u32) -> Result<DualFn> {
    let rep = cleared_section(g, n as usize)?;
    let out = restrict(&rep)?;
    if out.twist() != n && !out.is_zero() {
        return Err(Error::TwistMismatch(format!("representative has degree {}", out.twist())));
    }
    Ok(if out.is_zero() { DualFn::zero(n) } else { out })
}

/// Precomputed `T_0..T_max`, `J_1..J_max`, `U_1`, `U_2`.
#[derive(Clone, Debug)]
pub struct ThickSpaces {
    pub max: u32,
    pub t: Vec<SectionSpace>,
    /// `j[k]` for `k >= 1`; `j[0]` is empty.
    pub j: Vec<SectionSpace>,
    pub u1: SectionSpace,
    pub u2: SectionSpace,
}

impl ThickSpaces {
    pub fn new(max: u32) -> Result<Self> {
        if max < 2 {
            return Err(Error::BadParams("need spaces through degree 2 at least".into()));
        }
        let t = (0..=max).map(t_space).collect::<Result<Vec<_>>>()?;
        let mut j = vec![SectionSpace::empty(0)];
        for k in 1..=max {
            j.push(j_space(k)?);
        }
        Ok(ThickSpaces { max, t, j, u1: alpha_image(1)?, u2: alpha_image(2)? })
    }

    fn products(&self, a: &SectionSpace, b: &SectionSpace, into: &mut SectionSpace) -> Result<()> {
        for x in &a.basis {
            for y in &b.basis {
                into.push(&thick_mul(x, y)?)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgRow {
    pub n: u32,
    pub dim_t: usize,
    /// `dim R_2 T_{n-1}`.
    pub dim_r2: usize,
    /// `dim (R_2 T_{n-1} + R_4 T_{n-2})`.
    pub dim_sum: usize,
    /// The sum equals `T_n`.
    pub equal: bool,
}

impl FgRow {
    pub fn ok(&self) -> bool {
        self.equal && self.dim_r2 + 1 == self.dim_t && self.dim_r2 < self.dim_sum
    }
}

/// Whether `T_n = R_2 T_{n-1} + R_4 T_{n-2}`, with the dimension data.
pub fn fg_claim2(spaces: &ThickSpaces, n: u32) -> Result<FgRow> {
    if n < 2 || n > spaces.max {
        return Err(Error::InsufficientDepth(format!("degree {n} outside 2..={}", spaces.max)));
    }
    let tn = &spaces.t[n as usize];
    let mut sum = SectionSpace::empty(n);
    spaces.products(&spaces.u1, &spaces.t[n as usize - 1], &mut sum)?;
    let dim_r2 = sum.dim;
    spaces.products(&spaces.u2, &spaces.t[n as usize - 2], &mut sum)?;
    Ok(FgRow { n, dim_t: tn.dim, dim_r2, dim_sum: sum.dim, equal: sum.same_as(tn) })
}

#[derive(Clone, Debug)]
pub struct FgReport {
    pub rows: Vec<FgRow>,
    /// Least `N_0` with the claim holding for every `n` in `[N_0, max]`.
    pub n0: Option<u32>,
}

pub fn fg_report(spaces: &ThickSpaces) -> Result<FgReport> {
    let rows = (2..=spaces.max).map(|n| fg_claim2(spaces, n)).collect::<Result<Vec<_>>>()?;
    let mut n0 = None;
    for row in rows.iter().rev() {
        if !row.ok() {
            break;
        }
        n0 = Some(row.n);
    }
    Ok(FgReport { rows, n0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyRow {
    pub m: u32,
    pub dim_j: usize,
    /// `dim (T J_{<=K})_m`.
    pub dim_generated: usize,
    pub deficiency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub m: u32,
    pub dim_j: usize,
    pub dim_j_r0: usize,
}

impl GapRow {
    pub fn gap(&self) -> usize {
        self.dim_j - self.dim_j_r0
    }
}

/// The witness that `J` needs a generator in every degree above `K`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub k: u32,
    pub m: u32,
    pub deficiencies: Vec<DeficiencyRow>,
    pub gaps: Vec<GapRow>,
    /// Every `T_n J_k` with `n, k >= 1`, `n + k <= M` consists of multiples
    /// of `eps` vanishing at `r_0`.
    pub containment: bool,
    /// `T_n J_k` lies in `J_{n+k}` for `n + k <= M`, including `n = 0`.
    pub left_ideal: bool,
}

impl Witness {
    pub fn ok(&self) -> bool {
        self.containment
            && self.left_ideal
            && self.deficiencies.iter().all(|r| r.deficiency >= 1)
            && self.gaps.iter().all(|g| g.gap() == 1)
    }
}

pub fn nonfg_witness(spaces: &ThickSpaces, k: u32, m: u32) -> Result<Witness> {
    if k < 1 || k >= m {
        return Err(Error::BadParams(format!("need 1 <= K < M, got K={k}, M={m}")));
    }
    if m > spaces.max {
        return Err(Error::InsufficientDepth(format!("degree {m} beyond {}", spaces.max)));
    }
    let (u, v) = r0_param();
    let mut containment = true;
    let mut left_ideal = true;
    for total in 1..=m {
        for kk in 1..=total {
            let n = total - kk;
            for a in &spaces.t[n as usize].basis {
                for b in &spaces.j[kk as usize].basis {
                    let p = thick_mul(a, b)?;
                    left_ideal &= spaces.j[total as usize].contains(&p);
                    if n >= 1 {
                        containment &= p.g0().is_zero() && p.g1_at(&u, &v).is_zero();
                    }
                }
            }
        }
    }

    let mut deficiencies = Vec::new();
    for mm in k + 1..=m {
        let mut gen = SectionSpace::empty(mm);
        for kk in 1..=k {
            spaces.products(&spaces.t[(mm - kk) as usize], &spaces.j[kk as usize], &mut gen)?;
        }
        let dim_j = spaces.j[mm as usize].dim;
        deficiencies.push(DeficiencyRow {
            m: mm,
            dim_j,
            dim_generated: gen.dim,
            deficiency: dim_j.saturating_sub(gen.dim),
        });
    }

    let mut gaps = Vec::new();
    for mm in 1..=m {
        gaps.push(GapRow { m: mm, dim_j: spaces.j[mm as usize].dim, dim_j_r0: j_space_at_r0(mm)?.dim });
    }
    Ok(Witness { k, m, deficiencies, gaps, containment, left_ideal })
}

fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> ConePoly {
    cone_monomials(degree).iter().fold(ConePoly::zero(), |acc, mono| {
        let c = rng.gen_range(-5i64..=5);
        &acc + &mono.scale(&ri(c))
    })
}

/// `restrict(G H) = restrict(G) restrict(H)` in the dual numbers for seeded
/// random forms of degree at most 4.
pub fn restrict_ring_map_check(pairs: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let (dg, dh) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let g = random_form(&mut rng, dg);
        let h = random_form(&mut rng, dh);
        let lhs = restrict(&(&g * &h))?;
        let rhs = dual_product(&restrict(&g)?, &restrict(&h)?);
        if !(lhs.is_zero() && rhs.is_zero()) && lhs.coords() != rhs.coords() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `restrict(G o tau) = restrict(G) o tau_bar` for seeded random forms.
pub fn restrict_equivariance_check(count: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let d = rng.gen_range(1..=4);
        let g = random_form(&mut rng, d);
        if restrict(&g.pullback(1))? != restrict(&g)?.pullback(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `alpha(a b) = alpha(a) alpha(b)` over all pairs of spanning
/// monomials `a` of `V_{2n}` and `b` of `V_{2m}` with `2n + 2m <= max_degree`.
/// The left side multiplies in the skew ring over the function field and
/// clears denominators afterwards. Returns the number of pairs checked.
pub fn alpha_homomorphism_check(max_degree: u32) -> Result<(usize, bool)> {
    let half = max_degree / 2;
    let ft = FTable::new(max_degree as usize);
    let mut images: Vec<Vec<(ConeRat, DualFn)>> = vec![Vec::new()];
    for n in 1..half {
        let mut row = Vec::new();
        for seq in vn_monomials(2 * n as usize) {
            let g = ft.product(&seq);
            let a = alpha(&g, n)?;
            row.push((g, a));
        }
        images.push(row);
    }
    let mut count = 0;
    for n in 1..half {
        for m in 1..=half - n {
            for (ga, aa) in &images[n as usize] {
                for (gb, ab) in &images[m as usize] {
                    let prod = skew_mul(&SkewElt::monomial(ga.clone(), 2 * n), &SkewElt::monomial(gb.clone(), 2 * m));
                    let lhs = alpha(&prod.coeff(2 * (n + m)), n + m)?;
                    let rhs = thick_mul(aa, ab)?;
                    count += 1;
                    if lhs.coords() != rhs.coords() {
                        return Ok((count, false));
                    }
                }
            }
        }
    }
    Ok((count, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_section_spaces() {
        for n in 1..=6 {
            let h = h0m(n).unwrap();
            assert_eq!(h.dim, 4 * n as usize);
            let t = t_space(n).unwrap();
            assert_eq!(t.dim, h.dim - 1);
            let j = j_space(n).unwrap();
            assert_eq!(j.dim, 2 * n as usize - 1);
            assert!(j.is_subspace_of(&t));
            assert!(j.basis.iter().all(|b| b.g0().is_zero()));
        }
        assert_eq!(t_space(0).unwrap().dim, 1);
        assert!(h0m(2).unwrap().contains(&restrict(&crate::divisor::c_product(2)).unwrap()));
    }

    #[test]
    fn alpha_images_lie_in_t() {
        assert_eq!(alpha_image(1).unwrap().dim, 2);
        for n in 1..=4 {
            let u = alpha_image(n).unwrap();
            assert!(u.is_subspace_of(&t_space(n).unwrap()), "n={n}");
        }
    }

    #[test]
    fn restriction_is_a_ring_map() {
        assert!(restrict_ring_map_check(30, 1).unwrap());
        assert!(restrict_equivariance_check(20, 2).unwrap());
    }

    #[test]
    fn alpha_is_multiplicative_in_low_degree() {
        let (count, ok) = alpha_homomorphism_check(6).unwrap();
        assert!(ok);
        assert_eq!(count, 2 * 2 + 2 * 5 + 5 * 2);
    }

    #[test]
    fn claim_and_witness_small() {
        let spaces = ThickSpaces::new(5).unwrap();
        let rep = fg_report(&spaces).unwrap();
        assert!(rep.n0.is_some(), "{:?}", rep.rows);
        let w = nonfg_witness(&spaces, 2, 5).unwrap();
        assert!(w.ok(), "{w:?}");
        assert!(matches!(fg_claim2(&spaces, 6), Err(Error::InsufficientDepth(_))));
        assert!(matches!(nonfg_witness(&spaces, 2, 6), Err(Error::InsufficientDepth(_))));
    }
}
