//! Exact spectra of quotient matrices and the class sizes they force.
//!
//! Every eigenvalue of the quotient matrix of a perfect coloring is an
//! eigenvalue of the host graph, and the balance relations s_ij|f_i| =
//! s_ji|f_j| pin the class sizes down to a scalar. Both facts are turned into
//! checks here: the spectrum check factors the characteristic polynomial over
//! the integers, the size check propagates ratios and rescales by |V|.

use crate::codes::QuotientMatrix;
use crate::exact::ScaledRational;
use crate::graphs::GraphSpec;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Candidate lists longer than this are never materialized; the deflation
/// path below handles those graphs instead.
const TRIAL_DIVISION_LIMIT: u128 = 4096;

/// Distinct eigenvalues in decreasing order with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumInfo {
    pub eigenvalues: Vec<BigInt>,
    pub multiplicities: Vec<usize>,
}

impl SpectrumInfo {
    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn contains(&self, lambda: &BigInt) -> bool {
        self.eigenvalues.iter().any(|e| e == lambda)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let evs: Vec<serde_json::Value> = self
            .eigenvalues
            .iter()
            .map(|e| match e.to_i64() {
                Some(small) => serde_json::Value::from(small),
                None => serde_json::Value::from(e.to_string()),
            })
            .collect();
        serde_json::json!({ "eigenvalues": evs, "multiplicities": self.multiplicities })
    }
}

impl std::fmt::Display for SpectrumInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .map(|(e, &m)| if m == 1 { e.to_string() } else { format!("{e}^{m}") })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Whether the characteristic polynomial splits over the graph spectrum.
#[derive(Debug, Clone)]
pub enum SpectrumCheck {
    Splits(SpectrumInfo),
    Violation { detail: String },
}

/// Characteristic polynomial of a quotient matrix, monic with coefficients in
/// decreasing-degree order, by the Faddeev-LeVerrier recurrence (all the
/// divisions it performs are exact over the integers).
pub fn charpoly(matrix: &QuotientMatrix) -> Vec<BigInt> {
    let k = matrix.k();
    let a: Vec<BigInt> = (0..k)
        .flat_map(|i| matrix.row(i).iter().cloned())
        .collect();
    let mut m = identity(k);
    let mut coeffs = vec![BigInt::one()];
    for step in 1..=k {
        let am = mat_mul(k, &a, &m);
        let tr: BigInt = (0..k).map(|i| am[i * k + i].clone()).sum();
        let (c, rem) = (-tr).div_rem(&BigInt::from(step));
        debug_assert!(rem.is_zero());
        for i in 0..k {
            for j in 0..k {
                m[i * k + j] = am[i * k + j].clone();
                if i == j {
                    m[i * k + j] += &c;
                }
            }
        }
        coeffs.push(c);
    }
    coeffs
}

fn identity(k: usize) -> Vec<BigInt> {
    let mut m = vec![BigInt::zero(); k * k];
    for i in 0..k {
        m[i * k + i] = BigInt::one();
    }
    m
}

fn mat_mul(k: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); k * k];
    for i in 0..k {
        for l in 0..k {
            let ail = &a[i * k + l];
            if ail.is_zero() {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += ail * &b[l * k + j];
            }
        }
    }
    out
}

fn require_row_sums(graph: &GraphSpec, matrix: &QuotientMatrix) -> Result<()> {
    graph.validate()?;
    let degree = graph.degree();
    for (i, sum) in matrix.row_sums().into_iter().enumerate() {
        if sum != degree {
            return Err(Error::input(format!(
                "row {i} sums to {sum}, the graph degree is {degree}"
            )));
        }
    }
    Ok(())
}

/// Factors the characteristic polynomial of `matrix` over the eigenvalues of
/// `graph`. Row sums must equal the graph degree. Small-diameter graphs use
/// trial division over the full candidate list; otherwise the always-present
/// root at the degree is deflated first and the residual is solved exactly
/// (linear and quadratic in closed form, higher degrees by root isolation
/// with a membership check per root).
pub fn quotient_spectrum(graph: &GraphSpec, matrix: &QuotientMatrix) -> Result<SpectrumCheck> {
    require_row_sums(graph, matrix)?;
    let mut residual = charpoly(matrix);
    let mut found: Vec<(BigInt, usize)> = Vec::new();
    let divide_all = |poly: &mut Vec<BigInt>, root: &BigInt| {
        let mut mult = 0usize;
        while let Some(q) = poly::divide_out_root(poly, root) {
            *poly = q;
            mult += 1;
        }
        mult
    };

    if graph.diameter() <= TRIAL_DIVISION_LIMIT {
        for lambda in graph.graph_eigenvalues()? {
            let mult = divide_all(&mut residual, &lambda);
            if mult > 0 {
                found.push((lambda, mult));
            }
            if residual.len() == 1 {
                break;
            }
        }
    } else {
        let degree = graph.degree();
        let mult = divide_all(&mut residual, &degree);
        if mult > 0 {
            found.push((degree.clone(), mult));
        }
        let mut integer_roots: Vec<BigInt> = Vec::new();
        match residual.len() {
            0 | 1 => {}
            2 => integer_roots.push(-residual[1].clone()),
            3 => {
                if let Some(roots) =
                    poly::monic_quadratic_integer_roots(&residual[1], &residual[2])
                {
                    integer_roots.extend(roots);
                }
            }
            _ => integer_roots = poly::isolate_integer_roots(&residual, &degree),
        }
        integer_roots.sort();
        integer_roots.dedup();
        for root in integer_roots {
            if !graph.is_graph_eigenvalue(&root) {
                return Ok(SpectrumCheck::Violation {
                    detail: format!(
                        "root {root} of the characteristic polynomial is not a graph eigenvalue"
                    ),
                });
            }
            let mult = divide_all(&mut residual, &root);
            debug_assert!(mult > 0);
            found.push((root, mult));
        }
    }

    if residual.len() > 1 {
        return Ok(SpectrumCheck::Violation {
            detail: format!(
                "characteristic polynomial factor {} has no roots among the graph eigenvalues",
                poly::to_string(&residual)
            ),
        });
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    let (eigenvalues, multiplicities) = found.into_iter().unzip();
    Ok(SpectrumCheck::Splits(SpectrumInfo { eigenvalues, multiplicities }))
}

/// Class sizes forced by the balance relations, or the relation they violate.
#[derive(Debug, Clone)]
pub enum ClassSizeOutcome {
    Sizes(Vec<ScaledRational>),
    Infeasible { witness: String },
}

/// Solves s_ij|f_i| = s_ji|f_j| for the class sizes and scales them to sum to
/// |V|. Support must be symmetric and the relations consistent (otherwise an
/// infeasibility witness is returned); a disconnected mutual-support graph
/// leaves the sizes under-determined, which is an error, not a verdict.
pub fn class_sizes(graph: &GraphSpec, matrix: &QuotientMatrix) -> Result<ClassSizeOutcome> {
    require_row_sums(graph, matrix)?;
    let k = matrix.k();
    for i in 0..k {
        for j in 0..k {
            if matrix.get(i, j).is_positive() && matrix.get(j, i).is_zero() {
                return Ok(ClassSizeOutcome::Infeasible {
                    witness: format!(
                        "class {i} sees class {j} ({} neighbors) but not conversely; \
                         s_{i}{j}*|f_{i}| = s_{j}{i}*|f_{j}| forces |f_{i}| = 0",
                        matrix.get(i, j)
                    ),
                });
            }
        }
    }

    let mut ratio: Vec<Option<BigRational>> = vec![None; k];
    ratio[0] = Some(BigRational::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let ri = ratio[i].clone().expect("queued classes have ratios");
        for j in 0..k {
            if ratio[j].is_none() && matrix.get(i, j).is_positive() {
                let step = BigRational::new(matrix.get(i, j).clone(), matrix.get(j, i).clone());
                ratio[j] = Some(&ri * step);
                queue.push(j);
            }
        }
    }
    if let Some(missing) = ratio.iter().position(Option::is_none) {
        return Err(Error::Underdetermined(format!(
            "class {missing} is not connected to class 0 in the support of the matrix, \
             so the balance relations do not fix its size"
        )));
    }
    let ratio: Vec<BigRational> = ratio.into_iter().map(Option::unwrap).collect();

    for i in 0..k {
        for j in (i + 1)..k {
            let lhs = &ratio[i] * BigRational::from(matrix.get(i, j).clone());
            let rhs = &ratio[j] * BigRational::from(matrix.get(j, i).clone());
            if lhs != rhs {
                return Ok(ClassSizeOutcome::Infeasible {
                    witness: format!(
                        "balance between classes {i} and {j} fails: \
                         s_{i}{j}*|f_{i}| = {lhs} but s_{j}{i}*|f_{j}| = {rhs} \
                         (sizes in units of |f_0|)"
                    ),
                });
            }
        }
    }

    let base = graph.alphabet();
    let sum: BigRational = ratio.iter().sum();
    let scale = ScaledRational::power_of_base(base, BigInt::from(graph.coord_len()))
        .div(&ScaledRational::from_rational(base, &sum))?;
    let mut sizes = Vec::with_capacity(k);
    for (i, r) in ratio.iter().enumerate() {
        let size = scale.mul(&ScaledRational::from_rational(base, r));
        if !size.is_positive() || !size.is_integer() {
            return Ok(ClassSizeOutcome::Infeasible {
                witness: format!("class {i} would have {size} vertices, not a positive integer"),
            });
        }
        sizes.push(size);
    }
    Ok(ClassSizeOutcome::Sizes(sizes))
}

/// Diagonals of the powers of a quotient matrix: entry [t][i] is (S^t)_ii,
/// for t = 0 ..= t_max.
pub fn power_diagonals(matrix: &QuotientMatrix, t_max: usize) -> Vec<Vec<BigInt>> {
    let k = matrix.k();
    let a: Vec<BigInt> = (0..k)
        .flat_map(|i| matrix.row(i).iter().cloned())
        .collect();
    let mut power = identity(k);
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        out.push((0..k).map(|i| power[i * k + i].clone()).collect());
        if t < t_max {
            power = mat_mul(k, &power, &a);
        }
    }
    out
}

/// Exact root finding for monic integer polynomials (decreasing-degree
/// coefficients throughout).
pub mod poly {
    use super::*;

    pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
        p.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(p: &[BigInt]) -> Vec<BigInt> {
        let d = p.len() - 1;
        p.iter()
            .take(d)
            .enumerate()
            .map(|(i, c)| c * BigInt::from(d - i))
            .collect()
    }

    /// Synthetic division by (x - root); None unless the remainder vanishes.
    pub fn divide_out_root(p: &[BigInt], root: &BigInt) -> Option<Vec<BigInt>> {
        if p.len() <= 1 {
            return None;
        }
        let mut quotient = Vec::with_capacity(p.len() - 1);
        let mut carry = BigInt::zero();
        for c in &p[..p.len() - 1] {
            carry = carry * root + c;
            quotient.push(carry.clone());
        }
        carry = carry * root + &p[p.len() - 1];
        if carry.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    /// Integer roots of x^2 + bx + c, when both roots are integers.
    pub fn monic_quadratic_integer_roots(b: &BigInt, c: &BigInt) -> Option<[BigInt; 2]> {
        let disc = b * b - BigInt::from(4u8) * c;
        if disc.is_negative() {
            return None;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return None;
        }
        let two = BigInt::from(2u8);
        let (r1, rem1) = (-b - &s).div_rem(&two);
        let (r2, rem2) = (-b + &s).div_rem(&two);
        if !rem1.is_zero() || !rem2.is_zero() {
            return None;
        }
        Some([r1, r2])
    }

    fn content(p: &[BigInt]) -> BigInt {
        p.iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive(p: &[BigInt]) -> Vec<BigInt> {
        let mut p: Vec<BigInt> = p.iter().skip_while(|c| c.is_zero()).cloned().collect();
        let g = content(&p);
        if g > BigInt::one() {
            for c in &mut p {
                *c = &*c / &g;
            }
        }
        p
    }

    /// Pseudo-remainder of a by b, scaled only by positive constants so the
    /// sign pattern (all that Sturm sequences care about) is preserved.
    fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        debug_assert!(b.len() >= 2);
        let db = b.len() - 1;
        let lb_abs = b[0].abs();
        let lb_neg = b[0].is_negative();
        let strip = |r: &mut Vec<BigInt>| {
            while r.first().map_or(false, |c| c.is_zero()) {
                r.remove(0);
            }
        };
        let mut r = a.to_vec();
        strip(&mut r);
        while r.len() > db {
            let lead = r[0].clone();
            let mult = if lb_neg { -lead } else { lead };
            for c in &mut r {
                *c *= &lb_abs;
            }
            for (i, bc) in b.iter().enumerate() {
                r[i] -= &mult * bc;
            }
            debug_assert!(r[0].is_zero());
            r.remove(0);
            strip(&mut r);
        }
        r
    }

    /// Sturm chain of p, each member scaled to a primitive integer polynomial
    /// by positive constants only.
    fn sturm_chain(p: &[BigInt]) -> Vec<Vec<BigInt>> {
        let mut chain = vec![primitive(p)];
        let d = derivative(p);
        if d.is_empty() {
            return chain;
        }
        chain.push(primitive(&d));
        loop {
            let n = chain.len();
            if chain[n - 1].len() <= 1 {
                if chain[n - 1].is_empty() {
                    chain.pop();
                }
                break;
            }
            let r = positive_prem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigInt> = r.iter().map(|c| -c).collect();
            chain.push(primitive(&neg));
        }
        chain
    }

    /// Sign of p(t + 1/2). Monic integer polynomials never vanish at
    /// half-integers, which makes these safe evaluation points for
    /// root-counting; intermediate chain members may vanish (the zero signs
    /// are simply skipped when counting variations).
    fn sign_at_half(p: &[BigInt], t: &BigInt) -> i8 {
        let two_t_plus_one = BigInt::from(2u8) * t + BigInt::one();
        let mut acc = BigInt::zero();
        let mut pow2 = BigInt::one();
        for c in p {
            acc = acc * &two_t_plus_one + c * &pow2;
            pow2 *= 2;
        }
        match acc.cmp(&BigInt::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    fn variations_at_half(chain: &[Vec<BigInt>], t: &BigInt) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for member in chain {
            let s = sign_at_half(member, t);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct integer roots of p, assuming all real roots lie in
    /// [-bound, bound]. Counts real roots in half-integer windows with a
    /// Sturm chain and bisects until each window holds one integer candidate.
    pub fn isolate_integer_roots(p: &[BigInt], bound: &BigInt) -> Vec<BigInt> {
        if p.len() <= 1 {
            return Vec::new();
        }
        let chain = sturm_chain(p);
        let lo = -bound - BigInt::one();
        let hi = bound.clone();
        let mut roots = Vec::new();
        // Windows ((2a+1)/2, (2b+1)/2] hold the integers a+1 ..= b.
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            if a >= b {
                continue;
            }
            if variations_at_half(&chain, &a) == variations_at_half(&chain, &b) {
                continue;
            }
            if &b - &a == BigInt::one() {
                if eval(p, &b).is_zero() {
                    roots.push(b);
                }
                continue;
            }
            let mid = (&a + &b).div_floor(&BigInt::from(2u8));
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        roots.sort();
        roots
    }

    /// Human-readable polynomial for witness messages.
    pub fn to_string(p: &[BigInt]) -> String {
        let d = p.len().saturating_sub(1);
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = d - i;
            let mag = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let body = if e > 0 && mag.is_one() { var } else if e == 0 { mag.to_string() } else { format!("{mag}*{var}") };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}
