//! The three routes to `N_g(n)` (K3) and `N_g^Y(C_n)` (rational elliptic
//! surface), and a grid comparison of them.
//!
//! Component data for a count with budget `n + g` are pairs `(a, b)`: one
//! `a_j >= 0` per nodal fiber and one `b_i >= 1` per genus, with
//! `|a| + |b| = n + g`. A datum contributes `prod p(a_j) * prod b_i sigma(b_i)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::admseq::enumerate_admissible;
use crate::arith::{partitions_up_to, sigma, sublattice_count};
use crate::cremona::{class_from_sequence, evaluate_invariant, InvariantValue};
use crate::modforms::{
    k3_generating_series, re_generating_series, K3_NODAL_FIBERS, RES_NODAL_FIBERS,
};
use crate::{Error, Result};

pub const ENV_MAX_CONVOLUTION_BUDGET: &str = "CURVECOUNT_MAX_CONVOLUTION_BUDGET";
pub const ENV_MAX_COMPONENT_BUDGET: &str = "CURVECOUNT_MAX_COMPONENT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    K3,
    RationalElliptic,
}

impl Surface {
    pub fn short_name(self) -> &'static str {
        match self {
            Surface::K3 => "k3",
            Surface::RationalElliptic => "re",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k3" => Ok(Surface::K3),
            "re" | "res" | "rational-elliptic" | "e1" => Ok(Surface::RationalElliptic),
            _ => Err(Error::Parse(format!(
                "unknown surface {s:?} (expected k3 or re)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountQuery {
    pub surface: Surface,
    pub genus: u32,
    pub nodes: u32,
}

impl CountQuery {
    pub fn new(surface: Surface, genus: u32, nodes: u32) -> Self {
        Self {
            surface,
            genus,
            nodes,
        }
    }

    /// `n + g`, the total fiber multiplicity shared out among the data.
    pub fn budget(&self) -> u32 {
        self.nodes + self.genus
    }
}

/// One labelled stratum of the moduli space: multiplicities `a` on the
/// nodal fibers and `b` on the smooth fibers through the marked points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentDatum {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl ComponentDatum {
    pub fn weight(&self) -> u32 {
        self.a.iter().sum::<u32>() + self.b.iter().sum::<u32>()
    }
}

/// Knobs for the enumerative methods. The closed form ignores all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountConfig {
    pub k3_fiber_slots: u32,
    pub re_fiber_slots: u32,
    /// Largest `n + g` accepted by [`count_convolution`].
    pub max_convolution_budget: u32,
    /// Largest `n + g` accepted by [`count_by_components`].
    pub max_component_budget: u32,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self {
            k3_fiber_slots: K3_NODAL_FIBERS,
            re_fiber_slots: RES_NODAL_FIBERS,
            max_convolution_budget: 12,
            max_component_budget: 8,
        }
    }
}

impl CountConfig {
    /// Defaults, with guard overrides taken from the environment.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        for (var, slot) in [
            (ENV_MAX_CONVOLUTION_BUDGET, &mut cfg.max_convolution_budget),
            (ENV_MAX_COMPONENT_BUDGET, &mut cfg.max_component_budget),
        ] {
            if let Ok(v) = std::env::var(var) {
                *slot = v.trim().parse().map_err(|_| {
                    Error::Parse(format!("{var}={v:?} is not a non-negative integer"))
                })?;
            }
        }
        Ok(cfg)
    }

    pub fn fiber_slots(&self, surface: Surface) -> u32 {
        match surface {
            Surface::K3 => self.k3_fiber_slots,
            Surface::RationalElliptic => self.re_fiber_slots,
        }
    }
}

/// Coefficient of `q^n` in the closed-form generating series.
pub fn count_closed_form(q: CountQuery) -> BigUint {
    let order = q.nodes as usize;
    let series = match q.surface {
        Surface::K3 => k3_generating_series(q.genus, order),
        Surface::RationalElliptic => re_generating_series(q.genus, order),
    };
    series.coeffs()[order]
        .to_natural()
        .expect("closed-form coefficients are natural numbers")
}

/// Sums the datum contributions directly. The fiber slots are grouped by the
/// multiset of nonzero `a_j`: a partition `lambda` of the `a`-budget with at
/// most `S` parts stands for `S! / ((S - len)! prod mult!)` placements.
pub fn count_convolution(q: CountQuery, cfg: &CountConfig) -> Result<BigUint> {
    let budget = q.budget();
    if budget > cfg.max_convolution_budget {
        return Err(Error::GuardExceeded {
            method: "convolution",
            budget,
            guard: cfg.max_convolution_budget,
        });
    }
    let slots = cfg.fiber_slots(q.surface);
    let p = partitions_up_to(budget as usize);

    let mut total = BigUint::zero();
    for b_total in q.genus..=budget {
        let b_part = elliptic_part(q.genus, b_total)?;
        if b_part.is_zero() {
            continue;
        }
        total += b_part * nodal_part(slots, budget - b_total, &p);
    }
    Ok(total)
}

/// `sum over b in Z_{>=1}^g with |b| = total of prod b_i sigma(b_i)`.
fn elliptic_part(genus: u32, total: u32) -> Result<BigUint> {
    let mut sum = BigUint::zero();
    let mut err = None;
    for_each_composition(total, genus as usize, &mut |b| {
        let mut term = BigUint::one();
        for &bi in b {
            match sigma(u64::from(bi)) {
                Ok(s) => term *= u64::from(bi) * s,
                Err(e) => err = Some(e),
            }
        }
        sum += term;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(sum),
    }
}

/// `sum over a in Z_{>=0}^slots with |a| = total of prod p(a_j)`, grouped by
/// partitions of `total`.
fn nodal_part(slots: u32, total: u32, p: &[BigUint]) -> BigUint {
    let mut sum = BigUint::zero();
    for_each_partition(total, &mut |parts| {
        if parts.len() > slots as usize {
            return;
        }
        let mut term = placements(slots, parts);
        for &part in parts {
            term *= &p[part as usize];
        }
        sum += term;
    });
    sum
}

/// Ways to assign the parts (a non-increasing list) to distinct slots out of
/// `slots`, counting equal parts once: `S! / ((S - len)! prod mult!)`.
fn placements(slots: u32, parts: &[u32]) -> BigUint {
    let mut n = BigUint::one();
    for k in 0..parts.len() as u32 {
        n *= slots - k;
    }
    let mut run = 1u32;
    for i in 1..=parts.len() {
        if i < parts.len() && parts[i] == parts[i - 1] {
            run += 1;
        } else {
            n /= factorial(run);
            run = 1;
        }
    }
    n
}

fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Calls `f` on each composition of `total` into exactly `parts` positive parts.
fn for_each_composition(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn go(left: u32, parts: usize, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if parts == 0 {
            if left == 0 {
                f(prefix);
            }
            return;
        }
        for x in 1..=left.saturating_sub(parts as u32 - 1) {
            prefix.push(x);
            go(left - x, parts - 1, prefix, f);
            prefix.pop();
        }
    }
    go(total, parts, &mut Vec::with_capacity(parts), f);
}

/// Calls `f` on each partition of `total` as a non-increasing list.
fn for_each_partition(total: u32, f: &mut impl FnMut(&[u32])) {
    fn go(left: u32, max: u32, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if left == 0 {
            f(prefix);
            return;
        }
        for x in (1..=left.min(max)).rev() {
            prefix.push(x);
            go(left - x, x, prefix, f);
            prefix.pop();
        }
    }
    go(total, total, &mut Vec::new(), f);
}

/// Number of admissible sequences of magnitude `a` whose class evaluates to
/// 1 under the Cremona rewrite rules.
pub fn contributing_components(a: u32, max_steps: usize) -> Result<u64> {
    let mut count = 0;
    for s in enumerate_admissible(u64::from(a)) {
        let class = class_from_sequence(&s);
        match evaluate_invariant(&class, max_steps) {
            InvariantValue::One => count += 1,
            InvariantValue::Zero => {}
            InvariantValue::Undetermined => {
                return Err(Error::Undetermined(format!("{class} (from {s})")))
            }
        }
    }
    Ok(count)
}

/// Evaluates every component separately: each nodal slot with `a_j > 0`
/// contributes the number of its admissible sequences whose Cremona-rewritten
/// class is 1, and each `b_i` contributes `b_i` marked-point choices times the
/// number of index-`b_i` sublattices found by Hermite normal form enumeration.
///
/// Every datum `(a, b)` is visited individually, so the cost grows like
/// `C(n + g + S - 1, S - 1)`; the guard keeps this bounded.
pub fn count_by_components(q: CountQuery, max_steps: usize, cfg: &CountConfig) -> Result<BigUint> {
    let budget = q.budget();
    if budget > cfg.max_component_budget {
        return Err(Error::GuardExceeded {
            method: "components",
            budget,
            guard: cfg.max_component_budget,
        });
    }
    let slots = cfg.fiber_slots(q.surface) as usize;

    let mut nodal = vec![1u128];
    for a in 1..=budget {
        nodal.push(u128::from(contributing_components(a, max_steps)?));
    }
    let mut lattice = vec![0u128];
    for b in 1..=u64::from(budget) {
        lattice.push(u128::from(sublattice_count(b)? * b));
    }

    let mut b_vectors = Vec::new();
    for b_total in q.genus..=budget {
        for_each_composition(b_total, q.genus as usize, &mut |b| {
            b_vectors.push(b.to_vec())
        });
    }

    let mut total = BigUint::zero();
    for b in &b_vectors {
        let mut b_weight = 1u128;
        for &bi in b {
            b_weight = b_weight
                .checked_mul(lattice[bi as usize])
                .ok_or(Error::Overflow("component count"))?;
        }
        let rest = budget - b.iter().sum::<u32>();
        total += sum_nodal_data(slots, rest, b_weight, &nodal)?;
    }
    Ok(total)
}

/// Walks every `a` in `Z_{>=0}^slots` with `|a| = total` and sums, over
/// those data, `weight * prod_j factor[a_j]`.
fn sum_nodal_data(slots: usize, total: u32, weight: u128, factor: &[u128]) -> Result<u128> {
    let overflow = || Error::Overflow("component count");
    match slots {
        0 => Ok(if total == 0 { weight } else { 0 }),
        1 => weight
            .checked_mul(factor[total as usize])
            .ok_or_else(overflow),
        _ => {
            let mut sum = 0u128;
            for a in 0..=total {
                let w = weight
                    .checked_mul(factor[a as usize])
                    .ok_or_else(overflow)?;
                if w != 0 {
                    let sub = sum_nodal_data(slots - 1, total - a, w, factor)?;
                    sum = sum.checked_add(sub).ok_or_else(overflow)?;
                }
            }
            Ok(sum)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodOutcome {
    Value(BigUint),
    /// Not attempted because the budget exceeds the method's guard.
    Skipped(String),
    Failed(String),
}

impl MethodOutcome {
    fn from_result(r: Result<BigUint>) -> Self {
        match r {
            Ok(v) => MethodOutcome::Value(v),
            Err(e @ Error::GuardExceeded { .. }) => MethodOutcome::Skipped(e.to_string()),
            Err(e) => MethodOutcome::Failed(e.to_string()),
        }
    }

    pub fn agrees_with(&self, expected: &BigUint) -> bool {
        match self {
            MethodOutcome::Value(v) => v == expected,
            MethodOutcome::Skipped(_) => true,
            MethodOutcome::Failed(_) => false,
        }
    }
}

impl fmt::Display for MethodOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodOutcome::Value(v) => write!(f, "{v}"),
            MethodOutcome::Skipped(_) => write!(f, "-"),
            MethodOutcome::Failed(_) => write!(f, "ERROR"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossRow {
    pub genus: u32,
    pub nodes: u32,
    pub closed: BigUint,
    pub convolution: MethodOutcome,
    pub components: MethodOutcome,
}

impl CrossRow {
    pub fn agrees(&self) -> bool {
        self.convolution.agrees_with(&self.closed) && self.components.agrees_with(&self.closed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub surface: Surface,
    pub rows: Vec<CrossRow>,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CrossRow::agrees)
    }
}

impl fmt::Display for CrossReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4} {:>3} {:>3} {:>14} {:>14} {:>14}  ok",
            "surf", "g", "n", "closed", "convolution", "components"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>4} {:>3} {:>3} {:>14} {:>14} {:>14}  {}",
                self.surface.short_name(),
                r.genus,
                r.nodes,
                r.closed.to_string(),
                r.convolution.to_string(),
                r.components.to_string(),
                if r.agrees() { "yes" } else { "NO" }
            )?;
        }
        Ok(())
    }
}

/// Runs all three methods on every `(g, n)` with `g <= g_max`, `n <= n_max`.
/// A method outside its guard is reported as skipped, not as a mismatch.
pub fn cross_validate(
    surface: Surface,
    g_max: u32,
    n_max: u32,
    max_steps: usize,
    cfg: &CountConfig,
) -> CrossReport {
    let mut rows = Vec::new();
    for genus in 0..=g_max {
        for nodes in 0..=n_max {
            let q = CountQuery::new(surface, genus, nodes);
            rows.push(CrossRow {
                genus,
                nodes,
                closed: count_closed_form(q),
                convolution: MethodOutcome::from_result(count_convolution(q, cfg)),
                components: MethodOutcome::from_result(count_by_components(q, max_steps, cfg)),
            });
        }
    }
    CrossReport { surface, rows }
}

/// Every component datum for the query, listed explicitly. Only practical
/// for tiny budgets; used to cross-check the grouped counts.
pub fn enumerate_component_data(q: CountQuery, slots: u32) -> Vec<ComponentDatum> {
    let budget = q.budget();
    let mut out = Vec::new();
    for b_total in q.genus..=budget {
        for_each_composition(b_total, q.genus as usize, &mut |b| {
            let mut a = vec![0u32; slots as usize];
            fill_slots(&mut a, 0, budget - b_total, &mut |a| {
                out.push(ComponentDatum {
                    a: a.to_vec(),
                    b: b.to_vec(),
                })
            });
        });
    }
    out
}

fn fill_slots(a: &mut [u32], at: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if at + 1 == a.len() {
        a[at] = left;
        f(a);
        a[at] = 0;
        return;
    }
    if a.is_empty() {
        if left == 0 {
            f(a);
        }
        return;
    }
    for x in 0..=left {
        a[at] = x;
        fill_slots(a, at + 1, left - x, f);
    }
    a[at] = 0;
}
