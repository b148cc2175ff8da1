//! Generating-function recurrences for the number of maximal trees and of
//! all trees by node count, with identity checks and comparison against
//! direct enumeration.

use crate::enumerate::count_by_nodes;
use crate::error::{Error, Result};
use crate::tree::Params;
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};
use std::fmt::Write as _;

/// Largest number of colors accepted by [`m_table`].
pub const M_MAX_COLORS: usize = 3;
/// Largest truncation order accepted by [`m_table`].
pub const M_MAX_ORDER: usize = 30;
/// Largest number of colors accepted by [`p_table`].
pub const P_MAX_COLORS: usize = 2;
/// Largest truncation order accepted by [`p_table`].
pub const P_MAX_ORDER: usize = 12;

/// Coefficients of the series for all `(b, u)` with `b + u = colors`,
/// truncated at `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    pub colors: usize,
    pub order: usize,
    /// `maximal[ℓ][b]`: number of maximal trees with `ℓ` leaves and `b`
    /// balanced colors.
    pub maximal: Vec<Vec<BigUint>>,
    /// `by_nodes[ℓ][b][n]`: number of trees with `n` nodes. Empty when only
    /// maximal counts were requested.
    pub by_nodes: Vec<Vec<Vec<BigUint>>>,
}

impl SeriesTable {
    pub fn m(&self, leaves: usize, balanced: usize) -> &BigUint {
        &self.maximal[leaves][balanced]
    }

    pub fn p(&self, leaves: usize, balanced: usize, nodes: usize) -> BigUint {
        self.by_nodes[leaves][balanced]
            .get(nodes)
            .cloned()
            .unwrap_or_default()
    }

    /// Total number of trees, the coefficient of `P(x, 1)`.
    pub fn total(&self, leaves: usize, balanced: usize) -> BigUint {
        self.by_nodes[leaves][balanced].iter().sum()
    }

    /// Coefficient of `P(x, -1)`.
    pub fn alternating(&self, leaves: usize, balanced: usize) -> BigInt {
        self.by_nodes[leaves][balanced]
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let c = BigInt::from(c.clone());
                if n % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Node-count histogram, trimmed to the ranks that occur.
    pub fn histogram(&self, leaves: usize, balanced: usize) -> Vec<BigUint> {
        let row = &self.by_nodes[leaves][balanced];
        let first = row.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let last = row.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        row[first..=last].to_vec()
    }
}

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

fn check_caps(colors: usize, order: usize, max_colors: usize, max_order: usize) -> Result<()> {
    if colors > max_colors {
        return Err(Error::CapExceeded {
            size: colors,
            cap: max_colors,
        });
    }
    if order > max_order {
        return Err(Error::CapExceeded {
            size: order,
            cap: max_order,
        });
    }
    Ok(())
}

/// Maximal-tree counts: a maximal tree is a leaf (only without balanced
/// colors), a unary node whose pebble makes one more color balanced, or a
/// binary node whose two children split the unbalanced colors.
pub fn m_table(colors: usize, order: usize) -> Result<SeriesTable> {
    check_caps(colors, order, M_MAX_COLORS, M_MAX_ORDER)?;
    let k = colors;
    let mut m = vec![vec![BigUint::zero(); k + 1]; order + 1];
    for l in 1..=order {
        for b in 0..=k {
            let u = k - b;
            let mut total = BigUint::zero();
            if l == 1 && b == 0 {
                total += 1u32;
            }
            if b > 0 {
                total += &m[l][b - 1] * BigUint::from(b);
            }
            for v in 0..=u {
                let weight = choose(u, v);
                let mut conv = BigUint::zero();
                for l1 in 1..l {
                    conv += &m[l1][b + v] * &m[l - l1][b + u - v];
                }
                total += weight * conv;
            }
            m[l][b] = total;
        }
    }
    Ok(SeriesTable {
        colors,
        order,
        maximal: m,
        by_nodes: Vec::new(),
    })
}

/// Counts of all trees by node count.
///
/// A tree is a leaf, a unary node over a tree with fewer balanced colors,
/// or a node with at least two children. In the last case each child is
/// balanced for an arbitrary subset of the colors, subject to every
/// unbalanced color of the node being unbalanced in at least one child. The
/// children sequences are counted with a running state recording how many
/// of the node's unbalanced colors have already been seen unbalanced.
pub fn p_table(colors: usize, order: usize) -> Result<SeriesTable> {
    check_caps(colors, order, P_MAX_COLORS, P_MAX_ORDER)?;
    let k = colors;
    let width = order * (k + 1) + 1;
    let zero_row = || vec![BigUint::zero(); width];
    // p[l][b][n]
    let mut p = vec![vec![zero_row(); k + 1]; order + 1];
    // seq[b][l][j][n]: sequences of at least one child
    let mut seq = vec![vec![vec![zero_row(); k + 1]; order + 1]; k + 1];

    let transition = |b: usize, j: usize, jn: usize, cb: usize, c: usize| -> BigUint {
        let u = k - b;
        if jn < j || jn > u || c + jn < u || c + jn - u > j {
            return BigUint::zero();
        }
        choose(b, cb) * choose(u - j, jn - j) * choose(j, c + jn - u)
    };

    for l in 1..=order {
        // sequences with at least two children, ending at full coverage
        let mut longer = vec![vec![zero_row(); k + 1]; k + 1];
        for (b, longer_b) in longer.iter_mut().enumerate() {
            let u = k - b;
            for l1 in 1..l {
                let l2 = l - l1;
                for j in 0..=u {
                    for n1 in 0..width {
                        if seq[b][l1][j][n1].is_zero() {
                            continue;
                        }
                        for jn in j..=u {
                            for cb in 0..=b {
                                for c in 0..=u {
                                    let w = transition(b, j, jn, cb, c);
                                    if w.is_zero() {
                                        continue;
                                    }
                                    let base = &seq[b][l1][j][n1] * &w;
                                    for n2 in 0..width - n1 {
                                        let child = &p[l2][cb + c][n2];
                                        if !child.is_zero() {
                                            longer_b[jn][n1 + n2] += &base * child;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for b in 0..=k {
            let u = k - b;
            let mut row = zero_row();
            if l == 1 && b == 0 {
                row[0] += 1u32;
            }
            for s in 1..=b {
                let w = choose(b, s);
                for n in 1..width {
                    row[n] += &w * &p[l][b - s][n - 1];
                }
            }
            for n in 1..width {
                row[n] += &longer[b][u][n - 1];
            }
            p[l][b] = row;
        }
        for b in 0..=k {
            let u = k - b;
            for jn in 0..=u {
                let mut row = longer[b][jn].clone();
                for cb in 0..=b {
                    for c in 0..=u {
                        let w = transition(b, 0, jn, cb, c);
                        if w.is_zero() {
                            continue;
                        }
                        for n in 0..width {
                            row[n] += &w * &p[l][cb + c][n];
                        }
                    }
                }
                seq[b][l][jn] = row;
            }
        }
    }
    let maximal = m_table(colors, order.min(M_MAX_ORDER))?.maximal;
    Ok(SeriesTable {
        colors,
        order,
        maximal,
        by_nodes: p,
    })
}

/// Coefficients of `x / (a + c x)` with `a = (-1)^b` and `c = (-1)^u`, from
/// `x^1` to `x^order`, by long division.
pub fn closed_form_alternating(balanced: usize, unbalanced: usize, order: usize) -> Vec<BigInt> {
    let a = if balanced.is_multiple_of(2) { 1 } else { -1 };
    let c = if unbalanced.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::new();
    let mut q = BigInt::from(a);
    for _ in 1..=order {
        out.push(q.clone());
        q = -q * c * a;
    }
    out
}

/// Catalan numbers `C_0..=C_n`.
pub fn catalan(n: usize) -> Vec<BigUint> {
    (0..=n)
        .map(|i| choose(2 * i, i) / BigUint::from(i + 1))
        .collect()
}

fn series_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `Σ c_k M^k + extra` through `x^order`, given `M` as a
/// series starting at `x^0`.
fn polynomial_residue(m: &[BigInt], coeffs: &[i64], extra: &[(usize, i64)], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    let mut power = vec![BigInt::zero(); order + 1];
    power[0] = BigInt::one();
    for &c in coeffs {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += p * c;
        }
        power = series_mul(&power, m, order);
    }
    for &(deg, c) in extra {
        if deg <= order {
            out[deg] += c;
        }
    }
    out
}

/// Outcome of the identity checks: one line per check.
#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checks: Vec<(String, bool)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn record(&mut self, name: String, ok: bool) {
        self.checks.push((name, ok));
    }
}

/// Checks the closed forms available for `b + u = colors` through `x^order`:
/// the evaluation at `y = -1`, the product formula for one balanced and one
/// unbalanced color, and the cubic equations for a single color.
pub fn check_identities(colors: usize, order: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    if colors <= P_MAX_COLORS {
        let table = p_table(colors, order.min(P_MAX_ORDER))?;
        for b in 0..=colors {
            let u = colors - b;
            let expected = closed_form_alternating(b, u, table.order);
            let found: Vec<BigInt> = (1..=table.order).map(|l| table.alternating(l, b)).collect();
            report.record(format!("P^{{{b},{u}}}(x,-1) closed form through x^{}", table.order), found == expected);
        }
    }
    let m = m_table(colors, order)?;
    if colors == 2 {
        let cat = catalan(order);
        let ok = (1..=order).all(|l| *m.m(l, 1) == BigUint::from(10u32).pow(l as u32 - 1) * &cat[l - 1]);
        report.record(format!("m^{{1,1}} = 10^(l-1) C_(l-1) through l = {order}"), ok);
    }
    if colors == 1 {
        for (b, coeffs, extra, name) in [
            (1usize, vec![0i64, 1, -3, 2], vec![(1usize, -1i64)], "2M^3 - 3M^2 + M - x"),
            (0usize, vec![0i64, 0, -1, 4], vec![(2usize, 1i64)], "4M^3 - M^2 + x^2"),
        ] {
            let series: Vec<BigInt> = (0..=order).map(|l| BigInt::from(m.m(l, b).clone())).collect();
            let residue = polynomial_residue(&series, &coeffs, &extra, order);
            report.record(
                format!("{name} vanishes for M^{{{b},{}}} through x^{order}", 1 - b),
                residue.iter().all(Zero::is_zero),
            );
        }
    }
    Ok(report)
}

/// Direct enumeration counts next to recurrence counts.
#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub params: Params,
    pub enumerated: Vec<u64>,
    pub recurrence: Vec<BigUint>,
    pub enumerated_maximal: u64,
    pub recurrence_maximal: BigUint,
    pub mismatches: Vec<String>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn enumerated_total(&self) -> u64 {
        self.enumerated.iter().sum()
    }
}

/// Compares per-node-count and maximal counts of direct enumeration with the
/// recurrences.
pub fn cross_validate(p: &Params, cap: usize) -> Result<CrossValidation> {
    let enumerated = count_by_nodes(p, false, cap)?;
    let enumerated_maximal = count_by_nodes(p, true, cap)?.iter().sum();
    let table = p_table(p.colors(), p.leaves)?;
    let recurrence: Vec<BigUint> = (0..enumerated.len())
        .map(|n| table.p(p.leaves, p.balanced, n))
        .collect();
    let recurrence_maximal = table.m(p.leaves, p.balanced).clone();
    let mut mismatches = Vec::new();
    for (n, (e, r)) in enumerated.iter().zip(&recurrence).enumerate() {
        if BigUint::from(*e) != *r {
            mismatches.push(format!("{n} nodes: enumerated {e}, recurrence {r}"));
        }
    }
    if table.total(p.leaves, p.balanced) != BigUint::from(enumerated.iter().sum::<u64>()) {
        mismatches.push("totals differ".into());
    }
    if BigUint::from(enumerated_maximal) != recurrence_maximal {
        mismatches.push(format!(
            "maximal: enumerated {enumerated_maximal}, recurrence {recurrence_maximal}"
        ));
    }
    if enumerated.get(p.max_rank()).copied() != Some(enumerated_maximal) {
        mismatches.push("maximal trees are not the trees of top rank".into());
    }
    Ok(CrossValidation {
        params: *p,
        enumerated,
        recurrence,
        enumerated_maximal,
        recurrence_maximal,
        mismatches,
    })
}

/// Tab-separated rows `ℓ b u n count` of a table with node counts.
pub fn table_tsv(table: &SeriesTable) -> String {
    let mut out = String::from("l\tb\tu\tn\tcount\n");
    for l in 1..=table.order {
        for b in 0..=table.colors {
            for (n, c) in table.by_nodes[l][b].iter().enumerate() {
                if !c.is_zero() {
                    let _ = writeln!(out, "{l}\t{b}\t{}\t{n}\t{c}", table.colors - b);
                }
            }
        }
    }
    out
}

/// The series written as sums of `x^ℓ (…)`, one line per `(b, u)`.
pub fn series_text(table: &SeriesTable) -> String {
    let mut out = String::new();
    for b in 0..=table.colors {
        let u = table.colors - b;
        let mut terms = Vec::new();
        for l in 1..=table.order {
            let poly: Vec<String> = table.by_nodes[l][b]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| {
                    let coef = if c.is_one() && n > 0 { String::new() } else { c.to_string() };
                    match n {
                        0 => coef,
                        1 => format!("{coef}y"),
                        _ => format!("{coef}y^{n}"),
                    }
                })
                .collect();
            if poly.is_empty() {
                continue;
            }
            let x = if l == 1 { "x".to_string() } else { format!("x^{l}") };
            terms.push(format!("{x}({})", poly.join(" + ")));
        }
        let _ = writeln!(out, "P^{{{b},{u}}}(x,y) = {} + O(x^{})", terms.join(" + "), table.order + 1);
    }
    out
}
