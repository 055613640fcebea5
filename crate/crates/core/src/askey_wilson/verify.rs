//! Verifiers for the polynomial identities and the curve actions.

use std::collections::BTreeMap;

use super::*;
use crate::check::{CheckRecord, Checker, Tally};
use crate::exact::ch;
use crate::qops::{self, dhat, kalnins, KalninsKind, ShiftWord};

fn h() -> R {
    R::s_pow(2)
}

fn x0() -> R {
    R::var(Var::X0)
}

fn x1() -> R {
    R::var(Var::X1)
}

fn sq(c: R) -> R {
    &c * &c
}

/// `aw_star(n)` against the general polynomial at `t⋆`.
pub fn verify_star_is_general(n: u32, checker: &Checker) -> CheckRecord {
    let rec = CheckRecord::new("recurrence", format!("star = general at n={n}")).param("n", n);
    match aw_general(n, &AWParams::star()) {
        Ok(g) => rec.compare(checker, &aw_star(n).poly, &g.poly),
        Err(e) => rec.error(e),
    }
}

/// Symmetry in `x`, monic normalization, and, for small `n`, invariance of
/// the general polynomial under all parameter permutations.
pub fn verify_aw_shape(n: u32, max_perm_n: u32, checker: &Checker) -> CheckRecord {
    let mut t = Tally::new(CheckRecord::new("recurrence", format!("shape at n={n}")).param("n", n));
    let p = aw_star(n).poly;
    t.compare(checker, "symmetry under x -> 1/x", &p.invert_var(Var::X), &p);
    match p.coefficients_in(Var::X) {
        Ok(c) => {
            let lead = c.get(&(n as i32)).cloned().unwrap_or_else(R::zero);
            t.compare(checker, "leading coefficient", &lead, &R::one());
            t.require(c.keys().all(|k| k.unsigned_abs() <= n), "degree exceeds n");
        }
        Err(e) => t.error(e),
    }
    if n <= max_perm_n {
        let sym = AWParams::symbolic();
        match aw_general(n, &sym) {
            Ok(base) => {
                t.compare(checker, "general symmetry", &base.poly.invert_var(Var::X), &base.poly);
                for perm in permutations() {
                    match aw_general(n, &sym.permuted(perm)) {
                        Ok(other) => t.compare(checker, &format!("permutation {perm:?}"), &other.poly, &base.poly),
                        Err(e) => t.error(e),
                    }
                }
            }
            Err(e) => t.error(e),
        }
    }
    t.finish()
}

/// All 24 orderings of four slots.
pub fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn eigen_record(n: u32, half_power: i32, case: String, checker: &Checker) -> CheckRecord {
    let rec = CheckRecord::new("eigen", case).param("n", n);
    let p = aw_star(n).poly;
    let lhs = match qops::curve(3) {
        Ok(op) => op.apply(&p),
        Err(e) => return rec.error(e),
    };
    let arg = R::s_pow(2 * half_power) * x0() * x1();
    match ch(&arg) {
        Ok(c) => rec.compare(checker, &lhs, &(c.neg() * p)),
        Err(e) => rec.error(e),
    }
}

/// `A(k3) P_n = −ch(q^{−n−1/2} x0 x1) P_n`.
pub fn verify_eigen(n: u32, checker: &Checker) -> CheckRecord {
    eigen_record(n, -(2 * n as i32) - 1, format!("n={n}"), checker)
}

/// The eigen relation with `q^{−n+1/2}` in place of `q^{−n−1/2}`; must fail.
pub fn perturbed_eigen(n: u32, checker: &Checker) -> CheckRecord {
    eigen_record(n, -(2 * n as i32) + 1, format!("n={n} perturbed"), checker)
}

/// `ch(x) P_n = P_{n+1} + β_n P_n + γ_n P_{n−1}`.
pub fn verify_three_term(n: u32, checker: &Checker) -> CheckRecord {
    let rec = CheckRecord::new("recurrence", format!("n={n}")).param("n", n);
    let at = NIndex::At(n);
    let pn = aw_star(n).poly;
    let mut rhs = aw_star(n + 1).poly + recurrence_coeff(RecurrenceKind::Beta, at) * &pn;
    if n > 0 {
        rhs = rhs + recurrence_coeff(RecurrenceKind::Gamma, at) * aw_star(n - 1).poly;
    }
    rec.compare(checker, &(crate::exact::ch_var(Var::X) * pn), &rhs)
}

/// `P_n(x; q^{1/2} x0, x1) = P_n + λ_n(x0, x1) P_{n−1}` and the transposed
/// statement; one record per orientation.
pub fn verify_connection(n: u32, checker: &Checker) -> Vec<CheckRecord> {
    let p = aw_star(n);
    let prev = if n > 0 { Some(aw_star(n - 1).poly) } else { None };
    let qn = NIndex::At(n).qn();
    [(1, 0, "x0"), (0, 1, "x1")]
        .into_iter()
        .map(|(e0, e1, which)| {
            let rec = CheckRecord::new("connection", format!("n={n} shift {which}")).param("n", n);
            let lam = if e0 == 1 { lambda_at(&qn, &x0(), &x1()) } else { lambda_at(&qn, &x1(), &x0()) };
            let rhs = match &prev {
                Some(pp) => &p.poly + lam * pp,
                None => p.poly.clone(),
            };
            rec.compare(checker, &p.shifted(e0, e1), &rhs)
        })
        .collect()
}

/// `β_n + ch(q^{1/2} x0²) = λ_{n+1} + γ_n / λ_n` (or its transpose), with `n`
/// formal or concrete.  At `n = 0` the quotient `γ_0/λ_0` is `0/0`, so the
/// concrete form starts at `n = 1`.
pub fn verify_beta_lambda_gamma(n: NIndex, transposed: bool, checker: &Checker) -> CheckRecord {
    let case = format!("n={n}{}", if transposed { " transposed" } else { "" });
    let rec = CheckRecord::new("blg", case).param("n", n);
    if n == NIndex::At(0) {
        return rec.error(Error::Precondition("γ_0/λ_0 is 0/0; concrete checks start at n = 1".into()));
    }
    let (y0, y1) = if transposed { (x1(), x0()) } else { (x0(), x1()) };
    let qn = n.qn();
    let next = &qn * R::q_pow(1);
    let lhs = match ch(&(h() * &y0 * &y0)) {
        Ok(c) => beta_at(&qn, &x0(), &x1()) + c,
        Err(e) => return rec.error(e),
    };
    let rhs = match gamma_at(&qn, &x0(), &x1()).div(&lambda_at(&qn, &y0, &y1)) {
        Ok(r) => lambda_at(&next, &y0, &y1) + r,
        Err(e) => return rec.error(e),
    };
    rec.compare(checker, &lhs, &rhs)
}

/// The three parameter-shift actions at degree `n` for the given parameters.
pub fn verify_kalnins_actions(n: u32, p: &AWParams, checker: &Checker) -> Vec<CheckRecord> {
    let run = |name: &str, f: &dyn Fn() -> Result<(R, R)>| {
        let rec = CheckRecord::new("kalnins", format!("{name} n={n}")).param("n", n);
        match f() {
            Ok((lhs, rhs)) => rec.compare(checker, &lhs, &rhs),
            Err(e) => rec.error(e),
        }
    };
    let qh = R::s_pow(-2 * n as i32);
    let up = p.half_shifted([1, 1, 1, 1]);
    vec![
        run("m", &|| {
            let lhs = kalnins(KalninsKind::M, &p.to_array()).apply(&aw_general(n, p)?.poly);
            let ab = &p.a * &p.b * R::q_pow(n as i32 - 1);
            let rhs = &qh * (R::one() - ab) * aw_general(n, &p.half_shifted([-1, -1, 1, 1]))?.poly;
            Ok((lhs, rhs))
        }),
        run("l", &|| {
            let lhs = kalnins(KalninsKind::L, &p.to_array()).apply(&aw_general(n, p)?.poly);
            let rhs = if n == 0 {
                R::zero()
            } else {
                (&qh * (R::one() - R::q_pow(n as i32))).neg() * aw_general(n - 1, &up)?.poly
            };
            Ok((lhs, rhs))
        }),
        run("lstar", &|| {
            let lhs = kalnins(KalninsKind::LStar, &up.to_array()).apply(&aw_general(n, &up)?.poly);
            let f = R::one() - p.product() * R::q_pow(n as i32);
            let rhs = (&qh * R::s_pow(-2) * f).neg() * aw_general(n + 1, p)?.poly;
            Ok((lhs, rhs))
        }),
    ]
}

/// The four `d̂_{a,b}` actions on parameter-shifted `P_n`.
pub fn verify_dhat_on_aw(n: u32, checker: &Checker) -> Vec<CheckRecord> {
    let p = aw_star(n);
    let qn = NIndex::At(n).qn();
    let (x02, x12) = (R::var_pow(Var::X0, 2), R::var_pow(Var::X1, 2));
    let q = R::q_pow(1);
    let base = R::s_pow(-4 * n as i32);
    let cases: [(i32, i32, R, i64); 4] = [
        (1, 1, R::s_pow(-2) * sq(R::one() - &qn), -1),
        (1, -1, R::s_pow(-6) * sq(&x12 - &qn * &q), 0),
        (-1, 1, R::s_pow(-6) * sq(&x02 - &qn * &q), 0),
        (-1, -1, R::s_pow(-10) * sq(&x02 * &x12 - &qn * &q * &q), 1),
    ];
    cases
        .into_iter()
        .map(|(a, b, factor, dn)| {
            let rec = CheckRecord::new("dhat", format!("d({a},{b}) n={n}")).param("n", n);
            let lhs = match dhat(a, b) {
                Ok(op) => op.apply(&p.shifted(a, b)),
                Err(e) => return rec.error(e),
            };
            let m = n as i64 + dn;
            let rhs = if m < 0 { R::zero() } else { &base * factor * aw_star(m as u32).poly };
            rec.compare(checker, &lhs, &rhs)
        })
        .collect()
}

/// Re-expansion of `A(k_a) P̄_n` from first principles: the operator is split
/// by the boundary shifts `(e0, e1)` of its words, each part is applied to
/// `P_n` and re-expanded in `P_{n+1}, P_n, P_{n−1}` by degree in `x`, and the
/// ν ratio of the shift is attached.
pub fn first_principles_action(a: u8, n: u32) -> Result<ActionTermList> {
    let op = qops::curve(a)?;
    let pn = aw_star(n).poly;
    let mut groups: BTreeMap<(i32, i32), Vec<R>> = BTreeMap::new();
    for (w, c) in op.terms() {
        groups.entry((w.e0, w.e1)).or_default().push(c * w.act(&pn));
    }
    let mut basis = BTreeMap::new();
    for m in [n as i64 + 1, n as i64, n as i64 - 1] {
        if m >= 0 {
            basis.insert(m, aw_star(m as u32).coefficients()?);
        }
    }
    let mut entries = Vec::new();
    for ((e0, e1), parts) in groups {
        let g = R::sum_all(parts);
        let mut coeffs = g
            .coefficients_in(Var::X)
            .map_err(|_| Error::Precondition(format!("shift ({e0}, {e1}) leaves a pole in x")))?;
        for (&m, pm) in basis.iter().rev() {
            let c = coeffs.get(&(m as i32)).cloned().unwrap_or_else(R::zero);
            if c.is_zero() {
                continue;
            }
            for (k, v) in pm {
                let cur = coeffs.remove(k).unwrap_or_else(R::zero) - &c * v;
                if !cur.is_zero() {
                    coeffs.insert(*k, cur);
                }
            }
            let nu = nu_ratio_direct(&NuRatioSpec::concrete(e0, e1, n, m)?)?;
            entries.push(ActionTerm { shift: (m - n as i64) as i32, e0, e1, coeff: c * nu });
        }
        if let Some((k, r)) = coeffs.iter().next() {
            return Err(Error::Precondition(format!(
                "re-expansion residual for shift ({e0}, {e1}): coefficient of x^{k} is {r}"
            )));
        }
    }
    entries.sort_by_key(|t| std::cmp::Reverse(t.key()));
    Ok(ActionTermList { curve: a, n: NIndex::At(n), entries })
}

/// Compares two term lists entry by entry; a missing entry counts as zero.
pub fn compare_term_lists(t: &mut Tally, checker: &Checker, lhs: &ActionTermList, rhs: &ActionTermList) {
    let mut keys: Vec<(i32, i32, i32)> = lhs.entries.iter().chain(&rhs.entries).map(|e| e.key()).collect();
    keys.sort();
    keys.dedup();
    for (s, e0, e1) in keys.into_iter().rev() {
        let a = lhs.get(s, e0, e1).cloned().unwrap_or_else(R::zero);
        let b = rhs.get(s, e0, e1).cloned().unwrap_or_else(R::zero);
        t.compare(checker, &format!("entry ({s}, {e0}, {e1})"), &a, &b);
    }
}

/// First-principles expansion against the Prop-mode and Corollary-mode
/// term lists at degree `n`.
pub fn verify_prop_action(a: u8, n: u32, checker: &Checker) -> CheckRecord {
    let mut t = Tally::new(CheckRecord::new("prop", format!("k{a} n={n}")).param("curve", a).param("n", n));
    let lists = first_principles_action(a, n).and_then(|fp| {
        let prop = pbar_action(a, ActionMode::Prop, NIndex::At(n))?;
        let cor = pbar_action(a, ActionMode::Corollary, NIndex::At(n))?;
        Ok((fp, prop, cor))
    });
    match lists {
        Ok((fp, prop, cor)) => {
            compare_term_lists(&mut t, checker, &fp, &prop);
            compare_term_lists(&mut t, checker, &prop, &cor);
        }
        Err(e) => t.error(e),
    }
    t.finish()
}

/// Prop-mode and Corollary-mode lists agree with `n` formal.
pub fn verify_modes_agree(a: u8, checker: &Checker) -> CheckRecord {
    let mut t = Tally::new(CheckRecord::new("prop", format!("k{a} formal")).param("curve", a));
    match (
        pbar_action(a, ActionMode::Prop, NIndex::Formal),
        pbar_action(a, ActionMode::Corollary, NIndex::Formal),
    ) {
        (Ok(p), Ok(c)) => compare_term_lists(&mut t, checker, &p, &c),
        (Err(e), _) | (_, Err(e)) => t.error(e),
    }
    t.finish()
}

/// `ν(ε, n→m) · ν(−ε, m→n)|_{x ↦ q^{ε/2} x} = 1` for every label and offset,
/// and the formal route against the direct one at `n`.
pub fn verify_nu_ratios(n: u32, checker: &Checker) -> CheckRecord {
    let mut t = Tally::new(CheckRecord::new("prop", format!("n={n}")).param("n", n));
    for e0 in -1..=1 {
        for e1 in -1..=1 {
            for d in -1..=1 {
                if (n as i64) + (d as i64) < 0 {
                    continue;
                }
                let m = (n as i64 + d as i64) as u32;
                let res = (|| -> Result<(R, R, R)> {
                    let spec = NuRatioSpec::concrete(e0, e1, n, m as i64)?;
                    let there = nu_ratio(&spec)?;
                    let back = nu_ratio(&NuRatioSpec::concrete(-e0, -e1, m, n as i64)?)?;
                    let back = ShiftWord::new(false, 0, e0, e1).act(&back);
                    Ok((there.clone(), nu_ratio_direct(&spec)?, there * back))
                })();
                match res {
                    Ok((formal, direct, looped)) => {
                        let what = format!("({e0}, {e1}, {n}->{m})");
                        t.compare(checker, &format!("{what} formal vs direct"), &formal, &direct);
                        t.compare(checker, &format!("{what} loop"), &looped, &R::one());
                    }
                    Err(e) => t.error(e),
                }
            }
        }
    }
    t.finish()
}
