//! Mechanical checks: adjacent-torus rewriting, the power identities, the
//! `p`-divisibility symmetry between adjacent tori, specialization, and
//! graded-rank probes.
//!
//! Checks return a [`VerificationReport`]; a failing check records witnesses
//! instead of returning an error. Errors are reserved for bad input.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::grading::{degree_of, grading_lattice, GradingError, GradingVector};
use crate::graph::enumerate_exchange_graph;
use crate::intlin::IntMatrix;
use crate::laurent::Laurent;
use crate::qcoeff::{QCoeff, Valuation};
use crate::qtorus::{ToricFrame, TorusElement, TorusError};
use crate::rank::{laurent_rank, torus_rank};
use crate::seed::{ClassicalSeed, CompatiblePair, ExchangeBinomial, MutationPath, QuantumSeed, SeedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("not in the adjacent torus: the X_k^{power} part {remainder} does not divide")]
    NotInAdjacentTorus { power: i64, remainder: String },
    #[error("grading vector {0} is not in the grading lattice")]
    NotInLattice(GradingVector),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub status: Status,
    pub cases_run: u64,
    pub witnesses: Vec<Value>,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl VerificationReport {
    fn new(check_name: &str, cases_run: u64, mut witnesses: Vec<Value>, started: Instant) -> Self {
        witnesses.sort_by_key(|w| w.to_string());
        VerificationReport {
            check_name: check_name.to_string(),
            status: if witnesses.is_empty() { Status::Pass } else { Status::Fail },
            cases_run,
            witnesses,
            millis: started.elapsed().as_millis() as u64,
            details: None,
        }
    }

    fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Zeroes the wall-clock field so reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.millis = 0;
        self
    }

    /// Combines per-seed reports; each witness is tagged with its seed's path.
    pub fn merge(check_name: &str, parts: Vec<(String, VerificationReport)>) -> VerificationReport {
        let mut witnesses = Vec::new();
        let mut details = Vec::new();
        let (mut cases, mut millis) = (0, 0);
        for (path, r) in parts {
            cases += r.cases_run;
            millis += r.millis;
            for w in r.witnesses {
                witnesses.push(json!({"seed": path, "witness": w}));
            }
            details.push(json!({"seed": path, "cases": r.cases_run, "details": r.details}));
        }
        VerificationReport {
            check_name: check_name.to_string(),
            status: if witnesses.is_empty() { Status::Pass } else { Status::Fail },
            cases_run: cases,
            witnesses,
            millis,
            details: Some(Value::Array(details)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn unit_vector(m: usize, k: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; m];
    e[k] = v;
    e
}

/// Adjacent frame, its pair and the expression of the old `X_k` in it.
struct Adjacent {
    pair: CompatiblePair,
    frame: Arc<ToricFrame>,
    binomial: ExchangeBinomial,
    old_generator: TorusElement,
}

fn adjacent(seed: &QuantumSeed, k: usize) -> Result<Adjacent, VerifyError> {
    let pair = seed.pair().mutate(k)?;
    let frame = seed.adjacent_frame(k)?;
    let binomial = ExchangeBinomial::new(&pair, k)?;
    let old_generator = binomial.mutated_generator(&frame);
    Ok(Adjacent { pair, frame, binomial, old_generator })
}

fn rewrite_with(adj: &Adjacent, seed: &QuantumSeed, x: &TorusElement, k: usize) -> Result<TorusElement, VerifyError> {
    if x.frame() != seed.frame() {
        return Err(TorusError::FrameMismatch(x.frame().label().into(), seed.frame().label().into()).into());
    }
    let mut out = TorusElement::zero(&adj.frame);
    for (&j, c) in &x.decompose_along(k).parts {
        let c = c.with_frame(&adj.frame)?;
        let power = adj.old_generator.pow(j.unsigned_abs() as u32);
        let piece = if j >= 0 {
            &power * &c
        } else {
            c.left_divide_exact(&power)
                .map_err(|_| VerifyError::NotInAdjacentTorus { power: j, remainder: c.to_string() })?
        };
        out = &out + &piece;
    }
    Ok(out)
}

/// Expresses `x` (in the seed's own frame) in the frame of `mu_k(seed)`.
///
/// Off-`k` monomials are shared by both tori. Writing `x = sum_j X_k^j c_j`,
/// nonnegative powers of `X_k` are expanded directly and negative ones need
/// an exact left division; a failed division proves `x` is not in the
/// adjacent torus.
pub fn rewrite_in_adjacent_frame(seed: &QuantumSeed, x: &TorusElement, k: usize) -> Result<TorusElement, VerifyError> {
    rewrite_with(&adjacent(seed, k)?, seed, x, k)
}

/// `Q^{(2l-1)m/2} ... Q^{3m/2} Q^{m/2}` with `sign = 1`, or
/// `Q^{-m/2} Q^{-3m/2} ... Q^{(1-2l)m/2}` with `sign = -1`.
fn q_product(bin: &ExchangeBinomial, frame: &Arc<ToricFrame>, l: i64, sign: i64) -> TorusElement {
    let mut acc = TorusElement::one(frame);
    if sign > 0 {
        for j in (1..=l).rev() {
            acc = &acc * &bin.q_binomial(frame, 2 * j - 1);
        }
    } else {
        for j in 1..=l {
            acc = &acc * &bin.q_binomial(frame, 1 - 2 * j);
        }
    }
    acc
}

/// Checks, in the frame of `mu_k(seed)` where `X'_k = M(e_k)`:
/// `Q^{jm/2} X'^{-1} = X'^{-1} Q^{(j+2)m/2}` for `j in -3..=3`,
/// `X'^{-1} M(b_+-) = q^{-m_+-} M(b_+-) X'^{-1}`, and for `0 <= l <= l_max`
/// `X_k^l = Q^{-m/2} ... Q^{(1-2l)m/2} X'^{-l} = X'^{-l} Q^{(2l-1)m/2} ... Q^{m/2}`
/// together with the multiplied-out forms for `X'^l`.
pub fn verify_power_identities(seed: &QuantumSeed, k: usize, l_max: u32) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let adj = adjacent(seed, k)?;
    let (f, bin) = (&adj.frame, &adj.binomial);
    let m = adj.pair.m();
    let xp = TorusElement::monomial(f, unit_vector(m, k, 1));
    let xp_inv = TorusElement::monomial(f, unit_vector(m, k, -1));
    let x = &adj.old_generator;
    let mut witnesses = Vec::new();
    let mut cases = 0u64;
    let mut check = |ok: bool, w: Value| {
        cases += 1;
        if !ok {
            witnesses.push(w);
        }
    };
    for j in -3..=3 {
        let lhs = &bin.q_binomial(f, j) * &xp_inv;
        let rhs = &xp_inv * &bin.q_binomial(f, j + 2);
        check(lhs == rhs, json!({"kind": "IdentityViolation", "identity": "commutation", "j": j}));
    }
    for (b, mm, side) in [(&bin.b_plus, bin.m_plus, "b_plus"), (&bin.b_minus, bin.m_minus, "b_minus")] {
        let mono = TorusElement::monomial(f, b.clone());
        let lhs = &xp_inv * &mono;
        let rhs = &(&mono * &xp_inv).scalar_mul(&QCoeff::q_pow(-2 * mm));
        check(&lhs == rhs, json!({"kind": "IdentityViolation", "identity": "monomial commutation", "side": side}));
    }
    for l in 0..=l_max as i64 {
        let xl = x.pow(l as u32);
        let (xpl, xpl_inv) = (xp.pow(l as u32), xp_inv.pow(l as u32));
        let (neg, pos) = (q_product(bin, f, l, -1), q_product(bin, f, l, 1));
        let w = |side: &str| json!({"kind": "IdentityViolation", "l": l, "side": side});
        check(xl == &neg * &xpl_inv, w("X^l = Q^{-m/2}...Q^{(1-2l)m/2} X'^{-l}"));
        check(xl == &xpl_inv * &pos, w("X^l = X'^{-l} Q^{(2l-1)m/2}...Q^{m/2}"));
        check(&xl * &xpl == neg, w("X^l X'^l = Q^{-m/2}...Q^{(1-2l)m/2}"));
        check(&xpl * &xl == pos, w("X'^l X^l = Q^{(2l-1)m/2}...Q^{m/2}"));
    }
    Ok(VerificationReport::new("powerids", cases, witnesses, started).with_details(json!({
        "direction": k + 1,
        "m_plus": bin.m_plus,
        "m_minus": bin.m_minus,
    })))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> QCoeff {
    loop {
        let start = rng.gen_range(-3..=3);
        let span = rng.gen_range(1..=4);
        let c = QCoeff::from_ints(&(0..span).map(|i| (start + i, rng.gen_range(-3..=3))).collect::<Vec<_>>());
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random element of `T(seed) ∩ T(mu_k seed)`, in the seed's frame: a sum
/// of `c M(r) X_k^a X'_k^b` with `r` off `k` in `[-3,3]^m` and `a, b <= 2`.
fn random_intersection_element(seed: &QuantumSeed, k: usize, rng: &mut ChaCha8Rng) -> Result<TorusElement, VerifyError> {
    let f = seed.frame();
    let m = seed.pair().m();
    let xk = TorusElement::generator(f, k);
    let xk_new = seed.exchange_binomial(k)?.mutated_generator(f);
    let mut acc = TorusElement::zero(f);
    while acc.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let mut r: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            r[k] = 0;
            let (a, b) = (rng.gen_range(0..=2u32), rng.gen_range(0..=2u32));
            let t = &(&TorusElement::term(f, random_coeff(rng), r) * &xk.pow(a)) * &xk_new.pow(b);
            acc = &acc + &t;
        }
    }
    Ok(acc)
}

/// One inclusion direction: elements built in `from`'s torus, multiplied by
/// `p` and rewritten into the torus of `mu_k(from)`.
fn prop_key_direction(
    from: &QuantumSeed,
    k: usize,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
    label: &str,
) -> Result<(u64, Vec<Value>), VerifyError> {
    let adj = adjacent(from, k)?;
    let back_seed = from.mutate(k)?;
    let back = adjacent(&back_seed, k)?;
    let p = QCoeff::p();
    let mut witnesses = Vec::new();
    let mut cases = 0u64;
    for sample in 0..n_samples {
        let t = random_intersection_element(from, k, rng)?;
        let y = t.scalar_mul(&p);
        let w = |what: &str| json!({"kind": "PropKeyViolation", "direction": label, "sample": sample, "check": what, "t": t.to_string()});
        cases += 1;
        let y_adj = match rewrite_with(&adj, from, &y, k) {
            Ok(v) => v,
            Err(_) => {
                witnesses.push(w("p t is not in the adjacent torus"));
                continue;
            }
        };
        if !y_adj.p_divisible().is_divisible() {
            witnesses.push(w("rewritten p t is not p-divisible"));
            continue;
        }
        // inverse rewrite of t recovers t
        let t_adj = y_adj.divide_by_p_exact()?;
        match rewrite_with(&back, &back_seed, &t_adj, k) {
            Ok(t_back) if t_back == t => {}
            _ => witnesses.push(w("inverse rewrite does not return t")),
        }
        // divisibility is the same in both tori
        let t_rewritten = rewrite_with(&adj, from, &t, k)?;
        if t_rewritten != t_adj {
            witnesses.push(w("rewriting does not commute with division by p"));
        }
        let (v0, v1) = (t.p_divisible(), t_rewritten.p_divisible());
        if v0.is_divisible() != v1.is_divisible() || v0 != v1 {
            witnesses.push(w("p-valuation differs between the tori"));
        }
        // d_{-l} = Q^{(2l-1)m/2} ... Q^{m/2} c_l, d_0 = c_0
        let (c, d) = (y.decompose_along(k), y_adj.decompose_along(k));
        for (&l, cl) in &c.parts {
            if l < 0 {
                continue;
            }
            let cl = cl.with_frame(&adj.frame)?;
            let expected = &q_product(&adj.binomial, &adj.frame, l, 1) * &cl;
            if d.part(-l) != expected {
                witnesses.push(json!({"kind": "PropKeyViolation", "direction": label, "sample": sample, "check": "d_{-l} relation", "l": l, "t": t.to_string()}));
            }
        }
    }
    Ok((cases, witnesses))
}

/// Samples both inclusions of `(pT) ∩ T_k = T ∩ (pT_k)`: `n_samples`
/// elements from each side, deterministic in `rng_seed`.
pub fn verify_prop_key(seed: &QuantumSeed, k: usize, n_samples: usize, rng_seed: u64) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (c1, mut w1) = prop_key_direction(seed, k, n_samples, &mut rng, "forward")?;
    let (c2, w2) = prop_key_direction(&seed.mutate(k)?, k, n_samples, &mut rng, "backward")?;
    w1.extend(w2);
    Ok(VerificationReport::new("propkey", c1 + c2, w1, started).with_details(json!({"direction": k + 1})))
}

/// Quantum and classical graphs enumerated separately; each quantum seed's
/// variables must specialize to the classical seed reached by the same path,
/// and the induced map between the distinct-variable sets must be a bijection.
pub fn specialization_check(pair: &CompatiblePair, max_depth: usize) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let qg = enumerate_exchange_graph(QuantumSeed::initial(pair.clone()), max_depth)?;
    let cg = enumerate_exchange_graph(ClassicalSeed::initial(pair.b_tilde().clone()), max_depth)?;
    let c0 = ClassicalSeed::initial(pair.b_tilde().clone());
    let per_seed: Vec<(u64, Vec<Value>)> = qg
        .seeds
        .par_iter()
        .map(|s| -> Result<(u64, Vec<Value>), VerifyError> {
            let c = c0.mutate_path(s.path())?;
            let mut w = Vec::new();
            for (i, (qv, cv)) in s.vars().iter().zip(c.vars()).enumerate() {
                let sp = qv.specialize_q1();
                if &sp != cv {
                    w.push(json!({
                        "kind": "SpecializationMismatch",
                        "path": s.path().to_string(),
                        "index": i + 1,
                        "specialized": sp.to_string(),
                        "classical": cv.to_string(),
                    }));
                }
            }
            Ok((s.vars().len() as u64, w))
        })
        .collect::<Result<_, _>>()?;
    let mut cases = 0;
    let mut witnesses = Vec::new();
    for (c, w) in per_seed {
        cases += c;
        witnesses.extend(w);
    }
    let qvars = qg.variables();
    let images: BTreeSet<String> = qvars.iter().map(|(_, v)| v.specialize_q1().to_string()).collect();
    let cvars: BTreeSet<String> = cg.variables().into_iter().map(|(k, _)| k).collect();
    cases += 1;
    if images.len() != qvars.len() {
        witnesses.push(json!({"kind": "SpecializationMismatch", "check": "not injective", "quantum": qvars.len(), "images": images.len()}));
    }
    if images != cvars {
        let missing: Vec<&String> = cvars.difference(&images).collect();
        let extra: Vec<&String> = images.difference(&cvars).collect();
        witnesses.push(json!({"kind": "SpecializationMismatch", "check": "image differs from classical ball", "missing": missing, "extra": extra}));
    }
    Ok(VerificationReport::new("specialization", cases, witnesses, started).with_details(json!({
        "quantum_seeds": qg.num_seeds(),
        "classical_seeds": cg.num_seeds(),
        "quantum_variables": qvars.len(),
        "classical_variables": cvars.len(),
        "closed": qg.closed && cg.closed,
    })))
}

/// Every mutation sequence of length `<= depth` (as a tree, no identification)
/// must divide exactly, and each new variable must satisfy its exchange
/// relation when multiplied back.
pub fn verify_laurent(pair: &CompatiblePair, depth: usize) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    fn walk(s: &QuantumSeed, depth: usize, out: &mut (u64, Vec<Value>)) {
        if depth == 0 {
            return;
        }
        for k in 0..s.pair().n_ex() {
            out.0 += 1;
            match s.mutate(k) {
                Ok(t) => {
                    let bin = s.exchange_binomial(k).expect("index checked");
                    let rhs = &s.current_monomial(&bin.b_plus).scalar_mul(&QCoeff::q_pow(bin.m_plus))
                        + &s.current_monomial(&bin.b_minus).scalar_mul(&QCoeff::q_pow(bin.m_minus));
                    if &s.vars()[k] * &t.vars()[k] != rhs {
                        out.1.push(json!({"kind": "ExchangeRelation", "path": t.path().to_string()}));
                    }
                    walk(&t, depth - 1, out);
                }
                Err(e) => out.1.push(json!({"kind": "NonLaurent", "path": s.path().then(k).to_string(), "error": e.to_string()})),
            }
        }
    }
    let root = QuantumSeed::initial(pair.clone());
    let branches: Vec<(u64, Vec<Value>)> = if depth == 0 {
        vec![]
    } else {
        (0..pair.n_ex())
            .into_par_iter()
            .map(|k| {
                let mut out = (0, Vec::new());
                let single = MutationPath(vec![k]);
                match root.mutate(k) {
                    Ok(t) => {
                        out.0 += 1;
                        walk(&t, depth - 1, &mut out)
                    }
                    Err(e) => out.1.push(json!({"kind": "NonLaurent", "path": single.to_string(), "error": e.to_string()})),
                }
                out
            })
            .collect()
    };
    let (mut cases, mut witnesses) = (0, Vec::new());
    for (c, w) in branches {
        cases += c;
        witnesses.extend(w);
    }
    Ok(VerificationReport::new("laurent", cases, witnesses, started).with_details(json!({"depth": depth})))
}

/// Multisets of `0..=max_factors` indices (sorted) with total degree `g`.
fn multisets_of_degree(degrees: &[i64], g: i64, max_factors: usize) -> Vec<Vec<usize>> {
    fn go(degrees: &[i64], start: usize, left: usize, g: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if g == 0 {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..degrees.len() {
            cur.push(i);
            go(degrees, i, left - 1, g - degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, max_factors, g, &mut Vec::new(), &mut out);
    out
}

/// Desk-scale probe of `rank_R(U_g) = dim A_g`: in each degree `g`, the span
/// of products of at most `max_factors` enumerated cluster variables (frozen
/// ones included, factors in a fixed order). The classical dimension over
/// `Q` is compared with the quantum rank over `Frac(R)`; the `Q`-rank of the
/// specialized quantum products is reported alongside.
pub fn graded_dimension_report(
    pair: &CompatiblePair,
    d: &GradingVector,
    g_range: RangeInclusive<i64>,
    max_depth: usize,
    max_factors: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    if d.0.len() != pair.m() || !grading_lattice(pair.b_tilde()).contains(d) {
        return Err(VerifyError::NotInLattice(d.clone()));
    }
    let (m, n) = (pair.m(), pair.n_ex());
    let q0 = QuantumSeed::initial(pair.clone());
    let c0 = ClassicalSeed::initial(pair.b_tilde().clone());
    let mut qvars: Vec<TorusElement> =
        enumerate_exchange_graph(q0.clone(), max_depth)?.variables().into_iter().map(|(_, v)| v).collect();
    qvars.extend(q0.vars()[n..m].iter().cloned());
    let mut cvars: Vec<Laurent> =
        enumerate_exchange_graph(c0.clone(), max_depth)?.variables().into_iter().map(|(_, v)| v).collect();
    cvars.extend(c0.vars()[n..m].iter().cloned());
    let qdeg = qvars.iter().map(|x| degree_of(x, d)).collect::<Result<Vec<_>, _>>()?;
    let cdeg = cvars.iter().map(|x| degree_of(x, d)).collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<(i64, usize, usize, usize, usize)> = g_range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g| {
            let qsets = multisets_of_degree(&qdeg, g, max_factors);
            let csets = multisets_of_degree(&cdeg, g, max_factors);
            let qprods: Vec<TorusElement> = qsets
                .iter()
                .map(|s| s.iter().fold(TorusElement::one(q0.frame()), |acc, &i| &acc * &qvars[i]))
                .collect();
            let cprods: Vec<Laurent> =
                csets.iter().map(|s| s.iter().fold(Laurent::one(m), |acc, &i| &acc * &cvars[i])).collect();
            let spec: Vec<Laurent> = qprods.iter().map(TorusElement::specialize_q1).collect();
            (g, csets.len(), laurent_rank(&cprods), torus_rank(&qprods), laurent_rank(&spec))
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut table = Vec::new();
    for &(g, products, classical, quantum, specialized) in &rows {
        if classical != quantum {
            witnesses.push(json!({"kind": "RankMismatch", "degree": g, "classical_dim": classical, "quantum_rank": quantum}));
        }
        table.push(json!({"degree": g, "products": products, "classical_dim": classical, "quantum_rank": quantum, "specialized_rank": specialized}));
    }
    Ok(VerificationReport::new("graded", rows.len() as u64, witnesses, started).with_details(json!({
        "d": d.0,
        "max_depth": max_depth,
        "max_factors": max_factors,
        "quantum_variables": qvars.len(),
        "classical_variables": cvars.len(),
        "degrees": table,
    })))
}

/// Random mutation sequences: at each step the pair stays compatible with
/// the same `d`, and `mu_k mu_k` is the identity on quantum seeds, classical
/// seeds and pairs.
pub fn verify_mutation_suite(
    pair: &CompatiblePair,
    n_sequences: usize,
    max_len: usize,
    rng_seed: u64,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = pair.n_ex();
    let sequences: Vec<Vec<usize>> = (0..n_sequences)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    let results: Vec<(u64, Vec<Value>)> = sequences
        .par_iter()
        .map(|seq| {
            let mut q = QuantumSeed::initial(pair.clone());
            let mut c = ClassicalSeed::initial(pair.b_tilde().clone());
            let (mut cases, mut w) = (0u64, Vec::new());
            for &k in seq {
                cases += 1;
                let step = (|| -> Result<Option<&'static str>, SeedError> {
                    let (q1, c1) = (q.mutate(k)?, c.mutate(k)?);
                    if q1.pair().d() != pair.d() {
                        return Ok(Some("d changed"));
                    }
                    if check_pair_again(q1.pair()).is_err() {
                        return Ok(Some("mutated pair fails check_compatible"));
                    }
                    if q1.mutate(k)? != q || q1.pair().mutate(k)? != *q.pair() {
                        return Ok(Some("quantum mu_k mu_k is not the identity"));
                    }
                    if c1.mutate(k)?.vars() != c.vars() {
                        return Ok(Some("classical mu_k mu_k is not the identity"));
                    }
                    q = q1;
                    c = c1;
                    Ok(None)
                })();
                let path = q.path().then(k).to_string();
                match step {
                    Ok(None) => {}
                    Ok(Some(what)) => {
                        w.push(json!({"kind": "MutationViolation", "path": path, "check": what}));
                        break;
                    }
                    Err(e) => {
                        w.push(json!({"kind": "MutationViolation", "path": path, "check": e.to_string()}));
                        break;
                    }
                }
            }
            (cases, w)
        })
        .collect();
    let (mut cases, mut witnesses) = (0, Vec::new());
    for (c, w) in results {
        cases += c;
        witnesses.extend(w);
    }
    Ok(VerificationReport::new("mutation", cases, witnesses, started))
}

fn check_pair_again(p: &CompatiblePair) -> Result<CompatiblePair, SeedError> {
    CompatiblePair::new(p.lambda().clone(), p.b_tilde().clone())
}

/// A random skew-symmetric matrix with entries in `-bound..=bound`.
pub fn random_skew(n: usize, bound: i64, rng: &mut impl Rng) -> IntMatrix {
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            a[(i, j)] = v;
            a[(j, i)] = -v;
        }
    }
    a
}

fn random_element(frame: &Arc<ToricFrame>, rng: &mut ChaCha8Rng) -> TorusElement {
    let m = frame.rank();
    let mut acc = TorusElement::zero(frame);
    while acc.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let e: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            let mut c = random_coeff(rng);
            if rng.gen_bool(0.4) {
                c = &c * &QCoeff::p();
            }
            acc = &acc + &TorusElement::term(frame, c, e);
        }
    }
    acc
}

/// `T / pT` is a domain: sample pairs `(x, y)` in random tori until
/// `n_divisible` of them have a `p`-divisible product, and check one factor
/// is divisible each time. Valuations are also checked to add up on every
/// sampled pair.
pub fn verify_domain_property(n_divisible: usize, rng_seed: u64) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut witnesses = Vec::new();
    let (mut cases, mut divisible, mut sampled) = (0u64, 0usize, 0usize);
    while divisible < n_divisible {
        sampled += 1;
        let m = rng.gen_range(1..=3);
        let frame = ToricFrame::new(random_skew(m, 2, &mut rng), "random")?;
        let mut x = random_element(&frame, &mut rng);
        let mut y = random_element(&frame, &mut rng);
        if rng.gen_bool(0.3) {
            x = x.scalar_mul(&QCoeff::p());
        }
        if rng.gen_bool(0.3) {
            y = y.scalar_mul(&QCoeff::p());
        }
        let xy = &x * &y;
        let (vx, vy, vxy) = (x.p_divisible(), y.p_divisible(), xy.p_divisible());
        cases += 1;
        if vxy.is_divisible() {
            divisible += 1;
            if !vx.is_divisible() && !vy.is_divisible() {
                witnesses.push(json!({"kind": "DomainViolation", "x": x.to_string(), "y": y.to_string()}));
            }
        }
        if vx + vy != vxy && vxy != Valuation::Infinite {
            witnesses.push(json!({"kind": "ValuationNotAdditive", "x": x.to_string(), "y": y.to_string()}));
        }
    }
    Ok(VerificationReport::new("domain", cases, witnesses, started)
        .with_details(json!({"pairs_sampled": sampled, "divisible_products": divisible})))
}

/// Used by the CLI to list what `--check` accepts.
pub const CHECKS: &[&str] = &["laurent", "propkey", "powerids", "specialization", "graded"];

/// Summary of a report for one-line display.
pub fn summary(r: &VerificationReport) -> String {
    format!("{}: {:?}, {} cases, {} witnesses", r.check_name, r.status, r.cases_run, r.witnesses.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::bundled;

    fn mono(f: &Arc<ToricFrame>, e: &[i64]) -> TorusElement {
        TorusElement::monomial(f, e.to_vec())
    }

    #[test]
    fn rewrite_examples() {
        let s = QuantumSeed::initial(bundled::rank_one_frozen());
        let t = s.mutate(0).unwrap();
        let f = s.frame();
        let x2 = rewrite_in_adjacent_frame(&s, &mono(f, &[0, 1]), 0).unwrap();
        assert_eq!(x2, mono(t.frame(), &[0, 1]));
        let new = rewrite_in_adjacent_frame(&s, &t.vars()[0], 0).unwrap();
        assert_eq!(new, mono(t.frame(), &[1, 0]));
        let err = rewrite_in_adjacent_frame(&s, &mono(f, &[-1, 0]), 0).unwrap_err();
        assert!(matches!(err, VerifyError::NotInAdjacentTorus { power: -1, .. }));
    }

    #[test]
    fn rewrite_round_trip_on_cluster_variables() {
        let s = QuantumSeed::initial(bundled::a3_principal()).mutate_path(&"2,1".parse().unwrap()).unwrap();
        for k in 0..3 {
            let t = s.mutate(k).unwrap();
            // the seed's own generators, read back from the neighbor
            for i in 0..6 {
                let x = TorusElement::generator(s.frame(), i);
                let y = rewrite_in_adjacent_frame(&s, &x, k).unwrap();
                assert_eq!(rewrite_in_adjacent_frame(&t, &y, k).unwrap(), x);
            }
        }
    }

    #[test]
    fn power_identities_all_bundled() {
        for (name, pair) in bundled::all() {
            let s = QuantumSeed::initial(pair.clone());
            for seed in [s.clone(), s.mutate(0).unwrap()] {
                for k in 0..pair.n_ex() {
                    let r = verify_power_identities(&seed, k, 4).unwrap();
                    assert!(r.passed(), "{name} k={k}: {:?}", r.witnesses);
                }
            }
        }
    }

    #[test]
    fn monomial_commutation_sign_from_mutated_rank_one() {
        // from mu_1 of the rank-one seed, the adjacent pair is the original one
        let t = QuantumSeed::initial(bundled::rank_one_frozen()).mutate(0).unwrap();
        let adj = adjacent(&t, 0).unwrap();
        assert_eq!(adj.binomial.m_plus, -1);
        let f = &adj.frame;
        let xp_inv = mono(f, &[-1, 0]);
        let b = mono(f, &[0, 1]);
        assert_eq!(&xp_inv * &b, (&b * &xp_inv).scalar_mul(&QCoeff::q_pow(2)));
    }

    #[test]
    fn prop_key_examples() {
        let s = QuantumSeed::initial(bundled::rank_one_frozen());
        let f = s.frame();
        let p = QCoeff::p();
        let y = rewrite_in_adjacent_frame(&s, &mono(f, &[1, 0]).scalar_mul(&p), 0).unwrap();
        assert!(y.p_divisible().is_divisible());
        let y = rewrite_in_adjacent_frame(&s, &mono(f, &[0, 1]).scalar_mul(&p), 0).unwrap();
        assert_eq!(y.p_divisible(), Valuation::Finite(1));
        let y = rewrite_in_adjacent_frame(&s, &mono(f, &[1, 0]), 0).unwrap();
        assert_eq!(y.p_divisible(), Valuation::Finite(0));
        let r = verify_prop_key(&s, 0, 20, 7).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        assert_eq!(r.cases_run, 40);
    }

    #[test]
    fn specialization_examples() {
        let r = specialization_check(&bundled::rank_one_frozen(), 2).unwrap();
        assert!(r.passed());
        let r = specialization_check(&bundled::a2(), 6).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        assert_eq!(r.details.as_ref().unwrap()["quantum_variables"], 5);
        let r = specialization_check(&bundled::a2(), 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases_run, 3);
    }

    #[test]
    fn graded_examples() {
        let pair = bundled::rank_one_frozen();
        let r = graded_dimension_report(&pair, &GradingVector(vec![1, 0]), -1..=-1, 1, 1).unwrap();
        let row = &r.details.as_ref().unwrap()["degrees"][0];
        assert_eq!((row["classical_dim"].clone(), row["quantum_rank"].clone()), (json!(1), json!(1)));
        let r = graded_dimension_report(&pair, &GradingVector(vec![1, 0]), 7..=7, 1, 2).unwrap();
        assert_eq!(r.details.as_ref().unwrap()["degrees"][0]["classical_dim"], 0);
        assert!(matches!(
            graded_dimension_report(&pair, &GradingVector(vec![0, 1]), 0..=0, 1, 1),
            Err(VerifyError::NotInLattice(_))
        ));
    }

    #[test]
    fn laurent_small() {
        let r = verify_laurent(&bundled::a2(), 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases_run, 2 + 4 + 8 + 16);
    }

    #[test]
    fn multisets() {
        assert_eq!(multisets_of_degree(&[1, -1], 0, 2), vec![vec![], vec![0, 1]]);
    }
}
