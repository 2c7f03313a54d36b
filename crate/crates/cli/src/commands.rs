use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twheis::cohomology::{
    ce_cohomology, d2_matrix, hs_dimension_check, paper_basis_h2, Cochain,
};
use twheis::extensions::{
    central_extend, cohomologous_isomorphic, family_extension, same_structure, verify_extension,
    Family,
};
use twheis::heisenberg::{
    coincidence_card, iso_conditions_check, make_restricted_twisted, make_twisted,
    restrictable_predicate, IsoCandidate, Layout, RestrictedTwisted, TupleSampling,
};
use twheis::liealg::AlgebraJson;
use twheis::linalg;
use twheis::restricted::{
    compatible_eval, compatible_eval_ordered, delta_eval, paper_basis_h2_star, restricted_cohomology,
    six_term_check, tilde_closed_form, RestrictedCochain2,
};
use twheis::{Error, Fe, Field, Matrix, Result};

use crate::args::{Base, Cli, Command, FamilyArg, RestrictedBase};
use crate::report::*;

/// Rendered output and whether every reported check succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn ok(body: String) -> Output {
        Output { body, ok: true }
    }
}

/// Closed-form [p] comparisons run exhaustively up to this many elements.
const EXHAUSTIVE_ELEMENTS: u64 = 10_000;
const SAMPLES: usize = 200;

struct Parsed {
    field: Field,
    m: usize,
    lambda: Vec<Fe>,
}

fn shift_parse(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

fn parse_base(b: &Base) -> Result<Parsed> {
    let field = Field::parse_spec(&b.field)?;
    let lambda = field.parse_list(&b.lambda)?;
    if lambda.len() != b.m {
        return Err(Error::InvalidParameters(format!(
            "lambda needs m = {} entries, got {}",
            b.m,
            lambda.len()
        )));
    }
    Ok(Parsed {
        field,
        m: b.m,
        lambda,
    })
}

fn parse_restricted(b: &RestrictedBase) -> Result<RestrictedTwisted> {
    let p = parse_base(&b.base)?;
    let mu = parse_mu(&p.field, p.m, b.mu.as_deref())?;
    make_restricted_twisted(&p.field, p.m, &p.lambda, &mu)
}

fn parse_mu(f: &Field, m: usize, s: Option<&str>) -> Result<Vec<Fe>> {
    match s {
        Some(s) => f.parse_list(s),
        None => Ok(linalg::zero_vector(2 * m + 2)),
    }
}

/// Rows separated by `;`, entries by `,`.
fn parse_matrix(f: &Field, s: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for row in s.split(';') {
        rows.push(f.parse_list(row).map_err(|e| shift_parse(e, offset))?);
        offset += row.len() + 1;
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension("rows of A have different lengths".into()));
    }
    Matrix::from_rows_with_cols(f, &rows, cols)
}

fn render<T: serde::Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text()
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Cohomology { base, q } => cohomology(base, *q, cli.json),
        Command::RestrictedCohomology { base, q } => restricted(base, *q, cli.json),
        Command::Restrictable { base } => restrictable(base, cli.json),
        Command::Extend {
            base,
            family,
            i,
            j,
        } => extend(base, *family, *i, *j, cli.seed),
        Command::IsoCheck {
            base,
            target_mu,
            a,
            k,
        } => iso_check(base, target_mu, a.as_deref(), k.as_deref(), cli.seed, cli.json),
        Command::Verify { base } => verify(base, cli.seed, cli.json),
    }
}

fn cohomology(base: &Base, q: usize, json: bool) -> Result<Output> {
    let p = parse_base(base)?;
    let f = &p.field;
    let l = make_twisted(f, p.m, &p.lambda)?;
    let n = l.dim();
    let h = ce_cohomology(&l, q)?;
    let representatives: Vec<Terms> = if q == 0 {
        vec![Vec::new(); h.dim]
    } else {
        h.cochains(n).iter().map(|c| cochain_terms(f, c)).collect()
    };
    let report = CohomologyReport {
        field: f.spec_string(),
        m: p.m,
        lambda: format_list(f, &p.lambda),
        q,
        dim: h.dim,
        cocycle_dim: h.kernel_dim(),
        coboundary_dim: h.image_dim(),
        representatives,
    };
    Ok(Output::ok(render(json, &report, || {
        let mut s = format!("dim H^{q} = {}\n", h.dim);
        if q == 0 {
            s.push_str("  1\n");
        } else {
            for c in h.cochains(n) {
                s.push_str(&format!("  {}\n", c.format(f)));
            }
        }
        s
    })))
}

fn restricted(base: &RestrictedBase, q: usize, json: bool) -> Result<Output> {
    let r = parse_restricted(base)?;
    let f = r.field();
    let n = r.layout().dim();
    let h = restricted_cohomology(&r.pmap, q)?;
    let (classes, lines): (Vec<RestrictedClass>, Vec<String>) = if q == 1 {
        h.result
            .cochains(n)
            .iter()
            .map(|c| {
                (
                    RestrictedClass {
                        phi: cochain_terms(f, c),
                        omega: Vec::new(),
                    },
                    c.format(f),
                )
            })
            .unzip()
    } else {
        h.classes()
            .iter()
            .map(|c| {
                let omega = c
                    .omega
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, &x)| (i + 1, f.format(x)))
                    .collect();
                (
                    RestrictedClass {
                        phi: cochain_terms(f, &c.phi),
                        omega,
                    },
                    c.format(f),
                )
            })
            .unzip()
    };
    let report = RestrictedReport {
        field: f.spec_string(),
        m: r.m,
        lambda: format_list(f, &r.lambda),
        mu: format_list(f, &r.mu),
        q,
        dim: h.dim(),
        cocycle_dim: h.result.kernel_dim(),
        coboundary_dim: h.result.image_dim(),
        hochschild_dim: h.hochschild_dim,
        classes,
    };
    Ok(Output::ok(render(json, &report, || {
        let mut s = format!("dim H^{q}_* = {}\n", h.dim());
        for line in lines {
            s.push_str(&format!("  {line}\n"));
        }
        s
    })))
}

fn restrictable(base: &Base, json: bool) -> Result<Output> {
    let p = parse_base(base)?;
    let f = &p.field;
    let l = make_twisted(f, p.m, &p.lambda)?;
    let jacobson = l.jacobson_restrictable();
    let predicate = restrictable_predicate(f, &p.lambda);
    if jacobson.is_restrictable() != predicate {
        return Err(Error::Internal(format!(
            "Jacobson test gives {} but the closed criterion gives {predicate}",
            jacobson.is_restrictable()
        )));
    }
    let norm = if predicate {
        twheis::heisenberg::lambda_norm(f, &p.lambda)
    } else {
        None
    };
    let report = RestrictableReport {
        field: f.spec_string(),
        m: p.m,
        lambda: format_list(f, &p.lambda),
        restrictable: predicate,
        norm: norm.map(|x| f.format(x)),
        failing_index: jacobson.failing_index.map(|i| i + 1),
    };
    Ok(Output::ok(render(json, &report, || match norm {
        Some(x) => format!("restrictable (|lambda| = {})\n", f.format(x)),
        None => "not restrictable (p>2 and equal λ^{p-1} required)\n".to_string(),
    })))
}

fn family(arg: FamilyArg, i: usize, j: Option<usize>) -> Result<Family> {
    let zero_based = |k: usize, name: &str| {
        k.checked_sub(1)
            .ok_or_else(|| Error::IndexOutOfRange(format!("--{name} is 1-based")))
    };
    let i = zero_based(i, "i")?;
    let second = || -> Result<usize> {
        match j {
            Some(j) => zero_based(j, "j"),
            None => Err(Error::InvalidParameters("this family needs --j".into())),
        }
    };
    Ok(match arg {
        FamilyArg::Hij => Family::Hij { i, j: second()? },
        FamilyArg::Himj => Family::HiMj { i, j: second()? },
        FamilyArg::Himi => Family::HiMi { i },
        FamilyArg::Hi => Family::Hi { i },
    })
}

fn extend(base: &RestrictedBase, arg: FamilyArg, i: usize, j: Option<usize>, seed: u64) -> Result<Output> {
    let r = parse_restricted(base)?;
    let fam = family(arg, i, j)?;
    let ext = family_extension(&r, fam)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = verify_extension(&ext, SAMPLES, &mut rng)?;
    if let Some(failure) = report.first_failure() {
        return Err(Error::Internal(format!("extension fails: {failure}")));
    }
    let schema = AlgebraJson::from_algebra(ext.algebra(), Some(&ext.pmap));
    let mut s = serde_json::to_string_pretty(&schema).expect("algebra JSON serializes");
    s.push('\n');
    Ok(Output::ok(s))
}

fn iso_check(
    base: &RestrictedBase,
    target_mu: &str,
    a: Option<&str>,
    k: Option<&str>,
    seed: u64,
    json: bool,
) -> Result<Output> {
    let source = parse_restricted(base)?;
    let f = source.field().clone();
    let m = source.m;
    let mu2 = f.parse_list(target_mu)?;
    let target = make_restricted_twisted(&f, m, &source.lambda, &mu2)?;
    let identity = IsoCandidate::identity(&f, m);
    let a = match a {
        Some(s) => parse_matrix(&f, s)?,
        None => identity.a,
    };
    let k = match k {
        Some(s) => f.parse_list(s)?,
        None => identity.k,
    };
    let cand = IsoCandidate::new(a, k)?;
    let sampling = TupleSampling {
        seed,
        ..TupleSampling::default()
    };
    let result = iso_conditions_check(&source, &target, &cand, sampling)?;
    if result.exhaustive && result.conditions_hold() != result.morphism {
        return Err(Error::Internal(format!(
            "conditions {} but the morphism check {}",
            if result.conditions_hold() { "hold" } else { "fail" },
            if result.morphism { "passes" } else { "fails" }
        )));
    }
    let report = IsoReport {
        field: f.spec_string(),
        m,
        conditions: result
            .conditions
            .iter()
            .map(|c| ConditionReport {
                number: c.number,
                holds: c.holds,
                witness: c.witness.as_ref().map(|w| format_list(&f, w)),
            })
            .collect(),
        tuples_checked: result.tuples_checked,
        exhaustive: result.exhaustive,
        morphism: result.morphism,
        isomorphic: result.morphism && result.conditions_hold(),
    };
    Ok(Output::ok(render(json, &report, || {
        let mut s = String::new();
        for c in &report.conditions {
            match (&c.witness, c.holds) {
                (_, true) => s.push_str(&format!("condition ({}): holds\n", c.number)),
                (Some(w), false) if w.len() > 1 => s.push_str(&format!(
                    "condition ({}): fails at ({})\n",
                    c.number,
                    w.join(",")
                )),
                (Some(w), false) => {
                    s.push_str(&format!("condition ({}): fails for i = {}\n", c.number, w[0]))
                }
                (None, false) => s.push_str(&format!("condition ({}): fails\n", c.number)),
            }
        }
        s.push_str(&format!(
            "tuples checked: {} ({})\n",
            report.tuples_checked,
            if report.exhaustive { "exhaustive" } else { "sampled" }
        ));
        s.push_str(&format!(
            "restricted morphism: {}\n",
            if report.morphism { "yes" } else { "no" }
        ));
        s.push_str(if report.isomorphic {
            "isomorphism\n"
        } else {
            "not an isomorphism\n"
        });
        s
    })))
}

/// Families whose preconditions hold for `r`.
fn families(r: &RestrictedTwisted) -> Vec<Family> {
    let f = r.field();
    let mut out = Vec::new();
    for i in 0..r.m {
        for j in i + 1..r.m {
            if r.lambda[i] == r.lambda[j] || r.lambda[i] == f.neg(r.lambda[j]) {
                out.push(Family::Hij { i, j });
                out.push(Family::HiMj { i, j });
            }
        }
    }
    out.extend((0..r.m.saturating_sub(1)).map(|i| Family::HiMi { i }));
    out.extend((0..=2 * r.m).map(|i| Family::Hi { i }));
    out
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn random_element(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    (0..n).map(|_| f.random(rng)).collect()
}

fn ordinary_checks(f: &Field, m: usize, lambda: &[Fe]) -> Result<Vec<Check>> {
    let l = make_twisted(f, m, lambda)?;
    let n = l.dim();
    let mut out = Vec::new();
    let h1 = ce_cohomology(&l, 1)?;
    let t_dual = Cochain::dual(f, n, Layout { m }.t());
    out.push(check(
        "h1",
        h1.dim == 1 && h1.is_basis(&[t_dual.coords]),
        format!("dim H^1 = {}, expected 1 spanned by e^{}", h1.dim, n),
    ));
    let h2 = ce_cohomology(&l, 2)?;
    let expected = 2 * coincidence_card(f, lambda) + m - 1;
    let basis: Vec<_> = paper_basis_h2(f, m, lambda).into_iter().map(|c| c.coords).collect();
    out.push(check(
        "h2",
        h2.dim == expected && h2.is_basis(&basis),
        format!("dim H^2 = {}, expected 2*Card + m - 1 = {expected}", h2.dim),
    ));
    let hs: Vec<_> = (1..=2)
        .map(|k| hs_dimension_check(f, m, lambda, k))
        .collect::<Result<_>>()?;
    out.push(check(
        "hochschild-serre",
        hs.iter().all(|r| r.holds()),
        hs.iter()
            .map(|r| format!("H^{}: {} = {} + {}", r.k, r.dim_twisted, r.invariants, r.coinvariants))
            .collect::<Vec<_>>()
            .join("; "),
    ));
    let jacobson = l.jacobson_restrictable().is_restrictable();
    let predicate = restrictable_predicate(f, lambda);
    out.push(check(
        "restrictability",
        jacobson == predicate,
        format!("Jacobson test {jacobson}, closed criterion {predicate}"),
    ));
    Ok(out)
}

fn restricted_checks(r: &RestrictedTwisted, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let f = r.field();
    let m = r.m;
    let lay = r.layout();
    let n = lay.dim();
    let mut out = Vec::new();

    let q = f.order() as u64;
    let elements: Vec<Vec<Fe>> = match q.checked_pow(n as u32) {
        Some(total) if total <= EXHAUSTIVE_ELEMENTS => {
            let all: Vec<Fe> = f.elements().collect();
            (0..total)
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let x = all[(code % q) as usize];
                            code /= q;
                            x
                        })
                        .collect()
                })
                .collect()
        }
        _ => (0..1000).map(|_| random_element(f, n, rng)).collect(),
    };
    let mismatch = elements.iter().find(|g| r.closed_form_p(g) != r.pmap.p_extend(g));
    out.push(check(
        "closed-form-p",
        mismatch.is_none(),
        match mismatch {
            None => format!("closed form equals p_extend on {} elements", elements.len()),
            Some(g) => format!("mismatch at ({})", format_list(f, g).join(",")),
        },
    ));

    let pm = r.pmap.verify(SAMPLES, rng);
    out.push(check(
        "pmap",
        pm.passed(),
        match &pm.violation {
            None => format!("restricted axioms hold on {} elements", pm.checked),
            Some(v) => format!("{v:?}"),
        },
    ));

    let h1s = restricted_cohomology(&r.pmap, 1)?;
    out.push(check("restricted-h1", h1s.dim() == 0, format!("dim H^1_* = {}", h1s.dim())));

    let h2s = restricted_cohomology(&r.pmap, 2)?;
    let expected = 2 * coincidence_card(f, &r.lambda) + 3 * m;
    let basis: Vec<_> = paper_basis_h2_star(f, m, &r.lambda).iter().map(RestrictedCochain2::coords).collect();
    out.push(check(
        "restricted-h2",
        h2s.dim() == expected && h2s.result.is_basis(&basis),
        format!("dim H^2_* = {}, expected 2*Card + 3m = {expected}", h2s.dim()),
    ));

    let six = six_term_check(&r.pmap, 50, rng)?;
    out.push(check(
        "six-term",
        six.holds(),
        match &six.swap_failure {
            Some(s) => s.clone(),
            None => format!(
                "dim H^2_* + dim H^1 + rank Delta = {} + {} + {}, dim g + dim H^1_* + dim H^2 = {} + {} + {}",
                six.dim_h2_star, six.dim_h1, six.rank_delta, six.frobenius_dim, six.dim_h1_star, six.dim_h2
            ),
        },
    ));

    let t = linalg::unit_vector(f, n, lay.t());
    let mut delta_ok = true;
    let classes = ce_cohomology(&r.algebra, 2)?.cochains(n);
    for phi in &classes {
        for _ in 0..20 {
            let g = random_element(f, n, rng);
            delta_ok &= delta_eval(phi, &r.pmap, &g, &t).is_zero();
        }
    }
    out.push(check(
        "delta",
        delta_ok,
        format!("Delta(g).e_{n} = 0 for {} classes of H^2", classes.len()),
    ));

    let zero = linalg::zero_vector(n);
    let last_first: Vec<usize> = std::iter::once(n - 1).chain(0..n - 1).collect();
    let d2 = d2_matrix(&r.algebra);
    let mut tilde_ok = true;
    for _ in 0..20 {
        let g = random_element(f, n, rng);
        for s in 0..2 * m {
            for u in s + 1..2 * m {
                let phi = Cochain::pair(f, n, s, u);
                let closed = tilde_closed_form(f, m, &r.lambda, s, u, &g)?;
                tilde_ok &= compatible_eval_ordered(&r.algebra, &phi, &zero, &g, &last_first)? == closed;
                if linalg::is_zero(&d2.mul_vec(&phi.coords)) {
                    tilde_ok &= compatible_eval(&r.algebra, &phi, &zero, &g)? == closed;
                }
            }
        }
    }
    out.push(check(
        "tilde",
        tilde_ok,
        "closed-form tilde values equal the compatible map split at e_{2m+2}, and the canonical one on cocycles",
    ));

    let fams = families(r);
    let mut failure = None;
    for fam in &fams {
        let ext = family_extension(r, *fam)?;
        let generic = central_extend(&r.pmap, &fam.cocycle(f, m, &r.lambda))?;
        let report = verify_extension(&ext, 50, rng)?;
        if !same_structure(&ext, &generic) {
            failure = Some(format!("{fam:?}: differs from the generic construction"));
        } else if let Some(name) = report.first_failure() {
            failure = Some(format!("{fam:?}: {name}"));
        }
        if failure.is_some() {
            break;
        }
    }
    out.push(check(
        "extensions",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{} family extensions verified", fams.len())),
    ));

    let mut iso_ok = true;
    for cocycle in h2s.classes().iter().take(5) {
        let psi = Cochain::from_coords(1, n, random_element(f, n, rng))?;
        iso_ok &= cohomologous_isomorphic(&r.pmap, cocycle, &psi)?;
    }
    out.push(check(
        "cohomologous",
        iso_ok,
        "cohomologous cocycles give isomorphic extensions",
    ));
    Ok(out)
}

fn verify(base: &RestrictedBase, seed: u64, json: bool) -> Result<Output> {
    let p = parse_base(&base.base)?;
    let f = &p.field;
    let mu = parse_mu(f, p.m, base.mu.as_deref())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = ordinary_checks(f, p.m, &p.lambda)?;
    let mut note = None;
    match make_restricted_twisted(f, p.m, &p.lambda, &mu) {
        Ok(r) => checks.extend(restricted_checks(&r, &mut rng)?),
        Err(Error::NotRestrictable(why)) => note = Some(format!("restricted checks skipped: {why}")),
        Err(e) => return Err(e),
    }
    let passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport {
        field: f.spec_string(),
        m: p.m,
        lambda: format_list(f, &p.lambda),
        mu: format_list(f, &mu),
        seed,
        checks,
        passed,
    };
    let body = render(json, &report, || {
        let mut s = String::new();
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
        }
        if let Some(note) = &note {
            s.push_str(&format!("{note}\n"));
        }
        let ok = report.checks.iter().filter(|c| c.passed).count();
        s.push_str(&format!("verify: {ok}/{} checks passed\n", report.checks.len()));
        s
    });
    Ok(Output { body, ok: passed })
}
