use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use sally_core::closure;
use sally_core::hilbert::{self, MAX_TABLE_N};
use sally_core::ideals::PowerSequence;
use sally_core::report::VerifierReport;
use sally_core::reproduce::{ReproParams, ReproReport, ReproductionRegistry};
use sally_core::sally::{self, Analysis, CoefficientData, DEFAULT_REDUCTION_CAP};
use sally_core::verify::{VerifierRegistry, VerifyContext};
use sally_core::MonomialIdeal;

use crate::input::{InputDocument, ParseError};

/// Structured result plus its text rendering.
pub struct Output {
    pub value: Value,
    pub text: String,
}

impl Output {
    fn new(value: Value, text: String) -> Self {
        Output { value, text }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub cap: Option<usize>,
    pub t: Option<usize>,
    pub params: ReproParams,
}

fn gens(ideal: &MonomialIdeal) -> Vec<Vec<i64>> {
    ideal.generators().iter().map(|g| g.to_vec()).collect()
}

fn fmt_gens(ideal: &MonomialIdeal) -> String {
    let parts: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Right-aligned columns under a header row.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(headers.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n")
}

pub fn length(doc: &InputDocument) -> Result<Output> {
    let r = doc.resolve()?;
    let i = r.ideal()?;
    let value = json!({
        "command": "length",
        "generators": gens(i),
        "colength": i.colength().get(),
    });
    Ok(Output::new(value, format!("l(A/I) = {}", i.colength())))
}

pub fn power(doc: &InputDocument) -> Result<Output> {
    let r = doc.resolve()?;
    let i = r.ideal()?;
    let k = doc.options.exponent.unwrap_or(2);
    let p = i.power(k)?;
    let value = json!({
        "command": "power",
        "exponent": k,
        "generators": gens(&p),
        "colength": p.colength().get(),
    });
    let text = format!("I^{k} = {}\nl(A/I^{k}) = {}", fmt_gens(&p), p.colength());
    Ok(Output::new(value, text))
}

pub fn closure(doc: &InputDocument) -> Result<Output> {
    let r = doc.resolve()?;
    let i = r.ideal()?;
    let bar = closure::newton_closure(i)?;
    let closed = i.equals(&bar)?;
    let value = json!({
        "command": "closure",
        "generators": gens(&bar),
        "colength": bar.colength().get(),
        "integrally_closed": closed,
    });
    let text = format!(
        "closure(I) = {}\nl(A/closure(I)) = {}\nintegrally closed: {closed}",
        fmt_gens(&bar),
        bar.colength()
    );
    Ok(Output::new(value, text))
}

pub fn hilbert(doc: &InputDocument, ov: &Overrides) -> Result<Output> {
    let r = doc.resolve()?;
    let i = r.ideal()?;
    let n = ov.n.or(doc.options.n).unwrap_or_else(|| hilbert::default_table_n(None, r.ambient.dim()));
    let hs = hilbert::hs_table(i, n)?;
    let diffs = hs.first_diffs();
    let rows: Vec<Vec<String>> = hs
        .values
        .iter()
        .zip(&diffs)
        .enumerate()
        .map(|(n, (v, g))| vec![n.to_string(), v.to_string(), g.to_string()])
        .collect();
    let value = json!({
        "command": "hilbert",
        "N": n,
        "hilbert_samuel": hs.values,
        "graded_lengths": diffs,
    });
    Ok(Output::new(value, table(&["n", "l(A/I^(n+1))", "l(G_n)"], &rows)))
}

pub fn coeffs(doc: &InputDocument, ov: &Overrides) -> Result<Output> {
    let r = doc.resolve()?;
    let i = r.ideal()?;
    let d = r.ambient.dim();
    let red = match &r.reduction {
        Some(q) => Some(sally::reduction_number(i, q, ov.cap.or(doc.options.cap).unwrap_or(DEFAULT_REDUCTION_CAP))?.r),
        None => None,
    };
    let start = ov.n.or(doc.options.n).unwrap_or_else(|| hilbert::default_table_n(red, d));
    let mut powers = PowerSequence::new(i.clone());
    let (hs, c) = hilbert::stable_coefficients(&mut powers, d, start, MAX_TABLE_N.max(start))?;
    let value = json!({
        "command": "coeffs",
        "d": d,
        "e": c.e,
        "postulation": c.postulation,
        "N": hs.len() - 1,
        "hilbert_samuel": hs.values,
    });
    let rows: Vec<Vec<String>> = c.e.iter().enumerate().map(|(k, e)| vec![format!("e{k}"), e.to_string()]).collect();
    let text = format!(
        "{}\npostulation number: {}\nfitted on 0 <= n <= {}",
        table(&["coefficient", "value"], &rows),
        c.postulation,
        hs.len() - 1
    );
    Ok(Output::new(value, text))
}

pub fn reduction(doc: &InputDocument, ov: &Overrides) -> Result<Output> {
    let r = doc.resolve()?;
    let (i, q) = (r.ideal()?, r.reduction()?);
    let cap = ov.cap.or(doc.options.cap).unwrap_or(DEFAULT_REDUCTION_CAP);
    let rd = sally::reduction_number(i, q, cap)?;
    let value = json!({ "command": "reduction", "r": rd.r, "cap": cap });
    Ok(Output::new(value, format!("red_Q(I) = {}", rd.r)))
}

fn analysis(doc: &InputDocument, ov: &Overrides) -> Result<Analysis> {
    let r = doc.resolve()?;
    let (i, q) = (r.ideal()?, r.reduction()?);
    Ok(Analysis::build(i, q, &doc.analysis_options(ov.n, ov.cap))?)
}

pub fn sally_table(doc: &InputDocument, ov: &Overrides) -> Result<Output> {
    let an = analysis(doc, ov)?;
    let sl = &an.sally;
    let rows: Vec<Vec<String>> = (0..sl.len())
        .map(|n| vec![n.to_string(), sl.s[n].to_string(), sl.l[n].to_string(), sl.c[n].to_string()])
        .collect();
    let value = json!({
        "command": "sally",
        "r": an.r(),
        "s": sl.s,
        "c": sl.c,
        "l": sl.l,
        "intersections": an.intersections.iter().map(|&(n, h)| json!({"n": n, "holds": h})).collect::<Vec<_>>(),
    });
    let text = format!("r = {}\n{}", an.r(), table(&["n", "l(S_n)", "l(L_n)", "l(C_n)"], &rows));
    Ok(Output::new(value, text))
}

pub fn depth(doc: &InputDocument, ov: &Overrides) -> Result<Output> {
    let an = analysis(doc, ov)?;
    let iv = sally::depth_bounds(&an)?;
    let value = json!({
        "command": "depth",
        "r": an.r(),
        "e": an.coeffs.e,
        "lower": iv.lower,
        "upper": iv.upper,
        "justifications": iv.justifications,
    });
    let mut text = format!("depth G(I) in [{}, {}]", iv.lower, iv.upper);
    for j in &iv.justifications {
        text.push_str("\n  ");
        text.push_str(j);
    }
    Ok(Output::new(value, text))
}

pub fn report_text(rep: &VerifierReport) -> String {
    let mut lines = vec![format!("theorem: {}", rep.theorem)];
    for h in &rep.hypotheses {
        lines.push(format!("  hypothesis {}: {}", h.name, if h.holds { "holds" } else { "fails" }));
    }
    lines.push(format!("lhs = {}  rhs = {}  slack = {}", rep.lhs, rep.rhs, rep.slack));
    lines.push(format!("equality: {}", rep.equality));
    if let Some(c) = &rep.certificate {
        lines.push(format!("certificate (t = {}, i0 = {}): {}", c.t, c.i0, c.holds));
    }
    lines.push(format!("depth bounds: [{}, {}]", rep.depth_lower, rep.depth_upper));
    lines.extend(rep.justifications.iter().map(|j| format!("  {j}")));
    lines.join("\n")
}

pub fn fixture(name: &str, ov: &Overrides) -> Result<CoefficientData> {
    match name {
        "final-example" | "final" => Ok(CoefficientData::final_example(
            ov.params.m.unwrap_or(1),
            ov.params.d.unwrap_or(2),
        )?),
        other => Err(ParseError(format!("unknown fixture `{other}`")).into()),
    }
}

/// Returns the report; the caller decides the exit code from `equality`.
pub fn verify(id: &str, doc: Option<&InputDocument>, fixture_name: Option<&str>, ov: &Overrides) -> Result<(Output, VerifierReport)> {
    let reg = VerifierRegistry::builtin();
    if reg.get(id).is_none() {
        let known: Vec<_> = reg.names().collect();
        return Err(ParseError(format!("unknown theorem id `{id}` (known: {})", known.join(", "))).into());
    }
    let mut ctx = match doc {
        Some(doc) => {
            let r = doc.resolve_optional()?;
            let mut ctx = VerifyContext::default();
            ctx.ideal = r.0;
            ctx.reduction = r.1;
            ctx.options = doc.analysis_options(ov.n, ov.cap);
            ctx.module = doc.module.as_ref().map(|m| m.table());
            ctx
        }
        None => VerifyContext::default(),
    };
    if let Some(name) = fixture_name {
        ctx.fixture = Some(fixture(name, ov)?);
    }
    ctx.t = ov.t;
    let rep = reg.run(id, &ctx)?;
    let out = Output::new(to_value(&rep), report_text(&rep));
    Ok((out, rep))
}

pub fn paper_examples(which: &str, ov: &Overrides) -> Result<(Output, ReproReport)> {
    let reg = ReproductionRegistry::builtin();
    if reg.get(which).is_none() {
        let known: Vec<_> = reg.names().collect();
        return Err(ParseError(format!("unknown example `{which}` (known: {})", known.join(", "))).into());
    }
    let rep = reg.run(which, &ov.params)?;
    let rows: Vec<Vec<String>> = rep
        .checks
        .iter()
        .map(|c| {
            vec![
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.quantity.clone(),
                c.expected.to_string(),
                c.actual.to_string(),
            ]
        })
        .collect();
    let mut text = format!("{}\n", rep.name);
    text.push_str(&left_table(&["", "quantity", "expected", "actual"], &rows));
    if let Some(iv) = &rep.depth {
        text.push_str(&format!("\ndepth G(I) in [{}, {}]", iv.lower, iv.upper));
    }
    Ok((Output::new(to_value(&rep), text), rep))
}

fn left_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    std::iter::once(headers.iter().map(|h| h.to_string()).collect::<Vec<_>>())
        .chain(rows.iter().cloned())
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}
