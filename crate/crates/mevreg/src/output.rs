//! Serialisation of reports as JSON, CSV or plain text.

use crate::suites::Verdict;
use anyhow::Result;
use clap::ValueEnum;
use mevreg_core::regulator::RegulatorReport;
use mevreg_core::series::TauQSeries;
use mevreg_core::C64;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MevReport {
    pub schema: u32,
    pub command: &'static str,
    pub params: Vec<String>,
    pub signs: Option<String>,
    pub cutoff: String,
    pub word: String,
    pub value: Complex,
    pub truncation_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub name: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegulatorOut {
    pub schema: u32,
    pub command: &'static str,
    pub a: String,
    pub b: String,
    pub c: String,
    pub level: i64,
    pub component: String,
    pub cutoff: String,
    pub g_mev: f64,
    pub g_lvalue: f64,
    pub beilinson: f64,
    pub zeta3_term: f64,
    pub residual_thm1: f64,
    pub residual_thm2: f64,
    pub ratio_g_over_b: f64,
    pub truncation_bound: f64,
    pub terms: Vec<Term>,
}

impl From<&RegulatorReport> for RegulatorOut {
    fn from(r: &RegulatorReport) -> Self {
        RegulatorOut {
            schema: SCHEMA,
            command: "regulator",
            a: r.a.to_string(),
            b: r.b.to_string(),
            c: r.c.to_string(),
            level: r.level,
            component: r.component.to_string(),
            cutoff: r.cutoff.to_string(),
            g_mev: r.g_mev,
            g_lvalue: r.g_lvalue,
            beilinson: r.beilinson,
            zeta3_term: r.zeta3_term,
            residual_thm1: r.residual_thm1,
            residual_thm2: r.residual_thm2,
            ratio_g_over_b: r.ratio_g_over_b,
            truncation_bound: r.truncation_bound,
            terms: r.terms.iter().map(|(n, z)| Term { name: n.clone(), re: z.re, im: z.im }).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: &'static str,
    pub suite: String,
    pub cutoff: String,
    pub seed: u64,
    pub level: Option<i64>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QRow {
    pub alpha_num: i64,
    pub alpha_den: i64,
    pub tau_power: u32,
    pub coeff_re: f64,
    pub coeff_im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QDump {
    pub schema: u32,
    pub command: &'static str,
    pub spec: String,
    pub rows: Vec<QRow>,
}

impl QDump {
    pub fn new(spec: String, s: &TauQSeries) -> Self {
        let rows = s
            .iter()
            .map(|(a, m, c)| QRow { alpha_num: *a.numer(), alpha_den: *a.denom(), tau_power: m, coeff_re: c.re, coeff_im: c.im })
            .collect();
        QDump { schema: SCHEMA, command: "qdump", spec, rows }
    }
}

pub fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

// f64 Debug output is the shortest string that round-trips.
fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn mev(r: &MevReport, f: Format) -> Result<String> {
    match f {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from("word,signs,cutoff,value_re,value_im,truncation_bound\n");
            let tb = r.truncation_bound.map(num).unwrap_or_default();
            let signs = r.signs.clone().unwrap_or_default();
            s += &format!("\"{}\",{},{},{},{},{}\n", r.word, signs, r.cutoff, num(r.value.re), num(r.value.im), tb);
            Ok(s)
        }
        Format::Text => {
            let mut s = r.word.clone();
            if let Some(sg) = &r.signs {
                s += &format!(" signs {sg}");
            }
            s += &format!(" = {} {:+}i\n", num(r.value.re), r.value.im);
            if let Some(tb) = r.truncation_bound {
                s += &format!("truncation bound {tb:e} (cutoff {})\n", r.cutoff);
            }
            Ok(s)
        }
    }
}

pub fn regulator(r: &RegulatorOut, f: Format) -> Result<String> {
    let scalars = [
        ("g_mev", r.g_mev),
        ("g_lvalue", r.g_lvalue),
        ("beilinson", r.beilinson),
        ("zeta3_term", r.zeta3_term),
        ("residual_thm1", r.residual_thm1),
        ("residual_thm2", r.residual_thm2),
        ("ratio_g_over_b", r.ratio_g_over_b),
        ("truncation_bound", r.truncation_bound),
    ];
    match f {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            for (k, v) in [("a", &r.a), ("b", &r.b), ("c", &r.c), ("component", &r.component), ("cutoff", &r.cutoff)] {
                s += &format!("{k},\"{v}\"\n");
            }
            s += &format!("level,{}\n", r.level);
            for (k, v) in scalars {
                s += &format!("{k},{}\n", num(v));
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = format!("a = {} b = {} c = {} N = {} {} cutoff {}\n", r.a, r.b, r.c, r.level, r.component, r.cutoff);
            for (k, v) in scalars {
                s += &format!("{k:>16}  {v:.15e}\n");
            }
            for t in &r.terms {
                s += &format!("  {:<28} {:+.15e} {:+.15e}i\n", t.name, t.re, t.im);
            }
            Ok(s)
        }
    }
}

pub fn verify(r: &VerifyReport, f: Format) -> Result<String> {
    match f {
        Format::Json => json(r),
        Format::Csv => csv_rows(&r.verdicts),
        Format::Text => {
            let mut s = String::new();
            for v in &r.verdicts {
                let mark = if v.pass { "pass" } else { "FAIL" };
                s += &format!("{mark} {:<8} {:<44} {:<48} {:.3e} < {:.0e}\n", v.suite, v.identity, v.instance, v.residual, v.tolerance);
            }
            s += &format!("{} passed, {} failed\n", r.passed, r.failed);
            Ok(s)
        }
    }
}

pub fn qdump(d: &QDump, f: Format) -> Result<String> {
    match f {
        Format::Json => json(d),
        Format::Csv | Format::Text => {
            let mut s = format!("# spec: {}\n", d.spec);
            for r in &d.rows {
                s += &format!("{},{},{},{},{}\n", r.alpha_num, r.alpha_den, r.tau_power, num(r.coeff_re), num(r.coeff_im));
            }
            Ok(s)
        }
    }
}
