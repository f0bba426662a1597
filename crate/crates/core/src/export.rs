//! CSV writers for every schedule the pipeline produces, a flat `key=value` summary
//! block and a re-load check for emitted schedules.

use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::firm::AuditReport;
use crate::gate::GateReport;
use crate::laissez_faire::LaissezFaireSchedule;
use crate::market::MarketEnvironment;
use crate::oracle::GridMechanism;
use crate::policy::{RegulationPolicy, Segment};
use crate::tax::TaxSchedule;

/// Cell text for prohibitive taxes.
pub const PROHIBITIVE: &str = "prohibitive";

fn num(x: f64) -> String {
    format!("{x}")
}

fn writer<W: Write>(w: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    Ok(out)
}

/// `c,q_lf,p_lf,profit_lf`.
pub fn write_lf_csv<W: Write>(w: W, lf: &LaissezFaireSchedule) -> Result<()> {
    let mut out = writer(w, &["c", "q_lf", "p_lf", "profit_lf"])?;
    for i in 0..lf.c.len() {
        out.write_record([num(lf.c[i]), num(lf.q_of_c[i]), num(lf.price_of_c[i]), num(lf.profit_of_c[i])])?;
    }
    out.flush()?;
    Ok(())
}

/// `c,M`.
pub fn write_margin_csv<W: Write>(w: W, gate: &GateReport) -> Result<()> {
    let mut out = writer(w, &["c", "M"])?;
    for (c, m) in gate.c.iter().zip(&gate.margin_curve) {
        out.write_record([num(*c), num(*m)])?;
    }
    out.flush()?;
    Ok(())
}

/// `c,segment,q_star,p_star,consumer_price,profit,tax` on the policy's sample grid.
/// Excluded types carry a prohibitive tax.
pub fn write_policy_csv<W: Write>(w: W, policy: &RegulationPolicy, tax: &TaxSchedule) -> Result<()> {
    let mut out = writer(w, &["c", "segment", "q_star", "p_star", "consumer_price", "profit", "tax"])?;
    for i in 0..policy.c.len() {
        let segment = policy.segments[i];
        let t = if segment == Segment::Excluded || tax.is_prohibitive(policy.p_star[i]) {
            PROHIBITIVE.to_string()
        } else {
            num(tax.tau(policy.p_star[i]))
        };
        out.write_record([
            num(policy.c[i]),
            segment.label().to_string(),
            num(policy.q_star[i]),
            num(policy.p_star[i]),
            num(policy.consumer_price[i]),
            num(policy.pi_star[i]),
            t,
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `p,tau` on a uniform grid up to the top firm price, then the prohibitive row at `v̄`.
pub fn write_tax_csv<W: Write>(w: W, tax: &TaxSchedule, grid_n: usize) -> Result<()> {
    let mut out = writer(w, &["p", "tau"])?;
    for (p, t) in tax.sample(grid_n) {
        out.write_record([num(p), t.map_or_else(|| PROHIBITIVE.to_string(), num)])?;
    }
    out.flush()?;
    Ok(())
}

/// `c,p_opt,q_opt,profit,segment_guess`.
pub fn write_audit_csv<W: Write>(w: W, audit: &AuditReport) -> Result<()> {
    let mut out = writer(w, &["c", "p_opt", "q_opt", "profit", "segment_guess"])?;
    for r in &audit.responses {
        out.write_record([
            num(r.c),
            num(r.p_opt),
            num(r.q_opt),
            num(r.profit),
            r.segment_guess.label().to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `c,q,pi,slack` for a grid mechanism.
pub fn write_grid_csv<W: Write>(w: W, grid: &GridMechanism) -> Result<()> {
    let mut out = writer(w, &["c", "q", "pi", "slack"])?;
    for i in 0..grid.n {
        out.write_record([num(grid.c[i]), num(grid.q[i]), num(grid.pi[i]), num(grid.slack[i])])?;
    }
    out.flush()?;
    Ok(())
}

/// Ordered `key=value` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    entries: Vec<(String, String)>,
}

impl Summary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Summary::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("summary line without `=`: {line}")))?;
            s.push(k.trim(), v.trim());
        }
        Ok(s)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Cutoffs, benchmark price, welfare and the (LF) verdict of a solved policy.
pub fn summary_block(env: &MarketEnvironment, policy: &RegulationPolicy, lf_optimal: bool) -> Summary {
    let mut s = Summary::new();
    s.push("kind", policy.kind.label())
        .push("alpha", env.alpha)
        .push("k", env.k)
        .push("c_l", policy.c_l)
        .push("c_hat", policy.c_hat)
        .push("c_bar", policy.c_bar)
        .push("p_hat", policy.p_hat)
        .push("q_flat", policy.q_flat())
        .push("welfare", policy.welfare)
        .push("lf_welfare", policy.lf_welfare)
        .push("cutoff_lf", policy.trace.cutoff_lf)
        .push("gate", if lf_optimal { "laissez-faire optimal" } else { "intervention" })
        .push("prop2_hypotheses", policy.prop2_hypotheses)
        .push("structure_verified", policy.structure_verified)
        .push("no_crossing", policy.flags.no_crossing)
        .push("multiple_crossings", policy.flags.multiple_crossings)
        .push("lf_overlap", policy.flags.lf_overlap)
        .push("ironed", policy.flags.ironed);
    if let Some((q, _)) = policy.trace.free_top {
        s.push("free_top_quantity", q);
    }
    s
}

/// What a re-loaded schedule CSV looked like.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleCheck {
    pub rows: usize,
    /// Largest increase of the quantity column between consecutive rows, relative to
    /// the earlier value once that exceeds one.
    pub worst_quantity_rise: f64,
    pub min_tax: f64,
    pub prohibitive_rows: usize,
}

/// Re-reads an emitted schedule and checks that its quantity column (`q_star`, `q_lf`
/// or `q`) never increases and its tax column (`tax` or `tau`) is nonnegative.
pub fn validate_schedule_csv<R: Read>(r: R) -> Result<ScheduleCheck> {
    let mut rdr = csv::Reader::from_reader(r);
    let headers = rdr.headers()?.clone();
    let col = |names: &[&str]| headers.iter().position(|h| names.contains(&h));
    let q_col = col(&["q_star", "q_lf", "q"]);
    let t_col = col(&["tax", "tau"]);
    let parse = |field: &str, text: &str| {
        text.parse::<f64>()
            .map_err(|_| Error::invalid(field, format!("not a number: {text}")))
    };

    let mut check = ScheduleCheck {
        rows: 0,
        worst_quantity_rise: 0.0,
        min_tax: f64::INFINITY,
        prohibitive_rows: 0,
    };
    let mut last_q: Option<f64> = None;
    for row in rdr.records() {
        let row = row?;
        check.rows += 1;
        if let Some(j) = q_col {
            let q = parse(&headers[j], &row[j])?;
            if let Some(prev) = last_q {
                check.worst_quantity_rise = check.worst_quantity_rise.max((q - prev) / prev.abs().max(1.0));
            }
            last_q = Some(q);
        }
        if let Some(j) = t_col {
            if &row[j] == PROHIBITIVE {
                check.prohibitive_rows += 1;
            } else {
                check.min_tax = check.min_tax.min(parse(&headers[j], &row[j])?);
            }
        }
    }
    if let Some(j) = q_col {
        if check.worst_quantity_rise > 1e-9 {
            return Err(Error::invalid(
                &headers[j],
                format!("quantity rises by {} between rows", check.worst_quantity_rise),
            ));
        }
    }
    if let Some(j) = t_col {
        if check.min_tax < -1e-9 {
            return Err(Error::invalid(&headers[j], format!("negative tax {}", check.min_tax)));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::outer_solve;
    use crate::tax::build_tax;

    fn golden() -> (MarketEnvironment, RegulationPolicy, TaxSchedule) {
        let env = MarketEnvironment::linear_uniform(1.0, 1.0, 0.0, 0.0).unwrap();
        let policy = outer_solve(&env, 257, 33).unwrap();
        let tax = build_tax(&env, &policy).unwrap();
        (env, policy, tax)
    }

    #[test]
    fn policy_csv_has_exact_header_and_reloads() {
        let (_, policy, tax) = golden();
        let mut buf = Vec::new();
        write_policy_csv(&mut buf, &policy, &tax).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("c,segment,q_star,p_star,consumer_price,profit,tax\n"));
        assert!(text.lines().last().unwrap().ends_with(",excluded,0,1,1,0,prohibitive"));
        let check = validate_schedule_csv(text.as_bytes()).unwrap();
        assert_eq!(check.rows, 257);
        assert!(check.prohibitive_rows > 0);
    }

    #[test]
    fn tax_csv_ends_with_sentinel() {
        let (_, _, tax) = golden();
        let mut buf = Vec::new();
        write_tax_csv(&mut buf, &tax, 65).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p,tau\n"));
        assert_eq!(text.lines().last().unwrap(), "1,prohibitive");
        assert!(validate_schedule_csv(text.as_bytes()).is_ok());
    }

    #[test]
    fn validation_rejects_rising_quantity_and_negative_tax() {
        assert!(validate_schedule_csv("c,q\n0,1\n0.5,2\n".as_bytes()).is_err());
        assert!(validate_schedule_csv("p,tau\n0,0\n1,-0.1\n".as_bytes()).is_err());
        assert!(validate_schedule_csv("c,q_lf\n0,x\n".as_bytes()).is_err());
    }

    #[test]
    fn summary_round_trips() {
        let (env, policy, _) = golden();
        let s = summary_block(&env, &policy, false);
        let back = Summary::parse(&s.to_string()).unwrap();
        assert_eq!(s, back);
        let c_bar: f64 = back.get("c_bar").unwrap().parse().unwrap();
        assert!((c_bar - 11.0 / 23.0).abs() < 1e-6);
        assert_eq!(back.get("gate"), Some("intervention"));
    }
}
