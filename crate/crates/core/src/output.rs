//! CSV writers for reports, sweeps and fuzz summaries.
//!
//! Numbers are written with 17 significant digits in scientific notation
//! (`{:.16e}`), independent of locale. Missing values are empty cells.

use std::io::{self, Write};

use crate::bounds::BoundReport;
use crate::fuzz::FuzzSummary;
use crate::scenarios::Sweep;

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// Columns: `bound,family,applicable,value,target,slack,violated`.
pub fn write_report_csv(report: &BoundReport, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "bound,family,applicable,value,target,slack,violated")?;
    for b in &report.bounds {
        let family = b.name.family();
        let target = report.target(family).unwrap_or(f64::NAN);
        let slack = report.slack(b.name).unwrap_or(f64::NAN);
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            b.name,
            match family {
                crate::bounds::Family::Variance => "variance",
                crate::bounds::Family::Skew => "skew",
                crate::bounds::Family::Product => "product",
            },
            b.applicable,
            format_number(b.value),
            if b.applicable {
                format_number(target)
            } else {
                String::new()
            },
            format_number(slack),
            report.violations.contains(&b.name),
        )?;
    }
    Ok(())
}

/// Columns: `theta[,phi],variance_sum,skew_sum,<bounds in catalog order>,violations`.
pub fn write_sweep_csv(sweep: &Sweep, mut w: impl Write) -> io::Result<()> {
    let has_phi = sweep.scenario.has_phi();
    let mut header = vec!["theta".to_string()];
    if has_phi {
        header.push("phi".into());
    }
    header.extend(["variance_sum".into(), "skew_sum".into()]);
    header.extend(sweep.columns.iter().map(|b| b.to_string()));
    header.push("violations".into());
    writeln!(w, "{}", header.join(","))?;

    for row in &sweep.rows {
        let mut cells = vec![format_number(row.theta)];
        if has_phi {
            cells.push(format_number(row.phi.unwrap_or(f64::NAN)));
        }
        cells.push(format_number(row.report.variance_sum));
        cells.push(format_number(row.report.skew_sum));
        for &b in &sweep.columns {
            cells.push(format_number(row.report.value(b).unwrap_or(f64::NAN)));
        }
        cells.push(row.report.violations.len().to_string());
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Columns: `dim,n,bound,trials,min_slack,max_slack,violations`.
pub fn write_fuzz_csv(summary: &FuzzSummary, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "dim,n,bound,trials,min_slack,max_slack,violations")?;
    for cell in &summary.cells {
        for s in &cell.stats {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                cell.dim,
                cell.n,
                s.name,
                s.checked,
                format_number(s.min_slack),
                format_number(s.max_slack),
                s.violations
            )?;
        }
    }
    Ok(())
}
