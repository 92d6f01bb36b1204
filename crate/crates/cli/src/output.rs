//! CSV tables with fixed, locale-independent number formatting.

use std::io::Write;
use std::path::Path;

use crate::error::CliError;

const SIGNIFICANT: usize = 12;

/// `x` with 12 significant digits: positional notation for `1e-5 ≤ |x| < 1e12`,
/// otherwise scientific. Zero prints as `0` and `−0` as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent present") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// A CSV cell: reals use [`format_number`], counts print as integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Real(f64),
    Count(usize),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Self::Real(x) => format_number(x),
            Self::Count(n) => n.to_string(),
        }
    }
}

/// Writes a header and rows to `out`, or to standard output when `out` is `None`.
pub fn write_csv(out: Option<&Path>, header: &[&str], rows: &[Vec<Cell>]) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row.iter().map(|&c| c.render()))?;
    }
    writer.flush().map_err(|source| CliError::Io {
        path: out.map_or_else(|| "<stdout>".into(), |p| p.display().to_string()),
        source,
    })
}
