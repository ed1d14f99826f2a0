use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

use super::{GridSpec, WignerGrid};
use crate::error::{Error, Result};

/// On-disk grid encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GridFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for GridFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidInput(format!("unknown grid format {other:?}"))),
        }
    }
}

/// Writes `grid` as flat JSON or as `x,p,value` CSV.
///
/// The CSV body is preceded by a `# hbar=…` comment line; values use 17
/// significant digits.
pub fn write_grid<W: Write>(grid: &WignerGrid, format: GridFormat, mut out: W) -> Result<()> {
    match format {
        GridFormat::Json => {
            serde_json::to_writer(&mut out, grid)?;
            writeln!(out)?;
        }
        GridFormat::Csv => {
            let s = &grid.spec;
            writeln!(out, "# hbar={:.16e}", s.hbar)?;
            writeln!(out, "x,p,value")?;
            for i in 0..s.nx {
                for j in 0..s.np {
                    writeln!(out, "{:.16e},{:.16e},{:.16e}", s.x(i), s.p(j), grid.get(i, j))?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads a grid written by [`write_grid`].
pub fn read_grid<R: BufRead>(input: R, format: GridFormat) -> Result<WignerGrid> {
    match format {
        GridFormat::Json => {
            let g: WignerGrid = serde_json::from_reader(input)?;
            WignerGrid::new(g.spec, g.values)
        }
        GridFormat::Csv => read_csv(input),
    }
}

fn parse(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("line {line}: cannot parse {field:?}")))
}

fn read_csv<R: BufRead>(input: R) -> Result<WignerGrid> {
    let mut hbar = 1.0;
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    let mut seen_header = false;
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("hbar=") {
                hbar = parse(v, n + 1)?;
            }
            continue;
        }
        if !seen_header {
            if t.replace(' ', "") != "x,p,value" {
                return Err(Error::InvalidInput(format!("expected header x,p,value, got {t:?}")));
            }
            seen_header = true;
            continue;
        }
        let f: Vec<&str> = t.split(',').collect();
        if f.len() != 3 {
            return Err(Error::InvalidInput(format!("line {}: expected 3 fields", n + 1)));
        }
        rows.push((parse(f[0], n + 1)?, parse(f[1], n + 1)?, parse(f[2], n + 1)?));
    }
    if rows.len() < 4 {
        return Err(Error::InvalidInput("CSV grid has fewer than 4 points".into()));
    }
    // rows are x-major: p varies fastest
    let p0 = rows[0].1;
    let np = rows.iter().take_while(|r| r.0 == rows[0].0).count();
    if np < 2 || rows.len() % np != 0 {
        return Err(Error::GridMismatch("CSV rows do not form a rectangular lattice".into()));
    }
    let nx = rows.len() / np;
    let dp = (rows[np - 1].1 - p0) / (np as f64 - 1.0);
    let x0 = rows[0].0;
    let dx = (rows[(nx - 1) * np].0 - x0) / (nx as f64 - 1.0);
    let spec = GridSpec {
        x0,
        dx,
        nx,
        p0,
        dp,
        np,
        hbar,
    };
    for (k, r) in rows.iter().enumerate() {
        let (i, j) = (k / np, k % np);
        let tol = 1e-9 * (dx.max(dp));
        if (r.0 - spec.x(i)).abs() > tol || (r.1 - spec.p(j)).abs() > tol {
            return Err(Error::GridMismatch(format!("CSV point {k} is off the uniform lattice")));
        }
    }
    WignerGrid::new(spec, rows.into_iter().map(|r| r.2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> WignerGrid {
        let spec = GridSpec::square(7, 1.5).with_hbar(0.5);
        WignerGrid::from_fn(spec, |x, p| (x * 0.3 - p).sin() / 3.0).unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = sample();
        let mut buf = Vec::new();
        write_grid(&g, GridFormat::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        for key in ["\"x0\"", "\"dx\"", "\"nx\"", "\"p0\"", "\"dp\"", "\"np\"", "\"hbar\"", "\"values\""] {
            assert!(text.contains(key), "{key} missing");
        }
        let back = read_grid(buf.as_slice(), GridFormat::Json).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn csv_round_trip() {
        let g = sample();
        let mut buf = Vec::new();
        write_grid(&g, GridFormat::Csv, &mut buf).unwrap();
        let back = read_grid(buf.as_slice(), GridFormat::Csv).unwrap();
        assert!(back.spec.matches(&g.spec));
        assert!(back.max_abs_diff(&g).unwrap() == 0.0);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(read_grid("x,p,value\n1,2\n".as_bytes(), GridFormat::Csv).is_err());
        assert!(read_grid("a,b,c\n".as_bytes(), GridFormat::Csv).is_err());
    }
}
