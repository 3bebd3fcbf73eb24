//! Three-component CSV records.

use std::path::Path;

use crate::error::{CliError, Result};

/// Relative tolerance on the spacing of the time column.
pub const SPACING_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub time: Vec<f64>,
    pub channels: Vec<[f64; 3]>,
    pub names: [String; 3],
    pub dt: f64,
}

/// Column selection: an optional time column and three channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Columns {
    pub time: Option<String>,
    pub channels: [String; 3],
}

impl Default for Columns {
    fn default() -> Self {
        Self {
            time: Some("t".into()),
            channels: ["x".into(), "y".into(), "z".into()],
        }
    }
}

impl Columns {
    /// Parses `t,x,y,z` (time then channels) or `x,y,z` (channels only).
    pub fn parse(spec: &str) -> Result<Self> {
        let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
        if names.iter().any(String::is_empty) {
            return Err(CliError::Config(format!(
                "empty name in column list `{spec}`"
            )));
        }
        match names.as_slice() {
            [t, x, y, z] => Ok(Self {
                time: Some(t.clone()),
                channels: [x.clone(), y.clone(), z.clone()],
            }),
            [x, y, z] => Ok(Self {
                time: None,
                channels: [x.clone(), y.clone(), z.clone()],
            }),
            _ => Err(CliError::Config(format!(
                "column list `{spec}` must name a time column and three channels, or three channels"
            ))),
        }
    }
}

fn find(headers: &csv::StringRecord, name: &str, path: &Path) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| {
            let have: Vec<&str> = headers.iter().map(str::trim).collect();
            CliError::input(
                path,
                format!("missing column `{name}`; header has: {}", have.join(",")),
            )
        })
}

/// Reads a CSV record. `dt` overrides the spacing inferred from the time
/// column and is required when there is no time column.
pub fn read_csv(path: &Path, columns: &Columns, dt: Option<f64>) -> Result<Dataset> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::input(path, format!("cannot read: {e}")))?;
    parse_csv(&bytes, path, columns, dt)
}

pub fn parse_csv(bytes: &[u8], path: &Path, columns: &Columns, dt: Option<f64>) -> Result<Dataset> {
    if let Some(d) = dt {
        if !(d > 0.0) || !d.is_finite() {
            return Err(CliError::Config(format!("--dt must be positive, got {d}")));
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(path, format!("cannot read header: {e}")))?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(CliError::input(path, "no data rows"));
    }
    let time_col = match &columns.time {
        Some(t) => Some(find(&headers, t, path)?),
        None => None,
    };
    let available = headers.len() - usize::from(time_col.is_some());
    if available < 3 {
        return Err(CliError::input(
            path,
            format!("expected 3 channels, found {available}"),
        ));
    }
    let mut idx = [0usize; 3];
    for (k, name) in columns.channels.iter().enumerate() {
        idx[k] = find(&headers, name, path)?;
    }

    let mut time = Vec::new();
    let mut channels = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::input(path, format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let value = |col: usize| -> Result<f64> {
            let raw = record.get(col).unwrap_or("");
            let v: f64 = raw.parse().map_err(|_| {
                CliError::input(
                    path,
                    format!(
                        "line {line}, column `{}`: cannot parse `{raw}` as a number",
                        &headers[col]
                    ),
                )
            })?;
            if !v.is_finite() {
                return Err(CliError::input(
                    path,
                    format!(
                        "line {line}, column `{}`: value is not finite",
                        &headers[col]
                    ),
                ));
            }
            Ok(v)
        };
        if let Some(c) = time_col {
            time.push((value(c)?, line));
        }
        channels.push([value(idx[0])?, value(idx[1])?, value(idx[2])?]);
    }
    if channels.is_empty() {
        return Err(CliError::input(path, "no data rows"));
    }

    let inferred = if time.len() >= 2 {
        if let Some(w) = time.windows(2).find(|w| !(w[1].0 > w[0].0)) {
            return Err(CliError::input(
                path,
                format!("line {}: time is not strictly increasing", w[1].1),
            ));
        }
        let span = time[time.len() - 1].0 - time[0].0;
        let step = span / (time.len() - 1) as f64;
        for w in time.windows(2) {
            let d = w[1].0 - w[0].0;
            if (d - step).abs() > SPACING_TOL * step {
                return Err(CliError::input(
                    path,
                    format!(
                        "line {}: non-uniform sampling (step {d} differs from mean step {step})",
                        w[1].1
                    ),
                ));
            }
        }
        Some(step)
    } else {
        None
    };
    let dt = match (dt, inferred) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => {
            return Err(CliError::input(
                path,
                "cannot infer the sample interval; pass --dt",
            ))
        }
    };
    let time = if time.is_empty() {
        (0..channels.len()).map(|i| i as f64 * dt).collect()
    } else {
        time.into_iter().map(|(t, _)| t).collect()
    };
    Ok(Dataset {
        time,
        channels,
        names: columns.channels.clone(),
        dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Dataset> {
        parse_csv(
            text.as_bytes(),
            Path::new("in.csv"),
            &Columns::default(),
            None,
        )
    }

    #[test]
    fn reads_with_comments() {
        let d = parse("# station A\nt,x,y,z\n0,1,2,3\n# gap note\n0.5,4,5,6\n1.0,7,8,9\n").unwrap();
        assert_eq!(
            d.channels,
            vec![[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]
        );
        assert_eq!(d.dt, 0.5);
    }

    #[test]
    fn reports_bad_cells_with_line() {
        let e = parse("t,x,y,z\n0,1,2,3\n1,1,oops,3\n")
            .unwrap_err()
            .to_string();
        assert!(
            e.contains("line 3") && e.contains("`y`") && e.contains("oops"),
            "{e}"
        );
    }

    #[test]
    fn rejects_irregular_time() {
        let e = parse("t,x,y,z\n0,1,2,3\n1,1,2,3\n2.5,1,2,3\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("non-uniform"), "{e}");
        let e = parse("t,x,y,z\n0,1,2,3\n0,1,2,3\n")
            .unwrap_err()
            .to_string();
        assert!(e.contains("strictly increasing"), "{e}");
    }

    #[test]
    fn rejects_missing_channels() {
        let e = parse("t,x,y\n0,1,2\n").unwrap_err().to_string();
        assert!(e.contains("expected 3 channels, found 2"), "{e}");
        let e = parse("t,x,y,w\n0,1,2,3\n").unwrap_err().to_string();
        assert!(e.contains("missing column `z`"), "{e}");
        assert!(parse("").unwrap_err().to_string().contains("no data rows"));
        assert!(parse("t,x,y,z\n")
            .unwrap_err()
            .to_string()
            .contains("no data rows"));
    }

    #[test]
    fn column_remap_without_time() {
        let cols = Columns::parse("e,n,u").unwrap();
        let d = parse_csv(b"u,n,e\n1,2,3\n4,5,6\n", Path::new("a"), &cols, Some(0.1)).unwrap();
        assert_eq!(d.channels, vec![[3.0, 2.0, 1.0], [6.0, 5.0, 4.0]]);
        assert!((d.time[1] - 0.1).abs() < 1e-15);
        assert!(parse_csv(b"u,n,e\n1,2,3\n", Path::new("a"), &cols, None).is_err());
        assert!(Columns::parse("a,b").is_err());
    }
}
