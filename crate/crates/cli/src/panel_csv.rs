//! Wide panel CSV: a `period` column (1, 2, ... ascending) followed by one
//! column per parameter. Values are written in shortest round-trip form, so
//! a written panel parses back bit-identical.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use integral_core::{IndicatorTrace, SeriesPanel};

use crate::error::{CliError, Result};

pub fn read_panel(path: &Path) -> Result<SeriesPanel> {
    let file = File::open(path).map_err(|e| CliError::read(path, e))?;
    parse_panel(file).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_panel<R: Read>(reader: R) -> Result<SeriesPanel> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Input(format!("bad header: {e}")))?
        .clone();
    if headers.get(0) != Some("period") {
        return Err(CliError::Input("first column must be `period`".into()));
    }
    let ids: Vec<String> = headers.iter().skip(1).map(str::to_owned).collect();
    if ids.is_empty() {
        return Err(CliError::Input("panel has no parameter columns".into()));
    }
    let mut series = vec![Vec::new(); ids.len()];
    for (row_idx, record) in rdr.records().enumerate() {
        let line = row_idx + 2;
        let record = record.map_err(|e| CliError::Input(format!("line {line}: {e}")))?;
        let period: usize = record[0]
            .parse()
            .map_err(|_| CliError::Input(format!("line {line}: bad period `{}`", &record[0])))?;
        if period != row_idx + 1 {
            return Err(CliError::Input(format!(
                "line {line}: expected period {}, found {period}",
                row_idx + 1
            )));
        }
        for (i, cell) in record.iter().skip(1).enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                CliError::Input(format!("line {line}, column `{}`: bad number `{cell}`", ids[i]))
            })?;
            series[i].push(v);
        }
    }
    Ok(SeriesPanel::from_series(ids, series)?)
}

pub fn write_panel<W: Write>(panel: &SeriesPanel, writer: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(std::iter::once("period").chain(panel.parameter_ids().iter().map(String::as_str)))?;
    let mut record = Vec::with_capacity(panel.n() + 1);
    for t in 1..=panel.t_max() {
        record.clear();
        record.push(t.to_string());
        record.extend((0..panel.n()).map(|i| panel.value(i, t).to_string()));
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}

/// One row per epoch: `epoch` followed by G_i(t) for each parameter.
pub fn write_trace<W: Write>(trace: &IndicatorTrace, ids: &[String], writer: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(std::iter::once("epoch").chain(ids.iter().map(String::as_str)))?;
    let mut record = Vec::with_capacity(ids.len() + 1);
    for (epoch, row) in trace.rows() {
        record.clear();
        record.push(epoch.to_string());
        record.extend(row.iter().map(f64::to_string));
        wtr.write_record(&record)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_to_path(path: &Path, f: impl FnOnce(&mut File) -> csv::Result<()>) -> Result<()> {
    let mut file = File::create(path).map_err(|e| CliError::write(path, e))?;
    f(&mut file).map_err(|e| CliError::write(path, e))?;
    file.flush().map_err(|e| CliError::write(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scientific_notation() {
        let p = parse_panel("period,a,b\n1,1e3,-2.5E-1\n2,0.5,7\n".as_bytes()).unwrap();
        assert_eq!(p.value(0, 1), 1000.0);
        assert_eq!(p.value(1, 1), -0.25);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cases = [
            "time,a\n1,2\n",
            "period\n1\n",
            "period,a\n2,1\n",
            "period,a\n1,x\n",
            "period,a\n1,1,2\n",
            "period,a\n1,NaN\n",
            "period,a,a\n1,1,2\n",
            "period,a\n",
        ];
        for text in cases {
            assert!(matches!(parse_panel(text.as_bytes()), Err(CliError::Input(_))), "{text:?}");
        }
    }

    #[test]
    fn writes_shortest_round_trip() {
        let p = SeriesPanel::from_series(vec!["a".into()], vec![vec![0.1, 1e-300, -0.0, 123456789.125]])
            .unwrap();
        let mut buf = Vec::new();
        write_panel(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("period,a\n1,0.1\n"));
        let back = parse_panel(text.as_bytes()).unwrap();
        for (x, y) in p.values().iter().zip(back.values()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
