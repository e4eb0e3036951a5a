use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::matrix::SquareMatrix;
use crate::{Error, Result, Scalar};

/// Square CSV: header `ticker,T1,...,TN`, then one `Ti,v_i1,...,v_iN` row per asset.
pub fn write_matrix_csv<T: Scalar>(
    tickers: &[String],
    values: &SquareMatrix<T>,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    let mut header = vec!["ticker".to_owned()];
    header.extend(tickers.iter().cloned());
    w.write_record(&header)?;
    for (ticker, row) in tickers.iter().zip(values.rows()) {
        let mut rec = vec![ticker.clone()];
        rec.extend(row.iter().map(ToString::to_string));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Reads a matrix written by [`write_matrix_csv`]. Row labels must repeat
/// the header tickers in order.
pub fn read_matrix_csv<T: Scalar, R: Read>(reader: R) -> Result<(Vec<String>, SquareMatrix<T>)> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let tickers: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_owned).collect();
    let mut rows = Vec::with_capacity(tickers.len());
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = i + 2;
        if record.len() != tickers.len() + 1 {
            return Err(Error::RaggedRow {
                row: line,
                expected: tickers.len() + 1,
                found: record.len(),
            });
        }
        if tickers.get(i).map(String::as_str) != Some(&record[0]) {
            return Err(Error::invalid(format!(
                "row {line}: label {:?} out of order",
                &record[0]
            )));
        }
        let row = record
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, raw)| {
                raw.trim().parse::<T>().map_err(|_| Error::Cell {
                    row: line,
                    column: tickers[j].clone(),
                    message: format!("unparseable value {raw:?}"),
                })
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(row);
    }
    let matrix = SquareMatrix::from_rows(&rows).ok_or_else(|| {
        Error::invalid(format!("{} rows for {} tickers", rows.len(), tickers.len()))
    })?;
    Ok((tickers, matrix))
}
