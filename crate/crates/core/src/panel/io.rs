use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;

use super::{AssetMeta, PricePanel};
use crate::{Error, Result, Scalar};

const DATE_FORMAT: &str = "%Y-%m-%d";

/// Reads a wide price CSV: header `date,T1,...,TN`, one ISO-8601 dated row per day.
pub fn load_prices<T: Scalar>(path: impl AsRef<Path>) -> Result<PricePanel<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_prices(file)
}

pub fn read_prices<T: Scalar, R: Read>(reader: R) -> Result<PricePanel<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();

    let header = records
        .next()
        .ok_or(Error::TooFewRows { needed: 1, got: 0 })??;
    let mut fields = header.iter().map(str::trim);
    if fields.next() != Some("date") {
        return Err(Error::invalid("price header must start with \"date\""));
    }
    let tickers: Vec<String> = fields.map(str::to_owned).collect();
    if tickers.is_empty() {
        return Err(Error::invalid("price header names no tickers"));
    }
    super::check_tickers(&tickers)?;

    let mut dates: Vec<NaiveDate> = Vec::new();
    let mut series: Vec<Vec<T>> = vec![Vec::new(); tickers.len()];
    for (i, record) in records.enumerate() {
        let record = record?;
        // 1-based file line, header is line 1
        let line = i + 2;
        if record.len() != tickers.len() + 1 {
            return Err(Error::RaggedRow {
                row: line,
                expected: tickers.len() + 1,
                found: record.len(),
            });
        }
        let raw_date = record[0].trim();
        let date = NaiveDate::parse_from_str(raw_date, DATE_FORMAT).map_err(|e| Error::Cell {
            row: line,
            column: "date".into(),
            message: format!("unparseable date {raw_date:?}: {e}"),
        })?;
        if let Some(&prev) = dates.last() {
            if date <= prev {
                return Err(Error::NonIncreasingDate {
                    row: line,
                    date: raw_date.into(),
                });
            }
        }
        dates.push(date);
        for (j, raw) in record.iter().skip(1).enumerate() {
            let raw = raw.trim();
            let price: T = raw.parse().map_err(|_| Error::Cell {
                row: line,
                column: tickers[j].clone(),
                message: format!("unparseable price {raw:?}"),
            })?;
            if !(price.is_finite() && price > T::zero()) {
                return Err(Error::Cell {
                    row: line,
                    column: tickers[j].clone(),
                    message: format!("price {raw:?} is not strictly positive"),
                });
            }
            series[j].push(price);
        }
    }
    PricePanel::new(dates, tickers, series)
}

pub fn write_prices<T: Scalar>(panel: &PricePanel<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_prices_to(panel, file)
}

pub(crate) fn write_prices_to<T: Scalar, W: Write>(panel: &PricePanel<T>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["date".to_owned()];
    header.extend(panel.tickers().iter().cloned());
    w.write_record(&header)?;
    for (t, date) in panel.dates().iter().enumerate() {
        let mut row = Vec::with_capacity(panel.n_assets() + 1);
        row.push(date.format(DATE_FORMAT).to_string());
        row.extend((0..panel.n_assets()).map(|i| panel.price(t, i).to_string()));
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads a `ticker,company,sector` CSV. Tickers absent from any panel are
/// kept; the join happens when networks are built.
pub fn load_metadata(path: impl AsRef<Path>) -> Result<Vec<AssetMeta>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_metadata(file)
}

pub fn read_metadata<R: Read>(reader: R) -> Result<Vec<AssetMeta>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != ["ticker", "company", "sector"] {
        return Err(Error::invalid(format!(
            "metadata header must be ticker,company,sector, found {}",
            header.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, record) in rdr.deserialize::<AssetMeta>().enumerate() {
        let meta = record?;
        let line = i + 2;
        for (field, value) in [("ticker", &meta.ticker), ("sector", &meta.sector)] {
            if value.is_empty() {
                return Err(Error::Cell {
                    row: line,
                    column: field.into(),
                    message: format!("empty {field}"),
                });
            }
        }
        out.push(meta);
    }
    Ok(out)
}

pub fn write_metadata(meta: &[AssetMeta], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["ticker", "company", "sector"])?;
    for m in meta {
        w.write_record([&m.ticker, &m.company, &m.sector])?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_row_file() {
        let p: PricePanel<f64> =
            read_prices("date,VALE3\n2010-01-04,100\n2010-01-05,110\n".as_bytes()).unwrap();
        assert_eq!(p.n_days(), 2);
        assert_eq!(p.n_assets(), 1);
        assert_eq!(p.series(0), &[100.0, 110.0]);
    }

    #[test]
    fn zero_price_names_cell() {
        let err = read_prices::<f64, _>("date,A,B\n2010-01-04,1,2\n2010-01-05,3,0\n".as_bytes())
            .unwrap_err();
        match err {
            Error::Cell { row, column, .. } => {
                assert_eq!(row, 3);
                assert_eq!(column, "B");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            "date,A\n2010-01-04,abc\n",
            "date,A,A\n2010-01-04,1,1\n",
            "date,A\n2010-01-05,1\n2010-01-04,1\n",
            "date,A,B\n2010-01-04,1\n",
            "date,A\n04/01/2010,1\n",
            "date,A\n2010-01-04,-3\n",
        ];
        for case in cases {
            assert!(read_prices::<f64, _>(case.as_bytes()).is_err(), "{case:?}");
        }
        assert!(matches!(
            read_prices::<f64, _>(cases[1].as_bytes()),
            Err(Error::DuplicateTicker(_))
        ));
        assert!(matches!(
            read_prices::<f64, _>(cases[3].as_bytes()),
            Err(Error::RaggedRow {
                row: 2,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn metadata_rows() {
        let meta = read_metadata("ticker,company,sector\nVALE3,Vale,Mining\n".as_bytes()).unwrap();
        assert_eq!(
            meta,
            vec![AssetMeta {
                ticker: "VALE3".into(),
                company: "Vale".into(),
                sector: "Mining".into()
            }]
        );
        assert!(read_metadata("ticker,company,sector\nVALE3,Vale,\n".as_bytes()).is_err());
        assert!(read_metadata("ticker,company,sector\n,Vale,Mining\n".as_bytes()).is_err());
        assert!(read_metadata("code,company,sector\nVALE3,Vale,Mining\n".as_bytes()).is_err());
    }
}
