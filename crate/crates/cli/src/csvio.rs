//! `r,value` sample files. Radii are written as mantissa/exponent text so
//! that values far below the `f64` range survive a round trip.

use std::io::{Read, Write};

use torsion_core::asymptotics::{format_r, parse_r, Sample};

use crate::error::{CliError, CliResult};

pub fn read_samples(reader: impl Read) -> CliResult<Vec<Sample>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "r" || &headers[1] != "value" {
        return Err(CliError::input(format!("expected header `r,value`, found `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = line + 2;
        let l = parse_r(&rec[0]).map_err(|e| CliError::input(format!("row {row}: {e}")))?;
        let v: f64 = rec[1].parse().map_err(|_| CliError::input(format!("row {row}: bad value {:?}", &rec[1])))?;
        out.push(Sample::from_log_inv_r(l, v).map_err(|e| CliError::input(format!("row {row}: {e}")))?);
    }
    Ok(out)
}

pub fn write_samples(writer: impl Write, samples: &[Sample]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record(["r", "value"])?;
    for s in samples {
        w.write_record([format_r(s.log_inv_r()), format!("{:?}", s.value)])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let samples: Vec<Sample> = [0.5, 10.0, 1256.6]
            .iter()
            .map(|&l| Sample::from_log_inv_r(l, -l / 7.0).unwrap())
            .collect();
        let mut buf = Vec::new();
        write_samples(&mut buf, &samples).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("r,value\n"));
        assert!(text.ends_with('\n'));
        let back = read_samples(buf.as_slice()).unwrap();
        for (a, b) in samples.iter().zip(&back) {
            assert!((a.log_inv_r() - b.log_inv_r()).abs() < 1e-12 * a.log_inv_r());
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_samples("x,y\n0.1,2\n".as_bytes()).is_err());
        assert!(read_samples("r,value\n1.5,2\n".as_bytes()).is_err());
        assert!(read_samples("r,value\n0.1,abc\n".as_bytes()).is_err());
        assert_eq!(read_samples("r,value\n1e-546,3.5\n".as_bytes()).unwrap().len(), 1);
    }
}
