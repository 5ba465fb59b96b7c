use std::io::{Read, Write};

use num_complex::Complex64;

use super::{GridError, LevelSetMask, NormField};

fn fmt_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64, GridError> {
    s.trim().parse::<f64>().map_err(|_| GridError::Parse(format!("bad {what} value '{s}'")))
}

/// `re,im,value` rows in lattice order; infinity is written as `inf`.
pub fn write_field_csv<W: Write>(field: &NormField, out: W) -> Result<(), GridError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im", "value"])?;
    for (idx, &v) in field.values.iter().enumerate() {
        let (i, j) = field.region.coords(idx);
        let z = field.region.point(i, j);
        w.write_record([z.re.to_string(), z.im.to_string(), fmt_value(v)])?;
    }
    w.flush()?;
    Ok(())
}

/// `re,im,member` rows in lattice order with member 0 or 1.
pub fn write_mask_csv<W: Write>(mask: &LevelSetMask, out: W) -> Result<(), GridError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im", "member"])?;
    for (idx, &m) in mask.mask.iter().enumerate() {
        let (i, j) = mask.region.coords(idx);
        let z = mask.region.point(i, j);
        w.write_record([z.re.to_string(), z.im.to_string(), u8::from(m).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `re,im,value` rows.
pub fn read_field_csv<R: Read>(input: R) -> Result<Vec<(Complex64, f64)>, GridError> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["re", "im", "value"] {
        return Err(GridError::Parse(format!("expected header re,im,value, got {:?}", headers)));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let z = Complex64::new(parse_f64(&rec[0], "re")?, parse_f64(&rec[1], "im")?);
        out.push((z, parse_f64(&rec[2], "value")?));
    }
    Ok(out)
}

/// Member points of a `re,im,member` file. A file with only `re,im`
/// columns is read as a plain point list.
pub fn read_mask_csv<R: Read>(input: R) -> Result<Vec<Complex64>, GridError> {
    let mut r = csv::Reader::from_reader(input);
    let headers: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let with_member = match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["re", "im", "member"] => true,
        ["re", "im"] => false,
        other => return Err(GridError::Parse(format!("expected header re,im,member or re,im, got {other:?}"))),
    };
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let z = Complex64::new(parse_f64(&rec[0], "re")?, parse_f64(&rec[1], "im")?);
        if !z.is_finite() {
            return Err(GridError::Parse(format!("non-finite point {z}")));
        }
        let keep = if with_member {
            match rec[2].trim() {
                "1" => true,
                "0" => false,
                other => return Err(GridError::Parse(format!("member must be 0 or 1, got '{other}'"))),
            }
        } else {
            true
        };
        if keep {
            out.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudospectra::{level_set, GridRegion, Strictness};

    #[test]
    fn field_csv_writes_inf_literal() {
        let region = GridRegion::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        let field = NormField { region, n: 0, values: vec![1.0, f64::INFINITY, 0.5, 2.0] };
        let mut buf = Vec::new();
        write_field_csv(&field, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), "re,im,value");
        assert_eq!(text.lines().nth(2).unwrap(), "1,0,inf");
        let back = read_field_csv(buf.as_slice()).unwrap();
        assert_eq!(back[1].1, f64::INFINITY);
        assert_eq!(back.len(), 4);
    }

    #[test]
    fn mask_round_trip() {
        let region = GridRegion::new(-1.0, 1.0, -1.0, 1.0, 3, 3).unwrap();
        let field = NormField { region, n: 0, values: (0..9).map(|v| v as f64).collect() };
        let mask = level_set(&field, 0.25, Strictness::ClosedSigma).unwrap();
        let mut buf = Vec::new();
        write_mask_csv(&mask, &mut buf).unwrap();
        assert_eq!(read_mask_csv(buf.as_slice()).unwrap(), mask.member_points());
    }

    #[test]
    fn rejects_bad_member() {
        let text = "re,im,member\n0,0,2\n";
        assert!(read_mask_csv(text.as_bytes()).is_err());
    }
}
