//! Field files: one header line
//! `PINREP1 j2=<int> mass=<float> rep=<coord|mom|sph> n=<int> dx=<float>`
//! followed by little-endian f64 values in (x, y, z, component) order.

use super::{FieldRep, GridSpec, Layout, SpinorFieldGrid};
use crate::error::{Error, Result};
use std::io::{Read, Write};

pub const MAGIC: &str = "PINREP1";

pub fn write_field(field: &SpinorFieldGrid, mut w: impl Write) -> Result<()> {
    let grid = field.cartesian()?;
    let mass = field.mass.unwrap_or(f64::NAN);
    writeln!(
        w,
        "{MAGIC} j2={} mass={} rep={} n={} dx={}",
        field.j2,
        mass,
        field.rep.tag(),
        grid.n,
        grid.dx
    )?;
    let mut bytes = Vec::with_capacity(field.data.len() * 8);
    for x in &field.data {
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    w.write_all(&bytes)?;
    Ok(())
}

pub fn read_field(mut r: impl Read) -> Result<SpinorFieldGrid> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    let nl = buf
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Format("missing header line".into()))?;
    let header =
        std::str::from_utf8(&buf[..nl]).map_err(|_| Error::Format("header is not UTF-8".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(MAGIC) {
        return Err(Error::Format(format!("expected {MAGIC} header")));
    }
    let (mut j2, mut mass, mut rep, mut n, mut dx) = (None, None, None, None, None);
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("bad field {part}")))?;
        let bad = || Error::Format(format!("bad value in {part}"));
        match k {
            "j2" => j2 = Some(v.parse::<u32>().map_err(|_| bad())?),
            "mass" => mass = Some(v.parse::<f64>().map_err(|_| bad())?),
            "rep" => rep = Some(FieldRep::from_tag(v).ok_or_else(bad)?),
            "n" => n = Some(v.parse::<usize>().map_err(|_| bad())?),
            "dx" => dx = Some(v.parse::<f64>().map_err(|_| bad())?),
            _ => return Err(Error::Format(format!("unknown header key {k}"))),
        }
    }
    let missing = |k: &str| Error::Format(format!("header lacks {k}"));
    let j2 = j2.ok_or_else(|| missing("j2"))?;
    let mass = mass.ok_or_else(|| missing("mass"))?;
    let rep = rep.ok_or_else(|| missing("rep"))?;
    let grid = GridSpec::new(
        n.ok_or_else(|| missing("n"))?,
        dx.ok_or_else(|| missing("dx"))?,
    )?;
    if rep == FieldRep::Spherical {
        return Err(Error::Format(
            "spherical fields are not stored on Cartesian grids".into(),
        ));
    }
    let mass = if mass.is_nan() { None } else { Some(mass) };
    let mut field = SpinorFieldGrid::zeros(j2, mass, rep, Layout::Cartesian(grid));
    let body = &buf[nl + 1..];
    if body.len() != field.data.len() * 8 {
        return Err(Error::Format(format!(
            "expected {} data bytes, found {}",
            field.data.len() * 8,
            body.len()
        )));
    }
    for (x, chunk) in field.data.iter_mut().zip(body.chunks_exact(8)) {
        *x = f64::from_le_bytes(chunk.try_into().expect("8 bytes"));
        if !x.is_finite() {
            return Err(Error::Format("non-finite entry".into()));
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_bytes() {
        let g = GridSpec::new(4, 0.5).unwrap();
        let f = SpinorFieldGrid::from_fn(1, Some(1.5), g, |x, c| {
            c.copy_from_slice(&[x[0], x[1] * x[2], 1.0, -2.0]);
        });
        let mut buf = Vec::new();
        write_field(&f, &mut buf).unwrap();
        assert!(buf.starts_with(b"PINREP1 j2=1 mass=1.5 rep=coord n=4 dx=0.5\n"));
        assert_eq!(read_field(&buf[..]).unwrap(), f);
        assert!(matches!(
            read_field(&b"PINREP2 j2=1\n"[..]),
            Err(Error::Format(_))
        ));
    }
}
