//! Comma-separated output with a fixed header, `\n` line endings and
//! floats printed with 17 significant digits.

use std::io::{self, Write};

pub const DENSITY_HEADER: &str = "t,phi,l,p";
pub const TRAJECTORY_HEADER: &str = "t,phi,l,absU";
pub const JUMPS_HEADER: &str = "k,t_star,phi_minus,phi_plus,l,delta_phi";
pub const CLASSICAL_HEADER: &str = "t,phi,l,p_l,energy";

pub enum Field {
    Int(i64),
    Real(f64),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Real(x)
    }
}

impl From<i64> for Field {
    fn from(k: i64) -> Self {
        Field::Int(k)
    }
}

pub fn write_header(w: &mut (impl Write + ?Sized), header: &str) -> io::Result<()> {
    writeln!(w, "{header}")
}

pub fn write_row<const N: usize>(w: &mut (impl Write + ?Sized), fields: [Field; N]) -> io::Result<()> {
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            w.write_all(b",")?;
        }
        match f {
            Field::Int(k) => write!(w, "{k}")?,
            Field::Real(x) => write!(w, "{x:.16e}")?,
        }
    }
    w.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_exactly() {
        let x = 0.1 + 0.2;
        let mut buf = Vec::new();
        write_row(&mut buf, [Field::Int(-3), x.into(), std::f64::consts::PI.into()]).unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert!(line.ends_with('\n') && !line.ends_with(",\n"));
        let cols: Vec<&str> = line.trim_end().split(',').collect();
        assert_eq!(cols[0], "-3");
        assert_eq!(cols[1].parse::<f64>().unwrap(), x);
        assert_eq!(cols[2].parse::<f64>().unwrap(), std::f64::consts::PI);
    }
}
