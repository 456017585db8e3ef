//! CSV serialization of grid functions and coefficient vectors.
//!
//! Every row carries an exact numerator/denominator pair in lowest terms, so
//! a write followed by a read reproduces the value vector bit for bit.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CoeffVector, GridFunction};
use crate::{Error, Rational, Result};

const GRID_HEADER: [&str; 3] = ["coset_index", "numerator", "denominator"];
const COEFF_HEADER: [&str; 3] = ["index", "numerator", "denominator"];

fn write_rows<W: Write>(out: W, header: [&str; 3], values: &[Rational]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(header)?;
    for (i, v) in values.iter().enumerate() {
        writer.write_record([i.to_string(), v.numer().to_string(), v.denom().to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

fn read_rows<R: Read>(input: R, header: [&str; 3]) -> Result<(u32, Vec<Rational>)> {
    let mut reader = csv::Reader::from_reader(input);
    if reader.headers()?.iter().ne(header) {
        return Err(Error::Parse(format!("expected header {}", header.join(","))));
    }
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let field = |j: usize| record.get(j).ok_or_else(|| Error::Parse(format!("row {row}: missing column {j}")));
        let index: usize = field(0)?.parse().map_err(|_| Error::Parse(format!("row {row}: bad index")))?;
        if index != row {
            return Err(Error::Parse(format!("row {row}: index {index} out of order")));
        }
        let parse = |j: usize| -> Result<BigInt> {
            field(j)?.parse().map_err(|_| Error::Parse(format!("row {row}: bad integer in column {j}")))
        };
        let (num, den) = (parse(1)?, parse(2)?);
        if den.is_zero() {
            return Err(Error::Parse(format!("row {row}: zero denominator")));
        }
        values.push(Rational::new(num, den));
    }
    if !values.len().is_power_of_two() {
        return Err(Error::Parse(format!("{} rows is not a power of two", values.len())));
    }
    Ok((values.len().trailing_zeros(), values))
}

pub fn write_grid_csv<W: Write>(f: &GridFunction, out: W) -> Result<()> {
    write_rows(out, GRID_HEADER, f.values())
}

pub fn read_grid_csv<R: Read>(input: R) -> Result<GridFunction> {
    let (m, values) = read_rows(input, GRID_HEADER)?;
    GridFunction::new(m, values)
}

pub fn write_coeffs_csv<W: Write>(c: &CoeffVector, out: W) -> Result<()> {
    write_rows(out, COEFF_HEADER, c.coeffs())
}

pub fn read_coeffs_csv<R: Read>(input: R) -> Result<CoeffVector> {
    let (m, coeffs) = read_rows(input, COEFF_HEADER)?;
    CoeffVector::new(m, coeffs)
}
