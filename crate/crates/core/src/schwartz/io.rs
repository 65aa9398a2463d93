use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::function::TestFunction;
use super::window::LatticeWindow;
use crate::error::{Error, Result};
use crate::padic::{Field, FieldParams, NormBase, DEFAULT_PRECISION};

/// One nonzero cell: digits of `p^M x_i` per coordinate, lowest first, each
/// digit an encoded residue element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellEntry {
    pub rep: Vec<Vec<u64>>,
    pub re: f64,
    pub im: f64,
}

/// JSON form of a [`TestFunction`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionJson {
    pub p: u64,
    pub f: usize,
    pub modulus: Vec<u64>,
    #[serde(default)]
    pub norm_base: Option<NormBase>,
    #[serde(default)]
    pub precision: Option<u32>,
    pub n: usize,
    pub support: i64,
    pub constancy: i64,
    pub entries: Vec<CellEntry>,
}

impl TestFunction {
    pub fn to_json_struct(&self) -> TestFunctionJson {
        let field = self.field();
        let lay = self.layout();
        let depth = self.window().depth();
        let p = field.p();
        let entries = self
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, a)| {
                let coords = lay.coords(i);
                let rep = coords
                    .chunks(lay.f)
                    .map(|c| {
                        let mut c = c.to_vec();
                        (0..depth)
                            .map(|_| {
                                let digit: Vec<u64> = c.iter().map(|x| x % p).collect();
                                c.iter_mut().for_each(|x| *x /= p);
                                field.encode_residue(&digit)
                            })
                            .collect()
                    })
                    .collect();
                CellEntry { rep, re: a.re, im: a.im }
            })
            .collect();
        let w = self.window();
        TestFunctionJson {
            p,
            f: field.degree(),
            modulus: field.modulus().to_vec(),
            norm_base: Some(field.norm_base()),
            precision: Some(field.precision()),
            n: w.n,
            support: w.support,
            constancy: w.constancy,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_struct()).expect("plain data serializes")
    }

    pub fn from_json_struct(j: &TestFunctionJson) -> Result<Self> {
        let field: Field = FieldParams::new(
            j.p,
            j.f,
            Some(j.modulus.clone()),
            j.norm_base,
            j.precision.unwrap_or(DEFAULT_PRECISION),
        )?;
        let window = LatticeWindow::new(j.n, j.support, j.constancy)?;
        let mut out = TestFunction::zero(&field, window)?;
        let depth = window.depth() as usize;
        let p = j.p;
        for e in &j.entries {
            if e.rep.len() != j.n || e.rep.iter().any(|d| d.len() != depth) {
                return Err(Error::InvalidInput("cell representative has wrong shape".into()));
            }
            let mut coords = Vec::with_capacity(j.n * j.f);
            for digits in &e.rep {
                let mut comp = vec![0u64; j.f];
                for (k, &d) in digits.iter().enumerate() {
                    if d >= field.q() {
                        return Err(Error::InvalidInput(format!("digit {d} is not a residue code")));
                    }
                    for (c, r) in comp.iter_mut().zip(field.decode_residue(d)) {
                        *c += r * p.pow(k as u32);
                    }
                }
                coords.extend(comp);
            }
            let idx = out.layout().index(&coords);
            out.amplitudes_mut()[idx] = Complex64::new(e.re, e.im);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: TestFunctionJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("test function JSON: {e}")))?;
        Self::from_json_struct(&j)
    }
}
