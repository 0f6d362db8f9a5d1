//! JSON encodings of channels and bipartite states. Complex entries are `[re, im]` pairs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, C64};

/// Row-major matrix of `[re, im]` pairs.
pub type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub d_in: usize,
    pub d_out: usize,
    pub kraus: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: Rows,
}

pub fn encode_matrix(m: &CMatrix) -> Rows {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn decode(rows: &Rows, shape: (usize, usize), what: &str) -> Result<CMatrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Format(format!("{what} is not {}x{}", shape.0, shape.1)));
    }
    let data: Vec<C64> = rows.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Format(format!("{what} has a non-finite entry")));
    }
    CMatrix::new(shape.0, shape.1, data)
}

impl From<&KrausChannel> for ChannelFile {
    fn from(phi: &KrausChannel) -> Self {
        Self { d_in: phi.d_in(), d_out: phi.d_out(), kraus: phi.kraus().iter().map(encode_matrix).collect() }
    }
}

impl ChannelFile {
    /// Decodes and validates, including trace preservation.
    pub fn to_channel(&self) -> Result<KrausChannel> {
        if self.kraus.is_empty() {
            return Err(Error::Format("no Kraus operators".into()));
        }
        let ops = self
            .kraus
            .iter()
            .enumerate()
            .map(|(k, rows)| decode(rows, (self.d_out, self.d_in), &format!("Kraus operator {k}")))
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(ops)
    }
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Result<Self> {
        let (d_a, d_b) = rho.dims().ok_or(Error::MissingDims)?;
        Ok(Self { dims: [d_a, d_b], matrix: encode_matrix(rho.matrix()) })
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        let [d_a, d_b] = self.dims;
        let n = d_a * d_b;
        DensityMatrix::with_dims(decode(&self.matrix, (n, n), "matrix")?, (d_a, d_b))
    }
}

pub fn channel_to_json(phi: &KrausChannel) -> String {
    serde_json::to_string_pretty(&ChannelFile::from(phi)).expect("plain data serializes")
}

pub fn channel_from_json(s: &str) -> Result<KrausChannel> {
    let file: ChannelFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    file.to_channel()
}

pub fn state_to_json(rho: &DensityMatrix) -> Result<String> {
    Ok(serde_json::to_string_pretty(&StateFile::from_state(rho)?).expect("plain data serializes"))
}

pub fn state_from_json(s: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    file.to_state()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn load_channel(path: &Path) -> Result<KrausChannel> {
    channel_from_json(&read(path)?)
}

pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    state_from_json(&read(path)?)
}
