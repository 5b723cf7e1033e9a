use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FinBimonoid, LinMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldRepr {
    Q,
    Fp(u64),
}

impl FieldRepr {
    pub fn to_field(self) -> Result<Field> {
        match self {
            FieldRepr::Q => Ok(Field::RATIONALS),
            FieldRepr::Fp(p) => Field::prime(p),
        }
    }

    pub fn of(field: Field) -> Self {
        if field.is_rational() {
            FieldRepr::Q
        } else {
            FieldRepr::Fp(field.characteristic())
        }
    }
}

/// On-disk form of a bimonoid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimonoidFile {
    pub name: String,
    pub field: FieldRepr,
    pub dim: usize,
    pub mul: Vec<Vec<Vec<Value>>>,
    pub unit: Vec<Value>,
    pub comul: Vec<Vec<Vec<Value>>>,
    pub counit: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<Value>>>,
}

fn scalars(field: Field, values: &[Value], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if values.len() != len {
        return Err(Error::ShapeMismatch(format!("{what} has length {}, expected {len}", values.len())));
    }
    values.iter().map(|v| Scalar::from_json(field, v)).collect()
}

fn tensor(field: Field, t: &[Vec<Vec<Value>>], n: usize, what: &str) -> Result<Vec<Vec<Vec<Scalar>>>> {
    if t.len() != n {
        return Err(Error::ShapeMismatch(format!("{what} has {} slices, expected {n}", t.len())));
    }
    t.iter()
        .map(|slice| {
            if slice.len() != n {
                return Err(Error::ShapeMismatch(format!("{what} slice has {} rows, expected {n}", slice.len())));
            }
            slice.iter().map(|row| scalars(field, row, n, what)).collect()
        })
        .collect()
}

impl BimonoidFile {
    pub fn from_bimonoid(a: &FinBimonoid) -> Self {
        let n = a.dim();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a.mul.get(k, i * n + j).to_json()).collect()).collect())
            .collect();
        let comul = (0..n)
            .map(|k| (0..n).map(|i| (0..n).map(|j| a.comul.get(i * n + j, k).to_json()).collect()).collect())
            .collect();
        BimonoidFile {
            name: a.name().to_string(),
            field: FieldRepr::of(a.field()),
            dim: n,
            mul,
            unit: a.unit().iter().map(Scalar::to_json).collect(),
            comul,
            counit: a.counit().iter().map(Scalar::to_json).collect(),
            antipode: a.antipode().map(|s| {
                (0..n).map(|i| s.row(i).iter().map(Scalar::to_json).collect()).collect()
            }),
        }
    }

    pub fn to_bimonoid(&self) -> Result<FinBimonoid> {
        let field = self.field.to_field()?;
        let n = self.dim;
        let mul_t = tensor(field, &self.mul, n, "mul")?;
        let comul_t = tensor(field, &self.comul, n, "comul")?;
        let mut mul = Matrix::zeros(field, n, n * n);
        let mut comul = Matrix::zeros(field, n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mul.set(k, i * n + j, mul_t[i][j][k].clone());
                    comul.set(i * n + j, k, comul_t[k][i][j].clone());
                }
            }
        }
        let antipode = match &self.antipode {
            None => None,
            Some(rows) => {
                if rows.len() != n {
                    return Err(Error::ShapeMismatch(format!("antipode has {} rows, expected {n}", rows.len())));
                }
                let rows = rows.iter().map(|r| scalars(field, r, n, "antipode")).collect::<Result<Vec<_>>>()?;
                Some(Matrix::from_rows(field, rows)?)
            }
        };
        FinBimonoid::new(
            self.name.clone(),
            field,
            mul,
            scalars(field, &self.unit, n, "unit")?,
            comul,
            scalars(field, &self.counit, n, "counit")?,
            antipode,
        )
    }
}

impl FinBimonoid {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(BimonoidFile::from_bimonoid(self)).expect("bimonoid serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let file: BimonoidFile =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("bimonoid file: {e}")))?;
        file.to_bimonoid()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_json(path)?)
    }
}

/// On-disk form of a linear map; endpoint paths are relative to the file itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinMapFile {
    pub domain_file: String,
    pub codomain_file: String,
    pub matrix: Value,
}

impl LinMapFile {
    pub fn resolve(&self, base: &Path) -> Result<LinMap> {
        let domain = Arc::new(FinBimonoid::load(&base.join(&self.domain_file))?);
        let codomain = Arc::new(FinBimonoid::load(&base.join(&self.codomain_file))?);
        let m = Matrix::from_json(domain.field(), &self.matrix, Some((codomain.dim(), domain.dim())))?;
        LinMap::new(domain, codomain, m)
    }
}

impl LinMap {
    pub fn load(path: &Path) -> Result<Self> {
        let file: LinMapFile = serde_json::from_value(read_json(path)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        file.resolve(&parent_dir(path))
    }

    pub fn to_file(&self, domain_file: &str, codomain_file: &str) -> LinMapFile {
        LinMapFile {
            domain_file: domain_file.to_string(),
            codomain_file: codomain_file.to_string(),
            matrix: self.matrix().to_json(),
        }
    }
}

pub(crate) fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
