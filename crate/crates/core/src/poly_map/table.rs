use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Largest number of points a value table may hold.
pub const MAX_TABLE_POINTS: u64 = 1 << 20;

/// A map `F^n → F` given by its values at every point.
///
/// Points are enumerated in lexicographic order of their coordinate
/// encodings, `x1` most significant: index `Σ v_i·q^(n-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    field: FieldCtx,
    n: usize,
    values: Vec<u32>,
}

/// JSON form: `{"field":"p^e","n":n,"table":[v0,…]}`.
#[derive(Serialize, Deserialize)]
struct TableJson {
    field: String,
    n: usize,
    table: Vec<u32>,
}

pub(crate) fn point_count(q: u32, n: usize) -> Result<usize> {
    let total = (q as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_TABLE_POINTS);
    match total {
        Some(t) => Ok(t as usize),
        None => Err(Error::cap(format!("{q}^{n} table points"), MAX_TABLE_POINTS)),
    }
}

impl ValueTable {
    pub fn new(field: FieldCtx, n: usize, values: Vec<u32>) -> Result<Self> {
        let expected = point_count(field.order(), n)?;
        if values.len() != expected {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected {expected} = {}^{n}",
                values.len(),
                field.order()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= field.order()) {
            return Err(Error::BadElement {
                value: v as u64,
                order: field.order(),
            });
        }
        Ok(ValueTable { field, n, values })
    }

    /// Tabulates `f` at every point.
    pub fn from_fn(field: FieldCtx, n: usize, mut f: impl FnMut(&[u32]) -> u32) -> Result<Self> {
        let total = point_count(field.order(), n)?;
        let mut values = Vec::with_capacity(total);
        let mut point = vec![0u32; n];
        for idx in 0..total {
            decode_point(idx, field.order(), &mut point);
            values.push(f(&point));
        }
        ValueTable::new(field, n, values)
    }

    pub fn zero(field: FieldCtx, n: usize) -> Result<Self> {
        let total = point_count(field.order(), n)?;
        Ok(ValueTable {
            field,
            n,
            values: vec![0; total],
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, idx: usize) -> u32 {
        self.values[idx]
    }

    pub fn point(&self, idx: usize) -> Vec<u32> {
        let mut p = vec![0; self.n];
        decode_point(idx, self.field.order(), &mut p);
        p
    }

    pub fn index_of(&self, point: &[u32]) -> Result<usize> {
        if point.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: point.len(),
            });
        }
        let q = self.field.order();
        let mut idx = 0usize;
        for &v in point {
            if v >= q {
                return Err(Error::BadElement {
                    value: v as u64,
                    order: q,
                });
            }
            idx = idx * q as usize + v as usize;
        }
        Ok(idx)
    }

    pub fn get(&self, point: &[u32]) -> Result<u32> {
        Ok(self.values[self.index_of(point)?])
    }

    pub fn value_at_zero(&self) -> u32 {
        self.values[0]
    }

    pub fn is_zero_map(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            field: self.field.to_string(),
            n: self.n,
            table: self.values.clone(),
        })
        .expect("table serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        let field: FieldCtx = raw.field.parse()?;
        ValueTable::new(field, raw.n, raw.table)
    }
}

/// Writes the coordinates of point `idx` (x1 most significant) into `out`.
pub(crate) fn decode_point(mut idx: usize, q: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % q as usize) as u32;
        idx /= q as usize;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_points() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let t = ValueTable::from_fn(f3, 2, |p| p[0]).unwrap();
        assert_eq!(t.values(), &[0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(t.point(5), vec![1, 2]);
        assert_eq!(t.index_of(&[1, 2]).unwrap(), 5);
    }

    #[test]
    fn validation() {
        let f2 = FieldCtx::gf2();
        assert!(ValueTable::new(f2.clone(), 2, vec![0, 1, 1]).is_err());
        assert!(ValueTable::new(f2.clone(), 1, vec![0, 2]).is_err());
        assert!(ValueTable::zero(f2, 21).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = ValueTable::from_fn(f9, 1, |p| p[0]).unwrap();
        let s = t.to_json().to_string();
        assert_eq!(s, r#"{"field":"3^2","n":1,"table":[0,1,2,3,4,5,6,7,8]}"#);
        assert_eq!(ValueTable::from_json_str(&s).unwrap(), t);
        assert!(ValueTable::from_json_str(r#"{"field":"2","n":1,"table":[0]}"#).is_err());
    }
}
