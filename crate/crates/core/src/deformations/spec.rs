use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{scalar_from_json, scalar_to_json, Cyc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Case 1: `k = i-1`, `l = j+1`, `i <= j`. Case 2: `k = i+1`, `l = j-1`, `k <= l`.
    Principal { case: u8, i: u8, j: u8 },
    /// `j = i+1`, `k` a nearest neighbour of the pair: `i-1` or `j+1`.
    Exceptional { side: Side, i: u8, k: u8 },
}

/// One elementary deformation: which entries, and the amplitude `mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationSpec {
    pub variant: Variant,
    pub amplitude: Cyc,
}

impl DeformationSpec {
    pub fn principal(case: u8, i: u8, j: u8) -> Self {
        DeformationSpec { variant: Variant::Principal { case, i, j }, amplitude: Cyc::from_int(1) }
    }

    pub fn exceptional(side: Side, i: u8, k: u8) -> Self {
        DeformationSpec { variant: Variant::Exceptional { side, i, k }, amplitude: Cyc::from_int(1) }
    }

    pub fn with_amplitude(mut self, mu: Cyc) -> Self {
        self.amplitude = mu;
        self
    }

    pub fn is_principal(&self) -> bool {
        matches!(self.variant, Variant::Principal { .. })
    }

    /// `(k, i, j, l)` for the principal series, `(k, i, j, k)` for the exceptional one.
    pub fn indices(&self, n: usize) -> Result<(u8, u8, u8, u8)> {
        use num::Zero;
        if self.amplitude.is_zero() {
            return Err(Error::Spec("amplitude must be nonzero".into()));
        }
        let n = n as i32;
        let inr = |x: i32| 1 <= x && x <= n;
        match self.variant {
            Variant::Principal { case, i, j } => {
                let (i, j) = (i as i32, j as i32);
                let (k, l) = match case {
                    1 => (i - 1, j + 1),
                    2 => (i + 1, j - 1),
                    _ => return Err(Error::Spec(format!("principal case must be 1 or 2, got {case}"))),
                };
                let ordered = if case == 1 { i <= j } else { k <= l };
                if !(inr(i) && inr(j) && inr(k) && inr(l) && ordered) {
                    return Err(Error::Spec(format!(
                        "principal case {case} with (i,j) = ({i},{j}) has no valid quadruple for n = {n}"
                    )));
                }
                Ok((k as u8, i as u8, j as u8, l as u8))
            }
            Variant::Exceptional { i, k, .. } => {
                let (i, k) = (i as i32, k as i32);
                let j = i + 1;
                if !(inr(i) && inr(j) && inr(k) && (k == i - 1 || k == j + 1)) {
                    return Err(Error::Spec(format!(
                        "exceptional (i,k) = ({i},{k}) needs j = i+1 <= {n} and k in {{i-1, j+1}}"
                    )));
                }
                Ok((k as u8, i as u8, j as u8, k as u8))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let amp = scalar_to_json(&self.amplitude);
        match self.variant {
            Variant::Principal { case, i, j } => {
                json!({ "variant": "principal", "case": case, "i": i, "j": j, "amplitude": amp })
            }
            Variant::Exceptional { side, i, k } => {
                let side = if side == Side::Upper { "upper" } else { "lower" };
                json!({ "variant": "exceptional", "side": side, "i": i, "k": k, "amplitude": amp })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let int = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .filter(|&x| x <= 255)
                .map(|x| x as u8)
                .ok_or_else(|| Error::Format(format!("deformation spec: missing integer \"{key}\"")))
        };
        let amplitude = match v.get("amplitude") {
            Some(a) => scalar_from_json(a).map_err(|e| Error::Format(format!("deformation spec amplitude: {e}")))?,
            None => Cyc::from_int(1),
        };
        let variant = match v.get("variant").and_then(Value::as_str) {
            Some("principal") => Variant::Principal { case: int("case")?, i: int("i")?, j: int("j")? },
            Some("exceptional") => {
                let side = match v.get("side").and_then(Value::as_str) {
                    Some("upper") => Side::Upper,
                    Some("lower") => Side::Lower,
                    _ => return Err(Error::Format("deformation spec: \"side\" must be upper or lower".into())),
                };
                Variant::Exceptional { side, i: int("i")?, k: int("k")? }
            }
            _ => return Err(Error::Format("deformation spec: \"variant\" must be principal or exceptional".into())),
        };
        Ok(DeformationSpec { variant, amplitude })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadruples() {
        assert_eq!(DeformationSpec::principal(1, 2, 3).indices(4).unwrap(), (1, 2, 3, 4));
        assert_eq!(DeformationSpec::principal(2, 1, 4).indices(4).unwrap(), (2, 1, 4, 3));
        assert_eq!(DeformationSpec::principal(1, 2, 2).indices(3).unwrap(), (1, 2, 2, 3));
        assert!(DeformationSpec::principal(2, 1, 2).indices(4).is_err());
        for case in [1, 2] {
            for i in 1..=2 {
                for j in 1..=2 {
                    assert!(DeformationSpec::principal(case, i, j).indices(2).is_err());
                }
            }
        }
        assert_eq!(DeformationSpec::exceptional(Side::Upper, 1, 3).indices(3).unwrap(), (3, 1, 2, 3));
        assert!(DeformationSpec::exceptional(Side::Upper, 1, 3).indices(2).is_err());
    }

    #[test]
    fn zero_amplitude_rejected() {
        let s = DeformationSpec::principal(1, 2, 3).with_amplitude(Cyc::from_int(0));
        assert!(matches!(s.indices(4), Err(Error::Spec(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = DeformationSpec::exceptional(Side::Lower, 2, 1).with_amplitude(Cyc::omega());
        assert_eq!(DeformationSpec::from_json(&s.to_json()).unwrap(), s);
        let v: Value = serde_json::from_str(r#"{"variant":"principal","case":1,"i":2,"j":3,"amplitude":{"r":[1,1]}}"#).unwrap();
        assert_eq!(DeformationSpec::from_json(&v).unwrap(), DeformationSpec::principal(1, 2, 3));
    }
}
