use serde::{Deserialize, Serialize};

/// Serde helper writing non-finite floats as the strings `"inf"`, `"-inf"`, `"nan"`.
pub mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("bad float `{other}`"))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≥ rhs - tolerance`
    AtLeast,
    /// `lhs ≤ rhs + tolerance`
    AtMost,
    /// `|lhs - rhs| ≤ tolerance`
    Equal,
}

/// One checked inequality or identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub relation: Relation,
    #[serde(with = "float_or_inf")]
    pub lhs: f64,
    #[serde(with = "float_or_inf")]
    pub rhs: f64,
    #[serde(with = "float_or_inf")]
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub lhs_source: String,
    pub rhs_source: String,
    /// Quadrature or extrapolation flags that affect trust in the numbers.
    #[serde(default)]
    pub flags: Vec<String>,
    #[serde(default)]
    pub details: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn new(name: &str, relation: Relation, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
            Relation::Equal => -(lhs - rhs).abs(),
        };
        let pass = match relation {
            Relation::AtLeast | Relation::AtMost => margin >= -tolerance,
            Relation::Equal => -margin <= tolerance,
        };
        VerificationReport {
            name: name.to_string(),
            relation,
            lhs,
            rhs,
            margin,
            tolerance,
            pass,
            lhs_source: String::new(),
            rhs_source: String::new(),
            flags: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn sources(mut self, lhs: &str, rhs: &str) -> Self {
        self.lhs_source = lhs.to_string();
        self.rhs_source = rhs.to_string();
        self
    }

    pub fn flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    pub fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.push((key.to_string(), value));
        self
    }

    /// Combines several sub-checks into one report that passes iff all pass.
    pub fn all(name: &str, parts: &[VerificationReport]) -> Self {
        let worst = parts
            .iter()
            .min_by(|a, b| (a.margin + a.tolerance).total_cmp(&(b.margin + b.tolerance)))
            .cloned();
        let mut out = match worst {
            Some(w) => VerificationReport {
                name: name.to_string(),
                ..w
            },
            None => VerificationReport::new(name, Relation::Equal, 0.0, 0.0, 0.0),
        };
        out.pass = parts.iter().all(|p| p.pass);
        for p in parts {
            out.flags.extend(p.flags.iter().cloned());
            out.details.push((format!("{}.margin", p.name), p.margin));
        }
        out.flags.dedup();
        out
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: lhs={:.6e} rhs={:.6e} margin={:.3e} tol={:.1e}{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.lhs,
            self.rhs,
            self.margin,
            self.tolerance,
            if self.flags.is_empty() {
                String::new()
            } else {
                format!(" flags={}", self.flags.join(","))
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_lhs_serializes() {
        let r = VerificationReport::new("k", Relation::AtLeast, f64::INFINITY, 0.1, 1e-3);
        assert!(r.pass);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"lhs\":\"inf\""));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert!(back.lhs.is_infinite());
    }

    #[test]
    fn margins() {
        assert!(VerificationReport::new("a", Relation::AtLeast, 0.0, 1e-4, 1e-3).pass);
        assert!(!VerificationReport::new("a", Relation::AtLeast, 0.0, 1e-2, 1e-3).pass);
        assert!(VerificationReport::new("e", Relation::Equal, 1.0, 1.0 + 1e-9, 1e-8).pass);
        assert!(!VerificationReport::new("m", Relation::AtMost, 2.0, 1.0, 0.5).pass);
    }
}
