use serde::{Deserialize, Serialize};
use serde_json::Value;

/// JSON description of a ring, tagged by `kind`.
///
/// ```json
/// {"kind":"zmod","n":12}
/// {"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":2}]}
/// {"kind":"poly_quot","p":2,"f":[1,1,1]}
/// {"kind":"quotient","base":{"kind":"zmod","n":12},"ideal_gens":[4]}
/// {"kind":"idealization","base":{"kind":"zmod","n":4},"m":2,"action":[0,1,0,1]}
/// {"kind":"localization","base":{"kind":"zmod","n":6},"mset_gens":[3]}
/// {"kind":"integers"}
/// ```
///
/// Polynomial coefficients are listed from the constant term upwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod {
        n: u64,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    PolyQuot {
        p: u64,
        f: Vec<i64>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        require_irreducible: bool,
    },
    Quotient {
        base: Box<RingSpec>,
        ideal_gens: Vec<Value>,
    },
    Idealization {
        base: Box<RingSpec>,
        m: u64,
        /// Images of the base elements in `Z/m`, in enumeration order. When
        /// absent the base must be `zmod(n)` with `m | n` and the action is
        /// reduction mod `m`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<Vec<i64>>,
    },
    Localization {
        base: Box<RingSpec>,
        mset_gens: Vec<Value>,
    },
    Integers,
}

impl RingSpec {
    pub fn zmod(n: u64) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn product(factors: impl IntoIterator<Item = RingSpec>) -> Self {
        RingSpec::Product {
            factors: factors.into_iter().collect(),
        }
    }

    pub fn poly_quot(p: u64, f: Vec<i64>) -> Self {
        RingSpec::PolyQuot {
            p,
            f,
            require_irreducible: false,
        }
    }

    pub fn idealization(base: RingSpec, m: u64, action: Option<Vec<i64>>) -> Self {
        RingSpec::Idealization {
            base: Box::new(base),
            m,
            action,
        }
    }

    pub fn quotient(base: RingSpec, ideal_gens: Vec<Value>) -> Self {
        RingSpec::Quotient {
            base: Box::new(base),
            ideal_gens,
        }
    }

    pub fn localization(base: RingSpec, mset_gens: Vec<Value>) -> Self {
        RingSpec::Localization {
            base: Box::new(base),
            mset_gens,
        }
    }

    /// Short human-readable name such as `Z/4 x Z/2` or `(Z/4)(+)Z/2`.
    pub fn describe(&self) -> String {
        match self {
            RingSpec::Zmod { n } => format!("Z/{n}"),
            RingSpec::Product { factors } => factors
                .iter()
                .map(|f| match f {
                    RingSpec::Zmod { .. } | RingSpec::Integers => f.describe(),
                    _ => format!("({})", f.describe()),
                })
                .collect::<Vec<_>>()
                .join(" x "),
            RingSpec::PolyQuot { p, f, .. } => format!("F_{p}[x]/({})", poly_string(f)),
            RingSpec::Quotient { base, ideal_gens } => {
                format!("({}) / {}", base.describe(), gens_string(ideal_gens))
            }
            RingSpec::Idealization { base, m, .. } => format!("({})(+)Z/{m}", base.describe()),
            RingSpec::Localization { base, mset_gens } => {
                format!("S^-1({}) at {}", base.describe(), gens_string(mset_gens))
            }
            RingSpec::Integers => "Z".to_string(),
        }
    }
}

fn gens_string(gens: &[Value]) -> String {
    let inner: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("<{}>", inner.join(", "))
}

fn poly_string(f: &[i64]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".to_string(),
            d => format!("x^{d}"),
        };
        terms.push(match (c, deg) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
