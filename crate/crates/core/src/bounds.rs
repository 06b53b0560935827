//! Closed-form leading coefficients `c` in `ex(n, F) ~ c n^{3/2}` for books,
//! ladders and their bipartite variants, and the balance computation behind
//! the bipartite `B_2` upper constant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named coefficient with its parameters. Tree coefficients take the tree's
/// VERTEX count; `B_t` itself is the tree `S_t` on `t + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum Coefficient {
    UpperGeneral { t: usize },
    LowerOdd { t: usize },
    LowerEven { s: usize },
    F { p: f64, s: f64 },
    UpperB2,
    BipUpperTree { t_vertices: usize },
    BipLowerOdd { t: usize },
    BipLowerEven { t: usize },
    Lemma32 { c: f64 },
    Lemma51 { c: f64, eps: f64 },
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}

fn positive_int(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(domain(format!("{name} must be at least 1")));
    }
    Ok(())
}

impl Coefficient {
    pub fn id(&self) -> &'static str {
        match self {
            Coefficient::UpperGeneral { .. } => "upper_general",
            Coefficient::LowerOdd { .. } => "lower_odd",
            Coefficient::LowerEven { .. } => "lower_even",
            Coefficient::F { .. } => "f",
            Coefficient::UpperB2 => "upper_b2",
            Coefficient::BipUpperTree { .. } => "bip_upper_tree",
            Coefficient::BipLowerOdd { .. } => "bip_lower_odd",
            Coefficient::BipLowerEven { .. } => "bip_lower_even",
            Coefficient::Lemma32 { .. } => "lemma32",
            Coefficient::Lemma51 { .. } => "lemma51",
        }
    }

    /// Build from an id and positional parameters, e.g. `("f", [p, s])`.
    pub fn parse(id: &str, params: &[f64]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() != k {
                return Err(domain(format!("{id} takes {k} parameter(s), got {}", params.len())));
            }
            Ok(())
        };
        let int = |x: f64| -> Result<usize> {
            if x.fract() != 0.0 || x < 0.0 {
                return Err(domain(format!("{id} needs an integer parameter, got {x}")));
            }
            Ok(x as usize)
        };
        let c = match id {
            "upper_general" => Coefficient::UpperGeneral { t: { want(1)?; int(params[0])? } },
            "lower_odd" => Coefficient::LowerOdd { t: { want(1)?; int(params[0])? } },
            "lower_even" => Coefficient::LowerEven { s: { want(1)?; int(params[0])? } },
            "f" => {
                want(2)?;
                Coefficient::F { p: params[0], s: params[1] }
            }
            "upper_b2" => {
                want(0)?;
                Coefficient::UpperB2
            }
            "bip_upper_tree" => Coefficient::BipUpperTree { t_vertices: { want(1)?; int(params[0])? } },
            "bip_lower_odd" => Coefficient::BipLowerOdd { t: { want(1)?; int(params[0])? } },
            "bip_lower_even" => Coefficient::BipLowerEven { t: { want(1)?; int(params[0])? } },
            "lemma32" => {
                want(1)?;
                Coefficient::Lemma32 { c: params[0] }
            }
            "lemma51" => {
                want(2)?;
                Coefficient::Lemma51 { c: params[0], eps: params[1] }
            }
            other => return Err(domain(format!("unknown coefficient `{other}`"))),
        };
        Ok(c)
    }

    /// Human-readable closed form.
    pub fn formula(&self) -> &'static str {
        match self {
            Coefficient::UpperGeneral { .. } => "sqrt(t)/2",
            Coefficient::LowerOdd { .. } => "sqrt(floor((t+1)/2))/2",
            Coefficient::LowerEven { .. } => {
                "2s(s+1)(sqrt(4s^2+5s+1)-2s-1)/(sqrt(4s^2+5s+1)-s-1)^(3/2)"
            }
            Coefficient::F { .. } => "(s^2+s(2p-p^2))/(2(s+p)^(3/2))",
            Coefficient::UpperB2 => "2/sqrt(11)",
            Coefficient::BipUpperTree { .. } => "sqrt(t-1)/(2 sqrt 2), t = tree vertices",
            Coefficient::BipLowerOdd { .. } => "sqrt(floor((t+1)/2))/(2 sqrt 2)",
            Coefficient::BipLowerEven { .. } => "t(t+2)/(4(t+1)^(3/2))",
            Coefficient::Lemma32 { .. } => "(-c+sqrt(c^2+32))/8",
            Coefficient::Lemma51 { .. } => "max{sqrt(4/27+2 eps), sqrt(1/4-4c^2 eps)}",
        }
    }

    pub fn value(&self) -> Result<f64> {
        let v = match *self {
            Coefficient::UpperGeneral { t } => {
                positive_int("t", t)?;
                (t as f64).sqrt() / 2.0
            }
            Coefficient::LowerOdd { t } => {
                positive_odd(t)?;
                (t.div_ceil(2) as f64).sqrt() / 2.0
            }
            Coefficient::LowerEven { s } => {
                positive_int("s", s)?;
                let s = s as f64;
                let p = optimal_p(s);
                // sqrt(4s^2+5s+1) - s - 1 = p + s
                2.0 * s * (s + 1.0) * p / (p + s).powf(1.5)
            }
            Coefficient::F { p, s } => f_profile(p, s)?,
            Coefficient::UpperB2 => 2.0 / 11f64.sqrt(),
            Coefficient::BipUpperTree { t_vertices } => {
                positive_int("t_vertices", t_vertices)?;
                ((t_vertices - 1) as f64).sqrt() / (2.0 * 2f64.sqrt())
            }
            Coefficient::BipLowerOdd { t } => {
                positive_odd(t)?;
                (t.div_ceil(2) as f64).sqrt() / (2.0 * 2f64.sqrt())
            }
            Coefficient::BipLowerEven { t } => {
                positive_int("t", t)?;
                if t % 2 == 1 {
                    return Err(domain("bip_lower_even needs even t"));
                }
                let t = t as f64;
                t * (t + 2.0) / (4.0 * (t + 1.0).powf(1.5))
            }
            Coefficient::Lemma32 { c } => {
                if !(c > 0.0) {
                    return Err(domain("c must be positive"));
                }
                (-c + (c * c + 32.0).sqrt()) / 8.0
            }
            Coefficient::Lemma51 { c, eps } => {
                let (a, b) = lemma51_branches(c, eps)?;
                a.max(b)
            }
        };
        if !v.is_finite() {
            return Err(domain(format!("{} is not finite at these parameters", self.id())));
        }
        Ok(v)
    }
}

fn positive_odd(t: usize) -> Result<()> {
    positive_int("t", t)?;
    if t.is_multiple_of(2) {
        return Err(domain("odd-case formula needs odd t"));
    }
    Ok(())
}

pub fn coefficient(c: Coefficient) -> Result<f64> {
    c.value()
}

/// `(s^2 + s(2p - p^2)) / (2 (s + p)^{3/2})`: edge density profile of the
/// randomized blow-up that enlarges a `p` fraction of vertices.
pub fn f_profile(p: f64, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("p = {p} outside [0, 1]")));
    }
    if !(s > 0.0) {
        return Err(domain("s must be positive"));
    }
    Ok((s * s + s * (2.0 * p - p * p)) / (2.0 * (s + p).powf(1.5)))
}

/// Maximiser of [`f_profile`] in `p`: `sqrt(4s^2+5s+1) - 2s - 1`, evaluated
/// as `s / (sqrt(4s^2+5s+1) + 2s + 1)` to avoid cancellation at large `s`.
pub fn optimal_p(s: f64) -> f64 {
    s / ((4.0 * s * s + 5.0 * s + 1.0).sqrt() + 2.0 * s + 1.0)
}

/// The two branch values `(sqrt(4/27 + 2 eps), sqrt(1/4 - 4 c^2 eps))`.
pub fn lemma51_branches(c: f64, eps: f64) -> Result<(f64, f64)> {
    if !(c > 0.0) || !(eps > 0.0) {
        return Err(domain("c and eps must be positive"));
    }
    let second = 0.25 - 4.0 * c * c * eps;
    if second < 0.0 {
        return Err(domain("1/4 - 4 c^2 eps is negative"));
    }
    Ok(((4.0 / 27.0 + 2.0 * eps).sqrt(), second.sqrt()))
}

/// Balance point of the bipartite `B_2` argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct B2Solution {
    pub c: f64,
    pub eps: f64,
    pub branch1: f64,
    pub branch2: f64,
}

/// Smallest `c` with `c >= max{sqrt(4/27+2 eps), sqrt(1/4-4c^2 eps)}` for
/// some `eps > 0`. Substituting `c` by the first branch, bisect on `eps` until
/// both branches agree.
pub fn solve_b2_bipartite_constant() -> B2Solution {
    let branch1 = |e: f64| (4.0 / 27.0 + 2.0 * e).sqrt();
    let gap = |e: f64| {
        let c = branch1(e);
        c * c - (0.25 - 4.0 * c * c * e)
    };
    let (mut lo, mut hi) = (0.0f64, 0.25f64);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eps = 0.5 * (lo + hi);
    let c = branch1(eps);
    let branch2 = (0.25 - 4.0 * c * c * eps).max(0.0).sqrt();
    B2Solution {
        c,
        eps,
        branch1: c,
        branch2,
    }
}

/// `lower_even(s) / sqrt(2s)`, tending to `1/(2 sqrt 2)`.
pub fn limit_ratio(s: usize) -> Result<f64> {
    Ok(Coefficient::LowerEven { s }.value()? / (2.0 * s as f64).sqrt())
}

/// `bip_lower_even(t) / sqrt(t)` for even `t`, tending to `1/4`.
pub fn bip_limit_ratio(t: usize) -> Result<f64> {
    Ok(Coefficient::BipLowerEven { t }.value()? / (t as f64).sqrt())
}

/// One evaluated coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub coefficient: Coefficient,
    pub id: String,
    pub value: f64,
    pub formula: String,
}

impl BoundReport {
    pub fn new(c: Coefficient) -> Result<Self> {
        Ok(BoundReport {
            coefficient: c,
            id: c.id().to_string(),
            value: c.value()?,
            formula: c.formula().to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Host {
    General,
    Bipartite,
}

/// Best known lower and upper coefficient for `B_t` in one host class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub t: usize,
    pub host: Host,
    pub lower: BoundReport,
    pub upper: BoundReport,
}

/// Rows for `t = 1..=t_max`, general then bipartite for each `t`. For `B_2`
/// the dedicated upper constants replace the generic ones; the bipartite
/// `B_2` upper value is the balance constant from
/// [`solve_b2_bipartite_constant`], reported under `lemma51`.
pub fn bound_table(t_max: usize) -> Result<Vec<BoundRow>> {
    positive_int("t_max", t_max)?;
    let mut rows = Vec::with_capacity(2 * t_max);
    for t in 1..=t_max {
        let lower = if t % 2 == 1 {
            Coefficient::LowerOdd { t }
        } else {
            Coefficient::LowerEven { s: t / 2 }
        };
        let upper = if t == 2 {
            Coefficient::UpperB2
        } else {
            Coefficient::UpperGeneral { t }
        };
        rows.push(BoundRow {
            t,
            host: Host::General,
            lower: BoundReport::new(lower)?,
            upper: BoundReport::new(upper)?,
        });

        let lower = if t % 2 == 1 {
            Coefficient::BipLowerOdd { t }
        } else {
            Coefficient::BipLowerEven { t }
        };
        let upper = if t == 2 {
            let sol = solve_b2_bipartite_constant();
            Coefficient::Lemma51 { c: sol.c, eps: sol.eps }
        } else {
            Coefficient::BipUpperTree { t_vertices: t + 1 }
        };
        rows.push(BoundRow {
            t,
            host: Host::Bipartite,
            lower: BoundReport::new(lower)?,
            upper: BoundReport::new(upper)?,
        });
    }
    Ok(rows)
}
