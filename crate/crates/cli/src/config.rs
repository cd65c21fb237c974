use std::path::Path;

use levelzero_core::classes::Regime;
use levelzero_core::root_datum::{build_classical, DatumJson, Family, GroupSpec, RootDatum};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Job settings as read from a config file; every field can be overridden on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub group: Option<String>,
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub ell: Option<u64>,
    pub regime: Option<String>,
    pub order_bound: Option<u64>,
    pub base_vertex: Option<String>,
    pub json: Option<bool>,
    /// Only read for `group = "custom"`.
    pub datum: Option<DatumJson>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<JobConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: JobConfig) -> JobConfig {
        JobConfig {
            group: other.group.or(self.group),
            n: other.n.or(self.n),
            q: other.q.or(self.q),
            p: other.p.or(self.p),
            ell: other.ell.or(self.ell),
            regime: other.regime.or(self.regime),
            order_bound: other.order_bound.or(self.order_bound),
            base_vertex: other.base_vertex.or(self.base_vertex),
            json: other.json.or(self.json),
            datum: other.datum.or(self.datum),
        }
    }
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct Job {
    pub family: Family,
    pub n: usize,
    pub datum: RootDatum,
    pub q: u64,
    pub p: u64,
    pub regime: Regime,
    pub bound: u64,
    pub base_vertex: Option<String>,
    pub json: bool,
}

fn smallest_prime_factor(x: u64) -> u64 {
    (2..).take_while(|d| d * d <= x).find(|d| x % d == 0).unwrap_or(x)
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = q;
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

/// `m` with every factor of `ell` removed.
fn strip(mut m: u64, ell: u64) -> u64 {
    while m % ell == 0 {
        m /= ell;
    }
    m
}

impl Job {
    pub fn from_config(c: &JobConfig) -> Result<Job, CliError> {
        let group = c.group.as_deref().ok_or_else(|| CliError::Invalid("--group is required".into()))?;
        let family = Family::parse(group).map_err(CliError::Core)?;
        let datum = if family == Family::Custom {
            let j = c.datum.as_ref().ok_or_else(|| CliError::Invalid("custom group needs a datum in the config file".into()))?;
            RootDatum::from_json(j)?
        } else {
            let n = c.n.ok_or_else(|| CliError::Invalid("--n is required".into()))?;
            build_classical(&GroupSpec::new(family, n))?
        };
        let n = c.n.unwrap_or(datum.rank());
        let q = c.q.unwrap_or(3);
        if q < 2 {
            return Err(CliError::Invalid(format!("q = {q} is not a prime power")));
        }
        let p = c.p.unwrap_or_else(|| smallest_prime_factor(q));
        if smallest_prime_factor(p) != p || !is_power_of(q, p) {
            return Err(CliError::Invalid(format!("q = {q} is not a power of the prime p = {p}")));
        }
        let regime = match c.regime.as_deref().unwrap_or("ql") {
            "ql" => {
                if c.ell.is_some() {
                    return Err(CliError::Invalid("--ell only applies with --regime zl".into()));
                }
                Regime::QlBar
            }
            "zl" => {
                let ell = c.ell.ok_or_else(|| CliError::Invalid("--regime zl needs --ell".into()))?;
                if ell < 2 || smallest_prime_factor(ell) != ell {
                    return Err(CliError::Invalid(format!("ell = {ell} is not prime")));
                }
                if ell == p {
                    return Err(CliError::Invalid("ell must differ from p".into()));
                }
                Regime::ZlBar { ell }
            }
            other => return Err(CliError::Invalid(format!("unknown regime {other}"))),
        };
        let bound = match c.order_bound {
            Some(b) => b,
            None => {
                let d = 2 * datum.theta_order() as u32;
                let m = q.checked_pow(d).ok_or(CliError::Core(levelzero_core::Error::BoundTooLarge(u64::MAX)))? - 1;
                match regime {
                    Regime::ZlBar { ell } => strip(m, ell),
                    Regime::QlBar => m,
                }
            }
        };
        if bound == 0 {
            return Err(CliError::Invalid("order bound must be positive".into()));
        }
        for prime in regime.excluded(p) {
            if bound.gcd(&prime) != 1 {
                return Err(CliError::Core(levelzero_core::Error::BoundNotCoprime { bound, prime }));
            }
        }
        Ok(Job {
            family,
            n,
            datum,
            q,
            p,
            regime,
            bound,
            base_vertex: c.base_vertex.clone(),
            json: c.json.unwrap_or(false),
        })
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.family.name(),
            "n": self.n,
            "datum": self.datum.name(),
            "q": self.q.to_string(),
            "p": self.p.to_string(),
            "regime": self.regime.name(),
            "order_bound": self.bound.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(group: &str, n: usize, q: u64) -> JobConfig {
        JobConfig { group: Some(group.into()), n: Some(n), q: Some(q), ..Default::default() }
    }

    #[test]
    fn default_bound() {
        assert_eq!(Job::from_config(&cfg("Sp", 2, 3)).unwrap().bound, 8);
        assert_eq!(Job::from_config(&cfg("Sp", 2, 5)).unwrap().bound, 24);
        assert_eq!(Job::from_config(&cfg("SOeven_quasisplit", 2, 2)).unwrap().bound, 15);
        let zl = JobConfig { regime: Some("zl".into()), ell: Some(2), ..cfg("Sp", 2, 5) };
        assert_eq!(Job::from_config(&zl).unwrap().bound, 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Job::from_config(&cfg("Sp", 2, 6)), Err(CliError::Invalid(_))));
        let c = JobConfig { order_bound: Some(6), ..cfg("Sp", 2, 3) };
        assert!(matches!(Job::from_config(&c), Err(CliError::Core(levelzero_core::Error::BoundNotCoprime { .. }))));
        let c = JobConfig { regime: Some("zl".into()), ell: Some(3), ..cfg("Sp", 2, 3) };
        assert!(Job::from_config(&c).is_err());
        assert!(Job::from_config(&cfg("E8", 8, 3)).is_err());
    }

    #[test]
    fn overlay_prefers_flags() {
        let file = cfg("Sp", 2, 3);
        let flags = JobConfig { q: Some(5), ..Default::default() };
        let c = file.overlay(flags);
        assert_eq!((c.group.as_deref(), c.q), (Some("Sp"), Some(5)));
    }
}
