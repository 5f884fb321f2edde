//! Turning positional arguments and flags into typed parameters.

use rootfire_core::firing::Region;
use rootfire_core::{FiringKind, KParam, Limits, RootSystem, Weight};

use crate::{CliError, Opts, MAX_POINTS_ENV};

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Positional slot `idx`, or the flag value; both given and different is an error.
pub fn slot(opts: &Opts, idx: usize, flag: &Option<String>, name: &str) -> Result<Option<String>, CliError> {
    let p = opts.positional.get(idx).map(|s| s.trim().to_string());
    let f = flag.as_ref().map(|s| s.trim().to_string());
    match (p, f) {
        (Some(p), Some(f)) if p != f => Err(usage(format!("{name} given twice ({p} and {f})"))),
        (Some(p), _) => Ok(Some(p)),
        (None, f) => Ok(f),
    }
}

pub fn require(v: Option<String>, name: &str) -> Result<String, CliError> {
    v.ok_or_else(|| usage(format!("missing {name}")))
}

pub fn max_positional(opts: &Opts, n: usize) -> Result<(), CliError> {
    if opts.positional.len() > n {
        Err(usage(format!("unexpected argument {:?}", opts.positional[n].trim())))
    } else {
        Ok(())
    }
}

pub fn system(s: &str) -> Result<RootSystem, CliError> {
    RootSystem::from_spec(s).map_err(|e| usage(e.to_string()))
}

pub fn kind(s: &str) -> Result<FiringKind, CliError> {
    s.parse::<FiringKind>().map_err(usage)
}

pub fn weight(rs: &RootSystem, s: &str) -> Result<Weight, CliError> {
    let w: Weight = s.parse().map_err(|e: rootfire_core::Error| usage(e.to_string()))?;
    if w.rank() != rs.rank() {
        return Err(usage(format!("weight {s} has {} coordinates, {} has rank {}", w.rank(), rs.name(), rs.rank())));
    }
    Ok(w)
}

/// Parses "k" or "k_s,k_l", then applies --ks/--kl overrides.
pub fn kparam(rs: &RootSystem, text: Option<&str>, ks: Option<i64>, kl: Option<i64>) -> Result<Option<KParam>, CliError> {
    let mut k = match text {
        None => None,
        Some(t) => {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            let nums = parts
                .iter()
                .map(|p| p.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("bad parameter {t:?} (expected k or k_s,k_l)")))?;
            match nums.as_slice() {
                [k] => Some(KParam::uniform(*k)),
                [s, l] => Some(KParam::new(*s, *l)),
                _ => return Err(usage(format!("bad parameter {t:?} (expected k or k_s,k_l)"))),
            }
        }
    };
    if ks.is_some() || kl.is_some() {
        let base = k.unwrap_or(KParam::zero());
        k = Some(KParam::new(ks.unwrap_or(base.short), kl.unwrap_or(base.long)));
    }
    if let Some(k) = k {
        if !k.is_nonnegative() {
            return Err(usage(format!("parameters must be nonnegative, got {k}")));
        }
        if rs.is_simply_laced() && k.short != k.long {
            return Err(usage(format!("{} is simply laced; give a single k", rs.name())));
        }
    }
    Ok(k.map(|k| k.normalized(rs)))
}

pub fn limits(cli_cap: Option<usize>, force: bool) -> Result<Limits, CliError> {
    let cap = match cli_cap {
        Some(c) => c,
        None => match std::env::var(MAX_POINTS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{MAX_POINTS_ENV}={v:?} is not a positive integer")))?,
            Err(_) => rootfire_core::limits::DEFAULT_MAX_POINTS,
        },
    };
    let l = Limits::with_max_points(cap);
    Ok(if force { l.forced() } else { l })
}

pub fn region(rs: &RootSystem, opts: &Opts, default_radius: i64) -> Result<Region, CliError> {
    match (&opts.region_box, &opts.perm) {
        (Some(_), Some(_)) => Err(usage("give at most one of --box and --perm")),
        (None, Some(p)) => {
            let center = weight(rs, p)?;
            if !center.is_dominant() {
                return Err(usage(format!("--perm center {p} is not dominant")));
            }
            Ok(Region::Permutohedron { center })
        }
        (Some(b), None) => parse_box(b),
        (None, None) => Ok(Region::centered_box(default_radius)),
    }
}

fn parse_box(b: &str) -> Result<Region, CliError> {
    let bad = || usage(format!("bad --box {b:?} (expected R or LO:HI)"));
    if let Some((lo, hi)) = b.split_once(':') {
        let lo = lo.trim().parse::<i64>().map_err(|_| bad())?;
        let hi = hi.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(Region::Box { lo, hi })
    } else {
        let r = b.trim().parse::<i64>().map_err(|_| bad())?;
        if r < 0 {
            return Err(bad());
        }
        Ok(Region::centered_box(r))
    }
}

pub fn format(opts: &Opts, allowed: &[&str], default: &str) -> Result<String, CliError> {
    let f = opts.format.clone().unwrap_or_else(|| default.to_string()).to_ascii_lowercase();
    if allowed.contains(&f.as_str()) {
        Ok(f)
    } else {
        Err(usage(format!("format {f:?} not supported here (choose from {})", allowed.join(", "))))
    }
}
