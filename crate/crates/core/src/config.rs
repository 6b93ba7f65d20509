//! Run configuration: plain key=value files, command-line flags, documented
//! defaults, with precedence flag > file > default and full validation
//! before any computation starts.

use crate::error::{Error, Result};
use crate::model::BasisState;
use std::collections::HashMap;
use std::path::PathBuf;

/// Pipeline selector, one per subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    Intensity,
    Ionize,
    Eigen,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "spectrum" => Ok(Mode::Spectrum),
            "intensity" => Ok(Mode::Intensity),
            "ionize" => Ok(Mode::Ionize),
            "eigen" => Ok(Mode::Eigen),
            other => Err(Error::Config(format!(
                "unknown mode '{other}'; valid modes: spectrum | intensity | ionize | eigen"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::Intensity => "intensity",
            Mode::Ionize => "ionize",
            Mode::Eigen => "eigen",
        }
    }
}

/// Inclusive linear grid specification `lo:hi:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<GridSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "grid must be lo:hi:steps, got '{s}'"
            )));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid lower bound '{}'", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid upper bound '{}'", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid step count '{}'", parts[2])))?;
        if steps < 1 {
            return Err(Error::Config("grid needs at least 1 point".into()));
        }
        if lo > hi {
            return Err(Error::Config(format!(
                "grid must have lo <= hi, got {lo} > {hi}"
            )));
        }
        Ok(GridSpec { lo, hi, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + i as f64 * d).collect()
    }
}

/// Transition targets: either every state up to a shell cap, or an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    /// All basis states with n ≤ cap (further capped by n0).
    UpToShell(u32),
    Explicit(Vec<(u32, u32, i32)>),
}

impl TargetSpec {
    pub fn parse(s: &str) -> Result<TargetSpec> {
        if let Some(rest) = s.strip_prefix("n<=") {
            let cap: u32 = rest
                .parse()
                .map_err(|_| Error::Config(format!("bad target shell cap '{rest}'")))?;
            if cap < 1 {
                return Err(Error::Config("target shell cap must be >= 1".into()));
            }
            return Ok(TargetSpec::UpToShell(cap));
        }
        let mut list = Vec::new();
        for item in s.split(';') {
            list.push(parse_state_triplet(item)?);
        }
        if list.is_empty() {
            return Err(Error::Config("empty target list".into()));
        }
        Ok(TargetSpec::Explicit(list))
    }

    pub fn resolve(&self, n0: u32) -> Result<Vec<BasisState>> {
        match self {
            TargetSpec::UpToShell(cap) => Ok(crate::transitions::default_targets(n0.min(*cap))),
            TargetSpec::Explicit(list) => list
                .iter()
                .map(|&(n, l, mu)| BasisState::new(n, l, mu))
                .collect(),
        }
    }
}

fn parse_state_triplet(s: &str) -> Result<(u32, u32, i32)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("state must be n,l,mu, got '{s}'")));
    }
    let n = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad n in state '{s}'")))?;
    let l = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad l in state '{s}'")))?;
    let mu = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad mu in state '{s}'")))?;
    Ok((n, l, mu))
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub n0: u32,
    /// Vector potential amplitude in V·s/m (fixed for spectrum/eigen modes).
    pub amplitude_si: f64,
    /// Photon energy in eV (fixed for intensity/ionize/eigen modes).
    pub photon_ev: f64,
    /// Scan grid: photon energies (spectrum) or amplitudes (intensity/ionize).
    pub grid: GridSpec,
    pub from: (u32, u32, i32),
    pub targets: TargetSpec,
    pub mu_window: (i32, i32),
    pub out: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub workers: usize,
    /// (key, source) pairs recording where each setting came from.
    pub provenance: Vec<(String, String)>,
}

const VALID_KEYS: &[&str] = &[
    "mode",
    "n0",
    "amplitude",
    "photon-ev",
    "grid",
    "from",
    "targets",
    "mu-window",
    "out",
    "cache",
    "workers",
];

fn unknown_key_error(key: &str) -> Error {
    Error::Config(format!(
        "unknown key '{key}'; valid keys: {}",
        VALID_KEYS.join(", ")
    ))
}

/// Parse a plain key=value file (one pair per line, `#` comments).
fn parse_file(path: &std::path::Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "{}:{}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        let k = k.trim();
        if !VALID_KEYS.contains(&k) {
            return Err(unknown_key_error(k));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Parse command-line arguments (after the program name) plus an optional
/// `--config FILE`, with precedence flag > file > default.
pub fn parse_config(args: &[String]) -> Result<RunConfig> {
    let mut flags: HashMap<String, String> = HashMap::new();
    let mut mode_positional: Option<String> = None;
    let mut config_path: Option<PathBuf> = None;

    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        if let Some(name) = arg.strip_prefix("--") {
            let (key, value) = if let Some((k, v)) = name.split_once('=') {
                (k.to_string(), v.to_string())
            } else {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Config(format!("flag --{name} needs a value")))?;
                (name.to_string(), v.clone())
            };
            if key == "config" {
                config_path = Some(PathBuf::from(value));
                continue;
            }
            if !VALID_KEYS.contains(&key.as_str()) {
                return Err(unknown_key_error(&key));
            }
            flags.insert(key, value);
        } else if mode_positional.is_none() {
            mode_positional = Some(arg.clone());
        } else {
            return Err(Error::Config(format!(
                "unexpected positional argument '{arg}'"
            )));
        }
    }
    if let Some(m) = mode_positional {
        flags.entry("mode".into()).or_insert(m);
    }

    let file_map = match &config_path {
        Some(p) => parse_file(p)?,
        None => HashMap::new(),
    };

    let mut provenance: Vec<(String, String)> = Vec::new();
    let get = |key: &str| -> Option<(String, &'static str)> {
        if let Some(v) = flags.get(key) {
            return Some((v.clone(), "flag"));
        }
        if let Some(v) = file_map.get(key) {
            return Some((v.clone(), "file"));
        }
        None
    };

    let (mode_str, mode_src) = get("mode").ok_or_else(|| {
        Error::Config("missing mode: spectrum | intensity | ionize | eigen".into())
    })?;
    let mode = Mode::parse(&mode_str)?;
    provenance.push(("mode".into(), mode_src.into()));

    macro_rules! setting {
        ($key:expr, $default:expr, $parse:expr) => {{
            match get($key) {
                Some((v, src)) => {
                    provenance.push(($key.into(), src.into()));
                    #[allow(clippy::redundant_closure_call)]
                    $parse(v.as_str())?
                }
                None => {
                    provenance.push(($key.into(), "default".into()));
                    $default
                }
            }
        }};
    }

    let n0: u32 = setting!("n0", 10, |s: &str| s
        .parse::<u32>()
        .map_err(|_| Error::Config(format!("bad n0 '{s}'"))));
    if n0 < 1 {
        return Err(Error::Config("n0 must satisfy n0 >= 1".into()));
    }

    let amplitude_si: f64 = setting!("amplitude", 5e-6, |s: &str| s
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("bad amplitude '{s}'"))));
    if !(amplitude_si >= 0.0) {
        return Err(Error::Config(format!(
            "amplitude must be >= 0 V·s/m, got {amplitude_si}"
        )));
    }

    let photon_ev: f64 = setting!("photon-ev", 0.296, |s: &str| s
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("bad photon-ev '{s}'"))));
    if !(photon_ev > 0.0) {
        return Err(Error::Config(format!(
            "photon-ev must be > 0, got {photon_ev}"
        )));
    }

    let default_grid = match mode {
        Mode::Spectrum => GridSpec {
            lo: 0.05,
            hi: 0.6,
            steps: 56,
        },
        Mode::Intensity | Mode::Ionize => GridSpec {
            lo: 2e-7,
            hi: 5e-6,
            steps: 25,
        },
        Mode::Eigen => GridSpec {
            lo: 0.0,
            hi: 0.0,
            steps: 1,
        },
    };
    let grid: GridSpec = setting!("grid", default_grid, GridSpec::parse);
    if mode == Mode::Spectrum && grid.lo <= 0.0 {
        return Err(Error::Config("photon-energy grid must be positive".into()));
    }
    if matches!(mode, Mode::Intensity | Mode::Ionize) && grid.lo < 0.0 {
        return Err(Error::Config("amplitude grid must be non-negative".into()));
    }

    let from: (u32, u32, i32) = setting!("from", (1, 0, 0), parse_state_triplet);
    let from_state = BasisState::new(from.0, from.1, from.2)
        .map_err(|e| Error::Config(format!("invalid from state: {e}")))?;
    if from_state.n > n0 {
        return Err(Error::Config(format!(
            "from state {} lies outside the n0={n0} basis",
            from_state.label()
        )));
    }

    let targets: TargetSpec = setting!("targets", TargetSpec::UpToShell(4), TargetSpec::parse);
    for t in targets.resolve(n0)? {
        if t.n > n0 {
            return Err(Error::Config(format!(
                "target {} lies outside the n0={n0} basis",
                t.label()
            )));
        }
    }

    let mu_window: (i32, i32) = setting!("mu-window", (-12, 2), |s: &str| {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 2 {
            return Err(Error::Config(format!("mu-window must be lo:hi, got '{s}'")));
        }
        let lo: i32 = parts[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad mu-window lo '{}'", parts[0])))?;
        let hi: i32 = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad mu-window hi '{}'", parts[1])))?;
        Ok((lo, hi))
    });
    if mu_window.0 > mu_window.1 {
        return Err(Error::Config(format!(
            "mu-window must have lo <= hi, got {}:{}",
            mu_window.0, mu_window.1
        )));
    }

    let out: PathBuf = setting!(
        "out",
        PathBuf::from(format!("corotate_{}.csv", mode.name())),
        |s: &str| Ok::<PathBuf, Error>(PathBuf::from(s))
    );
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        if !parent.exists() {
            return Err(Error::Config(format!(
                "output directory {} does not exist",
                parent.display()
            )));
        }
    }

    // env var can override the cache dir only (flag still wins)
    let cache_flag: Option<PathBuf> =
        setting!("cache", None, |s: &str| Ok::<Option<PathBuf>, Error>(Some(
            PathBuf::from(s)
        )));
    let cache_dir = match (&cache_flag, provenance.iter().find(|(k, _)| k == "cache")) {
        (Some(_), _) if provenance.iter().any(|(k, s)| k == "cache" && s == "flag") => cache_flag,
        _ => match std::env::var_os("COROTATE_CACHE_DIR") {
            Some(dir) => {
                provenance.retain(|(k, _)| k != "cache");
                provenance.push(("cache".into(), "env".into()));
                Some(PathBuf::from(dir))
            }
            None => cache_flag,
        },
    };

    let workers: usize = setting!("workers", 0, |s: &str| s
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("bad workers '{s}'"))));

    Ok(RunConfig {
        mode,
        n0,
        amplitude_si,
        photon_ev,
        grid,
        from,
        targets,
        mu_window,
        out,
        cache_dir,
        workers,
        provenance,
    })
}

pub const USAGE: &str = "corotate <spectrum|intensity|ionize|eigen> [flags]

Flags (every flag also works as key=value in a --config file):
  --config FILE        plain key=value file, # comments
  --n0 N               basis truncation shell (default 10)
  --amplitude A        vector potential amplitude, V·s/m (default 5e-6)
  --photon-ev E        photon energy, eV (default 0.296)
  --grid lo:hi:steps   scan grid: photon energies (spectrum) or amplitudes
  --from n,l,mu        initial bound state (default 1,0,0)
  --targets SPEC       'n<=N' or 'n,l,mu;n,l,mu;...' (default n<=4)
  --mu-window lo:hi    photoelectron channel window (default -12:2)
  --out PATH           output CSV path (default corotate_<mode>.csv)
  --cache DIR          binary result cache (env COROTATE_CACHE_DIR overrides)
  --workers N          worker threads, 0 = all cores (default 0)

Precedence: command-line flag > config file > documented default.
";

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(|x| x.to_string()).collect()
    }

    #[test]
    fn defaults_applied_and_recorded() {
        let cfg = parse_config(&argv("eigen")).unwrap();
        assert_eq!(cfg.mode, Mode::Eigen);
        assert_eq!(cfg.n0, 10);
        assert_eq!(cfg.amplitude_si, 5e-6);
        assert_eq!(cfg.photon_ev, 0.296);
        assert_eq!(cfg.from, (1, 0, 0));
        assert_eq!(cfg.mu_window, (-12, 2));
        assert!(cfg
            .provenance
            .iter()
            .any(|(k, s)| k == "n0" && s == "default"));
    }

    #[test]
    fn flag_beats_file() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("corotate-cfg-{}.txt", std::process::id()));
        std::fs::write(&path, "# test config\nn0=6\nphoton-ev=2.37\n").unwrap();
        let args = argv(&format!("spectrum --config {} --n0 8", path.display()));
        let cfg = parse_config(&args).unwrap();
        assert_eq!(cfg.n0, 8);
        assert_eq!(cfg.photon_ev, 2.37);
        assert!(cfg.provenance.iter().any(|(k, s)| k == "n0" && s == "flag"));
        assert!(cfg
            .provenance
            .iter()
            .any(|(k, s)| k == "photon-ev" && s == "file"));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn unknown_keys_rejected_with_key_list() {
        let err = parse_config(&argv("eigen --frobnicate 3"))
            .unwrap_err()
            .to_string();
        assert!(err.contains("unknown key"));
        assert!(err.contains("mu-window"), "should list valid keys: {err}");
        let dir = std::env::temp_dir();
        let path = dir.join(format!("corotate-badcfg-{}.txt", std::process::id()));
        std::fs::write(&path, "bogus=1\n").unwrap();
        let err = parse_config(&argv(&format!("eigen --config {}", path.display()))).unwrap_err();
        assert!(err.to_string().contains("unknown key"));
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn n0_zero_rejected_naming_constraint() {
        let err = parse_config(&argv("eigen --n0 0")).unwrap_err().to_string();
        assert!(err.contains("n0 >= 1"), "{err}");
    }

    #[test]
    fn missing_mode_is_an_error() {
        assert!(parse_config(&argv("--n0 4")).is_err());
    }

    #[test]
    fn grid_parsing_and_points() {
        let g = GridSpec::parse("1:3:5").unwrap();
        assert_eq!(g.points(), vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        assert!(GridSpec::parse("3:1:5").is_err());
        assert!(GridSpec::parse("1:3:0").is_err());
        assert!(GridSpec::parse("1:3").is_err());
        assert_eq!(GridSpec::parse("2:9:1").unwrap().points(), vec![2.0]);
    }

    #[test]
    fn target_specs() {
        assert_eq!(TargetSpec::parse("n<=3").unwrap(), TargetSpec::UpToShell(3));
        assert_eq!(
            TargetSpec::parse("1,0,0;2,1,-1").unwrap(),
            TargetSpec::Explicit(vec![(1, 0, 0), (2, 1, -1)])
        );
        assert!(TargetSpec::parse("1,0").is_err());
        // resolution caps at n0
        let t = TargetSpec::UpToShell(4).resolve(2).unwrap();
        assert!(t.iter().all(|s| s.n <= 2));
    }

    #[test]
    fn env_var_overrides_cache_dir_only() {
        std::env::set_var("COROTATE_CACHE_DIR", "/tmp/corotate-env-cache");
        let cfg = parse_config(&argv("eigen --n0 2")).unwrap();
        assert_eq!(
            cfg.cache_dir.as_deref(),
            Some(std::path::Path::new("/tmp/corotate-env-cache"))
        );
        assert!(cfg
            .provenance
            .iter()
            .any(|(k, s)| k == "cache" && s == "env"));
        // a flag still wins over the environment
        let cfg = parse_config(&argv("eigen --n0 2 --cache /tmp/flagdir")).unwrap();
        assert_eq!(
            cfg.cache_dir.as_deref(),
            Some(std::path::Path::new("/tmp/flagdir"))
        );
        std::env::remove_var("COROTATE_CACHE_DIR");
        // nothing else is env-overridable: n0 stays at its default
        assert_eq!(cfg.n0, 2);
    }

    #[test]
    fn from_state_must_fit_basis() {
        assert!(parse_config(&argv("eigen --n0 2 --from 3,0,0")).is_err());
        assert!(parse_config(&argv("eigen --from 2,2,0")).is_err());
    }
}
