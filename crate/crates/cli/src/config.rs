//! Plain `key = value` experiment configs with symbolic angle and
//! amplitude literals, validated with line-numbered errors.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, SQRT_2};
use std::fmt;
use std::path::PathBuf;

use switchwalk::analysis::{default_lattice, Mode};
use switchwalk::C64;

/// Configuration problem; `line` is 0 when no source line applies (for
/// example when a required key is missing or the value came from a flag).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Self::at(0, message)
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeKey {
    Forward,
    Reverse,
    Ico,
    IcoStep,
    FullIco,
}

impl ModeKey {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeKey::Forward => "forward",
            ModeKey::Reverse => "reverse",
            ModeKey::Ico => "ico",
            ModeKey::IcoStep => "ico-step",
            ModeKey::FullIco => "full-ico",
        }
    }

    pub fn engine_mode(self) -> Mode {
        match self {
            ModeKey::Forward => Mode::Forward,
            ModeKey::Reverse => Mode::Reverse,
            ModeKey::Ico => Mode::Ico,
            ModeKey::IcoStep => Mode::IcoStep,
            ModeKey::FullIco => Mode::FullIco,
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "forward" => ModeKey::Forward,
            "reverse" => ModeKey::Reverse,
            "ico" => ModeKey::Ico,
            "ico-step" => ModeKey::IcoStep,
            "full-ico" => ModeKey::FullIco,
            _ => return None,
        })
    }
}

/// Observables in their canonical output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Observable {
    Dist,
    Spread,
    TraceDistance,
    Blp,
    Entropy,
    Concurrence,
}

impl Observable {
    pub fn as_str(self) -> &'static str {
        match self {
            Observable::Dist => "dist",
            Observable::Spread => "spread",
            Observable::TraceDistance => "td",
            Observable::Blp => "blp",
            Observable::Entropy => "entropy",
            Observable::Concurrence => "concurrence",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "dist" => Observable::Dist,
            "spread" => Observable::Spread,
            "td" => Observable::TraceDistance,
            "blp" => Observable::Blp,
            "entropy" => Observable::Entropy,
            "concurrence" => Observable::Concurrence,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: ModeKey,
    pub thetas: Vec<f64>,
    pub theta_s: f64,
    pub steps: usize,
    pub alpha: C64,
    pub beta: C64,
    pub observables: Vec<Observable>,
    pub lattice: usize,
    pub allow_wrap: bool,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn k(&self) -> usize {
        self.thetas.len()
    }
}

/// Collected raw keys before cross-field validation; each value carries
/// the line it came from.
#[derive(Default)]
pub struct RawConfig {
    pub mode: Option<(ModeKey, usize)>,
    pub k: Option<(usize, usize)>,
    pub thetas: Option<(Vec<f64>, usize)>,
    pub theta_s: Option<(f64, usize)>,
    pub steps: Option<(usize, usize)>,
    pub alpha: Option<(C64, usize)>,
    pub beta: Option<(C64, usize)>,
    pub observables: Option<(Vec<Observable>, usize)>,
    pub lattice: Option<(usize, usize)>,
    pub allow_wrap: Option<(bool, usize)>,
    pub out: Option<(PathBuf, usize)>,
}

/// Angle literal: an optional sign, an optional coefficient, an optional
/// `pi`, and an optional `/denominator` where the denominator is a number.
/// Plain decimals are accepted unchanged.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, rest) = match compact.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, compact.strip_prefix('+').unwrap_or(&compact)),
    };
    let (num, den) = match rest.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (rest, None),
    };
    let numerator = if let Some(coef) = num.strip_suffix("pi") {
        let c = if coef.is_empty() {
            1.0
        } else {
            coef.parse::<f64>()
                .map_err(|_| format!("bad pi coefficient {coef:?}"))?
        };
        c * PI
    } else {
        num.parse::<f64>()
            .map_err(|_| format!("bad angle {num:?}"))?
    };
    let denominator = match den {
        None => 1.0,
        Some(d) => {
            let v = d
                .parse::<f64>()
                .map_err(|_| format!("bad denominator {d:?}"))?;
            if v == 0.0 {
                return Err("zero denominator".into());
            }
            v
        }
    };
    Ok(sign * numerator / denominator)
}

/// One amplitude term: optional sign, optional coefficient, optional `i`,
/// optional `/sqrt2` or numeric denominator.
fn parse_amp_term(term: &str) -> Result<C64, String> {
    if term.is_empty() {
        return Err("empty amplitude term".into());
    }
    let (body, den) = match term.split_once('/') {
        Some((b, d)) => {
            let v = if d == "sqrt2" {
                SQRT_2
            } else {
                d.parse::<f64>()
                    .map_err(|_| format!("bad denominator {d:?}"))?
            };
            if v == 0.0 {
                return Err("zero denominator".into());
            }
            (b, v)
        }
        None => (term, 1.0),
    };
    let (imaginary, coef_str) = match body.strip_suffix('i') {
        Some(c) => (true, c),
        None => (false, body),
    };
    let coef = if coef_str.is_empty() {
        if imaginary {
            1.0
        } else {
            return Err(format!("bad amplitude term {term:?}"));
        }
    } else {
        coef_str
            .parse::<f64>()
            .map_err(|_| format!("bad amplitude term {term:?}"))?
    };
    let v = coef / den;
    Ok(if imaginary {
        C64::new(0.0, v)
    } else {
        C64::new(v, 0.0)
    })
}

/// Amplitude literal: one or two signed terms, e.g. `1/sqrt2`, `-i/sqrt2`,
/// `0.6 + 0.8i`. Signs inside exponents do not split terms.
pub fn parse_amplitude(s: &str) -> Result<C64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty amplitude".into());
    }
    let bytes = compact.as_bytes();
    let mut breaks = vec![];
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            breaks.push(i);
        }
    }
    if breaks.len() > 1 {
        return Err("amplitude has more than two terms".into());
    }
    let mut total = C64::new(0.0, 0.0);
    let mut start = 0;
    for end in breaks.iter().copied().chain([compact.len()]) {
        let piece = &compact[start..end];
        let (sign, body) = match piece.strip_prefix('-') {
            Some(r) => (-1.0, r),
            None => (1.0, piece.strip_prefix('+').unwrap_or(piece)),
        };
        total += parse_amp_term(body)? * C64::new(sign, 0.0);
        start = end;
    }
    Ok(total)
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.parse::<usize>().map_err(|_| format!("bad integer {s:?}"))
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("bad boolean {s:?}, expected true or false")),
    }
}

impl RawConfig {
    pub fn set_key(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let dup = |name: &str| ConfigError::at(line, format!("duplicate key {name}"));
        let bad = |msg: String| ConfigError::at(line, msg);
        match key {
            "mode" => {
                if self.mode.is_some() {
                    return Err(dup("mode"));
                }
                let m = ModeKey::parse(value).ok_or_else(|| {
                    bad(format!(
                        "unknown mode {value:?}, expected forward, reverse, ico, ico-step or full-ico"
                    ))
                })?;
                self.mode = Some((m, line));
            }
            "k" => {
                if self.k.is_some() {
                    return Err(dup("k"));
                }
                self.k = Some((parse_usize(value).map_err(bad)?, line));
            }
            "thetas" => {
                if self.thetas.is_some() {
                    return Err(dup("thetas"));
                }
                let mut list = vec![];
                for part in value.split(',') {
                    list.push(parse_angle(part).map_err(bad)?);
                }
                self.thetas = Some((list, line));
            }
            "theta_s" => {
                if self.theta_s.is_some() {
                    return Err(dup("theta_s"));
                }
                self.theta_s = Some((parse_angle(value).map_err(bad)?, line));
            }
            "steps" => {
                if self.steps.is_some() {
                    return Err(dup("steps"));
                }
                self.steps = Some((parse_usize(value).map_err(bad)?, line));
            }
            "alpha" => {
                if self.alpha.is_some() {
                    return Err(dup("alpha"));
                }
                self.alpha = Some((parse_amplitude(value).map_err(bad)?, line));
            }
            "beta" => {
                if self.beta.is_some() {
                    return Err(dup("beta"));
                }
                self.beta = Some((parse_amplitude(value).map_err(bad)?, line));
            }
            "observables" => {
                if self.observables.is_some() {
                    return Err(dup("observables"));
                }
                let mut list = vec![];
                for part in value.split(',') {
                    let name = part.trim();
                    let obs = Observable::parse(name)
                        .ok_or_else(|| bad(format!("unknown observable {name:?}")))?;
                    if !list.contains(&obs) {
                        list.push(obs);
                    }
                }
                list.sort();
                self.observables = Some((list, line));
            }
            "lattice" => {
                if self.lattice.is_some() {
                    return Err(dup("lattice"));
                }
                self.lattice = Some((parse_usize(value).map_err(bad)?, line));
            }
            "allow_wrap" => {
                if self.allow_wrap.is_some() {
                    return Err(dup("allow_wrap"));
                }
                self.allow_wrap = Some((parse_bool(value).map_err(bad)?, line));
            }
            "out" => {
                if self.out.is_some() {
                    return Err(dup("out"));
                }
                self.out = Some((PathBuf::from(value), line));
            }
            other => {
                return Err(ConfigError::at(line, format!("unknown key {other:?}")));
            }
        }
        Ok(())
    }

    /// Cross-field validation. Mode compatibility is checked before missing
    /// keys so that, for example, an odd step count under ico-step is
    /// reported even when thetas are still absent.
    pub fn build(self) -> Result<ExperimentConfig, ConfigError> {
        if let (Some((k, _)), Some((thetas, tline))) = (&self.k, &self.thetas) {
            if *k != thetas.len() {
                return Err(ConfigError::at(
                    *tline,
                    format!("expected {k} thetas for period k = {k}, got {}", thetas.len()),
                ));
            }
        }
        let mode = match &self.mode {
            Some((m, _)) => *m,
            None => return Err(ConfigError::global("missing key mode")),
        };
        if mode == ModeKey::IcoStep {
            if let Some((n, line)) = self.steps {
                if n % 2 != 0 {
                    return Err(ConfigError::at(
                        line,
                        format!("mode ico-step requires an even step count, got {n}"),
                    ));
                }
            }
            if let Some((k, line)) = self.k {
                if k != 2 {
                    return Err(ConfigError::at(
                        line,
                        format!("mode ico-step requires period k = 2, got {k}"),
                    ));
                }
            }
        }
        let (thetas, tline) = self
            .thetas
            .ok_or_else(|| ConfigError::global("missing key thetas"))?;
        let (steps, _) = self
            .steps
            .ok_or_else(|| ConfigError::global("missing key steps"))?;
        if thetas.is_empty() {
            return Err(ConfigError::at(tline, "thetas must not be empty"));
        }
        if steps == 0 {
            let line = self.steps.map(|(_, l)| l).unwrap_or(0);
            return Err(ConfigError::at(line, "steps must be at least 1"));
        }
        let k = thetas.len();
        match mode {
            ModeKey::IcoStep => {
                if k != 2 {
                    return Err(ConfigError::at(
                        tline,
                        format!("mode ico-step requires exactly 2 thetas, got {k}"),
                    ));
                }
            }
            ModeKey::FullIco => {
                if k > 5 {
                    return Err(ConfigError::at(
                        tline,
                        format!("mode full-ico supports periods up to 5, got {k}"),
                    ));
                }
                if steps % k != 0 {
                    let line = self.steps.map(|(_, l)| l).unwrap_or(0);
                    return Err(ConfigError::at(
                        line,
                        format!("mode full-ico requires steps divisible by the period {k}, got {steps}"),
                    ));
                }
            }
            _ => {}
        }

        let default_l = default_lattice(steps);
        let allow_wrap = self.allow_wrap.map(|(b, _)| b).unwrap_or(false);
        let lattice = match self.lattice {
            None => default_l,
            Some((l, line)) => {
                if l % 2 == 0 || l < 3 {
                    return Err(ConfigError::at(
                        line,
                        format!("lattice must be an odd size of at least 3, got {l}"),
                    ));
                }
                if l > default_l {
                    return Err(ConfigError::at(
                        line,
                        format!(
                            "lattice {l} exceeds the light-cone default {default_l}; the override only shrinks"
                        ),
                    ));
                }
                if l < default_l && !allow_wrap {
                    return Err(ConfigError::at(
                        line,
                        format!(
                            "lattice {l} lets the wavefront wrap before step {steps}; set allow_wrap = true"
                        ),
                    ));
                }
                l
            }
        };

        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let alpha = self.alpha.map(|(a, _)| a).unwrap_or(h);
        let beta = self.beta.map(|(b, _)| b).unwrap_or(h);
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            let line = self
                .beta
                .map(|(_, l)| l)
                .or(self.alpha.map(|(_, l)| l))
                .unwrap_or(0);
            return Err(ConfigError::at(
                line,
                format!("initial coin amplitudes have norm squared {norm_sq}, expected 1"),
            ));
        }

        let observables = self
            .observables
            .map(|(o, _)| o)
            .unwrap_or_else(|| vec![Observable::Spread]);

        Ok(ExperimentConfig {
            mode,
            thetas,
            theta_s: self.theta_s.map(|(t, _)| t).unwrap_or(FRAC_PI_4),
            steps,
            alpha,
            beta,
            observables,
            lattice,
            allow_wrap,
            out: self.out.map(|(p, _)| p),
        })
    }
}

/// Parse `key = value` text. Blank lines and `#` comments are skipped, so
/// the metadata echo of an emitted table parses directly.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut raw = RawConfig::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::at(line_no, format!("expected key = value, got {line:?}"))
        })?;
        raw.set_key(key.trim(), value.trim(), line_no)?;
    }
    raw.build()
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Canonical amplitude text: decimal shortest-round-trip parts, so parsing
/// it back reproduces the exact f64 bits.
pub fn format_amplitude(c: C64) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_f64(c.im))
    } else if c.im < 0.0 {
        format!("{} - {}i", fmt_f64(c.re), fmt_f64(-c.im))
    } else {
        format!("{} + {}i", fmt_f64(c.re), fmt_f64(c.im))
    }
}

/// Key/value echo of the full config with defaults filled; joining the
/// pairs as lines re-parses to an identical config.
pub fn echo_entries(cfg: &ExperimentConfig) -> Vec<(String, String)> {
    let mut entries = vec![
        ("mode".into(), cfg.mode.as_str().to_string()),
        ("k".into(), cfg.k().to_string()),
        (
            "thetas".into(),
            cfg.thetas
                .iter()
                .map(|t| fmt_f64(*t))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        ("theta_s".into(), fmt_f64(cfg.theta_s)),
        ("steps".into(), cfg.steps.to_string()),
        ("alpha".into(), format_amplitude(cfg.alpha)),
        ("beta".into(), format_amplitude(cfg.beta)),
        (
            "observables".into(),
            cfg.observables
                .iter()
                .map(|o| o.as_str())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        ("lattice".into(), cfg.lattice.to_string()),
        ("allow_wrap".into(), cfg.allow_wrap.to_string()),
    ];
    if let Some(out) = &cfg.out {
        entries.push(("out".into(), out.display().to_string()));
    }
    entries
}
