//! Resolution of design configuration from flags plus an optional
//! `key = value` config file. Explicit flags always win; file values fill
//! the gaps; hard defaults apply last.

use std::collections::HashMap;
use std::path::PathBuf;

use bfdesign::{AnalysisPrior, DesignConfig, DesignPrior, Metric, TestSpec};

use crate::{CliError, DesignArgs};

/// Parses a plain decimal or an `a/b` fraction such as `1/3`.
pub fn parse_ratio(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad ratio `{s}`: {e}")))?;
        let den: f64 = den
            .trim()
            .parse()
            .map_err(|e| CliError::Usage(format!("bad ratio `{s}`: {e}")))?;
        if den == 0.0 {
            return Err(CliError::Usage(format!(
                "bad ratio `{s}`: zero denominator"
            )));
        }
        Ok(num / den)
    } else {
        s.parse()
            .map_err(|e| CliError::Usage(format!("bad number `{s}`: {e}")))
    }
}

fn load_config(path: &PathBuf) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected `key = value`, got `{line}`",
                path.display(),
                idx + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

pub struct Resolver {
    args: DesignArgs,
    file: HashMap<String, String>,
}

impl Resolver {
    pub fn new(args: &DesignArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => load_config(path)?,
            None => HashMap::new(),
        };
        Ok(Self {
            args: args.clone(),
            file,
        })
    }

    fn file_value(&self, key: &str) -> Option<&str> {
        self.file.get(key).map(|s| s.as_str())
    }

    fn f64_or(&self, key: &str, flag: Option<f64>, default: f64) -> Result<f64, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file_value(key) {
            Some(s) => parse_ratio(s),
            None => Ok(default),
        }
    }

    pub fn string_or(
        &self,
        key: &str,
        flag: Option<String>,
        default: &str,
    ) -> Result<String, CliError> {
        Ok(flag
            .or_else(|| self.file_value(key).map(str::to_string))
            .unwrap_or_else(|| default.to_string()))
    }

    fn required_string(&self, key: &str, flag: Option<String>) -> Result<String, CliError> {
        flag.or_else(|| self.file_value(key).map(str::to_string))
            .ok_or_else(|| CliError::Usage(format!("missing required value `--{key}`")))
    }

    pub fn required_u64(&self, key: &str, flag: Option<u64>) -> Result<u64, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file_value(key) {
            Some(s) => s
                .parse()
                .map_err(|e| CliError::Usage(format!("bad value for `{key}`: {e}"))),
            None => Err(CliError::Usage(format!("missing required value `--{key}`"))),
        }
    }

    pub fn optional_u64(&self, key: &str, flag: Option<u64>) -> Result<Option<u64>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file_value(key) {
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("bad value for `{key}`: {e}"))),
            None => Ok(None),
        }
    }

    pub fn required_path(&self, key: &str, flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
        flag.or_else(|| self.file_value(key).map(PathBuf::from))
            .ok_or_else(|| CliError::Usage(format!("missing required value `--{key}`")))
    }

    pub fn test(&self) -> Result<TestSpec, CliError> {
        let name = self.required_string("test", self.args.test.clone())?;
        let p0 = self
            .args
            .p0
            .map(Ok)
            .or_else(|| self.file_value("p0").map(parse_ratio))
            .transpose()?
            .ok_or_else(|| CliError::Usage("missing required value `--p0`".into()))?;
        match name.as_str() {
            "one-sided" => Ok(TestSpec::one_sided(p0)?),
            "two-sided" => Ok(TestSpec::point_null(p0)?),
            other => Err(CliError::Usage(format!(
                "unknown test `{other}`; expected one-sided or two-sided"
            ))),
        }
    }

    pub fn analysis(&self) -> Result<AnalysisPrior, CliError> {
        let a = self.f64_or("aa", self.args.aa, 1.0)?;
        let b = self.f64_or("ba", self.args.ba, 1.0)?;
        Ok(AnalysisPrior::new(a, b)?)
    }

    pub fn k(&self) -> Result<f64, CliError> {
        let s = self.required_string("k", self.args.k.clone())?;
        parse_ratio(&s)
    }

    pub fn metric(&self, flag: Option<String>) -> Result<Metric, CliError> {
        let name = self.required_string("metric", flag)?;
        Ok(name.parse::<Metric>()?)
    }

    /// Conventional defaults live here, not in the engine: a type-I bound
    /// of 0.05 and 80% power / H0-evidence probability.
    pub fn target_or_default(&self, flag: Option<f64>, metric: Metric) -> Result<f64, CliError> {
        let default = match metric {
            Metric::TypeI => 0.05,
            Metric::Power | Metric::H0Evidence => 0.8,
        };
        self.f64_or("target", flag, default)
    }

    fn design_prior(
        &self,
        key: &str,
        flag: &Option<String>,
        default: String,
    ) -> Result<DesignPrior, CliError> {
        let text = flag
            .clone()
            .or_else(|| self.file_value(key).map(str::to_string))
            .unwrap_or(default);
        Ok(text.parse::<DesignPrior>()?)
    }

    fn build_config(&self, k: f64) -> Result<DesignConfig, CliError> {
        let test = self.test()?;
        let analysis = self.analysis()?;
        let p0 = test.p0();
        // Defaults make the design priors agree with the analysis prior:
        // truncated at p0 for the directional test, point mass at p0 under
        // the point null.
        let (default_h0, default_h1) = match test {
            TestSpec::OneSided { .. } => (
                format!("beta:{},{},0,{}", analysis.a(), analysis.b(), p0),
                format!("beta:{},{},{},1", analysis.a(), analysis.b(), p0),
            ),
            TestSpec::PointNull { .. } => (
                format!("point:{p0}"),
                format!("beta:{},{}", analysis.a(), analysis.b()),
            ),
        };
        let design_h0 = self.design_prior("design-h0", &self.args.design_h0, default_h0)?;
        let design_h1 = self.design_prior("design-h1", &self.args.design_h1, default_h1)?;
        let mut cfg = DesignConfig::new(test, analysis, design_h0, design_h1, k)?;
        let lo = self
            .args
            .indecisive_lo
            .clone()
            .or_else(|| self.file_value("indecisive-lo").map(str::to_string));
        let hi = self
            .args
            .indecisive_hi
            .clone()
            .or_else(|| self.file_value("indecisive-hi").map(str::to_string));
        if lo.is_some() || hi.is_some() {
            let (cur_lo, cur_hi) = cfg.indecisive_band();
            let lo = lo.map(|s| parse_ratio(&s)).transpose()?.unwrap_or(cur_lo);
            let hi = hi.map(|s| parse_ratio(&s)).transpose()?.unwrap_or(cur_hi);
            cfg = cfg.with_indecisive_band(lo, hi)?;
        }
        Ok(cfg)
    }

    pub fn design_config(&self) -> Result<DesignConfig, CliError> {
        self.build_config(self.k()?)
    }

    /// For `threshold`, where k is the quantity being searched for and any
    /// provided value is irrelevant.
    pub fn design_config_defaulting_k(&self) -> Result<DesignConfig, CliError> {
        let k = match &self.args.k {
            Some(s) => parse_ratio(s)?,
            None => match self.file_value("k") {
                Some(s) => parse_ratio(s)?,
                None => 0.5,
            },
        };
        self.build_config(k)
    }
}
