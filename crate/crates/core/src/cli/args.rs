use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::intersect::DEFAULT_TERM_BUDGET;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "bouquet", version, about = "Exact intersection-multiplicity experiments for superattracting germs")]
pub struct Cli {
    /// Seed for every generic draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest number of terms any composed polynomial may have.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Coefficients of a curve, or multiplicities between curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Exact checks of the identities and bounds of the curve family.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Builds a pair of sequences whose multiplicities outgrow a given function.
    Arnold(ArnoldArgs),
    /// Multiplicities mu(n) of pulled-back generic members.
    MuSeq(MuSeqArgs),
    /// Samuel multiplicity of an ideal.
    Samuel(SamuelArgs),
    /// Mixed multiplicity of two monomial ideals.
    Mixed(MixedArgs),
    /// Attraction rates c(f^n, nu).
    CSeq(CSeqArgs),
    /// Asymptotic attraction rate.
    CInf(CInfArgs),
    /// Intersection data and skewness of a proximity chart.
    Skewness(SkewnessArgs),
    /// Minimal linear recursion of an integer sequence.
    Recursion(RecursionArgs),
    /// mu(n), its recursion, c_inf and the two-sided growth check in one run.
    Pipeline(PipelineArgs),
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveCmd {
    /// Coefficients a_0 .. a_{n-1}.
    Coeffs {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Intersection multiplicity by the closed formula and coefficientwise.
    Mult {
        #[arg(long, required_unless_present = "pool")]
        a: Option<String>,
        #[arg(long, required_unless_present = "pool")]
        b: Option<String>,
        /// Every pair of the built-in sequence pool.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        pool: bool,
        /// Skip the coefficientwise value past this many coefficients.
        #[arg(long, default_value_t = 4096)]
        max_coeffs: usize,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCmd {
    Functoriality {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 2000)]
        n: usize,
    },
    Bound {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 2000)]
        n: usize,
    },
    Lemma {
        #[arg(long, default_value_t = 10_000)]
        n: u64,
    },
    /// On one pair, or on every pool pair when no pair is given.
    ShiftRecursion {
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        #[arg(long, default_value_t = 4096)]
        horizon: u64,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ArnoldArgs {
    /// pow:B, factorial, tower:B, const:C or table:PATH.
    #[arg(long)]
    pub nu: String,
    #[arg(long, default_value_t = 3)]
    pub witnesses: usize,
    #[arg(long, default_value_t = crate::cantor::DEFAULT_BIT_BUDGET)]
    pub bit_budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MuSeqArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long, default_value = "x, y")]
    pub ideal: String,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SamuelArgs {
    #[arg(long)]
    pub ideal: String,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MixedArgs {
    #[arg(long)]
    pub ideal_a: String,
    #[arg(long)]
    pub ideal_b: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CSeqArgs {
    #[arg(long)]
    pub map: String,
    /// Weights `s,t` of the monomial valuation.
    #[arg(long, default_value = "1,1")]
    pub nu: String,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CInfArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long, default_value_t = 6)]
    pub nmax: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SkewnessArgs {
    /// Chart as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub chart: String,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RecursionArgs {
    /// Comma-separated integers.
    #[arg(long)]
    pub seq: String,
    #[arg(long, default_value_t = 3)]
    pub max_order: usize,
    #[arg(long, default_value_t = 1)]
    pub holdout: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long, default_value = "x, y")]
    pub ideal: String,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    #[arg(long, default_value_t = 2)]
    pub max_order: usize,
}
