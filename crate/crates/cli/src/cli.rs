use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ybd", version, about = "Exact multiparameter quantum gl(N) R-matrices and their deformations")]
#[command(after_help = "Exit codes: 0 success or all checks pass, 1 a check failed, 2 usage or input error.")]
pub struct Cli {
    /// Write the structured JSON report here
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run without the thread pool
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parameter files: validate, show, sample
    #[command(subcommand)]
    Params(ParamsCmd),
    /// Build operators
    #[command(subcommand)]
    Build(BuildCmd),
    /// Structural checks on P, R and r
    #[command(subcommand)]
    Check(CheckCmd),
    /// Quadratic relations xx(P - 1) = 0, tt(P + a) = 0, a x t = t x P
    Relations(RelationsArgs),
    /// Elementary deformations and the first-order oracle
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Classical limit a = 1 + h, q^{ij} = 1 + h p^{ij}, R = 1 - h r
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// Esoteric quantum gl(2n-1)
    #[command(subcommand)]
    Esoteric(EsotericCmd),
}

#[derive(Args, Debug, Clone)]
pub struct ParamsFile {
    /// Parameter file {"n", "a", "q": [{"i","j","val"}]}
    #[arg(long)]
    pub params: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum ParamsCmd {
    /// Check that q^{ij} != 0 and a is not 0 or -1
    Validate(ParamsFile),
    /// Print the parameters with q^{ji} = 1/q^{ij} filled in
    Show(ParamsFile),
    /// Sample rational q^{ij} with numerators and denominators in 1..=bound
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        a: String,
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct EsotericArgs {
    /// Esoteric spec file {"n", "q", "mu"}
    #[arg(long, conflicts_with_all = ["n", "q", "mu"])]
    pub spec: Option<PathBuf>,
    /// Half-dimension; the vector space has dimension 2n - 1
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// mu_1, ..., mu_{n-1}, comma separated
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub mu: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Form {
    P,
    R,
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// Standard P: (i,j) -> q^{ji} (j,i) + (1-a)(i,j), (j,i) -> a q^{ij} (i,j), (i,i) -> (i,i)
    Standard {
        #[command(flatten)]
        params: ParamsFile,
        #[arg(long, value_enum, default_value = "p")]
        form: Form,
    },
    /// Esoteric R = R0 + R1 with mu'_i = -q^{2(i-n)} mu_i
    Esoteric {
        #[command(flatten)]
        spec: EsotericArgs,
        #[arg(long, value_enum, default_value = "r")]
        form: Form,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum BraidFormArg {
    /// P12 P23 P12 = P23 P12 P23
    Braid,
    /// R12 R13 R23 = R23 R13 R12, on R converted from P
    Qybe,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Deformation spec file
    #[arg(long = "spec", conflicts_with_all = ["principal", "exceptional"])]
    pub file: Option<PathBuf>,
    #[arg(long, conflicts_with = "exceptional")]
    pub principal: bool,
    #[arg(long)]
    pub exceptional: bool,
    #[arg(long)]
    pub case: Option<u8>,
    #[arg(long)]
    pub i: Option<u8>,
    #[arg(long)]
    pub j: Option<u8>,
    #[arg(long)]
    pub k: Option<u8>,
    #[arg(long, value_parser = ["upper", "lower"])]
    pub side: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub amplitude: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassicalFile {
    /// Classical parameter file {"n", "p": [{"i","j","val"}], "epsilon"}
    #[arg(long)]
    pub classical: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// (P - 1)(P + a) = 0
    Hecke(ParamsFile),
    /// P12 P23 P12 = P23 P12 P23, or R12 R13 R23 = R23 R13 R12
    Braid {
        #[command(flatten)]
        params: ParamsFile,
        #[arg(long, value_enum, default_value = "braid")]
        form: BraidFormArg,
    },
    /// braid_123 (P12 - 1) = 0 and braid_123 (P12 + a) = 0
    Theorem2(ParamsFile),
    /// (prod_i q^{ij})^2 a^{2j} = a^{N+1} for every j
    Sl(ParamsFile),
    /// [r12, r13] + [r12, r23] + [r13, r23] = 0
    Cybe {
        /// Operator file holding r
        #[arg(long, conflicts_with = "classical")]
        op: Option<PathBuf>,
        /// Extract r from the classical limit instead
        #[arg(long)]
        classical: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// p^{lm} + p^{km} + p^{mi} + p^{mj} = d_m^j - d_m^i (sign flipped for case 2)
    Bd {
        #[command(flatten)]
        classical: ClassicalFile,
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Sector {
    Plane,
    Antiplane,
    Cross,
    All,
}

#[derive(Args, Debug)]
pub struct RelationsArgs {
    #[command(flatten)]
    pub params: ParamsFile,
    #[arg(long, value_enum, default_value = "all")]
    pub sector: Sector,
    /// Also report degree-3 dimensions of the plane and anti-plane algebras
    #[arg(long)]
    pub dims: bool,
}

#[derive(Subcommand, Debug)]
pub enum DeformCmd {
    /// Elementary P1: [in (k,l), out (j,i)] = mu, [in (l,k), out (i,j)] = -a hat_q^{ij} q^{kl} mu
    Build {
        #[command(flatten)]
        params: ParamsFile,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// q^{im} q^{jm} q^{mk} q^{ml} = a^{+-(d_mi - d_mj)}, then P + eps P1 exact for eps = 1, -1, 5
    Check {
        #[command(flatten)]
        params: ParamsFile,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Solve the multiplicative constraints over the exponent lattice
    Solve {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// First-order deformations P + e P1 modulo trivial ones (n <= 4)
    FirstOrder(ParamsFile),
    /// Representative with every entry on at least three distinct indices (a != 1)
    GaugeFix {
        #[command(flatten)]
        params: ParamsFile,
        /// Operator file holding P1
        #[arg(long)]
        p1: PathBuf,
    },
    /// Solvability of L(P2) = -Q(P1) at order e^2; P1 defaults to the first essential direction
    Obstruction {
        #[command(flatten)]
        params: ParamsFile,
        #[arg(long)]
        p1: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassicalCmd {
    /// r0 = sum_{i<j} M_j^i (x) M_i^j + diagonal part in p^{ij}
    R0(ClassicalFile),
    /// dr = M_k^i (x) M_l^j - M_l^j (x) M_k^i
    DeltaR {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// r read off R = 1 - h r + O(h^2), compared with r0 + eps dr
    Extract {
        #[command(flatten)]
        classical: ClassicalFile,
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum EsotericCmd {
    /// Braid and Hecke with a = q^2 on the esoteric R
    Check(EsotericArgs),
    /// Plane, anti-plane and cross relations against their expected deformed forms
    Relations(EsotericArgs),
    /// mu'_i = -q^{2(i-n)} mu_i, lambda_{ij} = (1-q^2) q^{2(i-j)} mu_i/mu_j, lambda'_{ij} = (q^2-1) mu_i/mu_j
    Coeffs(EsotericArgs),
}
