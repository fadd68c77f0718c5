use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "galcoh", version, about = "Desk-scale Galois cohomology with JSON output")]
pub struct Cli {
    /// Working precision for certified numerics.
    #[arg(long = "precision-bits", global = true, default_value_t = 160)]
    pub precision_bits: u32,
    /// JSON output (always on; accepted for compatibility).
    #[arg(long, global = true, default_value_t = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational polynomials.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Etale algebras.
    #[command(subcommand)]
    Etale(EtaleCmd),
    /// Permutation groups and G-structures.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Group cohomology of finite modules.
    #[command(subcommand)]
    Coh(CohCmd),
    /// Kummer-type codecs for H^1.
    #[command(subcommand)]
    H1(H1Cmd),
    /// Local symbols and pairings.
    #[command(subcommand)]
    Local(LocalCmd),
    /// Corpus runners.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Args, Debug)]
pub struct PolyArg {
    /// Ascending coefficients, e.g. "7,0,-6,0,1".
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Irreducible factors with multiplicities.
    Factor(PolyArg),
    /// Discriminant and its square class.
    Disc(PolyArg),
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// A polynomial, or factors joined by '|'.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
}

#[derive(Args, Debug)]
pub struct TorsorArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Group name (C4, V4, S3, ...) or "n:(cycles),(cycles)".
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum EtaleCmd {
    /// Factors, discriminant class, Galois tag and resolvents.
    Info(AlgebraArg),
    /// The mirror of a D4 quartic field.
    Mirror(AlgebraArg),
    /// Galois closure (degree at most 3).
    Closure(AlgebraArg),
    /// Whether the algebra is a torsor for a group.
    Torsor(TorsorArgs),
}

#[derive(Args, Debug)]
pub struct ModuleArg {
    /// Abelian group such as C4 or C2xC2.
    #[arg(long)]
    pub module: String,
}

#[derive(Args, Debug)]
pub struct GroupArg {
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct StructuresArgs {
    /// Galois image.
    #[arg(long)]
    pub image: String,
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Holomorph of an abelian group as a permutation group.
    Hol(ModuleArg),
    /// Count G-structures on an algebra with the given Galois image.
    Structures(StructuresArgs),
    /// Centralizer in the full symmetric group.
    Centralizer(GroupArg),
    /// Partitions of the points stable under the group.
    Partitions(GroupArg),
}

#[derive(Args, Debug)]
pub struct GModuleArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub module: String,
    /// triv, sign, inversion or perm.
    #[arg(long, default_value = "triv")]
    pub action: String,
}

#[derive(Args, Debug)]
pub struct CohArgs {
    #[command(flatten)]
    pub gm: GModuleArgs,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct Lemma53Args {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 53)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CohCmd {
    /// H^n(G, M) for n <= 2.
    H(CohArgs),
    /// H^1 matched against lifts of the action to Hol M.
    #[command(name = "hol-h1")]
    HolH1(GModuleArgs),
    /// Corestriction identity on random instances.
    Lemma53(Lemma53Args),
}

#[derive(Subcommand, Debug)]
pub enum H1Cmd {
    /// Order-3 modules: cubic algebras.
    #[command(subcommand)]
    C3(C3Cmd),
    /// Klein four modules: quartics with a given cubic resolvent.
    #[command(subcommand)]
    V4(V4Cmd),
    /// Cyclic order-4 modules: (alpha, c) data.
    #[command(subcommand)]
    C4(C4Cmd),
}

#[derive(Args, Debug)]
pub struct C3Args {
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: String,
    /// Coordinates "x,y" of x + y sqrt(-3D).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, allow_hyphen_values = true)]
    pub delta2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum C3Cmd {
    Encode(C3Args),
    Decode(AlgebraArg),
    /// Sum of two classes, with the certified numeric check.
    Add(C3Args),
}

#[derive(Args, Debug)]
pub struct V4Args {
    /// Cubic algebra as factors "f1|f2|f3".
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: String,
    /// One coordinate per factor of R, "d1|d2|d3", each a polynomial in y.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, allow_hyphen_values = true)]
    pub delta2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum V4Cmd {
    Encode(V4Args),
    Decode(AlgebraArg),
    Add(V4Args),
}

#[derive(Args, Debug)]
pub struct C4Args {
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum C4Cmd {
    Encode(C4Args),
    Decode(AlgebraArg),
    Add(C4Args),
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    /// A prime or "inf".
    #[arg(long)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Args, Debug)]
pub struct TateArgs {
    /// c3 or v4.
    #[arg(long)]
    pub module: String,
    #[arg(long)]
    pub p: String,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: Option<String>,
    /// c3: "x,y" in Q[sqrt(-3D)]; v4: "a1,a2,a3".
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// c3: "x,y" in Q[sqrt D]; v4: "b1,b2,b3".
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct LocalH1Args {
    /// c2, mu3, c3 or v4.
    #[arg(long)]
    pub module: String,
    #[arg(long)]
    pub p: String,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: Option<String>,
}

#[derive(Args, Debug)]
pub struct ClassesArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
}

#[derive(Subcommand, Debug)]
pub enum LocalCmd {
    /// Quadratic Hilbert symbol at a place.
    Hilbert(HilbertArgs),
    /// Local pairing value, or the full pairing report.
    Tate(TateArgs),
    /// Enumerate local H^1.
    H1(LocalH1Args),
    /// Representatives of Q_p^x modulo m-th powers.
    Classes(ClassesArgs),
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// Run one named suite.
    Run(CorpusArgs),
    /// Names of the suites.
    List,
}
