//! Serde model of the spec file.
//!
//! Named objects live in maps keyed by name; tasks refer to them by name. Complex numbers are
//! `[re, im]` pairs (a bare number is read as a real), matrices are row-major nested arrays and
//! group elements are referenced by label.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::linalg::{CMat, C64};

/// The whole spec document. Tasks are kept as raw JSON so each can be parsed with its own pointer.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub gradings: BTreeMap<String, GradingSpec>,
    #[serde(default)]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default)]
    pub graphs: BTreeMap<String, GraphSpec>,
    #[serde(default)]
    pub labelings: BTreeMap<String, LabelingSpec>,
    #[serde(default)]
    pub tasks: Vec<Value>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Complex {
    Real(f64),
    Pair([f64; 2]),
}

impl Complex {
    pub fn value(self) -> C64 {
        match self {
            Complex::Real(x) => C64::new(x, 0.0),
            Complex::Pair([re, im]) => C64::new(re, im),
        }
    }
}

/// Row-major nested array.
#[derive(Debug, Clone, Deserialize)]
#[serde(transparent)]
pub struct MatrixSpec(pub Vec<Vec<Complex>>);

impl MatrixSpec {
    pub fn to_matrix(&self) -> Result<CMat, String> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if self.0.iter().any(|r| r.len() != cols) {
            return Err("rows have different lengths".into());
        }
        Ok(CMat::from_fn(rows, cols, |i, j| self.0[i][j].value()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    /// `table[i][j]` is the label of `labels[i]·labels[j]`.
    Table { labels: Vec<String>, table: Vec<Vec<String>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// `⊕ M_{d_k}`.
    Blocks { dims: Vec<usize> },
    Matrices { n: usize },
    Diagonal { n: usize },
    GroupAlgebra { group: String },
    FunctionAlgebra { group: String },
    /// The subalgebra of `⊕ M_{d_k}` spanned by the given elements.
    Span { dims: Vec<usize>, elements: Vec<ElementSpec> },
}

/// An algebra element: explicit blocks, coordinates in the algebra's basis, a basis element, or
/// a vertex projection of a graph's vertex algebra.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Blocks { blocks: Vec<MatrixSpec> },
    Coords { coords: Vec<Complex> },
    Basis { basis: usize },
    Vertex { vertex: String },
}

/// A module vector: coordinates, a basis vector, or an edge of a graph correspondence.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Coords { coords: Vec<Complex> },
    Basis { basis: usize },
    Edge { edge: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingPart {
    pub degree: String,
    pub basis: Vec<ElementSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GradingSpec {
    /// `span{u_s}` in degree `s` on a group algebra.
    Canonical { algebra: String },
    Trivial { algebra: String, group: String },
    Explicit { algebra: String, group: String, parts: Vec<GradingPart> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    /// Translation on a function algebra.
    Translation { algebra: String },
    /// The dual action of a cyclic group on its group algebra.
    Dual { algebra: String },
    Trivial { algebra: String, group: String },
    /// `α_s = Ad u_s`, one unitary per group element in label order.
    Inner { algebra: String, group: String, unitaries: Vec<MatrixSpec> },
    /// A graph action; each map sends names to names, omitted entries are fixed.
    Graph {
        graph: String,
        group: String,
        #[serde(default)]
        vertices: BTreeMap<String, BTreeMap<String, String>>,
        #[serde(default)]
        edges: BTreeMap<String, BTreeMap<String, String>>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Explicit {
        vertices: Vec<String>,
        #[serde(default)]
        edges: Vec<EdgeSpec>,
    },
    SkewProduct { e: String, action: String, f: String, labeling: String },
}

/// Edge labels; omitted edges carry the identity.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingSpec {
    pub graph: String,
    pub group: String,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CorrSpec {
    Graph { graph: String },
    OverItself { algebra: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CorrActionSpec {
    /// Lift of a graph action to the graph correspondence.
    GraphLift { action: String },
    Trivial { group: String },
    /// An algebra action on a correspondence over itself.
    Algebra { action: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CorrGradingSpec {
    /// Edge degrees from a labeling, trivial on coefficients.
    Labeling { labeling: String },
    Trivial { group: String },
    /// An algebra grading on a correspondence over itself.
    Algebra { grading: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepSpec {
    Fock { corr: CorrSpec, level: usize },
    Ck { graph: String },
    PathToeplitz { graph: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualPart {
    pub degree: i64,
    pub basis: Vec<ElementSpec>,
}

/// A grading by the dual group, on the `A` or `B` factor of a twisted algebra.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DualGradingSpec {
    /// Read a cyclic-group grading as a grading by the dual group.
    FromCyclic { grading: String },
    Circle { parts: Vec<DualPart> },
    Cyclic { order: usize, parts: Vec<DualPart> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LevelSpec {
    Coeff { element: ElementSpec },
    Word { vectors: Vec<VectorSpec> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub x0: Vec<VectorSpec>,
    pub a: ElementSpec,
    pub x0p: LevelSpec,
    pub ap: ElementSpec,
    pub y1: Vec<VectorSpec>,
    pub y2: LevelSpec,
    pub y1p: LevelSpec,
    pub y2p: LevelSpec,
}

/// `θ_{x,x'} ⊠ θ_{y,y'}` data.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSpec {
    pub x: VectorSpec,
    pub xp: VectorSpec,
    pub y: VectorSpec,
    pub yp: VectorSpec,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
}

/// One task. Shared argument groups are flattened into the task object.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskSpec {
    MakeCyclicGroup { order: usize, expect_table: Option<Vec<Vec<usize>>> },
    Multiply { algebra: String, a: ElementSpec, b: ElementSpec, expect: Option<ElementSpec> },
    Involution { algebra: String, a: ElementSpec, expect: Option<ElementSpec> },
    OperatorNorm { algebra: String, a: ElementSpec, expect: Option<f64> },
    GroupAlgebra { group: String },
    FunctionAlgebra { group: String },
    VerifyAction { action: String },
    VerifyGrading { grading: String },
    HomogeneousDecomposition { grading: String, element: ElementSpec },

    Theta { corr: CorrSpec, x: VectorSpec, y: VectorSpec },
    AdjointOf { corr: CorrSpec, matrix: MatrixSpec, expect_adjointable: Option<bool> },
    LinkingAlgebra { corr: CorrSpec },
    KatsuraIdeal { corr: CorrSpec, expect_dim: Option<usize> },
    IsKatsuraNondegenerate { corr: CorrSpec, expect: Option<bool> },
    IsFull { corr: CorrSpec, expect: Option<bool> },
    VerifyCorrespondenceIsomorphism { corr: CorrSpec },

    HeisenbergModel { group: String },
    TwistedAlgebra {
        action: String,
        grading: String,
        expect_dim: Option<usize>,
        expect_signature: Option<Vec<usize>>,
        expect_center_dim: Option<usize>,
    },
    TwistedCorrespondence { x: CorrSpec, x_action: CorrActionSpec, y: CorrSpec, y_grading: CorrGradingSpec },
    TwistedGeneratingSystem { x: CorrSpec, x_action: CorrActionSpec, y: CorrSpec, y_grading: CorrGradingSpec },
    GradedTensorProduct {
        x: CorrSpec,
        x_grading: CorrGradingSpec,
        parity: String,
        y: CorrSpec,
        y_grading: CorrGradingSpec,
        expect_signature: Option<Vec<usize>>,
    },
    CrossedByAction { x: CorrSpec, x_action: CorrActionSpec },
    CrossedByCoaction { y: CorrSpec, y_grading: CorrGradingSpec },
    FlipSigma23 { action: String, grading: String, c: String },

    BalancedSubalgebra {
        action: String,
        grading: String,
        a_grading: DualGradingSpec,
        b_grading: DualGradingSpec,
        expect_dim: Option<usize>,
    },
    LambdaAction { action: String, grading: String, a_grading: DualGradingSpec, b_grading: DualGradingSpec, turn: f64 },
    ConditionalExpectation { action: String, grading: String, a_grading: DualGradingSpec, b_grading: DualGradingSpec },
    InducedActionCheck { action: String, grading: String, a_grading: DualGradingSpec, b_grading: DualGradingSpec },
    SaturationCheck {
        action: String,
        grading: String,
        a_grading: DualGradingSpec,
        b_grading: DualGradingSpec,
        #[serde(default)]
        expect: Expect,
    },

    SkewProduct {
        e: String,
        action: String,
        f: String,
        labeling: String,
        expect_vertices: Option<usize>,
        expect_edges: Option<usize>,
    },
    GraphCorrespondence { graph: String },
    GraphActionLift { graph: String, action: String },
    LabelingGrading { graph: String, labeling: String },
    GraphKatsuraIdeal { graph: String },
    GraphRegularityReport {
        graph: String,
        expect_nondegenerate: Option<bool>,
        expect_full: Option<bool>,
    },
    IdealCompatibilityCheck { e: String, action: String, f: String, labeling: String },
    VerifyGraphProductIsomorphism { e: String, action: String, f: String, labeling: String },
    GraphIo { graph: String, labeling: Option<String> },
    RandomGraphProducts {
        count: usize,
        #[serde(default = "default_max_vertices")]
        max_vertices: usize,
        #[serde(default = "default_max_edges")]
        max_edges: usize,
    },

    TensorPower { corr: CorrSpec, n: usize, expect_dim: Option<usize> },
    FockToeplitzRep { corr: CorrSpec, level: usize },
    PsiN { rep: RepSpec, n: usize },
    PsiParenN { rep: RepSpec, n: usize },
    CpCovarianceDefect { rep: RepSpec, expect: Option<f64> },
    CkRepresentation { graph: String, expect_dim: Option<usize> },
    ProductRepresentation { e: String, action: String, f: String, labeling: String },
    CompactsProductCheck {
        e: String,
        action: String,
        f: String,
        labeling: String,
        s: [VectorSpec; 2],
        t: [VectorSpec; 2],
        thetas: Vec<ThetaSpec>,
    },
    CpProductCheck { e: String, action: String, f: String, labeling: String },
    GeneratorFactorizationCheck { e: String, action: String, f: String, labeling: String, data: GeneratorSpec },
}

fn default_max_vertices() -> usize {
    4
}

fn default_max_edges() -> usize {
    6
}

impl TaskSpec {
    /// The `task` tag.
    pub fn name(&self) -> &'static str {
        use TaskSpec::*;
        match self {
            MakeCyclicGroup { .. } => "make_cyclic_group",
            Multiply { .. } => "multiply",
            Involution { .. } => "involution",
            OperatorNorm { .. } => "operator_norm",
            GroupAlgebra { .. } => "group_algebra",
            FunctionAlgebra { .. } => "function_algebra",
            VerifyAction { .. } => "verify_action",
            VerifyGrading { .. } => "verify_grading",
            HomogeneousDecomposition { .. } => "homogeneous_decomposition",
            Theta { .. } => "theta",
            AdjointOf { .. } => "adjoint_of",
            LinkingAlgebra { .. } => "linking_algebra",
            KatsuraIdeal { .. } => "katsura_ideal",
            IsKatsuraNondegenerate { .. } => "is_katsura_nondegenerate",
            IsFull { .. } => "is_full",
            VerifyCorrespondenceIsomorphism { .. } => "verify_correspondence_isomorphism",
            HeisenbergModel { .. } => "heisenberg_model",
            TwistedAlgebra { .. } => "twisted_algebra",
            TwistedCorrespondence { .. } => "twisted_correspondence",
            TwistedGeneratingSystem { .. } => "twisted_generating_system",
            GradedTensorProduct { .. } => "graded_tensor_product",
            CrossedByAction { .. } => "crossed_by_action",
            CrossedByCoaction { .. } => "crossed_by_coaction",
            FlipSigma23 { .. } => "flip_sigma23",
            BalancedSubalgebra { .. } => "balanced_subalgebra",
            LambdaAction { .. } => "lambda_action",
            ConditionalExpectation { .. } => "conditional_expectation",
            InducedActionCheck { .. } => "induced_action_check",
            SaturationCheck { .. } => "saturation_check",
            SkewProduct { .. } => "skew_product",
            GraphCorrespondence { .. } => "graph_correspondence",
            GraphActionLift { .. } => "graph_action_lift",
            LabelingGrading { .. } => "labeling_grading",
            GraphKatsuraIdeal { .. } => "graph_katsura_ideal",
            GraphRegularityReport { .. } => "graph_regularity_report",
            IdealCompatibilityCheck { .. } => "ideal_compatibility_check",
            VerifyGraphProductIsomorphism { .. } => "verify_graph_product_isomorphism",
            GraphIo { .. } => "graph_io",
            RandomGraphProducts { .. } => "random_graph_products",
            TensorPower { .. } => "tensor_power",
            FockToeplitzRep { .. } => "fock_toeplitz_rep",
            PsiN { .. } => "psi_n",
            PsiParenN { .. } => "psi_paren_n",
            CpCovarianceDefect { .. } => "cp_covariance_defect",
            CkRepresentation { .. } => "ck_representation",
            ProductRepresentation { .. } => "product_representation",
            CompactsProductCheck { .. } => "compacts_product_check",
            CpProductCheck { .. } => "cp_product_check",
            GeneratorFactorizationCheck { .. } => "generator_factorization_check",
        }
    }
}
