//! Singularities of planar holomorphic foliations: linear-part
//! classification, point blow-ups, Seidenberg reduction, saddle-node
//! multiplicity and the tangency count along an invariant line.
//!
//! A germ is a pair `(P, Q)` of polynomials in `(x, y)` vanishing at the
//! origin, standing for `P ∂x + Q ∂y`, optionally known only up to a jet order.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{qi, rational_roots, Monomial, MultiPoly, Rational, UniPoly};

pub const VARS: [&str; 2] = ["x", "y"];

type Poly = MultiPoly<Rational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoliationError {
    #[error("the vector field does not vanish at the origin")]
    NotSingular,
    #[error("the germ is not a saddle-node")]
    NotSaddleNode,
    #[error("singular direction on the exceptional divisor is irrational: root of {factor}")]
    IrrationalDirection { factor: String },
    #[error("the line is not invariant (normal component {normal} does not vanish on it)")]
    NotInvariant { normal: String },
    #[error("singular point on the line is irrational: root of {factor}")]
    IrrationalSingularity { factor: String },
    #[error("the line consists of singular points")]
    LineOfSingularities,
    #[error("degenerate line equation")]
    DegenerateLine,
    #[error("jet order {0} is too low to determine a linear part")]
    InsufficientJet(u32),
}

/// `P ∂x + Q ∂y` near the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldGerm {
    pub p: Poly,
    pub q: Poly,
    /// Terms of total degree above this order are unknown; `None` means the
    /// components are exact polynomials.
    pub jet_order: Option<u32>,
}

impl VectorFieldGerm {
    pub fn new(p: Poly, q: Poly, jet_order: Option<u32>) -> Result<Self, FoliationError> {
        if let Some(n) = jet_order {
            if n < 1 {
                return Err(FoliationError::InsufficientJet(n));
            }
        }
        let (p, q) = match jet_order {
            Some(n) => (p.truncate(n), q.truncate(n)),
            None => (p, q),
        };
        if !p.coeff(&Monomial::one()).is_zero() || !q.coeff(&Monomial::one()).is_zero() {
            return Err(FoliationError::NotSingular);
        }
        Ok(VectorFieldGerm { p, q, jet_order })
    }

    pub fn polynomial(p: Poly, q: Poly) -> Result<Self, FoliationError> {
        Self::new(p, q, None)
    }

    /// `[[∂P/∂x, ∂P/∂y], [∂Q/∂x, ∂Q/∂y]]` at the origin.
    pub fn linear_part(&self) -> [[Rational; 2]; 2] {
        let c = |f: &Poly, i: usize| f.coeff(&Monomial::var(i));
        [[c(&self.p, 0), c(&self.p, 1)], [c(&self.q, 0), c(&self.q, 1)]]
    }

    /// Vanishing order `ν` of the pair at the origin; `None` if both vanish.
    pub fn order(&self) -> Option<u32> {
        match (self.p.min_degree(), self.q.min_degree()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Applies `(x, y) ↦ (images[0], images[1])` with the linear map `inv`
    /// on the components: new field `= inv · (P, Q)∘images`.
    fn transform(&self, images: &[Poly; 2], inv: &[[Rational; 2]; 2]) -> (Poly, Poly) {
        let p = self.p.compose(images);
        let q = self.q.compose(images);
        (
            p.scale(&inv[0][0]) + q.scale(&inv[0][1]),
            p.scale(&inv[1][0]) + q.scale(&inv[1][1]),
        )
    }

    pub fn display(&self) -> String {
        format!("({}) d/dx + ({}) d/dy", self.p.display_with(&VARS), self.q.display_with(&VARS))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingTag {
    NonReduced,
    ReducedNondegenerate,
    SaddleNode,
}

impl SingTag {
    pub fn is_reduced(self) -> bool {
        self != SingTag::NonReduced
    }

    pub fn label(self) -> &'static str {
        match self {
            SingTag::NonReduced => "non-reduced",
            SingTag::ReducedNondegenerate => "reduced-nondegenerate",
            SingTag::SaddleNode => "saddle-node",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingClass {
    pub tag: SingTag,
    pub trace: Rational,
    pub det: Rational,
    /// `λ₁/λ₂` with `|λ₁| ≤ |λ₂|`, when both eigenvalues are rational and
    /// not both zero.
    pub ratio: Option<Rational>,
}

/// Square root in `Q`, if it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Classification from a linear part alone.
pub fn classify_linear(j: &[[Rational; 2]; 2]) -> SingClass {
    let trace = &j[0][0] + &j[1][1];
    let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
    let is_zero_matrix = j.iter().flatten().all(Zero::is_zero);
    let (tag, ratio) = if is_zero_matrix {
        (SingTag::NonReduced, None)
    } else if det.is_zero() {
        if trace.is_zero() {
            // nilpotent: both eigenvalues vanish
            (SingTag::NonReduced, None)
        } else {
            (SingTag::SaddleNode, Some(Rational::zero()))
        }
    } else {
        let disc = &trace * &trace - qi(4) * &det;
        match rational_sqrt(&disc) {
            Some(r) => {
                let two = qi(2);
                let l1 = (&trace + &r) / &two;
                let l2 = (&trace - &r) / &two;
                let (small, big) = if l1.abs() <= l2.abs() { (l1, l2) } else { (l2, l1) };
                let ratio = small / big;
                let tag = if ratio.is_positive() { SingTag::NonReduced } else { SingTag::ReducedNondegenerate };
                (tag, Some(ratio))
            }
            None => (SingTag::ReducedNondegenerate, None),
        }
    };
    SingClass { tag, trace, det, ratio }
}

pub fn classify(v: &VectorFieldGerm) -> Result<SingClass, FoliationError> {
    if !v.p.coeff(&Monomial::one()).is_zero() || !v.q.coeff(&Monomial::one()).is_zero() {
        return Err(FoliationError::NotSingular);
    }
    Ok(classify_linear(&v.linear_part()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `(x, y) = (x, x t)`, exceptional divisor `{x = 0}`, coordinates `(x, t)`.
    First,
    /// `(x, y) = (s y, y)`, exceptional divisor `{y = 0}`, coordinates `(s, y)`.
    Second,
}

/// A singular point of the blown-up foliation on the exceptional divisor,
/// with the germ recentred there.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowUpCenter {
    pub chart: Chart,
    /// `t` (first chart) or `s = 0` (second chart).
    pub position: Rational,
    pub germ: VectorFieldGerm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowUp {
    /// `ν`.
    pub order: u32,
    /// `y P_ν - x Q_ν ≡ 0`.
    pub dicritical: bool,
    /// Power of the exceptional equation divided out of the first
    /// coordinate's component: `ν - 1`, or `ν` when dicritical.
    pub division_exponent: u32,
    /// Uncentred first-chart field `(ẋ, ṫ)`.
    pub chart1: (Poly, Poly),
    /// Uncentred second-chart field `(ṡ, ẏ)`.
    pub chart2: (Poly, Poly),
    pub centers: Vec<BlowUpCenter>,
    /// Factors of the singular-point polynomial on the exceptional divisor
    /// with no rational root.
    pub irrational: Vec<UniPoly<Rational>>,
    pub jet_order: Option<u32>,
}

impl BlowUp {
    /// `x^e · (ẋ, t ẋ + x ṫ)` in the first chart, which equals
    /// `(P(x, xt), Q(x, xt))`.
    pub fn pushforward_chart1(&self) -> (Poly, Poly) {
        let x = Poly::var(0);
        let t = Poly::var(1);
        let xe = Monomial::new(vec![self.division_exponent]);
        let (dx, dt) = &self.chart1;
        let p = dx.mul_monomial(&xe);
        let q = (t * dx.clone() + x * dt.clone()).mul_monomial(&xe);
        (p, q)
    }

    /// `y^e · (s ẏ + y ṡ, ẏ)` in the second chart, which equals
    /// `(P(sy, y), Q(sy, y))`.
    pub fn pushforward_chart2(&self) -> (Poly, Poly) {
        let s = Poly::var(0);
        let y = Poly::var(1);
        let ye = Monomial::new(vec![0, self.division_exponent]);
        let (ds, dy) = &self.chart2;
        let p = (s * dy.clone() + y * ds.clone()).mul_monomial(&ye);
        let q = dy.mul_monomial(&ye);
        (p, q)
    }
}

fn restrict_to_axis(f: &Poly, var: usize) -> UniPoly<Rational> {
    // keep terms free of x_var, as a polynomial in the other variable
    let other = 1 - var;
    let mut coeffs: Vec<Rational> = Vec::new();
    for (m, c) in f.terms() {
        if m.exp(var) == 0 {
            let k = m.exp(other) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
    }
    UniPoly::new(coeffs)
}

/// Divides out a common monomial factor. Only exact fields are saturated,
/// since a truncated jet says nothing about divisibility of its tail.
fn saturate(p: Poly, q: Poly) -> (Poly, Poly) {
    let g = match (p.is_zero(), q.is_zero()) {
        (true, _) => q.monomial_content(),
        (_, true) => p.monomial_content(),
        _ => p.monomial_content().gcd(&q.monomial_content()),
    };
    if g.is_one() {
        return (p, q);
    }
    (p.div_monomial(&g).unwrap(), q.div_monomial(&g).unwrap())
}

/// The recentred field at a candidate point, or `None` if the foliation is
/// regular there.
fn centred_germ(p: Poly, q: Poly, jet: Option<u32>) -> Option<VectorFieldGerm> {
    let (p, q) = match jet {
        Some(n) => (p.truncate(n), q.truncate(n)),
        None => saturate(p, q),
    };
    VectorFieldGerm::new(p, q, jet).ok()
}

/// One point blow-up at the origin, returning every singular point on the
/// exceptional divisor with a rational coordinate. Irrational directions are
/// collected in [`BlowUp::irrational`] rather than raised.
pub fn blow_up_partial(v: &VectorFieldGerm) -> Result<BlowUp, FoliationError> {
    classify(v)?;
    let nu = v.order().ok_or(FoliationError::NotSingular)?;
    let (p_nu, q_nu) = (v.p.homogeneous_part(nu), v.q.homogeneous_part(nu));
    let x = Poly::var(0);
    let y = Poly::var(1);
    let tangency = y.clone() * p_nu - x.clone() * q_nu;
    let dicritical = tangency.is_zero();
    let e = if dicritical { nu } else { nu - 1 };

    let new_jet = match v.jet_order {
        Some(n) => {
            let m = n as i64 - e as i64 - 1;
            if m < 1 {
                return Err(FoliationError::InsufficientJet(m.max(0) as u32));
            }
            Some(m as u32)
        }
        None => None,
    };

    // chart 1, variables (x, t) = (x0, x1)
    let t = Poly::var(1);
    let xt = x.clone() * t.clone();
    let p1 = v.p.compose(&[x.clone(), xt.clone()]);
    let q1 = v.q.compose(&[x.clone(), xt]);
    let dx = p1.div_monomial(&Monomial::new(vec![e])).expect("order bookkeeping");
    let dt = (q1 - t.clone() * p1)
        .div_monomial(&Monomial::new(vec![e + 1]))
        .expect("order bookkeeping");

    // chart 2, variables (s, y) = (x0, x1)
    let s = Poly::var(0);
    let sy = s.clone() * y.clone();
    let p2 = v.p.compose(&[sy.clone(), y.clone()]);
    let q2 = v.q.compose(&[sy, y]);
    let dy = q2.div_monomial(&Monomial::new(vec![0, e])).expect("order bookkeeping");
    let ds = (p2 - s * q2)
        .div_monomial(&Monomial::new(vec![0, e + 1]))
        .expect("order bookkeeping");

    let mut centers = Vec::new();
    let mut irrational = Vec::new();

    let a = restrict_to_axis(&dx, 0);
    let b = restrict_to_axis(&dt, 0);
    let g = match (a.is_zero(), b.is_zero()) {
        (true, true) => unreachable!("exceptional divisor cannot be pointwise singular after saturation"),
        (true, false) => b.monic(),
        (false, true) => a.monic(),
        (false, false) => a.gcd(&b),
    };
    if g.degree().unwrap_or(0) > 0 {
        let (roots, rest) = rational_roots(&g);
        for (r, _) in roots {
            let images = [Poly::var(0), Poly::var(1) + Poly::constant(r.clone())];
            if let Some(germ) = centred_germ(dx.compose(&images), dt.compose(&images), new_jet) {
                centers.push(BlowUpCenter { chart: Chart::First, position: r, germ });
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            irrational.push(rest);
        }
    }

    // the one point of the divisor not seen by chart 1
    if let Some(germ) = centred_germ(ds.clone(), dy.clone(), new_jet) {
        centers.push(BlowUpCenter { chart: Chart::Second, position: Rational::zero(), germ });
    }

    Ok(BlowUp {
        order: nu,
        dicritical,
        division_exponent: e,
        chart1: (dx, dt),
        chart2: (ds, dy),
        centers,
        irrational,
        jet_order: new_jet,
    })
}

/// Like [`blow_up_partial`], but an irrational singular direction is an error.
pub fn blow_up(v: &VectorFieldGerm) -> Result<BlowUp, FoliationError> {
    let b = blow_up_partial(v)?;
    if let Some(f) = b.irrational.first() {
        return Err(FoliationError::IrrationalDirection { factor: f.display_with("t") });
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    /// Reduced singularity.
    Leaf,
    /// Blown up; children are the singular points on the exceptional divisor.
    Blown {
        order: u32,
        dicritical: bool,
        division_exponent: u32,
        children: Vec<BlowUpNode>,
        irrational: Vec<UniPoly<Rational>>,
    },
    /// Not reduced, but the depth bound stopped the recursion.
    DepthLimit,
    /// Not reduced, and the known jet is too short to blow up again.
    InsufficientJet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowUpNode {
    /// `None` at the root.
    pub center: Option<(Chart, Rational)>,
    pub depth: u32,
    pub germ: VectorFieldGerm,
    pub class: SingClass,
    pub kind: NodeKind,
}

impl BlowUpNode {
    /// Nodes without children, including unresolved ones.
    pub fn leaves(&self) -> Vec<&BlowUpNode> {
        match &self.kind {
            NodeKind::Blown { children, .. } => children.iter().flat_map(|c| c.leaves()).collect(),
            _ => vec![self],
        }
    }

    pub fn height(&self) -> u32 {
        match &self.kind {
            NodeKind::Blown { children, .. } => {
                children.iter().map(|c| c.height()).max().unwrap_or(self.depth + 1).max(self.depth + 1)
            }
            _ => self.depth,
        }
    }

    /// Number of irrational directions anywhere in the subtree.
    pub fn irrational_count(&self) -> usize {
        match &self.kind {
            NodeKind::Blown { children, irrational, .. } => {
                irrational.len() + children.iter().map(|c| c.irrational_count()).sum::<usize>()
            }
            _ => 0,
        }
    }

    pub fn blow_up_count(&self) -> usize {
        match &self.kind {
            NodeKind::Blown { children, .. } => 1 + children.iter().map(|c| c.blow_up_count()).sum::<usize>(),
            _ => 0,
        }
    }

    /// Indented one-line-per-node rendering.
    pub fn render(&self, out: &mut String) {
        let indent = "  ".repeat(self.depth as usize);
        let at = match &self.center {
            None => "origin".to_string(),
            Some((Chart::First, r)) => format!("chart1 t={r}"),
            Some((Chart::Second, r)) => format!("chart2 s={r}"),
        };
        let ratio = self.class.ratio.as_ref().map(|r| format!(" lambda={r}")).unwrap_or_default();
        let status = match &self.kind {
            NodeKind::Leaf => "leaf".to_string(),
            NodeKind::Blown { order, dicritical, division_exponent, irrational, .. } => {
                let mut s = format!("blow-up nu={order} e={division_exponent}");
                if *dicritical {
                    s.push_str(" dicritical");
                }
                for f in irrational {
                    s.push_str(&format!(" irrational[{}]", f.display_with("t")));
                }
                s
            }
            NodeKind::DepthLimit => "depth-limit".to_string(),
            NodeKind::InsufficientJet => "insufficient-jet".to_string(),
        };
        out.push_str(&format!(
            "{indent}{at}: {} [{}{ratio}] {status}\n",
            self.germ.display(),
            self.class.tag.label()
        ));
        if let NodeKind::Blown { children, .. } = &self.kind {
            for c in children {
                c.render(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowUpTree {
    pub root: BlowUpNode,
    pub max_depth: u32,
}

impl BlowUpTree {
    pub fn leaves(&self) -> Vec<&BlowUpNode> {
        self.root.leaves()
    }

    pub fn depth(&self) -> u32 {
        self.root.height()
    }

    /// Every leaf is reduced and no direction was irrational.
    pub fn fully_reduced(&self) -> bool {
        self.root.irrational_count() == 0 && self.leaves().iter().all(|l| l.kind == NodeKind::Leaf)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.root.render(&mut s);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReduceError {
    #[error("reduction did not finish within depth {}", .0.max_depth)]
    DepthExceeded(Box<BlowUpTree>),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
}

fn reduce_node(
    germ: VectorFieldGerm,
    center: Option<(Chart, Rational)>,
    depth: u32,
    max_depth: u32,
    hit_limit: &mut bool,
) -> Result<BlowUpNode, FoliationError> {
    let class = classify(&germ)?;
    if class.tag.is_reduced() {
        return Ok(BlowUpNode { center, depth, germ, class, kind: NodeKind::Leaf });
    }
    if depth >= max_depth {
        *hit_limit = true;
        return Ok(BlowUpNode { center, depth, germ, class, kind: NodeKind::DepthLimit });
    }
    let b = match blow_up_partial(&germ) {
        Ok(b) => b,
        Err(FoliationError::InsufficientJet(_)) => {
            return Ok(BlowUpNode { center, depth, germ, class, kind: NodeKind::InsufficientJet })
        }
        Err(e) => return Err(e),
    };
    let children = b
        .centers
        .into_iter()
        .map(|c| reduce_node(c.germ, Some((c.chart, c.position)), depth + 1, max_depth, hit_limit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlowUpNode {
        center,
        depth,
        germ,
        class,
        kind: NodeKind::Blown {
            order: b.order,
            dicritical: b.dicritical,
            division_exponent: b.division_exponent,
            children,
            irrational: b.irrational,
        },
    })
}

/// Blows up non-reduced points recursively until every leaf is reduced.
pub fn reduce(v: &VectorFieldGerm, max_depth: u32) -> Result<BlowUpTree, ReduceError> {
    let mut hit_limit = false;
    let root = reduce_node(v.clone(), None, 0, max_depth, &mut hit_limit)?;
    let tree = BlowUpTree { root, max_depth };
    if hit_limit {
        return Err(ReduceError::DepthExceeded(Box::new(tree)));
    }
    Ok(tree)
}

pub const DEFAULT_JET_ORDER: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Exact(u32),
    /// Not determined by the jet examined.
    AtLeast(u32),
}

/// Truncated `f(φ(w), w)` for `f` in `(z, w)`.
fn restrict_to_graph(f: &Poly, phi: &UniPoly<Rational>, n: usize) -> UniPoly<Rational> {
    let mut powers = vec![UniPoly::one()];
    let mut out = UniPoly::zero();
    for (m, c) in f.terms() {
        let (a, b) = (m.exp(0) as usize, m.exp(1) as usize);
        if b > n {
            continue;
        }
        while powers.len() <= a {
            let next = (powers.last().unwrap().clone() * phi.clone()).truncate(n);
            powers.push(next);
        }
        let term = (powers[a].clone() * UniPoly::monomial(c.clone(), b)).truncate(n);
        out = out + term;
    }
    out
}

/// Multiplicity `d` of a saddle-node, i.e. the `d` in the formal normal
/// form `z ∂z + w^d ∂w`: the vanishing order of the field along its formal
/// centre curve, computed up to `jet_order`.
pub fn saddle_node_multiplicity(v: &VectorFieldGerm, jet_order: u32) -> Result<Multiplicity, FoliationError> {
    let class = classify(v)?;
    if class.tag != SingTag::SaddleNode {
        return Err(FoliationError::NotSaddleNode);
    }
    let n = v.jet_order.map_or(jet_order, |k| k.min(jet_order)) as usize;
    let lin = v.linear_part();
    let tau = class.trace.clone();
    let [[a, b], [c, d]] = lin.clone();
    // eigenvector for τ and kernel vector
    let ev = if !b.is_zero() || !(&tau - &a).is_zero() {
        [b.clone(), &tau - &a]
    } else {
        [&tau - &d, c.clone()]
    };
    let kv = if !a.is_zero() || !b.is_zero() { [b, -a] } else { [d, -c] };
    let basis = [[ev[0].clone(), kv[0].clone()], [ev[1].clone(), kv[1].clone()]];
    let det = &basis[0][0] * &basis[1][1] - &basis[0][1] * &basis[1][0];
    let inv = [
        [&basis[1][1] / &det, -&basis[0][1] / &det],
        [-&basis[1][0] / &det, &basis[0][0] / &det],
    ];
    let (z, w) = (Poly::var(0), Poly::var(1));
    let images = [
        z.scale(&basis[0][0]) + w.scale(&basis[0][1]),
        z.scale(&basis[1][0]) + w.scale(&basis[1][1]),
    ];
    let (pz, qw) = v.transform(&images, &inv);

    let mut phi = UniPoly::zero();
    for k in 2..n {
        let residual = restrict_to_graph(&pz, &phi, k) - phi.derivative() * restrict_to_graph(&qw, &phi, k);
        let ck = -residual.coeff(k) / &tau;
        phi = phi + UniPoly::monomial(ck, k);
    }
    let along = restrict_to_graph(&qw, &phi, n);
    Ok(match along.order() {
        Some(k) => Multiplicity::Exact(k as u32),
        None => Multiplicity::AtLeast(n as u32),
    })
}

/// An affine line `a x + b y + c = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    /// `{y = 0}`.
    pub fn x_axis() -> Self {
        Line { a: Rational::zero(), b: Rational::one(), c: Rational::zero() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexCount {
    /// Degree `k` of the polynomial field.
    pub degree: u32,
    /// Affine zeros of the tangential component along the line, in the
    /// line's coordinate, with multiplicities.
    pub affine_zeros: Vec<(Rational, u32)>,
    /// Vanishing order at the point at infinity of the line.
    pub infinity_order: u32,
    pub z_count: u32,
    /// `k + 1`.
    pub expected: u32,
}

/// Counts tangencies `Z(L, F)` of a polynomial field along an invariant
/// line, including the point at infinity, and returns it with `k + 1`.
pub fn invariant_line_count(p: &Poly, q: &Poly, line: &Line) -> Result<IndexCount, FoliationError> {
    // coordinates (X, Y) with L = {Y = 0}
    let (x, y) = (Poly::var(0), Poly::var(1));
    let (images, inv): ([Poly; 2], [[Rational; 2]; 2]) = if !line.b.is_zero() {
        // X = x, Y = a x + b y + c
        let yy = (y - x.scale(&line.a) - Poly::constant(line.c.clone())).scale(&line.b.recip());
        ([x, yy], [[Rational::one(), Rational::zero()], [line.a.clone(), line.b.clone()]])
    } else if !line.a.is_zero() {
        // X = y, Y = a x + c
        let xx = (y - Poly::constant(line.c.clone())).scale(&line.a.recip());
        ([xx, x], [[Rational::zero(), Rational::one()], [line.a.clone(), Rational::zero()]])
    } else {
        return Err(FoliationError::DegenerateLine);
    };
    let pp = p.compose(&images);
    let qq = q.compose(&images);
    let tangential = pp.scale(&inv[0][0]) + qq.scale(&inv[0][1]);
    let normal = pp.scale(&inv[1][0]) + qq.scale(&inv[1][1]);

    let k = tangential.total_degree().into_iter().chain(normal.total_degree()).max().unwrap_or(0);
    let on_line = |f: &Poly| f.compose(&[Poly::var(0), Poly::zero()]);
    let normal_on = on_line(&normal);
    if !normal_on.is_zero() {
        return Err(FoliationError::NotInvariant { normal: normal_on.display_with(&["X"]) });
    }
    let restricted = on_line(&tangential).to_univariate(0).expect("restricted to one variable");
    if restricted.is_zero() {
        return Err(FoliationError::LineOfSingularities);
    }
    let (affine_zeros, rest) = rational_roots(&restricted);
    if rest.degree().unwrap_or(0) > 0 {
        return Err(FoliationError::IrrationalSingularity { factor: rest.display_with("X") });
    }

    // chart at infinity: X = 1/u, Y = w/u, field multiplied by u^{k-1};
    // tangential component along w = 0 is -u · P^h(1, 0, u)
    let ph = tangential.homogenize(2, k);
    let at_infinity = ph.compose(&[Poly::one(), Poly::zero(), Poly::var(0)]);
    let u_dot = -(Poly::var(0) * at_infinity);
    let infinity_order = u_dot.to_univariate(0).and_then(|f| f.order()).expect("nonzero") as u32;

    let z_count = affine_zeros.iter().map(|(_, m)| m).sum::<u32>() + infinity_order;
    Ok(IndexCount { degree: k, affine_zeros, infinity_order, z_count, expected: k + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, q};

    fn germ(p: &str, qs: &str) -> VectorFieldGerm {
        VectorFieldGerm::polynomial(parse_poly(p, &VARS).unwrap(), parse_poly(qs, &VARS).unwrap()).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&germ("x", "y")).unwrap().tag, SingTag::NonReduced);
        let saddle = classify(&germ("x", "-y")).unwrap();
        assert_eq!(saddle.tag, SingTag::ReducedNondegenerate);
        assert_eq!(saddle.ratio, Some(qi(-1)));
        let sn = classify(&germ("x", "y^2")).unwrap();
        assert_eq!(sn.tag, SingTag::SaddleNode);
        assert_eq!(sn.ratio, Some(qi(0)));
        assert_eq!(classify(&germ("y", "0")).unwrap().tag, SingTag::NonReduced);
        assert_eq!(classify(&germ("x^2", "y^2")).unwrap().tag, SingTag::NonReduced);
        // rotation: complex eigenvalues
        assert_eq!(classify(&germ("y", "-x")).unwrap().tag, SingTag::ReducedNondegenerate);
        let r = classify(&germ("2x", "3y")).unwrap();
        assert_eq!((r.tag, r.ratio), (SingTag::NonReduced, Some(q(2, 3))));
    }

    #[test]
    fn not_singular() {
        let err = VectorFieldGerm::polynomial(parse_poly("1 + x", &VARS).unwrap(), Poly::zero()).unwrap_err();
        assert_eq!(err, FoliationError::NotSingular);
    }

    #[test]
    fn radial_blow_up_is_dicritical() {
        let b = blow_up(&germ("x", "y")).unwrap();
        assert!(b.dicritical);
        assert_eq!(b.division_exponent, 1);
        assert!(b.centers.is_empty());
    }

    #[test]
    fn nilpotent_chart_one() {
        let b = blow_up(&germ("y", "0")).unwrap();
        assert!(!b.dicritical);
        assert_eq!(b.division_exponent, 0);
        let (x, t) = (Poly::var(0), Poly::var(1));
        assert_eq!(b.chart1.0, x * t.clone());
        assert_eq!(b.chart1.1, -(t.clone() * t));
        // H(1, t) = t^2, single direction t = 0
        assert_eq!(b.centers.len(), 1);
        assert_eq!((b.centers[0].chart, b.centers[0].position.clone()), (Chart::First, qi(0)));
    }

    #[test]
    fn pushforward_recovers_original() {
        for (p, qs) in [("y", "0"), ("x", "y"), ("y + x^2", "x^3 - y^2"), ("x^2 - x*y", "y^2 + 3x^2*y")] {
            let v = germ(p, qs);
            let b = blow_up_partial(&v).unwrap();
            let (x, t) = (Poly::var(0), Poly::var(1));
            let (pp, qq) = b.pushforward_chart1();
            assert_eq!(pp, v.p.compose(&[x.clone(), x.clone() * t.clone()]));
            assert_eq!(qq, v.q.compose(&[x.clone(), x * t]));
            let (s, y) = (Poly::var(0), Poly::var(1));
            let (pp, qq) = b.pushforward_chart2();
            assert_eq!(pp, v.p.compose(&[s.clone() * y.clone(), y.clone()]));
            assert_eq!(qq, v.q.compose(&[s * y.clone(), y]));
        }
    }

    #[test]
    fn irrational_direction_reported() {
        // eigenvalues 1 ± √2, eigendirections t^2 = 2
        let v = germ("x + y", "2x + y");
        assert!(matches!(blow_up(&v), Err(FoliationError::IrrationalDirection { .. })));
        let b = blow_up_partial(&v).unwrap();
        assert_eq!(b.irrational, vec![UniPoly::new(vec![qi(-2), qi(0), qi(1)])]);
    }

    #[test]
    fn reduce_examples() {
        let already = reduce(&germ("x", "-y"), 12).unwrap();
        assert_eq!(already.root.kind, NodeKind::Leaf);
        assert_eq!(already.depth(), 0);

        // 2/3 -> 1/2 -> 1 (dicritical)
        let t = reduce(&germ("2x", "3y"), 12).unwrap();
        assert!(t.fully_reduced());
        assert_eq!(t.depth(), 3);

        let t = reduce(&germ("y", "0"), 12).unwrap();
        assert!(t.fully_reduced());
    }

    #[test]
    fn depth_exceeded_keeps_partial_tree() {
        match reduce(&germ("2x", "3y"), 1) {
            Err(ReduceError::DepthExceeded(tree)) => {
                assert_eq!(tree.max_depth, 1);
                assert!(tree.leaves().iter().any(|l| l.kind == NodeKind::DepthLimit));
            }
            other => panic!("expected DepthExceeded, got {other:?}"),
        }
    }

    #[test]
    fn saddle_node_multiplicities() {
        for d in 2..=4 {
            let v = germ("x", &format!("y^{d}"));
            assert_eq!(saddle_node_multiplicity(&v, DEFAULT_JET_ORDER).unwrap(), Multiplicity::Exact(d));
        }
        let v = germ("x", "y^2 + x*y^3");
        assert_eq!(saddle_node_multiplicity(&v, DEFAULT_JET_ORDER).unwrap(), Multiplicity::Exact(2));
        let v = germ("x", "x*y");
        assert_eq!(saddle_node_multiplicity(&v, 9).unwrap(), Multiplicity::AtLeast(9));
        assert_eq!(saddle_node_multiplicity(&germ("x", "-y"), 5).unwrap_err(), FoliationError::NotSaddleNode);
    }

    #[test]
    fn saddle_node_in_skewed_coordinates() {
        // z ∂z + w^3 ∂w after (x, y) = (z + w, w): P = x - y + y^3, Q = y^3
        let v = germ("x - y + y^3", "y^3");
        assert_eq!(saddle_node_multiplicity(&v, DEFAULT_JET_ORDER).unwrap(), Multiplicity::Exact(3));
        // the centre curve is not a coordinate axis: x = y^2 + ..., Q = y^2 - x
        let v = germ("x - y^2", "x*y + y^4");
        assert_eq!(saddle_node_multiplicity(&v, DEFAULT_JET_ORDER).unwrap(), Multiplicity::Exact(3));
    }

    #[test]
    fn invariant_line_examples() {
        let l = Line::x_axis();
        for (p, qs) in [("x", "y"), ("x", "-y"), ("x^2 - 1", "y*(x + 2)")] {
            let (pp, qq) = (parse_poly(p, &VARS).unwrap(), parse_poly(qs, &VARS).unwrap());
            let c = invariant_line_count(&pp, &qq, &l).unwrap();
            assert_eq!(c.z_count, c.expected, "{p}, {qs}");
        }
        let c = invariant_line_count(&parse_poly("x", &VARS).unwrap(), &parse_poly("y", &VARS).unwrap(), &l).unwrap();
        assert_eq!((c.z_count, c.expected, c.infinity_order), (2, 2, 1));
    }

    #[test]
    fn invariant_line_errors() {
        let l = Line::x_axis();
        let p = parse_poly("x", &VARS).unwrap();
        let err = invariant_line_count(&p, &parse_poly("y + x^2", &VARS).unwrap(), &l).unwrap_err();
        assert!(matches!(err, FoliationError::NotInvariant { .. }));
        let err = invariant_line_count(&parse_poly("x^2 - 2", &VARS).unwrap(), &parse_poly("y", &VARS).unwrap(), &l)
            .unwrap_err();
        assert!(matches!(err, FoliationError::IrrationalSingularity { .. }));
        let err = invariant_line_count(&parse_poly("x*y", &VARS).unwrap(), &parse_poly("y", &VARS).unwrap(), &l)
            .unwrap_err();
        assert_eq!(err, FoliationError::LineOfSingularities);
    }

    #[test]
    fn slanted_invariant_line() {
        // x ∂x + y ∂y leaves the line y = 2x invariant
        let c = invariant_line_count(
            &parse_poly("x", &VARS).unwrap(),
            &parse_poly("y", &VARS).unwrap(),
            &Line { a: qi(2), b: qi(-1), c: qi(0) },
        )
        .unwrap();
        assert_eq!((c.z_count, c.expected), (2, 2));
    }
}
