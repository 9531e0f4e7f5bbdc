//! Chart atlases for flops of compound-A1 type.
//!
//! Starting from a four-variable model `xy + f(z,u) = 0` under the action
//! `(1/r)(b, -b, 1, 0)` together with a linked weight whose residual factor
//! is a bare monomial, the degeneration
//!
//! ```text
//! V : xy + u * f1(z, u) = 0   in   A^4 / (1/r)(b, -b, 1, 0)
//! ```
//!
//! carries two small resolutions `Z1` and `Z2` (the ideal blow-ups of
//! `(x, u)` and `(y, u)`) that differ by a flop.  This module constructs:
//!
//! * [`FlopModel`] — the data `(r, b, f1)` of `V`, with its chart covers
//!   [`FlopModel::z1_charts`] and [`FlopModel::z2_charts`];
//! * [`build_flop`] — the passage from a linked contraction with the flop
//!   flag to the degenerate total space `V`;
//! * [`v_prime`] — the symmetric partial resolution `V' -> V` for a weight
//!   `(1/r)(b, c, 1, r)` with `b + c = r(m+1)`, as a ten-chart atlas
//!   covering both the direct tower over `V` and the tower through `Z1`,
//!   together with a Q-factoriality report for the `u`-chart;
//! * [`flip_bookkeeping`] — the cyclic indices on the two sides of the
//!   associated antiflip and the resulting one-unit depth gain;
//! * [`omega_label`] — the minimal level of a recursive factorisation
//!   diagram built from smooth flops and smooth-curve blow-ups.
//!
//! Every chart records the monomial substitution back to the coordinates of
//! `V` and the exceptional monomial cleared from the pulled-back equation,
//! so the whole atlas can be re-verified mechanically (see
//! [`AtlasChart::verify`] and [`ChartAtlas::validate`]).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::blowup::Contraction;
use crate::links::CaLink;
use crate::models::{ModelError, SingClass, SingularityModel, ValidationReport};
use crate::polyring::{gcd_bivariate, rational_roots, MonomialMap, Poly, PolyError};
use crate::qlattice::{QError, QuotientAction, WeightVector};
use crate::{rat, ratio, Rat};

/// Errors raised by the flop-atlas constructions.
#[derive(Debug, Error)]
pub enum FlopError {
    /// The linked contraction is strictly negative, not a flop.
    #[error("not a flop: {0}")]
    NotFlop(String),
    /// A hypothesis of the construction fails.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The blow-up weight does not have the required shape.
    #[error("weight shape: {0}")]
    WeightShape(String),
    /// A factorisation diagram is malformed.
    #[error("malformed diagram: {0}")]
    Diagram(String),
    #[error(transparent)]
    Lattice(#[from] QError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn var4(i: usize) -> Poly {
    Poly::var(4, i).expect("variable index")
}

fn rv(exps: [i64; 4]) -> Vec<Rat> {
    exps.iter().map(|&e| rat(e as i128)).collect()
}

fn names(list: [&str; 4]) -> Vec<String> {
    list.iter().map(|s| (*s).to_string()).collect()
}

/// Lift a polynomial in `(z, u)` to the four-variable space `(x, y, z, u)`.
fn embed_zu(f: &Poly) -> Poly {
    let mut out = Poly::zero(4);
    for (e, c) in f.terms() {
        out = out.add(&Poly::monomial(4, &[0, 0, e[0], e[1]], *c).expect("monomial"));
    }
    out
}

/// Evaluate `f(z, u)` on monomial images inside a four-variable chart and
/// clear the monomial `x^clear` from the result.
fn substituted(
    f: &Poly,
    z_image: Vec<Rat>,
    u_image: Vec<Rat>,
    clear: &[Rat],
) -> Result<Poly, FlopError> {
    let map = MonomialMap::new(4, vec![(rat(1), z_image), (rat(1), u_image)])?;
    let image = map.apply(f)?.divide_by_monomial(clear)?;
    Ok(image.to_poly()?)
}

/// The degenerate total space `V : xy + u f(z,u) = 0` in
/// `A^4 / (1/r)(b, -b, 1, 0)`, normalised so that the smallest pure power of
/// `z` in `f` is `z^{rk}` with coefficient one and `k >= 2`.
///
/// `m` is the weighted order of `f` under `w(z, u) = (1/r, 1)`; it always
/// satisfies `1 <= m <= k`.  The polynomial `f` must be irreducible as an
/// invariant function — otherwise the small resolutions of `V` would not be
/// Q-factorial and the construction breaks down.
#[derive(Debug, Clone, PartialEq)]
pub struct FlopModel {
    r: i64,
    beta: i64,
    f: Poly,
    k: i64,
    m: i64,
}

impl FlopModel {
    /// Validate and normalise the data `(r, beta, f)`.
    pub fn new(r: i64, beta: i64, f: Poly) -> Result<Self, FlopError> {
        if r < 1 {
            return Err(FlopError::Precondition(format!(
                "index r = {r} must be positive"
            )));
        }
        let beta = beta.rem_euclid(r);
        if gcd64(beta, r) != 1 {
            return Err(FlopError::Precondition(format!(
                "beta = {beta} must be a unit modulo r = {r}"
            )));
        }
        if f.nvars() != 2 || f.is_zero() {
            return Err(FlopError::Precondition(
                "f must be a nonzero polynomial in (z, u)".into(),
            ));
        }
        let mut pure_z: Option<i64> = None;
        for (e, _) in f.terms() {
            let (s, q) = (e[0], e[1]);
            if s % r != 0 {
                return Err(FlopError::Precondition(format!(
                    "z-exponent {s} is not divisible by r = {r}; f must be invariant"
                )));
            }
            if s == 0 && q == 0 {
                return Err(FlopError::Precondition(
                    "f has a constant term, so the total space xy + u f is smooth".into(),
                ));
            }
            if q == 0 {
                pure_z = Some(pure_z.map_or(s, |t: i64| t.min(s)));
            }
        }
        let Some(zdeg) = pure_z else {
            return Err(FlopError::Precondition(
                "f contains no pure power of z; expected a z^{rk} term".into(),
            ));
        };
        let k = zdeg / r;
        if f.coeff(&[zdeg, 0]) != rat(1) {
            return Err(FlopError::Precondition(format!(
                "the smallest pure power z^{zdeg} must have coefficient 1; rescale first"
            )));
        }
        if k < 2 {
            return Err(FlopError::Precondition(format!(
                "k = {k}: the construction needs k >= 2 (for k = 1 the blow-up of (x, u) \
                 is already a single divisorial step with nothing to flop)"
            )));
        }
        if let QFactoriality::Reducible { factors, note } = invariant_factor_scan(&f, r)? {
            let shown = factors
                .iter()
                .map(|p| p.render(&["z", "u"]))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(FlopError::Precondition(format!(
                "f is reducible as an invariant function ({}); the small resolutions of \
                 xy + u f would not be Q-factorial",
                if shown.is_empty() {
                    note
                } else {
                    format!("witness: {shown}")
                }
            )));
        }
        let m = {
            let w = f
                .weighted_order_values(&[ratio(1, r as i128), rat(1)])
                .expect("nonzero polynomial has a weighted order");
            debug_assert!(w.is_integer());
            w.to_integer() as i64
        };
        debug_assert!(1 <= m && m <= k);
        Ok(FlopModel { r, beta, f, k, m })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    /// The residual polynomial `f(z, u)` with `V : xy + u f = 0`.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// Exponent `k` of the smallest pure power `z^{rk}` of `f`.
    pub fn k(&self) -> i64 {
        self.k
    }

    /// Weighted order of `f` under `w(z, u) = (1/r, 1)`.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// The ambient cyclic action `(1/r)(b, -b, 1, 0)`.
    pub fn action(&self) -> QuotientAction {
        QuotientAction::new(self.r, &[self.beta, -self.beta, 1, 0]).expect("valid action")
    }

    /// The four-variable equation `xy + u f(z, u)`.
    pub fn v_equation(&self) -> Poly {
        let xy = Poly::monomial(4, &[1, 1, 0, 0], rat(1)).expect("monomial");
        let u = Poly::monomial(4, &[0, 0, 0, 1], rat(1)).expect("monomial");
        xy.add(&u.mul(&embed_zu(&self.f)))
    }

    /// `V` as a singularity model (a compound-A1 point of index `r`; note
    /// that `V` itself is not Q-factorial: `u f` splits).
    pub fn v_model(&self) -> Result<SingularityModel, FlopError> {
        Ok(SingularityModel::new(
            self.action(),
            vec!["x".into(), "y".into(), "z".into(), "u".into()],
            vec![self.v_equation()],
            SingClass::CAr,
            BTreeMap::new(),
        )?)
    }

    /// Charts of the first small resolution `Z1 = Bl_{(x,u)} V`.
    ///
    /// `U_{1,x}` has coordinates `(x, y, z, u1)` with `u = u1 x`, and
    /// `U_{1,u}` has coordinates `(x1, y, z, u)` with `x = x1 u`.
    pub fn z1_charts(&self) -> Result<Vec<AtlasChart>, FlopError> {
        let (r, beta) = (self.r, self.beta);
        let zero = rv([0, 0, 0, 0]);
        let f1 = substituted(&self.f, rv([0, 0, 1, 0]), rv([1, 0, 0, 1]), &zero)?;
        let u1x = AtlasChart {
            label: "U_{1,x}".into(),
            action: QuotientAction::new(r, &[beta, -beta, 1, -beta])?,
            vars: names(["x", "y", "z", "u1"]),
            equation: var4(1).add(&var4(3).mul(&f1)),
            cover: MonomialMap::new(
                4,
                vec![
                    (rat(1), rv([1, 0, 0, 0])),
                    (rat(1), rv([0, 1, 0, 0])),
                    (rat(1), rv([0, 0, 1, 0])),
                    (rat(1), rv([1, 0, 0, 1])),
                ],
            )?,
            exceptional: rv([1, 0, 0, 0]),
            smooth: false,
        };
        let u1u = AtlasChart {
            label: "U_{1,u}".into(),
            action: QuotientAction::new(r, &[beta, -beta, 1, 0])?,
            vars: names(["x1", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&embed_zu(&self.f)),
            cover: MonomialMap::new(
                4,
                vec![
                    (rat(1), rv([1, 0, 0, 1])),
                    (rat(1), rv([0, 1, 0, 0])),
                    (rat(1), rv([0, 0, 1, 0])),
                    (rat(1), rv([0, 0, 0, 1])),
                ],
            )?,
            exceptional: rv([0, 0, 0, 1]),
            smooth: false,
        };
        Ok(vec![u1x, u1u])
    }

    /// Charts of the second small resolution `Z2 = Bl_{(y,u)} V`.
    pub fn z2_charts(&self) -> Result<Vec<AtlasChart>, FlopError> {
        let (r, beta) = (self.r, self.beta);
        let zero = rv([0, 0, 0, 0]);
        let f2 = substituted(&self.f, rv([0, 0, 1, 0]), rv([0, 1, 0, 1]), &zero)?;
        let u2y = AtlasChart {
            label: "U_{2,y}".into(),
            action: QuotientAction::new(r, &[beta, -beta, 1, beta])?,
            vars: names(["x", "y", "z", "u2"]),
            equation: var4(0).add(&var4(3).mul(&f2)),
            cover: MonomialMap::new(
                4,
                vec![
                    (rat(1), rv([1, 0, 0, 0])),
                    (rat(1), rv([0, 1, 0, 0])),
                    (rat(1), rv([0, 0, 1, 0])),
                    (rat(1), rv([0, 1, 0, 1])),
                ],
            )?,
            exceptional: rv([0, 1, 0, 0]),
            smooth: false,
        };
        let u2u = AtlasChart {
            label: "U_{2,u}".into(),
            action: QuotientAction::new(r, &[beta, -beta, 1, 0])?,
            vars: names(["x", "y2", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&embed_zu(&self.f)),
            cover: MonomialMap::new(
                4,
                vec![
                    (rat(1), rv([1, 0, 0, 0])),
                    (rat(1), rv([0, 1, 0, 1])),
                    (rat(1), rv([0, 0, 1, 0])),
                    (rat(1), rv([0, 0, 0, 1])),
                ],
            )?,
            exceptional: rv([0, 0, 0, 1]),
            smooth: false,
        };
        Ok(vec![u2y, u2u])
    }
}

impl fmt::Display for FlopModel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "xy + u*({}) in A^4/(1/{})({}, {}, 1, 0), k = {}, m = {}",
            self.f.render(&["z", "u"]),
            self.r,
            self.beta,
            (-self.beta).rem_euclid(self.r),
            self.k,
            self.m
        )
    }
}

/// One affine chart of a (partial) resolution, together with the monomial
/// substitution back down to the base coordinates `(x, y, z, u)` and the
/// exceptional monomial cleared from the pulled-back equation.
#[derive(Debug, Clone, PartialEq)]
pub struct AtlasChart {
    pub label: String,
    /// Residual cyclic action on the chart (trivial for plain `A^4` charts).
    pub action: QuotientAction,
    pub vars: Vec<String>,
    /// Chart equation in the chart coordinates (positional, four slots).
    pub equation: Poly,
    /// Images of the base coordinates as monomials in the chart coordinates.
    pub cover: MonomialMap,
    /// Exponents of the exceptional monomial divided out of the pullback.
    pub exceptional: Vec<Rat>,
    /// Set when the chart is known to be entirely smooth.
    pub smooth: bool,
}

impl AtlasChart {
    /// Substitute the cover into `base_eq` and clear the exceptional
    /// monomial; the result must reproduce the chart equation exactly.
    pub fn verify(&self, base_eq: &Poly) -> Result<bool, FlopError> {
        let pulled = self
            .cover
            .apply(base_eq)?
            .divide_by_monomial(&self.exceptional)?;
        Ok(pulled.to_poly()? == self.equation)
    }
}

/// Outcome of the irreducibility scan for an invariant surface germ.
#[derive(Debug, Clone, PartialEq)]
pub enum QFactoriality {
    /// A proper factorisation exists.  `factors` holds rational witnesses in
    /// the original `(z, u)` coordinates; it is empty when reducibility is
    /// forced over the complex numbers without any rational witness.
    Reducible { factors: Vec<Poly>, note: String },
    /// Certified irreducible (the certificates used — primitive Newton
    /// segments, coprime binomials, linear polynomials — in fact certify
    /// irreducibility over the complex numbers).
    IrreducibleOverQ { certificate: String },
    /// The scan is inconclusive.
    Undecided { reason: String },
}

/// Decide, where possible, whether `f(z, u)` — with every `z`-exponent
/// divisible by `r` — is reducible as a function on the quotient, i.e. as a
/// polynomial in the invariant coordinates `(z^r, u)`.
///
/// The pipeline: unit-germ check, monomial content, univariate reduction,
/// square-free tests against both partial derivatives, and Newton-segment
/// analysis with a rational-root factor search along the segment.  Genuinely
/// two-dimensional Newton polygons are reported as undecided.
pub fn invariant_factor_scan(f: &Poly, r: i64) -> Result<QFactoriality, FlopError> {
    if f.nvars() != 2 || f.is_zero() {
        return Err(FlopError::Precondition(
            "the factor scan expects a nonzero polynomial in (z, u)".into(),
        ));
    }
    if r < 1 {
        return Err(FlopError::Precondition(format!(
            "index r = {r} must be positive"
        )));
    }
    let mut p = Poly::zero(2);
    for (e, c) in f.terms() {
        if e[0] % r != 0 {
            return Err(FlopError::Precondition(format!(
                "z-exponent {} is not divisible by r = {r}",
                e[0]
            )));
        }
        p = p.add(&Poly::monomial(2, &[e[0] / r, e[1]], *c)?);
    }
    // Map a factor in the invariant coordinates back to (z, u).
    let back = |q: &Poly| -> Poly {
        let mut out = Poly::zero(2);
        for (e, c) in q.terms() {
            out = out.add(&Poly::monomial(2, &[e[0] * r, e[1]], *c).expect("monomial"));
        }
        out
    };

    // Unit germ: a nonvanishing constant term makes local factorisation moot.
    if p.constant_term() != rat(0) {
        return Ok(QFactoriality::IrreducibleOverQ {
            certificate: "does not vanish at the origin".into(),
        });
    }
    // Monomial content.
    let min_z = p.terms().map(|(e, _)| e[0]).min().expect("nonzero");
    let min_u = p.terms().map(|(e, _)| e[1]).min().expect("nonzero");
    if min_z + min_u > 0 {
        let rest = p
            .divide_by_monomial(&[min_z, min_u])
            .expect("content divides");
        if rest.total_degree() == Some(0) {
            // A single monomial.
            if min_z + min_u == 1 {
                return Ok(QFactoriality::IrreducibleOverQ {
                    certificate: "a single coordinate".into(),
                });
            }
            let (head, tail) = if min_z > 0 {
                ([1, 0], [min_z - 1, min_u])
            } else {
                ([0, 1], [min_z, min_u - 1])
            };
            return Ok(QFactoriality::Reducible {
                factors: vec![
                    back(&Poly::monomial(2, &head, rat(1))?),
                    back(&Poly::monomial(2, &tail, rest.constant_term())?),
                ],
                note: "a monomial of degree at least two".into(),
            });
        }
        let content = Poly::monomial(2, &[min_z, min_u], rat(1))?;
        return Ok(QFactoriality::Reducible {
            factors: vec![back(&content), back(&rest)],
            note: "every term is divisible by a coordinate".into(),
        });
    }
    // Univariate reduction.
    for v in 0..2 {
        if let Some(coeffs) = p.univariate_in(v) {
            let deg = coeffs.len() - 1;
            if deg == 1 {
                return Ok(QFactoriality::IrreducibleOverQ {
                    certificate: "degree one".into(),
                });
            }
            let var_name = if v == 0 { "z^r" } else { "u" };
            if let Some((root, _)) = rational_roots(&coeffs)?.first() {
                let fac = Poly::var(2, v)?.sub(&Poly::constant(2, *root));
                return Ok(QFactoriality::Reducible {
                    factors: vec![back(&fac)],
                    note: format!("rational root in the single variable {var_name}"),
                });
            }
            return Ok(QFactoriality::Reducible {
                factors: vec![],
                note: format!(
                    "univariate of degree {deg} in {var_name}: splits over the complex \
                     numbers, but no rational witness exists"
                ),
            });
        }
    }
    // Square-free / common-factor tests.
    for v in 0..2 {
        let d = p.derivative(v);
        if d.is_zero() {
            continue;
        }
        let g = gcd_bivariate(&p, &d, v, 1 - v)?;
        if g.total_degree().map_or(false, |t| t > 0) {
            return Ok(QFactoriality::Reducible {
                factors: vec![back(&g)],
                note: format!(
                    "common factor with the derivative in the {} direction",
                    if v == 0 { "z" } else { "u" }
                ),
            });
        }
    }
    // Newton-segment analysis.
    let pts: Vec<(i64, i64)> = p.terms().map(|(e, _)| (e[0], e[1])).collect();
    if let Some((p0, step, g)) = colinear_support(&pts) {
        if g == 1 {
            return Ok(QFactoriality::IrreducibleOverQ {
                certificate: "the Newton polygon is a primitive segment".into(),
            });
        }
        // After the content and univariate branches the segment runs from the
        // z-axis to the u-axis: step = (-a, b) with a, b >= 1.
        let (a, b) = (-step.0, step.1);
        debug_assert!(a >= 1 && b >= 1);
        let mut coeffs = vec![rat(0); (g + 1) as usize];
        for (e, c) in p.terms() {
            let i = (p0.0 - e[0]) / a;
            coeffs[i as usize] = *c;
        }
        if let Some((root, _)) = rational_roots(&coeffs)?.first() {
            let fac = Poly::monomial(2, &[0, b], rat(1))?.sub(&Poly::monomial(2, &[a, 0], *root)?);
            return Ok(QFactoriality::Reducible {
                factors: vec![back(&fac)],
                note: "rational root along the Newton segment".into(),
            });
        }
        return Ok(QFactoriality::Reducible {
            factors: vec![],
            note: format!(
                "the Newton segment direction is divisible by {g}: the polynomial splits \
                 over the complex numbers, but no rational witness exists"
            ),
        });
    }
    Ok(QFactoriality::Undecided {
        reason: "the Newton polygon is two-dimensional and the bounded rational factor \
                 search found nothing"
            .into(),
    })
}

/// If all support points lie on one segment, return the endpoint of maximal
/// `z`-exponent, the primitive step towards the other endpoint, and the
/// number of primitive steps between the endpoints.
fn colinear_support(pts: &[(i64, i64)]) -> Option<((i64, i64), (i64, i64), i64)> {
    if pts.len() < 2 {
        return None;
    }
    let p0 = *pts.iter().max_by_key(|p| (p.0, -p.1))?;
    let p1 = *pts.iter().min_by_key(|p| (p.0, -p.1))?;
    let d = (p1.0 - p0.0, p1.1 - p0.1);
    for &q in pts {
        let v = (q.0 - p0.0, q.1 - p0.1);
        if v.0 * d.1 != v.1 * d.0 {
            return None;
        }
    }
    let g = gcd64(d.0, d.1);
    Some((p0, (d.0 / g, d.1 / g), g))
}

/// Check a weight `(1/r)(b, c, 1, r)` against the shape required by the
/// symmetric partial resolution of `fm` and return `(b, c)`.
fn checked_weight(fm: &FlopModel, w: &WeightVector) -> Result<(i64, i64), FlopError> {
    let (r, m) = (fm.r, fm.m);
    let e = w.entries();
    if w.r() != r || e.len() != 4 || e[2] != 1 || e[3] != r {
        return Err(FlopError::WeightShape(format!(
            "expected a weight of the shape (1/{r})(b, c, 1, {r}); got {w}"
        )));
    }
    let (b, c) = (e[0], e[1]);
    if b + c != r * (m + 1) {
        return Err(FlopError::WeightShape(format!(
            "b + c = {} must equal r(m + 1) = {}",
            b + c,
            r * (m + 1)
        )));
    }
    if (b - fm.beta) % r != 0 {
        return Err(FlopError::WeightShape(format!(
            "b = {b} must be congruent to beta = {} modulo r = {r} for the weight to \
             descend to the quotient",
            fm.beta
        )));
    }
    if b <= r {
        return Err(FlopError::Precondition(format!(
            "b = {b} <= r = {r}: the induced blow-up of Z1 would not be centred over \
             the origin of U_(1,u)"
        )));
    }
    if c < 1 {
        return Err(FlopError::WeightShape(format!("c = {c} must be positive")));
    }
    Ok((b, c))
}

/// The weight `(1/r)(beta + r, m r - beta, 1, r)` — the canonical choice for
/// the symmetric partial resolution.
pub fn canonical_second_weight(fm: &FlopModel) -> Result<WeightVector, FlopError> {
    Ok(WeightVector::new(
        fm.r,
        &[fm.beta + fm.r, fm.m * fm.r - fm.beta, 1, fm.r],
    )?)
}

/// The two towers of charts over `V` produced by the symmetric partial
/// resolution with weight `(1/r)(b, c, 1, r)`, `b + c = r(m + 1)`.
///
/// `v_tower` blows up `V` directly (four charts when `m = k`, five when
/// `m < k` because the `z`-chart needs one more small resolution);
/// `z_tower` factors through the small resolution `Z1` (always five charts).
/// Matching entries of the two towers glue to the same variety; the shared
/// charts are literally isomorphic (indices 1 and 2, plus 4 when `m < k`).
#[derive(Debug, Clone)]
pub struct ChartAtlas {
    pub model: FlopModel,
    pub weight: WeightVector,
    pub b: i64,
    pub c: i64,
    pub m_equals_k: bool,
    /// `f' = f(z u^{1/r}, u) / u^m`, the residual equation on the `u`-chart.
    pub f_prime: Poly,
    /// `f'' = f(z^{1/r}, z u) / z^m`, the residual equation on the `z`-chart
    /// (present only when `m < k`).
    pub f_second: Option<Poly>,
    /// Charts of the direct tower `V' -> V`.
    pub v_tower: Vec<AtlasChart>,
    /// Charts of the tower through the small resolution, `Z1' -> Z1 -> V`.
    pub z_tower: Vec<AtlasChart>,
    /// Irreducibility report for `f'` on the common `u`-chart.
    pub q_factorial_u_chart: QFactoriality,
}

/// Build the full chart atlas of the symmetric partial resolution.
pub fn v_prime(fm: &FlopModel, w: &WeightVector) -> Result<ChartAtlas, FlopError> {
    let (b, c) = checked_weight(fm, w)?;
    let (r, beta, m, k) = (fm.r, fm.beta, fm.m, fm.k);
    let br = ratio(b as i128, r as i128);
    let cr = ratio(c as i128, r as i128);
    let ir = ratio(1, r as i128);
    let one = rat(1);
    let m_r = rat(m as i128);
    let m1_r = rat((m + 1) as i128);
    let frac = |entries: [Rat; 4]| entries.to_vec();

    // Residual equations shared between charts.
    let clear_x = frac([m_r, rat(0), rat(0), rat(0)]);
    let clear_y = frac([rat(0), m_r, rat(0), rat(0)]);
    let clear_z = frac([rat(0), rat(0), m_r, rat(0)]);
    let clear_u = frac([rat(0), rat(0), rat(0), m_r]);
    // f(z x^{1/r}, u x) / x^m
    let f_x = substituted(&fm.f, frac([ir, rat(0), one, rat(0)]), rv([1, 0, 0, 1]), &clear_x)?;
    // f(z y^{1/r}, u y) / y^m
    let f_y = substituted(&fm.f, frac([rat(0), ir, one, rat(0)]), rv([0, 1, 0, 1]), &clear_y)?;
    // f(z u^{1/r}, u) / u^m
    let f_u = substituted(&fm.f, frac([rat(0), rat(0), one, ir]), rv([0, 0, 0, 1]), &clear_u)?;
    // f(z^{1/r}, u z) / z^m
    let f_z = substituted(&fm.f, frac([rat(0), rat(0), ir, rat(0)]), rv([0, 0, 1, 1]), &clear_z)?;
    // f(z^{1/r}, x u z) / z^m
    let f_zx = substituted(&fm.f, frac([rat(0), rat(0), ir, rat(0)]), rv([1, 0, 1, 1]), &clear_z)?;

    let trivial = QuotientAction::new(1, &[0, 0, 0, 0])?;

    // ---- direct tower V' -> V -------------------------------------------
    let mut v_tower = vec![
        AtlasChart {
            label: "U'_x".into(),
            action: QuotientAction::new(b, &[b - r, c, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(1).add(&var4(3).mul(&f_x)),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([br, rat(0), rat(0), rat(0)])),
                    (one, frac([cr, one, rat(0), rat(0)])),
                    (one, frac([ir, rat(0), one, rat(0)])),
                    (one, rv([1, 0, 0, 1])),
                ],
            )?,
            exceptional: frac([m1_r, rat(0), rat(0), rat(0)]),
            smooth: false,
        },
        AtlasChart {
            label: "U'_y".into(),
            action: QuotientAction::new(c, &[b, c - r, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).add(&var4(3).mul(&f_y)),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, br, rat(0), rat(0)])),
                    (one, frac([rat(0), cr, rat(0), rat(0)])),
                    (one, frac([rat(0), ir, one, rat(0)])),
                    (one, rv([0, 1, 0, 1])),
                ],
            )?,
            exceptional: frac([rat(0), m1_r, rat(0), rat(0)]),
            smooth: false,
        },
        AtlasChart {
            label: "U'_u".into(),
            action: QuotientAction::new(r, &[b, c, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&f_u),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), rat(0), br])),
                    (one, frac([rat(0), one, rat(0), cr])),
                    (one, frac([rat(0), rat(0), one, ir])),
                    (one, rv([0, 0, 0, 1])),
                ],
            )?,
            exceptional: frac([rat(0), rat(0), rat(0), m1_r]),
            smooth: false,
        },
    ];
    if m == k {
        // The z-chart is already smooth: f'' has a nonzero constant term.
        v_tower.push(AtlasChart {
            label: "U'_z".into(),
            action: trivial.clone(),
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&var4(3).mul(&f_z)),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), br, rat(0)])),
                    (one, frac([rat(0), one, cr, rat(0)])),
                    (one, frac([rat(0), rat(0), ir, rat(0)])),
                    (one, rv([0, 0, 1, 1])),
                ],
            )?,
            exceptional: frac([rat(0), rat(0), m1_r, rat(0)]),
            smooth: true,
        });
    } else {
        // The z-chart keeps a compound point xy + u f''(z, u); the two
        // charts below are its small resolution over (x, u).
        v_tower.push(AtlasChart {
            label: "U''_{1,x}".into(),
            action: trivial.clone(),
            vars: names(["x", "y", "z", "u"]),
            equation: var4(1).add(&var4(3).mul(&f_zx)),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), br, rat(0)])),
                    (one, frac([rat(0), one, cr, rat(0)])),
                    (one, frac([rat(0), rat(0), ir, rat(0)])),
                    (one, rv([1, 0, 1, 1])),
                ],
            )?,
            exceptional: frac([one, rat(0), m1_r, rat(0)]),
            smooth: false,
        });
        v_tower.push(AtlasChart {
            label: "U''_{1,u}".into(),
            action: trivial.clone(),
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&f_z),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), br, one])),
                    (one, frac([rat(0), one, cr, rat(0)])),
                    (one, frac([rat(0), rat(0), ir, rat(0)])),
                    (one, rv([0, 0, 1, 1])),
                ],
            )?,
            exceptional: frac([rat(0), rat(0), m1_r, one]),
            smooth: false,
        });
    }

    // ---- tower through the small resolution: Z1' -> Z1 -> V --------------
    let z_tower = vec![
        AtlasChart {
            label: "U'_{1,x}".into(),
            action: QuotientAction::new(b - r, &[b - 2 * r, c, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(1).add(&f_x),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([br, rat(0), rat(0), one])),
                    (one, frac([cr, one, rat(0), rat(0)])),
                    (one, frac([ir, rat(0), one, rat(0)])),
                    (one, rv([1, 0, 0, 1])),
                ],
            )?,
            exceptional: frac([m1_r, rat(0), rat(0), one]),
            smooth: false,
        },
        AtlasChart {
            label: "U'_{1,y}".into(),
            action: QuotientAction::new(c, &[b - r, c - r, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).add(&f_y),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, br, rat(0), one])),
                    (one, frac([rat(0), cr, rat(0), rat(0)])),
                    (one, frac([rat(0), ir, one, rat(0)])),
                    (one, rv([0, 1, 0, 1])),
                ],
            )?,
            exceptional: frac([rat(0), m1_r, rat(0), one]),
            smooth: false,
        },
        AtlasChart {
            label: "U'_{1,u}".into(),
            action: QuotientAction::new(r, &[b - r, c, 1, r])?,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&f_u),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), rat(0), br])),
                    (one, frac([rat(0), one, rat(0), cr])),
                    (one, frac([rat(0), rat(0), one, ir])),
                    (one, rv([0, 0, 0, 1])),
                ],
            )?,
            exceptional: frac([rat(0), rat(0), rat(0), m1_r]),
            smooth: false,
        },
        AtlasChart {
            label: "U_{1,x}".into(),
            action: QuotientAction::new(r, &[beta, -beta, 1, -beta])?,
            vars: names(["x", "y", "z", "u"]),
            equation: {
                let f4 = substituted(
                    &fm.f,
                    rv([0, 0, 1, 0]),
                    rv([1, 0, 0, 1]),
                    &rv([0, 0, 0, 0]),
                )?;
                var4(1).add(&var4(3).mul(&f4))
            },
            cover: MonomialMap::new(
                4,
                vec![
                    (one, rv([1, 0, 0, 0])),
                    (one, rv([0, 1, 0, 0])),
                    (one, rv([0, 0, 1, 0])),
                    (one, rv([1, 0, 0, 1])),
                ],
            )?,
            exceptional: rv([1, 0, 0, 0]),
            smooth: false,
        },
        AtlasChart {
            label: "U'_{1,z}".into(),
            action: trivial,
            vars: names(["x", "y", "z", "u"]),
            equation: var4(0).mul(&var4(1)).add(&f_z),
            cover: MonomialMap::new(
                4,
                vec![
                    (one, frac([one, rat(0), br, one])),
                    (one, frac([rat(0), one, cr, rat(0)])),
                    (one, frac([rat(0), rat(0), ir, rat(0)])),
                    (one, rv([0, 0, 1, 1])),
                ],
            )?,
            exceptional: frac([rat(0), rat(0), m1_r, one]),
            smooth: false,
        },
    ];

    // Two-variable residual data for the reports.
    let map_u = MonomialMap::new(2, vec![(one, vec![one, ir]), (one, vec![rat(0), one])])?;
    let f_prime = map_u
        .apply(&fm.f)?
        .divide_by_monomial(&[rat(0), m_r])?
        .to_poly()?;
    let f_second = if m < k {
        let map_z = MonomialMap::new(2, vec![(one, vec![ir, rat(0)]), (one, vec![one, one])])?;
        Some(
            map_z
                .apply(&fm.f)?
                .divide_by_monomial(&[m_r, rat(0)])?
                .to_poly()?,
        )
    } else {
        None
    };
    let q_factorial_u_chart = invariant_factor_scan(&f_prime, r)?;

    Ok(ChartAtlas {
        model: fm.clone(),
        weight: w.clone(),
        b,
        c,
        m_equals_k: m == k,
        f_prime,
        f_second,
        v_tower,
        z_tower,
        q_factorial_u_chart,
    })
}

impl ChartAtlas {
    /// Re-verify the atlas: every chart equation must be reproduced by
    /// substituting its cover into the equation of `V` and clearing the
    /// exceptional monomial; the shared charts of the two towers must agree;
    /// the residual data must match the `m = k` / `m < k` branch; and the
    /// `u`-chart must not be certified non-Q-factorial.
    pub fn validate(&self) -> Result<ValidationReport, FlopError> {
        let mut report = ValidationReport::new(format!(
            "chart atlas for {} under the weight {}",
            self.model, self.weight
        ));
        let v_eq = self.model.v_equation();
        for chart in self.v_tower.iter().chain(self.z_tower.iter()) {
            let ok = chart.verify(&v_eq)?;
            report.push(
                format!("chart {} matches the substituted equation", chart.label),
                ok,
                "",
            );
        }
        let shared: &[(usize, usize)] = if self.m_equals_k {
            &[(1, 1), (2, 2)]
        } else {
            &[(1, 1), (2, 2), (4, 4)]
        };
        for &(i, j) in shared {
            let ok = charts_isomorphic(&self.z_tower[i], &self.v_tower[j])?;
            report.push(
                format!(
                    "shared chart {} = {}",
                    self.z_tower[i].label, self.v_tower[j].label
                ),
                ok,
                "",
            );
        }
        if self.m_equals_k {
            let z_chart = &self.v_tower[3];
            let linear_u = z_chart.equation.coeff(&[0, 0, 0, 1]) != rat(0);
            report.push(
                "the z-chart of the partial resolution is smooth",
                z_chart.smooth && linear_u,
                "",
            );
        } else {
            let f2 = self.f_second.as_ref().expect("m < k keeps a residual");
            let leading = f2
                .terms()
                .filter(|(e, _)| e[1] == 0)
                .map(|(e, _)| e[0])
                .min();
            let expected = self.model.k - self.model.m;
            report.push(
                "the leading z-power drops on the z-chart",
                leading == Some(expected) && expected < self.model.k,
                format!(
                    "residual leading power {leading:?} against k - m = {expected}, \
                     down from k = {}",
                    self.model.k
                ),
            );
        }
        match &self.q_factorial_u_chart {
            QFactoriality::Reducible { note, .. } => {
                report.push("the u-chart is Q-factorial", false, note.clone())
            }
            QFactoriality::IrreducibleOverQ { certificate } => {
                report.push("the u-chart is Q-factorial", true, certificate.clone())
            }
            QFactoriality::Undecided { reason } => {
                report.push("the u-chart is Q-factorial", true, format!("undecided: {reason}"))
            }
        }
        Ok(report)
    }
}

/// Literal-equality test for charts after normalisation: graph variables
/// (appearing only as a bare linear monomial) are eliminated, restricting
/// the action to the remaining coordinates; the canonical action and the
/// residual equation must then coincide.
pub fn charts_isomorphic(a: &AtlasChart, b: &AtlasChart) -> Result<bool, FlopError> {
    Ok(normal_chart_form(a)? == normal_chart_form(b)?)
}

fn normal_chart_form(c: &AtlasChart) -> Result<(QuotientAction, Option<Poly>), FlopError> {
    let eq = &c.equation;
    for v in 0..4 {
        let mut unit = [0i64; 4];
        unit[v] = 1;
        if eq.coeff(&unit) == rat(0) {
            continue;
        }
        let alone = eq.terms().all(|(e, _)| e[v] == 0 || e == unit);
        if alone {
            let keep: Vec<usize> = (0..4).filter(|&i| i != v).collect();
            return Ok((c.action.restrict(&keep)?.canonical(), None));
        }
    }
    Ok((c.action.canonical(), Some(eq.clone())))
}

/// The index bookkeeping across the antiflip associated with the weight
/// `(1/r)(b, c, 1, r)`: one cyclic point of index `b` on the contracted
/// side against cyclic points of indices `b - r` and `r` on the resolved
/// side, a net gain of exactly one unit of generalised depth.
#[derive(Debug, Clone)]
pub struct FlipReport {
    pub b: i64,
    pub r: i64,
    /// Index of the singular point on the contracted (post-flip) side.
    pub v_side_indices: Vec<i64>,
    /// Indices of the singular points on the resolved side.
    pub z_side_indices: Vec<i64>,
    pub v_side_gdep: u64,
    pub z_side_gdep: u64,
    /// `v_side_gdep - z_side_gdep`; always exactly one.
    pub delta: i64,
    /// Quotient models realising the two sides (index one becomes a smooth
    /// point), suitable for independent depth computations.
    pub v_side_models: Vec<SingularityModel>,
    pub z_side_models: Vec<SingularityModel>,
}

fn cyclic_point(order: i64, exps: [i64; 3]) -> Result<SingularityModel, FlopError> {
    if order <= 1 {
        return Ok(SingularityModel::smooth_point());
    }
    Ok(SingularityModel::quotient_point(QuotientAction::new(
        order, &exps,
    )?)?)
}

/// Compute the index bookkeeping for the antiflip attached to `(fm, w)`.
pub fn flip_bookkeeping(fm: &FlopModel, w: &WeightVector) -> Result<FlipReport, FlopError> {
    let (b, _c) = checked_weight(fm, w)?;
    let (r, beta) = (fm.r, fm.beta);
    let v_side_models = vec![cyclic_point(b, [b - r, 1, r])?];
    let z_side_models = vec![
        cyclic_point(b - r, [b - 2 * r, 1, r])?,
        cyclic_point(r, [beta, 1, -beta])?,
    ];
    let v_side_gdep = (b - 1) as u64;
    let z_side_gdep = ((b - r - 1) + (r - 1)) as u64;
    Ok(FlipReport {
        b,
        r,
        v_side_indices: vec![b],
        z_side_indices: vec![b - r, r],
        v_side_gdep,
        z_side_gdep,
        delta: (b - 1) - (b - r - 1) - (r - 1),
        v_side_models,
        z_side_models,
    })
}

/// One step of a factorisation diagram for a birational map between
/// Q-factorial terminal threefolds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaPiece {
    /// A composition of flops between smooth varieties.
    SmoothFlops,
    /// A square diagram: blow up a smooth curve on each side and factor the
    /// induced map between the blow-ups into strictly simpler steps.
    Square { middle: Vec<OmegaPiece> },
}

/// The minimal level of a factorisation diagram: level zero for a plain
/// composition of smooth flops, and one more than the deepest middle
/// factorisation for each square.
pub fn omega_label(diagram: &[OmegaPiece]) -> Result<u32, FlopError> {
    if diagram.is_empty() {
        return Err(FlopError::Diagram("a factorisation level has no steps".into()));
    }
    let mut level = 0;
    for piece in diagram {
        let this = match piece {
            OmegaPiece::SmoothFlops => 0,
            OmegaPiece::Square { middle } => 1 + omega_label(middle)?,
        };
        level = level.max(this);
    }
    Ok(level)
}

/// Derive the degenerate total space `V` from a linked pair that carries
/// the flop flag.
///
/// `y` must be a weighted blow-up of a compound-A1 model of index `r` with
/// weight `(1/r)(b, c, 1, r)`; then `f1(z, u) = f(z u^{1/r}, u) / u^k` with
/// `k = (b + c)/r`, and `V : xy + u f1 = 0` under the same action.
pub fn build_flop(y: &Contraction, link: &CaLink) -> Result<FlopModel, FlopError> {
    if !link.flop {
        return Err(FlopError::NotFlop(format!(
            "the residual factor {} is not a bare monomial, so the linked pair is \
             strictly negative and admits no flop",
            link.eta4.render(&["x", "y", "z", "u"])
        )));
    }
    let x = &y.target;
    let w = &y.weight;
    let r = w.r();
    let e = w.entries();
    if x.nvars() != 4 || e.len() != 4 || e[2] != 1 || e[3] != r {
        return Err(FlopError::Precondition(
            "expected a four-variable model with a weight of the shape (b, c, 1, r)".into(),
        ));
    }
    let (b, c) = (e[0], e[1]);
    if (b + c) % r != 0 {
        return Err(FlopError::WeightShape(format!(
            "b + c = {} is not a multiple of r = {r}",
            b + c
        )));
    }
    let k = (b + c) / r;
    let eq = &x.equations()[0];
    let xy = Poly::monomial(4, &[1, 1, 0, 0], rat(1))?;
    if eq.coeff(&[1, 1, 0, 0]) != rat(1) {
        return Err(FlopError::Precondition(
            "the model equation must contain xy with coefficient one".into(),
        ));
    }
    let rest = eq.sub(&xy);
    if !rest.support_vars().iter().all(|&v| v == 2 || v == 3) {
        return Err(FlopError::Precondition(
            "the model equation must have the shape xy + f(z, u)".into(),
        ));
    }
    let f_zu = rest.project_to_vars(&[2, 3])?;
    let map = MonomialMap::new(
        2,
        vec![
            (rat(1), vec![rat(1), ratio(1, r as i128)]),
            (rat(1), vec![rat(0), rat(1)]),
        ],
    )?;
    let f1 = map
        .apply(&f_zu)?
        .divide_by_monomial(&[rat(0), rat(k as i128)])?
        .to_poly()?;
    let fm = FlopModel::new(r, b, f1)?;
    if fm.k() != k {
        return Err(FlopError::Precondition(format!(
            "the leading pure power of the degenerated equation gives k = {}, \
             incompatible with the weight (which forces k = {k})",
            fm.k()
        )));
    }
    Ok(fm)
}

/// Rewrite a model with `m = 1` and binomial residual `f = c u + z^{rk}`
/// into the normal form `f = z^{rk} - u` by the coordinate change
/// `u -> c u + z^{rk}` (absorbing a unit into `x`).  After the rewrite the
/// second small resolution becomes the ideal blow-up of `(x, u)` in the new
/// coordinates.
pub fn m1_rewrite(fm: &FlopModel) -> Result<FlopModel, FlopError> {
    if fm.m != 1 {
        return Err(FlopError::Precondition(format!(
            "the rewrite applies only to m = 1; this model has m = {}",
            fm.m
        )));
    }
    let zdeg = fm.r * fm.k;
    let lambda = fm.f.coeff(&[0, 1]);
    let binomial = fm
        .f
        .terms()
        .all(|(e, _)| e == [zdeg, 0] || e == [0, 1]);
    if lambda == rat(0) || !binomial {
        return Err(FlopError::Precondition(
            "the rewrite expects the binomial residual c u + z^{rk}".into(),
        ));
    }
    let f_bar = Poly::monomial(2, &[zdeg, 0], rat(1))?.sub(&Poly::monomial(2, &[0, 1], rat(1))?);
    FlopModel::new(fm.r, fm.beta, f_bar)
}
