//! End-to-end check of the special-simplex route to the g-theorem: the
//! hypotheses (special simplex, compressed order) are verified and the
//! conclusions are tested on the computed Ehrhart numerator.

use std::fmt;

use serde::Serialize;

use super::{series_by_counting, EhrhartSeries};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::exact_math::{g_theorem_check, GTheoremVerdict, HVector, IntPolynomial};
use crate::polytope::{
    codimension_containment_violations, faces_of, verify_special_simplex, IntegerPolytope,
    SpecialSimplexCertificate,
};
use crate::triangulation::{
    first_non_unimodular, join_decomposition_check, pulling_triangulation, JoinDecomposition,
    PolytopalComplex, VertexOrder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckSection {
    Hypotheses,
    HNumerator,
    GTheorem,
}

impl CheckSection {
    fn title(self) -> &'static str {
        match self {
            CheckSection::Hypotheses => "HYPOTHESES",
            CheckSection::HNumerator => "H-NUMERATOR",
            CheckSection::GTheorem => "G-THEOREM",
        }
    }
}

/// One named check of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCheck {
    pub section: CheckSection,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Everything the pipeline computed, with one [`StageCheck`] per hypothesis
/// and conclusion. The report passes iff every check passes.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub polytope: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub num_vertices: usize,
    pub num_facets: usize,
    pub sigma: Vec<usize>,
    pub order: Vec<usize>,
    pub certificate: Option<SpecialSimplexCertificate>,
    pub containment_violations: Option<usize>,
    pub non_unimodular_simplex: Option<Vec<usize>>,
    pub num_simplices: usize,
    pub h_counting: IntPolynomial,
    pub h_triangulation: IntPolynomial,
    pub denom_exponent: usize,
    /// `m - n + 1`, the expected degree of the numerator.
    pub d: i64,
    pub join: Option<JoinDecomposition>,
    pub g_theorem: Option<GTheoremVerdict>,
    pub checks: Vec<StageCheck>,
    pub pass: bool,
}

impl PipelineReport {
    pub fn add_check(
        &mut self,
        section: CheckSection,
        name: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.checks.push(StageCheck {
            section,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    /// Names of the failed checks, in pipeline order.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn series(&self) -> EhrhartSeries {
        EhrhartSeries {
            numerator: self.h_counting.clone(),
            denom_exponent: self.denom_exponent,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "polytope {}: dim {} in Z^{}, {} vertices, {} facets",
            self.polytope, self.dim, self.ambient_dim, self.num_vertices, self.num_facets
        )?;
        writeln!(f, "sigma = {}", join(&self.sigma))?;
        writeln!(f, "order = {}", join(&self.order))?;
        for section in [
            CheckSection::Hypotheses,
            CheckSection::HNumerator,
            CheckSection::GTheorem,
        ] {
            writeln!(f, "{}", section.title())?;
            if section == CheckSection::HNumerator {
                writeln!(f, "  counting:      h = {}", self.h_counting.coeff_string())?;
                writeln!(
                    f,
                    "  triangulation: h = {}",
                    self.h_triangulation.coeff_string()
                )?;
                writeln!(f, "  d = {}, denom = (1-t)^{}", self.d, self.denom_exponent)?;
            }
            for c in self.checks.iter().filter(|c| c.section == section) {
                let verdict = if c.pass { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(f, "  {}: {verdict}", c.name)?;
                } else {
                    writeln!(f, "  {}: {verdict} ({})", c.name, c.detail)?;
                }
            }
        }
        writeln!(f, "CONCLUSION")?;
        if self.pass {
            writeln!(f, "  PASS")
        } else {
            writeln!(f, "  FAIL: {}", self.failures().join(", "))
        }
    }
}

/// Recorded failure for verification errors, propagation for input and
/// budget errors.
fn recorded<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Verification(msg)) => Ok(Err(msg)),
        Err(Error::Budget { what, limit }) => Err(Error::Budget { what, limit }),
        Err(e) => Ok(Err(e.to_string())),
    }
}

/// Runs every hypothesis and conclusion check for `P`, the candidate
/// special simplex `sigma` and the vertex order `order`, which should end
/// with the vertices of `sigma`.
///
/// Failed checks are recorded and the pipeline carries on; only malformed
/// input (bad indices, a wrong-length order) and exhausted budgets are
/// returned as errors.
pub fn verify_special_simplex_pipeline(
    id: &str,
    p: &IntegerPolytope,
    sigma: &[usize],
    order: &VertexOrder,
    budgets: &Budgets,
) -> Result<PipelineReport> {
    if order.len() != p.num_vertices() {
        return Err(Error::input(format!(
            "vertex order has {} entries, polytope has {} vertices",
            order.len(),
            p.num_vertices()
        )));
    }
    let m = p.dim();
    let n = sigma.len();
    let mut report = PipelineReport {
        polytope: id.to_string(),
        ambient_dim: p.ambient_dim(),
        dim: m,
        num_vertices: p.num_vertices(),
        num_facets: p.num_facets(),
        sigma: sigma.to_vec(),
        order: order.sequence().to_vec(),
        certificate: None,
        containment_violations: None,
        non_unimodular_simplex: None,
        num_simplices: 0,
        h_counting: IntPolynomial::zero(),
        h_triangulation: IntPolynomial::zero(),
        denom_exponent: m + 1,
        d: m as i64 - n as i64 + 1,
        join: None,
        g_theorem: None,
        checks: Vec::new(),
        pass: true,
    };
    use CheckSection::*;

    let lattice = faces_of(p, budgets.max_faces)?;

    // hypotheses
    let cert = match verify_special_simplex(p, sigma) {
        Ok(c) => Some(c),
        Err(Error::Verification(msg)) => {
            report.add_check(Hypotheses, "special simplex", false, msg);
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(c) = cert {
        let points: Vec<Vec<i64>> = sigma.iter().map(|&v| p.vertex(v).to_vec()).collect();
        let affine = crate::polytope::affine_rank(&points);
        report.add_check(
            Hypotheses,
            "special simplex",
            true,
            format!("every facet contains {} of the {n} vertices", n - 1),
        );
        report.add_check(
            Hypotheses,
            "simplex vertices affinely independent",
            affine + 1 == n,
            format!("affine dimension {affine}"),
        );
        let violations = codimension_containment_violations(p, &lattice, sigma);
        report.add_check(
            Hypotheses,
            "codimension containment scan",
            violations.is_empty(),
            match violations.first() {
                None => "no face of codimension k misses more than k simplex vertices".to_string(),
                Some((face, missed)) => {
                    format!("face {face} misses simplex vertices {}", join(missed))
                }
            },
        );
        report.containment_violations = Some(violations.len());
        report.certificate = Some(c);
    }

    let delta = pulling_triangulation(&PolytopalComplex::of_polytope(&lattice), order);
    report.num_simplices = delta.num_maximal_faces();
    let bad = first_non_unimodular(p, &delta)?;
    report.add_check(
        Hypotheses,
        "compressed order",
        bad.is_none(),
        match &bad {
            None => format!("{} unimodular simplices", delta.num_maximal_faces()),
            Some(s) => format!("simplex {} is not unimodular", join(&s.to_vec())),
        },
    );
    report.non_unimodular_simplex = bad.map(|s| s.to_vec());
    report.h_triangulation = delta.h_polynomial();

    match recorded(join_decomposition_check(p, &lattice, sigma, order))? {
        Ok(j) => {
            report.add_check(
                Hypotheses,
                "join decomposition",
                j.join_ok,
                j.join_witness.clone().unwrap_or_default(),
            );
            report.add_check(
                Hypotheses,
                "quotient sphere",
                j.sphere_ok,
                match &j.sphere_witness {
                    None => format!("dimension {}", m as i64 - n as i64),
                    Some(w) => w.clone(),
                },
            );
            report.join = Some(j);
        }
        Err(msg) => report.add_check(Hypotheses, "join decomposition", false, msg),
    }

    // numerator
    match recorded(series_by_counting(p, budgets))? {
        Ok(s) => report.h_counting = s.numerator,
        Err(msg) => report.add_check(HNumerator, "counting route", false, msg),
    }
    let h = report.h_counting.clone();
    report.add_check(HNumerator, "routes agree", h == report.h_triangulation, "");
    let deg = h.degree().map_or(-1, |k| k as i64);
    report.add_check(
        HNumerator,
        "degree",
        deg == report.d,
        format!("deg h = {deg}, m - n + 1 = {}", report.d),
    );

    // g-theorem
    report.add_check(
        GTheorem,
        "h_0 = 1",
        h.coeff(0) == 1.into(),
        format!("h_0 = {}", h.coeff(0)),
    );
    let hv = usize::try_from(report.d)
        .map_err(|_| "d is negative".to_string())
        .and_then(|d| HVector::from_polynomial(&h, d).map_err(|e| e.to_string()));
    match hv {
        Ok(hv) => {
            let v = g_theorem_check(&hv);
            report.add_check(
                GTheorem,
                "symmetric",
                v.symmetric,
                v.first_asymmetry
                    .map(|i| format!("h_{i} != h_{}", hv.d() - i))
                    .unwrap_or_default(),
            );
            report.add_check(
                GTheorem,
                "unimodal",
                v.unimodal,
                v.first_descent
                    .map(|i| format!("h_{} > h_{i}", i - 1))
                    .unwrap_or_default(),
            );
            let g: Vec<String> = v.g_vector.iter().map(ToString::to_string).collect();
            report.add_check(
                GTheorem,
                "g is an M-vector",
                v.g_is_m_vector,
                match v.m_vector_violation {
                    None => format!("g = {}", g.join(" ")),
                    Some(i) => format!("g = {}, violation at g_{i}", g.join(" ")),
                },
            );
            report.g_theorem = Some(v);
        }
        Err(msg) => report.add_check(GTheorem, "h-vector", false, msg),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::birkhoff;
    use crate::polytope::fixtures::*;

    #[test]
    fn birkhoff_three_passes() {
        let b = birkhoff(3).unwrap();
        let sigma = b.cyclic_simplex();
        let order = b.order_with_simplex(&sigma).unwrap();
        let r = verify_special_simplex_pipeline(
            "B_3",
            &b.polytope,
            &sigma,
            &order,
            &Budgets::default(),
        )
        .unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.h_counting, IntPolynomial::from_i64s(&[1, 1, 1]));
        assert_eq!(r.d, 2);
        let text = r.to_string();
        for s in [
            "HYPOTHESES",
            "H-NUMERATOR",
            "G-THEOREM",
            "CONCLUSION",
            "PASS",
        ] {
            assert!(text.contains(s));
        }
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["pass"], serde_json::Value::Bool(true));
        assert_eq!(json["h_counting"], serde_json::json!([1, 1, 1]));
    }

    #[test]
    fn square_edge_fails_special_simplex() {
        let sq = unit_square();
        // vertices 0 = (0,0), 1 = (0,1): an edge
        let order = VertexOrder::new(vec![3, 2, 1, 0]).unwrap();
        let r =
            verify_special_simplex_pipeline("square", &sq, &[0, 1], &order, &Budgets::default())
                .unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures().first(), Some(&"special simplex"));
    }

    #[test]
    fn square_diagonal_passes() {
        let sq = unit_square();
        let order = VertexOrder::new(vec![1, 2, 3, 0]).unwrap();
        let r =
            verify_special_simplex_pipeline("square", &sq, &[0, 3], &order, &Budgets::default())
                .unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.h_counting, IntPolynomial::from_i64s(&[1, 1]));
    }

    #[test]
    fn bad_order_length_is_an_input_error() {
        let sq = unit_square();
        let order = VertexOrder::identity(3);
        assert!(verify_special_simplex_pipeline(
            "square",
            &sq,
            &[0, 3],
            &order,
            &Budgets::default()
        )
        .is_err());
    }
}
