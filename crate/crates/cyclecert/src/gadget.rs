//! Hub-and-spoke gadgets: a cycle through a hub vertex `x` plus `k` chordal
//! paths (spokes) from `x` back to distinct cycle vertices.
//!
//! Every simple cycle in such a gadget uses exactly two of the `k + 2`
//! routes out of `x` (the two cycle arcs and the `k` spokes), which yields
//! the closed spectrum rule implemented by [`GadgetTemplate::derive_spectrum`]:
//!
//! * the full cycle, length `L`;
//! * per spoke `j`: the near-arc cycle `l_j + a_j` and the far-arc cycle
//!   `l_j + (L - a_j)`;
//! * per spoke pair `j < k`: `l_j + l_k + (a_k - a_j)`;
//!
//! for `1 + 2k + k(k-1)/2` cycles in total. Lengths and attachment
//! positions are affine forms in `(t, i)`, so the same machinery serves
//! both the construction's block families and constant-form synthetic
//! gadgets in tests.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactform::{AffineForm, FormError};
use crate::graphcore::Multigraph;

/// Default cap on instantiated vertices.
pub const DEFAULT_VERTEX_CAP: usize = 10_000_000;

/// One chordal path from the hub to the main cycle.
///
/// `length` is the edge count of the path; `attach` is the distance in
/// edges from the hub along the cycle (in the fixed orientation) to the
/// spoke's cycle endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpokeSpec {
    pub length: AffineForm,
    pub attach: AffineForm,
}

/// A cycle of length `cycle_length` through the hub plus ordered spokes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetTemplate {
    pub cycle_length: AffineForm,
    pub spokes: Vec<SpokeSpec>,
}

/// Which pair of hub routes realizes a spectrum entry. Spoke indices are
/// 1-based to match the construction's path numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    /// Both cycle arcs: the main cycle itself.
    FullCycle,
    /// Spoke `j` plus the near arc (hub position 0 to `a_j`).
    Near(u8),
    /// Spoke `j` plus the far arc (`a_j` around to the hub).
    Far(u8),
    /// Spokes `j < k` plus the arc between their attachments.
    Pair(u8, u8),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::FullCycle => write!(f, "full"),
            Route::Near(j) => write!(f, "near({j})"),
            Route::Far(j) => write!(f, "far({j})"),
            Route::Pair(j, k) => write!(f, "pair({j},{k})"),
        }
    }
}

/// One symbolic cycle length together with the route pair realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub form: AffineForm,
    pub route: Route,
}

/// Where in a template a form lives, for violation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormSite {
    CycleLength,
    SpokeLength(u8),
    SpokeAttach(u8),
}

impl fmt::Display for FormSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSite::CycleLength => write!(f, "cycle length"),
            FormSite::SpokeLength(j) => write!(f, "spoke {j} length"),
            FormSite::SpokeAttach(j) => write!(f, "spoke {j} attachment"),
        }
    }
}

/// A geometric or arithmetic defect found at a concrete `(t, i)`.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("{site}: {error}")]
    Form { site: FormSite, error: FormError },
    #[error("cycle length {length} < 1")]
    CycleTooShort { length: i64 },
    #[error("spoke {spoke} has length {length} < 1")]
    SpokeTooShort { spoke: u8, length: i64 },
    #[error("spoke {spoke} attaches at {attach}, outside 1..={limit}")]
    AttachOutOfRange { spoke: u8, attach: i64, limit: i64 },
    #[error("spoke {spoke} attaches at {attach}, not after previous attachment {previous}")]
    AttachNotIncreasing { spoke: u8, attach: i64, previous: i64 },
}

/// Outcome of [`GadgetTemplate::validate_instance`]: empty means OK.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("template has {count} spokes; at most 255 are supported")]
    TooManySpokes { count: usize },
    #[error("invalid instance at (t={t}, i={i}): {report}")]
    Invalid {
        t: i64,
        i: i64,
        report: ValidityReport,
    },
    #[error("instantiation needs {required} vertices, cap is {cap}")]
    SizeLimit { required: u128, cap: usize },
    #[error("gadget spec line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl GadgetTemplate {
    pub fn new(cycle_length: AffineForm, spokes: Vec<SpokeSpec>) -> Self {
        GadgetTemplate {
            cycle_length,
            spokes,
        }
    }

    pub fn spoke_count(&self) -> usize {
        self.spokes.len()
    }

    /// Number of simple cycles the template contains: `1 + 2k + C(k,2)`.
    pub fn cycle_count(&self) -> usize {
        let k = self.spokes.len();
        1 + 2 * k + k * (k - 1) / 2
    }

    /// The complete symbolic cycle spectrum, in a fixed order: the full
    /// cycle, then near/far per spoke, then spoke pairs lexicographically.
    pub fn derive_spectrum(&self) -> Result<Vec<SpectrumEntry>, GadgetError> {
        if self.spokes.len() > u8::MAX as usize {
            return Err(GadgetError::TooManySpokes {
                count: self.spokes.len(),
            });
        }
        let mut out = Vec::with_capacity(self.cycle_count());
        out.push(SpectrumEntry {
            form: self.cycle_length,
            route: Route::FullCycle,
        });
        for (idx, spoke) in self.spokes.iter().enumerate() {
            let j = (idx + 1) as u8;
            out.push(SpectrumEntry {
                form: spoke.length.add(&spoke.attach)?,
                route: Route::Near(j),
            });
            out.push(SpectrumEntry {
                form: spoke.length.add(&self.cycle_length.sub(&spoke.attach)?)?,
                route: Route::Far(j),
            });
        }
        for (idx_j, spoke_j) in self.spokes.iter().enumerate() {
            for (idx_k, spoke_k) in self.spokes.iter().enumerate().skip(idx_j + 1) {
                let form = spoke_j
                    .length
                    .add(&spoke_k.length)?
                    .add(&spoke_k.attach.sub(&spoke_j.attach)?)?;
                out.push(SpectrumEntry {
                    form,
                    route: Route::Pair((idx_j + 1) as u8, (idx_k + 1) as u8),
                });
            }
        }
        Ok(out)
    }

    /// Checks, at `(t, i)`: all forms integral, spoke lengths >= 1, and
    /// attachment positions strictly increasing with `0 < a_1 < ... < L`.
    /// Violations are collected in template order; empty report means OK.
    pub fn validate_instance(&self, t: i64, i: i64) -> ValidityReport {
        let mut report = ValidityReport::default();
        let cycle_len = match self.cycle_length.eval(t, i) {
            Ok(len) => {
                if len < 1 {
                    report.violations.push(Violation::CycleTooShort { length: len });
                    None
                } else {
                    Some(len)
                }
            }
            Err(error) => {
                report.violations.push(Violation::Form {
                    site: FormSite::CycleLength,
                    error,
                });
                None
            }
        };
        let mut previous_attach: Option<i64> = None;
        for (idx, spoke) in self.spokes.iter().enumerate() {
            let j = (idx + 1) as u8;
            match spoke.length.eval(t, i) {
                Ok(len) if len < 1 => report
                    .violations
                    .push(Violation::SpokeTooShort { spoke: j, length: len }),
                Ok(_) => {}
                Err(error) => report.violations.push(Violation::Form {
                    site: FormSite::SpokeLength(j),
                    error,
                }),
            }
            match spoke.attach.eval(t, i) {
                Ok(attach) => {
                    if let Some(len) = cycle_len {
                        if attach < 1 || attach > len - 1 {
                            report.violations.push(Violation::AttachOutOfRange {
                                spoke: j,
                                attach,
                                limit: len - 1,
                            });
                        }
                    }
                    if let Some(prev) = previous_attach {
                        if attach <= prev {
                            report.violations.push(Violation::AttachNotIncreasing {
                                spoke: j,
                                attach,
                                previous: prev,
                            });
                        }
                    }
                    previous_attach = Some(attach);
                }
                Err(error) => report.violations.push(Violation::Form {
                    site: FormSite::SpokeAttach(j),
                    error,
                }),
            }
        }
        report
    }

    /// Vertex and edge counts of the instance at `(t, i)`:
    /// `v = 1 + (L-1) + sum(l_j - 1)` and `e = L + sum(l_j)`.
    pub fn size_at(&self, t: i64, i: i64) -> Result<(i64, i64), FormError> {
        let cycle_len = self.cycle_length.eval(t, i)?;
        let mut vertices = cycle_len as i128;
        let mut edges = cycle_len as i128;
        for spoke in &self.spokes {
            let len = spoke.length.eval(t, i)? as i128;
            vertices += len - 1;
            edges += len;
        }
        Ok((
            i64::try_from(vertices).map_err(|_| FormError::Overflow)?,
            i64::try_from(edges).map_err(|_| FormError::Overflow)?,
        ))
    }

    /// Builds the concrete multigraph at `(t, i)`.
    ///
    /// Layout is deterministic: hub = 0, cycle vertices 1..L-1 in
    /// orientation order (cycle position p is vertex p), then spoke
    /// internal vertices in spoke order. Fails if `validate_instance`
    /// reports violations or the vertex count exceeds `vertex_cap`.
    pub fn instantiate(
        &self,
        t: i64,
        i: i64,
        vertex_cap: usize,
    ) -> Result<Multigraph, GadgetError> {
        let report = self.validate_instance(t, i);
        if !report.is_ok() {
            return Err(GadgetError::Invalid { t, i, report });
        }
        let (vertices, edges) = self.size_at(t, i)?;
        if vertices as u128 > vertex_cap as u128 {
            return Err(GadgetError::SizeLimit {
                required: vertices as u128,
                cap: vertex_cap,
            });
        }
        let cycle_len = self.cycle_length.eval(t, i)? as u32;
        let mut g = Multigraph::new(vertices as usize);
        let mut push = |g: &mut Multigraph, u: u32, v: u32| {
            g.add_edge(u, v).expect("vertex budget precomputed");
        };
        if cycle_len == 1 {
            push(&mut g, 0, 0);
        } else {
            for p in 0..cycle_len - 1 {
                push(&mut g, p, p + 1);
            }
            push(&mut g, cycle_len - 1, 0);
        }
        let mut next_vertex = cycle_len;
        for spoke in &self.spokes {
            let len = spoke.length.eval(t, i)? as u32;
            let attach = spoke.attach.eval(t, i)? as u32;
            let mut prev = 0u32;
            for _ in 0..len - 1 {
                push(&mut g, prev, next_vertex);
                prev = next_vertex;
                next_vertex += 1;
            }
            push(&mut g, prev, attach);
        }
        debug_assert_eq!(g.edge_count() as i64, edges);
        Ok(g)
    }

    /// Renders the declarative text form: a `cycle` header line then one
    /// `spoke <length> @ <attach>` line per spoke.
    pub fn render(&self) -> String {
        let mut out = format!("cycle {}\n", self.cycle_length);
        for spoke in &self.spokes {
            out.push_str(&format!("spoke {} @ {}\n", spoke.length, spoke.attach));
        }
        out
    }
}

impl FromStr for GadgetTemplate {
    type Err = GadgetError;

    /// Parses the declarative format produced by [`GadgetTemplate::render`].
    /// `#` lines and blank lines are ignored.
    fn from_str(text: &str) -> Result<Self, GadgetError> {
        let mut cycle_length: Option<AffineForm> = None;
        let mut spokes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_form = |s: &str| -> Result<AffineForm, GadgetError> {
                s.parse().map_err(|e: FormError| GadgetError::Parse {
                    line: lineno,
                    message: e.to_string(),
                })
            };
            if let Some(rest) = line.strip_prefix("cycle ") {
                if cycle_length.is_some() {
                    return Err(GadgetError::Parse {
                        line: lineno,
                        message: "duplicate cycle line".into(),
                    });
                }
                cycle_length = Some(parse_form(rest.trim())?);
            } else if let Some(rest) = line.strip_prefix("spoke ") {
                let (len_part, attach_part) =
                    rest.split_once('@').ok_or_else(|| GadgetError::Parse {
                        line: lineno,
                        message: "expected \"spoke <length> @ <attach>\"".into(),
                    })?;
                if cycle_length.is_none() {
                    return Err(GadgetError::Parse {
                        line: lineno,
                        message: "spoke before cycle line".into(),
                    });
                }
                spokes.push(SpokeSpec {
                    length: parse_form(len_part.trim())?,
                    attach: parse_form(attach_part.trim())?,
                });
            } else {
                return Err(GadgetError::Parse {
                    line: lineno,
                    message: format!("unrecognized directive: {line:?}"),
                });
            }
        }
        let cycle_length = cycle_length.ok_or(GadgetError::Parse {
            line: 0,
            message: "missing cycle line".into(),
        })?;
        if spokes.len() > u8::MAX as usize {
            return Err(GadgetError::TooManySpokes { count: spokes.len() });
        }
        Ok(GadgetTemplate::new(cycle_length, spokes))
    }
}

/// Convenience constructor for constant-form synthetic gadgets.
pub fn synthetic(cycle_length: i64, spokes: &[(i64, i64)]) -> GadgetTemplate {
    GadgetTemplate::new(
        AffineForm::constant(cycle_length),
        spokes
            .iter()
            .map(|&(length, attach)| SpokeSpec {
                length: AffineForm::constant(length),
                attach: AffineForm::constant(attach),
            })
            .collect(),
    )
}
