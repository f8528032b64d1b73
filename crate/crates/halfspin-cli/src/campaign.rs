//! Campaign drivers: the work behind each subcommand.
//!
//! Each driver returns its rows in a deterministic order — cells in `(g, n)`
//! order, points in composition order, checks in name order — independent of
//! how many workers executed them, so a fixed configuration always produces
//! the same byte stream.

use std::time::Instant;

use anyhow::{bail, Result};
use halfspin::combinatorics::compositions;
use halfspin::correlators::CorrelatorSystem;
use halfspin::exact::Rational;
use halfspin::identities::suites::{
    parity_flip_reports, point_reports, random_reports, string_equation_reports, verify_simplex,
    RandomCheck, SimplexCheck,
};
use halfspin::identities::{
    conjecture_rhs, eval_a, eval_e, eval_p, eval_p_nt, eval_p_tilde, eval_r, eval_s,
    faber_integral, tilde_s_closed, AVariant, Optimizer, SimplexPoint,
};
use rayon::prelude::*;

use crate::report::Row;

/// Index-tuple length bound of the string-equation sweep.
const STRING_K_MAX: usize = 5;
/// Index magnitude bound of the string-equation sweep.
const STRING_BOUND: i64 = 8;
/// Entry-count bound of the exhaustive parity-flip sweep.
const PARITY_N_MAX: usize = 3;
/// Entry bound of the exhaustive parity-flip sweep.
const PARITY_A_MAX: u64 = 4;
/// Shift bound of the exhaustive parity-flip sweep.
const PARITY_T_MAX: u64 = 2;

/// A `(g, n)` range campaign with the knobs shared by `verify`, `scan` and
/// `bench`. Both ranges are inclusive; `seed` only feeds the randomized
/// suites.
#[derive(Clone, Copy, Debug)]
pub struct Campaign {
    pub g_lo: u32,
    pub g_hi: u32,
    pub n_lo: usize,
    pub n_hi: usize,
    pub seed: u64,
    pub optimizer: Optimizer,
}

impl Campaign {
    /// The `(g, n)` cells in range order.
    fn cells(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for g in self.g_lo..=self.g_hi {
            for n in self.n_lo..=self.n_hi {
                out.push((g, n));
            }
        }
        out
    }
}

/// Any check name the `verify` command accepts: a per-point simplex check, a
/// seeded randomized suite, or one of the exhaustive sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnyCheck {
    Simplex(SimplexCheck),
    Random(RandomCheck),
    StringEquation,
    ParityFlip,
}

impl AnyCheck {
    pub fn parse(name: &str) -> Option<Self> {
        if let Some(check) = SimplexCheck::parse(name) {
            return Some(AnyCheck::Simplex(check));
        }
        if let Some(check) = RandomCheck::parse(name) {
            return Some(AnyCheck::Random(check));
        }
        match name {
            "string-equation" => Some(AnyCheck::StringEquation),
            "parity-flip" => Some(AnyCheck::ParityFlip),
            _ => None,
        }
    }

    /// Every accepted check name, for usage messages.
    pub fn known_names() -> Vec<&'static str> {
        let mut names: Vec<&'static str> = SimplexCheck::ALL.iter().map(|c| c.name()).collect();
        names.extend(RandomCheck::ALL.iter().map(|c| c.name()));
        names.push("string-equation");
        names.push("parity-flip");
        names.sort_unstable();
        names
    }
}

/// The set of checks a `verify` run executes, normalized to the library's
/// canonical orders.
#[derive(Clone, Debug)]
pub struct Selection {
    simplex: Vec<SimplexCheck>,
    random: Vec<RandomCheck>,
    string_equation: bool,
    parity_flip: bool,
}

impl Selection {
    /// Everything: the default when no `--check` is given.
    pub fn all() -> Self {
        Selection {
            simplex: SimplexCheck::ALL.to_vec(),
            random: RandomCheck::ALL.to_vec(),
            string_equation: true,
            parity_flip: true,
        }
    }

    /// The selection naming exactly the given checks.
    pub fn from_checks(checks: &[AnyCheck]) -> Self {
        let keep_simplex = |c: &SimplexCheck| checks.contains(&AnyCheck::Simplex(*c));
        let keep_random = |c: &RandomCheck| checks.contains(&AnyCheck::Random(*c));
        Selection {
            simplex: SimplexCheck::ALL
                .iter()
                .copied()
                .filter(keep_simplex)
                .collect(),
            random: RandomCheck::ALL
                .iter()
                .copied()
                .filter(keep_random)
                .collect(),
            string_equation: checks.contains(&AnyCheck::StringEquation),
            parity_flip: checks.contains(&AnyCheck::ParityFlip),
        }
    }

    fn point_scoped_only(&self) -> bool {
        self.random.is_empty() && !self.string_equation && !self.parity_flip
    }
}

/// Runs a verification campaign over the whole `(g, n)` range: the selected
/// simplex checks at every simplex point, then the selected randomized
/// suites, cell by cell; the selected sweeps come last (the string-equation
/// sweep honours the genus range, the parity-flip sweep is a fixed
/// exhaustive table).
pub fn verify_range(campaign: &Campaign, selection: &Selection) -> Result<Vec<Row>> {
    let per_cell: Vec<Result<Vec<Row>>> = campaign
        .cells()
        .par_iter()
        .map(|&(g, n)| verify_cell(campaign, selection, g, n))
        .collect();
    let mut rows = Vec::new();
    for cell in per_cell {
        rows.extend(cell?);
    }
    if selection.string_equation {
        let reports =
            string_equation_reports(campaign.g_lo, campaign.g_hi, STRING_K_MAX, STRING_BOUND)?;
        rows.extend(reports.iter().map(Row::from_report));
    }
    if selection.parity_flip {
        let reports = parity_flip_reports(PARITY_N_MAX, PARITY_A_MAX, PARITY_T_MAX);
        rows.extend(reports.iter().map(Row::from_report));
    }
    Ok(rows)
}

fn verify_cell(campaign: &Campaign, selection: &Selection, g: u32, n: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    if !selection.simplex.is_empty() {
        let reports = verify_simplex(g, n, &selection.simplex, campaign.optimizer)?;
        rows.extend(reports.iter().map(Row::from_report));
    }
    for &check in &selection.random {
        let reports = random_reports(check, g, n, campaign.seed, campaign.optimizer)?;
        rows.extend(reports.iter().map(Row::from_report));
    }
    Ok(rows)
}

/// Runs checks at one explicit point. Only per-point simplex checks apply
/// here; asking for a randomized suite or a sweep together with `--a` is a
/// usage error. Without an explicit check list the point gets every check
/// defined there: all of them on the simplex, the anywhere-defined `P`- and
/// `R`-comparisons off it.
pub fn verify_point(
    g: u32,
    a: Vec<u64>,
    selection: &Selection,
    explicit: bool,
    optimizer: Optimizer,
) -> Result<Vec<Row>> {
    if explicit && !selection.point_scoped_only() {
        bail!("randomized suites and sweeps scan a (g, n) range; drop --a to run them");
    }
    let point = SimplexPoint::new(g, a)?;
    let checks: Vec<SimplexCheck> = if explicit {
        selection.simplex.clone()
    } else if point.on_simplex() {
        SimplexCheck::ALL.to_vec()
    } else {
        vec![SimplexCheck::MainIdentity, SimplexCheck::RAgreement]
    };
    let reports = point_reports(&point, &checks, optimizer)?;
    Ok(reports.iter().map(Row::from_report).collect())
}

/// A quantity the `eval` and `scan` commands can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalTarget {
    /// The main-identity sum (zero on the simplex).
    P,
    /// The same sum with falling factorials in place of powers.
    R,
    /// `P` divided by the product of the entries.
    PTilde,
    /// One splitting slice `P_{n,t}`; needs `--t`.
    PNt,
    /// The alternating binomial sum with total `2g - 4 + n`.
    ALow,
    /// The alternating binomial sum with total `2g - 2 + n`.
    AHigh,
    /// The partition expression over the star system.
    EStar,
    /// The partition expression over the extended double-factorial system.
    EExtended,
    /// The splitting generating polynomial at `--x`.
    S,
    /// Its closed form at `--x`.
    TildeS,
    /// The conjectured value of `P_{n,t}`; needs `--t`.
    ConjectureRhs,
    /// The normalized Faber integral with `--a` as its exponent vector.
    Integral,
}

impl EvalTarget {
    /// Canonical name, as emitted in the `check` column.
    pub fn name(self) -> &'static str {
        match self {
            EvalTarget::P => "p",
            EvalTarget::R => "r",
            EvalTarget::PTilde => "p-tilde",
            EvalTarget::PNt => "p-nt",
            EvalTarget::ALow => "a-low",
            EvalTarget::AHigh => "a-high",
            EvalTarget::EStar => "e-star",
            EvalTarget::EExtended => "e-extended",
            EvalTarget::S => "s",
            EvalTarget::TildeS => "tilde-s",
            EvalTarget::ConjectureRhs => "conjecture-rhs",
            EvalTarget::Integral => "integral",
        }
    }
}

/// A fully specified evaluation: the target plus whichever of `--t` / `--x`
/// it needs.
#[derive(Clone, Debug)]
pub struct EvalSpec {
    pub target: EvalTarget,
    pub t: Option<usize>,
    pub x: Option<Rational>,
}

impl EvalSpec {
    fn t(&self) -> Result<usize> {
        match self.t {
            Some(t) => Ok(t),
            None => bail!("target `{}` needs --t", self.target.name()),
        }
    }

    fn x(&self) -> Result<&Rational> {
        match &self.x {
            Some(x) => Ok(x),
            None => bail!("target `{}` needs --x", self.target.name()),
        }
    }

    /// The `t` column of the emitted rows: the splitting index when the
    /// target has one, the abscissa when it is an integer.
    fn t_column(&self) -> Option<i64> {
        match self.target {
            EvalTarget::PNt | EvalTarget::ConjectureRhs => self.t.map(|t| t as i64),
            EvalTarget::S | EvalTarget::TildeS => self
                .x
                .as_ref()
                .filter(|x| x.is_integer())
                .and_then(|x| i64::try_from(&x.to_integer()).ok()),
            _ => None,
        }
    }
}

/// Evaluates one quantity at one explicit point.
pub fn eval_point(g: u32, a: Vec<u64>, spec: &EvalSpec, optimizer: Optimizer) -> Result<Row> {
    if spec.target == EvalTarget::Integral {
        let value = faber_integral(g, &a)?;
        return Ok(Row::from_value(
            "integral",
            g,
            a.len(),
            None,
            Some(a),
            &value,
        ));
    }
    let point = SimplexPoint::new(g, a.clone())?;
    let value = match spec.target {
        EvalTarget::P => eval_p(&point, optimizer),
        EvalTarget::R => eval_r(&point, optimizer),
        EvalTarget::PTilde => eval_p_tilde(&point, optimizer)?,
        EvalTarget::PNt => eval_p_nt(&point, spec.t()?, optimizer)?,
        EvalTarget::ALow => eval_a(&point, AVariant::Low),
        EvalTarget::AHigh => eval_a(&point, AVariant::High),
        EvalTarget::EStar => eval_e(&point, &CorrelatorSystem::faber_star(g)?)?,
        EvalTarget::EExtended => eval_e(&point, &CorrelatorSystem::double_factorial(g)?)?,
        EvalTarget::S => eval_s(&point, spec.x()?, optimizer)?,
        EvalTarget::TildeS => tilde_s_closed(&point, spec.x()?, optimizer)?,
        EvalTarget::ConjectureRhs => conjecture_rhs(&point, spec.t()?)?,
        EvalTarget::Integral => unreachable!("handled above"),
    };
    Ok(Row::from_value(
        spec.target.name(),
        g,
        a.len(),
        spec.t_column(),
        Some(a),
        &value,
    ))
}

/// Evaluates one quantity over a `(g, n)` range: at every on-simplex point
/// for the point evaluators, over every positive exponent vector of the
/// right degree for `integral`. Cells where the target is undefined — `--t`
/// exceeding `n`, zero entries for `p-tilde`, degree too low for `integral`
/// — contribute no rows.
pub fn scan_range(campaign: &Campaign, spec: &EvalSpec) -> Result<Vec<Row>> {
    if matches!(spec.target, EvalTarget::PNt | EvalTarget::ConjectureRhs) {
        spec.t()?;
    }
    if matches!(spec.target, EvalTarget::S | EvalTarget::TildeS) {
        spec.x()?;
    }
    let per_cell: Vec<Result<Vec<Row>>> = campaign
        .cells()
        .par_iter()
        .map(|&(g, n)| scan_cell(g, n, spec, campaign.optimizer))
        .collect();
    let mut rows = Vec::new();
    for cell in per_cell {
        rows.extend(cell?);
    }
    Ok(rows)
}

fn scan_cell(g: u32, n: usize, spec: &EvalSpec, optimizer: Optimizer) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    if spec.target == EvalTarget::Integral {
        // Exponents are positive and sum to the integral's degree g - 2 + n.
        let degree = u64::from(g) - 2 + n as u64;
        if degree < n as u64 {
            return Ok(rows);
        }
        for slack in compositions(degree - n as u64, n) {
            let d: Vec<u64> = slack.iter().map(|v| v + 1).collect();
            let value = faber_integral(g, &d)?;
            rows.push(Row::from_value("integral", g, n, None, Some(d), &value));
        }
        return Ok(rows);
    }
    if matches!(spec.target, EvalTarget::PNt | EvalTarget::ConjectureRhs) && spec.t()? > n {
        return Ok(rows);
    }
    let total = 2 * u64::from(g) + n as u64 - 3;
    for a in compositions(total, n) {
        if spec.target == EvalTarget::PTilde && a.contains(&0) {
            continue;
        }
        rows.push(eval_point(g, a, spec, optimizer)?);
    }
    Ok(rows)
}

/// Times the full per-point check battery at every simplex point of the
/// range, sequentially so the wall times do not overlap. Returns the rows
/// and the total elapsed milliseconds.
pub fn bench_range(campaign: &Campaign) -> Result<(Vec<Row>, u64)> {
    let mut rows = Vec::new();
    let mut total = 0u64;
    for (g, n) in campaign.cells() {
        let simplex_total = 2 * u64::from(g) + n as u64 - 3;
        for a in compositions(simplex_total, n) {
            let point = SimplexPoint::new(g, a.clone())?;
            let start = Instant::now();
            point_reports(&point, &SimplexCheck::ALL, campaign.optimizer)?;
            let millis = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
            total = total.saturating_add(millis);
            rows.push(Row {
                check: "bench".to_string(),
                g: Some(g),
                n: Some(n),
                t: None,
                a: Some(a),
                status: "pass",
                lhs: None,
                rhs: None,
                value: None,
                millis,
            });
        }
    }
    Ok((rows, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use halfspin::exact::rat;

    #[test]
    fn check_names_parse_and_route() {
        assert_eq!(
            AnyCheck::parse("main-identity"),
            Some(AnyCheck::Simplex(SimplexCheck::MainIdentity))
        );
        assert_eq!(
            AnyCheck::parse("p-vanishing"),
            Some(AnyCheck::Simplex(SimplexCheck::MainIdentity))
        );
        assert_eq!(
            AnyCheck::parse("hyperplane-vanishing"),
            Some(AnyCheck::Random(RandomCheck::HyperplaneVanishing))
        );
        assert_eq!(
            AnyCheck::parse("string-equation"),
            Some(AnyCheck::StringEquation)
        );
        assert_eq!(AnyCheck::parse("parity-flip"), Some(AnyCheck::ParityFlip));
        assert_eq!(AnyCheck::parse("no-such"), None);
        assert_eq!(AnyCheck::known_names().len(), 7 + 6 + 2);
    }

    #[test]
    fn point_mode_rejects_range_checks() {
        let selection =
            Selection::from_checks(&[AnyCheck::Random(RandomCheck::HyperplaneVanishing)]);
        let result = verify_point(2, vec![1, 2], &selection, true, Optimizer::Census);
        assert!(result.is_err());
    }

    #[test]
    fn default_point_checks_depend_on_the_simplex() {
        let on = verify_point(2, vec![1, 2], &Selection::all(), false, Optimizer::Census).unwrap();
        // a-variant, conjecture t = 0..2, main identity, r-agreement,
        // recursion t = 0..2, s-polynomial at six abscissas.
        assert_eq!(on.len(), 1 + 3 + 1 + 1 + 3 + 6);
        assert!(on.iter().all(|row| !row.is_fail()));
        let off = verify_point(2, vec![2, 2], &Selection::all(), false, Optimizer::Census).unwrap();
        assert_eq!(off.len(), 2);
        let checks: Vec<&str> = off.iter().map(|row| row.check.as_str()).collect();
        assert_eq!(checks, ["main-identity", "r-agreement"]);
    }

    #[test]
    fn eval_matches_the_frozen_examples() {
        let spec = EvalSpec {
            target: EvalTarget::P,
            t: None,
            x: None,
        };
        let row = eval_point(2, vec![1, 2], &spec, Optimizer::Census).unwrap();
        assert_eq!(row.value.as_deref(), Some("0"));
        let row = eval_point(2, vec![2], &spec, Optimizer::Census).unwrap();
        assert_eq!(row.value.as_deref(), Some("-20"));
        let spec = EvalSpec {
            target: EvalTarget::Integral,
            t: None,
            x: None,
        };
        let row = eval_point(2, vec![1], &spec, Optimizer::Census).unwrap();
        assert_eq!(row.value.as_deref(), Some("1/2880"));
    }

    #[test]
    fn eval_records_integer_abscissas_in_the_t_column() {
        let spec = EvalSpec {
            target: EvalTarget::S,
            t: None,
            x: Some(rat(-2)),
        };
        let row = eval_point(2, vec![1, 2], &spec, Optimizer::Census).unwrap();
        assert_eq!(row.t, Some(-2));
        let spec = EvalSpec {
            target: EvalTarget::S,
            t: None,
            x: Some(halfspin::exact::ratio(1, 2).unwrap()),
        };
        let row = eval_point(2, vec![1, 2], &spec, Optimizer::Census).unwrap();
        assert_eq!(row.t, None);
    }

    #[test]
    fn scan_skips_undefined_points() {
        let campaign = Campaign {
            g_lo: 2,
            g_hi: 2,
            n_lo: 2,
            n_hi: 2,
            seed: 0,
            optimizer: Optimizer::Census,
        };
        let spec = EvalSpec {
            target: EvalTarget::PTilde,
            t: None,
            x: None,
        };
        let rows = scan_range(&campaign, &spec).unwrap();
        // Compositions of 3 into 2 parts, minus the two with a zero entry.
        assert_eq!(rows.len(), 2);
        assert!(rows
            .iter()
            .all(|row| row.a.as_ref().unwrap().iter().all(|&v| v > 0)));
        let spec = EvalSpec {
            target: EvalTarget::PNt,
            t: Some(3),
            x: None,
        };
        assert!(scan_range(&campaign, &spec).unwrap().is_empty());
    }

    #[test]
    fn integral_scan_enumerates_positive_exponents() {
        let campaign = Campaign {
            g_lo: 3,
            g_hi: 3,
            n_lo: 2,
            n_hi: 2,
            seed: 0,
            optimizer: Optimizer::Census,
        };
        let spec = EvalSpec {
            target: EvalTarget::Integral,
            t: None,
            x: None,
        };
        let rows = scan_range(&campaign, &spec).unwrap();
        // Positive exponent pairs summing to 3: (1, 2) and (2, 1).
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].a.as_deref(), Some(&[1, 2][..]));
        assert_eq!(rows[1].a.as_deref(), Some(&[2, 1][..]));
    }
}
