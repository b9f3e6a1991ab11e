//! Codes of prescribed level from GF(2) maps.
//!
//! Given `P: GF(2)^n → GF(2)` of combinatorial degree `r + 1`, write
//! `P(x) = Σ_{J∈𝒥} (1 + Π_{j∈J}(1 + x_j))`. Each `J = {j_1 < … < j_t}`
//! selects the coordinates `(x_{j_1}, …, x_{j_t}, 0, …, 0)` as a coefficient
//! vector of a simplex code of dimension `r + 1`, and `π(x)` concatenates
//! those simplex codewords over `𝒥`. Every nonzero simplex codeword weighs
//! `2^r`, so `w(π(x))/2^r` counts the `J` with `π_J(x) ≠ 0`, which is
//! `P(x)` mod 2.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::polarization::{comb_degree_formula, derived_form_eval, CombDegree};
use crate::poly_map::{to_complemented_anf, MultiExp, ReducedPoly, SubsetFamily};

use super::code::{level_of_weights, rank, BinaryCode, CodeLevel, MAX_CODE_DIM};
use super::codeword::Codeword;
use super::simplex::{SimplexCode, MAX_SIMPLEX_DIM};

/// Largest ambient length a build may produce.
pub const MAX_CODE_LENGTH: usize = 1 << 24;

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Simplex generator to use instead of the counting-order default.
    pub simplex: Option<SimplexCode>,
    /// Order of `𝒥`; must list exactly the sets the transform produces.
    pub order: Option<SubsetFamily>,
    /// Simplex dimension `m ≥ cdeg P`; the code then has level `m − 1`.
    /// Defaults to `cdeg P`.
    pub block_dim: Option<usize>,
}

/// The output of [`build_code`]: the code `C = π(V)` plus everything needed
/// to recompute `π`.
#[derive(Clone, Debug)]
pub struct CodeBuild {
    poly: ReducedPoly,
    family: SubsetFamily,
    simplex: SimplexCode,
    code: BinaryCode,
}

impl CodeBuild {
    pub fn poly(&self) -> &ReducedPoly {
        &self.poly
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.family
    }

    pub fn simplex(&self) -> &SimplexCode {
        &self.simplex
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn num_vars(&self) -> usize {
        self.poly.arity()
    }

    /// The `r` for which `w(π(x))/2^r ≡ P(x)`.
    pub fn level_target(&self) -> u32 {
        self.simplex.dim() as u32 - 1
    }

    pub fn block_length(&self) -> usize {
        self.simplex.length()
    }

    /// `|𝒥|·(2^m − 1)`.
    pub fn expected_length(&self) -> usize {
        self.family.len() * self.simplex.length()
    }

    /// `π_J(x)` as a simplex codeword; bit `i` of `x` is `x_{i+1}`.
    pub fn embed_block(&self, set: &[usize], x: u64) -> Codeword {
        let d = set
            .iter()
            .enumerate()
            .fold(0u64, |acc, (t, &j)| acc | (x >> (j - 1) & 1) << t);
        self.simplex.encode(d)
    }

    /// `π(x)`, the concatenation of `π_J(x)` over `𝒥` in order.
    pub fn embed(&self, x: u64) -> Codeword {
        let blocks: Vec<Codeword> = self
            .family
            .sets()
            .iter()
            .map(|set| self.embed_block(set, x))
            .collect();
        Codeword::concat(&blocks)
    }
}

fn require_gf2(poly: &ReducedPoly) -> Result<()> {
    if poly.field().order() != 2 {
        return Err(Error::FieldMismatch(format!(
            "codes are built from maps into GF(2), got GF({})",
            poly.field()
        )));
    }
    Ok(())
}

/// Builds `C = π(V)` for `P` with `cdeg P = r + 1`, finite and at least 1.
/// `P` must depend on every variable, otherwise `π` is not injective.
pub fn build_code(poly: &ReducedPoly, opts: &BuildOptions) -> Result<CodeBuild> {
    require_gf2(poly)?;
    let deg = match comb_degree_formula(poly) {
        CombDegree::Finite(0) => {
            return Err(Error::Degree("0 (the zero map gives the zero code)".into()))
        }
        CombDegree::Infinite => {
            return Err(Error::Degree("infinity (P(0) must be 0)".into()))
        }
        CombDegree::Finite(d) => d as usize,
    };
    let m = match (&opts.simplex, opts.block_dim) {
        (Some(s), Some(b)) if s.dim() != b => {
            return Err(Error::Invalid(format!(
                "simplex generator has dimension {} but block dimension {b} was requested",
                s.dim()
            )))
        }
        (Some(s), _) => s.dim(),
        (None, Some(b)) => b,
        (None, None) => deg,
    };
    if m < deg {
        return Err(Error::Invalid(format!(
            "block dimension {m} is below cdeg P = {deg}"
        )));
    }
    if m > MAX_SIMPLEX_DIM {
        return Err(Error::cap("simplex dimension", MAX_SIMPLEX_DIM as u64));
    }
    let simplex = match &opts.simplex {
        Some(s) => s.clone(),
        None => SimplexCode::counting(m)?,
    };
    let mut family = to_complemented_anf(poly)?;
    if let Some(order) = &opts.order {
        family = family.reordered(order)?;
    }
    let used: std::collections::BTreeSet<usize> = family.sets().iter().flatten().copied().collect();
    let unused: Vec<String> = (1..=poly.arity())
        .filter(|j| !used.contains(j))
        .map(|j| format!("x{j}"))
        .collect();
    if !unused.is_empty() {
        return Err(Error::Invalid(format!(
            "P does not depend on {}, so π would map those basis vectors to 0",
            unused.join(", ")
        )));
    }
    let length = family
        .len()
        .checked_mul(simplex.length())
        .filter(|&l| l <= MAX_CODE_LENGTH)
        .ok_or_else(|| Error::cap("code length", MAX_CODE_LENGTH as u64))?;

    let mut build = CodeBuild {
        poly: poly.clone(),
        family,
        simplex,
        code: BinaryCode::zero(length),
    };
    let rows = (0..poly.arity()).map(|i| build.embed(1 << i)).collect();
    build.code = BinaryCode::new(length, rows)
        .map_err(|e| Error::Internal(format!("π is not injective: {e}")))?;
    Ok(build)
}

/// Outcome of checking a generator matrix against `P`.
#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub level: CodeLevel,
    pub length: usize,
    pub dim: usize,
    pub r: u32,
    pub expected_length: Option<usize>,
    pub violations: Vec<String>,
}

impl BuildReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks rows `c_1, …, c_n` (row `i` the image of `e_i`) against `P`: for
/// every `x`, `2^r` divides `w(Σ x_i c_i)` and the quotient is `P(x)` mod 2;
/// the rows are independent; the level is exactly `r` when `P ≠ 0`; and the
/// length matches `expected_length` when given.
pub fn verify_generator(
    poly: &ReducedPoly,
    rows: &[Codeword],
    r: u32,
    expected_length: Option<usize>,
) -> Result<BuildReport> {
    require_gf2(poly)?;
    let n = poly.arity();
    if rows.len() > MAX_CODE_DIM {
        return Err(Error::cap("rows to verify", MAX_CODE_DIM as u64));
    }
    let length = rows.first().map(Codeword::len).unwrap_or(expected_length.unwrap_or(0));
    if rows.iter().any(|c| c.len() != length) {
        return Err(Error::Invalid("rows have different lengths".into()));
    }
    let mut violations = Vec::new();
    let dim = rank(rows);
    if rows.len() != n {
        violations.push(format!("expected {n} rows (one per basis vector), got {}", rows.len()));
    }
    if dim != rows.len() {
        violations.push(format!("rows are dependent: rank {dim} < {}", rows.len()));
    }

    let mut weights = Vec::with_capacity(1 << rows.len());
    let mut cur = Codeword::zeros(length);
    for step in 0u64..(1 << rows.len()) {
        if step > 0 {
            cur.xor_assign(&rows[step.trailing_zeros() as usize]);
        }
        let x = step ^ (step >> 1);
        let w = cur.weight();
        weights.push(w);
        if rows.len() != n {
            continue;
        }
        let px = poly.eval_bits(x) as u64;
        if !w.is_multiple_of(1 << r) {
            violations.push(format!("x={}: weight {w} is not divisible by 2^{r}", fmt_point(x, n)));
        } else if (w >> r) & 1 != px {
            violations.push(format!(
                "x={}: weight {w} gives w/2^{r} = {} but P(x) = {px}",
                fmt_point(x, n),
                w >> r
            ));
        }
    }

    let level = level_of_weights(weights);
    if !poly.is_zero() && level != CodeLevel::Finite(r) {
        violations.push(format!("level is {level}, expected exactly {r}"));
    }
    if let Some(expected) = expected_length {
        if length != expected {
            violations.push(format!("length is {length}, expected {expected}"));
        }
    }
    Ok(BuildReport {
        level,
        length,
        dim,
        r,
        expected_length,
        violations,
    })
}

/// [`verify_generator`] on a build, plus `π(x) = Σ x_i π(e_i)` for every
/// `x` and the length `|𝒥|·(2^{r+1} − 1)`.
pub fn verify_build(build: &CodeBuild) -> Result<BuildReport> {
    let mut report = verify_generator(
        build.poly(),
        build.code().rows(),
        build.level_target(),
        Some(build.expected_length()),
    )?;
    let n = build.num_vars();
    for x in 0u64..(1 << n) {
        if build.embed(x) != build.code().codeword(x) {
            report
                .violations
                .push(format!("π is not linear at x={}", fmt_point(x, n)));
        }
    }
    Ok(report)
}

fn fmt_point(x: u64, n: usize) -> String {
    (0..n).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Bits `α_i`, `β_ij`, `γ_ijk` for a doubly even code with basis
/// `c_1, …, c_n`: `w(c_i)/4`, `w(c_i ∩ c_j)/2` and `w(c_i ∩ c_j ∩ c_k)`,
/// all mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prescription {
    pub alpha: Vec<u8>,
    pub beta: Vec<Vec<u8>>,
    pub gamma: Vec<Vec<Vec<u8>>>,
}

impl Prescription {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Shapes, bit values, symmetry, and vanishing of every entry with a
    /// repeated index (a doubly even code forces `w(c_i)/2` and
    /// `w(c_i ∩ c_j)` to be even).
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.beta.len() != n || self.beta.iter().any(|r| r.len() != n) {
            return bad(format!("beta must be {n}x{n}"));
        }
        if self.gamma.len() != n
            || self
                .gamma
                .iter()
                .any(|m| m.len() != n || m.iter().any(|r| r.len() != n))
        {
            return bad(format!("gamma must be {n}x{n}x{n}"));
        }
        let bits = self
            .alpha
            .iter()
            .chain(self.beta.iter().flatten())
            .chain(self.gamma.iter().flatten().flatten());
        if bits.into_iter().any(|&b| b > 1) {
            return bad("prescribed values must be bits".into());
        }
        for i in 0..n {
            for j in 0..n {
                if self.beta[i][j] != self.beta[j][i] {
                    return bad(format!("beta is not symmetric at ({}, {})", i + 1, j + 1));
                }
                for k in 0..n {
                    let g = self.gamma[i][j][k];
                    let perms = [
                        self.gamma[i][k][j],
                        self.gamma[j][i][k],
                        self.gamma[j][k][i],
                        self.gamma[k][i][j],
                        self.gamma[k][j][i],
                    ];
                    if perms.iter().any(|&h| h != g) {
                        return bad(format!(
                            "gamma is not symmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        ));
                    }
                    if g == 1 && (i == j || j == k || i == k) {
                        return bad(format!(
                            "gamma({}, {}, {}) has a repeated index and must be 0",
                            i + 1,
                            j + 1,
                            k + 1
                        ));
                    }
                }
            }
            if self.beta[i][i] != 0 {
                return bad(format!("beta({0}, {0}) must be 0", i + 1));
            }
        }
        Ok(())
    }

    /// The unique `P` of degree at most 3 with `P(e_i) = α_i`,
    /// `Δ²P(e_i, e_j) = β_ij` and `Δ³P(e_i, e_j, e_k) = γ_ijk`.
    pub fn poly(&self) -> Result<ReducedPoly> {
        self.validate()?;
        let n = self.n();
        let mut p = ReducedPoly::zero(FieldCtx::gf2(), n);
        let mono = |idx: &[usize]| {
            let mut e = vec![0u32; n];
            for &i in idx {
                e[i] = 1;
            }
            MultiExp::new(e)
        };
        for i in 0..n {
            p.add_term(mono(&[i]), self.alpha[i] as u32);
            for j in i + 1..n {
                p.add_term(mono(&[i, j]), self.beta[i][j] as u32);
                for k in j + 1..n {
                    p.add_term(mono(&[i, j, k]), self.gamma[i][j][k] as u32);
                }
            }
        }
        Ok(p)
    }

    /// Reads `α, β, γ` off a GF(2) map through its derived forms at basis
    /// vectors.
    pub fn from_poly(poly: &ReducedPoly) -> Result<Self> {
        require_gf2(poly)?;
        let n = poly.arity();
        let table = poly.to_table()?;
        let f2 = FieldCtx::gf2();
        let basis: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f2.one() } else { f2.zero() }).collect())
            .collect();
        let form = |idx: &[usize]| -> Result<u8> {
            let tuple: Vec<_> = idx.iter().map(|&i| basis[i].clone()).collect();
            Ok(derived_form_eval(&table, &tuple)?.encoding() as u8)
        };
        let mut alpha = vec![0; n];
        let mut beta = vec![vec![0; n]; n];
        let mut gamma = vec![vec![vec![0; n]; n]; n];
        for i in 0..n {
            alpha[i] = form(&[i])?;
            for j in 0..n {
                beta[i][j] = form(&[i, j])?;
                for (k, g) in gamma[i][j].iter_mut().enumerate() {
                    *g = form(&[i, j, k])?;
                }
            }
        }
        Ok(Prescription { alpha, beta, gamma })
    }

    /// Entries that `rows` (a basis `c_1, …, c_n`) fail to realize.
    pub fn violations(&self, rows: &[Codeword]) -> Vec<String> {
        let n = self.n();
        let mut out = Vec::new();
        if rows.len() != n {
            out.push(format!("expected {n} basis words, got {}", rows.len()));
            return out;
        }
        for i in 0..n {
            let w = rows[i].weight();
            if !w.is_multiple_of(4) || ((w / 4) % 2) as u8 != self.alpha[i] {
                out.push(format!("w(c{}) = {w} does not give alpha = {}", i + 1, self.alpha[i]));
            }
            for j in 0..n {
                let w = rows[i].intersection_weight(&rows[j]);
                if !w.is_multiple_of(2) || ((w / 2) % 2) as u8 != self.beta[i][j] {
                    out.push(format!(
                        "w(c{} ∩ c{}) = {w} does not give beta = {}",
                        i + 1,
                        j + 1,
                        self.beta[i][j]
                    ));
                }
                for k in 0..n {
                    let w = rows[i].triple_intersection_weight(&rows[j], &rows[k]);
                    if (w % 2) as u8 != self.gamma[i][j][k] {
                        out.push(format!(
                            "w(c{} ∩ c{} ∩ c{}) = {w} does not give gamma = {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            self.gamma[i][j][k]
                        ));
                    }
                }
            }
        }
        out
    }
}

/// A doubly even code realizing the prescription: `build_code(P)` with
/// simplex blocks of dimension 3, where `P` comes from
/// [`Prescription::poly`]. The all-zero prescription is realized only by the
/// zero code and is rejected here.
pub fn prescribe_cg(pres: &Prescription) -> Result<CodeBuild> {
    let poly = pres.poly()?;
    build_code(
        &poly,
        &BuildOptions {
            block_dim: Some(3),
            ..BuildOptions::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_poly(n: usize, s: &str) -> ReducedPoly {
        ReducedPoly::parse(&FieldCtx::gf2(), Some(n), s).unwrap()
    }

    fn worked_example_build() -> CodeBuild {
        let p = gf2_poly(3, "x2 + x1*x3 + x1*x2*x3");
        let opts = BuildOptions {
            simplex: Some(SimplexCode::worked_example()),
            order: Some("1,2;2,3;1,2,3".parse().unwrap()),
            block_dim: None,
        };
        build_code(&p, &opts).unwrap()
    }

    #[test]
    fn worked_example_rows() {
        let b = worked_example_build();
        let rows: Vec<String> = b.code().rows().iter().map(|r| r.to_blocks(7)).collect();
        assert_eq!(
            rows,
            vec![
                "1000111,0000000,1000111",
                "0101011,1000111,0101011",
                "0000000,0101011,0011101"
            ]
        );
        let c3 = b.embed(0b100);
        assert_eq!(c3.weight(), 8);
        assert_eq!(b.poly().eval_bits(0b100), 0);
        let c = b.embed(0b111);
        assert_eq!(c.to_blocks(7), "1101100,1101100,1110001");
        assert_eq!(c.weight(), 12);
        assert_eq!(b.poly().eval_bits(0b111), 1);
        let report = verify_build(&b).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(report.length, 21);
        assert_eq!(report.level, CodeLevel::Finite(2));
        assert_eq!(report.dim, 3);
    }

    #[test]
    fn quadratic_gives_level_one() {
        let b = build_code(&gf2_poly(2, "x1*x2"), &BuildOptions::default()).unwrap();
        assert_eq!(b.level_target(), 1);
        assert_eq!(b.code().level().unwrap(), CodeLevel::Finite(1));
        assert!(verify_build(&b).unwrap().ok());
        let words = b.code().codewords().unwrap();
        let distinct: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let opts = BuildOptions::default();
        assert!(matches!(build_code(&gf2_poly(2, "0"), &opts), Err(Error::Degree(_))));
        assert!(matches!(build_code(&gf2_poly(2, "1 + x1"), &opts), Err(Error::Degree(_))));
        let f3 = FieldCtx::new(3, 1).unwrap();
        let p = ReducedPoly::parse(&f3, Some(1), "x1").unwrap();
        assert!(matches!(build_code(&p, &opts), Err(Error::FieldMismatch(_))));
        let low = BuildOptions {
            block_dim: Some(1),
            ..BuildOptions::default()
        };
        assert!(build_code(&gf2_poly(2, "x1*x2"), &low).is_err());
        let clash = BuildOptions {
            simplex: Some(SimplexCode::worked_example()),
            block_dim: Some(4),
            ..BuildOptions::default()
        };
        assert!(build_code(&gf2_poly(2, "x1*x2"), &clash).is_err());
        assert!(matches!(
            build_code(&gf2_poly(3, "x1*x2"), &opts),
            Err(Error::Invalid(m)) if m.contains("x3")
        ));
        let bad_order = BuildOptions {
            order: Some("1,2".parse().unwrap()),
            ..BuildOptions::default()
        };
        assert!(build_code(&gf2_poly(2, "x1*x2"), &bad_order).is_err());
    }

    #[test]
    fn tampered_rows_are_reported() {
        let b = worked_example_build();
        let mut rows = b.code().rows().to_vec();
        rows[2].set(0, true);
        let report = verify_generator(b.poly(), &rows, 2, Some(21)).unwrap();
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.contains("not divisible")));
        let short = verify_generator(b.poly(), &rows[..2], 2, Some(21)).unwrap();
        assert!(short.violations.iter().any(|v| v.contains("expected 3 rows")));
    }

    #[test]
    fn larger_block_dimension_raises_level() {
        let p = gf2_poly(3, "x1 + x2*x3");
        let opts = BuildOptions {
            block_dim: Some(3),
            ..BuildOptions::default()
        };
        let b = build_code(&p, &opts).unwrap();
        assert_eq!(b.level_target(), 2);
        let report = verify_build(&b).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
        assert_eq!(report.level, CodeLevel::Finite(2));
    }

    #[test]
    fn prescriptions() {
        let zero = Prescription {
            alpha: vec![0; 2],
            beta: vec![vec![0; 2]; 2],
            gamma: vec![vec![vec![0; 2]; 2]; 2],
        };
        assert!(matches!(prescribe_cg(&zero), Err(Error::Degree(_))));

        let single = Prescription {
            alpha: vec![1],
            beta: vec![vec![0]],
            gamma: vec![vec![vec![0]]],
        };
        let b = prescribe_cg(&single).unwrap();
        assert_eq!(b.code().dimension(), 1);
        let w = b.code().rows()[0].weight();
        assert_eq!(w % 8, 4);
        assert!(single.violations(b.code().rows()).is_empty());

        let p = gf2_poly(3, "x2 + x1*x3 + x1*x2*x3");
        let pres = Prescription::from_poly(&p).unwrap();
        assert_eq!(pres.alpha, vec![0, 1, 0]);
        assert_eq!(pres.beta[0][2], 1);
        assert_eq!(pres.beta[0][1], 0);
        assert_eq!(pres.gamma[0][1][2], 1);
        assert_eq!(pres.poly().unwrap(), p);
        let b = prescribe_cg(&pres).unwrap();
        assert!(pres.violations(b.code().rows()).is_empty());
        let example = worked_example_build();
        assert!(pres.violations(example.code().rows()).is_empty());
    }

    #[test]
    fn prescription_validation() {
        let mut pres = Prescription {
            alpha: vec![0, 0],
            beta: vec![vec![0, 1], vec![0, 0]],
            gamma: vec![vec![vec![0; 2]; 2]; 2],
        };
        assert!(pres.validate().is_err());
        pres.beta = vec![vec![1, 0], vec![0, 0]];
        assert!(pres.validate().is_err());
        pres.beta = vec![vec![0, 1], vec![1, 0]];
        assert!(pres.validate().is_ok());
        pres.gamma[0][0][1] = 1;
        pres.gamma[0][1][0] = 1;
        pres.gamma[1][0][0] = 1;
        assert!(pres.validate().is_err());
        pres.alpha = vec![2, 0];
        assert!(pres.validate().is_err());
    }
}
