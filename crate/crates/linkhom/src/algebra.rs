//! Finite quandles and biquandles: construction, axiom verification,
//! orbit decomposition and quasi-triviality.
//!
//! A biquandle is a set `X` with two binary operations, written here
//! `under(x,y)` for x ⊳̲ y and `over(x,y)` for x ⊳̄ y, such that
//!
//! 1. x ⊳̄ x = x ⊳̲ x for all x,
//! 2. the column maps α_y(x) = x ⊳̄ y, β_y(x) = x ⊳̲ y and the sideways map
//!    S(x,y) = (y ⊳̄ x, x ⊳̲ y) are invertible,
//! 3. the exchange laws hold:
//!    (x⊳̲y)⊳̲(z⊳̲y) = (x⊳̲z)⊳̲(y⊳̄z),
//!    (x⊳̲y)⊳̄(z⊳̲y) = (x⊳̄z)⊳̲(y⊳̄z),
//!    (x⊳̄y)⊳̄(z⊳̄y) = (x⊳̄z)⊳̄(y⊳̲z).
//!
//! A quandle is stored as the biquandle with x ⊳̄ y = x, so one code path
//! serves colorings and cohomology for both.

use std::fmt;

/// Element of a finite biquandle, a 0-based index. File formats are 1-based.
pub type Elt = usize;

/// A finite biquandle given by its two operation tables.
///
/// `under[x][y]` is x ⊳̲ y and `over[x][y]` is x ⊳̄ y. Instances are immutable
/// after construction; every operation on them is a pure function.
#[derive(Clone, Eq)]
pub struct FiniteBiquandle {
    size: usize,
    under: Vec<Vec<Elt>>,
    over: Vec<Vec<Elt>>,
    labels: Option<Vec<String>>,
}

/// Equality compares the operation tables only; labels are display metadata.
impl PartialEq for FiniteBiquandle {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.under == other.under && self.over == other.over
    }
}

/// Why a pair of operation tables fails to be a quandle or biquandle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// Table entry out of 0..n. Structural, reported before any axiom check.
    OutOfRange { table: &'static str, x: Elt, y: Elt, value: usize },
    /// Some column map x ↦ x ⊳ y is not a bijection.
    ColumnNotBijective { table: &'static str, y: Elt },
    /// The sideways map S(x,y) = (y ⊳̄ x, x ⊳̲ y) is not a bijection of pairs.
    SidewaysNotBijective { x1: Elt, y1: Elt, x2: Elt, y2: Elt },
    /// x ⊳̄ x ≠ x ⊳̲ x (for quandles: x ⊳ x ≠ x).
    DiagonalMismatch { x: Elt },
    /// An exchange law (biquandle) or right distributivity (quandle) fails.
    ExchangeLaw { law: u8, x: Elt, y: Elt, z: Elt },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::OutOfRange { table, x, y, value } => {
                write!(f, "{table}[{x},{y}] = {value} is out of range")
            }
            AxiomViolation::ColumnNotBijective { table, y } => {
                write!(f, "{table} column {y} is not a bijection")
            }
            AxiomViolation::SidewaysNotBijective { x1, y1, x2, y2 } => {
                write!(f, "S({x1},{y1}) = S({x2},{y2}): sideways map not injective")
            }
            AxiomViolation::DiagonalMismatch { x } => write!(f, "diagonal mismatch at x = {x}"),
            AxiomViolation::ExchangeLaw { law, x, y, z } => {
                write!(f, "exchange law {law} fails at ({x},{y},{z})")
            }
        }
    }
}

/// Outcome of `verify_quandle` / `verify_biquandle`.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<AxiomViolation>,
    /// For quandles only: whether (x ⊳ y) ⊳ y = x also holds.
    pub is_kei: Option<bool>,
}

/// Checks that every entry of `table` lies in 0..n.
fn entries_in_range(table: &[Vec<Elt>], name: &'static str, out: &mut Vec<AxiomViolation>) {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                out.push(AxiomViolation::OutOfRange { table: name, x, y, value: v });
            }
        }
    }
}

fn columns_bijective(table: &[Vec<Elt>], name: &'static str, out: &mut Vec<AxiomViolation>) {
    let n = table.len();
    for y in 0..n {
        let mut seen = vec![false; n];
        let mut ok = true;
        for x in 0..n {
            let v = table[x][y];
            if seen[v] {
                ok = false;
                break;
            }
            seen[v] = true;
        }
        if !ok {
            out.push(AxiomViolation::ColumnNotBijective { table: name, y });
        }
    }
}

/// Verifies the quandle axioms on a single operation table: bijective columns,
/// right distributivity and idempotency. Also reports the kei property.
/// Violations are reported with the lexicographically first witness.
pub fn verify_quandle(table: &[Vec<Elt>]) -> ValidationReport {
    let n = table.len();
    let mut violations = Vec::new();
    entries_in_range(table, "under", &mut violations);
    if !violations.is_empty() {
        return ValidationReport { valid: false, violations, is_kei: None };
    }
    columns_bijective(table, "under", &mut violations);
    for x in 0..n {
        if table[x][x] != x {
            violations.push(AxiomViolation::DiagonalMismatch { x });
            break;
        }
    }
    'dist: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // (x ⊳ y) ⊳ z = (x ⊳ z) ⊳ (y ⊳ z)
                if table[table[x][y]][z] != table[table[x][z]][table[y][z]] {
                    violations.push(AxiomViolation::ExchangeLaw { law: 0, x, y, z });
                    break 'dist;
                }
            }
        }
    }
    let valid = violations.is_empty();
    let is_kei = valid
        && (0..n).all(|x| (0..n).all(|y| table[table[x][y]][y] == x));
    ValidationReport { valid, violations, is_kei: Some(is_kei) }
}

/// Verifies the biquandle axioms on a pair of tables.
pub fn verify_biquandle_tables(under: &[Vec<Elt>], over: &[Vec<Elt>]) -> ValidationReport {
    let n = under.len();
    let mut violations = Vec::new();
    entries_in_range(under, "under", &mut violations);
    entries_in_range(over, "over", &mut violations);
    if !violations.is_empty() {
        return ValidationReport { valid: false, violations, is_kei: None };
    }
    columns_bijective(under, "under", &mut violations);
    columns_bijective(over, "over", &mut violations);
    for x in 0..n {
        if under[x][x] != over[x][x] {
            violations.push(AxiomViolation::DiagonalMismatch { x });
            break;
        }
    }
    // sideways map S(x,y) = (y ⊳̄ x, x ⊳̲ y)
    {
        let mut seen = vec![usize::MAX; n * n];
        'side: for x in 0..n {
            for y in 0..n {
                let key = over[y][x] * n + under[x][y];
                if seen[key] != usize::MAX {
                    let prev = seen[key];
                    violations.push(AxiomViolation::SidewaysNotBijective {
                        x1: prev / n,
                        y1: prev % n,
                        x2: x,
                        y2: y,
                    });
                    break 'side;
                }
                seen[key] = x * n + y;
            }
        }
    }
    'laws: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l1 = under[under[x][y]][under[z][y]] == under[under[x][z]][over[y][z]];
                let l2 = over[under[x][y]][under[z][y]] == under[over[x][z]][over[y][z]];
                let l3 = over[over[x][y]][over[z][y]] == over[over[x][z]][under[y][z]];
                for (i, ok) in [l1, l2, l3].into_iter().enumerate() {
                    if !ok {
                        violations.push(AxiomViolation::ExchangeLaw { law: i as u8 + 1, x, y, z });
                        break 'laws;
                    }
                }
            }
        }
    }
    let valid = violations.is_empty();
    ValidationReport { valid, violations, is_kei: None }
}

/// Error building a structure from tables or parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// The tables fail verification; first violation included.
    Invalid(AxiomViolation),
    /// A parameter must be a unit modulo m (Alexander structures).
    NotAUnit { param: &'static str, value: i64, modulus: u64 },
    /// Cayley table is not a group table.
    BadCayley(String),
    /// Malformed operation-table text.
    Parse(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Invalid(v) => write!(f, "invalid structure: {v}"),
            AlgebraError::NotAUnit { param, value, modulus } => {
                write!(f, "{param} = {value} is not a unit mod {modulus}")
            }
            AlgebraError::BadCayley(m) => write!(f, "bad Cayley table: {m}"),
            AlgebraError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

impl FiniteBiquandle {
    /// Builds and verifies a biquandle from its two tables.
    pub fn new(under: Vec<Vec<Elt>>, over: Vec<Vec<Elt>>) -> Result<Self, AlgebraError> {
        let report = verify_biquandle_tables(&under, &over);
        if !report.valid {
            return Err(AlgebraError::Invalid(report.violations[0].clone()));
        }
        Ok(FiniteBiquandle { size: under.len(), under, over, labels: None })
    }

    /// Builds a quandle (over-operation is the identity) from one table.
    pub fn quandle(under: Vec<Vec<Elt>>) -> Result<Self, AlgebraError> {
        let report = verify_quandle(&under);
        if !report.valid {
            return Err(AlgebraError::Invalid(report.violations[0].clone()));
        }
        let n = under.len();
        let over = (0..n).map(|x| vec![x; n]).collect();
        Ok(FiniteBiquandle { size: n, under, over, labels: None })
    }

    /// Attaches display names to the elements.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, x: Elt) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => (x + 1).to_string(),
        }
    }

    /// x ⊳̲ y
    #[inline]
    pub fn under(&self, x: Elt, y: Elt) -> Elt {
        self.under[x][y]
    }

    /// x ⊳̄ y
    #[inline]
    pub fn over(&self, x: Elt, y: Elt) -> Elt {
        self.over[x][y]
    }

    /// Sideways map S(x, y) = (y ⊳̄ x, x ⊳̲ y), the crossing map on
    /// (under-in, over-in) pairs returning (over-out, under-out).
    #[inline]
    pub fn sideways(&self, x: Elt, y: Elt) -> (Elt, Elt) {
        (self.over[y][x], self.under[x][y])
    }

    /// Inverse of the sideways map: given (over-out, under-out), returns
    /// the unique (under-in, over-in).
    pub fn sideways_inv(&self, oo: Elt, uo: Elt) -> (Elt, Elt) {
        let n = self.size;
        // n is small throughout (≤ 25); a scan keeps the structure immutable.
        for x in 0..n {
            for y in 0..n {
                if self.over[y][x] == oo && self.under[x][y] == uo {
                    return (x, y);
                }
            }
        }
        unreachable!("sideways map of a verified biquandle is bijective")
    }

    /// True if the over-operation is trivial, i.e. the structure is a quandle.
    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.over[x][y] == x))
    }

    /// Orbit decomposition under the column group ⟨α_y, β_y⟩.
    pub fn orbit_decomposition(&self) -> OrbitDecomposition {
        let n = self.size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for y in 0..n {
            for x in 0..n {
                for v in [self.under[x][y], self.over[x][y]] {
                    let (ra, rb) = (find(&mut parent, x), find(&mut parent, v));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<Elt>> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            if orbit_of[r] == usize::MAX {
                orbit_of[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbit_of[x] = orbit_of[r];
            orbits[orbit_of[x]].push(x);
        }
        OrbitDecomposition { orbit_of, orbits }
    }

    /// True iff x ⊳̲ y = x ⊳̄ y = x whenever x and y share an orbit.
    /// On failure returns the first witness pair in lexicographic order.
    pub fn is_quasi_trivial(&self) -> (bool, Option<(Elt, Elt)>) {
        let dec = self.orbit_decomposition();
        for x in 0..self.size {
            for y in 0..self.size {
                if dec.orbit_of[x] == dec.orbit_of[y]
                    && (self.under[x][y] != x || self.over[x][y] != x)
                {
                    return (false, Some((x, y)));
                }
            }
        }
        (true, None)
    }

    /// The sub-biquandle on one orbit, with elements renumbered 0..k.
    pub fn orbit_restriction(&self, orbit: &[Elt]) -> Result<FiniteBiquandle, AlgebraError> {
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in orbit.iter().enumerate() {
            index[x] = i;
        }
        let k = orbit.len();
        let mut under = vec![vec![0; k]; k];
        let mut over = vec![vec![0; k]; k];
        for (i, &x) in orbit.iter().enumerate() {
            for (j, &y) in orbit.iter().enumerate() {
                let u = self.under[x][y];
                let o = self.over[x][y];
                if index[u] == usize::MAX || index[o] == usize::MAX {
                    return Err(AlgebraError::BadCayley(format!(
                        "orbit not closed at ({x},{y})"
                    )));
                }
                under[i][j] = index[u];
                over[i][j] = index[o];
            }
        }
        FiniteBiquandle::new(under, over)
    }

    /// Serializes to the operation-table text format: first line `n`,
    /// then n rows of 2n 1-based entries (under block, then over block).
    /// Quandles are emitted with the over block omitted.
    pub fn to_table_text(&self) -> String {
        let n = self.size;
        let quandle = self.is_quandle();
        let mut s = format!("{n}\n");
        for x in 0..n {
            let mut row: Vec<String> = (0..n).map(|y| (self.under[x][y] + 1).to_string()).collect();
            if !quandle {
                row.extend((0..n).map(|y| (self.over[x][y] + 1).to_string()));
            }
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the operation-table text format. Rows of n entries give a
    /// quandle, rows of 2n entries a biquandle.
    pub fn from_table_text(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text.lines().filter(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let n: usize = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse("empty table".into()))?
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse("first line must be the size n".into()))?;
        if n == 0 {
            return Err(AlgebraError::Parse("size must be positive".into()));
        }
        let mut under = Vec::with_capacity(n);
        let mut over: Option<Vec<Vec<Elt>>> = None;
        for x in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| AlgebraError::Parse(format!("missing row {}", x + 1)))?;
            let vals: Result<Vec<usize>, _> =
                line.split_whitespace().map(|t| t.parse::<usize>()).collect();
            let vals = vals.map_err(|_| AlgebraError::Parse(format!("bad entry in row {}", x + 1)))?;
            let decode = |v: usize| -> Result<Elt, AlgebraError> {
                if v == 0 || v > n {
                    Err(AlgebraError::Parse(format!("entry {v} out of 1..{n}")))
                } else {
                    Ok(v - 1)
                }
            };
            if vals.len() == n {
                if over.is_some() {
                    return Err(AlgebraError::Parse("mixed row widths".into()));
                }
                under.push(vals.into_iter().map(decode).collect::<Result<Vec<_>, _>>()?);
            } else if vals.len() == 2 * n {
                let row: Vec<Elt> = vals.into_iter().map(decode).collect::<Result<Vec<_>, _>>()?;
                under.push(row[..n].to_vec());
                over.get_or_insert_with(Vec::new).push(row[n..].to_vec());
            } else {
                return Err(AlgebraError::Parse(format!(
                    "row {} has {} entries, expected {n} or {}",
                    x + 1,
                    vals.len(),
                    2 * n
                )));
            }
        }
        match over {
            Some(over) => FiniteBiquandle::new(under, over),
            None => FiniteBiquandle::quandle(under),
        }
    }
}

impl fmt::Debug for FiniteBiquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteBiquandle(n={})", self.size)
    }
}

/// Orbits of the column-group action, with deterministic ids: orbits are
/// ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<Elt>>,
}

// ------------------------------------------------------------------
// constructors

/// Dihedral quandle R_n: x ⊳ y = 2y − x (mod n).
pub fn make_dihedral(n: usize) -> FiniteBiquandle {
    let table = (0..n)
        .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
        .collect();
    FiniteBiquandle::quandle(table).expect("dihedral quandle is valid")
}

/// Trivial quandle: x ⊳ y = x.
pub fn make_trivial(n: usize) -> FiniteBiquandle {
    let table = (0..n).map(|x| vec![x; n]).collect();
    FiniteBiquandle::quandle(table).expect("trivial quandle is valid")
}

fn group_inverses(cayley: &[Vec<usize>]) -> Result<(usize, Vec<usize>), AlgebraError> {
    let n = cayley.len();
    let id = (0..n)
        .find(|&e| (0..n).all(|x| cayley[e][x] == x && cayley[x][e] == x))
        .ok_or_else(|| AlgebraError::BadCayley("no identity element".into()))?;
    let mut inv = vec![usize::MAX; n];
    for x in 0..n {
        inv[x] = (0..n)
            .find(|&y| cayley[x][y] == id && cayley[y][x] == id)
            .ok_or_else(|| AlgebraError::BadCayley(format!("no inverse for {x}")))?;
    }
    for x in 0..n {
        for y in 0..n {
            if cayley[x][y] >= n {
                return Err(AlgebraError::BadCayley("entry out of range".into()));
            }
            for z in 0..n {
                if cayley[cayley[x][y]][z] != cayley[x][cayley[y][z]] {
                    return Err(AlgebraError::BadCayley(format!(
                        "not associative at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok((id, inv))
}

/// Conjugation quandle of a group: x ⊳ y = y⁻¹xy.
pub fn make_conj(cayley: &[Vec<usize>]) -> Result<FiniteBiquandle, AlgebraError> {
    let (_, inv) = group_inverses(cayley)?;
    let n = cayley.len();
    let table = (0..n)
        .map(|x| (0..n).map(|y| cayley[cayley[inv[y]][x]][y]).collect())
        .collect();
    FiniteBiquandle::quandle(table)
}

/// Core quandle of a group: x ⊳ y = yx⁻¹y. Always a kei.
pub fn make_core(cayley: &[Vec<usize>]) -> Result<FiniteBiquandle, AlgebraError> {
    let (_, inv) = group_inverses(cayley)?;
    let n = cayley.len();
    let table = (0..n)
        .map(|x| (0..n).map(|y| cayley[cayley[y][inv[x]]][y]).collect())
        .collect();
    FiniteBiquandle::quandle(table)
}

/// The quasi-trivial Alexander quandle Z_k[t^{±1}]/(1−t)², with elements the
/// pairs (a, b) ↦ a + b(1−t), encoded as index a·k + b, and operation
/// (a,b) ⊳ (c,d) = (a, b − a + c mod k).
pub fn make_alexander_quandle_mod(k: usize) -> FiniteBiquandle {
    assert!(k >= 1, "modulus must be at least 1");
    let n = k * k;
    let mut table = vec![vec![0; n]; n];
    let mut labels = Vec::with_capacity(n);
    for a in 0..k {
        for b in 0..k {
            labels.push(poly_label(a, b));
            for c in 0..k {
                for d in 0..k {
                    let x = a * k + b;
                    let y = c * k + d;
                    table[x][y] = a * k + (b + k - a % k + c) % k;
                    let _ = d;
                }
            }
        }
    }
    FiniteBiquandle::quandle(table)
        .expect("Alexander quandle mod (1-t)^2 is valid")
        .with_labels(labels)
}

/// Display form of a + b(1−t).
fn poly_label(a: usize, b: usize) -> String {
    match (a, b) {
        (0, 0) => "0".into(),
        (a, 0) => a.to_string(),
        (0, 1) => "1-t".into(),
        (0, b) => format!("{b}(1-t)"),
        (a, 1) => format!("{a}+(1-t)"),
        (a, b) => format!("{a}+{b}(1-t)"),
    }
}

fn unit_inverse(v: i64, m: u64) -> Option<u64> {
    let v = v.rem_euclid(m as i64) as u64;
    (1..m).find(|&w| (v * w) % m == 1)
}

/// Alexander biquandle on Z_m: x ⊳̲ y = tx + (s−t)y, x ⊳̄ y = sx.
/// `t` and `s` must be units mod m.
pub fn make_alexander_biquandle(m: usize, t: i64, s: i64) -> Result<FiniteBiquandle, AlgebraError> {
    let mm = m as u64;
    if unit_inverse(t, mm).is_none() {
        return Err(AlgebraError::NotAUnit { param: "t", value: t, modulus: mm });
    }
    if unit_inverse(s, mm).is_none() {
        return Err(AlgebraError::NotAUnit { param: "s", value: s, modulus: mm });
    }
    let tm = t.rem_euclid(m as i64) as usize;
    let sm = s.rem_euclid(m as i64) as usize;
    let under = (0..m)
        .map(|x| (0..m).map(|y| (tm * x + (sm + m - tm) * y) % m).collect())
        .collect();
    let over = (0..m).map(|x| vec![(sm * x) % m; m]).collect();
    FiniteBiquandle::new(under, over)
}

/// Constant action biquandle: x ⊳̲ y = x ⊳̄ y = σ(x).
pub fn make_constant_action(sigma: &[usize]) -> Result<FiniteBiquandle, AlgebraError> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &v in sigma {
        if v >= n || seen[v] {
            return Err(AlgebraError::BadCayley("not a permutation".into()));
        }
        seen[v] = true;
    }
    let under: Vec<Vec<Elt>> = (0..n).map(|x| vec![sigma[x]; n]).collect();
    FiniteBiquandle::new(under.clone(), under)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_is_valid_kei() {
        for n in 1..=20 {
            let table: Vec<Vec<Elt>> = (0..n)
                .map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect())
                .collect();
            let report = verify_quandle(&table);
            assert!(report.valid, "R_{n} must be a quandle");
            assert_eq!(report.is_kei, Some(true), "R_{n} must be a kei");
        }
    }

    #[test]
    fn trivial_quandle_is_valid_kei() {
        for n in [1, 2, 5, 9] {
            let q = make_trivial(n);
            let report = verify_quandle(&(0..n).map(|x| vec![x; n]).collect::<Vec<_>>());
            assert!(report.valid);
            assert_eq!(report.is_kei, Some(true));
            assert_eq!(q.size(), n);
        }
    }

    #[test]
    fn corrupted_dihedral_reports_witness() {
        // overwrite 0 ⊳ 1 in R_4 (2·1 − 0 = 2) with 0
        let mut table: Vec<Vec<Elt>> = (0..4)
            .map(|x| (0..4).map(|y| (2 * y + 4 - x) % 4).collect())
            .collect();
        table[0][1] = 0;
        let report = verify_quandle(&table);
        assert!(!report.valid);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn out_of_range_is_structural() {
        let table = vec![vec![0, 3], vec![1, 1]];
        let report = verify_quandle(&table);
        assert!(matches!(report.violations[0], AxiomViolation::OutOfRange { .. }));
        assert_eq!(report.is_kei, None);
    }

    #[test]
    fn dihedral_6_orbits() {
        let q = make_dihedral(6);
        let dec = q.orbit_decomposition();
        assert_eq!(dec.orbits, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn quasi_triviality_of_dihedrals() {
        assert!(make_dihedral(4).is_quasi_trivial().0);
        let (qt, witness) = make_dihedral(6).is_quasi_trivial();
        assert!(!qt);
        // 0 ⊳ 2 = 4 ≠ 0 is the first same-orbit violation
        assert_eq!(witness, Some((0, 2)));
    }

    #[test]
    fn odd_dihedral_connected() {
        let q = make_dihedral(7);
        assert_eq!(q.orbit_decomposition().orbits.len(), 1);
    }

    #[test]
    fn alexander_quandle_mod_pair_law() {
        // oracle: arithmetic in Z_k[t]/(1-t)^2 with (1-t)^2 = 0:
        // t(a + b(1-t)) = a + (b-a)(1-t), (1-t)(c + d(1-t)) = c(1-t)
        for k in 2..=5 {
            let q = make_alexander_quandle_mod(k);
            assert_eq!(q.size(), k * k);
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        for d in 0..k {
                            let x = a * k + b;
                            let y = c * k + d;
                            let expect = a * k + ((b + k - a) % k + c) % k;
                            assert_eq!(q.under(x, y), expect);
                        }
                    }
                }
            }
            assert!(q.is_quasi_trivial().0, "Z_{k}[t]/(1-t)^2 is quasi-trivial");
        }
    }

    #[test]
    fn alexander_quandle_mod_example_colors() {
        // 0 ⊳ 1 = 1 − t: (0,0) ⊳ (1,0) = (0,1)
        let k = 3;
        let q = make_alexander_quandle_mod(k);
        assert_eq!(q.under(0, k), 1);
        assert_eq!(q.label(1), "1-t");
    }

    #[test]
    fn alexander_quandle_orbits_by_constant_term() {
        // (a,b) ~ (c,d) iff a = c
        for k in 2..=4 {
            let q = make_alexander_quandle_mod(k);
            let dec = q.orbit_decomposition();
            for x in 0..k * k {
                for y in 0..k * k {
                    assert_eq!(dec.orbit_of[x] == dec.orbit_of[y], x / k == y / k);
                }
            }
        }
    }

    #[test]
    fn constant_action_identity_is_trivial() {
        let b = make_constant_action(&[0, 1, 2]).unwrap();
        assert_eq!(b, make_trivial(3));
    }

    #[test]
    fn alexander_biquandle_rejects_non_units() {
        assert!(make_alexander_biquandle(4, 2, 3).is_err());
        assert!(make_alexander_biquandle(4, 1, 2).is_err());
        assert!(make_alexander_biquandle(4, 1, 3).is_ok());
    }

    #[test]
    fn orbit_restrictions_are_valid() {
        for q in [make_dihedral(4), make_dihedral(6), make_alexander_biquandle(4, 1, 3).unwrap()] {
            let dec = q.orbit_decomposition();
            for orbit in &dec.orbits {
                q.orbit_restriction(orbit).expect("orbit sub-biquandle must verify");
            }
        }
    }

    #[test]
    fn table_text_round_trip() {
        for q in [make_dihedral(5), make_alexander_biquandle(4, 1, 3).unwrap(), make_trivial(3)] {
            let text = q.to_table_text();
            let back = FiniteBiquandle::from_table_text(&text).unwrap();
            assert_eq!(q, back);
        }
    }
}
