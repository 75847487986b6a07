//! Oriented link diagrams: PD codes, braid closures, pretzel diagrams,
//! component labeling, mirror images and self-crossing changes.
//!
//! A diagram is a list of signed crossings over semiarc ids. Each crossing
//! stores the four semiarcs in fixed roles (under-in, over-in, under-out,
//! over-out). In a closed diagram every semiarc occurs exactly once as an
//! input and once as an output; crossing-free components are kept as a
//! free-loop count.

use std::fmt;

pub type Semiarc = usize;

/// One crossing of an oriented diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// +1 or −1.
    pub sign: i8,
    pub under_in: Semiarc,
    pub over_in: Semiarc,
    pub under_out: Semiarc,
    pub over_out: Semiarc,
}

/// An oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    semiarc_count: usize,
    free_loops: usize,
    component_of: Vec<usize>,
    component_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkError {
    Parse { pos: usize, msg: String },
    /// Each semiarc must be one input and one output.
    NotClosed { semiarc: Semiarc },
    /// Orientations cannot be assigned consistently to the PD code.
    Orientation(String),
    /// Self-crossing change requested at a crossing joining two components.
    MixedCrossing { index: usize },
    BadIndex { index: usize },
}

impl fmt::Display for LinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            LinkError::NotClosed { semiarc } => {
                write!(f, "semiarc {semiarc} does not occur once as input and once as output")
            }
            LinkError::Orientation(m) => write!(f, "inconsistent orientation: {m}"),
            LinkError::MixedCrossing { index } => {
                write!(f, "crossing {index} joins two components; not a self-crossing")
            }
            LinkError::BadIndex { index } => write!(f, "no crossing with index {index}"),
        }
    }
}

impl std::error::Error for LinkError {}

impl LinkDiagram {
    /// Builds a diagram from crossings, checking closure and renumbering
    /// semiarcs densely.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, LinkError> {
        let mut ids: Vec<Semiarc> = crossings
            .iter()
            .flat_map(|c| [c.under_in, c.over_in, c.under_out, c.over_out])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let remap = |s: Semiarc| ids.binary_search(&s).unwrap();
        let crossings: Vec<Crossing> = crossings
            .iter()
            .map(|c| Crossing {
                sign: c.sign,
                under_in: remap(c.under_in),
                over_in: remap(c.over_in),
                under_out: remap(c.under_out),
                over_out: remap(c.over_out),
            })
            .collect();
        let n = ids.len();
        let mut ins = vec![0usize; n];
        let mut outs = vec![0usize; n];
        for c in &crossings {
            ins[c.under_in] += 1;
            ins[c.over_in] += 1;
            outs[c.under_out] += 1;
            outs[c.over_out] += 1;
        }
        if let Some(s) = (0..n).find(|&s| ins[s] != 1 || outs[s] != 1) {
            return Err(LinkError::NotClosed { semiarc: s });
        }
        // successor along the strand: in-semiarc ↦ out-semiarc of the same pass
        let mut next = vec![usize::MAX; n];
        for c in &crossings {
            next[c.under_in] = c.under_out;
            next[c.over_in] = c.over_out;
        }
        let mut component_of = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let mut s = start;
            while component_of[s] == usize::MAX {
                component_of[s] = count;
                s = next[s];
            }
            count += 1;
        }
        Ok(LinkDiagram {
            crossings,
            semiarc_count: n,
            free_loops,
            component_of,
            component_count: count + free_loops,
        })
    }

    /// The unlink of k crossing-free components.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            semiarc_count: 0,
            free_loops: k,
            component_of: Vec::new(),
            component_count: k,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn semiarc_count(&self) -> usize {
        self.semiarc_count
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Component id of each semiarc; free loops take the ids after these.
    pub fn component_of(&self) -> &[usize] {
        &self.component_of
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Linking matrix: half the signed count of crossings between each pair
    /// of distinct components.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let nc = self.component_count;
        let mut m = vec![vec![0i64; nc]; nc];
        for c in &self.crossings {
            let a = self.component_of[c.under_in];
            let b = self.component_of[c.over_in];
            if a != b {
                m[a][b] += c.sign as i64;
                m[b][a] += c.sign as i64;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        m
    }

    /// Mirror image: every crossing switched (over/under roles swapped,
    /// signs flipped). An involution.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                sign: -c.sign,
                under_in: c.over_in,
                over_in: c.under_in,
                under_out: c.over_out,
                over_out: c.under_out,
            })
            .collect();
        LinkDiagram { crossings, ..self.clone() }
    }

    /// Reverses the orientation of the listed components.
    pub fn reverse_components(&self, comps: &[usize]) -> Self {
        let rev = |s: Semiarc| comps.contains(&self.component_of[s]);
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let ru = rev(c.under_in);
                let ro = rev(c.over_in);
                let sign = if ru != ro { -c.sign } else { c.sign };
                let (under_in, under_out) =
                    if ru { (c.under_out, c.under_in) } else { (c.under_in, c.under_out) };
                let (over_in, over_out) =
                    if ro { (c.over_out, c.over_in) } else { (c.over_in, c.over_out) };
                Crossing { sign, under_in, over_in, under_out, over_out }
            })
            .collect();
        LinkDiagram { crossings, ..self.clone() }
    }

    /// All 2^k orientation variants of the diagram (component subsets
    /// reversed), the identity orientation first.
    pub fn enumerate_orientations(&self) -> Vec<LinkDiagram> {
        let k = self.component_count - self.free_loops;
        (0..(1usize << k))
            .map(|mask| {
                let comps: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                self.reverse_components(&comps)
            })
            .collect()
    }

    /// Switches one crossing whose both strands belong to a single component
    /// (a link-homotopy move).
    pub fn self_crossing_change(&self, index: usize) -> Result<Self, LinkError> {
        let c = *self.crossings.get(index).ok_or(LinkError::BadIndex { index })?;
        if self.component_of[c.under_in] != self.component_of[c.over_in] {
            return Err(LinkError::MixedCrossing { index });
        }
        let mut crossings = self.crossings.clone();
        crossings[index] = Crossing {
            sign: -c.sign,
            under_in: c.over_in,
            over_in: c.under_in,
            under_out: c.over_out,
            over_out: c.under_out,
        };
        Ok(LinkDiagram { crossings, ..self.clone() })
    }

    /// Indices of crossings eligible for `self_crossing_change`.
    pub fn self_crossings(&self) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&i| {
                let c = &self.crossings[i];
                self.component_of[c.under_in] == self.component_of[c.over_in]
            })
            .collect()
    }

    /// Emits a PD code. Edges are numbered 1.. consecutively along each
    /// component; each crossing prints as `X(a,b,c,d)` counterclockwise from
    /// the incoming under-edge, free loops as `U(k)`.
    pub fn emit_pd(&self) -> String {
        let n = self.semiarc_count;
        let mut next = vec![usize::MAX; n];
        for c in &self.crossings {
            next[c.under_in] = c.under_out;
            next[c.over_in] = c.over_out;
        }
        // relabel semiarcs 1.. walking each component from its smallest semiarc
        let mut label = vec![0usize; n];
        let mut used = vec![false; n];
        let mut k = 0;
        for start in 0..n {
            if used[start] {
                continue;
            }
            let mut s = start;
            while !used[s] {
                used[s] = true;
                k += 1;
                label[s] = k;
                s = next[s];
            }
        }
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                // positive: over runs d→b, i.e. X(u_in, o_out, u_out, o_in);
                // negative: over runs b→d, i.e. X(u_in, o_in, u_out, o_out).
                let (a, b, cc, d) = if c.sign > 0 {
                    (c.under_in, c.over_out, c.under_out, c.over_in)
                } else {
                    (c.under_in, c.over_in, c.under_out, c.over_out)
                };
                format!("X({},{},{},{})", label[a], label[b], label[cc], label[d])
            })
            .collect();
        for i in 0..self.free_loops {
            parts.push(format!("U({})", k + i + 1));
        }
        format!("PD[{}]", parts.join(", "))
    }
}

// ------------------------------------------------------------------
// PD parsing

/// Parses a PD code: `PD[X(a,b,c,d), ..., U(k), ...]`.
///
/// Each `X` quadruple lists the four edge labels counterclockwise from the
/// incoming under-edge; orientations are inferred from the requirement that
/// every edge has one head and one tail, with label succession (`b` follows
/// `a` along a component when labels permit) used for over-passes no
/// constraint settles. Crossing signs are derived from the orientations.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, LinkError> {
    let src = text.trim();
    let err = |pos: usize, msg: &str| LinkError::Parse { pos, msg: msg.to_string() };
    let inner = src
        .strip_prefix("PD[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(0, "expected PD[...]"))?;
    let mut xs: Vec<[usize; 4]> = Vec::new();
    let mut free = 0usize;
    let mut pos = 3;
    for tok in inner.split(',').collect::<Vec<_>>().chunks(1) {
        let _ = tok;
        break;
    }
    // split on commas at depth 0 of parentheses
    let mut items = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                items.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        items.push(cur.trim().to_string());
    }
    for item in &items {
        pos += item.len();
        if let Some(args) = item.strip_prefix('X').map(str::trim) {
            let args = args
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err(pos, "X must be followed by (a,b,c,d)"))?;
            let vals: Result<Vec<usize>, _> =
                args.split(',').map(|t| t.trim().parse::<usize>()).collect();
            let vals = vals.map_err(|_| err(pos, "edge labels must be positive integers"))?;
            if vals.len() != 4 {
                return Err(err(pos, "X takes exactly four edge labels"));
            }
            if vals.iter().any(|&v| v == 0) {
                return Err(err(pos, "edge labels start at 1"));
            }
            xs.push([vals[0], vals[1], vals[2], vals[3]]);
        } else if let Some(args) = item.strip_prefix('U').map(str::trim) {
            let args = args
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err(pos, "U must be followed by (k)"))?;
            args.trim()
                .parse::<usize>()
                .map_err(|_| err(pos, "U takes one positive integer"))?;
            free += 1;
        } else if !item.is_empty() {
            return Err(err(pos, "expected X(...) or U(...)"));
        }
    }
    if xs.is_empty() {
        return Ok(LinkDiagram::unlink(free));
    }
    // occurrence check
    let mut occ: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for q in &xs {
        for &e in q {
            *occ.entry(e).or_insert(0) += 1;
        }
    }
    if let Some((&e, _)) = occ.iter().find(|(_, &c)| c != 2) {
        return Err(err(0, &format!("edge label {e} must appear exactly twice")));
    }
    orient_pd(&xs, free)
}

/// Assigns orientations to the over-passes of a PD code and builds the diagram.
fn orient_pd(xs: &[[usize; 4]], free: usize) -> Result<LinkDiagram, LinkError> {
    // Each edge has two occurrences; the under-pass a→c fixes head/tail where
    // it appears. Over-passes (b,d) get a direction by propagation.
    #[derive(Clone, Copy, PartialEq)]
    enum Dir {
        Unset,
        BtoD,
        DtoB,
    }
    let n = xs.len();
    let mut dir = vec![Dir::Unset; n];
    // an edge's endpoint role: +1 head (flows into crossing), −1 tail
    // over-pass of crossing i contributes: b gets tail/head depending on dir
    // under: a = head at i, c = tail at i.
    // Track for each edge the set of (crossing, slot) occurrences.
    let mut occs: std::collections::HashMap<usize, Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (i, q) in xs.iter().enumerate() {
        for (slot, &e) in q.iter().enumerate() {
            occs.entry(e).or_default().push((i, slot));
        }
    }
    // role of each occurrence: Some(true) = head (input), Some(false) = tail
    let role = |i: usize, slot: usize, dir: &Vec<Dir>| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            1 => match dir[i] {
                Dir::Unset => None,
                Dir::BtoD => Some(true),
                Dir::DtoB => Some(false),
            },
            3 => match dir[i] {
                Dir::Unset => None,
                Dir::BtoD => Some(false),
                Dir::DtoB => Some(true),
            },
            _ => unreachable!(),
        }
    };
    // propagate: every edge needs one head and one tail
    loop {
        let mut progress = false;
        for (&e, os) in &occs {
            let roles: Vec<Option<bool>> = os.iter().map(|&(i, s)| role(i, s, &dir)).collect();
            match (roles[0], roles[1]) {
                (Some(a), Some(b)) => {
                    if a == b {
                        return Err(LinkError::Orientation(format!(
                            "edge {e} has two {}s",
                            if a { "head" } else { "tail" }
                        )));
                    }
                }
                (Some(a), None) => {
                    let (i, s) = os[1];
                    dir[i] = match (s, !a) {
                        (1, true) => Dir::BtoD,
                        (1, false) => Dir::DtoB,
                        (3, true) => Dir::DtoB,
                        (3, false) => Dir::BtoD,
                        _ => unreachable!(),
                    };
                    progress = true;
                }
                (None, Some(b)) => {
                    let (i, s) = os[0];
                    dir[i] = match (s, !b) {
                        (1, true) => Dir::BtoD,
                        (1, false) => Dir::DtoB,
                        (3, true) => Dir::DtoB,
                        (3, false) => Dir::BtoD,
                        _ => unreachable!(),
                    };
                    progress = true;
                }
                (None, None) => {}
            }
        }
        if !progress {
            break;
        }
    }
    // any still-unset over-pass: use label succession b = d+1 / d = b+1,
    // falling back to d→b (the positive-crossing reading)
    for i in 0..n {
        if dir[i] == Dir::Unset {
            let (b, d) = (xs[i][1], xs[i][3]);
            dir[i] = if b == d + 1 {
                Dir::DtoB
            } else if d == b + 1 {
                Dir::BtoD
            } else {
                Dir::DtoB
            };
            // re-propagate after each forced choice
            loop {
                let mut progress = false;
                for (&e, os) in &occs {
                    let roles: Vec<Option<bool>> =
                        os.iter().map(|&(j, s)| role(j, s, &dir)).collect();
                    if let (Some(a), None) = (roles[0], roles[1]) {
                        let (j, s) = os[1];
                        dir[j] = match (s, !a) {
                            (1, true) => Dir::BtoD,
                            (1, false) => Dir::DtoB,
                            (3, true) => Dir::DtoB,
                            (3, false) => Dir::BtoD,
                            _ => unreachable!(),
                        };
                        progress = true;
                    } else if let (None, Some(b2)) = (roles[0], roles[1]) {
                        let (j, s) = os[0];
                        dir[j] = match (s, !b2) {
                            (1, true) => Dir::BtoD,
                            (1, false) => Dir::DtoB,
                            (3, true) => Dir::DtoB,
                            (3, false) => Dir::BtoD,
                            _ => unreachable!(),
                        };
                        progress = true;
                    }
                    let _ = e;
                }
                if !progress {
                    break;
                }
            }
        }
    }
    // final consistency check
    for (&e, os) in &occs {
        let roles: Vec<Option<bool>> = os.iter().map(|&(i, s)| role(i, s, &dir)).collect();
        match (roles[0], roles[1]) {
            (Some(a), Some(b)) if a != b => {}
            _ => {
                return Err(LinkError::Orientation(format!(
                    "edge {e} orientation unresolved or inconsistent"
                )))
            }
        }
    }
    // build crossings: semiarc id = edge label; sign from over direction:
    // over d→b is positive, b→d negative (CCW convention from under-in).
    let crossings: Vec<Crossing> = xs
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let [a, b, c, d] = *q;
            match dir[i] {
                Dir::DtoB => Crossing {
                    sign: 1,
                    under_in: a,
                    over_in: d,
                    under_out: c,
                    over_out: b,
                },
                Dir::BtoD => Crossing {
                    sign: -1,
                    under_in: a,
                    over_in: b,
                    under_out: c,
                    over_out: d,
                },
                Dir::Unset => unreachable!(),
            }
        })
        .collect();
    LinkDiagram::new(crossings, free)
}

// ------------------------------------------------------------------
// braid words

/// A word in the braid group B_strands; letters ±i stand for σ_i^{±1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, LinkError> {
        if strands < 1 {
            return Err(LinkError::Parse { pos: 0, msg: "need at least one strand".into() });
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(LinkError::Parse {
                    pos: 0,
                    msg: format!("generator {l} out of range for {strands} strands"),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `BR[k; s1 s1 -s2 ...]`.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let src = text.trim();
        let inner = src
            .strip_prefix("BR[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or(LinkError::Parse { pos: 0, msg: "expected BR[k; ...]".into() })?;
        let (k, rest) = inner
            .split_once(';')
            .ok_or(LinkError::Parse { pos: 3, msg: "expected strand count then ';'".into() })?;
        let strands: usize = k
            .trim()
            .parse()
            .map_err(|_| LinkError::Parse { pos: 3, msg: "bad strand count".into() })?;
        let mut letters = Vec::new();
        for tok in rest.split_whitespace() {
            let (neg, body) = match tok.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, tok),
            };
            let body = body.strip_prefix('s').unwrap_or(body);
            let i: i32 = body
                .parse()
                .map_err(|_| LinkError::Parse { pos: 0, msg: format!("bad letter '{tok}'") })?;
            letters.push(if neg { -i } else { i });
        }
        BraidWord::new(strands, letters)
    }

    /// Permutation induced on strand positions.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            p.swap(i, i + 1);
        }
        p
    }
}

/// Closure of a braid word. All strands are oriented downward; for σ_i the
/// strand entering at position i goes under (so with colors (x, y) at
/// positions (i, i+1) the new pair is the sideways image (y ⊳̄ x, x ⊳̲ y)).
pub fn braid_closure(w: &BraidWord) -> LinkDiagram {
    let mut next_id = w.strands;
    let top: Vec<Semiarc> = (0..w.strands).collect();
    let mut pos = top.clone();
    let mut crossings = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (pos[i], pos[i + 1]);
        let (c, d) = (next_id, next_id + 1);
        next_id += 2;
        if l > 0 {
            crossings.push(Crossing { sign: 1, under_in: a, over_in: b, under_out: d, over_out: c });
            pos[i] = c;
            pos[i + 1] = d;
        } else {
            crossings.push(Crossing { sign: -1, under_in: b, over_in: a, under_out: d, over_out: c });
            pos[i] = d;
            pos[i + 1] = c;
        }
    }
    // close up: bottom position i = top position i
    let mut subst: Vec<Semiarc> = (0..next_id).collect();
    for i in 0..w.strands {
        subst[pos[i]] = top[i];
    }
    for c in &mut crossings {
        c.under_in = subst[c.under_in];
        c.over_in = subst[c.over_in];
        c.under_out = subst[c.under_out];
        c.over_out = subst[c.over_out];
    }
    let mut crossed = vec![false; w.strands];
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        crossed[i] = true;
        crossed[i + 1] = true;
    }
    let free = crossed.iter().filter(|&&c| !c).count();
    LinkDiagram::new(crossings, free).expect("braid closures are closed diagrams")
}

// ------------------------------------------------------------------
// pretzel diagrams

/// A pretzel link specification (p_1, …, p_n); positive entries are
/// right-handed half-twist boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretzelSpec {
    pub twists: Vec<i64>,
}

impl PretzelSpec {
    pub fn new(twists: Vec<i64>) -> Result<Self, LinkError> {
        if twists.is_empty() {
            return Err(LinkError::Parse { pos: 0, msg: "pretzel needs at least one box".into() });
        }
        Ok(PretzelSpec { twists })
    }

    /// Parses `P(p1,p2,...,pn)`.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let src = text.trim();
        let inner = src
            .strip_prefix("P(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or(LinkError::Parse { pos: 0, msg: "expected P(p1,...,pn)".into() })?;
        let vals: Result<Vec<i64>, _> = inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let twists =
            vals.map_err(|_| LinkError::Parse { pos: 2, msg: "twist counts must be integers".into() })?;
        PretzelSpec::new(twists)
    }

    /// Number of components of the pretzel link, by the parity rule:
    /// all p_i odd gives (3 + (−1)^n)/2, otherwise the number of even p_i.
    pub fn component_count_formula(&self) -> usize {
        let evens = self.twists.iter().filter(|p| *p % 2 == 0).count();
        if evens == 0 {
            if self.twists.len() % 2 == 0 {
                2
            } else {
                1
            }
        } else {
            evens
        }
    }
}

/// Unoriented crossing used while assembling diagrams whose strand
/// orientations are only determined globally. `ports` lists four port ids
/// counterclockwise; ports 0–2 form one strand, 1–3 the other.
struct UCrossing {
    ports: [usize; 4],
    over_a: bool,
}

/// Resolves orientations of an unoriented diagram given as crossings plus
/// arcs gluing ports, then emits an oriented `LinkDiagram`.
fn orient_unoriented(
    ucrossings: &[UCrossing],
    arcs: &[(usize, usize)],
    nports: usize,
) -> Result<LinkDiagram, LinkError> {
    let mut parent: Vec<usize> = (0..nports).collect();
    fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for &(a, b) in arcs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // edge = union class with exactly two crossing-port occurrences
    let mut occ: std::collections::HashMap<usize, Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (ci, uc) in ucrossings.iter().enumerate() {
        for (pi, &p) in uc.ports.iter().enumerate() {
            occ.entry(find(&mut parent, p)).or_default().push((ci, pi));
        }
    }
    for (e, lst) in &occ {
        if lst.len() != 2 {
            return Err(LinkError::Orientation(format!(
                "glued edge {e} touches {} crossing ports",
                lst.len()
            )));
        }
    }
    // walk components, directing each edge tail → head
    let mut directed: std::collections::HashMap<usize, ((usize, usize), (usize, usize))> =
        std::collections::HashMap::new();
    let mut edges: Vec<usize> = occ.keys().copied().collect();
    edges.sort_unstable();
    for &e0 in &edges {
        if directed.contains_key(&e0) {
            continue;
        }
        let (mut tail, mut head) = (occ[&e0][0], occ[&e0][1]);
        let mut e = e0;
        loop {
            directed.insert(e, (tail, head));
            let (ci, pi) = head;
            let out_pi = (pi + 2) % 4;
            let out_port = ucrossings[ci].ports[out_pi];
            let e2 = find(&mut parent, out_port);
            let (a, b) = (occ[&e2][0], occ[&e2][1]);
            let tail2 = (ci, out_pi);
            let head2 = if a == tail2 { b } else { a };
            if let Some(&(t, h)) = directed.get(&e2) {
                if (t, h) != (tail2, head2) {
                    return Err(LinkError::Orientation("conflicting walk".into()));
                }
                break;
            }
            e = e2;
            tail = tail2;
            head = head2;
        }
    }
    let edge_id: std::collections::HashMap<usize, usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut crossings = Vec::with_capacity(ucrossings.len());
    for (ci, uc) in ucrossings.iter().enumerate() {
        let mut ins = [usize::MAX; 4];
        let mut outs = [usize::MAX; 4];
        for pi in 0..4 {
            let e = find(&mut parent, uc.ports[pi]);
            let (tail, head) = directed[&e];
            if head == (ci, pi) {
                ins[pi] = edge_id[&e];
            } else if tail == (ci, pi) {
                outs[pi] = edge_id[&e];
            } else {
                return Err(LinkError::Orientation("port not on its edge".into()));
            }
        }
        let a_in = if ins[0] != usize::MAX { 0 } else { 2 };
        let b_in = if ins[1] != usize::MAX { 1 } else { 3 };
        let (u_in_pi, o_in_pi) = if uc.over_a { (b_in, a_in) } else { (a_in, b_in) };
        let sign = if u_in_pi == (o_in_pi + 1) % 4 { 1 } else { -1 };
        crossings.push(Crossing {
            sign,
            under_in: ins[u_in_pi],
            over_in: ins[o_in_pi],
            under_out: outs[(u_in_pi + 2) % 4],
            over_out: outs[(o_in_pi + 2) % 4],
        });
    }
    // classes with no crossing ports are crossing-free loops
    let mut roots = std::collections::HashSet::new();
    for p in 0..nports {
        roots.insert(find(&mut parent, p));
    }
    let free = roots.iter().filter(|r| !occ.contains_key(r)).count();
    LinkDiagram::new(crossings, free)
}

/// Builds the standard pretzel diagram: n vertical twist boxes side by side,
/// box i holding |p_i| crossings of sign matching sgn(p_i), closed by nested
/// arcs on top and bottom.
pub fn pretzel_diagram(spec: &PretzelSpec) -> LinkDiagram {
    let mut ucrossings = Vec::new();
    let mut arcs = Vec::new();
    let mut nport = 0usize;
    let mut fresh = || {
        nport += 1;
        nport - 1
    };
    let mut tl = Vec::new();
    let mut tr = Vec::new();
    let mut bl = Vec::new();
    let mut br = Vec::new();
    for &p in &spec.twists {
        let m = p.unsigned_abs() as usize;
        if m == 0 {
            let (t_l, t_r, b_l, b_r) = (fresh(), fresh(), fresh(), fresh());
            arcs.push((t_l, b_l));
            arcs.push((t_r, b_r));
            tl.push(t_l);
            tr.push(t_r);
            bl.push(b_l);
            br.push(b_r);
            continue;
        }
        let mut top_pair = None;
        let mut prev: Option<(usize, usize)> = None;
        for _ in 0..m {
            // ports counterclockwise: NW, SW, SE, NE
            let (nw, sw, se, ne) = (fresh(), fresh(), fresh(), fresh());
            ucrossings.push(UCrossing { ports: [nw, sw, se, ne], over_a: p > 0 });
            match prev {
                None => top_pair = Some((nw, ne)),
                Some((pl, pr)) => {
                    arcs.push((pl, nw));
                    arcs.push((pr, ne));
                }
            }
            prev = Some((sw, se));
        }
        let (t_l, t_r) = top_pair.unwrap();
        let (b_l, b_r) = prev.unwrap();
        tl.push(t_l);
        tr.push(t_r);
        bl.push(b_l);
        br.push(b_r);
    }
    let n = spec.twists.len();
    for i in 0..n {
        let j = (i + 1) % n;
        arcs.push((tr[i], tl[j]));
        arcs.push((br[i], bl[j]));
    }
    orient_unoriented(&ucrossings, &arcs, nport).expect("pretzel closure is a valid diagram")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(strands: usize, letters: &[i32]) -> LinkDiagram {
        braid_closure(&BraidWord::new(strands, letters.to_vec()).unwrap())
    }

    #[test]
    fn hopf_pd_parses() {
        let d = parse_pd("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap();
        assert_eq!(d.crossings().len(), 2);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn unknot_pd() {
        let d = parse_pd("PD[U(1)]").unwrap();
        assert_eq!(d.crossings().len(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn pd_arity_error() {
        assert!(matches!(parse_pd("PD[X(1,2,3)]"), Err(LinkError::Parse { .. })));
    }

    #[test]
    fn pd_label_count_error() {
        assert!(parse_pd("PD[X(1,2,3,4), X(1,2,3,5)]").is_err());
    }

    #[test]
    fn braid_closures_components() {
        assert_eq!(braid(2, &[1, 1]).component_count(), 2);
        assert_eq!(braid(2, &[1, 1, 1, 1]).component_count(), 2);
        assert_eq!(braid(2, &[]).component_count(), 2);
        assert_eq!(braid(3, &[1, -2, 1, -2, 1, -2]).component_count(), 3);
        assert_eq!(braid(2, &[1, 1, 1]).component_count(), 1);
    }

    #[test]
    fn braid_component_count_is_cycle_count() {
        for (strands, word) in [(3, vec![1, 2]), (3, vec![1, 1, 2]), (4, vec![1, -2, 3]), (2, vec![1])]
        {
            let w = BraidWord::new(strands, word).unwrap();
            let d = braid_closure(&w);
            let p = w.permutation();
            let mut seen = vec![false; strands];
            let mut cycles = 0;
            for s in 0..strands {
                if !seen[s] {
                    cycles += 1;
                    let mut t = s;
                    while !seen[t] {
                        seen[t] = true;
                        t = p[t];
                    }
                }
            }
            assert_eq!(d.component_count(), cycles);
        }
    }

    #[test]
    fn pretzel_component_counts() {
        for twists in [
            vec![1, 1, 1],
            vec![1, 1, 1, 1],
            vec![3, 5, 7],
            vec![2, 1, 4],
            vec![2, 2, 2],
            vec![0, 0],
            vec![0, 0, 3],
            vec![2, -2],
            vec![1, 2, 2, 2],
            vec![-3, 1, 2],
        ] {
            let spec = PretzelSpec::new(twists).unwrap();
            let d = pretzel_diagram(&spec);
            assert_eq!(
                d.component_count(),
                spec.component_count_formula(),
                "component count of {:?}",
                spec.twists
            );
            assert_eq!(
                d.crossings().len() as i64,
                spec.twists.iter().map(|p| p.abs()).sum::<i64>()
            );
        }
    }

    #[test]
    fn mirror_is_involution() {
        let d = braid(3, &[1, -2, 1, -2, 1, -2]);
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn self_crossing_change_trefoil() {
        let d = pretzel_diagram(&PretzelSpec::new(vec![1, 1, 1]).unwrap());
        let changed = d.self_crossing_change(0).unwrap();
        assert_eq!(changed.component_count(), 1);
        assert_ne!(changed, d);
    }

    #[test]
    fn self_crossing_change_rejects_mixed() {
        let d = braid(2, &[1, 1]);
        assert!(matches!(d.self_crossing_change(0), Err(LinkError::MixedCrossing { .. })));
    }

    #[test]
    fn pd_round_trip() {
        for d in [
            braid(2, &[1, 1]),
            braid(2, &[1, 1, 1, 1]),
            braid(3, &[1, -2, 1, -2, 1, -2]),
            pretzel_diagram(&PretzelSpec::new(vec![2, 2, 2]).unwrap()),
            pretzel_diagram(&PretzelSpec::new(vec![1, 2, 2, 2]).unwrap()),
        ] {
            let pd = d.emit_pd();
            let back = parse_pd(&pd).unwrap();
            assert_eq!(back.crossings().len(), d.crossings().len());
            assert_eq!(back.component_count(), d.component_count());
            assert_eq!(back.writhe(), d.writhe(), "writhe must survive round trip: {pd}");
            // signs as multisets agree
            let mut s1: Vec<i8> = d.crossings().iter().map(|c| c.sign).collect();
            let mut s2: Vec<i8> = back.crossings().iter().map(|c| c.sign).collect();
            s1.sort_unstable();
            s2.sort_unstable();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn linking_matrix_hopf() {
        let d = braid(2, &[1, 1]);
        assert_eq!(d.linking_matrix()[0][1], 1);
        assert_eq!(d.mirror().linking_matrix()[0][1], -1);
        let r = d.reverse_components(&[0]);
        assert_eq!(r.linking_matrix()[0][1], -1);
    }

    #[test]
    fn braid_word_parse() {
        let w = BraidWord::parse("BR[3; s1 -s2 s1 -s2 s1 -s2]").unwrap();
        assert_eq!(w.strands, 3);
        assert_eq!(w.letters, vec![1, -2, 1, -2, 1, -2]);
        assert!(BraidWord::parse("BR[2; s2]").is_err());
    }

    #[test]
    fn pretzel_parse() {
        let p = PretzelSpec::parse("P(2,-3,7)").unwrap();
        assert_eq!(p.twists, vec![2, -3, 7]);
        assert!(PretzelSpec::parse("P()").is_err());
    }
}
