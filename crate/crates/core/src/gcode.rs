//! Group codes: subgroups of `A^n` given by generators, with labelled
//! coordinates. Membership and size come from explicit enumeration under a
//! hard cap.

use crate::config::{pow_sat, DEFAULT_CAP};
use crate::error::{invalid, Error, Result};
use crate::group::FiniteAbelianGroup;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

/// A word of `A^n`, one element index per coordinate.
pub type Word = Vec<usize>;

#[derive(Debug)]
struct Codewords {
    sorted: Vec<Word>,
    set: HashSet<Word>,
}

/// A subgroup of `A^n` spanned by `generators`.
#[derive(Debug, Clone)]
pub struct GroupCode {
    alphabet: FiniteAbelianGroup,
    labels: Vec<String>,
    generators: Vec<Word>,
    cap: u64,
    cache: Arc<OnceLock<std::result::Result<Arc<Codewords>, Error>>>,
}

/// Input/output map of a code with respect to an information set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IOMap {
    pub alphabet: FiniteAbelianGroup,
    pub info_set: Vec<String>,
    pub check_set: Vec<String>,
    /// Check-coordinate values for each information word, keyed by the
    /// information word.
    pub table: BTreeMap<Word, Word>,
}

impl IOMap {
    pub fn apply(&self, info: &[usize]) -> Option<&Word> {
        self.table.get(info)
    }

    /// Verifies `phi(a + b) = phi(a) + phi(b)` on every pair.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.alphabet;
        let add =
            |x: &Word, y: &Word| -> Word { x.iter().zip(y).map(|(&a, &b)| g.add(a, b)).collect() };
        self.table.iter().all(|(a, pa)| {
            self.table
                .iter()
                .all(|(b, pb)| self.table.get(&add(a, b)) == Some(&add(pa, pb)))
        })
    }
}

pub(crate) fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Generators of `A` itself: one per cyclic component.
pub(crate) fn component_generators(g: &FiniteAbelianGroup) -> Vec<usize> {
    let m = g.cyclic_orders().len();
    (0..m)
        .map(|i| {
            let mut r = vec![0u32; m];
            r[i] = 1;
            g.index_of(&crate::group::GroupElement::new(r))
                .expect("unit residue")
        })
        .collect()
}

impl GroupCode {
    pub fn new(
        alphabet: FiniteAbelianGroup,
        labels: Vec<String>,
        generators: Vec<Word>,
    ) -> Result<Self> {
        Self::with_cap(alphabet, labels, generators, DEFAULT_CAP)
    }

    pub fn with_cap(
        alphabet: FiniteAbelianGroup,
        labels: Vec<String>,
        generators: Vec<Word>,
        cap: u64,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(invalid(format!("duplicate coordinate label `{l}`")));
            }
        }
        for g in &generators {
            if g.len() != labels.len() {
                return Err(Error::ShapeMismatch(format!(
                    "generator of length {} for a code of length {}",
                    g.len(),
                    labels.len()
                )));
            }
            if g.iter().any(|&s| s >= alphabet.order()) {
                return Err(Error::ShapeMismatch(
                    "generator symbol outside the alphabet".into(),
                ));
            }
        }
        Ok(GroupCode {
            alphabet,
            labels,
            generators,
            cap,
            cache: Arc::new(OnceLock::new()),
        })
    }

    /// Builds a code from a complete list of codewords, picking a greedy
    /// generating set and priming the enumeration cache.
    pub fn from_words(
        alphabet: FiniteAbelianGroup,
        labels: Vec<String>,
        words: Vec<Word>,
        cap: u64,
    ) -> Result<Self> {
        let n = labels.len();
        let mut span: HashSet<Word> = HashSet::from([vec![0; n]]);
        let mut generators = Vec::new();
        let mut sorted = words;
        sorted.sort();
        sorted.dedup();
        for w in &sorted {
            if !span.contains(w) {
                span = extend_span(&alphabet, &span, w, u64::MAX)?;
                generators.push(w.clone());
            }
        }
        if span.len() != sorted.len() {
            return Err(invalid("word list is not closed under addition"));
        }
        let code = Self::with_cap(alphabet, labels, generators, cap)?;
        let _ = code
            .cache
            .set(Ok(Arc::new(Codewords { sorted, set: span })));
        Ok(code)
    }

    /// `{(a, ..., a)}` with coordinates labelled `0..n`.
    pub fn repetition(alphabet: FiniteAbelianGroup, n: usize) -> Result<Self> {
        Self::repetition_labeled(alphabet, index_labels(n))
    }

    pub fn repetition_labeled(alphabet: FiniteAbelianGroup, labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(invalid("repetition code needs n >= 1"));
        }
        let n = labels.len();
        let gens = component_generators(&alphabet)
            .into_iter()
            .map(|g| vec![g; n])
            .collect();
        Self::new(alphabet, labels, gens)
    }

    /// `{a : sum a_i = 0}` with coordinates labelled `0..n`.
    pub fn zero_sum(alphabet: FiniteAbelianGroup, n: usize) -> Result<Self> {
        Self::zero_sum_labeled(alphabet, index_labels(n))
    }

    pub fn zero_sum_labeled(alphabet: FiniteAbelianGroup, labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(invalid("zero-sum code needs n >= 1"));
        }
        let n = labels.len();
        let mut gens = Vec::new();
        for g in component_generators(&alphabet) {
            for i in 0..n - 1 {
                let mut w = vec![0; n];
                w[i] = g;
                w[n - 1] = alphabet.neg(g);
                gens.push(w);
            }
        }
        Self::new(alphabet, labels, gens)
    }

    /// All of `A^n`.
    pub fn universe(alphabet: FiniteAbelianGroup, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let mut gens = Vec::new();
        for g in component_generators(&alphabet) {
            for i in 0..n {
                let mut w = vec![0; n];
                w[i] = g;
                gens.push(w);
            }
        }
        Self::new(alphabet, labels, gens)
    }

    pub fn set_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self.cache = Arc::new(OnceLock::new());
        self
    }

    pub fn alphabet(&self) -> &FiniteAbelianGroup {
        &self.alphabet
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Same code with new coordinate labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::ShapeMismatch("relabel must keep the length".into()));
        }
        let code = Self::with_cap(
            self.alphabet.clone(),
            labels,
            self.generators.clone(),
            self.cap,
        )?;
        let _ = code.cache.set(
            self.cache
                .get()
                .cloned()
                .unwrap_or_else(|| self.enumerate()),
        );
        Ok(code)
    }

    fn enumerate(&self) -> std::result::Result<Arc<Codewords>, Error> {
        let mut span: HashSet<Word> = HashSet::from([vec![0; self.len()]]);
        for g in &self.generators {
            if !span.contains(g) {
                span = extend_span(&self.alphabet, &span, g, self.cap)?;
            }
        }
        let mut sorted: Vec<Word> = span.iter().cloned().collect();
        sorted.sort();
        Ok(Arc::new(Codewords { sorted, set: span }))
    }

    fn codewords(&self) -> Result<Arc<Codewords>> {
        self.cache.get_or_init(|| self.enumerate()).clone()
    }

    /// Every codeword in lexicographic order of element indices.
    pub fn words(&self) -> Result<Vec<Word>> {
        Ok(self.codewords()?.sorted.clone())
    }

    pub fn for_each_word(&self, mut f: impl FnMut(&Word)) -> Result<()> {
        for w in &self.codewords()?.sorted {
            f(w);
        }
        Ok(())
    }

    pub fn size(&self) -> Result<u128> {
        Ok(self.codewords()?.sorted.len() as u128)
    }

    pub fn contains(&self, w: &[usize]) -> Result<bool> {
        Ok(self.codewords()?.set.contains(w))
    }

    /// `k` with `|C| = |A|^k`, when such an integer exists.
    pub fn dimension(&self) -> Result<Option<u32>> {
        let size = self.size()?;
        let q = self.alphabet.order() as u128;
        let mut p = 1u128;
        for k in 0..=self.len() as u32 {
            if p == size {
                return Ok(Some(k));
            }
            p = p.saturating_mul(q);
        }
        Ok(None)
    }

    /// Set equality, including coordinate labels.
    pub fn same_set(&self, other: &GroupCode) -> Result<bool> {
        if self.labels != other.labels || self.alphabet != other.alphabet {
            return Ok(false);
        }
        Ok(self.codewords()?.sorted == other.codewords()?.sorted)
    }

    fn positions(&self, labels: &[String]) -> Result<Vec<usize>> {
        let pos: HashMap<&str, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut out = Vec::with_capacity(labels.len());
        let mut seen = HashSet::new();
        for l in labels {
            let p = *pos
                .get(l.as_str())
                .ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            if !seen.insert(p) {
                return Err(invalid(format!("label `{l}` repeated in subset")));
            }
            out.push(p);
        }
        Ok(out)
    }

    fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|i| !positions.contains(i)).collect()
    }

    /// `C^perp = {a_hat : <a_hat, a> = 0 for all a in C}`, by enumerating `A^n`.
    pub fn dual(&self) -> Result<GroupCode> {
        let n = self.len();
        let q = self.alphabet.order();
        let universe = pow_sat(q, n);
        if universe > self.cap as u128 {
            return Err(Error::CapExceeded {
                what: "dual code (|A|^n)".into(),
                needed: universe,
                cap: self.cap,
            });
        }
        let g = &self.alphabet;
        let mut words = Vec::new();
        let mut w = vec![0usize; n];
        loop {
            let orthogonal = self.generators.iter().all(|gen| {
                let k: u64 = gen
                    .iter()
                    .zip(&w)
                    .map(|(&a, &ah)| g.pairing_numerator(ah, a))
                    .sum();
                k.is_multiple_of(g.lcm())
            });
            if orthogonal {
                words.push(w.clone());
            }
            if !odometer(&mut w, q) {
                break;
            }
        }
        GroupCode::from_words(g.clone(), self.labels.clone(), words, self.cap)
    }

    fn require_systematic(&self) -> Result<u32> {
        self.dimension()?.ok_or(Error::NotSystematic {
            size: self.size().unwrap_or(0),
            alphabet_order: self.alphabet.order(),
        })
    }

    /// True iff projection onto `labels` is a bijection onto `A^J`.
    pub fn is_information_set(&self, labels: &[String]) -> Result<bool> {
        let pos = self.positions(labels)?;
        let k = self.require_systematic()?;
        if pos.len() != k as usize {
            return Ok(false);
        }
        let cw = self.codewords()?;
        let projected: HashSet<Vec<usize>> = cw
            .sorted
            .iter()
            .map(|w| pos.iter().map(|&p| w[p]).collect())
            .collect();
        Ok(projected.len() == cw.sorted.len())
    }

    fn require_information_set(&self, labels: &[String]) -> Result<Vec<usize>> {
        if !self.is_information_set(labels)? {
            return Err(Error::NotInformationSet(labels.to_vec()));
        }
        self.positions(labels)
    }

    pub fn io_map(&self, info: &[String]) -> Result<IOMap> {
        let pos = self.require_information_set(info)?;
        let check = self.complement(&pos);
        let mut table = BTreeMap::new();
        for w in &self.codewords()?.sorted {
            table.insert(
                pos.iter().map(|&p| w[p]).collect(),
                check.iter().map(|&p| w[p]).collect(),
            );
        }
        Ok(IOMap {
            alphabet: self.alphabet.clone(),
            info_set: info.to_vec(),
            check_set: check.iter().map(|&p| self.labels[p].clone()).collect(),
            table,
        })
    }

    /// The subcodes `C_i = {c : c_j = 0 for j in J, j != i}`, one per
    /// information coordinate; their internal direct sum is `C`.
    pub fn systematic_basis(&self, info: &[String]) -> Result<Vec<GroupCode>> {
        let pos = self.require_information_set(info)?;
        let cw = self.codewords()?;
        pos.iter()
            .map(|&i| {
                let words = cw
                    .sorted
                    .iter()
                    .filter(|w| pos.iter().all(|&j| j == i || w[j] == 0))
                    .cloned()
                    .collect();
                GroupCode::from_words(self.alphabet.clone(), self.labels.clone(), words, self.cap)
            })
            .collect()
    }

    /// `C_{|J}`: codewords restricted to `J`.
    pub fn project(&self, labels: &[String]) -> Result<GroupCode> {
        let pos = self.positions(labels)?;
        let words = self
            .codewords()?
            .sorted
            .iter()
            .map(|w| pos.iter().map(|&p| w[p]).collect())
            .collect();
        GroupCode::from_words(self.alphabet.clone(), labels.to_vec(), words, self.cap)
    }

    /// `C_{:J}`: codewords that vanish off `J`, restricted to `J`.
    pub fn cross_section(&self, labels: &[String]) -> Result<GroupCode> {
        let pos = self.positions(labels)?;
        let rest = self.complement(&pos);
        let words = self
            .codewords()?
            .sorted
            .iter()
            .filter(|w| rest.iter().all(|&p| w[p] == 0))
            .map(|w| pos.iter().map(|&p| w[p]).collect())
            .collect();
        GroupCode::from_words(self.alphabet.clone(), labels.to_vec(), words, self.cap)
    }

    /// Coordinates on which some codeword is nonzero.
    pub fn support(&self) -> Result<Vec<String>> {
        let cw = self.codewords()?;
        Ok((0..self.len())
            .filter(|&i| cw.sorted.iter().any(|w| w[i] != 0))
            .map(|i| self.labels[i].clone())
            .collect())
    }

    /// Text form: alphabet line, label line, then one generator per line
    /// with each symbol written as its residues joined by `:`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.alphabet).unwrap();
        writeln!(s, "{}", self.labels.join(" ")).unwrap();
        for g in &self.generators {
            let row: Vec<String> = g
                .iter()
                .map(|&e| {
                    self.alphabet
                        .residues(e)
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(":")
                })
                .collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<GroupCode> {
        let mut lines = text.lines();
        let alphabet: FiniteAbelianGroup = lines
            .next()
            .ok_or_else(|| Error::Parse("missing alphabet line".into()))?
            .parse()?;
        let labels: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Parse("missing label line".into()))?
            .split_whitespace()
            .map(String::from)
            .collect();
        let mut gens = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut row = Vec::new();
            for sym in line.split_whitespace() {
                let residues = sym
                    .split(':')
                    .map(|r| {
                        r.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad symbol `{sym}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                row.push(alphabet.index_of(&crate::group::GroupElement::new(residues))?);
            }
            gens.push(row);
        }
        GroupCode::new(alphabet, labels, gens)
    }
}

/// `span + <g>`, erroring when the result would exceed `cap`.
fn extend_span(
    g: &FiniteAbelianGroup,
    span: &HashSet<Word>,
    gen: &Word,
    cap: u64,
) -> Result<HashSet<Word>> {
    let mut out = span.clone();
    let mut multiple = gen.clone();
    while !span.contains(&multiple) {
        for w in span {
            out.insert(
                w.iter()
                    .zip(&multiple)
                    .map(|(&a, &b)| g.add(a, b))
                    .collect(),
            );
        }
        if out.len() as u128 > cap as u128 {
            return Err(Error::CapExceeded {
                what: "code enumeration".into(),
                needed: out.len() as u128,
                cap,
            });
        }
        multiple = multiple
            .iter()
            .zip(gen)
            .map(|(&a, &b)| g.add(a, b))
            .collect();
    }
    Ok(out)
}

/// Advances `w` through `[0, q)^n` in mixed-radix order; false after the last word.
pub(crate) fn odometer(w: &mut [usize], q: usize) -> bool {
    for i in (0..w.len()).rev() {
        w[i] += 1;
        if w[i] < q {
            return true;
        }
        w[i] = 0;
    }
    false
}

/// `y = M x` over `A` for an integer matrix with `rows x cols` entries.
pub fn apply_matrix(g: &FiniteAbelianGroup, m: &[Vec<i64>], x: &[usize]) -> Word {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&c, &xi)| g.add(acc, g.scale(c, xi)))
        })
        .collect()
}

/// `y_hat M = M^T y_hat`.
pub fn apply_transpose(g: &FiniteAbelianGroup, m: &[Vec<i64>], y: &[usize]) -> Word {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            m.iter()
                .zip(y)
                .fold(0, |acc, (row, &yi)| g.add(acc, g.scale(row[j], yi)))
        })
        .collect()
}

/// `im(x -> Mx)` as a code labelled by `row_labels`.
pub fn image_of_matrix(
    g: &FiniteAbelianGroup,
    m: &[Vec<i64>],
    row_labels: Vec<String>,
    cap: u64,
) -> Result<GroupCode> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut gens = Vec::new();
    for c in component_generators(g) {
        for j in 0..cols {
            let mut x = vec![0; cols];
            x[j] = c;
            gens.push(apply_matrix(g, m, &x));
        }
    }
    GroupCode::with_cap(g.clone(), row_labels, gens, cap)
}

/// `ker(x -> Mx)` as a code labelled by `col_labels`, by enumerating `A^cols`.
pub fn kernel_of_matrix(
    g: &FiniteAbelianGroup,
    m: &[Vec<i64>],
    col_labels: Vec<String>,
    cap: u64,
) -> Result<GroupCode> {
    let cols = col_labels.len();
    let needed = pow_sat(g.order(), cols);
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what: "kernel enumeration".into(),
            needed,
            cap,
        });
    }
    let mut words = Vec::new();
    let mut x = vec![0; cols];
    loop {
        if apply_matrix(g, m, &x).iter().all(|&v| v == 0) {
            words.push(x.clone());
        }
        if !odometer(&mut x, g.order()) {
            break;
        }
    }
    GroupCode::from_words(g.clone(), col_labels, words, cap)
}

/// Transpose of an integer matrix.
pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(q: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(q).unwrap()
    }

    fn l(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn repetition_and_zero_sum_words() {
        let r = GroupCode::repetition(z(2), 3).unwrap();
        assert_eq!(r.words().unwrap(), vec![vec![0, 0, 0], vec![1, 1, 1]]);
        let r = GroupCode::repetition(z(3), 2).unwrap();
        assert_eq!(r.words().unwrap(), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        let s = GroupCode::zero_sum(z(2), 3).unwrap();
        assert_eq!(
            s.words().unwrap(),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        let s = GroupCode::zero_sum(z(3), 2).unwrap();
        assert_eq!(s.words().unwrap(), vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        assert!(GroupCode::repetition(z(2), 0).is_err());
        assert!(GroupCode::zero_sum(z(2), 0).is_err());
    }

    #[test]
    fn multi_component_alphabet_sizes() {
        let g: FiniteAbelianGroup = "Z2xZ4".parse().unwrap();
        assert_eq!(
            GroupCode::repetition(g.clone(), 3).unwrap().size().unwrap(),
            8
        );
        assert_eq!(
            GroupCode::zero_sum(g.clone(), 3).unwrap().size().unwrap(),
            64
        );
        assert_eq!(
            GroupCode::universe(g, index_labels(2))
                .unwrap()
                .size()
                .unwrap(),
            64
        );
    }

    #[test]
    fn repetition_dual_is_zero_sum() {
        let r = GroupCode::repetition(z(2), 3).unwrap();
        assert!(r
            .dual()
            .unwrap()
            .same_set(&GroupCode::zero_sum(z(2), 3).unwrap())
            .unwrap());
        let u = GroupCode::universe(z(3), index_labels(2)).unwrap();
        assert_eq!(u.dual().unwrap().words().unwrap(), vec![vec![0, 0]]);
    }

    #[test]
    fn dual_cap_is_enforced() {
        let r = GroupCode::repetition(z(2), 30).unwrap();
        assert!(matches!(r.dual(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn information_sets() {
        let s = GroupCode::zero_sum(z(2), 3).unwrap();
        assert!(s.is_information_set(&l(&["0", "1"])).unwrap());
        assert!(!s.is_information_set(&l(&["0", "1", "2"])).unwrap());
        let r = GroupCode::repetition(z(2), 3).unwrap();
        assert!(r.is_information_set(&l(&["2"])).unwrap());
        assert!(matches!(
            r.is_information_set(&l(&["9"])),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn information_set_refused_on_mixed_order_subgroup() {
        // {0, 2} in Z4 has size 2, not a power of 4.
        let c = GroupCode::new(z(4), l(&["a"]), vec![vec![2]]).unwrap();
        assert_eq!(c.dimension().unwrap(), None);
        assert!(matches!(
            c.is_information_set(&l(&["a"])),
            Err(Error::NotSystematic { .. })
        ));
        // Set-level operations still work.
        assert_eq!(c.dual().unwrap().size().unwrap(), 2);
    }

    #[test]
    fn io_maps() {
        let s = GroupCode::zero_sum(z(2), 3).unwrap();
        let m = s.io_map(&l(&["0", "1"])).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(m.apply(&[a, b]).unwrap(), &vec![(a + b) % 2]);
            }
        }
        assert!(m.is_homomorphism());
        let r = GroupCode::repetition(z(3), 3).unwrap();
        let m = r.io_map(&l(&["0"])).unwrap();
        for a in 0..3 {
            assert_eq!(m.apply(&[a]).unwrap(), &vec![a, a]);
        }
        assert!(matches!(
            s.io_map(&l(&["0"])),
            Err(Error::NotInformationSet(_))
        ));
    }

    #[test]
    fn systematic_bases() {
        let s = GroupCode::zero_sum(z(2), 3).unwrap();
        let b = s.systematic_basis(&l(&["0", "1"])).unwrap();
        assert_eq!(b[0].words().unwrap(), vec![vec![0, 0, 0], vec![1, 0, 1]]);
        assert_eq!(b[1].words().unwrap(), vec![vec![0, 0, 0], vec![0, 1, 1]]);
        let s3 = GroupCode::zero_sum(z(3), 3).unwrap();
        let b = s3.systematic_basis(&l(&["0", "1"])).unwrap();
        assert_eq!(b[0].support().unwrap(), l(&["0", "2"]));
        assert_eq!(b[1].support().unwrap(), l(&["1", "2"]));
        let r = GroupCode::repetition(z(2), 4).unwrap();
        let b = r.systematic_basis(&l(&["0"])).unwrap();
        assert!(b[0].same_set(&r).unwrap());
    }

    #[test]
    fn projection_and_cross_section() {
        let s = GroupCode::zero_sum(z(2), 3).unwrap();
        assert_eq!(s.project(&l(&["0"])).unwrap().size().unwrap(), 2);
        assert_eq!(
            s.cross_section(&l(&["0"])).unwrap().words().unwrap(),
            vec![vec![0]]
        );
    }

    #[test]
    fn text_round_trip() {
        let g: FiniteAbelianGroup = "Z2xZ4".parse().unwrap();
        let c = GroupCode::zero_sum_labeled(g, l(&["a", "b", "c"])).unwrap();
        let back = GroupCode::from_text(&c.to_text()).unwrap();
        assert!(back.same_set(&c).unwrap());
        assert_eq!(back.generators(), c.generators());
    }

    #[test]
    fn matrix_image_and_kernel() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let im = image_of_matrix(&z(2), &m, l(&["r0", "r1"]), DEFAULT_CAP).unwrap();
        assert_eq!(im.size().unwrap(), 4);
        let ker = kernel_of_matrix(&z(2), &m, l(&["a", "b", "c"]), DEFAULT_CAP).unwrap();
        assert_eq!(ker.words().unwrap(), vec![vec![0, 0, 0], vec![1, 1, 1]]);
    }
}
