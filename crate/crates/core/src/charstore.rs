//! Characters, readings, radicals and the partition into allographic classes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Scalar;

/// Longest Japanese kun reading, counted in syllables.
pub const MAX_KUN_SYLLABLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Language {
    Mandarin,
    JapaneseOn,
    JapaneseKun,
}

impl Language {
    pub const ALL: [Language; 3] = [Language::Mandarin, Language::JapaneseOn, Language::JapaneseKun];

    /// Tag used in the readings file and snapshot columns.
    pub fn tag(self) -> &'static str {
        match self {
            Language::Mandarin => "cmn",
            Language::JapaneseOn => "ja_on",
            Language::JapaneseKun => "ja_kun",
        }
    }

    pub fn is_japanese(self) -> bool {
        !matches!(self, Language::Mandarin)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cmn" => Ok(Language::Mandarin),
            "ja_on" => Ok(Language::JapaneseOn),
            "ja_kun" => Ok(Language::JapaneseKun),
            other => Err(Error::InvalidParameter(format!("unknown language tag {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reading {
    language: Language,
    syllables: Vec<String>,
}

impl Reading {
    pub fn new<S: Into<String>>(language: Language, syllables: impl IntoIterator<Item = S>) -> Result<Self> {
        let syllables: Vec<String> = syllables.into_iter().map(Into::into).collect();
        if syllables.is_empty() || syllables.iter().any(|s| s.is_empty()) {
            return Err(Error::InvalidReading(format!("{language} reading has an empty syllable list")));
        }
        match language {
            Language::Mandarin if syllables.len() != 1 => {
                return Err(Error::InvalidReading(format!(
                    "Mandarin readings are monosyllabic, got {:?}",
                    syllables.join(" ")
                )))
            }
            Language::JapaneseKun if syllables.len() > MAX_KUN_SYLLABLES => {
                return Err(Error::InvalidReading(format!(
                    "kun reading {:?} exceeds {MAX_KUN_SYLLABLES} syllables",
                    syllables.join(" ")
                )))
            }
            _ => {}
        }
        Ok(Reading { language, syllables })
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn syllables(&self) -> &[String] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// A stored character with everything known about it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sinograph {
    pub codepoint: char,
    pub readings: Vec<Reading>,
    /// Kāng Xī radical number, 1 to 214.
    pub kangxi_radical: Option<u8>,
    pub stroke_count: u32,
}

impl Sinograph {
    pub fn new(codepoint: char) -> Self {
        Sinograph { codepoint, ..Default::default() }
    }

    pub fn readings_in(&self, language: Language) -> impl Iterator<Item = &Reading> {
        self.readings.iter().filter(move |r| r.language == language)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u32);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllographClass {
    pub id: ClassId,
    /// Sorted ascending by codepoint.
    pub members: Vec<char>,
    pub representative: char,
}

impl AllographClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, c: char) -> bool {
        self.members.binary_search(&c).is_ok()
    }
}

/// Disjoint-set forest over dense indices.
struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Partition of a character set into allographic classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    classes: Vec<AllographClass>,
    by_char: HashMap<char, ClassId>,
}

/// Merges characters connected by variant pairs into classes.
///
/// Class ids are assigned in ascending order of each class's smallest member,
/// so the result depends only on the inputs.
pub fn build_allograph_classes(variant_pairs: &[(char, char)], chars: &BTreeSet<char>) -> Result<Partition> {
    let index: HashMap<char, usize> = chars.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let all: Vec<char> = chars.iter().copied().collect();
    let mut dsu = DisjointSet::new(all.len());
    for &(a, b) in variant_pairs {
        match (index.get(&a), index.get(&b)) {
            (Some(&i), Some(&j)) => dsu.union(i, j),
            _ => return Err(Error::UnknownVariantPair(a, b)),
        }
    }

    // `all` is sorted, so the first time a root is seen is at its smallest member.
    let mut root_to_class: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<Vec<char>> = Vec::new();
    for (i, &c) in all.iter().enumerate() {
        let root = dsu.find(i);
        let slot = *root_to_class.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(c);
    }

    let mut by_char = HashMap::with_capacity(all.len());
    let classes = groups
        .into_iter()
        .enumerate()
        .map(|(i, members)| {
            let id = ClassId(i as u32);
            for &c in &members {
                by_char.insert(c, id);
            }
            AllographClass { id, representative: members[0], members }
        })
        .collect();
    Ok(Partition { classes, by_char })
}

impl Partition {
    /// Rebuilds a partition from explicit classes (e.g. loaded from a snapshot).
    pub fn from_classes(classes: Vec<AllographClass>) -> Result<Self> {
        let mut by_char = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            if class.id.index() != i {
                return Err(Error::InvalidParameter(format!("class ids must be dense, found {} at {i}", class.id)));
            }
            if class.members.is_empty() {
                return Err(Error::Empty("allographic class"));
            }
            for &c in &class.members {
                if by_char.insert(c, class.id).is_some() {
                    return Err(Error::InvalidParameter(format!("U+{:04X} belongs to two classes", u32::from(c))));
                }
            }
        }
        Ok(Partition { classes, by_char })
    }

    pub fn classes(&self) -> &[AllographClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, c: char) -> Result<ClassId> {
        self.by_char.get(&c).copied().ok_or(Error::UnknownCodepoint(c))
    }

    pub fn get(&self, c: char) -> Option<ClassId> {
        self.by_char.get(&c).copied()
    }

    pub fn class(&self, id: ClassId) -> Result<&AllographClass> {
        self.classes.get(id.index()).ok_or(Error::UnknownClass(id.0))
    }

    pub fn members(&self, id: ClassId) -> &[char] {
        &self.classes[id.index()].members
    }

    pub fn representative(&self, id: ClassId) -> char {
        self.classes[id.index()].representative
    }

    /// Picks the member with the largest weight as representative; ties and
    /// unweighted members fall back to the lowest codepoint.
    pub fn choose_representatives<W, F>(&mut self, weight: F)
    where
        W: PartialOrd,
        F: Fn(char) -> Option<W>,
    {
        for class in &mut self.classes {
            let mut best = class.members[0];
            let mut best_w = weight(best);
            for &c in &class.members[1..] {
                let w = weight(c);
                let better = match (&w, &best_w) {
                    (Some(w), Some(b)) => w > b,
                    (Some(_), None) => true,
                    _ => false,
                };
                if better {
                    best = c;
                    best_w = w;
                }
            }
            class.representative = best;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassStats<T> {
    pub count: usize,
    pub singleton_fraction: T,
    pub max_size: usize,
    pub mean_size: T,
}

pub fn class_statistics<T: Scalar>(classes: &[AllographClass]) -> Result<ClassStats<T>> {
    if classes.is_empty() {
        return Err(Error::Empty("class set"));
    }
    let count = classes.len();
    let singletons = classes.iter().filter(|c| c.is_singleton()).count();
    let chars: usize = classes.iter().map(AllographClass::len).sum();
    let max_size = classes.iter().map(AllographClass::len).max().unwrap_or(0);
    Ok(ClassStats {
        count,
        singleton_fraction: T::from_count(singletons) / T::from_count(count),
        max_size,
        mean_size: T::from_count(chars) / T::from_count(count),
    })
}

/// Immutable character database with its class partition.
#[derive(Debug, Clone, Default)]
pub struct CharStore {
    chars: BTreeMap<char, Sinograph>,
    partition: Partition,
}

impl CharStore {
    pub fn new(chars: impl IntoIterator<Item = Sinograph>, variant_pairs: &[(char, char)]) -> Result<Self> {
        let chars: BTreeMap<char, Sinograph> = chars.into_iter().map(|s| (s.codepoint, s)).collect();
        let set: BTreeSet<char> = chars.keys().copied().collect();
        let partition = build_allograph_classes(variant_pairs, &set)?;
        Ok(CharStore { chars, partition })
    }

    /// Pairs an existing partition with character records. Characters missing
    /// from `chars` get empty records.
    pub fn with_partition(partition: Partition, mut chars: BTreeMap<char, Sinograph>) -> Self {
        for class in partition.classes() {
            for &c in &class.members {
                chars.entry(c).or_insert_with(|| Sinograph::new(c));
            }
        }
        chars.retain(|c, _| partition.get(*c).is_some());
        CharStore { chars, partition }
    }

    pub fn get(&self, c: char) -> Option<&Sinograph> {
        self.chars.get(&c)
    }

    pub fn chars(&self) -> impl Iterator<Item = &Sinograph> {
        self.chars.values()
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn partition_mut(&mut self) -> &mut Partition {
        &mut self.partition
    }

    pub fn class_of(&self, c: char) -> Result<ClassId> {
        self.partition.class_of(c)
    }

    /// All readings of the class members in one language.
    pub fn class_readings(&self, id: ClassId, language: Language) -> Vec<&Reading> {
        self.partition
            .members(id)
            .iter()
            .filter_map(|c| self.chars.get(c))
            .flat_map(|s| s.readings_in(language))
            .collect()
    }

    /// Languages for which at least one member of the class has a reading.
    pub fn reading_languages(&self, id: ClassId) -> BTreeSet<Language> {
        self.partition
            .members(id)
            .iter()
            .filter_map(|c| self.chars.get(c))
            .flat_map(|s| s.readings.iter().map(Reading::language))
            .collect()
    }

    pub fn radical(&self, c: char) -> Option<u8> {
        self.chars.get(&c).and_then(|s| s.kangxi_radical)
    }
}
