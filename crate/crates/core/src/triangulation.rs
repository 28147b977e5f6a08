//! Layered triangulations and the combinatorics of the cusp tessellation.
//!
//! A bundle word of period m yields m tetrahedron layers stacked cyclically;
//! a two-bridge word of length c yields c-1 layers of two isometric
//! tetrahedra closed off by a clasp at each end. Edge classes are read off
//! the fan structure of the Farey path: one class per visited Farey vertex,
//! carrying the dihedral-angle slots of the layers in its fan.
//!
//! The cusp tessellation is recorded as two triangles per layer (one apex-up,
//! one apex-down after the hyperelliptic quotient), with corner labels
//! x, y, z clockwise and z at the apex. Side s of a triangle joins ccw
//! corners s and s+1, so with ccw corner order (x, z, y) side 0 is the
//! x-side, side 1 the y-side, and side 2 the base.

use crate::error::Error;
use crate::farey::{BridgeWord, Letter, MonodromyWord};
use crate::Result;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriKind {
    TorusBundle,
    SphereBundle,
    TwoBridge,
}

impl TriKind {
    /// Tetrahedra per layer.
    pub fn multiplicity(self) -> u32 {
        match self {
            TriKind::TorusBundle => 1,
            TriKind::SphereBundle | TriKind::TwoBridge => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TriKind::TorusBundle => "bundle",
            TriKind::SphereBundle => "sphere",
            TriKind::TwoBridge => "bridge",
        }
    }
}

/// Dihedral-angle slot label within a layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleLabel {
    X,
    Y,
    Z,
}

/// One tetrahedron layer.
#[derive(Debug, Clone, Copy)]
pub struct Layer {
    /// Bundle: 0..m-1. Two-bridge: 1..c-1.
    pub index: usize,
    /// Letters just before and just after this layer.
    pub context: (Letter, Letter),
    pub hinge: bool,
    pub tetrahedra: u32,
}

/// An edge of the triangulation with its incident angle slots.
///
/// Slot counts are chosen so that the slot angles always sum to 2*pi:
/// for bundles they are the honest dihedral count; for two-bridge words
/// the classes away from the clasps are one of two isometric parallel
/// copies, and the two clasp cores carry both copies merged.
#[derive(Debug, Clone)]
pub struct EdgeClass {
    pub id: usize,
    /// (layer index, label, multiplicity) triples.
    pub slots: Vec<(usize, AngleLabel, u32)>,
    pub valence: usize,
    /// Slope of the corresponding Farey vertex, as a primitive vector.
    pub farey_vertex: (i64, i64),
    pub is_clasp_core: bool,
    /// Two-bridge metadata: crossing indices (1-based letters) in the fan.
    pub crossings: Vec<usize>,
}

/// A fan: the layers spanned by one syllable, from hinge to hinge.
#[derive(Debug, Clone)]
pub struct Fan {
    pub letter: Letter,
    /// Syllable length k (the fan spans k+1 layers when both hinges exist).
    pub length: u32,
    /// Letter position (bundle: 0-based, bridge: 1-based) where the
    /// syllable starts.
    pub letter_start: usize,
    /// Hinge layer entering the fan; None at a clasp end.
    pub first_hinge: Option<usize>,
    /// Hinge layer leaving the fan; None at a clasp end.
    pub last_hinge: Option<usize>,
    /// Edge class of the fan vertex.
    pub node_class: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CuspTriangle {
    pub layer: usize,
    pub apex_up: bool,
    /// Corner labels clockwise, z at the apex.
    pub corners_clockwise: [AngleLabel; 3],
}

/// A clasp hairpin of the two-bridge cusp picture: the fold identifies
/// `folded` as a pair and folds `self_folded` onto itself end-to-end.
#[derive(Debug, Clone, Copy)]
pub struct Hairpin {
    pub top: bool,
    pub vertex_class: usize,
    pub folded: ((usize, usize), (usize, usize)),
    pub self_folded: (usize, usize),
}

/// Combinatorial cusp tessellation: two triangles per layer, adjacency
/// given as (triangle, side) pairs.
#[derive(Debug, Clone)]
pub struct CuspGraph {
    pub triangles: Vec<CuspTriangle>,
    /// `adjacency[t][s]` = (t', s') glued to side s of triangle t.
    pub adjacency: Vec<[(usize, usize); 3]>,
    pub horizontal_period: usize,
    pub horizontal_period_unquotiented: usize,
    pub vertical_period: usize,
    pub hairpins: Vec<Hairpin>,
}

/// A layered triangulation of a bundle or a two-bridge link complement.
#[derive(Debug, Clone)]
pub struct LayeredTriangulation {
    pub kind: TriKind,
    letters: Vec<Letter>,
    pub layers: Vec<Layer>,
    pub edge_classes: Vec<EdgeClass>,
    /// Class ids of the (p, q, d) slopes at each level of the Farey path.
    /// Bundles: level i in 0..m. Two-bridge: level i in 1..=c stored at i-1.
    level_roles: Vec<[usize; 3]>,
    fans: Vec<Fan>,
    word_display: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    P,
    Q,
    D,
}

impl LayeredTriangulation {
    /// Number of letters: m for bundles, c for two-bridge words.
    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn word_display(&self) -> &str {
        &self.word_display
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.layers.iter().map(|l| l.tetrahedra as usize).sum()
    }

    /// Length of the pleating vector: m for bundles, c+1 for two-bridge
    /// (pinned endpoints included).
    pub fn pleating_len(&self) -> usize {
        match self.kind {
            TriKind::TorusBundle | TriKind::SphereBundle => self.num_letters(),
            TriKind::TwoBridge => self.num_letters() + 1,
        }
    }

    /// Layer by triangulation index (bundle 0-based, bridge 1-based).
    pub fn layer(&self, index: usize) -> &Layer {
        match self.kind {
            TriKind::TorusBundle | TriKind::SphereBundle => &self.layers[index],
            TriKind::TwoBridge => &self.layers[index - 1],
        }
    }

    pub fn is_bundle(&self) -> bool {
        matches!(self.kind, TriKind::TorusBundle | TriKind::SphereBundle)
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    /// Hinge layer indices in increasing order.
    pub fn hinges(&self) -> Vec<usize> {
        self.layers.iter().filter(|l| l.hinge).map(|l| l.index).collect()
    }

    /// Letter between layers `lower` and `lower + 1` of the cusp picture,
    /// if that interface exists.
    pub(crate) fn letter_between(&self, lower: i64) -> Option<Letter> {
        match self.kind {
            TriKind::TorusBundle | TriKind::SphereBundle => {
                let m = self.letters.len() as i64;
                Some(self.letters[(lower + 1).rem_euclid(m) as usize])
            }
            TriKind::TwoBridge => {
                let c = self.letters.len() as i64;
                if lower >= 1 && lower <= c - 2 {
                    Some(self.letters[lower as usize])
                } else {
                    None
                }
            }
        }
    }

    /// First letter of a two-bridge word (drives the bottom clasp fold).
    pub(crate) fn first_letter(&self) -> Letter {
        self.letters[0]
    }

    pub(crate) fn last_letter(&self) -> Letter {
        *self.letters.last().unwrap()
    }

    /// Class id of role r at a level of the Farey path.
    pub(crate) fn role_class(&self, level: i64, role: Role) -> usize {
        let slot = match role {
            Role::P => 0,
            Role::Q => 1,
            Role::D => 2,
        };
        match self.kind {
            TriKind::TorusBundle | TriKind::SphereBundle => {
                let m = self.letters.len() as i64;
                self.level_roles[level.rem_euclid(m) as usize][slot]
            }
            TriKind::TwoBridge => self.level_roles[(level - 1) as usize][slot],
        }
    }
}

fn layer_list(letters: &[Letter], cyclic: bool, tets: u32) -> Vec<Layer> {
    let n = letters.len();
    if cyclic {
        (0..n)
            .map(|i| {
                let context = (letters[i], letters[(i + 1) % n]);
                Layer { index: i, context, hinge: context.0 != context.1, tetrahedra: tets }
            })
            .collect()
    } else {
        (1..n)
            .map(|i| {
                let context = (letters[i - 1], letters[i]);
                Layer { index: i, context, hinge: context.0 != context.1, tetrahedra: tets }
            })
            .collect()
    }
}

/// Positive-cone Farey walk driven by the letters; returns the slope
/// vectors (p_i, q_i, d_i) for each level i, where (p, q) are the right
/// and left ends of the crossed edge and d the vertex opposite it, plus
/// the terminal edge.
fn slope_walk(letters: &[Letter]) -> (Vec<[(i64, i64); 3]>, ((i64, i64), (i64, i64))) {
    let mut p = (0i64, 1i64);
    let mut q = (1i64, 0i64);
    let mut out = Vec::with_capacity(letters.len() + 1);
    for &l in letters {
        let u = (p.0 + q.0, p.1 + q.1);
        // level built from the turn at this letter: the dropped slope is
        // the non-pivot end of the entering edge
        match l {
            Letter::R => {
                out.push([p, u, q]);
                q = u;
            }
            Letter::L => {
                out.push([u, q, p]);
                p = u;
            }
        }
    }
    (out, (p, q))
}

/// Builds the layered triangulation of a once-punctured-torus or
/// 4-punctured-sphere bundle.
pub fn build_bundle_triangulation(word: &MonodromyWord, kind: TriKind) -> LayeredTriangulation {
    assert!(
        matches!(kind, TriKind::TorusBundle | TriKind::SphereBundle),
        "bundle kinds only"
    );
    let letters = word.letters();
    let m = letters.len();
    let layers = layer_list(&letters, true, kind.multiplicity());

    // Slope tags from one period of the walk (level i = layer i).
    let (slopes, _) = slope_walk(&letters);

    // One class per maximal run: syllable runs plus zero-length runs at
    // adjacent equal letters. Slots: the opposite-label pair on every fan
    // layer, one z at each flanking layer.
    let mut classes: Vec<EdgeClass> = Vec::new();
    let mut level_roles = vec![[usize::MAX; 3]; m];
    let mut fans: Vec<Fan> = Vec::new();
    let md = |i: i64| i.rem_euclid(m as i64) as usize;

    let make_class = |classes: &mut Vec<EdgeClass>,
                          level_roles: &mut Vec<[usize; 3]>,
                          fan_layers: Vec<usize>,
                          label: AngleLabel,
                          lower_flank: usize,
                          upper_flank: usize,
                          slope: (i64, i64)| {
        let id = classes.len();
        let mut slots: Vec<(usize, AngleLabel, u32)> =
            fan_layers.iter().map(|&l| (l, label, 2)).collect();
        slots.push((lower_flank, AngleLabel::Z, 1));
        slots.push((upper_flank, AngleLabel::Z, 1));
        let valence = slots.iter().map(|&(_, _, k)| k as usize).sum();
        let role_slot = match label {
            AngleLabel::X => 0,
            AngleLabel::Y => 1,
            AngleLabel::Z => unreachable!(),
        };
        for &l in &fan_layers {
            level_roles[l][role_slot] = id;
        }
        // the class dies at the upper flank layer: it is that layer's old
        // diagonal
        level_roles[upper_flank][2] = id;
        classes.push(EdgeClass {
            id,
            slots,
            valence,
            farey_vertex: slope,
            is_clasp_core: false,
            crossings: Vec::new(),
        });
        id
    };

    // syllable runs
    let mut pos = 0usize;
    for &(letter, len) in word.syllables() {
        let len = len as usize;
        // run of the syllable letter: fan layers pos-1 .. pos+len-1
        let fan_layers: Vec<usize> = (0..=len).map(|k| md(pos as i64 - 1 + k as i64)).collect();
        let label = if letter == Letter::R { AngleLabel::X } else { AngleLabel::Y };
        let lower = md(pos as i64 - 2);
        let upper = md((pos + len) as i64);
        // the pivot slope of the run: p at the first fan layer for R, q for L
        let first_layer = fan_layers[0];
        let slope = match letter {
            Letter::R => slopes[first_layer][0],
            Letter::L => slopes[first_layer][1],
        };
        let id = make_class(&mut classes, &mut level_roles, fan_layers, label, lower, upper, slope);
        fans.push(Fan {
            letter,
            length: len as u32,
            letter_start: pos,
            first_hinge: Some(md(pos as i64 - 1)),
            last_hinge: Some(md((pos + len - 1) as i64)),
            node_class: id,
        });
        pos += len;
    }
    // zero-length runs at adjacent equal letters
    for t in 0..m {
        let t1 = (t + 1) % m;
        if letters[t] == letters[t1] {
            let label = if letters[t] == Letter::R { AngleLabel::Y } else { AngleLabel::X };
            let slope = match label {
                AngleLabel::X => slopes[t][0],
                AngleLabel::Y => slopes[t][1],
                AngleLabel::Z => unreachable!(),
            };
            make_class(
                &mut classes,
                &mut level_roles,
                vec![t],
                label,
                md(t as i64 - 1),
                t1,
                slope,
            );
        }
    }

    debug_assert_eq!(classes.len(), m, "one edge class per tetrahedron");
    debug_assert!(level_roles.iter().all(|r| r.iter().all(|&x| x != usize::MAX)));

    LayeredTriangulation {
        kind,
        letters,
        layers,
        edge_classes: classes,
        level_roles,
        fans,
        word_display: word.to_string(),
    }
}

/// Builds the layered triangulation of a two-bridge link complement.
pub fn build_bridge_triangulation(word: &BridgeWord) -> Result<LayeredTriangulation> {
    if word.twist_number() < 2 {
        return Err(Error::TooFewSyllables);
    }
    let letters = word.letters();
    let c = letters.len();
    let layers = layer_list(&letters, false, 2);

    // Levels 1..=c; slopes[i-1] = (p, q, d) at level i.
    let (slopes, terminal_edge) = slope_walk(&letters);

    // Bucket levels by slope to find the runs (each slope is visited on a
    // single interval of levels).
    let mut runs: HashMap<(i64, i64), (usize, usize)> = HashMap::new();
    for (idx, s) in slopes.iter().enumerate() {
        let level = idx + 1;
        for &v in s {
            let e = runs.entry(v).or_insert((level, level));
            e.0 = e.0.min(level);
            e.1 = e.1.max(level);
        }
    }

    // The clasp folds merge the runs of the two ends of the initial Farey
    // edge into the bottom core, of the terminal edge into the top core.
    let bottom_slopes: [(i64, i64); 2] = [(0, 1), (1, 0)];
    let top_slopes: [(i64, i64); 2] = [terminal_edge.0, terminal_edge.1];

    // Deterministic run order: by (first level, slope).
    let mut run_list: Vec<((i64, i64), (usize, usize))> = runs.into_iter().collect();
    run_list.sort_by_key(|&(v, (f, l))| (f, l, v));

    let single_slots = |v: (i64, i64), first: usize, last: usize| {
        let mut slots: Vec<(usize, AngleLabel, u32)> = Vec::new();
        // v is an end of the crossed edge at levels first..last
        for level in first..last {
            let label = if v == slopes[level - 1][0] {
                AngleLabel::X
            } else {
                debug_assert_eq!(v, slopes[level - 1][1]);
                AngleLabel::Y
            };
            slots.push((level, label, 2));
        }
        if first >= 2 {
            slots.push((first - 1, AngleLabel::Z, 1));
        }
        if last <= c - 1 {
            slots.push((last, AngleLabel::Z, 1));
        }
        let crossings: Vec<usize> = (first..=last).collect();
        (slots, crossings)
    };

    let is_bottom = |v: (i64, i64)| bottom_slopes.contains(&v);
    let is_top = |v: (i64, i64)| top_slopes.contains(&v);

    let mut classes: Vec<EdgeClass> = Vec::new();
    let mut slope_to_class: HashMap<(i64, i64), usize> = HashMap::new();
    let mut bottom_core: Option<usize> = None;
    let mut top_core: Option<usize> = None;

    for &(v, (first, last)) in &run_list {
        let (slots, crossings) = single_slots(v, first, last);
        let merged_bottom = is_bottom(v);
        let merged_top = is_top(v);
        let core_slot = if merged_bottom {
            &mut bottom_core
        } else if merged_top {
            &mut top_core
        } else {
            // ordinary run: two isometric parallel copies
            let base = classes.len();
            for copy in 0..2 {
                classes.push(EdgeClass {
                    id: base + copy,
                    slots: slots.clone(),
                    valence: slots.iter().map(|&(_, _, k)| k as usize).sum(),
                    farey_vertex: v,
                    is_clasp_core: false,
                    crossings: crossings.clone(),
                });
            }
            slope_to_class.insert(v, base);
            continue;
        };
        // clasp core: both copies of both merged runs form one class
        let id = match core_slot {
            Some(id) => *id,
            None => {
                let id = classes.len();
                classes.push(EdgeClass {
                    id,
                    slots: Vec::new(),
                    valence: 0,
                    farey_vertex: v,
                    is_clasp_core: true,
                    crossings: Vec::new(),
                });
                *core_slot = Some(id);
                id
            }
        };
        let class = &mut classes[id];
        for &(l, lab, k) in &slots {
            class.slots.push((l, lab, 2 * k));
        }
        class.valence = class.slots.iter().map(|&(_, _, k)| k as usize).sum();
        class.crossings.extend(crossings);
        class.crossings.sort_unstable();
        class.crossings.dedup();
        slope_to_class.insert(v, id);
    }

    debug_assert_eq!(classes.len(), 2 * (c - 1), "2(c-1) edge classes");

    // Role table: levels 1..=c.
    let mut level_roles = vec![[usize::MAX; 3]; c];
    for (idx, s) in slopes.iter().enumerate() {
        for (slot, &v) in s.iter().enumerate() {
            level_roles[idx][slot] = slope_to_class[&v];
        }
    }

    // Fans per syllable.
    let mut fans = Vec::new();
    let mut pos = 1usize; // 1-based letter position
    for &(letter, len) in word.syllables() {
        let len = len as usize;
        let first_hinge = if pos >= 2 { Some(pos - 1) } else { None };
        let last = pos + len - 1;
        let last_hinge = if last <= c - 1 { Some(last) } else { None };
        // pivot slope of the run at the first letter's level
        let node_slope = match letter {
            Letter::R => slopes[pos - 1][0],
            Letter::L => slopes[pos - 1][1],
        };
        fans.push(Fan {
            letter,
            length: len as u32,
            letter_start: pos,
            first_hinge,
            last_hinge,
            node_class: slope_to_class[&node_slope],
        });
        pos += len;
    }

    Ok(LayeredTriangulation {
        kind: TriKind::TwoBridge,
        letters,
        layers,
        edge_classes: classes,
        level_roles,
        fans,
        word_display: word.to_string(),
    })
}

/// Quotient cusp tessellation with adjacency; triangle 2i is the apex-down
/// triangle of layer i, triangle 2i+1 the apex-up one.
pub fn cusp_graph(tri: &LayeredTriangulation) -> CuspGraph {
    let layers = &tri.layers;
    let n = layers.len();
    let down = |li: usize| 2 * li;
    let up = |li: usize| 2 * li + 1;

    let triangles: Vec<CuspTriangle> = layers
        .iter()
        .flat_map(|l| {
            [
                CuspTriangle {
                    layer: l.index,
                    apex_up: false,
                    corners_clockwise: [AngleLabel::X, AngleLabel::Y, AngleLabel::Z],
                },
                CuspTriangle {
                    layer: l.index,
                    apex_up: true,
                    corners_clockwise: [AngleLabel::X, AngleLabel::Y, AngleLabel::Z],
                },
            ]
        })
        .collect();

    let mut adjacency = vec![[(usize::MAX, usize::MAX); 3]; 2 * n];
    let mut hairpins = Vec::new();

    // interfaces between consecutive layer rows
    let pair = |adj: &mut Vec<[(usize, usize); 3]>, a: (usize, usize), b: (usize, usize)| {
        adj[a.0][a.1] = b;
        adj[b.0][b.1] = a;
    };
    let wrap = tri.is_bundle();
    for li in 0..n {
        // interface above row li (to row li+1)
        let next = if li + 1 < n {
            Some(li + 1)
        } else if wrap {
            Some(0)
        } else {
            None
        };
        let Some(nj) = next else { continue };
        let letter = tri
            .letter_between(layers[li].index as i64)
            .expect("interior interface has a letter");
        match letter {
            Letter::R => {
                pair(&mut adjacency, (up(nj), 2), (up(li), 0));
                pair(&mut adjacency, (down(nj), 0), (down(li), 2));
                pair(&mut adjacency, (down(nj), 1), (up(li), 1));
            }
            Letter::L => {
                pair(&mut adjacency, (down(nj), 0), (up(li), 0));
                pair(&mut adjacency, (down(nj), 1), (down(li), 2));
                pair(&mut adjacency, (up(nj), 2), (up(li), 1));
            }
        }
    }

    if tri.kind == TriKind::TwoBridge {
        // bottom clasp on row index 1 (stored layer 0)
        let (d1, u1) = (down(0), up(0));
        match tri.first_letter() {
            Letter::R => {
                pair(&mut adjacency, (d1, 1), (u1, 2));
                adjacency[d1][0] = (d1, 0);
                hairpins.push(Hairpin {
                    top: false,
                    vertex_class: tri.role_class(1, Role::Q),
                    folded: ((d1, 1), (u1, 2)),
                    self_folded: (d1, 0),
                });
            }
            Letter::L => {
                pair(&mut adjacency, (d1, 0), (u1, 2));
                adjacency[d1][1] = (d1, 1);
                hairpins.push(Hairpin {
                    top: false,
                    vertex_class: tri.role_class(1, Role::P),
                    folded: ((d1, 0), (u1, 2)),
                    self_folded: (d1, 1),
                });
            }
        }
        // top clasp on the last row
        let (dc, uc) = (down(n - 1), up(n - 1));
        let c = tri.num_letters() as i64;
        match tri.last_letter() {
            Letter::R => {
                pair(&mut adjacency, (dc, 2), (uc, 1));
                adjacency[uc][0] = (uc, 0);
                hairpins.push(Hairpin {
                    top: true,
                    vertex_class: tri.role_class(c - 1, Role::Q),
                    folded: ((dc, 2), (uc, 1)),
                    self_folded: (uc, 0),
                });
            }
            Letter::L => {
                pair(&mut adjacency, (uc, 0), (dc, 2));
                adjacency[uc][1] = (uc, 1);
                hairpins.push(Hairpin {
                    top: true,
                    vertex_class: tri.role_class(c - 1, Role::P),
                    folded: ((uc, 0), (dc, 2)),
                    self_folded: (uc, 1),
                });
            }
        }
    }

    debug_assert!(adjacency
        .iter()
        .all(|t| t.iter().all(|&(a, _)| a != usize::MAX)));

    CuspGraph {
        triangles,
        adjacency,
        horizontal_period: 2,
        horizontal_period_unquotiented: 4,
        vertical_period: n,
        hairpins,
    }
}

/// Class id at a corner of a quotient cusp triangle (corner in ccw order
/// x, z, y as used by the development).
pub(crate) fn corner_class(tri: &LayeredTriangulation, triangle: usize, corner: usize) -> usize {
    let li = triangle / 2;
    let level = tri.layers[li].index as i64;
    let apex_up = triangle % 2 == 1;
    if apex_up {
        match corner {
            0 => tri.role_class(level, Role::P),
            2 => tri.role_class(level, Role::Q),
            1 => {
                // new slope at the level above
                match tri.letter_between(level) {
                    Some(Letter::R) => tri.role_class(level + 1, Role::Q),
                    Some(Letter::L) => tri.role_class(level + 1, Role::P),
                    // top clasp row: the new slope at level c
                    None => {
                        let c = tri.num_letters() as i64;
                        debug_assert_eq!(level, c - 1);
                        match tri.last_letter() {
                            Letter::R => tri.role_class(c, Role::Q),
                            Letter::L => tri.role_class(c, Role::P),
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    } else {
        match corner {
            0 => tri.role_class(level, Role::P),
            1 => tri.role_class(level, Role::D),
            2 => tri.role_class(level, Role::Q),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{parse_bridge_word, parse_bundle_word};

    fn bundle(text: &str) -> LayeredTriangulation {
        build_bundle_triangulation(&parse_bundle_word(text).unwrap(), TriKind::TorusBundle)
    }

    fn bridge(text: &str) -> LayeredTriangulation {
        build_bridge_triangulation(&parse_bridge_word(text).unwrap()).unwrap()
    }

    #[test]
    fn bundle_rl() {
        let t = bundle("RL");
        assert_eq!(t.num_layers(), 2);
        assert!(t.layers.iter().all(|l| l.hinge));
        assert_eq!(t.edge_classes.len(), 2);
        assert!(t.edge_classes.iter().all(|c| c.valence == 6));
    }

    #[test]
    fn bundle_rrll() {
        let t = bundle("RRLL");
        assert_eq!(t.num_layers(), 4);
        assert_eq!(t.hinges(), vec![1, 3]);
        let mut valences: Vec<usize> = t.edge_classes.iter().map(|c| c.valence).collect();
        valences.sort_unstable();
        assert_eq!(valences, vec![4, 4, 8, 8]);
    }

    #[test]
    fn bundle_class_count_is_m() {
        for text in ["RL", "RRLL", "R3L2", "RLRLLL", "R2LRL3"] {
            let t = bundle(text);
            assert_eq!(t.edge_classes.len(), t.num_layers());
        }
    }

    #[test]
    fn bundle_valence_formula() {
        // every class of a maximal subword R L^n R or L R^n L has valence 2n+4
        let t = bundle("R3L2");
        for f in t.fans() {
            let class = &t.edge_classes[f.node_class];
            assert_eq!(class.valence, 2 * f.length as usize + 4);
        }
    }

    #[test]
    fn bundle_slot_conservation() {
        for text in ["RL", "RRLL", "R4L4", "R2LRL3"] {
            let t = bundle(text);
            let m = t.num_layers();
            // each layer exposes exactly two slots of each label
            let mut count = vec![[0u32; 3]; m];
            for c in &t.edge_classes {
                for &(layer, label, k) in &c.slots {
                    let idx = match label {
                        AngleLabel::X => 0,
                        AngleLabel::Y => 1,
                        AngleLabel::Z => 2,
                    };
                    count[layer][idx] += k;
                }
            }
            assert!(count.iter().all(|c| *c == [2, 2, 2]), "word {text}");
        }
    }

    #[test]
    fn bundle_hinge_count() {
        for text in ["RL", "RRLL", "R3L2", "R2LRL3"] {
            let t = bundle(text);
            let w = parse_bundle_word(text).unwrap();
            assert_eq!(t.hinges().len(), 2 * w.syllable_pairs());
        }
    }

    #[test]
    fn bridge_rl() {
        let t = bridge("RL");
        assert_eq!(t.num_layers(), 1);
        assert_eq!(t.num_tetrahedra(), 2);
        assert_eq!(t.layer(1).index, 1);
        assert!(t.layer(1).hinge);
        assert_eq!(t.edge_classes.len(), 2);
        for c in &t.edge_classes {
            assert_eq!(c.valence, 6);
            assert!(c.is_clasp_core);
        }
    }

    #[test]
    fn bridge_r3l2r() {
        let t = bridge("R3L2R");
        assert_eq!(t.num_layers(), 5);
        assert_eq!(t.num_tetrahedra(), 10);
        assert_eq!(t.edge_classes.len(), 10);
        assert_eq!(t.edge_classes.iter().filter(|c| c.is_clasp_core).count(), 2);
    }

    #[test]
    fn bridge_class_count() {
        for text in ["RL", "R2L", "R3L2R", "RLRL", "R2L3R2"] {
            let t = bridge(text);
            assert_eq!(t.edge_classes.len(), 2 * (t.num_letters() - 1), "{text}");
        }
    }

    #[test]
    fn bridge_slot_conservation() {
        for text in ["RL", "R2L", "R3L2R", "RLRL"] {
            let t = bridge(text);
            let c = t.num_letters();
            // per layer and label: 2 slots per parallel copy, 4 in total
            let mut count: HashMap<(usize, u32), u32> = HashMap::new();
            for cl in &t.edge_classes {
                for &(layer, label, k) in &cl.slots {
                    let idx = match label {
                        AngleLabel::X => 0,
                        AngleLabel::Y => 1,
                        AngleLabel::Z => 2,
                    };
                    *count.entry((layer, idx)).or_insert(0) += k;
                }
            }
            for layer in 1..c {
                for idx in 0..3 {
                    assert_eq!(count.get(&(layer, idx)), Some(&4), "{text} layer {layer}");
                }
            }
        }
    }

    #[test]
    fn cusp_graph_counts() {
        let g = cusp_graph(&bundle("RL"));
        assert_eq!(g.triangles.len(), 4);
        assert_eq!(g.horizontal_period, 2);
        assert_eq!(g.vertical_period, 2);
        assert!(g.hairpins.is_empty());

        let g = cusp_graph(&bundle("R4L4"));
        assert_eq!(g.triangles.len(), 16);

        let g = cusp_graph(&bridge("R3L2R"));
        assert_eq!(g.triangles.len(), 10);
        assert_eq!(g.hairpins.len(), 2);
    }

    #[test]
    fn cusp_graph_adjacency_involution() {
        for t in [bundle("RL"), bundle("R2LRL3"), bridge("R3L2R"), bridge("RL")] {
            let g = cusp_graph(&t);
            for (ti, sides) in g.adjacency.iter().enumerate() {
                for (si, &(tj, sj)) in sides.iter().enumerate() {
                    assert_eq!(g.adjacency[tj][sj], (ti, si), "gluing not involutive");
                }
            }
        }
    }

    #[test]
    fn cusp_graph_degrees_match_valences() {
        // corner incidences per class in the quotient picture, which shows
        // one of the two isometric parallel copies of a two-bridge class
        for t in [bundle("RL"), bundle("RRLL"), bundle("R3L2"), bridge("R3L2R"), bridge("RL")] {
            let g = cusp_graph(&t);
            let mut degree = vec![0usize; t.edge_classes.len()];
            for ti in 0..g.triangles.len() {
                for corner in 0..3 {
                    degree[corner_class(&t, ti, corner)] += 1;
                }
            }
            let mut seen_slopes = std::collections::HashSet::new();
            for c in &t.edge_classes {
                match t.kind {
                    TriKind::TwoBridge => {
                        if c.is_clasp_core {
                            assert_eq!(degree[c.id], c.valence / 2, "{}", t.word_display());
                        } else if seen_slopes.insert(c.farey_vertex) {
                            // representative copy
                            assert_eq!(degree[c.id], c.valence, "{}", t.word_display());
                        } else {
                            // second copy never appears in the quotient
                            assert_eq!(degree[c.id], 0);
                        }
                    }
                    _ => assert_eq!(degree[c.id], c.valence, "{}", t.word_display()),
                }
            }
        }
    }
}
