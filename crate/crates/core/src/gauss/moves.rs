//! Reidemeister moves at the chord level.
//!
//! Each move is applied at an explicitly given site and fails with
//! `NotApplicable` when the site does not support it. Finding sites is left to
//! callers (see the `fuzz` module).

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::code::{Passage, Sign, Token};
use super::diagram::{GaussDiagram, SlotRef};
use super::GaussError;

/// Order of the two endpoints of a new R1 chord along the strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum R1Kind {
    OverFirst,
    UnderFirst,
}

/// Whether the two strands of an R2 bigon run the same way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum R2Orientation {
    Parallel,
    Antiparallel,
}

fn not_applicable(msg: impl Into<String>) -> GaussError {
    GaussError::NotApplicable(msg.into())
}

fn check_gap(d: &GaussDiagram, site: SlotRef) -> Result<(), GaussError> {
    match d.components().get(site.component) {
        None => Err(GaussError::BadIndex(site.component)),
        Some(slots) if site.position > slots.len() => {
            Err(not_applicable(format!("gap {} out of range", site.position)))
        }
        Some(_) => Ok(()),
    }
}

/// `b` immediately follows `a` on the same circle.
fn follows(d: &GaussDiagram, a: SlotRef, b: SlotRef) -> bool {
    a.component == b.component && a != b && d.next_slot(a) == b
}

fn adjacent(d: &GaussDiagram, a: SlotRef, b: SlotRef) -> bool {
    follows(d, a, b) || follows(d, b, a)
}

fn without_chords(d: &GaussDiagram, chords: &[usize]) -> GaussDiagram {
    let tokens = d
        .components()
        .iter()
        .zip(d.to_tokens())
        .map(|(slots, toks)| {
            slots
                .iter()
                .zip(toks)
                .filter(|(e, _)| !chords.contains(&e.chord))
                .map(|(_, t)| t)
                .collect()
        })
        .collect();
    d.rebuilt(tokens, d.roles().to_vec())
}

impl GaussDiagram {
    /// Inserts an isolated chord whose endpoints occupy consecutive slots at
    /// gap `site` (a gap index runs from 0 to the component length).
    pub fn apply_r1(&self, site: SlotRef, sign: Sign, kind: R1Kind) -> Result<Self, GaussError> {
        check_gap(self, site)?;
        let label = self.next_label();
        let (first, second) = match kind {
            R1Kind::OverFirst => (Passage::Over, Passage::Under),
            R1Kind::UnderFirst => (Passage::Under, Passage::Over),
        };
        let mut tokens = self.to_tokens();
        let comp = &mut tokens[site.component];
        comp.insert(site.position, Token { passage: second, label, sign });
        comp.insert(site.position, Token { passage: first, label, sign });
        Ok(self.rebuilt(tokens, self.roles().to_vec()))
    }

    /// Removes chord `chord` if its two endpoints are adjacent.
    pub fn undo_r1(&self, chord: usize) -> Result<Self, GaussError> {
        let c = self.chords().get(chord).ok_or(GaussError::BadIndex(chord))?;
        if !adjacent(self, c.over, c.under) {
            return Err(not_applicable("chord endpoints are not adjacent"));
        }
        Ok(without_chords(self, &[chord]))
    }

    /// Inserts two chords of opposite sign (`sign` for the first) whose over
    /// endpoints sit consecutively at gap `over_site` and whose under
    /// endpoints sit at gap `under_site`, in the same order for parallel
    /// strands and reversed for antiparallel ones.
    pub fn apply_r2(
        &self,
        over_site: SlotRef,
        under_site: SlotRef,
        sign: Sign,
        orientation: R2Orientation,
    ) -> Result<Self, GaussError> {
        check_gap(self, over_site)?;
        check_gap(self, under_site)?;
        let l1 = self.next_label();
        let l2 = l1 + 1;
        let tok = |passage, label, sign| Token { passage, label, sign };
        let overs = vec![tok(Passage::Over, l1, sign), tok(Passage::Over, l2, sign.flip())];
        let mut unders = vec![tok(Passage::Under, l1, sign), tok(Passage::Under, l2, sign.flip())];
        if orientation == R2Orientation::Antiparallel {
            unders.reverse();
        }
        let mut tokens = self.to_tokens();
        if over_site == under_site {
            let mut both = overs;
            both.extend(unders);
            splice(&mut tokens[over_site.component], over_site.position, both);
        } else {
            // insert at the later gap first so the earlier gap index stays valid
            let mut edits = [(over_site, overs), (under_site, unders)];
            edits.sort_by_key(|(s, _)| std::cmp::Reverse(*s));
            for (site, toks) in edits {
                splice(&mut tokens[site.component], site.position, toks);
            }
        }
        Ok(self.rebuilt(tokens, self.roles().to_vec()))
    }

    /// Removes chords `a` and `b` if they form an R2 bigon: opposite signs,
    /// adjacent over endpoints and adjacent under endpoints.
    pub fn undo_r2(&self, a: usize, b: usize) -> Result<Self, GaussError> {
        let ca = self.chords().get(a).ok_or(GaussError::BadIndex(a))?;
        let cb = self.chords().get(b).ok_or(GaussError::BadIndex(b))?;
        if a == b || ca.sign == cb.sign {
            return Err(not_applicable("R2 needs two chords of opposite sign"));
        }
        if !adjacent(self, ca.over, cb.over) || !adjacent(self, ca.under, cb.under) {
            return Err(not_applicable("R2 chords are not parallel neighbours"));
        }
        Ok(without_chords(self, &[a, b]))
    }

    /// Third Reidemeister move on the triangle formed by three chords.
    ///
    /// The six endpoints must pair up into three strands of adjacent slots:
    /// a top strand carrying two over endpoints, a middle strand with one of
    /// each, a bottom strand with two under endpoints. The configuration must
    /// be one realized by three lines in the plane; the move swaps the two
    /// endpoints on every strand.
    pub fn apply_r3(&self, chords: [usize; 3]) -> Result<Self, GaussError> {
        for &c in &chords {
            if c >= self.crossing_count() {
                return Err(GaussError::BadIndex(c));
            }
        }
        if chords[0] == chords[1] || chords[1] == chords[2] || chords[0] == chords[2] {
            return Err(not_applicable("R3 needs three distinct chords"));
        }
        let strands = find_triangle(self, chords)
            .ok_or_else(|| not_applicable("chords do not form a valid R3 triangle"))?;
        let mut tokens = self.to_tokens();
        for (first, second) in strands {
            let comp = &mut tokens[first.component];
            comp.swap(first.position, second.position);
        }
        Ok(self.rebuilt(tokens, self.roles().to_vec()))
    }
}

fn splice(comp: &mut Vec<Token>, at: usize, toks: Vec<Token>) {
    comp.splice(at..at, toks);
}

/// Local data of an R3 triangle: order of endpoints on each strand and the
/// signs of the three crossings (top/middle, top/bottom, middle/bottom).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct R3Pattern {
    pub top_tm_first: bool,
    pub mid_tm_first: bool,
    pub bot_tb_first: bool,
    pub sign_tm: Sign,
    pub sign_tb: Sign,
    pub sign_mb: Sign,
}

impl R3Pattern {
    /// The pattern after the move: every strand order reversed.
    pub fn moved(self) -> Self {
        Self {
            top_tm_first: !self.top_tm_first,
            mid_tm_first: !self.mid_tm_first,
            bot_tb_first: !self.bot_tb_first,
            ..self
        }
    }
}

type Pt = (f64, f64);

fn cross(a: Pt, b: Pt) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn intersect(p: Pt, d: Pt, q: Pt, e: Pt) -> Pt {
    let u = cross((q.0 - p.0, q.1 - p.1), e) / cross(d, e);
    (p.0 + u * d.0, p.1 + u * d.1)
}

/// All R3 patterns realized by three lines in general position, before and
/// after sliding one line across the opposite vertex, and their mirrors.
pub fn r3_patterns() -> &'static HashSet<R3Pattern> {
    static PATTERNS: OnceLock<HashSet<R3Pattern>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        let before: [(Pt, Pt); 3] = [((0., 0.), (1., 0.)), ((0., 0.), (1., 1.)), ((2., 0.), (-1., 1.))];
        let mut after = before;
        after[2].0 = (-2., 0.);
        let heights = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = HashSet::new();
        for lines in [before, after] {
            for h in heights {
                for orient in 0..8u8 {
                    let line = |k: usize| {
                        let (p, d) = lines[h[k]];
                        let o = if orient >> k & 1 == 1 { -1. } else { 1. };
                        (p, (d.0 * o, d.1 * o))
                    };
                    let (top, mid, bot) = (line(0), line(1), line(2));
                    let x_tm = intersect(top.0, top.1, mid.0, mid.1);
                    let x_tb = intersect(top.0, top.1, bot.0, bot.1);
                    let x_mb = intersect(mid.0, mid.1, bot.0, bot.1);
                    let param = |l: (Pt, Pt), x: Pt| (x.0 - l.0 .0) * l.1 .0 + (x.1 - l.0 .1) * l.1 .1;
                    let sign = |over: (Pt, Pt), under: (Pt, Pt)| {
                        if cross(over.1, under.1) > 0. {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        }
                    };
                    let pat = R3Pattern {
                        top_tm_first: param(top, x_tm) < param(top, x_tb),
                        mid_tm_first: param(mid, x_tm) < param(mid, x_mb),
                        bot_tb_first: param(bot, x_tb) < param(bot, x_mb),
                        sign_tm: sign(top, mid),
                        sign_tb: sign(top, bot),
                        sign_mb: sign(mid, bot),
                    };
                    out.insert(pat);
                    out.insert(R3Pattern {
                        sign_tm: pat.sign_tm.flip(),
                        sign_tb: pat.sign_tb.flip(),
                        sign_mb: pat.sign_mb.flip(),
                        ..pat
                    });
                }
            }
        }
        out
    })
}

#[derive(Clone, Copy)]
struct End {
    chord: usize,
    passage: Passage,
    at: SlotRef,
}

/// Finds the three strands of a valid triangle, each as `(first, second)`
/// slots in travel order.
fn find_triangle(d: &GaussDiagram, chords: [usize; 3]) -> Option<Vec<(SlotRef, SlotRef)>> {
    let ends: Vec<End> = chords
        .iter()
        .flat_map(|&c| {
            let ch = d.chords()[c];
            [
                End { chord: c, passage: Passage::Over, at: ch.over },
                End { chord: c, passage: Passage::Under, at: ch.under },
            ]
        })
        .collect();
    for pairing in perfect_matchings(6) {
        if let Some(strands) = classify(d, &ends, &pairing) {
            return Some(strands);
        }
    }
    None
}

fn classify(d: &GaussDiagram, ends: &[End], pairing: &[(usize, usize)]) -> Option<Vec<(SlotRef, SlotRef)>> {
    let mut ordered = Vec::with_capacity(3);
    for &(i, j) in pairing {
        let (a, b) = (ends[i], ends[j]);
        if a.chord == b.chord || d.components()[a.at.component].len() < 3 {
            return None;
        }
        if follows(d, a.at, b.at) {
            ordered.push((a, b));
        } else if follows(d, b.at, a.at) {
            ordered.push((b, a));
        } else {
            return None;
        }
    }
    let overs = |s: &(End, End)| {
        usize::from(s.0.passage == Passage::Over) + usize::from(s.1.passage == Passage::Over)
    };
    let top = *ordered.iter().find(|s| overs(s) == 2)?;
    let mid = *ordered.iter().find(|s| overs(s) == 1)?;
    let bot = *ordered.iter().find(|s| overs(s) == 0)?;
    let on = |s: (End, End), c: usize| s.0.chord == c || s.1.chord == c;
    let mid_under = if mid.0.passage == Passage::Under { mid.0 } else { mid.1 };
    let mid_over = if mid.0.passage == Passage::Over { mid.0 } else { mid.1 };
    let tm = mid_under.chord;
    let mb = mid_over.chord;
    if !on(top, tm) || !on(bot, mb) {
        return None;
    }
    let tb = if top.0.chord == tm { top.1.chord } else { top.0.chord };
    if !on(bot, tb) || tb == mb {
        return None;
    }
    let sign = |c: usize| d.chords()[c].sign;
    let pat = R3Pattern {
        top_tm_first: top.0.chord == tm,
        mid_tm_first: mid.0.chord == tm,
        bot_tb_first: bot.0.chord == tb,
        sign_tm: sign(tm),
        sign_tb: sign(tb),
        sign_mb: sign(mb),
    };
    if !r3_patterns().contains(&pat) {
        return None;
    }
    Some(vec![(top.0.at, top.1.at), (mid.0.at, mid.1.at), (bot.0.at, bot.1.at)])
}

fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (k, &other) in tail.iter().enumerate() {
            let mut remaining = tail.to_vec();
            remaining.remove(k);
            acc.push((first, other));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&items, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(code: &str) -> GaussDiagram {
        GaussDiagram::from_code(&code.parse().unwrap())
    }

    #[test]
    fn r1_on_unknot() {
        let u = diagram("");
        let k = u.apply_r1(SlotRef::new(0, 0), Sign::Pos, R1Kind::OverFirst).unwrap();
        assert_eq!(k.to_code().to_string(), "O1+U1+");
        assert_eq!(k.undo_r1(0).unwrap(), u);
    }

    #[test]
    fn r1_roundtrip_inside_code() {
        let d = diagram("O1-O2-U1-O3+U2-O4+U3+U4+");
        let e = d.apply_r1(SlotRef::new(0, 3), Sign::Neg, R1Kind::UnderFirst).unwrap();
        assert_eq!(e.crossing_count(), 5);
        assert_eq!(e.to_code().to_string(), "O1-O2-U1-U5-O5-O3+U2-O4+U3+U4+");
        let back = e.undo_r1(2).unwrap();
        assert!(back.is_isomorphic(&d));
        assert_eq!(back.to_code().to_string(), d.to_code().to_string());
        assert!(matches!(d.undo_r1(0), Err(GaussError::NotApplicable(_))));
    }

    #[test]
    fn r2_roundtrip() {
        let d = diagram("O1-O2-U1-O3+U2-O4+U3+U4+");
        for orientation in [R2Orientation::Parallel, R2Orientation::Antiparallel] {
            let e = d
                .apply_r2(SlotRef::new(0, 1), SlotRef::new(0, 6), Sign::Pos, orientation)
                .unwrap();
            assert_eq!(e.crossing_count(), 6);
            assert_eq!(e.writhe(), d.writhe());
            let (a, b) = (1, 2);
            assert_eq!(e.chords()[a].label, 5);
            assert_eq!(e.chords()[b].label, 6);
            assert_eq!(e.undo_r2(a, b).unwrap().to_code(), d.to_code());
        }
        assert!(matches!(d.undo_r2(0, 1), Err(GaussError::NotApplicable(_))));
    }

    #[test]
    fn r2_on_unknot_same_gap() {
        let u = diagram("");
        let e = u
            .apply_r2(SlotRef::new(0, 0), SlotRef::new(0, 0), Sign::Pos, R2Orientation::Parallel)
            .unwrap();
        assert_eq!(e.to_code().to_string(), "O1+O2-U1+U2-");
        assert_eq!(e.undo_r2(0, 1).unwrap(), u);
    }

    #[test]
    fn pattern_table_is_closed_under_the_move() {
        let pats = r3_patterns();
        assert!(!pats.is_empty());
        for p in pats {
            assert!(pats.contains(&p.moved()));
        }
    }

    fn planted(p: &R3Pattern) -> GaussDiagram {
        // labels: 1 = top/middle, 2 = top/bottom, 3 = middle/bottom
        let tok = |passage, label, sign| Token { passage, label, sign };
        let pair = |first: bool, a: Token, b: Token| if first { [a, b] } else { [b, a] };
        let top = pair(p.top_tm_first, tok(Passage::Over, 1, p.sign_tm), tok(Passage::Over, 2, p.sign_tb));
        let mid = pair(p.mid_tm_first, tok(Passage::Under, 1, p.sign_tm), tok(Passage::Over, 3, p.sign_mb));
        let bot = pair(p.bot_tb_first, tok(Passage::Under, 2, p.sign_tb), tok(Passage::Under, 3, p.sign_mb));
        let comps = vec![top.to_vec(), mid.to_vec(), bot.to_vec()];
        // pad each strand with a kink so no circle has only two slots
        let mut d = GaussDiagram::from_tokens(&comps, vec![super::super::ComponentRole::Regular; 3]);
        for c in 0..3 {
            d = d.apply_r1(SlotRef::new(c, 2), Sign::Pos, R1Kind::OverFirst).unwrap();
        }
        d
    }

    fn chord_ids(d: &GaussDiagram) -> [usize; 3] {
        let id = |l: u32| d.chords().iter().position(|c| c.label == l).unwrap();
        [id(1), id(2), id(3)]
    }

    #[test]
    fn r3_on_every_planar_pattern() {
        for p in r3_patterns() {
            let d = planted(p);
            let e = d.apply_r3(chord_ids(&d)).unwrap();
            assert_eq!(e.crossing_count(), d.crossing_count());
            assert_eq!(e.writhe(), d.writhe());
            assert_eq!(e.component_count(), 3);
            assert_eq!(e, planted(&p.moved()));
            let back = e.apply_r3(chord_ids(&e)).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn r3_rejects_non_planar_pattern() {
        let all_pos = R3Pattern {
            top_tm_first: true,
            mid_tm_first: true,
            bot_tb_first: true,
            sign_tm: Sign::Pos,
            sign_tb: Sign::Pos,
            sign_mb: Sign::Pos,
        };
        let missing: Vec<R3Pattern> = [true, false]
            .iter()
            .flat_map(|&a| [true, false].map(move |b| (a, b)))
            .flat_map(|(a, b)| {
                [true, false].map(move |c| R3Pattern {
                    top_tm_first: a,
                    mid_tm_first: b,
                    bot_tb_first: c,
                    ..all_pos
                })
            })
            .filter(|p| !r3_patterns().contains(p))
            .collect();
        assert!(!missing.is_empty());
        for p in missing {
            let d = planted(&p);
            assert!(matches!(d.apply_r3(chord_ids(&d)), Err(GaussError::NotApplicable(_))));
        }
    }

    #[test]
    fn r3_rejects_non_triangles() {
        let d = diagram("O1-O2-U1-O3+U2-O4+U3+U4+");
        assert!(matches!(d.apply_r3([0, 1, 2]), Err(GaussError::NotApplicable(_))));
        assert!(matches!(d.apply_r3([0, 0, 2]), Err(GaussError::NotApplicable(_))));
        assert_eq!(d.apply_r3([0, 1, 9]), Err(GaussError::BadIndex(9)));
    }
}
