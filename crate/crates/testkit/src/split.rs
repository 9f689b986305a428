use icq_core::trajectory::Contextual;
use icq_core::TrajectoryStore;

/// Violations of the split guarantee: a piece with `kprime` consecutive sampling times
/// lacking an original sample, or an object whose records changed.
pub fn check_split(original: &TrajectoryStore, split: &TrajectoryStore, kprime: u32) -> Vec<String> {
    let mut out = Vec::new();
    if original.object_ids() != split.object_ids() {
        out.push("object sets differ".to_string());
        return out;
    }
    let grid = split.grid();
    for &o in split.object_ids() {
        let before: Vec<_> = original.records(o).expect("listed").copied().collect();
        let after: Vec<_> = split.records(o).expect("listed").copied().collect();
        if before != after {
            out.push(format!("{o}: records differ after splitting"));
        }
        for piece in split.pieces(o).expect("listed") {
            let Some((a, b)) = grid.span(piece.start(), piece.end()) else {
                continue;
            };
            let mut gap = 0u32;
            for w in a.0..=b.0 {
                let t = grid.time(icq_core::GridTime(w));
                gap = match piece.contextual(t) {
                    Contextual::Original(_) => 0,
                    Contextual::Between { .. } => gap + 1,
                };
                if gap >= kprime {
                    out.push(format!("{o} piece {}: {gap} unseen sampling times ending at {t}", piece.piece));
                    break;
                }
            }
        }
    }
    out
}
