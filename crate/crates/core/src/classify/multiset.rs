use crate::form::{BlockKind, CanonicalBlock, FormMatrix};
use crate::scalar::Scalar;

/// Parts in non-increasing order.
pub type Partition = Vec<usize>;

/// All partitions of `m`, descending lexicographic.
pub fn partitions(m: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Block kinds usable at a given size (A1 excluded: it would split off), in
/// the order the tables list them.
pub fn kinds_for_size(size: usize) -> Vec<BlockKind> {
    use BlockKind::*;
    match size {
        0 => vec![],
        1 => vec![C],
        2 => vec![F, E, B],
        s if s % 2 == 1 => vec![A, C],
        s => [B, D, E, F].into_iter().filter(|k| k.allows_size(s)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMultiset {
    /// Blocks in layout order: sizes descending, kinds in table order.
    pub blocks: Vec<CanonicalBlock>,
    /// The direct sum is skew-symmetric, so the algebra is Lie.
    pub lie_only: bool,
}

impl BlockMultiset {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(CanonicalBlock::size).sum()
    }

    /// `A3 + B2(c) + C1`.
    pub fn name(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn combinations_with_replacement<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut tail in combinations_with_replacement(&items[i..], k - 1) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

fn is_skew(blocks: &[CanonicalBlock]) -> bool {
    let m = FormMatrix::direct_sum(blocks);
    m.matrix().add(&m.matrix().transpose()).is_zero()
}

/// Every multiset of non-A1 blocks of total size `m`. B parameters are the
/// symbols `c` (one B block) or `c1, c2, …` (several, larger blocks first).
pub fn block_multisets(m: usize) -> Vec<BlockMultiset> {
    let mut out = Vec::new();
    for p in partitions(m) {
        // (size, multiplicity) groups, sizes descending
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &s in &p {
            match groups.last_mut() {
                Some((size, count)) if *size == s => *count += 1,
                _ => groups.push((s, 1)),
            }
        }
        let mut choices: Vec<Vec<BlockKind>> = vec![Vec::new()];
        for &(size, count) in &groups {
            let opts = combinations_with_replacement(&kinds_for_size(size), count);
            choices = choices
                .into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.extend(o.iter().copied());
                        v
                    })
                })
                .collect();
        }
        for kinds in choices {
            let n_b = kinds.iter().filter(|&&k| k == BlockKind::B).count();
            let mut next_b = 0;
            let blocks: Vec<CanonicalBlock> = kinds
                .iter()
                .zip(&p)
                .map(|(&kind, &size)| {
                    let param = (kind == BlockKind::B).then(|| {
                        next_b += 1;
                        Scalar::param(&if n_b == 1 {
                            "c".to_string()
                        } else {
                            format!("c{next_b}")
                        })
                    });
                    CanonicalBlock::new(kind, size, param).expect("sizes respect parity")
                })
                .collect();
            let lie_only = is_skew(&blocks);
            out.push(BlockMultiset { blocks, lie_only });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_partitions(n: usize, max: usize) -> usize {
        // independent recurrence p(n, max)
        if n == 0 {
            return 1;
        }
        (1..=n.min(max)).map(|k| count_partitions(n - k, k)).sum()
    }

    #[test]
    fn partition_examples() {
        let four: Vec<String> = partitions(4)
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+"))
            .collect();
        assert_eq!(four, ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
        assert_eq!(partitions(1), vec![vec![1]]);
        for n in 1..=10 {
            assert_eq!(partitions(n).len(), count_partitions(n, n));
            assert!(partitions(n).iter().all(|p| p.iter().sum::<usize>() == n));
        }
        assert_eq!(partitions(7).len(), 15);
    }

    #[test]
    fn size_three_multisets() {
        let names: Vec<String> = block_multisets(3).iter().map(|m| m.name()).collect();
        assert_eq!(names, ["A3", "C3", "F2 + C1", "E2 + C1", "B2(c) + C1", "C1 + C1 + C1"]);
    }

    #[test]
    fn skew_multisets_are_marked() {
        let lie: Vec<String> = (1..=7)
            .flat_map(block_multisets)
            .filter(|m| m.lie_only)
            .map(|m| m.name())
            .collect();
        // F6 is not skew, so it stays
        assert_eq!(lie, ["F2", "F2 + F2", "F2 + F2 + F2"]);
    }

    #[test]
    fn size_four_kinds() {
        assert_eq!(kinds_for_size(4), [BlockKind::B, BlockKind::D, BlockKind::E]);
        assert_eq!(kinds_for_size(6), [BlockKind::B, BlockKind::E, BlockKind::F]);
    }

    #[test]
    fn parameter_names() {
        let bbb = block_multisets(6)
            .into_iter()
            .find(|m| m.blocks.iter().all(|b| b.kind() == BlockKind::B && b.size() == 2))
            .unwrap();
        assert_eq!(bbb.name(), "B2(c1) + B2(c2) + B2(c3)");
        let b4b2 = block_multisets(6)
            .into_iter()
            .find(|m| m.name().starts_with("B4") && m.name().contains("B2"))
            .unwrap();
        assert_eq!(b4b2.name(), "B4(c1) + B2(c2)");
    }
}
