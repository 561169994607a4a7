//! Corpus generators shared by the integration tests.
#![allow(dead_code)]

use ehrhart_forge::families::Poset;

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// One naturally labeled representative of every isomorphism class of
/// posets on `m` elements, as strict relations `(i, j)` with `i < j` on
/// `1..=m`.
pub fn posets_up_to_isomorphism(m: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let perms = permutations(m);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| -> bool {
            i < j && mask >> pairs.iter().position(|&p| p == (i, j)).unwrap() & 1 == 1
        };
        let transitive = (0..m)
            .all(|i| (i + 1..m).all(|j| !rel(i, j) || (j + 1..m).all(|k| !rel(j, k) || rel(i, k))));
        if !transitive {
            continue;
        }
        let related: Vec<(usize, usize)> =
            pairs.iter().copied().filter(|&(i, j)| rel(i, j)).collect();
        let canonical = perms
            .iter()
            .map(|pi| {
                related
                    .iter()
                    .fold(0u64, |acc, &(i, j)| acc | 1 << (pi[i] * m + pi[j]))
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canonical) {
            let one_based: Vec<(usize, usize)> =
                related.iter().map(|&(i, j)| (i + 1, j + 1)).collect();
            out.push(Poset::from_relations(m, &one_based).expect("transitive relation"));
        }
    }
    out
}

/// Posets on `1..=max_m` elements, up to isomorphism.
pub fn small_posets(max_m: usize) -> Vec<Poset> {
    (1..=max_m).flat_map(posets_up_to_isomorphism).collect()
}

#[test]
fn isomorphism_class_counts() {
    let counts: Vec<usize> = (1..=5).map(|m| posets_up_to_isomorphism(m).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 16, 63]);
}
