use std::fmt;

/// A planar rooted tree; internal nodes have at least two children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    /// Two-leaf corolla.
    pub fn corolla(arity: usize) -> Self {
        PlanarTree::Node(vec![PlanarTree::Leaf; arity])
    }

    pub fn arity(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(children) => children.iter().map(PlanarTree::arity).sum(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(children) => children.len() == 2 && children.iter().all(PlanarTree::is_binary),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(children) => 1 + children.iter().map(PlanarTree::internal_nodes).sum::<usize>(),
        }
    }

    /// Sum of `arity − 2` over internal nodes.
    pub fn operation_degree(&self) -> i64 {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(children) => children.len() as i64 - 2 + children.iter().map(PlanarTree::operation_degree).sum::<i64>(),
        }
    }

    /// Parses the bracket form, e.g. `((.,.),.)`.
    pub fn parse(text: &str) -> Option<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (tree, rest) = parse_at(&chars)?;
        rest.is_empty().then_some(tree)
    }
}

fn parse_at(s: &[char]) -> Option<(PlanarTree, &[char])> {
    match s.first()? {
        '.' => Some((PlanarTree::Leaf, &s[1..])),
        '(' => {
            let mut children = Vec::new();
            let mut rest = &s[1..];
            loop {
                let (child, after) = parse_at(rest)?;
                children.push(child);
                match after.first()? {
                    ',' => rest = &after[1..],
                    ')' => {
                        rest = &after[1..];
                        break;
                    }
                    _ => return None,
                }
            }
            (children.len() >= 2).then_some((PlanarTree::Node(children), rest))
        }
        _ => None,
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "."),
            PlanarTree::Node(children) => {
                write!(f, "(")?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Ordered compositions of `n` into `parts` positive parts.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if n >= 1 { vec![vec![n]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn forests(sizes: &[usize], enumerate: &dyn Fn(usize) -> Vec<PlanarTree>) -> Vec<Vec<PlanarTree>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let options = enumerate(s);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |t| {
                    let mut f = prefix.clone();
                    f.push(t.clone());
                    f
                })
            })
            .collect();
    }
    out
}

/// Planar binary rooted trees with `n` leaves.
pub fn enumerate_pbt(n: usize) -> Vec<PlanarTree> {
    if n <= 1 {
        return if n == 1 { vec![PlanarTree::Leaf] } else { Vec::new() };
    }
    compositions(n, 2)
        .iter()
        .flat_map(|sizes| forests(sizes, &enumerate_pbt))
        .map(PlanarTree::Node)
        .collect()
}

/// Planar rooted trees with `n` leaves and all internal nodes of arity >= 2.
pub fn enumerate_pt(n: usize) -> Vec<PlanarTree> {
    if n <= 1 {
        return if n == 1 { vec![PlanarTree::Leaf] } else { Vec::new() };
    }
    (2..=n)
        .flat_map(|k| compositions(n, k))
        .flat_map(|sizes| forests(&sizes, &enumerate_pt))
        .map(PlanarTree::Node)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_round_trip() {
        for t in enumerate_pt(4) {
            assert_eq!(PlanarTree::parse(&t.to_string()), Some(t));
        }
        assert_eq!(PlanarTree::parse("((.,.),.)").unwrap().arity(), 3);
        assert!(PlanarTree::parse("(.)").is_none());
        assert!(PlanarTree::parse("(.,.").is_none());
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_pbt(2), vec![PlanarTree::corolla(2)]);
        assert_eq!(enumerate_pt(2), vec![PlanarTree::corolla(2)]);
        assert_eq!(enumerate_pbt(3).iter().map(|t| t.to_string()).collect::<Vec<_>>(), vec!["(.,(.,.))", "((.,.),.)"]);
    }
}
