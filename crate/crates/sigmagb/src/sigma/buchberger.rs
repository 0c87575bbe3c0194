use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

/// Exponent vector over `y_0, …, y_D` plus any extra variables; the last
/// index is the largest variable.
pub type Mono = Vec<u64>;

/// Lexicographic order with higher indices more significant.
pub fn lex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u64], b: &[u64]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `m / d * t`, assuming `d | m`.
fn replace(m: &[u64], d: &[u64], t: &[u64]) -> Mono {
    m.iter().zip(d).zip(t).map(|((a, b), c)| a - b + c).collect()
}

/// Unit-coefficient binomial `lead - tail` with `lead ≻ tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bin {
    pub lead: Mono,
    pub tail: Mono,
}

impl Bin {
    /// Orient `a - b`; `None` when `a == b`.
    pub fn new(a: Mono, b: Mono) -> Option<Bin> {
        match lex_cmp(&a, &b) {
            Ordering::Greater => Some(Bin { lead: a, tail: b }),
            Ordering::Less => Some(Bin { lead: b, tail: a }),
            Ordering::Equal => None,
        }
    }
}

/// Normal form of a monomial: reduce by the first element whose lead divides it.
pub fn nf_mono(mut m: Mono, g: &[Bin]) -> Mono {
    'outer: loop {
        for b in g {
            if divides(&b.lead, &m) {
                m = replace(&m, &b.lead, &b.tail);
                continue 'outer;
            }
        }
        return m;
    }
}

pub fn nf(b: &Bin, g: &[Bin]) -> Option<Bin> {
    Bin::new(nf_mono(b.lead.clone(), g), nf_mono(b.tail.clone(), g))
}

pub fn spoly(a: &Bin, b: &Bin) -> Option<Bin> {
    let l = lcm(&a.lead, &b.lead);
    Bin::new(replace(&l, &a.lead, &a.tail), replace(&l, &b.lead, &b.tail))
}

fn pair_key(g: &[Bin], i: usize, j: usize) -> Reverse<(u64, usize, usize)> {
    let l = lcm(&g[i].lead, &g[j].lead);
    Reverse((l.iter().sum(), j, i))
}

/// Reduced Gröbner basis of the binomial ideal, sorted by leading monomial.
pub fn buchberger(gens: &[Bin]) -> Vec<Bin> {
    let mut g: Vec<Bin> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add = |g: &mut Vec<Bin>, heap: &mut BinaryHeap<_>, pending: &mut HashSet<(usize, usize)>, b: Bin| {
        let j = g.len();
        g.push(b);
        for i in 0..j {
            pending.insert((i, j));
            heap.push(pair_key(g, i, j));
        }
    };
    for b in gens {
        if let Some(r) = nf(b, &g) {
            add(&mut g, &mut heap, &mut pending, r);
        }
    }
    while let Some(Reverse((_, j, i))) = heap.pop() {
        pending.remove(&(i, j));
        if coprime(&g[i].lead, &g[j].lead) {
            continue;
        }
        let l = lcm(&g[i].lead, &g[j].lead);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(&g[k].lead, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if let Some(s) = spoly(&g[i], &g[j]).and_then(|s| nf(&s, &g)) {
            add(&mut g, &mut heap, &mut pending, s);
        }
    }
    reduce_basis(g)
}

/// Minimal, tail-reduced, sorted.
pub fn reduce_basis(g: Vec<Bin>) -> Vec<Bin> {
    let mut g = g;
    g.sort_by(|a, b| lex_cmp(&a.lead, &b.lead));
    g.dedup_by(|a, b| a.lead == b.lead);
    let minimal: Vec<Bin> = g
        .iter()
        .enumerate()
        .filter(|(i, b)| !g.iter().enumerate().any(|(k, h)| k != *i && divides(&h.lead, &b.lead)))
        .map(|(_, b)| b.clone())
        .collect();
    let mut out: Vec<Bin> = minimal
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let others: Vec<Bin> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, h)| h.clone())
                .collect();
            Bin { lead: b.lead.clone(), tail: nf_mono(b.tail.clone(), &others) }
        })
        .collect();
    out.sort_by(|a, b| lex_cmp(&a.lead, &b.lead));
    out
}
