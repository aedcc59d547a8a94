#!/usr/bin/env python3
"""Independent reference computations for values frozen into the C++ tests.

Everything here is deliberately written from first principles (plain
fractions, brute force enumeration, a tiny textbook simplex) so the main
library can be checked against an implementation that shares no code with it.
Run: python3 tools/oracle_values.py
"""

from fractions import Fraction
from itertools import combinations, product


# ---------------------------------------------------------------- exact LP

def simplex_max(c, rows, rhs):
    """max c.x  s.t. rows[i].x <= rhs[i], x >= 0.  All rhs >= 0.

    Dense tableau, Bland's rule.  Returns (value, x).
    """
    m, n = len(rows), len(c)
    # tableau: m rows of [A | I | b], objective row last
    t = [[Fraction(v) for v in rows[i]] +
         [Fraction(int(i == j)) for j in range(m)] +
         [Fraction(rhs[i])] for i in range(m)]
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    while True:
        piv_col = next((j for j in range(n + m) if obj[j] < 0), None)
        if piv_col is None:
            break
        piv_row, best = None, None
        for i in range(m):
            if t[i][piv_col] > 0:
                ratio = t[i][-1] / t[i][piv_col]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[piv_row]):
                    piv_row, best = i, ratio
        if piv_row is None:
            raise RuntimeError("unbounded")
        pv = t[piv_row][piv_col]
        t[piv_row] = [v / pv for v in t[piv_row]]
        for i in range(m):
            if i != piv_row and t[i][piv_col] != 0:
                f = t[i][piv_col]
                t[i] = [a - f * b for a, b in zip(t[i], t[piv_row])]
        if obj[piv_col] != 0:
            f = obj[piv_col]
            obj = [a - f * b for a, b in zip(obj, t[piv_row])]
        basis[piv_row] = piv_col
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = t[i][-1]
    return sum(ci * xi for ci, xi in zip(c, x)), x


def hull(points, phi, target, constraint_sets=None):
    """sup { mu(target) : mu measure on points, mu(B) <= phi(B) }."""
    if constraint_sets is None:
        constraint_sets = []
        pts = list(points)
        for r in range(1, len(pts) + 1):
            constraint_sets += [(frozenset(s), phi(frozenset(s)))
                                for s in combinations(pts, r)]
    idx = {p: i for i, p in enumerate(points)}
    rows = [[1 if p in B else 0 for p in points] for B, _ in constraint_sets]
    rhs = [b for _, b in constraint_sets]
    c = [1 if p in target else 0 for p in points]
    val, x = simplex_max(c, rows, rhs)
    return val, x


# ------------------------------------------------- corrupted ceil(|B|/2)

pts6 = list(range(6))
val, x = hull(pts6, lambda B: -(-len(B) // 2), {0, 1, 2})
print("corrupted ceil(|B|/2) hull on {0..5}, A={0,1,2}:", val,
      " gap:", Fraction(2) - val)

# ------------------------------------------------------------- mazur n=2

n = 2
ground = list(product(range(2 * n), repeat=n))     # g: n -> 2n, 16 points


def mazur_phi(n, B):
    """min |F|, F subset of 2n, with no g in B having F subset of range(g)."""
    B = list(B)
    for size in range(0, 2 * n + 1):
        for F in combinations(range(2 * n), size):
            if not any(set(F) <= set(g) for g in B):
                return size
    raise AssertionError


assert mazur_phi(2, ground) == 3
reduced = []
for size in range(1, 2 * n + 1):
    for F in combinations(range(2 * n), size):
        U = frozenset(g for g in ground if not set(F) <= set(g))
        reduced.append((U, size))
val, x = hull(ground, None, set(ground), constraint_sets=reduced)
print("mazur phi_2 hull (reduced family), A=ground:", val, " gap:", 3 - val)

# exhaustive family cross-check (16 points -> 65535 sets) is too slow in
# python; instead verify the reduced optimum is exhaustively feasible:
mu = {p: v for p, v in zip(ground, x)}
worst = min(mazur_phi(2, B) - sum(mu[p] for p in B)
            for r in range(1, 6) for B in combinations(ground, r))
print("  reduced witness vs all |B|<=5 exhaustive constraints, min slack:", worst)

# ------------------------------------------------- mazur partition sizes


def min_missing(g, n):
    r = set(g)
    return next(i for i in range(2 * n + 1) if i not in r)


for n_ in range(1, 5):
    gs = list(product(range(2 * n_), repeat=n_))
    sizes = [0] * (n_ + 1)
    for g in gs:
        sizes[min_missing(g, n_)] += 1
    assert sum(sizes) == len(gs)
    print(f"mazur partition sizes n={n_}:", sizes)

# ------------------------------------------------------------ solecki l=2


def clopen_half_members(l):
    cells = list(range(2 ** l))
    return [frozenset(s) for s in combinations(cells, 2 ** (l - 1))]


def solecki_cover(l, A):
    cells = list(range(2 ** l))
    for size in range(0, 2 ** l + 1):
        for F in combinations(cells, size):
            if all(any(x in C for x in F) for C in A):
                return size
    raise AssertionError


m2 = clopen_half_members(2)
print("solecki l=2: members", len(m2), " cover(all) =", solecki_cover(2, m2))
m3 = clopen_half_members(3)
print("solecki l=3: members", len(m3), " cover(all) =", solecki_cover(3, m3))


def components(C, l):
    """maximal dyadic cylinders inside the cell-set C (cells = length-l words)."""
    words = {tuple(map(int, format(c, f"0{l}b"))) for c in C}
    lvl = {l: words}
    for ln in range(l - 1, -1, -1):
        lvl[ln] = {w[:-1] for w in lvl[ln + 1]
                   if w[:-1] + (0,) in lvl[ln + 1] and w[:-1] + (1,) in lvl[ln + 1]}
    comp = []
    for ln in range(0, l + 1):
        for w in sorted(lvl[ln]):
            if ln == 0 or w[:-1] not in lvl[ln - 1]:
                # w is in C fully but its parent is not
                if all(w != c[:len(w)] or len(c) < len(w) for c in comp):
                    comp.append(w)
    comp = [w for w in comp if not any(w != v and w[:len(v)] == v for v in comp)]
    return sorted(comp)


def f_map(C, l):
    comp = components(C, l)
    # least under: exists m < min lengths with equal prefix and s[m] < t[m]
    def less(s, t):
        for m in range(min(len(s), len(t))):
            if s[m] != t[m]:
                return s[m] < t[m]
        return False
    least = comp[0]
    for w in comp[1:]:
        if less(w, least):
            least = w
    return least, tuple(least[1:])


print("solecki_to_ib table l=2:")
for C in m2:
    least, img = f_map(C, 2)
    print("  cells", sorted(C), " component-least", least, " f ->", img)

stats = {}
for C in m3:
    least, img = f_map(C, 3)
    stats.setdefault(least[0], 0)
    stats[least[0]] += 1
print("solecki_to_ib l=3: least-word first symbol histogram:", stats)

# -------------------------------------------------- MazurSum enumeration


def cantor(i, j):
    return (i + j) * (i + j + 1) // 2 + j


codes = []
for n_ in range(1, 7):
    for r in range((2 * n_) ** n_):
        c = cantor(n_, r)
        if c < 200:
            codes.append((c, n_, r))
codes.sort()
print("MazurSum first 10 codes:", [c for c, _, _ in codes[:10]])
print("  decoded (part, local):", [(n_, r) for _, n_, r in codes[:10]])

# ---------------------------------------------- harmonic divergence point

H, N = Fraction(0), 0
while H <= 5:
    H += Fraction(1, N + 1)
    N += 1
print("first N with H_N > 5:", N, " (H_N =", H, ")")
print("phi_summable({0,1,2}) =", Fraction(1) + Fraction(1, 2) + Fraction(1, 3))

# ------------------------------------------------------- ib interval tree

# growth c(n) = n+2, uniform atoms (n+1)/(n+2); child length = parent/(n+2)
lvl1 = [Fraction(1, 2), Fraction(1, 2)]
lvl2_first = [Fraction(1, 6)] * 3
M = (Fraction(0), Fraction(1, 4))
ratio0 = min(M[1], Fraction(1, 2)) / Fraction(1, 2)
print("violation d=2 M=[0,1/4) k=1: alpha 1/4, best ratio", ratio0,
      " bound", 2 * ratio0)
hits = [i for i in range(3) if min(M[1], Fraction(i + 1, 6)) > Fraction(i, 6)]
print("  hit children of best node:", hits, " sum mu =", len(hits) * Fraction(2, 3))

# --------------------------------------------------------- antichain spot


def code_to_word(c):
    w = []
    while c:
        c -= 1
        w.append(c % 2)
        c //= 2
    return tuple(reversed(w))


def brute_antichain(words):
    best = 0
    ws = list(words)
    for mask in range(1 << len(ws)):
        sel = [ws[i] for i in range(len(ws)) if mask >> i & 1]
        ok = all(s[:len(t)] != t and t[:len(s)] != s
                 for s, t in combinations(sel, 2))
        if ok:
            best = max(best, len(sel))
    return best


for codes_ in [(0, 1, 4), (1, 2), (0, 1, 3), (3, 4, 5, 6)]:
    ws = [code_to_word(c) for c in codes_]
    maximal = sum(1 for s in ws if not any(s != t and t[:len(s)] == s for t in ws))
    assert maximal == brute_antichain(ws), (codes_, maximal)
    print("antichain", codes_, "->", maximal, "words", ws)
