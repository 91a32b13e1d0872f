"""Minimal DFAs and state complexity of uniform-length finite languages."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from gdebruijn.words import CircularWord, format_word, ilog, is_generalized_de_bruijn, parse_word

Word = tuple[int, ...]


class TheoremViolation(AssertionError):
    """A computed language contradicts one of the proven bounds."""


@dataclass(frozen=True)
class UniformLanguage:
    """A nonempty set of words that all have the same length N over k letters."""

    words: frozenset[Word]
    k: int = 2

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.k}")
        words = frozenset(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise ValueError("language must contain at least one word")
        lengths = {len(w) for w in words}
        if len(lengths) != 1:
            raise ValueError(f"words of mixed lengths {sorted(lengths)}")
        for w in words:
            if any(not 0 <= a < self.k for a in w):
                raise ValueError(f"word {w} uses a letter outside alphabet of size {self.k}")

    @classmethod
    def from_strings(cls, texts: Iterable[str], k: int | None = None) -> UniformLanguage:
        parsed = [parse_word(t, k) for t in texts]
        if k is None:
            k = max(w.k for w in parsed) if parsed else 2
        return cls(frozenset(w.letters for w in parsed), k)

    @classmethod
    def conjugates_of(cls, w: CircularWord) -> UniformLanguage:
        doubled = w.letters + w.letters
        n = len(w)
        return cls(frozenset(doubled[j : j + n] for j in range(n)), w.k)

    @property
    def N(self) -> int:
        return len(next(iter(self.words)))

    @property
    def m(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: Sequence[int]) -> bool:
        return tuple(word) in self.words

    def sorted_strings(self) -> list[str]:
        return [format_word(w, self.k) for w in sorted(self.words)]


@dataclass(frozen=True)
class Dfa:
    """Complete DFA; states are 0..num_states-1 and ``delta[q][a]`` is total."""

    k: int
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]
    dead: int | None = None
    access: tuple[Word, ...] | None = None  # shortest word reaching each state

    def __post_init__(self) -> None:
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != self.k or any(not 0 <= q < n for q in row):
                raise ValueError("transition function is not total")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def run(self, word: Sequence[int]) -> int:
        q = self.initial
        for a in word:
            q = self.delta[q][a]
        return q

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(word) in self.accepting


def minimal_dfa(lang: UniformLanguage) -> Dfa:
    """Build the trie, merge nodes with equal residuals bottom-up, add the dead state.

    All words share one length, so a node's residual is determined by the
    tuple of residual ids of its children.
    """
    k = lang.k
    children: list[list[int]] = [[-1] * k]
    for w in sorted(lang.words):
        node = 0
        for a in w:
            nxt = children[node][a]
            if nxt < 0:
                nxt = len(children)
                children.append([-1] * k)
                children[node][a] = nxt
            node = nxt

    # children always have larger indices than their parent
    dead_id = 0
    residual_id: dict[tuple[int, ...], int] = {}
    node_state = [0] * len(children)
    for node in range(len(children) - 1, -1, -1):
        signature = tuple(dead_id if c < 0 else node_state[c] for c in children[node])
        state = residual_id.get(signature)
        if state is None:
            state = residual_id[signature] = len(residual_id) + 1
        node_state[node] = state
    accept_sig = (dead_id,) * k

    raw = {state: sig for sig, state in residual_id.items()}
    raw[dead_id] = (dead_id,) * k
    start = node_state[0]

    # breadth-first renumbering; letters in increasing order
    order = {start: 0}
    access: list[Word] = [()]
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for a in range(k):
            p = raw[q][a]
            if p not in order:
                order[p] = len(order)
                access.append(access[order[q]] + (a,))
                queue.append(p)
    delta = [()] * len(order)
    for q, idx in order.items():
        delta[idx] = tuple(order[p] for p in raw[q])
    return Dfa(
        k=k,
        delta=tuple(delta),
        initial=0,
        accepting=frozenset({order[residual_id[accept_sig]]}),
        dead=order[dead_id],
        access=tuple(access),
    )


def state_complexity(lang: UniformLanguage) -> int:
    return minimal_dfa(lang).num_states


def quotient_count(lang: UniformLanguage) -> int:
    """Number of distinct left quotients p^-1 L, counted directly.

    Any p that is not a prefix of a word in L has the empty quotient, which is
    always counted, so only prefixes of L are visited.
    """
    n = lang.N
    quotients: set[frozenset[Word]] = {frozenset()}
    prefixes = {w[:i] for w in lang.words for i in range(n + 1)}
    for p in prefixes:
        cut = len(p)
        quotients.add(frozenset(w[cut:] for w in lang.words if w[:cut] == p))
    return len(quotients)


def _check_index(lang: UniformLanguage, i: int) -> None:
    if not 0 <= i <= lang.N:
        raise ValueError(f"length {i} outside 0..{lang.N}")


def prefix_count(lang: UniformLanguage, i: int) -> int:
    _check_index(lang, i)
    return len({w[:i] for w in lang.words})


def suffix_count(lang: UniformLanguage, i: int) -> int:
    _check_index(lang, i)
    return len({w[len(w) - i :] for w in lang.words})


def _v(k: int, r: int) -> int:
    return (k ** (r + 1) - 1) // (k - 1)


def sc_bound(m: int, N: int, k: int) -> int:
    """2v + m(N - 2r - 1) + 1 with r = floor(log_k m); valid as a bound when N >= 3r + 1."""
    if m < 1 or N < 1:
        raise ValueError("m and N must be >= 1")
    r = ilog(m, k)
    return 2 * _v(k, r) + m * (N - 2 * r - 1) + 1


def conjugate_sc_bound(N: int, k: int) -> int:
    """Upper bound on sc(C(w)) for every word w of length N."""
    return sc_bound(N, N, k)


def meets_max_conditions(lang: UniformLanguage) -> tuple[bool, bool]:
    """(sigma_r = pi_r = k^r, sigma_{r+1} = pi_{r+1} = m) with r = floor(log_k m)."""
    r = ilog(lang.m, lang.k)
    return _conditions(lang, r, lang.m)


def _conditions(lang: UniformLanguage, r: int, target: int) -> tuple[bool, bool]:
    if r + 1 > lang.N:
        raise ValueError(f"r + 1 = {r + 1} exceeds word length {lang.N}")
    k = lang.k
    a = suffix_count(lang, r) == prefix_count(lang, r) == k**r
    b = suffix_count(lang, r + 1) == prefix_count(lang, r + 1) == target
    return a, b


@dataclass(frozen=True)
class BoundReport:
    kind: str
    m: int
    N: int
    k: int
    r: int
    v: int
    bound: int
    sc: int
    d: int | None
    refined_bound: int | None
    condition_a: bool | None
    condition_b: bool | None
    bound_applies: bool
    equality: bool
    generalized_de_bruijn: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> BoundReport:
        return cls(**data)


def verify_theorem1(lang: UniformLanguage, sc: int | None = None) -> BoundReport:
    """Compare sc(L) with the general bound and its refinement; raise on contradiction."""
    k, n, m = lang.k, lang.N, lang.m
    r = ilog(m, k)
    v = _v(k, r)
    bound = sc_bound(m, n, k)
    if sc is None:
        sc = state_complexity(lang)
    if n - r - 1 >= 0:
        d = m - prefix_count(lang, n - r - 1)
        refined = bound - d * (n - 3 * r - 1)
    else:
        d = refined = None
    if r + 1 <= n:
        cond_a, cond_b = _conditions(lang, r, m)
    else:
        cond_a = cond_b = None
    applies = n >= 3 * r + 1

    if applies:
        if not sc <= refined <= bound:
            raise TheoremViolation(f"sc={sc}, refined={refined}, bound={bound} for {sorted(lang.words)}")
        if n > 3 * r + 1 and (sc == bound) != (cond_a and cond_b):
            raise TheoremViolation(f"equality/conditions mismatch for {sorted(lang.words)}")
    return BoundReport(
        kind="uniform",
        m=m,
        N=n,
        k=k,
        r=r,
        v=v,
        bound=bound,
        sc=sc,
        d=d,
        refined_bound=refined,
        condition_a=cond_a,
        condition_b=cond_b,
        bound_applies=applies,
        equality=sc == bound,
    )


def verify_conjugate_theorem(w: CircularWord) -> BoundReport:
    """sc(C(w)) against the conjugate bound; equality must match the de Bruijn predicate."""
    lang = UniformLanguage.conjugates_of(w)
    k, n = w.k, len(w)
    r = ilog(n, k)
    bound = conjugate_sc_bound(n, k)
    sc = state_complexity(lang)
    gdb = is_generalized_de_bruijn(w)
    if sc > bound:
        raise TheoremViolation(f"sc(C({w}))={sc} exceeds {bound}")
    if (sc == bound) != gdb:
        raise TheoremViolation(f"sc(C({w}))={sc}, bound={bound}, generalized de Bruijn={gdb}")
    cond_a, cond_b = _conditions(lang, r, n)
    d = lang.m - prefix_count(lang, n - r - 1)
    return BoundReport(
        kind="conjugates",
        m=lang.m,
        N=n,
        k=k,
        r=r,
        v=_v(k, r),
        bound=bound,
        sc=sc,
        d=d,
        refined_bound=bound - d * (n - 3 * r - 1),
        condition_a=cond_a,
        condition_b=cond_b,
        bound_applies=True,
        equality=sc == bound,
        generalized_de_bruijn=gdb,
    )


def dfa_to_dot(dfa: Dfa, show_dead: bool = True, name: str = "dfa") -> str:
    """DOT source; states are named by their shortest access word."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    hidden = set() if show_dead or dfa.dead is None else {dfa.dead}
    for q in range(dfa.num_states):
        if q in hidden:
            continue
        if q == dfa.dead:
            label = "∅"
        elif dfa.access is not None:
            p = format_word(dfa.access[q], dfa.k)
            label = f"{p}⁻¹L" if p else "L"
        else:
            label = str(q)
        shape = "doublecircle" if q in dfa.accepting else "circle"
        lines.append(f'  q{q} [shape={shape}, label="{label}"];')
    lines.append(f"  init -> q{dfa.initial};")
    for q in range(dfa.num_states):
        if q in hidden:
            continue
        grouped: dict[int, list[int]] = {}
        for a, p in enumerate(dfa.delta[q]):
            if p not in hidden:
                grouped.setdefault(p, []).append(a)
        for p, letters in grouped.items():
            label = ",".join(str(a) for a in letters)
            lines.append(f'  q{q} -> q{p} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
