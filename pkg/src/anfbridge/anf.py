"""Boolean polynomials over GF(2) and the propagating ANF system.

Variables are 0-based integers internally and print 1-based (``x1`` is
variable 0).  A monomial is a sorted tuple of distinct variable indices; the
empty tuple is the constant 1.  A polynomial is an XOR-set of monomials and
stands for the equation ``poly = 0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]
ONE: Monomial = ()


def mono_key(m: Monomial) -> tuple[int, Monomial]:
    """Graded-lex sort key (ascending); reverse it for column order."""
    return (len(m), m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(set(a).union(b)))


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(f"x{v + 1}" for v in m)


class Polynomial:
    """Immutable GF(2) polynomial.

    ``Polynomial([(0, 1), (0,), ()])`` is ``x1*x2 + x1 + 1``.  Repeated
    variables inside a monomial collapse (x*x = x) and repeated monomials
    cancel pairwise.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Iterable[int]] = ()):
        acc: set[Monomial] = set()
        for t in terms:
            m = tuple(sorted(set(t)))
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
        self.terms: frozenset[Monomial] = frozenset(acc)
        self._hash = hash(self.terms)

    @classmethod
    def _wrap(cls, terms: frozenset[Monomial]) -> "Polynomial":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = hash(terms)
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap(frozenset())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._wrap(frozenset((ONE,)))

    @classmethod
    def var(cls, v: int) -> "Polynomial":
        return cls._wrap(frozenset(((v,),)))

    @classmethod
    def monomial(cls, m: Iterable[int]) -> "Polynomial":
        return cls._wrap(frozenset((tuple(sorted(set(m))),)))

    # -- structure -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(mono_str(m) for m in self.sorted_terms())

    def sorted_terms(self) -> list[Monomial]:
        """Terms in graded-lex descending order, constant last."""
        return sorted(self.terms, key=mono_key, reverse=True)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    @property
    def has_constant(self) -> bool:
        return ONE in self.terms

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == _ONE_TERMS

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(m)
        return out

    def contains_var(self, v: int) -> bool:
        return any(v in m for m in self.terms)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._wrap(self.terms ^ other.terms)

    __xor__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = mono_mul(a, b)
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Polynomial._wrap(frozenset(acc))

    __and__ = __mul__

    def mul_monomial(self, m: Monomial) -> "Polynomial":
        if not m:
            return self
        acc: set[Monomial] = set()
        for a in self.terms:
            t = mono_mul(a, m)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        return Polynomial._wrap(frozenset(acc))

    def substitute(self, v: int, replacement: "Polynomial") -> "Polynomial":
        """Replace variable ``v`` by ``replacement`` everywhere."""
        hit = [m for m in self.terms if v in m]
        if not hit:
            return self
        acc = set(self.terms.difference(hit))
        for m in hit:
            rest = tuple(x for x in m if x != v)
            for r in replacement.terms:
                t = mono_mul(rest, r)
                if t in acc:
                    acc.remove(t)
                else:
                    acc.add(t)
        return Polynomial._wrap(frozenset(acc))

    def evaluate(self, assignment: Sequence[int] | Mapping[int, int]) -> int:
        val = 0
        for m in self.terms:
            for x in m:
                if not assignment[x]:
                    break
            else:
                val ^= 1
        return val


_ONE_TERMS = frozenset((ONE,))


def normalize(raw: Iterable[Iterable[int]]) -> Polynomial:
    """Canonicalize a raw multiset of monomials into a :class:`Polynomial`."""
    return Polynomial(raw)


# ---------------------------------------------------------------------------
# Learnt facts


@dataclass(frozen=True)
class LearntFact:
    """A linear equation, or an all-ones monomial fact ``m + 1``."""

    kind: str  # "linear" | "monomial_one"
    poly: Polynomial

    LINEAR = "linear"
    MONOMIAL_ONE = "monomial_one"

    @classmethod
    def from_poly(cls, p: Polynomial) -> "LearntFact":
        kind = fact_kind(p)
        if kind is None:
            raise ValueError(f"{p} is neither linear nor of the form m + 1")
        return cls(kind, p)

    def __str__(self) -> str:
        return str(self.poly)


def fact_kind(p: Polynomial) -> str | None:
    """Classify ``p`` as a fact kind, or None if it is not a fact."""
    if p.is_zero():
        return None
    if p.degree <= 1:
        return LearntFact.LINEAR
    if len(p.terms) == 2 and p.has_constant:
        return LearntFact.MONOMIAL_ONE
    return None


# ---------------------------------------------------------------------------
# System with per-variable state


@dataclass(frozen=True)
class VarState:
    value: int | None
    equiv: tuple[int, bool]  # (variable, negated)
    occurrences: frozenset[int]


class AnfSystem:
    """Polynomial system plus value / equivalence / occurrence bookkeeping.

    Polynomials are addressed by stable integer ids.  Variables carrying a
    value or a non-trivial equivalence never appear in the stored
    polynomials: substitution is eager.
    """

    def __init__(self, num_vars: int = 0, polys: Iterable[Polynomial] = ()):
        self.num_vars = 0
        self._polys: dict[int, Polynomial] = {}
        self._index: dict[Polynomial, int] = {}
        self._next_id = 0
        self._occ: list[set[int]] = []
        self._value: list[int | None] = []
        self._parent: list[int] = []
        self._parity: list[int] = []
        self._members: list[list[int]] = []
        self._queue: deque[int] = deque()
        self.contradiction = False
        self.ensure_vars(num_vars)
        for p in polys:
            self.add_polynomial(p)

    # -- construction --------------------------------------------------
    def ensure_vars(self, n: int) -> None:
        while self.num_vars < n:
            v = self.num_vars
            self._occ.append(set())
            self._value.append(None)
            self._parent.append(v)
            self._parity.append(0)
            self._members.append([v])
            self.num_vars += 1

    def new_var(self) -> int:
        self.ensure_vars(self.num_vars + 1)
        return self.num_vars - 1

    def copy(self) -> "AnfSystem":
        c = AnfSystem.__new__(AnfSystem)
        c.num_vars = self.num_vars
        c._polys = dict(self._polys)
        c._index = dict(self._index)
        c._next_id = self._next_id
        c._occ = [set(s) for s in self._occ]
        c._value = list(self._value)
        c._parent = list(self._parent)
        c._parity = list(self._parity)
        c._members = [list(m) for m in self._members]
        c._queue = deque(self._queue)
        c.contradiction = self.contradiction
        return c

    def add_polynomial(self, p: Polynomial) -> int | None:
        """Reduce ``p`` under the current state and store it.

        Returns the new polynomial id, or None when the reduced polynomial is
        zero or already present.
        """
        vs = p.variables()
        if vs:
            self.ensure_vars(max(vs) + 1)
        p = self.reduce(p)
        if p.is_zero() or p in self._index:
            return None
        pid = self._next_id
        self._next_id += 1
        self._store(pid, p)
        return pid

    def _store(self, pid: int, p: Polynomial) -> None:
        self._polys[pid] = p
        self._index[p] = pid
        for v in p.variables():
            self._occ[v].add(pid)
        if p.is_one():
            self.contradiction = True
        self._queue.append(pid)

    def _drop(self, pid: int) -> Polynomial:
        p = self._polys.pop(pid)
        del self._index[p]
        for v in p.variables():
            self._occ[v].discard(pid)
        return p

    def _replace(self, pid: int, new: Polynomial) -> None:
        self._drop(pid)
        if new.is_zero() or new in self._index:
            return
        self._store(pid, new)

    # -- views ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self._polys)

    def polynomials(self) -> list[Polynomial]:
        return [self._polys[k] for k in sorted(self._polys)]

    def items(self) -> list[tuple[int, Polynomial]]:
        return sorted(self._polys.items())

    def occurrences(self, v: int) -> frozenset[int]:
        return frozenset(self._occ[v])

    def value(self, v: int) -> int | None:
        return self._value[v]

    def find(self, v: int) -> tuple[int, int]:
        """Canonical representative of ``v`` and the parity ``v = rep + parity``."""
        path = []
        while self._parent[v] != v:
            path.append(v)
            v = self._parent[v]
        root = v
        # compress: walk back from the node nearest the root
        acc = 0
        for u in reversed(path):
            acc ^= self._parity[u]
            self._parity[u] = acc
            self._parent[u] = root
        if path:
            return root, self._parity[path[0]]
        return root, 0

    def state(self, v: int) -> VarState:
        root, par = self.find(v)
        return VarState(self._value[v], (root, bool(par)), frozenset(self._occ[v]))

    def is_solved(self) -> bool:
        return not self._polys and not self.contradiction

    def undetermined_count(self) -> int:
        return sum(1 for x in self._value if x is None)

    def assignments(self) -> list[tuple[int, int]]:
        return [(v, x) for v, x in enumerate(self._value) if x is not None]

    def equivalences(self) -> list[tuple[int, int, int]]:
        """(var, representative, parity) for every non-trivially equivalent var."""
        out = []
        for v in range(self.num_vars):
            if self._value[v] is None:
                root, par = self.find(v)
                if root != v:
                    out.append((v, root, par))
        return out

    def state_polynomials(self) -> list[Polynomial]:
        out = []
        for v, x in self.assignments():
            out.append(Polynomial([(v,)] + ([()] if x else [])))
        for v, root, par in self.equivalences():
            out.append(Polynomial([(v,), (root,)] + ([()] if par else [])))
        return out

    def to_polynomials(self) -> list[Polynomial]:
        """Values, equivalences and remaining polynomials, in that order."""
        return self.state_polynomials() + self.polynomials()

    # -- reduction / substitution --------------------------------------
    def reduce(self, p: Polynomial) -> Polynomial:
        """Apply the recorded values and equivalences to ``p``."""
        for v in sorted(p.variables()):
            x = self._value[v]
            if x is not None:
                p = p.substitute(v, Polynomial.one() if x else Polynomial.zero())
                continue
            root, par = self.find(v)
            if root != v:
                rep = Polynomial([(root,), ()]) if par else Polynomial.var(root)
                p = p.substitute(v, rep)
        return p

    def substitute(self, v: int, replacement: Polynomial) -> None:
        """Eliminate ``v`` from every polynomial containing it."""
        if replacement.contains_var(v):
            raise ValueError(f"replacement {replacement} contains x{v + 1}")
        rv = replacement.variables()
        if rv:
            self.ensure_vars(max(rv) + 1)
        for pid in sorted(self._occ[v]):
            self._replace(pid, self._polys[pid].substitute(v, replacement))

    # -- propagation ---------------------------------------------------
    def _assign(self, root: int, c: int, facts: list[LearntFact]) -> None:
        members = self._members[root]
        for m in members:
            _, par = self.find(m)
            self._value[m] = c ^ par
            facts.append(LearntFact(LearntFact.LINEAR, _value_poly(m, c ^ par)))
        for m in members:
            self._parent[m] = m
            self._parity[m] = 0
            self._members[m] = [m]
        self.substitute(root, Polynomial.one() if c else Polynomial.zero())

    def _merge(self, a: int, b: int, c: int, facts: list[LearntFact]) -> None:
        lo, hi = (a, b) if a < b else (b, a)
        self._parent[hi] = lo
        self._parity[hi] = c
        self._members[lo].extend(self._members[hi])
        self._members[hi] = []
        facts.append(LearntFact(LearntFact.LINEAR, Polynomial([(lo,), (hi,)] + ([()] if c else []))))
        self.substitute(hi, Polynomial([(lo,), ()]) if c else Polynomial.var(lo))

    def propagate(self) -> list[LearntFact]:
        """Run ANF propagation to a fixed point; return facts for every assignment."""
        facts: list[LearntFact] = []
        while self._queue and not self.contradiction:
            pid = self._queue.popleft()
            p = self._polys.get(pid)
            if p is None:
                continue
            terms = p.terms
            nonconst = [m for m in terms if m]
            c = 1 if ONE in terms else 0
            if not nonconst:
                # only the constant 1 can be stored
                self.contradiction = True
                break
            if len(nonconst) == 1:
                m = nonconst[0]
                if len(m) == 1:
                    self._drop(pid)
                    self._assign(m[0], c, facts)
                elif c:
                    self._drop(pid)
                    for v in m:
                        if self._value[v] is None:
                            self._assign(self.find(v)[0], 1, facts)
                        elif self._value[v] == 0:
                            self.contradiction = True
                            self._store_one()
                            break
            elif len(nonconst) == 2 and len(nonconst[0]) == 1 and len(nonconst[1]) == 1:
                self._drop(pid)
                self._merge(nonconst[0][0], nonconst[1][0], c, facts)
        if self.contradiction and Polynomial.one() not in self._index:
            self._store_one()
        return facts

    def _store_one(self) -> None:
        one = Polynomial.one()
        if one not in self._index:
            pid = self._next_id
            self._next_id += 1
            self._store(pid, one)

    def add_facts(self, facts: Iterable[LearntFact | Polynomial]) -> list[Polynomial]:
        """Add facts, then re-propagate.  Returns the polynomials that were new."""
        new: list[Polynomial] = []
        for f in facts:
            p = f.poly if isinstance(f, LearntFact) else f
            if self.add_polynomial(p) is not None:
                new.append(p)
        self.propagate()
        return new

    # -- solutions -----------------------------------------------------
    def model(self, free: Mapping[int, int] | None = None) -> list[int]:
        """Complete assignment from the variable states.

        Free class representatives take their value from ``free`` (default 0).
        Only meaningful once the remaining polynomials are satisfied.
        """
        free = free or {}
        out = [0] * self.num_vars
        for v in range(self.num_vars):
            x = self._value[v]
            if x is not None:
                out[v] = x
            else:
                root, par = self.find(v)
                out[v] = free.get(root, 0) ^ par
        return out

    def check_constraints(self) -> bool:
        """Occurrence lists agree with the stored polynomials."""
        for v in range(self.num_vars):
            expect = {pid for pid, p in self._polys.items() if p.contains_var(v)}
            if expect != self._occ[v]:
                return False
        return True


def _value_poly(v: int, c: int) -> Polynomial:
    return Polynomial([(v,), ()]) if c else Polynomial.var(v)


def propagate(system: AnfSystem) -> tuple[AnfSystem, list[LearntFact]]:
    facts = system.propagate()
    return system, facts


def substitute(system: AnfSystem, v: int, replacement: Polynomial) -> AnfSystem:
    system.substitute(v, replacement)
    return system


def add_facts(system: AnfSystem, facts: Iterable[LearntFact | Polynomial]) -> AnfSystem:
    system.add_facts(facts)
    return system
