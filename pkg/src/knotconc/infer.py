"""Fixed-point inference of theta^(q) bounds over a fact ledger.

Each queried knot expression gets an interval [lower, upper] of possible
theta^(q) values, tightened by a monotone rule set until nothing changes:

  R1  signature / genus:     max(0, -sigma^(q)/(2(q-1))) <= theta <= g4
  R2  subadditivity:         theta(A + B) <= theta(A) + theta(B), plus the
                             concordance rearrangements it implies
                             (theta(A + B) >= theta(A) - theta(-B), ...)
  R3  crossing change:       0 <= theta(K+) - theta(K-) <= 1 along ledger
                             relations, their mirrors, and their connected
                             sums with a common summand
  R4  closed form:           quasi-alternating (q = 2) or L-space branched
                             cover gives theta = max(0, -sigma^(q)/(2(q-1)))
  R5  delta jump:            delta^(q) < -sigma^(q)/2 and sigma^(q) <= 0
                             force theta >= 1/(q-1) - sigma^(q)/(2(q-1))
  R6  unknotting:            theta(K) + theta(-K) <= u(K)
  R7  HF+ degree:            theta >= ell^(q)(-K)/(q-1) - 3 sigma^(q)/(4(q-1))
  R8  exact sequence:        a full delta sequence for the mirror pins theta
                             exactly through the j-scan

plus the concordance facts that slice summands and K + (-K) pairs do not
change theta.  Bounds live in the lattice (1/(q-1))Z and are clamped into
[0, g4] after every application, so iteration terminates and the result is
independent of rule order (the rule set is a monotone closure).

Everything here consumes the ledger; nothing mutates it, so any number of
queries may run concurrently.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclotomic import is_prime
from .knots import KnotExpression, SignedAtom, from_signed_atoms, signed_atoms
from .ledger import Ledger
from .sequences import (
    DeltaSequence,
    ell_lower_bound,
    theta_from_mirror_delta,
)

_MAX_NODES = 4000
_MAX_PASSES = 1000


class LedgerInconsistentError(ValueError):
    """Rules forced an empty interval; the ledger contradicts itself."""


class EngineError(RuntimeError):
    pass


@dataclass
class BoundInterval:
    """Rational bounds on theta^(q), denominators dividing q-1.

    ``upper`` is None when no finite upper bound is known.  ``justification``
    lists the rule applications that produced the bounds; ``provenance`` maps
    each ledger fact consulted to its citation.
    """

    lower: Fraction
    upper: Optional[Fraction]
    justification: list[str] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError(f"interval [{self.lower}, {self.upper}] is not a point")
        return self.lower

    def __repr__(self) -> str:
        if self.exact:
            return f"{self.lower}"
        hi = "inf" if self.upper is None else str(self.upper)
        return f"[{self.lower}, {hi}]"


Key = tuple[SignedAtom, ...]


def _mirror_key(key: Key) -> Key:
    return tuple(sorted((name, not m) for name, m in key))


def _key_str(key: Key) -> str:
    if not key:
        return "unknot"
    return " + ".join(f"-{n}" if m else n for n, m in key)


class _Node:
    __slots__ = ("key", "lower", "upper", "why_lower", "why_upper")

    def __init__(self, key: Key):
        self.key = key
        self.lower = Fraction(0)
        self.upper: Optional[Fraction] = None
        self.why_lower = "theta is non-negative"
        self.why_upper = ""


class InferenceEngine:
    def __init__(self, ledger: Ledger, q: int, rule_seed: Optional[int] = None):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.ledger = ledger
        self.q = q
        self.rule_seed = rule_seed
        self.nodes: dict[Key, _Node] = {}
        self.relations: set[tuple[Key, Key]] = set()
        self.trace: list[str] = []
        self.provenance: dict[str, str] = {}
        self._changed = False

    # -- concordance reduction ---------------------------------------------

    def reduce(self, expr: KnotExpression) -> Key:
        """Drop slice summands and cancel K + (-K) pairs; theta only sees
        the concordance class."""
        counts: Counter = Counter()
        for name, mirrored in signed_atoms(expr):
            if self.ledger.atom_value(name, "slice", mirror=mirrored) is True:
                self._note_fact(name, "slice")
                continue
            counts[(name, mirrored)] += 1
        for name in {n for n, _ in counts}:
            k = min(counts[(name, False)], counts[(name, True)])
            if k:
                counts[(name, False)] -= k
                counts[(name, True)] -= k
        return tuple(sorted(counts.elements()))

    # -- bookkeeping ---------------------------------------------------------

    def _note_fact(self, name: str, kind: str, mirror: bool = False,
                   q: Optional[int] = None) -> None:
        for f in self.ledger.facts_used(name, kind, mirror=mirror, q=q):
            self.provenance[f.describe()] = f.provenance

    def _note_expr_facts(self, key: Key, kind: str, q: Optional[int] = None) -> None:
        for name, mirrored in set(key):
            self._note_fact(name, kind, mirror=mirrored, q=q)

    def node(self, key: Key) -> _Node:
        n = self.nodes.get(key)
        if n is None:
            if len(self.nodes) >= _MAX_NODES:
                raise EngineError("inference universe grew unreasonably large")
            n = _Node(key)
            self.nodes[key] = n
            self._changed = True
        return n

    def _snap_lower(self, v: Fraction) -> Fraction:
        return Fraction(math.ceil(v * (self.q - 1)), self.q - 1)

    def _snap_upper(self, v: Fraction) -> Fraction:
        return Fraction(math.floor(v * (self.q - 1)), self.q - 1)

    def set_lower(self, key: Key, value: Fraction, why: str) -> None:
        v = max(Fraction(0), self._snap_lower(Fraction(value)))
        n = self.node(key)
        if v > n.lower:
            n.lower = v
            n.why_lower = why
            self.trace.append(f"theta({_key_str(key)}) >= {v}  [{why}]")
            self._changed = True
            if n.upper is not None and n.lower > n.upper:
                raise LedgerInconsistentError(
                    f"ledger inconsistent at {_key_str(key)}: "
                    f"lower bound {n.lower} ({n.why_lower}) exceeds "
                    f"upper bound {n.upper} ({n.why_upper})"
                )

    def set_upper(self, key: Key, value: Fraction, why: str) -> None:
        v = max(Fraction(0), self._snap_upper(Fraction(value)))
        n = self.node(key)
        if n.upper is None or v < n.upper:
            n.upper = v
            n.why_upper = why
            self.trace.append(f"theta({_key_str(key)}) <= {v}  [{why}]")
            self._changed = True
            if n.lower > n.upper:
                raise LedgerInconsistentError(
                    f"ledger inconsistent at {_key_str(key)}: "
                    f"lower bound {n.lower} ({n.why_lower}) exceeds "
                    f"upper bound {n.upper} ({n.why_upper})"
                )

    # -- ledger-derived quantities per node ----------------------------------

    def _sigma_q(self, key: Key) -> Optional[int]:
        if not key:
            return 0
        v = self.ledger.sigma_q_expr(from_signed_atoms(key), self.q)
        if v is not None:
            self._note_expr_facts(key, "sigma_q", q=self.q)
            if self.q == 2:
                self._note_expr_facts(key, "sigma")
        return v

    def _delta_hom(self, key: Key) -> Optional[int]:
        """Additive delta invariant: Manolescu-Owens for q = 2, the branched
        q-cover d-invariant for odd q."""
        kind = "delta_MO" if self.q == 2 else "delta_q_jabuka"
        qq = None if self.q == 2 else self.q
        if not key:
            return 0
        v = self.ledger.additive_expr(from_signed_atoms(key), kind, q=qq)
        if v is not None:
            self._note_expr_facts(key, kind, q=qq)
        return v

    def _g4_upper(self, key: Key) -> Optional[int]:
        if not key:
            return 0
        v = self.ledger.genus_upper_expr(from_signed_atoms(key))
        if v is not None:
            self._note_expr_facts(key, "g4")
            self._note_expr_facts(key, "g4_upper")
        return v

    def _u_upper(self, key: Key) -> Optional[int]:
        if not key:
            return 0
        v = self.ledger.unknotting_upper_expr(from_signed_atoms(key))
        if v is not None:
            self._note_expr_facts(key, "unknotting_upper")
        return v

    def _mirror_delta_seq(self, key: Key) -> Optional[DeltaSequence]:
        """Exact delta sequence of the mirror of a single-atom node, from an
        ingested fact or from a closed-form family flag."""
        if len(key) != 1:
            return None
        name, mirrored = key[0]
        f = self.ledger.fact(name, "delta_seq", mirror=not mirrored, q=self.q)
        if f is not None:
            self.provenance[f.describe()] = f.provenance
            return f.value
        flagged = False
        if self.q == 2 and self.ledger.atom_value(name, "quasi_alternating") is True:
            self._note_fact(name, "quasi_alternating")
            flagged = True
        if self.ledger.atom_value(name, "l_space", q=self.q) is True:
            self._note_fact(name, "l_space", q=self.q)
            flagged = True
        if flagged:
            sig_mirror = self.ledger.sigma_q_atom(name, self.q, mirror=not mirrored)
            if sig_mirror is not None:
                return DeltaSequence.constant(-sig_mirror // 2)
        return None

    # -- rules ----------------------------------------------------------------

    def rule_r1(self, key: Key) -> None:
        sigq = self._sigma_q(key)
        if sigq is not None:
            self.set_lower(
                key,
                Fraction(-sigq, 2 * (self.q - 1)),
                f"R1 signature lower bound, sigma^({self.q}) = {sigq}",
            )
        g4 = self._g4_upper(key)
        if g4 is not None:
            self.set_upper(key, Fraction(g4), f"R1 slice genus upper bound, g4 <= {g4}")

    def rule_r2(self, key: Key) -> None:
        if len(key) < 2:
            return
        for part_a, part_b in _binary_splits(key):
            na, nb = self.node(part_a), self.node(part_b)
            ne = self.node(key)
            ma, mb = self.node(_mirror_key(part_a)), self.node(_mirror_key(part_b))
            split = f"{_key_str(part_a)} | {_key_str(part_b)}"
            if na.upper is not None and nb.upper is not None:
                self.set_upper(key, na.upper + nb.upper, f"R2 subadditivity over {split}")
            if mb.upper is not None:
                self.set_lower(key, na.lower - mb.upper, f"R2 rearranged over {split}")
            if ma.upper is not None:
                self.set_lower(key, nb.lower - ma.upper, f"R2 rearranged over {split}")
            if ne.upper is not None and mb.upper is not None:
                self.set_upper(part_a, ne.upper + mb.upper, f"R2 rearranged for {_key_str(part_a)}")
            if ne.upper is not None and ma.upper is not None:
                self.set_upper(part_b, ne.upper + ma.upper, f"R2 rearranged for {_key_str(part_b)}")
            if nb.upper is not None:
                self.set_lower(part_a, ne.lower - nb.upper, f"R2 rearranged for {_key_str(part_a)}")
            if na.upper is not None:
                self.set_lower(part_b, ne.lower - na.upper, f"R2 rearranged for {_key_str(part_b)}")

    def rule_r3(self, plus: Key, minus: Key) -> None:
        np_, nm = self.node(plus), self.node(minus)
        label = f"R3 crossing change {_key_str(plus)} -> {_key_str(minus)}"
        if np_.upper is not None:
            self.set_upper(minus, np_.upper, label)
        self.set_lower(minus, np_.lower - 1, label)
        if nm.upper is not None:
            self.set_upper(plus, nm.upper + 1, label)
        self.set_lower(plus, nm.lower, label)

    def rule_r4(self, key: Key) -> None:
        if len(key) != 1:
            return
        name, _ = key[0]
        qa = self.q == 2 and self.ledger.atom_value(name, "quasi_alternating") is True
        lsp = self.ledger.atom_value(name, "l_space", q=self.q) is True
        if not (qa or lsp):
            return
        sigq = self._sigma_q(key)
        if sigq is None:
            return
        self._note_fact(name, "quasi_alternating")
        if lsp:
            self._note_fact(name, "l_space", q=self.q)
        value = max(Fraction(0), Fraction(-sigq, 2 * (self.q - 1)))
        why = ("R4 quasi-alternating closed form" if qa else "R4 L-space closed form")
        self.set_lower(key, value, why)
        self.set_upper(key, value, why)

    def rule_r5(self, key: Key) -> None:
        sigq = self._sigma_q(key)
        delta = self._delta_hom(key)
        if sigq is None or delta is None:
            return
        if sigq <= 0 and Fraction(delta) < Fraction(-sigq, 2):
            self.set_lower(
                key,
                Fraction(1, self.q - 1) + Fraction(-sigq, 2 * (self.q - 1)),
                f"R5 delta jump: delta^({self.q}) = {delta} < -sigma/2 = "
                f"{Fraction(-sigq, 2)} with sigma <= 0",
            )

    def rule_r6(self, key: Key) -> None:
        u = self._u_upper(key)
        if u is None:
            return
        mnode = self.node(_mirror_key(key))
        self.set_upper(
            key,
            Fraction(u) - mnode.lower,
            f"R6 unknotting bound: theta + theta(mirror) <= u <= {u}",
        )

    def rule_r7(self, key: Key) -> None:
        if len(key) != 1:
            return
        name, mirrored = key[0]
        f = self.ledger.fact(name, "ell_q", mirror=not mirrored, q=self.q)
        if f is None:
            return
        sigq = self._sigma_q(key)
        if sigq is None:
            return
        self.provenance[f.describe()] = f.provenance
        bound = ell_lower_bound(self.q, f.value, sigq, 0)
        self.set_lower(
            key,
            bound,
            f"R7 HF+ degree bound: ell^({self.q})(mirror) = {f.value}",
        )

    def rule_r8(self, key: Key) -> None:
        seq = self._mirror_delta_seq(key)
        if seq is None:
            return
        sigq = self._sigma_q(key)
        if sigq is None:
            return
        value = theta_from_mirror_delta(self.q, seq, sigq).value
        why = "R8 exact delta sequence of the mirror"
        self.set_lower(key, value, why)
        self.set_upper(key, value, why)

    # -- relation closure -------------------------------------------------

    def _base_relations(self) -> list[tuple[Key, Key]]:
        out = []
        for rel in self.ledger.relations:
            plus = self.reduce(rel.plus)
            minus = self.reduce(rel.minus)
            out.append((plus, minus))
            out.append((_mirror_key(minus), _mirror_key(plus)))
        return out

    def _extend_relations(self) -> None:
        """Instantiate each ledger relation inside connected sums: if K- is
        obtained from K+ by a crossing change, so is K- + A from K+ + A.
        Partners are only created when they do not enlarge the expression,
        which keeps the universe finite."""
        base = self._base_relations()
        for plus, minus in base:
            if plus in self.nodes or minus in self.nodes:
                self.node(plus)
                self.node(minus)
                if (plus, minus) not in self.relations:
                    self.relations.add((plus, minus))
                    self._changed = True
        for key in list(self.nodes):
            ck = Counter(key)
            for plus, minus in base:
                cp, cm = Counter(plus), Counter(minus)
                if not (cp - ck):  # plus side inside key
                    partner = tuple(sorted((ck - cp + cm).elements()))
                    if len(partner) <= len(key) or partner in self.nodes:
                        rel = (key, partner)
                        if rel not in self.relations:
                            self.node(partner)
                            self.relations.add(rel)
                            self._changed = True
                if not (cm - ck):  # minus side inside key
                    partner = tuple(sorted((ck - cm + cp).elements()))
                    if len(partner) <= len(key) or partner in self.nodes:
                        rel = (partner, key)
                        if rel not in self.relations:
                            self.node(partner)
                            self.relations.add(rel)
                            self._changed = True

    def _close_universe(self) -> None:
        for key in list(self.nodes):
            self.node(_mirror_key(key))
        for key in list(self.nodes):
            for part_a, part_b in _binary_splits(key):
                self.node(part_a)
                self.node(part_b)
                self.node(_mirror_key(part_a))
                self.node(_mirror_key(part_b))
        self._extend_relations()

    # -- driver -------------------------------------------------------------

    def run(self, expr: KnotExpression) -> Key:
        self.ledger.require_atoms(expr)
        query = self.reduce(expr)
        self.node(query)
        self.node(_mirror_key(query))
        if not query:
            self.set_upper(query, Fraction(0), "concordance: slice connected sum")
        rng = random.Random(self.rule_seed) if self.rule_seed is not None else None
        for _ in range(_MAX_PASSES):
            self._changed = False
            self._close_universe()
            unary = [self.rule_r1, self.rule_r4, self.rule_r5, self.rule_r6,
                     self.rule_r7, self.rule_r8]
            if rng is not None:
                rng.shuffle(unary)
            keys = list(self.nodes)
            if rng is not None:
                rng.shuffle(keys)
            for key in keys:
                if not key:
                    self.set_upper(key, Fraction(0), "concordance: slice connected sum")
                for rule in unary:
                    rule(key)
            for key in list(self.nodes):
                self.rule_r2(key)
            rels = sorted(self.relations)
            if rng is not None:
                rng.shuffle(rels)
            for plus, minus in rels:
                self.rule_r3(plus, minus)
            if not self._changed:
                return query
        raise EngineError("inference did not reach a fixed point")

    def interval(self, key: Key) -> BoundInterval:
        n = self.node(key)
        return BoundInterval(lower=n.lower, upper=n.upper,
                             justification=list(self.trace),
                             provenance=dict(sorted(self.provenance.items())))


def _binary_splits(key: Key):
    """All unordered binary splits of a multiset of signed atoms."""
    n = len(key)
    if n < 2:
        return
    seen = set()
    for mask in range(1, (1 << n) - 1):
        a = tuple(sorted(key[i] for i in range(n) if mask & (1 << i)))
        b = tuple(sorted(key[i] for i in range(n) if not mask & (1 << i)))
        if (a, b) in seen or (b, a) in seen:
            continue
        seen.add((a, b))
        yield a, b


def infer_theta(ledger: Ledger, expr: KnotExpression, q: int = 2,
                rule_seed: Optional[int] = None) -> BoundInterval:
    """Tightest theta^(q) interval derivable for ``expr`` from the ledger.

    Raises LedgerInconsistentError when the rules collide (the ledger then
    contains data that cannot all be true of actual knots).
    """
    engine = InferenceEngine(ledger, q, rule_seed=rule_seed)
    query = engine.run(expr)
    return engine.interval(query)


def infer_theta_m(ledger: Ledger, expr: KnotExpression, q: int, m: int) -> BoundInterval:
    """Bounds on the m-shifted invariant theta^(q)(K, m).

    Exact when a full delta sequence of the mirror is available (ingested or
    closed-form); otherwise an interval from the m-shifted HF+ degree bound,
    the signature lower bound (valid for every m), and monotonicity
    theta(K, m) <= theta(K).
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    engine = InferenceEngine(ledger, q)
    query = engine.run(expr)
    sigq = engine._sigma_q(query)
    seq = engine._mirror_delta_seq(query)
    just: list[str]
    if seq is not None and sigq is not None:
        value = theta_from_mirror_delta(q, seq, sigq, m).value
        just = [f"exact delta sequence of the mirror with m = {m}"]
        return BoundInterval(lower=value, upper=value, justification=just,
                             provenance=dict(sorted(engine.provenance.items())))
    base = engine.interval(query)
    if m == 0:
        # theta(K, 0) is theta(K): the whole rule set applies
        return base
    lower = Fraction(0)
    just = [f"theta(K, {m}) >= 0"]
    if sigq is not None:
        cand = Fraction(-sigq, 2 * (q - 1))
        if cand > lower:
            lower = cand
            just.append(f"signature lower bound holds for every m: >= {cand}")
    if len(query) == 1:
        name, mirrored = query[0]
        f = ledger.fact(name, "ell_q", mirror=not mirrored, q=q)
        if f is not None and sigq is not None:
            cand = ell_lower_bound(q, f.value, sigq, m)
            if cand > lower:
                lower = cand
                just.append(f"HF+ degree bound with m = {m}: >= {cand}")
    lower = max(Fraction(0), Fraction(math.ceil(lower * (q - 1)), q - 1))
    upper = base.upper
    if upper is not None:
        just.append(f"monotone in m: theta(K, {m}) <= theta(K) <= {upper}")
    return BoundInterval(lower=lower, upper=upper,
                         justification=just + base.justification,
                         provenance=base.provenance)
