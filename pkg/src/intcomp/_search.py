"""Event-sequence search engines shared by recognition, canonical models and the DP.

Everything here works on a local graph given as ``(n, adj)`` with ``adj[v]``
the neighbour bitmask of ``v``.  An event is ``(v, kind)`` with kind 0 for a
begin and 1 for an end, matching :mod:`intcomp.model`.

A prefix of events is *placeable* exactly when every begin happens while all
open intervals are neighbours of the new vertex, and every end happens once all
neighbours of the ending vertex have begun.  A full sequence all of whose
steps are placeable is an interval model.
"""

from __future__ import annotations

from typing import Iterator

from .graph import members

BEGIN = 0
END = 1


def _ended(adj: list[int] | tuple[int, ...], begun: int) -> int:
    out = 0
    for v in members(begun):
        if adj[v] & ~begun == 0:
            out |= 1 << v
    return out


def interval_begin_order(n: int, adj) -> list[int] | None:
    """Order of begin events of some model, or ``None`` if the graph is not interval.

    Ends are flushed as soon as the last neighbour has begun, which never
    hurts, so the search state is just the set of begun vertices.
    """
    full = (1 << n) - 1
    dead: set[int] = set()
    order: list[int] = []

    def go(begun: int) -> bool:
        if begun == full:
            return True
        if begun in dead:
            return False
        open_ = begun & ~_ended(adj, begun)
        for u in members(full & ~begun):
            if open_ & ~adj[u] == 0:
                order.append(u)
                if go(begun | 1 << u):
                    return True
                order.pop()
        dead.add(begun)
        return False

    return order if go(0) else None


def sequence_from_begin_order(adj, order: list[int]) -> list[tuple[int, int]]:
    seq: list[tuple[int, int]] = []
    begun = ended = 0
    for u in order:
        seq.append((u, BEGIN))
        begun |= 1 << u
        for v in sorted(members(begun & ~ended), reverse=True):
            if adj[v] & ~begun == 0:
                seq.append((v, END))
                ended |= 1 << v
    return seq


def is_chordal(n: int, adj) -> bool:
    """Maximum cardinality search followed by a perfect-elimination check."""
    weight = [0] * n
    rank = [0] * n
    unvisited = (1 << n) - 1
    visited = 0
    for _ in range(n):
        v = max(members(unvisited), key=lambda u: weight[u])
        earlier = adj[v] & visited
        if earlier:
            # the most recently visited earlier neighbour must see all the others
            last = max(members(earlier), key=lambda u: rank[u])
            if earlier & ~adj[last] & ~(1 << last):
                return False
        rank[v] = n - unvisited.bit_count()
        unvisited &= ~(1 << v)
        visited |= 1 << v
        for u in members(adj[v] & unvisited):
            weight[u] += 1
    return True


def _component_labels(n: int, adj, removed: int) -> list[int]:
    label = [-1] * n
    rest = ((1 << n) - 1) & ~removed
    tag = 0
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            grow = 0
            for u in members(frontier):
                grow |= adj[u]
            frontier = grow & rest & ~comp
            comp |= frontier
        for u in members(comp):
            label[u] = tag
        rest &= ~comp
        tag += 1
    return label


def has_asteroidal_triple(n: int, adj) -> bool:
    """Three vertices each joined to the other two by a path avoiding its neighbourhood."""
    labels = [_component_labels(n, adj, adj[x] | 1 << x) for x in range(n)]
    for a in range(n):
        la = labels[a]
        for b in range(a + 1, n):
            if la[b] < 0:
                continue
            lb = labels[b]
            for c in range(b + 1, n):
                if la[c] == la[b] and lb[c] == lb[a] >= 0 and labels[c][a] == labels[c][b] >= 0:
                    return True
    return False


def is_interval(n: int, adj) -> bool:
    """Chordal and free of asteroidal triples."""
    return is_chordal(n, adj) and not has_asteroidal_triple(n, adj)


class ConstrainedSearch:
    """Search over event sequences of a local graph with optional block constraints.

    ``prefix`` is a vertex mask whose begin events must occupy the first
    positions (in any order); ``suffix`` a mask whose end events must occupy
    the last positions.  With ``fill=True`` a begin may open while
    non-neighbours are open (each such overlap is a fill pair), which is how
    completions of a DP state are searched.
    """

    def __init__(self, n: int, adj, prefix: int = 0, suffix: int = 0, fill: bool = False):
        self.n = n
        self.adj = tuple(adj)
        self.full = (1 << n) - 1
        self.size = 2 * n
        self.prefix = prefix
        self.suffix = suffix
        self.plen = prefix.bit_count()
        self.qlen = suffix.bit_count()
        self.fill = fill
        if self.plen + self.qlen > self.size:
            raise ValueError("prefix and suffix blocks overlap")

    def moves(self, begun: int, ended: int) -> Iterator[tuple[int, int]]:
        t = begun.bit_count() + ended.bit_count()
        open_ = begun & ~ended
        adj = self.adj
        if t < self.plen:
            for u in members(self.prefix & ~begun):
                if self.fill or open_ & ~adj[u] == 0:
                    yield (u, BEGIN)
            return
        if t >= self.size - self.qlen:
            for v in members(self.suffix & open_):
                if adj[v] & ~begun == 0:
                    yield (v, END)
            return
        for u in members(self.full & ~begun):
            if self.fill or open_ & ~adj[u] == 0:
                yield (u, BEGIN)
        for v in members(open_ & ~self.suffix):
            if adj[v] & ~begun == 0:
                yield (v, END)

    @staticmethod
    def apply(begun: int, ended: int, move: tuple[int, int]) -> tuple[int, int]:
        v, kind = move
        if kind == BEGIN:
            return begun | 1 << v, ended
        return begun, ended | 1 << v

    # -- feasibility under pinned positions ---------------------------------

    def _finisher(self, fixed: dict, taken: dict):
        memo: dict[tuple[int, int], bool] = {}
        full = self.full

        def can_finish(begun: int, ended: int) -> bool:
            if ended == full:
                return True
            key = (begun, ended)
            hit = memo.get(key)
            if hit is not None:
                return hit
            t = begun.bit_count() + ended.bit_count()
            want = taken.get(t + 1)
            ok = False
            for mv in self.moves(begun, ended):
                if want is not None:
                    if mv != want:
                        continue
                elif mv in fixed:
                    continue
                if can_finish(*self.apply(begun, ended, mv)):
                    ok = True
                    break
            memo[key] = ok
            return ok

        return can_finish

    def exists(self) -> bool:
        return self._finisher({}, {})(0, 0)

    def _earliest(self, target, fixed: dict, taken: dict) -> int | None:
        can_finish = self._finisher(fixed, taken)
        if not can_finish(0, 0):
            return None
        layer = {(0, 0)}
        for t in range(self.size):
            want = taken.get(t + 1)
            nxt = set()
            for begun, ended in layer:
                for mv in self.moves(begun, ended):
                    if want is not None:
                        if mv != want:
                            continue
                    elif mv in fixed:
                        continue
                    state = self.apply(begun, ended, mv)
                    if not can_finish(*state):
                        continue
                    if mv == target:
                        return t + 1
                    nxt.add(state)
            layer = nxt
        return None

    def lexmin(self, order) -> list[tuple[int, int]] | None:
        """Sequence minimising the positions of ``order``'s events lexicographically.

        Events not listed in ``order`` are pinned afterwards, begins by
        increasing and ends by decreasing vertex, which only matters for
        making the result deterministic.
        """
        order = list(order)
        listed = set(order)
        order += [(v, BEGIN) for v in range(self.n) if (v, BEGIN) not in listed]
        order += [(v, END) for v in reversed(range(self.n)) if (v, END) not in listed]
        fixed: dict[tuple[int, int], int] = {}
        taken: dict[int, tuple[int, int]] = {}
        for ev in order:
            q = self._earliest(ev, fixed, taken)
            if q is None:
                return None
            fixed[ev] = q
            taken[q] = ev
        return [taken[p] for p in range(1, self.size + 1)]

    # -- minimum fill ----------------------------------------------------------

    def min_fill(self) -> tuple[tuple[int, int], ...] | None:
        """Smallest fill set over all sequences, by size then sorted-pair order.

        Requires ``fill=True``.  A fill pair is created when a vertex begins
        while a non-neighbour is open; pairs are always created by the later of
        the two begins, so the best continuation from a state does not depend
        on how the state was reached.
        """
        if not self.fill:
            raise ValueError("min_fill needs a search built with fill=True")
        memo: dict[tuple[int, int], tuple | None] = {}
        full = self.full
        adj = self.adj

        def best(begun: int, ended: int):
            if ended == full:
                return ()
            key = (begun, ended)
            if key in memo:
                return memo[key]
            open_ = begun & ~ended
            result = None
            for mv in self.moves(begun, ended):
                sub = best(*self.apply(begun, ended, mv))
                if sub is None:
                    continue
                v, kind = mv
                if kind == BEGIN:
                    new = [(min(v, w), max(v, w)) for w in members(open_ & ~adj[v])]
                    cand = tuple(sorted(sub + tuple(new))) if new else sub
                else:
                    cand = sub
                if result is None or (len(cand), cand) < (len(result), result):
                    result = cand
            memo[key] = result
            return result

        return best(0, 0)
