#!/usr/bin/env python

"""
Superstring and tour solvers used as baselines and as oracles on small instances.

The exact solvers share one layered subset dynamic program over (visited set, last vertex) states: layer k holds
every subset of size k, and each layer is filled with one vectorised numpy step per last vertex.
"""

import logging
from itertools import permutations
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from scsgap.superstring_core import GString, max_overlap, merge_order, overlap_matrix

logger = logging.getLogger(__name__)

EXACT_CAP = 18
BRUTE_FORCE_CAP = 8
ALL_OVERLAPS_CAP = 5
TOUR_BRUTE_FORCE_CAP = 9

_UNREACHED = np.iinfo(np.int64).min // 4


class SolveResult(NamedTuple):
    """
    A superstring with the string order and the overlaps between consecutive strings that produce it.
    """
    superstring: GString
    order: Tuple[int, ...]
    overlaps: Tuple[int, ...]
    compression: int

    @property
    def length(self):
        return len(self.superstring)


def _result(strings, order, overlaps=None):
    if overlaps is None:
        superstring, overlaps = merge_order(strings, order)
    else:
        merged = list(strings[order[0]])
        for index, overlap in zip(order[1:], overlaps):
            merged.extend(strings[index][overlap:])
        superstring = tuple(merged)
    compression = sum(len(string) for string in strings) - len(superstring)
    return SolveResult(superstring, tuple(order), tuple(overlaps), compression)


def _check_cap(size, cap, what):
    if size > cap:
        raise ValueError(f'{what} is limited to {cap} items, got {size}')


def _check_nonempty(strings):
    if not len(strings):
        raise ValueError('Cannot build a superstring of an empty set')


########################################################################################################################
# Greedy
########################################################################################################################

def greedy_superstring(strings) -> SolveResult:
    """
    Greedy merging: repeatedly join the two string chains with the largest overlap, lowest index pair first.

    Joining chain ends by decreasing overlap is the same as repeatedly merging the pair of current strings with
    maximal overlap, because the overlap of two merged strings is the overlap of their end strings.

    :param strings: substring-free set of strings
    :return SolveResult: the greedy superstring
    """

    strings = list(strings)
    _check_nonempty(strings)
    size = len(strings)
    weights = overlap_matrix(strings)

    edges = sorted(((-int(weights[i, j]), i, j) for i in range(size) for j in range(size) if i != j))
    successor = [None] * size
    predecessor = [None] * size
    chain_of = list(range(size))

    def find(node):
        while chain_of[node] != node:
            chain_of[node] = chain_of[chain_of[node]]
            node = chain_of[node]
        return node

    joins = 0
    for _, i, j in edges:
        if joins == size - 1:
            break
        if successor[i] is not None or predecessor[j] is not None or find(i) == find(j):
            continue
        successor[i] = j
        predecessor[j] = i
        chain_of[find(j)] = find(i)
        joins += 1

    order = []
    for start in range(size):
        if predecessor[start] is None:
            node = start
            while node is not None:
                order.append(node)
                node = successor[node]

    return _result(strings, order)


########################################################################################################################
# Layered subset dynamic program
########################################################################################################################

def _held_karp(weights, start=None, cycle=False):
    """
    Maximum-weight Hamiltonian path (or cycle through `start`) of a complete digraph.

    :param numpy.ndarray weights: square integer weight matrix; the diagonal is ignored
    :param int start: first vertex of the path, any vertex when None
    :param bool cycle: close the path back to `start`
    :return: (weight, vertex order)
    """

    size = weights.shape[0]
    if size == 1:
        return 0, [0]

    full = 1 << size
    masks = np.arange(full, dtype=np.int64)
    membership = ((masks[:, None] >> np.arange(size)) & 1).astype(bool)
    popcount = membership.sum(axis=1)

    best = np.full((full, size), _UNREACHED, dtype=np.int64)
    parent = np.full((full, size), -1, dtype=np.int64)
    for vertex in (range(size) if start is None else [start]):
        best[1 << vertex, vertex] = 0

    for layer_size in range(2, size + 1):
        layer = masks[popcount == layer_size]
        for last in range(size):
            if last == start:
                continue
            containing = layer[membership[layer, last]]
            if not len(containing):
                continue
            previous = containing ^ (1 << last)
            reached = best[previous]
            candidates = np.where(reached == _UNREACHED, _UNREACHED, reached + weights[:, last][None, :])
            choice = candidates.argmax(axis=1)
            best[containing, last] = candidates[np.arange(len(containing)), choice]
            parent[containing, last] = choice

    final = best[full - 1].copy()
    if cycle:
        closing = weights[:, start]
        final = np.where(final == _UNREACHED, _UNREACHED, final + closing)
        final[start] = _UNREACHED
    last = int(final.argmax())
    weight = int(final[last])

    order = []
    mask = full - 1
    vertex = last
    while vertex != -1:
        order.append(vertex)
        previous_vertex = int(parent[mask, vertex])
        mask ^= 1 << vertex
        vertex = previous_vertex
    order.reverse()

    return weight, order


def exact_superstring(strings, cap=EXACT_CAP) -> SolveResult:
    """
    Shortest superstring as a maximum-weight Hamiltonian path of the overlap graph.

    :param strings: substring-free set of strings
    :param int cap: largest accepted number of strings
    :return SolveResult: an optimal superstring
    """

    strings = list(strings)
    _check_nonempty(strings)
    _check_cap(len(strings), cap, 'exact_superstring')

    weight, order = _held_karp(overlap_matrix(strings))
    result = _result(strings, order)
    if result.compression != weight:
        raise RuntimeError(f'Replayed order compresses {result.compression} letters, expected {weight}')
    return result


def _tour_weights(graph):
    weights = np.asarray(getattr(graph, 'weights', graph), dtype=np.int64)
    if weights.ndim != 2 or weights.shape[0] != weights.shape[1] or weights.shape[0] == 0:
        raise ValueError('A tour needs a non-empty square weight matrix')
    off_diagonal = ~np.eye(weights.shape[0], dtype=bool)
    if (weights[off_diagonal] < 0).any():
        raise ValueError('Graph is not complete: negative weights mark missing edges')
    return weights


def exact_max_atsp(graph, cap=EXACT_CAP) -> Tuple[int, List[int]]:
    """
    Maximum-weight Hamiltonian tour, starting and ending at vertex 0.

    :param graph: atsp_bridge.WeightedDigraph or square weight matrix
    :param int cap: largest accepted number of vertices
    :return: (tour weight, vertices in tour order starting at 0)
    """

    weights = _tour_weights(graph)
    _check_cap(weights.shape[0], cap, 'exact_max_atsp')
    if weights.shape[0] == 1:
        return 0, [0]
    return _held_karp(weights, start=0, cycle=True)


########################################################################################################################
# Exhaustive oracles
########################################################################################################################

def brute_force_superstring(strings, cap=BRUTE_FORCE_CAP) -> SolveResult:
    """
    Shortest superstring over all string orders merged with maximal overlaps.
    """

    strings = list(strings)
    _check_nonempty(strings)
    _check_cap(len(strings), cap, 'brute_force_superstring')

    weights = overlap_matrix(strings)
    best = None
    for order in permutations(range(len(strings))):
        compression = sum(int(weights[i, j]) for i, j in zip(order, order[1:]))
        if best is None or compression > best[0]:
            best = (compression, order)
    return _result(strings, list(best[1]))


def _valid_overlaps(u, v):
    return [k for k in range(min(len(u), len(v)) - 1, -1, -1) if k == 0 or u[-k:] == v[:k]]


def all_overlaps_superstring(strings, cap=ALL_OVERLAPS_CAP) -> SolveResult:
    """
    Shortest superstring over all string orders and every valid overlap amount between consecutive strings.

    Independent of the maximal-overlap argument the other solvers rely on.
    """

    strings = list(strings)
    _check_nonempty(strings)
    _check_cap(len(strings), cap, 'all_overlaps_superstring')

    best = None
    for order in permutations(range(len(strings))):
        choices = [_valid_overlaps(strings[i], strings[j]) for i, j in zip(order, order[1:])]
        stack = [((), 0)]
        while stack:
            chosen, depth = stack.pop()
            if depth == len(choices):
                compression = sum(chosen)
                if best is None or compression > best[0]:
                    best = (compression, order, chosen)
                continue
            for overlap in choices[depth]:
                stack.append((chosen + (overlap,), depth + 1))

    _, order, overlaps = best
    return _result(strings, list(order), list(overlaps))


def brute_force_tour(graph, maximize=True, cap=TOUR_BRUTE_FORCE_CAP) -> Tuple[int, List[int]]:
    """
    Best Hamiltonian tour through vertex 0 by enumerating every vertex order.
    """

    weights = _tour_weights(graph)
    size = weights.shape[0]
    _check_cap(size, cap, 'brute_force_tour')
    if size == 1:
        return 0, [0]

    best = None
    for rest in permutations(range(1, size)):
        tour = (0,) + rest
        weight = sum(int(weights[i, j]) for i, j in zip(tour, tour[1:] + (0,)))
        if best is None or (weight > best[0] if maximize else weight < best[0]):
            best = (weight, list(tour))
    return best


ALGORITHMS = {'greedy': greedy_superstring,
              'exact': exact_superstring,
              'brute': brute_force_superstring}


def solve(strings, algorithm='greedy') -> SolveResult:
    if algorithm not in ALGORITHMS:
        raise ValueError(f'Unknown algorithm "{algorithm}"; choose from {", ".join(ALGORITHMS)}')
    result = ALGORITHMS[algorithm](strings)
    logger.debug(f'{algorithm}: {len(strings)} strings -> {result.length} letters, compression {result.compression}')
    return result


def replay(strings: Sequence[GString], result: SolveResult) -> bool:
    """
    True iff merging result.order with result.overlaps reproduces result.superstring.
    """

    merged = list(strings[result.order[0]])
    for index, overlap in zip(result.order[1:], result.overlaps):
        string = strings[index]
        if overlap and tuple(merged[-overlap:]) != string[:overlap]:
            return False
        merged.extend(string[overlap:])
    return tuple(merged) == result.superstring and all(
        overlap <= max_overlap(strings[i], strings[j])
        for i, j, overlap in zip(result.order, result.order[1:], result.overlaps))
