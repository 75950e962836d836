#!/usr/bin/env python

"""
Superstring instances as MAX-ATSP instances, and the MIN-(1,2)-ATSP to MAX-ATSP weight transformation.

File format "digraph v1":

    digraph v1
    n 3
    v0 0
    w 1 2 2
    w 2 1 1

The header line is optional. Only non-zero weights are listed; the optional v0 line names the special start/end
vertex.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from scsgap.superstring_core import overlap_matrix, render_gstring

logger = logging.getLogger(__name__)

DIGRAPH_HEADER = 'digraph v1'
SPECIAL_LABEL = 'v0'


@dataclass
class WeightedDigraph:
    """
    Complete digraph with non-negative integer weights; the diagonal is unused.
    """
    labels: Tuple[str, ...]
    weights: np.ndarray
    special: Optional[int] = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.int64)
        size = len(self.labels)
        if self.weights.shape != (size, size):
            raise ValueError(f'Weight matrix of shape {self.weights.shape} does not match {size} vertices')
        if self.special is not None and not 0 <= self.special < size:
            raise ValueError(f'Special vertex {self.special} out of range')

    def __len__(self):
        return len(self.labels)

    def weight(self, i, j):
        return int(self.weights[i, j])


def overlap_graph(strings) -> WeightedDigraph:
    """
    One vertex per string plus the special vertex v0 at index 0; w(u, v) is the maximal overlap of u and v and every
    edge touching v0 weighs 0, so a tour through v0 is a Hamiltonian path of the strings.
    """

    strings = list(strings)
    size = len(strings) + 1
    weights = np.zeros((size, size), dtype=np.int64)
    weights[1:, 1:] = overlap_matrix(strings)
    labels = (SPECIAL_LABEL,) + tuple(render_gstring(string) for string in strings)
    return WeightedDigraph(labels, weights, special=0)


def min12_to_max(graph) -> WeightedDigraph:
    """
    Map a MIN-(1,2)-ATSP instance to MAX-ATSP: weight 2 becomes 0 and weight 1 stays 1.

    A tour has |V| edges, so the minimum tour of the input equals 2|V| minus the maximum tour of the output.
    """

    size = len(graph)
    off_diagonal = ~np.eye(size, dtype=bool)
    values = graph.weights[off_diagonal]
    if not np.isin(values, (1, 2)).all():
        raise ValueError('MIN-(1,2)-ATSP weights must all be 1 or 2')

    weights = np.where(graph.weights == 1, 1, 0).astype(np.int64)
    weights[~off_diagonal] = 0
    return WeightedDigraph(graph.labels, weights, special=graph.special)


def tour_weight(graph, tour: Sequence[int]) -> int:
    """
    Weight of a closed tour given as a vertex order.
    """

    if sorted(tour) != list(range(len(graph))):
        raise ValueError('A tour must visit every vertex exactly once')
    return sum(graph.weight(i, j) for i, j in zip(tour, list(tour[1:]) + [tour[0]]))


def random_min12_graph(size, rng) -> WeightedDigraph:
    weights = np.array([[0 if i == j else rng.choice((1, 2)) for j in range(size)] for i in range(size)],
                       dtype=np.int64)
    return WeightedDigraph(tuple(str(index) for index in range(size)), weights)


def write_digraph(path, graph):
    with open(path, 'w', encoding='utf-8') as digraph_handle:
        digraph_handle.write(f'{DIGRAPH_HEADER}\n')
        digraph_handle.write(f'n {len(graph)}\n')
        if graph.special is not None:
            digraph_handle.write(f'v0 {graph.special}\n')
        for i, j in zip(*np.nonzero(graph.weights)):
            if i != j:
                digraph_handle.write(f'w {i} {j} {graph.weights[i, j]}\n')
    return path


def read_digraph(path) -> WeightedDigraph:
    size = None
    special = None
    edges = []
    first_line = True
    with open(path, 'r', encoding='utf-8') as digraph_handle:
        for line_number, line in enumerate(digraph_handle, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if first_line:
                first_line = False
                if line == DIGRAPH_HEADER:
                    continue

            fields = line.split()
            if not all(field.isdigit() for field in fields[1:]):
                raise ValueError(f'{path}:{line_number}: expected non-negative integers in "{line}"')
            if fields[0] == 'n' and len(fields) == 2:
                size = int(fields[1])
            elif fields[0] == 'v0' and len(fields) == 2:
                special = int(fields[1])
            elif fields[0] == 'w' and len(fields) == 4:
                edges.append((line_number, int(fields[1]), int(fields[2]), int(fields[3])))
            else:
                raise ValueError(f'{path}:{line_number}: unrecognised line "{line}"')

    if size is None:
        raise ValueError(f'{path}: missing "n <count>" line')

    weights = np.zeros((size, size), dtype=np.int64)
    for line_number, i, j, weight in edges:
        if i >= size or j >= size:
            raise ValueError(f'{path}:{line_number}: vertex out of range for n={size}')
        weights[i, j] = weight

    labels = tuple(SPECIAL_LABEL if index == special else str(index) for index in range(size))
    return WeightedDigraph(labels, weights, special=special)
