#!/usr/bin/env python

"""
Alphabet, string, overlap and compression primitives shared by every other module.

Letters are structured atoms (Symbol). A string (GString) is a tuple of Symbols, so overlaps are always counted in
letters and never in characters of a rendering.

File format "sset v1":

    sset v1
    v:x.1:m0 v:x.2:r1 v:x.1:m0 v:x.2:m0
    c:x:L c:x:Cl
    ...

One string per line, symbols separated by whitespace and rendered as kind:owner:tag. Lines starting with '#' are
comments.
"""

import logging
from collections import Counter
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

SSET_HEADER = 'sset v1'

SYMBOL_KINDS = {'v': 'VarLetter',
                'c': 'CircleTerminal',
                'e': 'Eq3Aux'}


class Symbol(NamedTuple):
    """
    One letter of the reduction alphabet. Equality is structural over (kind, owner, tag).
    """
    kind: str
    owner: str
    tag: str

    def render(self):
        return f'{self.kind}:{self.owner}:{self.tag}'

    @classmethod
    def parse(cls, text):
        fields = text.split(':')
        if len(fields) != 3 or not all(fields):
            raise ValueError(f'Malformed symbol "{text}": expected kind:owner:tag')
        if fields[0] not in SYMBOL_KINDS:
            raise ValueError(f'Unknown symbol kind "{fields[0]}" in "{text}"')
        return cls(*fields)

    def __str__(self):
        return self.render()


GString = Tuple[Symbol, ...]


def gstring(symbols: Iterable[Symbol]) -> GString:
    """
    Freeze an iterable of symbols into a GString, rejecting the empty string.
    """

    result = tuple(symbols)
    if not result:
        raise ValueError('A string must contain at least one letter')
    return result


def render_gstring(string: GString) -> str:
    return ' '.join(symbol.render() for symbol in string)


def parse_gstring(line: str) -> GString:
    return gstring(Symbol.parse(token) for token in line.split())


def max_overlap(u: GString, v: GString) -> int:
    """
    Largest k < min(|u|, |v|) such that the k-suffix of u equals the k-prefix of v.

    :param tuple u: left string
    :param tuple v: right string
    :return int: number of overlapped letters, 0 if none
    """

    for k in range(min(len(u), len(v)) - 1, 0, -1):
        if u[-k:] == v[:k]:
            return k
    return 0


def merge(u: GString, v: GString, k: int) -> GString:
    """
    Concatenate u and v sharing k letters.

    :param tuple u: left string
    :param tuple v: right string
    :param int k: number of letters shared by the suffix of u and the prefix of v
    :return tuple: merged string of length |u| + |v| - k
    """

    if k < 0 or k > min(len(u), len(v)):
        raise ValueError(f'Overlap {k} out of range for strings of length {len(u)} and {len(v)}')
    if k and u[-k:] != v[:k]:
        raise ValueError(f'Cannot merge with overlap {k}: suffix and prefix differ')
    return u + v[k:]


def merge_order(strings: Sequence[GString], order: Sequence[int]) -> Tuple[GString, List[int]]:
    """
    Max-overlap merge of strings visited in the given order.

    :param strings: the strings to merge
    :param order: indices into strings
    :return: merged string and the list of overlaps between consecutive strings
    """

    if not order:
        return tuple(), []

    merged = list(strings[order[0]])
    overlaps = []
    for previous, current in zip(order, order[1:]):
        k = max_overlap(strings[previous], strings[current])
        overlaps.append(k)
        merged.extend(strings[current][k:])

    return tuple(merged), overlaps


def overlap_matrix(strings: Sequence[GString]) -> np.ndarray:
    """
    Matrix of pairwise maximum overlaps; the diagonal is left at zero.
    """

    size = len(strings)
    matrix = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            if i != j:
                matrix[i, j] = max_overlap(strings[i], strings[j])
    return matrix


class StringSet:
    """
    Substring-free collection of GStrings without duplicates.
    """

    def __init__(self, strings: Iterable[Sequence[Symbol]], check=True):
        self.strings = tuple(gstring(string) for string in strings)
        if check:
            self._check_duplicates()
            self._check_substring_free()

    def _check_duplicates(self):
        seen = {}
        for index, string in enumerate(self.strings):
            if string in seen:
                raise ValueError(f'Duplicate string at positions {seen[string]} and {index}: '
                                 f'{render_gstring(string)}')
            seen[string] = index

    def _check_substring_free(self):
        by_length = {}
        for string in self.strings:
            by_length.setdefault(len(string), set()).add(string)

        for string in self.strings:
            for length, members in by_length.items():
                if length >= len(string):
                    continue
                for start in range(len(string) - length + 1):
                    window = string[start:start + length]
                    if window in members:
                        raise ValueError(f'Set is not substring-free: {render_gstring(window)} occurs in '
                                         f'{render_gstring(string)}')

    def __len__(self):
        return len(self.strings)

    def __iter__(self):
        return iter(self.strings)

    def __getitem__(self, index):
        return self.strings[index]

    def __eq__(self, other):
        return isinstance(other, StringSet) and self.strings == other.strings

    def __hash__(self):
        return hash(self.strings)

    @property
    def total_letters(self):
        return sum(len(string) for string in self.strings)

    @property
    def max_length(self):
        return max((len(string) for string in self.strings), default=0)

    def alphabet(self):
        return {symbol for string in self.strings for symbol in string}


def leftmost_positions(s: GString, strings: Iterable[GString]) -> Dict[GString, int]:
    """
    Start of the leftmost occurrence of each string in s; absent strings are left out of the result.
    """

    wanted = {}
    for string in strings:
        wanted.setdefault(len(string), set()).add(string)

    positions = {}
    for length, members in wanted.items():
        for start in range(len(s) - length + 1):
            window = s[start:start + length]
            if window in members and window not in positions:
                positions[window] = start
    return positions


def leftmost_order(s: GString, strings: Sequence[GString]) -> List[int]:
    """
    Indices of strings sorted by the start of their leftmost occurrence in s.

    For a substring-free set, merging the strings in this order with maximal overlaps never gives a string longer
    than s.
    """

    positions = leftmost_positions(s, strings)
    missing = [index for index, string in enumerate(strings) if string not in positions]
    if missing:
        raise ValueError(f'{len(missing)} string(s) do not occur in the superstring, e.g. '
                         f'{render_gstring(strings[missing[0]])}')
    return sorted(range(len(strings)), key=lambda index: positions[strings[index]])


def is_superstring(s: GString, strings: Iterable[GString]) -> bool:
    """
    True iff every member of strings occurs contiguously in s.
    """

    strings = list(strings)
    positions = leftmost_positions(s, strings)
    return all(string in positions for string in strings)


def compression(strings: StringSet, s: GString) -> int:
    """
    Total length of the set minus the length of the superstring.
    """

    if not is_superstring(s, strings):
        raise ValueError('Compression is only defined for a superstring of the set')
    return strings.total_letters - len(s)


def orbit_stats(strings: Iterable[GString]) -> Tuple[Counter, int]:
    """
    Occurrence count of every symbol across all strings, and the maximum count (the maximal orbit size).
    """

    counts = Counter(symbol for string in strings for symbol in string)
    return counts, max(counts.values(), default=0)


def write_sset(path, strings: Iterable[GString], comment=None):
    """
    Write strings in "sset v1" format; returns the path.
    """

    with open(path, 'w', encoding='utf-8') as sset_handle:
        sset_handle.write(f'{SSET_HEADER}\n')
        if comment:
            for line in comment.splitlines():
                sset_handle.write(f'# {line}\n')
        for string in strings:
            sset_handle.write(f'{render_gstring(string)}\n')

    logger.debug(f'Wrote sset file {path}')
    return path


def read_sset_strings(path) -> List[GString]:
    """
    Read the strings of an "sset v1" file in file order, without validating the set.
    """

    strings = []
    header_seen = False
    with open(path, 'r', encoding='utf-8') as sset_handle:
        for line_number, line in enumerate(sset_handle, start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if not header_seen:
                if line != SSET_HEADER:
                    raise ValueError(f'{path}:{line_number}: expected header "{SSET_HEADER}", found "{line}"')
                header_seen = True
                continue
            try:
                strings.append(parse_gstring(line))
            except ValueError as error:
                raise ValueError(f'{path}:{line_number}: {error}') from error

    if not header_seen:
        raise ValueError(f'{path}: empty file, expected header "{SSET_HEADER}"')
    return strings


def read_sset(path) -> StringSet:
    """
    Read an "sset v1" file as a validated StringSet; duplicates are rejected.
    """

    return StringSet(read_sset_strings(path))
