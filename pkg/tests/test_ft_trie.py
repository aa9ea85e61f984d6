"""Face-word trie used by hint-free queries."""

import itertools

import pytest

from nmdecomp.complexes import parse_tv
from nmdecomp.counters import OpCounter
from nmdecomp.errors import NotInTrie
from nmdecomp.trie import FtTrie, build_ft_trie


@pytest.fixture()
def pair():
    return parse_tv("simplex 1: 1 2 3\nsimplex 2: 2 3 4\n")


def test_insert_and_lookup(pair):
    trie = build_ft_trie(pair)
    assert trie.lookup((1,)) == 1
    assert trie.lookup((2, 3)) in (1, 2)
    assert trie.lookup((2, 3, 4)) == 2


def test_all_faces_present(pair):
    trie = build_ft_trie(pair)
    for t in pair.top_ids:
        row = sorted(pair.row(t))
        for n in range(len(row)):
            for w in itertools.combinations(row, n + 1):
                assert pair.star(w) >= {trie.lookup(w)}


def test_word_count(pair):
    trie = build_ft_trie(pair)
    faces = pair.all_faces()
    assert trie.num_words == len(faces)


def test_excluded_words(pair):
    trie = build_ft_trie(pair, excluded=[(2, 3)])
    with pytest.raises(NotInTrie):
        trie.lookup((2, 3))
    # the excluded word keeps serving as a path to longer words
    assert trie.lookup((2, 3, 4)) == 2


def test_payload_read_at_leaf(pair):
    trie = build_ft_trie(pair)
    # lookup walks to the leftmost leaf extending the word; (2,3) extends
    # only to the leaf (2,3,4), which lives in top 2
    assert trie.lookup((2, 3)) == 2
    # (2,) extends leftmost through (2,3) to that same leaf
    assert trie.lookup((2,)) == 2
    # full rows are their own leaves
    assert trie.lookup((1, 2, 3)) == 1


def test_top_hint_translation(pair):
    trie = build_ft_trie(pair, top_hint={1: 10, 2: 20})
    assert trie.lookup((1, 2, 3)) == 10
    assert trie.lookup((4,)) == 20


def test_leftmost_descent_below_word():
    trie = FtTrie()
    trie.insert((1, 2), 7)
    trie.insert((1, 3), 9)
    trie.insert((1,), 5)
    # descent always reaches a leaf; leftmost child wins
    assert trie.lookup((1,)) == 7
    # unknown words are rejected, not guessed
    with pytest.raises(NotInTrie):
        trie.lookup((2,))
    with pytest.raises(NotInTrie):
        trie.lookup((1, 4))


def test_lookup_counts_descent(pair):
    trie = build_ft_trie(pair)
    counter = OpCounter()
    trie.lookup((2, 3), counter)
    assert counter.total > 0


def test_num_nodes_bounded(pair):
    trie = build_ft_trie(pair)
    # a node per distinct prefix, plus the root
    prefixes = set()
    for f in pair.all_faces():
        w = tuple(sorted(f))
        for i in range(1, len(w) + 1):
            prefixes.add(w[:i])
    assert trie.num_nodes == len(prefixes) + 1
