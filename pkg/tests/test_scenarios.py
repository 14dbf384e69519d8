"""The relational move-pattern tables are re-derived from the margin
conditions and compared with the frozen literals, entry for entry."""

from itertools import product

from ccenum.scenarios import (PAPER_2EDIT_SCENARIOS, PAPER_3EDIT_SCENARIOS,
                              admissible, canonical_class, derive_classes,
                              feasible_signs, movers_admissible,
                              pattern_margins, pattern_relations)


def test_three_move_table_rederivation():
    assert len(PAPER_3EDIT_SCENARIOS) == 17
    assert len({s.letter for s in PAPER_3EDIT_SCENARIOS}) == 17
    for sc in PAPER_3EDIT_SCENARIOS:
        assert feasible_signs(sc.sources, sc.targets) == sc.signs, sc.letter


def test_two_move_table_rederivation():
    assert len(PAPER_2EDIT_SCENARIOS) == 5
    for sc in PAPER_2EDIT_SCENARIOS:
        assert feasible_signs(sc.sources, sc.targets) == sc.signs, sc.letter
    admissible_letters = [s.letter for s in PAPER_2EDIT_SCENARIOS if s.signs]
    assert admissible_letters == ["a", "b"]


def test_scenario_j_sign_vector():
    # movers u, v share a source, u moves to z's module, v and z couple in a
    # fresh module: the only admissible unweighted signs are
    # a_uv = +1, a_uz = -1, a_vz = +1
    j = next(s for s in PAPER_3EDIT_SCENARIOS if s.letter == "j")
    assert j.signs == frozenset({(1, -1, 1)})


def test_seventeen_letters_cover_all_feasible_classes():
    classes = derive_classes(3)
    assert len(classes) == 18
    covered = {canonical_class(s.sources, s.targets) for s in PAPER_3EDIT_SCENARIOS}
    assert len(covered) == 17
    uncovered = set(classes) - covered
    # exactly one relation-connected class is unlisted, and it admits no sign
    # vector at the unweighted margin, so nothing is lost
    assert len(uncovered) == 1
    assert all(not classes[k] for k in uncovered)
    feasible = {k for k, v in classes.items() if v}
    assert len(feasible) == 14
    assert feasible <= covered


def test_letter_sign_sets_match_canonical_classes():
    classes = derive_classes(3)
    for sc in PAPER_3EDIT_SCENARIOS:
        key = canonical_class(sc.sources, sc.targets)
        # the canonical representative's sign set is a mover-permuted view of
        # the scenario's; emptiness must agree exactly
        assert bool(classes[key]) == bool(sc.signs), sc.letter


def test_margins_of_the_all_shared_scenario():
    # all three movers from one module into one fresh module
    margins = pattern_margins((0, 0, 0), (1, 1, 1),
                              {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    assert margins == [4, 4, 4]
    margins_neg = pattern_margins((0, 0, 0), (1, 1, 1),
                                  {(0, 1): -1, (0, 2): 1, (1, 2): 1})
    assert min(margins_neg) < 2


def test_admissible_requires_interaction_connectivity():
    # swap pair plus an unrelated mover: relations leave the third isolated
    sources = (0, 1, 2)
    targets = (1, 0, 3)
    rel = pattern_relations(sources, targets)
    assert all(2 not in pair for pair in rel)
    assert not admissible(sources, targets, {(0, 1): -1, (0, 2): 1, (1, 2): 1})


def test_path_cases_of_shared_source_scenarios():
    # all-from-one-module moves stay admissible when one mover pair has no
    # edge, as long as the present edges are positive (path form)
    assert admissible((0, 0, 0), (1, 1, 1), {(0, 1): 0, (0, 2): 1, (1, 2): 1})
    assert not admissible((0, 0, 0), (1, 1, 1), {(0, 1): 0, (0, 2): -1, (1, 2): 1})
    # the swap-with-joiner class survives one missing edge only if the
    # remaining relations still connect everyone
    assert not admissible((0, 1, 2), (1, 0, 1), {(0, 1): -1, (0, 2): 0, (1, 2): 0})


def test_movers_admissible_source_screen():
    # two co-sourced movers need a positive tie
    assert movers_admissible((5, 5), (1,))
    assert not movers_admissible((5, 5), (-1,))
    assert not movers_admissible((5, 5), (0,))
    # two movers from different modules can only swap: negative tie required
    assert movers_admissible((1, 4), (-1,))
    assert not movers_admissible((1, 4), (1,))
    # all-positive co-sourced triangle
    assert movers_admissible((2, 2, 2), (1, 1, 1))
    # co-sourced pair with a negative tie can never move atomically
    assert not movers_admissible((0, 0, 1), (-1, 1, 1))


def test_movers_admissible_matches_bruteforce_over_completions():
    from ccenum.scenarios import target_completions
    source_patterns = [(0, 0), (0, 1), (0, 0, 0), (0, 0, 1), (0, 1, 0),
                       (0, 1, 1), (0, 1, 2)]
    for src in source_patterns:
        k = len(src)
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        for vec in product((-1, 0, 1), repeat=len(pairs)):
            signs = dict(zip(pairs, vec))
            expect = any(admissible(src, tgt, signs)
                         for tgt in target_completions(src))
            assert movers_admissible(src, vec) == expect
