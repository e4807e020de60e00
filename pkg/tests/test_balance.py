import random
from collections import defaultdict

import pytest

from qminor.balance import (check_balanced, check_q_balanced, configurations, exists_exponents,
                            ground_data, pi_between)
from qminor.cortege import Cortege
from qminor.experiments import corteges
from qminor.identities import IdentityTerm, QuadraticIdentity, dodgson, verify_on_graph
from qminor.matchings import CircularMatching, enumerate_feasible
from qminor.se_graph import grid

S1 = Cortege((1,), (1,), (2,), (2,))  # (i|j, i'|j')
S2 = Cortege((1,), (2,), (2,), (1,))  # (i|j', i'|j)
F13 = Cortege((1, 2), (1, 3), (1, 2), (2, 4))
F24 = F13.reversed()


def test_configurations():
    assert len(configurations([(S1, 0), (S2, 0)])) == 3
    assert configurations([]) == []
    assert len(configurations([(Cortege((1, 2), (1, 2), (1,), (1,)), 0)])) == 1


def test_pi_between():
    for M in enumerate_feasible(S1):
        assert pi_between(S1, S1, M) == ()
    M = CircularMatching(((("R", 1), ("R", 2)), (("C", 1), ("C", 2))))
    assert set(pi_between(S1, Cortege((1,), (2,), (2,), (1,)), M)) == {(("C", 1), ("C", 2))}
    N = CircularMatching(((("R", 1), ("C", 1)), (("R", 2), ("C", 2))))
    # with the RC matching the two corteges are not related by an exchange
    assert pi_between(S1, S2, N) is None


def test_subminor_pair_is_q_balanced():
    c = Cortege((1, 2, 3), (1, 2, 3), (2,), (3,))
    assert check_q_balanced([(c, 0)], [(c.reversed(), 0)]).verdict == "q-balanced"


@pytest.mark.parametrize("c", range(-3, 4))
def test_13_24_is_never_q_balanced(c):
    rep = check_q_balanced([(F13, 0)], [(F24, c)])
    assert not rep.ok
    assert rep.witness["pair"]["shifts"][0] != rep.witness["pair"]["shifts"][1]


def test_13_24_is_balanced_but_not_q():
    assert check_balanced([(F13, 0)], [(F24, 0)]).ok
    assert check_q_balanced([(F13, 0)], [(F24, 0)]).verdict == "balanced-but-not-q"


def test_dodgson_is_q_balanced():
    assert check_q_balanced(*dodgson((), 1, 2, (), 1, 2).canonical()).ok


def test_one_sided_family_is_unbalanced():
    assert check_balanced([(S1, 0)], []).verdict == "unbalanced"
    assert check_q_balanced([(S1, 0)], []).verdict == "unbalanced"


def test_inhomogeneous_family_is_rejected():
    with pytest.raises(ValueError):
        check_q_balanced([(S1, 0)], [(Cortege((1,), (1,), (3,), (2,)), 0)])


def test_exists_exponents():
    # flag minors [12], [13]: c = 1
    a = Cortege((1, 2), (1, 2), (1, 2), (1, 3))
    alpha, beta = exists_exponents([a], [a.reversed()])
    assert beta[0] - alpha[0] == 1
    assert exists_exponents([F13], [F24]) is None
    # single cortege each side, unique common matching
    c = Cortege((1, 2), (1, 3), (1,), (1,))
    assert len(enumerate_feasible(c)) == 1
    assert exists_exponents([c], [c.reversed()]) is not None


def families_by_ground(m, n):
    out = defaultdict(list)
    for c in corteges(m, n):
        out[ground_data(c)].append(c)
    return [v for v in out.values() if len(v) >= 2]


@pytest.mark.parametrize("m,n,seed", [(3, 3, 0), (3, 4, 1)])
def test_random_families_against_symbolic(m, n, seed):
    """The combinatorial verdict agrees with evaluation on the generic grid."""
    rng = random.Random(seed)
    g = grid(m, n)
    groups = families_by_ground(m, n)
    positives = 0
    for _ in range(25):
        group = rng.choice(groups)
        lhs = rng.sample(group, rng.randint(1, min(2, len(group))))
        rhs = rng.sample(group, rng.randint(1, min(2, len(group))))
        found = exists_exponents(lhs, rhs)
        if found is not None and rng.random() < 0.7:
            alpha, beta = found
        else:
            alpha = [rng.randint(-1, 1) for _ in lhs]
            beta = [rng.randint(-1, 1) for _ in rhs]
        fam_l, fam_r = list(zip(lhs, alpha)), list(zip(rhs, beta))
        verdict = check_q_balanced(fam_l, fam_r).ok
        identity = QuadraticIdentity(m, n, [IdentityTerm(c, 1, e) for c, e in fam_l],
                                     [IdentityTerm(c, 1, e) for c, e in fam_r])
        assert verdict == verify_on_graph(g, identity), identity.render()
        positives += verdict
    assert positives > 0
