"""Smoke test for the compiled extension: python python/smoke_test.py"""

import kindep

d = kindep.DegreeSequence([1, 2, 2, 4, 4, 5, 6])
assert len(d) == 7 and d.sum == 24 and d.max == 6
assert d.is_graphical() and not d.is_trivial(3)
assert d.sigma() == [7, 7, 6, 4, 4, 2, 1]
assert str(d) == "{1,2,2,4,4,5,6}"
assert kindep.DegreeSequence.parse("6,5,4,4,2,2,1") == d

assert kindep.decrement_sequence(d, 3) == [5, 4, 4, 4, 1, 2, 1, 2, 1, 3, 2, 1, 3, 2, 1, 3, 2, 1]
assert kindep.omega(d, 3).values() == [0, 1, 2, 3, 3, 3]
assert [s.values() for s in kindep.omega_chain(d, 3)][-1] == [0, 0, 0, 0]
assert kindep.b(d, 3) == 4
assert kindep.b([0, 0], 1) == 2

assert kindep.precedes([0, 0, 3, 3, 3, 3], [0, 1, 2, 3, 3, 3], 3)
assert [p.values() for p in kindep.pseudo_reductions([2, 2, 2], 1)] == [[1, 1]]

n, edges, script = kindep.construct_worst_case(d, 3)
assert len(kindep.max_run(n, edges, 3, script)) == 4
assert kindep.max_worst_case(n, edges, 3)[0] == 4

assert kindep.schonheim(50, 14) == 15
assert kindep.covering_lower_bound(50, 14, start=16) == 17
assert kindep.alpha_k_min_loops([1, 3, 3, 3, 4], 3) == 2

try:
    kindep.b([5], 3)
except ValueError as e:
    assert "not graphical" in str(e)
else:
    raise AssertionError("odd sum accepted")

try:
    kindep.precedes([0] * 10, [0] * 10, 1)
except kindep.LimitExceeded:
    pass
else:
    raise AssertionError("size guard not raised")

print("ok")
