import time

from padictori.hunt import (
    TorusCurveSpec, relation_solve, padic_rank_filter, classify_ramification,
    PrecisionExhausted,
)
from padictori.qpolys import Fraction


def mkspec(fns, p, N, B, M):
    return TorusCurveSpec(
        prime=p, precision=N, bound_b=B, bound_m=M,
        genus=0, boundary_degree=3,
        rational=tuple((tuple(a), tuple(b)) for a, b in fns),
    )


FNS = [((0, 1), (1,)), ((1, -1), (1,)), ((1, 1), (1,))]

t0 = time.time()
spec = mkspec(FNS, 7, 10, 1, 6)
certs = relation_solve(spec)
print(f"hunt B=1 M=6: {len(certs)} certs in {time.time()-t0:.1f}s")

phi6 = [c for c in certs if c.min_poly == (1, -1, 1)]
print("phi6 certs:", len(phi6))
v = padic_rank_filter(phi6[0], spec)
print("phi6 filter:", v.passed, "dir", v.direction, "route", v.route,
      "vals", v.log_valuations)

for N in (3, 5, 10):
    oks = [padic_rank_filter(c, spec, precision=N).passed for c in certs]
    print(f"N={N}: all {len(certs)} certs pass: {all(oks)}")

# t = 2: generic rational point, not in any rank-one subgroup: must FAIL
v2 = padic_rank_filter(2, spec)
print("t=2:", v2.passed, "certified", v2.fail_certified, "| note:", v2.notes[-1] if v2.notes else "")
assert v2.passed is False and v2.fail_certified is True, "t=2 must certified-fail"

# a couple more generic points for confidence
for t in (3, 5, Fraction(3, 2)):
    vv = padic_rank_filter(t, spec)
    print(f"t={t}:", vv.passed, "certified", vv.fail_certified)
    assert vv.passed is False, f"t={t} should fail"

try:
    padic_rank_filter(phi6[0], spec, precision=1)
    print("N=1: NO ERROR (bad)")
except PrecisionExhausted as e:
    print("N=1: PrecisionExhausted ok:", e)

print()
r1 = classify_ramification((1, -1, 1), p=7, precision=12, genus=0, boundary_degree=3)
print("t^2-t+1 @7: ramified?", r1.is_ramified, "| branches:",
      [(b.residue_degree, b.ramification_degrees, b.root_valuations) for b in r1.branches],
      "| bound", r1.bound, r1.bound_valid)
r2 = classify_ramification((-5, 0, 1), p=5, precision=12, genus=0, boundary_degree=3)
print("t^2-5 @5: ramified?", r2.is_ramified, "| branches:",
      [(b.residue_degree, b.ramification_degrees, b.root_valuations) for b in r2.branches],
      "| bound", r2.bound, r2.bound_valid)
r3 = classify_ramification((-3, 1), p=7, precision=12, genus=0, boundary_degree=3)
print("t-3 @7: ramified?", r3.is_ramified, "| branches:",
      [(b.residue_degree, b.ramification_degrees, b.root_valuations) for b in r3.branches])
print("done")
