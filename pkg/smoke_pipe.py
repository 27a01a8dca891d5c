import json
import time

from padictori.hunt import (
    TorusCurveSpec, run_pipeline, DependentFunctions,
)


def mkspec(fns, p, N, B, M, g=0, d=3):
    return TorusCurveSpec(
        prime=p, precision=N, bound_b=B, bound_m=M,
        genus=g, boundary_degree=d,
        rational=tuple((tuple(a), tuple(b)) for a, b in fns),
    )


FNS = [((0, 1), (1,)), ((1, -1), (1,)), ((1, 1), (1,))]

t0 = time.time()
rep = run_pipeline(mkspec(FNS, 7, 10, 1, 6))
print(f"pipeline B=1 M=6 in {time.time()-t0:.1f}s")
for s in rep.stages:
    print(f"  [{s.status}] {s.name}")
print("certs:", len(rep.certificates))
print("envelope keys:", sorted(rep.envelope))
print()
print(rep.render_text()[:1500])
print()

# f2 = f1^2 must raise DependentFunctions
DEP = [((0, 1), (1,)), ((0, 0, 1), (1,)), ((1, 1), (1,))]
try:
    run_pipeline(mkspec(DEP, 7, 8, 1, 2))
    print("DEP: NO ERROR (bad)")
except DependentFunctions as e:
    print("DEP: DependentFunctions ok:", e)

# p < 2g+d: bound stage must carry validity false
rep2 = run_pipeline(mkspec(FNS, 7, 8, 1, 1, g=3, d=3))
bs = [s for s in rep2.stages if "bound" in s.name]
print("small-p bound stages:", [(s.name, s.status, s.payload) for s in bs])

# JSON round trip sanity
d = rep.to_dict()
json.dumps(d)
print("json ok, stages:", [s["name"] for s in d["stages"]])
