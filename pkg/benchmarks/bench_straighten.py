"""Compare the compiled and pure-Python straightening kernels.

    python3 benchmarks/bench_straighten.py [--repeat 5] [--degree 4]

Each run builds a fresh straightener (so the memo cache starts cold) and
multiplies a fixed list of random PBW elements pairwise.
"""

import argparse
import random
import timeit
from fractions import Fraction

from superdixmier import catalogue, kernel
from superdixmier.pbw import monomial, monomials, zero


def workload(name, degree, count, rng):
    alg, _ = catalogue.load(name)
    monos = monomials(alg, degree)
    elems = []
    for _ in range(count):
        u = zero(alg)
        for m in rng.sample(monos, min(4, len(monos))):
            u = u + monomial(alg, m, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        elems.append(u.terms)
    n = alg.dim
    structure = [[alg.structure(i, j) for j in range(n)] for i in range(n)]
    return alg, structure, elems


def run(cls, alg, structure, elems):
    s = cls(alg.parities, structure)
    for a in elems:
        for b in elems:
            s.multiply(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--count", type=int, default=12)
    ap.add_argument("--algebras", default="h5,h3c2,model13,filiform4,mixed32")
    args = ap.parse_args()
    if kernel.CStraightener is None:
        print("compiled extension not built; only the pure-Python kernel is available")
    rng = random.Random(0)
    print("%-10s %12s %12s %8s" % ("algebra", "python [s]", "cython [s]", "speedup"))
    for name in args.algebras.split(","):
        alg, structure, elems = workload(name, args.degree, args.count, rng)
        ref = kernel.PyStraightener(alg.parities, structure)
        times = {}
        for label, cls in (("python", kernel.PyStraightener), ("cython", kernel.CStraightener)):
            if cls is None:
                continue
            other = cls(alg.parities, structure)
            assert all(other.multiply(a, b) == ref.multiply(a, b) for a in elems[:3] for b in elems[:3])
            times[label] = min(timeit.repeat(lambda: run(cls, alg, structure, elems), number=1,
                                             repeat=args.repeat))
        py, cy = times["python"], times.get("cython")
        print("%-10s %12.4f %12s %8s" % (name, py, "%.4f" % cy if cy else "-",
                                         "%.2fx" % (py / cy) if cy else "-"))


if __name__ == "__main__":
    main()
