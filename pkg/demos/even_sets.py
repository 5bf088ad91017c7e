"""The even-set codes, minimal lattices for m curves, and alternative even sets."""
from collections import Counter

from k3covers import covers as cv
from k3covers import evensets as es


def main():
    for cid in es.CODE_IDS:
        code = es.code_of(cid)
        weights = Counter(es.weight(w) for w in es.codewords(code))
        L = es.lattice_from_code(code, cid)
        print(f"{cid:6s} m={code.m:2d} dim={code.dimension} weights={dict(sorted(weights.items()))} det={L.det}")

    print()
    for m in range(6, 17):
        print(f"m={m:2d}:", ", ".join(o.name for o in es.minimal_primitive_options(m)))

    print("\nalternative even sets on L_13^(2):")
    for d in cv.alternative_even_sets(13, 2):
        print(f"  genus {d.genus} curve {d.expression} with {d.size} rational curves (verified: {d.verified})")


if __name__ == "__main__":
    main()
