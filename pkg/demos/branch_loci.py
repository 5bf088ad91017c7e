"""Classify a few branch configurations of double covers of a K3 surface."""
from k3covers import covers as cv

CONFIGS = [
    [0] * 8,
    [0] * 16,
    [1, 1],
    [1] + [0] * 4,
    [1, 1] + [0] * 8,
    [2] + [0] * 5,
    [5],
    [0] * 12,
]


def main():
    for genera in CONFIGS:
        rep = cv.classify_branch(genera)
        label = "{" + ",".join(map(str, genera)) + "}"
        if isinstance(rep, cv.Inadmissible):
            print(f"{label:30s} inadmissible ({rep.reason}): {rep.text}")
            continue
        x = rep.Xmin
        print(f"{label:30s} {rep.case:11s} kod {rep.kodaira:12s} X_min chi={x.chi} c1^2={x.c1sq} c2={x.c2}")

    print("\nfibres with four components of odd multiplicity:")
    for f in cv.unstable_fiber_types(2):
        print(f"  {f.name:5s} multiplicities {f.multiplicities} euler {f.euler}")

    sweep = list(cv.admissible_configs())
    bad = [r for r in sweep if not r.Xmin.noether_ok()]
    print(f"\n{len(sweep)} admissible configurations with n <= 17, g <= 20; Noether violations: {len(bad)}")


if __name__ == "__main__":
    main()
