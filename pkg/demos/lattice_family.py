"""Build every L_n^(r) in the list and print its discriminant data."""
from k3covers import k3lattices as k3
from k3covers import lattice as lt


def main():
    print(f"{'lattice':10s} {'det':>10s}  {'group':38s} len  embedding")
    for n, r in k3.candidate_family():
        L = k3.build_Ln(n, r)
        group = "x".join(f"Z/{d}" for d in k3.group_invariants(L))
        status = k3.embedding_status(L).verdict
        print(f"L_{n}^({r}):".ljust(10), f"{L.det:>10d}  {group:38s} {lt.length(L):3d}  {status}")

    # L_13^(1) is not in the list: its discriminant group is too long
    print("L_13^(1):", k3.embedding_status(k3.build_Ln(13)).reason)


if __name__ == "__main__":
    main()
