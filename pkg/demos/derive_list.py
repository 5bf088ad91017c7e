"""Re-derive the admissible overlattices of L_n^(1) by enumeration."""
import sys

from k3covers import k3lattices as k3


def main(n=13):
    trace = k3.derive_candidate_trace(n)
    c = trace.census
    print(f"n = {n}: {c.classes} vectors beta, {c.distinct} after w ~ d - w, "
          f"{c.valid_glue} valid glue, {c.admissible} of weight 8 or 16")
    for a, note in trace.c_divisors:
        print(f"  c divisible by {a}: {note}")
    for rec in trace.records:
        verdict = "survives" if rec.survives else "; ".join(rec.reasons)
        print(f"  {rec.describe():50s} length {rec.length}  {verdict}")
    print("derived:", k3.derive_candidate_list(n).ids())
    print("listed: ", k3.ns_candidates(n).ids())


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 13)
