"""Print the operation-count comparison table next to the model's values."""

from constaq.decoder import TABLE1, op_counts


def main():
    print(f"{'q':>4} {'n':>4} {'t':>3} {'classical':>18} {'model':>7} {'spectral':>16} {'model':>7}")
    for r in TABLE1:
        c, s = r.model_values()
        flag = "" if (c, s) == (r.classical, r.spectral) else "  <- differs"
        print(f"{r.field_order:>4} {r.n:>4} {r.t:>3} {r.classical_kind:>11}={r.classical:<6} {c:>7}"
              f" {r.spectral_kind:>10}={r.spectral:<5} {s:>7}{flag}")
    last = TABLE1[-1]
    print(f"{last.classical_kind} at n={last.n}, t=75: {op_counts(last.n, 75).o_syn_mult}")


if __name__ == "__main__":
    main()
