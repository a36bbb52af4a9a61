# The half-chain pattern: global but not an average.
#
# Fill the right half of each volume with a fixed factor and pad the left
# half with identities.  Any fixed probe site is eventually swallowed by the
# identity prefix, so the sequence asymptotically commutes with every local
# observable.  Yet it keeps full-strength commutators with sequences riding
# the moving right edge -- another witness that the asymptotically-central
# observables form a genuinely non-commutative family.

import spintail as st

half = st.HalfChain(st.pauli(3))

print("pattern of the first volumes (1 = identity, z = sz):")
for n in range(1, 9):
    first = n - n // 2 + 1
    row = "".join("z" if x >= first else "1" for x in range(1, n + 1))
    print(f"  N={n}: {row}")

print("\ncommutator with a probe at site 3:")
probe = st.pauli_at(1, 3)
for n in range(3, 11):
    comm = st.sum_commutator(half.eval(n), probe.as_sum())
    val = st.norm(comm, n).value
    note = "zero by disjoint supports" if not comm.terms else "probe inside the filled half"
    print(f"  N={n:>2}: {val:.1f}   ({note})")

print("\nagainst the moving-edge sequence sx@N:")
edge = st.TranslatedToInfinity(st.pauli(1))
rep = st.mutual_commutator_trace(edge, half, list(range(1, 13)))
print("  trace:", [round(p.value, 6) for p in rep.points])
print(f"  classification: {rep.classification} (no decay)")
