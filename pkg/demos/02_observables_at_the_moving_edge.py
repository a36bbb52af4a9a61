# Two observables walking off to infinity.
#
# Place a fixed single-site operator at the rightmost site of each volume.
# Any fixed local probe is eventually left behind, so the commutator with it
# becomes exactly zero -- the sequence asymptotically commutes with
# everything local.  But two such sequences ride the same moving site, and
# their mutual commutator never decays: the norm trace is the constant
# one-site commutator norm.  Asymptotic locality does not force asymptotic
# commutativity.

import spintail as st

a = st.TranslatedToInfinity(st.pauli(1))
c = st.TranslatedToInfinity(st.pauli(3))
schedule = list(range(2, 15))

print("each sequence against a fixed probe at site 2:")
probe = st.pauli_at(3, 2)
for seq, name in ((a, "sx@N"), (c, "sz@N")):
    res = st.commutant_membership(seq, [(name, probe)], schedule)[0]
    values = [p.value for p in res.report.points]
    print(f"  [{name}, sz@2] trace: {values[:4]} ... -> {res.report.classification}")

print("\nthe two sequences against each other:")
rep = st.mutual_commutator_trace(a, c, schedule)
for p in rep.points[:5]:
    print(f"  N={p.n:>2}: ||[sx@N, sz@N]|| = {p.value:.12f}")
print(f"  ... constant at every N (reference ||[sx, sz]|| = 2): "
      f"{rep.classification}")
