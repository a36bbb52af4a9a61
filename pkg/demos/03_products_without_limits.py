# Sitewise product observables whose expectations never settle.
#
# Fill every site with the same unitary factor (or alternate factors by
# parity, or by blocks of growing length) and take expectations in a
# translation-invariant product state.  The value at volume N is a product
# of N one-site traces, so unless each trace is 0 or has modulus 1 it
# oscillates or dies -- no limit exists along the growing volumes even
# though every norm equals 1.

import numpy as np

import spintail as st

rho = 0.5 * (np.eye(2) - st.pauli(1))  # one-site state with tr(rho sx) = -1
state = st.product_state(rho)

uniform = st.UniformProduct(st.pauli(1))
parity = st.ParityProduct(st.pauli(1), st.pauli(3))
blocks = st.BlockProduct(st.pauli(1), st.pauli(3))

print("norms stay 1 while expectations refuse to converge:")
print(f"{'N':>3} {'||a_N||':>8} {'uniform':>9} {'parity':>9} {'blocks':>9}")
for n in range(1, 13):
    nrm = st.norm(uniform.eval(n), n).value
    vals = [
        st.expectation(state, seq.eval(n), n).real
        for seq in (uniform, parity, blocks)
    ]
    print(f"{n:>3} {nrm:>8.3f} {vals[0]:>+9.4f} {vals[1]:>+9.4f} {vals[2]:>+9.4f}")

print("\nuniform alternates as (-1)^N exactly; the block pattern drifts with")
print("its partition [1][2,3][4,5,6]...: growing stretches of one factor.")
