# The commutative mirror: Poisson brackets on a chain of torus phase spaces.
#
# Each site carries angles (q_x, p_x) with {q, p} = 1; observables are
# finite Fourier series, and brackets are exact on coefficients.  Cyclic
# averages Poisson-commute with local probes at rate exactly 1/N, and
# sequences pushed past the volume ("tail" observables, depending only on
# sites beyond every window) bracket to exactly zero with anything local --
# the bracket-decay face of tail measurability.

import spintail.classical as cl

f = cl.cos_q(1)
g = cl.cos_p(1)
bracket = cl.poisson_bracket(f, g)
print("{cos q1, cos p1} has coefficients of sin q1 sin p1:")
for key, c in sorted(bracket.coeffs.items()):
    print(f"  {key}: {c.real:+.2f}")

print("\ncyclic average of cos q1 against the probe cos p1:")
seq = cl.ClassicalCyclicAverage(f)
rep = cl.bracket_decay_test(seq, g, [2, 4, 8, 16, 32, 64])
for p in rep.points:
    print(f"  N={p.n:>2}: l1 bound {p.value:.6f}  (N * value = {p.value * p.n:.12f})")
print(f"  exponent {rep.fitted_exponent:+.4f}, classification {rep.classification}")

print("\nthe same observable pushed past every volume:")
tail = cl.tail_sequence(cl.cos_q(1) * cl.cos_p(2))
for n in (3, 5, 9):
    out = tail.eval(n)
    z = cl.poisson_bracket(out, g)
    print(f"  N={n}: support -> {out.support}, bracket with cos p1 is "
          f"{'exactly zero' if z.is_zero else 'NONZERO'}")

lower, upper = cl.sup_norm_bounds(cl.sin_q(1) * cl.sin_p(1))
print(f"\nsup-norm enclosure of sin q1 sin p1: [{lower:.4f}, {upper:.4f}]")
