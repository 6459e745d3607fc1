"""How many Pauli strings does a truncated operator need?

Diagonal operators in the coordinate basis stay polynomial (Q strings for x,
Q^d for a degree-d potential). Off-diagonal operators built without a Fourier
transform blow up: the shift matrix needs 2^Q - 1 strings and the Fock-basis
position operator needs Q * 2^(Q-1).
"""
import time

from qboson import (count_strings, decompose_tensorized, decompose_trace,
                    fock_x, shift_matrix, string_census)

print("Shift matrix S_Q (finite-difference kinetic kernel), open boundary:")
print(f"{'Q':>3} {'strings':>8} {'2^Q - 1':>8}   per-length census")
for q in range(1, 9):
    psum = decompose_tensorized(shift_matrix(q))
    census = string_census(psum)
    cell = ";".join(f"{l}:{census.by_length[l]}" for l in census.lengths())
    print(f"{q:>3} {count_strings(psum):>8} {2**q - 1:>8}   {cell}")

print("\nEvery string is X/Y only with an even number of Y letters, e.g. Q = 3:")
for term in decompose_tensorized(shift_matrix(3)):
    print(f"  {term.coefficient.real:+.4f} * {term.label()}")

# The two decomposition routes agree; the trace sweep is the oracle.
s3 = shift_matrix(3)
oracle = {(t.x_mask, t.z_mask): t.coefficient for t in decompose_trace(s3)}
fast = {(t.x_mask, t.z_mask): t.coefficient for t in decompose_tensorized(s3)}
agree = max(abs(oracle[k] - fast[k]) for k in oracle)
print(f"\ntrace vs tensorized on S_3: max coefficient difference = {agree:.2e}")

print("\nFock-basis position operator (tridiagonal with sqrt entries):")
print(f"{'Q':>3} {'Lambda':>7} {'strings':>8} {'Q*2^(Q-1)':>10} {'seconds':>8}")
for q in range(1, 15):
    start = time.monotonic()
    n = count_strings(decompose_tensorized(fock_x(1 << q)))
    dt = time.monotonic() - start
    print(f"{q:>3} {1 << q:>7} {n:>8} {q * 2**(q-1):>10} {dt:>8.2f}")
print("\nExponential in Q either way: the quartic-polynomial route with the")
print("Fourier transform avoids this entirely (see the Trotter demo).")
