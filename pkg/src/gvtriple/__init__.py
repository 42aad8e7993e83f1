"""Godbillon-Vey cocycle toolkit.

Implements, for a discrete group of orientation-preserving circle
diffeomorphisms acting on the transversal V = S^1:

- an exact blade-indexed Clifford/exterior algebra engine (``clifford``),
- jet-exact diffeomorphism groups and the log-derivative cocycle (``diffeo``),
- the action groupoid with its modular data Delta, theta, delta (``holonomy``),
- exact rational exterior calculus in jet coordinates u0..u3 (``jetforms``),
- the crossed-product convolution calculus with traces, the multiplication
  operator B = e^c eta and the derivation delta_1 (``convalg``),
- three Godbillon-Vey cocycle evaluators and their axiom checks (``cocycles``),
- a config-driven verification CLI (``cli``).
"""

__version__ = "0.1.0"
