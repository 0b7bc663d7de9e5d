"""symcount: desk-scale calculators for symplectic topology bookkeeping.

Subpackages cover symplectic path indices, moduli dimension formulas,
Lagrangian capacities, enumerative intersection counts, relative
homology class enumeration for the exotic torus in the projective plane,
stable-tree combinatorics, and explicit holomorphic cylinders in the
cotangent bundle of a flat torus.
"""

__version__ = "0.1.0"
