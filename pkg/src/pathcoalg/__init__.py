"""Exact-arithmetic toolkit for pointed path coalgebras and a four-parameter
family of pointed Hopf algebras on folded grid quivers.

Modules:
    scalar     -- cyclotomic field arithmetic (the coefficient field)
    quiver     -- quiver combinatorics, grid quivers, Dynkin/Euclidean classification
    coalgebra  -- finite-dimensional subcoalgebras of path coalgebras, coverings, duals
    hopf       -- the Hopf algebras B^{m,n}(lambda,s,t,k) and their truncations
    comodules  -- finite-dimensional comodules, indecomposables, discreteness
    classify   -- isomorphism testing, canonical forms, automorphism groups
    cli        -- command-line interface
"""

__version__ = "0.1.0"
