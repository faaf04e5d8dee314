"""
diskernel - executable type-two computability on Baire space

Modules:
    baire_core    words, streams, pairings, interleavings
    phi_machine   monotone machines, names, eval_name and U
    smn_rec       smn transformer and the recursion theorems
    problems      three-valued problem oracles and the catalog
    reductions    reduction witnesses, verification and compilers
    games         Wadge, Lipschitz and Gale-Stewart engines
    strategies    stock strategies and the strategy-spec parser
"""

__version__ = "0.1.0"
