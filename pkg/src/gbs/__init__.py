"""Exact algorithms for generalised Baumslag-Solitar groups.

Graphs and moves live in :mod:`gbs.graph` and :mod:`gbs.moves`; finite
covers and normal forms of subgroups of ``G^d_{1,n}`` in
:mod:`gbs.covering` and :mod:`gbs.normalform`; isomorphism and
commensurability decisions in :mod:`gbs.iso` and
:mod:`gbs.commensurability`.
"""
from .commensurability import CommVerdict, bs_normalize, check_certificate, commensurable, witness
from .covering import CoveringGraph, covering_from_permutations, gamma_k, lift_labels, standard_subgroup
from .graph import Edge, GbsGraph, OrientedEdge, betti_number, is_reduced, sign_normalize, validate
from .iso import char_vector, cyclic_equal, dual_graph, iso_normal_forms, iso_subgroups
from .modular import modular_image, primitive_base
from .moves import apply, legal_moves, random_deform
from .normalform import NormalForm, collapse_to_bouquet, euclid_slide_pair, normal_form_of_cover

__version__ = "0.1.0"

__all__ = [
    "CommVerdict", "bs_normalize", "check_certificate", "commensurable", "witness",
    "CoveringGraph", "covering_from_permutations", "gamma_k", "lift_labels", "standard_subgroup",
    "Edge", "GbsGraph", "OrientedEdge", "betti_number", "is_reduced", "sign_normalize", "validate",
    "char_vector", "cyclic_equal", "dual_graph", "iso_normal_forms", "iso_subgroups",
    "modular_image", "primitive_base",
    "apply", "legal_moves", "random_deform",
    "NormalForm", "collapse_to_bouquet", "euclid_slide_pair", "normal_form_of_cover",
]
