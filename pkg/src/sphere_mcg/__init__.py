"""Finite group actions on the marked sphere and their hyperelliptic lifts."""
from .classification import are_conjugate, class_table, conjugacy_invariant, count_classes
from .hyperelliptic import count_maximal_classes, lift_catalog, presentation_of, verify_lift
from .permgroup import GroupName, Permutation, PermGroup, are_isomorphic, construct, generate
from .sphere_actions import (
    ActionDescriptor,
    RotationType,
    enumerate_descriptors,
    is_maximal,
    maximal_extension,
    maximal_types,
    order_n_element_exists,
    realize,
)

__version__ = "0.1.0"
