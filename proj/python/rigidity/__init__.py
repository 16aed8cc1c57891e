"""Lattice-level rigidity checks for finite groups of Lie type.

Labels are strings such as "A3", "E8", "2D4". Node numbers in returned
documents are 1-based.
"""

import json

from . import _rigidity
from ._rigidity import CapExceeded, derive_k, derive_k_checked, expand_labels, val2, weyl_order

__all__ = [
    "CapExceeded",
    "classify",
    "classify_setup",
    "derive_k",
    "derive_k_checked",
    "expand_labels",
    "root_system",
    "torus",
    "twisted_setup",
    "val2",
    "verify",
    "weyl_order",
    "witness_2dn",
    "witness_a1",
]


def root_system(label):
    return json.loads(_rigidity.root_system_json(label))


def twisted_setup(label):
    return json.loads(_rigidity.twisted_setup_json(label))


def torus(label, k):
    return json.loads(_rigidity.torus_json(label, k))


def verify(label, k, *, with_oracle=False, trace=False, samples=100_000, seed=0x5EED2B17):
    return json.loads(_rigidity.verify_json(label, k, with_oracle, trace, samples, seed))


def classify(label, k, *, samples=100_000, seed=0x5EED2B17):
    return json.loads(_rigidity.classify_json(label, k, samples, seed))


def classify_setup(q0, l, label):
    return json.loads(_rigidity.classify_setup_json(q0, l, label))


def witness_a1(k, r=None):
    return json.loads(_rigidity.witness_a1_json(k, r))


def witness_2dn(n, k, q=None):
    return json.loads(_rigidity.witness_2dn_json(n, k, q))
