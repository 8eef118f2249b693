#!/usr/bin/env python3
"""Walk through the core surprise: a hypothetical superposition oracle turns a
linearly DEPENDENT state triple into a linearly INDEPENDENT one.

We build the triple {psi, psi_perp, a*psi + b*psi_perp} (rank 2 by
construction), superpose each member with a common orthogonal partner state,
and certify the rank of the result.
"""

import math

import numpy as np

from nogosuper import linalg, pipeline
from nogosuper.superposer import AlwaysSucceed, ConstantPhase, SuperposerConfig

SQ2 = 1.0 / math.sqrt(2.0)

params = pipeline.standard_params(a=SQ2, b=SQ2, dim=3)
inputs = pipeline.build_counterexample(params)

print("Input triple (columns):")
print(np.round(inputs.amplitude_matrix(), 4))
input_rank = linalg.numerical_rank(inputs.gram(), 1e-9)
print(f"\nInput Gram rank: {input_rank.rank}  (singular values "
      f"{np.round(input_rank.singular_values, 6)})")
print("-> dependent, as expected: the third state lives in the span of the "
      "first two.\n")

cfg = SuperposerConfig(
    alpha=SQ2, beta=SQ2,
    phase_policy=ConstantPhase(0.0),
    success_policy=AlwaysSucceed(),
)
outputs, phases = pipeline.apply_superposer_to_set(cfg, params)
print("Superposer outputs (each input superposed with phi = e3):")
print(np.round(outputs.amplitude_matrix(), 4))

cert = pipeline.certify_independence(outputs)
print(f"\nOutput Gram rank: {cert.gram_rank.rank}")
print(f"Independent: {cert.independent}")
print(f"Gram determinant ~ "
      f"{np.prod(cert.gram_rank.singular_values):.4f} (nonzero)")
print("\nA device that did this would turn an impossible discrimination "
      "problem into a possible one -- which is why no such device can exist.")
