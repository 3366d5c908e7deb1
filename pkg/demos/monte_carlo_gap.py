# Why the structural verdict needs a third value: a class whose rank
# certificate fails while every sampled member is solvable.  Sampling
# can expose such a gap but can never close it.

import numpy as np

from structfdi import (SamplerConfig, analyze_structured,
                       falsify_pattern_rank, monte_carlo_solvability,
                       parse_structured_system, sample_triple,
                       signature_matrix, signature_pattern)

triple = parse_structured_system("""
A:
0 0
0 0

L:
* *
0 *

C:
* *
* 0
""")

report = analyze_structured(triple)
print("verdict:", report.verdict.value, "| reasons:", list(report.reasons))

signature = signature_pattern(triple)
print("signature pattern:")
print(signature)

witness = falsify_pattern_rank(signature, 100, SamplerConfig(seed=0))
print("class-level rank fails; witness member of the signature class:")
print(witness)

print()
print("yet member-by-member the picture is different:")
cfg = SamplerConfig(seed=42)
summary = monte_carlo_solvability(triple, 1000, cfg)
print(f"  {summary.solvable_count}/{summary.n_samples} sampled members "
      "solvable, no witness found")

# the reason: for members of THIS class the signature determinant is a
# product of nonzero entries, so the rank-killing member of the
# signature pattern class is never realized by an actual system
dets = []
for k in range(1000):
    member = sample_triple(triple, cfg, index=k)
    dets.append(np.linalg.det(signature_matrix(member)))
dets = np.abs(dets)
print(f"  |det R| over the samples: min {dets.min():.3f}, "
      f"max {dets.max():.3f} (never near zero)")
print()
print("The certificate asks about every matrix fitting the signature")
print("pattern; the members only realize a correlated slice of them.")
print("Hence: Inconclusive, and the sampling summary stays evidence only.")
