# Full-rank certificates for whole pattern classes: build the forcing
# graph, run the color change rule, and compare the verdict against
# sampled members and a deliberate falsification attempt.

from structfdi import (SamplerConfig, build_graph, color_closure,
                       falsify_pattern_rank, image, parse_pattern,
                       pattern_full_col_rank, pattern_full_row_rank,
                       pattern_transpose, sample_member)

certified = parse_pattern("* ? *\n0 ? *\n")
print("certified 2x3 pattern:")
print(certified)

graph = build_graph(certified)
print("forcing graph: sure edges", sorted(graph.edges_star),
      "maybe edges", sorted(graph.edges_question))

closure = color_closure(graph)
print("forcing derivation:")
for step in closure.derivation:
    print(f"  round {step.round}: node {step.forcing} blackens {step.forced}")
print("black at fixpoint:", sorted(closure.black))
print("full row rank for the whole class:", pattern_full_row_rank(certified))

print()
print("500 sampled members, checking numeric row rank:")
cfg = SamplerConfig(seed=3)
ranks = [image(sample_member(certified, cfg, index=k)).dim for k in range(500)]
print("  minimum sampled rank:", min(ranks), "(rows = 2)")

print()
uncertified = parse_pattern("* ?\n* *\n")
print("uncertified 2x2 pattern:")
print(uncertified)
print("full column rank for the whole class:",
      pattern_full_col_rank(uncertified))
closure = color_closure(build_graph(pattern_transpose(uncertified)))
print("closure of the transposed graph is empty:", sorted(closure.black))

witness = falsify_pattern_rank(uncertified, 100, cfg)
print("falsifier found a rank-deficient member:")
print(witness)
print("its rank:", image(witness).dim)
print("Equal magnitudes are tried first on purpose: cancellation is the",
      "cheapest way a class loses rank.")
