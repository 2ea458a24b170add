"""From order 5 on, the two completions can disagree.

The bundled order-5 instance has a single missing pair at (1,5); the least
squares method fills it with 0.1705 while the eigenvalue method prefers
0.1798.  Cloning the second alternative carries the disagreement to every
higher order.
"""

from pcmcomplete import compare_completions, counterexample_of_order, lemma2_matrix

pcm = lemma2_matrix()
print(pcm.to_csv())

comparison = compare_completions(pcm, tolerance=1e-3)
print(f"max divergence {comparison.max_divergence:.4f} at {comparison.max_position}"
      f" -> coincide = {comparison.coincide}")

from pcmcomplete import ev_completion, llsm_completion

print(f"least squares fill: {llsm_completion(pcm).fill_value(1, 5):.4f}")
print(f"eigenvalue fill:    {ev_completion(pcm)[0].fill_value(1, 5):.4f}")

print("\ncloned counterexamples:")
for n in (6, 7, 8):
    c = compare_completions(counterexample_of_order(n), tolerance=1e-3)
    print(f"  order {n}: max divergence {c.max_divergence:.4f} at {c.max_position},"
          f" coincide = {c.coincide}")
