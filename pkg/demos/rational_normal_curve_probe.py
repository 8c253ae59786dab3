"""Random double points on rational normal curves never drop rank."""
from terracini.constructions import probe_emptiness

for dp in range(2, 8):
    row = []
    for k in range(1, dp + 1):
        r = probe_emptiness("rnc", dp, k, 30, seed=1)
        row.append(f"{k}:{r.max_rank}")
        assert r.members_found == 0
    print(f"d'={dp}", " ".join(row))
