"""
Marked networks and their cycles
================================

A marked network is a directed multigraph whose edges carry a positive
gain ``alpha`` and an offset ``c``. Some nodes are marked with fixed
values. Each edge ``v -> w`` stands for the inequality
``alpha * x_w + c <= x_v``.
"""

from markednet import classify_network, dump_network, opposite, paper_example, parse_network, validate

# Networks are written in a small line-oriented format.
text = """
# two unmarked nodes below a marked node a
node v
node w
marked a = 2
edge v -> w alpha=1/2
edge v -> w c=-1
edge w -> v alpha=1/2
edge a -> v
"""
net = parse_network(text)
assert net == paper_example("quad")
print(dump_network(net))

# The cycle class decides which maps are invertible. This network has two
# elementary cycles, each with weight below one, so it is gainy.
report = validate(net)
for cycle in report.cycle_class.cycles:
    print("cycle", cycle.edges, "weight", cycle.weight, cycle.kind)
print("class:", report.cycle_class.kind)

# The opposite network reverses every edge and inverts the gains, so a
# gainy network turns into a lossy one and back again.
op = opposite(net)
print("opposite class:", classify_network(op).kind)
assert opposite(op) == net

# The kite is lossy, so its transfer map cannot be inverted.
print("kite:", classify_network(paper_example("kite")).kind)
