"""Walk through the edge+triangle model: a formula can be true, false, or
have no value at all at a point."""

from simpepist import eval3, gallery, parse

m = gallery.edge_triangle()
print(m)
edge, triangle = sorted(gallery.EDGE_X), sorted(gallery.TRIANGLE_Y)

# On the edge only a and b are alive, so facts about c have no value there
for text in ["p_b & ~p_a", "p_c", "~p_c", "p_c | ~p_c", "p_b | ~p_b"]:
    print(f"{str(edge):22} {text:28} {eval3(m, edge, parse(text))}")

# a cannot tell the edge from the triangle, and on the triangle p_c holds
for text in ["<a> p_c", "[a] p_c", "[a] p_c -> p_c"]:
    print(f"{str(edge):22} {text:28} {eval3(m, edge, parse(text))}")

print(f"{str(triangle):22} {'[b] p_c':28} {eval3(m, triangle, parse('[b] p_c'))}")

# lower faces are points too: the a-vertex alone
print(f"{str(['a0']):22} {'~p_a':28} {eval3(m, ['a0'], parse('~p_a'))}")
