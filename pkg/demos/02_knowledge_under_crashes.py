"""The crash complex: a triangle vxz with edges where b or c has crashed.

Knowledge is read off the facets through an agent's vertex; facets where
the fact has no value are skipped rather than counted against it.
"""

from simpepist import eval3, gallery, parse

m = gallery.crash_complex()
print("facets through v:", [sorted(f) for f in m.star_facets({"v"})])

cases = [
    (["v", "x", "z"], "[a] p_c"),      # c is 1 wherever it is alive
    (["v", "x", "z"], "[a][b] p_c"),   # and b knows it wherever b's knowledge has a value
    (["v"], "[a] p_c"),                # also at the bare vertex
    (["v", "u"], "[b] p_c"),           # b sees only facets without c
    (["v", "w"], "[b] p_c"),           # b is dead here
]
for point, text in cases:
    print(f"{str(point):18} {text:14} {eval3(m, point, parse(text))}")

# stacked knowledge: a lone b-vertex v joined to two triangles through c-edges
s = gallery.stacked_knowledge()
for text in ["[b][c] p_a", "[c] p_a", "[b] p_a", "p_a"]:
    print(f"{'[v]':18} {text:14} {eval3(s, ['v'], parse(text))}")
