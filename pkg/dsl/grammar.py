"""Grammar of .mono problem files.

    field 101;
    algebra A { vertex a; arrow x: a -> a; rel x.x; }
    quiver Q { vertices 4; arrow g: 4 -> 3; rel b1.g; }
    module M { dims = [2]; maps = {x = [[0, 0], [1, 0]]}; }
    rep X { at 3: M; at 2: module dims = [1]; map g = [[0], [1]]; }

Paths are written right to left: `a.b2.g` is g, then b2, then a.
"""

from lark import Lark

MONO_GRAMMAR = r"""
start: statement*

?statement: field_stmt
          | algebra_block
          | quiver_block
          | module_block
          | rep_block

field_stmt: "field" (INT | NAME) ";"?

algebra_block: "algebra" NAME "{" graph_item* "}"
quiver_block: "quiver" NAME "{" graph_item* "}"

?graph_item: "vertex" vertex ("," vertex)* ";"      -> vertex_decl
           | "vertices" INT ";"                      -> vertex_count
           | "arrow" NAME ":" vertex "->" vertex ";" -> arrow_decl
           | "rel" path ";"                          -> rel_decl

module_block: "module" NAME "{" (module_field ";"?)* "}"

?module_field: "dims" "=" vector   -> dims_field
             | "maps" "=" map_dict -> maps_field

rep_block: "rep" NAME "{" rep_item* "}"

?rep_item: "at" vertex ":" branch ";"  -> branch_item
         | "map" NAME "=" matrix ";"   -> map_item

?branch: "module" module_field+      -> inline_module
       | NAME ("+" NAME)*            -> module_sum

path: NAME ("." NAME)*
vertex: INT | NAME

map_dict: "{" [map_entry ("," map_entry)*] "}"
map_entry: NAME "=" matrix

vector: "[" [INT ("," INT)*] "]"
matrix: "[" [row ("," row)*] "]"
row: "[" [number ("," number)*] "]"
number: SIGNED_INT ("/" INT)?

NAME: /[A-Za-z_][A-Za-z_0-9']*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

mono_parser = Lark(MONO_GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=True)
