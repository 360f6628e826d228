"""Writing problem files back out; parse_spec(print_spec(s)) rebuilds s."""

from algebra.modules import Module
from dsl.parser import SpecFile
from linalg.field import Field, Matrix, RationalField
from quiver.paths import Quiver
from representations.rep import LambdaRep, reps_equal

INDENT = "    "


def _matrix(f: Field, m: Matrix) -> str:
    rows = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in f.to_lists(m))
    return f"[{rows}]"


def _graph(kind: str, name: str, q: Quiver, relations: list[str]) -> list[str]:
    lines = [f"{kind} {name} {{"]
    n = len(q.vertices)
    if list(q.vertices) == list(range(1, n + 1)):
        lines.append(f"{INDENT}vertices {n};")
    else:
        lines.append(f"{INDENT}vertex {', '.join(str(v) for v in q.vertices)};")
    for a in q.arrows:
        lines.append(f"{INDENT}arrow {a.name}: {a.source} -> {a.target};")
    for r in relations:
        lines.append(f"{INDENT}rel {r};")
    lines.append("}")
    return lines


def _module_fields(m: Module, sep: str) -> str:
    f = m.field
    text = f"dims = [{', '.join(str(d) for d in m.dim_vector)}]"
    entries = [f"{a} = {_matrix(f, mat)}" for a, mat in m.maps.items() if mat.size]
    if entries:
        text += f"{sep}maps = {{{', '.join(entries)}}}"
    return text


def print_module(name: str, m: Module) -> str:
    return f"module {name} {{ {_module_fields(m, '; ')}; }}"


def print_rep(x: LambdaRep, name: str | None = None) -> str:
    """Branches as inline modules; arrow maps as k-matrices on the concatenated
    A-vertex components. Zero branches and zero maps are left out."""
    lam = x.algebra
    f = lam.field
    lines = [f"rep {name or x.name} {{"]
    for v in lam.quiver.vertices:
        b = x.branches[v]
        if b.total_dim:
            lines.append(f"{INDENT}at {v}: module {_module_fields(b, ' ')};")
    for a in lam.quiver.arrows:
        g = x.arrows[a.name]
        if g.is_zero():
            continue
        full = f.block_diag([g.blocks[u] for u in lam.base.vertices])
        lines.append(f"{INDENT}map {a.name} = {_matrix(f, full)};")
    lines.append("}")
    return "\n".join(lines)


def print_spec(spec: SpecFile) -> str:
    f = spec.field
    lines = [f"field {'rational' if isinstance(f, RationalField) else f.p};", ""]
    base = spec.base
    lines += _graph("algebra", spec.algebra_name, base.quiver, [g.written() for g in base.ideal.generators])
    lines.append("")
    lines += _graph("quiver", spec.quiver_name, spec.quiver, [g.written() for g in spec.bound.ideal.generators])
    if spec.modules:
        lines.append("")
        lines += [print_module(name, m) for name, m in spec.modules.items()]
    for name, x in spec.reps.items():
        lines.append("")
        lines.append(print_rep(x, name))
    return "\n".join(lines) + "\n"


def with_rep(spec: SpecFile, x: LambdaRep, name: str) -> SpecFile:
    """A copy of `spec` that also holds x under `name`."""
    reps = dict(spec.reps)
    reps[name] = x
    return SpecFile(spec.field, spec.algebra_name, spec.base, spec.quiver_name, spec.bound, spec.lam,
                    dict(spec.modules), reps, spec.text)


def _modules_equal(m: Module, n: Module) -> bool:
    return m.dims == n.dims and all(m.field.equal(m.maps[a], n.maps[a]) for a in m.maps)


def specs_equal(a: SpecFile, b: SpecFile) -> bool:
    """Same field, presentations, modules and reps (by name and content)."""
    if a.field.name != b.field.name:
        return False
    if a.base.quiver != b.base.quiver or a.base.ideal.generators != b.base.ideal.generators:
        return False
    if a.quiver != b.quiver or a.bound.ideal.generators != b.bound.ideal.generators:
        return False
    if a.modules.keys() != b.modules.keys() or a.reps.keys() != b.reps.keys():
        return False
    if not all(_modules_equal(a.modules[k], b.modules[k]) for k in a.modules):
        return False
    return all(reps_equal(a.reps[k], b.reps[k]) for k in a.reps)
