"""
jump index: jump levels, reachable levels & reachability matrices

functions:
    - build_index              -- compute the full jump index of a trimmed DAG
    - jump                     -- jump set of a level set
    - compute_jump_levels      -- jump level of every vertex
    - compute_reachable_levels -- per-level set of jump levels (Rlevel)
    - compute_reach_matrices   -- Reach(i, j) for j in Rlevel(i), j > i
    - compute_alphabets        -- per-level set of markers on present marker edges
    - index_size               -- bytes of {dag bitmap, jump function, matrices}

    - jump_level -- jump level of one vertex
    - reach_step -- Reach(i, i + 1)

Jump levels are stored per level as ascending (jump level, vertex bitset) groups.
Matrix rows/columns number the present vertices of a level in ascending state order.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import logging

from typing import NamedTuple

from enspan.builder import (MappingDag, LevelSet, eps_sources, eps_targets, gather, level_mask)
from enspan.matrix import BoolMatrix, bool_matrix_multiply, from_rows, select_rows
from enspan.utils import iter_bits, compress, expand


logger = logging.getLogger(__name__)


Groups = tuple[tuple[int, int], ...]


class JumpIndex(NamedTuple):
    levels: tuple[int, ...]
    jl: tuple[Groups, ...]
    rlevel: tuple[tuple[int, ...], ...]
    reach: dict[tuple[int, int], BoolMatrix]
    alphabets: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.levels)


def build_index(dag: MappingDag) -> JumpIndex:
    """
    compute jump levels, reachable levels, reachability matrices & level alphabets
    :param dag: trimmed DAG
    :type dag: MappingDag
    :return: index
    :rtype: JumpIndex
    """
    assert dag.trimmed, "jump index requires a trimmed DAG"

    jl = compute_jump_levels(dag)
    rlevel = compute_reachable_levels(dag, jl)
    reach = compute_reach_matrices(dag, rlevel)
    index = JumpIndex(dag.levels, jl, rlevel, reach, compute_alphabets(dag))

    logger.debug("jump index: %d matrices, sizes (dag, jump, matrices) = %s",
                 len(reach), index_size(dag, index))
    return index


def compute_jump_levels(dag: MappingDag) -> tuple[Groups, ...]:
    """
    jump levels by a backward sweep: JL(v) = level(v) if v has a non-∅ marker edge,
    otherwise the minimum JL over its ε/∅-successors; JL(v_f) = n + 1
    :param dag: trimmed DAG
    :type dag: MappingDag
    :return: per level (0..n) ascending (jump level, vertex bitset) groups
    :rtype: tuple[tuple[tuple[int, int], ...], ...]
    """
    tables = dag.tables
    size = len(dag.document)
    result: list[Groups] = [()] * (size + 1)
    following: Groups = ((dag.depth, 1),)

    for level in range(size, -1, -1):
        present = dag.levels[level]
        if not present:
            following = ()
            continue

        base: dict[int, int] = {}

        # marker-bearing vertices jump to their own level
        marked = 0
        for state in iter_bits(present):
            if tables.labeled[state] & present:
                marked |= 1 << state
        if marked:
            base[level] = marked

        # ε-edges: smallest successor jump level wins
        remaining = present & ~marked
        for target, members in following:
            if not remaining:
                break
            hit = remaining & eps_sources(dag, level, members)
            if hit:
                base[target] = base.get(target, 0) | hit
                remaining &= ~hit

        # ∅-edges within the level
        groups = []
        assigned = 0
        for target in sorted(base):
            hit = present & ~assigned & gather(tables.rev_empty_closure, base[target])
            if hit:
                groups.append((target, hit))
                assigned |= hit

        assert assigned == present, f"vertex without jump level at level {level}"
        result[level] = following = tuple(groups)

    return tuple(result)


def jump_level(index: JumpIndex, level: int, state: int) -> int:
    """ jump level of vertex (state, level) """
    if level == index.depth:
        return level
    for target, members in index.jl[level]:
        if members >> state & 1:
            return target
    raise KeyError(f"vertex ({state}, {level}) not present")


def compute_reachable_levels(dag: MappingDag, jl: tuple[Groups, ...]) -> tuple[tuple[int, ...], ...]:
    """
    Rlevel(i) = {JL(v) | level(v) = i}
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param jl: jump level groups
    :type jl: tuple[tuple[tuple[int, int], ...], ...]
    :return: per level ascending jump levels
    :rtype: tuple[tuple[int, ...], ...]
    """
    assert len(jl) == len(dag.levels)
    return tuple(tuple(target for target, _ in groups) for groups in jl)


def reach_step(dag: MappingDag, level: int) -> BoolMatrix:
    """
    Reach(i, i + 1): ∅-edges within level i followed by one ε-edge
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param level: level i
    :type level: int
    :return: matrix over present vertices of levels i & i + 1
    :rtype: BoolMatrix
    """
    present = dag.levels[level]
    following = level_mask(dag, level + 1)
    rows = []
    for state in iter_bits(present):
        sources = present & dag.tables.empty_closure[state]
        rows.append(compress(eps_targets(dag, level, sources), following))
    return from_rows(rows, following.bit_count())


def compute_reach_matrices(dag: MappingDag, rlevel: tuple[tuple[int, ...], ...]) -> dict[tuple[int, int], BoolMatrix]:
    """
    Reach(i, j) for j in Rlevel(i), j > i, in decreasing i:
    Reach(i, j) = Reach(i, i + 1) x Reach(i + 1, j)
    :param dag: trimmed DAG
    :type dag: MappingDag
    :param rlevel: reachable levels
    :type rlevel: tuple[tuple[int, ...], ...]
    :return: matrices by (i, j)
    :rtype: dict[tuple[int, int], BoolMatrix]
    """
    reach: dict[tuple[int, int], BoolMatrix] = {}

    for level in range(len(dag.levels) - 1, -1, -1):
        targets = [target for target in rlevel[level] if target > level]
        if not targets:
            continue

        step = reach_step(dag, level)
        for target in targets:
            if target == level + 1:
                reach[(level, target)] = step
            else:
                right = reach.get((level + 1, target))
                assert right is not None, f"missing Reach({level + 1}, {target})"
                reach[(level, target)] = bool_matrix_multiply(step, right)

    return reach


def compute_alphabets(dag: MappingDag) -> tuple[int, ...]:
    """ per level: bitset of markers occurring on marker edges between present vertices """
    alphabets = []
    for present in dag.levels:
        markers = 0
        for state in iter_bits(present):
            for label, target in dag.tables.outgoing[state]:
                if present >> target & 1:
                    for marker in label:
                        markers |= 1 << marker
        alphabets.append(markers)
    return tuple(alphabets)


def jump(index: JumpIndex, lam: LevelSet) -> LevelSet:
    """
    jump set: if some vertex of `lam` has a non-∅ marker edge, `lam` itself;
    otherwise the vertices at the minimal jump level j reached from `lam` by ε/∅ paths ending with ε
    :param index: jump index
    :type index: JumpIndex
    :param lam: level set
    :type lam: LevelSet
    :return: level set
    :rtype: LevelSet
    """
    level, members = lam
    if level == index.depth:
        return lam

    target = next(target for target, group in index.jl[level] if group & members)
    if target == level:
        return lam

    row = select_rows(index.reach[(level, target)], compress(members, index.levels[level]))
    universe = 1 if target == index.depth else index.levels[target]
    result = expand(row, universe)

    assert result, "empty jump set"
    return LevelSet(target, result)


def index_size(dag: MappingDag, index: JumpIndex) -> tuple[int, int, int]:
    """
    index sizes in bytes: word-padded presence bitmap (v_f level included),
    jump-level groups (a 64-bit level plus a word-padded bitset each), matrices
    :param dag: DAG
    :type dag: MappingDag
    :param index: jump index
    :type index: JumpIndex
    :return: dag bytes, jump bytes, matrix bytes
    :rtype: tuple[int, int, int]
    """
    words = max(1, -(-dag.tables.automaton.num_states // 64))
    dag_bytes = (dag.depth + 1) * words * 8
    jump_bytes = sum(len(groups) for groups in index.jl) * (8 + words * 8)
    matrix_bytes = sum(matrix.nbytes for matrix in index.reach.values())
    return dag_bytes, jump_bytes, matrix_bytes
