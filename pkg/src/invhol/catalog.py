"""Named desk-scale structures used by tests, docs and the CLI."""

from . import core
from .core import SemilatticeOfGroupsSpec


def klein_four():
    return core.direct_product(core.cyclic_group(2), core.cyclic_group(2))


def two_chain_clifford():
    """Z_2 over a 2-chain linked by the identity map: 4 elements."""
    spec = SemilatticeOfGroupsSpec(
        leq=[[True, False], [True, True]],
        group_tables=[[[0, 1], [1, 0]], [[0, 1], [1, 0]]],
        linking={(0, 1): [0, 1]},
    )
    return core.build_semilattice_of_groups(spec)


def z2_with_zero_clifford():
    """Z_2 over the top of a 2-chain, trivial group below: 3 elements."""
    spec = SemilatticeOfGroupsSpec(
        leq=[[True, False], [True, True]],
        group_tables=[[[0, 1], [1, 0]], [[0]]],
        linking={(0, 1): [0, 0]},
    )
    return core.build_semilattice_of_groups(spec)


def standard_examples():
    """The example zoo: name -> InverseSemigroup, in a fixed order."""
    zoo = {
        "trivial": core.trivial_semigroup(),
        "Z2": core.cyclic_group(2),
        "Z3": core.cyclic_group(3),
        "Z4": core.cyclic_group(4),
        "Z5": core.cyclic_group(5),
        "Z6": core.cyclic_group(6),
        "V4": klein_four(),
        "S3": core.symmetric_group(3),
        "chain2": core.chain_semilattice(2),
        "chain3": core.chain_semilattice(3),
        "chain4": core.chain_semilattice(4),
        "diamond": core.diamond_semilattice(),
        "I1": core.build_symmetric_inverse_monoid(1),
        "I2": core.build_symmetric_inverse_monoid(2),
        "clifford4": two_chain_clifford().semigroup,
        "clifford3": z2_with_zero_clifford().semigroup,
    }
    return zoo
