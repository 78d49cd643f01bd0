from dataclasses import dataclass
from typing import List, Optional, Tuple

from typing_extensions import Final, TypedDict


class MinusTypeEntry(TypedDict):
    a: int
    b: int
    self_dual: bool
    zeros: int
    multiplicity: int


# Key order of every data line; changing it is a schema change.
CATALOG_FIELDS: Final[Tuple[str, ...]] = (
    "schema_version",
    "modulus",
    "rows",
    "cols",
    "matrix",
    "sigma",
    "group_order",
    "genus",
    "ramification",
    "fixed_points",
    "prym_dim",
    "quotient_genus",
    "minus_types",
    "bound_unitary",
    "bound_with_symplectic",
    "family_dim",
    "mode",
    "verdict",
    "prop_trichotomy",
    "prop_trichotomy_presumption",
    "prop_sums_applicable",
    "thm_abelian_applicable",
    "cor_two_rows_applicable",
    "canonical_key",
)

FOOTER_FIELDS: Final[Tuple[str, ...]] = (
    "footer",
    "schema_version",
    "total_covers",
    "total_records",
    "sha256",
)


@dataclass(frozen=True)
class CatalogRecord:
    schema_version: int
    modulus: int
    rows: int
    cols: int
    matrix: List[int]
    sigma: List[int]
    group_order: int
    genus: int
    ramification: str
    fixed_points: int
    prym_dim: int
    quotient_genus: int
    minus_types: List[MinusTypeEntry]
    bound_unitary: int
    bound_with_symplectic: int
    family_dim: int
    mode: str
    verdict: str
    prop_trichotomy: Optional[str]
    prop_trichotomy_presumption: Optional[bool]
    prop_sums_applicable: bool
    thm_abelian_applicable: bool
    cor_two_rows_applicable: bool
    canonical_key: str

    @property
    def sort_key(self) -> Tuple[str, Tuple[int, ...]]:
        return (self.canonical_key, tuple(self.sigma))
