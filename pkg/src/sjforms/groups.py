"""The five congruence groups handled by the catalogs."""

from __future__ import annotations

import enum


class GroupId(enum.Enum):
    SP4 = "sp4"                      # full degree-2 modular group
    GAMMA0_2 = "gamma0_2"            # lower-left block divisible by 2
    GAMMA0_3_PSI = "gamma0_3_psi"    # level 3, kernel of the quadratic character
    GAMMA0_4_PSI = "gamma0_4_psi"    # level 4, kernel of the quadratic character
    GAMMA00_2_PSI = "gamma00_2_psi"  # B and C divisible by 2, character kernel

    @classmethod
    def parse(cls, text: str) -> "GroupId":
        key = text.strip().lower().replace("^", "").replace("(", "_").replace(")", "")
        aliases = {
            "sp4": cls.SP4,
            "sp2z": cls.SP4,
            "level1": cls.SP4,
            "gamma0_2": cls.GAMMA0_2,
            "gamma02": cls.GAMMA0_2,
            "level2": cls.GAMMA0_2,
            "gamma0_3_psi": cls.GAMMA0_3_PSI,
            "gamma0_3psi": cls.GAMMA0_3_PSI,
            "gamma03": cls.GAMMA0_3_PSI,
            "level3": cls.GAMMA0_3_PSI,
            "gamma0_4_psi": cls.GAMMA0_4_PSI,
            "gamma0_4psi": cls.GAMMA0_4_PSI,
            "gamma04": cls.GAMMA0_4_PSI,
            "level4a": cls.GAMMA0_4_PSI,
            "gamma00_2_psi": cls.GAMMA00_2_PSI,
            "gamma00_2psi": cls.GAMMA00_2_PSI,
            "gamma002": cls.GAMMA00_2_PSI,
            "level4b": cls.GAMMA00_2_PSI,
        }
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown group {text!r}; known: "
                         + ", ".join(g.value for g in cls))


ALL_GROUPS = tuple(GroupId)
