import enum


class StrEnum(str, enum.Enum):
    def __str__(self):
        return self.value


class DiagramType(StrEnum):
    A = 'A'
    D = 'D'
    E = 'E'


class Labels(StrEnum):
    """Node labelling of a type A diagram."""
    STANDARD = 'standard'
    SYMMETRIC = 'symmetric'


class Level(StrEnum):
    """Which ıquantum group the braid operators act on."""
    UNIVERSAL = 'universal'
    PARAMETER = 'parameter'


class HallMethod(StrEnum):
    """How Hall structure constants are counted."""
    FILTRATION = 'filtration'
    EXTENSION = 'extension'


class Command(StrEnum):
    VERIFY_BRAID = 'verify-braid'
    ISEQ = 'iseq'
    ROOT_VECTORS = 'root-vectors'
    PBW = 'pbw'
    HALL = 'hall'
    CROSS_CHECK = 'cross-check'
    REFLECT = 'reflect'
    COUNT_INDEC = 'count-indec'
    CLASSES = 'classes'
