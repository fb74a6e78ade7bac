"""Embedded reference tensors used throughout the examples and tests.

Sources: the CMSX-4 superalloy elasticity measurement of Francois, Geymonat
and Berthaud (1998), and the DFT piezoelectricity tensors of Manna et al.
(2018) for wurtzite Cr_x Al_(1-x) N across chromium concentrations x.  The
two small symmetric tensors are the worked orthotropic example and its
transversely isotropic reference point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Dataset", "DATASETS", "get_dataset", "list_datasets"]

SYM2 = "sym2"
ELASTICITY = "elasticity"
PIEZO = "piezo"

_KIND_SHAPES = {SYM2: (3, 3), ELASTICITY: (6, 6), PIEZO: (3, 6)}


@dataclass(frozen=True)
class Dataset:
    id: str
    kind: str
    voigt: np.ndarray
    units: str
    source: str

    def __post_init__(self):
        arr = np.asarray(self.voigt, dtype=float)
        expected = _KIND_SHAPES[self.kind]
        if arr.shape != expected:
            raise ValueError(f"{self.id}: payload shape {arr.shape} != {expected} for kind {self.kind}")
        if self.kind in (SYM2, ELASTICITY) and np.max(np.abs(arr - arr.T)) != 0.0:
            raise ValueError(f"{self.id}: payload must be exactly symmetric")
        arr.setflags(write=False)
        object.__setattr__(self, "voigt", arr)


def _d(id, kind, rows, units, source) -> Dataset:
    return Dataset(id=id, kind=kind, voigt=np.array(rows, dtype=float), units=units, source=source)


DATASETS: dict[str, Dataset] = {
    ds.id: ds
    for ds in [
        _d("a0", SYM2,
           [[-7, 4, -4], [4, 5, -2], [-4, -2, 5]],
           "1", "orthotropic worked example"),
        _d("b", SYM2,
           [[1, 0, 0], [0, 1, 0], [0, 0, -2]],
           "1", "transversely isotropic reference point"),
        _d("E0", ELASTICITY,
           [[243, 136, 135, 22, 52, -17],
            [136, 239, 137, -28, 11, 16],
            [135, 137, 233, 29, -49, 3],
            [22, -28, 29, 133, -10, -4],
            [52, 11, -49, -10, 119, -2],
            [-17, 16, 3, -4, -2, 130]],
           "GPa", "Francois-Geymonat-Berthaud 1998, CMSX-4 Ni-based superalloy"),
        _d("aln", PIEZO,
           [[0, 0, -0.0505, -0.0394, -0.2854, -0.0637],
            [-0.0637, -0.0042, 0.0332, -0.2818, -0.0058, 0.0185],
            [-0.5807, -0.5822, 1.4607, 0.0022, 0.0002, 0.0043]],
           "C/m^2", "Manna et al. 2018, wurtzite AlN (x = 0)"),
        _d("cr0.035", PIEZO,
           [[-0.0329, 0.0599, -0.0195, 0.0267, -0.2327, -0.0988],
            [-0.0548, -0.0129, -0.0063, -0.2075, -0.0051, -0.0293],
            [-0.5872, -0.4900, 1.5560, -0.0218, -0.0278, -0.0115]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.035"),
        _d("cr0.07", PIEZO,
           [[-0.0393, 0.0185, 0.0048, 0.0290, -0.2171, -0.0436],
            [-0.07, 0.0554, 0.0137, -0.1574, 0.0198, 0.0044],
            [-0.5179, -0.5886, 1.6521, -0.0085, -0.0095, -0.0119]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.07"),
        _d("cr0.10", PIEZO,
           [[0.0291, -0.0141, -0.0523, -0.0016, 0.0028, 0.0138],
            [-0.0611, 0.0819, -0.0567, -0.1841, 0.0116, 0.0270],
            [-0.5244, -0.5918, 1.7715, -0.0018, 0.0066, -0.0145]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.10"),
        _d("cr0.13", PIEZO,
           [[-0.0985, 0.1138, 0.047, -0.0169, -0.0169, -0.0984],
            [0.0558, 0.0183, -0.0367, -0.1735, -0.0384, 0.0474],
            [-0.5441, -0.5455, 1.8506, -0.0148, -0.0016, -0.0193]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.13"),
        _d("cr0.16", PIEZO,
           [[0.0315, -0.0375, 0.0273, 0.0206, 0.0206, 0.0933],
            [-0.215, -0.0717, 0.0845, -0.2157, 0.0438, -0.0332],
            [-0.4517, -0.5587, 1.9243, 0.0447, 0.0277, -0.0482]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.16"),
        _d("cr0.19", PIEZO,
           [[0.4524, 0.3564, -0.0827, -0.0276, -0.0276, 0.1067],
            [-0.0783, 0.0868, 0.0318, 0.0037, -0.1053, -0.0765],
            [-0.5768, -0.4566, 2.0350, -0.1332, -0.1016, -0.1253]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.19"),
        _d("cr0.225", PIEZO,
           [[0.0428, 0.0974, -0.0429, -0.0319, -0.0363, 0.0099],
            [-0.1399, -0.2386, -0.0253, -0.1505, 0.0143, -0.1770],
            [-0.5800, -0.5552, 2.2197, 0.0164, 0.0048, 0.0234]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.225"),
        _d("cr0.255", PIEZO,
           [[-0.0914, 0.0758, 0.0000, -0.0022, -0.2835, 0.0000],
            [0.0000, -0.0022, 0.0000, -0.2660, 0.0002, -0.0020],
            [-0.6063, -0.5847, 2.3709, -0.0714, -0.0738, -0.0559]],
           "C/m^2", "Manna et al. 2018, wurtzite Cr_x Al_(1-x) N, x = 0.255"),
    ]
}

# concentration sweep order used by the batch runs
CR_SWEEP = ("aln", "cr0.035", "cr0.07", "cr0.10", "cr0.13",
            "cr0.16", "cr0.19", "cr0.225", "cr0.255")


def get_dataset(dataset_id: str) -> Dataset:
    try:
        return DATASETS[dataset_id]
    except KeyError:
        known = ", ".join(sorted(DATASETS))
        raise KeyError(f"unknown dataset {dataset_id!r}; available: {known}") from None


def list_datasets() -> list[Dataset]:
    return [DATASETS[k] for k in sorted(DATASETS)]
