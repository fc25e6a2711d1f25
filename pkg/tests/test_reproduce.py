from __future__ import annotations

import pytest

from diracpdm.model import ModelParams, StateLabel, Symmetry
from diracpdm.oracle import shoot
from diracpdm.reproduce import (
    FIGURE_PRESETS,
    KNOWN_MISPRINTS,
    diff_report,
    doublet_splitting,
    figure_sweeps,
    load_table,
    reproduce_table,
    sweep,
    sweep_csv,
    table_csv,
)

PSPIN = Symmetry.PSPIN


def _cell(table, state, m1, tensor, c_ps=-1.0):
    for res in reproduce_table(table):
        c = res.cell
        if (c.state, c.m1, c.tensor, c.c_ps) == (state, m1, tensor, c_ps):
            return res
    raise KeyError((table, state, m1, tensor, c_ps))


@pytest.mark.parametrize("table", [1, 2, 3])
def test_fixture_shape(table):
    table_spec = load_table(table)
    assert len(table_spec.cells) == 128
    assert len(table_spec.rows) == (8 if table in (1, 2) else 4)


def test_fixture_conventions():
    for c in load_table(2).cells:
        assert c.kappa > 0 and c.n == int(c.state[0]) + 1
    for c in load_table(1).cells:
        assert c.kappa < 0 and c.n == int(c.state[0])
    # the first block of the third table is printed with its formula n
    for c in load_table(3).cells:
        assert c.n == int(c.state[0])


@pytest.mark.parametrize(
    "table, state, m1, tensor, c_ps, expected",
    [(1, "1p3/2", 0.0, 0.0, -1.0, -4.86154), (2, "0d3/2", 0.0, 0.0, -1.0, -4.75676),
     (3, "0f7/2", 0.0, 5.0, -1.5, -3.3), (3, "0f7/2", 0.0, 5.0, -1.0, -3.2),
     (3, "0f7/2", 0.0, 5.0, -1.25, -3.25)],
)
def test_spot_cells(table, state, m1, tensor, c_ps, expected):
    res = _cell(table, state, m1, tensor, c_ps)
    assert res.energy == pytest.approx(expected, abs=1e-5)
    assert res.matches


def test_only_whitelisted_cells_deviate():
    for t in (1, 2, 3):
        for res in reproduce_table(t):
            assert res.matches or res.known_misprint, res.cell


def test_misprint_confirmed_by_oracle():
    (key,) = KNOWN_MISPRINTS
    table, state, m1, tensor, c_ps = key
    res = _cell(table, state, m1, tensor, c_ps)
    assert not res.matches
    shot = shoot(res.cell.params(), res.cell.label())
    assert shot.energy == pytest.approx(res.energy, abs=1e-6)
    assert abs(shot.energy - res.cell.printed) > 1e-3


def test_diff_report_flags_misprint():
    lines = diff_report(reproduce_table(2))
    assert len(lines) == 1 and "known misprint" in lines[0]


def test_pseudospin_partners_share_t0_column():
    t1 = {(c.n, c.kappa, c.m1): c.printed for c in load_table(1).cells if c.tensor == 0}
    t2 = {(c.n, c.kappa, c.m1): c.printed for c in load_table(2).cells if c.tensor == 0}
    paired = 0
    for (n, kappa, m1), value in t1.items():
        key = (n, -kappa + 1, m1)
        if key in t2:
            assert t2[key] == pytest.approx(value, abs=1e-5)
            paired += 1
    assert paired >= 16


def test_doublet_examples():
    p = ModelParams(m0=5, q=1, c_sym=-1)
    d0 = doublet_splitting(p, 1, -2, PSPIN)
    assert d0.partner == 3 and d0.split == 0.0
    d1 = doublet_splitting(p.with_(tensor=1), 1, -2, "pspin")
    assert d1.e_a == pytest.approx(-4.75676, abs=1e-5)
    assert d1.e_b == pytest.approx(-4.91089, abs=1e-5)
    assert d1.split == pytest.approx(-0.15413, abs=1e-5)


def test_spin_doublet_degenerate():
    d = doublet_splitting(ModelParams(m0=5, q=1, b=0.3), 1, -3, Symmetry.SPIN)
    assert abs(d.split) <= 1e-12


def test_partial_doublet():
    d = doublet_splitting(ModelParams(m0=5, q=1, b=0.5), 0, -2, Symmetry.SPIN)
    assert d.kappa == -2 and d.partner == 1
    d = doublet_splitting(ModelParams(m0=5, q=1, b=0.5), 0, 1, Symmetry.SPIN)
    assert d.e_a is not None or d.e_b is not None or not d.complete


def test_sweep_b_endpoints_and_monotone():
    pts = sweep(ModelParams(m0=5, q=1, c_sym=-1), StateLabel(1, -2, PSPIN), "b", 0.0, 0.5, 26)
    assert pts[0].energy == pytest.approx(-4.86154, abs=1e-5)
    assert pts[-1].energy == pytest.approx(-4.70859, abs=1e-5)
    energies = [p.energy for p in pts]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_sweep_tensor_hits_table_row():
    pts = sweep(ModelParams(m0=5, q=1, c_sym=-1), StateLabel(1, -2, PSPIN), "tensor", 0.0, 5.0, 6)
    row = {c.tensor: c.printed for c in load_table(1).cells if c.state == "1p3/2" and c.m1 == 0}
    for p in pts:
        if p.value in row:
            assert p.energy == pytest.approx(row[p.value], abs=1e-5)


def test_sweep_gaps():
    pts = sweep(ModelParams(m0=5, q=1), StateLabel(0, -1, Symmetry.SPIN), "b", 0.0, 1.0, 11)
    assert pts[0].bound and not pts[5].bound
    assert "nan" in sweep_csv(StateLabel(0, -1), "b", pts)


def test_sweep_errors():
    with pytest.raises(ValueError):
        sweep(ModelParams(), StateLabel(0, -1), "b", 0, 1, 1)
    with pytest.raises(ValueError):
        sweep(ModelParams(), StateLabel(0, -1), "q", 0, 1, 3)


@pytest.mark.parametrize("fig", sorted(FIGURE_PRESETS))
def test_figure_sweeps_run(fig):
    out = figure_sweeps(fig, steps=11)
    assert len(out) == 4 and all(len(v) == 11 for v in out.values())


def test_table_csv_format():
    text = table_csv(reproduce_table(1))
    lines = text.splitlines()
    assert lines[0] == "row_label,kappa,m1,tensor,c_ps,energy"
    assert len(lines) == 129
    assert lines[1].startswith("1p3/2,-2,")
