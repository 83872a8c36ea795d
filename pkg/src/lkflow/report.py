"""Tables and figures for the feasibility family.

Every file is written deterministically: CSV rows in a fixed order and PNGs
without timestamp metadata.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from . import cutelim, flowgraph, gens  # noqa: E402
from . import kernel as K  # noqa: E402


def feasibility_rows(max_n=8):
    rows = []
    for n in range(max_n + 1):
        m = K.metrics(gens.feasibility_proof(n))
        rows.append(dict(n=n, lines=m.lines, symbols=m.symbols, cuts=m.cuts,
                         contractions=m.contractions, max_formula_size=m.max_formula_size))
    return rows


def freecut_rows(max_n=3, strategies=cutelim.STRATEGIES):
    rows, traces = [], {}
    for n in range(max_n + 1):
        p = gens.feasibility_proof(n)
        for strat in strategies:
            q, trace = cutelim.eliminate_free_cuts(p, gens.AXIOMS, strategy=strat)
            rows.append(dict(n=n, strategy=strat, lines_in=p.lines, lines_out=q.lines,
                             cuts_out=K.metrics(q).cuts, steps=len(trace.steps),
                             duplicated=sum(s.duplicated_subproof_lines for s in trace.steps)))
            traces[(n, strat)] = trace
    return rows, traces


def cycle_rows(max_n=5, unoriented_max=3):
    rows = []
    for n in range(1, max_n + 1):
        g = flowgraph.build(gens.feasibility_proof(n))
        oriented, exact = flowgraph.cycle_count(g, 'oriented')
        row = dict(n=n, vertices=g.graph.number_of_nodes(), edges=g.graph.number_of_edges(),
                   oriented_cycles=oriented, oriented_exact=exact, unoriented_cycles='')
        if n <= unoriented_max:
            row['unoriented_cycles'] = flowgraph.cycle_count(g, 'unoriented')[0]
        rows.append(row)
    return rows


def _write_csv(path, rows):
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator='\n')
        w.writeheader()
        w.writerows(rows)


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={'Software': None})
    plt.close(fig)


def _plot_feasibility(rows, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([r['n'] for r in rows], [r['lines'] for r in rows], 'o-')
    ax.set_xlabel('n')
    ax.set_ylabel('lines')
    ax.set_title('feasibility proof size')
    ax.grid(alpha=0.3)
    _save(fig, path)


def _plot_freecuts(rows, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for strat in sorted({r['strategy'] for r in rows}):
        sel = [r for r in rows if r['strategy'] == strat]
        ax.semilogy([r['n'] for r in sel], [r['lines_out'] for r in sel], 'o-', label=strat)
    base = [r for r in rows if r['strategy'] == rows[0]['strategy']]
    ax.semilogy([r['n'] for r in base], [r['lines_in'] for r in base], 'k--', label='input')
    ax.set_xlabel('n')
    ax.set_ylabel('lines (log)')
    ax.set_title('free-cut elimination')
    ax.legend(fontsize=7)
    ax.grid(alpha=0.3)
    _save(fig, path)


def _plot_cycles(rows, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([r['n'] for r in rows], [r['oriented_cycles'] for r in rows], 'o-', label='oriented')
    un = [r for r in rows if r['unoriented_cycles'] != '']
    ax.plot([r['n'] for r in un], [r['unoriented_cycles'] for r in un], 's--', label='unoriented')
    ax.set_yscale('symlog')
    ax.set_xlabel('n')
    ax.set_ylabel('cycles')
    ax.set_title('flow-graph cycles of the feasibility proof')
    ax.legend(fontsize=7)
    ax.grid(alpha=0.3)
    _save(fig, path)


def _plot_trace(trace, path, title):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = list(range(1, len(trace.steps) + 1))
    ax.plot(xs, [s.lines for s in trace.steps], '-', label='lines')
    ax.plot(xs, [s.cuts for s in trace.steps], '-', label='cuts')
    ax.set_yscale('log')
    ax.set_xlabel('reduction step')
    ax.set_title(title)
    ax.legend(fontsize=7)
    ax.grid(alpha=0.3)
    _save(fig, path)


def write_report(outdir, max_feasibility=8, max_freecut=3, max_cycles=5):
    """Write CSVs and PNGs into ``outdir``; returns the file names written."""
    os.makedirs(outdir, exist_ok=True)
    written = []

    def out(name):
        written.append(name)
        return os.path.join(outdir, name)

    feas = feasibility_rows(max_feasibility)
    _write_csv(out('feasibility.csv'), feas)
    _plot_feasibility(feas, out('feasibility_lines.png'))

    free, traces = freecut_rows(max_freecut)
    _write_csv(out('freecuts.csv'), free)
    _plot_freecuts(free, out('freecut_lines.png'))

    n_trace = min(2, max_freecut)
    trace = traces[(n_trace, 'uppermost-first')]
    _write_csv(out('expansion_trace.csv'), cutelim.expansion_report(trace))
    _plot_trace(trace, out('expansion_trace.png'), f'free-cut elimination, n={n_trace}')

    cyc = cycle_rows(max_cycles)
    _write_csv(out('cycles.csv'), cyc)
    _plot_cycles(cyc, out('cycles.png'))
    return written
