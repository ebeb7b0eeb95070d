# Copyright 2026 The noisyadj Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python module."""

import math

import networkx as nx
import pytest

import noisyadj

K4 = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def test_exact_counts_on_k4():
    g = noisyadj.Graph.from_edge_list(K4)
    assert (g.num_nodes, g.num_edges) == (4, 6)
    assert noisyadj.exact_count(g, "triangle") == 4
    assert noisyadj.exact_count(g, "quadrangle") == 3


def test_triangles_match_networkx():
    g = noisyadj.Graph.erdos_renyi(60, 0.2, seed=3)
    ref = nx.Graph()
    ref.add_nodes_from(range(g.num_nodes))
    ref.add_edges_from(g.edges)
    assert noisyadj.exact_count(g, "triangle") == sum(nx.triangles(ref).values()) // 3


def test_entry_variance():
    eps = 1.0
    e = math.exp(eps)
    assert noisyadj.entry_variance("rr", eps) == pytest.approx(e / (e - 1) ** 2)
    assert noisyadj.entry_variance("laplace", eps) == pytest.approx(2.0)


def test_estimate_is_deterministic_and_accounts_budget():
    g = noisyadj.Graph.erdos_renyi(40, 0.2, seed=1)
    a = noisyadj.estimate(g, "TriMTR", 1.0, seed=11)
    b = noisyadj.estimate(g, "TriMTR", 1.0, seed=11)
    assert a.value == b.value
    assert a.epsilon_spent == pytest.approx(1.0)
    assert a.download_bytes == 8 * g.num_nodes
    assert [name for name, _ in a.charges][0] == "projection"


def test_noiseless_limit_is_exact():
    g = noisyadj.Graph.from_edge_list(K4)
    est = noisyadj.estimate(g, "TriOR", math.inf, seed=5)
    assert est.value == pytest.approx(4.0)


def test_run_trials_reports_theory():
    g = noisyadj.Graph.erdos_renyi(20, 0.3, seed=2)
    r = noisyadj.run_trials(g, "TriOR", 2.0, trials=50, seed=9)
    assert len(r["values"]) == 50
    assert r["theoretical_mse"] > 0
    assert r["stats"]["count"] == 50


def test_theoretical_mse_terms():
    g = noisyadj.Graph.erdos_renyi(20, 0.3, seed=2)
    published, _ = noisyadj.theoretical_mse("QuaTR", g, 1.0)
    corrected, terms = noisyadj.theoretical_mse("QuaTR", g, 1.0, corrected=True)
    assert corrected <= published
    assert sum(terms.values()) == pytest.approx(corrected)


def test_tradeoff_and_confusion():
    curve = noisyadj.tradeoff_curve("rr", 1.0, resolution=10)
    assert curve[0] == pytest.approx((0.0, 1.0))
    assert curve[-1] == pytest.approx((1.0, 0.0))
    cm = noisyadj.confusion_matrix("rr", 1.0, 0.01)
    total = cm["true_positive"] + cm["false_negative"] + cm["false_positive"] + cm["true_negative"]
    assert total == pytest.approx(1.0)


def test_errors_map_to_python_exceptions():
    g = noisyadj.Graph.from_edge_list(K4)
    with pytest.raises(noisyadj.InvalidBudgetError):
        noisyadj.estimate(g, "TriOR", -1.0)
    with pytest.raises(ValueError):
        noisyadj.exact_count(g, "pentagon")
    with pytest.raises(noisyadj.ParseError):
        noisyadj.Graph.from_edge_list("0 x\n")
