"""Recovery measures: Frobenius error, triangles, path lengths, conductance."""

import numpy as np
import pytest

from embinvert import (
    Graph,
    MetricsReport,
    NodeLabels,
    average_path_length,
    compare,
    conductance,
    rel_frobenius,
    relative_error,
    triangle_count,
)

from _support import (
    complete_graph,
    cycle_graph,
    floyd_warshall_oracle,
    k3,
    path_graph,
    random_connected_graph,
    random_graph,
    star_graph,
    triangle_oracle,
)


def two_triangles_bridged():
    """Two triangles {0,1,2} and {3,4,5} joined by the edge (2, 3)."""
    adj = np.zeros((6, 6))
    for i, j in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]:
        adj[i, j] = adj[j, i] = 1.0
    return Graph(adj)


class TestRelFrobenius:
    def test_identical_is_zero(self):
        a = k3().adj
        assert rel_frobenius(a, a) == 0.0

    def test_total_loss_is_one(self):
        assert rel_frobenius(np.eye(2), np.zeros((2, 2))) == pytest.approx(1.0)

    def test_disjoint_support(self):
        x = np.diag([1.0, 0.0])
        x_tilde = np.diag([0.0, 1.0])
        assert rel_frobenius(x, x_tilde) == pytest.approx(np.sqrt(2.0))

    def test_errors(self):
        with pytest.raises(ValueError, match="shape"):
            rel_frobenius(np.eye(2), np.eye(3))
        with pytest.raises(ValueError, match="zero norm"):
            rel_frobenius(np.zeros((2, 2)), np.eye(2))


class TestTriangleCount:
    def test_closed_forms(self):
        assert triangle_count(k3()) == 1
        assert triangle_count(complete_graph(4)) == 4
        assert triangle_count(path_graph(3)) == 0
        assert triangle_count(cycle_graph(5)) == 0
        assert triangle_count(star_graph(5)) == 0

    def test_matches_triple_enumeration(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            g = random_graph(rng, 12, 0.4)
            assert triangle_count(g) == triangle_oracle(g.adj)

    def test_rejects_weighted(self):
        adj = np.zeros((2, 2))
        adj[0, 1] = adj[1, 0] = 0.5
        with pytest.raises(ValueError, match="binary"):
            triangle_count(Graph(adj))


class TestAveragePathLength:
    def test_closed_forms(self):
        assert average_path_length(k3()) == pytest.approx(1.0)
        assert average_path_length(path_graph(3)) == pytest.approx(4.0 / 3.0)
        assert average_path_length(star_graph(3)) == pytest.approx(1.5)

    def test_matches_floyd_warshall(self):
        rng = np.random.default_rng(1)
        for _ in range(8):
            g = random_connected_graph(rng, 11, 0.3)
            dist = floyd_warshall_oracle(g.adj)
            iu, ju = np.triu_indices(g.n, k=1)
            assert average_path_length(g) == pytest.approx(dist[iu, ju].mean())

    def test_errors(self):
        adj = np.zeros((3, 3))
        adj[0, 1] = adj[1, 0] = 1.0
        with pytest.raises(ValueError, match="connected"):
            average_path_length(Graph(adj))
        with pytest.raises(ValueError, match="two nodes"):
            average_path_length(Graph(np.zeros((1, 1))))


class TestConductance:
    def test_bridged_triangles(self):
        # one cut edge over a side volume of 2+2+3
        g = two_triangles_bridged()
        assert conductance(g, [0, 1, 2]) == pytest.approx(1.0 / 7.0)

    def test_complement_symmetry(self):
        g = two_triangles_bridged()
        assert conductance(g, [0, 1, 2]) == pytest.approx(
            conductance(g, [3, 4, 5])
        )
        rng = np.random.default_rng(2)
        g2 = random_connected_graph(rng, 10, 0.35)
        s = [0, 3, 4, 7]
        rest = [i for i in range(10) if i not in s]
        assert conductance(g2, s) == pytest.approx(conductance(g2, rest))

    def test_single_node(self):
        # one node of K3: cut 2, vol 2
        assert conductance(k3(), [0]) == pytest.approx(1.0)

    def test_errors(self):
        g = k3()
        with pytest.raises(ValueError, match="nonempty"):
            conductance(g, [])
        with pytest.raises(ValueError, match="every node"):
            conductance(g, [0, 1, 2])
        with pytest.raises(ValueError, match="out-of-range"):
            conductance(g, [5])


class TestRelativeError:
    def test_signed(self):
        assert relative_error(4.0, 5.0) == pytest.approx(0.25)
        assert relative_error(4.0, 3.0) == pytest.approx(-0.25)

    def test_zero_reference(self):
        with pytest.raises(ValueError, match="zero reference"):
            relative_error(0.0, 1.0)


class TestCompare:
    def test_perfect_reconstruction(self):
        g = two_triangles_bridged()
        labels = NodeLabels([0, 0, 0, 1, 1, 1])
        rep = compare(g, g, labels=labels)
        assert rep.rel_frob_adj == 0.0
        assert rep.triangles_true == rep.triangles_recon == 2
        assert rep.triangles_rel_err == 0.0
        assert rep.apl_rel_err == 0.0
        assert len(rep.conductances) == 2
        for row in rep.conductances:
            assert row.phi_true == pytest.approx(1.0 / 7.0)
            assert row.rel_err == 0.0

    def test_failed_measures_stay_absent(self):
        g = k3()
        disconnected = np.zeros((3, 3))
        disconnected[0, 1] = disconnected[1, 0] = 1.0
        rep = compare(g, Graph(disconnected))
        assert rep.apl_recon is None
        assert rep.apl_rel_err is None
        assert rep.rel_frob_adj is not None
        # triangle reference is nonzero here so the ratio exists
        assert rep.triangles_rel_err == pytest.approx(-1.0)

    def test_zero_triangle_reference_absent(self):
        g = path_graph(4)
        rep = compare(g, cycle_graph(4))
        assert rep.triangles_true == 0 and rep.triangles_recon == 0
        assert rep.triangles_rel_err is None

    def test_top_c_limits_conductance_rows(self):
        g = two_triangles_bridged()
        labels = NodeLabels([0, 0, 0, 1, 1, 2])
        rep = compare(g, g, labels=labels, top_c=2)
        assert [row.label for row in rep.conductances] == [0, 1]

    def test_validation(self):
        with pytest.raises(ValueError, match="mismatch"):
            compare(k3(), complete_graph(4))
        weighted = np.zeros((3, 3))
        weighted[0, 1] = weighted[1, 0] = 0.5
        with pytest.raises(ValueError, match="binary"):
            compare(k3(), Graph(weighted))


class TestMetricsReportIo:
    def build_report(self):
        g = two_triangles_bridged()
        labels = NodeLabels([0, 0, 0, 1, 1, 1])
        disconnected = np.zeros((6, 6))
        for i, j in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]:
            disconnected[i, j] = disconnected[j, i] = 1.0
        return compare(
            g, Graph(disconnected), labels=labels, rank=8, method="opt"
        )

    def test_json_round_trip(self):
        rep = self.build_report()
        back = MetricsReport.from_json(rep.to_json())
        assert back.method == "opt" and back.rank == 8
        assert back.rel_frob_adj == rep.rel_frob_adj
        assert back.apl_recon is None
        assert len(back.conductances) == len(rep.conductances)
        for a, b in zip(back.conductances, rep.conductances):
            assert a.phi_true == b.phi_true
            assert a.rel_err == b.rel_err

    def test_csv_row(self):
        rep = self.build_report()
        header = MetricsReport.csv_header().split(",")
        row = rep.to_csv_row().split(",")
        assert len(header) == len(row)
        fields = dict(zip(header, row))
        assert fields["method"] == "opt"
        assert fields["rank"] == "8"
        assert fields["apl_recon"] == ""  # absent measure stays empty
        assert float(fields["rel_frob_adj"]) == rep.rel_frob_adj

    def test_mean_abs_conductance_error(self):
        rep = self.build_report()
        errs = [abs(c.rel_err) for c in rep.conductances]
        assert rep.conductance_mean_abs_rel_err() == pytest.approx(
            np.mean(errs)
        )
        empty = MetricsReport()
        assert empty.conductance_mean_abs_rel_err() is None
