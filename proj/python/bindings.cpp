#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heilbronn/cli.hpp"
#include "heilbronn/constructions.hpp"
#include "heilbronn/experiments.hpp"
#include "heilbronn/geometry.hpp"
#include "heilbronn/io.hpp"
#include "heilbronn/ranking.hpp"
#include "heilbronn/witnesses.hpp"

namespace py = pybind11;
using namespace heilbronn;

namespace {

using XY = std::pair<double, double>;
using IJ = std::pair<std::int64_t, std::int64_t>;

PointSet to_points(const std::vector<XY>& xy) {
    PointSet out;
    out.reserve(xy.size());
    for (const auto& [x, y] : xy) out.push_back({x, y});
    return out;
}

std::vector<XY> from_points(const PointSet& pts) {
    std::vector<XY> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.emplace_back(p.x, p.y);
    return out;
}

GridArrangement to_grid(std::int64_t side, const std::vector<IJ>& ij) {
    std::vector<GridPoint> pts;
    pts.reserve(ij.size());
    for (const auto& [i, j] : ij) pts.push_back({i, j});
    return GridArrangement(side, std::move(pts));
}

std::vector<IJ> from_grid(const GridArrangement& g) {
    std::vector<IJ> out;
    for (const auto& p : g.points()) out.emplace_back(p.x, p.y);
    return out;
}

py::int_ to_py(const mpz_class& v) {
    return py::int_(py::module_::import("builtins").attr("int")(v.get_str()));
}

mpz_class from_py(const py::int_& v) {
    return mpz_class(py::str(v).cast<std::string>(), 10);
}

SearchMode mode_of(const std::string& m) {
    if (m == "fast") return SearchMode::fast;
    if (m == "exhaustive") return SearchMode::exhaustive;
    throw py::value_error("mode must be 'fast' or 'exhaustive'");
}

py::dict report_dict(const WitnessReport& r) {
    py::dict d;
    d["kind"] = std::string(to_string(r.kind));
    d["payload"] = r.payload.to_hex();
    d["witness_length"] = r.witness_length;
    d["baseline_length"] = r.baseline_length;
    d["savings"] = r.savings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_heilbronn, m) {
    m.doc() = "Heilbronn triangle toolkit: exact geometry, witness codecs, Monte Carlo harness";

    py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    m.def(
        "min_triangle",
        [](const std::vector<XY>& points, const std::string& mode) {
            const UnitTriangle t = min_area_triangle(to_points(points), mode_of(mode));
            return py::make_tuple(t.area, py::make_tuple(t.idx[0], t.idx[1], t.idx[2]));
        },
        py::arg("points"), py::arg("mode") = "fast",
        "Smallest triangle area of a point list and its vertex indices.");

    m.def(
        "min_grid_triangle",
        [](std::int64_t side, const std::vector<IJ>& points, const std::string& mode) {
            const GridTriangle t = min_area_triangle(to_grid(side, points), mode_of(mode));
            return py::make_tuple(t.twice_area, py::make_tuple(t.idx[0], t.idx[1], t.idx[2]));
        },
        py::arg("side"), py::arg("points"), py::arg("mode") = "fast",
        "Smallest twice-area over a K x K grid arrangement (exact).");

    m.def("sample_unit_square",
          [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
              return from_points(sample_unit_square(n, seed, stream));
          },
          py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

    m.def("sample_grid",
          [](std::int64_t side, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
              return from_grid(sample_grid_arrangement(side, n, seed, stream));
          },
          py::arg("side"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

    m.def(
        "estimate_mu",
        [](std::size_t n, std::size_t trials, std::uint64_t seed, unsigned jobs) {
            const MuEstimate e = estimate_mu(n, trials, seed, jobs);
            py::dict d;
            d["n"] = e.n;
            d["trials"] = e.trials;
            d["degenerate"] = e.degenerate;
            d["mean"] = e.mean;
            d["stderr"] = e.stderr_;
            d["lo95"] = e.lo95;
            d["hi95"] = e.hi95;
            d["seed"] = e.seed;
            return d;
        },
        py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("jobs") = 1);

    m.def("rank",
          [](std::int64_t side, const std::vector<IJ>& points) {
              return to_py(rank_arrangement(to_grid(side, points)).value);
          },
          py::arg("side"), py::arg("points"));

    m.def("unrank",
          [](const py::int_& index, std::int64_t side, std::size_t n) {
              return from_grid(unrank_arrangement(from_py(index), side, n));
          },
          py::arg("index"), py::arg("side"), py::arg("n"));

    m.def("baseline_length", &baseline_length, py::arg("side"), py::arg("n"));

    m.def(
        "encode_witness",
        [](const std::string& kind, std::int64_t side, const std::vector<IJ>& points) {
            const GridArrangement g = to_grid(side, points);
            switch (witness_kind_from_string(kind)) {
                case WitnessKind::collinear: return report_dict(encode_collinear_witness(g));
                case WitnessKind::rowline: return report_dict(encode_rowline_witness(g));
                case WitnessKind::small_triangle: return report_dict(encode_small_triangle_witness(g));
                case WitnessKind::theorem2: break;
            }
            return report_dict(encode_theorem2(g));
        },
        py::arg("kind"), py::arg("side"), py::arg("points"));

    m.def(
        "decode_witness",
        [](const std::string& kind, const std::string& payload, std::int64_t side, std::size_t n) {
            return from_grid(
                decode_witness(witness_kind_from_string(kind), BitString::from_hex(payload), side, n));
        },
        py::arg("kind"), py::arg("payload"), py::arg("side"), py::arg("n"));

    m.def(
        "erdos",
        [](std::int64_t p) {
            const ErdosConstruction e = erdos_prime(p);
            return py::make_tuple(from_grid(e.arrangement), e.min_twice_area);
        },
        py::arg("p"), "Erdos pebbles (i, i^2 mod p) and their minimum twice-area.");

    m.def(
        "optimize",
        [](std::size_t n, std::size_t restarts, std::size_t steps, std::uint64_t seed, unsigned jobs) {
            const OptimizerResult r = optimize_heilbronn(n, restarts, steps, seed, jobs);
            return py::make_tuple(r.value, from_points(r.points));
        },
        py::arg("n"), py::arg("restarts") = 8, py::arg("steps") = 20000, py::arg("seed") = 0,
        py::arg("jobs") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");

    m.attr("__version__") = "0.1.0";
}
